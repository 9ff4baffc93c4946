"""Even-Shiloach style shortest-path tree pair over weighted node distances.

An :class:`EsTreePair` maintains, for one induced view of a LevelGraph, the
distance from a center to every node (out-tree) and back (in-tree), where
crossing an edge that leaves a feedback singleton costs 1 and every other
edge costs 0.  The feedback set must hit every cycle of the view, which is
what makes the 0-weight part acyclic and the classic level-repair argument
go through.  Distances are maintained exactly up to a depth cap; a node
whose distance exceeds the cap in either direction is pruned and reported
through ``get_unreachable``.

Reconnection candidates are kept in per-vertex queues, so splitting a node
partitions the queues for free; edges that a split turns from intra-node
into inter-node are pushed as fresh candidates of both trees, paid for by
the relocation budget of the split itself.

A node whose level ever exceeds the number of live feedback singletons in
the view can never again be reached within a finite distance (a shortest
path crosses each feedback singleton at most once), so the effective cap
is min(depth_cap, live feedback count); this shortcut changes no answers
but bounds disconnection detection on views with few feedback nodes.
"""
from __future__ import annotations

from collections import deque
from heapq import heappush, heappop
from typing import Iterable

from .counters import WorkCounters
from .multigraph import (ContractViolation, InputError, InternalInvariantError,
                         LevelGraph, INF)

OUT, IN = 0, 1

# Expensive self-checks (0-weight-cycle detection on every reconnection);
# enabled by the test suite.
DEBUG_CHECKS = False


class EsTreePair:
    """Distance tracker from/to a center vertex under deletions, node
    splits and feedback growth."""

    def __init__(self, graph: LevelGraph, view_nodes: Iterable[int],
                 center_vertex: int, depth_cap: int,
                 counters: WorkCounters | None = None):
        if depth_cap < 1:
            raise ContractViolation("depth cap must be >= 1")
        self.graph = graph
        self.cap = depth_cap
        self.counters = counters if counters is not None else WorkCounters()
        self.view_nodes: dict[int, None] = dict.fromkeys(view_nodes)
        self.center_vertex = center_vertex
        if graph.node_of[center_vertex] not in self.view_nodes:
            raise ContractViolation("center vertex outside the view")

        flatten = graph.flatten
        self.flatten_live = sum(flatten[nd] for nd in self.view_nodes)
        self.init_flatten = self.flatten_live
        fb = graph.feedback_vertices
        self.s_live = 0
        for nd in self.view_nodes:
            if flatten[nd] == 1 and next(iter(graph.members[nd])) in fb:
                self.s_live += 1

        # per-tree state, indexed by OUT / IN
        self.level: list[dict[int, float]] = [{}, {}]
        self.parent: list[dict[int, int | None]] = [{}, {}]
        self.children: list[dict[int, dict[int, None]]] = [{}, {}]
        self.cand: list[dict[int, list[int]]] = [{}, {}]
        self.cursor_list: list[dict[int, list[int]]] = [{}, {}]
        self.cursor_idx: list[dict[int, int]] = [{}, {}]
        self.heap: list[list[tuple]] = [[], []]
        self.qpos: list[dict[int, float]] = [{}, {}]
        self.pending: list[dict[int, None]] = [{}, {}]
        self._seq = 0

        self.unreachable: dict[int, None] = {}
        self.out_exceeded: dict[int, bool] = {}

        over: dict[int, None] = {}
        for nd in self._init_bfs(IN):
            over[nd] = None
            self.out_exceeded[nd] = False
        for nd in self._init_bfs(OUT):
            over[nd] = None
            self.out_exceeded[nd] = True
        self._prune(over)
        self._repair()

    # -- construction ------------------------------------------------------

    def _init_bfs(self, d: int) -> list[int]:
        g = self.graph
        node_of = g.node_of
        store = g.store
        alive, efrom, eto = store.alive, store.efrom, store.eto
        fb = g.feedback_vertices
        buckets = g.out_bucket if d == OUT else g.in_bucket
        nbrv = eto if d == OUT else efrom
        view = self.view_nodes
        eff = self.cap if self.cap < self.s_live else self.s_live
        level = self.level[d]
        parent = self.parent[d]
        center = node_of[self.center_vertex]
        dist: dict[int, float] = {center: 0}
        parent[center] = None
        dq = deque([(0, center)])
        scans = 0
        done: set[int] = set()
        while dq:
            dx, x = dq.popleft()
            if x in done or dx > dist[x]:
                continue
            done.add(x)
            for eid in buckets[x]:
                scans += 1
                y = node_of[nbrv[eid]]
                if y == x or y not in view:
                    continue
                w = 1 if efrom[eid] in fb else 0
                ny = dx + w
                if ny > eff:
                    continue
                old = dist.get(y, INF)
                if ny < old:
                    dist[y] = ny
                    parent[y] = eid
                    if w:
                        dq.append((ny, y))
                    else:
                        dq.appendleft((ny, y))
        self.counters.edge_scans += scans
        children = self.children[d]
        pnbr = efrom if d == OUT else eto
        over = []
        for nd in view:
            if nd in dist:
                level[nd] = dist[nd]
                eid = parent[nd]
                if eid is not None:
                    children.setdefault(node_of[pnbr[eid]], {})[nd] = None
            else:
                level[nd] = INF
                parent.setdefault(nd, None)
                over.append(nd)
        return over

    # -- queries -------------------------------------------------------------

    def center_node(self) -> int:
        return self.graph.node_of[self.center_vertex]

    def _check_node(self, nd: int) -> None:
        if nd not in self.view_nodes:
            raise ContractViolation("node %r not in this tree's view" % (nd,))

    def distance_from(self, nd: int) -> float:
        self._check_node(nd)
        return self.level[OUT][nd]

    def distance_to(self, nd: int) -> float:
        self._check_node(nd)
        return self.level[IN][nd]

    def get_unreachable(self) -> int | None:
        return next(iter(self.unreachable)) if self.unreachable else None

    def has_unreachable(self) -> bool:
        return bool(self.unreachable)

    def get_all_nodes(self) -> set[int]:
        if not self.unreachable:
            return set(self.view_nodes)
        return {nd for nd in self.view_nodes if nd not in self.unreachable}

    # -- updates ---------------------------------------------------------------

    def delete_edge(self, eid: int) -> None:
        g = self.graph
        u, v, alive = g.store.edge(eid)
        if not alive:
            raise ContractViolation("edge %d is already dead" % eid)
        if (g.node_of[u] not in self.view_nodes
                or g.node_of[v] not in self.view_nodes):
            raise ContractViolation("edge %d is outside the view" % eid)
        g.delete_edge(eid)
        self.edge_removed(eid)

    def edge_removed(self, eid: int) -> None:
        """React to an edge that was already tombstoned upstream."""
        self._detach_if_tree_edge(eid)
        self._repair()

    def _detach_if_tree_edge(self, eid: int) -> None:
        g = self.graph
        node_of = g.node_of
        u, v = g.store.efrom[eid], g.store.eto[eid]
        for d, head in ((OUT, v), (IN, u)):
            hn = node_of[head]
            if hn in self.view_nodes and hn not in self.unreachable \
                    and self.parent[d].get(hn) == eid:
                tail = u if d == OUT else v
                tn = node_of[tail]
                self.children[d].get(tn, {}).pop(hn, None)
                self.parent[d][hn] = None
                self._push(d, hn, self.level[d][hn])
                self.counters.tree_edge_removals += 1

    def delete_nodes(self, victims: Iterable[int], repair: bool = True) -> None:
        vs = dict.fromkeys(victims)
        center = self.center_node()
        for nd in vs:
            if nd not in self.view_nodes:
                raise ContractViolation("delete of node %r outside view" % (nd,))
            if nd == center:
                raise ContractViolation("cannot delete the center node")
        live = dict.fromkeys(nd for nd in vs if nd not in self.unreachable)
        self._detach_nodes(live)
        flatten = self.graph.flatten
        for nd in vs:
            del self.view_nodes[nd]
            self.unreachable.pop(nd, None)
            self.out_exceeded.pop(nd, None)
            self.flatten_live -= flatten[nd]
        if repair:
            self._repair()

    def augment(self, new_feedback: Iterable[int], repair: bool = True) -> None:
        """Grow the feedback set: out-edges of the given singleton nodes now
        weigh 1.  Affected tree edges are dropped and repair re-levels."""
        g = self.graph
        nodes = list(new_feedback)
        vertices = []
        for nd in nodes:
            if nd not in self.view_nodes:
                raise ContractViolation("augment node %r outside view" % (nd,))
            if g.flatten[nd] != 1:
                raise ContractViolation("augment node %r is not a singleton" % (nd,))
            vertices.append(next(iter(g.members[nd])))
        fresh = [v for v in vertices if v not in g.feedback_vertices]
        g.add_feedback(fresh)
        node_of = g.node_of
        for v in fresh:
            nd = node_of[v]
            if nd in self.unreachable:
                continue
            self.s_live += 1
            kids = self.children[OUT].pop(nd, None)
            if kids:
                for c in kids:
                    self.parent[OUT][c] = None
                    self._push(OUT, c, self.level[OUT][c])
            peid = self.parent[IN].get(nd)
            if peid is not None:
                hn = node_of[g.store.eto[peid]]
                self.children[IN].get(hn, {}).pop(nd, None)
                self.parent[IN][nd] = None
                self._push(IN, nd, self.level[IN][nd])
        if repair:
            self._repair()

    def split_node(self, y: int, x_vertices: Iterable[int]) -> tuple[int, int]:
        """Split a view node through the underlying graph and patch both
        trees; standalone entry point that repairs immediately."""
        nx, ny = self.graph.split_node(y, x_vertices)
        new_id = nx if ny == y else ny
        self.on_node_split(y, new_id)
        self._repair()
        return nx, ny

    def on_node_split(self, y: int, new_id: int) -> None:
        """Patch tree state after the graph split of ``y`` that moved the
        incidence of ``new_id`` out of it.  Repair is the caller's duty."""
        if y not in self.view_nodes:
            raise ContractViolation("split of node %r outside view" % (y,))
        g = self.graph
        self.view_nodes[new_id] = None
        if y in self.unreachable:
            self.unreachable[new_id] = None
            self.out_exceeded[new_id] = self.out_exceeded.get(y, True)
            for d in (OUT, IN):
                self.level[d][new_id] = INF
                self.parent[d][new_id] = None
            return
        node_of = g.node_of
        store = g.store
        alive, efrom, eto = store.alive, store.efrom, store.eto
        for d in (OUT, IN):
            level, parent, children = self.level[d], self.parent[d], self.children[d]
            level[new_id] = level[y]
            parent[new_id] = None
            peid = parent.get(y)
            if peid is not None:
                head = eto[peid] if d == OUT else efrom[peid]
                if node_of[head] == new_id:
                    parent[new_id] = peid
                    parent[y] = None
                    tail_nd = node_of[efrom[peid] if d == OUT else eto[peid]]
                    kids = self.children[d].get(tail_nd)
                    if kids is not None and y in kids:
                        del kids[y]
                        kids[new_id] = None
            if y in self.pending[d]:
                self.pending[d][new_id] = None
        center = node_of[self.center_vertex]
        # Relocate child pointers whose tree edge's tail moved, and surface
        # previously intra-node edges as reconnection candidates.
        cand_out, cand_in = self.cand[OUT], self.cand[IN]
        for eid in g.out_bucket[new_id]:
            if not alive[eid]:
                continue
            hv = eto[eid]
            hn = node_of[hv]
            if hn == y:
                q = cand_out.get(hv)
                if q is not None:
                    q.append(eid)
                    self._requeue_cursor(OUT, y, hv)
                tq = cand_in.get(efrom[eid])
                if tq is not None:
                    tq.append(eid)
                    self._requeue_cursor(IN, new_id, efrom[eid])
            elif hn != new_id and self.parent[OUT].get(hn) == eid:
                kids = self.children[OUT].get(y)
                if kids is not None and hn in kids:
                    del kids[hn]
                self.children[OUT].setdefault(new_id, {})[hn] = None
        for eid in g.in_bucket[new_id]:
            if not alive[eid]:
                continue
            tv = efrom[eid]
            tn = node_of[tv]
            if tn == y:
                q = cand_out.get(eto[eid])
                if q is not None:
                    q.append(eid)
                    self._requeue_cursor(OUT, new_id, eto[eid])
                tq = cand_in.get(tv)
                if tq is not None:
                    tq.append(eid)
                    self._requeue_cursor(IN, y, tv)
            elif tn != new_id and self.parent[IN].get(tn) == eid:
                kids = self.children[IN].get(y)
                if kids is not None and tn in kids:
                    del kids[tn]
                self.children[IN].setdefault(new_id, {})[tn] = None
        for d in (OUT, IN):
            for nd in (y, new_id):
                if nd in self.pending[d]:
                    continue
                if self.parent[d].get(nd) is None and nd != center:
                    self._push(d, nd, self.level[d][nd])

    def _requeue_cursor(self, d: int, nd: int, v: int) -> None:
        cl = self.cursor_list[d].get(nd)
        if cl is not None:
            cl.append(v)

    # -- repair machinery --------------------------------------------------

    def _push(self, d: int, nd: int, lvl: float) -> None:
        if self.qpos[d].get(nd) == lvl:
            return
        self.qpos[d][nd] = lvl
        self._seq += 1
        heappush(self.heap[d], (lvl, self._seq, nd))

    def repair(self) -> None:
        self._repair()

    def _repair(self) -> None:
        while True:
            self._fix(OUT)
            self._fix(IN)
            po, pi = self.pending[OUT], self.pending[IN]
            if not po and not pi:
                return
            over = dict.fromkeys(po)
            over.update(dict.fromkeys(pi))
            for nd in over:
                self.out_exceeded[nd] = nd in po
            po.clear()
            pi.clear()
            self._prune(over)

    def _prune(self, over: dict[int, None]) -> None:
        self.counters.nodes_pruned += len(over)
        self._detach_nodes(over)
        for nd in over:
            self.unreachable[nd] = None
            self.out_exceeded.setdefault(nd, True)

    def _detach_nodes(self, nds: dict[int, None]) -> None:
        """Disconnect currently-live nodes from both trees (level -> INF,
        orphaned children re-enter the repair queue)."""
        g = self.graph
        node_of = g.node_of
        efrom, eto = g.store.efrom, g.store.eto
        fb = g.feedback_vertices
        for nd in nds:
            if g.flatten[nd] == 1 and next(iter(g.members[nd])) in fb:
                self.s_live -= 1
            for d in (OUT, IN):
                parent, children = self.parent[d], self.children[d]
                peid = parent.get(nd)
                if peid is not None:
                    tn = node_of[efrom[peid] if d == OUT else eto[peid]]
                    children.get(tn, {}).pop(nd, None)
                parent[nd] = None
                kids = children.pop(nd, None)
                if kids:
                    for c in kids:
                        if c in nds:
                            continue
                        parent[c] = None
                        self._push(d, c, self.level[d][c])
                self.level[d][nd] = INF
                self.qpos[d].pop(nd, None)
                self.pending[d].pop(nd, None)
                self.cursor_list[d].pop(nd, None)
                self.cursor_idx[d].pop(nd, None)
                cand = self.cand[d]
                for v in g.members[nd]:
                    cand.pop(v, None)

    def _fix(self, d: int) -> None:
        g = self.graph
        node_of = g.node_of
        store = g.store
        alive, efrom, eto = store.alive, store.efrom, store.eto
        fb = g.feedback_vertices
        vedges = store.vin if d == OUT else store.vout
        view = self.view_nodes
        unreach = self.unreachable
        level = self.level[d]
        parent = self.parent[d]
        children = self.children[d]
        cand = self.cand[d]
        cursor_list = self.cursor_list[d]
        cursor_idx = self.cursor_idx[d]
        heap = self.heap[d]
        qpos = self.qpos[d]
        pending = self.pending[d]
        cap = self.cap
        scans = 0
        incs = 0
        while heap:
            lvl, _seq, nd = heappop(heap)
            if qpos.get(nd) != lvl:
                continue
            del qpos[nd]
            eff = cap if cap < self.s_live else self.s_live
            if lvl > eff:
                pending[nd] = None
                continue
            cl = cursor_list.get(nd)
            if cl is None:
                cl = list(g.members[nd])
                cursor_list[nd] = cl
                cursor_idx[nd] = 0
            i = cursor_idx[nd]
            found_eid = -1
            found_nd = -1
            while i < len(cl):
                v = cl[i]
                if node_of[v] != nd:
                    i += 1
                    continue
                q = cand.get(v)
                if q is None:
                    q = []
                    for eid in vedges[v]:
                        if not alive[eid]:
                            continue
                        u = node_of[efrom[eid] if d == OUT else eto[eid]]
                        if u != nd and u in view and u not in unreach:
                            q.append(eid)
                    q.reverse()
                    cand[v] = q
                while q:
                    eid = q.pop()
                    scans += 1
                    if not alive[eid]:
                        continue
                    u = node_of[efrom[eid] if d == OUT else eto[eid]]
                    if u == nd or u not in view or u in unreach:
                        continue
                    w = 1 if efrom[eid] in fb else 0
                    if level[u] + w == lvl:
                        found_eid = eid
                        found_nd = u
                        break
                if found_eid >= 0:
                    break
                i += 1
            cursor_idx[nd] = i
            if found_eid >= 0:
                if DEBUG_CHECKS:
                    self._assert_no_zero_cycle(d, nd, found_nd, lvl)
                parent[nd] = found_eid
                children.setdefault(found_nd, {})[nd] = None
                continue
            lvl2 = lvl + 1
            assert level[nd] == lvl
            level[nd] = lvl2
            incs += 1
            kids = children.pop(nd, None)
            if kids:
                for c in kids:
                    parent[c] = None
                    self._push(d, c, level[c])
            cursor_list.pop(nd, None)
            cursor_idx.pop(nd, None)
            for v in g.members[nd]:
                cand.pop(v, None)
            if lvl2 > eff:
                pending[nd] = None
            else:
                self._push(d, nd, lvl2)
        c = self.counters
        c.edge_scans += scans
        c.level_increases += incs

    def _assert_no_zero_cycle(self, d: int, nd: int, u: int, lvl: float) -> None:
        g = self.graph
        node_of = g.node_of
        efrom, eto = g.store.efrom, g.store.eto
        cur = u
        steps = 0
        while cur is not None and self.level[d][cur] == lvl:
            if cur == nd:
                raise InternalInvariantError(
                    "0-weight cycle closed during repair: the feedback set "
                    "does not hit every cycle of the view")
            peid = self.parent[d].get(cur)
            if peid is None:
                return
            cur = node_of[efrom[peid] if d == OUT else eto[peid]]
            steps += 1
            if steps > len(self.view_nodes) + 1:
                raise InternalInvariantError("parent chain does not terminate")

    # -- verification helpers ------------------------------------------------

    def check_tree_invariants(self) -> None:
        """Tree-edge equation and queue emptiness; test builds only."""
        g = self.graph
        node_of = g.node_of
        efrom, eto = g.store.efrom, g.store.eto
        fb = g.feedback_vertices
        for d in (OUT, IN):
            if self.qpos[d] or self.pending[d]:
                raise InternalInvariantError("repair queue not drained")
            center = node_of[self.center_vertex]
            for nd in self.view_nodes:
                if nd in self.unreachable:
                    if self.level[d][nd] is not INF:
                        raise InternalInvariantError("pruned node has a level")
                    continue
                lvl = self.level[d][nd]
                peid = self.parent[d].get(nd)
                if nd == center:
                    if lvl != 0:
                        raise InternalInvariantError("center level nonzero")
                    continue
                if peid is None:
                    raise InternalInvariantError("non-center node %r has no "
                                                 "tree parent" % (nd,))
                if not g.store.alive[peid]:
                    raise InternalInvariantError("dead tree edge")
                tail = node_of[efrom[peid] if d == OUT else eto[peid]]
                head = node_of[eto[peid] if d == OUT else efrom[peid]]
                if head != nd or tail not in self.view_nodes or tail in self.unreachable:
                    raise InternalInvariantError("tree edge endpoints broken")
                w = 1 if efrom[peid] in fb else 0
                if self.level[d][tail] + w != lvl:
                    raise InternalInvariantError("tree edge equation violated")
