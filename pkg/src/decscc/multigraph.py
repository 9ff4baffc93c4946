"""Directed multigraph over dense integer vertices, partitioned into nodes.

Edges live once in a shared :class:`EdgeStore` and are keyed by their
original vertex endpoints; the node-level endpoints of an edge are always
*derived* through the current partition, so splitting a node remaps every
incident edge implicitly.  A :class:`LevelGraph` adds per-node incidence
buckets which are rebuilt on a split by relocating the smaller half (by
flatten size).  Relocating the smaller half bounds the total relocation
work by 2 * m * ceil(lg n) bucket moves per graph.

Deleted edges are tombstoned (alive flag) and unlinked from buckets; edge
handles are never reused, so an edge keeps its identity across all levels
of a hierarchy that shares the store.
"""
from __future__ import annotations

from typing import Iterable, Iterator

INF = float("inf")


class InputError(ValueError):
    """Bad caller-supplied data: out-of-range endpoint, dead edge, ..."""


class ContractViolation(RuntimeError):
    """An operation was invoked outside its documented precondition."""


class InternalInvariantError(RuntimeError):
    """The structure detected self-inconsistency; always a bug here."""


class EdgeStore:
    """Append-only edge table shared by every level of a hierarchy.

    Edge handles are dense ints.  ``vout[v]`` / ``vin[v]`` list all edge
    handles ever incident to ``v`` in insertion order (dead ones are
    skipped by scanners via the ``alive`` flags).
    """

    __slots__ = ("n", "efrom", "eto", "alive", "vout", "vin", "alive_count")

    def __init__(self, n: int, edge_list: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise InputError("vertex count must be >= 1, got %r" % (n,))
        self.n = n
        self.efrom: list[int] = []
        self.eto: list[int] = []
        self.alive = bytearray()
        self.vout: list[list[int]] = [[] for _ in range(n)]
        self.vin: list[list[int]] = [[] for _ in range(n)]
        self.alive_count = 0
        for u, v in edge_list:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> int:
        n = self.n
        if not (0 <= u < n and 0 <= v < n):
            raise InputError("edge endpoint out of range: (%r, %r)" % (u, v))
        eid = len(self.efrom)
        self.efrom.append(u)
        self.eto.append(v)
        self.alive.append(1)
        self.vout[u].append(eid)
        self.vin[v].append(eid)
        self.alive_count += 1
        return eid

    def kill(self, eid: int) -> None:
        if not self.alive[eid]:
            raise InputError("edge %d already deleted" % eid)
        self.alive[eid] = 0
        self.alive_count -= 1

    def edge(self, eid: int) -> tuple[int, int, bool]:
        return self.efrom[eid], self.eto[eid], bool(self.alive[eid])

    def __len__(self) -> int:
        return len(self.efrom)

    def find_alive(self, u: int, v: int, limit: int | None = None) -> int | None:
        """Lowest-id alive edge u->v, or None.  ``limit`` caps the id range."""
        alive = self.alive
        eto = self.eto
        for eid in self.vout[u]:
            if limit is not None and eid >= limit:
                break
            if alive[eid] and eto[eid] == v:
                return eid
        return None


class LevelGraph:
    """One level's view of the store: a partition of V into nodes plus
    per-node in/out incidence buckets and a feedback set.

    The feedback set is stored as the underlying vertex set; its nodes are
    required to be single-vertex nodes, and since nodes only ever split,
    a singleton stays a singleton, so the vertex set is a faithful
    representation of the node set.
    """

    __slots__ = ("store", "node_of", "members", "flatten", "out_bucket",
                 "in_bucket", "feedback_vertices", "edge_moves")

    def __init__(self, store: EdgeStore, parts: Iterable[Iterable[int]]):
        self.store = store
        n = store.n
        self.node_of: list[int] = [-1] * n
        self.members: list[dict[int, None]] = []
        self.flatten: list[int] = []
        self.feedback_vertices: set[int] = set()
        self.edge_moves = 0
        for part in parts:
            nd = len(self.members)
            mem: dict[int, None] = {}
            for v in part:
                if self.node_of[v] != -1:
                    raise InputError("vertex %d present in two parts" % v)
                self.node_of[v] = nd
                mem[v] = None
            if not mem:
                raise InputError("empty part in partition")
            self.members.append(mem)
            self.flatten.append(len(mem))
        if -1 in self.node_of:
            raise InputError("partition does not cover all vertices")
        node_of = self.node_of
        out_bucket: list[dict[int, None]] = [{} for _ in self.members]
        in_bucket: list[dict[int, None]] = [{} for _ in self.members]
        efrom, eto, alive = store.efrom, store.eto, store.alive
        for eid in range(len(efrom)):
            if alive[eid]:
                out_bucket[node_of[efrom[eid]]][eid] = None
                in_bucket[node_of[eto[eid]]][eid] = None
        self.out_bucket = out_bucket
        self.in_bucket = in_bucket

    @classmethod
    def singletons(cls, store: EdgeStore) -> "LevelGraph":
        return cls(store, ([v] for v in range(store.n)))

    # -- queries ---------------------------------------------------------

    def node_count(self) -> int:
        return len(self.members)

    def nodes(self) -> Iterator[int]:
        return iter(range(len(self.members)))

    def members_of(self, nd: int) -> list[int]:
        return list(self.members[nd])

    def flatten_size(self, nd: int) -> int:
        return self.flatten[nd]

    def feedback_nodes(self) -> set[int]:
        node_of = self.node_of
        return {node_of[v] for v in self.feedback_vertices}

    def add_feedback(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            if self.flatten[self.node_of[v]] != 1:
                raise ContractViolation(
                    "feedback vertex %d is not a single-vertex node" % v)
            self.feedback_vertices.add(v)

    # -- mutation --------------------------------------------------------

    def delete_edge(self, eid: int) -> None:
        """Tombstone an edge and unlink it from this level's buckets."""
        self.store.kill(eid)
        self.unlink(eid)

    def unlink(self, eid: int) -> None:
        """Drop an already-dead edge from this level's buckets."""
        self.out_bucket[self.node_of[self.store.efrom[eid]]].pop(eid, None)
        self.in_bucket[self.node_of[self.store.eto[eid]]].pop(eid, None)

    def split_node(self, y: int, x_vertices: Iterable[int]) -> tuple[int, int]:
        """Split node ``y``: carve the vertex set ``x_vertices`` out of it.

        The half with the smaller flatten size physically relocates its
        incident bucket entries to a fresh node id; the other half keeps
        the remaining lists under the old id.  Returns
        ``(node_of_x, node_of_rest)``.
        """
        mem_y = self.members[y]
        xs = list(x_vertices)
        fx = len(xs)
        fy = self.flatten[y]
        if fx == 0:
            raise ContractViolation("split with empty X")
        if fx >= fy:
            raise ContractViolation("split X must be a proper subset")
        node_of = self.node_of
        for v in xs:
            if node_of[v] != y:
                raise ContractViolation("split X not contained in node")
        if 2 * fx <= fy:
            moved = xs
        else:
            in_x = set(xs)
            moved = [v for v in mem_y if v not in in_x]
        new_id = len(self.members)
        new_mem: dict[int, None] = {}
        for v in moved:
            del mem_y[v]
            new_mem[v] = None
            node_of[v] = new_id
        self.members.append(new_mem)
        self.flatten.append(len(new_mem))
        self.flatten[y] = fy - len(new_mem)

        store = self.store
        alive = store.alive
        vout, vin = store.vout, store.vin
        ob_y, ib_y = self.out_bucket[y], self.in_bucket[y]
        ob_n: dict[int, None] = {}
        ib_n: dict[int, None] = {}
        moves = 0
        for v in moved:
            for eid in vout[v]:
                if alive[eid]:
                    ob_y.pop(eid, None)
                    ob_n[eid] = None
                    moves += 1
            for eid in vin[v]:
                if alive[eid]:
                    ib_y.pop(eid, None)
                    ib_n[eid] = None
                    moves += 1
        self.out_bucket.append(ob_n)
        self.in_bucket.append(ib_n)
        self.edge_moves += moves
        if moved is xs:
            return new_id, y
        return y, new_id

    def induced_view(self, nodes: Iterable[int]) -> "LevelView":
        nds = set(nodes)
        for nd in nds:
            if nd >= len(self.members) or not self.members[nd]:
                raise ContractViolation("stale node id %r in view" % (nd,))
        return LevelView(self, nds)

    # -- verification helpers (test builds) ------------------------------

    def check_partition(self) -> None:
        seen = set()
        for nd, mem in enumerate(self.members):
            if len(mem) != self.flatten[nd]:
                raise InternalInvariantError("flatten size mismatch")
            for v in mem:
                if v in seen or self.node_of[v] != nd:
                    raise InternalInvariantError("partition broken at %d" % v)
                seen.add(v)
        if len(seen) != self.store.n:
            raise InternalInvariantError("partition does not cover V")

    def check_buckets(self) -> None:
        store = self.store
        for eid in range(len(store)):
            u_nd = self.node_of[store.efrom[eid]]
            v_nd = self.node_of[store.eto[eid]]
            present_out = eid in self.out_bucket[u_nd]
            present_in = eid in self.in_bucket[v_nd]
            if bool(store.alive[eid]) != present_out or present_out != present_in:
                raise InternalInvariantError("bucket desync on edge %d" % eid)


def split_sides_one_directional(g: LevelGraph, y_vertices: Iterable[int],
                                x_vertices: Iterable[int]) -> bool:
    """Debug check for split preconditions: no alive edges in at least one
    direction between X and Y \\ X.  O(E(Y)); not run in normal builds."""
    xs = set(x_vertices)
    rest = set(y_vertices) - xs
    store = g.store
    x_to_rest = rest_to_x = False
    for v in xs:
        for eid in store.vout[v]:
            if store.alive[eid] and store.eto[eid] in rest:
                x_to_rest = True
        for eid in store.vin[v]:
            if store.alive[eid] and store.efrom[eid] in rest:
                rest_to_x = True
    return not (x_to_rest and rest_to_x)


class LevelView:
    """Read/write window onto a subset of a LevelGraph's nodes.

    Only edges with both node endpoints inside the view are visible.
    Deletions through the view hit the parent graph.
    """

    __slots__ = ("graph", "view_nodes")

    def __init__(self, graph: LevelGraph, view_nodes: set[int]):
        self.graph = graph
        self.view_nodes = view_nodes

    def __contains__(self, nd: int) -> bool:
        return nd in self.view_nodes

    def nodes(self) -> set[int]:
        return set(self.view_nodes)

    def out_edges(self, nd: int) -> Iterator[int]:
        g = self.graph
        node_of, eto, view = g.node_of, g.store.eto, self.view_nodes
        if nd not in view:
            raise ContractViolation("node %r outside view" % (nd,))
        for eid in g.out_bucket[nd]:
            other = node_of[eto[eid]]
            if other != nd and other in view:
                yield eid

    def in_edges(self, nd: int) -> Iterator[int]:
        g = self.graph
        node_of, efrom, view = g.node_of, g.store.efrom, self.view_nodes
        if nd not in view:
            raise ContractViolation("node %r outside view" % (nd,))
        for eid in g.in_bucket[nd]:
            other = node_of[efrom[eid]]
            if other != nd and other in view:
                yield eid

    def delete_edge(self, eid: int) -> None:
        g = self.graph
        u, v, alive = g.store.edge(eid)
        if not alive:
            raise InputError("edge %d already deleted" % eid)
        if g.node_of[u] not in self.view_nodes or g.node_of[v] not in self.view_nodes:
            raise ContractViolation("edge %d not inside view" % eid)
        g.delete_edge(eid)

    def flatten_total(self) -> int:
        fl = self.graph.flatten
        return sum(fl[nd] for nd in self.view_nodes)
