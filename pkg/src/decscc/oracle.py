"""Brute-force ground truth: static SCCs, weighted S-distances, reachability.

Deliberately naive and independent of the incremental structures; used by
the test suite as the comparison oracle and by preprocessing for the
initial SCC decomposition.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

INF = float("inf")


@dataclass
class SccPartition:
    """SCC labelling: components are emitted in reverse topological order
    of the condensation (a component appears after everything it reaches)."""

    label: list[int]
    components: list[list[int]]

    def same(self, u: int, v: int) -> bool:
        return self.label[u] == self.label[v]


def _adjacency(edges: Iterable[tuple[int, int]], n: int) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
    return adj


def tarjan_scc(edges: Iterable[tuple[int, int]], n: int) -> SccPartition:
    """Iterative Tarjan; no recursion-depth limit."""
    adj = _adjacency(edges, n)
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    label = [-1] * n
    components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = 1
            advanced = False
            neighbors = adj[v]
            while pi < len(neighbors):
                w = neighbors[pi]
                pi += 1
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w] and low[w] < low[v]:
                    low[v] = low[w]
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                if low[v] < low[pv]:
                    low[pv] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    label[w] = len(components)
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
    return SccPartition(label, components)


def s_distances(edges: Sequence[tuple[int, int]], n: int, s_set: Iterable[int],
                src: int, reverse: bool = False) -> list[float]:
    """0/1-weight distances from ``src`` (or to it, with ``reverse``).

    An edge leaving an S-vertex weighs 1, every other edge weighs 0;
    computed with a deque BFS.
    """
    s = set(s_set)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, v in edges:
        w = 1 if u in s else 0
        if reverse:
            adj[v].append((u, w))
        else:
            adj[u].append((v, w))
    dist: list[float] = [INF] * n
    dist[src] = 0
    dq = deque([src])
    while dq:
        x = dq.popleft()
        dx = dist[x]
        for y, w in adj[x]:
            nd = dx + w
            if nd < dist[y]:
                dist[y] = nd
                if w:
                    dq.append(y)
                else:
                    dq.appendleft(y)
    return dist


def s_distance(edges: Sequence[tuple[int, int]], n: int, s_set: Iterable[int],
               u: int, v: int) -> float:
    return s_distances(edges, n, s_set, u)[v]


def reachable(edges: Iterable[tuple[int, int]], n: int, u: int, v: int) -> bool:
    if u == v:
        return True
    adj = _adjacency(edges, n)
    seen = bytearray(n)
    seen[u] = 1
    dq = deque([u])
    while dq:
        x = dq.popleft()
        for y in adj[x]:
            if y == v:
                return True
            if not seen[y]:
                seen[y] = 1
                dq.append(y)
    return False


def reach_set(edges: Iterable[tuple[int, int]], n: int, u: int) -> set[int]:
    adj = _adjacency(edges, n)
    seen = bytearray(n)
    seen[u] = 1
    dq = deque([u])
    out = {u}
    while dq:
        x = dq.popleft()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = 1
                out.add(y)
                dq.append(y)
    return out


def closure_scc_labels(edges: Sequence[tuple[int, int]], n: int) -> list[int]:
    """Mutual-reachability labels via Floyd-Warshall closure; cross-check
    oracle for tarjan_scc on tiny instances."""
    reach = [[False] * n for _ in range(n)]
    for i in range(n):
        reach[i][i] = True
    for u, v in edges:
        reach[u][v] = True
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    label = [-1] * n
    count = 0
    for i in range(n):
        if label[i] != -1:
            continue
        label[i] = count
        for j in range(i + 1, n):
            if reach[i][j] and reach[j][i]:
                label[j] = count
        count += 1
    return label


def is_feedback_set(edges: Iterable[tuple[int, int]], n: int,
                    s_set: Iterable[int]) -> bool:
    """True iff removing out-edges of S leaves an acyclic graph."""
    s = set(s_set)
    residual = [(u, v) for u, v in edges if u not in s and u != v]
    adj = _adjacency(residual, n)
    indeg = [0] * n
    for _, v in residual:
        indeg[v] += 1
    dq = deque(v for v in range(n) if indeg[v] == 0)
    seen = 0
    while dq:
        x = dq.popleft()
        seen += 1
        for y in adj[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                dq.append(y)
    return seen == n
