"""Versioned decremental graph, deletion traces, and the update-event vocabulary.

Nodes are dense integer ids 0..n-1. The edge set only shrinks; every applied
deletion bumps the version counter by one. Adjacency is kept as per-node sets
plus, for n <= BITSET_LIMIT, per-node bitmasks so has_edge is a constant-time
bit test (needed by the (2+eps, 0) query wrapper).
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Iterator, NamedTuple

from .errors import (
    DuplicateEdge,
    EdgeAbsent,
    NodeOutOfRange,
    SelfLoop,
)

INF = math.inf

BITSET_LIMIT = 4096

INSERT = "insert"
DELETE = "delete"
INCREASE = "increase"


class UpdateEvent(NamedTuple):
    """One update of a dynamic weighted graph.

    kind is one of INSERT, DELETE, INCREASE. For INSERT and INCREASE the
    weight field carries the new weight; for DELETE it is INF.
    """

    kind: str
    u: int
    v: int
    weight: float


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Canonical (min, max) key for an undirected edge."""
    return (u, v) if u < v else (v, u)


class DecrementalGraph:
    """Unweighted undirected graph under a sequence of single-edge deletions."""

    __slots__ = ("n", "version", "m0", "_adj", "_bits", "_m")

    def __init__(self, n: int):
        if n < 0:
            raise NodeOutOfRange(f"negative node count {n}")
        self.n = n
        self.version = 0
        self.m0 = 0
        self._m = 0
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self._bits: list[int] | None = [0] * n if n <= BITSET_LIMIT else None

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable[tuple[int, int]]) -> "DecrementalGraph":
        g = cls(n)
        for u, v in edges:
            g._check_node(u)
            g._check_node(v)
            if u == v:
                raise SelfLoop(f"self-loop at node {u}")
            if v in g._adj[u]:
                raise DuplicateEdge(f"duplicate edge ({u}, {v})")
            g._adj[u].add(v)
            g._adj[v].add(u)
            if g._bits is not None:
                g._bits[u] |= 1 << v
                g._bits[v] |= 1 << u
            g._m += 1
        g.m0 = g._m
        return g

    def _check_node(self, x: int) -> None:
        if not 0 <= x < self.n:
            raise NodeOutOfRange(f"node {x} not in [0, {self.n})")

    @property
    def m(self) -> int:
        """Current number of edges."""
        return self._m

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        if self._bits is not None:
            return bool(self._bits[u] >> v & 1)
        return v in self._adj[u]

    def degree(self, u: int) -> int:
        self._check_node(u)
        return len(self._adj[u])

    def neighbors(self, u: int) -> set[int]:
        """Current neighbor set of u (do not mutate)."""
        self._check_node(u)
        return self._adj[u]

    def neighbors_sorted(self, u: int) -> list[int]:
        return sorted(self.neighbors(u))

    def adjacency_query(self, u: int) -> tuple[int, Iterator[int]]:
        """(degree, sorted neighbor iterator) at the current version."""
        return self.degree(u), iter(self.neighbors_sorted(u))

    def delete_edge(self, u: int, v: int) -> None:
        self._check_node(u)
        self._check_node(v)
        if v not in self._adj[u]:
            raise EdgeAbsent(f"edge ({u}, {v}) not present at version {self.version}")
        self._adj[u].discard(v)
        self._adj[v].discard(u)
        if self._bits is not None:
            self._bits[u] &= ~(1 << v)
            self._bits[v] &= ~(1 << u)
        self._m -= 1
        self.version += 1

    def component_of(self, x: int) -> set[int]:
        """BFS-computed connected component of x at the current version."""
        self._check_node(x)
        seen = {x}
        queue = deque((x,))
        adj = self._adj
        while queue:
            y = queue.popleft()
            for z in adj[y]:
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return seen

    def component_size(self, x: int) -> int:
        return len(self.component_of(x))

    def edges(self) -> list[tuple[int, int]]:
        """Current edges as sorted (u, v) pairs with u < v."""
        out = []
        for u in range(self.n):
            for v in self._adj[u]:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    def copy(self) -> "DecrementalGraph":
        """Independent snapshot at the current version (version resets to 0)."""
        return DecrementalGraph.from_edge_list(self.n, self.edges())

    def apply_trace(self, trace: "DeletionTrace") -> None:
        for u, v in trace:
            self.delete_edge(u, v)


class DeletionTrace:
    """Ordered list of edge deletions; pair i must exist when applied to G_{i-1}."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[tuple[int, int]]):
        self.pairs = [(int(u), int(v)) for u, v in pairs]

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __getitem__(self, i):
        return self.pairs[i]

    def prefix(self, k: int) -> "DeletionTrace":
        return DeletionTrace(self.pairs[:k])


# --- file formats ----------------------------------------------------------
#
# Edge-list file: first line "n m", then m lines "u v".
# Trace file: k lines "u v" in deletion order.
# Whitespace-delimited decimal, LF-terminated.


def write_edge_list(g: DecrementalGraph, path: str) -> None:
    edges = g.edges()
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"{g.n} {len(edges)}\n")
        for u, v in edges:
            fh.write(f"{u} {v}\n")


def read_edge_list(path: str) -> DecrementalGraph:
    with open(path, "r", encoding="ascii") as fh:
        tokens = fh.read().split()
    if len(tokens) < 2:
        raise ValueError(f"{path}: missing 'n m' header")
    n, m = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != 2 * m:
        raise ValueError(f"{path}: expected {2 * m} endpoints, got {len(body)}")
    edges = [(int(body[2 * i]), int(body[2 * i + 1])) for i in range(m)]
    return DecrementalGraph.from_edge_list(n, edges)


def write_trace(trace: DeletionTrace, path: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for u, v in trace:
            fh.write(f"{u} {v}\n")


def read_trace(path: str) -> DeletionTrace:
    with open(path, "r", encoding="ascii") as fh:
        tokens = fh.read().split()
    if len(tokens) % 2:
        raise ValueError(f"{path}: odd number of endpoints")
    return DeletionTrace(
        (int(tokens[2 * i]), int(tokens[2 * i + 1])) for i in range(len(tokens) // 2)
    )
