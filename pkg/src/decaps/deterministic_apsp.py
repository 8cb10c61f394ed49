"""Deterministic (1+eps, 0)-approximate decremental APSP.

Three pieces:

* :class:`MovingCenters`: per-center exact trees of depth Q whose roots can be
  opened and relocated, with per-node center lists (centers whose cover-range
  ball contains the node) and counters for the number of opens and the total
  moving distance.
* :class:`DetCenterCover`: decides where to open and move centers. Each
  center j carries a collected set T^j and a radius r^j = q/2 - |T^j| (kept in
  half-units so odd q stays exact). After a deletion, at most one center sits
  in a component smaller than its radius; that center absorbs the component
  into T^j and moves across the deleted edge, then a greedy pass opens
  centers at uncovered nodes in ascending id order.
* :class:`ApspIndexDet`: one cover per distance scale. Layers whose cover
  radius floor(eps_int * 2^p) rounds to zero open a center at every node and
  hence answer exactly for distances up to 2^{p+2}; the remaining layers give
  the (1 + 2*eps_int) guarantee for larger distances. The public eps is
  halved internally so queries satisfy dist <= answer <= (1+eps)*dist.
"""

from __future__ import annotations

import math
from collections import deque

from .errors import (
    InvalidEpsilon,
    InvalidRange,
    NodeOutOfRange,
    RateViolation,
    UnknownCenter,
)
from .es_tree import COUNTER, EsTree
from .graph_core import INF, DecrementalGraph


class MovingCenters:
    """Exact distance trees of depth Q at movable center locations.

    ``cover_radius`` feeds the per-node center lists: node x lists center j
    while its level in j's tree is at most cover_radius. find_center returns
    the head of that list in O(1); distance queries read tree levels in O(1).
    """

    def __init__(self, g: DecrementalGraph, cover_radius: int, Q: int,
                 backend: str = COUNTER):
        if Q < 1 or cover_radius < 0 or cover_radius > Q:
            raise InvalidRange(
                f"need 0 <= cover_radius <= Q and Q >= 1, got {cover_radius}, {Q}")
        self.g = g
        self.cover_radius = cover_radius
        self.Q = Q
        self._backend = backend
        self.location: list[int] = []
        self._trees: list[EsTree] = []
        self._cover: list[dict[int, bool]] = [dict() for _ in range(g.n)]
        self.opens = 0
        self.moving_distance = 0
        self._round_ops: set[int] = set()

    def _check_center(self, j: int) -> None:
        if not 0 <= j < len(self.location):
            raise UnknownCenter(f"center {j} does not exist")

    def _build_tree(self, x: int) -> EsTree:
        return EsTree(self.g, x, self.Q, report_threshold=self.cover_radius,
                      backend=self._backend)

    def open(self, x: int) -> int:
        """Open a new center at x; returns its id."""
        if not 0 <= x < self.g.n:
            raise NodeOutOfRange(f"node {x} not in [0, {self.g.n})")
        j = len(self.location)
        tree = self._build_tree(x)
        self.location.append(x)
        self._trees.append(tree)
        self.opens += 1
        self._round_ops.add(j)
        level = tree.level
        rho = self.cover_radius
        for y in range(self.g.n):
            if level[y] is not INF and level[y] <= rho:
                self._cover[y][j] = True
        return j

    def move(self, j: int, x: int, distance=None) -> None:
        """Relocate center j to x, rebuilding its tree from scratch.

        ``distance`` is the moving distance to charge (distance between old
        and new location in the pre-move graph); by default it is measured by
        BFS in the current graph.
        """
        self._check_center(j)
        if not 0 <= x < self.g.n:
            raise NodeOutOfRange(f"node {x} not in [0, {self.g.n})")
        if j in self._round_ops:
            raise RateViolation(
                f"center {j} already opened or moved since the last deletion")
        self._round_ops.add(j)
        if distance is None:
            distance = self._bfs_distance(self.location[j], x)
        old_tree = self._trees[j]
        rho = self.cover_radius
        level = old_tree.level
        for y in range(self.g.n):
            if level[y] is not INF and level[y] <= rho:
                self._cover[y].pop(j, None)
        self.moving_distance += distance
        self.location[j] = x
        tree = self._build_tree(x)
        self._trees[j] = tree
        level = tree.level
        for y in range(self.g.n):
            if level[y] is not INF and level[y] <= rho:
                self._cover[y][j] = True

    def _bfs_distance(self, a: int, b: int):
        if a == b:
            return 0
        dist = {a: 0}
        queue = deque((a,))
        adj = self.g._adj
        while queue:
            y = queue.popleft()
            for z in adj[y]:
                if z not in dist:
                    dist[z] = dist[y] + 1
                    if z == b:
                        return dist[z]
                    queue.append(z)
        return INF

    def begin_deletion(self) -> None:
        """Open a new open/move accounting window (one per deletion)."""
        self._round_ops = set()

    def delete_edge(self, u: int, v: int) -> None:
        """Delete (u, v) from the shared graph and repair every tree."""
        self.begin_deletion()
        self.g.delete_edge(u, v)
        self.after_delete(u, v)

    def after_delete(self, u: int, v: int) -> None:
        """Repair every tree after the shared graph lost (u, v)."""
        for j, tree in enumerate(self._trees):
            for x in tree.after_delete(u, v):
                self._cover[x].pop(j, None)

    def distance(self, j: int, x: int):
        """dist(location(j), x) if at most Q, else INF; O(1)."""
        self._check_center(j)
        return self._trees[j].level_query(x)

    def find_center(self, x: int):
        """Some center whose ball of radius cover_radius holds x, else None."""
        if not 0 <= x < self.g.n:
            raise NodeOutOfRange(f"node {x} not in [0, {self.g.n})")
        cov = self._cover[x]
        return next(iter(cov)) if cov else None

    def centers(self) -> range:
        return range(len(self.location))


class DetCenterCover:
    """Deterministic center cover: every node in a component of size >= q has
    a center within the cover radius after every deletion."""

    def __init__(self, g: DecrementalGraph, q: int, Q: int, cover_radius=None,
                 backend: str = COUNTER):
        if not 1 <= q <= Q:
            raise InvalidRange(f"need 1 <= q <= Q, got q={q}, Q={Q}")
        self.g = g
        self.q = q
        self.Q = Q
        if cover_radius is None:
            cover_radius = q
        self.mc = MovingCenters(g, cover_radius, Q, backend=backend)
        self.collected: list[set[int]] = []   # T^j
        self.radius2: list[int] = []          # 2 * r^j, exact in half-units
        self._skip_small: list[bool] = [False] * g.n
        self._greedy_open()

    # -- Alg. 3 --------------------------------------------------------------

    def _greedy_open(self) -> None:
        mc = self.mc
        g = self.g
        q = self.q
        skip = self._skip_small
        for x in range(g.n):
            if skip[x] or mc.find_center(x) is not None:
                continue
            comp = g.component_of(x)
            if len(comp) < q:
                # small components never grow back; skip every member for good
                for y in comp:
                    skip[y] = True
                continue
            j = mc.open(x)
            assert j == len(self.collected)
            self.collected.append(set())
            self.radius2.append(q)  # r^j = q/2

    def delete(self, u: int, v: int) -> None:
        """Delete (u, v) from the shared graph and restore coverage."""
        self.g.delete_edge(u, v)
        self.on_deleted(u, v)

    def on_deleted(self, u: int, v: int) -> None:
        """Coverage maintenance once the shared graph already lost (u, v)."""
        mc = self.mc
        mc.begin_deletion()
        # the moving-centers trees still reflect the pre-deletion graph, so
        # distance(j, u) is dist_{G_i}(cen_j, u): find the (at most one)
        # center whose radius-r^j ball contained u
        candidates = []
        for j in mc.centers():
            d = mc.distance(j, u)
            if d is not INF and 2 * d <= self.radius2[j]:
                candidates.append(j)
        assert len(candidates) <= 1, f"ball disjointness violated: {candidates}"
        if candidates:
            j = candidates[0]
            comp = self.g.component_of(mc.location[j])
            if 2 * len(comp) < self.radius2[j]:
                y = v if u in comp else u
                move_dist = mc.distance(j, y)  # still the pre-deletion distance
                self.collected[j] |= comp
                self.radius2[j] -= 2 * len(comp)
                for z in comp:
                    self._skip_small[z] = True
                mc.move(j, y, distance=move_dist)
        mc.after_delete(u, v)
        self._greedy_open()

    # -- queries ---------------------------------------------------------------

    def find_center(self, x: int):
        return self.mc.find_center(x)

    def distance(self, j: int, x: int):
        return self.mc.distance(j, x)

    def location(self, j: int) -> int:
        self.mc._check_center(j)
        return self.mc.location[j]

    def centers(self) -> range:
        return self.mc.centers()

    @property
    def opens(self) -> int:
        return self.mc.opens

    @property
    def moving_distance(self):
        return self.mc.moving_distance

    def ball(self, j: int) -> set[int]:
        """B^j = nodes within r^j of center j, recomputed by bounded BFS."""
        self.mc._check_center(j)
        r2 = self.radius2[j]
        root = self.mc.location[j]
        out = {root}
        frontier = [root]
        depth = 0
        adj = self.g._adj
        while frontier and 2 * (depth + 1) <= r2:
            depth += 1
            nxt = []
            for y in frontier:
                for z in adj[y]:
                    if z not in out:
                        out.add(z)
                        nxt.append(z)
            frontier = nxt
        return out


class ApspIndexDet:
    """ceil(log n) deterministic covers answering (1+eps)-approximate queries."""

    def __init__(self, g: DecrementalGraph, eps: float, backend: str = COUNTER):
        if not 0 < eps <= 1:
            raise InvalidEpsilon(f"eps must be in (0, 1], got {eps}")
        self.g = g
        self.eps = eps
        self.eps_internal = eps / 2.0
        self.layers: list[DetCenterCover] = []
        self.layer_params: list[tuple[int, int]] = []
        n = g.n
        max_p = max(0, (n - 1).bit_length() - 1) if n > 1 else -1
        for p in range(max_p + 1):
            rho = math.floor(self.eps_internal * (1 << p))
            q_p = max(1, rho)
            Q_p = 1 << (p + 2)
            self.layer_params.append((q_p, Q_p))
            self.layers.append(DetCenterCover(g, q_p, Q_p, cover_radius=rho,
                                              backend=backend))

    def delete(self, u: int, v: int) -> None:
        self.g.delete_edge(u, v)
        for layer in self.layers:
            layer.on_deleted(u, v)

    def layer_estimate(self, p: int, x: int, y: int):
        layer = self.layers[p]
        j = layer.find_center(x)
        if j is None:
            return INF
        return layer.distance(j, x) + layer.distance(j, y)

    def query(self, x: int, y: int):
        """Estimate with dist <= result <= (1+eps)*dist; INF if disconnected."""
        if not (0 <= x < self.g.n and 0 <= y < self.g.n):
            raise NodeOutOfRange(f"pair ({x}, {y}) out of range")
        if x == y:
            return 0
        if not self.layers:
            return INF
        lo, hi = 0, len(self.layers) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            layer = self.layers[mid]
            j = layer.find_center(x)
            if j is None or layer.distance(j, x) + layer.distance(j, y) != INF:
                hi = mid
            else:
                lo = mid + 1
        return self.layer_estimate(lo, x, y)
