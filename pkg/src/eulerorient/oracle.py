"""Brute-force ground truth: rooted planar maps and their Eulerian orientations.

Maps are rotation systems on darts ``0 .. 2n-1``.  ``sigma`` rotates darts
around their vertex, ``alpha`` swaps the two darts of an edge, and dart 0 is
the root.  Nothing here uses the functional equations.

Maps with ``n`` edges are grown from maps with ``n - 1`` edges by adding one
edge that avoids the root: either a pendant edge into a new vertex, or an edge
joining two corners.  Every rooted map with ``n >= 2`` edges arises this way
(delete a non-root edge outside a spanning tree, or a non-root leaf edge), and
candidates are deduplicated by their canonical form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

MAX_EDGES = 7


class LimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class RotationMap:
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]

    @property
    def n_edges(self) -> int:
        return len(self.sigma) // 2

    @property
    def root_dart(self) -> int:
        return 0

    def vertices(self) -> list[list[int]]:
        return _cycles(self.sigma)

    def faces(self) -> list[list[int]]:
        phi = tuple(self.sigma[self.alpha[d]] for d in range(len(self.sigma)))
        return _cycles(phi)

    def degrees(self) -> list[int]:
        return [len(c) for c in self.vertices()]

    def genus(self) -> int:
        if not self.sigma:
            return 0
        chi = len(self.vertices()) - self.n_edges + len(self.faces())
        return (2 - chi) // 2

    def validate(self) -> None:
        """Raise ``ValueError`` unless this is a connected genus-0 map."""
        n = len(self.sigma)
        if sorted(self.sigma) != list(range(n)) or sorted(self.alpha) != list(range(n)):
            raise ValueError("sigma and alpha must be permutations")
        if any(self.alpha[d] == d or self.alpha[self.alpha[d]] != d for d in range(n)):
            raise ValueError("alpha must be a fixed-point-free involution")
        if n and len(_orbit(self.sigma, self.alpha)) != n:
            raise ValueError("map is not connected")
        if self.genus() != 0:
            raise ValueError("map is not planar")

    def canonical(self) -> "RotationMap":
        """Relabel darts in breadth-first order from the root (sigma, then alpha)."""
        n = len(self.sigma)
        if n == 0:
            return self
        label = {0: 0}
        order = [0]
        i = 0
        while i < len(order):
            d = order[i]
            for e in (self.sigma[d], self.alpha[d]):
                if e not in label:
                    label[e] = len(order)
                    order.append(e)
            i += 1
        sigma = tuple(label[self.sigma[d]] for d in order)
        alpha = tuple(label[self.alpha[d]] for d in order)
        return RotationMap(sigma, alpha)


def _cycles(perm) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        cyc = []
        d = s
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(cyc)
    return out


def _orbit(sigma, alpha) -> set[int]:
    seen = {0}
    stack = [0]
    while stack:
        d = stack.pop()
        for e in (sigma[d], alpha[d]):
            if e not in seen:
                seen.add(e)
                stack.append(e)
    return seen


def _extensions(m: RotationMap) -> Iterator[RotationMap]:
    n = len(m.sigma)
    u, v = n, n + 1
    for d1 in range(n):
        base = list(m.sigma) + [0, 0]
        base[u] = base[d1]
        base[d1] = u
        alpha = list(m.alpha) + [v, u]
        # pendant edge: v alone at a new vertex
        pend = base.copy()
        pend[v] = v
        yield RotationMap(tuple(pend), tuple(alpha))
        for d2 in range(n + 1):
            s = base.copy()
            s[v] = s[d2]
            s[d2] = v
            yield RotationMap(tuple(s), tuple(alpha))


@lru_cache(maxsize=None)
def _maps(n_edges: int) -> tuple[RotationMap, ...]:
    if n_edges == 0:
        return (RotationMap((), ()),)
    if n_edges == 1:
        loop = RotationMap((1, 0), (1, 0))
        bridge = RotationMap((0, 1), (1, 0))
        return (loop, bridge)
    found: dict[RotationMap, None] = {}
    for m in _maps(n_edges - 1):
        for cand in _extensions(m):
            if cand.genus() != 0:
                continue
            found.setdefault(cand.canonical())
    return tuple(found)


def enumerate_rooted_planar_maps(
        n_edges: int,
        vertex_predicate: Callable[[int], bool] | None = None) -> Iterator[RotationMap]:
    """Yield every rooted planar map with ``n_edges`` edges exactly once.

    ``vertex_predicate`` is applied to each vertex degree; a map is kept only
    if every vertex passes.
    """
    if n_edges < 0:
        raise ValueError("n_edges must be non-negative")
    if n_edges > MAX_EDGES:
        raise LimitExceeded(f"oracle supports at most {MAX_EDGES} edges")
    for m in _maps(n_edges):
        if vertex_predicate is None or all(vertex_predicate(k) for k in m.degrees()):
            yield m


def tutte_count(n: int) -> int:
    """Number of rooted planar maps with ``n`` edges."""
    return 2 * 3**n * math.factorial(2 * n) // (math.factorial(n) * math.factorial(n + 2))


def count_eulerian_orientations(m: RotationMap) -> int:
    """Edge orientations with in-degree equal to out-degree at every vertex."""
    vert = {}
    for i, cyc in enumerate(m.vertices()):
        for d in cyc:
            vert[d] = i
    degs = m.degrees()
    if any(k % 2 for k in degs):
        return 0
    loops = 0
    edges = []
    for d in range(len(m.sigma)):
        e = m.alpha[d]
        if d < e:
            if vert[d] == vert[e]:
                loops += 1
            else:
                edges.append((vert[d], vert[e]))
    # each vertex needs (degree - 2 * loops at it) / 2 outgoing non-loop edges
    need_out = [k // 2 for k in degs]
    for d in range(len(m.sigma)):
        e = m.alpha[d]
        if d < e and vert[d] == vert[e]:
            need_out[vert[d]] -= 1
    remaining = [0] * len(degs)
    for a, b in edges:
        remaining[a] += 1
        remaining[b] += 1
    out = [0] * len(degs)

    def go(i: int) -> int:
        if i == len(edges):
            return 1
        a, b = edges[i]
        total = 0
        remaining[a] -= 1
        remaining[b] -= 1
        for src, dst in ((a, b), (b, a)):
            out[src] += 1
            if out[src] <= need_out[src] and out[dst] + remaining[dst] >= need_out[dst]:
                total += go(i + 1)
            out[src] -= 1
        remaining[a] += 1
        remaining[b] += 1
        return total

    return go(0) * 2**loops


def oracle_U(n: int) -> int:
    """Rooted planar Eulerian orientations with ``n`` edges."""
    if n == 0:
        return 1
    return sum(count_eulerian_orientations(m) for m in enumerate_rooted_planar_maps(n))


def oracle_A(v: int) -> int:
    """Rooted 4-valent planar Eulerian orientations with ``v`` vertices."""
    if v == 0:
        return 1
    maps = enumerate_rooted_planar_maps(2 * v, lambda k: k == 4)
    return sum(count_eulerian_orientations(m) for m in maps)


def oracle_eulerian_maps(n: int) -> int:
    """Rooted planar maps with ``n`` edges and all vertex degrees even."""
    return sum(1 for _ in enumerate_rooted_planar_maps(n, lambda k: k % 2 == 0))


def format_table(rows: list[tuple[int, int]]) -> str:
    return "".join(f"{n}\t{c}\n" for n, c in rows)
