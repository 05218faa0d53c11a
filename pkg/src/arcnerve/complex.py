"""Finite abstract simplicial complexes stored by their maximal simplices."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

from .circle import ArcCollection, as_fraction, balls, contains, intersects

Simplex = tuple  # strictly increasing tuple of vertex indices


def _antichain(simplices: Iterable[Iterable[int]]) -> tuple:
    cands = {tuple(sorted(set(s))) for s in simplices}
    cands.discard(())
    by_size = sorted(cands, key=lambda s: (-len(s), s))
    kept: list = []
    kept_sets: list = []
    for s in by_size:
        ss = frozenset(s)
        if not any(ss <= k for k in kept_sets):
            kept.append(s)
            kept_sets.append(ss)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertex count plus the antichain of maximal simplices.

    Use :meth:`from_simplices` to build one from any generating family; the
    default constructor assumes ``maximal`` is already a sorted antichain.
    """

    vertex_count: int
    maximal: tuple

    @classmethod
    def from_simplices(cls, vertex_count: int, simplices: Iterable[Iterable[int]]) -> "SimplicialComplex":
        maximal = _antichain(simplices)
        for s in maximal:
            if s[0] < 0 or s[-1] >= vertex_count:
                raise ValueError(f"simplex {s} has a vertex outside 0..{vertex_count - 1}")
        return cls(vertex_count, maximal)

    @classmethod
    def full_simplex(cls, n: int) -> "SimplicialComplex":
        return cls(n, (tuple(range(n)),) if n else ())

    @classmethod
    def simplex_boundary(cls, n: int) -> "SimplicialComplex":
        """Boundary of the (n-1)-simplex on vertices 0..n-1."""
        return cls.from_simplices(n, combinations(range(n), n - 1))

    @cached_property
    def _sets(self) -> tuple:
        return tuple(frozenset(s) for s in self.maximal)

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted({v for s in self.maximal for v in s}))

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.maximal), default=0) - 1

    def __contains__(self, simplex: Iterable[int]) -> bool:
        ss = frozenset(simplex)
        return bool(ss) and any(ss <= m for m in self._sets)

    def faces(self, d: int) -> list:
        """All d-dimensional faces, sorted."""
        if d < 0:
            return []
        out = set()
        for s in self.maximal:
            if len(s) > d:
                out.update(combinations(s, d + 1))
        return sorted(out)

    def face_counts(self) -> list:
        return [len(self.faces(d)) for d in range(self.dim + 1)]

    def edges(self) -> list:
        return self.faces(1)

    def link(self, v: int) -> "SimplicialComplex":
        self._check_vertex(v)
        return SimplicialComplex.from_simplices(
            self.vertex_count, (tuple(u for u in s if u != v) for s in self.maximal if v in s)
        )

    def induced(self, vertices: Iterable[int]) -> "SimplicialComplex":
        keep = frozenset(vertices)
        return SimplicialComplex.from_simplices(self.vertex_count, (keep & m for m in self._sets))

    def delete_vertex(self, v: int) -> "SimplicialComplex":
        return self.induced(u for u in self.vertices if u != v)

    def _check_vertex(self, v: int) -> None:
        if v not in self.vertices:
            raise ValueError(f"{v} is not a vertex of the complex")

    def relabel(self, table) -> "SimplicialComplex":
        """Image under an injective relabeling ``v -> table[v]``."""
        n = max(table) + 1 if len(table) else 0
        return SimplicialComplex.from_simplices(n, (tuple(table[v] for v in s) for s in self.maximal))

    def __repr__(self) -> str:
        return f"SimplicialComplex(n={self.vertex_count}, maximal={list(self.maximal)})"


def nerve(collection: ArcCollection) -> SimplicialComplex:
    """Nerve of a collection of closed arcs.

    Every simplex has a witness point that is the start of one of its arcs, so
    the sets of arcs covering each start point generate the whole nerve.
    """
    n = len(collection)
    groups = []
    for a in collection:
        p = a.start
        groups.append([j for j, b in enumerate(collection) if contains(b, p)])
    return SimplicialComplex.from_simplices(n, groups)


def _max_cliques(n: int, adj: list) -> list:
    """Maximal cliques (Bron-Kerbosch with pivoting)."""
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(n)), set())
    return out


def clique_complex_of_graph(n: int, edges: Iterable[tuple]) -> SimplicialComplex:
    adj = [set() for _ in range(n)]
    for u, v in edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return SimplicialComplex.from_simplices(n, _max_cliques(n, adj))


def clique_complex(k: SimplicialComplex) -> SimplicialComplex:
    """Clique (flag) complex of the 1-skeleton of ``k``."""
    n = k.vertex_count
    adj = [set() for _ in range(n)]
    for u, v in k.edges():
        adj[u].add(v)
        adj[v].add(u)
    present = set(k.vertices)
    cliques = [c for c in _max_cliques(n, adj) if c[0] in present]
    return SimplicialComplex.from_simplices(n, cliques)


def discrete_arc(i: int, j: int, n: int) -> tuple:
    """Sorted image of ``{i, ..., j}`` in Z/n."""
    return tuple(sorted({t % n for t in range(i, j + 1)}))


def nerve_nk(n: int, k: int) -> SimplicialComplex:
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if k >= n - 1:
        return SimplicialComplex.full_simplex(n)
    return SimplicialComplex.from_simplices(n, (discrete_arc(i, i + k, n) for i in range(n)))


def cycle_power_edges(n: int, k: int) -> list:
    """Edges of the k-th distance power of the n-cycle."""
    return sorted({tuple(sorted((i, (i + j) % n))) for i in range(n) for j in range(1, k + 1) if (i + j) % n != i})


def clique_nk(n: int, k: int) -> SimplicialComplex:
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if k >= n // 2:
        return SimplicialComplex.full_simplex(n)
    if k == 0:
        return nerve_nk(n, 0)
    return clique_complex_of_graph(n, cycle_power_edges(n, k))


def cech(points, r) -> SimplicialComplex:
    return nerve(balls(points, r))


def vr(points, r) -> SimplicialComplex:
    """Vietoris-Rips complex: simplices are point sets of pairwise distance <= r."""
    r = as_fraction(r)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    arcs = balls(points, r / 2)
    n = len(arcs)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if intersects(arcs[i], arcs[j])]
    return clique_complex_of_graph(n, edges)


def dominated_vertex(k: SimplicialComplex, v: int) -> Optional[int]:
    """Smallest vertex whose addition keeps every simplex through ``v`` a simplex.

    Equivalently, the smallest other vertex lying in every maximal simplex
    that contains ``v``.
    """
    k._check_vertex(v)
    common = None
    for m in k._sets:
        if v in m:
            common = m if common is None else common & m
    rest = sorted(common - {v}) if common else []
    return rest[0] if rest else None


def is_minimal(k: SimplicialComplex) -> bool:
    return all(dominated_vertex(k, v) is None for v in k.vertices)


def nk_labeling(k: SimplicialComplex) -> Optional[tuple]:
    """Find ``(n, k, order)`` with ``order[i]`` the vertex playing role ``i`` in N(n, k).

    Returns ``None`` when the complex is not isomorphic to any N(n, k).
    """
    verts = k.vertices
    n = len(verts)
    if n == 0 or n != k.vertex_count:
        return None
    sizes = {len(s) for s in k.maximal}
    if len(sizes) != 1:
        return None
    size = sizes.pop()
    if size == n:
        return (n, n - 1, tuple(verts))
    kk = size - 1
    if len(k.maximal) != n:
        return None
    if kk == 0 or kk == n - 2:
        order = tuple(verts)
    else:
        # consecutive windows share exactly kk vertices and form an n-cycle
        sets = list(k._sets)
        nbrs = [[j for j in range(n) if j != i and len(sets[i] & sets[j]) == kk] for i in range(n)]
        if any(len(x) != 2 for x in nbrs):
            return None
        walk = [0, nbrs[0][0]]
        while len(walk) < n:
            a, b = walk[-2], walk[-1]
            walk.append(nbrs[b][0] if nbrs[b][0] != a else nbrs[b][1])
        # the vertex leaving window t on the way to window t+1 plays role t
        roles = []
        for t in range(n):
            gone = sets[walk[t]] - sets[walk[(t + 1) % n]]
            if len(gone) != 1:
                return None
            roles.append(next(iter(gone)))
        if len(set(roles)) != n:
            return None
        order = tuple(roles)
    table = {v: i for i, v in enumerate(order)}
    relabeled = SimplicialComplex.from_simplices(n, (tuple(table[v] for v in s) for s in k.maximal))
    if relabeled.maximal != nerve_nk(n, kk).maximal:
        return None
    return (n, kk, order)


def isomorphic_to_nk(k: SimplicialComplex) -> Optional[tuple]:
    found = nk_labeling(k)
    return None if found is None else found[:2]
