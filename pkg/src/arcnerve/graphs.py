"""Circular complete graphs, neighborhood complexes and the Lovasz bound."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .complex import SimplicialComplex
from .homotopy import connectivity, nerve_homotopy


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset

    def __post_init__(self):
        clean = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} has a vertex outside 0..{self.n - 1}")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    def neighbors(self, v: int) -> frozenset:
        return frozenset(b if a == v else a for a, b in self.edges if v in (a, b))

    def adjacency(self) -> list:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def _check(n: int, d: int) -> None:
    if d < 1 or n < 2 * d:
        raise ValueError(f"need d >= 1 and n >= 2d, got n={n}, d={d}")


def circular_complete(n: int, d: int) -> Graph:
    """K_{n/d}: i ~ j iff d <= |i - j| <= n - d."""
    _check(n, d)
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n) if d <= j - i <= n - d))


def neighborhood_complex(g: Graph) -> SimplicialComplex:
    """Complex whose simplices are vertex sets with a common neighbor."""
    adj = g.adjacency()
    return SimplicialComplex.from_simplices(g.n, (a for a in adj if a))


def chi_circular(n: int, d: int) -> int:
    """Chromatic number of K_{n/d}, which is ceil(n/d)."""
    _check(n, d)
    return -(-n // d)


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by backtracking over increasing color counts."""
    if g.n == 0:
        return 0
    adj = g.adjacency()
    order = sorted(range(g.n), key=lambda v: -len(adj[v]))

    def colorable(c: int) -> bool:
        color = [-1] * g.n

        def place(t: int) -> bool:
            if t == len(order):
                return True
            v = order[t]
            used = {color[u] for u in adj[v]}
            # symmetry breaking: never open more than one new color at a time
            top = max(color) + 1
            for col in range(min(c, top + 1)):
                if col not in used:
                    color[v] = col
                    if place(t + 1):
                        return True
            color[v] = -1
            return False

        return place(0)

    c = 1
    while not colorable(c):
        c += 1
    return c


@dataclass(frozen=True)
class LovaszReport:
    n: int
    d: int
    chi: int
    bound: int
    gap: int
    fractional_case: Fraction

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "chi": self.chi,
            "bound": self.bound,
            "gap": self.gap,
            "fractional_case": str(self.fractional_case),
        }


def lovasz_report(n: int, d: int) -> LovaszReport:
    """Compare chi(K_{n/d}) with conn(N(n, n - 2d)) + 3."""
    _check(n, d)
    h = nerve_homotopy(n, n - 2 * d)
    if h.is_contractible:
        raise AssertionError("the neighborhood complex is never contractible here")
    bound = int(connectivity(h)) + 3
    chi = chi_circular(n, d)
    frac = Fraction(n, 2 * d) % 1
    gap = chi - bound
    if gap != (1 if frac > Fraction(1, 2) else 0):
        raise AssertionError(f"gap {gap} disagrees with the fractional part {frac}")
    return LovaszReport(n, d, chi, bound, gap, frac)
