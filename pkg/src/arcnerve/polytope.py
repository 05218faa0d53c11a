"""Cyclic polytope facets and explicit (co)homology generators of N(n, k)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .complex import SimplicialComplex, nerve_nk
from .homology import Chain, Cochain, generator_of_top_homology, is_cocycle, pair


class PreconditionError(ValueError):
    """The (n, k) pair is outside the regime an operation is defined for."""


@dataclass(frozen=True)
class FacetSet:
    """Facets of the boundary of the even-dimensional cyclic polytope C_dim(n)."""

    dim: int
    n: int
    facets: tuple

    def __len__(self) -> int:
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in set(self.facets)

    def blocks(self, facet) -> list:
        """Split a facet into its adjacent pairs ``(i, i+1 mod n)``."""
        s, n = set(facet), self.n
        if len(s) == n:
            starts = list(range(0, n, 2))
        else:
            starts = []
            for v in sorted(s):
                if (v - 1) % n in s:
                    continue
                run = [v]
                while (run[-1] + 1) % n in s:
                    run.append((run[-1] + 1) % n)
                starts += run[0::2]
        return sorted((a, (a + 1) % n) for a in starts)


def block_placements(m: int, n: int) -> list:
    """Start points of ``m`` pairwise disjoint blocks {i, i+1} on the n-cycle.

    For ``n == 2m`` the two perfect tilings are both returned even though they
    cover the same vertex set.
    """
    if m < 1 or n < 2 * m:
        raise PreconditionError(f"cannot place {m} disjoint blocks on {n} vertices")
    return [
        c
        for c in combinations(range(n), m)
        if all(b - a >= 2 for a, b in zip(c, c[1:])) and c[0] + n - c[-1] >= 2
    ]


def _placement_vertices(p, n) -> tuple:
    return tuple(sorted({v % n for s in p for v in (s, s + 1)}))


def gale_facets(two_m: int, n: int) -> FacetSet:
    """Facets of the boundary of C_{2m}(n): unions of m disjoint adjacent pairs."""
    if two_m < 2 or two_m % 2:
        raise PreconditionError("dimension must be even and at least 2")
    if n <= two_m:
        raise PreconditionError(f"need n > {two_m}, got {n}")
    facets = sorted({_placement_vertices(p, n) for p in block_placements(two_m // 2, n)})
    return FacetSet(two_m, n, tuple(facets))


def gale_evenness_facets(d: int, n: int) -> list:
    """Brute-force Gale evenness over all d-subsets of {0, ..., n-1}."""
    out = []
    for sigma in combinations(range(n), d):
        s = set(sigma)
        outside = [x for x in range(n) if x not in s]
        ok = all(
            sum(1 for v in sigma if x < v < y) % 2 == 0
            for x, y in combinations(outside, 2)
        )
        if ok:
            out.append(sigma)
    return out


def cyclic_polytope_boundary(two_m: int, n: int) -> SimplicialComplex:
    return SimplicialComplex.from_simplices(n, gale_facets(two_m, n).facets)


def moment_curve(two_m: int, t) -> tuple:
    """Point of the trigonometric moment curve in R^{2m} (floating point)."""
    if two_m < 2 or two_m % 2:
        raise ValueError("dimension must be even and at least 2")
    x = float(Fraction(t)) if not isinstance(t, float) else t
    out = []
    for j in range(1, two_m // 2 + 1):
        out += [math.cos(2 * math.pi * j * x), math.sin(2 * math.pi * j * x)]
    return tuple(out)


# ----- regimes ---------------------------------------------------------------

def even_parameter(n: int, k: int) -> Optional[int]:
    """``l`` with k/n = l/(l+1) and n - k >= 2, else ``None``."""
    m = n - k
    if n < 2 or k < 0 or m < 2 or k % m:
        return None
    return k // m


def odd_parameter(n: int, k: int) -> Optional[int]:
    """``l`` with l/(l+1) < k/n < (l+1)/(l+2), else ``None``."""
    m = n - k
    if k < 1 or m < 1 or k % m == 0:
        return None
    return k // m


def _need_even(n, k) -> int:
    l = even_parameter(n, k)
    if l is None:
        raise PreconditionError(f"need k/n = l/(l+1) with n - k >= 2, got n={n}, k={k}")
    return l


def _need_odd(n, k) -> int:
    l = odd_parameter(n, k)
    if l is None:
        raise PreconditionError(f"need l/(l+1) < k/n < (l+1)/(l+2), got n={n}, k={k}")
    return l


def check_polytope_inclusion(n: int, k: int) -> bool:
    """Whether every facet of the boundary of C_{2l+2}(n) is a face of N(n, k)."""
    l = _need_odd(n, k)
    if n < 2 * l + 3:
        raise PreconditionError(f"need n >= {2 * l + 3}")
    nk = nerve_nk(n, k)
    return all(f in nk for f in gale_facets(2 * l + 2, n))


# ----- even case ---------------------------------------------------------------

def delta_simplex(n: int, k: int) -> tuple:
    """Oriented simplex [0, 1, m, m+1, ..., l*m, l*m+1] with m = n - k."""
    l = _need_even(n, k)
    m = n - k
    return tuple(v for i in range(l + 1) for v in (i * m, i * m + 1))


def missing_facets(n: int, k: int) -> list:
    """Block placements of the boundary of C_{2l+2}(n) whose vertex set is not in N(n, k).

    One entry per placement; for n = 2l + 2 both tilings cover every vertex and
    both are listed.
    """
    l = _need_even(n, k)
    nk = nerve_nk(n, k)
    found = sorted(
        _placement_vertices(p, n) for p in block_placements(l + 1, n) if _placement_vertices(p, n) not in nk
    )
    delta = delta_simplex(n, k)
    expected = sorted(tuple(sorted((v + i) % n for v in delta)) for i in range(n - k))
    if found != expected:
        raise AssertionError(f"missing facets {found} are not the rotations of {delta}")
    return found


def _rotate(chain, i: int, n: int):
    return type(chain).from_terms(chain.dim, [(tuple((v + i) % n for v in s), c) for s, c in chain.coeffs.items()])


def delta_boundary(n: int, k: int) -> Chain:
    """The cycle: boundary of the oriented simplex from :func:`delta_simplex`."""
    l = _need_even(n, k)
    m = n - k
    delta = delta_simplex(n, k)
    terms = []
    for i in range(l + 1):
        terms.append((tuple(v for v in delta if v != i * m), 1))
        terms.append((tuple(v for v in delta if v != i * m + 1), -1))
    z = Chain.from_terms(2 * l, terms)
    nk = nerve_nk(n, k)
    if delta in nk or not z.in_complex(nk):
        raise AssertionError("delta is not a minimal non-face")
    return z


def alpha_cycle(n: int, k: int, i: int) -> Chain:
    """``g^i`` applied to the cycle of :func:`delta_boundary`."""
    base = delta_boundary(n, k)
    if _rotate(base, n - k, n) != base:
        raise AssertionError("rotation by n - k does not fix the cycle")
    return _rotate(base, i % (n - k), n)


def beta_cochain_even(n: int, k: int) -> Cochain:
    """Sum of duals of [0, v0, m, v1, ..., (l-1)m, v_{l-1}, lm] with v_i strictly inside gap i."""
    l = _need_even(n, k)
    m = n - k
    if l == 0:
        return Cochain(0, {(0,): 1})
    terms = {}

    def build(i, acc):
        if i == l:
            terms[tuple(acc + [l * m])] = 1
            return
        for v in range(i * m + 1, (i + 1) * m):
            build(i + 1, acc + [i * m, v])

    build(0, [])
    return Cochain(2 * l, terms)


def rotated_cochain(c: Cochain, i: int, n: int) -> Cochain:
    """The cochain ``c o g^{-i}``: its value on ``g^i s`` is ``c(s)``."""
    return _rotate(c, i, n)


def raw_evaluation_pattern(n: int, k: int) -> list:
    """``<beta_0, alpha_i>`` for i = 0 .. n-k-1."""
    b = beta_cochain_even(n, k)
    return [pair(b, alpha_cycle(n, k, i)) for i in range(n - k)]


def evaluation_matrix(n: int, k: int) -> list:
    """Matrix ``<gamma_i, alpha_j>`` with gamma_i = -(beta_0 + ... + beta_i); must be the identity."""
    _need_even(n, k)
    size = n - k - 1
    b = beta_cochain_even(n, k)
    betas = [rotated_cochain(b, s, n) for s in range(size)]
    alphas = [alpha_cycle(n, k, j) for j in range(size)]
    mat = []
    for i in range(size):
        gamma = -sum(betas[1 : i + 1], betas[0])
        mat.append([pair(gamma, alphas[j]) for j in range(size)])
    if mat != [[int(i == j) for j in range(size)] for i in range(size)]:
        raise AssertionError(f"evaluation matrix is not the identity: {mat}")
    return mat


# ----- odd case ----------------------------------------------------------------

def admissible_sets(n: int, k: int) -> list:
    """All (n, k)-admissible sets, each a sorted tuple a_1 < ... < a_{2l+2}."""
    l = _need_odd(n, k)
    m = n - k
    size = 2 * (l + 1)
    out = []

    def extend(seq):
        # seq includes a_0 = 0
        t = len(seq) - 1
        if t == size:
            if seq[size] - seq[1] <= k:
                out.append(tuple(seq[1:]))
            return
        for a in range(seq[-1] + 1, min(seq[-1] + m, n)):
            nt = t + 1
            if nt % 2 == 0 and a - seq[nt - 2] < m:
                continue
            extend(seq + [a])

    extend([0])
    return out


def beta_cochain_odd(n: int, k: int) -> Cochain:
    """Sum of the duals of all admissible sets, checked to be a cocycle."""
    l = _need_odd(n, k)
    c = Cochain(2 * l + 1, {q: 1 for q in admissible_sets(n, k)})
    if not is_cocycle(nerve_nk(n, k), c):
        raise AssertionError(f"admissible cochain for ({n}, {k}) is not a cocycle")
    common = set(c.coeffs) & set(gale_facets(2 * l + 2, n).facets)
    m = n - k
    expected = tuple(sorted(v for i in range(1, l + 2) for v in (i * m - 1, i * m)))
    if common != {expected}:
        raise AssertionError(f"support meets the polytope boundary in {sorted(common)}, expected {expected}")
    return c


@lru_cache(maxsize=32)
def polytope_fundamental_cycle(two_m: int, n: int) -> Chain:
    """Generator of the top homology of the boundary of C_{2m}(n)."""
    return generator_of_top_homology(cyclic_polytope_boundary(two_m, n), two_m - 1)


def intersection_complex(n: int, k: int) -> SimplicialComplex:
    """N(n, k) intersected with the boundary of C_{2l+2}(n), for k/n = l/(l+1)."""
    l = _need_even(n, k)
    nk = nerve_nk(n, k)
    faces = []
    for p in block_placements(l + 1, n):
        f = _placement_vertices(p, n)
        if f in nk:
            faces.append(f)
        else:
            faces.extend(f[:i] + f[i + 1:] for i in range(len(f)) if f[:i] + f[i + 1:] in nk)
    return SimplicialComplex.from_simplices(n, faces)
