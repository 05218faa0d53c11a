"""Exact integral simplicial homology via Smith normal form.

Everything uses reduced homology, so the augmentation row ``d_0 = (1 ... 1)``
is part of the chain complex and a contractible complex has no homology.
Simplices are oriented by their sorted vertex order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .complex import SimplicialComplex

DEFAULT_MAX_VERTICES = 12
DEFAULT_MAX_DIM = 8
_caps = {"vertices": DEFAULT_MAX_VERTICES, "dim": DEFAULT_MAX_DIM}


class OracleCapExceeded(ValueError):
    """The complex is larger than the homology oracle is allowed to handle."""


def set_caps(vertices: Optional[int] = None, dim: Optional[int] = None) -> dict:
    """Change the oracle caps; returns the previous values."""
    old = dict(_caps)
    if vertices is not None:
        _caps["vertices"] = int(vertices)
    if dim is not None:
        _caps["dim"] = int(dim)
    return old


def get_caps() -> dict:
    return dict(_caps)


def _check_caps(k: SimplicialComplex) -> None:
    nv = len(k.vertices)
    if nv > _caps["vertices"]:
        raise OracleCapExceeded(f"{nv} vertices exceeds the oracle cap of {_caps['vertices']}")
    if k.dim > _caps["dim"]:
        raise OracleCapExceeded(f"dimension {k.dim} exceeds the oracle cap of {_caps['dim']}")


def sort_sign(vertices: Sequence[int]) -> tuple:
    """``(sorted tuple, sign)`` of the sorting permutation; sign 0 on repeats."""
    v = list(vertices)
    if len(set(v)) != len(v):
        return tuple(sorted(v)), 0
    sign = 1
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if v[i] > v[j]:
                sign = -sign
    return tuple(sorted(v)), sign


class _Combination:
    """Shared behaviour of chains and cochains: a finitely supported map."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs: Optional[Mapping[tuple, int]] = None):
        self.dim = dim
        clean = {}
        for s, c in (coeffs or {}).items():
            s = tuple(s)
            if len(s) != dim + 1:
                raise ValueError(f"simplex {s} does not have dimension {dim}")
            if list(s) != sorted(set(s)):
                raise ValueError(f"simplex {s} is not strictly increasing; use from_terms")
            if c:
                clean[s] = int(c)
        self.coeffs = clean

    @classmethod
    def from_terms(cls, dim: int, terms: Iterable[tuple]):
        """Build from ``(vertex sequence, coefficient)`` pairs in any vertex order."""
        acc: dict = {}
        for verts, c in terms:
            s, sign = sort_sign(verts)
            if sign == 0:
                raise ValueError(f"degenerate simplex {tuple(verts)}")
            acc[s] = acc.get(s, 0) + sign * c
        return cls(dim, acc)

    @classmethod
    def elementary(cls, simplex: Sequence[int]):
        return cls.from_terms(len(simplex) - 1, [(simplex, 1)])

    def _same(self, other) -> None:
        if type(other) is not type(self) or other.dim != self.dim:
            raise ValueError("dimension or type mismatch")

    def __add__(self, other):
        self._same(other)
        acc = dict(self.coeffs)
        for s, c in other.coeffs.items():
            acc[s] = acc.get(s, 0) + c
        return type(self)(self.dim, acc)

    def __neg__(self):
        return type(self)(self.dim, {s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return type(self)(self.dim, {s: k * c for s, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and other.dim == self.dim and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.dim, frozenset(self.coeffs.items())))

    def __iter__(self):
        return iter(sorted(self.coeffs.items()))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def get(self, simplex: Sequence[int]) -> int:
        s, sign = sort_sign(simplex)
        return sign * self.coeffs.get(s, 0)

    def support(self) -> list:
        return sorted(self.coeffs)

    def in_complex(self, k: SimplicialComplex) -> bool:
        return all(s in k for s in self.coeffs)

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*{list(s)}" for s, c in sorted(self.coeffs.items()))
        return f"{type(self).__name__}({self.dim}: {terms or '0'})"


class Chain(_Combination):
    __slots__ = ()

    def boundary(self) -> "Chain":
        """Ordinary boundary; a 0-chain maps to the zero (-1)-chain."""
        acc: dict = {}
        if self.dim == 0:
            return Chain(-1, {})
        for s, c in self.coeffs.items():
            for i in range(len(s)):
                f = s[:i] + s[i + 1:]
                acc[f] = acc.get(f, 0) + (-1) ** i * c
        return Chain(self.dim - 1, acc)

    def augmentation(self) -> int:
        if self.dim != 0:
            raise ValueError("augmentation is defined on 0-chains")
        return sum(self.coeffs.values())

    def push_forward(self, f: Callable[[int], int]) -> "Chain":
        """Image under the chain map of a vertex map (degenerate images vanish)."""
        acc: dict = {}
        for s, c in self.coeffs.items():
            t, sign = sort_sign([f(v) for v in s])
            if sign:
                acc[t] = acc.get(t, 0) + sign * c
        return Chain(self.dim, acc)


class Cochain(_Combination):
    __slots__ = ()

    def coboundary(self, k: SimplicialComplex) -> "Cochain":
        acc = {}
        for t in k.faces(self.dim + 1):
            v = sum((-1) ** i * self.coeffs.get(t[:i] + t[i + 1:], 0) for i in range(len(t)))
            if v:
                acc[t] = v
        return Cochain(self.dim + 1, acc)


def pair(c: Cochain, z: Chain) -> int:
    """Evaluation of a cochain on a chain."""
    if not isinstance(c, Cochain) or not isinstance(z, Chain):
        raise TypeError("pair expects (Cochain, Chain)")
    if c.dim != z.dim:
        raise ValueError(f"dimension mismatch: cochain {c.dim}, chain {z.dim}")
    return sum(c.coeffs.get(s, 0) * v for s, v in z.coeffs.items())


# ----- integer matrices -----------------------------------------------------

def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: list, ncols: Optional[int] = None) -> list:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a: list, b: list, inner: Optional[int] = None) -> list:
    """Product of integer matrices given as row lists."""
    if not a:
        return []
    bt = transpose(b)
    if not bt:
        return [[] for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: list, v: Sequence[int]) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def det(a: list) -> int:
    """Exact determinant (fraction-free Bareiss elimination)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse_unimodular(a: list) -> list:
    """Inverse of a square integer matrix with determinant +-1."""
    n = len(a)
    res = smith_normal_form(a)
    if any(abs(x) != 1 for x in res.diagonal) or len(res.diagonal) != n:
        raise ValueError("matrix is not unimodular")
    # U a V = I  =>  a^-1 = V U
    return matmul(res.V, res.U)


@dataclass(frozen=True)
class SNFResult:
    """``U @ M @ V == D`` with D diagonal; ``U_inv``/``V_inv`` are the inverses."""

    D: list
    U: list
    V: list
    U_inv: list
    V_inv: list
    diagonal: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _snf_core(a: list, m: int, n: int, track: bool):
    """In-place Smith reduction of the m x n row list ``a``.

    With ``track`` the elementary operations are mirrored so that every
    update is a row operation: U and UinvT for row ops, VT and Vinv for
    column ops.
    """
    U = identity(m) if track else None
    UinvT = identity(m) if track else None
    VT = identity(n) if track else None
    Vinv = identity(n) if track else None

    def swap_rows(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        if track:
            U[i], U[j] = U[j], U[i]
            UinvT[i], UinvT[j] = UinvT[j], UinvT[i]

    def add_row(i, j, c):  # row_i += c * row_j
        ri, rj = a[i], a[j]
        for t in range(n):
            if rj[t]:
                ri[t] += c * rj[t]
        if track:
            U[i] = [x + c * y for x, y in zip(U[i], U[j])]
            UinvT[j] = [x - c * y for x, y in zip(UinvT[j], UinvT[i])]

    def neg_row(i):
        a[i] = [-x for x in a[i]]
        if track:
            U[i] = [-x for x in U[i]]
            UinvT[i] = [-x for x in UinvT[i]]

    def swap_cols(i, j):
        if i == j:
            return
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            VT[i], VT[j] = VT[j], VT[i]
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_col(i, j, c):  # col_i += c * col_j
        for row in a:
            if row[j]:
                row[i] += c * row[j]
        if track:
            VT[i] = [x + c * y for x, y in zip(VT[i], VT[j])]
            Vinv[j] = [x - c * y for x, y in zip(Vinv[j], Vinv[i])]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(a[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            neg_row(t)
        diag.append(a[t][t])
        t += 1
    return diag, U, UinvT, VT, Vinv


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form with unimodular transforms."""
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag, U, UinvT, VT, Vinv = _snf_core(a, m, n, track=True)
    return SNFResult(D=a, U=U, V=transpose(VT, n), U_inv=transpose(UinvT, m), V_inv=Vinv, diagonal=diag)


def _sparse_factors(rows: list, ncols: int) -> list:
    """Nonzero invariant factors of a sparse matrix ``rows[i] = {col: value}``.

    Unit pivots are eliminated first, which handles almost all of a boundary
    matrix; whatever remains goes through the dense reduction.
    """
    rows = {i: dict(r) for i, r in enumerate(rows) if r}
    cols: dict = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda j: len(cols[j])):
            if c not in cols:
                continue
            piv = [(len(rows[r]), r) for r in cols[c] if abs(rows[r][c]) == 1]
            if not piv:
                continue
            _, r = min(piv)
            prow = rows[r]
            pv = prow[c]
            for r2 in list(cols[c]):
                if r2 == r:
                    continue
                row2 = rows[r2]
                f = row2[c] * pv
                for cc, v in prow.items():
                    nv = row2.get(cc, 0) - f * v
                    if nv:
                        if cc not in row2:
                            cols[cc].add(r2)
                        row2[cc] = nv
                    elif cc in row2:
                        del row2[cc]
                        cols[cc].discard(r2)
                if not row2:
                    del rows[r2]
            for cc in prow:
                cols[cc].discard(r)
                if not cols[cc] and cc != c:
                    del cols[cc]
            del rows[r]
            cols.pop(c, None)
            units += 1
            progress = True
    if not rows:
        return [1] * units
    rlist = sorted(rows)
    clist = sorted({j for r in rows.values() for j in r})
    dense = [[rows[r].get(j, 0) for j in clist] for r in rlist]
    diag, *_ = _snf_core(dense, len(rlist), len(clist), track=False)
    return [1] * units + diag


def invariant_factors(matrix: Sequence[Sequence[int]]) -> list:
    """Nonzero diagonal entries of the Smith normal form, in divisibility order."""
    rows = [{j: int(v) for j, v in enumerate(r) if v} for r in matrix]
    ncols = len(matrix[0]) if len(matrix) else 0
    return _sparse_factors(rows, ncols)


# ----- boundary operators and homology ------------------------------------

@lru_cache(maxsize=256)
def _face_index(k: SimplicialComplex, d: int) -> tuple:
    faces = k.faces(d) if d >= 0 else [()]
    return tuple(faces), {f: i for i, f in enumerate(faces)}


def _sparse_boundary(k: SimplicialComplex, d: int) -> tuple:
    """Rows (indexed by (d-1)-faces) of the reduced boundary d_d as dicts."""
    cols, _ = _face_index(k, d)
    low, low_idx = _face_index(k, d - 1)
    rows = [dict() for _ in low]
    for j, s in enumerate(cols):
        if d == 0:
            rows[0][j] = 1
            continue
        for i in range(len(s)):
            rows[low_idx[s[:i] + s[i + 1:]]][j] = (-1) ** i
    return rows, len(cols)


def _dense_boundary(k: SimplicialComplex, d: int) -> list:
    rows, ncols = _sparse_boundary(k, d)
    return [[r.get(j, 0) for j in range(ncols)] for r in rows]


def boundary_matrix(k: SimplicialComplex, d: int) -> list:
    """Reduced boundary matrix: rows are (d-1)-faces (a single row of ones for d = 0)."""
    if not 0 <= d <= k.dim:
        raise ValueError(f"dimension {d} out of range 0..{k.dim}")
    return _dense_boundary(k, d)


@dataclass(frozen=True)
class HomologyGroups:
    """Reduced integral homology: ``groups[d] = (betti, torsion)``."""

    groups: tuple

    def betti(self, d: int) -> int:
        return self.groups[d][0] if 0 <= d < len(self.groups) else 0

    def torsion(self, d: int) -> tuple:
        return self.groups[d][1] if 0 <= d < len(self.groups) else ()

    @property
    def is_trivial(self) -> bool:
        return all(b == 0 and not t for b, t in self.groups)

    @property
    def is_free(self) -> bool:
        return all(not t for _, t in self.groups)

    def nonzero(self) -> dict:
        return {d: g for d, g in enumerate(self.groups) if g[0] or g[1]}

    def euler_characteristic(self) -> int:
        """Reduced Euler characteristic from the Betti numbers."""
        return sum((-1) ** d * b for d, (b, _) in enumerate(self.groups))

    def to_dict(self) -> dict:
        return {str(d): {"betti": b, "torsion": list(t)} for d, (b, t) in self.nonzero().items()}

    def __str__(self) -> str:
        parts = []
        for d, (b, t) in self.nonzero().items():
            summands = ([f"Z^{b}" if b > 1 else "Z"] if b else []) + [f"Z/{x}" for x in t]
            parts.append(f"H{d}=" + "+".join(summands))
        return ", ".join(parts) or "0"


@lru_cache(maxsize=512)
def _factors(k: SimplicialComplex, d: int) -> tuple:
    if d < 0 or d > k.dim:
        return ()
    rows, ncols = _sparse_boundary(k, d)
    return tuple(_sparse_factors(rows, ncols))


def reduced_homology(k: SimplicialComplex, up_to_dim: Optional[int] = None) -> HomologyGroups:
    """Reduced homology in dimensions ``0..up_to_dim`` (default: all)."""
    _check_caps(k)
    top = k.dim if up_to_dim is None else up_to_dim
    if top > k.dim:
        raise ValueError(f"up_to_dim {top} exceeds the dimension {k.dim}")
    groups = []
    for d in range(top + 1):
        nfaces = len(_face_index(k, d)[0])
        rank_d = len(_factors(k, d))
        up = _factors(k, d + 1)
        groups.append((nfaces - rank_d - len(up), tuple(x for x in up if x > 1)))
    return HomologyGroups(tuple(groups))


def is_cocycle(k: SimplicialComplex, c: Cochain) -> bool:
    if not isinstance(c, Cochain):
        raise TypeError("expected a Cochain")
    if not c.in_complex(k):
        raise ValueError("cochain is supported outside the complex")
    return not c.coboundary(k)


def _coords(k: SimplicialComplex, z: Chain) -> list:
    faces, idx = _face_index(k, z.dim)
    v = [0] * len(faces)
    for s, c in z.coeffs.items():
        if s not in idx:
            raise ValueError(f"simplex {s} is not in the complex")
        v[idx[s]] = c
    return v


def is_boundary(k: SimplicialComplex, z: Chain) -> bool:
    """Whether ``z = d x`` for an integral (d+1)-chain ``x``."""
    if not isinstance(z, Chain):
        raise TypeError("expected a Chain")
    if not 0 <= z.dim <= k.dim:
        raise ValueError(f"chain dimension {z.dim} out of range")
    _check_caps(k)
    y = _coords(k, z)
    if z.dim == k.dim:
        return not any(y)
    snf = _snf(k, z.dim + 1)
    uy = matvec(snf.U, y)
    r = snf.rank
    return all(uy[i] % snf.diagonal[i] == 0 for i in range(r)) and not any(uy[r:])


@lru_cache(maxsize=128)
def _snf(k: SimplicialComplex, d: int) -> SNFResult:
    return smith_normal_form(_dense_boundary(k, d))


@dataclass(frozen=True)
class HomologyBasis:
    """Cycles representing a basis of a free reduced homology group."""

    complex: SimplicialComplex
    dim: int
    generators: tuple
    _kernel_rank: int
    _vinv_rows: tuple
    _u2: tuple
    _r2: int

    @property
    def rank(self) -> int:
        return len(self.generators)

    def coordinates(self, z: Chain) -> list:
        """Coordinates of the class of the cycle ``z`` in this basis."""
        if z.dim != self.dim:
            raise ValueError("dimension mismatch")
        y = matvec(self._vinv_rows, _coords(self.complex, z))
        r = self._kernel_rank
        if any(y[:r]):
            raise ValueError("chain is not a cycle")
        w = matvec(self._u2, y[r:])
        return w[self._r2:]


@lru_cache(maxsize=64)
def homology_basis(k: SimplicialComplex, d: int) -> HomologyBasis:
    """A basis of reduced H_d as explicit cycles; torsion is rejected."""
    if not 0 <= d <= k.dim:
        raise ValueError(f"dimension {d} out of range 0..{k.dim}")
    _check_caps(k)
    faces, _ = _face_index(k, d)
    n = len(faces)
    s1 = _snf(k, d)
    r = s1.rank
    vker = [row[r:] for row in s1.V]  # n x (n - r)
    if d + 1 <= k.dim:
        w = [row for row in matmul(s1.V_inv, _dense_boundary(k, d + 1))[r:]]
    else:
        w = [[] for _ in range(n - r)]
    if n - r == 0:
        return HomologyBasis(k, d, (), r, tuple(map(tuple, s1.V_inv)), (), 0)
    s2 = smith_normal_form(w)
    if any(x != 1 for x in s2.diagonal):
        raise ValueError(f"torsion in dimension {d}; only free groups are supported")
    r2 = s2.rank
    gens = []
    for col in range(r2, n - r):
        kc = [row[col] for row in s2.U_inv]
        vec = matvec(vker, kc)
        gens.append(Chain(d, {faces[i]: c for i, c in enumerate(vec) if c}))
    return HomologyBasis(
        k, d, tuple(gens), r, tuple(map(tuple, s1.V_inv)), tuple(map(tuple, s2.U)), r2
    )


def _as_function(vertex_map) -> Callable[[int], int]:
    if callable(vertex_map):
        return vertex_map
    return lambda v: vertex_map[v]


def is_simplicial(src: SimplicialComplex, dst: SimplicialComplex, vertex_map) -> bool:
    f = _as_function(vertex_map)
    try:
        return all(tuple({f(v) for v in s}) in dst for s in src.maximal)
    except (KeyError, IndexError):
        return False


def induced_map_on_homology(src: SimplicialComplex, dst: SimplicialComplex, vertex_map, d: int) -> list:
    """Matrix of the induced map on H_d in the bases of :func:`homology_basis`.

    Column j holds the image of the j-th source generator.
    """
    if not is_simplicial(src, dst, vertex_map):
        raise ValueError("vertex map is not simplicial")
    f = _as_function(vertex_map)
    bs = homology_basis(src, d)
    bd = homology_basis(dst, d)
    cols = [bd.coordinates(g.push_forward(f)) for g in bs.generators]
    return [[cols[j][i] for j in range(len(cols))] for i in range(bd.rank)]


def generator_of_top_homology(k: SimplicialComplex, d: int) -> Chain:
    """A cycle generating H_d when that group is infinite cyclic."""
    basis = homology_basis(k, d)
    if basis.rank != 1:
        raise ValueError(f"H_{d} has rank {basis.rank}, expected 1")
    return basis.generators[0]
