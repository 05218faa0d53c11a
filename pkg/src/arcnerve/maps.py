"""Simplicial vertex maps: dihedral symmetries and the mod-n surjection."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .complex import SimplicialComplex, clique_nk, nerve_nk
from .homology import det, homology_basis, induced_map_on_homology, matmul, inverse_unimodular, sort_sign
from .homotopy import nerve_homotopy
from .polytope import PreconditionError, alpha_cycle, delta_simplex, even_parameter, odd_parameter

BRUTE_FORCE_CAP = 8


@dataclass(frozen=True)
class VertexMap:
    """A vertex function that is checked to be simplicial from ``source`` to ``target``."""

    source: SimplicialComplex
    target: SimplicialComplex
    table: tuple

    def __post_init__(self):
        if len(self.table) < self.source.vertex_count:
            raise ValueError("the table must cover every source vertex")
        for v in self.table:
            if not 0 <= v < self.target.vertex_count:
                raise ValueError(f"image {v} is not a target vertex")
        for s in self.source.maximal:
            img = {self.table[v] for v in s}
            if img not in self.target:
                raise ValueError(f"image of {s} is not a simplex of the target")

    def __call__(self, v: int) -> int:
        return self.table[v]

    def image(self, simplex) -> tuple:
        return tuple(sorted({self.table[v] for v in simplex}))

    def is_surjective(self) -> bool:
        """Whether every maximal simplex of the target is the image of a source simplex."""
        images = {self.image(s) for s in self.source.maximal}
        return all(any(set(t) <= set(i) for i in images) for t in self.target.maximal)

    def then(self, other: "VertexMap") -> "VertexMap":
        """Composite: apply ``self`` first, then ``other``."""
        return VertexMap(self.source, other.target, tuple(other.table[v] for v in self.table))

    def preimage_vertices(self, vertices) -> tuple:
        want = set(vertices)
        return tuple(v for v in self.source.vertices if self.table[v] in want)


@dataclass(frozen=True)
class DihedralElement:
    """The map ``x -> rotation + (-1 if reflected else 1) * x`` on Z/n."""

    n: int
    rotation: int = 0
    reflected: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "rotation", self.rotation % self.n)

    @classmethod
    def g(cls, n: int) -> "DihedralElement":
        return cls(n, 1, False)

    @classmethod
    def epsilon(cls, n: int) -> "DihedralElement":
        return cls(n, 0, True)

    @classmethod
    def identity(cls, n: int) -> "DihedralElement":
        return cls(n)

    def __call__(self, x: int) -> int:
        return (self.rotation + (-x if self.reflected else x)) % self.n

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        """Composition ``self o other`` (``other`` acts first)."""
        if other.n != self.n:
            raise ValueError("elements of different dihedral groups")
        s = -1 if self.reflected else 1
        return DihedralElement(self.n, self.rotation + s * other.rotation, self.reflected != other.reflected)

    def __pow__(self, e: int) -> "DihedralElement":
        out = DihedralElement.identity(self.n)
        base = self if e >= 0 else self.inverse()
        for _ in range(abs(e)):
            out = out * base
        return out

    def inverse(self) -> "DihedralElement":
        if self.reflected:
            return self
        return DihedralElement(self.n, -self.rotation, False)

    def table(self) -> tuple:
        return tuple(self(x) for x in range(self.n))


def dihedral_vertex_map(n: int, k: int, element: DihedralElement, clique: bool = False) -> VertexMap:
    """The vertex bijection of ``element`` as a map of N(n, k) (or its clique complex) to itself."""
    if element.n != n:
        raise ValueError("element belongs to a different dihedral group")
    k_ = clique_nk(n, k) if clique else nerve_nk(n, k)
    return VertexMap(k_, k_, element.table())


def automorphism_count(k: SimplicialComplex, cap: int = BRUTE_FORCE_CAP) -> int:
    """Number of vertex bijections preserving the maximal simplices (brute force)."""
    verts = k.vertices
    if len(verts) > cap:
        raise ValueError(f"{len(verts)} vertices exceeds the brute-force cap of {cap}")
    maximal = set(k._sets)
    count = 0
    for perm in permutations(verts):
        table = dict(zip(verts, perm))
        if all(frozenset(table[v] for v in s) in maximal for s in k.maximal):
            count += 1
    return count


def epsilon_delta_identity(n: int, k: int) -> bool:
    """Check ``eps(Delta) = (-1)^(l+1) g^{-1}(Delta)`` as oriented simplices."""
    l = even_parameter(n, k)
    if l is None:
        raise PreconditionError(f"need k/n = l/(l+1) with n - k >= 2, got n={n}, k={k}")
    delta = delta_simplex(n, k)
    _, sign_d = sort_sign(delta)
    eps_set, sign_e = sort_sign([(-v) % n for v in delta])
    g_set, sign_g = sort_sign([(v - 1) % n for v in delta])
    return eps_set == g_set and sign_d * sign_e == (-1) ** (l + 1) * sign_d * sign_g


@dataclass(frozen=True)
class ActionReport:
    """Matrices of g and eps on the nonzero reduced homology of N(n, k).

    In the even case they are written in the basis alpha_0 .. alpha_{n-k-2};
    in the odd case they are 1x1 matrices on H_{2l+1}.
    """

    n: int
    k: int
    l: int
    case: str
    dim: int
    g_matrix: list
    eps_matrix: list
    expected_g: list
    expected_eps: list

    @property
    def ok(self) -> bool:
        return self.g_matrix == self.expected_g and self.eps_matrix == self.expected_eps

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "case": self.case,
            "dim": self.dim,
            "g": self.g_matrix,
            "eps": self.eps_matrix,
            "ok": self.ok,
        }


def _alpha_coords(size: int, t: int) -> list:
    """Coordinates of alpha_t in the basis alpha_0..alpha_{size-1}; alpha_size is minus their sum."""
    t %= size + 1
    if t == size:
        return [-1] * size
    return [int(i == t) for i in range(size)]


def dihedral_action_on_homology(n: int, k: int) -> ActionReport:
    """Induced action of g and eps, compared against the predicted formulas."""
    h = nerve_homotopy(n, k)
    if h.is_contractible:
        raise PreconditionError(f"N({n}, {k}) is contractible")
    cx = nerve_nk(n, k)
    g = DihedralElement.g(n)
    eps = DihedralElement.epsilon(n)
    mg = induced_map_on_homology(cx, cx, g, h.dim)
    me = induced_map_on_homology(cx, cx, eps, h.dim)
    l = even_parameter(n, k)
    if l is not None:
        size = n - k - 1
        basis = homology_basis(cx, h.dim)
        a = [basis.coordinates(alpha_cycle(n, k, i)) for i in range(size)]
        a = [[a[j][i] for j in range(size)] for i in range(size)]  # columns are alphas
        if abs(det(a)) != 1:
            raise AssertionError("alpha_0 .. alpha_{n-k-2} do not form a basis")
        a_inv = inverse_unimodular(a)
        g_alpha = matmul(a_inv, matmul(mg, a))
        e_alpha = matmul(a_inv, matmul(me, a))
        cols_g = [_alpha_coords(size, i + 1) for i in range(size)]
        sign = (-1) ** (l + 1)
        cols_e = [[sign * x for x in _alpha_coords(size, -i - 1)] for i in range(size)]
        exp_g = [[cols_g[j][i] for j in range(size)] for i in range(size)]
        exp_e = [[cols_e[j][i] for j in range(size)] for i in range(size)]
        return ActionReport(n, k, l, "even", h.dim, g_alpha, e_alpha, exp_g, exp_e)
    l = odd_parameter(n, k)
    return ActionReport(n, k, l, "odd", h.dim, mg, me, [[1]], [[(-1) ** (l + 1)]])


def mod_n_surjection(n: int, k: int) -> VertexMap:
    """The map ``i -> i mod n`` from the clique complex of C_{n+k}^k onto N(n, k)."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    src = clique_nk(n + k, k)
    dst = nerve_nk(n, k)
    f = VertexMap(src, dst, tuple(i % n for i in range(n + k)))
    for i in range(n):
        img = f.image(tuple((i + t) % (n + k) for t in range(k + 1)))
        if img != tuple(sorted({(i + t) % n for t in range(k + 1)})):
            raise AssertionError(f"window {i} is not mapped onto its image window")
    if not f.is_surjective():
        raise AssertionError("map is not surjective on maximal simplices")
    return f


def preimage_complex(f: VertexMap, tau) -> SimplicialComplex:
    tau = tuple(sorted(set(tau)))
    if not tau or tau not in f.target:
        raise ValueError(f"{tau} is not a simplex of the target")
    return f.source.induced(f.preimage_vertices(tau))


def cone_apexes(k: SimplicialComplex) -> list:
    """Vertices lying in every maximal simplex."""
    if not k.maximal:
        return []
    common = set(k.maximal[0])
    for s in k.maximal[1:]:
        common &= set(s)
    return sorted(common)


def _proof_apex(n: int, k: int, tau: tuple) -> int:
    """Apex from the case analysis on the split of tau at k."""
    if k >= n - 1:
        return min(tau)
    low = [v for v in tau if v < k]
    high = [v for v in tau if v >= k]
    v = next(x for x in tau if all((y - x) % n <= k for y in tau))
    if v in low:
        return v
    if not low:
        return high[0]
    return low[-1] + n


def preimage_is_cone(f: VertexMap, tau) -> Optional[int]:
    """Apex of the preimage of ``tau`` under the mod-n map, or ``None`` if it is not a cone."""
    n = f.target.vertex_count
    k = f.source.vertex_count - n
    tau = tuple(sorted(set(tau)))
    pre = preimage_complex(f, tau)
    w = _proof_apex(n, k, tau)
    if w in pre.vertices and all(w in s for s in pre.maximal):
        return w
    return None
