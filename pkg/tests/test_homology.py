
import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from arcnerve import SimplicialComplex, nerve
from arcnerve.complex import clique_nk, nerve_nk
from arcnerve.homology import (
    Chain,
    Cochain,
    OracleCapExceeded,
    boundary_matrix,
    det,
    generator_of_top_homology,
    homology_basis,
    induced_map_on_homology,
    invariant_factors,
    is_boundary,
    is_cocycle,
    matmul,
    pair,
    reduced_homology,
    set_caps,
    smith_normal_form,
    sort_sign,
)
from arcnerve.polytope import cyclic_polytope_boundary

from conftest import grid_arcs

# six-vertex projective plane
RP2 = SimplicialComplex.from_simplices(6, [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (1, 3, 5), (2, 4, 5),
])

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def is_diagonal_chain(d):
    return all(x != 0 for x in d) and all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))


class TestSNF:
    def test_identity(self):
        r = smith_normal_form([[1, 0], [0, 1]])
        assert r.D == [[1, 0], [0, 1]] and r.diagonal == [1, 1]

    def test_two_by_two(self):
        assert smith_normal_form([[2, 4], [6, 8]]).diagonal == [2, 4]

    def test_zero(self):
        r = smith_normal_form([[0, 0], [0, 0]])
        assert r.diagonal == [] and r.D == [[0, 0], [0, 0]]

    @given(matrices)
    def test_transforms(self, m):
        r = smith_normal_form(m)
        assert matmul(matmul(r.U, m), r.V) == r.D
        assert abs(det(r.U)) == 1 and abs(det(r.V)) == 1
        size_m, size_n = len(m), len(m[0])
        assert matmul(r.U, r.U_inv) == [[int(i == j) for j in range(size_m)] for i in range(size_m)]
        assert matmul(r.V, r.V_inv) == [[int(i == j) for j in range(size_n)] for i in range(size_n)]
        for i, row in enumerate(r.D):
            for j, x in enumerate(row):
                assert x == (r.diagonal[i] if i == j and i < r.rank else 0)
        assert is_diagonal_chain(r.diagonal) and all(x > 0 for x in r.diagonal)

    @given(matrices)
    def test_against_sympy(self, m):
        want = sympy_snf(Matrix(m), domain=ZZ)
        want = [abs(int(want[i, i])) for i in range(min(want.shape)) if want[i, i] != 0]
        assert smith_normal_form(m).diagonal == want
        assert invariant_factors(m) == want


class TestBoundary:
    def test_edge(self):
        assert boundary_matrix(SimplicialComplex.full_simplex(2), 1) == [[-1], [1]]

    def test_augmentation_row(self):
        assert boundary_matrix(SimplicialComplex.full_simplex(3), 0) == [[1, 1, 1]]

    def test_shapes(self):
        k = nerve_nk(6, 3)
        shapes = [(len(boundary_matrix(k, d)), len(boundary_matrix(k, d)[0])) for d in range(4)]
        assert shapes == [(1, 6), (6, 15), (15, 18), (18, 6)]

    @given(grid_arcs(max_n=7))
    def test_boundary_squared_zero(self, coll):
        k = nerve(coll)
        for d in range(1, k.dim + 1):
            a, b = boundary_matrix(k, d - 1), boundary_matrix(k, d)
            assert all(x == 0 for row in matmul(a, b) for x in row)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            boundary_matrix(nerve_nk(4, 1), 2)


class TestHomology:
    def test_six_three(self):
        assert reduced_homology(nerve_nk(6, 3)).nonzero() == {2: (2, ())}

    def test_clique_nine_three(self):
        assert reduced_homology(clique_nk(9, 3)).nonzero() == {2: (2, ())}

    def test_five_three(self):
        assert reduced_homology(nerve_nk(5, 3)).nonzero() == {3: (1, ())}

    def test_projective_plane_torsion(self):
        h = reduced_homology(RP2)
        assert h.nonzero() == {1: (0, (2,))}
        assert not h.is_free
        with pytest.raises(ValueError):
            homology_basis(RP2, 1)

    def test_points(self):
        assert reduced_homology(nerve_nk(4, 0)).nonzero() == {0: (3, ())}

    def test_caps(self):
        old = set_caps(5, 8)
        try:
            with pytest.raises(OracleCapExceeded):
                reduced_homology(nerve_nk(6, 2))
        finally:
            set_caps(old["vertices"], old["dim"])

    @given(grid_arcs(max_n=7))
    def test_euler_characteristic(self, coll):
        k = nerve(coll)
        faces = sum((-1) ** d * len(k.faces(d)) for d in range(k.dim + 1))
        assert reduced_homology(k).euler_characteristic() == faces - 1


class TestChains:
    def test_sort_sign(self):
        assert sort_sign([2, 0, 1]) == ((0, 1, 2), 1)
        assert sort_sign([1, 0, 2]) == ((0, 1, 2), -1)
        assert sort_sign([1, 1])[1] == 0

    def test_pairing_dual(self):
        s = (0, 2, 5)
        assert pair(Cochain.elementary(s), Chain.elementary(s)) == 1

    def test_boundary_of_boundary(self):
        c = Chain.elementary((0, 1, 2, 3))
        assert not c.boundary().boundary()

    def test_cycle_of_triangle(self):
        z = generator_of_top_homology(SimplicialComplex.simplex_boundary(3), 1)
        assert not z.boundary()
        assert sorted(abs(c) for _, c in z) == [1, 1, 1]

    def test_cocycle(self):
        k = SimplicialComplex.simplex_boundary(3)
        assert is_cocycle(k, Cochain.elementary((0, 1)))
        assert not is_cocycle(SimplicialComplex.full_simplex(3), Cochain.elementary((0, 1)))

    def test_is_boundary(self):
        k = SimplicialComplex.full_simplex(3)
        z = Chain.elementary((0, 1, 2)).boundary()
        assert is_boundary(k, z)
        assert not is_boundary(SimplicialComplex.simplex_boundary(3), z)


class TestMaps:
    def test_identity_map(self):
        k = nerve_nk(6, 3)
        assert induced_map_on_homology(k, k, list(range(6)), 2) == [[1, 0], [0, 1]]

    def test_not_simplicial(self):
        k = nerve_nk(5, 1)
        with pytest.raises(ValueError):
            induced_map_on_homology(k, k, [0, 2, 4, 1, 3], 1)

    def test_polytope_sphere_generator(self):
        poly = cyclic_polytope_boundary(4, 7)
        z = generator_of_top_homology(poly, 3)
        assert {abs(c) for _, c in z} == {1}
        assert {s for s, _ in z} == set(poly.maximal)

    def test_polytope_into_nerve(self):
        poly = cyclic_polytope_boundary(4, 7)
        m = induced_map_on_homology(poly, nerve_nk(7, 4), list(range(7)), 3)
        assert m in ([[1]], [[-1]])

    @given(st.integers(3, 7), st.data())
    def test_rotation_squares(self, n, data):
        # the induced map of a composite is the product of induced maps
        k_ = data.draw(st.integers(1, n - 2))
        k = nerve_nk(n, k_)
        d = max(reduced_homology(k).nonzero())
        g = [(v + 1) % n for v in range(n)]
        g2 = [(v + 2) % n for v in range(n)]
        m1 = induced_map_on_homology(k, k, g, d)
        assert matmul(m1, m1) == induced_map_on_homology(k, k, g2, d)
