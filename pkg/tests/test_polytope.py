import math
from fractions import Fraction as F
from itertools import combinations

import pytest

from arcnerve.complex import nerve_nk
from arcnerve.homology import Chain, is_boundary, is_cocycle, pair
from arcnerve.polytope import (
    PreconditionError,
    admissible_sets,
    alpha_cycle,
    beta_cochain_even,
    beta_cochain_odd,
    check_polytope_inclusion,
    cyclic_polytope_boundary,
    delta_boundary,
    delta_simplex,
    evaluation_matrix,
    even_parameter,
    gale_facets,
    missing_facets,
    moment_curve,
    odd_parameter,
    polytope_fundamental_cycle,
    raw_evaluation_pattern,
)


def brute_gale(d, n):
    """Subsets where every pair of non-members sees an even number of members between them."""
    out = []
    for s in combinations(range(n), d):
        rest = [v for v in range(n) if v not in s]
        if all(sum(1 for x in s if i < x < j) % 2 == 0 for i, j in combinations(rest, 2)):
            out.append(s)
    return out


def brute_admissible(n, k):
    l = odd_parameter(n, k)
    m = n - k
    out = []
    for q in combinations(range(1, n), 2 * (l + 1)):
        a = (0,) + q
        if any(a[i + 1] - a[i] >= m for i in range(2 * l + 2)):
            continue
        if any(a[2 * (i + 1)] - a[2 * i] < m for i in range(l + 1)):
            continue
        if a[-1] - a[1] > k:
            continue
        out.append(q)
    return out


def rotations(base, n, count):
    return sorted(tuple(sorted((v + i) % n for v in base)) for i in range(count))


class TestGale:
    @pytest.mark.parametrize("n", range(3, 11))
    def test_matches_brute_force(self, n):
        for m in range(1, (n - 1) // 2 + 1):
            assert sorted(gale_facets(2 * m, n).facets) == brute_gale(2 * m, n)

    def test_polygon(self):
        assert sorted(gale_facets(2, 6).facets) == sorted(tuple(sorted((i, (i + 1) % 6))) for i in range(6))

    @pytest.mark.parametrize("m", range(1, 4))
    def test_simplex(self, m):
        assert len(gale_facets(2 * m, 2 * m + 1)) == 2 * m + 1

    def test_four_seven(self):
        assert len(gale_facets(4, 7)) == 14

    def test_blocks(self):
        fs = gale_facets(4, 7)
        assert fs.blocks((0, 1, 3, 4)) == [(0, 1), (3, 4)]
        assert fs.blocks((0, 2, 3, 6)) == [(2, 3), (6, 0)]


class TestMomentCurve:
    def test_origin(self):
        assert moment_curve(6, 0) == (1.0, 0.0, 1.0, 0.0, 1.0, 0.0)

    def test_unit_circles(self):
        for t in (F(1, 7), F(2, 9), F(5, 11)):
            p = moment_curve(6, t)
            for j in range(3):
                assert math.isclose(p[2 * j] ** 2 + p[2 * j + 1] ** 2, 1.0)

    def test_rotation_shifts_samples(self):
        n = 7
        for i in range(n):
            p, q = moment_curve(4, F(i, n)), moment_curve(4, F(i + 1, n))
            for j in range(2):
                c, s = math.cos(2 * math.pi * (j + 1) / n), math.sin(2 * math.pi * (j + 1) / n)
                x, y = p[2 * j], p[2 * j + 1]
                assert math.isclose(c * x - s * y, q[2 * j], abs_tol=1e-12)
                assert math.isclose(s * x + c * y, q[2 * j + 1], abs_tol=1e-12)

    def test_bad_dimension(self):
        with pytest.raises(ValueError):
            moment_curve(3, 0)


class TestRegimes:
    def test_parameters(self):
        assert even_parameter(6, 3) == 1 and odd_parameter(6, 3) is None
        assert odd_parameter(7, 4) == 1 and even_parameter(7, 4) is None
        assert even_parameter(9, 6) == 2
        assert even_parameter(3, 2) is None  # n - k = 1 is the contractible end

    def test_polytope_inclusion(self):
        for n, k in [(7, 4), (8, 5), (9, 5), (11, 8)]:
            assert check_polytope_inclusion(n, k)

    def test_polytope_inclusion_preconditions(self):
        with pytest.raises(PreconditionError):
            check_polytope_inclusion(6, 3)


class TestEvenCase:
    def test_delta(self):
        assert delta_simplex(6, 3) == (0, 1, 3, 4)
        assert delta_simplex(4, 2) == (0, 1, 2, 3)
        assert delta_simplex(9, 6) == (0, 1, 3, 4, 6, 7)

    def test_missing_facets(self):
        assert missing_facets(6, 3) == rotations((0, 1, 3, 4), 6, 3)
        assert missing_facets(9, 6) == rotations((0, 1, 3, 4, 6, 7), 9, 3)
        # both tilings of the 4-cycle by two blocks give the full vertex set
        assert missing_facets(4, 2) == [(0, 1, 2, 3), (0, 1, 2, 3)]

    def test_delta_boundary_four_two(self):
        z = delta_boundary(4, 2)
        assert z == Chain.elementary((0, 1, 2, 3)).boundary()

    def test_delta_boundary_not_a_boundary(self):
        for n, k in [(4, 2), (6, 3), (6, 4), (8, 6)]:
            z = delta_boundary(n, k)
            assert not z.boundary()
            assert not is_boundary(nerve_nk(n, k), z)

    def test_alphas(self):
        a = [alpha_cycle(6, 3, i) for i in range(3)]
        assert len(set(a)) == 3
        assert alpha_cycle(6, 3, 3) == a[0] == delta_boundary(6, 3)
        assert is_boundary(nerve_nk(6, 3), a[0] + a[1] + a[2])

    def test_beta_support(self):
        b = beta_cochain_even(6, 3)
        assert sorted(b.support()) == [(0, 1, 3), (0, 2, 3)]
        assert is_cocycle(nerve_nk(6, 3), b)
        assert pair(b, delta_boundary(6, 3)) == -1

    def test_evaluation(self):
        assert evaluation_matrix(6, 3) == [[1, 0], [0, 1]]
        assert evaluation_matrix(4, 2) == [[1]]
        pattern = raw_evaluation_pattern(6, 3)
        assert pattern[0] == -1 and pattern[-1] == 1 and pattern[1:-1] == [0]

    @pytest.mark.parametrize("nk", [(4, 2), (6, 3), (6, 4), (8, 6), (9, 6), (10, 8)])
    def test_evaluation_identity(self, nk):
        n, k = nk
        size = n - k - 1
        assert evaluation_matrix(n, k) == [[int(i == j) for j in range(size)] for i in range(size)]

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            delta_simplex(7, 4)
        with pytest.raises(PreconditionError):
            beta_cochain_even(5, 4)


class TestOddCase:
    @pytest.mark.parametrize("nk", [(7, 4), (8, 5), (9, 5), (5, 3), (9, 7), (10, 7)])
    def test_admissible_against_definition(self, nk):
        assert admissible_sets(*nk) == brute_admissible(*nk)

    def test_cocycle_and_common_simplex(self):
        c = beta_cochain_odd(7, 4)
        assert is_cocycle(nerve_nk(7, 4), c)
        common = set(c.support()) & set(gale_facets(4, 7).facets)
        assert common == {(2, 3, 5, 6)}

    @pytest.mark.parametrize("nk", [(7, 4), (8, 5)])
    def test_pairs_with_fundamental_cycle(self, nk):
        n, k = nk
        l = odd_parameter(n, k)
        assert abs(pair(beta_cochain_odd(n, k), polytope_fundamental_cycle(2 * l + 2, n))) == 1

    def test_polytope_cycle(self):
        z = polytope_fundamental_cycle(4, 7)
        assert not z.boundary()
        assert {s for s, _ in z} == set(cyclic_polytope_boundary(4, 7).maximal)

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            admissible_sets(6, 3)
