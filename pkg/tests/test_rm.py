import itertools
import random

import pytest

from lrckit.errors import DegreeTooHigh, NotCollinear, TooLarge, WrongPointCount
from lrckit.gf import PrimeField
from lrckit.mpoly import MultiPoly
from lrckit.rm import (
    RMCode,
    all_lines,
    all_points,
    brute_force_min_distance,
    distance_decomposition,
    code_report,
    enumerate_min_weight_words,
    min_weight_dual_codeword,
    monomial_basis,
    rm_dimension,
    rm_dual_code,
    rm_dual_degree,
    rm_encode,
    rm_min_distance,
    support_is_collinear,
)

F3, F5 = PrimeField(3), PrimeField(5)


class TestParameters:
    def test_dimension_small(self):
        assert rm_dimension(RMCode(F3, 2, 1)) == 3  # 1, x1, x2
        assert rm_dimension(RMCode(F5, 2, 2)) == 6

    def test_dimension_uses_reduced_monomials(self):
        # per-variable exponents up to q-1 belong to the code: the distance
        # formula and the dual identity both need x1^2 in RM_3(2,2)
        assert rm_dimension(RMCode(F3, 2, 2)) == 6
        assert (2, 0) in monomial_basis(RMCode(F3, 2, 2))

    def test_dimension_full_space(self):
        assert rm_dimension(RMCode(F3, 2, 4)) == 9

    def test_dual_degree(self):
        assert rm_dual_degree(RMCode(F5, 2, 1)) == 6
        assert rm_dual_degree(RMCode(F3, 2, 1)) == 2
        assert rm_dual_degree(RMCode(F3, 1, 1)) == 0

    def test_degree_bound_validated(self):
        with pytest.raises(ValueError):
            RMCode(F3, 2, -1)
        with pytest.raises(ValueError):
            RMCode(F3, 2, 5)

    def test_decomposition(self):
        assert distance_decomposition(RMCode(F3, 2, 2)) == (1, 0)
        assert distance_decomposition(RMCode(F3, 2, 1)) == (0, 1)
        # ceiling case u = m(q-1) rolls over to theta = q-1
        assert distance_decomposition(RMCode(F3, 2, 4)) == (1, 2)
        assert rm_min_distance(RMCode(F3, 2, 4)) == 1

    def test_min_distance_values(self):
        assert rm_min_distance(RMCode(F3, 2, 1)) == 6
        assert rm_min_distance(RMCode(F3, 2, 2)) == 3
        assert rm_min_distance(RMCode(F5, 2, 1)) == 20


class TestGridOracle:
    @pytest.mark.parametrize("q", [3, 5])
    @pytest.mark.parametrize("m", [1, 2])
    def test_formula_matches_brute_force(self, q, m):
        F = PrimeField(q)
        for u in range(1, min(q - 2, 2) + 1):
            code = RMCode(F, m, u)
            assert brute_force_min_distance(code) == rm_min_distance(code)

    @pytest.mark.parametrize("q,m,u", [(3, 1, 1), (3, 2, 1), (5, 1, 1), (5, 1, 2)])
    def test_dual_identity_with_enumeration(self, q, m, u):
        dual = rm_dual_code(RMCode(PrimeField(q), m, u))
        assert rm_min_distance(dual) == u + 2
        assert brute_force_min_distance(dual) == u + 2

    def test_dual_identity_formula_only(self):
        # q=5, m=2 duals are too large to enumerate; the formula still applies
        for u in (1, 2):
            dual = rm_dual_code(RMCode(F5, 2, u))
            assert rm_min_distance(dual) == u + 2


class TestEncode:
    def test_zero_polynomial(self):
        code = RMCode(F3, 2, 1)
        assert rm_encode(code, MultiPoly.zero(F3, 2)) == (0,) * 9

    def test_single_variable(self):
        code = RMCode(F3, 1, 1)
        f = MultiPoly.linear(F3, [1])
        assert rm_encode(code, f) == (0, 1, 2)

    def test_linear_weight(self):
        code = RMCode(F5, 2, 1)
        word = rm_encode(code, MultiPoly.linear(F5, [2, 3]))
        assert sum(1 for v in word if v) == 20

    def test_degree_too_high(self):
        code = RMCode(F5, 2, 1)
        with pytest.raises(DegreeTooHigh):
            rm_encode(code, MultiPoly(F5, 2, {(1, 1): 1}))

    def test_point_order_is_lexicographic(self):
        assert all_points(F3, 2)[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]


class TestCollinearity:
    def test_diagonal(self):
        assert support_is_collinear(F3, [(0, 0), (1, 1), (2, 2)])

    def test_triangle(self):
        assert not support_is_collinear(F3, [(0, 0), (1, 0), (0, 1)])

    def test_two_points_always(self):
        assert support_is_collinear(F3, [(0, 1), (2, 2)])

    def test_needs_two_points(self):
        with pytest.raises(WrongPointCount):
            support_is_collinear(F3, [(0, 0)])

    def test_modular_collinearity(self):
        # collinear mod 3 but not over the rationals
        assert support_is_collinear(F3, [(0, 0), (1, 2), (2, 1)])


def full_support(code, g):
    word = rm_encode(rm_dual_code(code), g)
    return {p for p, v in zip(all_points(code.field, code.num_vars), word) if v}


class TestDualWitness:
    def test_three_points_on_diagonal(self):
        code = RMCode(F3, 2, 1)
        pts = [(0, 0), (1, 1), (2, 2)]
        g = min_weight_dual_codeword(code, pts)
        assert g.total_degree() <= rm_dual_degree(code)
        assert full_support(code, g) == set(pts)

    def test_f5_line(self):
        code = RMCode(F5, 2, 1)
        pts = [(1, 0), (0, 1), (4, 2)]  # base (1,0), direction (4,1)
        g = min_weight_dual_codeword(code, pts)
        assert full_support(code, g) == set(pts)

    def test_weight4_for_degree2(self):
        code = RMCode(F5, 2, 2)
        pts = [(0, 0), (1, 1), (2, 2), (3, 3)]
        g = min_weight_dual_codeword(code, pts)
        assert full_support(code, g) == set(pts)
        assert len(full_support(code, g)) == 4

    def test_single_variable_code(self):
        code = RMCode(F5, 1, 1)
        g = min_weight_dual_codeword(code, [(0,), (2,), (3,)])
        assert full_support(code, g) == {(0,), (2,), (3,)}

    def test_not_collinear_rejected(self):
        with pytest.raises(NotCollinear):
            min_weight_dual_codeword(RMCode(F3, 2, 1), [(0, 0), (1, 0), (0, 1)])

    def test_wrong_count_rejected(self):
        with pytest.raises(WrongPointCount):
            min_weight_dual_codeword(RMCode(F3, 2, 1), [(0, 0), (1, 1)])
        with pytest.raises(WrongPointCount):
            min_weight_dual_codeword(RMCode(F3, 2, 1),
                                     [(0, 0), (1, 1), (2, 2), (0, 0)])

    def test_seed_changes_word_not_support(self):
        code = RMCode(F5, 2, 1)
        pts = [(1, 0), (0, 1), (4, 2)]
        g0 = min_weight_dual_codeword(code, pts)
        g1 = min_weight_dual_codeword(code, pts, seed=5)
        assert full_support(code, g0) == full_support(code, g1) == set(pts)
        assert g0 != g1

    def test_orthogonal_to_primal_basis(self):
        code = RMCode(F5, 2, 1)
        dual = rm_dual_code(code)
        g = min_weight_dual_codeword(code, [(1, 0), (0, 1), (4, 2)])
        gw = rm_encode(dual, g)
        for mono in monomial_basis(code):
            fw = rm_encode(code, MultiPoly(F5, 2, {mono: 1}))
            assert sum(a * b for a, b in zip(fw, gw)) % 5 == 0

    def test_every_line_every_subset_q3(self):
        code = RMCode(F3, 2, 1)
        for line in all_lines(F3, 2):
            for subset in itertools.combinations(line, 3):
                g = min_weight_dual_codeword(code, subset)
                assert full_support(code, g) == set(subset)


class TestEnumeration:
    def test_min_weight_words_of_dual(self):
        dual = rm_dual_code(RMCode(F3, 2, 1))  # RM_3(2,2)
        words = enumerate_min_weight_words(dual)
        assert len(words) == 24  # 12 lines, 2 nonzero scalings
        for w in words:
            assert len(w.support) == 3
            assert support_is_collinear(F3, w.support)

    def test_min_weight_words_univariate(self):
        code = RMCode(F3, 1, 1)
        words = enumerate_min_weight_words(code)
        # min weight 2 words are exactly the polynomials with a root, i.e.
        # nonzero multiples of (x - c): coefficient vectors with slope != 0
        assert len(words) == 6
        for w in words:
            slope = w.coefficients[list(monomial_basis(code)).index((1,))]
            assert slope != 0

    def test_guard(self):
        with pytest.raises(TooLarge):
            enumerate_min_weight_words(RMCode(F5, 2, 6))

    def test_lines_count(self):
        assert len(all_lines(F3, 2)) == 12
        assert len(all_lines(F5, 2)) == 30  # q(q+1) lines in the affine plane


class TestReport:
    def test_keys_and_values(self):
        rep = code_report(RMCode(F3, 2, 1), brute_force=True)
        assert rep == {
            "q": 3, "m": 2, "u": 1, "length": 9, "dimension": 3,
            "d_min_formula": 6, "d_min_bruteforce": 6,
        }


class TestLemmaBothDirections:
    """The two directions of the support characterization, as one oracle."""

    def test_forward_and_converse_q3(self):
        primal = RMCode(F3, 2, 1)
        dual = rm_dual_code(primal)
        d = rm_min_distance(dual)
        assert d == primal.degree_bound + 2
        # forward: every minimum-weight dual word sits on a line
        supports = {w.support for w in enumerate_min_weight_words(dual)}
        for support in supports:
            assert support_is_collinear(F3, support)
        # converse: every u+2 collinear points support some dual word
        seen = {frozenset(s) for s in supports}
        for line in all_lines(F3, 2):
            assert frozenset(line) in seen
