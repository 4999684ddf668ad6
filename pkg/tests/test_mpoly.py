import itertools
import random

import pytest
from hypothesis import given, strategies as st

from lrckit.errors import (
    CharacteristicDividesDegree,
    DimensionMismatch,
    DuplicateAbscissa,
    InconsistentGradient,
    InconsistentSamples,
    ZeroDirection,
)
from lrckit.gf import PrimeField
from lrckit.mpoly import (
    MultiPoly,
    UniPoly,
    interpolate_univariate,
    poly_from_gradient,
    restrict_to_line,
)

F3, F5, F7 = PrimeField(3), PrimeField(5), PrimeField(7)


def random_poly(field, num_vars, max_deg, rng):
    terms = {}
    for mono in itertools.product(range(max_deg + 1), repeat=num_vars):
        if sum(mono) <= max_deg:
            terms[mono] = rng.randrange(field.q)
    return MultiPoly(field, num_vars, terms)


class TestEvaluate:
    def test_linear(self):
        f = MultiPoly.linear(F5, [2, 3])
        assert int(f.evaluate((1, 1))) == 0

    def test_zero_poly(self):
        assert int(MultiPoly.zero(F5, 2).evaluate((4, 4))) == 0

    def test_product_plus_one(self):
        f = MultiPoly(F3, 2, {(1, 1): 1, (0, 0): 1})
        assert int(f.evaluate((2, 2))) == 2  # 4 + 1 = 5 = 2 mod 3

    def test_dimension_checked(self):
        with pytest.raises(DimensionMismatch):
            MultiPoly.linear(F5, [1, 2]).evaluate((1, 2, 3))


class TestDerivatives:
    def test_partial(self):
        f = MultiPoly(F5, 2, {(2, 0): 1, (1, 1): 1})
        assert f.partial_derivative(0) == MultiPoly(F5, 2, {(1, 0): 2, (0, 1): 1})

    def test_partial_absent_variable(self):
        f = MultiPoly(F5, 2, {(2, 0): 1})
        assert not f.partial_derivative(1)

    def test_partial_constant(self):
        assert not MultiPoly.constant(F5, 2, 4).partial_derivative(0)

    def test_partial_is_formal(self):
        # over F_3 the formal derivative of x^3 is 3x^2 = 0, not the
        # derivative of its normalized form x
        f = MultiPoly(F3, 1, {(3,): 1})
        assert not f.partial_derivative(0)
        assert f.normalize().partial_derivative(0) == MultiPoly.constant(F3, 1, 1)

    def test_directional(self):
        f = MultiPoly(F5, 2, {(2, 0): 1, (1, 1): 1})
        got = f.directional_derivative((1, 2))
        assert got == MultiPoly(F5, 2, {(1, 0): 4, (0, 1): 1})

    def test_directional_zero_vector(self):
        f = MultiPoly(F5, 2, {(2, 0): 1})
        assert not f.directional_derivative((0, 0))

    def test_directional_of_linear_is_constant(self):
        f = MultiPoly.linear(F5, [2, 3])
        got = f.directional_derivative((1, 1))
        assert got == MultiPoly.constant(F5, 2, 0)  # 2+3 = 5 = 0


class TestHomogeneous:
    def test_picks_degree(self):
        f = MultiPoly(F5, 2, {(2, 0): 1, (0, 1): 1, (0, 0): 1})
        assert f.homogeneous_component(2) == MultiPoly(F5, 2, {(2, 0): 1})
        assert f.homogeneous_component(0) == MultiPoly.constant(F5, 2, 1)

    def test_identity_on_homogeneous(self):
        f = MultiPoly(F5, 2, {(2, 0): 3, (1, 1): 4})
        assert f.homogeneous_component(2) == f


class TestPolyFromGradient:
    def test_worked_example(self):
        partials = [
            MultiPoly(F5, 2, {(1, 0): 2, (0, 1): 1}),
            MultiPoly(F5, 2, {(1, 0): 1}),
        ]
        f = poly_from_gradient(partials)
        assert f == MultiPoly(F5, 2, {(2, 0): 1, (1, 1): 1})

    def test_zero(self):
        z = MultiPoly.zero(F5, 2)
        assert not poly_from_gradient([z, z])

    def test_round_trip_random(self):
        rng = random.Random(5)
        for _ in range(30):
            f = random_poly(F7, 3, 2, rng).homogeneous_component(2)
            parts = [f.partial_derivative(i) for i in range(3)]
            assert poly_from_gradient(parts) == f

    def test_inconsistent_rejected(self):
        partials = [
            MultiPoly(F5, 2, {(0, 1): 1}),  # would need f with x1x2 term
            MultiPoly.zero(F5, 2),          # but this says no x2 dependence
        ]
        with pytest.raises(InconsistentGradient):
            poly_from_gradient(partials)

    def test_characteristic_guard(self):
        z = MultiPoly.zero(F5, 2)
        with pytest.raises(CharacteristicDividesDegree):
            poly_from_gradient([z, z], degree=5)


class TestRestrictToLine:
    def test_linear_example(self):
        f = MultiPoly.linear(F5, [2, 3])
        g = restrict_to_line(f, (1, 0), (4, 1))
        assert g.coeffs == (2, 1)  # g(t) = t + 2

    def test_constant(self):
        f = MultiPoly.constant(F5, 2, 4)
        assert restrict_to_line(f, (0, 0), (1, 1)).coeffs == (4,)

    def test_square(self):
        f = MultiPoly(F5, 2, {(2, 0): 1})
        assert restrict_to_line(f, (0, 0), (1, 0)).coeffs == (0, 0, 1)

    def test_zero_direction(self):
        with pytest.raises(ZeroDirection):
            restrict_to_line(MultiPoly.linear(F5, [1, 0]), (0, 0), (0, 0))

    def test_agrees_with_direct_evaluation(self):
        rng = random.Random(17)
        for _ in range(25):
            f = random_poly(F5, 2, 2, rng)
            base = (rng.randrange(5), rng.randrange(5))
            direction = (rng.randrange(5), rng.randrange(1, 5))
            g = restrict_to_line(f, base, direction)
            for t in range(5):
                pt = tuple((b + t * d) % 5 for b, d in zip(base, direction))
                assert g.evaluate(t) == f.evaluate(pt)

    def test_degree_bound_for_quadratics(self):
        rng = random.Random(3)
        for _ in range(20):
            f = random_poly(F7, 3, 2, rng)
            g = restrict_to_line(f, (1, 2, 3), (0, 1, 4))
            assert g.degree <= 2


class TestTranslate:
    def test_matches_pointwise(self):
        rng = random.Random(23)
        for _ in range(20):
            f = random_poly(F5, 2, 2, rng)
            shift = (rng.randrange(5), rng.randrange(5))
            g = f.translate(shift)
            for p in itertools.product(range(5), repeat=2):
                moved = tuple((a + s) % 5 for a, s in zip(p, shift))
                assert g.evaluate(p) == f.evaluate(moved)


class TestShiftDifferenceIdentity:
    def test_exhaustive_small(self):
        # degree-<=2 f: f(x+a) - f(x+b) - D(x) is constant in x, where D is
        # the directional derivative of the quadratic part along a-b
        rng = random.Random(31)
        pts = list(itertools.product(range(5), repeat=2))
        for _ in range(10):
            f = random_poly(F5, 2, 2, rng)
            f2 = f.homogeneous_component(2)
            for a in pts[::6]:
                for b in pts[::7]:
                    d = tuple((x - y) % 5 for x, y in zip(a, b))
                    g = f.translate(a) - f.translate(b) - f2.directional_derivative(d)
                    assert g.total_degree() <= 0


class TestNormalize:
    def test_exponent_reduction(self):
        f = MultiPoly(F3, 1, {(3,): 1})
        assert f.normalize() == MultiPoly(F3, 1, {(1,): 1})
        f = MultiPoly(F3, 1, {(4,): 2})
        assert f.normalize() == MultiPoly(F3, 1, {(2,): 2})

    def test_q_minus_one_is_kept(self):
        # x^(q-1) is NOT the constant 1 as a function (it vanishes at 0)
        f = MultiPoly(F3, 1, {(2,): 1})
        assert f.normalize() == f

    def test_preserves_evaluation(self):
        rng = random.Random(41)
        for _ in range(20):
            f = MultiPoly(F5, 2, {
                (rng.randrange(9), rng.randrange(9)): rng.randrange(5)
                for _ in range(4)
            })
            g = f.normalize()
            for p in itertools.product(range(5), repeat=2):
                assert f.evaluate(p) == g.evaluate(p)

    def test_merging_terms(self):
        f = MultiPoly(F3, 1, {(3,): 1, (1,): 1})
        assert f.normalize() == MultiPoly(F3, 1, {(1,): 2})


class TestRenderParse:
    def test_render(self):
        f = MultiPoly(F5, 2, {(2, 0): 1, (1, 1): 3, (0, 0): 2})
        assert f.render() == "2 + 3*x1*x2 + 1*x1^2"

    def test_zero(self):
        assert MultiPoly.zero(F5, 2).render() == "0"
        assert MultiPoly.parse(F5, 2, "0") == MultiPoly.zero(F5, 2)

    def test_round_trip_random(self):
        rng = random.Random(9)
        for _ in range(25):
            f = random_poly(F7, 3, 2, rng)
            assert MultiPoly.parse(F7, 3, f.render()) == f

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            MultiPoly.parse(F5, 2, "2 + x9")
        with pytest.raises(ValueError):
            MultiPoly.parse(F5, 2, "x1^")


class TestUniPoly:
    def test_trims_leading_zeros(self):
        assert UniPoly(F5, [1, 2, 0, 0]).coeffs == (1, 2)
        assert UniPoly(F5, [0]).degree == -1

    def test_horner(self):
        p = UniPoly(F5, [2, 0, 1])  # t^2 + 2
        assert int(p.evaluate(3)) == (9 + 2) % 5


class TestInterpolate:
    def test_two_points(self):
        p = interpolate_univariate([(F5(1), F5(3)), (F5(2), F5(4))], 1)
        assert p.coeffs == (2, 1)

    def test_constant(self):
        p = interpolate_univariate([(F5(0), F5(3))], 0)
        assert p.coeffs == (3,)

    def test_square_through_three_points(self):
        p = interpolate_univariate(
            [(F7(t), F7(t * t)) for t in (1, 3, 5)], 2)
        assert p.coeffs == (0, 0, 1)

    def test_duplicate_abscissa(self):
        with pytest.raises(DuplicateAbscissa):
            interpolate_univariate([(F5(1), F5(1)), (F5(1), F5(2))], 1)

    def test_not_enough_samples(self):
        with pytest.raises(DimensionMismatch):
            interpolate_univariate([(F5(1), F5(1))], 1)

    def test_surplus_consistent_ok(self):
        samples = [(F5(t), F5((t + 2) % 5)) for t in range(4)]
        assert interpolate_univariate(samples, 1).coeffs == (2, 1)

    def test_surplus_inconsistent_rejected(self):
        samples = [(F5(0), F5(2)), (F5(1), F5(3)), (F5(2), F5(0))]
        with pytest.raises(InconsistentSamples):
            interpolate_univariate(samples, 1)

    @given(st.sampled_from([5, 7]), st.integers(0, 3), st.data())
    def test_sample_then_fit_is_identity(self, q, deg, data):
        F = PrimeField(q)
        coeffs = data.draw(st.lists(st.integers(0, q - 1),
                                    min_size=deg + 1, max_size=deg + 1))
        poly = UniPoly(F, coeffs)
        samples = [(F(t), poly.evaluate(t)) for t in range(q)]
        fitted = interpolate_univariate(samples, deg)
        assert fitted == poly
