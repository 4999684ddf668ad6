import random

import pytest
from hypothesis import given, strategies as st

from lrckit.errors import (
    DivisionByZero,
    FieldMismatch,
    NoSolution,
    Singular,
    ZeroVector,
)
from lrckit.gf import FieldElement, Matrix, PrimeField, complete_to_basis

F3, F5, F7 = PrimeField(3), PrimeField(5), PrimeField(7)


class TestFieldElement:
    def test_add_wraps(self):
        assert int(F5(4) + F5(3)) == 2

    def test_inverse(self):
        assert int(F7(3).inverse()) == 5  # 3*5 = 15 = 1 mod 7

    def test_fermat_pow(self):
        assert int(F5(2) ** 4) == 1

    def test_negative_pow_is_inverse_pow(self):
        assert F7(3) ** -1 == F7(3).inverse()
        assert F7(3) ** -2 == (F7(3).inverse()) ** 2

    def test_div(self):
        a, b = F7(6), F7(4)
        assert (a / b) * b == a

    def test_zero_inverse_raises(self):
        with pytest.raises(DivisionByZero):
            F5(0).inverse()
        with pytest.raises(DivisionByZero):
            F5(1) / F5(0)

    def test_cross_field_rejected(self):
        with pytest.raises(FieldMismatch):
            F5(1) + F7(1)
        with pytest.raises(FieldMismatch):
            F5(2) * F3(2)

    def test_int_operands_reduce(self):
        assert F5(3) + 7 == F5(0)
        assert 2 * F5(4) == F5(3)
        assert F5(2) == 7

    def test_neg(self):
        assert int(-F5(2)) == 3

    def test_modulus_must_be_prime(self):
        with pytest.raises(ValueError):
            PrimeField(4)
        with pytest.raises(ValueError):
            PrimeField(1)

    def test_modulus_bound(self):
        with pytest.raises(ValueError):
            PrimeField(2**31 + 11)  # prime, but past the 64-bit-product bound


small_primes = st.sampled_from([3, 5, 7, 11])


@given(small_primes, st.integers(), st.integers(), st.integers())
def test_field_algebra(q, a, b, c):
    F = PrimeField(q)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x * (y + z) == x * y + x * z
    assert x - x == F(0)
    if int(x):
        assert x * x.inverse() == F(1)


class TestMatrix:
    def test_identity_rank(self):
        assert Matrix.identity(F5, 3).rank() == 3

    def test_proportional_rows_over_f3(self):
        # (2,1) = 2*(1,2) mod 3, so this pair is rank 1
        assert Matrix(F3, [(1, 2), (2, 1)]).rank() == 1

    def test_independent_rows_over_f3(self):
        assert Matrix(F3, [(1, 2), (2, 2)]).rank() == 2

    def test_duplicate_rows(self):
        assert Matrix(PrimeField(2), [(1, 1), (1, 1)]).rank() == 1

    def test_solve_identity(self):
        x, null = Matrix.identity(F5, 3).solve((2, 3, 0))
        assert x == (2, 3, 0) and null == ()

    def test_solve_overdetermined(self):
        a = Matrix(F5, [[1, 0], [0, 1], [1, 1]])
        x, null = a.solve((2, 3, 0))
        assert x == (2, 3) and null == ()
        assert (2 + 3) % 5 == 0  # consistency of the third equation

    def test_solve_inconsistent(self):
        a = Matrix(F5, [[1, 0], [1, 0]])
        with pytest.raises(NoSolution):
            a.solve((1, 2))

    def test_solve_underdetermined_nullspace(self):
        a = Matrix(F5, [[1, 1, 0]])
        x, null = a.solve((3,))
        assert sum(x) % 5 == 3
        assert len(null) == 2
        for v in null:
            assert sum(c * e for c, e in zip(a.rows[0], v)) % 5 == 0

    def test_inverse_identity(self):
        eye = Matrix.identity(F7, 4)
        assert eye.inverse() == eye

    def test_inverse_diagonal(self):
        assert Matrix(F5, [[2, 0], [0, 3]]).inverse() == Matrix(F5, [[3, 0], [0, 2]])

    def test_inverse_singular(self):
        with pytest.raises(Singular):
            Matrix(F5, [[1, 2], [2, 4]]).inverse()
        with pytest.raises(Singular):
            Matrix(F5, [[1, 2]]).inverse()

    @pytest.mark.parametrize("q", [3, 5, 7])
    @pytest.mark.parametrize("size", [2, 3, 4])
    def test_inverse_multiply_back(self, q, size):
        F = PrimeField(q)
        rng = random.Random(q * 100 + size)
        done = 0
        while done < 100:
            m = Matrix(F, [[rng.randrange(q) for _ in range(size)]
                           for _ in range(size)])
            if m.rank() < size:
                continue
            assert m.inverse() @ m == Matrix.identity(F, size)
            done += 1

    def test_solve_satisfies_system(self):
        rng = random.Random(12)
        for _ in range(50):
            rows = [[rng.randrange(7) for _ in range(3)] for _ in range(4)]
            a = Matrix(F7, rows)
            x_true = [rng.randrange(7) for _ in range(3)]
            y = a @ x_true
            x, _ = a.solve(y)
            assert a @ x == y

    def test_matmul_vector(self):
        a = Matrix(F5, [[1, 2], [3, 4]])
        assert a @ (1, 1) == (3, 2)


class TestCompleteToBasis:
    def test_pins_last_column(self):
        m = complete_to_basis(F5, (0, 1))
        assert m.column(1) == (0, 1)
        assert m.rank() == 2

    def test_standard_basis_gives_identity(self):
        m = complete_to_basis(F5, (0, 0, 1))
        assert m == Matrix.identity(F5, 3)

    def test_three_dims(self):
        m = complete_to_basis(F7, (3, 1, 0))
        assert m.column(2) == (3, 1, 0)
        assert m.rank() == 3

    def test_explicit_position(self):
        m = complete_to_basis(F5, (2, 3), position=0)
        assert m.column(0) == (2, 3)
        assert m.rank() == 2

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroVector):
            complete_to_basis(F5, (0, 0))

    @given(small_primes, st.integers(2, 5), st.data())
    def test_always_full_rank_with_pinned_column(self, q, m, data):
        F = PrimeField(q)
        vec = data.draw(st.lists(st.integers(0, q - 1), min_size=m, max_size=m))
        if not any(vec):
            vec[data.draw(st.integers(0, m - 1))] = 1
        pos = data.draw(st.integers(0, m - 1))
        mat = complete_to_basis(F, vec, position=pos)
        assert mat.rank() == m
        assert mat.column(pos) == tuple(v % q for v in vec)
