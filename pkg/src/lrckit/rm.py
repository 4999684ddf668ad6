"""Generalized Reed-Muller codes over prime fields.

RM_q(u, m) is the set of evaluations over all of F_q^m of the m-variate
polynomials of total degree at most u, taken in reduced form (degree in
each variable at most q-1, the function-space representation).  The module
provides parameters, full-length encoding, the minimum-distance formula,
exhaustive minimum-weight enumeration at desk scale, and the constructive
inverse of the collinear-support property: a minimum-weight dual codeword
supported on any prescribed u+2 collinear points.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DegreeTooHigh,
    NotCollinear,
    TooLarge,
    WrongPointCount,
    ZeroDirection,
)
from .gf import FieldElement, Matrix, PrimeField, complete_to_basis
from .mpoly import Monomial, MultiPoly

DEFAULT_ENUM_GUARD = 2**24


def enum_guard() -> int:
    """Brute-force ceiling; override with the GUARD_MAX_ENUM env variable."""
    return int(os.environ.get("GUARD_MAX_ENUM", DEFAULT_ENUM_GUARD))


@dataclass(frozen=True)
class RMCode:
    """Parameters of RM_q(u, m)."""

    field: PrimeField
    num_vars: int
    degree_bound: int

    def __post_init__(self):
        q, m, u = self.field.q, self.num_vars, self.degree_bound
        if m < 1:
            raise ValueError("need at least one variable")
        if not 0 <= u <= m * (q - 1):
            raise ValueError(f"degree bound {u} outside 0..{m * (q - 1)}")

    @property
    def length(self) -> int:
        return self.field.q ** self.num_vars

    def __repr__(self) -> str:
        return f"RMCode(q={self.field.q}, u={self.degree_bound}, m={self.num_vars})"


def monomial_basis(code: RMCode) -> list[Monomial]:
    """Reduced monomials of total degree <= u, in lex order."""
    q, m, u = code.field.q, code.num_vars, code.degree_bound
    cap = q - 1
    out = [
        e for e in itertools.product(range(min(cap, u) + 1), repeat=m)
        if sum(e) <= u
    ]
    out.sort()
    return out


def rm_dimension(code: RMCode) -> int:
    return len(monomial_basis(code))


def rm_dual_degree(code: RMCode) -> int:
    """Degree bound of the dual code: (q-1)m - u - 1."""
    return (code.field.q - 1) * code.num_vars - code.degree_bound - 1


def rm_dual_code(code: RMCode) -> RMCode:
    return RMCode(code.field, code.num_vars, rm_dual_degree(code))


def distance_decomposition(code: RMCode) -> tuple[int, int]:
    """Write u = mu*(q-1) + theta with 0 <= theta <= q-1.

    Uses theta in [0, q-2] except at the ceiling u = m(q-1), where
    theta = q-1 keeps the distance formula's exponent non-negative.
    """
    q, m, u = code.field.q, code.num_vars, code.degree_bound
    mu, theta = divmod(u, q - 1)
    if mu == m:  # u = m(q-1); both decompositions agree elsewhere
        mu, theta = m - 1, q - 1
    return mu, theta


def rm_min_distance(code: RMCode) -> int:
    """Minimum distance (q - theta) * q^(m - mu - 1)."""
    q, m = code.field.q, code.num_vars
    mu, theta = distance_decomposition(code)
    return (q - theta) * q ** (m - mu - 1)


def all_points(field: PrimeField, num_vars: int) -> list[tuple[int, ...]]:
    """Every point of F_q^m in lexicographic order.

    This order is the one global index <-> point bijection used by every
    full-length codeword in the toolkit.
    """
    return list(itertools.product(range(field.q), repeat=num_vars))


def rm_encode(code: RMCode, f: MultiPoly) -> tuple[int, ...]:
    """Evaluate f at all q^m points (lex order)."""
    if f.field != code.field or f.num_vars != code.num_vars:
        raise DegreeTooHigh("polynomial ring does not match the code")
    if f.total_degree() > code.degree_bound:
        raise DegreeTooHigh(
            f"degree {f.total_degree()} exceeds bound {code.degree_bound}"
        )
    return tuple(int(f.evaluate(p)) for p in all_points(code.field, code.num_vars))


def support_is_collinear(field: PrimeField, points: Iterable[Sequence[int]]) -> bool:
    """True iff all points lie on one affine line of F_q^m.

    Equivalent to the difference set {p - p_0} having rank at most 1.
    """
    pts = [tuple(int(x) % field.q for x in p) for p in points]
    if len(pts) < 2:
        raise WrongPointCount("need at least two points")
    base = pts[0]
    rows = [[(a - b) % field.q for a, b in zip(p, base)] for p in pts[1:]]
    return Matrix(field, rows).rank() <= 1


def line_points(field: PrimeField, base: Sequence[int], direction: Sequence[int]
                ) -> list[tuple[int, ...]]:
    """The q points base + t*direction for t in F_q."""
    q = field.q
    b = tuple(int(x) % q for x in base)
    d = tuple(int(x) % q for x in direction)
    if all(x == 0 for x in d):
        raise ZeroDirection("line direction must be nonzero")
    return [tuple((bi + t * di) % q for bi, di in zip(b, d)) for t in range(q)]


def all_lines(field: PrimeField, num_vars: int) -> list[tuple[tuple[int, ...], ...]]:
    """Every affine line of F_q^m, each as a sorted tuple of its q points."""
    q = field.q
    directions = []
    for d in itertools.product(range(q), repeat=num_vars):
        nz = next((x for x in d if x), None)
        if nz == 1:  # one representative per projective direction
            directions.append(d)
    seen = set()
    lines = []
    for d in directions:
        for base in all_points(field, num_vars):
            pts = tuple(sorted(line_points(field, base, d)))
            if pts not in seen:
                seen.add(pts)
                lines.append(pts)
    return lines


def min_weight_dual_codeword(code: RMCode, points: Sequence[Sequence[int]],
                             seed: int | None = None) -> MultiPoly:
    """A dual codeword of RM_q(u, m) supported exactly on u+2 collinear points.

    The returned polynomial g has degree at most (q-1)m - u - 1 and its
    full-length evaluation is nonzero precisely at the given points, so its
    weight is u+2, the dual minimum distance.  Construction: pin a vector
    v = (0, ..., 0, v_m), complete t_1*h to an invertible matrix M whose
    last column is t_1*h, let L = M^{-1} with rows l_1..l_m, and set

        g = w0 * prod_{i<m} (1 - (l_i(x) - w_i)^(q-1)) * prod_j (l_m(x) - wt_j)

    where (w_1, ..., w_{m-1}, w_hat) = L p_1 and the wt_j run over every
    field element except w_hat and w_hat + (t_i/t_1) v_m.  The first factor
    pins x to the line; the excluded values carve out exactly the wanted
    points.  Canonical choices (v_m = 1, w0 = 1, greedy basis completion,
    ascending wt_j) make the output deterministic; a seed randomizes the
    remaining freedom and yields a different codeword with the same support.
    """
    field = code.field
    q, m, u = field.q, code.num_vars, code.degree_bound
    if u > q - 2:
        raise ValueError(f"construction needs u <= q-2, got u={u}, q={q}")
    pts = [tuple(int(x) % q for x in p) for p in points]
    if len(set(pts)) != len(pts):
        raise WrongPointCount("points must be distinct")
    if len(pts) != u + 2:
        raise WrongPointCount(f"need exactly {u + 2} points, got {len(pts)}")
    if any(len(p) != m for p in pts):
        raise WrongPointCount(f"points must live in F_q^{m}")
    if not support_is_collinear(field, pts):
        raise NotCollinear("points do not lie on a single line")

    rng = random.Random(seed) if seed is not None else None
    pts = sorted(pts)
    p1 = pts[0]
    h = tuple((a - b) % q for a, b in zip(pts[1], p1))
    # parameters t_i with pts[i] = p1 + t_i h; t_1 = 1 by choice of h
    ts = []
    pivot = next(i for i, x in enumerate(h) if x)
    for p in pts[1:]:
        t = ((p[pivot] - p1[pivot]) * pow(h[pivot], q - 2, q)) % q
        ts.append(t)
    t1 = ts[0]

    v_m = rng.randrange(1, q) if rng else 1
    w0 = rng.randrange(1, q) if rng else 1
    col = tuple((t1 * x * pow(v_m, q - 2, q)) % q for x in h)  # M v = t1 h
    M = _complete_with_rng(field, col, rng)
    L = M.inverse()
    omega = L @ p1
    w_hat = omega[m - 1]
    inv_t1 = pow(t1, q - 2, q)
    excluded = {w_hat}
    for t in ts:
        excluded.add((w_hat + t * inv_t1 * v_m) % q)
    wt = sorted(set(range(q)) - excluded)
    if len(wt) != q - u - 2:
        raise NotCollinear("line parameters collide; points are not in position")

    g = MultiPoly.constant(field, m, w0)
    for i in range(m - 1):
        li = MultiPoly.linear(field, L.row(i))
        shifted = li - MultiPoly.constant(field, m, omega[i])
        indicator = MultiPoly.constant(field, m, 1) - _poly_power(shifted, q - 1)
        g = (g * indicator).normalize()
    lm = MultiPoly.linear(field, L.row(m - 1))
    for w in wt:
        g = (g * (lm - MultiPoly.constant(field, m, w))).normalize()

    _assert_support(field, L, omega, wt, w0, set(pts), m)
    return g


def _poly_power(p: MultiPoly, e: int) -> MultiPoly:
    out = MultiPoly.constant(p.field, p.num_vars, 1)
    for _ in range(e):
        out = (out * p).normalize()
    return out


def _complete_with_rng(field: PrimeField, col, rng) -> Matrix:
    if rng is None:
        return complete_to_basis(field, col)
    # random invertible completion: rejection-sample the free columns
    m = len(col)
    while True:
        cols = [tuple(rng.randrange(field.q) for _ in range(m)) for _ in range(m - 1)]
        cols.append(tuple(col))
        M = Matrix(field, zip(*cols))
        if M.rank() == m:
            return M


def _assert_support(field, L, omega, wt, w0, expected, m):
    # Evaluate the factored form over the whole grid; this is the cheap
    # internal oracle for the construction's support contract.
    q = field.q
    wt_set = set(wt)
    got = set()
    for p in all_points(field, m):
        vals = L @ p
        if any(vals[i] != omega[i] for i in range(m - 1)):
            continue
        if vals[m - 1] in wt_set:
            continue
        got.add(p)
    if got != expected:
        raise AssertionError(
            f"support contract violated: built {sorted(got)}, wanted {sorted(expected)}"
        )


@dataclass(frozen=True)
class MinWeightWord:
    """One minimum-weight codeword found by enumeration."""

    coefficients: tuple[int, ...]  # over monomial_basis order
    codeword: tuple[int, ...]
    support: tuple[tuple[int, ...], ...]


def _basis_eval_rows(code: RMCode) -> list[list[int]]:
    q = code.field.q
    pts = all_points(code.field, code.num_vars)
    rows = []
    for mono in monomial_basis(code):
        row = []
        for p in pts:
            v = 1
            for x, e in zip(p, mono):
                if e:
                    v = (v * pow(x, e, q)) % q
            row.append(v)
        rows.append(row)
    return rows


def brute_force_min_distance(code: RMCode) -> int:
    """Minimum weight over all q^dim codewords; guarded enumeration."""
    q = code.field.q
    dim = rm_dimension(code)
    if q**dim > enum_guard():
        raise TooLarge(f"{q}^{dim} codewords exceed the enumeration guard")
    rows = _basis_eval_rows(code)
    length = code.length
    best = length + 1
    for coeffs in itertools.product(range(q), repeat=dim):
        if not any(coeffs):
            continue
        w = 0
        for j in range(length):
            s = 0
            for c, row in zip(coeffs, rows):
                if c:
                    s += c * row[j]
            if s % q:
                w += 1
                if w >= best:
                    break
        if w < best:
            best = w
    return best


def enumerate_min_weight_words(code: RMCode) -> list[MinWeightWord]:
    """All codewords whose weight equals the distance formula's value."""
    q = code.field.q
    dim = rm_dimension(code)
    if q**dim > enum_guard():
        raise TooLarge(f"{q}^{dim} codewords exceed the enumeration guard")
    rows = _basis_eval_rows(code)
    pts = all_points(code.field, code.num_vars)
    d = rm_min_distance(code)
    out = []
    for coeffs in itertools.product(range(q), repeat=dim):
        if not any(coeffs):
            continue
        word = [0] * code.length
        for c, row in zip(coeffs, rows):
            if c:
                for j, v in enumerate(row):
                    word[j] = (word[j] + c * v) % q
        support = tuple(p for p, v in zip(pts, word) if v)
        if len(support) == d:
            out.append(MinWeightWord(coeffs, tuple(word), support))
    return out


def code_report(code: RMCode, brute_force: bool = False) -> dict:
    """JSON-ready parameter report for the CLI."""
    report = {
        "q": code.field.q,
        "m": code.num_vars,
        "u": code.degree_bound,
        "length": code.length,
        "dimension": rm_dimension(code),
        "d_min_formula": rm_min_distance(code),
    }
    if brute_force:
        report["d_min_bruteforce"] = brute_force_min_distance(code)
    return report
