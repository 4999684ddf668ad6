"""Multivariate and univariate polynomials over a prime field.

Polynomials are stored formally: exponents are arbitrary non-negative
integers and are never reduced behind the caller's back.  Evaluation over
F_q agrees for x^e and its reduced exponent, but formal derivatives do
not, so the function-space reduction x^(q-1+k) -> x^k (k >= 1) is applied
only by the explicit :meth:`MultiPoly.normalize`.

A monomial is an exponent tuple, one entry per variable.  The paper-facing
"irreducible" shape (every exponent <= q-2) is a checkable property, not a
storage invariant.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Mapping, Sequence

from .errors import (
    CharacteristicDividesDegree,
    DimensionMismatch,
    DuplicateAbscissa,
    InconsistentGradient,
    InconsistentSamples,
    ZeroDirection,
)
from .gf import FieldElement, PrimeField

Monomial = tuple[int, ...]


def _as_ints(field: PrimeField, values) -> tuple[int, ...]:
    return tuple(int(v) % field.q for v in values)


class MultiPoly:
    """Polynomial in F_q[x_1, ..., x_m], keyed by exponent tuple.

    Zero coefficients are never stored.  Instances are immutable values.
    """

    __slots__ = ("field", "num_vars", "terms")

    def __init__(self, field: PrimeField, num_vars: int,
                 terms: Mapping[Monomial, int] | None = None):
        self.field = field
        self.num_vars = num_vars
        clean: dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != num_vars:
                raise DimensionMismatch(
                    f"monomial {mono} has {len(mono)} exponents, expected {num_vars}"
                )
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in monomial {mono}")
            c = int(coeff) % field.q
            if c:
                clean[mono] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field: PrimeField, num_vars: int) -> "MultiPoly":
        return cls(field, num_vars, {})

    @classmethod
    def constant(cls, field: PrimeField, num_vars: int, c) -> "MultiPoly":
        return cls(field, num_vars, {(0,) * num_vars: int(field(c))})

    @classmethod
    def variable(cls, field: PrimeField, num_vars: int, index: int) -> "MultiPoly":
        if not 0 <= index < num_vars:
            raise DimensionMismatch(f"variable index {index} outside 0..{num_vars - 1}")
        mono = tuple(1 if i == index else 0 for i in range(num_vars))
        return cls(field, num_vars, {mono: 1})

    @classmethod
    def linear(cls, field: PrimeField, coeffs: Sequence) -> "MultiPoly":
        """Homogeneous linear form sum_i coeffs[i] * x_i."""
        vals = _as_ints(field, coeffs)
        m = len(vals)
        terms = {}
        for i, c in enumerate(vals):
            if c:
                terms[tuple(1 if j == i else 0 for j in range(m))] = c
        return cls(field, m, terms)

    # -- ring operations ----------------------------------------------

    def _check_compatible(self, other: "MultiPoly") -> None:
        if other.field != self.field or other.num_vars != self.num_vars:
            raise DimensionMismatch("polynomials live in different rings")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return MultiPoly(self.field, self.num_vars, out)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) - c
        return MultiPoly(self.field, self.num_vars, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.field, self.num_vars,
                         {m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, FieldElement)):
            c = int(self.field(other))
            return MultiPoly(self.field, self.num_vars,
                             {m: c * v for m, v in self.terms.items()})
        self._check_compatible(other)
        q = self.field.q
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                out[key] = (out.get(key, 0) + c1 * c2) % q
        return MultiPoly(self.field, self.num_vars, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and other.field == self.field
            and other.num_vars == self.num_vars
            and other.terms == self.terms
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.num_vars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries -------------------------------------------------------

    def total_degree(self) -> int:
        """Max exponent sum over stored terms; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((m[var] for m in self.terms), default=-1)

    def is_irreducible_form(self) -> bool:
        """True when every per-variable exponent is at most q-2."""
        cap = self.field.q - 2
        return all(all(e <= cap for e in m) for m in self.terms)

    def coefficient(self, mono: Monomial) -> FieldElement:
        return FieldElement(self.terms.get(tuple(mono), 0), self.field)

    # -- evaluation and calculus ---------------------------------------

    def evaluate(self, point: Sequence) -> FieldElement:
        if len(point) != self.num_vars:
            raise DimensionMismatch(
                f"point has {len(point)} coordinates, expected {self.num_vars}"
            )
        q = self.field.q
        coords = _as_ints(self.field, point)
        powers = []
        for i, x in enumerate(coords):
            top = self.degree_in(i)
            col = [1] * (top + 2)
            for e in range(1, top + 2):
                col[e] = (col[e - 1] * x) % q
            powers.append(col)
        acc = 0
        for mono, c in self.terms.items():
            t = c
            for i, e in enumerate(mono):
                if e:
                    t = (t * powers[i][e]) % q
            acc += t
        return FieldElement(acc, self.field)

    def partial_derivative(self, var: int) -> "MultiPoly":
        """Formal partial derivative; exponents are not reduced."""
        if not 0 <= var < self.num_vars:
            raise DimensionMismatch(f"variable index {var} outside 0..{self.num_vars - 1}")
        out: dict[Monomial, int] = {}
        for mono, c in self.terms.items():
            e = mono[var]
            if e == 0:
                continue
            key = tuple(x - 1 if i == var else x for i, x in enumerate(mono))
            out[key] = out.get(key, 0) + c * e
        return MultiPoly(self.field, self.num_vars, out)

    def directional_derivative(self, direction: Sequence) -> "MultiPoly":
        """sum_i direction[i] * d/dx_i applied to the polynomial."""
        if len(direction) != self.num_vars:
            raise DimensionMismatch("direction dimension differs from variable count")
        coeffs = _as_ints(self.field, direction)
        acc = MultiPoly.zero(self.field, self.num_vars)
        for i, a in enumerate(coeffs):
            if a:
                acc = acc + self.partial_derivative(i) * a
        return acc

    def homogeneous_component(self, degree: int) -> "MultiPoly":
        return MultiPoly(
            self.field, self.num_vars,
            {m: c for m, c in self.terms.items() if sum(m) == degree},
        )

    def translate(self, shift: Sequence) -> "MultiPoly":
        """The polynomial x -> f(x + shift), expanded symbolically."""
        if len(shift) != self.num_vars:
            raise DimensionMismatch("shift dimension differs from variable count")
        q = self.field.q
        a = _as_ints(self.field, shift)
        out: dict[Monomial, int] = {}
        for mono, c in self.terms.items():
            # expand prod_i (x_i + a_i)^{e_i} one variable at a time
            partial: dict[Monomial, int] = {(0,) * self.num_vars: c}
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                nxt: dict[Monomial, int] = {}
                for j in range(e + 1):
                    w = (math.comb(e, j) * pow(a[i], e - j, q)) % q
                    if not w:
                        continue
                    for key, val in partial.items():
                        nk = tuple(x + j if t == i else x for t, x in enumerate(key))
                        nxt[nk] = (nxt.get(nk, 0) + val * w) % q
                partial = nxt
            for key, val in partial.items():
                out[key] = (out.get(key, 0) + val) % q
        return MultiPoly(self.field, self.num_vars, out)

    def normalize(self) -> "MultiPoly":
        """Reduce exponents via x^(q-1+k) -> x^k for k >= 1.

        Preserves the evaluation on F_q^m (x^q = x); the result has every
        exponent at most q-1.  Distinct monomials may merge.
        """
        q = self.field.q
        out: dict[Monomial, int] = {}
        for mono, c in self.terms.items():
            red = tuple(e if e < q else (e - 1) % (q - 1) + 1 for e in mono)
            out[red] = out.get(red, 0) + c
        return MultiPoly(self.field, self.num_vars, out)

    # -- text form ------------------------------------------------------

    def render(self) -> str:
        """Textual form ``c*x1^a1*x2^a2 + ...`` in ascending lex order."""
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            factors = [str(c)]
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    @classmethod
    def parse(cls, field: PrimeField, num_vars: int, text: str) -> "MultiPoly":
        """Inverse of :meth:`render`; accepts optional whitespace."""
        text = text.strip()
        if text == "0":
            return cls.zero(field, num_vars)
        terms: dict[Monomial, int] = {}
        var_re = re.compile(r"^x(\d+)(?:\^(\d+))?$")
        for chunk in text.split("+"):
            factors = [f.strip() for f in chunk.strip().split("*")]
            if not factors or not factors[0]:
                raise ValueError(f"empty term in {text!r}")
            try:
                coeff = int(factors[0])
                rest = factors[1:]
            except ValueError:
                coeff = 1
                rest = factors
            expo = [0] * num_vars
            for f in rest:
                m = var_re.match(f)
                if not m:
                    raise ValueError(f"bad factor {f!r}")
                idx = int(m.group(1)) - 1
                if not 0 <= idx < num_vars:
                    raise DimensionMismatch(f"variable x{idx + 1} outside 1..{num_vars}")
                expo[idx] += int(m.group(2) or 1)
            key = tuple(expo)
            terms[key] = terms.get(key, 0) + coeff
        return cls(field, num_vars, terms)

    def __repr__(self) -> str:
        return f"MultiPoly(F_{self.field.q}, {self.num_vars}, {self.render()})"


def poly_from_gradient(partials: Sequence[MultiPoly], degree: int = 2) -> MultiPoly:
    """Recover a homogeneous degree-d polynomial from its gradient.

    Uses the Euler identity f = d^{-1} * sum_i x_i * df/dx_i, which needs
    the degree to be invertible in the field.  The result is verified by
    re-differentiating; inconsistent inputs raise InconsistentGradient.
    """
    if not partials:
        raise DimensionMismatch("need at least one partial derivative")
    field = partials[0].field
    m = len(partials)
    for p in partials:
        if p.field != field or p.num_vars != m:
            raise DimensionMismatch("partials disagree on ring")
    if degree % field.q == 0:
        raise CharacteristicDividesDegree(
            f"degree {degree} is not invertible modulo {field.q}"
        )
    inv_d = int(FieldElement(degree, field).inverse())
    acc = MultiPoly.zero(field, m)
    for i, p in enumerate(partials):
        acc = acc + MultiPoly.variable(field, m, i) * p
    f = acc * inv_d
    for i, p in enumerate(partials):
        if f.partial_derivative(i) != p:
            raise InconsistentGradient(
                "partials are not the gradient of a homogeneous polynomial"
            )
    return f


class UniPoly:
    """Univariate polynomial; coefficients ascending, leading one nonzero."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs: Iterable):
        vals = [int(field(c)) for c in coeffs]
        while vals and vals[-1] == 0:
            vals.pop()
        self.field = field
        self.coeffs = tuple(vals)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, t) -> FieldElement:
        q = self.field.q
        x = int(self.field(t))
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % q
        return FieldElement(acc, self.field)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniPoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.coeffs))

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{e}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UniPoly(F_{self.field.q}, {self.render()})"


def restrict_to_line(f: MultiPoly, base: Sequence, direction: Sequence) -> UniPoly:
    """The univariate polynomial g(t) = f(base + t * direction).

    Computed by symbolic substitution, so deg(g) <= total_degree(f).
    """
    field = f.field
    q = field.q
    b = _as_ints(field, base)
    d = _as_ints(field, direction)
    if len(b) != f.num_vars or len(d) != f.num_vars:
        raise DimensionMismatch("base/direction dimension differs from variable count")
    if all(x == 0 for x in d):
        raise ZeroDirection("line direction must be nonzero")
    total = [0] * (max(0, f.total_degree()) + 1)
    for mono, c in f.terms.items():
        prod = [c]
        for i, e in enumerate(mono):
            if e == 0:
                continue
            # (b_i + d_i t)^e as ascending coefficients
            factor = [
                (math.comb(e, j) * pow(b[i], e - j, q) * pow(d[i], j, q)) % q
                for j in range(e + 1)
            ]
            nxt = [0] * (len(prod) + e)
            for j1, c1 in enumerate(prod):
                if not c1:
                    continue
                for j2, c2 in enumerate(factor):
                    if c2:
                        nxt[j1 + j2] = (nxt[j1 + j2] + c1 * c2) % q
            prod = nxt
        for j, c1 in enumerate(prod):
            total[j] = (total[j] + c1) % q
    return UniPoly(field, total)


def interpolate_univariate(samples: Sequence[tuple], degree_bound: int) -> UniPoly:
    """Unique polynomial of degree <= degree_bound through the samples.

    Lagrange form on the first degree_bound+1 samples; surplus samples are
    cross-checked exactly, never fitted.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be non-negative")
    if not samples:
        raise DimensionMismatch("no samples given")
    field = None
    pts: list[tuple[int, int]] = []
    for t, y in samples:
        if field is None:
            field = t.field if isinstance(t, FieldElement) else (
                y.field if isinstance(y, FieldElement) else None)
            if field is None:
                raise TypeError("samples must contain at least one FieldElement "
                                "or a field must be inferable")
        pts.append((int(field(t)), int(field(y))))
    seen = set()
    for t, _ in pts:
        if t in seen:
            raise DuplicateAbscissa(f"repeated abscissa {t}")
        seen.add(t)
    if len(pts) < degree_bound + 1:
        raise DimensionMismatch(
            f"need {degree_bound + 1} samples for degree {degree_bound}, got {len(pts)}"
        )
    q = field.q
    use = pts[: degree_bound + 1]
    coeffs = [0] * (degree_bound + 1)
    for i, (ti, yi) in enumerate(use):
        # numerator prod_{j != i} (t - t_j), denominator prod (t_i - t_j)
        num = [1]
        denom = 1
        for j, (tj, _) in enumerate(use):
            if j == i:
                continue
            nxt = [0] * (len(num) + 1)
            for k, c in enumerate(num):
                nxt[k] = (nxt[k] - c * tj) % q
                nxt[k + 1] = (nxt[k + 1] + c) % q
            num = nxt
            denom = (denom * (ti - tj)) % q
        scale = (yi * pow(denom, q - 2, q)) % q
        for k, c in enumerate(num):
            coeffs[k] = (coeffs[k] + c * scale) % q
    poly = UniPoly(field, coeffs)
    for t, y in pts[degree_bound + 1:]:
        if int(poly.evaluate(t)) != y:
            raise InconsistentSamples(
                f"sample at t={t} disagrees with the degree-{degree_bound} fit"
            )
    return poly
