"""The auxiliary [N, m, d] linear code whose generator rows seed the
evaluation-point constructions.

The generator is kept in its N x m row-point form: codewords are y = G b,
so the rows a_i of G are points of F_q^m and decoding y recovers b.  The
module provides an MDS (polynomial-evaluation) constructor, an explicit-row
constructor for pinned test geometries, a constrained random search for the
stricter weight/dual-distance profile needed by error-tolerant derivative
decoding, exact weight enumeration, and bounded-distance decoding with
erasures.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    DecodingFailure,
    DimensionMismatch,
    DuplicatePoints,
    InfeasibleParameters,
    NoSolution,
    RankDeficient,
    TooLarge,
    TooManyPoints,
)
from .gf import Matrix, PrimeField
from .rm import enum_guard


@dataclass(frozen=True)
class CodeProfile:
    """Exact weight/duality profile established by enumeration.

    epsilon is the rational (d_min - 1) / (2N), so d_min = 2*epsilon*N + 1
    holds identically.  no_dual_word marks full-rank row sets with no
    linear dependency at all; d_dual is then reported as n+1 by convention.
    """

    d_min: int
    max_weight: int
    d_dual: int
    epsilon: Fraction
    no_dual_word: bool = False

    def as_dict(self) -> dict:
        return {
            "d_min": self.d_min,
            "max_weight": self.max_weight,
            "d_dual": self.d_dual,
            "epsilon": f"{self.epsilon.numerator}/{self.epsilon.denominator}",
            "no_dual_word": self.no_dual_word,
        }


class InnerCode:
    """[n, k] linear code given by n row points in F_q^k."""

    def __init__(self, field: PrimeField, rows: Sequence[Sequence[int]],
                 profile: Optional[CodeProfile] = None,
                 require_full_rank: bool = True):
        self.field = field
        self.rows = tuple(tuple(int(x) % field.q for x in r) for r in rows)
        if not self.rows:
            raise DimensionMismatch("need at least one row")
        k = len(self.rows[0])
        if any(len(r) != k for r in self.rows):
            raise DimensionMismatch("ragged rows")
        if len(set(self.rows)) != len(self.rows):
            raise DuplicatePoints("row points must be pairwise distinct")
        self.n = len(self.rows)
        self.k = k
        self.rank = Matrix(field, self.rows).rank()
        if require_full_rank and self.rank != k:
            raise RankDeficient(f"rows have rank {self.rank}, need {k}")
        self.profile = profile
        self._codeword_table: list[tuple[int, ...]] | None = None
        self._affine: InnerCode | None = None

    def matrix(self) -> Matrix:
        return Matrix(self.field, self.rows)

    def encode(self, message: Sequence[int]) -> tuple[int, ...]:
        if len(message) != self.k:
            raise DimensionMismatch(f"message length {len(message)}, expected {self.k}")
        q = self.field.q
        msg = [int(x) % q for x in message]
        return tuple(sum(a * b for a, b in zip(row, msg)) % q for row in self.rows)

    def with_profile(self) -> "InnerCode":
        """Return self after filling in the brute-forced profile."""
        if self.profile is None:
            self.profile = compute_profile(self)
        return self

    def affine(self) -> "InnerCode":
        """The code extended with a trailing all-ones column.

        Decoding it separates an affine constant from the linear part; the
        extension may be rank deficient (recorded, not fatal) when the
        all-ones vector already lies in the column span.
        """
        if self._affine is None:
            rows = [r + (1,) for r in self.rows]
            aff = InnerCode(self.field, rows, require_full_rank=False)
            if aff.rank == aff.k and self.field.q ** aff.k <= enum_guard():
                aff = aff.with_profile()
            self._affine = aff
        return self._affine

    def meets_strict_profile(self) -> bool:
        """Weight window and dual-distance conditions for error-tolerant
        derivative decoding: max weight below (1-2*eps)N and d_dual >= 5."""
        p = self.profile if self.profile is not None else compute_profile(self)
        return (
            p.d_min >= 2
            and p.max_weight < self.n - p.d_min + 1
            and p.d_dual >= 5
        )

    def as_dict(self) -> dict:
        out = {
            "q": self.field.q,
            "n": self.n,
            "k": self.k,
            "rows": [list(r) for r in self.rows],
        }
        if self.profile is not None:
            out["profile"] = self.profile.as_dict()
        return out

    def __repr__(self) -> str:
        d = self.profile.d_min if self.profile else "?"
        return f"InnerCode([{self.n}, {self.k}, {d}]_{self.field.q})"


def weight_profile(code: InnerCode) -> tuple[int, int, dict[int, int]]:
    """(d_min, max_weight, full weight distribution) by enumerating q^k words."""
    q = code.field.q
    if q ** code.k > enum_guard():
        raise TooLarge(f"{q}^{code.k} codewords exceed the enumeration guard")
    dist: dict[int, int] = {}
    for msg in itertools.product(range(q), repeat=code.k):
        if not any(msg):
            continue
        w = sum(1 for s in code.encode(msg) if s)
        dist[w] = dist.get(w, 0) + 1
    if not dist:
        raise TooLarge("zero-dimension code has no nonzero codewords")
    return min(dist), max(dist), dict(sorted(dist.items()))


def dual_min_distance(code: InnerCode) -> tuple[int, bool]:
    """Smallest number of linearly dependent rows, i.e. the dual minimum
    weight.  Returns (n+1, True) when the rows admit no dependency."""
    if code.n > 24:
        raise TooLarge("row subset search is limited to n <= 24")
    field = code.field
    for w in range(1, code.n + 1):
        for subset in itertools.combinations(range(code.n), w):
            rows = [code.rows[i] for i in subset]
            if Matrix(field, rows).rank() < w:
                return w, False
    return code.n + 1, True


def compute_profile(code: InnerCode) -> CodeProfile:
    d_min, max_w, _ = weight_profile(code)
    d_dual, no_dual = dual_min_distance(code)
    return CodeProfile(
        d_min=d_min,
        max_weight=max_w,
        d_dual=d_dual,
        epsilon=Fraction(d_min - 1, 2 * code.n),
        no_dual_word=no_dual,
    )


def make_mds_code(q: int, n: int, k: int,
                  eval_points: Sequence[int] | None = None,
                  constant_free: bool = False) -> InnerCode:
    """Polynomial-evaluation MDS code with Vandermonde row points.

    Rows are (1, a, a^2, ..., a^(k-1)) by default.  With constant_free=True
    the powers shift to (a, a^2, ..., a^k); the rows then avoid the
    hyperplane x_1 = 1, keeping the all-ones vector independent of the
    columns, which the affine extension used by derivative decoding needs.
    constant_free requires nonzero evaluation points.
    """
    field = PrimeField(q)
    if eval_points is None:
        if constant_free or n < q:
            eval_points = list(range(1, n + 1))
        else:
            eval_points = list(range(n))
    pts = [int(a) % q for a in eval_points]
    if len(pts) != n:
        raise DimensionMismatch(f"need {n} evaluation points, got {len(pts)}")
    if len(set(pts)) != n:
        raise DuplicatePoints("evaluation points must be distinct")
    if n > q:
        raise TooManyPoints(f"at most {q} distinct points exist in F_{q}")
    if constant_free and any(a == 0 for a in pts):
        raise DuplicatePoints("constant_free rows need nonzero evaluation points")
    lo = 1 if constant_free else 0
    rows = [tuple(pow(a, e, q) for e in range(lo, lo + k)) for a in pts]
    code = InnerCode(field, rows)
    if q**k <= enum_guard():
        code = code.with_profile()
        assert code.profile.d_min == n - k + 1, "MDS distance check failed"
    return code


def make_explicit_code(q: int, rows: Sequence[Sequence[int]]) -> InnerCode:
    """Inner code from pinned row points; profile filled when enumerable."""
    field = PrimeField(q)
    code = InnerCode(field, rows)
    if q ** code.k <= enum_guard():
        code = code.with_profile()
    return code


def search_constrained_code(q: int, n: int, k: int, trials: int,
                            seed: int) -> Optional[InnerCode]:
    """Random search for a code meeting the strict profile.

    Conditions checked exactly per candidate: d_min >= 2 (so epsilon > 0),
    maximal codeword weight below n - d_min + 1, and dual distance at
    least 5.  Returns the first hit with its verified profile, or None
    after the given number of trials.  d_dual >= 5 needs any 4 rows
    independent, which is impossible for k < 4, hence the infeasibility
    guard.
    """
    if k < 4 <= n:
        raise InfeasibleParameters(
            f"dual distance >= 5 is impossible for k={k} < 4: any 4 vectors "
            f"of F_q^{k} are linearly dependent"
        )
    field = PrimeField(q)
    if q**k > enum_guard():
        raise TooLarge(f"{q}^{k} codewords exceed the enumeration guard")
    rng = random.Random(seed)
    for _ in range(trials):
        rows = [tuple(rng.randrange(q) for _ in range(k)) for _ in range(n)]
        if len(set(rows)) != n:
            continue
        try:
            cand = InnerCode(field, rows).with_profile()
        except RankDeficient:
            continue
        if cand.meets_strict_profile():
            return cand
    return None


def decode_codeword(code: InnerCode, received: Sequence[Optional[int]]
                    ) -> tuple[int, ...]:
    """Recover the message from a word with erasures and possibly errors.

    None marks an erasure.  The error-free path is an exact linear solve
    over the unerased positions; with errors, an exhaustive
    nearest-codeword scan over all q^k candidates runs, and the result is
    accepted only inside the bounded-distance regime 2*errors + erasures
    < d_min.  Ambiguity or anything outside the radius raises
    DecodingFailure.
    """
    if len(received) != code.n:
        raise DimensionMismatch(f"received length {len(received)}, expected {code.n}")
    q = code.field.q
    known = [(i, int(v) % q) for i, v in enumerate(received) if v is not None]
    erased = code.n - len(known)
    if known:
        mat = Matrix(code.field, [code.rows[i] for i, _ in known])
        try:
            x, nullspace = mat.solve([v for _, v in known])
            if not nullspace:
                return tuple(x)
            raise DecodingFailure(
                f"{erased} erasures leave the message underdetermined"
            )
        except NoSolution:
            pass  # errors present, fall through to the scan
    if code.profile is None:
        raise DecodingFailure("errors present and code has no verified profile")
    d = code.profile.d_min
    radius = (d - 1 - erased) // 2
    if radius < 1:
        raise DecodingFailure(
            f"no codeword matches and radius is {max(radius, 0)} "
            f"(d_min={d}, erasures={erased})"
        )
    if q ** code.k > enum_guard():
        raise TooLarge(f"{q}^{code.k} candidates exceed the enumeration guard")
    if code._codeword_table is None:
        code._codeword_table = [
            (msg, code.encode(msg))
            for msg in itertools.product(range(q), repeat=code.k)
        ]
    best_dist = code.n + 1
    best_msg = None
    ambiguous = False
    for msg, word in code._codeword_table:
        dist = sum(1 for (i, v) in known if word[i] != v)
        if dist < best_dist:
            best_dist, best_msg, ambiguous = dist, msg, False
        elif dist == best_dist:
            ambiguous = True
    if ambiguous or best_msg is None or 2 * best_dist + erased >= d:
        raise DecodingFailure(
            f"nearest codeword at distance {best_dist} with {erased} erasures "
            f"is outside the bounded-distance radius (d_min={d})"
        )
    return tuple(best_msg)
