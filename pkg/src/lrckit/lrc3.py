"""Locality-3 codes: puncture the degree-2 evaluation code onto the sumset
of the inner rows plus line extensions.

The evaluation set starts from S2 = {a_i + a_j : i <= j}.  Case A extends,
for each chosen pair (i, j), the line that already carries the three sumset
points 2a_i, a_i + a_j, 2a_j with points 2a_i + t*(a_j - a_i) for
t = 3..2+L, giving L+3 collinear evaluation points per pair.  Case B
forgets the sumset geometry and pairs sumset points directly, like the
locality-2 construction, with t = 2..2+L.

Decoding from the sumset block alone works by derivative interpolation:
differences of translated views of the codeword are evaluations of
degree-1 polynomials, which the inner code decodes; assembling enough
directional derivatives recovers the quadratic part, and peeling it off
leaves an affine polynomial for one more inner decode.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import (
    AffineRankDeficient,
    DecodingFailure,
    DimensionMismatch,
    InconsistentGradient,
    LTooLarge,
    NoRepairGroup,
    NoSpanningDirections,
    PartialFailure,
    QTooSmall,
    TooLarge,
    UncoveredIndex,
)
from .evalset import (
    Codeword,
    EvaluationSet,
    PairSet,
    RepairResult,
    _Builder,
    line_repair,
)
from .gf import Matrix
from .inner import InnerCode, decode_codeword
from .lrc2 import CoopResult, DecodeResult, _cooperative, locality_upper_bound
from .mpoly import Monomial, MultiPoly, poly_from_gradient
from .rm import RMCode, enum_guard, min_weight_dual_codeword


def monomial_index(num_vars: int) -> list[Monomial]:
    """Exponent tuples of total degree <= 2, ascending lex; constant first.

    This order defines the data-symbol to coefficient mapping, so K is its
    length, the full count of degree-<=2 monomials: (m+2 choose 2).
    """
    return sorted(
        e for e in itertools.product(range(3), repeat=num_vars) if sum(e) <= 2
    )


@dataclass(frozen=True)
class SumSet:
    """The sumset block of the evaluation set, with translated views.

    t_views[i-1][k-1] is the node index holding the evaluation at
    a_k + a_i, so subtracting two views gives the evaluations of a
    difference polynomial on the inner rows.  provenance maps each sumset
    node to every (i, j) pair summing onto it.
    """

    size: int
    t_views: tuple[tuple[int, ...], ...]
    provenance: dict[int, tuple[tuple[int, int], ...]]


@dataclass(frozen=True)
class Lrc3Code:
    """A constructed locality-3 code."""

    inner: InnerCode
    pair_set: PairSet
    L: int
    case: str  # "A" or "B"
    eval_set: EvaluationSet
    sum_set: SumSet
    affine_rank: int

    kind = "locality3"
    locality = 3

    @property
    def K(self) -> int:
        return len(monomial_index(self.inner.k))

    @property
    def field(self):
        return self.inner.field

    @property
    def n_nodes(self) -> int:
        return len(self.eval_set)

    def rate(self) -> Fraction:
        return Fraction(self.K, self.n_nodes)

    def data_polynomial(self, message: Sequence[int]) -> MultiPoly:
        if len(message) != self.K:
            raise DimensionMismatch(
                f"message length {len(message)}, expected {self.K}"
            )
        m = self.inner.k
        return MultiPoly(self.field, m,
                         dict(zip(monomial_index(m), (int(x) for x in message))))


def _build_sumset(builder: _Builder, inner: InnerCode) -> SumSet:
    q = inner.field.q
    n = inner.n
    provenance: dict[int, list[tuple[int, int]]] = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            p = tuple((x + y) % q for x, y in
                      zip(inner.rows[i - 1], inner.rows[j - 1]))
            node = builder.add_point(p)
            provenance.setdefault(node, []).append((i, j))
    size = len(builder.points)
    t_views = []
    for i in range(1, n + 1):
        view = []
        for k in range(1, n + 1):
            p = tuple((x + y) % q for x, y in
                      zip(inner.rows[k - 1], inner.rows[i - 1]))
            view.append(builder.index[p])
        t_views.append(tuple(view))
    return SumSet(size=size, t_views=tuple(t_views),
                  provenance={k: tuple(v) for k, v in provenance.items()})


def build_lrc3(inner: InnerCode, pair_set: PairSet, L: int, case: str = "A",
               allow_uncovered: bool = False) -> Lrc3Code:
    """Assemble the sumset, extensions, and line registry.

    Sumset order: pairs (i, j) with i <= j in lex order, dedup keep-first.
    Case A lines carry t values 0, 1, 2 (the sumset points 2a_i, a_i+a_j,
    2a_j) plus 3..2+L; case B pairs sumset positions directly with t
    values 0, 1 plus 2..2+L.  The all-ones extension rank is recorded for
    the derivative decoder: constants are inseparable without it.
    """
    q = inner.field.q
    if q < 5:
        raise QTooSmall(
            f"locality-3 needs q >= 5 (degree-2 monomials and an invertible 2), got {q}"
        )
    if case not in ("A", "B"):
        raise ValueError(f"case must be 'A' or 'B', got {case!r}")
    if not 1 <= L <= q - 3:
        raise LTooLarge(f"L={L} outside 1..{q - 3} (t values up to 2+L must fit)")

    b = _Builder(inner.field)
    sum_set = _build_sumset(b, inner)

    if case == "A":
        n = inner.n
        if pair_set.max_index() > n:
            raise ValueError(f"pair index {pair_set.max_index()} exceeds N={n}")
        uncovered = set(range(1, n + 1)) - pair_set.covered()
        if uncovered and not allow_uncovered:
            raise UncoveredIndex(
                f"inner rows {sorted(uncovered)} appear in no pair; "
                "pass allow_uncovered=True to accept this"
            )
        for i, j in pair_set:
            ai, aj = inner.rows[i - 1], inner.rows[j - 1]
            base = tuple((2 * x) % q for x in ai)
            direction = tuple((y - x) % q for x, y in zip(ai, aj))
            mid = tuple((x + y) % q for x, y in zip(ai, aj))
            top = tuple((2 * y) % q for y in aj)
            nodes = [b.index[base], b.index[mid], b.index[top]]
            ts = [0, 1, 2] + list(range(3, 3 + L))
            for t in range(3, 3 + L):
                pt = tuple((x + t * d) % q for x, d in zip(base, direction))
                nodes.append(b.add_point(pt))
            b.add_line(base, direction, ts, nodes)
    else:
        size = sum_set.size
        if pair_set.max_index() > size:
            raise ValueError(
                f"pair index {pair_set.max_index()} exceeds |S2|={size}"
            )
        for i, j in pair_set:
            pi, pj = b.points[i - 1], b.points[j - 1]
            direction = tuple((y - x) % q for x, y in zip(pi, pj))
            nodes = [i, j]
            ts = [0, 1] + list(range(2, 3 + L))
            for t in range(2, 3 + L):
                pt = tuple((x + t * d) % q for x, d in zip(pi, direction))
                nodes.append(b.add_point(pt))
            b.add_line(pi, direction, ts, nodes)

    eval_set = b.build()
    eval_set.check_coverage(allow_uncovered)
    affine_rank = inner.affine().rank
    return Lrc3Code(inner=inner, pair_set=pair_set, L=L, case=case,
                    eval_set=eval_set, sum_set=sum_set,
                    affine_rank=affine_rank)


def encode3(code: Lrc3Code, message: Sequence[int]) -> Codeword:
    f = code.data_polynomial(message)
    return Codeword(tuple(int(f.evaluate(p)) for p in code.eval_set.points))


def repair3(code: Lrc3Code, failed: int, available: Mapping[int, int]
            ) -> RepairResult:
    """Recover one symbol from 3 survivors on a line through it.

    The restriction of a degree-<=2 polynomial to a line has degree at
    most 2, so three points pin it; a quadratic fit stays correct when the
    actual restriction degenerates to lower degree.
    """
    es = code.eval_set
    for li in es.node_lines.get(failed, ()):
        res = line_repair(es, es.lines[li], li, failed, available,
                          contacts_needed=3, degree=2)
        if res is not None:
            return res
    raise NoRepairGroup(
        f"every line through node {failed} has fewer than 3 survivors"
    )


def cooperative_repair3(code: Lrc3Code, failed: set[int],
                        available: Mapping[int, int]) -> CoopResult:
    """Line-grouped repair: 3 contacts recover every failed node on a line."""
    recovered, events, pending = _cooperative(code, failed, available, 3, 2)
    if pending:
        raise PartialFailure(recovered, pending, events)
    return CoopResult(recovered, tuple(events))


def _spanning_pairs(code: Lrc3Code) -> list[tuple[int, int]]:
    """Lexicographically first pairs whose row differences span F_q^m."""
    inner = code.inner
    field = code.field
    chosen: list[tuple[int, int]] = []
    rows: list[tuple[int, ...]] = []
    rank = 0
    for i, j in itertools.combinations(range(1, inner.n + 1), 2):
        d = tuple((x - y) % field.q
                  for x, y in zip(inner.rows[i - 1], inner.rows[j - 1]))
        trial = rows + [d]
        r = Matrix(field, trial).rank()
        if r > rank:
            rows, rank = trial, r
            chosen.append((i, j))
        if rank == inner.k:
            return chosen
    raise NoSpanningDirections(
        f"row differences span only rank {rank} of {inner.k}"
    )


def _difference_word(code: Lrc3Code, received, i: int, j: int):
    q = code.field.q
    vi = code.sum_set.t_views[i - 1]
    vj = code.sum_set.t_views[j - 1]
    out = []
    for ni, nj in zip(vi, vj):
        a, bb = received[ni - 1], received[nj - 1]
        out.append(None if a is None or bb is None else (a - bb) % q)
    return out


def _decode_affine(code: Lrc3Code, word) -> tuple[tuple[int, ...], int]:
    """Decode (linear coefficients, constant) via the all-ones extension."""
    sol = decode_codeword(code.inner.affine(), word)
    return sol[:-1], sol[-1]


def decode_global3(code: Lrc3Code, received_sumset: Sequence[Optional[int]],
                   mode: str = "spanning") -> DecodeResult:
    """Recover the message from the sumset block alone.

    Step 1 decodes difference words of translated views into degree-1
    polynomials; their linear parts are directional derivatives of the
    quadratic part along the paired row difference.  Step 2 solves the
    direction system and rebuilds the quadratic part from its gradient.
    Step 3 subtracts it from the first view and decodes the affine
    remainder, shifting its constant back to the origin.

    mode="spanning" uses the lexicographically first direction-spanning
    pairs (m decodes); mode="all-pairs" uses every pair, skipping
    individually failed decodes, and solves the stacked exact system,
    which tolerates more errors at quadratic cost.
    """
    field = code.field
    q = field.q
    m = code.inner.k
    if len(received_sumset) != code.sum_set.size:
        raise DimensionMismatch(
            f"sumset block length {len(received_sumset)}, "
            f"expected {code.sum_set.size}"
        )
    if code.affine_rank != m + 1:
        raise AffineRankDeficient(
            "inner rows lie on an affine hyperplane; constants cannot be "
            "separated, pick rows with full affine rank"
        )
    if mode not in ("spanning", "all-pairs"):
        raise ValueError(f"mode must be 'spanning' or 'all-pairs', got {mode!r}")
    received = list(received_sumset)

    if mode == "spanning":
        pairs = _spanning_pairs(code)
        directions = []
        derivs = []
        for i, j in pairs:
            w, _ = _decode_affine(code, _difference_word(code, received, i, j))
            directions.append(tuple(
                (x - y) % q for x, y in
                zip(code.inner.rows[i - 1], code.inner.rows[j - 1])
            ))
            derivs.append(w)
        V = Matrix(field, directions)
        partial_rows = V.inverse() @ Matrix(field, derivs)
        partials = [MultiPoly.linear(field, partial_rows.row(i)) for i in range(m)]
        used_pairs = pairs
    else:
        eqs: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        used_pairs = []
        for i, j in itertools.combinations(range(1, code.inner.n + 1), 2):
            try:
                w, _ = _decode_affine(code, _difference_word(code, received, i, j))
            except DecodingFailure:
                continue
            d = tuple((x - y) % q for x, y in
                      zip(code.inner.rows[i - 1], code.inner.rows[j - 1]))
            eqs.append((d, w))
            used_pairs.append((i, j))
        if not eqs:
            raise DecodingFailure("every difference decode failed")
        V = Matrix(field, [d for d, _ in eqs])
        if V.rank() < m:
            raise NoSpanningDirections(
                "usable difference directions do not span the space"
            )
        cols = []
        for var in range(m):
            rhs = [w[var] for _, w in eqs]
            try:
                x, _ = V.solve(rhs)
            except Exception as exc:
                raise DecodingFailure(
                    f"stacked derivative system inconsistent: {exc}"
                ) from exc
            cols.append(x)
        partials = [
            MultiPoly.linear(field, [cols[var][i] for var in range(m)])
            for i in range(m)
        ]

    try:
        f2 = poly_from_gradient(partials, 2)
    except InconsistentGradient as exc:
        raise DecodingFailure(f"derivatives are not a gradient: {exc}") from exc

    a1 = code.inner.rows[0]
    view1 = code.sum_set.t_views[0]
    residual = []
    for k in range(code.inner.n):
        v = received[view1[k] - 1]
        if v is None:
            residual.append(None)
            continue
        pt = tuple((x + y) % q for x, y in zip(code.inner.rows[k], a1))
        residual.append((v - int(f2.evaluate(pt))) % q)
    c, c0_shift = _decode_affine(code, residual)
    c0 = (c0_shift - sum(ci * x for ci, x in zip(c, a1))) % q

    f = f2 + MultiPoly.linear(field, c) + MultiPoly.constant(field, m, c0)
    message = tuple(int(f.coefficient(mono)) for mono in monomial_index(m))
    read = sorted({
        node for i, j in used_pairs
        for node in code.sum_set.t_views[i - 1] + code.sum_set.t_views[j - 1]
        if received[node - 1] is not None
    } | {node for node in view1 if received[node - 1] is not None})
    return DecodeResult(message, tuple(read))


def used_sumset_nodes(code: Lrc3Code, mode: str = "spanning") -> set[int]:
    """Sumset nodes any decode in the schedule would consume; the exact
    success predicate for single-error injection is that the error sits
    outside this set."""
    if mode == "spanning":
        pairs = _spanning_pairs(code)
    else:
        pairs = list(itertools.combinations(range(1, code.inner.n + 1), 2))
    nodes = set(code.sum_set.t_views[0])
    for i, j in pairs:
        nodes |= set(code.sum_set.t_views[i - 1])
        nodes |= set(code.sum_set.t_views[j - 1])
    return nodes


def evaluation_rank3(code: Lrc3Code) -> int:
    """Rank of the K-column evaluation matrix over the sumset block.

    Equals K exactly when the sumset alone pins every message, i.e. the
    encoder is injective already on the block the decoder reads.
    """
    field = code.field
    q = field.q
    monos = monomial_index(code.inner.k)
    rows = []
    for node in range(1, code.sum_set.size + 1):
        p = code.eval_set.node_point(node)
        row = []
        for mono in monos:
            v = 1
            for x, e in zip(p, mono):
                if e:
                    v = (v * pow(x, e, q)) % q
            row.append(v)
        rows.append(row)
    return Matrix(field, rows).rank()


def brute_force_distance3(code: Lrc3Code) -> int:
    q = code.field.q
    if q ** code.K > enum_guard():
        raise TooLarge(f"{q}^{code.K} messages exceed the enumeration guard")
    best = code.n_nodes + 1
    for msg in itertools.product(range(q), repeat=code.K):
        if not any(msg):
            continue
        w = sum(1 for s in encode3(code, msg).symbols if s)
        best = min(best, w)
    return best


def erasure_probe3(code: Lrc3Code, trials: int, max_erasures: int,
                   seed: int) -> dict[int, Fraction]:
    """Empirical erasure resilience of the derivative decoder.

    For each erasure count, erase random sumset positions and record the
    exact success fraction of decode attempts against a known message.
    """
    import random as _random

    rng = _random.Random(seed)
    out: dict[int, Fraction] = {}
    size = code.sum_set.size
    for e in range(1, max_erasures + 1):
        ok = 0
        for _ in range(trials):
            msg = [rng.randrange(code.field.q) for _ in range(code.K)]
            word = list(encode3(code, msg).symbols[:size])
            for pos in rng.sample(range(size), e):
                word[pos] = None
            try:
                res = decode_global3(code, word)
                ok += res.message == tuple(msg)
            except Exception:
                pass
        out[e] = Fraction(ok, trials)
    return out


def params_report3(code: Lrc3Code, probe_trials: int = 0, seed: int = 0) -> dict:
    """Exact size/rate accounting plus the conditional distance bounds.

    The epsilon-based bounds assume the strict inner-code profile (weight
    window and dual distance), which small MDS instances provably fail, so
    they are printed as conditional values, never asserted.
    """
    p = code.inner.profile
    eps = p.epsilon if p else None
    s2 = code.sum_set.size
    report = {
        "kind": code.kind,
        "case": code.case,
        "q": code.field.q,
        "N": code.inner.n,
        "K": code.K,
        "L": code.L,
        "pairs": len(code.pair_set),
        "sumset_size": s2,
        "n_nodes": code.n_nodes,
        "rate": f"{code.rate().numerator}/{code.rate().denominator}",
        "d_upper_locality": locality_upper_bound(code.n_nodes, code.K, 3, code.L + 1),
        "strict_profile": code.inner.meets_strict_profile(),
        "affine_rank_ok": code.affine_rank == code.inner.k + 1,
    }
    if eps is not None:
        tol = Fraction(eps * eps, 18) * s2
        bound_a = 2 * tol + 1
        bound_b = Fraction(eps * eps, 9) * s2 + 1
        report["conditional_error_tolerance"] = f"{tol}"
        report["conditional_d_lower_from_tolerance"] = f"{bound_a}"
        report["conditional_d_lower_direct"] = f"{bound_b}"
    if probe_trials:
        probe = erasure_probe3(code, probe_trials, max_erasures=4, seed=seed)
        report["erasure_probe"] = {
            str(e): f"{frac.numerator}/{frac.denominator}" for e, frac in probe.items()
        }
    return report


def locality_witness3(code: Lrc3Code, node: int,
                      seed: int | None = None) -> tuple[MultiPoly, tuple[int, ...]]:
    """A weight-4 dual codeword covering the node.

    Four points of the node's first registered line support a minimum
    weight codeword of the degree-2 code's dual; all four are evaluation
    set members, so its restriction certifies locality 3.
    """
    es = code.eval_set
    lines = es.node_lines.get(node)
    if not lines:
        raise NoRepairGroup(f"node {node} lies on no registered line")
    line = es.lines[lines[0]]
    peers = [n for n in line.nodes if n != node][:3]
    pts = [es.node_point(node)] + [es.node_point(p) for p in peers]
    rm = RMCode(code.field, code.inner.k, 2)
    g = min_weight_dual_codeword(rm, pts, seed=seed)
    return g, (node, *peers)
