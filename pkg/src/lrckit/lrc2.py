"""Locality-2 codes: puncture the degree-1 evaluation code onto the rows of
an inner code plus per-pair line extensions.

Construction: for each chosen index pair (i, j), the line through a_i and
a_j gains L extra evaluation points a_i + t*(a_j - a_i) for t = 2..1+L, so
any symbol on the line is a degree-1 interpolation of two surviving
symbols on it.  Encoding evaluates f(x) = sum_i b_i x_i; the message is
recovered globally by decoding the inner code on the first N symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Mapping, Optional, Sequence

from .errors import (
    DecodingFailure,
    DimensionMismatch,
    LTooLarge,
    NoRepairGroup,
    NotSystematicInner,
    PartialFailure,
    TooLarge,
    UncoveredIndex,
)
from .evalset import (
    Codeword,
    EvaluationSet,
    Line,
    PairSet,
    RepairResult,
    _Builder,
    line_repair,
)
from .gf import Matrix
from .inner import InnerCode, decode_codeword
from .mpoly import MultiPoly
from .rm import RMCode, enum_guard, min_weight_dual_codeword
import itertools


@dataclass(frozen=True)
class LrcCode:
    """A constructed locality-2 code."""

    inner: InnerCode
    pair_set: PairSet
    L: int
    eval_set: EvaluationSet
    systematic: bool = False

    kind = "locality2"
    locality = 2

    @property
    def K(self) -> int:
        return self.inner.k

    @property
    def field(self):
        return self.inner.field

    @property
    def n_nodes(self) -> int:
        return len(self.eval_set)

    def rate(self) -> Fraction:
        return Fraction(self.K, self.n_nodes)


def build_lrc2(inner: InnerCode, pair_set: PairSet, L: int,
               allow_uncovered: bool = False) -> LrcCode:
    """Assemble the evaluation set and line registry.

    Point order: the N inner rows first, then extension points in pair
    order with ascending t, deduplicated keep-first.  A pair (i, j)
    registers the line with base a_i and direction a_j - a_i, whose t=0
    and t=1 points are a_i and a_j.  Colliding extension points reuse the
    existing node index, merging node identities while the registry keeps
    every line.
    """
    q = inner.field.q
    if not 1 <= L <= q - 2:
        raise LTooLarge(f"L={L} outside 1..{q - 2} (t values 2..1+L must fit in F_{q})")
    n = inner.n
    if pair_set.max_index() > n:
        raise ValueError(f"pair index {pair_set.max_index()} exceeds N={n}")
    uncovered = set(range(1, n + 1)) - pair_set.covered()
    if uncovered and not allow_uncovered:
        raise UncoveredIndex(
            f"inner rows {sorted(uncovered)} appear in no pair; "
            "pass allow_uncovered=True to accept this"
        )
    b = _Builder(inner.field)
    for row in inner.rows:
        b.add_point(row)
    for i, j in pair_set:
        ai, aj = inner.rows[i - 1], inner.rows[j - 1]
        direction = tuple((y - x) % q for x, y in zip(ai, aj))
        ts = [0, 1] + list(range(2, 2 + L))
        nodes = [i, j]
        for t in range(2, 2 + L):
            pt = tuple((x + t * d) % q for x, d in zip(ai, direction))
            nodes.append(b.add_point(pt))
        b.add_line(ai, direction, ts, nodes)
    eval_set = b.build()
    eval_set.check_coverage(allow_uncovered)
    return LrcCode(inner=inner, pair_set=pair_set, L=L, eval_set=eval_set)


def make_systematic2(inner: InnerCode, pair_set: PairSet, L: int) -> LrcCode:
    """Systematic variant: the first m rows are the identity, so symbols
    1..m equal the message; pairs must stay within the message indices.

    Rows beyond the message block carry no repair line here, mirroring
    parity symbols of pyramid-style layouts, so coverage is relaxed for
    them only.
    """
    m = inner.k
    identity = tuple(
        tuple(1 if i == j else 0 for j in range(m)) for i in range(m)
    )
    if inner.rows[:m] != identity:
        raise NotSystematicInner("inner rows 1..k must form the identity")
    if pair_set.max_index() > m:
        raise NotSystematicInner(
            f"systematic pairs must stay within message indices 1..{m}"
        )
    if set(range(1, m + 1)) - pair_set.covered():
        raise UncoveredIndex("every message index needs a pair")
    code = build_lrc2(inner, pair_set, L, allow_uncovered=True)
    return LrcCode(inner=inner, pair_set=pair_set, L=L,
                   eval_set=code.eval_set, systematic=True)


def data_polynomial2(code: LrcCode, message: Sequence[int]) -> MultiPoly:
    """The homogeneous linear polynomial sum_i b_i x_i (no constant term)."""
    if len(message) != code.K:
        raise DimensionMismatch(f"message length {len(message)}, expected {code.K}")
    return MultiPoly.linear(code.field, message)


def encode2(code: LrcCode, message: Sequence[int]) -> Codeword:
    f = data_polynomial2(code, message)
    return Codeword(tuple(int(f.evaluate(p)) for p in code.eval_set.points))


def repair2(code: LrcCode, failed: int, available: Mapping[int, int]
            ) -> RepairResult:
    """Recover one symbol from 2 survivors on a line through it.

    Scans the node's lines in registry order and takes the two
    lowest-indexed survivors on the first line that has them; the degree-1
    restriction is then pinned and evaluated at the failed node's t.
    """
    es = code.eval_set
    for li in es.node_lines.get(failed, ()):
        res = line_repair(es, es.lines[li], li, failed, available,
                          contacts_needed=2, degree=1)
        if res is not None:
            return res
    raise NoRepairGroup(
        f"every line through node {failed} has fewer than 2 survivors"
    )


@dataclass(frozen=True)
class CoopResult:
    """Outcome of cooperative repair: recovered symbols and per-line events."""

    recovered: dict[int, int]
    events: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]
    # each event: (line_index, recovered_nodes, contacted_nodes)

    @property
    def total_contacts(self) -> int:
        return sum(len(c) for _, _, c in self.events)


def _cooperative(code, failed, available, contacts_needed, degree):
    es = code.eval_set
    avail = {n: v for n, v in available.items() if n not in failed}
    pending = set(failed)
    events = []
    progress = True
    while progress and pending:
        progress = False
        for li, line in enumerate(es.lines):
            on_line = sorted(n for n in line.nodes if n in pending)
            if not on_line:
                continue
            survivors = sorted(n for n in line.nodes if n in avail)
            if len(survivors) < contacts_needed:
                continue
            chosen = survivors[:contacts_needed]
            samples = [(line.t_of(n), avail[n]) for n in chosen]
            from .evalset import interpolate_line_value

            for node in on_line:
                avail[node] = interpolate_line_value(
                    es.field, samples, degree, line.t_of(node))
            pending -= set(on_line)
            events.append((li, tuple(on_line), tuple(chosen)))
            progress = True
    recovered = {n: avail[n] for n in set(failed) - pending}
    return recovered, events, pending


def cooperative_repair2(code: LrcCode, failed: set[int],
                        available: Mapping[int, int]) -> CoopResult:
    """Repair many nodes at once, one interpolation per line.

    Lines are visited in registry order; each line with at least 2
    survivors recovers every failed node on it for 2 contacts total, and
    nodes recovered early serve as survivors for later lines.  Nodes left
    over raise PartialFailure carrying the partial result.
    """
    recovered, events, pending = _cooperative(code, failed, available, 2, 1)
    if pending:
        raise PartialFailure(recovered, pending, events)
    return CoopResult(recovered, tuple(events))


@dataclass(frozen=True)
class DecodeResult:
    message: tuple[int, ...]
    read_nodes: tuple[int, ...]


def _decode_block2(code: LrcCode, block: list, minimal_read: bool) -> DecodeResult:
    n = code.inner.n
    if minimal_read:
        picked: list[int] = []
        rows: list[tuple[int, ...]] = []
        rank = 0
        for node in range(1, n + 1):
            if block[node - 1] is None:
                continue
            trial = rows + [code.inner.rows[node - 1]]
            r = Matrix(code.field, trial).rank()
            if r > rank:
                rows, rank = trial, r
                picked.append(node)
            if rank == code.inner.k:
                break
        if rank != code.inner.k:
            raise DecodingFailure(
                f"alive inner symbols span rank {rank} < {code.inner.k}"
            )
        x, _ = Matrix(code.field, rows).solve([block[nd - 1] for nd in picked])
        return DecodeResult(tuple(x), tuple(picked))
    msg = decode_codeword(code.inner, block)
    read = tuple(i + 1 for i, v in enumerate(block) if v is not None)
    return DecodeResult(msg, read)


def decode_global2(code: LrcCode, received: Sequence[Optional[int]],
                   minimal_read: bool = False) -> DecodeResult:
    """Recover the message from a damaged codeword.

    The first N symbols form an inner-code word; decode that (erasures
    allowed, bounded-distance errors allowed).  If it fails, refill erased
    inner symbols from line survivors and retry once.  With minimal_read
    the decoder trusts the unerased symbols and reads only a greedy
    full-rank subset, which is what repair accounting wants.
    """
    es = code.eval_set
    if len(received) != len(es):
        raise DimensionMismatch(
            f"received length {len(received)}, expected {len(es)}"
        )
    n = code.inner.n
    block = list(received[:n])
    try:
        return _decode_block2(code, block, minimal_read)
    except DecodingFailure:
        pass

    erased = {i + 1 for i, v in enumerate(block) if v is None}
    available = {i + 1: v for i, v in enumerate(received) if v is not None}
    try:
        coop = cooperative_repair2(code, erased, available)
        recovered, events = coop.recovered, coop.events
    except PartialFailure as pf:
        recovered, events = pf.recovered, pf.events
    for node, val in recovered.items():
        if node <= n:
            block[node - 1] = val
    line_contacts = {c for _, _, cs in events for c in cs}
    result = _decode_block2(code, block, minimal_read)
    read = tuple(sorted(set(result.read_nodes) | line_contacts))
    return DecodeResult(result.message, read)


def brute_force_distance2(code: LrcCode) -> int:
    """Minimum codeword weight by enumerating all q^K messages."""
    q = code.field.q
    if q ** code.K > enum_guard():
        raise TooLarge(f"{q}^{code.K} messages exceed the enumeration guard")
    best = code.n_nodes + 1
    for msg in itertools.product(range(q), repeat=code.K):
        if not any(msg):
            continue
        w = sum(1 for s in encode2(code, msg).symbols if s)
        best = min(best, w)
    return best


def locality_upper_bound(n: int, k: int, r: int, delta: int) -> int:
    """Singleton-type upper bound for (r, delta)-locality:
    d <= n - k + 1 - (ceil(k/r) - 1) * (delta - 1)."""
    return n - k + 1 - (ceil(k / r) - 1) * (delta - 1)


def params_report2(code: LrcCode, brute_force: bool = True) -> dict:
    """Rate and distance accounting, exact values only.

    The lower bound N-m+L+1 holds for MDS inner codes whose extension
    points stay in general position; the report labels it accordingly
    rather than asserting it.
    """
    n = code.n_nodes
    N, m, L = code.inner.n, code.inner.k, code.L
    rate = code.rate()
    report = {
        "kind": code.kind,
        "q": code.field.q,
        "N": N,
        "K": m,
        "L": L,
        "pairs": len(code.pair_set),
        "n_nodes": n,
        "nominal_nodes": N + len(code.pair_set) * L,
        "rate": f"{rate.numerator}/{rate.denominator}",
        "d_lower_mds_general_position": N - m + L + 1,
        "d_upper_locality": locality_upper_bound(n, m, 2, L + 1),
    }
    if brute_force and code.field.q ** m <= enum_guard():
        report["d_bruteforce"] = brute_force_distance2(code)
    return report


def locality_witness2(code: LrcCode, node: int,
                      seed: int | None = None) -> tuple[MultiPoly, tuple[int, ...]]:
    """A weight-3 dual codeword covering the node.

    Returns a polynomial of dual degree whose full-grid evaluation is
    supported on the node's point plus two peers of its first registered
    line; all three points are evaluation-set members, so the restriction
    is a codeword of the shortened dual and certifies locality 2.
    """
    es = code.eval_set
    lines = es.node_lines.get(node)
    if not lines:
        raise NoRepairGroup(f"node {node} lies on no registered line")
    line = es.lines[lines[0]]
    peers = [n for n in line.nodes if n != node][:2]
    pts = [es.node_point(node)] + [es.node_point(p) for p in peers]
    rm = RMCode(code.field, code.inner.k, 1)
    g = min_weight_dual_codeword(rm, pts, seed=seed)
    return g, (node, *peers)
