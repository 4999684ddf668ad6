"""The acceptance suite: one callable per criterion, exact checks only.

Each criterion function returns a one-line detail string and raises
AssertionError on failure; ``run_all`` prints a PASS/FAIL line per
criterion.  The same functions back tests/test_acceptance.py, so the CLI
gate and pytest cannot drift apart.  Stated runtime caps are asserted.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

from .errors import DecodingFailure
from .evalset import PairSet
from .gf import PrimeField
from .inner import make_explicit_code
from .lrc2 import (
    brute_force_distance2,
    encode2,
    locality_upper_bound,
    params_report2,
    repair2,
)
from .lrc3 import (
    encode3,
    locality_witness3,
    monomial_index,
    repair3,
    decode_global3,
    used_sumset_nodes,
    _spanning_pairs,
)
from .mpoly import MultiPoly
from .presets import micro3, toy2, toy2_systematic, toy3
from .rm import (
    RMCode,
    all_lines,
    all_points,
    brute_force_min_distance,
    enum_guard,
    enumerate_min_weight_words,
    min_weight_dual_codeword,
    rm_dimension,
    rm_dual_code,
    rm_encode,
    rm_min_distance,
    support_is_collinear,
)


def _grid():
    for q in (3, 5):
        for m in (1, 2):
            for u in range(1, min(q - 2, 2) + 1):
                yield q, m, u


def criterion_01_distance_formula() -> str:
    """Brute-force minimum weight equals the closed-form distance on the
    whole desk-scale grid; under one minute."""
    t0 = time.time()
    checked = []
    for q, m, u in _grid():
        code = RMCode(PrimeField(q), m, u)
        formula = rm_min_distance(code)
        brute = brute_force_min_distance(code)
        assert brute == formula, f"q={q} m={m} u={u}: brute {brute} != {formula}"
        checked.append(f"({q},{m},{u})->{formula}")
    elapsed = time.time() - t0
    assert elapsed < 60, f"took {elapsed:.1f}s, budget 60s"
    return f"{len(checked)} codes in {elapsed:.2f}s: {', '.join(checked)}"


def criterion_02_collinear_supports() -> str:
    """Both directions of the collinear-support property at q=3, m=2, u=1:
    enumerated minimum-weight dual codewords all have collinear 3-point
    support, and every 3 points of every line support a constructed one."""
    t0 = time.time()
    field = PrimeField(3)
    primal = RMCode(field, 2, 1)
    dual = rm_dual_code(primal)
    words = enumerate_min_weight_words(dual)
    assert words, "no minimum-weight words found"
    d = rm_min_distance(dual)
    assert d == 3, f"dual distance {d} != 3"
    for w in words:
        assert len(w.support) == 3
        assert support_is_collinear(field, w.support), w.support
    lines = all_lines(field, 2)
    assert len(lines) == 12, f"expected 12 lines, got {len(lines)}"
    built = 0
    pts_order = all_points(field, 2)
    for line in lines:
        for subset in itertools.combinations(line, 3):
            g = min_weight_dual_codeword(primal, subset)
            word = rm_encode(dual, g)
            support = {p for p, v in zip(pts_order, word) if v}
            assert support == set(subset), (subset, support)
            built += 1
    elapsed = time.time() - t0
    assert elapsed < 1.0, f"took {elapsed:.2f}s, budget 1s"
    return (f"{len(words)} enumerated words collinear; {built} constructed "
            f"witnesses exact in {elapsed:.2f}s")


def criterion_03_dual_distance() -> str:
    """Dual-code distance equals u+2 on the grid, by formula and, where the
    dual dimension is enumerable, by brute force too."""
    lines = []
    for q, m, u in _grid():
        code = RMCode(PrimeField(q), m, u)
        dual = rm_dual_code(code)
        d = rm_min_distance(dual)
        assert d == u + 2, f"q={q} m={m} u={u}: dual d={d} != {u + 2}"
        note = f"({q},{m},{u})->{d}"
        if q ** rm_dimension(dual) <= enum_guard():
            brute = brute_force_min_distance(dual)
            assert brute == d, f"dual brute {brute} != formula {d}"
            note += "*"
        lines.append(note)
    return "formula (and * brute force) agree: " + ", ".join(lines)


def criterion_04_toy2_golden() -> str:
    """Golden locality-2 instance: pinned codeword, exhaustive 2-contact
    repair over all messages, nodes, and survivor pairs, and distance at
    least N-m+L+1; under ten seconds."""
    t0 = time.time()
    code = toy2()
    assert encode2(code, (2, 3)).symbols == (2, 3, 0, 3, 4, 0, 1, 4)
    q = code.field.q
    repairs = 0
    for msg in itertools.product(range(q), repeat=code.K):
        cw = encode2(code, msg)
        for node in range(1, code.n_nodes + 1):
            for li in code.eval_set.node_lines[node]:
                line = code.eval_set.lines[li]
                peers = [n for n in line.nodes if n != node]
                for pair in itertools.combinations(peers, 2):
                    available = {n: cw.symbol(n) for n in pair}
                    res = repair2(code, node, available)
                    assert res.value == cw.symbol(node), (msg, node, pair)
                    assert set(res.contacts) == set(pair)
                    repairs += 1
    d = brute_force_distance2(code)
    bound = code.inner.n - code.inner.k + code.L + 1
    assert d >= bound, f"d={d} < {bound}"
    elapsed = time.time() - t0
    assert elapsed < 10, f"took {elapsed:.1f}s, budget 10s"
    return f"{repairs} exhaustive repairs exact; d={d} >= {bound}; {elapsed:.2f}s"


def criterion_05_systematic_optimality() -> str:
    """Systematic configuration meets the locality Singleton bound exactly:
    brute-force distance equals both bounds."""
    code = toy2_systematic()
    d = brute_force_distance2(code)
    lower = code.inner.n - code.inner.k + code.L + 1
    upper = locality_upper_bound(code.n_nodes, code.K, 2, code.L + 1)
    assert d == lower == upper, f"d={d}, lower={lower}, upper={upper}"
    msg = (2, 3)
    cw = encode2(code, msg)
    assert cw.symbols[: code.K] == msg, "systematic prefix broken"
    return f"d = lower = upper = {d}; systematic prefix intact"


def criterion_06_rate_accounting() -> str:
    """Node counts and rates are exact: chain pairing is collision-free at
    N + (N/2)L nodes; all-pairs matches an independent dedup oracle."""
    code = toy2()
    N, L = code.inner.n, code.L
    expected = N + (N // 2) * L
    assert code.n_nodes == expected, f"{code.n_nodes} != {expected}"
    assert code.rate() == Fraction(code.K, expected)
    report = params_report2(code)
    assert report["rate"] == "1/4"

    inner = make_explicit_code(5, [(1, 0), (0, 1), (1, 1), (1, 2)])
    from .lrc2 import build_lrc2

    ap = build_lrc2(inner, PairSet.all_pairs(4), L=1)
    # independent set-based oracle for the dedup count
    q = 5
    pts = {tuple(r) for r in inner.rows}
    for i, j in itertools.combinations(range(4), 2):
        ai, aj = inner.rows[i], inner.rows[j]
        d = tuple((y - x) % q for x, y in zip(ai, aj))
        for t in range(2, 3):
            pts.add(tuple((x + t * dd) % q for x, dd in zip(ai, d)))
    assert ap.n_nodes == len(pts), f"{ap.n_nodes} != oracle {len(pts)}"
    cap = 4 + 6 * 1
    assert ap.n_nodes <= cap
    return (f"chain: {code.n_nodes} = N+(N/2)L, rate 1/4; "
            f"all-pairs: {ap.n_nodes} = dedup oracle <= {cap}")


def criterion_07_derivative_decoder() -> str:
    """Derivative-interpolation decoding on the locality-3 instance:
    1000/1000 error-free round trips, and with one injected symbol error
    the outcome matches the per-decode radius predicate exactly.  The
    affine decodes run on the rank-(m+1) extension whose own brute-forced
    distance is 2, so their radius is 0: success happens exactly when the
    error misses every consumed view.  The epsilon-based tolerance is
    reported, not asserted; under two minutes."""
    t0 = time.time()
    code = toy3()
    q = code.field.q
    size = code.sum_set.size
    rng = random.Random(20240811)
    for trial in range(1000):
        msg = tuple(rng.randrange(q) for _ in range(code.K))
        word = list(encode3(code, msg).symbols[:size])
        res = decode_global3(code, word)
        assert res.message == msg, f"clean round trip {trial} failed"

    aff = code.inner.affine()
    radius = (aff.profile.d_min - 1) // 2
    consumed = used_sumset_nodes(code)
    hits = misses = 0
    for trial in range(200):
        msg = tuple(rng.randrange(q) for _ in range(code.K))
        word = list(encode3(code, msg).symbols[:size])
        pos = rng.randrange(size)
        word[pos] = (word[pos] + rng.randrange(1, q)) % q
        # per-decode error counts: each consumed view sees the error iff it
        # contains the corrupted node; predicate: all counts <= radius
        errors_seen = 1 if (pos + 1) in consumed else 0
        predicate = errors_seen <= radius
        try:
            res = decode_global3(code, word)
            success = res.message == msg
        except DecodingFailure:
            success = None
        if predicate:
            assert success is True, f"trial {trial}: predicate held, decode failed"
            misses += 1
        else:
            assert success is None, (
                f"trial {trial}: corrupted decode returned instead of raising"
            )
            hits += 1
    eps = code.inner.profile.epsilon
    tol = Fraction(eps * eps, 18) * size
    elapsed = time.time() - t0
    assert elapsed < 120, f"took {elapsed:.1f}s, budget 120s"
    return (f"1000/1000 clean; 200 single-error trials: {misses} outside views "
            f"all recovered, {hits} inside views all detected "
            f"(affine d_min={aff.profile.d_min}, radius {radius}); "
            f"epsilon tolerance {tol} (<1 symbol, reported only); {elapsed:.1f}s")


def criterion_08_locality3_repair() -> str:
    """Every locality-3 node repairs from exactly 3 contacts (sampled); a
    weight-4 dual witness exists for every node and is orthogonal to
    random codewords."""
    code = toy3()
    q = code.field.q
    rng = random.Random(7)
    for _ in range(200):
        msg = [rng.randrange(q) for _ in range(code.K)]
        cw = encode3(code, msg)
        node = rng.randrange(1, code.n_nodes + 1)
        line = code.eval_set.lines[rng.choice(code.eval_set.node_lines[node])]
        peers = [n for n in line.nodes if n != node]
        triple = rng.sample(peers, 3)
        res = repair3(code, node, {n: cw.symbol(n) for n in triple})
        assert res.value == cw.symbol(node)
        assert len(res.contacts) == 3 and set(res.contacts) == set(triple)

    es = code.eval_set
    checked = 0
    for node in range(1, code.n_nodes + 1):
        g, support = locality_witness3(code, node)
        vals = {n: int(g.evaluate(es.node_point(n))) for n in support}
        assert all(vals.values()), f"witness for node {node} vanishes on support"
        for other in range(1, code.n_nodes + 1):
            if other not in support:
                assert int(g.evaluate(es.node_point(other))) == 0
        for _ in range(10):
            b = [rng.randrange(q) for _ in range(code.K)]
            cw = encode3(code, b)
            dot = sum(vals[n] * cw.symbol(n) for n in support) % q
            assert dot == 0, f"witness for node {node} not orthogonal"
        checked += 1
    return f"200 sampled repairs exact with 3 contacts; {checked} weight-4 witnesses"


def criterion_09_difference_identity() -> str:
    """For random degree-<=2 polynomials over F_5^2, the shift difference
    f(x+a) - f(x+b) minus the directional derivative of the quadratic part
    along a-b is constant in x; checked symbolically and by evaluation."""
    field = PrimeField(5)
    rng = random.Random(99)
    monos = monomial_index(2)
    pts = all_points(field, 2)
    combos = 0
    for _ in range(100):
        f = MultiPoly(field, 2, {mo: rng.randrange(5) for mo in monos})
        f2 = f.homogeneous_component(2)
        last = None
        for _ in range(100):
            a = (rng.randrange(5), rng.randrange(5))
            b = (rng.randrange(5), rng.randrange(5))
            diff = tuple((x - y) % 5 for x, y in zip(a, b))
            last = f.translate(a) - f.translate(b) - f2.directional_derivative(diff)
            assert last.total_degree() <= 0, (f.render(), a, b)
            combos += 1
        # evaluation-route spot check, exhaustive in x, for one (a,b) per f
        vals = {int(last.evaluate(p)) for p in pts}
        assert len(vals) == 1
    assert combos == 10_000
    return f"{combos} (f,a,b) combinations constant in x"


def criterion_10_cooperative_whole_line() -> str:
    """Killing an entire toy-2 line (base plus all L+1 other points) still
    costs only 2 contacts to recover, via the minimal-read global path."""
    from .sim import auto_repair, inject_failures, place

    code = toy2()
    cw = encode2(code, (2, 3))
    line = code.eval_set.lines[0]
    cluster = place(code, cw)
    inject_failures(cluster, nodes=list(line.nodes))
    stats = auto_repair(cluster)
    assert not stats.unrecoverable
    for n in line.nodes:
        assert cluster.symbols[n] == cw.symbol(n)
    contacts = stats.total_contacts
    assert contacts == 2, f"line recovery used {contacts} contacts, want 2"
    return (f"line {list(line.nodes)} fully restored with {contacts} contacts "
            f"({[e.kind for e in stats.events]})")


def _replay_ladder(code, history) -> None:
    """Assert no global event fired while some line was actionable."""
    r = code.locality
    alive = set(range(1, code.n_nodes + 1))
    for ev in history:
        if ev.kind == "fail":
            alive -= set(ev.nodes)
            continue
        if ev.kind == "global":
            for line in code.eval_set.lines:
                dead_on = [n for n in line.nodes if n not in alive]
                survivors = [n for n in line.nodes if n in alive]
                assert not (dead_on and len(survivors) >= r), (
                    f"global ran while line {line.nodes} was repairable"
                )
        if ev.kind in ("local2", "local3", "cooperative", "global"):
            alive |= set(ev.nodes)


def criterion_11_simulator_determinism() -> str:
    """Fifty randomized scenarios: identical seeds give identical event
    logs, and the strategy ladder never reaches for global decoding while
    any line repair is possible."""
    from .sim import auto_repair, inject_failures, place

    def run(code, cw, count, seed):
        cluster = place(code, cw)
        inject_failures(cluster, count=count, seed=seed)
        auto_repair(cluster)
        return cluster

    scenarios = []
    t2 = toy2()
    cw2 = encode2(t2, (2, 3))
    for seed in range(40):
        scenarios.append((t2, cw2, 1 + seed % 5, seed))
    t3 = toy3()
    cw3 = encode3(t3, list(range(15)))
    for seed in range(10):
        scenarios.append((t3, cw3, 1 + seed % 6, seed))

    globals_seen = 0
    for code, cw, count, seed in scenarios:
        c1 = run(code, cw, count, seed)
        c2 = run(code, cw, count, seed)
        log1 = [e.as_dict() for e in c1.history]
        log2 = [e.as_dict() for e in c2.history]
        assert log1 == log2, f"seed {seed}: logs differ"
        _replay_ladder(code, c1.history)
        globals_seen += sum(1 for e in c1.history if e.kind == "global")
    return (f"{len(scenarios)} scenarios deterministic; ladder respected "
            f"({globals_seen} global events, none premature)")


CRITERIA = [
    ("01", "rm-distance-formula", criterion_01_distance_formula),
    ("02", "min-weight-collinear-supports", criterion_02_collinear_supports),
    ("03", "dual-distance-identity", criterion_03_dual_distance),
    ("04", "toy2-golden-instance", criterion_04_toy2_golden),
    ("05", "systematic-optimality", criterion_05_systematic_optimality),
    ("06", "rate-accounting", criterion_06_rate_accounting),
    ("07", "derivative-decoder-roundtrip", criterion_07_derivative_decoder),
    ("08", "locality3-repair-witness", criterion_08_locality3_repair),
    ("09", "shift-difference-identity", criterion_09_difference_identity),
    ("10", "cooperative-whole-line", criterion_10_cooperative_whole_line),
    ("11", "simulator-determinism-ladder", criterion_11_simulator_determinism),
]


def run_all(select: str | None = None, out=print) -> tuple[int, int]:
    """Run criteria (all, or a comma-separated id subset); returns
    (passed, total) and prints one line per criterion."""
    wanted = set(select.split(",")) if select else None
    passed = total = 0
    for cid, name, fn in CRITERIA:
        if wanted and cid not in wanted and name not in wanted:
            continue
        total += 1
        t0 = time.time()
        try:
            detail = fn()
            passed += 1
            out(f"PASS {cid} {name} ({time.time() - t0:.2f}s): {detail}")
        except AssertionError as exc:
            out(f"FAIL {cid} {name} ({time.time() - t0:.2f}s): {exc}")
        except Exception as exc:  # construction crash = criterion failure
            out(f"FAIL {cid} {name} ({time.time() - t0:.2f}s): {type(exc).__name__}: {exc}")
    return passed, total
