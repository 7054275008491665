"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they execute.  ``baseline_profile_spread`` is a known-red criterion: the
target equipartition band does not emerge from i.i.d. uniform data under
the default thresholds (see the test's docstring for the measurement).
"""
import itertools
import math
import time

import numpy as np

import oracles
from conftest import GDP_COUPLES, make_table
from timerank import (
    Breakpoints,
    ClassifierParams,
    GeneratorSpec,
    LevelProfile,
    NullMode,
    SaxWord,
    TimeTable,
    bin_of_rank,
    build_binned_map,
    build_scheme,
    classify,
    detect_plateaus,
    equal_frequency_breakpoints,
    generate_random_table,
    item_profile,
    mindist,
    render_map_svg,
    sax_encode,
    symbol_euclidean,
)
from timerank.cli import run

SEEDS = (1, 2, 3, 4, 5)


def _report(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[ACCEPTANCE] {name}: {status}{suffix}")
    assert ok, f"{name}{suffix}"


def test_scheme_reproduction():
    """Couples (20,1),(100,5),(191,10) give exactly the 46 published labels."""
    t0 = time.perf_counter()
    scheme = build_scheme(GDP_COUPLES)
    expected = (
        [f"top-{b}" for b in range(1, 21)]
        + [f"top-{b}" for b in range(25, 101, 5)]
        + [f"top-{b}" for b in range(110, 201, 10)]
    )
    ok = (
        list(scheme.labels) == expected
        and len(scheme.labels) == 46
        and scheme.label_of(bin_of_rank(scheme, 122)) == "top-130"
        and scheme.label_of(bin_of_rank(scheme, 20)) == "top-20"
        and scheme.label_of(bin_of_rank(scheme, 21)) == "top-25"
        and scheme.label_of(bin_of_rank(scheme, 1)) == "top-1"
    )
    elapsed = time.perf_counter() - t0
    _report("scheme-reproduction", ok and elapsed < 1.0, f"{elapsed:.3f}s")


def test_random_baseline():
    """Count of items with max value > 0.95 stays in [1880, 2130] per seed."""
    counts = []
    ok = True
    for seed in SEEDS:
        t0 = time.perf_counter()
        table = generate_random_table(GeneratorSpec(item_count=5000, time_points=10, seed=seed))
        count = sum(1 for row in table.values if max(row) > 0.95)
        elapsed = time.perf_counter() - t0
        counts.append(count)
        ok = ok and 1880 <= count <= 2130 and elapsed < 2.0
    _report("random-baseline", ok, f"counts={counts}")


def test_baseline_profile_spread():
    """Each of the four stagnation/fluttering labels takes a primary share
    in [0.10, 0.40] of classified items, per seed, under DROP_LAST_BIN
    with default parameters.

    Known red: on i.i.d. uniform data the measured shares are ~0.91
    SPIKE / ~0.09 FLUTTERING with the plateau-based labels near zero
    (levels are nearly continuous, so single-point dominance is common
    and three near-equal consecutive levels are rare).  The band is kept
    as stated rather than tuned to pass.
    """
    wanted = ("FLUTTERING", "MULTISTAGNANT", "LATE_MONOSTAGNANT", "EARLY_MONOSTAGNANT")
    scheme = build_scheme(((20, 1), (100, 5), (1000, 25), (5000, 100)))
    params = ClassifierParams().resolved(scheme)
    all_ok = True
    details = []
    for seed in SEEDS:
        t0 = time.perf_counter()
        table = generate_random_table(GeneratorSpec(item_count=5000, time_points=10, seed=seed))
        binned = build_binned_map(table, scheme, NullMode.DROP_LAST_BIN)
        classified = 0
        counts = {label: 0 for label in wanted}
        for item in binned.items:
            profile = item_profile(binned, item)
            if profile.present_count < 2:
                continue
            classified += 1
            primary = classify(profile, params).primary
            if primary is not None and primary.value in counts:
                counts[primary.value] += 1
        shares = {label: counts[label] / classified for label in wanted}
        elapsed = time.perf_counter() - t0
        seed_ok = all(0.10 <= shares[label] <= 0.40 for label in wanted) and elapsed < 30.0
        all_ok = all_ok and seed_ok
        details.append(f"seed {seed}: " + ", ".join(f"{l}={shares[l]:.3f}" for l in wanted))
    _report("baseline-profile-spread", all_ok, "; ".join(details))


def test_classifier_oracle_equivalence():
    """Matched sets and plateaus agree with the brute-force evaluator on all
    level sequences of length <= 6 over {0..4} plus 1000 random length-10
    sequences (with gaps)."""
    t0 = time.perf_counter()
    params = ClassifierParams(delta_spike=2, epsilon=0, lambda_level=2, rho=0.5, equiv_tol=1)
    ok = True
    for length in range(1, 7):
        for seq in itertools.product(range(5), repeat=length):
            got_p = [(p.start, p.end, p.level) for p in detect_plateaus(seq, 1)]
            if got_p != oracles.enumerate_plateaus(seq, 1):
                ok = False
            if length >= 2:
                got = {l.value for l in classify(LevelProfile.from_levels("x", seq), params).matched}
                want = oracles.evaluate_rules(seq, delta=2, eps=0, lam=2, rho=0.5, tol=1)
                if got != want:
                    ok = False
    rng = np.random.default_rng(123)
    checked = 0
    while checked < 1000:
        seq = [None if rng.random() < 0.15 else int(rng.integers(0, 5)) for _ in range(10)]
        if sum(1 for lv in seq if lv is not None) < 2:
            continue
        checked += 1
        got_p = [(p.start, p.end, p.level) for p in detect_plateaus(seq, 1)]
        if got_p != oracles.enumerate_plateaus(seq, 1):
            ok = False
        got = {l.value for l in classify(LevelProfile.from_levels("x", seq), params).matched}
        want = oracles.evaluate_rules(seq, delta=2, eps=0, lam=2, rho=0.5, tol=1)
        if got != want:
            ok = False
    elapsed = time.perf_counter() - t0
    _report("classifier-oracle-equivalence", ok and elapsed < 60.0, f"{elapsed:.1f}s")


def test_monotone_transform_invariance():
    """exp() applied cell-wise leaves the binned map unchanged, 100 tables."""
    rng = np.random.default_rng(7)
    ok = True
    for _ in range(100):
        n_items = int(rng.integers(2, 25))
        n_points = int(rng.integers(2, 7))
        holes = {
            (int(rng.integers(0, n_items)), int(rng.integers(0, n_points)))
            for _ in range(int(rng.integers(0, 4)))
        }
        table = make_table(n_items, n_points, seed=int(rng.integers(0, 10_000)), absent=holes)
        transformed = TimeTable(
            items=table.items,
            time_points=table.time_points,
            values=tuple(
                tuple(None if v is None else math.exp(v) for v in row) for row in table.values
            ),
        )
        scheme = build_scheme(((max(2, n_items // 2), 1), (n_items + 2, 2)))
        for mode in (NullMode.KEEP_NULLS, NullMode.DROP_LAST_BIN):
            a = build_binned_map(table, scheme, mode)
            b = build_binned_map(transformed, scheme, mode)
            if a.cells != b.cells:
                ok = False
    _report("monotone-transform-invariance", ok)


def test_bin_of_rank_oracle():
    """bin_of_rank equals the linear first-boundary scan on the GDP scheme
    (ranks 1..200) and on 50 random schemes."""
    ok = True
    gdp = build_scheme(GDP_COUPLES)
    for rank in range(1, 201):
        if bin_of_rank(gdp, rank) != oracles.first_boundary_at_or_after(gdp.boundaries, rank):
            ok = False
    rng = np.random.default_rng(99)
    for _ in range(50):
        uppers = sorted(set(int(u) for u in rng.integers(1, 400, size=int(rng.integers(1, 4)))))
        couples = tuple((u, int(rng.integers(1, 20))) for u in uppers)
        scheme = build_scheme(couples)
        for rank in range(1, scheme.last_boundary + 1):
            if bin_of_rank(scheme, rank) != oracles.first_boundary_at_or_after(
                scheme.boundaries, rank
            ):
                ok = False
    _report("bin-of-rank-oracle", ok)


def test_sax_lower_bounding():
    """mindist never exceeds the true Euclidean distance on random pairs;
    the worked GDP country words give the published relations."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    ok = True
    for _ in range(200):
        n = int(rng.integers(4, 17))  # pooled 2n values must allow 8 distinct cuts
        a = rng.normal(size=n) * float(rng.uniform(0.5, 20))
        b = rng.normal(size=n) * float(rng.uniform(0.5, 20))
        bp = equal_frequency_breakpoints(np.concatenate([a, b]), 8)
        if mindist(sax_encode(a, bp), sax_encode(b, bp), bp) > oracles.euclidean(a, b) + 1e-9:
            ok = False

    cuts = Breakpoints(betas=(312.0, 603.0, 1420.0, 2307.0, 4573.0, 9006.0, 24382.0))
    ireland = SaxWord(symbols=(2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1))
    uk = SaxWord(symbols=(1,) * 15)
    norway = SaxWord(symbols=(1,) * 15)
    ok = ok and mindist(ireland, uk, cuts) == 0.0
    ok = ok and symbol_euclidean(ireland, uk) == 2.0
    ok = ok and uk == norway
    ok = ok and mindist(uk, norway, cuts) == 0.0 and symbol_euclidean(uk, norway) == 0.0
    elapsed = time.perf_counter() - t0
    _report("sax-lower-bounding", ok and elapsed < 10.0, f"{elapsed:.1f}s")


def test_rendering_contract():
    """46-bin x 16-column map with a highlight present in 15 columns yields
    exactly 15 highlighted boxes, oldest column leftmost, 30x5 px boxes,
    byte-identical across runs."""
    scheme = build_scheme(GDP_COUPLES)
    table = make_table(191, 16, seed=6, absent={(0, 7)})
    binned = build_binned_map(table, scheme)
    svg = render_map_svg(binned, highlight="it0000")
    ok = svg.count('fill="black"') == 15
    ok = ok and 'width="30" height="5"' in svg
    ok = ok and svg == render_map_svg(binned, highlight="it0000")
    # oldest-left: highlighted boxes appear at strictly increasing x, one per
    # present column, skipping the absent column's x slot
    xs = []
    for line in svg.splitlines():
        if 'fill="black"' in line:
            xs.append(int(line.split('x="')[1].split('"')[0]))
    expected_xs = [2 + t * 32 for t in range(16) if t != 7]
    ok = ok and xs == expected_xs
    _report("rendering-contract", ok, f"highlighted={len(xs)}")


def test_cli_end_to_end(tmp_path):
    """gen | map --highlight | classify on the 5000x10 baseline in < 60 s,
    with a histogram that sums to 5000."""
    t0 = time.perf_counter()
    table_csv = str(tmp_path / "base.csv")
    map_csv = str(tmp_path / "base_map.csv")
    map_svg = str(tmp_path / "base_map.svg")
    labels_csv = str(tmp_path / "labels.csv")
    hist_csv = str(tmp_path / "hist.csv")
    couples = "(20,1),(100,5),(1000,25),(5000,100)"

    ok = run(["gen", "--items", "5000", "--timepoints", "10", "--seed", "11", "--out", table_csv]) == 0
    ok = ok and run([
        "map", "--in", table_csv, "--couples", couples, "--null-mode", "drop-last",
        "--highlight", "item-0001", "--out", map_csv, "--svg", map_svg,
    ]) == 0
    ok = ok and run(["classify", "--in", map_csv, "--out", labels_csv]) == 0
    ok = ok and run([
        "hist", "--in", table_csv, "--couples", couples, "--null-mode", "drop-last",
        "--out", hist_csv,
    ]) == 0

    hist_lines = open(hist_csv).read().strip().splitlines()[1:]
    total = sum(int(line.split(",")[1]) for line in hist_lines)
    ok = ok and total == 5000
    label_lines = open(labels_csv).read().strip().splitlines()
    ok = ok and len(label_lines) == 5001
    svg_text = open(map_svg).read()
    ok = ok and svg_text.count('fill="black"') >= 1
    elapsed = time.perf_counter() - t0
    _report("cli-end-to-end", ok and elapsed < 60.0, f"{elapsed:.1f}s, histogram total {total}")
