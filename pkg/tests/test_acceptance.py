"""Acceptance gate: one test per criterion, run with -v for the
per-criterion pass/fail report.

Thresholds live in the assertions and mirror the frozen pilot values;
heavy experiment reports are shared across criteria through module
fixtures.
"""

import gc
import math
import random
import time
from collections import Counter

import numpy as np
import pytest

from conftest import K4_PAIRS, PETERSEN_PAIRS
from ksmatch.configmodel import (count_pairings, degree_sequence,
                                 pair_points, sample_no_loops)
from ksmatch.construct import unwind
from ksmatch.exactmatch import (max_matching, max_matching_bruteforce,
                                tutte_berge_deficiency)
from ksmatch.harness import exp_deficit, exp_drift, exp_hybrid, exp_scaling
from ksmatch.multigraph import MultiGraph
from ksmatch.reduce import replay, run

SEED = 20260816


def sample_graph(n, deg4_frac, seed):
    d, _ = degree_sequence(n, deg4_frac)
    s = sample_no_loops(d, np.random.default_rng(seed))
    return MultiGraph(len(d), s.pairs)


@pytest.fixture(scope="module")
def deficit_reports():
    gc.disable()
    try:
        t0 = time.perf_counter()
        r4 = exp_deficit(10_000, 100, 0.0, SEED)
        r5 = exp_deficit(100_000, 100, 0.0, SEED + 1)
        elapsed = time.perf_counter() - t0
    finally:
        gc.enable()
    return r4, r5, elapsed


@pytest.fixture(scope="module")
def hybrid_report():
    return exp_hybrid(10_000, 100, SEED + 2)


def test_criterion_1_deficiency_bound(deficit_reports):
    r4, r5, elapsed = deficit_reports
    f4 = r4.aggregates["fraction_within_bound"]
    f5 = r5.aggregates["fraction_within_bound"]
    assert f4 >= 0.90, f"n=1e4 fraction within 2log2(n): {f4}"
    assert f5 >= 0.90, f"n=1e5 fraction within 2log2(n): {f5}"
    assert elapsed < 120.0, f"both deficit batches took {elapsed:.1f}s"


def test_criterion_2_ledger_identity(deficit_reports, hybrid_report):
    r4, r5, _ = deficit_reports
    # full mode reduces to the empty graph, whose kappa term is zero
    for rep in (r4, r5):
        for t in rep.trials:
            assert t["kappa"] == t["r0"] + t["r2b"]
    for t in hybrid_report.trials:
        assert t["kappa"] == t["r0"] + t["r2b"] + t["kappa_h"]
    # per-level form on fresh traces: the running kappa at each unwinding
    # level equals the starting kappa plus the losses recorded so far
    for seed in range(10):
        g = sample_graph(300, 0.5, seed)
        g0 = g.initial_copy()
        tr = run(g, random.Random(seed))
        m, led = unwind(tr)
        assert led.kappas[-1] == tr.n0 - 2 * len(m)
        assert led.kappas[-1] == led.kappas[0] + led.r0 + led.r2b
        assert all(b - a in (0, 1)
                   for a, b in zip(led.kappas, led.kappas[1:]))
        levels = sorted({s.index for s in tr.snapshots}
                        | {1, len(tr.actions) // 2})
        for j in levels:
            state = replay(tr, g0.initial_copy(), upto=j)
            mj, ledj = unwind(tr, j=j)
            assert tr.n0 - 2 * len(mj) == ledj.r0 + ledj.r2b + state.n


def test_criterion_3_hybrid_perfect_matching(hybrid_report):
    agg = hybrid_report.aggregates
    assert agg["fraction_perfect"] >= 0.95, agg
    assert agg["lossless_failures"] == 0, agg


def test_criterion_4_oracle_gap():
    n, trials = 500, 50
    bound = 2 * math.log2(n)
    perfect = 0
    for seed in range(trials):
        g = sample_graph(n, 0.0, SEED + seed)
        nu = len(max_matching(g))
        tr = run(g, random.Random(SEED + seed))
        m, _ = unwind(tr)
        gap = nu - len(m)
        assert 0 <= gap <= bound, f"seed {seed}: gap {gap}"
        perfect += (nu == n // 2)
    assert perfect >= 0.95 * trials, f"{perfect}/{trials} had nu=n/2"


def test_criterion_5_drift():
    rep = exp_drift(100_000, 20, SEED + 4)
    agg = rep.aggregates
    assert agg["conditioned_count"] >= 500, agg["conditioned_count"]
    assert agg["conditioned_mean"] <= -0.2, agg["conditioned_mean"]
    assert agg["good_over2_total"] == 0, agg["good_over2_total"]


def test_criterion_6_exact_matcher():
    structured = [
        MultiGraph(4, K4_PAIRS),
        MultiGraph(10, PETERSEN_PAIRS),
        MultiGraph(4, [(0, 1), (0, 2), (0, 3)]),
        MultiGraph(6, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]),
        MultiGraph(2, [(0, 1)] * 3),
        MultiGraph(4, [(0, 1), (0, 1), (2, 3), (2, 3), (1, 2)]),
        MultiGraph(3, [(0, 1), (1, 2), (2, 0)]),
        MultiGraph(7, [(i, (i + 1) % 7) for i in range(7)]),
    ]
    for g in structured:
        fresh = MultiGraph(g.n, [g.original_endpoints(e)
                                 for e in g.live_edges()])
        nu = len(max_matching(g))
        assert nu == len(max_matching_bruteforce(fresh))
        assert nu == tutte_berge_deficiency(g).value
    rng = random.Random(SEED)
    nprng = np.random.default_rng(SEED)
    for _ in range(500):
        n = rng.randrange(4, 13)
        d, _ = degree_sequence(n, rng.random())
        s = sample_no_loops(d, nprng)
        g = MultiGraph(len(d), s.pairs)
        nu = len(max_matching(g))
        assert nu == len(max_matching_bruteforce(g))
        assert nu == tutte_berge_deficiency(g).value


def _pairing_count_oracle(points):
    if not points:
        return 1
    rest = points[1:]
    return sum(_pairing_count_oracle(rest[:i] + rest[i + 1:])
               for i in range(len(rest)))


def test_criterion_7_pairing_counts():
    expected = [1, 3, 15, 105, 945]
    for r in range(1, 6):
        enumerated = _pairing_count_oracle(tuple(range(2 * r)))
        assert count_pairings(r) == enumerated == expected[r - 1]


def test_criterion_8_linearity():
    rep = exp_scaling([100_000, 400_000], 20, SEED + 5)
    ratio = rep.aggregates["ratios"]["400000/100000"]
    assert ratio <= 6.0, f"median time ratio {ratio:.2f}"
    assert rep.aggregates["all_actions_le_3n"] is True


def test_criterion_9_pairing_uniformity():
    draws = 150_000
    rng = np.random.default_rng(SEED + 6)
    counts = Counter()
    for _ in range(draws):
        pairs = pair_points(6, rng)
        counts[tuple(sorted(tuple(sorted(p)) for p in pairs))] += 1
    assert len(counts) == 15
    lo, hi = 1 / 15 - 0.01, 1 / 15 + 0.01
    for key, c in counts.items():
        assert lo <= c / draws <= hi, f"{key}: {c / draws:.4f}"
