"""Seeded experiment driver.

Each experiment samples graphs, runs the reduction pipeline, revalidates
every matching against the original edge list, and returns a versioned
report whose aggregates are recomputable from the per-trial records.
"""

import gc
import json
import math
import random
import statistics
import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .analysis import GOOD_TYPES, classify_trace, drift
from .configmodel import degree_sequence, sample_no_loops
from .construct import resolve_to_original, unwind
from .exactmatch import max_matching
from .multigraph import MultiGraph
from .reduce import SnapshotWindow, run

SCHEMA_VERSION = 1


def default_omega(n):
    """Snapshot window for hybrid mode: ceil(n^(2/3))."""
    if n < 1:
        raise ValueError("n must be positive")
    return max(1, math.ceil(n ** (2.0 / 3.0)))


@dataclass
class ExperimentReport:
    experiment: str
    params: dict
    trials: list
    aggregates: dict
    package_version: str = __version__
    schema: int = SCHEMA_VERSION

    def to_dict(self):
        return {
            "schema": self.schema,
            "experiment": self.experiment,
            "package_version": self.package_version,
            "params": self.params,
            "trials": self.trials,
            "aggregates": self.aggregates,
        }

    def write_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def _trial_rngs(master_seed, count):
    """Independent per-trial streams split from one master seed: a numpy
    generator for sampling and a stdlib generator for reduction picks."""
    out = []
    for child in np.random.SeedSequence(master_seed).spawn(count):
        samp, dec = child.spawn(2)
        out.append((list(child.spawn_key),
                    np.random.default_rng(samp),
                    random.Random(int(dec.generate_state(1, np.uint64)[0]))))
    return out


def _revalidate(g, matching):
    """Resolve to original endpoints; raises MatchingError if any edge id
    is unknown or two edges share a vertex."""
    pairs = resolve_to_original(matching, g)
    return len(pairs)


def _quantiles(values):
    if not values:
        return None
    s = sorted(values)
    return {
        "min": s[0],
        "median": statistics.median(s),
        "p90": s[min(len(s) - 1, int(round(0.9 * (len(s) - 1))))],
        "max": s[-1],
    }


def exp_deficit(n, trials, deg4_frac, rng_seed):
    """Full-mode deficiency: reduce to empty, unwind from nothing, report
    how often the uncovered count stays within 2*log2(n)."""
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    degree_sequence(n, deg4_frac)
    bound = 2 * math.log2(n)
    records = []
    for i, (key, gen, dec) in enumerate(_trial_rngs(rng_seed, trials)):
        t0 = time.perf_counter()
        d, _ = degree_sequence(n, deg4_frac)
        s = sample_no_loops(d, gen)
        g = MultiGraph(len(d), s.pairs)
        t1 = time.perf_counter()
        tr = run(g, dec)
        t2 = time.perf_counter()
        m, ledger = unwind(tr)
        t3 = time.perf_counter()
        size = _revalidate(g, m)
        kappa = tr.n0 - 2 * size
        records.append({
            "trial": i,
            "spawn_key": key,
            "n": tr.n0,
            "kappa": kappa,
            "r0": ledger.r0,
            "r2b": ledger.r2b,
            "m_size": size,
            "actions": len(tr.actions),
            "stop_reason": tr.stop_reason,
            "within_bound": kappa <= bound,
            "phases": {"sample": t1 - t0, "reduce": t2 - t1,
                       "unwind": t3 - t2},
        })
    hits = sum(r["within_bound"] for r in records)
    aggregates = {
        "count": trials,
        "bound": bound,
        "fraction_within_bound": hits / trials if trials else None,
        "kappa": _quantiles([r["kappa"] for r in records]),
    }
    return ExperimentReport(
        experiment="deficit",
        params={"n": n, "trials": trials, "deg4_frac": deg4_frac,
                "rng_seed": rng_seed, "bound": bound},
        trials=records, aggregates=aggregates)


def exp_hybrid(n, trials, rng_seed, omega=None):
    """Hybrid mode on cubic graphs: reduce until a snapshot with zero
    excess lands in the window, match it exactly, then unwind."""
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    if n % 2:
        raise ValueError("cubic degree sum needs even n")
    omega = default_omega(n) if omega is None else omega
    records = []
    for i, (key, gen, dec) in enumerate(_trial_rngs(rng_seed, trials)):
        t0 = time.perf_counter()
        d, _ = degree_sequence(n, 0.0)
        s = sample_no_loops(d, gen)
        g = MultiGraph(len(d), s.pairs)
        t1 = time.perf_counter()
        tr = run(g, dec, stop=SnapshotWindow(omega=omega))
        t2 = time.perf_counter()
        mh = max_matching(g)
        live = len(g.live_vertices())
        kappa_h = live - 2 * len(mh)
        t3 = time.perf_counter()
        m, ledger = unwind(tr, mj=mh)
        t4 = time.perf_counter()
        size = _revalidate(g, m)
        kappa = tr.n0 - 2 * size
        anomalous = tr.stop_reason == "window-anomaly"
        records.append({
            "trial": i,
            "spawn_key": key,
            "n": tr.n0,
            "stop_reason": tr.stop_reason,
            "snapshot_order": live,
            "nu_h": len(mh),
            "kappa_h": kappa_h,
            "kappa": kappa,
            "r0": ledger.r0,
            "r2b": ledger.r2b,
            "m_size": size,
            "perfect": kappa == n % 2,
            "lossless_unwind": None if anomalous else
                               (ledger.r0 == 0 and ledger.r2b == 0
                                and kappa == kappa_h),
            "phases": {"sample": t1 - t0, "reduce": t2 - t1,
                       "exact": t3 - t2, "unwind": t4 - t3},
        })
    perfect = sum(r["perfect"] for r in records)
    anomalies = sum(r["stop_reason"] == "window-anomaly" for r in records)
    lossless_failures = sum(r["lossless_unwind"] is False for r in records)
    aggregates = {
        "count": trials,
        "omega": omega,
        "fraction_perfect": perfect / trials if trials else None,
        "anomalies": anomalies,
        "lossless_failures": lossless_failures,
    }
    return ExperimentReport(
        experiment="hybrid",
        params={"n": n, "trials": trials, "rng_seed": rng_seed,
                "omega": omega},
        trials=records, aggregates=aggregates)


def exp_scaling(sizes, trials, rng_seed):
    """Wall-clock of the reduce+unwind core per size, with the action
    counter as a machine-independent linearity witness."""
    sizes = list(sizes)
    if not sizes:
        raise ValueError("need at least one size")
    if sorted(sizes) != sizes:
        raise ValueError("sizes must be ascending")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    streams = _trial_rngs(rng_seed, len(sizes) * trials)
    records = []
    for si, n in enumerate(sizes):
        for t in range(trials):
            key, gen, dec = streams[si * trials + t]
            d, _ = degree_sequence(n, 0.0)
            s = sample_no_loops(d, gen)
            g = MultiGraph(len(d), s.pairs)
            gc.disable()
            try:
                t0 = time.perf_counter()
                tr = run(g, dec)
                m, _ = unwind(tr)
                t1 = time.perf_counter()
            finally:
                gc.enable()
            size = _revalidate(g, m)
            records.append({
                "trial": t,
                "spawn_key": key,
                "n": n,
                "seconds": t1 - t0,
                "actions": len(tr.actions),
                "actions_le_3n": len(tr.actions) <= 3 * n,
                "kappa": tr.n0 - 2 * size,
            })
    medians = {}
    for n in sizes:
        times = [r["seconds"] for r in records if r["n"] == n]
        medians[str(n)] = statistics.median(times) if times else None
    ratios = {}
    for lo, hi in zip(sizes, sizes[1:]):
        if trials and medians[str(lo)]:
            ratios[f"{hi}/{lo}"] = medians[str(hi)] / medians[str(lo)]
    aggregates = {
        "count": len(records),
        "median_seconds": medians,
        "ratios": ratios,
        "all_actions_le_3n": all(r["actions_le_3n"] for r in records),
    }
    return ExperimentReport(
        experiment="scaling",
        params={"sizes": sizes, "trials": trials, "rng_seed": rng_seed},
        trials=records, aggregates=aggregates)


def exp_drift(n, trials, rng_seed, deg4_frac=0.5):
    """Excess drift over snapshot states plus the hyperaction-type
    histogram, pooled across trials."""
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    degree_sequence(n, deg4_frac)
    records = []
    for i, (key, gen, dec) in enumerate(_trial_rngs(rng_seed, trials)):
        d, _ = degree_sequence(n, deg4_frac)
        s = sample_no_loops(d, gen)
        g = MultiGraph(len(d), s.pairs)
        tr = run(g, dec)
        st = drift(tr)
        cond_sum = 0
        cond_count = 0
        for a, b in zip(st.series, st.series[1:]):
            if a > 0:
                cond_sum += b - a
                cond_count += 1
        type_counts = Counter()
        good_over2 = 0
        max_abs_good = 0
        for rec in classify_trace(tr):
            if rec.kind != "hyperaction":
                continue
            type_counts[rec.type] += 1
            if rec.type in GOOD_TYPES:
                max_abs_good = max(max_abs_good, abs(rec.dex4))
                if abs(rec.dex4) > 2:
                    good_over2 += 1
        records.append({
            "trial": i,
            "spawn_key": key,
            "n": tr.n0,
            "ex4_start": tr.ex4_0,
            "snapshots": len(tr.snapshots),
            "conditioned_count": cond_count,
            "conditioned_sum": cond_sum,
            "type_counts": dict(type_counts),
            "good_over2": good_over2,
            "max_abs_dex4_good": max_abs_good,
        })
    pooled_count = sum(r["conditioned_count"] for r in records)
    pooled_sum = sum(r["conditioned_sum"] for r in records)
    histogram = Counter()
    for r in records:
        histogram.update(r["type_counts"])
    aggregates = {
        "count": trials,
        "conditioned_count": pooled_count,
        "conditioned_mean": pooled_sum / pooled_count if pooled_count
                            else None,
        "good_over2_total": sum(r["good_over2"] for r in records),
        "max_abs_dex4_good": max((r["max_abs_dex4_good"] for r in records),
                                 default=0),
        "type_histogram": dict(histogram),
    }
    return ExperimentReport(
        experiment="drift",
        params={"n": n, "trials": trials, "deg4_frac": deg4_frac,
                "rng_seed": rng_seed},
        trials=records, aggregates=aggregates)
