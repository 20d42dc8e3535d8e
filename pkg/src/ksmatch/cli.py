"""Command-line entry point.

Subcommands: generate (sample a graph to a file), run (reduce and unwind
one graph in full or hybrid mode), experiment (seeded batches with JSON,
CSV, and figure output), verify (check a matching file against a graph
file).  Exit codes: 0 success, 2 validation failure, 3 anomaly.
"""

import argparse
import csv
import json
import random
import sys
from collections import Counter

import numpy as np

from .configmodel import degree_sequence, sample_no_loops
from .construct import (MatchingError, read_matching, resolve_to_original,
                        unwind, write_matching)
from .exactmatch import max_matching
from .harness import (default_omega, exp_deficit, exp_drift, exp_hybrid,
                      exp_scaling)
from .multigraph import MultiGraph
from .reduce import SnapshotWindow, TraceIntegrityError, run

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_ANOMALY = 3


def write_graph(path, n, pairs):
    with open(path, "w") as fh:
        fh.write(f"# ksmatch graph n={n}\n")
        for a, b in pairs:
            fh.write(f"{a} {b}\n")


def read_graph(path):
    n = None
    pairs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if tok.startswith("n="):
                        n = int(tok[2:])
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'u v'")
            pairs.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError(f"{path}: missing 'n=' header")
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"{path}: endpoint outside 0..{n - 1}")
    return n, pairs


def _cmd_generate(args):
    d, adjusted = degree_sequence(args.n, args.deg4_frac)
    s = sample_no_loops(d, np.random.default_rng(args.seed))
    write_graph(args.out, len(d), s.pairs)
    note = " (parity-adjusted)" if adjusted else ""
    print(f"wrote {args.out}: n={len(d)} e={len(s.pairs)} "
          f"retries={s.retries}{note}")
    return EXIT_OK


def _cmd_run(args):
    n, pairs = read_graph(args.infile)
    g = MultiGraph(n, pairs)
    rng = random.Random(args.seed)
    anomalous = False
    if args.mode == "full":
        if args.omega is not None:
            raise ValueError("--omega only applies to hybrid mode")
        trace = run(g, rng)
        m, ledger = unwind(trace)
        extra = ""
    else:
        omega = args.omega if args.omega is not None else default_omega(n)
        trace = run(g, rng, stop=SnapshotWindow(omega=omega))
        mh = max_matching(g)
        live = len(g.live_vertices())
        m, ledger = unwind(trace, mj=mh)
        anomalous = trace.stop_reason == "window-anomaly"
        extra = f" snapshot_order={live} nu_h={len(mh)}"
    out_pairs = resolve_to_original(m, g)
    kappa = trace.n0 - 2 * len(out_pairs)
    if args.matching_out:
        write_matching(args.matching_out, out_pairs, kappa,
                       ledger.r0, ledger.r2b)
    print(f"kappa={kappa} r0={ledger.r0} r2b={ledger.r2b} "
          f"m={len(out_pairs)} actions={len(trace.actions)} "
          f"stop={trace.stop_reason}{extra}")
    return EXIT_ANOMALY if anomalous else EXIT_OK


def _write_trials_csv(path, trials):
    scalar = [k for k, v in trials[0].items()
              if not isinstance(v, (dict, list))]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(scalar)
        for t in trials:
            w.writerow([t[k] for k in scalar])


def _write_histogram_counts_csv(path, histogram):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["type", "count"])
        for key in sorted(histogram):
            w.writerow([key, histogram[key]])


def _cmd_experiment(args):
    if args.kind == "scaling":
        if not args.sizes:
            raise ValueError("scaling needs --sizes")
        report = exp_scaling(args.sizes, args.trials, args.seed)
    else:
        if args.n is None:
            raise ValueError(f"{args.kind} needs --n")
        if args.kind == "deficit":
            frac = args.deg4_frac if args.deg4_frac is not None else 0.0
            report = exp_deficit(args.n, args.trials, frac, args.seed)
        elif args.kind == "hybrid":
            report = exp_hybrid(args.n, args.trials, args.seed,
                                omega=args.omega)
        else:
            frac = args.deg4_frac if args.deg4_frac is not None else 0.5
            report = exp_drift(args.n, args.trials, args.seed,
                               deg4_frac=frac)
    if args.json:
        report.write_json(args.json)
    if args.csv:
        if not report.trials:
            raise ValueError("no trials to export")
        if args.kind == "drift":
            _write_histogram_counts_csv(
                args.csv, report.aggregates["type_histogram"])
        else:
            _write_trials_csv(args.csv, report.trials)
    if args.figures:
        from .figures import render
        for p in render(report.to_dict(), args.figures):
            print(f"figure: {p}")
    print(json.dumps(report.aggregates))
    if args.kind == "hybrid" and report.aggregates["anomalies"]:
        return EXIT_ANOMALY
    return EXIT_OK


def _cmd_verify(args):
    n, pairs = read_graph(args.infile)
    m_pairs, meta = read_matching(args.matching)
    bag = Counter((a, b) if a <= b else (b, a) for a, b in pairs)
    seen = set()
    for a, b in m_pairs:
        key = (a, b) if a <= b else (b, a)
        if bag[key] <= 0:
            print(f"invalid: {a}-{b} is not an unused graph edge")
            return EXIT_INVALID
        bag[key] -= 1
        if a in seen or b in seen or a == b:
            print(f"invalid: vertex reuse at {a}-{b}")
            return EXIT_INVALID
        seen.update((a, b))
    kappa = n - 2 * len(m_pairs)
    if "kappa" in meta and meta["kappa"] != kappa:
        print(f"invalid: header kappa={meta['kappa']}, "
              f"recomputed {kappa}")
        return EXIT_INVALID
    print(f"ok: matching of size {len(m_pairs)}, kappa={kappa}")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="ks1",
        description="Greedy reduction matching pipeline for multigraphs "
                    "with degrees in {3,4}.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a graph to a file")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--deg4-frac", type=float, default=0.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_generate)

    r = sub.add_parser("run", help="reduce and unwind one graph")
    r.add_argument("--in", dest="infile", required=True)
    r.add_argument("--mode", choices=("full", "hybrid"), default="full")
    r.add_argument("--omega", type=int, default=None)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--matching-out", default=None)
    r.set_defaults(func=_cmd_run)

    e = sub.add_parser("experiment", help="run a seeded experiment batch")
    e.add_argument("kind", choices=("deficit", "hybrid", "scaling",
                                    "drift"))
    e.add_argument("--n", type=int, default=None)
    e.add_argument("--trials", type=int, default=10)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--deg4-frac", type=float, default=None)
    e.add_argument("--omega", type=int, default=None)
    e.add_argument("--sizes", type=int, nargs="+", default=None)
    e.add_argument("--json", default=None)
    e.add_argument("--csv", default=None)
    e.add_argument("--figures", default=None,
                   help="directory for rendered PNG figures")
    e.set_defaults(func=_cmd_experiment)

    v = sub.add_parser("verify", help="check a matching file")
    v.add_argument("--in", dest="infile", required=True)
    v.add_argument("--matching", required=True)
    v.set_defaults(func=_cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, MatchingError,
            TraceIntegrityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
