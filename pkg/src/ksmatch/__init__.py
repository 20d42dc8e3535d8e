"""Greedy reduction matching pipeline for multigraphs with degrees in {3,4}."""

__version__ = "0.1.0"

from ksmatch.analysis import classify_trace, drift, excess, segment
from ksmatch.configmodel import (count_pairings, degree_sequence,
                                 sample_no_loops)
from ksmatch.construct import Matching, kappa, resolve_to_original, unwind
from ksmatch.exactmatch import max_matching, tutte_berge_deficiency
from ksmatch.harness import (ExperimentReport, default_omega, exp_deficit,
                             exp_drift, exp_hybrid, exp_scaling)
from ksmatch.multigraph import MultiGraph
from ksmatch.reduce import ReduceTrace, RunToEmpty, SnapshotWindow, replay, run

__all__ = [
    "ExperimentReport",
    "Matching",
    "MultiGraph",
    "ReduceTrace",
    "RunToEmpty",
    "SnapshotWindow",
    "__version__",
    "classify_trace",
    "count_pairings",
    "default_omega",
    "degree_sequence",
    "drift",
    "excess",
    "exp_deficit",
    "exp_drift",
    "exp_hybrid",
    "exp_scaling",
    "kappa",
    "max_matching",
    "replay",
    "resolve_to_original",
    "run",
    "sample_no_loops",
    "segment",
    "tutte_berge_deficiency",
    "unwind",
]
