"""Excess accounting, hyperaction segmentation and classification, drift.

A hyperaction is the slice of actions between two consecutive recorded
snapshots: it opens with the max-edge removal (possibly absorbed into an
auto-correction) applied to the first snapshot state and carries the
cleanup cascade that follows. Classification is structural pattern
matching on the slice; good shapes are tagged 1, 2, 3a, 3b, 4, 5, 33
and 34, while 3c and everything off-template is bad.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional

from ksmatch.multigraph import MultiGraph
from ksmatch.reduce import (
    AutoCorrectionContraction,
    Contraction,
    MaxEdgeRemoval,
    ReduceTrace,
    TraceIntegrityError,
)

GOOD_TYPES = frozenset(("1", "2", "3a", "3b", "4", "5", "33", "34"))

ALL_TYPES = ("1", "2", "3a", "3b", "3c", "4", "5", "33", "34", "other-bad")


@dataclass
class HyperactionRecord:
    """One snapshot-to-snapshot action group.

    start/end index into the trace's snapshot list; a preamble record
    (cleanup of a start state with minimum degree below 3) has start
    None and covers everything before the first snapshot.
    """

    kind: str  # "hyperaction" | "preamble"
    start: Optional[int]
    end: int
    actions: list
    dex4: int
    dn: int
    de: int
    type: Optional[str] = None


@dataclass
class DriftStats:
    """Snapshot excess series and the conditional one-step drift."""

    series: list
    conditioned_count: int
    conditioned_mean: Optional[float]
    max_abs_dex4: int


def excess(g: MultiGraph, threshold: int) -> int:
    """Sum of degree overshoots above the threshold, from scratch."""
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    total = 0
    for v in g.live_vertices():
        d = g.degree(v)
        if d > threshold:
            total += d - threshold
    return total


def segment(trace: ReduceTrace) -> list:
    """Split a trace into snapshot-aligned hyperaction records."""
    snaps = trace.snapshots
    acts = trace.actions
    if not snaps:
        raise TraceIntegrityError("trace has no snapshots")
    if snaps[-1].index != len(acts):
        raise TraceIntegrityError("actions extend past the last snapshot")
    records = []
    first = snaps[0]
    if first.index > 0:
        chunk = acts[:first.index]
        if any(isinstance(a, (MaxEdgeRemoval, AutoCorrectionContraction))
               for a in chunk):
            raise TraceIntegrityError("max-edge removal in the preamble")
        records.append(HyperactionRecord(
            kind="preamble", start=None, end=0, actions=chunk,
            dex4=first.ex4 - trace.ex4_0, dn=first.n - trace.n0,
            de=first.e - trace.e0))
    for i in range(len(snaps) - 1):
        lo, hi = snaps[i], snaps[i + 1]
        chunk = acts[lo.index:hi.index]
        if not chunk:
            raise TraceIntegrityError("empty hyperaction slice")
        if not isinstance(chunk[0], (MaxEdgeRemoval,
                                     AutoCorrectionContraction)):
            raise TraceIntegrityError(
                f"hyperaction at snapshot {i} lacks a max-edge removal")
        if any(isinstance(a, (MaxEdgeRemoval, AutoCorrectionContraction))
               for a in chunk[1:]):
            raise TraceIntegrityError(
                f"second max-edge removal inside hyperaction {i}")
        records.append(HyperactionRecord(
            kind="hyperaction", start=i, end=i + 1, actions=chunk,
            dex4=hi.ex4 - lo.ex4, dn=hi.n - lo.n, de=hi.e - lo.e))
    return records


def classify(rec: HyperactionRecord,
             pre_state: MultiGraph = None) -> str:
    """Type tag for one hyperaction record.

    The tag is a function of the action shapes alone; pre_state, when
    given, only cross-checks that the slice opens from the recorded
    snapshot.
    """
    if rec.kind != "hyperaction":
        raise ValueError("only hyperaction records are classified")
    if pre_state is not None and rec.actions:
        head = rec.actions[0]
        e = head.removed_edge if isinstance(
            head, AutoCorrectionContraction) else head.edge
        if not pre_state.is_live_edge(e):
            raise TraceIntegrityError("pre-state does not hold the "
                                      "removed edge")
    head, tail = rec.actions[0], rec.actions[1:]
    if isinstance(head, AutoCorrectionContraction):
        return "2" if not tail else "other-bad"
    if any(not isinstance(a, Contraction) or a.is_bad for a in tail):
        return "other-bad"
    if len(tail) == 0:
        return "1"
    # eta counts the contracted triple's extra internal edges beyond the
    # center's two, recovered from recorded degrees: the new vertex has
    # degree d(a) + d(b) - 2 - 2*eta and its degree is the external count
    etas = []
    for ct in tail:
        eta, rem = divmod(
            ct.degrees[1] + ct.degrees[2] - 2 - len(ct.external_map), 2)
        if rem or eta < 0:
            return "other-bad"
        etas.append(eta)
    if len(tail) == 1:
        return "3a" if etas[0] == 0 else "3b" if etas[0] == 1 else "3c"
    if any(eta >= 2 for eta in etas):
        return "other-bad"
    if len(tail) == 2:
        c1, c2 = tail
        if c2.members[0] == c1.new_vertex:
            return "4"
        if c1.new_vertex in c2.members[1:]:
            return "5"
        return "33"
    if len(tail) == 3:
        return "34"
    return "other-bad"


def classify_trace(trace: ReduceTrace) -> list:
    """Segment and tag every hyperaction; returns the tagged records."""
    records = segment(trace)
    for rec in records:
        if rec.kind == "hyperaction":
            rec.type = classify(rec)
    return records


def drift(trace: ReduceTrace) -> DriftStats:
    """Snapshot ex4 series and drift conditioned on positive excess."""
    series = [s.ex4 for s in trace.snapshots]
    deltas = [b - a for a, b in zip(series, series[1:])]
    conditioned = [d for a, d in zip(series, deltas) if a > 0]
    mean = sum(conditioned) / len(conditioned) if conditioned else None
    peak = max((abs(d) for d in deltas), default=0)
    return DriftStats(series=series, conditioned_count=len(conditioned),
                      conditioned_mean=mean, max_abs_dex4=peak)


def write_histogram_csv(fh, records) -> None:
    """Type histogram: one row per tag with count and mean deltas."""
    close = False
    if isinstance(fh, (str, bytes)) or hasattr(fh, "__fspath__"):
        fh = open(fh, "w", newline="")
        close = True
    try:
        writer = csv.writer(fh)
        writer.writerow(["type", "count", "mean_dex4", "mean_dn"])
        for tag in ALL_TYPES:
            group = [r for r in records if r.type == tag]
            if not group:
                writer.writerow([tag, 0, "", ""])
                continue
            writer.writerow([
                tag, len(group),
                f"{sum(r.dex4 for r in group) / len(group):.6f}",
                f"{sum(r.dn for r in group) / len(group):.6f}",
            ])
    finally:
        if close:
            fh.close()
