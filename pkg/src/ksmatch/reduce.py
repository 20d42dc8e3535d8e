"""REDUCE engine: degree-priority greedy reduction with a replayable trace.

Priority order per step: remove a degree-0 vertex, else remove a degree-1
vertex with its neighbor, else contract a degree-2 vertex with its
neighbors, else remove a random edge at a random maximum-degree vertex.
If that removal leaves an endpoint of degree 2 joined to a single other
vertex by a parallel pair, the auto-correction contraction of the three
vertices involved is performed as part of the same action.

`run` is the fast path: it manipulates MultiGraph internals directly and
must perform bucket updates in exactly the order the public MultiGraph
operations do, because `replay` re-executes traces through those public
operations and the two must agree bit for bit. `step` is the public
single-action form, drawing from the rng in the same order as `run`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

from ksmatch.multigraph import MultiGraph


class TraceIntegrityError(Exception):
    """A trace does not match the graph it is being replayed against."""


# ----------------------------------------------------------------------
# actions

@dataclass(slots=True)
class Vertex0Removal:
    v: int


@dataclass(slots=True)
class Vertex1Removal:
    v: int
    w: int
    matched_edge: int
    other_removed: list


@dataclass(slots=True)
class Contraction:
    """Contraction of a degree-2 center with its neighbor set.

    `members` is (center, a, b) for distinct neighbors, (center, a) when
    both center edges go to the same vertex (the bad case). The first one
    or two entries of `internal_purged` are the center's own edges, in
    incidence order; each entry is (edge, endpoint, endpoint) as the edge
    stood when purged. `external_map` lists (edge, pre-contraction
    endpoint) for every surviving re-endpointed edge. `degrees` are the
    member degrees at action time, in member order.
    """

    center: int
    members: tuple
    new_vertex: int
    internal_purged: list
    external_map: list
    degrees: tuple
    is_bad: bool


@dataclass(slots=True)
class MaxEdgeRemoval:
    edge: int
    endpoints: tuple  # (chosen max-degree vertex, other endpoint)


@dataclass(slots=True)
class AutoCorrectionContraction:
    """Max-edge removal whose aftermath forces contracting {u, v, w}.

    u is the trigger vertex (degree 2 after the removal, joined to w by a
    parallel pair), v the removed edge's other endpoint, w the pair
    neighbor. `double_edge` holds the parallel pair in incidence order;
    `internal_purged` holds any further internal edges (v-w edges) as
    (edge, endpoint, endpoint) triples; `external_map` as in Contraction.
    The trigger vertex contributes no external edges.
    """

    u: int
    v: int
    w: int
    new_vertex: int
    removed_edge: int
    double_edge: tuple
    internal_purged: list
    external_map: list


Action = Union[Vertex0Removal, Vertex1Removal, Contraction,
               MaxEdgeRemoval, AutoCorrectionContraction]


class Snapshot(NamedTuple):
    """State summary at a min-degree >= 3 boundary (or the empty graph)."""

    index: int  # number of actions applied before this state
    n: int
    e: int
    ex4: int


# ----------------------------------------------------------------------
# stop rules

@dataclass(frozen=True)
class RunToEmpty:
    pass


@dataclass(frozen=True)
class SnapshotWindow:
    """Stop at the first snapshot with ex4 = 0 and n <= 2*omega.

    Safety floor: a snapshot with n < omega and ex4 > 0 stops the run
    immediately with the anomaly flag set; that snapshot is the stop
    state (it is the latest one with n <= 2*omega).
    """

    omega: int

    def __post_init__(self):
        if self.omega < 1:
            raise ValueError("omega must be >= 1")


StopRule = Union[RunToEmpty, SnapshotWindow]


@dataclass
class ReduceTrace:
    """Replayable action log plus snapshot boundaries and stop bookkeeping.

    stop_level is the number of actions in the prefix that leads to the
    stop state; it equals len(actions) except that an anomalous windowed
    run is pinned to its stop snapshot. stop_snapshot indexes into
    `snapshots`.
    """

    actions: list
    snapshots: list
    stop_reason: str  # "empty" | "snapshot-found" | "window-anomaly"
    stop_level: int
    stop_snapshot: Optional[int]
    n0: int
    e0: int
    ex4_0: int = 0
    anomaly: bool = False


# ----------------------------------------------------------------------
# shared helpers (public-operation based; used by step and replay)

def _capture(g: MultiGraph, members) -> tuple[list, list]:
    """Classify member-incident edges before a contraction.

    Returns (internal, external): internal as (edge, endpoint, endpoint)
    triples in first-encounter order, external as (edge, member) pairs.
    """
    mset = set(members)
    internal = []
    seen = set()
    external = []
    for m in members:
        for e in g.incident_edges(m):
            o = g.other_endpoint(e, m)
            if o in mset:
                if e not in seen:
                    seen.add(e)
                    internal.append((e, m, o))
            else:
                external.append((e, m))
    return internal, external


def _find_trigger(g: MultiGraph, u: int, v: int):
    """Auto-correction trigger after removing edge {u, v}; chosen side first.

    Returns (trigger, other, pair_neighbor) or None. A parallel pair back
    to the other removed-edge endpoint does not trigger (that case is a
    plain bad contraction on a later step).
    """
    for p, q in ((u, v), (v, u)):
        if g.degree(p) == 2:
            e1, e2 = g.incident_edges(p)
            w = g.other_endpoint(e1, p)
            if w == g.other_endpoint(e2, p) and w != q:
                return p, q, w
    return None


def step(g: MultiGraph, rng) -> Action:
    """Apply exactly one priority-ordered action via public operations."""
    if g.n == 0:
        raise ValueError("cannot step an empty graph")
    if g.bucket_size(0):
        v = g.pick_uniform(0, rng)
        g.remove_vertex(v)
        return Vertex0Removal(v)
    if g.bucket_size(1):
        v = g.pick_uniform(1, rng)
        e = g.incident_edges(v)[0]
        w = g.other_endpoint(e, v)
        g.remove_vertex(v)
        others = g.remove_vertex(w)
        return Vertex1Removal(v, w, e, others)
    if g.bucket_size(2):
        v = g.pick_uniform(2, rng)
        e1, e2 = g.incident_edges(v)
        a = g.other_endpoint(e1, v)
        b = g.other_endpoint(e2, v)
        members = (v, a) if a == b else (v, a, b)
        degrees = tuple(g.degree(m) for m in members)
        internal, external = _capture(g, members)
        vc, purged = g.contract(members)
        assert [t[0] for t in internal] == purged
        return Contraction(center=v, members=members, new_vertex=vc,
                           internal_purged=internal, external_map=external,
                           degrees=degrees, is_bad=len(members) == 2)
    u = g.pick_uniform("max", rng)
    e = g.pick_incident_edge(u, rng)
    v = g.other_endpoint(e, u)
    g.remove_edge(e)
    trig = _find_trigger(g, u, v)
    if trig is None:
        return MaxEdgeRemoval(edge=e, endpoints=(u, v))
    p, q, w = trig
    internal, external = _capture(g, (p, q, w))
    vc, purged = g.contract((p, q, w))
    assert [t[0] for t in internal] == purged
    assert all(m != p for _, m in external)
    return AutoCorrectionContraction(
        u=p, v=q, w=w, new_vertex=vc, removed_edge=e,
        double_edge=(internal[0][0], internal[1][0]),
        internal_purged=internal[2:], external_map=external)


# ----------------------------------------------------------------------
# the engine

def run(g: MultiGraph, rng, stop: StopRule = None,
        excess_check_every: int = 0) -> ReduceTrace:
    """Reduce g in place, returning the trace.

    Under RunToEmpty the graph is emptied. Under SnapshotWindow the run
    halts at the first qualifying snapshot (or at the safety floor with
    the anomaly flag); the live graph is then exactly the stop state.
    With excess_check_every = k > 0, every k-th snapshot's incremental
    ex4 is checked against a from-scratch recount.
    """
    if stop is None:
        stop = RunToEmpty()
    windowed = isinstance(stop, SnapshotWindow)
    omega = stop.omega if windowed else 0

    inc = g._inc
    ends = g._ends
    pos = g._pos
    buckets = g._buckets
    rnd = rng.random
    b0 = buckets.setdefault(0, [])
    b1 = buckets.setdefault(1, [])
    b2 = buckets.setdefault(2, [])
    n_live = g.n
    e_live = g.e
    ex4 = g.ex4
    maxd = g._max_deg
    nxt = g._next_vertex
    n_start, e_start, ex4_start = g.n, g.e, g.ex4

    actions = []
    snapshots = []
    append = actions.append
    reason = None
    stop_level = None
    stop_snap = None

    def do_contract(members):
        # mirror of MultiGraph.contract, also capturing endpoint triples
        nonlocal nxt, ex4, maxd
        internal = []
        seen = set()
        external = []
        for m in members:
            for f in inc[m]:
                fa = ends[2 * f]
                o = ends[2 * f + 1] if fa == m else fa
                if o in members:
                    if f not in seen:
                        seen.add(f)
                        internal.append((f, m, o))
                else:
                    external.append((f, m))
        for m in members:
            il = inc[m]
            d = len(il)
            b = buckets[d]
            i = pos[m]
            last = b[-1]
            b[i] = last
            pos[last] = i
            b.pop()
            if d > 4:
                ex4 -= d - 4
            inc[m] = None
        vc = nxt
        nxt += 1
        newinc = []
        for f, m in external:
            if ends[2 * f] == m:
                ends[2 * f] = vc
            else:
                ends[2 * f + 1] = vc
            newinc.append(f)
        inc.append(newinc)
        pos.append(0)
        d = len(newinc)
        b = buckets.get(d)
        if b is None:
            b = buckets[d] = []
        pos[vc] = len(b)
        b.append(vc)
        if d > 4:
            ex4 += d - 4
        if d > maxd:
            maxd = d
        return vc, internal, external

    while n_live:
        if b0:
            v = b0[int(rnd() * len(b0))]
            i = pos[v]
            last = b0[-1]
            b0[i] = last
            pos[last] = i
            b0.pop()
            inc[v] = None
            n_live -= 1
            append(Vertex0Removal(v))
        elif b1:
            v = b1[int(rnd() * len(b1))]
            e = inc[v][0]
            a = ends[2 * e]
            w = ends[2 * e + 1] if a == v else a
            # remove_vertex(v): w loses the matched edge
            ilw = inc[w]
            ilw.remove(e)
            dw = len(ilw)
            b = buckets[dw + 1]
            i = pos[w]
            last = b[-1]
            b[i] = last
            pos[last] = i
            b.pop()
            nb = buckets.get(dw)
            if nb is None:
                nb = buckets[dw] = []
            pos[w] = len(nb)
            nb.append(w)
            if dw >= 4:
                ex4 -= 1
            i = pos[v]
            last = b1[-1]
            b1[i] = last
            pos[last] = i
            b1.pop()
            inc[v] = None
            # remove_vertex(w): every remaining incident edge dies
            others = list(ilw)
            for f in others:
                fa = ends[2 * f]
                x = ends[2 * f + 1] if fa == w else fa
                il = inc[x]
                il.remove(f)
                d = len(il)
                b = buckets[d + 1]
                i = pos[x]
                last = b[-1]
                b[i] = last
                pos[last] = i
                b.pop()
                nb = buckets.get(d)
                if nb is None:
                    nb = buckets[d] = []
                pos[x] = len(nb)
                nb.append(x)
                if d >= 4:
                    ex4 -= 1
            b = buckets[dw]
            i = pos[w]
            last = b[-1]
            b[i] = last
            pos[last] = i
            b.pop()
            inc[w] = None
            n_live -= 2
            e_live -= 1 + len(others)
            append(Vertex1Removal(v, w, e, others))
        elif b2:
            v = b2[int(rnd() * len(b2))]
            ilv = inc[v]
            e1 = ilv[0]
            e2 = ilv[1]
            fa = ends[2 * e1]
            a = ends[2 * e1 + 1] if fa == v else fa
            fa = ends[2 * e2]
            b_ = ends[2 * e2 + 1] if fa == v else fa
            members = (v, a) if a == b_ else (v, a, b_)
            degrees = tuple(len(inc[m]) for m in members)
            vc, internal, external = do_contract(members)
            n_live -= len(members) - 1
            e_live -= len(internal)
            append(Contraction(center=v, members=members, new_vertex=vc,
                               internal_purged=internal,
                               external_map=external, degrees=degrees,
                               is_bad=len(members) == 2))
        else:
            snapshots.append(Snapshot(len(actions), n_live, e_live, ex4))
            if excess_check_every and \
                    len(snapshots) % excess_check_every == 0:
                fresh = sum(len(il) - 4 for il in inc
                            if il is not None and len(il) > 4)
                assert ex4 == fresh, (ex4, fresh)
            if windowed:
                if ex4 == 0 and n_live <= 2 * omega:
                    reason = "snapshot-found"
                    break
                if n_live < omega:
                    reason = "window-anomaly"
                    break
            # max-edge removal
            while not buckets.get(maxd):
                maxd -= 1
            bm = buckets[maxd]
            u = bm[int(rnd() * len(bm))]
            ilu = inc[u]
            e = ilu[int(rnd() * len(ilu))]
            ea = ends[2 * e]
            eb = ends[2 * e + 1]
            v = eb if ea == u else ea
            for x in (ea, eb):
                il = inc[x]
                il.remove(e)
                d = len(il)
                b = buckets[d + 1]
                i = pos[x]
                last = b[-1]
                b[i] = last
                pos[last] = i
                b.pop()
                nb = buckets.get(d)
                if nb is None:
                    nb = buckets[d] = []
                pos[x] = len(nb)
                nb.append(x)
                if d >= 4:
                    ex4 -= 1
            e_live -= 1
            # auto-correction trigger, chosen endpoint first
            trig = None
            for p, q in ((u, v), (v, u)):
                ilp = inc[p]
                if len(ilp) == 2:
                    f1 = ilp[0]
                    fa = ends[2 * f1]
                    w = ends[2 * f1 + 1] if fa == p else fa
                    f2 = ilp[1]
                    fa = ends[2 * f2]
                    if w == (ends[2 * f2 + 1] if fa == p else fa) and w != q:
                        trig = (p, q, w)
                        break
            if trig is None:
                append(MaxEdgeRemoval(edge=e, endpoints=(u, v)))
            else:
                p, q, w = trig
                vc, internal, external = do_contract((p, q, w))
                n_live -= 2
                e_live -= len(internal)
                append(AutoCorrectionContraction(
                    u=p, v=q, w=w, new_vertex=vc, removed_edge=e,
                    double_edge=(internal[0][0], internal[1][0]),
                    internal_purged=internal[2:], external_map=external))

    if reason is None:
        snapshots.append(Snapshot(len(actions), 0, 0, 0))
        reason = "snapshot-found" if windowed else "empty"
    stop_level = len(actions)
    stop_snap = len(snapshots) - 1

    assert len(actions) <= n_start + e_start
    g.n = n_live
    g.e = e_live
    g.ex4 = ex4
    g._max_deg = maxd if n_live else 0
    g._next_vertex = nxt
    return ReduceTrace(actions=actions, snapshots=snapshots,
                       stop_reason=reason, stop_level=stop_level,
                       stop_snapshot=stop_snap, n0=n_start, e0=e_start,
                       ex4_0=ex4_start,
                       anomaly=reason == "window-anomaly")


# ----------------------------------------------------------------------
# replay

def _boundary(g: MultiGraph) -> bool:
    return g.n == 0 or (g.bucket_size(0) == 0 and g.bucket_size(1) == 0
                        and g.bucket_size(2) == 0)


def _fail(msg, *data):
    raise TraceIntegrityError(msg + (f": {data}" if data else ""))


def replay(trace: ReduceTrace, g0: MultiGraph, upto: int = None) -> MultiGraph:
    """Re-apply a trace prefix to a fresh copy of the original graph.

    Verifies, step by step, that every recorded action is legal from the
    current state: priority class, random-choice class membership,
    auto-correction trigger conditions, recorded degrees, purged and
    re-endpointed edge sets, and snapshot boundary records. Raises
    TraceIntegrityError on any mismatch. Returns the mutated graph.
    """
    g = g0
    if (g.n, g.e, g.ex4) != (trace.n0, trace.e0, trace.ex4_0):
        _fail("initial graph mismatch", (g.n, g.e, g.ex4),
              (trace.n0, trace.e0, trace.ex4_0))
    count = len(trace.actions) if upto is None else upto
    if not 0 <= count <= len(trace.actions):
        _fail("replay level out of range", upto)
    snaps = trace.snapshots
    si = 0
    for idx in range(count + 1):
        boundary = _boundary(g)
        have = si < len(snaps) and snaps[si].index == idx
        if boundary != have:
            if not (idx == count and upto is not None and not boundary):
                _fail("snapshot boundary mismatch at action", idx)
        if boundary:
            rec = snaps[si]
            si += 1
            if (rec.n, rec.e) != (g.n, g.e) or rec.ex4 != g.ex4:
                _fail("snapshot record mismatch", rec, (g.n, g.e, g.ex4))
        if idx == count:
            break
        act = trace.actions[idx]
        lowest = 0 if g.bucket_size(0) else 1 if g.bucket_size(1) \
            else 2 if g.bucket_size(2) else 3
        if isinstance(act, Vertex0Removal):
            if lowest != 0 or g.degree(act.v) != 0:
                _fail("vertex-0 removal out of order", idx)
            g.remove_vertex(act.v)
        elif isinstance(act, Vertex1Removal):
            if lowest != 1 or g.degree(act.v) != 1:
                _fail("vertex-1 removal out of order", idx)
            e = g.incident_edges(act.v)[0]
            if e != act.matched_edge or g.other_endpoint(e, act.v) != act.w:
                _fail("vertex-1 removal record mismatch", idx)
            g.remove_vertex(act.v)
            others = g.remove_vertex(act.w)
            if others != act.other_removed:
                _fail("vertex-1 removed-edge mismatch", idx)
        elif isinstance(act, Contraction):
            if lowest != 2 or g.degree(act.center) != 2:
                _fail("contraction out of order", idx)
            e1, e2 = g.incident_edges(act.center)
            a = g.other_endpoint(e1, act.center)
            b = g.other_endpoint(e2, act.center)
            members = (act.center, a) if a == b else (act.center, a, b)
            if members != act.members or act.is_bad != (len(members) == 2):
                _fail("contraction member mismatch", idx)
            if act.degrees != tuple(g.degree(m) for m in members):
                _fail("contraction degree mismatch", idx)
            internal, external = _capture(g, members)
            if internal != act.internal_purged or external != act.external_map:
                _fail("contraction capture mismatch", idx)
            vc, _ = g.contract(members)
            if vc != act.new_vertex:
                _fail("contraction vertex id mismatch", idx)
        elif isinstance(act, MaxEdgeRemoval):
            u, v = act.endpoints
            if lowest != 3 or g.degree(u) != g.max_degree():
                _fail("max-edge removal out of order", idx)
            if set(g.endpoints(act.edge)) != {u, v}:
                _fail("max-edge endpoint mismatch", idx)
            g.remove_edge(act.edge)
            if _find_trigger(g, u, v) is not None:
                _fail("auto-correction should have fired", idx)
        elif isinstance(act, AutoCorrectionContraction):
            if lowest != 3:
                _fail("auto-correction out of order", idx)
            if set(g.endpoints(act.removed_edge)) != {act.u, act.v}:
                _fail("auto-correction removed-edge mismatch", idx)
            if g.degree(g.other_endpoint(act.removed_edge, act.v)) \
                    != g.max_degree() and g.degree(act.v) != g.max_degree():
                _fail("auto-correction chose a non-maximum vertex", idx)
            g.remove_edge(act.removed_edge)
            if g.degree(act.u) != 2:
                _fail("auto-correction trigger vertex not degree 2", idx)
            f1, f2 = g.incident_edges(act.u)
            if g.other_endpoint(f1, act.u) != act.w \
                    or g.other_endpoint(f2, act.u) != act.w or act.w == act.v:
                _fail("auto-correction parallel-pair mismatch", idx)
            internal, external = _capture(g, (act.u, act.v, act.w))
            if (internal[0][0], internal[1][0]) != act.double_edge \
                    or internal[2:] != act.internal_purged \
                    or external != act.external_map:
                _fail("auto-correction capture mismatch", idx)
            if any(m == act.u for _, m in external):
                _fail("auto-correction trigger vertex has external edge", idx)
            vc, _ = g.contract((act.u, act.v, act.w))
            if vc != act.new_vertex:
                _fail("auto-correction vertex id mismatch", idx)
        else:
            _fail("unknown action type", type(act).__name__)
    return g


# ----------------------------------------------------------------------
# trace serialization (debugging aid)

def _ilist(items) -> str:
    return ",".join(str(x) for x in items) if items else "-"

def _itriples(items) -> str:
    return ",".join(f"{a}:{b}:{c}" for a, b, c in items) if items else "-"

def _ipairs(items) -> str:
    return ",".join(f"{a}:{b}" for a, b in items) if items else "-"


def _plist(tok):
    return [] if tok == "-" else [int(x) for x in tok.split(",")]

def _ptriples(tok):
    if tok == "-":
        return []
    return [tuple(int(x) for x in t.split(":")) for t in tok.split(",")]

def _ppairs(tok):
    if tok == "-":
        return []
    return [tuple(int(x) for x in t.split(":")) for t in tok.split(",")]


def write_trace(trace: ReduceTrace, fh) -> None:
    """One record per line; field order is stable."""
    close = False
    if isinstance(fh, (str, bytes)) or hasattr(fh, "__fspath__"):
        fh = open(fh, "w")
        close = True
    try:
        fh.write(f"H {trace.n0} {trace.e0} {trace.ex4_0}\n")
        for act in trace.actions:
            if isinstance(act, Vertex0Removal):
                fh.write(f"A V0 {act.v}\n")
            elif isinstance(act, Vertex1Removal):
                fh.write(f"A V1 {act.v} {act.w} {act.matched_edge} "
                         f"{_ilist(act.other_removed)}\n")
            elif isinstance(act, Contraction):
                fh.write(f"A CT {act.center} {act.new_vertex} "
                         f"{int(act.is_bad)} {_ilist(act.members)} "
                         f"{_ilist(act.degrees)} "
                         f"{_itriples(act.internal_purged)} "
                         f"{_ipairs(act.external_map)}\n")
            elif isinstance(act, MaxEdgeRemoval):
                u, v = act.endpoints
                fh.write(f"A ME {act.edge} {u} {v}\n")
            else:
                fh.write(f"A AC {act.u} {act.v} {act.w} {act.new_vertex} "
                         f"{act.removed_edge} {_ilist(act.double_edge)} "
                         f"{_itriples(act.internal_purged)} "
                         f"{_ipairs(act.external_map)}\n")
        for s in trace.snapshots:
            fh.write(f"S {s.index} {s.n} {s.e} {s.ex4}\n")
        snap = "-" if trace.stop_snapshot is None else trace.stop_snapshot
        fh.write(f"X {trace.stop_reason} {trace.stop_level} {snap}\n")
    finally:
        if close:
            fh.close()


def read_trace(fh) -> ReduceTrace:
    close = False
    if isinstance(fh, (str, bytes)) or hasattr(fh, "__fspath__"):
        fh = open(fh)
        close = True
    try:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    finally:
        if close:
            fh.close()
    head = lines[0].split()
    if head[0] != "H" or len(head) != 4:
        raise ValueError("trace must start with an H record")
    n0, e0, ex4_0 = int(head[1]), int(head[2]), int(head[3])
    actions = []
    snapshots = []
    stop = None
    for ln in lines[1:]:
        toks = ln.split()
        if toks[0] == "A":
            kind = toks[1]
            if kind == "V0":
                actions.append(Vertex0Removal(int(toks[2])))
            elif kind == "V1":
                actions.append(Vertex1Removal(
                    int(toks[2]), int(toks[3]), int(toks[4]),
                    _plist(toks[5])))
            elif kind == "CT":
                members = tuple(_plist(toks[5]))
                actions.append(Contraction(
                    center=int(toks[2]), new_vertex=int(toks[3]),
                    is_bad=bool(int(toks[4])), members=members,
                    degrees=tuple(_plist(toks[6])),
                    internal_purged=_ptriples(toks[7]),
                    external_map=_ppairs(toks[8])))
            elif kind == "ME":
                actions.append(MaxEdgeRemoval(
                    edge=int(toks[2]),
                    endpoints=(int(toks[3]), int(toks[4]))))
            elif kind == "AC":
                actions.append(AutoCorrectionContraction(
                    u=int(toks[2]), v=int(toks[3]), w=int(toks[4]),
                    new_vertex=int(toks[5]), removed_edge=int(toks[6]),
                    double_edge=tuple(_plist(toks[7])),
                    internal_purged=_ptriples(toks[8]),
                    external_map=_ppairs(toks[9])))
            else:
                raise ValueError(f"unknown action kind {kind}")
        elif toks[0] == "S":
            snapshots.append(Snapshot(int(toks[1]), int(toks[2]),
                                      int(toks[3]), int(toks[4])))
        elif toks[0] == "X":
            stop = toks
        else:
            raise ValueError(f"unknown record {toks[0]}")
    if stop is None:
        raise ValueError("trace has no X record")
    snap = None if stop[3] == "-" else int(stop[3])
    return ReduceTrace(actions=actions, snapshots=snapshots,
                       stop_reason=stop[1], stop_level=int(stop[2]),
                       stop_snapshot=snap, n0=n0, e0=e0, ex4_0=ex4_0,
                       anomaly=stop[1] == "window-anomaly")
