"""CONSTRUCT unwinding: turn a reduction trace back into a matching of G0.

Walks the action log backwards from a level-j matching, maintaining the
uncovered-vertex count and the deficiency counters R0 (vertex-0 removals)
and R2b (bad contractions). The accounting identity

    kappa(level i, M_i) = R0(i..j) + R2b(i..j) + kappa(level j, M_j)

is asserted after every single unwinding step.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from ksmatch.multigraph import MultiGraph
from ksmatch.reduce import (
    AutoCorrectionContraction,
    Contraction,
    MaxEdgeRemoval,
    ReduceTrace,
    Vertex0Removal,
    Vertex1Removal,
)


class MatchingError(Exception):
    """A matching is inconsistent with the state it claims to cover."""


@dataclass
class Matching:
    """Edge-id matching over a stated graph state.

    `covered` maps each matched vertex to its covering edge id; it is
    maintained alongside `edges` and always has exactly twice as many
    entries.
    """

    edges: list
    covered: dict

    @classmethod
    def empty(cls) -> "Matching":
        return cls([], {})

    @classmethod
    def from_edges(cls, g: MultiGraph, edge_ids) -> "Matching":
        """Build from live edge ids of g, checking disjointness."""
        m = cls([], {})
        for e in edge_ids:
            u, v = g.endpoints(e)
            if u in m.covered or v in m.covered:
                raise MatchingError(f"edge {e} shares an endpoint")
            m.edges.append(e)
            m.covered[u] = e
            m.covered[v] = e
        return m

    def __len__(self) -> int:
        return len(self.edges)


@dataclass
class DeficiencyLedger:
    """Loss bookkeeping for one unwinding pass.

    kappas[i] is the uncovered count after unwinding i actions, so
    kappas[0] belongs to the starting level and kappas[-1] to G0.
    """

    r0: int
    r2b: int
    kappas: list


def kappa(state: MultiGraph, m: Matching) -> int:
    """Uncovered-vertex count; validates m against the state first."""
    if len(m.covered) != 2 * len(m.edges):
        raise MatchingError("covered map out of step with edge list")
    for e in m.edges:
        if not state.is_live_edge(e):
            raise MatchingError(f"matched edge {e} is not live")
        u, v = state.endpoints(e)
        if m.covered.get(u) != e or m.covered.get(v) != e:
            raise MatchingError(f"edge {e} endpoints not covered by it")
    return state.n - 2 * len(m.edges)


def _level_vertex_count(trace: ReduceTrace, j: int) -> int:
    """n at level j: nearest snapshot at or before j, then a short scan."""
    snaps = trace.snapshots
    i = bisect_right(snaps, j, key=lambda s: s.index)
    if i:
        n = snaps[i - 1].n
        start = snaps[i - 1].index
    else:
        n = trace.n0
        start = 0
    for act in trace.actions[start:j]:
        if isinstance(act, Vertex0Removal):
            n -= 1
        elif isinstance(act, (Vertex1Removal, AutoCorrectionContraction)):
            n -= 2
        elif isinstance(act, Contraction):
            n -= len(act.members) - 1
    return n


def unwind(trace: ReduceTrace, j: int = None, mj: Matching = None,
           tie_break: str = "first") -> tuple[Matching, DeficiencyLedger]:
    """Reverse actions j-1 .. 0, growing mj into a matching of G0.

    j defaults to the trace's stop level and mj to the empty matching
    (the run-to-empty case). tie_break picks which center edge covers an
    uncovered contracted vertex: "first" or "second" recorded; the final
    uncovered count is the same either way.
    """
    if j is None:
        j = trace.stop_level
    if not 0 <= j <= len(trace.actions):
        raise ValueError(f"level {j} outside trace of {len(trace.actions)}")
    if tie_break not in ("first", "second"):
        raise ValueError("tie_break must be 'first' or 'second'")
    if mj is None:
        mj = Matching.empty()
    if len(mj.covered) != 2 * len(mj.edges):
        raise MatchingError("covered map out of step with edge list")

    edges = list(mj.edges)
    covered = dict(mj.covered)
    n = _level_vertex_count(trace, j)
    kappa_start = n - len(covered)
    r0 = 0
    r2b = 0
    kappas = [kappa_start]
    pick_first = tie_break == "first"

    def add(e: int, x: int, y: int) -> None:
        assert x not in covered and y not in covered, (e, x, y)
        edges.append(e)
        covered[x] = e
        covered[y] = e

    for act in reversed(trace.actions[:j]):
        if isinstance(act, MaxEdgeRemoval):
            pass
        elif isinstance(act, Vertex0Removal):
            assert act.v not in covered
            r0 += 1
            n += 1
        elif isinstance(act, Vertex1Removal):
            add(act.matched_edge, act.v, act.w)
            n += 2
        elif isinstance(act, Contraction):
            vc = act.new_vertex
            if act.is_bad:
                # copy; the deficiency grows by one no matter the cover
                r2b += 1
                n += 1
                if vc in covered:
                    f = covered.pop(vc)
                    p = dict(act.external_map)[f]
                    assert p == act.members[1]
                    covered[p] = f
            else:
                center, a, b = act.members
                first = act.internal_purged[0]
                second = act.internal_purged[1]
                assert first[1] == center and second[1] == center
                n += 2
                if vc in covered:
                    f = covered.pop(vc)
                    p = dict(act.external_map)[f]
                    covered[p] = f
                    if p == a:
                        add(second[0], center, b)
                    else:
                        assert p == b
                        add(first[0], center, a)
                elif pick_first:
                    add(first[0], center, a)
                else:
                    add(second[0], center, b)
        elif isinstance(act, AutoCorrectionContraction):
            vc = act.new_vertex
            n += 2
            if vc in covered:
                f = covered.pop(vc)
                p = dict(act.external_map)[f]
                if p == act.v:
                    covered[p] = f
                    add(act.double_edge[0], act.u, act.w)
                else:
                    assert p == act.w
                    covered[p] = f
                    add(act.removed_edge, act.u, act.v)
            else:
                add(act.double_edge[0], act.u, act.w)
        else:
            raise MatchingError(f"unknown action {type(act).__name__}")
        assert len(covered) == 2 * len(edges)
        k = n - len(covered)
        assert k == kappa_start + r0 + r2b, (k, kappa_start, r0, r2b)
        kappas.append(k)

    assert n == trace.n0
    return Matching(edges, covered), DeficiencyLedger(r0=r0, r2b=r2b,
                                                      kappas=kappas)


def resolve_to_original(m: Matching, g0: MultiGraph) -> list:
    """Original-endpoint pairs of the matched edges, disjointness-checked.

    Works on the original graph object even after it has been reduced,
    since original endpoints are immutable.
    """
    pairs = []
    seen = set()
    for e in m.edges:
        try:
            u, v = g0.original_endpoints(e)
        except IndexError:
            raise MatchingError(f"edge {e} has no provenance") from None
        if u in seen or v in seen:
            raise MatchingError(f"edge {e} overlaps another matched edge")
        seen.add(u)
        seen.add(v)
        pairs.append((u, v))
    return pairs


def write_matching(path, pairs, kappa_value: int, r0: int, r2b: int) -> None:
    """Matching output: '# kappa=K r0=A r2b=B' then one 'u v' line per edge."""
    with open(path, "w") as fh:
        fh.write(f"# kappa={kappa_value} r0={r0} r2b={r2b}\n")
        for u, v in pairs:
            fh.write(f"{u} {v}\n")


def read_matching(path) -> tuple[list, dict]:
    pairs = []
    meta = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    key, _, val = tok.partition("=")
                    if val:
                        meta[key] = int(val)
                continue
            u, v = line.split()
            pairs.append((int(u), int(v)))
    return pairs, meta
