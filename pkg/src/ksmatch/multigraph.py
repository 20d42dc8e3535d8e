"""Dynamic loopless multigraph with stable edge identities and degree buckets.

Supports the operations the reduction engine needs in O(1) amortized time:
degree queries, uniform random choice within a degree class, edge deletion,
vertex deletion, and contraction of a vertex set with loop purging.
"""

from __future__ import annotations

from random import Random


class MultiGraph:
    """Loopless multigraph over integer vertex ids with persistent edge ids.

    Vertices 0..n-1 are the original vertices; contraction allocates fresh
    ids beyond that range and never reuses an id within one instance. Each
    edge id is assigned at construction, keeps its original endpoint pair
    forever in `original_endpoints`, and carries mutable current endpoints
    that contraction may rewrite. Parallel edges are distinct edge ids;
    loops are rejected at build time and purged by `contract`.

    Attributes
    ----------
    n : int
        Number of live vertices.
    e : int
        Number of live edges.
    ex4 : int
        Sum over live vertices of max(degree - 4, 0), maintained
        incrementally on every degree change.
    """

    __slots__ = ("_ends", "_orig", "_inc", "_pos", "_buckets", "_max_deg",
                 "_next_vertex", "_n0", "n", "e", "ex4")

    def __init__(self, n: int, pairs):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        ends = []
        inc = [[] for _ in range(n)]
        for u, v in pairs:
            if u == v:
                raise ValueError(f"loop edge ({u},{v}) not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"endpoint out of range in ({u},{v})")
            eid = len(ends) // 2
            ends.append(u)
            ends.append(v)
            inc[u].append(eid)
            inc[v].append(eid)
        self._ends = ends
        self._orig = tuple(ends)
        self._inc = inc
        self._pos = [0] * n
        buckets: dict[int, list[int]] = {}
        for v in range(n):
            d = len(inc[v])
            b = buckets.get(d)
            if b is None:
                b = buckets[d] = []
            self._pos[v] = len(b)
            b.append(v)
        self._buckets = buckets
        self._max_deg = max(buckets) if buckets else 0
        self._next_vertex = n
        self._n0 = n
        self.n = n
        self.e = len(ends) // 2
        self.ex4 = sum(max(d - 4, 0) * len(b) for d, b in buckets.items())

    # ------------------------------------------------------------------
    # queries

    def is_live_vertex(self, v: int) -> bool:
        return 0 <= v < len(self._inc) and self._inc[v] is not None

    def is_live_edge(self, e: int) -> bool:
        if not (0 <= e < len(self._ends) // 2):
            return False
        u = self._ends[2 * e]
        return self._inc[u] is not None and e in self._inc[u]

    def degree(self, v: int) -> int:
        il = self._inc[v]
        if il is None:
            raise ValueError(f"vertex {v} is dead")
        return len(il)

    def endpoints(self, e: int) -> tuple[int, int]:
        """Current endpoints of a live edge."""
        if not self.is_live_edge(e):
            raise ValueError(f"edge {e} is dead")
        return self._ends[2 * e], self._ends[2 * e + 1]

    def original_endpoints(self, e: int) -> tuple[int, int]:
        """Endpoints the edge had at build time; immutable provenance."""
        return self._orig[2 * e], self._orig[2 * e + 1]

    def other_endpoint(self, e: int, v: int) -> int:
        a = self._ends[2 * e]
        return self._ends[2 * e + 1] if a == v else a

    def incident_edges(self, v: int) -> list[int]:
        il = self._inc[v]
        if il is None:
            raise ValueError(f"vertex {v} is dead")
        return list(il)

    def neighbors(self, v: int) -> list[int]:
        """Distinct neighbors of v (multiplicity collapsed)."""
        out = []
        seen = set()
        for e in self.incident_edges(v):
            w = self.other_endpoint(e, v)
            if w not in seen:
                seen.add(w)
                out.append(w)
        return out

    def live_vertices(self) -> list[int]:
        return [v for v, il in enumerate(self._inc) if il is not None]

    def live_edges(self) -> list[int]:
        out = []
        for v, il in enumerate(self._inc):
            if il:
                for e in il:
                    if self._ends[2 * e] == v:
                        out.append(e)
        return out

    def bucket_size(self, d: int) -> int:
        b = self._buckets.get(d)
        return len(b) if b else 0

    def min_degree(self) -> int:
        if self.n == 0:
            raise ValueError("empty graph has no degrees")
        d = 0
        while self.bucket_size(d) == 0:
            d += 1
        return d

    def max_degree(self) -> int:
        if self.n == 0:
            raise ValueError("empty graph has no degrees")
        while self.bucket_size(self._max_deg) == 0:
            self._max_deg -= 1
        return self._max_deg

    # ------------------------------------------------------------------
    # bucket maintenance

    def _bucket_remove(self, v: int, d: int) -> None:
        b = self._buckets[d]
        i = self._pos[v]
        last = b[-1]
        b[i] = last
        self._pos[last] = i
        b.pop()
        if d > 4:
            self.ex4 -= d - 4

    def _bucket_add(self, v: int, d: int) -> None:
        b = self._buckets.get(d)
        if b is None:
            b = self._buckets[d] = []
        self._pos[v] = len(b)
        b.append(v)
        if d > 4:
            self.ex4 += d - 4
        if d > self._max_deg:
            self._max_deg = d

    def _degree_changed(self, v: int, old: int, new: int) -> None:
        self._bucket_remove(v, old)
        self._bucket_add(v, new)

    # ------------------------------------------------------------------
    # mutations

    def remove_edge(self, e: int) -> None:
        """Delete one live edge; both endpoint degrees drop by 1."""
        if not self.is_live_edge(e):
            raise ValueError(f"edge {e} is dead")
        u = self._ends[2 * e]
        v = self._ends[2 * e + 1]
        for x in (u, v):
            il = self._inc[x]
            il.remove(e)
            self._degree_changed(x, len(il) + 1, len(il))
        self.e -= 1

    def remove_vertex(self, v: int) -> list[int]:
        """Delete v and every incident edge; returns the removed edge ids."""
        il = self._inc[v]
        if il is None:
            raise ValueError(f"vertex {v} is dead")
        removed = list(il)
        for e in removed:
            w = self.other_endpoint(e, v)
            if w != v and self._inc[w] is not None:
                wl = self._inc[w]
                wl.remove(e)
                self._degree_changed(w, len(wl) + 1, len(wl))
        self._bucket_remove(v, len(il))
        self._inc[v] = None
        self.n -= 1
        self.e -= len(removed)
        return removed

    def contract(self, members) -> tuple[int, list[int]]:
        """Replace the vertex set `members` by one fresh vertex.

        Edges internal to the set become loops and are purged (returned);
        edges with one endpoint inside are re-endpointed to the new vertex,
        keeping their ids, so parallel edges to a common outside vertex
        survive. Iteration order of `members` fixes the capture order,
        which replay relies on.
        """
        members = tuple(members)
        if len(members) < 2:
            raise ValueError("contraction needs at least 2 vertices")
        mset = set(members)
        if len(mset) != len(members):
            raise ValueError("duplicate vertex in contraction set")
        for m in members:
            if self._inc[m] is None:
                raise ValueError(f"vertex {m} is dead")
        purged = []
        seen = set()
        external = []
        for m in members:
            for e in self._inc[m]:
                o = self.other_endpoint(e, m)
                if o in mset:
                    if e not in seen:
                        seen.add(e)
                        purged.append(e)
                else:
                    external.append((e, m))
        for m in members:
            self._bucket_remove(m, len(self._inc[m]))
            self._inc[m] = None
        vc = self._next_vertex
        self._next_vertex += 1
        newinc = []
        for e, m in external:
            if self._ends[2 * e] == m:
                self._ends[2 * e] = vc
            else:
                self._ends[2 * e + 1] = vc
            newinc.append(e)
        self._inc.append(newinc)
        self._pos.append(0)
        self._bucket_add(vc, len(newinc))
        self.n -= len(members) - 1
        self.e -= len(purged)
        return vc, purged

    # ------------------------------------------------------------------
    # random selection

    def pick_uniform(self, degree_class, rng: Random) -> int:
        """Uniform vertex from a degree class: an int, "max", or "min"."""
        if degree_class == "max":
            d = self.max_degree()
        elif degree_class == "min":
            d = self.min_degree()
        else:
            d = degree_class
        b = self._buckets.get(d)
        if not b:
            raise ValueError(f"degree class {degree_class} is empty")
        return b[int(rng.random() * len(b))]

    def pick_incident_edge(self, v: int, rng: Random) -> int:
        """Uniform incident edge; parallel edges count with multiplicity."""
        il = self._inc[v]
        if not il:
            raise ValueError(f"vertex {v} has no incident edges")
        return il[int(rng.random() * len(il))]

    # ------------------------------------------------------------------
    # integrity helpers

    def initial_copy(self) -> "MultiGraph":
        """Fresh graph equal to this instance's build-time state."""
        pairs = [(self._orig[2 * e], self._orig[2 * e + 1])
                 for e in range(len(self._orig) // 2)]
        return MultiGraph(self._n0, pairs)

    def fingerprint(self):
        """Canonical live-state snapshot for bit-for-bit comparison."""
        verts = tuple((v, tuple(sorted(il)))
                      for v, il in enumerate(self._inc) if il is not None)
        edges = []
        for v, il in enumerate(self._inc):
            if il:
                for e in il:
                    a, b = self._ends[2 * e], self._ends[2 * e + 1]
                    if v == min(a, b):
                        edges.append((e, min(a, b), max(a, b)))
        return (self.n, self.e, self._next_vertex, verts, tuple(sorted(edges)))

    def check(self) -> None:
        """Recount every invariant from scratch; assert on any mismatch."""
        live = [v for v, il in enumerate(self._inc) if il is not None]
        assert self.n == len(live)
        deg_sum = 0
        edge_seen = {}
        for v in live:
            for e in self._inc[v]:
                u, w = self._ends[2 * e], self._ends[2 * e + 1]
                assert v in (u, w), (v, e, u, w)
                assert u != w, f"live loop {e}"
                o = w if u == v else u
                assert self._inc[o] is not None and e in self._inc[o]
                edge_seen[e] = edge_seen.get(e, 0) + 1
            deg_sum += len(self._inc[v])
        assert all(c == 2 for c in edge_seen.values())
        assert self.e == len(edge_seen)
        assert deg_sum == 2 * self.e
        for d, b in self._buckets.items():
            for i, v in enumerate(b):
                assert self._inc[v] is not None, f"dead vertex {v} in bucket"
                assert len(self._inc[v]) == d
                assert self._pos[v] == i
        counted = sum(len(b) for b in self._buckets.values())
        assert counted == self.n
        assert self.ex4 == sum(
            max(len(self._inc[v]) - 4, 0) for v in live)


def read_edge_list(path) -> tuple[int, list[tuple[int, int]]]:
    """Parse the "n m" header plus m "u v" lines; 0-based vertex ids."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("first line must be 'n m'")
        n, m = int(header[0]), int(header[1])
        pairs = []
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            u, v = line.split()
            pairs.append((int(u), int(v)))
    if len(pairs) != m:
        raise ValueError(f"header claims {m} edges, file has {len(pairs)}")
    return n, pairs


def write_edge_list(path, n: int, pairs) -> None:
    pairs = list(pairs)
    with open(path, "w") as fh:
        fh.write(f"{n} {len(pairs)}\n")
        for u, v in pairs:
            fh.write(f"{u} {v}\n")
