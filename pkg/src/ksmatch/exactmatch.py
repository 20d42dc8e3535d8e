"""Exact maximum-cardinality matching plus brute-force oracles.

max_matching runs augmenting-path search with blossom shrinking on the
parallel-collapsed graph.  The two oracles, a bitmask scan over all
matchings and subset enumeration of the deficiency formula
nu(G) = min over W of (|V| + |W| - q(V minus W)) / 2,
exist to cross-check it on small instances.
"""

from collections import deque
from dataclasses import dataclass

from .construct import Matching

BRUTE_CAP = 14
DEFICIENCY_CAP = 16


@dataclass(frozen=True)
class DeficiencyCertificate:
    """First witness set attaining the deficiency-formula minimum."""

    witness: tuple
    q: int
    value: int


def _collapse(g):
    """Simple-graph view: sorted live vertices, compact adjacency sets
    and one representative live edge id per vertex pair."""
    verts = sorted(g.live_vertices())
    idx = {v: i for i, v in enumerate(verts)}
    adj = [set() for _ in verts]
    rep = {}
    for e in g.live_edges():
        a, b = g.endpoints(e)
        if a == b:
            continue
        i, j = idx[a], idx[b]
        if i > j:
            i, j = j, i
        if (i, j) not in rep:
            rep[(i, j)] = e
            adj[i].add(j)
            adj[j].add(i)
    return verts, adj, rep


def _adj_masks(adj):
    masks = [0] * len(adj)
    for v, nbrs in enumerate(adj):
        for u in nbrs:
            masks[v] |= 1 << u
    return masks


def _lca(base, match, p, a, b):
    seen = set()
    while True:
        a = base[a]
        seen.add(a)
        if match[a] == -1:
            break
        a = p[match[a]]
    while True:
        b = base[b]
        if b in seen:
            return b
        b = p[match[b]]


def _mark_path(base, match, p, blossom, v, b, child):
    while base[v] != b:
        blossom[base[v]] = True
        blossom[base[match[v]]] = True
        p[v] = child
        child = match[v]
        v = p[match[v]]


def _find_augmenting(adj, match, root):
    """BFS for an augmenting path from the exposed root, shrinking
    odd cycles onto their base as they are discovered.  Returns the
    exposed endpoint reached (or -1) and the parent array."""
    k = len(adj)
    p = [-1] * k
    base = list(range(k))
    used = [False] * k
    used[root] = True
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and p[match[to]] != -1):
                # edge between two outer vertices closes an odd cycle
                cur = _lca(base, match, p, v, to)
                blossom = [False] * k
                _mark_path(base, match, p, blossom, v, cur, to)
                _mark_path(base, match, p, blossom, to, cur, v)
                for i in range(k):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif p[to] == -1:
                p[to] = v
                if match[to] == -1:
                    return to, p
                used[match[to]] = True
                queue.append(match[to])
    return -1, p


def max_matching(g):
    """Maximum-cardinality matching of a loopless multigraph.

    Matchings never use two parallel copies, so the search runs on the
    collapsed simple graph and reports one representative edge id per
    matched pair.
    """
    verts, adj, rep = _collapse(g)
    k = len(verts)
    match = [-1] * k
    for v in range(k):
        if match[v] == -1:
            for to in adj[v]:
                if match[to] == -1:
                    match[v] = to
                    match[to] = v
                    break
    for v in range(k):
        if match[v] != -1:
            continue
        end, p = _find_augmenting(adj, match, v)
        while end != -1:
            prev = p[end]
            nxt = match[prev]
            match[end] = prev
            match[prev] = end
            end = nxt
    ids = [rep[(v, match[v])] for v in range(k) if match[v] > v]
    return Matching.from_edges(g, ids)


def max_matching_bruteforce(g):
    """Exhaustive maximum matching by subset dynamic programming."""
    verts, adj, rep = _collapse(g)
    k = len(verts)
    if k > BRUTE_CAP:
        raise ValueError(f"brute force capped at {BRUTE_CAP} vertices, "
                         f"got {k}")
    masks = _adj_masks(adj)
    size = [0] * (1 << k)
    for mask in range(1, 1 << k):
        v = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << v)
        best = size[rest]
        m = masks[v] & rest
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            cand = 1 + size[rest ^ (1 << u)]
            if cand > best:
                best = cand
        size[mask] = best
    pairs = []
    mask = (1 << k) - 1
    while mask:
        v = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << v)
        if size[mask] == size[rest]:
            mask = rest
            continue
        m = masks[v] & rest
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            if size[mask] == 1 + size[rest ^ (1 << u)]:
                pairs.append((v, u) if v < u else (u, v))
                mask = rest ^ (1 << u)
                break
    return Matching.from_edges(g, [rep[pr] for pr in pairs])


def odd_components(g, witness):
    """Number of odd-order connected components after deleting the
    witness set."""
    wset = set(witness)
    live = set(g.live_vertices())
    if not wset <= live:
        raise ValueError("witness set contains vertices not in the graph")
    remaining = live - wset
    seen = set()
    count = 0
    for s in remaining:
        if s in seen:
            continue
        seen.add(s)
        stack = [s]
        order = 0
        while stack:
            v = stack.pop()
            order += 1
            for u in g.neighbors(v):
                if u in remaining and u not in seen:
                    seen.add(u)
                    stack.append(u)
        if order % 2:
            count += 1
    return count


def tutte_berge_deficiency(g):
    """Exact minimizer of the deficiency formula by subset enumeration;
    ties keep the first witness in mask order, so the empty set wins
    whenever it is optimal."""
    verts, adj, _ = _collapse(g)
    k = len(verts)
    if k > DEFICIENCY_CAP:
        raise ValueError(f"deficiency enumeration capped at "
                         f"{DEFICIENCY_CAP} vertices, got {k}")
    masks = _adj_masks(adj)
    full = (1 << k) - 1
    best = None
    for wmask in range(1 << k):
        pool = full ^ wmask
        q = 0
        p = pool
        while p:
            comp = p & -p
            frontier = comp
            while frontier:
                grown = 0
                f = frontier
                while f:
                    v = (f & -f).bit_length() - 1
                    f &= f - 1
                    grown |= masks[v]
                frontier = grown & p & ~comp
                comp |= frontier
            if comp.bit_count() % 2:
                q += 1
            p &= ~comp
        value = (k + wmask.bit_count() - q) // 2
        if best is None or value < best[2]:
            best = (wmask, q, value)
    wmask, q, value = best
    witness = tuple(verts[i] for i in range(k) if wmask >> i & 1)
    return DeficiencyCertificate(witness=witness, q=q, value=value)
