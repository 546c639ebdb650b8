"""Ground truth: cycle checking, exhaustive hamilton search, connectivity, coloring.

Everything here works on a ``Graph`` or on a plain adjacency mapping, so the
same checks can be pointed at tiny sanity hosts.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np
from numba import njit

from .torus_quad import Color, EdgeKind, Graph, edge_key

DEFAULT_ENUM_BUDGET = 24
DEFAULT_CONNECTIVITY_BUDGET = 200
MAX_MASK_VERTICES = 62  # visited sets live in one int64

GraphLike = Graph | Mapping[Hashable, Iterable[Hashable]]


class BudgetExceeded(RuntimeError):
    pass


def _adjacency(g: GraphLike, base_only: bool = False) -> dict:
    """Simple adjacency sets (loops and multiplicities dropped)."""
    if isinstance(g, Graph) and not base_only:
        return g.neighbor_sets
    if isinstance(g, Graph):
        adj = {v: set() for v in g.vertices}
        for u, v, kind in g.edges:
            if u != v and not (base_only and kind is EdgeKind.DIAGONAL):
                adj[u].add(v)
                adj[v].add(u)
        return adj
    adj = {v: set() for v in g}
    for u, ns in g.items():
        for v in ns:
            if u != v:
                adj[u].add(v)
                adj.setdefault(v, set()).add(u)
    return adj


def _edges(g: GraphLike) -> Iterable[tuple]:
    if isinstance(g, Graph):
        return [(u, v) for u, v, _ in g.edges]
    return {edge_key(u, v) for u, ns in g.items() for v in ns}


# --- cycle verification ---------------------------------------------------------


class ViolationKind(Enum):
    NOT_ADJACENT = "NotAdjacent"
    MISSING = "Missing"
    REPEATED = "Repeated"
    REQUIRED_EDGE_ABSENT = "RequiredEdgeAbsent"


class Violation(NamedTuple):
    kind: ViolationKind
    witness: object


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[ViolationKind]:
        return {v.kind for v in self.violations}


def verify_cycle(g: GraphLike, cycle, required: Iterable[tuple] = ()) -> VerificationReport:
    """Check that ``cycle`` is a hamilton cycle of g containing every required edge."""
    seq = list(getattr(cycle, "vertices", cycle))
    adj = _adjacency(g)
    out = []
    position: dict = {}
    for k, v in enumerate(seq):
        if v in position:
            out.append(Violation(ViolationKind.REPEATED, v))
        else:
            position[v] = k
    out += [Violation(ViolationKind.MISSING, v) for v in adj if v not in position]
    size = len(seq)
    for k in range(size):
        u, v = seq[k], seq[(k + 1) % size]
        if v not in adj.get(u, ()):
            out.append(Violation(ViolationKind.NOT_ADJACENT, (u, v)))
    for u, v in required:
        # cycle neighbors sit at cyclically adjacent positions; a 2-vertex "cycle" would reuse its edge
        ku, kv = position.get(u), position.get(v)
        if size < 3 or ku is None or kv is None or (ku - kv) % size not in (1, size - 1):
            out.append(Violation(ViolationKind.REQUIRED_EDGE_ABSENT, edge_key(u, v)))
    return VerificationReport(tuple(out))


# --- exhaustive enumeration -------------------------------------------------------


def enumeration_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get("TOROHAM_BUDGET", DEFAULT_ENUM_BUDGET))


@dataclass(frozen=True)
class Enumeration:
    count: int
    cycles: tuple[tuple, ...] | None = None


def _canonical(seq: Sequence) -> tuple:
    k = seq.index(min(seq))
    rot = list(seq[k:]) + list(seq[:k])
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _count_closing_paths(nbr, deg, nbr_mask, start, first, full, stop_at):
    """Hamilton paths start, first, ... that end next to start (iterative DFS).

    Stops early once ``stop_at`` paths are found (pass a negative value for no limit).
    """
    size = nbr.shape[0]
    heads = np.empty(size + 1, np.int64)
    cursor = np.empty(size + 1, np.int64)
    visited = (1 << start) | (1 << first)
    sp = 0
    heads[0] = first
    cursor[0] = 0
    total = 0
    while sp >= 0:
        h = heads[sp]
        if visited == full:
            if (nbr_mask[h] >> start) & 1:
                total += 1
                if total == stop_at:
                    return total
            visited &= ~(1 << h)
            sp -= 1
            continue
        k = cursor[sp]
        if k >= deg[h]:
            visited &= ~(1 << h)
            sp -= 1
            continue
        cursor[sp] = k + 1
        w = nbr[h, k]
        if (visited >> w) & 1:
            continue
        nv = visited | (1 << w)
        open_mask = (full & ~nv) | (1 << w) | (1 << start)
        dead = False
        for t in range(deg[h]):
            x = nbr[h, t]
            if not (nv >> x) & 1 and _popcount(nbr_mask[x] & open_mask) < 2:
                dead = True
                break
        if not dead:
            visited = nv
            sp += 1
            heads[sp] = w
            cursor[sp] = 0
    return total


class _Search:
    """Hamilton paths from ``start`` (through ``first``) that close back to start."""

    def __init__(self, adj: dict, start, first=None) -> None:
        self.labels = sorted(adj)
        index = {v: k for k, v in enumerate(self.labels)}
        self.nbr = [sorted(index[w] for w in adj[v]) for v in self.labels]
        self.nbr_mask = [sum(1 << w for w in ns) for ns in self.nbr]
        self.full = (1 << len(self.labels)) - 1
        self.start = index[start]
        self.first = None if first is None else index[first]
        self.memo: dict[tuple[int, int], int] = {}

    def fast_count(self, stop_at: int = -1) -> int:
        """Compiled count of closing paths, capped at ``stop_at`` when positive."""
        width = max(len(ns) for ns in self.nbr)
        nbr = np.zeros((len(self.nbr), width), np.int64)
        for k, ns in enumerate(self.nbr):
            nbr[k, : len(ns)] = ns
        deg = np.array([len(ns) for ns in self.nbr], np.int64)
        mask = np.array(self.nbr_mask, np.int64)
        firsts = [self.first] if self.first is not None else self.nbr[self.start]
        total = 0
        for f in firsts:
            remaining = stop_at - total if stop_at > 0 else -1
            total += int(_count_closing_paths(nbr, deg, mask, self.start, f, self.full, remaining))
            if total == stop_at:
                break
        return total

    def _dead(self, old: int, new: int, visited: int) -> bool:
        # vertices that just lost ``old`` as a usable neighbor
        open_mask = (self.full & ~visited) | (1 << new) | (1 << self.start)
        for w in self.nbr[old]:
            if not visited >> w & 1 and bin(self.nbr_mask[w] & open_mask).count("1") < 2:
                return True
        return False

    def count(self, head: int, visited: int) -> int:
        if visited == self.full:
            return 1 if self.nbr_mask[head] >> self.start & 1 else 0
        key = (head, visited)
        if key in self.memo:
            return self.memo[key]
        total = 0
        for w in self.nbr[head]:
            if not visited >> w & 1:
                nv = visited | 1 << w
                if not self._dead(head, w, nv):
                    total += self.count(w, nv)
        self.memo[key] = total
        return total

    def paths(self, head: int, visited: int, path: list[int]):
        if visited == self.full:
            if self.nbr_mask[head] >> self.start & 1:
                yield list(path)
            return
        for w in self.nbr[head]:
            if not visited >> w & 1:
                nv = visited | 1 << w
                if not self._dead(head, w, nv):
                    path.append(w)
                    yield from self.paths(w, nv, path)
                    path.pop()

    def initial(self) -> tuple[int, int, list[int]]:
        visited = 1 << self.start
        if self.first is None:
            return self.start, visited, [self.start]
        return self.first, visited | 1 << self.first, [self.start, self.first]


def enumerate_ham_cycles(
    g: GraphLike,
    through: tuple | None = None,
    limit: int | None = None,
    collect: bool = False,
    budget: int | None = None,
    compiled: bool = True,
) -> Enumeration:
    """Exact number of hamilton cycles (optionally containing ``through``).

    Each undirected cycle is counted once.  With ``limit`` the search stops once
    that many cycles are found; with ``collect`` the cycles are returned in
    canonical form, sorted.  ``compiled=False`` counts with the memoized
    pure-Python search instead of the compiled depth-first search.
    """
    adj = _adjacency(g)
    size = len(adj)
    if size > min(enumeration_budget(budget), MAX_MASK_VERTICES):
        raise BudgetExceeded(f"{size} vertices exceeds enumeration budget {enumeration_budget(budget)}")
    if size < 3 or (limit is not None and limit <= 0):
        return Enumeration(0, () if collect else None)
    if through is not None:
        u, v = edge_key(*through)
        if v not in adj.get(u, ()):
            return Enumeration(0, () if collect else None)
        search = _Search(adj, u, v)
    else:
        search = _Search(adj, min(adj))
    head, visited, path = search.initial()

    if not collect and limit is None:
        total = search.fast_count() if compiled else search.count(head, visited)
        return Enumeration(total if through is not None else total // 2)
    if not collect and compiled and through is not None:
        return Enumeration(search.fast_count(limit))

    found = []
    for p in search.paths(head, visited, path):
        if through is None and p[1] > p[-1]:
            continue  # the reverse traversal is counted instead
        found.append(_canonical([search.labels[k] for k in p]))
        if limit is not None and len(found) >= limit:
            break
    return Enumeration(len(found), tuple(sorted(found)) if collect else None)


# --- connectivity -------------------------------------------------------------------


@njit(cache=True)
def _local_connectivity(offsets, heads, rev, cap0, source, sink, cutoff):
    """Unit-capacity augmenting paths from source to sink, stopping at cutoff."""
    cap = cap0.copy()
    nodes = offsets.shape[0] - 1
    parent_arc = np.empty(nodes, np.int64)
    queue = np.empty(nodes, np.int64)
    flow = 0
    while flow < cutoff:
        parent_arc[:] = -1
        parent_arc[source] = -2
        queue[0] = source
        lo, hi = 0, 1
        while lo < hi and parent_arc[sink] == -1:
            x = queue[lo]
            lo += 1
            for a in range(offsets[x], offsets[x + 1]):
                y = heads[a]
                if cap[a] > 0 and parent_arc[y] == -1:
                    parent_arc[y] = a
                    queue[hi] = y
                    hi += 1
        if parent_arc[sink] == -1:
            break
        y = sink
        while y != source:
            a = parent_arc[y]
            cap[a] -= 1
            cap[rev[a]] += 1
            y = heads[rev[a]]
        flow += 1
    return flow


class _SplitNetwork:
    """Each vertex x becomes in-node 2x and out-node 2x+1 joined by a unit arc."""

    def __init__(self, labels: list, adj: dict) -> None:
        index = {v: k for k, v in enumerate(labels)}
        arcs: list[tuple[int, int, int]] = []
        for k in range(len(labels)):
            arcs.append((2 * k, 2 * k + 1, 1))
        for u in labels:
            for v in adj[u]:
                arcs.append((2 * index[u] + 1, 2 * index[v], 1))
        tails, heads, caps = [], [], []
        for t, h, c in arcs:
            tails += [t, h]
            heads += [h, t]
            caps += [c, 0]
        order = np.argsort(np.array(tails), kind="stable")
        position = np.empty(len(order), np.int64)
        position[order] = np.arange(len(order))
        self.heads = np.array(heads, np.int64)[order]
        self.cap = np.array(caps, np.int64)[order]
        paired = np.arange(len(order)) ^ 1
        self.rev = position[paired[order]]
        counts = np.bincount(np.array(tails), minlength=2 * len(labels))
        self.offsets = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self.index = index

    def local(self, s, t, cutoff: int) -> int:
        return int(
            _local_connectivity(
                self.offsets, self.heads, self.rev, self.cap, 2 * self.index[s] + 1, 2 * self.index[t], cutoff
            )
        )


def vertex_connectivity(g: GraphLike, budget: int = DEFAULT_CONNECTIVITY_BUDGET) -> int:
    """Exact vertex connectivity by Menger: unit vertex capacities, max-flow between
    nonadjacent pairs.

    With v of minimum degree, some minimum cut either misses v (so it separates v
    from a non-neighbor) or contains v (so it separates two neighbors of v).
    """
    adj = _adjacency(g)
    if len(adj) > budget:
        raise BudgetExceeded(f"{len(adj)} vertices exceeds connectivity budget {budget}")
    labels = sorted(adj)
    if len(labels) <= 1:
        return 0
    if not _connected(adj):
        return 0
    net = _SplitNetwork(labels, adj)
    v = min(labels, key=lambda x: (len(adj[x]), x))
    best = len(adj[v])
    for w in labels:
        if w != v and w not in adj[v]:
            best = min(best, net.local(v, w, best))
    ns = sorted(adj[v])
    for a in range(len(ns)):
        for b in range(a + 1, len(ns)):
            if ns[b] not in adj[ns[a]]:
                best = min(best, net.local(ns[a], ns[b], best))
    return best


def _connected(adj: dict) -> bool:
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


# --- coloring and parity ----------------------------------------------------------


@dataclass(frozen=True)
class TwoColoring:
    coloring: dict | None = None
    odd_cycle: tuple | None = None

    @property
    def bipartite(self) -> bool:
        return self.coloring is not None


def two_coloring(g: GraphLike) -> TwoColoring:
    """Proper 2-coloring of the non-diagonal edges, or an odd cycle.

    The search starts at the smallest vertex, which is colored black.
    """
    loop = _first_loop(g)
    if loop is not None:
        return TwoColoring(odd_cycle=(loop,))
    adj = _adjacency(g, base_only=True)
    color: dict = {}
    parent: dict = {}
    for root in sorted(adj):
        if root in color:
            continue
        color[root] = Color.BLACK
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in color:
                    color[w] = color[u].other
                    parent[w] = u
                    queue.append(w)
                elif color[w] is color[u]:
                    return TwoColoring(odd_cycle=_odd_cycle(parent, u, w))
    return TwoColoring(coloring=color)


def _first_loop(g: GraphLike):
    """A vertex carrying a non-diagonal loop (a 1-cycle), if any."""
    if isinstance(g, Graph):
        loops = [u for u, v, kind in g.edges if u == v and kind is not EdgeKind.DIAGONAL]
    else:
        loops = [u for u, ns in g.items() if u in ns]
    return min(loops, default=None)


def _odd_cycle(parent: dict, u, w) -> tuple:
    def chain(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    pu, pw = chain(u), chain(w)
    common = set(pu) & set(pw)
    a = next(x for x in pu if x in common)
    left = pu[: pu.index(a) + 1]
    right = pw[: pw.index(a)]
    return tuple(left[::-1] + right)


def mono_balance(coloring: Mapping, cycle) -> tuple[int, int]:
    """Numbers of black-black and white-white edges along a cycle."""
    seq = list(getattr(cycle, "vertices", cycle))
    bb = ww = 0
    for k in range(len(seq)):
        a, b = coloring[seq[k]], coloring[seq[(k + 1) % len(seq)]]
        if a is b:
            if a is Color.BLACK:
                bb += 1
            else:
                ww += 1
    return bb, ww


@dataclass(frozen=True)
class ExclusionCertificate:
    """Balance data that rules out black-black edges on any hamilton cycle.

    Along a hamilton cycle each vertex has two incident cycle edges, so
    2|black| = 2 nBB + nBW and 2|white| = 2 nWW + nBW.  With equal classes and
    no white-white edges at all, nBB = nWW = 0.
    """

    black: int
    white: int
    white_white_edges: int
    coloring: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def valid(self) -> bool:
        return self.black == self.white and self.white_white_edges == 0


def exclusion_certificate(g: GraphLike) -> ExclusionCertificate:
    col = two_coloring(g)
    if not col.bipartite:
        raise ValueError("host is not bipartite apart from its diagonals")
    coloring = col.coloring
    black = sum(1 for c in coloring.values() if c is Color.BLACK)
    ww = sum(
        1 for u, v in _edges(g) if u != v and coloring[u] is Color.WHITE and coloring[v] is Color.WHITE
    )
    return ExclusionCertificate(black, len(coloring) - black, ww, coloring)
