"""Search-free hamilton cycles in Q(m,n;q) with added diagonals.

The grid cases are assembled from explicit patterns on the "cylinder" formed by
columns 0..c (c = column of the second diagonal's face), which never uses a wrap
edge.  Columns c+1..m-1 are absorbed afterwards by a horizontal zigzag hung off a
vertical edge of column c.  The one-column case works on the circulant graph
directly and merges short cycles with chord swaps.

Every public builder verifies its output before returning it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import symmetry as sym
from .oracle import verify_cycle
from .torus_quad import (
    Color,
    DiagonalSpec,
    Edge,
    EdgeKind,
    Graph,
    TorusParams,
    Vertex,
    add_diagonals,
    build,
    diagonal_endpoints,
    edge_key,
)


class ConstructionError(RuntimeError):
    """A builder produced a sequence that fails verification."""


def canonical_form(seq: Sequence) -> tuple:
    """Rotate so the minimum comes first; orient so its successor is the smaller neighbor."""
    seq = list(seq)
    k = seq.index(min(seq))
    rot = seq[k:] + seq[:k]
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


@dataclass(frozen=True)
class HamCycle:
    vertices: tuple[Vertex, ...]

    @classmethod
    def from_sequence(cls, seq: Iterable[Vertex]) -> "HamCycle":
        return cls(canonical_form(list(seq)))

    @cached_property
    def edges(self) -> frozenset[tuple[Vertex, Vertex]]:
        vs = self.vertices
        return frozenset(edge_key(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs)))

    def contains_edge(self, u: Vertex, v: Vertex) -> bool:
        return edge_key(u, v) in self.edges

    def __len__(self) -> int:
        return len(self.vertices)


def _checked(g: Graph, seq: Sequence[Vertex], required: Iterable[tuple[Vertex, Vertex]]) -> HamCycle:
    report = verify_cycle(g, seq, required)
    if not report.ok:
        raise ConstructionError(f"construction failed on {g.params}: {report.violations[:3]}")
    return HamCycle.from_sequence(seq)


# --- cylinder patterns ---------------------------------------------------------
# Coordinates are (column, row) on columns 0..c; rows are taken mod n by the caller.
# e1 is (0,0)-(1,1); e2 is the white diagonal of face (c, r).


def _up(a: int, b: int) -> list[int]:
    return list(range(a, b + 1))


def _down(a: int, b: int) -> list[int]:
    return list(range(a, b - 1, -1))


def _row_snake(rows: Iterable[int], c0: int, c1: int, rightward: bool) -> list[Vertex]:
    """Traverse each row across columns c0..c1, alternating direction."""
    out = []
    for row in rows:
        cols = range(c0, c1 + 1) if rightward else range(c1, c0 - 1, -1)
        out += [(i, row) for i in cols]
        rightward = not rightward
    return out


def _column_snake(cols: Iterable[int], rows: list[int], upward: bool) -> list[Vertex]:
    """Traverse each column over the given rows (listed bottom to top), alternating."""
    out = []
    for col in cols:
        out += [(col, j) for j in (rows if upward else rows[::-1])]
        upward = not upward
    return out


def _white_diagonal(c: int, r: int, n: int) -> tuple[Vertex, Vertex]:
    if (c + r) % 2:
        return ((c - 1, (r - 1) % n), (c, r % n))
    return ((c, (r - 1) % n), (c - 1, r % n))


def _left_column_start(n: int) -> list[Vertex]:
    return [(1, 0), (0, 0), (1, 1)] + [(0, j) for j in range(1, n)]


def _ladder(n: int, r: int) -> list[Vertex]:
    """c = 1: zigzag up the two columns, stepping across e2 between rows r-1 and r."""
    if r == 0:
        return _row_snake(_up(1, n - 1), 0, 1, False) + [(1, 0), (0, 0)]
    seq = _row_snake(_up(1, r - 1), 0, 1, False)
    a, b = _white_diagonal(1, r, n)
    landing = b if a == seq[-1] else a
    seq += _row_snake(_up(r, n - 1), 0, 1, landing[0] == 0)
    return seq + [(1, 0), (0, 0)]


def _even_high_odd_row(c: int, n: int, r: int) -> list[Vertex]:
    """c even, r odd >= 3."""
    cyc = _left_column_start(n)
    cyc += _row_snake(_down(n - 1, r + 1), 1, c, True)
    cyc += _column_snake(_up(1, c - 1), [r - 1, r], False)
    cyc += [(c, r), (c, r - 1)]
    cyc += _row_snake(_down(r - 2, 2), 1, c, False)
    cyc += _column_snake(_down(c, 2), [0, 1], False)
    return cyc


def _even_high_even_row(c: int, n: int, r: int) -> list[Vertex]:
    """c even, r even >= 4."""
    cyc = _left_column_start(n)
    cyc += _row_snake(_down(n - 1, r + 1), 1, c, True)
    cyc += [(c, r), (c - 1, r), (c, r - 1), (c - 1, r - 1)]
    cyc += _column_snake(_down(c - 2, 1), [r - 1, r], True)
    cyc += _row_snake(_down(r - 2, 2), 1, c, True)
    cyc += _column_snake(_down(c, 2), [0, 1], False)
    return cyc


def _even_row2(c: int, n: int, r: int) -> list[Vertex]:
    """c even, r = 2, n >= 6."""
    path = [(0, 0), (0, 1)]
    path += _row_snake(_up(2, r - 1), 0, c - 1, True)
    path += [(0, j) for j in _up(r, n - 1)]
    path += _column_snake(_up(1, c), [0, n - 1], False)
    path += _row_snake(_down(n - 2, r + 2), 1, c, False)
    path += _column_snake(_up(1, c - 2), [r, r + 1], False)
    path += [(c - 1, r + 1), (c, r + 1), (c, r), (c - 1, r)]
    other = [(i, 1) for i in _up(1, c)] + [(c, j) for j in _up(2, r - 1)]
    return path + other[::-1]


def _even_row1(c: int, n: int, r: int) -> list[Vertex]:
    """c even, r = 1, n >= 6."""
    cyc = _left_column_start(n) + [(1, j) for j in _down(n - 1, 2)]
    cyc += _column_snake(_up(2, c - 1), [1, 2], False) + [(c, 2)]
    cyc += [(i, 3) for i in _down(c, 2)]
    cyc += _row_snake(_up(4, n - 3), 2, c, True)
    cyc += _column_snake(_up(2, c), [n - 2, n - 1], True)
    cyc += [(c, 0), (c, 1)] + [(i, 0) for i in _down(c - 1, 2)]
    return cyc


def _odd_u_turn_head(c: int, n: int) -> list[Vertex]:
    """From (1,1) along row 1, back along row 0, then down column 0 from the top."""
    return [(i, 1) for i in _up(1, c)] + [(i, 0) for i in _down(c, 1)] + [
        (1, n - 1),
        (0, n - 1),
        (0, n - 2),
        (1, n - 2),
    ]


def _odd_middle_row(c: int, n: int, r: int) -> list[Vertex]:
    """c odd, 3 <= r <= n-3: two sweeps meet in the band of rows r-1, r."""
    head = _odd_u_turn_head(c, n)
    head += _column_snake(_up(2, c), [n - 2, n - 1], True)
    head += _row_snake(_down(n - 3, r + 1), 0, c, False)
    tail = [(0, 0), (0, 1)] + _row_snake(_up(2, r - 2), 0, c, True)
    if r % 2:
        head += [(c, r), (c - 1, r)]
        tail += _column_snake(_up(0, c - 2), [r - 1, r], True) + [(c - 1, r - 1), (c, r - 1)]
    else:
        tail += [(c, r - 1), (c, r)]
        head += _column_snake(_up(0, c - 2), [r - 1, r], False) + [(c - 1, r), (c - 1, r - 1)]
    return head + tail[::-1]


def _odd_second_top_row(c: int, n: int, r: int) -> list[Vertex]:
    """c odd >= 3, r = n-2, n >= 6."""
    head = _odd_u_turn_head(c, n)
    head += _column_snake(_up(2, c - 1), [n - 2, n - 1], True) + [(c, n - 1), (c, n - 2)]
    tail = [(0, 0), (0, 1)] + _row_snake(_up(2, n - 5), 0, c, True)
    tail += _column_snake(_up(0, c - 2), [n - 4, n - 3], True)
    tail += [(c - 1, n - 4), (c, n - 4), (c, n - 3), (c - 1, n - 3)]
    return head + tail[::-1]


def _odd_top_row(c: int, n: int, r: int) -> list[Vertex]:
    """c odd >= 3, r = n-1, n >= 6."""
    tail = [(0, 0), (0, 1)] + [(i, 2) for i in _up(0, c - 1)]
    tail += _column_snake(_down(c - 1, 0), _up(3, n - 2), True) + [(0, n - 1)]
    tail += _column_snake(_up(1, c - 2), [0, n - 1], False)
    tail += [(c - 1, 0), (c, 0), (c, n - 1), (c - 1, n - 1)]
    head = [(i, 1) for i in _up(1, c)] + [(c, j) for j in _up(2, n - 2)]
    return head + tail[::-1]


def _odd_row2(c: int, n: int, r: int) -> list[Vertex]:
    """c odd >= 3, r = 2, n >= 6."""
    tail = [(0, j) for j in range(n)] + _column_snake(_up(1, c - 1), [0, n - 1], False)
    tail += _row_snake(_down(n - 2, 4), 1, c - 1, False)
    tail += _column_snake(_up(1, c - 1), [2, 3], False)
    tail += [(c, j) for j in _up(3, n - 1)] + [(c, 0), (c, 1), (c, 2)]
    head = [(i, 1) for i in _up(1, c - 1)]
    return head + tail[::-1]


def _odd_row1(c: int, n: int, r: int) -> list[Vertex]:
    """c odd >= 3, r = 1, n >= 6."""
    cyc = _left_column_start(n) + [(1, j) for j in _down(n - 1, 2)]
    cyc += _column_snake(_up(2, c - 2), [1, 2], False) + [(c - 1, 2)]
    cyc += [(i, 3) for i in _down(c - 1, 2)]
    cyc += _column_snake(_up(2, c - 1), _up(4, n - 1), True)
    cyc += [(c, j) for j in _down(n - 1, 1)] + [(c, 0), (c - 1, 1), (c - 1, 0)]
    cyc += [(i, 0) for i in _down(c - 2, 2)]
    return cyc


def _odd_row0(c: int, n: int, r: int) -> list[Vertex]:
    """c odd >= 3, r = 0, n >= 6."""
    cyc = _left_column_start(n) + [(i, n - 1) for i in _up(1, c - 1)]
    cyc += [(c, 0), (c, n - 1), (c, n - 2)] + [(i, n - 2) for i in _down(c - 1, 1)]
    cyc += _column_snake(_up(1, c), _up(2, n - 3), False) + [(c, 1)]
    cyc += _column_snake(_down(c - 1, 2), [0, 1], False)
    return cyc


# Height-4 cylinders are too short for the patterns above; these small cycles are
# widened two columns at a time.
_HEIGHT4_BASES: dict[tuple[int, int], tuple[Vertex, ...]] = {
    (2, 1): ((1, 1), (2, 1), (1, 0), (2, 0), (2, 3), (2, 2), (1, 2), (1, 3), (0, 3), (0, 2), (0, 1), (0, 0)),
    (2, 2): ((1, 1), (2, 1), (1, 2), (2, 2), (2, 3), (2, 0), (1, 0), (1, 3), (0, 3), (0, 2), (0, 1), (0, 0)),
    (4, 1): (
        (1, 1), (0, 1), (0, 2), (1, 2), (2, 2), (2, 3), (3, 3), (4, 3), (4, 0), (3, 0),
        (4, 1), (4, 2), (3, 2), (3, 1), (2, 1), (2, 0), (1, 0), (1, 3), (0, 3), (0, 0),
    ),
    (4, 2): (
        (1, 1), (0, 1), (0, 2), (1, 2), (2, 2), (2, 3), (3, 3), (4, 3), (4, 2), (3, 2),
        (4, 1), (4, 0), (3, 0), (3, 1), (2, 1), (2, 0), (1, 0), (1, 3), (0, 3), (0, 0),
    ),
    (3, 0): (
        (1, 1), (0, 1), (0, 2), (1, 2), (2, 2), (3, 2), (3, 3), (2, 3),
        (3, 0), (3, 1), (2, 1), (2, 0), (1, 0), (1, 3), (0, 3), (0, 0),
    ),
    (3, 1): (
        (1, 1), (0, 1), (0, 2), (1, 2), (2, 2), (3, 2), (3, 1), (2, 1),
        (3, 0), (3, 3), (2, 3), (2, 0), (1, 0), (1, 3), (0, 3), (0, 0),
    ),
    (3, 2): (
        (1, 1), (0, 1), (0, 2), (1, 2), (2, 2), (3, 2), (2, 1), (3, 1),
        (3, 0), (3, 3), (2, 3), (2, 0), (1, 0), (1, 3), (0, 3), (0, 0),
    ),
    (3, 3): (
        (1, 1), (0, 1), (0, 2), (1, 2), (2, 2), (3, 2), (2, 3), (3, 3),
        (3, 0), (3, 1), (2, 1), (2, 0), (1, 0), (1, 3), (0, 3), (0, 0),
    ),
}


def widen(cycle: Sequence[Vertex], n: int, k: int) -> list[Vertex]:
    """Insert two new columns between columns k and k+1 of a cylinder cycle.

    Every crossing of that boundary is a horizontal edge.  Each crossing row is
    stretched across the new columns and also sweeps up through the
    non-crossing rows above it, so the new cells are covered exactly once.
    """
    size = len(cycle)

    def crosses(a: Vertex, b: Vertex) -> bool:
        return {a[0], b[0]} == {k, k + 1} and a[1] == b[1]

    crossing = {cycle[t][1] for t in range(size) if crosses(cycle[t], cycle[(t + 1) % size])}
    runs = {}
    for j in crossing:
        run = [j]
        while (run[-1] + 1) % n not in crossing:
            run.append((run[-1] + 1) % n)
        runs[j] = run
    out = []
    for t in range(size):
        a, b = cycle[t], cycle[(t + 1) % size]
        out.append((a[0] + 2, a[1]) if a[0] > k else a)
        if crosses(a, b):
            rows = runs[a[1]]
            detour = [(k + 1, j) for j in rows] + [(k + 2, j) for j in reversed(rows)]
            out += detour if a[0] == k else detour[::-1]
    return out


def _height4_cycle(c: int, r: int) -> list[Vertex]:
    if c == 2:
        return list(_HEIGHT4_BASES[(2, r)])
    base_c = 4 if c % 2 == 0 else 3
    cyc = list(_HEIGHT4_BASES[(base_c, r)])
    for _ in range((c - base_c) // 2):
        cyc = widen(cyc, 4, 1)
    return cyc


def cylinder_cycle(c: int, n: int, r: int) -> list[Vertex]:
    """Hamilton cycle of columns 0..c (no wrap edges) through e1 and e2.

    e1 = (0,0)-(1,1), e2 = white diagonal of face (c, r); r = 0 with c even is
    handled by the caller through the role swap.
    """
    if c == 1:
        if r == 1:
            raise ValueError("e2 would share e1's face")
        return _ladder(n, r)
    if c % 2 == 0:
        if r == 0:
            raise ValueError("face (even, 0) is reached through the role swap")
        if r % 2 == 1 and r >= 3:
            return _even_high_odd_row(c, n, r)
        if n == 4:
            return _height4_cycle(c, r)
        if r == 1:
            return _even_row1(c, n, r)
        if r == 2:
            return _even_row2(c, n, r)
        return _even_high_even_row(c, n, r)
    if n == 4:
        return _height4_cycle(c, r)
    if r == 0:
        return _odd_row0(c, n, r)
    if r == 1:
        return _odd_row1(c, n, r)
    if r == 2:
        return _odd_row2(c, n, r)
    if r == n - 1:
        return _odd_top_row(c, n, r)
    if r == n - 2:
        return _odd_second_top_row(c, n, r)
    return _odd_middle_row(c, n, r)


def absorb_right(cycle: Sequence[Vertex], c: int, m: int, n: int) -> list[Vertex]:
    """Extend a cycle of columns 0..c to columns 0..m-1.

    A vertical edge (c,j)-(c,j') of the cycle is replaced by a horizontal zigzag
    over columns c+1..m-1 that starts in row j and ends in row j'.
    """
    if c == m - 1:
        return list(cycle)
    size = len(cycle)
    for t in range(size):
        a, b = cycle[t], cycle[(t + 1) % size]
        if a[0] == c and b[0] == c:
            step = -((b[1] - a[1]) % n == 1) or 1  # walk away from b's row
            rows = [(a[1] + step * s) % n for s in range(n)]
            return list(cycle[: t + 1]) + _row_snake(rows, c + 1, m - 1, True) + list(cycle[t + 1 :])
    raise ConstructionError("no vertical edge in the last column")


# --- case 1 -------------------------------------------------------------------


def case1(params: TorusParams, er: int, ec: int) -> HamCycle:
    """Cycle through (0,0)-(1,1) and the white diagonal of face (ec, er)."""
    return _verified(params, *_case1(params, er, ec))


def _case1(params: TorusParams, er: int, ec: int) -> tuple[list[Vertex], list[tuple[Vertex, Vertex]]]:
    m, n = params.m, params.n
    if not 1 <= ec <= m - 1:
        raise ValueError(f"column {ec} is not normalized for m={m}")
    e1 = ((0, 0), (1, 1))
    e2 = _white_diagonal(ec, er, n)
    if er == 0 and ec % 2 == 0:
        t = sym.case13_swap(params, ec)
        inner, _ = _case1(t.target, 2, ec)
        seq = t.inverse().map_vertices(inner)
    else:
        cyl = cylinder_cycle(ec, n, er)
        seq = [(i, j % n) for i, j in absorb_right(cyl, ec, m, n)]
    return seq, [e1, e2]


def _verified(params: TorusParams, seq: Sequence[Vertex], required: list[tuple[Vertex, Vertex]]) -> HamCycle:
    """Check a locally built sequence against the base graph plus its required edges."""
    return _checked(_with_extra(build(params), required), seq, required)


def _with_extra(g: Graph, extra: Iterable[tuple[Vertex, Vertex]]) -> Graph:
    """Base graph plus raw edges (used inside a normalized frame)."""
    edges = list(g.edges) + [Edge(*edge_key(u, v), EdgeKind.DIAGONAL) for u, v in extra]
    return Graph(g.params, tuple(edges), g.diagonals, parent=g)


# --- case 2 -------------------------------------------------------------------


def _ladder_zigzag(rows: Iterable[int], first_col: int) -> list[Vertex]:
    out = []
    col = first_col
    for row in rows:
        out += [(col, row), (1 - col, row)]
        col = 1 - col
    return out


def case2(params: TorusParams, i: int, j: int) -> HamCycle:
    """m = 2: cycle through (0,0)-(1,1) and (0,i)-(1,j), i odd, j even."""
    return _verified(params, *_case2(params, i, j))


def _case2(params: TorusParams, i: int, j: int) -> tuple[list[Vertex], list[tuple[Vertex, Vertex]]]:
    n = params.n
    if params.m != 2 or i % 2 != 1 or j % 2 != 0:
        raise ValueError("case 2 needs m = 2, i odd, j even")
    head = [(0, 0)] + _ladder_zigzag(_up(1, i), 1)  # ends at (0, i)
    if i < j or j == 0:
        jj = j if i < j else n
        seq = head + [(1, y % n) for y in _down(jj, i + 1)] + [(0, y % n) for y in _up(i + 1, jj)]
        seq += _ladder_zigzag(_up(jj + 1, n - 1), 0) + [(1, 0)]
        seq = seq[: len(seq) - 1] if jj == n else seq
    else:
        head = [(0, 0)] + _ladder_zigzag(_up(1, j), 1)  # ends at (1, j)
        seq = head + [(0, y) for y in _down(i, j + 1)] + [(1, y) for y in _up(j + 1, i)]
        seq += _ladder_zigzag(_up(i + 1, n - 1), 1) + [(1, 0)]
    e1, e2 = ((0, 0), (1, 1)), ((0, i), (1, j))
    return _dedupe_tail(seq), [e1, e2]


def _dedupe_tail(seq: list[Vertex]) -> list[Vertex]:
    return seq[:-1] if len(seq) > 1 and seq[-1] == seq[0] else seq


# --- case 3: one column, circulant graph -------------------------------------


def _as_vertices(seq: Iterable[int], n: int) -> list[Vertex]:
    return [(0, x % n) for x in seq]


def _chord_edges(chords: Iterable[tuple[int, int]], n: int) -> list[tuple[Vertex, Vertex]]:
    return [edge_key((0, a % n), (0, b % n)) for a, b in chords]


def case3_crossing(params: TorusParams, k1: int, k2: int, a: int) -> HamCycle:
    """Crossing chords e1 = (0,k1), e2 = (a, a+k2)."""
    return _verified(params, *_case3_crossing(params, k1, k2, a))


def _case3_crossing(params: TorusParams, k1: int, k2: int, a: int) -> tuple[list[Vertex], list[tuple[Vertex, Vertex]]]:
    """The stretches 0..q and q..2q+1 are laid side by side as a ladder whose rungs
    are q-chords; a zigzag up the ladder passes the e2 gadget and the rest of C
    closes the cycle.
    """
    n, q = params.n, params.q
    if params.m != 1 or not 3 <= q < n / 2:
        raise ValueError("case 3 needs m = 1 and 3 <= q < n/2")
    if not (1 <= a <= k1 - 1 and k1 + 1 <= a + k2 <= k1 + k2 - 1):
        raise ValueError("chords are not in crossing position")
    left = lambda y: y  # noqa: E731
    right = lambda y: y + q  # noqa: E731
    if k1 == q + 1:
        seq = [0]
        for y in range(1, a):
            seq += [right(y), left(y)] if y % 2 else [left(y), right(y)]
        if k2 == q + 1:
            seq += [right(a), left(a)]
        else:
            seq += [left(a), right(a)]
        if a < q:
            seq += [right(a + 1), left(a + 1)]
        for y in range(a + 2, q + 1):
            seq += [left(y), right(y)] if (y - a) % 2 == 0 else [right(y), left(y)]
        seq += list(range(2 * q + 1, n))
    elif k1 == q - 1 and k2 == q - 1:
        seq = [0, q - 1, q]
        for y in range(1, a):
            seq += [right(y), left(y)] if y % 2 else [left(y), right(y)]
        for y in range(a, q - 1):
            seq += [left(y), right(y)] if (y - a) % 2 == 0 else [right(y), left(y)]
        seq += list(range(2 * q - 1, n))
    else:
        raise ValueError(f"chord lengths {k1}, {k2} do not match q = {q}")
    return _as_vertices(seq, n), _chord_edges([(0, k1), (a, a + k2)], n)


@dataclass(frozen=True)
class CyclePartition:
    n: int
    q: int
    c1: tuple[int, int]
    d: tuple[tuple[int, int], ...]
    m_edges: tuple[tuple[int, int], ...]
    c2: tuple[int, int]
    e: tuple[tuple[int, int], ...]
    n_edges: tuple[tuple[int, int], ...]

    @property
    def p(self) -> int:
        return len(self.d)

    @property
    def r(self) -> int:
        return len(self.e)

    def runs(self) -> list[tuple[int, int]]:
        return [self.c1, *self.d, self.c2, *self.e]

    def covered(self) -> list[int]:
        out = []
        for lo, hi in self.runs():
            out += range(lo, hi + 1)
        for u, v in self.m_edges + self.n_edges:
            out += [u, v]
        return sorted(out)


def partition_sequence(n: int, q: int, k1: int, k2: int, a: int) -> CyclePartition:
    """Split Z_n into C1, D_0..D_{p-1}, M, C2, E_0..E_{r-1}, N along C."""
    if q % 2 == 0 or k1 % 2 or k2 % 2 or a % 2 == 0:
        raise ValueError("need q odd, k1 and k2 even, a odd")
    if not (a >= k1 + 1 and a + k2 <= n - 1):
        raise ValueError("chords are not in non-crossing position")
    x = lambda i: k1 + 1 + i * (q + 1)  # noqa: E731
    y = lambda i: a + k2 + 1 + i * (q + 1)  # noqa: E731
    p = max(i for i in range(n + 1) if x(i) <= a)
    r = max(i for i in range(n + 1) if y(i) <= n)
    d = tuple((x(i), x(i) + q) for i in range(p))
    e = tuple((y(i), y(i) + q) for i in range(r))
    m_edges = tuple((v, v + 1) for v in range(x(p), a, 2))
    n_edges = tuple((v, v + 1) for v in range(y(r), n, 2))
    return CyclePartition(n, q, (0, k1), d, m_edges, (a, a + k2), e, n_edges)


class LinkedCycle:
    """A cycle on Z_n stored as a neighbor map, so edge swaps are constant-time."""

    def __init__(self, nbrs: dict[int, list[int]] | None = None) -> None:
        self.nbrs: dict[int, list[int]] = nbrs if nbrs is not None else {}

    @classmethod
    def closed_run(cls, lo: int, hi: int) -> "LinkedCycle":
        """Path lo..hi closed by the chord (hi, lo)."""
        cyc = cls()
        for v in range(lo, hi):
            cyc.add_edge(v, v + 1)
        cyc.add_edge(hi, lo)
        return cyc

    def copy(self) -> "LinkedCycle":
        return LinkedCycle({v: list(ns) for v, ns in self.nbrs.items()})

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbrs.get(u, ())

    def add_edge(self, u: int, v: int) -> None:
        self.nbrs.setdefault(u, []).append(v)
        self.nbrs.setdefault(v, []).append(u)

    def remove_edge(self, u: int, v: int) -> None:
        if not self.has_edge(u, v):
            raise ValueError(f"edge ({u},{v}) is not in the cycle")
        self.nbrs[u].remove(v)
        self.nbrs[v].remove(u)

    def absorb(self, other: "LinkedCycle") -> None:
        if set(self.nbrs) & set(other.nbrs):
            raise ValueError("cycles overlap")
        self.nbrs.update({v: list(ns) for v, ns in other.nbrs.items()})

    def sequence(self) -> list[int]:
        start = min(self.nbrs)
        seq, prev, cur = [start], None, start
        while True:
            a, b = self.nbrs[cur]
            nxt = b if a == prev else a
            if nxt == start:
                break
            seq.append(nxt)
            prev, cur = cur, nxt
        if len(seq) != len(self.nbrs):
            raise ValueError("neighbor map is not a single cycle")
        return seq

    def __len__(self) -> int:
        return len(self.nbrs)


def _cc_link_inplace(z: LinkedCycle, zp: LinkedCycle, i: int, q: int, n: int) -> None:
    a, b, c, d = i % n, (i + 1) % n, (i + q) % n, (i + q + 1) % n
    if not z.has_edge(a, b) or not zp.has_edge(c, d):
        raise ValueError(f"edge ({a},{b}) or its mate ({c},{d}) is missing")
    z.absorb(zp)
    z.remove_edge(a, b)
    z.remove_edge(c, d)
    z.add_edge(a, c)
    z.add_edge(b, d)


def _ce_link_inplace(z: LinkedCycle, i: int, q: int, n: int, forward: bool = True) -> None:
    a, b = i % n, (i + 1) % n
    s = q if forward else -q
    c, d = (i + s) % n, (i + s + 1) % n
    if c in z.nbrs or d in z.nbrs:
        raise ValueError(f"mate ({c},{d}) meets the cycle")
    z.remove_edge(a, b)
    z.add_edge(a, c)
    z.add_edge(c, d)
    z.add_edge(d, b)


def cc_link(z: LinkedCycle, zp: LinkedCycle, i: int, q: int, n: int) -> LinkedCycle:
    """Merge two disjoint cycles by swapping (i,i+1), (i+q,i+q+1) for two q-chords."""
    out = z.copy()
    _cc_link_inplace(out, zp, i, q, n)
    return out


def ce_link(z: LinkedCycle, i: int, q: int, n: int, forward: bool = True) -> LinkedCycle:
    """Absorb the mate of (i,i+1) into z by the detour i, mate, i+1."""
    out = z.copy()
    _ce_link_inplace(out, i, q, n, forward)
    return out


def linking_edges(run: tuple[int, int], next_run: tuple[int, int], q: int) -> tuple[int, int]:
    """Smaller ends of the odd and even forward-linking edges of a run.

    These are the last two edges of the run along C; their forward mates lie in
    the next run.
    """
    lo, last = run
    if last - lo < 2:
        raise ValueError("run too short to carry linking edges")
    cands = (last - 2, last - 1)
    for s in cands:
        if not (next_run[0] <= s + q and s + q + 1 <= next_run[1]):
            raise ValueError(f"mate of ({s},{s + 1}) is not in the next run")
    odd = next(s for s in cands if s % 2 == 1)
    even = next(s for s in cands if s % 2 == 0)
    return odd, even


def _merge_chain(runs: list[tuple[int, int]], matching: Sequence[tuple[int, int]], parity: int, q: int, n: int) -> LinkedCycle:
    """CC-link consecutive runs through forward edges of the given parity, then
    CE-link each matching edge from the last run through its backward mate."""
    cyc = LinkedCycle.closed_run(*runs[0])
    for run, nxt in zip(runs, runs[1:]):
        odd, even = linking_edges(run, nxt, q)
        _cc_link_inplace(cyc, LinkedCycle.closed_run(*nxt), odd if parity else even, q, n)
    for u, _ in matching:
        _ce_link_inplace(cyc, u - q, q, n, forward=True)
    return cyc


def case3_noncrossing(params: TorusParams, k1: int, k2: int, a: int) -> HamCycle:
    """Non-crossing chords e1 = (0,k1), e2 = (a, a+k2)."""
    return _verified(params, *_case3_noncrossing(params, k1, k2, a))


def _case3_noncrossing(params: TorusParams, k1: int, k2: int, a: int) -> tuple[list[Vertex], list[tuple[Vertex, Vertex]]]:
    n, q = params.n, params.q
    if params.m != 1 or not 3 <= q < n / 2:
        raise ValueError("case 3 needs m = 1 and 3 <= q < n/2")
    part = partition_sequence(n, q, k1, k2, a)
    if not part.m_edges:
        cyc = _merge_chain(part.runs(), part.n_edges, 1, q, n)
    else:
        h2 = _merge_chain([part.c2, *part.e], part.n_edges, 1, q, n)
        h1 = _merge_chain([part.c1, *part.d], part.m_edges, 0, q, n)
        _cc_link_inplace(h1, h2, part.m_edges[0][0], q, n)
        cyc = h1
    return _as_vertices(cyc.sequence(), n), _chord_edges([(0, k1), (a, a + k2)], n)


# --- dispatch -------------------------------------------------------------------


def ham_through_two_diagonals(params: TorusParams, e1: DiagonalSpec, e2: DiagonalSpec, verify: bool = True) -> HamCycle:
    """Hamilton cycle of Q(m,n;q) + e1 + e2 containing both diagonals.

    The result is checked against the augmented graph unless ``verify`` is
    false, for callers that run their own check.
    """
    if e1.color is not Color.BLACK or e2.color is not Color.WHITE:
        raise ValueError("expected a black diagonal and a white diagonal")
    if params.m == 1:
        frame = sym.normalize_case3(params, e1, e2)
        local = TorusParams(1, params.n, frame.q)
        build_fn = _case3_crossing if frame.crossing else _case3_noncrossing
        inner, _ = build_fn(local, frame.k1, frame.k2, frame.a)
    elif params.m == 2 and e1.face.column != e2.face.column:
        frame = sym.normalize_case2(params, e1, e2)
        inner, _ = _case2(frame.transform.target, frame.i, frame.j)
    else:
        frame = sym.normalize_case1(params, e1, e2)
        inner, _ = _case1(frame.transform.target, frame.er, frame.ec)
    seq = frame.transform.inverse().map_vertices(inner)
    if not verify:
        return HamCycle.from_sequence(seq)
    g = add_diagonals(build(params), [e1, e2])
    return _checked(g, seq, [diagonal_endpoints(params, e1), diagonal_endpoints(params, e2)])


# --- base edges and the full cover ----------------------------------------------


def base_template(params: TorusParams) -> list[Vertex]:
    """A hamilton cycle of the base graph using vertical and horizontal edges."""
    m, n, q = params.m, params.n, params.q
    if m == 1:
        return _as_vertices([0, *range(q, 0, -1), *range(q + 1, n)], n)
    if n % 2:
        raise ValueError("the snake template needs n even")
    return [(0, j) for j in range(n)] + _row_snake(_down(n - 1, 0), 1, m - 1, True)


def base_edge_cycle(params: TorusParams, e: tuple[Vertex, Vertex]) -> HamCycle:
    """Template cycle moved by a translation R^a U^b so that it passes through e.

    Translations are tried in lexicographic order of (a, b).
    """
    e = edge_key(*e)
    if e not in build(params).edge_set:
        raise ValueError(f"{e} is not an edge of {params}")
    try:
        return _translated_templates(params)[e]
    except KeyError:
        raise ConstructionError(f"no translation carries the template through {e}") from None


@lru_cache(maxsize=64)
def _translated_templates(params: TorusParams) -> dict[tuple[Vertex, Vertex], HamCycle]:
    """First translated template through each base edge, each checked once."""
    g = build(params)
    template = base_template(params)
    out: dict[tuple[Vertex, Vertex], HamCycle] = {}
    for a in range(params.m):
        for b in range(params.n):
            moved = sym.compose(params, (sym.R, a), (sym.U, b)).map_vertices(template)
            size = len(moved)
            fresh = [e for k in range(size) if (e := edge_key(moved[k], moved[(k + 1) % size])) not in out]
            if fresh:
                cyc = _checked(g, moved, fresh)
                out.update(dict.fromkeys(fresh, cyc))
            if len(out) == len(g.edge_set):
                return out
    return out


def edge_ham_cover(
    params: TorusParams, black: Sequence[DiagonalSpec], white: DiagonalSpec
) -> dict[tuple[Vertex, Vertex], HamCycle]:
    """A verified hamilton cycle through every edge of G + black diagonals + white."""
    if not black:
        raise ValueError("the set of black diagonals must be nonempty")
    full = add_diagonals(build(params), [*black, white])
    white_edge = diagonal_endpoints(params, white)
    cover: dict[tuple[Vertex, Vertex], HamCycle] = {}
    for edge in full.edges:
        if edge.kind is not EdgeKind.DIAGONAL:
            cover[edge.key] = base_edge_cycle(params, edge.key)
        elif edge.key == white_edge:
            cover[edge.key] = ham_through_two_diagonals(params, black[0], white, verify=False)
        else:
            diag = next(d for d in black if diagonal_endpoints(params, d) == edge.key)
            cover[edge.key] = ham_through_two_diagonals(params, diag, white, verify=False)
    # several edges share a cycle; check each distinct cycle once against all of them
    served: dict[tuple[Vertex, ...], list[tuple[Vertex, Vertex]]] = {}
    for key, cyc in cover.items():
        served.setdefault(cyc.vertices, []).append(key)
    for vertices, keys in served.items():
        report = verify_cycle(full, vertices, keys)
        if not report.ok:
            raise ConstructionError(f"cover entry for {keys[0]} failed: {report.violations[:3]}")
    return cover
