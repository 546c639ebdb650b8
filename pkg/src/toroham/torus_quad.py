"""The quadrangulations Q(m, n; q): parameters, faces, coloring and diagonals.

Q(m, n; q) is the cartesian product of an m-vertex path and an n-vertex
cycle, closed into a torus by joining (m-1, j) to (0, j+q).  Vertices are
pairs ``(i, j)`` with ``0 <= i < m`` and ``0 <= j < n``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple

Vertex = tuple[int, int]


class Color(Enum):
    BLACK = "black"
    WHITE = "white"

    @property
    def other(self) -> "Color":
        return Color.WHITE if self is Color.BLACK else Color.BLACK


class EdgeKind(Enum):
    VERTICAL = "vertical"
    HORIZONTAL_INTERIOR = "horizontal"
    HORIZONTAL_WRAP = "wrap"
    DIAGONAL = "diagonal"


def edge_key(u: Vertex, v: Vertex) -> tuple[Vertex, Vertex]:
    """Order-independent key for an undirected edge."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class TorusParams:
    """Width ``m``, height ``n`` and shift ``q`` (stored reduced mod n)."""

    m: int
    n: int
    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or not isinstance(self.n, int) or not isinstance(self.q, int):
            raise TypeError("m, n, q must be integers")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"need m >= 1 and n >= 1, got m={self.m}, n={self.n}")
        object.__setattr__(self, "q", self.q % self.n)

    @property
    def num_vertices(self) -> int:
        return self.m * self.n

    @property
    def simple(self) -> bool:
        return is_simple(self)

    @property
    def bipartite(self) -> bool:
        # Equivalence with an actual 2-coloring is checked against the oracle in tests.
        return self.n % 2 == 0 and (self.m - self.q) % 2 == 0

    def vertices(self) -> list[Vertex]:
        return [(i, j) for i in range(self.m) for j in range(self.n)]

    def __str__(self) -> str:
        return f"Q({self.m},{self.n};{self.q})"


class Edge(NamedTuple):
    u: Vertex
    v: Vertex
    kind: EdgeKind

    @property
    def key(self) -> tuple[Vertex, Vertex]:
        return edge_key(self.u, self.v)


class Face(NamedTuple):
    """A face keyed by column and row.

    Column-0 faces are keyed by the row of their bottom-left corner (m-1, row).
    """

    column: int
    row: int


@dataclass(frozen=True)
class DiagonalSpec:
    face: Face
    color: Color

    def __post_init__(self) -> None:
        object.__setattr__(self, "face", Face(*self.face))


@dataclass(frozen=True)
class Graph:
    params: TorusParams
    edges: tuple[Edge, ...]
    diagonals: tuple[DiagonalSpec, ...] = ()
    # graph this one extends by appending edges; lets lookups be derived incrementally
    parent: "Graph | None" = field(default=None, compare=False, repr=False)

    @property
    def vertices(self) -> list[Vertex]:
        return self.params.vertices()

    @cached_property
    def adjacency(self) -> dict[Vertex, list[Vertex]]:
        """Neighbor lists with multiplicity (loops listed twice)."""
        adj: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    @cached_property
    def neighbor_sets(self) -> dict[Vertex, frozenset[Vertex]]:
        """Distinct neighbors, loops dropped."""
        if self.parent is None:
            return {v: frozenset(w for w in ns if w != v) for v, ns in self.adjacency.items()}
        out = dict(self.parent.neighbor_sets)
        for u, v, _ in self._added_edges():
            if u != v:
                out[u] = out[u] | {v}
                out[v] = out[v] | {u}
        return out

    @cached_property
    def edge_set(self) -> frozenset[tuple[Vertex, Vertex]]:
        if self.parent is None:
            return frozenset(e.key for e in self.edges)
        return self.parent.edge_set | {e.key for e in self._added_edges()}

    def _added_edges(self) -> tuple[Edge, ...]:
        return self.edges[len(self.parent.edges):]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return edge_key(u, v) in self.edge_set

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: Vertex) -> list[Vertex]:
        return sorted(set(self.adjacency[v]))

    @cached_property
    def diagonal_edges(self) -> tuple[tuple[Vertex, Vertex], ...]:
        return tuple(e.key for e in self.edges if e.kind is EdgeKind.DIAGONAL)


def _base_edges(params: TorusParams) -> list[Edge]:
    m, n, q = params.m, params.n, params.q
    edges = []
    for i in range(m):
        for j in range(n):
            edges.append(Edge(*edge_key((i, j), (i, (j + 1) % n)), EdgeKind.VERTICAL))
            if i < m - 1:
                edges.append(Edge((i, j), (i + 1, j), EdgeKind.HORIZONTAL_INTERIOR))
            else:
                edges.append(Edge(*edge_key((i, j), (0, (j + q) % n)), EdgeKind.HORIZONTAL_WRAP))
    return edges


_KIND_ORDER = {kind: kind.value for kind in EdgeKind}


@lru_cache(maxsize=256)
def build(params: TorusParams) -> Graph:
    """Q(m,n;q) with edges sorted by endpoints (each edge stored with its smaller end first)."""
    edges = sorted(_base_edges(params), key=lambda e: (e.u, e.v, _KIND_ORDER[e.kind]))
    return Graph(params, tuple(edges))


@lru_cache(maxsize=4096)
def is_simple(params: TorusParams) -> bool:
    """True iff Q(m,n;q) has no loops or parallel edges (found by scanning)."""
    keys = [e.key for e in _base_edges(params)]
    if any(u == v for u, v in keys):
        return False
    return max(Counter(keys).values()) == 1


def vertex_color(params: TorusParams, v: Vertex) -> Color:
    if not params.bipartite:
        raise ValueError(f"{params} is not bipartite")
    i, j = v
    return Color.BLACK if (i + j) % 2 == 0 else Color.WHITE


def faces(params: TorusParams) -> list[Face]:
    return [Face(c, r) for c in range(params.m) for r in range(params.n)]


def face_corners(params: TorusParams, f: Face) -> tuple[Vertex, Vertex, Vertex, Vertex]:
    """Corners in cyclic order: bottom-left, bottom-right, top-right, top-left."""
    m, n, q = params.m, params.n, params.q
    c, r = f
    if not (0 <= c < m and 0 <= r < n):
        raise ValueError(f"face {f} out of range for {params}")
    if c == 0:
        return ((m - 1, r), (0, (r + q) % n), (0, (r + q + 1) % n), (m - 1, (r + 1) % n))
    return ((c - 1, (r - 1) % n), (c, (r - 1) % n), (c, r), (c - 1, r))


def diagonal_endpoints(params: TorusParams, d: DiagonalSpec) -> tuple[Vertex, Vertex]:
    a, b, c, e = face_corners(params, d.face)
    for u, v in ((a, c), (b, e)):
        if vertex_color(params, u) is d.color and vertex_color(params, v) is d.color:
            return edge_key(u, v)
    raise RuntimeError(f"face {d.face} of {params} has no {d.color.value} diagonal")


def diagonal_slope(params: TorusParams, d: DiagonalSpec) -> int:
    """+1 if the diagonal joins bottom-left to top-right, else -1."""
    a, _, c, _ = face_corners(params, d.face)
    return 1 if diagonal_endpoints(params, d) == edge_key(a, c) else -1


def add_diagonals(g: Graph, ds: Iterable[DiagonalSpec]) -> Graph:
    ds = tuple(ds)
    used = [d.face for d in g.diagonals]
    new_edges = list(g.edges)
    present = set(g.edge_set)
    for d in ds:
        if d.face in used:
            raise ValueError(f"face {d.face} already carries a diagonal")
        used.append(d.face)
        u, v = diagonal_endpoints(g.params, d)
        if edge_key(u, v) in present:
            raise ValueError(f"diagonal {u}-{v} duplicates an existing edge")
        present.add(edge_key(u, v))
        new_edges.append(Edge(u, v, EdgeKind.DIAGONAL))
    return Graph(g.params, tuple(new_edges), g.diagonals + ds, parent=g)


def chord_length(n: int, u: int, v: int) -> int:
    """Cyclic distance between positions u and v on an n-cycle."""
    d = (u - v) % n
    return min(d, n - d)


def diagonal_color_of(params: TorusParams, edge: tuple[Vertex, Vertex]) -> Color:
    """Color of a monochromatic edge, used to sort diagonals by role."""
    cu = vertex_color(params, edge[0])
    if cu is not vertex_color(params, edge[1]):
        raise ValueError(f"edge {edge} is not monochromatic")
    return cu


@dataclass(frozen=True)
class Instance:
    """Parameters together with a diagonal placement."""

    params: TorusParams
    diagonals: tuple[DiagonalSpec, ...] = field(default=())

    def graph(self) -> Graph:
        return add_diagonals(build(self.params), self.diagonals)
