"""Symmetries U, R, F1, F2 of Q(m,n;q) and the normalizations used by the builder.

Vertices are treated as points of the plane Z^2 modulo the lattice spanned by
(m, -q) and (0, n).  Every transform built from the generators is an affine map
(X, Y) -> (sx*X + tx, sy*Y + ty) followed by reduction in the target graph,
whose shift is sx*sy*q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

from .torus_quad import (
    Color,
    DiagonalSpec,
    Face,
    TorusParams,
    Vertex,
    build,
    chord_length,
    diagonal_endpoints,
    diagonal_slope,
    edge_key,
    faces,
    vertex_color,
)


def reduce_point(params: TorusParams, x: int, y: int) -> Vertex:
    """Vertex represented by the lifted point (x, y)."""
    k, i = divmod(x, params.m)
    return (i, (y + k * params.q) % params.n)


@dataclass(frozen=True, eq=False)
class Transform:
    source: TorusParams
    sx: int
    sy: int
    tx: int
    ty: int
    word: tuple[str, ...] = field(default=())

    @cached_property
    def target(self) -> TorusParams:
        return TorusParams(self.source.m, self.source.n, self.sx * self.sy * self.source.q)

    def lifted(self, x: int, y: int) -> tuple[int, int]:
        return (self.sx * x + self.tx, self.sy * y + self.ty)

    def __call__(self, v: Vertex) -> Vertex:
        return apply(self, v)

    def map_vertices(self, vs: Iterable[Vertex]) -> list[Vertex]:
        """Images of many vertices (no range check)."""
        m, n, q = self.target.m, self.target.n, self.target.q
        sx, sy, tx, ty = self.sx, self.sy, self.tx, self.ty
        out = []
        for i, j in vs:
            k, x = divmod(sx * i + tx, m)
            out.append((x, (sy * j + ty + k * q) % n))
        return out

    def then(self, other: "Transform") -> "Transform":
        """Apply self first, then other."""
        if other.source != self.target:
            raise ValueError(f"cannot compose: {self.target} vs {other.source}")
        return Transform(
            self.source,
            other.sx * self.sx,
            other.sy * self.sy,
            other.sx * self.tx + other.tx,
            other.sy * self.ty + other.ty,
            self.word + other.word,
        )

    def inverse(self) -> "Transform":
        word = tuple(_invert_letter(w) for w in reversed(self.word))
        return Transform(self.target, self.sx, self.sy, -self.sx * self.tx, -self.sy * self.ty, word)

    @cached_property
    def table(self) -> tuple[Vertex, ...]:
        return tuple(apply(self, v) for v in self.source.vertices())

    def _key(self):
        return (self.source, self.target, self.table)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Transform):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Transform({' '.join(self.word) or 'id'} on {self.source})"


def _invert_letter(w: str) -> str:
    if w in ("F1", "F2"):
        return w
    base, _, exp = w.partition("^")
    k = int(exp) if exp else 1
    return f"{base}^{-k}"


def identity(params: TorusParams) -> Transform:
    return Transform(params, 1, 1, 0, 0)


def U(params: TorusParams, k: int = 1) -> Transform:
    return Transform(params, 1, 1, 0, k, (f"U^{k}",))


def R(params: TorusParams, k: int = 1) -> Transform:
    return Transform(params, 1, 1, k, 0, (f"R^{k}",))


def F1(params: TorusParams) -> Transform:
    return Transform(params, 1, -1, 0, 0, ("F1",))


def F2(params: TorusParams) -> Transform:
    return Transform(params, -1, 1, params.m - 1, 0, ("F2",))


def compose(params: TorusParams, *steps) -> Transform:
    """Chain generator constructors, e.g. compose(p, U, (R, 3), F2)."""
    t = identity(params)
    for step in steps:
        if isinstance(step, tuple):
            gen, k = step
            nxt = gen(t.target, k)
        else:
            nxt = step(t.target)
        t = t.then(nxt)
    return t


def apply(t: Transform, v: Vertex) -> Vertex:
    i, j = v
    if not (0 <= i < t.source.m and 0 <= j < t.source.n):
        raise ValueError(f"vertex {v} is not in {t.source}")
    return reduce_point(t.target, *t.lifted(i, j))


def apply_edge(t: Transform, e: tuple[Vertex, Vertex]) -> tuple[Vertex, Vertex]:
    return edge_key(apply(t, e[0]), apply(t, e[1]))


def is_automorphism(t: Transform, params: TorusParams | None = None) -> bool:
    """True iff t maps the edge set of its source bijectively onto that of its target."""
    if params is not None and params != t.source:
        return False
    src, dst = build(t.source), build(t.target)
    if len(set(t.table)) != t.source.num_vertices:
        return False
    image = sorted(apply_edge(t, e.key) for e in src.edges)
    return image == sorted(e.key for e in dst.edges)


# --- faces as unit squares of the lifted plane -------------------------------


class Square(NamedTuple):
    """Unit square with lower-left lifted corner (x, y) and diagonal slope +-1."""

    x: int
    y: int
    slope: int

    def endpoints(self) -> tuple[tuple[int, int], tuple[int, int]]:
        if self.slope > 0:
            return (self.x, self.y), (self.x + 1, self.y + 1)
        return (self.x + 1, self.y), (self.x, self.y + 1)


def face_square(params: TorusParams, f: Face) -> tuple[int, int]:
    c, r = f
    if c == 0:
        return (params.m - 1, r)
    return (c - 1, (r - 1) % params.n)


def square_face(params: TorusParams, x: int, y: int) -> Face:
    x, y = reduce_point(params, x, y)
    if x == params.m - 1:
        return Face(0, y)
    return Face(x + 1, (y + 1) % params.n)


def diagonal_square(params: TorusParams, d: DiagonalSpec) -> Square:
    x, y = face_square(params, d.face)
    return Square(x, y, diagonal_slope(params, d))


def square_endpoints(params: TorusParams, s: Square) -> tuple[Vertex, Vertex]:
    a, b = s.endpoints()
    return edge_key(reduce_point(params, *a), reduce_point(params, *b))


def apply_square(t: Transform, s: Square) -> Square:
    (x1, y1), (x2, y2) = (t.lifted(*p) for p in s.endpoints())
    slope = 1 if (x2 - x1) * (y2 - y1) > 0 else -1
    x, y = reduce_point(t.target, min(x1, x2), min(y1, y2))
    return Square(x, y, slope)


def apply_face(t: Transform, f: Face) -> Face:
    x, y = face_square(t.source, f)
    s = apply_square(t, Square(x, y, 1))
    return square_face(t.target, s.x, s.y)


def apply_diagonal(t: Transform, d: DiagonalSpec) -> tuple[Face, tuple[Vertex, Vertex]]:
    """Face and endpoints of the image of a diagonal."""
    s = apply_square(t, diagonal_square(t.source, d))
    return square_face(t.target, s.x, s.y), square_endpoints(t.target, s)


def diagonal_from_square(params: TorusParams, s: Square) -> DiagonalSpec:
    """The diagonal whose endpoints are the square's diagonal."""
    f = square_face(params, s.x, s.y)
    ends = square_endpoints(params, s)
    for color in Color:
        d = DiagonalSpec(f, color)
        if diagonal_endpoints(params, d) == ends:
            return d
    raise ValueError(f"square {s} does not carry a monochromatic diagonal")


def to_standard(params: TorusParams, s: Square) -> Transform:
    """Transform taking the diagonal of square s to (0,0)-(1,1)."""
    t = compose(params, (R, -s.x), (U, -s.y))
    if s.slope < 0:
        t = t.then(F1(t.target))
        t = t.then(U(t.target, 1))
    return t


# --- case normalizations ------------------------------------------------------


class Case1Frame(NamedTuple):
    transform: Transform
    e1: tuple[Vertex, Vertex]
    e2: tuple[Vertex, Vertex]
    ec: int
    er: int
    roles_swapped: bool


def _check_pair(params: TorusParams, e1: DiagonalSpec, e2: DiagonalSpec) -> None:
    if not (params.simple and params.bipartite):
        raise ValueError(f"{params} must be simple and bipartite")
    if e1.color is not Color.BLACK or e2.color is not Color.WHITE:
        raise ValueError("expected a black diagonal followed by a white diagonal")
    if e1.face == e2.face:
        raise ValueError("diagonals must lie in distinct faces")


def normalize_case1(params: TorusParams, e1: DiagonalSpec, e2: DiagonalSpec) -> Case1Frame:
    _check_pair(params, e1, e2)
    m = params.m
    if not (m >= 3 or (m == 2 and e1.face.column == e2.face.column)):
        raise ValueError("case 1 needs m >= 3, or m = 2 with both diagonals in one column")
    s1, s2 = diagonal_square(params, e1), diagonal_square(params, e2)
    swapped = (s2.x - s1.x) % m == m - 1 and m > 1
    first, second = (s2, s1) if swapped else (s1, s2)
    t = to_standard(params, first)
    img = apply_square(t, second)
    ec, er = square_face(t.target, img.x, img.y)
    if ec == 0:
        raise AssertionError("normalization left a diagonal in column 0")
    return Case1Frame(t, ((0, 0), (1, 1)), square_endpoints(t.target, img), ec, er, swapped)


def case13_swap(params: TorusParams, ec: int) -> Transform:
    """U, then R^(m-1-ec), then F2: exchanges the roles of the two diagonals.

    For e1 = (0,0)-(1,1) and e2 the white diagonal of face (ec, 0) with ec even,
    the image of e2 is (0,0)-(1,1) and the image of e1 lies in face (ec, 2).
    """
    return compose(params, U, (R, params.m - 1 - ec), F2)


class Case2Frame(NamedTuple):
    transform: Transform
    i: int
    j: int


def normalize_case2(params: TorusParams, e1: DiagonalSpec, e2: DiagonalSpec) -> Case2Frame:
    _check_pair(params, e1, e2)
    if params.m != 2 or e1.face.column == e2.face.column:
        raise ValueError("case 2 needs m = 2 with the diagonals in different columns")
    t = identity(params)
    if e1.face.column == 0:
        t = R(params)
    s1 = apply_square(t, diagonal_square(params, e1))
    t = t.then(to_standard(t.target, s1))
    s2 = apply_square(t, diagonal_square(params, e2))
    (u, v) = square_endpoints(t.target, s2)
    (i0, i), (j1, j) = (u, v) if u[0] == 0 else (v, u)
    assert (i0, j1) == (0, 1), (u, v)
    if i % 2 != 1 or j % 2 != 0:
        raise AssertionError(f"parity postcondition failed: i={i}, j={j}")
    return Case2Frame(t, i, j)


class Case3Frame(NamedTuple):
    transform: Transform
    q: int  # shift used by the construction, 3 <= q < n/2
    k1: int
    k2: int
    a: int
    crossing: bool


def chord_cross(c1: tuple[int, int], c2: tuple[int, int], n: int) -> bool:
    """True iff the endpoints of two chords interleave around Z_n."""
    a, b = c1
    if len({a % n, b % n, c2[0] % n, c2[1] % n}) < 4:
        raise ValueError("chords share an endpoint")
    lo, hi = sorted((a % n, b % n))
    inside = [lo < x % n < hi for x in c2]
    return inside[0] != inside[1]


def _chord(params: TorusParams, d: DiagonalSpec) -> tuple[int, int, int]:
    """(start, length, end) with start + length = end (mod n)."""
    n = params.n
    (_, u), (_, v) = diagonal_endpoints(params, d)
    k = chord_length(n, u, v)
    start = u if (u + k) % n == v else v
    return start, k, (start + k) % n


def normalize_case3(params: TorusParams, e1: DiagonalSpec, e2: DiagonalSpec) -> Case3Frame:
    _check_pair(params, e1, e2)
    n = params.n
    if params.m != 1:
        raise ValueError("case 3 needs m = 1")
    q = min(params.q, n - params.q)
    if not 3 <= q < n / 2:
        raise ValueError(f"need 3 <= q < n/2 up to sign, got {params}")
    c1, c2 = _chord(params, e1), _chord(params, e2)
    if c2[1] > c1[1]:
        c1, c2 = c2, c1
    # a chord of length n/2 reads the same from either end; only one end may work
    starts = [c1[0], c1[2]] if 2 * c1[1] == n else [c1[0]]
    for start in starts:
        frame = _case3_frame(params, q, start, c1[1], c2)
        if frame is not None:
            return frame
    raise AssertionError(f"case 3 normalization failed for chords {c1}, {c2}")


def _case3_frame(params: TorusParams, q: int, start: int, k1: int, c2: tuple[int, int, int]) -> Case3Frame | None:
    n, k2 = params.n, c2[1]
    t = U(params, -start)
    w = sorted(apply(t, (0, x))[1] for x in (c2[0], c2[2]))
    crossing = chord_cross((0, k1), tuple(w), n)
    if crossing:
        a = next(x for x in w if 0 < x < k1)
        b = w[1] if a == w[0] else w[0]
        if (b - a) % n != k2:
            t = t.then(F1(t.target))
            t = t.then(U(t.target, k1))
            a, b = k1 - a, k1 - b
        bounds_ok = 1 <= a <= k1 - 1 and k1 + 1 <= b % n <= k1 + k2 - 1
    else:
        a, b = w
        bounds_ok = a >= k1 + 1 and k1 + k2 + 1 <= b <= n - 1 and b - a == k2
    if not bounds_ok or a % 2 != 1:
        return None
    return Case3Frame(t, q, k1, k2, a, crossing)


def _generators(params: TorusParams) -> list[Transform]:
    return [U(params), R(params), *point_symmetries(params)[1:]]


def canonical_placements(params: TorusParams) -> list[tuple[Face, Face]]:
    """One (black face, white face) pair per orbit of the symmetry group.

    Translations act regularly on faces, so modulo translations a pair is fixed
    by the color of its black face's lower-left corner and the offset to the
    white face.  A color-swapping symmetry exchanges the roles of the two faces.
    The remaining generators are then merged by union-find on those states.
    """
    if not params.bipartite:
        return placements_by_pair_union(params)

    def state(fb: Face, fw: Face) -> tuple[int, Vertex]:
        (ux, uy), (wx, wy) = face_square(params, fb), face_square(params, fw)
        return (ux + uy) % 2, reduce_point(params, wx - ux, wy - uy)

    def pair(st: tuple[int, Vertex]) -> tuple[Face, Face]:
        parity, (dx, dy) = st
        return square_face(params, 0, parity), square_face(params, dx, parity + dy)

    states = [(parity, d) for parity in (0, 1) for d in params.vertices() if d != (0, 0)]
    moves = [(U(params), True)]
    moves += [(g, vertex_color(params, g((0, 0))) is Color.WHITE) for g in _generators(params)[2:]]
    parent = {st: st for st in states}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for st in states:
        fb, fw = pair(st)
        for g, swaps in moves:
            gb, gw = apply_face(g, fb), apply_face(g, fw)
            a, b = find(st), find(state(gw, gb) if swaps else state(gb, gw))
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes: dict = {}
    for st in states:
        classes.setdefault(find(st), []).append(pair(st))
    return sorted(min(members) for members in classes.values())


def placements_by_pair_union(params: TorusParams) -> list[tuple[Face, Face]]:
    """Reference orbit computation over all ordered face pairs (quadratic in the face count)."""
    fs = faces(params)
    moves = []
    for g in _generators(params):
        swaps = vertex_color(params, g((0, 0))) is Color.WHITE
        moves.append(({f: apply_face(g, f) for f in fs}, swaps))
    parent: dict[tuple[Face, Face], tuple[Face, Face]] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pairs = [(fb, fw) for fb in fs for fw in fs if fb != fw]
    for fb, fw in pairs:
        for image, swaps in moves:
            gb, gw = image[fb], image[fw]
            a, b = find((fb, fw)), find((gw, gb) if swaps else (gb, gw))
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [pr for pr in pairs if find(pr) == pr]


def point_symmetries(params: TorusParams) -> list[Transform]:
    """Identity, the half-turn F1 F2 and, when q = -q mod n, the reflections F1 and F2.

    Together with the translations these generate the symmetry group.
    """
    m, n = params.m, params.n
    out = [identity(params), F1(params).then(F2(TorusParams(m, n, -params.q)))]
    if params.q == (-params.q) % n:
        out += [F1(params), F2(params)]
    return out


def symmetry_group(params: TorusParams) -> list[Transform]:
    """Automorphisms generated by U and R, plus reflections whose target equals the source."""
    out: dict[tuple, Transform] = {}
    for base in point_symmetries(params):
        for a in range(params.m):
            for b in range(params.n):
                g = base.then(compose(base.target, (R, a), (U, b)))
                if g.target == params:
                    out.setdefault(g.table, g)
    return list(out.values())
