"""Exhaustive sweeps over small instances: the acceptance harness.

Each sweep walks every simple, bipartite, 4-connected Q(m,n;q) up to a vertex
bound and records one row per checked configuration.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterator

from . import ham_builder as hb
from . import oracle
from . import symmetry as sym
from .torus_quad import Color, DiagonalSpec, Face, TorusParams, add_diagonals, build, diagonal_endpoints, faces, vertex_color

MODES = ("prop2", "cover", "negative")


@dataclass
class SweepRow:
    instance: str
    case: str
    ok: bool
    detail: str = ""


@dataclass
class SweepReport:
    mode: str
    max_vertices: int
    rows: list[SweepRow] = field(default_factory=list)
    excluded: list[tuple[str, str]] = field(default_factory=list)
    instances: int = 0
    elapsed: float = 0.0

    @property
    def failures(self) -> list[SweepRow]:
        return [r for r in self.rows if not r.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "max_vertices": self.max_vertices,
            "instances": self.instances,
            "checked": len(self.rows),
            "failures": [asdict(r) for r in self.failures],
            "excluded": [{"instance": i, "reason": why} for i, why in self.excluded],
            "elapsed_seconds": round(self.elapsed, 3),
            "ok": self.ok,
        }


@lru_cache(maxsize=None)
def eligible_instances(max_vertices: int) -> tuple[tuple[TorusParams, ...], tuple[tuple[str, str], ...]]:
    """Simple bipartite 4-connected instances, plus the simple bipartite ones that
    fail 4-connectivity (returned separately so they can be logged)."""
    keep, dropped = [], []
    for m in range(1, max_vertices + 1):
        for n in range(2, max_vertices // m + 1, 2):
            for q in range(n):
                p = TorusParams(m, n, q)
                if not (p.simple and p.bipartite):
                    continue
                k = oracle.vertex_connectivity(build(p), budget=max(max_vertices, oracle.DEFAULT_CONNECTIVITY_BUDGET))
                if k == 4:
                    keep.append(p)
                else:
                    dropped.append((str(p), f"vertex connectivity {k}"))
    return tuple(keep), tuple(dropped)


def _placements(p: TorusParams, dedup: bool) -> list[tuple[Face, Face]]:
    if dedup:
        return sym.canonical_placements(p)
    fs = faces(p)
    return [(a, b) for a in fs for b in fs if a != b]


def sweep_prop2(max_vertices: int = 120, dedup: bool = True) -> SweepReport:
    report = _start("prop2", max_vertices)
    t0 = time.perf_counter()
    for p in report_instances(report):
        for fb, fw in _placements(p, dedup):
            e1, e2 = DiagonalSpec(fb, Color.BLACK), DiagonalSpec(fw, Color.WHITE)
            case = f"black {tuple(fb)} white {tuple(fw)}"
            try:
                cyc = hb.ham_through_two_diagonals(p, e1, e2, verify=False)
                g = add_diagonals(build(p), [e1, e2])
                ends = [diagonal_endpoints(p, e1), diagonal_endpoints(p, e2)]
                ok = oracle.verify_cycle(g, cyc.vertices, ends).ok
                report.rows.append(SweepRow(str(p), case, ok, "" if ok else "verification failed"))
            except Exception as exc:  # a sweep records failures rather than stopping
                report.rows.append(SweepRow(str(p), case, False, repr(exc)))
    report.elapsed = time.perf_counter() - t0
    return report


def _color_preserving_face_maps(p: TorusParams) -> list[dict[Face, Face]]:
    """Face permutations of the symmetries that fix the vertex colors.

    Every symmetry is a translation after one of the point symmetries fixing
    the origin's square, so the maps are assembled from those few by shifting.
    """
    fs = faces(p)
    seen, maps = set(), []
    for h in sym.point_symmetries(p):
        corners = [sym.face_square(p, sym.apply_face(h, f)) for f in fs]
        hx, hy = h.lifted(0, 0)
        for a in range(p.m):
            for b in range(p.n):
                if (hx + hy + a + b) % 2:
                    continue
                images = tuple(sym.square_face(p, x + a, y + b) for x, y in corners)
                if images not in seen:
                    seen.add(images)
                    maps.append(dict(zip(fs, images)))
    return maps


def black_sets(p: TorusParams, cap: int = 500, dedup: bool = True) -> Iterator[tuple[Face, ...]]:
    """Nonempty sets of faces carrying black diagonals, smallest first.

    With ``dedup`` only the lexicographically least member of each orbit under
    the color-preserving symmetries is produced.  Sets whose diagonals would
    coincide as edges are skipped (the augmented graph would not be simple).
    """
    fs = faces(p)
    maps = _color_preserving_face_maps(p) if dedup else []
    ends = {f: diagonal_endpoints(p, DiagonalSpec(f, Color.BLACK)) for f in fs}
    produced = 0
    for size in range(1, len(fs) + 1):
        for combo in itertools.combinations(fs, size):
            if len({ends[f] for f in combo}) < size:
                continue
            if any(tuple(sorted(mp[f] for f in combo)) < combo for mp in maps):
                continue
            yield combo
            produced += 1
            if produced >= cap:
                return


def sweep_negative(max_vertices: int = 20, cap: int = 500, dedup: bool = True) -> SweepReport:
    """No black diagonal lies on a hamilton cycle, checked by exhaustive count."""
    report = _start("negative", max_vertices)
    t0 = time.perf_counter()
    for p in report_instances(report):
        for combo in black_sets(p, cap, dedup):
            ds = [DiagonalSpec(f, Color.BLACK) for f in combo]
            g = add_diagonals(build(p), ds)
            cert = oracle.exclusion_certificate(g)
            counts = [oracle.enumerate_ham_cycles(g, through=diagonal_endpoints(p, d)).count for d in ds]
            ok = cert.valid and not any(counts)
            detail = "" if ok else f"certificate {cert.valid}, counts {counts}"
            report.rows.append(SweepRow(str(p), f"black faces {[tuple(f) for f in combo]}", ok, detail))
    report.elapsed = time.perf_counter() - t0
    return report


def cover_families(p: TorusParams, cap: int) -> list[tuple[tuple[Face, ...], Face]]:
    """E1 sets (up to ``cap`` from ``black_sets`` plus the largest simple one),
    each paired with a white diagonal on the first face outside E1.  Sets that
    fill every face are skipped since they leave no room for the white one."""
    fs = faces(p)
    sets = list(black_sets(p, cap))
    ends = {f: diagonal_endpoints(p, DiagonalSpec(f, Color.BLACK)) for f in fs}
    largest, seen = [], set()
    for f in fs[1:]:
        if ends[f] not in seen:
            seen.add(ends[f])
            largest.append(f)
    if tuple(largest) not in sets:
        sets.append(tuple(largest))
    out = []
    for combo in sets:
        free = next((f for f in fs if f not in combo), None)
        if free is not None:  # e2 needs a face of its own
            out.append((combo, free))
    return out


def sweep_cover(max_vertices: int = 120, cap: int = 500, small_cap_above: int = 20, large_cap: int = 8,
                oracle_up_to: int = 16) -> SweepReport:
    """Every edge of G + E1 + e2 lies on a verified hamilton cycle.

    Instances with more than ``small_cap_above`` vertices use ``large_cap`` E1
    sets; up to ``oracle_up_to`` vertices each edge is also confirmed by the
    exhaustive oracle.
    """
    report = _start("cover", max_vertices)
    t0 = time.perf_counter()
    for p in report_instances(report):
        per_instance = cap if p.num_vertices <= small_cap_above else large_cap
        for combo, free in cover_families(p, per_instance):
            black = [DiagonalSpec(f, Color.BLACK) for f in combo]
            white = DiagonalSpec(free, Color.WHITE)
            case = f"black faces {[tuple(f) for f in combo]} white {tuple(free)}"
            try:
                g = add_diagonals(build(p), [*black, white])
                cover = hb.edge_ham_cover(p, black, white)
                missing = [e for e in g.edge_set if e not in cover]
                ok = not missing
                detail = f"uncovered {missing[:3]}" if missing else ""
                if ok and p.num_vertices <= oracle_up_to:
                    lonely = [e for e in sorted(g.edge_set) if oracle.enumerate_ham_cycles(g, through=e, limit=1).count < 1]
                    ok = not lonely
                    detail = f"oracle finds no cycle through {lonely[:3]}" if lonely else ""
                report.rows.append(SweepRow(str(p), case, ok, detail))
            except Exception as exc:
                report.rows.append(SweepRow(str(p), case, False, repr(exc)))
    report.elapsed = time.perf_counter() - t0
    return report


def _start(mode: str, max_vertices: int) -> SweepReport:
    return SweepReport(mode, max_vertices)


def report_instances(report: SweepReport) -> tuple[TorusParams, ...]:
    keep, dropped = eligible_instances(report.max_vertices)
    report.instances = len(keep)
    report.excluded = list(dropped)
    return keep


def run(mode: str, max_vertices: int, dedup: bool = True) -> SweepReport:
    if mode == "prop2":
        return sweep_prop2(max_vertices, dedup)
    if mode == "negative":
        return sweep_negative(max_vertices, dedup=dedup)
    if mode == "cover":
        return sweep_cover(max_vertices)
    raise ValueError(f"unknown sweep mode {mode!r}")
