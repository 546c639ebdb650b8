"""Acceptance criteria, each run at its stated tolerance.

Every test writes one pass/fail line, collected in the terminal summary.
"""

import time

from conftest import ACCEPTANCE_LINES, all_params

from toroham import ham_builder as hb
from toroham import oracle
from toroham import sweep
from toroham import symmetry as sym
from toroham.torus_quad import Color, DiagonalSpec, TorusParams, add_diagonals, build, faces


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    ACCEPTANCE_LINES[number] = line
    print(line)


def sweep_detail(report: sweep.SweepReport) -> str:
    return (
        f"{report.instances} instances, {len(report.rows)} checks, "
        f"{len(report.failures)} failures, {report.elapsed:.0f}s"
    )


def test_criterion_1_two_diagonal_sweep():
    report = sweep.sweep_prop2(120)
    record(1, "one black and one white diagonal, m*n <= 120", report.ok and report.instances > 0, sweep_detail(report))
    assert report.ok, report.failures[:5]


def test_criterion_2_black_diagonals_avoided():
    report = sweep.sweep_negative(20, cap=500)
    record(2, "black diagonals lie on no hamilton cycle, m*n <= 20", report.ok and report.instances > 0, sweep_detail(report))
    assert report.ok, report.failures[:5]


def test_criterion_3_every_edge_covered():
    report = sweep.sweep_cover(120, cap=500, oracle_up_to=16)
    record(3, "every edge on a verified hamilton cycle, m*n <= 120", report.ok and report.instances > 0, sweep_detail(report))
    assert report.ok, report.failures[:5]


def test_criterion_4_worked_partition():
    part = hb.partition_sequence(30, 5, 4, 4, 21)
    shape_ok = (part.p, part.r, len(part.m_edges), len(part.n_edges)) == (2, 0, 2, 2)
    cyc = hb.case3_noncrossing(TorusParams(1, 30, 5), 4, 4, 21)
    g = hb._with_extra(build(TorusParams(1, 30, 5)), [((0, 0), (0, 4)), ((0, 21), (0, 25))])
    cycle_ok = oracle.verify_cycle(g, cyc, [((0, 0), (0, 4)), ((0, 21), (0, 25))]).ok
    ok = shape_ok and cycle_ok
    record(4, "non-crossing worked example n=30 q=5", ok, f"p={part.p} r={part.r} |M|={len(part.m_edges)} |N|={len(part.n_edges)}, cycle {'ok' if cycle_ok else 'invalid'}")
    assert shape_ok and cycle_ok


def _group_laws_hold(p: TorusParams) -> bool:
    vs = p.vertices()
    ident = sym.identity(p)

    def power(gen, k):
        t = ident
        for _ in range(k):
            t = t.then(gen(t.target))
        return t

    def table(t):
        return t.map_vertices(vs)

    f1, f2 = sym.F1(p), sym.F2(p)
    return (
        table(power(sym.U, p.n)) == vs
        and table(power(sym.R, p.m)) == table(power(sym.U, p.q))
        and table(f1.then(sym.F1(f1.target))) == vs
        and table(f2.then(sym.F2(f2.target))) == vs
    )


def _structure_holds(p: TorusParams) -> bool:
    g = build(p)
    return (
        all(len(g.adjacency[v]) == 4 for v in g.vertices)
        and len(g.edges) == 2 * p.m * p.n
        and len(faces(p)) == p.m * p.n
    )


def test_criterion_5_structural_invariants():
    t0 = time.perf_counter()
    params = [p for p in all_params(200) if p.simple]
    bad_laws = [p for p in params if not _group_laws_hold(p)]
    bad_structure = [p for p in params if not _structure_holds(p)]

    cycles = placements = 0
    unbalanced = []
    for p in sweep.eligible_instances(16)[0]:
        host = build(p)
        coloring = oracle.two_coloring(host).coloring
        graphs = [host] + [
            add_diagonals(host, [DiagonalSpec(fb, Color.BLACK), DiagonalSpec(fw, Color.WHITE)])
            for fb, fw in sym.canonical_placements(p)
        ]
        for g in graphs:
            placements += 1
            for c in oracle.enumerate_ham_cycles(g, collect=True).cycles:
                cycles += 1
                bb, ww = oracle.mono_balance(coloring, c)
                if bb != ww:
                    unbalanced.append((p, c))
    ok = not (bad_laws or bad_structure or unbalanced) and cycles > 0
    record(
        5,
        "group laws and quadrangulation counts for m*n <= 200, color balance on enumerated cycles",
        ok,
        f"{len(params)} params, {len(bad_laws) + len(bad_structure)} structural failures, "
        f"{cycles} cycles over {placements} graphs, {len(unbalanced)} unbalanced, {time.perf_counter() - t0:.0f}s",
    )
    assert not bad_laws, bad_laws[:5]
    assert not bad_structure, bad_structure[:5]
    assert not unbalanced, unbalanced[:3]


def test_criterion_6_printed_template():
    p = TorusParams(1, 8, 3)
    got = hb.canonical_form(hb.base_template(p))
    want = hb.canonical_form([(0, x) for x in (0, 3, 2, 1, 4, 5, 6, 7)])
    record(6, "base template on Q(1,8;3)", got == want, f"got {[v[1] for v in got]}")
    assert got == want
