"""DOT and SVG renderings of instances and cycles."""

from __future__ import annotations

import xml.etree.ElementTree as ET

from . import symmetry as sym
from .docs import CycleDoc, InstanceDoc, dumps
from .torus_quad import EdgeKind, TorusParams, Vertex, diagonal_endpoints, edge_key

FORMATS = ("dot", "svg", "json")


def _split(doc: InstanceDoc | CycleDoc) -> tuple[InstanceDoc, set]:
    if isinstance(doc, CycleDoc):
        vs = doc.vertices
        return doc.instance, {edge_key(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))}
    return doc, set()


def _name(v: Vertex) -> str:
    return f'"{v[0]},{v[1]}"'


def to_dot(doc: InstanceDoc | CycleDoc) -> str:
    inst, highlighted = _split(doc)
    g = inst.graph()
    lines = [f"graph Q_{inst.params.m}_{inst.params.n}_{inst.params.q} {{"]
    lines += [f"  {_name(v)};" for v in g.vertices]
    for u, v, kind in g.edges:
        attrs = []
        if kind is EdgeKind.DIAGONAL:
            attrs.append("style=dashed")
        if edge_key(u, v) in highlighted:
            attrs.append("penwidth=3")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_name(u)} -- {_name(v)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _lifted_segment(params: TorusParams, u: Vertex, v: Vertex, kind: EdgeKind, diag) -> tuple:
    """Endpoints of the edge in the lifted plane, starting from a real vertex."""
    m, n = params.m, params.n
    if kind is EdgeKind.DIAGONAL:
        return sym.diagonal_square(params, diag).endpoints()
    if kind is EdgeKind.HORIZONTAL_WRAP:
        left = u if u[0] == m - 1 else v
        return (left, (m, left[1]))
    if kind is EdgeKind.VERTICAL and {u[1], v[1]} == {0, n - 1} and n > 2:
        low = u if u[1] == n - 1 else v
        return (low, (low[0], n))
    return (u, v)


def to_svg(doc: InstanceDoc | CycleDoc, cell: int = 40) -> str:
    """Draw the torus as a rectangle with opposite sides identified."""
    inst, highlighted = _split(doc)
    params = inst.params
    g = inst.graph()
    m, n = params.m, params.n
    pad = cell
    width, height = m * cell + 2 * pad, n * cell + 2 * pad

    def px(x: float, y: float) -> tuple[float, float]:
        return pad + (x + 0.5) * cell, pad + (n - 0.5 - y) * cell

    svg = ET.Element(
        "svg", xmlns="http://www.w3.org/2000/svg", width=str(width), height=str(height), viewBox=f"0 0 {width} {height}"
    )
    defs = ET.SubElement(svg, "defs")
    clip = ET.SubElement(defs, "clipPath", id="domain")
    ET.SubElement(clip, "rect", x=str(pad), y=str(pad), width=str(m * cell), height=str(n * cell))
    ET.SubElement(
        svg, "rect", x=str(pad), y=str(pad), width=str(m * cell), height=str(n * cell), fill="none", stroke="#999"
    )
    layer = ET.SubElement(svg, "g", {"clip-path": "url(#domain)"})

    diag_by_edge = {diagonal_endpoints(params, d): d for d in inst.diagonals}
    for u, v, kind in g.edges:
        key = edge_key(u, v)
        p1, p2 = _lifted_segment(params, u, v, kind, diag_by_edge.get(key))
        shifts = set()
        for p in (p1, p2):
            r = sym.reduce_point(params, *p)
            shifts.add((r[0] - p[0], r[1] - p[1]))
        bold = key in highlighted
        for dx, dy in sorted(shifts):
            (x1, y1), (x2, y2) = px(p1[0] + dx, p1[1] + dy), px(p2[0] + dx, p2[1] + dy)
            attrs = {
                "x1": f"{x1:.1f}",
                "y1": f"{y1:.1f}",
                "x2": f"{x2:.1f}",
                "y2": f"{y2:.1f}",
                "stroke": "#c00" if bold else "#333",
                "stroke-width": "4" if bold else "1",
            }
            if kind is EdgeKind.DIAGONAL:
                attrs["stroke-dasharray"] = "5,4"
            ET.SubElement(layer, "line", attrs)
    for v in g.vertices:
        cx, cy = px(*v)
        fill = "#000" if (v[0] + v[1]) % 2 == 0 else "#fff"
        ET.SubElement(svg, "circle", cx=f"{cx:.1f}", cy=f"{cy:.1f}", r=str(cell // 8), fill=fill, stroke="#000")
    return ET.tostring(svg, encoding="unicode") + "\n"


def render(doc: InstanceDoc | CycleDoc, fmt: str) -> str:
    if fmt == "dot":
        return to_dot(doc)
    if fmt == "svg":
        return to_svg(doc)
    if fmt == "json":
        return dumps(doc)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
