"""JSON documents for instances and cycles.

Instance files carry the parameters and the diagonals (by face and color).
Cycle files embed their instance, the vertex sequence and the required edges;
the verification status written to disk is informational only and is
recomputed whenever a cycle file is loaded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .oracle import VerificationReport, verify_cycle
from .torus_quad import Color, DiagonalSpec, Face, Graph, Instance, TorusParams, Vertex, edge_key

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Malformed or invalid document."""


@dataclass(frozen=True)
class InstanceDoc:
    params: TorusParams
    diagonals: tuple[DiagonalSpec, ...] = ()
    named_edges: dict[str, tuple[Vertex, Vertex]] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        self.graph()  # validates diagonal placement

    def graph(self) -> Graph:
        return Instance(self.params, self.diagonals).graph()

    def black(self) -> list[DiagonalSpec]:
        return [d for d in self.diagonals if d.color is Color.BLACK]

    def white(self) -> list[DiagonalSpec]:
        return [d for d in self.diagonals if d.color is Color.WHITE]

    def to_json(self) -> dict:
        out = {
            "kind": "instance",
            "version": SCHEMA_VERSION,
            "params": {"m": self.params.m, "n": self.params.n, "q": self.params.q},
            "diagonals": [
                {"column": d.face.column, "row": d.face.row, "color": d.color.value} for d in self.diagonals
            ],
        }
        if self.named_edges:
            out["edges"] = {k: [list(u), list(v)] for k, (u, v) in self.named_edges.items()}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "InstanceDoc":
        try:
            p = data["params"]
            params = TorusParams(int(p["m"]), int(p["n"]), int(p["q"]))
            diagonals = tuple(
                DiagonalSpec(Face(int(d["column"]), int(d["row"])), Color(d["color"]))
                for d in data.get("diagonals", [])
            )
            named = {k: (tuple(u), tuple(v)) for k, (u, v) in data.get("edges", {}).items()}
            return cls(params, diagonals, named)
        except (KeyError, TypeError, ValueError, RuntimeError) as exc:
            raise DocumentError(f"invalid instance document: {exc}") from exc


@dataclass(frozen=True)
class CycleDoc:
    instance: InstanceDoc
    vertices: tuple[Vertex, ...]
    required: tuple[tuple[Vertex, Vertex], ...] = ()

    @property
    def status(self) -> VerificationReport:
        return verify_cycle(self.instance.graph(), self.vertices, self.required)

    def to_json(self) -> dict:
        report = self.status
        return {
            "kind": "cycle",
            "version": SCHEMA_VERSION,
            "instance": self.instance.to_json(),
            "vertices": [list(v) for v in self.vertices],
            "required": [[list(u), list(v)] for u, v in self.required],
            "status": {
                "ok": report.ok,
                "violations": [{"kind": v.kind.value, "witness": repr(v.witness)} for v in report.violations],
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "CycleDoc":
        try:
            inst = InstanceDoc.from_json(data["instance"])
            verts = tuple(tuple(v) for v in data["vertices"])
            req = tuple(edge_key(tuple(u), tuple(v)) for u, v in data.get("required", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"invalid cycle document: {exc}") from exc
        return cls(inst, verts, req)


def load(path: str | Path) -> InstanceDoc | CycleDoc:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise DocumentError(f"{path}: expected a JSON object")
    if data.get("kind") == "cycle":
        return CycleDoc.from_json(data)
    return InstanceDoc.from_json(data)


def dumps(doc: InstanceDoc | CycleDoc) -> str:
    return json.dumps(doc.to_json(), indent=2) + "\n"


def save(doc: InstanceDoc | CycleDoc, path: str | Path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")
