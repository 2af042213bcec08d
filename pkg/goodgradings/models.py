"""Job descriptions and result documents, with an exact JSON encoding."""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Final

import networkx as nx

from goodgradings.errors import InputError
from goodgradings.exact import QMatrix, QVector
from goodgradings.grading import GoodGradingPolytope
from goodgradings.restrict import DEFAULT_BUDGET

SCHEMA_VERSION: Final = 1
MODES: Final = ("restrict", "arrange", "grading", "pyramid", "tables")


@dataclass(frozen=True)
class JobSpec:
    """One command-line job, echoed into its result document."""

    mode: str
    cartan_type: str
    rank: int | None = None
    J: tuple[int, ...] = ()
    labels: tuple[int, ...] = ()
    order: tuple[int, ...] = ()
    partition: tuple[int, ...] = ()
    integral: bool = False
    graph: bool = False
    samples: int = 0
    budget: int = DEFAULT_BUDGET
    seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise InputError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.budget <= 0:
            raise InputError(f"budget must be positive, got {self.budget}")
        if self.samples < 0:
            raise InputError(f"samples must be non-negative, got {self.samples}")


@dataclass(frozen=True)
class Provenance:
    budget_exceeded: bool = False
    partial: int | None = None
    fallbacks: tuple[str, ...] = ()


@dataclass(frozen=True)
class ResultDocument:
    job: JobSpec
    results: Mapping[str, Any]
    provenance: Provenance = field(default_factory=Provenance)

    def to_json(self) -> str:
        payload = {
            "schema": SCHEMA_VERSION,
            "job": asdict(self.job),
            "results": self.results,
            "provenance": asdict(self.provenance),
        }
        return json.dumps(encode(payload), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ResultDocument:
        """Parse a document; fractions inside ``results`` stay as strings."""
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"not a result document: {exc}") from exc
        if raw.get("schema") != SCHEMA_VERSION:
            raise InputError(f"unsupported schema version {raw.get('schema')!r}")
        job = {k: tuple(v) if isinstance(v, list) else v for k, v in raw["job"].items()}
        prov = raw.get("provenance", {})
        return cls(
            JobSpec(**job),
            raw["results"],
            Provenance(prov.get("budget_exceeded", False), prov.get("partial"), tuple(prov.get("fallbacks", ()))),
        )


def encode(value: Any) -> Any:
    """JSON-ready copy with every Fraction written as ``"num/den"`` (or ``"num"``)."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Mapping):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [encode(v) for v in items]
    return value


def fraction(value: Any) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{value!r} is not an exact fraction") from exc


def fractions(values: Sequence[Any]) -> QVector:
    return tuple(fraction(v) for v in values)


# ── Payloads for drawings ──────────────────────────────────────────────────────


def polytope_payload(poly: GoodGradingPolytope, points: Sequence[QVector] = ()) -> dict[str, Any]:
    return {
        "dim": poly.dim,
        "functionals": [list(f) for f in poly.functionals],
        "bounds": list(poly.bounds),
        "names": list(poly.names),
        "metric": [list(r) for r in poly.metric.rows],
        "equalities": [list(g) for g in poly.equalities],
        "irredundant": list(poly.irredundant) if poly.irredundant is not None else None,
        "points": [list(p) for p in points],
    }


def polytope_from_payload(payload: Mapping[str, Any]) -> tuple[GoodGradingPolytope, list[QVector]]:
    dim = int(payload["dim"])
    irredundant = payload.get("irredundant")
    poly = GoodGradingPolytope(
        dim,
        tuple(fractions(f) for f in payload["functionals"]),
        fractions(payload["bounds"]),
        tuple(payload["names"]),
        QMatrix.of((fractions(r) for r in payload["metric"]), dim),
        tuple(fractions(g) for g in payload.get("equalities", ())),
        tuple(irredundant) if irredundant is not None else None,
    )
    return poly, [fractions(p) for p in payload.get("points", ())]


def graph_payload(graph: nx.Graph) -> dict[str, Any]:
    nodes = [
        {
            "id": n,
            "label": data["label"],
            "characteristic": list(data["characteristic"]),
            "point": list(data["point"]),
            "dynkin": bool(data["dynkin"]),
        }
        for n, data in sorted(graph.nodes(data=True))
    ]
    edges = sorted([min(a, b), max(a, b)] for a, b in graph.edges())
    return {"nodes": nodes, "edges": edges}


def graph_from_payload(payload: Mapping[str, Any]) -> nx.Graph:
    graph = nx.Graph()
    for node in payload["nodes"]:
        graph.add_node(
            node["id"],
            label=node["label"],
            characteristic=fractions(node["characteristic"]),
            point=fractions(node["point"]),
            dynkin=node["dynkin"],
        )
    graph.add_edges_from(tuple(e) for e in payload["edges"])
    return graph
