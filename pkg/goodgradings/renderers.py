"""Renderer implementations for result documents: JSON, Graphviz DOT and SVG."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Sequence
from fractions import Fraction
from itertools import combinations
from typing import Any

import networkx as nx
import numpy as np
from scipy.spatial import ConvexHull

from goodgradings.arrange import affine_lines
from goodgradings.errors import DimensionNot2, InputError, NoSolution, Underdetermined
from goodgradings.exact import QMatrix, QVector, dot, solve_linear
from goodgradings.grading import GoodGradingPolytope
from goodgradings.models import ResultDocument, graph_from_payload, polytope_from_payload

Line = tuple[QVector, Fraction]


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def _title(document: ResultDocument) -> str:
    job = document.job
    if job.mode == "pyramid":
        return f"{job.cartan_type} ({','.join(map(str, job.partition))})"
    subset = ",".join(map(str, job.J))
    return f"{job.cartan_type}{job.rank or ''} J={{{subset}}}"


class ResultRenderer(ABC):
    """Abstract result renderer."""

    @property
    @abstractmethod
    def default_extension(self) -> str:
        """Default filename extension for this renderer."""

    @abstractmethod
    def render(self, document: ResultDocument) -> str:
        """Render a document into file content."""


class JsonRenderer(ResultRenderer):
    @property
    def default_extension(self) -> str:
        return ".json"

    def render(self, document: ResultDocument) -> str:
        return document.to_json()


class DotRenderer(ResultRenderer):
    """Adjacency graph of integral good gradings; the Dynkin grading is drawn bold."""

    @property
    def default_extension(self) -> str:
        return ".dot"

    def render(self, document: ResultDocument) -> str:
        payload = document.results.get("graph")
        if payload is None:
            raise InputError("the document has no adjacency graph; rerun with --graph")
        return render_graph_dot(graph_from_payload(payload), _title(document))


def render_graph_dot(graph: nx.Graph, name: str) -> str:
    lines = [f'graph "{_escape(name)}" {{', '  node [shape=box, fontname="Helvetica"];']
    for n, data in sorted(graph.nodes(data=True)):
        label = ",".join(str(x) for x in data["characteristic"])
        attrs = [f'label="{label}"', f'tooltip="{_escape(data["label"])}"']
        if data["dynkin"]:
            attrs.append("style=bold")
        lines.append(f"  n{n} [{', '.join(attrs)}];")
    for a, b in sorted((min(e), max(e)) for e in graph.edges()):
        lines.append(f"  n{a} -- n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


class SvgRenderer(ResultRenderer):
    """Two-dimensional good grading polytope with its affine hyperplanes and marked points."""

    def __init__(self, hyperplanes: bool = True) -> None:
        self.hyperplanes = hyperplanes

    @property
    def default_extension(self) -> str:
        return ".svg"

    def render(self, document: ResultDocument) -> str:
        payload = document.results.get("drawing")
        if payload is None:
            raise InputError("the document has no polytope to draw")
        poly, points = polytope_from_payload(payload)
        _, region = poly.chart()
        lines = affine_lines(region) if self.hyperplanes else []
        return render_polytope_svg(poly, lines, points, _title(document))


# ── SVG geometry ───────────────────────────────────────────────────────────────

_SIZE = 420.0
_PAD = 24.0


def _boundary(functionals: Sequence[QVector], bounds: Sequence[Fraction]) -> list[Line]:
    out: list[Line] = []
    for f, d in zip(functionals, bounds):
        out.append((f, d))
        out.append((f, -d))
    return out


def _meet(a: Line, b: Line) -> QVector | None:
    try:
        return solve_linear(QMatrix.of([a[0], b[0]], 2), [a[1], b[1]])
    except (NoSolution, Underdetermined):
        return None


def _in_closure(x: QVector, functionals: Sequence[QVector], bounds: Sequence[Fraction]) -> bool:
    return all(abs(dot(f, x)) <= d for f, d in zip(functionals, bounds))


def _vertices(functionals: Sequence[QVector], bounds: Sequence[Fraction]) -> list[QVector]:
    found = set()
    for a, b in combinations(_boundary(functionals, bounds), 2):
        v = _meet(a, b)
        if v is not None and _in_closure(v, functionals, bounds):
            found.add(v)
    return sorted(found)


def _segment(line: Line, functionals: Sequence[QVector], bounds: Sequence[Fraction]) -> tuple[QVector, QVector] | None:
    ends = []
    for wall in _boundary(functionals, bounds):
        v = _meet(line, wall)
        if v is not None and _in_closure(v, functionals, bounds):
            ends.append(v)
    if len(ends) < 2:
        return None
    direction = (-line[0][1], line[0][0])
    ends.sort(key=lambda v: dot(direction, v))
    return ends[0], ends[-1]


def _frame(poly: GoodGradingPolytope, basis: Sequence[QVector]) -> Any:
    """Linear map from chart coordinates to the plane, isometric for the polytope's metric."""
    b = np.array([[float(x) for x in v] for v in basis]).T
    m = np.array([[float(x) for x in row] for row in poly.metric.rows])
    gram = b.T @ m @ b
    return np.linalg.cholesky(gram).T


def render_polytope_svg(
    poly: GoodGradingPolytope,
    hyperplanes: Sequence[Line],
    points: Sequence[QVector],
    title: str = "",
) -> str:
    """SVG 1.1 drawing of a 2-dimensional polytope, given in the coordinates of ``poly``."""
    basis, region = poly.chart()
    if region.dim != 2:
        raise DimensionNot2(f"can only draw a 2-dimensional polytope, this one has dimension {region.dim}")
    fs, ds = region.functionals, region.bounds
    frame = _frame(poly, basis)

    def place(x: QVector) -> Any:
        return frame @ np.array([float(v) for v in x])

    corners = np.array([place(v) for v in _vertices(fs, ds)])
    hull = ConvexHull(corners)
    polygon = corners[hull.vertices]
    low, high = polygon.min(axis=0), polygon.max(axis=0)
    scale = (_SIZE - 2 * _PAD) / max(float((high - low).max()), 1e-9)

    def screen(xy: Any) -> tuple[float, float]:
        return _PAD + (xy[0] - low[0]) * scale, _SIZE - _PAD - (xy[1] - low[1]) * scale

    columns = QMatrix.of(zip(*basis), 2)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_SIZE:.0f}" '
        f'height="{_SIZE:.0f}" viewBox="0 0 {_SIZE:.0f} {_SIZE:.0f}">',
        f"  <title>{_escape(title)}</title>",
    ]
    ring = " ".join(f"{x:.2f},{y:.2f}" for x, y in (screen(p) for p in polygon))
    out.append(f'  <polygon points="{ring}" fill="#f6f6f6" stroke="#000000" stroke-width="1.5"/>')
    for line in hyperplanes:
        seg = _segment(line, fs, ds)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = (screen(place(v)) for v in seg)
        out.append(
            f'  <line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            'stroke="#888888" stroke-width="0.75"/>'
        )
    for p in points:
        x, y = screen(place(solve_linear(columns, p)))
        fill = "#c00000" if not any(p) else "#000000"
        out.append(f'  <circle cx="{x:.2f}" cy="{y:.2f}" r="3.5" fill="{fill}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
