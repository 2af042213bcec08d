"""Unit tests for the JSON, DOT and SVG renderers."""

from fractions import Fraction

import networkx as nx
import pytest

from goodgradings.errors import DimensionNot2, InputError
from goodgradings.exact import QMatrix
from goodgradings.grading import GoodGradingPolytope
from goodgradings.models import JobSpec, ResultDocument, graph_payload, polytope_payload
from goodgradings.renderers import DotRenderer, JsonRenderer, SvgRenderer, render_graph_dot, render_polytope_svg


def _square() -> GoodGradingPolytope:
    return GoodGradingPolytope(
        2,
        ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))),
        (Fraction(2), Fraction(2)),
        ("a1", "a2"),
        QMatrix.identity(2),
    )


def _graph() -> nx.Graph:
    graph = nx.Graph()
    graph.add_node(0, label="0,2,0", characteristic=(Fraction(0), Fraction(2), Fraction(0)), point=(0, 0), dynkin=True)
    graph.add_node(1, label="2,0,0", characteristic=(Fraction(2), Fraction(0), Fraction(0)), point=(1, 0), dynkin=False)
    graph.add_edge(0, 1)
    return graph


def _document(**results: object) -> ResultDocument:
    return ResultDocument(JobSpec("pyramid", "sp", partition=(2, 2, 1, 1)), results)


def test_dot_marks_the_dynkin_grading_bold() -> None:
    dot = render_graph_dot(_graph(), "sp6")
    assert dot.startswith('graph "sp6" {')
    assert 'n0 [label="0,2,0", tooltip="0,2,0", style=bold];' in dot
    assert "n0 -- n1;" in dot


def test_dot_renderer_reads_the_graph_payload() -> None:
    dot = DotRenderer().render(_document(graph=graph_payload(_graph())))
    assert 'graph "sp (2,2,1,1)"' in dot
    assert dot.count("style=bold") == 1


def test_dot_renderer_needs_a_graph() -> None:
    with pytest.raises(InputError, match="--graph"):
        DotRenderer().render(_document())


def test_svg_draws_polygon_lines_and_points() -> None:
    lines = [((Fraction(1), Fraction(0)), Fraction(k)) for k in (-1, 0, 1)]
    svg = render_polytope_svg(_square(), lines, [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))], "square")
    assert svg.startswith("<?xml")
    assert "<polygon" in svg
    assert svg.count("<line") == 3
    assert svg.count("<circle") == 2
    assert 'fill="#c00000"' in svg
    assert "<title>square</title>" in svg


def test_svg_renderer_draws_affine_hyperplanes() -> None:
    document = _document(drawing=polytope_payload(_square(), []))
    assert SvgRenderer().render(document).count("<line") == 6
    assert SvgRenderer(hyperplanes=False).render(document).count("<line") == 0


def test_svg_needs_a_planar_polytope() -> None:
    line = GoodGradingPolytope(1, ((Fraction(1),),), (Fraction(1),), ("a1",), QMatrix.identity(1))
    with pytest.raises(DimensionNot2):
        render_polytope_svg(line, [], [])


def test_svg_renderer_needs_a_drawing() -> None:
    with pytest.raises(InputError, match="no polytope"):
        SvgRenderer().render(_document())


def test_json_renderer_matches_document() -> None:
    document = _document(alcoves=14)
    assert JsonRenderer().render(document) == document.to_json()
    assert JsonRenderer().default_extension == ".json"
