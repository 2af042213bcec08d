"""Unit tests for job specs and the JSON result document."""

import json
from fractions import Fraction

import pytest

from goodgradings.errors import InputError
from goodgradings.models import (
    JobSpec,
    Provenance,
    ResultDocument,
    encode,
    graph_from_payload,
    polytope_from_payload,
    polytope_payload,
)
from goodgradings.pyramids import restricted_data


def _document() -> ResultDocument:
    spec = JobSpec("restrict", "E", 7, J=(3, 4, 5, 6, 7), order=(3, 4, 2, 5, 6, 7, 1))
    results = {"gram": [[Fraction(2), Fraction(-1)], [Fraction(-1), Fraction(7, 12)]], "chambers": 12}
    return ResultDocument(spec, results, Provenance(False, None, ("restricted Weyl group read off chamber lifts",)))


def test_unknown_mode_is_rejected() -> None:
    with pytest.raises(InputError, match="unknown mode"):
        JobSpec("draw", "A", 2)


def test_budget_must_be_positive() -> None:
    with pytest.raises(InputError, match="budget"):
        JobSpec("restrict", "A", 2, budget=0)


def test_fractions_are_written_as_strings() -> None:
    text = _document().to_json()
    assert '"7/12"' in text
    assert json.loads(text)["results"]["chambers"] == 12


def test_json_is_deterministic() -> None:
    assert _document().to_json() == _document().to_json()


def test_job_and_provenance_survive_a_reload() -> None:
    original = _document()
    reloaded = ResultDocument.from_json(original.to_json())
    assert reloaded.job == original.job
    assert reloaded.provenance == original.provenance
    assert reloaded.results["gram"][1][1] == "7/12"


def test_reload_rejects_garbage() -> None:
    with pytest.raises(InputError, match="not a result document"):
        ResultDocument.from_json("{oops")


def test_reload_rejects_other_schema_versions() -> None:
    payload = json.loads(_document().to_json())
    payload["schema"] = 99
    with pytest.raises(InputError, match="schema"):
        ResultDocument.from_json(json.dumps(payload))


def test_encode_sorts_sets() -> None:
    assert encode({"k": {Fraction(3, 2), Fraction(1, 2)}}) == {"k": ["1/2", "3/2"]}


def test_polytope_payload_round_trip() -> None:
    poly = restricted_data("sp", (2, 2, 1, 1)).polytope()
    points = [(Fraction(1, 2), Fraction(0))]
    back, back_points = polytope_from_payload(json.loads(json.dumps(encode(polytope_payload(poly, points)))))
    assert back.functionals == poly.functionals
    assert back.bounds == poly.bounds
    assert back.irredundant == poly.irredundant
    assert back_points == points


def test_graph_from_payload() -> None:
    payload = {
        "nodes": [
            {"id": 0, "label": "0,2,0", "characteristic": ["0", "2", "0"], "point": ["0", "0"], "dynkin": True},
            {"id": 1, "label": "2,0,0", "characteristic": ["2", "0", "0"], "point": ["1", "0"], "dynkin": False},
        ],
        "edges": [[0, 1]],
    }
    graph = graph_from_payload(payload)
    assert graph.number_of_edges() == 1
    assert graph.nodes[0]["characteristic"] == (0, 2, 0)
