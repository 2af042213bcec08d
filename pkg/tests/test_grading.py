"""Tests for the good grading polytope of Levi-principal nilpotents."""

from fractions import Fraction

import networkx as nx
import pytest

from goodgradings.errors import InvalidSubset, OutsidePolytope
from goodgradings.exact import QMatrix
from goodgradings.fixtures import COMPONENT_ORDERS, E6_ADJACENCY, AdjacencyFixture, ComponentFixture
from goodgradings.grading import (
    GoodGradingPolytope,
    NilpotentDatum,
    Sl2Decomposition,
    adjacency_graph,
    adjacent,
    characteristic,
    component_data,
    exceptional_case,
    grading_oracle,
    half_lattice_points,
    integral_points,
    is_good,
    polytope,
    sample_points,
    sl2_multiplicities,
    solve_h,
    we_orbits,
)
from goodgradings.restrict import restrict, restricted_weyl
from goodgradings.rootsys import build

E7_J = (0, 2, 4, 5, 6)


def _e7_datum() -> NilpotentDatum:
    return NilpotentDatum.principal(build("E", 7), E7_J)


def _decomposition(datum: NilpotentDatum) -> Sl2Decomposition:
    return sl2_multiplicities(restrict(datum.rs, datum.J), solve_h(datum))


def _e6_d4a1() -> NilpotentDatum:
    # distinguished in D4 on Bourbaki nodes 2,3,4,5 with 0 on the branch node
    return NilpotentDatum(build("E", 6), (1, 2, 3, 4), (2, 2, 0, 2))


def _e7_polytope() -> GoodGradingPolytope:
    return polytope(_decomposition(_e7_datum()))


def test_solve_h_for_e7_levi_a3_a2() -> None:
    assert solve_h(_e7_datum()) == (2, 0, 2, -5, 2, 2, 2)


def test_solve_h_without_subset_is_zero() -> None:
    assert solve_h(NilpotentDatum.principal(build("G", 2), ())) == (0, 0)


def test_e7_bounds_and_irredundant_weights() -> None:
    poly = _e7_polytope()
    assert sorted(poly.bounds) == [1, 2, 2, 3, 3, 4, 4]
    assert poly.irredundant is not None
    assert {poly.functionals[k] for k in poly.irredundant} == {(1, 0), (2, 4)}


def test_e7_simple_restricted_root_has_d_one() -> None:
    dec = _decomposition(_e7_datum())
    rrs = dec.rrs
    assert dec.d(rrs.index[(1, 0)]) == 1


def test_e7_only_integral_grading_is_dynkin() -> None:
    assert integral_points(_e7_polytope()) == [(0, 0)]


def test_sl2_summands_fill_the_algebra() -> None:
    dec = _decomposition(_e7_datum())
    total = sum(i + 1 for ws in (*dec.highest, dec.zero) for i in ws)
    assert total == 133


def test_dynkin_grading_is_good() -> None:
    dec = _decomposition(_e7_datum())
    assert is_good(dec, (0, 0))


def test_boundary_point_is_not_good() -> None:
    dec = _decomposition(_e7_datum())
    assert not is_good(dec, (1, 0))
    assert not polytope(dec).contains((1, 0))


@pytest.mark.slow
def test_e7_component_group() -> None:
    datum = _e7_datum()
    dec = _decomposition(datum)
    data = component_data(dec, restricted_weyl(dec.rrs))
    assert {dec.rrs.vectors[a] for a in data.simple_roots} == {(1, 0)}
    assert data.identity_component_order == 2
    assert data.component_order == 2
    assert data.weyl_order == 4


@pytest.mark.parametrize(
    "fixture",
    [pytest.param(f, marks=pytest.mark.slow) if f.cartan_type == "E" else f for f in COMPONENT_ORDERS],
    ids=lambda f: f"{f.cartan_type}{f.rank}-{f.label}",
)
def test_component_orders(fixture: ComponentFixture) -> None:
    rs = build(fixture.cartan_type, fixture.rank)
    dec = _decomposition(NilpotentDatum(rs, tuple(k - 1 for k in fixture.J), fixture.labels))
    assert component_data(dec, restricted_weyl(dec.rrs)).component_order == fixture.component_order


@pytest.mark.slow
def test_e7_rank_oracle_at_the_origin() -> None:
    assert grading_oracle(_e7_datum(), (0, 0)).good


def test_rank_oracle_matches_polytope_membership_in_a3() -> None:
    datum = NilpotentDatum.principal(build("A", 3), (0,))
    poly = polytope(_decomposition(datum))
    points = integral_points(poly) + sample_points(poly, 25, seed=3)
    for p in points:
        assert grading_oracle(datum, p).good == poly.contains(p), p


def test_dimension_criterion_matches_polytope_membership_for_e6_d4a1() -> None:
    datum = _e6_d4a1()
    dec = _decomposition(datum)
    poly = polytope(dec)
    for p in sample_points(poly, 30, seed=5):
        assert is_good(dec, p) == poly.contains(p), p


def test_sample_points_are_seeded() -> None:
    poly = _e7_polytope()
    assert sample_points(poly, 10, seed=4) == sample_points(poly, 10, seed=4)
    assert len(sample_points(poly, 10, seed=4)) == len(half_lattice_points(poly)) + 10


def _plane(functionals: list[tuple[int, int]], bounds: list[int]) -> GoodGradingPolytope:
    return GoodGradingPolytope(
        2,
        tuple((Fraction(a), Fraction(b)) for a, b in functionals),
        tuple(Fraction(d) for d in bounds),
        tuple(f"w{k}" for k in range(len(functionals))),
        QMatrix.identity(2),
    )


def test_integral_points_follow_the_weight_lattice() -> None:
    # |x| < 1 forces x = 0, then |2y| < 3
    poly = _plane([(1, 0), (1, 2), (0, 1)], [1, 3, 5])
    assert integral_points(poly) == [(0, -1), (0, 0), (0, 1)]


def test_integral_points_with_a_coarse_weight() -> None:
    poly = _plane([(2, 0), (0, 1)], [3, 1])
    xs = [Fraction(k, 2) for k in range(-2, 3)]
    assert integral_points(poly) == [(x, Fraction(0)) for x in xs]


def test_half_lattice_points_fill_the_closed_box() -> None:
    poly = _plane([(1, 0), (0, 1)], [2, 2])
    box = {(Fraction(a, 2), Fraction(b, 2)) for a in range(-4, 5) for b in range(-4, 5)}
    assert set(half_lattice_points(poly)) == box
    assert len(half_lattice_points(poly)) == 81
    assert box <= set(sample_points(poly, 5, seed=1))


def test_half_lattice_points_stop_at_the_limit() -> None:
    poly = _plane([(1, 0), (0, 1)], [2, 2])
    assert len(half_lattice_points(poly, limit=10)) == 10


def test_half_lattice_points_of_e7_levi_a3_a2_include_outside_points() -> None:
    poly = _e7_polytope()
    points = half_lattice_points(poly)
    assert (0, 0) in points
    assert (1, 0) in points
    assert not poly.contains((1, 0))
    assert all(v.denominator in (1, 2) for p in points for v in poly.values(p))


def test_characteristic_rejects_points_outside() -> None:
    datum = _e7_datum()
    dec = _decomposition(datum)
    with pytest.raises(OutsidePolytope):
        characteristic(dec.rrs, dec.h, (Fraction(5), Fraction(0)), polytope(dec))


def test_characteristic_of_dynkin_grading_in_g2() -> None:
    datum = NilpotentDatum.principal(build("G", 2), (1,))
    dec = _decomposition(datum)
    labels = characteristic(dec.rrs, dec.h, (0,), polytope(dec))
    assert all(x >= 0 for x in labels)


def test_adjacent_points_share_an_alcove() -> None:
    poly = _e7_polytope()
    assert adjacent(poly, (0, 0), (0, 0))
    assert adjacent(poly, (0, 0), (Fraction(1, 2), 0))


def test_labels_must_match_the_subset() -> None:
    with pytest.raises(InvalidSubset, match="labels"):
        NilpotentDatum(build("G", 2), (0, 1), (2,))


def test_labels_must_be_zero_or_two() -> None:
    with pytest.raises(InvalidSubset, match="0 or 2"):
        NilpotentDatum(build("G", 2), (0,), (1,))


def test_rank_oracle_needs_levi_principal_nilpotent() -> None:
    with pytest.raises(InvalidSubset, match="principal"):
        grading_oracle(_e6_d4a1(), (0, 0))


def test_a3_integral_classes_match_characteristics() -> None:
    case, _ = exceptional_case(NilpotentDatum.principal(build("A", 3), (0,)))
    points = integral_points(case.poly)
    for p in points:
        for q in points:
            assert adjacent(case.poly, p, q) == adjacent(case.poly, q, p), (p, q)
    assert len(we_orbits(points, case.group)) == len({case.characteristic(p) for p in points})
    assert len(case.classes(points)) == len(we_orbits(points, case.group))


@pytest.mark.slow
@pytest.mark.parametrize("fixture", E6_ADJACENCY, ids=lambda f: f.levi)
def test_e6_adjacency_graphs_are_paths(fixture: AdjacencyFixture) -> None:
    rs = build("E", 6)
    case, _ = exceptional_case(NilpotentDatum.principal(rs, [k - 1 for k in fixture.J]))
    graph = adjacency_graph(case)
    found = nx.relabel_nodes(graph, {n: data["label"] for n, data in graph.nodes(data=True)})
    expected = nx.path_graph(fixture.path)
    assert set(found.nodes) == set(expected.nodes)
    assert {frozenset(e) for e in found.edges} == {frozenset(e) for e in expected.edges}
    bold = [data["label"] for _, data in graph.nodes(data=True) if data["dynkin"]]
    assert bold == [fixture.dynkin]
