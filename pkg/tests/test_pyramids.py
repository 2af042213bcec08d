"""Tests for Dynkin pyramids and the classical good grading polytopes."""

from fractions import Fraction

import pytest

from goodgradings.errors import InvalidPartition, OutsidePolytope, ShapeError
from goodgradings.grading import adjacent, characteristic, integral_points, sample_points, solve_h, we_orbits
from goodgradings.pyramids import (
    Partition,
    build_pyramid,
    classical_characteristic,
    classical_oracle,
    classical_rank_report,
    component_orders,
    coordinate_bounds,
    dense,
    jordan_type,
    matrices,
    restricted_data,
    shift,
    type_a_datum,
)
from goodgradings.restrict import restrict


def _classes(kind: str, parts: tuple[int, ...]) -> list[tuple[Fraction, ...]]:
    return [c.characteristic for c in restricted_data(kind, parts).case().classes()]


# ── Partitions ─────────────────────────────────────────────────────────────────


def test_partition_is_sorted() -> None:
    assert Partition.of([1, 3, 2]).parts == (3, 2, 1)
    assert str(Partition.parse("2, 3,3")) == "3,3,2"


@pytest.mark.parametrize("text", ["", "3,0", "3,x"])
def test_bad_partitions_are_rejected(text: str) -> None:
    with pytest.raises(InvalidPartition):
        Partition.parse(text)


@pytest.mark.parametrize(
    ("kind", "parts", "message"),
    [
        ("sp", (3, 2), "N even"),
        ("sp", (3, 1), "odd part 3"),
        ("so", (2, 1), "even part 2"),
        ("so", (1, 1), "N ≥ 3"),
        ("sl", (1,), "N ≥ 2"),
        ("su", (2,), "unknown classical type"),
    ],
)
def test_partitions_of_the_wrong_type_are_rejected(kind: str, parts: tuple[int, ...], message: str) -> None:
    with pytest.raises(InvalidPartition, match=message):
        restricted_data(kind, parts)


# ── Matrices ───────────────────────────────────────────────────────────────────


def test_sl8_matrix_e() -> None:
    e, _ = matrices(build_pyramid("sl", Partition.of([3, 3, 2])))
    assert e == {(8, 7): 1, (6, 5): 1, (5, 4): 1, (3, 2): 1, (2, 1): 1}


def test_sl8_matrix_h_reads_the_columns() -> None:
    _, h = matrices(build_pyramid("sl", Partition.of([3, 3, 2])))
    assert h == {(1, 1): -2, (3, 3): 2, (4, 4): -2, (6, 6): 2, (7, 7): -1, (8, 8): 1}


def test_sp8_matrix_e() -> None:
    e, _ = matrices(build_pyramid("sp", Partition.of([4, 2, 1, 1])))
    assert e == {(3, -3): 1, (2, 1): 1, (1, -1): 1, (-1, -2): -1}


def test_so9_matrix_e() -> None:
    e, _ = matrices(build_pyramid("so", Partition.of([5, 3, 1])))
    assert e == {
        (4, 3): 1,
        (4, -3): -1,
        (3, -4): 1,
        (-3, -4): -1,
        (2, 1): 1,
        (1, 0): 1,
        (0, -1): -1,
        (-1, -2): -1,
    }


@pytest.mark.parametrize(
    ("kind", "parts"),
    [("sl", (4, 2, 2)), ("sp", (4, 2, 1, 1)), ("sp", (3, 3, 2)), ("so", (5, 3, 1)), ("so", (4, 4, 3)), ("so", (3, 3, 1, 1))],
)
def test_e_has_the_requested_jordan_type(kind: str, parts: tuple[int, ...]) -> None:
    nil = restricted_data(kind, parts)
    assert jordan_type(dense(nil.pyramid, nil.e)) == Partition.of(parts)


# ── Polytopes and characteristics ──────────────────────────────────────────────


def test_sl8_dynkin_characteristic() -> None:
    pyr = build_pyramid("sl", Partition.of([3, 3, 2]))
    assert classical_characteristic(pyr, (0, 0, 0)) == (0, 1, 1, 0, 1, 1, 0)


def test_sl8_integral_classes() -> None:
    assert sorted(_classes("sl", (3, 3, 2))) == sorted(
        [(0, 2, 0, 0, 2, 0, 0), (0, 1, 1, 0, 1, 1, 0), (0, 0, 2, 0, 0, 2, 0)]
    )


def test_sl_polytope_lives_in_the_trace_zero_plane() -> None:
    poly = restricted_data("sl", (3, 3, 2)).polytope()
    assert poly.equalities == ((3, 3, 2),)
    assert poly.intrinsic_dim == 2
    assert all(poly.contains(p) for p in integral_points(poly))


def test_sp6_integral_gradings() -> None:
    nil = restricted_data("sp", (2, 2, 1, 1))
    assert len(integral_points(nil.polytope())) == 3
    assert sorted(_classes("sp", (2, 2, 1, 1))) == [(0, 1, 0), (2, 0, 0)]


def test_sp6_coordinate_bounds() -> None:
    assert coordinate_bounds(restricted_data("sp", (2, 2, 1, 1))) == (Fraction(3, 2), Fraction(1, 2))


def test_coordinate_bounds_are_not_stated_for_sl() -> None:
    with pytest.raises(InvalidPartition):
        coordinate_bounds(restricted_data("sl", (2, 1)))


@pytest.mark.parametrize(("kind", "parts", "order"), [("sl", (3, 3, 2), 1), ("sp", (2, 2, 1, 1), 2), ("so", (3, 3, 1, 1), 2)])
def test_component_group_orders(kind: str, parts: tuple[int, ...], order: int) -> None:
    comp = component_orders(restricted_data(kind, parts))
    assert comp.component_order == order
    assert comp.component_order * comp.identity_component_order == comp.weyl_order


def test_characteristic_outside_the_polytope_is_rejected() -> None:
    nil = restricted_data("sp", (2, 2, 1, 1))
    with pytest.raises(OutsidePolytope):
        nil.characteristic((5, 0), nil.polytope())


def test_shift_needs_one_coordinate_per_row() -> None:
    with pytest.raises(ShapeError):
        shift(build_pyramid("sl", Partition.of([3, 3, 2])), (0, 0))


def test_shift_moves_mirror_rows_the_other_way() -> None:
    pyr = build_pyramid("sp", Partition.of([2, 2, 1, 1]))
    moved = shift(pyr, (Fraction(1, 2), 0))
    for box in pyr.boxes:
        if box.row in pyr.rows[:1]:
            assert moved.col(box.label) == box.col + Fraction(1, 2)
        if box.row == -pyr.rows[0]:
            assert moved.col(box.label) == box.col - Fraction(1, 2)


def test_type_a_datum_agrees_with_the_pyramid() -> None:
    pyr = build_pyramid("sl", Partition.of([3, 3, 2]))
    datum, to_pairings = type_a_datum(pyr)
    rrs = restrict(datum.rs, datum.J)
    h = solve_h(datum)
    poly = restricted_data("sl", (3, 3, 2)).polytope()
    for p in integral_points(poly):
        assert characteristic(rrs, h, to_pairings.apply(p)) == classical_characteristic(pyr, p)


@pytest.mark.parametrize(("kind", "parts"), [("sp", (2, 2, 1, 1)), ("sl", (3, 3, 2))])
def test_integral_classes_match_characteristics(kind: str, parts: tuple[int, ...]) -> None:
    case = restricted_data(kind, parts).case()
    points = integral_points(case.poly)
    for p in points:
        for q in points:
            assert adjacent(case.poly, p, q) == adjacent(case.poly, q, p), (p, q)
    characteristics = {case.characteristic(p) for p in points}
    assert len(we_orbits(points, case.group)) == len(characteristics)


def test_type_a_datum_is_only_for_sl() -> None:
    with pytest.raises(InvalidPartition):
        type_a_datum(build_pyramid("sp", Partition.of([2, 2])))


# ── Rank oracle ────────────────────────────────────────────────────────────────


def test_dynkin_gradings_are_good() -> None:
    assert classical_oracle("so", (5, 3, 1), ())
    assert classical_oracle("sp", (4, 2, 1, 1), (0,))


@pytest.mark.parametrize(("kind", "parts"), [("sl", (3, 2)), ("sp", (2, 2, 1, 1)), ("so", (3, 3, 1, 1))])
def test_rank_oracle_matches_polytope_membership(kind: str, parts: tuple[int, ...]) -> None:
    nil = restricted_data(kind, parts)
    poly = nil.polytope()
    for p in sample_points(poly, 20, seed=11):
        assert classical_rank_report(nil, p).good == poly.contains(p), p


def test_rank_report_counts_the_centralizer() -> None:
    # dim 𝔤^e for sl3 with e of type (2,1) is 4
    nil = restricted_data("sl", (2, 1))
    assert classical_rank_report(nil, (0, 0)).centralizer_dim == 4
