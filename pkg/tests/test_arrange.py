"""Tests for arrangement analytics against the bundled table rows."""

from fractions import Fraction

import pytest

from goodgradings.arrange import (
    Arrangement,
    ArrangementStats,
    OpenRegion,
    affine_lines,
    alcove_count,
    char_poly,
    chamber_count,
    coxeter_h,
    exponents,
    sommers_check,
)
from goodgradings.errors import DimensionNot2, TheoremViolation
from goodgradings.fixtures import E6_ROWS, E7_ROWS, E8_ROWS, F4_ROWS, G2_ROWS, TABLES, TableRow
from goodgradings.jobs import arrangement_stats
from goodgradings.pyramids import restricted_data
from goodgradings.restrict import DEFAULT_BUDGET, restrict
from goodgradings.rootsys import build


def _found(row: TableRow) -> tuple[int, int, int, int, int, tuple[int, ...]]:
    rs = build(row.cartan_type, row.rank)
    stats = arrangement_stats(restrict(rs, [k - 1 for k in row.J]), DEFAULT_BUDGET)
    return (stats.hyperplanes, stats.chambers, stats.weyl_order, stats.levi_size, stats.h, stats.exponents)


@pytest.mark.parametrize("row", G2_ROWS + F4_ROWS, ids=lambda r: f"{r.system}-{r.levi}")
def test_table_rows(row: TableRow) -> None:
    assert _found(row) == row.expected


@pytest.mark.slow
@pytest.mark.parametrize("row", E6_ROWS, ids=lambda r: f"{r.system}-{r.levi}")
def test_e6_table_rows(row: TableRow) -> None:
    assert _found(row) == row.expected


@pytest.mark.slow
@pytest.mark.parametrize("row", E7_ROWS + E8_ROWS, ids=lambda r: f"{r.system}-{r.levi}")
def test_e7_e8_table_rows(row: TableRow) -> None:
    assert _found(row) == row.expected


def test_g2_characteristic_polynomial() -> None:
    arr = Arrangement.of_restricted(restrict(build("G", 2), ()))
    assert char_poly(arr) == [1, -6, 5]
    assert exponents(arr) == [1, 5]
    assert chamber_count(arr) == 12


def test_chamber_count_falls_back_to_characteristic_polynomial() -> None:
    rrs = restrict(build("G", 2), ())
    arr = Arrangement(rrs.dim, Arrangement.of_restricted(rrs).normals)
    assert chamber_count(arr) == 12


def test_g2_coxeter_number_on_long_root_levi() -> None:
    h, best = coxeter_h(build("G", 2), (1,))
    assert h == 4
    assert best == (1,)


def test_sommers_candidates() -> None:
    report = sommers_check(build("G", 2), (), 6, (1, 5))
    assert report.candidates == (1, 5)
    assert report.ok


def test_sommers_check_rejects_missing_exponent() -> None:
    with pytest.raises(TheoremViolation):
        sommers_check(build("G", 2), (), 6, (1,))


def test_sommers_candidates_avoid_every_coefficient_of_the_highest_root() -> None:
    # θ = 3α1 + 2α2, so 2 and 3 are both excluded below h^J = 4
    report = sommers_check(build("G", 2), (1,), 4, (1,))
    assert report.candidates == (1,)
    assert report.ok


def test_sommers_check_on_f4_levi_a2_plus_short_a1() -> None:
    report = sommers_check(build("F", 4), (0, 1, 3), 5, (1,))
    assert report.candidates == (1,)


@pytest.mark.parametrize(
    "row", [row for rows in TABLES.values() for row in rows], ids=lambda r: f"{r.system}-{r.levi}"
)
def test_sommers_check_accepts_every_table_row(row: TableRow) -> None:
    rs = build(row.cartan_type, row.rank)
    report = sommers_check(rs, [k - 1 for k in row.J], row.h, row.exponents)
    assert set(report.candidates) <= set(row.exponents)


def test_stats_check_rejects_inconsistent_counts() -> None:
    stats = ArrangementStats(6, 12, (1, 5), 6, (), 1, 11)
    with pytest.raises(TheoremViolation):
        stats.check()


def test_affine_lines_of_a_square() -> None:
    region = OpenRegion(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))), (Fraction(2), Fraction(2)))
    assert len(affine_lines(region)) == 6
    assert alcove_count(region) == 16


def test_alcoves_of_sl8_with_rows_3_3_2() -> None:
    _, region = restricted_data("sl", (3, 3, 2)).polytope().chart()
    assert alcove_count(region) == 14


def test_alcove_count_needs_a_plane() -> None:
    region = OpenRegion(((Fraction(1),),), (Fraction(2),))
    with pytest.raises(DimensionNot2, match="planar"):
        alcove_count(region)
