"""Unit tests for root systems, node orders and the ad-rank oracle."""

from fractions import Fraction

import pytest

from goodgradings.errors import InvalidCartanType, InvalidSubset
from goodgradings.rootsys import (
    NodeOrder,
    ad_rank_oracle,
    build,
    display_order,
    dominant_rep,
    format_labels,
    height,
)


def test_g2_has_twelve_roots_and_highest_root_of_height_five() -> None:
    rs = build("G", 2)
    assert len(rs.roots) == 12
    assert height(rs.highest_root) == 5


@pytest.mark.parametrize(
    ("cartan_type", "rank", "roots"),
    [("A", 3, 12), ("B", 3, 18), ("C", 4, 32), ("D", 4, 24), ("F", 4, 48), ("E", 6, 72), ("E", 7, 126)],
)
def test_root_counts(cartan_type: str, rank: int, roots: int) -> None:
    assert len(build(cartan_type, rank).roots) == roots


def test_e6_dimension() -> None:
    assert build("E", 6).dimension == 78


def test_e7_highest_root() -> None:
    assert build("E", 7).highest_root == (2, 2, 3, 4, 3, 2, 1)


def test_a2_cartan_matrix() -> None:
    assert build("A", 2).cartan == ((2, -1), (-1, 2))


def test_lowercase_type_is_accepted() -> None:
    assert build("g", 2).name == "G2"


@pytest.mark.parametrize(("cartan_type", "rank"), [("E", 5), ("F", 3), ("X", 2), ("D", 3)])
def test_invalid_types_are_rejected(cartan_type: str, rank: int) -> None:
    with pytest.raises(InvalidCartanType):
        build(cartan_type, rank)


def test_e_display_order_puts_node_two_last() -> None:
    assert display_order(build("E", 6)) == [0, 2, 3, 4, 5, 1]


def test_format_labels_e_type_diagram() -> None:
    assert format_labels(build("E", 6), [2, 0, 0, 0, 0, 2]) == "20002/0"


def test_format_labels_other_types_are_comma_joined() -> None:
    assert format_labels(build("A", 3), [0, 2, 0]) == "0,2,0"


def test_node_order_translates_user_labels() -> None:
    order = NodeOrder.parse(build("E", 7), [3, 4, 2, 5, 6, 7, 1])
    assert sorted(order.nodes([3, 4, 5, 6, 7])) == [0, 2, 4, 5, 6]
    assert order.nodes([1]) == [1]
    assert order.user_label(1) == 1


def test_node_order_rejects_non_permutation() -> None:
    with pytest.raises(InvalidSubset, match="permutation"):
        NodeOrder.parse(build("A", 3), [1, 1, 2])


def test_node_order_rejects_unknown_label() -> None:
    order = NodeOrder.standard(build("A", 3))
    with pytest.raises(InvalidSubset, match="no node labelled 4"):
        order.nodes([4])


def test_dominant_rep_is_dominant() -> None:
    rs = build("B", 3)
    labels, _ = dominant_rep(rs, [Fraction(-2), Fraction(1), Fraction(3)])
    assert all(x >= 0 for x in labels)


def test_dominant_rep_fixes_dominant_labels() -> None:
    rs = build("A", 2)
    labels, _ = dominant_rep(rs, [1, 2])
    assert labels == (1, 2)


def test_ad_rank_oracle_dynkin_grading_of_sl2_is_good() -> None:
    rs = build("A", 1)
    report = ad_rank_oracle(rs, [rs.simple(0)], [2])
    assert report.good


def test_ad_rank_oracle_rejects_wrong_degree() -> None:
    rs = build("A", 1)
    with pytest.raises(InvalidSubset, match="degree"):
        ad_rank_oracle(rs, [rs.simple(0)], [1])
