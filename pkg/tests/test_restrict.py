"""Unit tests for restricted root systems, chambers, W^J and Levi classes."""

from fractions import Fraction

import pytest

from goodgradings.errors import InvalidSubset, NonRegular
from goodgradings.restrict import (
    all_bases,
    base_from_regular,
    chambers,
    close_group,
    levi_class,
    restrict,
    restricted_cartan,
    restricted_weyl,
    verify_closure_properties,
)
from goodgradings.rootsys import build

# E7 with J = {1,3,5,6,7} (Bourbaki), the Levi subalgebra of type A3+A2
E7_J = (0, 2, 4, 5, 6)


def test_e7_restricted_gram_matrix() -> None:
    rrs = restrict(build("E", 7), E7_J)
    assert rrs.I == (1, 3)
    assert rrs.gram.rows == ((2, -1), (-1, Fraction(7, 12)))


def test_e7_restricted_cartan_matrix_is_not_symmetrizable_by_integers() -> None:
    rrs = restrict(build("E", 7), E7_J)
    base = base_from_regular(rrs, [1, 1])
    assert base.is_base()
    assert restricted_cartan(base).rows == ((2, Fraction(-24, 7)), (-1, 2))


def test_e7_highest_restricted_root() -> None:
    assert restrict(build("E", 7), E7_J).highest() == (2, 4)


def test_e7_chambers_and_levi_class() -> None:
    rs = build("E", 7)
    rrs = restrict(rs, E7_J)
    assert len(chambers(rrs)) == 12
    assert len(levi_class(rs, E7_J).members) == 3


@pytest.mark.slow
def test_e7_restricted_weyl_group_order() -> None:
    group = restricted_weyl(restrict(build("E", 7), E7_J))
    assert group.order == 4
    assert len(group.elements()) == 4


def test_e7_restricted_weyl_group_by_chamber_lifts() -> None:
    group = restricted_weyl(restrict(build("E", 7), E7_J), method="chambers")
    assert group.order == 4
    assert group.method == "chambers"


def test_g2_without_subset_recovers_the_root_system() -> None:
    rrs = restrict(build("G", 2), ())
    assert len(rrs.vectors) == 12
    assert len(chambers(rrs)) == 12
    assert restricted_weyl(rrs).order == 12


def test_g2_rank_one_restriction() -> None:
    rrs = restrict(build("G", 2), (1,))
    assert rrs.vectors[: rrs.n_positive] == ((1,), (2,), (3,))
    assert len(chambers(rrs)) == 2


def test_every_chamber_base_is_a_base() -> None:
    rrs = restrict(build("F", 4), (0, 1))
    bases = all_bases(rrs)
    assert len(bases) == 12
    assert all(b.is_base() for b in bases)


def test_closure_properties_hold_for_f4() -> None:
    verify_closure_properties(restrict(build("F", 4), (0,)))


def test_levi_class_methods_agree() -> None:
    rs = build("B", 3)
    closure = levi_class(rs, (0,))
    exhaustive = levi_class(rs, (0,), method="exhaustive")
    by_chambers = levi_class(rs, (0,), method="chambers")
    assert closure.members == exhaustive.members == by_chambers.members


def test_base_from_singular_point_is_rejected() -> None:
    rrs = restrict(build("G", 2), ())
    with pytest.raises(NonRegular):
        base_from_regular(rrs, [0, 1])


def test_subset_outside_the_diagram_is_rejected() -> None:
    with pytest.raises(InvalidSubset, match="not inside"):
        restrict(build("G", 2), (5,))


def test_close_group_generates_symmetric_group() -> None:
    assert len(close_group([(1, 0, 2), (0, 2, 1)], (0, 1, 2))) == 6
