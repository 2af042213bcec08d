"""Published table rows and adjacency graphs used by the ``tables`` command.

Node subsets use Bourbaki labels (1-based). Rows read
(|𝒜^J|, |𝒞^J|, |W^J|, |𝒦_J|, h^J, exponents).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Final


@dataclass(frozen=True)
class TableRow:
    cartan_type: str
    rank: int
    levi: str
    J: tuple[int, ...]
    hyperplanes: int
    chambers: int
    weyl_order: int
    levi_size: int
    h: int
    exponents: tuple[int, ...]
    slow: bool = False

    @property
    def system(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    @property
    def expected(self) -> tuple[int, int, int, int, int, tuple[int, ...]]:
        return (self.hyperplanes, self.chambers, self.weyl_order, self.levi_size, self.h, self.exponents)


def _rows(
    cartan_type: str, rank: int, data: list[tuple[str, tuple[int, ...], int, int, int, int, int, tuple[int, ...]]],
    slow: bool = False,
) -> tuple[TableRow, ...]:
    return tuple(TableRow(cartan_type, rank, *row, slow=slow) for row in data)


G2_ROWS: Final = _rows(
    "G",
    2,
    [
        ("1", (), 6, 12, 12, 1, 6, (1, 5)),
        ("A1", (2,), 1, 2, 2, 1, 4, (1,)),
        ("~A1", (1,), 1, 2, 2, 1, 3, (1,)),
        ("G2", (1, 2), 0, 1, 1, 1, 1, ()),
    ],
)

F4_ROWS: Final = _rows(
    "F",
    4,
    [
        ("1", (), 24, 1152, 1152, 1, 12, (1, 5, 7, 11)),
        ("A1", (1,), 13, 96, 48, 2, 9, (1, 5, 7)),
        ("~A1", (4,), 13, 96, 48, 2, 8, (1, 5, 7)),
        ("A2", (1, 2), 6, 12, 12, 1, 7, (1, 5)),
        ("~A2", (3, 4), 6, 12, 12, 1, 6, (1, 5)),
        ("A1+~A1", (1, 3), 6, 12, 4, 3, 6, (1, 5)),
        ("B2", (2, 3), 4, 8, 8, 1, 5, (1, 3)),
        ("A2+~A1", (1, 2, 4), 1, 2, 2, 1, 5, (1,)),
        ("~A2+A1", (1, 3, 4), 1, 2, 2, 1, 4, (1,)),
        ("C3", (2, 3, 4), 1, 2, 2, 1, 3, (1,)),
        ("B3", (1, 2, 3), 1, 2, 2, 1, 3, (1,)),
        ("F4", (1, 2, 3, 4), 0, 1, 1, 1, 1, ()),
    ],
)

E6_ROWS: Final = _rows(
    "E",
    6,
    [
        ("1", (), 36, 51840, 51840, 1, 12, (1, 4, 5, 7, 8, 11)),
        ("A1", (1,), 25, 4320, 720, 6, 9, (1, 4, 5, 7, 8)),
        ("2A1", (1, 6), 17, 480, 48, 10, 8, (1, 4, 5, 7)),
        ("A2", (1, 3), 15, 360, 72, 5, 7, (1, 4, 5, 5)),
        ("A2+A1", (1, 3, 6), 10, 60, 6, 10, 6, (1, 4, 5)),
        ("3A1", (1, 4, 6), 10, 60, 12, 5, 6, (1, 4, 5)),
        ("A3", (1, 3, 4), 8, 40, 8, 5, 5, (1, 3, 4)),
        ("2A2", (1, 3, 5, 6), 6, 12, 12, 1, 6, (1, 5)),
        ("A2+2A1", (1, 2, 3, 5), 5, 10, 2, 5, 5, (1, 4)),
        ("A3+A1", (1, 3, 4, 6), 4, 8, 2, 4, 4, (1, 3)),
        ("A4", (1, 3, 4, 5), 4, 8, 2, 4, 4, (1, 3)),
        ("D4", (2, 3, 4, 5), 3, 6, 6, 1, 3, (1, 2)),
        ("2A2+A1", (1, 2, 3, 5, 6), 1, 2, 2, 1, 4, (1,)),
        ("A4+A1", (1, 2, 3, 4, 6), 1, 2, 1, 2, 3, (1,)),
        ("A5", (1, 3, 4, 5, 6), 1, 2, 2, 1, 3, (1,)),
        ("D5", (1, 2, 3, 4, 5), 1, 2, 1, 2, 2, (1,)),
        ("E6", (1, 2, 3, 4, 5, 6), 0, 1, 1, 1, 1, ()),
    ],
    slow=True,
)

E7_ROWS: Final = _rows(
    "E",
    7,
    [
        ("A3+A2", (1, 3, 5, 6, 7), 6, 12, 4, 3, 6, (1, 5)),
        ("2A2", (1, 3, 5, 6), 13, 96, 24, 4, 8, (1, 5, 7)),
    ],
    slow=True,
)

E8_ROWS: Final = _rows(
    "E",
    8,
    [
        ("A2+3A1", (1, 2, 3, 5, 7), 19, 192, 24, 8, 12, (1, 7, 11)),
        ("2A2+A1", (1, 2, 3, 5, 6), 19, 192, 24, 8, 12, (1, 7, 11)),
        ("A3+2A1", (2, 3, 4, 6, 8), 17, 160, 16, 10, 11, (1, 7, 9)),
        ("A3+A2", (2, 3, 4, 6, 7), 17, 160, 16, 10, 10, (1, 7, 9)),
        ("A4+A1", (1, 2, 3, 4, 6), 16, 144, 12, 12, 9, (1, 7, 8)),
        ("D4+A1", (2, 3, 4, 5, 7), 13, 96, 48, 2, 9, (1, 5, 7)),
        ("A5", (1, 3, 4, 5, 6), 13, 96, 24, 4, 8, (1, 5, 7)),
        ("D5", (1, 2, 3, 4, 5), 13, 96, 48, 2, 8, (1, 5, 7)),
        ("2A2+2A1", (1, 2, 3, 5, 6, 8), 8, 16, 8, 2, 10, (1, 7)),
        ("A3+A2+A1", (1, 2, 3, 5, 6, 7), 8, 16, 4, 4, 9, (1, 7)),
        ("A4+2A1", (1, 2, 3, 4, 6, 8), 8, 16, 4, 4, 8, (1, 7)),
        ("2A3", (2, 3, 4, 6, 7, 8), 8, 16, 8, 2, 8, (1, 7)),
        ("A5+A1", (1, 3, 4, 5, 6, 8), 6, 12, 4, 3, 7, (1, 5)),
        ("D4+A2", (2, 3, 4, 5, 7, 8), 6, 12, 12, 1, 7, (1, 5)),
        ("A6", (1, 3, 4, 5, 6, 7), 6, 12, 4, 3, 6, (1, 5)),
        ("D5+A1", (1, 2, 3, 4, 5, 7), 6, 12, 4, 3, 6, (1, 5)),
        ("E6", (1, 2, 3, 4, 5, 6), 6, 12, 12, 1, 6, (1, 5)),
        ("D6", (2, 3, 4, 5, 6, 7), 4, 8, 8, 1, 5, (1, 3)),
        ("A4+A2+A1", (1, 2, 3, 5, 6, 7, 8), 1, 2, 2, 1, 7, (1,)),
        ("A4+A3", (1, 2, 3, 4, 6, 7, 8), 1, 2, 2, 1, 6, (1,)),
        ("A6+A1", (1, 2, 4, 5, 6, 7, 8), 1, 2, 2, 1, 5, (1,)),
        ("D5+A2", (1, 2, 3, 4, 5, 7, 8), 1, 2, 2, 1, 5, (1,)),
        ("E6+A1", (1, 2, 3, 4, 5, 6, 8), 1, 2, 2, 1, 4, (1,)),
        ("A7", (1, 3, 4, 5, 6, 7, 8), 1, 2, 2, 1, 4, (1,)),
        ("D7", (2, 3, 4, 5, 6, 7, 8), 1, 2, 2, 1, 3, (1,)),
        ("E7", (1, 2, 3, 4, 5, 6, 7), 1, 2, 2, 1, 3, (1,)),
        ("E8", (1, 2, 3, 4, 5, 6, 7, 8), 0, 1, 1, 1, 1, ()),
    ],
    slow=True,
)

TABLES: Final = {
    "G2": G2_ROWS,
    "F4": F4_ROWS,
    "E6": E6_ROWS,
    "E7": E7_ROWS,
    "E8": E8_ROWS,
}


def table_rows(cartan_type: str, rank: int, levi: str | None = None) -> tuple[TableRow, ...]:
    """Bundled rows for one system, optionally a single Levi label such as ``A3+A2``."""
    rows = TABLES.get(f"{cartan_type.upper()}{rank}", ())
    if levi is not None:
        rows = tuple(r for r in rows if r.levi == levi)
    return rows


# ── Adjacency graphs ───────────────────────────────────────────────────────────


@dataclass(frozen=True)
class AdjacencyFixture:
    """A path of characteristics for the nilpotent principal in the Levi of ``J`` (E6)."""

    levi: str
    J: tuple[int, ...]
    path: tuple[str, ...]
    dynkin: str


E6_ADJACENCY: Final = (
    AdjacencyFixture(
        "A3",
        (1, 3, 4),
        ("00022/0", "00012/1", "00002/2", "10001/2", "20000/2", "21000/1", "22000/0"),
        "10001/2",
    ),
    AdjacencyFixture(
        "A3+A1",
        (1, 3, 4, 6),
        ("10102/0", "10011/1", "01010/1", "11001/1", "20101/0"),
        "01010/1",
    ),
    AdjacencyFixture("A2+2A1", (1, 2, 3, 5), ("00020/0", "01010/0", "02000/0"), "01010/0"),
    AdjacencyFixture("2A1", (1, 6), ("00002/0", "10001/0", "20000/0"), "10001/0"),
)


# ── Component groups ───────────────────────────────────────────────────────────


@dataclass(frozen=True)
class ComponentFixture:
    """|Z_e| for a nilpotent given by J and its labels on J."""

    cartan_type: str
    rank: int
    label: str
    J: tuple[int, ...]
    labels: tuple[int, ...]
    component_order: int


COMPONENT_ORDERS: Final = (
    ComponentFixture("F", 4, "~A1", (4,), (2,), 2),
    ComponentFixture("F", 4, "A2", (1, 2), (2, 2), 2),
    ComponentFixture("F", 4, "B2", (2, 3), (2, 2), 2),
    ComponentFixture("E", 6, "A2", (1, 3), (2, 2), 2),
    ComponentFixture("E", 6, "D4(a1)", (2, 3, 4, 5), (2, 2, 0, 2), 6),
    ComponentFixture("E", 7, "A3+A2", (1, 3, 5, 6, 7), (2, 2, 2, 2, 2), 2),
)
