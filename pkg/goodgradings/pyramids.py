"""Classical nilpotent orbits through Dynkin pyramids.

A nilpotent element of sl_N, sp_N or so_N is given by a partition λ of N.
Each classical type is a :class:`ClassicalType` strategy that lays out the
pyramid rows, lists its Chevalley basis and encodes its Weyl group rules; the
shared pipeline turns the pyramid into matrices e and h, the restricted data
(Φ_e, d(α), W_e), the good grading polytope in the coordinates
p = (p₁,…,p_m) of the non-skew rows, shifted pyramids π(p) and
characteristics.

Box labels are 1..N for sl and ±1..±n (plus 0 for odd N) for sp and so.
Positive labels go to the boxes with row > 0, or row 0 and column > 0, in
(row, column) order, so the numbering matches the pictures of the pyramids
that are usually drawn for these examples.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Final

from goodgradings.errors import InvalidPartition, OutsidePolytope, ShapeError, TheoremViolation
from goodgradings.exact import QMatrix, QVector, Scalar, rank, vec, zeros
from goodgradings.grading import (
    GoodGradingPolytope,
    GradingCase,
    NilpotentDatum,
    finish,
    format_point,
)
from goodgradings.restrict import Perm, close_group
from goodgradings.rootsys import AdRankReport, build

logger = logging.getLogger(__name__)

CLASSICAL_TYPES: Final = ("sl", "sp", "so")

SparseMatrix = dict[tuple[int, int], int]


# ── Partitions ─────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts λ₁ ≥ λ₂ ≥ …"""

    parts: tuple[int, ...]

    @classmethod
    def of(cls, parts: Iterable[int]) -> Partition:
        ps = tuple(sorted((int(x) for x in parts), reverse=True))
        if not ps or ps[-1] <= 0:
            raise InvalidPartition("a partition needs at least one part and only positive parts")
        return cls(ps)

    @classmethod
    def parse(cls, text: str) -> Partition:
        try:
            return cls.of(int(x) for x in text.replace(" ", "").split(",") if x)
        except ValueError as exc:
            if isinstance(exc, InvalidPartition):
                raise
            raise InvalidPartition(f"cannot read partition {text!r}") from exc

    @property
    def total(self) -> int:
        return sum(self.parts)

    def multiplicity(self, t: int) -> int:
        return self.parts.count(t)

    def distinct(self) -> list[int]:
        return sorted(set(self.parts), reverse=True)

    def odd_multiplicity(self) -> list[int]:
        """Parts t whose multiplicity is odd, largest first."""
        return [t for t in self.distinct() if self.multiplicity(t) % 2]

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


# ── Pyramids ───────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class Box:
    label: int
    row: int
    col: Fraction


@dataclass(frozen=True)
class _Row:
    """One row of the upper half plane; sp/so rows above 0 imply their mirror image."""

    row: int
    cols: tuple[int, ...]
    skew: bool = False


def _full(t: int) -> tuple[int, ...]:
    return tuple(range(1 - t, t, 2))


@dataclass(frozen=True)
class Pyramid:
    """A (possibly shifted) Dynkin pyramid.

    ``rows`` are the non-skew rows r₁ < … < r_m of the upper half plane and
    ``skew_rows`` the skew rows there (row 0 included when it is skew).
    """

    kind: str
    partition: Partition
    boxes: tuple[Box, ...]
    rows: tuple[int, ...]
    skew_rows: tuple[int, ...]

    @property
    def n(self) -> int:
        """Number of positive labels."""
        return sum(1 for b in self.boxes if b.label > 0)

    @property
    def row_lengths(self) -> tuple[int, ...]:
        """λ̄_i, the number of boxes in row r_i."""
        return tuple(sum(1 for b in self.boxes if b.row == r) for r in self.rows)

    def labels(self) -> list[int]:
        """Basis order of the natural module: 1..n, then 0 if present, then −n..−1."""
        positive = sorted(b.label for b in self.boxes if b.label > 0)
        if self.kind == "sl":
            return positive
        middle = [0] if any(b.label == 0 for b in self.boxes) else []
        return positive + middle + [-k for k in reversed(positive)]

    def col(self, label: int) -> Fraction:
        return next(b.col for b in self.boxes if b.label == label)

    def row_of(self, label: int) -> int:
        return next(b.row for b in self.boxes if b.label == label)

    def text(self) -> list[str]:
        """Rows from top to bottom as ``row: label@col`` strings."""
        out = []
        for r in sorted({b.row for b in self.boxes}, reverse=True):
            cells = sorted((b for b in self.boxes if b.row == r), key=lambda b: b.col)
            mark = "*" if abs(r) in self.skew_rows else " "
            out.append(f"{r:>3}{mark} " + " ".join(f"{b.label}@{b.col}" for b in cells))
        return out


# ── Classical types ────────────────────────────────────────────────────────────


class ClassicalType(ABC):
    """Strategy for one family of classical Lie algebras."""

    name: str

    @abstractmethod
    def validate(self, lam: Partition) -> None:
        """Raise InvalidPartition when λ does not label a nilpotent orbit of this type."""

    @abstractmethod
    def layout(self, lam: Partition) -> list[_Row]:
        """Rows of the upper half plane, innermost first."""

    @abstractmethod
    def basis(self, n: int, odd: bool) -> list[SparseMatrix]:
        """Chevalley basis of the algebra in the label coordinates."""

    @abstractmethod
    def roots(self, lbar: Sequence[int], lam: Partition, skew: bool) -> list[ClassicalRoot]:
        """Φ_e⁺ with its d-values."""

    @abstractmethod
    def characteristic(self, cols: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Characteristic read off the columns of the boxes 1..n."""

    def weyl_generators(self, lbar: Sequence[int], skew: bool) -> list[Perm]:
        m = len(lbar)
        return [
            _swap(m, i, j) for i in range(m) for j in range(i + 1, m) if lbar[i] == lbar[j]
        ]

    def sigma(self, n: int, odd: bool) -> dict[tuple[int, int], int]:
        """σ_{i,j}: the coefficient of e_{i,j} in the basis, for off-diagonal units."""
        out: dict[tuple[int, int], int] = {}
        for x in self.basis(n, odd):
            for (a, b), c in x.items():
                if a != b:
                    out[a, b] = c
        return out


@dataclass(frozen=True)
class ClassicalRoot:
    functional: QVector
    d: int
    name: str


def _pair_roots(lbar: Sequence[int], signs: str) -> list[ClassicalRoot]:
    out = []
    m = len(lbar)
    for i in range(m):
        for j in range(i + 1, m):
            d = 1 + abs(lbar[i] - lbar[j])
            for s in signs:
                f = [Fraction(0)] * m
                f[i] = Fraction(1)
                f[j] = Fraction(1 if s == "+" else -1)
                out.append(ClassicalRoot(tuple(f), d, f"e{i + 1}{s}e{j + 1}"))
    return out


def _unit(m: int, k: int, c: int) -> QVector:
    return tuple(Fraction(c if i == k else 0) for i in range(m))


def _short_root_d(lbar_h: int, lam: Partition) -> int:
    return 1 + min(abs(lbar_h - t) for t in lam.odd_multiplicity())


def _swap(m: int, i: int, j: int) -> Perm:
    g = list(range(2 * m))
    g[i], g[j], g[i + m], g[j + m] = j, i, j + m, i + m
    return tuple(g)


def _flip(m: int, *ks: int) -> Perm:
    g = list(range(2 * m))
    for k in ks:
        g[k], g[k + m] = k + m, k
    return tuple(g)


def _swap_flip(m: int, i: int, j: int) -> Perm:
    g = list(range(2 * m))
    g[i], g[j], g[i + m], g[j + m] = j + m, i + m, j, i
    return tuple(g)


def _sorted_abs(cols: Sequence[Fraction]) -> list[Fraction]:
    return sorted((abs(c) for c in cols), reverse=True)


def _differences(values: Sequence[Fraction]) -> list[Fraction]:
    return [values[i] - values[i + 1] for i in range(len(values) - 1)]


class SpecialLinear(ClassicalType):
    name = "sl"

    def validate(self, lam: Partition) -> None:
        if lam.total < 2:
            raise InvalidPartition("sl_N needs N ≥ 2")

    def layout(self, lam: Partition) -> list[_Row]:
        return [_Row(2 * i + 1, _full(t)) for i, t in enumerate(lam.parts)]

    def basis(self, n: int, odd: bool) -> list[SparseMatrix]:
        out: list[SparseMatrix] = [{(i, j): 1} for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        out.extend({(i, i): 1, (i + 1, i + 1): -1} for i in range(1, n))
        return out

    def roots(self, lbar: Sequence[int], lam: Partition, skew: bool) -> list[ClassicalRoot]:
        return _pair_roots(lbar, "-")

    def characteristic(self, cols: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(_differences(sorted(cols, reverse=True)))


class Symplectic(ClassicalType):
    name = "sp"

    def validate(self, lam: Partition) -> None:
        if lam.total % 2:
            raise InvalidPartition(f"sp_N needs N even, got N = {lam.total}")
        bad = [t for t in lam.odd_multiplicity() if t % 2]
        if bad:
            raise InvalidPartition(f"sp: odd part {bad[0]} must have even multiplicity")

    def layout(self, lam: Partition) -> list[_Row]:
        rows = []
        y = 0 if lam.multiplicity(lam.parts[0]) % 2 else 1
        for t in lam.distinct():
            m = lam.multiplicity(t)
            if m % 2:
                # right half up, left half at the mirror image
                rows.append(_Row(y, _full(t) if y == 0 else tuple(range(1, t, 2)), skew=True))
                y += 2
            for _ in range(m // 2):
                rows.append(_Row(y, _full(t)))
                y += 2
        return rows

    def basis(self, n: int, odd: bool) -> list[SparseMatrix]:
        out: list[SparseMatrix] = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                out.append(_combine({(i, j): 1}, {(-j, -i): -1}))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out.append({(i, -j): 1, (j, -i): 1})
                out.append({(-i, j): 1, (-j, i): 1})
        for k in range(1, n + 1):
            out.append({(k, -k): 1})
            out.append({(-k, k): 1})
        return out

    def roots(self, lbar: Sequence[int], lam: Partition, skew: bool) -> list[ClassicalRoot]:
        m = len(lbar)
        out = _pair_roots(lbar, "-+")
        for k in range(m):
            out.append(ClassicalRoot(_unit(m, k, 2), 1 if lbar[k] % 2 else 3, f"2e{k + 1}"))
        if skew:
            for h in range(m):
                out.append(ClassicalRoot(_unit(m, h, 1), _short_root_d(lbar[h], lam), f"e{h + 1}"))
        return out

    def weyl_generators(self, lbar: Sequence[int], skew: bool) -> list[Perm]:
        m = len(lbar)
        return super().weyl_generators(lbar, skew) + [_flip(m, k) for k in range(m)]

    def characteristic(self, cols: Sequence[Fraction]) -> tuple[Fraction, ...]:
        values = _sorted_abs(cols)
        return (*_differences(values), 2 * values[-1])


class Orthogonal(ClassicalType):
    name = "so"

    def __init__(self, odd: bool = True) -> None:
        self._odd = odd

    def validate(self, lam: Partition) -> None:
        if lam.total < 3:
            raise InvalidPartition("so_N needs N ≥ 3; so_2 is abelian and every grading is good")
        bad = [t for t in lam.odd_multiplicity() if t % 2 == 0]
        if bad:
            raise InvalidPartition(f"so: even part {bad[0]} must have even multiplicity")

    def layout(self, lam: Partition) -> list[_Row]:
        counts = {t: lam.multiplicity(t) for t in lam.distinct()}
        rows = []
        y = 1
        if lam.total % 2:
            t0 = max(t for t in lam.odd_multiplicity() if t % 2)
            rows.append(_Row(0, _full(t0), skew=True))
            counts[t0] -= 1
            y = 2
        odd = [t for t in lam.distinct() if counts[t] % 2]
        partner = {odd[2 * s]: odd[2 * s + 1] for s in range(len(odd) // 2)}
        for t in lam.distinct():
            if t in partner:
                u = partner[t]
                rows.append(_Row(y, tuple(range(1 - u, t, 2)), skew=True))
                counts[t] -= 1
                counts[u] -= 1
                y += 2
            for _ in range(counts[t] // 2):
                rows.append(_Row(y, _full(t)))
                y += 2
        return rows

    def basis(self, n: int, odd: bool) -> list[SparseMatrix]:
        # the form has (v₀, v₀) = 1, so e_{k,0} and e_{0,−k} enter with coefficients ±1
        out: list[SparseMatrix] = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                out.append(_combine({(i, j): 1}, {(-j, -i): -1}))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out.append({(i, -j): 1, (j, -i): -1})
                out.append({(-j, i): 1, (-i, j): -1})
        if odd:
            for k in range(1, n + 1):
                out.append({(k, 0): 1, (0, -k): -1})
                out.append({(0, k): 1, (-k, 0): -1})
        return out

    def roots(self, lbar: Sequence[int], lam: Partition, skew: bool) -> list[ClassicalRoot]:
        m = len(lbar)
        out = _pair_roots(lbar, "-+")
        for k in range(m):
            if lbar[k] != 1:
                out.append(ClassicalRoot(_unit(m, k, 2), 3 if lbar[k] % 2 else 1, f"2e{k + 1}"))
        if skew:
            for h in range(m):
                out.append(ClassicalRoot(_unit(m, h, 1), _short_root_d(lbar[h], lam), f"e{h + 1}"))
        return out

    def weyl_generators(self, lbar: Sequence[int], skew: bool) -> list[Perm]:
        m = len(lbar)
        gens = super().weyl_generators(lbar, skew)
        if skew:
            return gens + [_flip(m, k) for k in range(m)]
        gens += [_flip(m, k) for k in range(m) if lbar[k] % 2 == 0]
        odd = [k for k in range(m) if lbar[k] % 2]
        gens += [_flip(m, a, b) for a, b in zip(odd, odd[1:])]
        return gens

    def characteristic(self, cols: Sequence[Fraction]) -> tuple[Fraction, ...]:
        values = _sorted_abs(cols)
        if self._odd:
            return (*_differences(values), values[-1])
        negatives = sum(1 for c in cols if c < 0)
        if negatives % 2 and all(c != 0 for c in cols):
            values[-1] = -values[-1]
        return (*_differences(values), values[-2] + values[-1])


def _combine(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    out = dict(a)
    for key, c in b.items():
        out[key] = out.get(key, 0) + c
        if out[key] == 0:
            del out[key]
    return out


def classical_type(kind: str, lam: Partition | None = None) -> ClassicalType:
    """Strategy for ``kind``; so needs λ to know the parity of N."""
    if kind == "sl":
        return SpecialLinear()
    if kind == "sp":
        return Symplectic()
    if kind == "so":
        return Orthogonal(odd=lam is not None and lam.total % 2 == 1)
    raise InvalidPartition(f"unknown classical type {kind!r}; expected one of {', '.join(CLASSICAL_TYPES)}")


def build_pyramid(kind: str, lam: Partition) -> Pyramid:
    """Dynkin pyramid of type ``kind`` and shape λ."""
    strategy = classical_type(kind, lam)
    strategy.validate(lam)
    rows = strategy.layout(lam)
    cells: list[tuple[int, int]] = []
    for r in rows:
        cells.extend((r.row, c) for c in r.cols)
    if kind == "sl":
        boxes = tuple(Box(i + 1, row, Fraction(col)) for i, (row, col) in enumerate(cells))
    else:
        upper = sorted((row, col) for row, col in cells if row > 0 or (row == 0 and col > 0))
        out = [Box(0, 0, Fraction(0))] if (0, 0) in cells else []
        for k, (row, col) in enumerate(upper, start=1):
            out.append(Box(k, row, Fraction(col)))
            out.append(Box(-k, -row, Fraction(-col)))
        boxes = tuple(sorted(out, key=lambda b: (b.label < 0, abs(b.label))))
    pyr = Pyramid(
        kind,
        lam,
        boxes,
        tuple(r.row for r in rows if not r.skew),
        tuple(r.row for r in rows if r.skew),
    )
    if len(pyr.boxes) != lam.total:
        raise TheoremViolation(f"pyramid of {lam} has {len(pyr.boxes)} boxes")
    logger.debug("%s pyramid of %s: rows %s, skew %s", kind, lam, pyr.rows, pyr.skew_rows)
    return pyr


# ── Matrices ───────────────────────────────────────────────────────────────────


def matrices(pyr: Pyramid) -> tuple[SparseMatrix, SparseMatrix]:
    """(e, h) with e = Σ σ_{i,j} e_{i,j} over row successors and skew bridges, h = Σ col(i) e_{i,i}."""
    strategy = classical_type(pyr.kind, pyr.partition)
    odd = any(b.label == 0 for b in pyr.boxes)
    sigma = strategy.sigma(pyr.n, odd) if pyr.kind != "sl" else None
    by_cell = {(b.row, b.col): b.label for b in pyr.boxes}
    pairs: set[tuple[int, int]] = set()
    for b in pyr.boxes:
        j = by_cell.get((b.row, b.col - 2))
        if j is not None:
            pairs.add((b.label, j))
    bridges = ((1, -1),) if pyr.kind == "sp" else ((2, 0), (0, -2))
    for r in pyr.skew_rows:
        # from the upper skew row to its mirror image
        for ci, cj in bridges:
            i = by_cell.get((r, Fraction(ci)))
            j = by_cell.get((-r, Fraction(cj)))
            if i is not None and j is not None:
                pairs.add((i, j))
    e: SparseMatrix = {}
    for i, j in sorted(pairs):
        e[i, j] = 1 if sigma is None else sigma[i, j]
    h: SparseMatrix = {}
    for b in pyr.boxes:
        if b.col != 0:
            if b.col.denominator != 1:
                raise TheoremViolation("h is only defined on an unshifted pyramid")
            h[b.label, b.label] = int(b.col)
    return e, h


def dense(pyr: Pyramid, m: SparseMatrix) -> QMatrix:
    labels = pyr.labels()
    pos = {a: i for i, a in enumerate(labels)}
    rows = [[Fraction(0)] * len(labels) for _ in labels]
    for (a, b), c in m.items():
        rows[pos[a]][pos[b]] += c
    return QMatrix.of(rows, len(labels))


def multiply(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    by_row: dict[int, list[tuple[int, int]]] = {}
    for (k, j), c in b.items():
        by_row.setdefault(k, []).append((j, c))
    out: dict[tuple[int, int], int] = {}
    for (i, k), x in a.items():
        for j, y in by_row.get(k, ()):
            out[i, j] = out.get((i, j), 0) + x * y
    return {key: c for key, c in out.items() if c}


def bracket(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    neg = {key: -c for key, c in multiply(b, a).items()}
    return _combine(multiply(a, b), neg)


def jordan_type(m: QMatrix) -> Partition:
    """Jordan type of a nilpotent matrix from the ranks of its powers."""
    n = m.nrows
    ranks = [n]
    power = m
    while ranks[-1] > 0:
        ranks.append(rank(power))
        if len(ranks) > n + 1:
            raise TheoremViolation("matrix is not nilpotent")
        power = power @ m
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts: list[int] = []
    for k in range(1, len(at_least) + 1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        parts.extend([k] * exactly)
    return Partition.of(parts)


def form_matrix(pyr: Pyramid) -> QMatrix:
    """Gram matrix of the invariant form on the label basis: skew for sp, symmetric for so."""
    labels = pyr.labels()
    pos = {a: i for i, a in enumerate(labels)}
    rows = [[Fraction(0)] * len(labels) for _ in labels]
    for a in labels:
        if a > 0:
            rows[pos[a]][pos[-a]] = Fraction(1)
            rows[pos[-a]][pos[a]] = Fraction(-1 if pyr.kind == "sp" else 1)
        elif a == 0:
            rows[pos[0]][pos[0]] = Fraction(1)
    return QMatrix.of(rows, len(labels))


def preserves_form(pyr: Pyramid, x: SparseMatrix) -> bool:
    """xᵀΩ + Ωx = 0."""
    omega = form_matrix(pyr)
    mx = dense(pyr, x)
    left = mx.transpose() @ omega
    right = omega @ mx
    return all(a + b == 0 for r1, r2 in zip(left.rows, right.rows) for a, b in zip(r1, r2))


# ── Restricted data and the polytope ───────────────────────────────────────────


@dataclass(frozen=True)
class ClassicalNilpotent:
    """Everything the grading pipeline needs for a classical nilpotent."""

    kind: str
    partition: Partition
    pyramid: Pyramid
    e: SparseMatrix
    h: SparseMatrix
    roots: tuple[ClassicalRoot, ...]
    weyl_generators: tuple[Perm, ...]

    @property
    def row_lengths(self) -> tuple[int, ...]:
        return self.pyramid.row_lengths

    @property
    def dim(self) -> int:
        return len(self.pyramid.rows)

    @property
    def has_skew_rows(self) -> bool:
        return bool(self.pyramid.skew_rows)

    def row_multiplicities(self) -> dict[int, int]:
        """m̄_i, the multiplicity of i among the λ̄."""
        out: dict[int, int] = {}
        for t in self.row_lengths:
            out[t] = out.get(t, 0) + 1
        return out

    @property
    def equalities(self) -> tuple[QVector, ...]:
        if self.kind == "sl":
            return (vec(self.row_lengths),)
        return ()

    def polytope(self, pruned: bool = True) -> GoodGradingPolytope:
        m = self.dim
        weight = 1 if self.kind == "sl" else 2
        metric = QMatrix.of(
            ([Fraction(weight * t if i == j else 0) for j in range(m)] for i, t in enumerate(self.row_lengths)),
            m,
        )
        raw = GoodGradingPolytope(
            m,
            tuple(r.functional for r in self.roots),
            tuple(Fraction(r.d) for r in self.roots),
            tuple(r.name for r in self.roots),
            metric,
            self.equalities,
        )
        return finish(raw, pruned)

    def group(self) -> SignedPermutationGroup:
        return SignedPermutationGroup(self.dim, self.weyl_generators)

    def characteristic(self, p: Sequence[Scalar], poly: GoodGradingPolytope | None = None) -> tuple[Fraction, ...]:
        if poly is not None and not poly.contains(p):
            raise OutsidePolytope(f"point {format_point(p)} is outside the good grading polytope")
        return classical_characteristic(self.pyramid, p)

    def case(self, pruned: bool = True) -> GradingCase:
        poly = self.polytope(pruned)
        return GradingCase(
            poly,
            self.group(),
            lambda p: self.characteristic(p, poly),
            lambda c: ",".join(str(x) for x in c),
        )

    def check(self) -> None:
        """Jordan type, [h, e] = 2e and membership of e and h in the algebra."""
        found = jordan_type(dense(self.pyramid, self.e))
        if found != self.partition:
            raise TheoremViolation(f"e has Jordan type {found}, expected {self.partition}")
        if bracket(self.h, self.e) != {key: 2 * c for key, c in self.e.items()}:
            raise TheoremViolation("[h, e] ≠ 2e")
        if self.kind != "sl" and not (preserves_form(self.pyramid, self.e) and preserves_form(self.pyramid, self.h)):
            raise TheoremViolation(f"e or h does not preserve the {self.kind} form")


def restricted_data(kind: str, partition: Partition | Sequence[int]) -> ClassicalNilpotent:
    """Pyramid, matrices, Φ_e with d(α), and W_e generators; verifies e and h."""
    lam = partition if isinstance(partition, Partition) else Partition.of(partition)
    pyr = build_pyramid(kind, lam)
    strategy = classical_type(kind, lam)
    e, h = matrices(pyr)
    skew = bool(pyr.skew_rows)
    nil = ClassicalNilpotent(
        kind,
        lam,
        pyr,
        e,
        h,
        tuple(strategy.roots(pyr.row_lengths, lam, skew)),
        tuple(strategy.weyl_generators(pyr.row_lengths, skew)),
    )
    nil.check()
    return nil


class SignedPermutationGroup:
    """Permutations and sign changes of p₁..p_m.

    An element is a permutation of 0..2m−1 where k stands for +ε_k and
    k + m for −ε_k.
    """

    def __init__(self, m: int, generators: Iterable[Perm]) -> None:
        self.m = m
        self.generators = tuple(generators)
        self._elements: list[Perm] | None = None

    @property
    def identity(self) -> Perm:
        return tuple(range(2 * self.m))

    def elements(self) -> list[Perm]:
        if self._elements is None:
            self._elements = sorted(close_group(self.generators, self.identity))
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements())

    def act(self, g: Perm, p: Sequence[Scalar]) -> QVector:
        out = list(zeros(self.m))
        for i in range(self.m):
            t = g[i]
            out[t % self.m] = Fraction(p[i]) if t < self.m else -Fraction(p[i])
        return tuple(out)


# ── Shifted pyramids and characteristics ──────────────────────────────────────


def shift(pyr: Pyramid, p: Sequence[Scalar]) -> Pyramid:
    """π(p): boxes in row r_i move right by p_i and, for sp/so, boxes in row −r_i move left by p_i."""
    if len(p) != len(pyr.rows):
        raise ShapeError(f"expected {len(pyr.rows)} coordinates, got {len(p)}")
    offset: dict[int, Fraction] = {}
    for r, x in zip(pyr.rows, p):
        offset[r] = Fraction(x)
        if pyr.kind != "sl":
            offset[-r] = -Fraction(x)
    boxes = tuple(Box(b.label, b.row, b.col + offset.get(b.row, Fraction(0))) for b in pyr.boxes)
    return Pyramid(pyr.kind, pyr.partition, boxes, pyr.rows, pyr.skew_rows)


def classical_characteristic(pyr: Pyramid, p: Sequence[Scalar]) -> tuple[Fraction, ...]:
    shifted = shift(pyr, p)
    cols = [shifted.col(k) for k in range(1, pyr.n + 1)]
    return classical_type(pyr.kind, pyr.partition).characteristic(cols)


# ── Direct check of the good grading condition ────────────────────────────────


def classical_rank_report(nil: ClassicalNilpotent, p: Sequence[Scalar]) -> AdRankReport:
    """Ranks of ad e between the pieces of the grading deg e_{i,j} = col(i) − col(j) on π(p)."""
    pyr = nil.pyramid
    shifted = shift(pyr, p)
    col = {b.label: b.col for b in shifted.boxes}
    strategy = classical_type(nil.kind, nil.partition)
    basis = strategy.basis(pyr.n, any(b.label == 0 for b in pyr.boxes))
    by_degree: dict[Fraction, list[SparseMatrix]] = {}
    for x in basis:
        a, b = next(iter(x))
        by_degree.setdefault(col[a] - col[b], []).append(x)
    pieces: dict[Fraction, tuple[int, int, int]] = {}
    good = True
    total_rank = 0
    for d in sorted(by_degree):
        source = by_degree[d]
        target = len(by_degree.get(d + 2, []))
        images = [bracket(nil.e, x) for x in source]
        keys = sorted({key for img in images for key in img})
        r = rank(QMatrix.of([[img.get(k, 0) for k in keys] for img in images], len(keys))) if keys else 0
        pieces[d] = (len(source), target, r)
        total_rank += r
        if d <= -1 and r != len(source):
            good = False
        if d >= -1 and r != target:
            good = False
    for d in by_degree:
        if d - 2 >= -1 and d - 2 not in by_degree:
            good = False
    return AdRankReport(pieces, good, len(basis) - total_rank)


def classical_oracle(kind: str, lam: Partition | Sequence[int], p: Sequence[Scalar]) -> bool:
    return classical_rank_report(restricted_data(kind, lam), p).good


# ── Supplementary data ─────────────────────────────────────────────────────────


def _closed_form_bound(nil: ClassicalNilpotent, k: int) -> Fraction:
    t = nil.row_lengths[k]
    mult = nil.partition.multiplicity(t)
    if nil.kind == "sp":
        if t % 2:
            return Fraction(1, 2)
        return Fraction(1) if mult > 2 else Fraction(3, 2)
    if t % 2 == 0:
        return Fraction(1, 2)
    if mult > 2:
        return Fraction(1)
    if t != 1:
        return Fraction(3, 2)
    return Fraction(min(x for x in nil.partition.parts if x > 1))


def coordinate_bounds(nil: ClassicalNilpotent) -> tuple[Fraction, ...]:
    """sup |p_k| over 𝒫_e, from the closed form; checked against the roots of Φ_e."""
    if nil.kind == "sl":
        raise InvalidPartition("coordinate bounds are stated for sp and so")
    out = []
    for k in range(nil.dim):
        closed = _closed_form_bound(nil, k)
        direct = min(Fraction(r.d) / abs(r.functional[k]) for r in nil.roots if r.functional[k])
        if closed != direct:
            raise TheoremViolation(f"|p{k + 1}| < {closed} disagrees with the polytope bound {direct}")
        out.append(closed)
    return tuple(out)


@dataclass(frozen=True)
class ClassicalComponents:
    weyl_order: int
    identity_component_order: int
    component_order: int


def _reflection(m: int, f: QVector) -> Perm:
    support = [i for i, x in enumerate(f) if x]
    if len(support) == 1:
        return _flip(m, support[0])
    i, j = support
    return _swap(m, i, j) if f[i] * f[j] < 0 else _swap_flip(m, i, j)


def component_orders(nil: ClassicalNilpotent) -> ClassicalComponents:
    """|W_e|, |W_e^∘| and |Z_e|, with W_e^∘ generated by reflections in {α : d(α) = 1}."""
    group = nil.group()
    circ = [r.functional for r in nil.roots if r.d == 1]
    w_circ = close_group((_reflection(nil.dim, f) for f in circ), group.identity)
    positive = set(circ)
    z = [g for g in group.elements() if {group.act(g, f) for f in circ} == positive]
    data = ClassicalComponents(group.order, len(w_circ), len(z))
    if data.component_order * data.identity_component_order != data.weyl_order:
        raise TheoremViolation(f"|Z_e|·|W_e°| ≠ |W_e| for {nil.kind} {nil.partition}")
    return data


def type_a_datum(pyr: Pyramid) -> tuple[NilpotentDatum, QMatrix]:
    """The (A_{N−1}, J, labels) datum of an sl pyramid and the map p ↦ pairings.

    e maps each box to its right neighbour, so in the box basis it is lower
    triangular; node k of the datum is the simple root ε_{N−k} − ε_{N−k+1}
    of the reversed basis, which leaves h and every grading unchanged. J is
    every node except the row boundaries, and the pairing at the boundary
    between rows i and i+1 is p_{i+1} − p_i.
    """
    if pyr.kind != "sl":
        raise InvalidPartition("only sl pyramids have a type A datum")
    n = pyr.partition.total
    rs = build("A", n - 1)
    boundaries = []
    total = 0
    for t in pyr.partition.parts[:-1]:
        total += t
        boundaries.append(total - 1)
    J = tuple(k for k in range(rs.rank) if n - 2 - k not in boundaries)
    m = len(pyr.rows)
    # I is ascending in k, so its first node is the boundary between the top two rows
    to_pairings = QMatrix.of(
        (
            [Fraction(1 if c == i + 1 else -1 if c == i else 0) for c in range(m)]
            for i in reversed(range(m - 1))
        ),
        m,
    )
    return NilpotentDatum.principal(rs, J, f"sl{pyr.partition.total} {pyr.partition}"), to_pairings
