"""Exact rational linear algebra and strict/non-strict linear feasibility.

Every scalar is a :class:`fractions.Fraction`; nothing in this module ever
touches floating point. Vectors are plain tuples, matrices are
:class:`QMatrix` values with a fixed shape.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from goodgradings.errors import NoSolution, ShapeError, Underdetermined

logger = logging.getLogger(__name__)

Rational = Fraction
QVector = tuple[Fraction, ...]
Scalar = Fraction | int


def vec(values: Iterable[Scalar]) -> QVector:
    """Build a QVector from ints or Fractions."""
    return tuple(Fraction(v) for v in values)


def zeros(n: int) -> QVector:
    return (Fraction(0),) * n


def dot(a: Sequence[Scalar], b: Sequence[Scalar]) -> Fraction:
    if len(a) != len(b):
        raise ShapeError(f"cannot pair vectors of length {len(a)} and {len(b)}")
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence[Scalar], b: Sequence[Scalar]) -> QVector:
    if len(a) != len(b):
        raise ShapeError(f"cannot add vectors of length {len(a)} and {len(b)}")
    return tuple(Fraction(x) + y for x, y in zip(a, b))


def scale(c: Scalar, a: Sequence[Scalar]) -> QVector:
    return tuple(Fraction(c) * x for x in a)


@dataclass(frozen=True)
class QMatrix:
    """Dense rational matrix with an explicit shape."""

    rows: tuple[QVector, ...]
    ncols: int

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != self.ncols:
                raise ShapeError(f"row of length {len(row)} in a matrix with {self.ncols} columns")

    @classmethod
    def of(cls, rows: Iterable[Iterable[Scalar]], ncols: int | None = None) -> QMatrix:
        built = tuple(vec(r) for r in rows)
        if ncols is None:
            if not built:
                raise ShapeError("column count is required for a matrix with no rows")
            ncols = len(built[0])
        return cls(built, ncols)

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls.of(([int(i == j) for j in range(n)] for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> QVector:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> QMatrix:
        return QMatrix(tuple(self.column(j) for j in range(self.ncols)), self.nrows)

    def apply(self, x: Sequence[Scalar]) -> QVector:
        """Matrix-vector product."""
        if len(x) != self.ncols:
            raise ShapeError(f"matrix with {self.ncols} columns applied to a vector of length {len(x)}")
        return tuple(dot(row, x) for row in self.rows)

    def __matmul__(self, other: QMatrix) -> QMatrix:
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        return QMatrix(tuple(tuple(dot(row, c) for c in cols) for row in self.rows), other.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> QMatrix:
        return QMatrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))


# ── Gaussian elimination ───────────────────────────────────────────────────────


def rref(a: QMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    rows = [list(r) for r in a.rows]
    pivots: list[int] = []
    lead = 0
    for col in range(a.ncols):
        pivot_row = next((i for i in range(lead, len(rows)) if rows[i][col] != 0), None)
        if pivot_row is None:
            continue
        rows[lead], rows[pivot_row] = rows[pivot_row], rows[lead]
        piv = rows[lead][col]
        rows[lead] = [v / piv for v in rows[lead]]
        for i, row in enumerate(rows):
            if i != lead and row[col] != 0:
                f = row[col]
                rows[i] = [x - f * y for x, y in zip(row, rows[lead])]
        pivots.append(col)
        lead += 1
        if lead == len(rows):
            break
    return rows[:lead], pivots


def nullspace(a: QMatrix) -> list[QVector]:
    """Basis of {x : a·x = 0}, one vector per free column."""
    reduced, pivots = rref(a)
    free = [j for j in range(a.ncols) if j not in pivots]
    basis: list[QVector] = []
    for f in free:
        x = [Fraction(0)] * a.ncols
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def rank(a: QMatrix) -> int:
    """Exact rank; large matrices go through sympy's sparse domain matrices."""
    if a.nrows == 0 or a.ncols == 0:
        return 0
    rows = [[QQ(v.numerator, v.denominator) for v in row] for row in a.rows]
    return int(DomainMatrix(rows, a.shape, QQ).rank())


def solve_linear(a: QMatrix, b: Sequence[Scalar]) -> QVector:
    """Unique solution of a·x = b.

    Raises:
        NoSolution: the system is inconsistent.
        Underdetermined: the system is consistent but rank(a) < ncols.
    """
    if len(b) != a.nrows:
        raise ShapeError(f"right-hand side of length {len(b)} for {a.nrows} equations")
    augmented = QMatrix(tuple(row + (Fraction(v),) for row, v in zip(a.rows, b)), a.ncols + 1)
    reduced, pivots = rref(augmented)
    if pivots and pivots[-1] == a.ncols:
        raise NoSolution("the linear system is inconsistent")
    if len(pivots) < a.ncols:
        raise Underdetermined(f"rank {len(pivots)} is below the {a.ncols} unknowns")
    x = [Fraction(0)] * a.ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[-1]
    return tuple(x)


def inverse(a: QMatrix) -> QMatrix:
    if a.nrows != a.ncols:
        raise ShapeError(f"cannot invert a {a.shape} matrix")
    n = a.nrows
    eye = QMatrix.identity(n)
    augmented = QMatrix(tuple(r + e for r, e in zip(a.rows, eye.rows)), 2 * n)
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise Underdetermined("matrix is singular")
    return QMatrix(tuple(tuple(row[n:]) for row in reduced), n)


def lattice_hnf(m: QMatrix) -> QMatrix:
    """Hermite normal form basis of the lattice spanned by the rows of ``m``.

    The basis vectors are the columns of the result, as sympy returns them.
    """
    if m.nrows == 0:
        return QMatrix((), 0)
    for row in m.rows:
        if any(v.denominator != 1 for v in row):
            raise ShapeError("lattice_hnf needs an integer matrix")
    generators = Matrix([[int(v) for v in row] for row in m.rows]).T
    hnf = hermite_normal_form(generators)
    return QMatrix.of(hnf.tolist(), hnf.shape[1])


# ── Linear feasibility ─────────────────────────────────────────────────────────


@dataclass(frozen=True)
class Constraint:
    coeffs: QVector
    rhs: Fraction


@dataclass(frozen=True)
class LinearSystem:
    """Strict (a·x < b), non-strict (a·x ≤ b) and equality (a·x = b) rows."""

    dim: int
    strict: tuple[Constraint, ...] = ()
    nonstrict: tuple[Constraint, ...] = ()
    equalities: tuple[Constraint, ...] = ()

    def __post_init__(self) -> None:
        for c in (*self.strict, *self.nonstrict, *self.equalities):
            if len(c.coeffs) != self.dim:
                raise ShapeError(f"constraint of dimension {len(c.coeffs)} in a {self.dim}-dimensional system")

    def satisfied_by(self, x: Sequence[Scalar]) -> bool:
        return (
            all(dot(c.coeffs, x) < c.rhs for c in self.strict)
            and all(dot(c.coeffs, x) <= c.rhs for c in self.nonstrict)
            and all(dot(c.coeffs, x) == c.rhs for c in self.equalities)
        )


def constraint(coeffs: Iterable[Scalar], rhs: Scalar) -> Constraint:
    return Constraint(vec(coeffs), Fraction(rhs))


LpStatus = Literal["optimal", "infeasible", "unbounded"]


@dataclass
class _Tableau:
    """Dense simplex tableau over the rationals, pivoting with Bland's rule."""

    rows: list[list[Fraction]]
    rhs: list[Fraction]
    basis: list[int]
    pivots: int = field(default=0)

    def pivot(self, i: int, j: int) -> None:
        piv = self.rows[i][j]
        self.rows[i] = [v / piv for v in self.rows[i]]
        self.rhs[i] /= piv
        for k, row in enumerate(self.rows):
            f = row[j]
            if k != i and f != 0:
                self.rows[k] = [x - f * y for x, y in zip(row, self.rows[i])]
                self.rhs[k] -= f * self.rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def minimize(self, cost: Sequence[Fraction], ncols: int) -> LpStatus:
        """Minimize cost·x over the first ``ncols`` columns."""
        while True:
            in_basis = set(self.basis)
            entering = None
            for j in range(ncols):
                if j in in_basis:
                    continue
                reduced = cost[j] - sum(
                    (cost[b] * row[j] for b, row in zip(self.basis, self.rows) if cost[b] != 0),
                    Fraction(0),
                )
                if reduced < 0:
                    entering = j
                    break
            if entering is None:
                return "optimal"
            candidates = [
                (self.rhs[i] / row[entering], self.basis[i], i)
                for i, row in enumerate(self.rows)
                if row[entering] > 0
            ]
            if not candidates:
                return "unbounded"
            _, _, leaving = min(candidates)
            self.pivot(leaving, entering)

    def value(self, j: int) -> Fraction:
        for b, v in zip(self.basis, self.rhs):
            if b == j:
                return v
        return Fraction(0)


def _solve_lp(
    ub: Sequence[tuple[Sequence[Fraction], Fraction]],
    eq: Sequence[tuple[Sequence[Fraction], Fraction]],
    cost: Sequence[Fraction],
) -> tuple[LpStatus, list[Fraction]]:
    """Minimize cost·x subject to ub rows (≤), eq rows (=) and x ≥ 0."""
    n = len(cost)
    m_ub = len(ub)
    m = m_ub + len(eq)
    width = n + m_ub + m
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    for i, (coeffs, b) in enumerate((*ub, *eq)):
        row = [Fraction(0)] * width
        row[:n] = coeffs
        if i < m_ub:
            row[n + i] = Fraction(1)
        sign = -1 if b < 0 else 1
        row = [sign * v for v in row]
        row[n + m_ub + i] = Fraction(1)
        rows.append(row)
        rhs.append(sign * b)
        basis.append(n + i if i < m_ub and b >= 0 else n + m_ub + i)

    tableau = _Tableau(rows, rhs, basis)
    artificial = range(n + m_ub, width)
    if any(b in artificial for b in basis):
        phase1 = [Fraction(0)] * (n + m_ub) + [Fraction(1)] * m
        tableau.minimize(phase1, width)
        if sum((tableau.value(j) for j in artificial), Fraction(0)) > 0:
            return "infeasible", []
        for i in reversed(range(len(tableau.rows))):
            if tableau.basis[i] < n + m_ub:
                continue
            j = next((j for j in range(n + m_ub) if tableau.rows[i][j] != 0), None)
            if j is None:
                del tableau.rows[i], tableau.rhs[i], tableau.basis[i]
            else:
                tableau.pivot(i, j)

    full_cost = list(cost) + [Fraction(0)] * (width - n)
    status = tableau.minimize(full_cost, n + m_ub)
    logger.debug("simplex finished with %s after %d pivots", status, tableau.pivots)
    return status, [tableau.value(j) for j in range(n)]


def _split(coeffs: Sequence[Fraction], extra: Sequence[Fraction] = ()) -> list[Fraction]:
    return [*coeffs, *(-c for c in coeffs), *extra]


def feasible(system: LinearSystem) -> QVector | None:
    """Exact witness for ``system`` or ``None`` when it is infeasible.

    The common slack t of the strict rows is maximized first (capped at 1);
    the system is feasible iff that slack is positive. The witness is then the
    point of least ℓ¹ norm among those achieving the optimal slack, so the
    result is deterministic and symmetric systems report the origin.
    """
    n = system.dim
    one, zero = Fraction(1), Fraction(0)
    nonstrict = [(_split(c.coeffs), c.rhs) for c in system.nonstrict]
    eq = [(_split(c.coeffs), c.rhs) for c in system.equalities]

    slack = zero
    if system.strict:
        ub = [(_split(c.coeffs, (one, -one)), c.rhs) for c in system.strict]
        ub += [(row + [zero, zero], b) for row, b in nonstrict]
        ub.append(([zero] * (2 * n) + [one, -one], one))
        eq_t = [(row + [zero, zero], b) for row, b in eq]
        cost = [zero] * (2 * n) + [-one, one]
        status, x = _solve_lp(ub, eq_t, cost)
        if status != "optimal":
            return None
        slack = x[2 * n] - x[2 * n + 1]
        if slack <= 0:
            return None

    ub = [(_split(c.coeffs), c.rhs - slack) for c in system.strict] + nonstrict
    status, x = _solve_lp(ub, eq, [one] * (2 * n))
    if status != "optimal":
        return None
    witness = tuple(x[i] - x[n + i] for i in range(n))
    if not system.satisfied_by(witness):
        raise AssertionError("simplex returned a point outside the system")
    return witness


def is_redundant(system: LinearSystem, index: int) -> bool:
    """Whether strict row ``index`` is implied by the remaining rows.

    The row a·x < b is redundant iff the others together with a·x ≥ b admit
    no solution.
    """
    row = system.strict[index]
    others = system.strict[:index] + system.strict[index + 1 :]
    negated = Constraint(tuple(-c for c in row.coeffs), -row.rhs)
    flipped = LinearSystem(system.dim, others, (*system.nonstrict, negated), system.equalities)
    return feasible(flipped) is None
