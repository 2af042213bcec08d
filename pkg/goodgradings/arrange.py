"""Arrangement analytics for 𝒜^J: flats, characteristic polynomial, exponents, h^J."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from sympy import Poly, roots, symbols

from goodgradings.errors import BudgetExceeded, DimensionNot2, NonSplitting, TheoremViolation
from goodgradings.exact import (
    LinearSystem,
    QMatrix,
    QVector,
    Scalar,
    constraint,
    dot,
    feasible,
    solve_linear,
)
from goodgradings.restrict import (
    DEFAULT_BUDGET,
    LeviClass,
    RestrictedRootSystem,
    chambers,
    levi_class,
)
from goodgradings.rootsys import RootSystem

logger = logging.getLogger(__name__)

IVector = tuple[int, ...]


@dataclass(frozen=True)
class Arrangement:
    """Distinct linear hyperplanes {x : n·x = 0} through the origin of a ``dim``-space."""

    dim: int
    normals: tuple[IVector, ...]
    rrs: RestrictedRootSystem | None = None

    @classmethod
    def of_restricted(cls, rrs: RestrictedRootSystem) -> Arrangement:
        """𝒜^J: one hyperplane per direction of Φ^J."""
        primitive = [
            rrs.vectors[a]
            for a in rrs.positive()
            if not any(c != a and a in rrs.multiples[c] for c in rrs.positive())
        ]
        return cls(rrs.dim, tuple(primitive), rrs)


@dataclass(frozen=True)
class Flat:
    mask: int
    basis: tuple[IVector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _primitive(v: Sequence[int]) -> IVector:
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g else tuple(v)


def _meet(arr: Arrangement, flat: Flat, h: int) -> Flat:
    values = [dot(arr.normals[h], z) for z in flat.basis]
    i0 = next(i for i, v in enumerate(values) if v != 0)
    v0 = int(values[i0])
    basis = []
    for i, z in enumerate(flat.basis):
        if i != i0:
            vi = int(values[i])
            basis.append(_primitive([a * v0 - b * vi for a, b in zip(z, flat.basis[i0])]))
    mask = 0
    for g, n in enumerate(arr.normals):
        if all(dot(n, z) == 0 for z in basis):
            mask |= 1 << g
    return Flat(mask, tuple(basis))


def flats(arr: Arrangement, budget: int = DEFAULT_BUDGET) -> list[list[Flat]]:
    """Intersection lattice, grouped by codimension."""
    whole = Flat(0, tuple(tuple(int(i == j) for j in range(arr.dim)) for i in range(arr.dim)))
    levels = [[whole]]
    total = 1
    while True:
        nxt: dict[int, Flat] = {}
        for flat in levels[-1]:
            covered = flat.mask
            for h in range(len(arr.normals)):
                if (covered >> h) & 1:
                    continue
                child = _meet(arr, flat, h)
                covered |= child.mask
                if child.mask not in nxt:
                    nxt[child.mask] = child
                    total += 1
                    if total > budget:
                        raise BudgetExceeded("intersection lattice", total)
        if not nxt:
            break
        levels.append(sorted(nxt.values(), key=lambda f: f.mask))
        logger.debug("codimension %d: %d flats", len(levels) - 1, len(nxt))
    return levels


def mobius(levels: list[list[Flat]]) -> dict[int, int]:
    """μ(V, X) for every flat X, keyed by mask."""
    mu: dict[int, int] = {0: 1}
    seen: list[Flat] = [levels[0][0]]
    for level in levels[1:]:
        for x in level:
            mu[x.mask] = -sum(mu[y.mask] for y in seen if y.mask & ~x.mask == 0)
        seen.extend(level)
    return mu


def char_poly(arr: Arrangement, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Coefficients of χ(t) = Σ μ(X) t^{dim X}, highest degree first."""
    levels = flats(arr, budget)
    mu = mobius(levels)
    coeffs = [0] * (arr.dim + 1)
    for level in levels:
        for x in level:
            coeffs[arr.dim - x.dim] += mu[x.mask]
    return coeffs


def exponents(arr: Arrangement, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Roots of χ(t) in increasing order; raises NonSplitting when they are not integers."""
    if arr.dim == 0:
        return []
    t = symbols("t")
    poly = Poly(char_poly(arr, budget), t)
    found = roots(poly, multiple=True)
    if len(found) != poly.degree() or not all(r.is_integer for r in found):
        raise NonSplitting(f"χ(t) = {poly.as_expr()} does not split over ℤ")
    return sorted(int(r) for r in found)


def evaluate(coeffs: Sequence[int], t: int) -> int:
    value = 0
    for c in coeffs:
        value = value * t + c
    return value


def chamber_count(arr: Arrangement, budget: int = DEFAULT_BUDGET) -> int:
    """Number of chambers; wall-crossing when available, otherwise |χ(−1)|."""
    if arr.rrs is not None:
        try:
            return len(chambers(arr.rrs, budget))
        except BudgetExceeded as exc:
            logger.info("chamber BFS over budget (%s); using χ(−1)", exc)
    return abs(evaluate(char_poly(arr, budget), -1))


# ── Coxeter number analogue ────────────────────────────────────────────────────


def restricted_height(rs: RootSystem, K: Sequence[int]) -> int:
    """Height of θ^K in the standard base of Φ^K."""
    return sum(c for i, c in enumerate(rs.highest_root) if i not in K)


def coxeter_h(
    rs: RootSystem, J: Sequence[int], levi: LeviClass | None = None, budget: int = DEFAULT_BUDGET
) -> tuple[int, tuple[int, ...]]:
    """h^J = min over K ∈ 𝒦_J of ht(θ^K) + 1, with the first K achieving it."""
    if levi is None:
        levi = levi_class(rs, J, budget=budget)
    best = min(levi.members, key=lambda K: (restricted_height(rs, K), K))
    return restricted_height(rs, best) + 1, best


@dataclass(frozen=True)
class SommersReport:
    h: int
    candidates: tuple[int, ...]
    exponents: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return set(self.candidates) <= set(self.exponents)


def sommers_check(rs: RootSystem, J: Sequence[int], h: int, exps: Sequence[int]) -> SommersReport:
    """Every 1 ≤ p < h^J prime to all coefficients of θ must be an exponent."""
    coefficients = list(rs.highest_root)
    candidates = tuple(p for p in range(1, h) if all(math.gcd(p, c) == 1 for c in coefficients))
    report = SommersReport(h, candidates, tuple(exps))
    if not report.ok:
        missing = sorted(set(candidates) - set(exps))
        raise TheoremViolation(f"{rs.name} J={list(J)}: {missing} are not exponents {list(exps)}")
    return report


@dataclass(frozen=True)
class ArrangementStats:
    hyperplanes: int
    chambers: int
    exponents: tuple[int, ...]
    h: int
    h_subset: tuple[int, ...]
    levi_size: int
    weyl_order: int

    def check(self) -> None:
        """Σ b_i = |𝒜|, Π(1 + b_i) = |𝒞| and |𝒞| = |𝒦_J|·|W^J|."""
        if sum(self.exponents) != self.hyperplanes:
            raise TheoremViolation(f"exponents {self.exponents} do not sum to {self.hyperplanes}")
        if math.prod(1 + b for b in self.exponents) != self.chambers:
            raise TheoremViolation(f"exponents {self.exponents} do not count {self.chambers} chambers")
        if self.levi_size * self.weyl_order != self.chambers:
            raise TheoremViolation(
                f"{self.levi_size}·{self.weyl_order} chambers expected, found {self.chambers}"
            )


# ── Alcoves of a planar region ─────────────────────────────────────────────────


@dataclass(frozen=True)
class OpenRegion:
    """{x : |f_k·x| < d_k} in intrinsic coordinates."""

    functionals: tuple[QVector, ...]
    bounds: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.functionals[0]) if self.functionals else 0

    def contains(self, x: Sequence[Scalar]) -> bool:
        return all(abs(dot(f, x)) < d for f, d in zip(self.functionals, self.bounds))

    def system(self, extra_equalities: Sequence[tuple[QVector, Fraction]] = ()) -> LinearSystem:
        strict = []
        for f, d in zip(self.functionals, self.bounds):
            strict.append(constraint(f, d))
            strict.append(constraint((-x for x in f), d))
        eqs = tuple(constraint(f, k) for f, k in extra_equalities)
        return LinearSystem(self.dim, tuple(strict), (), eqs)


def affine_lines(region: OpenRegion) -> list[tuple[QVector, Fraction]]:
    """Distinct lines f·x = k (k ∈ ℤ) that meet the open region."""
    seen: set[tuple[QVector, Fraction]] = set()
    lines = []
    for f, d in zip(region.functionals, region.bounds):
        k_max = math.ceil(d) - 1
        for k in range(-k_max, k_max + 1):
            pivot = next(x for x in f if x != 0)
            key = (tuple(x / pivot for x in f), Fraction(k) / pivot)
            if key in seen:
                continue
            seen.add(key)
            if feasible(region.system([(f, Fraction(k))])) is not None:
                lines.append((f, Fraction(k)))
    return lines


def alcove_count(region: OpenRegion) -> int:
    """Alcoves of a planar region: 1 + #lines + Σ (lines through v − 1) over interior crossings."""
    if region.dim != 2:
        raise DimensionNot2(f"alcove counting needs a planar region, got dimension {region.dim}")
    lines = affine_lines(region)
    crossings: dict[QVector, int] = {}
    for (f, k), (g, m) in combinations(lines, 2):
        try:
            v = solve_linear(QMatrix.of([f, g], 2), [k, m])
        except ValueError:
            continue
        if region.contains(v):
            crossings[v] = crossings.get(v, 0) + 1
    extra = 0
    for pairs in crossings.values():
        # pairs = m(m−1)/2 for m concurrent lines
        m = (1 + math.isqrt(1 + 8 * pairs)) // 2
        extra += m - 1
    return 1 + len(lines) + extra
