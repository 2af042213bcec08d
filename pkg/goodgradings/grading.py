"""Good gradings of a nilpotent element that is principal in a Levi subalgebra.

The nilpotent e is given by its Levi subset J and the labels of its
distinguished diagram on J. Points p ∈ E^J = E_e are stored by their pairings
with the restricted simple roots (see :mod:`goodgradings.restrict`); a grading
is ``c = h + p`` and is reported by its labels ``α_k(c)``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Any, Final, Protocol

import networkx as nx
import numpy as np

from goodgradings.arrange import OpenRegion
from goodgradings.errors import (
    InvalidSubset,
    NegativeMultiplicity,
    OutsidePolytope,
    TheoremViolation,
)
from goodgradings.exact import (
    Constraint,
    LinearSystem,
    QMatrix,
    QVector,
    Scalar,
    constraint,
    dot,
    inverse,
    is_redundant,
    lattice_hnf,
    nullspace,
    rank,
    solve_linear,
    vec,
    zeros,
)
from goodgradings.restrict import (
    DEFAULT_BUDGET,
    Perm,
    RestrictedRootSystem,
    RestrictedWeylGroup,
    close_group,
    restrict,
    restricted_weyl,
)
from goodgradings.rootsys import (
    AdRankReport,
    ChevalleyBasisData,
    RootSystem,
    ad_rank_oracle,
    dominant_rep,
    format_labels,
)

logger = logging.getLogger(__name__)

Labels = tuple[Fraction, ...]

SAMPLE_DENOMINATORS: Final = (1, 2, 3, 4, 6)
HALF_LATTICE_LIMIT: Final = 20_000


@dataclass(frozen=True)
class NilpotentDatum:
    """e principal in the Levi subalgebra of ``J``, with labels 0 or 2 on J."""

    rs: RootSystem
    J: tuple[int, ...]
    labels: tuple[int, ...]
    name: str | None = None

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.J):
            raise InvalidSubset(f"{len(self.labels)} labels for {len(self.J)} nodes of J")
        if any(x not in (0, 2) for x in self.labels):
            raise InvalidSubset("labels on J must be 0 or 2")

    @classmethod
    def principal(cls, rs: RootSystem, J: Iterable[int], name: str | None = None) -> NilpotentDatum:
        js = tuple(sorted(J))
        return cls(rs, js, (2,) * len(js), name)


def solve_h(datum: NilpotentDatum) -> Labels:
    """Labels α_k(h) of the h ∈ span(Δ_J) with α_j(h) = ℓ_j on J."""
    rs, J = datum.rs, datum.J
    if not J:
        return zeros(rs.rank)
    g = QMatrix.of(rs.gram, rs.rank)
    x = solve_linear(g.submatrix(J, J), datum.labels)
    return g.submatrix(range(rs.rank), J).apply(x)


# ── sl₂ multiplicities ─────────────────────────────────────────────────────────


def _peel(weights: Iterable[Fraction]) -> tuple[int, ...]:
    """Highest weights of the sl₂-modules whose character is Σ x^w."""
    counts: dict[int, int] = {}
    for w in weights:
        if w.denominator != 1:
            raise NegativeMultiplicity(f"non-integral weight {w}")
        counts[int(w)] = counts.get(int(w), 0) + 1
    found = []
    while counts:
        top = max(counts)
        if top < 0:
            raise NegativeMultiplicity(f"weight {top} is left after peeling")
        for w in range(-top, top + 1, 2):
            if counts.get(w, 0) == 0:
                raise NegativeMultiplicity(f"weight {w} missing from a string of highest weight {top}")
            counts[w] -= 1
            if counts[w] == 0:
                del counts[w]
        found.append(top)
    return tuple(sorted(found))


@dataclass(frozen=True)
class Sl2Decomposition:
    """Highest weights i of the sl₂-summands in each restricted weight space.

    ``highest[a]`` lists i once per summand of 𝔤_α (α the restricted root a),
    so m(α, i) is the number of times i occurs; ``zero`` does the same for
    the zero weight space.
    """

    rrs: RestrictedRootSystem
    h: Labels
    highest: tuple[tuple[int, ...], ...]
    zero: tuple[int, ...]

    def multiplicity(self, a: int, i: int) -> int:
        return self.highest[a].count(i)

    def d(self, a: int) -> int:
        """One plus the smallest highest weight in 𝔤_α."""
        return 1 + min(self.highest[a])

    @property
    def phi_e_circ(self) -> tuple[int, ...]:
        return tuple(a for a, ws in enumerate(self.highest) if 0 in ws)

    @property
    def centralizer_dim(self) -> int:
        return sum(len(ws) for ws in self.highest) + len(self.zero)


def sl2_multiplicities(rrs: RestrictedRootSystem, h: Sequence[Scalar]) -> Sl2Decomposition:
    rs = rrs.rs
    hv = vec(h)

    def weight(root: int) -> Fraction:
        return dot(rs.roots[root], hv)

    highest = tuple(_peel(weight(b) for b in fiber) for fiber in rrs.fibers)
    in_j = [i for i in range(len(rs.roots)) if rrs.restriction_of(i) is None]
    zero = _peel([*(weight(b) for b in in_j), *([Fraction(0)] * rs.rank)])
    dec = Sl2Decomposition(rrs, hv, highest, zero)
    total = sum(i + 1 for ws in (*highest, zero) for i in ws)
    if total != rs.dimension:
        raise TheoremViolation(f"sl2 summands have total dimension {total}, expected {rs.dimension}")
    return dec


# ── Good grading polytope ──────────────────────────────────────────────────────


@dataclass(frozen=True)
class GoodGradingPolytope:
    """{p : |f_k·p| < d_k for every k, g·p = 0 for every equality row g}.

    ``functionals`` are the positive weights of 𝔱_e in the coordinates used
    for p; ``metric`` is the inner product on those coordinates.
    """

    dim: int
    functionals: tuple[QVector, ...]
    bounds: tuple[Fraction, ...]
    names: tuple[str, ...]
    metric: QMatrix
    equalities: tuple[QVector, ...] = ()
    irredundant: tuple[int, ...] | None = None

    @property
    def intrinsic_dim(self) -> int:
        if not self.equalities:
            return self.dim
        return self.dim - rank(QMatrix.of(self.equalities, self.dim))

    def contains(self, p: Sequence[Scalar]) -> bool:
        return all(dot(g, p) == 0 for g in self.equalities) and all(
            abs(dot(f, p)) < d for f, d in zip(self.functionals, self.bounds)
        )

    def values(self, p: Sequence[Scalar]) -> tuple[Fraction, ...]:
        return tuple(dot(f, p) for f in self.functionals)

    def is_integral(self, p: Sequence[Scalar]) -> bool:
        return all(v.denominator == 1 for v in self.values(p))

    def system(self, skip: Iterable[int] = ()) -> LinearSystem:
        skipped = set(skip)
        strict: list[Constraint] = []
        for k, (f, d) in enumerate(zip(self.functionals, self.bounds)):
            if k in skipped:
                continue
            strict.append(constraint(f, d))
            strict.append(constraint((-x for x in f), d))
        eqs = tuple(constraint(g, 0) for g in self.equalities)
        return LinearSystem(self.dim, tuple(strict), (), eqs)

    def chart(self) -> tuple[list[QVector], OpenRegion]:
        """A basis of the subspace cut out by the equalities and the region in its coordinates."""
        if self.equalities:
            basis = nullspace(QMatrix.of(self.equalities, self.dim))
        else:
            basis = [tuple(Fraction(int(i == j)) for j in range(self.dim)) for i in range(self.dim)]
        pulled = tuple(tuple(dot(f, b) for b in basis) for f in self.functionals)
        return basis, OpenRegion(pulled, self.bounds)

    def point(self, basis: Sequence[QVector], coords: Sequence[Scalar]) -> QVector:
        out = zeros(self.dim)
        for c, b in zip(coords, basis):
            out = tuple(x + Fraction(c) * y for x, y in zip(out, b))
        return out


def prune(poly: GoodGradingPolytope) -> tuple[int, ...]:
    """Indices of an irredundant subset, dropping redundant pairs one at a time."""
    kept = list(range(len(poly.functionals)))
    for k in range(len(poly.functionals)):
        others = [j for j in kept if j != k]
        strict: list[Constraint] = []
        for j in others:
            f, d = poly.functionals[j], poly.bounds[j]
            strict.append(constraint(f, d))
            strict.append(constraint((-x for x in f), d))
        strict.append(constraint(poly.functionals[k], poly.bounds[k]))
        eqs = tuple(constraint(g, 0) for g in poly.equalities)
        system = LinearSystem(poly.dim, tuple(strict), (), eqs)
        if is_redundant(system, len(strict) - 1):
            kept.remove(k)
    return tuple(kept)


def finish(poly: GoodGradingPolytope, pruned: bool = True) -> GoodGradingPolytope:
    """Attach the irredundant subset."""
    return GoodGradingPolytope(
        poly.dim,
        poly.functionals,
        poly.bounds,
        poly.names,
        poly.metric,
        poly.equalities,
        prune(poly) if pruned else None,
    )


def restricted_name(rrs: RestrictedRootSystem, a: int) -> str:
    terms = []
    for pos, c in enumerate(rrs.vectors[a]):
        if c:
            node = rrs.I[pos] + 1
            coeff = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{coeff}a{node}"))
    text = "".join(f"{s}{t}" for s, t in terms)
    return text[1:] if text.startswith("+") else text


def polytope(dec: Sl2Decomposition, pruned: bool = True) -> GoodGradingPolytope:
    """𝒫_e = {p : |α(p)| < d(α), α ∈ Φ_e⁺}."""
    rrs = dec.rrs
    functionals = tuple(vec(rrs.vectors[a]) for a in rrs.positive())
    bounds = tuple(Fraction(dec.d(a)) for a in rrs.positive())
    names = tuple(restricted_name(rrs, a) for a in rrs.positive())
    metric = inverse(rrs.gram) if rrs.dim else QMatrix((), 0)
    raw = GoodGradingPolytope(rrs.dim, functionals, bounds, names, metric)
    return finish(raw, pruned)


def integral_points(poly: GoodGradingPolytope) -> list[QVector]:
    """Points of 𝒫_e where every functional takes an integer value."""
    points = sorted(p for p in _lattice_walk(poly, Fraction(1), closed=False) if poly.contains(p))
    logger.debug("%d integral points of %s", len(points), ", ".join(poly.names) or "a point")
    return points


def half_lattice_points(poly: GoodGradingPolytope, limit: int = HALF_LATTICE_LIMIT) -> list[QVector]:
    """Points of ½·(integral lattice) in the closed box that bounds 𝒫_e, inside and outside it."""
    points = list(islice(_lattice_walk(poly, Fraction(1, 2), closed=True), limit + 1))
    if len(points) > limit:
        logger.info("half-lattice sweep stopped at %d points", limit)
        points = points[:limit]
    return points


def sample_points(poly: GoodGradingPolytope, count: int, seed: int = 0) -> list[QVector]:
    """The half-lattice sweep, then ``count`` seeded rationals with small denominators."""
    rng = np.random.default_rng(seed)
    basis, _ = poly.chart()
    reach = max(poly.bounds, default=Fraction(1))
    out = half_lattice_points(poly)
    for _ in range(count):
        den = int(rng.choice(SAMPLE_DENOMINATORS))
        top = math.ceil(reach * den)
        coords = [Fraction(int(rng.integers(-top, top + 1)), den) for _ in basis]
        out.append(poly.point(basis, coords))
    return out


def _spanning(region: OpenRegion, k: int) -> list[int]:
    """Independent functionals, tightest bounds first."""
    picked: list[int] = []
    for i in sorted(range(len(region.functionals)), key=lambda i: (region.bounds[i], i)):
        if len(picked) == k:
            break
        trial = QMatrix.of([*(region.functionals[j] for j in picked), region.functionals[i]], k)
        if rank(trial) > len(picked):
            picked.append(i)
    if len(picked) < k:
        raise TheoremViolation("the weights of 𝔱_e do not span E_e")
    return picked


def _triangular_order(t: QMatrix) -> list[int]:
    k = t.nrows
    if all(t.rows[i][j] == 0 for i in range(k) for j in range(i + 1, k)):
        return list(range(k))
    if all(t.rows[i][j] == 0 for i in range(k) for j in range(i)):
        return list(reversed(range(k)))
    raise TheoremViolation("Hermite basis of the weight lattice is not triangular")


def _steps(diagonal: Fraction, partial: Fraction, reach: Fraction, closed: bool) -> range:
    """Integers z with |partial + diagonal·z| < reach, or ≤ reach when ``closed``."""
    lo, hi = (-reach - partial) / diagonal, (reach - partial) / diagonal
    if diagonal < 0:
        lo, hi = hi, lo
    if closed:
        return range(math.ceil(lo), math.floor(hi) + 1)
    return range(math.floor(lo) + 1, math.ceil(hi))


def _lattice_walk(poly: GoodGradingPolytope, scale: Fraction, closed: bool) -> Iterator[QVector]:
    """Points of ``scale``·{p : every α(p) ∈ ℤ} in the box cut out by a spanning set of weights.

    In coordinates y = values of the spanning weights, the lattice is the dual
    of the ℤ-span of all weights; its Hermite basis is triangular, so each y_i
    is bounded by fixing the coordinates before it.
    """
    basis, region = poly.chart()
    k = len(basis)
    if k == 0:
        yield zeros(poly.dim)
        return
    picked = _spanning(region, k)
    g_inv = inverse(QMatrix.of([region.functionals[i] for i in picked], k))
    weights = QMatrix.of(region.functionals, k) @ g_inv
    den = math.lcm(*(x.denominator for row in weights.rows for x in row))
    hnf = lattice_hnf(QMatrix.of(([x * den for x in row] for row in weights.rows), k))
    t = QMatrix.of(([x * den for x in row] for row in inverse(hnf.transpose()).rows), k)
    order = _triangular_order(t)
    reaches = [region.bounds[i] / scale for i in picked]
    z = [0] * k

    def walk(step: int) -> Iterator[QVector]:
        if step == k:
            y = [scale * v for v in t.apply(z)]
            yield poly.point(basis, g_inv.apply(y))
            return
        i = order[step]
        row = t.rows[i]
        partial = sum((row[j] * z[j] for j in order[:step]), Fraction(0))
        for value in _steps(row[i], partial, reaches[i], closed):
            z[i] = value
            yield from walk(step + 1)

    yield from walk(0)


# ── Characteristics and conjugacy ──────────────────────────────────────────────


def grading_labels(rrs: RestrictedRootSystem, h: Sequence[Scalar], p: Sequence[Scalar]) -> Labels:
    """Labels α_k(h + p): p pairs with α_i^J on I and vanishes on E_J."""
    out = [Fraction(x) for x in h]
    for pos, i in enumerate(rrs.I):
        out[i] += Fraction(p[pos])
    return tuple(out)


def characteristic(
    rrs: RestrictedRootSystem,
    h: Sequence[Scalar],
    p: Sequence[Scalar],
    poly: GoodGradingPolytope | None = None,
) -> Labels:
    """Dominant labels of the grading h + p."""
    if poly is not None and not poly.contains(p):
        raise OutsidePolytope(f"point {format_point(p)} is outside the good grading polytope")
    labels, _ = dominant_rep(rrs.rs, grading_labels(rrs, h, p))
    return labels


def format_point(p: Sequence[Scalar]) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in p) + ")"


class PointGroup(Protocol):
    """A finite group acting linearly on the coordinates of E_e."""

    def elements(self) -> Sequence[Any]: ...

    def act(self, g: Any, p: Sequence[Scalar]) -> QVector: ...


class RestrictedAction:
    """W^J acting on pairing coordinates, through cached matrices."""

    def __init__(self, group: RestrictedWeylGroup) -> None:
        self.group = group
        self._matrices: dict[Perm, QMatrix] = {}

    @property
    def order(self) -> int:
        return self.group.order

    def elements(self) -> list[Perm]:
        return self.group.elements()

    def act(self, g: Perm, p: Sequence[Scalar]) -> QVector:
        if g not in self._matrices:
            self._matrices[g] = self.group.matrix(g)
        return self._matrices[g].apply(p)


def we_orbits(points: Sequence[QVector], group: PointGroup) -> list[tuple[QVector, ...]]:
    """Partition ``points`` into orbits; each class is sorted, smallest point first."""
    remaining = sorted(set(points))
    classes = []
    elements = group.elements()
    while remaining:
        p = remaining[0]
        orbit = {group.act(g, p) for g in elements}
        members = tuple(q for q in remaining if q in orbit)
        classes.append(members)
        remaining = [q for q in remaining if q not in orbit]
    return classes


def _lower(x: Fraction) -> int:
    return int(x) - 1 if x.denominator == 1 else x.numerator // x.denominator


def _upper(x: Fraction) -> int:
    return int(x) + 1 if x.denominator == 1 else -(-x.numerator // x.denominator)


def adjacent(poly: GoodGradingPolytope, p: Sequence[Scalar], q: Sequence[Scalar]) -> bool:
    """Whether p and q lie in the closure of one alcove of 𝒫_e.

    For every weight α: α(p)⁻ ≤ α(q) ≤ α(p)⁺, where x⁻ (x⁺) is the largest
    (smallest) integer strictly below (above) x; p is adjacent to itself.
    """
    for x in (p, q):
        if not poly.contains(x):
            raise OutsidePolytope(f"point {format_point(x)} is outside the good grading polytope")
    for f in poly.functionals:
        a, b = dot(f, p), dot(f, q)
        if not _lower(a) <= b <= _upper(a):
            return False
    return True


@dataclass(frozen=True)
class GradingClass:
    points: tuple[QVector, ...]
    characteristic: Labels
    text: str

    @property
    def representative(self) -> QVector:
        return self.points[0]


@dataclass
class GradingCase:
    """Everything the integral-grading pipeline needs for one nilpotent element."""

    poly: GoodGradingPolytope
    group: PointGroup
    characteristic: Callable[[QVector], Labels]
    text: Callable[[Labels], str]

    def classes(self, points: Sequence[QVector] | None = None) -> list[GradingClass]:
        if points is None:
            points = integral_points(self.poly)
        out = []
        for members in we_orbits(points, self.group):
            c = self.characteristic(members[0])
            out.append(GradingClass(members, c, self.text(c)))
        return out


def exceptional_case(
    datum: NilpotentDatum, pruned: bool = True, budget: int = DEFAULT_BUDGET
) -> tuple[GradingCase, Sl2Decomposition]:
    """Grading pipeline for a nilpotent given by (J, labels)."""
    rrs = restrict(datum.rs, datum.J)
    h = solve_h(datum)
    dec = sl2_multiplicities(rrs, h)
    poly = polytope(dec, pruned)
    group = RestrictedAction(restricted_weyl(rrs, budget=budget))
    case = GradingCase(
        poly,
        group,
        lambda p: characteristic(rrs, h, p, poly),
        lambda c: format_labels(datum.rs, c),
    )
    return case, dec


def adjacency_graph(case: GradingCase, classes: Sequence[GradingClass] | None = None) -> nx.Graph:
    """Graph over W_e-classes of integral gradings; the class of p = 0 is flagged ``dynkin``."""
    if classes is None:
        classes = case.classes()
    graph = nx.Graph()
    origin = zeros(case.poly.dim)
    for i, cls in enumerate(classes):
        graph.add_node(
            i,
            label=cls.text,
            characteristic=cls.characteristic,
            point=cls.representative,
            dynkin=origin in cls.points,
        )
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            if any(adjacent(case.poly, p, q) for p in classes[i].points for q in classes[j].points):
                graph.add_edge(i, j)
    return graph


# ── Component group data ───────────────────────────────────────────────────────


@dataclass(frozen=True)
class ComponentData:
    simple_roots: tuple[int, ...]
    identity_component_order: int
    component_order: int
    weyl_order: int


def _reflection_perm(rrs: RestrictedRootSystem, a: int) -> Perm:
    va = rrs.vectors[a]
    norm = rrs.inner(va, va)
    out = []
    for vb in rrs.vectors:
        c = 2 * rrs.inner(vb, va) / norm
        image = tuple(Fraction(x) - c * y for x, y in zip(vb, va))
        if any(x.denominator != 1 for x in image) or tuple(int(x) for x in image) not in rrs.index:
            raise TheoremViolation(f"reflection in {va} does not preserve Φ^J")
        out.append(rrs.index[tuple(int(x) for x in image)])
    return tuple(out)


def component_data(dec: Sl2Decomposition, group: RestrictedWeylGroup) -> ComponentData:
    """Δ_e^∘, |W_e^∘| and |Z_e| with Z_e the stabilizer of Φ_e^∘⁺ in W_e."""
    rrs = dec.rrs
    circ = set(dec.phi_e_circ)
    positive = {a for a in circ if a < rrs.n_positive}
    simple = tuple(
        sorted(
            a
            for a in positive
            if not any(b in positive and c in positive for b, c in rrs.decompositions[a])
        )
    )
    identity = tuple(range(len(rrs.vectors)))
    w_circ = close_group((_reflection_perm(rrs, a) for a in simple), identity)
    elements = group.elements()
    z = [g for g in elements if {g[a] for a in positive} == positive]
    data = ComponentData(simple, len(w_circ), len(z), len(elements))
    if data.component_order * data.identity_component_order != data.weyl_order:
        raise TheoremViolation(
            f"|Z_e|·|W_e°| = {data.component_order}·{data.identity_component_order} ≠ |W_e| = {data.weyl_order}"
        )
    return data


# ── Direct checks of the good grading condition ───────────────────────────────


def is_good(dec: Sl2Decomposition, p: Sequence[Scalar]) -> bool:
    """dim 𝔤_e = Σ_{−1 ≤ j < 1} dim 𝔤_j for the grading h + p."""
    rrs = dec.rrs
    rs = rrs.rs
    c = grading_labels(rrs, dec.h, p)
    low = rs.rank + sum(1 for r in rs.roots if -1 <= dot(r, c) < 1)
    return dec.centralizer_dim == low


def grading_oracle(
    datum: NilpotentDatum,
    p: Sequence[Scalar],
    basis: ChevalleyBasisData | None = None,
) -> AdRankReport:
    """ad e rank test for e = Σ_{j∈J} e_{α_j} and the grading h + p."""
    rrs = restrict(datum.rs, datum.J)
    h = solve_h(datum)
    support = [datum.rs.simple(j) for j, label in zip(datum.J, datum.labels) if label == 2]
    if len(support) != len(datum.J):
        raise InvalidSubset("the rank oracle needs a nilpotent principal in its Levi subalgebra")
    return ad_rank_oracle(datum.rs, support, grading_labels(rrs, h, p), basis)
