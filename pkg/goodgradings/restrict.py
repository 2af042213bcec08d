"""Restricted root systems Φ^J, their bases and chambers, W^J and 𝒦_J.

A restricted root α^J is stored by its coefficients on the simple roots
outside J, so ``α^J = Σ_{i∈I} a_i α_i^J``. Points of E^J are stored by their
pairings ``u_i = (α_i^J, p)``; then ``α^J(p) = Σ a_i u_i``.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Literal

from goodgradings.errors import BudgetExceeded, InvalidSubset, NonRegular, TheoremViolation
from goodgradings.exact import QMatrix, QVector, Scalar, dot, inverse, solve_linear
from goodgradings.rootsys import RootSystem, WeylElement, longest_word, reflect_labels

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
ORBIT_BUDGET = 10**6

RVector = tuple[int, ...]
Perm = tuple[int, ...]


@dataclass(frozen=True)
class RestrictedRootSystem:
    rs: RootSystem
    J: tuple[int, ...]
    I: tuple[int, ...]
    vectors: tuple[RVector, ...]
    fibers: tuple[tuple[int, ...], ...]
    gram: QMatrix
    index: dict[RVector, int] = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.I)

    @property
    def n_positive(self) -> int:
        return len(self.vectors) // 2

    def positive(self) -> range:
        return range(self.n_positive)

    def negate(self, a: int) -> int:
        n = self.n_positive
        return a + n if a < n else a - n

    def inner(self, a: Sequence[Scalar], b: Sequence[Scalar]) -> Fraction:
        return dot(a, self.gram.apply(b))

    def pairing(self, a: int, u: Sequence[Scalar]) -> Fraction:
        """α^J(p) for the restricted root ``a`` and a point with pairings ``u``."""
        return dot(self.vectors[a], u)

    def simple(self, position: int) -> int:
        """Index of α_i^J for ``i = I[position]``."""
        return self.index[tuple(int(j == position) for j in range(self.dim))]

    def restriction_of(self, root: int) -> int | None:
        """Restricted index of a root of Φ, or None for roots of Φ_J."""
        r = self.rs.roots[root]
        v = tuple(r[i] for i in self.I)
        return self.index.get(v)

    @cached_property
    def decompositions(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each restricted root, the unordered pairs of restricted roots summing to it."""
        out: list[list[tuple[int, int]]] = [[] for _ in self.vectors]
        for b, vb in enumerate(self.vectors):
            for c in range(b, len(self.vectors)):
                s = tuple(x + y for x, y in zip(vb, self.vectors[c]))
                a = self.index.get(s)
                if a is not None:
                    out[a].append((b, c))
        return tuple(tuple(pairs) for pairs in out)

    @cached_property
    def multiples(self) -> tuple[tuple[int, ...], ...]:
        """Restricted roots that are positive integer multiples of each restricted root."""
        out = []
        for v in self.vectors:
            found = []
            for k in range(1, 8):
                idx = self.index.get(tuple(k * x for x in v))
                if idx is not None:
                    found.append(idx)
            out.append(tuple(found))
        return tuple(out)

    def highest(self) -> RVector:
        """θ^J: the restriction of the highest root."""
        return tuple(self.rs.highest_root[i] for i in self.I)


def _positive_key(v: RVector) -> tuple[int, tuple[int, ...]]:
    return sum(v), tuple(-x for x in v)


def parse_subset(rs: RootSystem, J: Iterable[int]) -> tuple[int, ...]:
    nodes = tuple(sorted(set(J)))
    if any(k < 0 or k >= rs.rank for k in nodes):
        raise InvalidSubset(f"subset {[k + 1 for k in nodes]} is not inside 1..{rs.rank}")
    return nodes


def restrict(rs: RootSystem, J: Iterable[int]) -> RestrictedRootSystem:
    """Restricted root system for the Bourbaki node subset ``J`` (0-based)."""
    js = parse_subset(rs, J)
    I = tuple(k for k in range(rs.rank) if k not in js)
    fiber_map: dict[RVector, list[int]] = {}
    for i, r in enumerate(rs.roots):
        v = tuple(r[k] for k in I)
        if any(v):
            fiber_map.setdefault(v, []).append(i)
    positive = sorted((v for v in fiber_map if min(v) >= 0), key=_positive_key)
    vectors = positive + [tuple(-x for x in v) for v in positive]
    index = {v: i for i, v in enumerate(vectors)}

    g = QMatrix.of(rs.gram, rs.rank)
    g_ii = g.submatrix(I, I)
    if js:
        g_ij = g.submatrix(I, js)
        correction = g_ij @ inverse(g.submatrix(js, js)) @ g_ij.transpose()
        gram = QMatrix(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(g_ii.rows, correction.rows)),
            len(I),
        )
    else:
        gram = g_ii
    rrs = RestrictedRootSystem(
        rs=rs,
        J=js,
        I=I,
        vectors=tuple(vectors),
        fibers=tuple(tuple(fiber_map[v]) for v in vectors),
        gram=gram,
        index=index,
    )
    logger.debug("restricted %s to J=%s: %d restricted roots", rs.name, js, len(vectors))
    return rrs


# ── Bases and chambers ─────────────────────────────────────────────────────────


@dataclass(frozen=True)
class RestrictedBase:
    """A base of Φ^J, ordered by descending coefficient vector."""

    rrs: RestrictedRootSystem = field(repr=False, compare=False)
    elements: tuple[int, ...]

    @property
    def vectors(self) -> tuple[RVector, ...]:
        return tuple(self.rrs.vectors[a] for a in self.elements)

    def coordinates(self, a: int) -> QVector:
        """Coefficients of restricted root ``a`` in this base."""
        m = QMatrix.of(self.vectors, self.rrs.dim).transpose()
        return solve_linear(m, self.rrs.vectors[a])

    def is_base(self) -> bool:
        """Every restricted root is an all-≥0 or all-≤0 integer combination."""
        if len(self.elements) != self.rrs.dim:
            return False
        for a in range(len(self.rrs.vectors)):
            c = self.coordinates(a)
            if any(x.denominator != 1 for x in c):
                return False
            if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
                return False
        return True

    def witness(self) -> QVector:
        """Interior point of the chamber: every base element pairs to 1."""
        return solve_linear(QMatrix.of(self.vectors, self.rrs.dim), [1] * len(self.elements))


def _indecomposables(rrs: RestrictedRootSystem, mask: int) -> tuple[int, ...]:
    out = []
    for a in range(len(rrs.vectors)):
        if not (mask >> a) & 1:
            continue
        if not any((mask >> b) & 1 and (mask >> c) & 1 for b, c in rrs.decompositions[a]):
            out.append(a)
    out.sort(key=lambda a: tuple(-x for x in rrs.vectors[a]))
    return tuple(out)


def _mask_of(rrs: RestrictedRootSystem, u: Sequence[Scalar]) -> int:
    mask = 0
    for a in range(len(rrs.vectors)):
        value = rrs.pairing(a, u)
        if value == 0:
            raise NonRegular(f"point pairs to zero with restricted root {rrs.vectors[a]}")
        if value > 0:
            mask |= 1 << a
    return mask


def base_from_regular(rrs: RestrictedRootSystem, gamma: Sequence[Scalar]) -> RestrictedBase:
    """Base of the chamber containing the regular point with pairings ``gamma``."""
    return RestrictedBase(rrs, _indecomposables(rrs, _mask_of(rrs, gamma)))


@dataclass(frozen=True)
class Chamber:
    """A chamber of 𝒜^J: ``mask`` has bit a set when restricted root a is positive."""

    mask: int
    base: RestrictedBase

    def sign_vector(self) -> tuple[int, ...]:
        return tuple(1 if (self.mask >> a) & 1 else -1 for a in self.base.rrs.positive())


def standard_mask(rrs: RestrictedRootSystem) -> int:
    return (1 << rrs.n_positive) - 1


def cross(rrs: RestrictedRootSystem, mask: int, wall: int) -> int:
    """Positive set of the neighbouring chamber across the base element ``wall``."""
    for a in rrs.multiples[wall]:
        mask ^= (1 << a) | (1 << rrs.negate(a))
    return mask


def chambers(rrs: RestrictedRootSystem, budget: int = DEFAULT_BUDGET) -> list[Chamber]:
    """All chambers of 𝒜^J by wall-crossing BFS from the standard chamber."""
    start = standard_mask(rrs)
    seen = {start: _indecomposables(rrs, start)}
    queue = deque([start])
    while queue:
        mask = queue.popleft()
        for wall in seen[mask]:
            nxt = cross(rrs, mask, wall)
            if nxt in seen:
                continue
            if len(seen) >= budget:
                raise BudgetExceeded(f"chamber enumeration of {rrs.rs.name} J={rrs.J}", len(seen))
            seen[nxt] = _indecomposables(rrs, nxt)
            queue.append(nxt)
    logger.debug("found %d chambers", len(seen))
    found = [Chamber(m, RestrictedBase(rrs, b)) for m, b in seen.items()]
    found.sort(key=lambda c: c.sign_vector(), reverse=True)
    return found


def all_bases(rrs: RestrictedRootSystem, budget: int = DEFAULT_BUDGET) -> list[RestrictedBase]:
    return [c.base for c in chambers(rrs, budget)]


def restricted_cartan(base: RestrictedBase) -> QMatrix:
    """Entries 2(β_i, β_j)/(β_j, β_j) over the base elements."""
    rrs = base.rrs
    vs = base.vectors
    return QMatrix.of(
        ([2 * rrs.inner(bi, bj) / rrs.inner(bj, bj) for bj in vs] for bi in vs), len(vs)
    )


# ── Lifting chambers to bases of Φ ─────────────────────────────────────────────


@dataclass(frozen=True)
class ChamberLift:
    """The base w·Δ of Φ containing Δ_J whose restriction cuts out a chamber.

    ``K`` is w⁻¹(Δ_J) as node indices, so w maps Δ_K onto Δ_J.
    """

    chamber: Chamber
    w: WeylElement
    K: tuple[int, ...]


def lift(rrs: RestrictedRootSystem, chamber: Chamber) -> ChamberLift:
    rs = rrs.rs
    u = chamber.base.witness()
    # labels a + bε with ε infinitesimal: u on I, ε on J
    values: list[tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(1))] * rs.rank
    for pos, i in enumerate(rrs.I):
        values[i] = (u[pos], Fraction(0))
    real = tuple(v[0] for v in values)
    eps = tuple(v[1] for v in values)
    word: list[int] = []
    while True:
        k = next((i for i in range(rs.rank) if (real[i], eps[i]) < (0, 0)), None)
        if k is None:
            break
        real = reflect_labels(rs, real, k)
        eps = reflect_labels(rs, eps, k)
        word.append(k)
    w = rs.element(tuple(reversed(word)))
    simple_j = {rs.simple(j): j for j in rrs.J}
    K = tuple(sorted(k for k in range(rs.rank) if w.perm[rs.simple(k)] in simple_j))
    if len(K) != len(rrs.J):
        raise TheoremViolation(f"chamber lift does not contain Δ_J for {rs.name} J={rrs.J}")
    return ChamberLift(chamber, w, K)


# ── Restricted Weyl group ──────────────────────────────────────────────────────


def restricted_perm(rrs: RestrictedRootSystem, w: WeylElement) -> Perm:
    """Permutation of Φ^J induced by an element normalizing Δ_J."""
    out = []
    for fiber in rrs.fibers:
        image = rrs.restriction_of(w.perm[fiber[0]])
        if image is None:
            raise InvalidSubset("element does not normalize Φ_J")
        out.append(image)
    return tuple(out)


def _compose(p: Perm, q: Perm) -> Perm:
    """Apply q first, then p."""
    return tuple(p[i] for i in q)


def close_group(generators: Iterable[Perm], identity: Perm, limit: int | None = None) -> set[Perm]:
    gens = [g for g in set(generators) if g != identity]
    elements = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _compose(g, x)
            if y not in elements:
                elements.add(y)
                queue.append(y)
                if limit is not None and len(elements) > limit:
                    raise BudgetExceeded("group closure", len(elements))
    return elements


@dataclass
class RestrictedWeylGroup:
    """W^J acting on Φ^J, with matrices on the pairing coordinates of E^J."""

    rrs: RestrictedRootSystem
    generators: tuple[Perm, ...]
    order: int
    method: str
    _elements: list[Perm] | None = None

    @property
    def identity(self) -> Perm:
        return tuple(range(len(self.rrs.vectors)))

    def elements(self, budget: int = DEFAULT_BUDGET) -> list[Perm]:
        if self._elements is None:
            self._elements = sorted(close_group(self.generators, self.identity, budget))
        return self._elements

    def matrix(self, perm: Perm) -> QMatrix:
        """Action on pairings: row k holds the coefficients of π⁻¹(α_k^J)."""
        rrs = self.rrs
        inv = {image: a for a, image in enumerate(perm)}
        return QMatrix.of(
            (rrs.vectors[inv[rrs.simple(pos)]] for pos in range(rrs.dim)), rrs.dim
        )

    def act(self, perm: Perm, u: Sequence[Scalar]) -> QVector:
        return self.matrix(perm).apply(u)


def _weyl_by_chambers(rrs: RestrictedRootSystem, budget: int) -> tuple[list[Perm], set[tuple[int, ...]]]:
    elements = []
    ks = set()
    for chamber in chambers(rrs, budget):
        lifted = lift(rrs, chamber)
        ks.add(lifted.K)
        if lifted.K == rrs.J:
            elements.append(restricted_perm(rrs, lifted.w))
    return elements, ks


def _weyl_by_orbit(rrs: RestrictedRootSystem, budget: int) -> RestrictedWeylGroup:
    rs = rrs.rs
    start = frozenset(rs.simple(j) for j in rrs.J)
    parent: dict[frozenset[int], tuple[frozenset[int], int] | None] = {start: None}
    order = [start]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for k in range(rs.rank):
            y = frozenset(rs.reflections[k][i] for i in x)
            if y not in parent:
                if len(parent) >= budget:
                    raise BudgetExceeded(f"orbit of Δ_J in {rs.name}", len(parent))
                parent[y] = (x, k)
                order.append(y)
                queue.append(y)
    target = rs.weyl_order // len(parent)
    logger.debug("orbit of Δ_J has %d sets; stabilizer order %d", len(parent), target)

    def transversal(x: frozenset[int]) -> list[int]:
        word: list[int] = []
        node = parent[x]
        while node is not None:
            x, k = node
            word.append(k)
            node = parent[x]
        return word[::-1]

    identity = tuple(range(len(rrs.vectors)))
    generators: list[Perm] = []
    group = {identity}
    for x in order:
        if len(group) >= target:
            break
        tx = transversal(x)
        for k in range(rs.rank):
            y = frozenset(rs.reflections[k][i] for i in x)
            word = tx + [k] + transversal(y)[::-1]
            g = restricted_perm(rrs, rs.element(word))
            if g not in group:
                generators.append(g)
                group = close_group(generators, identity)
    return RestrictedWeylGroup(rrs, tuple(generators), len(group), "orbit", sorted(group))


def restricted_weyl(
    rrs: RestrictedRootSystem,
    method: Literal["auto", "orbit", "chambers"] = "auto",
    budget: int = DEFAULT_BUDGET,
) -> RestrictedWeylGroup:
    """W^J, the stabilizer of the set Δ_J, acting on Φ^J.

    ``orbit`` closes Schreier generators from the W-orbit of Δ_J;
    ``chambers`` reads the elements off the chamber lifts with K = J. ``auto``
    tries the orbit first and falls back to chamber lifting when the orbit is
    too large.
    """
    rs = rrs.rs
    if not rrs.J:
        gens = tuple(restricted_perm(rrs, rs.element((k,))) for k in range(rs.rank))
        return RestrictedWeylGroup(rrs, gens, rs.weyl_order, "simple reflections")
    if method == "orbit":
        return _weyl_by_orbit(rrs, budget)
    if method == "auto":
        try:
            return _weyl_by_orbit(rrs, min(budget, ORBIT_BUDGET))
        except BudgetExceeded as exc:
            logger.info("orbit of Δ_J too large (%s); lifting chambers instead", exc)
    elements, _ = _weyl_by_chambers(rrs, budget)
    return RestrictedWeylGroup(rrs, tuple(sorted(elements)), len(elements), "chambers", sorted(elements))


# ── Levi classes ───────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class LeviClass:
    """𝒦_J with one conjugator per member; ``conjugators[K]`` maps Δ_K onto Δ_J."""

    J: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    conjugators: dict[tuple[int, ...], WeylElement] = field(compare=False)
    method: str = "closure"


def _image_set(rs: RootSystem, word: Sequence[int], nodes: Iterable[int]) -> tuple[int, ...] | None:
    """Nodes k with w(α_j) = α_k over ``nodes``, or None if some image is not simple."""
    simple_of = {rs.simple(k): k for k in range(rs.rank)}
    out = []
    for j in nodes:
        image = rs.apply_word(word, rs.simple(j))
        if image not in simple_of:
            return None
        out.append(simple_of[image])
    return tuple(sorted(out))


def _levi_closure(rs: RootSystem, J: tuple[int, ...], budget: int) -> LeviClass:
    words: dict[tuple[int, ...], tuple[int, ...]] = {J: ()}
    queue = deque([J])
    while queue:
        K = queue.popleft()
        for a in range(rs.rank):
            if a in K:
                continue
            L = tuple(sorted((*K, a)))
            w0_l = longest_word(rs, L)
            # -w0^L permutes Δ_L; K' is the image of K
            simple_of = {rs.simple(k): k for k in range(rs.rank)}
            K2 = tuple(sorted(simple_of[rs.negate(rs.apply_word(w0_l, rs.simple(k)))] for k in K))
            if K2 in words:
                continue
            if len(words) >= budget:
                raise BudgetExceeded("Levi class closure", len(words))
            # w0^K·w0^L maps Δ_{K'} onto Δ_K
            words[K2] = (*w0_l, *longest_word(rs, K), *words[K])
            queue.append(K2)
    conj = {K: rs.element(w) for K, w in words.items()}
    return LeviClass(J, tuple(sorted(words)), conj, "closure")


def _levi_exhaustive(rs: RootSystem, J: tuple[int, ...]) -> LeviClass:
    identity = tuple(range(len(rs.roots)))
    group = close_group(rs.reflections, identity)
    simple_of = {rs.simple(k): k for k in range(rs.rank)}
    found: dict[tuple[int, ...], WeylElement] = {}
    for perm in sorted(group):
        images = [perm[rs.simple(j)] for j in J]
        if all(i in simple_of for i in images):
            K = tuple(sorted(simple_of[i] for i in images))
            if K not in found:
                inverse_perm = [0] * len(perm)
                for i, p in enumerate(perm):
                    inverse_perm[p] = i
                found[K] = WeylElement(tuple(inverse_perm))
    return LeviClass(J, tuple(sorted(found)), found, "exhaustive")


def levi_class(
    rs: RootSystem,
    J: Iterable[int],
    method: Literal["closure", "exhaustive", "chambers"] = "closure",
    budget: int = DEFAULT_BUDGET,
) -> LeviClass:
    """𝒦_J, the node subsets K with w·Δ_K = Δ_J for some w ∈ W."""
    js = parse_subset(rs, J)
    if method == "exhaustive":
        if rs.rank > 4:
            raise InvalidSubset("exhaustive Levi search is limited to rank 4")
        return _levi_exhaustive(rs, js)
    if method == "chambers":
        rrs = restrict(rs, js)
        conj: dict[tuple[int, ...], WeylElement] = {}
        for chamber in chambers(rrs, budget):
            lifted = lift(rrs, chamber)
            conj.setdefault(lifted.K, lifted.w)
        return LeviClass(js, tuple(sorted(conj)), conj, "chambers")
    try:
        return _levi_closure(rs, js, budget)
    except BudgetExceeded:
        if rs.rank > 4:
            raise
        logger.info("Levi closure over budget; searching W exhaustively")
        return _levi_exhaustive(rs, js)


# ── Structural checks ──────────────────────────────────────────────────────────


def verify_closure_properties(rrs: RestrictedRootSystem) -> None:
    """Check the closure properties of Φ^J, raising TheoremViolation on failure.

    Distinct restricted roots with positive inner product differ by a
    restricted root; proportional ones are integer multiples of a common
    restricted root; every restricted root lifts to a root α + α′ with α′ in
    E_J pairing non-negatively with Δ_J.
    """
    vs = rrs.vectors
    for a, va in enumerate(vs):
        for b, vb in enumerate(vs):
            if a != b and rrs.inner(va, vb) > 0:
                diff = tuple(x - y for x, y in zip(va, vb))
                if any(diff) and diff not in rrs.index:
                    raise TheoremViolation(f"{va} - {vb} is not a restricted root")
            if a < b and _proportional(va, vb) and dot(va, vb) > 0:
                if not any(a in rrs.multiples[c] and b in rrs.multiples[c] for c in range(len(vs))):
                    raise TheoremViolation(f"{va} and {vb} are not multiples of one restricted root")
    rs = rrs.rs
    for a, fiber in enumerate(rrs.fibers):
        if not any(
            all(sum(rs.roots[root][k] * rs.gram[k][j] for k in range(rs.rank)) >= 0 for j in rrs.J)
            for root in fiber
        ):
            raise TheoremViolation(f"restricted root {rrs.vectors[a]} has no dominant lift")


def _proportional(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(len(a)))
