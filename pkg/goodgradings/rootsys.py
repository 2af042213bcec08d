"""Root systems of types A–G in simple-root coordinates.

Roots are integer coefficient tuples over the simple roots in Bourbaki
numbering. The inner product lives in the Gram matrix of the simple roots;
short roots have squared length 2, long roots 4 (types B, C, F) or 6 (G₂).
Points of E are carried by their pairings ``ℓ_k = (α_k, v)`` with the
simple roots, which is the form every caller needs.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from goodgradings.errors import InvalidCartanType, InvalidSubset
from goodgradings.exact import QMatrix, Scalar, rank

logger = logging.getLogger(__name__)

Root = tuple[int, ...]

CARTAN_TYPES = ("A", "B", "C", "D", "E", "F", "G")

_FIXED_RANK = {"F": 4, "G": 2}
_EXCEPTIONAL_WEYL = {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}


def _edges(cartan_type: str, n: int) -> list[tuple[int, int]]:
    if cartan_type == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if cartan_type == "E":
        return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
    return [(i, i + 1) for i in range(n - 1)]


def _squared_lengths(cartan_type: str, n: int) -> list[int]:
    if cartan_type == "B":
        return [4] * (n - 1) + [2]
    if cartan_type == "C":
        return [2] * (n - 1) + [4]
    if cartan_type == "F":
        return [4, 4, 2, 2]
    if cartan_type == "G":
        return [2, 6]
    return [2] * n


def weyl_order(cartan_type: str, n: int) -> int:
    """Order of the Weyl group, from the closed formulas."""
    if cartan_type == "A":
        return math.factorial(n + 1)
    if cartan_type in ("B", "C"):
        return 2**n * math.factorial(n)
    if cartan_type == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return _EXCEPTIONAL_WEYL[(cartan_type, n)]


def validate_type(cartan_type: str, n: int) -> None:
    minimum = {"A": 1, "B": 2, "C": 2, "D": 4}
    if cartan_type not in CARTAN_TYPES:
        raise InvalidCartanType(f"unknown Cartan type '{cartan_type}'; use one of {', '.join(CARTAN_TYPES)}")
    if cartan_type in _FIXED_RANK and n != _FIXED_RANK[cartan_type]:
        raise InvalidCartanType(f"type {cartan_type} only exists in rank {_FIXED_RANK[cartan_type]}")
    if cartan_type == "E" and n not in (6, 7, 8):
        raise InvalidCartanType("type E needs rank 6, 7 or 8")
    if cartan_type in minimum and n < minimum[cartan_type]:
        raise InvalidCartanType(f"type {cartan_type} needs rank at least {minimum[cartan_type]}")


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as a permutation of root indices, with a word when known.

    ``word`` lists simple reflections in the order they are applied.
    """

    perm: tuple[int, ...]
    word: tuple[int, ...] | None = None


@dataclass(frozen=True)
class RootSystem:
    cartan_type: str
    rank: int
    gram: tuple[tuple[int, ...], ...]
    roots: tuple[Root, ...]
    index: dict[Root, int] = field(repr=False, compare=False)
    reflections: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def name(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    @property
    def n_positive(self) -> int:
        return len(self.roots) // 2

    @property
    def dimension(self) -> int:
        """Dimension of the simple Lie algebra."""
        return len(self.roots) + self.rank

    @cached_property
    def cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        """Cartan matrix ``A[i][j] = 2(α_i, α_j)/(α_j, α_j)``."""
        g = self.gram
        return tuple(
            tuple(Fraction(2 * g[i][j], g[j][j]) for j in range(self.rank)) for i in range(self.rank)
        )

    @cached_property
    def highest_root(self) -> Root:
        return self.roots[self.n_positive - 1]

    @cached_property
    def weyl_order(self) -> int:
        return weyl_order(self.cartan_type, self.rank)

    def positive(self) -> range:
        return range(self.n_positive)

    def negate(self, i: int) -> int:
        n = self.n_positive
        return i + n if i < n else i - n

    def is_positive(self, i: int) -> bool:
        return i < self.n_positive

    def simple(self, k: int) -> int:
        """Root index of the simple root α_{k+1}."""
        return self.index[tuple(int(j == k) for j in range(self.rank))]

    def inner(self, a: Sequence[Scalar], b: Sequence[Scalar]) -> Fraction:
        """(a, b) for vectors in simple-root coordinates."""
        g = self.gram
        return sum(
            (Fraction(a[i]) * b[j] * g[i][j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j]),
            Fraction(0),
        )

    @cached_property
    def norms(self) -> tuple[int, ...]:
        """(β, β) for every root index."""
        return tuple(int(self.inner(r, r)) for r in self.roots)

    def coroot_pairing(self, root: Sequence[Scalar], k: int) -> Fraction:
        """⟨β, α_k^∨⟩ for β in simple-root coordinates."""
        return Fraction(2) * sum((Fraction(root[j]) * self.gram[j][k] for j in range(self.rank)), Fraction(0)) / self.gram[k][k]

    def add(self, i: int, j: int) -> int | None:
        """Index of root_i + root_j, or None when the sum is not a root."""
        s = tuple(a + b for a, b in zip(self.roots[i], self.roots[j]))
        return self.index.get(s)

    def apply_word(self, word: Sequence[int], i: int) -> int:
        for k in word:
            i = self.reflections[k][i]
        return i

    def element(self, word: Sequence[int]) -> WeylElement:
        perm = tuple(self.apply_word(word, i) for i in range(len(self.roots)))
        return WeylElement(perm, tuple(word))

    def label(self, k: int) -> int:
        """Bourbaki label (1-based) of node ``k``."""
        return k + 1


def height(root: Sequence[int]) -> int:
    """Sum of the simple-root coefficients."""
    return sum(root)


def _closure(cartan: list[list[Fraction]], n: int) -> list[Root]:
    """Positive roots, level by level, via α_i-strings."""
    simple = [tuple(int(j == i) for j in range(n)) for i in range(n)]
    known: set[Root] = set(simple)
    level = list(simple)
    positive = list(simple)
    while level:
        nxt: list[Root] = []
        for beta in level:
            for i in range(n):
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) not in known:
                        break
                    p += 1
                pairing = sum(beta[j] * cartan[j][i] for j in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    t = tuple(up)
                    if t not in known:
                        known.add(t)
                        nxt.append(t)
        positive.extend(nxt)
        level = nxt
    return positive


def build(cartan_type: str, n: int) -> RootSystem:
    """Root system of the given type and rank with Bourbaki numbering."""
    cartan_type = cartan_type.upper()
    validate_type(cartan_type, n)
    lengths = _squared_lengths(cartan_type, n)
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = lengths[i]
    for i, j in _edges(cartan_type, n):
        gram[i][j] = gram[j][i] = -max(lengths[i], lengths[j]) // 2
    cartan = [[Fraction(2 * gram[i][j], gram[j][j]) for j in range(n)] for i in range(n)]

    positive = sorted(_closure(cartan, n), key=lambda r: (height(r), r))
    roots = positive + [tuple(-c for c in r) for r in positive]
    index = {r: i for i, r in enumerate(roots)}

    reflections = []
    for k in range(n):
        perm = []
        for r in roots:
            c = sum(r[j] * cartan[j][k] for j in range(n))
            image = list(r)
            image[k] -= int(c)
            perm.append(index[tuple(image)])
        reflections.append(tuple(perm))

    rs = RootSystem(
        cartan_type=cartan_type,
        rank=n,
        gram=tuple(tuple(row) for row in gram),
        roots=tuple(roots),
        index=index,
        reflections=tuple(reflections),
    )
    logger.debug("built %s with %d roots", rs.name, len(roots))
    return rs


# ── Node orderings ─────────────────────────────────────────────────────────────


def display_order(rs: RootSystem) -> list[int]:
    """Bourbaki node indices in display order.

    E-types show the main row 1,3,4,…,r followed by node 2 below it.
    """
    if rs.cartan_type == "E":
        return [0] + list(range(2, rs.rank)) + [1]
    return list(range(rs.rank))


def format_labels(rs: RootSystem, labels: Sequence[Scalar]) -> str:
    """Compact diagram text such as ``00022/0`` (E) or ``0,2,0`` (others)."""
    order = display_order(rs)
    if rs.cartan_type == "E":
        main = [labels[k] for k in order[:-1]]
        if all(Fraction(v).denominator == 1 and 0 <= v <= 9 for v in labels):
            return "".join(str(int(v)) for v in main) + "/" + str(int(labels[order[-1]]))
        return ",".join(str(v) for v in main) + "/" + str(labels[order[-1]])
    return ",".join(str(labels[k]) for k in order)


@dataclass(frozen=True)
class NodeOrder:
    """Translation between user node labels and Bourbaki indices.

    ``user_labels[d]`` is the user's label of the node shown at display
    position ``d``.
    """

    to_bourbaki: dict[int, int]

    @classmethod
    def standard(cls, rs: RootSystem) -> NodeOrder:
        return cls({k + 1: k for k in range(rs.rank)})

    @classmethod
    def parse(cls, rs: RootSystem, user_labels: Sequence[int] | None) -> NodeOrder:
        if not user_labels:
            return cls.standard(rs)
        if sorted(user_labels) != list(range(1, rs.rank + 1)):
            raise InvalidSubset(
                f"--order must be a permutation of 1..{rs.rank}, got {','.join(map(str, user_labels))}"
            )
        return cls({label: k for label, k in zip(user_labels, display_order(rs))})

    def nodes(self, labels: Sequence[int]) -> list[int]:
        """Bourbaki indices of user-labelled nodes."""
        unknown = [x for x in labels if x not in self.to_bourbaki]
        if unknown:
            raise InvalidSubset(f"no node labelled {unknown[0]}")
        return [self.to_bourbaki[x] for x in labels]

    def user_label(self, k: int) -> int:
        return next(label for label, b in self.to_bourbaki.items() if b == k)


# ── Weyl group actions ─────────────────────────────────────────────────────────


def reflect_labels(rs: RootSystem, labels: Sequence[Fraction], k: int) -> tuple[Fraction, ...]:
    """Pairings of s_k(v) given the pairings ℓ of v."""
    a = rs.cartan
    lk = labels[k]
    return tuple(labels[i] - a[i][k] * lk for i in range(rs.rank))


def dominant_rep(rs: RootSystem, labels: Sequence[Scalar]) -> tuple[tuple[Fraction, ...], WeylElement]:
    """Dominant W-conjugate of the point with pairings ``labels``.

    Reflects in the leftmost negative label until none is left; the word is
    recorded in application order.
    """
    current = tuple(Fraction(v) for v in labels)
    word: list[int] = []
    while True:
        k = next((i for i, v in enumerate(current) if v < 0), None)
        if k is None:
            return current, rs.element(word)
        current = reflect_labels(rs, current, k)
        word.append(k)


def longest_word(rs: RootSystem, nodes: Sequence[int]) -> tuple[int, ...]:
    """Reduced word of the longest element of the parabolic subgroup on ``nodes``.

    Obtained by driving a regular dominant point of the subsystem to its
    antidominant chamber.
    """
    current = [Fraction(0)] * rs.rank
    for k in nodes:
        current[k] = Fraction(-1)
    word: list[int] = []
    labels = tuple(current)
    while True:
        k = next((i for i in nodes if labels[i] < 0), None)
        if k is None:
            return tuple(word)
        labels = reflect_labels(rs, labels, k)
        word.append(k)


# ── Chevalley basis ────────────────────────────────────────────────────────────


@dataclass
class ChevalleyBasisData:
    """Structure constants N_{α,β} fixed by the extraspecial-pair signs.

    Brackets are ``[e_α, e_β] = N_{α,β} e_{α+β}``; ``coroots[i]`` expresses
    h_α in the basis h_1..h_r of simple coroots.
    """

    rs: RootSystem
    extraspecial: dict[int, tuple[int, int]]
    _memo: dict[tuple[int, int], int] = field(default_factory=dict, repr=False)

    def _string_length(self, a: int, b: int) -> int:
        """Largest p with root_b − p·root_a a root."""
        rs = self.rs
        p = 0
        cur: int | None = b
        neg = rs.negate(a)
        while True:
            assert cur is not None
            cur = rs.add(cur, neg)
            if cur is None:
                return p
            p += 1

    def n(self, a: int, b: int) -> int:
        rs = self.rs
        if rs.add(a, b) is None:
            return 0
        key = (a, b)
        if key not in self._memo:
            self._memo[key] = self._compute(a, b)
        return self._memo[key]

    def _compute(self, a: int, b: int) -> int:
        rs = self.rs
        norm = rs.norms
        pa, pb = rs.is_positive(a), rs.is_positive(b)
        if pa and pb:
            s = rs.add(a, b)
            assert s is not None
            alpha, beta = self.extraspecial[s]
            if (a, b) == (alpha, beta):
                return self._string_length(a, b) + 1
            if (b, a) == (alpha, beta):
                return -self.n(b, a)
            total = Fraction(0)
            ma, mb = rs.negate(alpha), rs.negate(beta)
            t = rs.add(b, ma)
            if t is not None:
                total += Fraction(self.n(b, ma) * self.n(a, mb), norm[t])
            t = rs.add(a, ma)
            if t is not None:
                total += Fraction(self.n(ma, a) * self.n(b, mb), norm[t])
            value = Fraction(norm[s]) / self.n(alpha, beta) * total
            assert value.denominator == 1
            return int(value)
        if not pa and not pb:
            return -self.n(rs.negate(a), rs.negate(b))
        s = rs.add(a, b)
        assert s is not None
        c = rs.negate(s)
        # N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b); pick the same-sign pair.
        if rs.is_positive(b) == rs.is_positive(c):
            value = Fraction(norm[c], norm[a]) * self.n(b, c)
        else:
            value = Fraction(norm[c], norm[b]) * self.n(c, a)
        assert value.denominator == 1
        return int(value)

    @cached_property
    def coroots(self) -> tuple[tuple[int, ...], ...]:
        rs = self.rs
        out = []
        for i, r in enumerate(rs.roots):
            coeffs = [Fraction(r[j] * rs.gram[j][j], rs.norms[i]) for j in range(rs.rank)]
            assert all(c.denominator == 1 for c in coeffs)
            out.append(tuple(int(c) for c in coeffs))
        return tuple(out)


def chevalley(rs: RootSystem) -> ChevalleyBasisData:
    """Chevalley basis data with N = +(p+1) on every extraspecial pair."""
    extraspecial: dict[int, tuple[int, int]] = {}
    for s in rs.positive():
        for a in rs.positive():
            b = rs.index.get(tuple(x - y for x, y in zip(rs.roots[s], rs.roots[a])))
            if b is not None and rs.is_positive(b):
                extraspecial[s] = (a, b)
                break
    return ChevalleyBasisData(rs, extraspecial)


@dataclass(frozen=True)
class AdRankReport:
    """Ranks of ad e between graded pieces of 𝔤.

    ``pieces`` maps each degree j to ``(dim 𝔤_j, dim 𝔤_{j+2}, rank)``.
    """

    pieces: dict[Fraction, tuple[int, int, int]]
    good: bool
    centralizer_dim: int


def ad_rank_oracle(
    rs: RootSystem,
    support: Sequence[int],
    labels: Sequence[Scalar],
    basis: ChevalleyBasisData | None = None,
) -> AdRankReport:
    """Check the good grading condition for e = Σ e_β (β in ``support``).

    The grading gives e_β degree Σ b_k·labels[k] and the Cartan subalgebra
    degree 0. ad e must be injective from every degree ≤ −1 and surjective
    onto every degree ≥ 1.
    """
    if basis is None:
        basis = chevalley(rs)
    ell = [Fraction(v) for v in labels]
    nroots = len(rs.roots)
    degree = [sum((Fraction(c) * l for c, l in zip(r, ell)), Fraction(0)) for r in rs.roots]
    for b in support:
        if degree[b] != 2:
            raise InvalidSubset(f"e has a component of degree {degree[b]}, expected 2")
    # basis of 𝔤: root vectors 0..nroots-1 then h_1..h_r
    dims = nroots + rs.rank
    deg_of = degree + [Fraction(0)] * rs.rank
    by_degree: dict[Fraction, list[int]] = {}
    for x, d in enumerate(deg_of):
        by_degree.setdefault(d, []).append(x)

    def bracket(x: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for b in support:
            if x < nroots:
                if x == rs.negate(b):
                    for k, c in enumerate(basis.coroots[b]):
                        if c:
                            out[nroots + k] = out.get(nroots + k, 0) + c
                    continue
                s = rs.add(b, x)
                if s is not None:
                    out[s] = out.get(s, 0) + basis.n(b, x)
            else:
                k = x - nroots
                c = -rs.coroot_pairing(rs.roots[b], k)
                if c:
                    out[b] = out.get(b, 0) + int(c)
        return out

    images = [bracket(x) for x in range(dims)]
    pieces: dict[Fraction, tuple[int, int, int]] = {}
    good = True
    total_rank = 0
    for d in sorted(by_degree):
        source = by_degree[d]
        target = by_degree.get(d + 2, [])
        position = {y: i for i, y in enumerate(target)}
        rows = [[0] * len(source) for _ in target]
        for col, x in enumerate(source):
            for y, c in images[x].items():
                rows[position[y]][col] += c
        r = rank(QMatrix.of(rows, len(source))) if target else 0
        pieces[d] = (len(source), len(target), r)
        total_rank += r
        if d <= -1 and r != len(source):
            good = False
        if d >= -1 and r != len(target):
            good = False
    for d in by_degree:
        if d - 2 >= -1 and d - 2 not in by_degree:
            good = False
    return AdRankReport(pieces, good, dims - total_rank)
