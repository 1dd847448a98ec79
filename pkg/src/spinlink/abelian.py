"""Exact arithmetic in Q/Z and in finite abelian groups.

Groups are always kept in Smith canonical form ``Z_{d_1} + ... + Z_{d_k}``
with ``d_i | d_{i+1}`` and every ``d_i >= 2``.  Elements are coefficient
tuples against the canonical generators.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from . import intmat
from .errors import InvalidArgument, ResourceLimit

#: Largest group that enumeration-based routines will walk.
ENUMERATION_BOUND = 2**20


def set_enumeration_bound(bound: int) -> None:
    global ENUMERATION_BOUND
    if bound < 1:
        raise InvalidArgument("enumeration bound must be positive")
    ENUMERATION_BOUND = int(bound)


def check_bound(size: int, bound: int | None = None) -> None:
    limit = ENUMERATION_BOUND if bound is None else bound
    if size > limit:
        raise ResourceLimit(f"group of order {size} exceeds enumeration bound {limit}")


# --------------------------------------------------------------------------
# Q/Z


@dataclass(frozen=True, order=True, repr=False)
class RationalMod1:
    """Canonical representative ``numerator/denominator`` in [0, 1)."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        d = self.denominator
        n = self.numerator
        if d <= 0 or not 0 <= n < d or math.gcd(n, d) != 1:
            raise InvalidArgument(
                f"{n}/{d} is not canonical; build values with qz_make"
            )

    @classmethod
    def from_fraction(cls, x: Fraction | int) -> "RationalMod1":
        x = Fraction(x)
        return qz_make(x.numerator, x.denominator)

    @classmethod
    def parse(cls, text: str) -> "RationalMod1":
        text = str(text).strip()
        try:
            if "/" in text:
                n, d = text.split("/")
                return qz_make(int(n), int(d))
            return qz_make(int(text), 1)
        except ValueError as exc:
            raise InvalidArgument(f"not an exact rational: {text!r}") from exc

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def is_zero(self) -> bool:
        return self.numerator == 0

    def __add__(self, other):
        if isinstance(other, RationalMod1):
            other = other.as_fraction()
        elif not isinstance(other, (int, Fraction)):
            return NotImplemented
        return RationalMod1.from_fraction(self.as_fraction() + other)

    __radd__ = __add__

    def __neg__(self):
        return RationalMod1.from_fraction(-self.as_fraction())

    def __sub__(self, other):
        if isinstance(other, RationalMod1):
            return self + (-other)
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __mul__(self, k):
        if isinstance(k, int):
            return RationalMod1.from_fraction(self.as_fraction() * k)
        return NotImplemented

    __rmul__ = __mul__

    def phase(self) -> complex:
        """``exp(2 pi i x)``, exact for multiples of 1/4."""
        return root_of_unity(self.numerator, self.denominator)

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self):
        return f"RationalMod1({self.numerator}/{self.denominator})"


def qz_make(n: int, d: int) -> RationalMod1:
    """Reduce ``n/d`` into the canonical representative in [0, 1)."""
    if d == 0:
        raise InvalidArgument("zero denominator")
    x = Fraction(n, d)
    num = x.numerator % x.denominator
    return RationalMod1(num, x.denominator)


QZ_ZERO = RationalMod1(0, 1)

_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


def root_of_unity(n: int, d: int) -> complex:
    """``exp(2 pi i n/d)`` with exact values on the quarter turns."""
    if (4 * n) % d == 0:
        return _QUARTER_TURNS[(4 * n // d) % 4]
    angle = 2 * math.pi * (n % d) / d
    return complex(math.cos(angle), math.sin(angle))


# --------------------------------------------------------------------------
# finite abelian groups


def _quotient_presentation(relations: Sequence[Sequence[int]], ncols: int):
    """Canonical form of ``Z^ncols / rowspace(relations)`` (relations of full rank).

    Returns ``(orders, keep, v, vinv)``: invariant factors ``> 1``, the SNF
    column indices they sit at, and the column transform with its inverse.
    The coordinates of ``x`` are ``(x @ v)[keep] mod orders``; canonical
    generator ``t`` lifts to row ``keep[t]`` of ``vinv``.
    """
    if ncols == 0:
        return [], [], [], []
    res = intmat.snf(relations) if relations else intmat.snf([[0] * ncols])
    diag = res.diagonal + [0] * (ncols - len(res.diagonal))
    if any(d == 0 for d in diag):
        raise InvalidArgument("relations do not present a finite group")
    keep = [i for i, d in enumerate(diag) if d > 1]
    vinv = [[int(x) for x in row] for row in intmat.inverse(res.v)]
    return [diag[i] for i in keep], keep, res.v, vinv


@dataclass(frozen=True)
class FinAbGroup:
    """Finite abelian group in Smith canonical form."""

    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(d) for d in self.orders))
        for i, d in enumerate(self.orders):
            if d < 2:
                raise InvalidArgument(f"invariant factor {d} < 2; use group_from_orders")
            if i and d % self.orders[i - 1]:
                raise InvalidArgument(f"orders {self.orders} break the divisibility chain")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def cardinality(self) -> int:
        return math.prod(self.orders)

    def __len__(self):
        return self.cardinality

    @property
    def exponent(self) -> int:
        return self.orders[-1] if self.orders else 1

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def element(self, coeffs: Iterable[int]) -> "GroupElement":
        coeffs = tuple(coeffs)
        if len(coeffs) != self.rank:
            raise InvalidArgument(f"expected {self.rank} coefficients, got {len(coeffs)}")
        return GroupElement(self, tuple(int(x) % d for x, d in zip(coeffs, self.orders)))

    def generator(self, i: int) -> "GroupElement":
        return self.element(int(i == j) for j in range(self.rank))

    def elements(self) -> Iterator["GroupElement"]:
        """All elements in lexicographic coefficient order."""
        check_bound(self.cardinality)
        for coeffs in itertools.product(*(range(d) for d in self.orders)):
            yield GroupElement(self, coeffs)

    def index(self, a: "GroupElement | Sequence[int]") -> int:
        """Position of ``a`` in :meth:`elements` (mixed radix)."""
        coeffs = a.coeffs if isinstance(a, GroupElement) else a
        idx = 0
        for x, d in zip(coeffs, self.orders):
            idx = idx * d + (x % d)
        return idx

    def from_index(self, idx: int) -> "GroupElement":
        coeffs = []
        for d in reversed(self.orders):
            idx, r = divmod(idx, d)
            coeffs.append(r)
        return GroupElement(self, tuple(reversed(coeffs)))

    def __str__(self):
        if not self.orders:
            return "0"
        return " + ".join(f"Z{d}" for d in self.orders)


def group_from_orders(orders: Sequence[int]) -> FinAbGroup:
    """Normalize a product of cyclic groups into Smith canonical form."""
    return normalize_orders(orders)[0]


def normalize_orders(orders: Sequence[int]):
    """Like :func:`group_from_orders` but also return the change of coordinates.

    Returns ``(group, to_canonical, lifts)`` where ``to_canonical`` maps a
    coefficient vector against the given cyclic factors to an element of
    ``group`` and ``lifts[t]`` is the old-coordinate vector of generator ``t``.
    """
    orders = [int(d) for d in orders]
    for d in orders:
        if d < 1:
            raise InvalidArgument(f"cyclic order {d} must be positive")
    k = len(orders)
    rel = [[d if i == j else 0 for j in range(k)] for i, d in enumerate(orders)]
    new_orders, keep, v, vinv = _quotient_presentation(rel, k)
    group = FinAbGroup(tuple(new_orders))

    def to_canonical(x: Sequence[int]) -> GroupElement:
        xv = [sum(x[i] * v[i][j] for i in range(k)) for j in range(k)]
        return group.element(xv[j] for j in keep)

    lifts = [list(vinv[j]) for j in keep]
    return group, to_canonical, lifts


@dataclass(frozen=True, order=True)
class GroupElement:
    group: FinAbGroup = field(compare=False)
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.group.rank or any(
            not 0 <= x < d for x, d in zip(self.coeffs, self.group.orders)
        ):
            raise InvalidArgument(f"{self.coeffs} is not a reduced element of {self.group}")

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group == other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.group.orders, self.coeffs))

    def _same(self, other: "GroupElement"):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise InvalidArgument("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return element_add(self, other)

    def __neg__(self) -> "GroupElement":
        return GroupElement(
            self.group, tuple((-x) % d for x, d in zip(self.coeffs, self.group.orders))
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElement":
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(
            self.group, tuple((k * x) % d for x, d in zip(self.coeffs, self.group.orders))
        )

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return not any(self.coeffs)

    def order(self) -> int:
        return element_order(self)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"GroupElement{self.coeffs}"


def element_add(a: GroupElement, b: GroupElement) -> GroupElement:
    a._same(b)
    return GroupElement(
        a.group, tuple((x + y) % d for x, y, d in zip(a.coeffs, b.coeffs, a.group.orders))
    )


def element_order(a: GroupElement) -> int:
    r = 1
    for x, d in zip(a.coeffs, a.group.orders):
        r = math.lcm(r, d // math.gcd(x, d))
    return r


def as_element(group: FinAbGroup, a) -> GroupElement:
    """Accept a :class:`GroupElement` of ``group`` or a coefficient sequence."""
    if isinstance(a, GroupElement):
        if a.group != group:
            raise InvalidArgument("element belongs to a different group")
        return a
    return group.element(a)


# --------------------------------------------------------------------------
# subgroups and homomorphisms


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subgroup with a cached, sorted enumeration of its members."""

    group: FinAbGroup
    generators: tuple[GroupElement, ...]
    members: tuple[GroupElement, ...]
    _set: frozenset = field(repr=False)

    def __contains__(self, a) -> bool:
        if not isinstance(a, GroupElement):
            a = self.group.element(a)
        return a in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group == other.group and self._set == other._set

    def __hash__(self):
        return hash((self.group.orders, self._set))

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def join(self, other: "Subgroup") -> "Subgroup":
        return subgroup_generate(self.group, self.generators + other.generators)

    def __repr__(self):
        return "Subgroup{" + ", ".join(str(m.coeffs) for m in self.members) + "}"


def subgroup_generate(
    group: FinAbGroup, gens: Iterable, bound: int | None = None
) -> Subgroup:
    """Closure of ``gens`` under addition, with members in sorted order."""
    check_bound(group.cardinality, bound)
    gens = tuple(as_element(group, g) for g in gens)
    members = {group.identity()}
    for g in gens:
        if g in members:
            continue
        step = [g * k for k in range(element_order(g))]
        members = {m + s for m in members for s in step}
    return Subgroup(group, gens, tuple(sorted(members)), frozenset(members))


def subgroup_from_members(group: FinAbGroup, members: Iterable[GroupElement]) -> Subgroup:
    """Wrap an already-closed member set, choosing a small generating set."""
    members = set(members)
    gens: list[GroupElement] = []
    span = {group.identity()}
    for m in sorted(members):
        if m not in span:
            gens.append(m)
            step = [m * k for k in range(element_order(m))]
            span = {x + s for x in span for s in step}
    if span != members:
        raise InvalidArgument("member set is not closed under addition")
    return Subgroup(group, tuple(gens), tuple(sorted(members)), frozenset(members))


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism determined by the images of the source generators."""

    source: FinAbGroup
    target: FinAbGroup
    images: tuple[GroupElement, ...]

    def __post_init__(self):
        imgs = tuple(as_element(self.target, x) for x in self.images)
        if len(imgs) != self.source.rank:
            raise InvalidArgument("need one image per source generator")
        for g, d in zip(imgs, self.source.orders):
            if not (g * d).is_identity():
                raise InvalidArgument(f"image {g.coeffs} has order not dividing {d}")
        object.__setattr__(self, "images", imgs)

    def __call__(self, a) -> GroupElement:
        a = as_element(self.source, a)
        out = self.target.identity()
        for x, img in zip(a.coeffs, self.images):
            if x:
                out = out + img * x
        return out

    def image(self) -> Subgroup:
        return subgroup_generate(self.target, self.images)

    def kernel(self) -> Subgroup:
        return subgroup_from_members(
            self.source, (a for a in self.source.elements() if self(a).is_identity())
        )

    def is_isomorphism(self) -> bool:
        return (
            self.source.cardinality == self.target.cardinality
            and self.image().order == self.target.cardinality
        )

    def inverse(self) -> "GroupHom":
        if not self.is_isomorphism():
            raise InvalidArgument("homomorphism is not invertible")
        table = {self(a): a for a in self.source.elements()}
        return GroupHom(
            self.target, self.source,
            tuple(table[self.target.generator(i)] for i in range(self.target.rank)),
        )


@dataclass(frozen=True)
class SubgroupMap:
    """A homomorphism defined only on a subgroup, stored as a lookup table."""

    domain: Subgroup
    target: FinAbGroup
    table: dict = field(repr=False, compare=False)

    def __call__(self, a) -> GroupElement:
        a = as_element(self.domain.group, a)
        try:
            return self.table[a]
        except KeyError:
            raise InvalidArgument(f"{a.coeffs} is outside the domain subgroup") from None


def quotient(group: FinAbGroup, sub: Subgroup) -> tuple[FinAbGroup, GroupHom]:
    """``group / sub`` in canonical form together with the projection."""
    if sub.group != group:
        raise InvalidArgument("subgroup lives in a different group")
    k = group.rank
    rel = [[d if i == j else 0 for j in range(k)] for i, d in enumerate(group.orders)]
    rel += [list(g.coeffs) for g in sub.generators]
    orders, keep, v, _ = _quotient_presentation(rel, k)
    q = FinAbGroup(tuple(orders))
    images = tuple(q.element(v[i][j] for j in keep) for i in range(k))
    proj = GroupHom(group, q, images)
    return q, proj


@dataclass(frozen=True)
class SubgroupStructure:
    """A subgroup presented as an abstract canonical group."""

    group: FinAbGroup
    embedding: GroupHom
    coords: SubgroupMap


def subgroup_structure(sub: Subgroup) -> SubgroupStructure:
    """Canonical abstract group isomorphic to ``sub`` plus both directions."""
    ambient = sub.group
    gens = [g for g in sub.generators if not g.is_identity()]
    r, k = len(gens), ambient.rank
    if r == 0:
        trivial = FinAbGroup(())
        emb = GroupHom(trivial, ambient, ())
        return SubgroupStructure(
            trivial, emb, SubgroupMap(sub, trivial, {ambient.identity(): trivial.identity()})
        )
    stacked = [list(g.coeffs) for g in gens]
    stacked += [[d if i == j else 0 for j in range(k)] for i, d in enumerate(ambient.orders)]
    relations = [row[:r] for row in intmat.left_kernel(stacked)]
    orders, keep, v, vinv = _quotient_presentation(relations, r)
    h = FinAbGroup(tuple(orders))
    images = []
    for j in keep:
        img = ambient.identity()
        for c, g in zip(vinv[j], gens):
            img = img + g * c
        images.append(img)
    emb = GroupHom(h, ambient, tuple(images))
    table = {emb(x): x for x in h.elements()}
    if len(table) != sub.order:
        raise AssertionError("subgroup presentation has the wrong order")
    return SubgroupStructure(h, emb, SubgroupMap(sub, h, table))
