"""Integral symmetric bilinear forms and their discriminant theories."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import intmat
from .abelian import FinAbGroup, GroupElement, as_element
from .errors import DegenerateForm, InvalidArgument, OddLattice
from .intmat import SnfResult, snf
from .toporder import AnyonTheory, theory_new

__all__ = [
    "GramLattice", "SnfResult", "snf", "signature", "radical_quotient",
    "dual_coords", "discriminant_theory", "DiscriminantData",
    "stabilize_hyperbolic", "congruent_transform", "hyperbolic",
]


@dataclass(frozen=True)
class GramLattice:
    """``Z^n`` with an integer symmetric Gram matrix (K-matrix, linking matrix)."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        try:
            g = tuple(tuple(int(x) for x in row) for row in self.gram)
        except (TypeError, ValueError) as exc:
            raise InvalidArgument(f"Gram matrix must contain integers: {exc}") from exc
        if not intmat.is_symmetric(g):
            raise InvalidArgument("Gram matrix must be square and symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def det(self) -> int:
        return intmat.det(self.gram)

    @property
    def nondegenerate(self) -> bool:
        return self.det != 0

    def matrix(self) -> list[list[int]]:
        return [list(row) for row in self.gram]

    def norm(self, v: Sequence) -> Fraction:
        return intmat.bilinear(self.gram, v, v)

    def to_dict(self) -> dict:
        return {"gram": self.matrix()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "GramLattice":
        if not isinstance(doc, dict) or "gram" not in doc:
            raise InvalidArgument("lattice document needs a 'gram' field")
        return cls(tuple(tuple(row) for row in doc["gram"]))


def hyperbolic() -> GramLattice:
    return GramLattice(((0, 1), (1, 0)))


def block_sum(a: GramLattice, b: GramLattice) -> GramLattice:
    n, m = a.rank, b.rank
    rows = [list(r) + [0] * m for r in a.gram] + [[0] * n + list(r) for r in b.gram]
    return GramLattice(tuple(tuple(r) for r in rows))


def signature(lat: GramLattice) -> tuple[int, int, int]:
    """``(positive, negative, zero)`` counts by exact congruence diagonalization."""
    a = [[Fraction(x) for x in row] for row in lat.gram]
    p = m = z = 0
    while a:
        k = len(a)
        if a[0][0] == 0:
            i = next((i for i in range(1, k) if a[i][i] != 0), None)
            if i is not None:
                a[0], a[i] = a[i], a[0]
                for row in a:
                    row[0], row[i] = row[i], row[0]
            else:
                j = next((j for j in range(1, k) if a[0][j] != 0), None)
                if j is None:
                    z += 1
                    a = [row[1:] for row in a[1:]]
                    continue
                # e_0 -> e_0 + e_j makes the pivot 2 a[0][j] != 0
                a[0] = [x + y for x, y in zip(a[0], a[j])]
                for row in a:
                    row[0] += row[j]
        piv = a[0][0]
        if piv > 0:
            p += 1
        else:
            m += 1
        a = [
            [a[i][j] - a[i][0] * a[0][j] / piv for j in range(1, k)]
            for i in range(1, k)
        ]
    return p, m, z


@dataclass(frozen=True)
class BasisMap:
    """Relates ``Z^n`` (with degenerate Gram matrix) to its radical quotient.

    ``basis`` holds, as rows, the ``r`` vectors of ``Z^n`` spanning a
    complement of the kernel; ``kernel`` holds a saturated kernel basis.
    """

    basis: tuple[tuple[int, ...], ...]
    kernel: tuple[tuple[int, ...], ...]
    _inverse: tuple[tuple[int, ...], ...] = field(repr=False)

    def project(self, x: Sequence[int]) -> list[int]:
        """Coordinates of ``x`` in the quotient ``Z^n / ker``."""
        r = len(self.basis)
        coords = intmat.matvec(self._inverse, x)
        return [int(c) for c in coords[:r]]

    def restrict_functional(self, c: Sequence[int]) -> list[int]:
        """Meridian (functional) coordinates on the quotient; ``c`` must kill ``ker``."""
        for k in self.kernel:
            if intmat.dot(k, c) != 0:
                raise InvalidArgument("functional does not vanish on the radical")
        return [intmat.dot(b, c) for b in self.basis]


def radical_quotient(lat: GramLattice) -> tuple[GramLattice, BasisMap]:
    """Nondegenerate form induced on ``Z^n / ker G``."""
    n = lat.rank
    if lat.nondegenerate:
        eye = tuple(tuple(r) for r in intmat.identity(n))
        return lat, BasisMap(eye, (), eye)
    res = snf(lat.gram)
    r = res.rank
    v = res.v
    cols = intmat.transpose(v)
    reduced = intmat.matmul(intmat.matmul(intmat.transpose(v), lat.gram), v)
    sub = GramLattice(tuple(tuple(row[:r]) for row in reduced[:r]))
    vinv = [[int(x) for x in row] for row in intmat.inverse(v)]
    return sub, BasisMap(
        tuple(tuple(c) for c in cols[:r]),
        tuple(tuple(c) for c in cols[r:]),
        tuple(tuple(row) for row in vinv),
    )


def dual_coords(lat: GramLattice, c: Sequence[int]) -> list[Fraction]:
    """``G^{-1} c``: the vector of the dual lattice with meridian coordinates ``c``."""
    if len(c) != lat.rank:
        raise InvalidArgument(f"expected a vector of length {lat.rank}")
    try:
        inv = intmat.inverse(lat.gram)
    except ZeroDivisionError:
        raise DegenerateForm("Gram matrix is singular") from None
    return intmat.matvec(inv, [Fraction(x) for x in c])


@dataclass(frozen=True)
class DiscriminantData:
    """``(Lambda*/Lambda, q)`` of the nondegenerate part of a lattice.

    ``lattice`` is the radical quotient on which every vector lives;
    ``gen_lifts[t]`` is a dual-lattice vector whose class is generator ``t``.
    """

    theory: AnyonTheory
    lattice: GramLattice
    gen_lifts: tuple[tuple[Fraction, ...], ...]
    radical_basis: tuple[tuple[int, ...], ...]
    basis_map: BasisMap
    _snf_u: tuple[tuple[int, ...], ...] = field(repr=False)
    _keep: tuple[int, ...] = field(repr=False)

    @property
    def group(self) -> FinAbGroup:
        return self.theory.group

    def class_of_meridian(self, c: Sequence[int]) -> GroupElement:
        """Anyon of the dual vector ``G^{-1} c`` (``c`` in radical-quotient coordinates)."""
        uc = intmat.matvec(self._snf_u, c)
        return self.group.element(uc[i] for i in self._keep)

    def class_of_dual(self, w: Sequence) -> GroupElement:
        gw = intmat.matvec(self.lattice.gram, w)
        if any(Fraction(x).denominator != 1 for x in gw):
            raise InvalidArgument("vector is not in the dual lattice")
        return self.class_of_meridian([int(x) for x in gw])

    def lift(self, a) -> list[Fraction]:
        """A dual-lattice representative of the anyon ``a``."""
        a = as_element(self.group, a)
        n = self.lattice.rank
        return [
            sum((x * w[i] for x, w in zip(a.coeffs, self.gen_lifts)), Fraction(0))
            for i in range(n)
        ]


def discriminant_theory(lat: GramLattice) -> DiscriminantData:
    """Discriminant group of an even lattice with ``q([w]) = w^T G w / 2``."""
    if not lat.even:
        raise OddLattice("odd diagonal entry: the discriminant form would be fermionic")
    sub, bmap = radical_quotient(lat)
    g = sub.gram
    n = sub.rank
    res = snf(g)
    diag = res.diagonal
    keep = tuple(i for i, d in enumerate(diag) if d > 1)
    lifts = tuple(
        tuple(Fraction(res.v[row][i], diag[i]) for row in range(n)) for i in keep
    )
    q_gen = [intmat.bilinear(g, w, w) / 2 for w in lifts]
    l_gen = [[intmat.bilinear(g, w1, w2) for w2 in lifts] for w1 in lifts]
    theory = theory_new(FinAbGroup(tuple(diag[i] for i in keep)), q_gen, l_gen)
    return DiscriminantData(
        theory, sub, lifts, bmap.kernel, bmap,
        tuple(tuple(r) for r in res.u), keep,
    )


def stabilize_hyperbolic(lat: GramLattice) -> GramLattice:
    return block_sum(lat, hyperbolic())


def congruent_transform(lat: GramLattice, p: Sequence[Sequence[int]]) -> GramLattice:
    """``P^T G P`` for unimodular ``P``."""
    p = [[int(x) for x in row] for row in p]
    if len(p) != lat.rank or any(len(row) != lat.rank for row in p):
        raise InvalidArgument("transform has the wrong shape")
    if abs(intmat.det(p)) != 1:
        raise InvalidArgument("transform is not unimodular")
    out = intmat.matmul(intmat.matmul(intmat.transpose(p), lat.gram), p)
    return GramLattice(tuple(tuple(r) for r in out))
