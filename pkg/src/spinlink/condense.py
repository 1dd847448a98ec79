"""Anyon condensation, Lagrangian subgroups and Wall surgery on linking matrices."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import intmat
from .abelian import (
    FinAbGroup,
    GroupElement,
    GroupHom,
    Subgroup,
    SubgroupMap,
    as_element,
    check_bound,
    element_order,
    quotient,
    subgroup_from_members,
    subgroup_generate,
    subgroup_structure,
)
from .errors import (
    DegenerateForm,
    InvalidArgument,
    NotABoson,
    NotIsotropic,
    NotLagrangian,
    OddLattice,
    ResourceLimit,
    TorsionLiftError,
)
from .lattice import GramLattice, dual_coords, radical_quotient
from .toporder import EQUIVALENCE_BOUND, AnyonTheory, theory_new


def _coeff_array(group: FinAbGroup) -> np.ndarray:
    check_bound(group.cardinality)
    if group.rank == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices(group.orders, dtype=np.int64)
    return grids.reshape(group.rank, -1).T


def _pairing_numerators(theory: AnyonTheory, a: GroupElement) -> np.ndarray:
    """``N * L(a, b) mod N`` for every ``b`` (lexicographic order)."""
    n = theory.modulus
    k = theory.group.rank
    row = [
        sum(a.coeffs[i] * theory.l_gen[i][j].numerator * (n // theory.l_gen[i][j].denominator)
            for i in range(k)) % n
        for j in range(k)
    ]
    return (_coeff_array(theory.group) @ np.array(row, dtype=np.int64).reshape(k)) % n \
        if k else np.zeros(1, dtype=np.int64)


def bosons(theory: AnyonTheory) -> list[GroupElement]:
    """Anyons with ``q(a) = 0``, vacuum included."""
    qs = theory.q_numerators()
    g = theory.group
    return [g.from_index(int(i)) for i in np.flatnonzero(qs == 0)]


def is_isotropic(theory: AnyonTheory, sub: Subgroup) -> bool:
    if sub.group != theory.group:
        raise InvalidArgument("subgroup lives in a different group")
    qs = theory.q_numerators()
    return all(qs[theory.group.index(a)] == 0 for a in sub.members)


def annihilator(theory: AnyonTheory, sub: Subgroup) -> Subgroup:
    """Anyons braiding trivially with every element of ``sub``."""
    g = theory.group
    if sub.group != g:
        raise InvalidArgument("subgroup lives in a different group")
    mask = np.ones(g.cardinality, dtype=bool)
    for a in sub.generators:
        mask &= _pairing_numerators(theory, a) == 0
    return subgroup_from_members(g, (g.from_index(int(i)) for i in np.flatnonzero(mask)))


@dataclass(frozen=True)
class CondensationResult:
    condensed: AnyonTheory
    wall_anyons: FinAbGroup
    bulk_to_wall: GroupHom
    surviving_to_condensed: SubgroupMap
    subgroup: Subgroup
    annihilator: Subgroup


def condense(theory: AnyonTheory, sub: Subgroup) -> CondensationResult:
    """Condense an isotropic subgroup: ``(Ann_A / A, q')`` plus the wall anyons ``D/A``."""
    if not is_isotropic(theory, sub):
        raise NotIsotropic("subgroup contains a non-boson; q' would be ill-defined")
    wall, to_wall = quotient(theory.group, sub)
    ann = annihilator(theory, sub)
    struct = subgroup_structure(ann)
    inner = subgroup_generate(struct.group, [struct.coords(a) for a in sub.generators])
    cgroup, proj = quotient(struct.group, inner)

    preimage: dict = {}
    for h in struct.group.elements():
        preimage.setdefault(proj(h), h)
    lifts = [struct.embedding(preimage[cgroup.generator(t)]) for t in range(cgroup.rank)]
    q_gen = [theory.q(x) for x in lifts]
    l_gen = [[theory.pairing(x, y) for y in lifts] for x in lifts]
    condensed = theory_new(cgroup, q_gen, l_gen)
    table = {b: proj(struct.coords(b)) for b in ann.members}
    return CondensationResult(
        condensed, wall, to_wall, SubgroupMap(ann, cgroup, table), sub, ann
    )


def _isotropic_census(theory: AnyonTheory, max_order: int | None = None) -> list[Subgroup]:
    """Every isotropic subgroup (optionally only up to ``max_order``), BFS by size."""
    g = theory.group
    bos = [b for b in bosons(theory) if not b.is_identity()]
    trivial = subgroup_generate(g, [])
    seen = {frozenset(trivial.members): trivial}
    level = [trivial]
    while level:
        nxt = []
        for sub in level:
            ann = annihilator(theory, sub)
            for b in bos:
                if b in sub or b not in ann:
                    continue
                step = [b * k for k in range(element_order(b))]
                members = frozenset(m + s for m in sub.members for s in step)
                if max_order is not None and len(members) > max_order:
                    continue
                if members not in seen:
                    new = subgroup_from_members(g, members)
                    seen[members] = new
                    nxt.append(new)
        level = nxt
    return sorted(seen.values(), key=lambda s: (s.order, [m.coeffs for m in s.members]))


def isotropic_subgroups(theory: AnyonTheory) -> list[Subgroup]:
    return _isotropic_census(theory)


def lagrangians(theory: AnyonTheory) -> list[Subgroup]:
    """Isotropic subgroups of order ``sqrt|D|``."""
    if theory.size > EQUIVALENCE_BOUND:
        raise ResourceLimit(f"|D| = {theory.size} exceeds {EQUIVALENCE_BOUND}")
    root = math.isqrt(theory.size)
    if root * root != theory.size:
        return []
    return [s for s in _isotropic_census(theory, root) if s.order == root]


def is_lagrangian(theory: AnyonTheory, sub: Subgroup) -> bool:
    return sub.order ** 2 == theory.size and is_isotropic(theory, sub)


def gapped_boundary_vector(theory: AnyonTheory, sub: Subgroup) -> dict[GroupElement, int]:
    """Indicator ``Z^a = 1 if a in A else 0`` of a gapped boundary."""
    if not is_lagrangian(theory, sub):
        raise NotLagrangian("gapped boundaries need a Lagrangian subgroup")
    return {a: int(a in sub) for a in theory.group.elements()}


# --------------------------------------------------------------------------
# Wall surgery at the level of linking matrices


def _check_surgery_input(lat: GramLattice) -> None:
    if not lat.even:
        raise OddLattice("linking matrix must be even")
    if not lat.nondegenerate:
        raise DegenerateForm("wall surgery needs a nondegenerate linking matrix")


def wall_surgery(lat: GramLattice, c: Sequence[int]) -> GramLattice:
    """Add a component linking the others by ``c`` with framing ``c^T G^{-1} c``.

    ``c`` gives the meridian coordinates of a knot representing the boson
    ``[G^{-1} c]``; the framing is the one whose parallel is torsion.
    """
    _check_surgery_input(lat)
    c = [int(x) for x in c]
    w = dual_coords(lat, c)
    f = intmat.dot(c, w)
    if f.denominator != 1:
        raise TorsionLiftError(f"self-linking {f} is not integral; no torsion parallel")
    if f.numerator % 2:
        raise NotABoson(f"q = {f}/2 mod 1 is nonzero")
    n = lat.rank
    rows = [list(lat.gram[i]) + [c[i]] for i in range(n)] + [c + [f.numerator]]
    return GramLattice(tuple(tuple(r) for r in rows))


def wall_surgery_sequence(
    lat: GramLattice, meridians: Iterable[Sequence[int]]
) -> GramLattice:
    """Condense several mutual bosons one surgery at a time (input order).

    After each surgery the radical is divided out and the remaining meridian
    vectors are carried into the new presentation.
    """
    current = lat
    pending = [[int(x) for x in c] for c in meridians]
    while pending:
        c = pending.pop(0)
        extended = wall_surgery(current, c)
        w = dual_coords(current, c)
        carried = []
        for cb in pending:
            t = intmat.dot(w, cb)
            if t.denominator != 1:
                raise NotIsotropic("meridians do not braid trivially with each other")
            carried.append(cb + [t.numerator])
        current, bmap = radical_quotient(extended)
        pending = [bmap.restrict_functional(cb) for cb in carried]
    return current
