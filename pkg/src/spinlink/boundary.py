"""Composite boundaries (condensation wall + Narain boundary) and folded domain walls."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .abelian import FinAbGroup, GroupElement, GroupHom, Subgroup, as_element, subgroup_generate
from .condense import CondensationResult, condense, is_isotropic
from .errors import InvalidArgument, NotIsotropic, ValidationError
from .lattice import DiscriminantData, GramLattice, discriminant_theory
from .narain import (
    PartitionValue,
    Polarization,
    ThetaParams,
    polarization_from_dict,
    standard_polarization,
    twisted_partition,
)
from .toporder import (
    AnyonTheory,
    ProductCoordinates,
    conjugate,
    deligne_coordinates,
)

NORMALIZATIONS = ("weighted", "indicator")


@dataclass(frozen=True, eq=False)
class BordismBoundaryData:
    """Boundary of ``bulk``: condense ``subgroup``, then a Narain boundary of ``residual_lattice``.

    ``identification`` maps the discriminant group of ``residual_lattice`` onto
    the condensed group ``Ann_A / A``.
    """

    bulk: AnyonTheory
    subgroup: Subgroup
    residual_lattice: GramLattice
    identification: GroupHom
    polarization: Polarization | None = None

    @cached_property
    def condensation(self) -> CondensationResult:
        return condense(self.bulk, self.subgroup)

    @cached_property
    def residual(self) -> DiscriminantData:
        return discriminant_theory(self.residual_lattice)

    @cached_property
    def resolved_polarization(self) -> Polarization:
        if self.polarization is not None:
            return self.polarization
        return standard_polarization(self.residual.lattice)

    @cached_property
    def _inverse_identification(self) -> GroupHom:
        return self.identification.inverse()

    def to_dict(self) -> dict:
        return {
            "bulk": self.bulk.to_dict(),
            "subgroup": [list(g.coeffs) for g in self.subgroup.generators],
            "residual_gram": self.residual_lattice.matrix(),
            "identification": [list(x.coeffs) for x in self.identification.images],
            "polarization": None if self.polarization is None else self.polarization.to_dict(),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "BordismBoundaryData":
        try:
            bulk = AnyonTheory.from_dict(doc["bulk"])
            sub = subgroup_generate(bulk.group, doc.get("subgroup", []))
            lat = GramLattice(tuple(tuple(r) for r in doc["residual_gram"]))
            images = doc["identification"]
        except KeyError as exc:
            raise ValidationError(f"bordism document missing field {exc}") from exc
        target = condense(bulk, sub).condensed.group
        source = discriminant_theory(lat).group
        ident = GroupHom(source, target, tuple(target.element(x) for x in images))
        pol = doc.get("polarization")
        pol = None if pol is None else polarization_from_dict(
            discriminant_theory(lat).lattice, pol)
        return cls(bulk, sub, lat, ident, pol)


def bordism_data_validate(d: BordismBoundaryData) -> BordismBoundaryData:
    """Check isotropy, that the identification preserves q, and the polarization."""
    if d.subgroup.group != d.bulk.group:
        raise ValidationError("condensed subgroup does not live in the bulk group")
    if not is_isotropic(d.bulk, d.subgroup):
        raise NotIsotropic("condensed subgroup contains a non-boson")
    if not d.residual_lattice.even:
        raise ValidationError("residual lattice must be even")
    if not d.residual_lattice.nondegenerate:
        raise ValidationError("residual lattice must be nondegenerate")
    condensed = d.condensation.condensed
    disc = d.residual.theory
    phi = d.identification
    if phi.source != disc.group or phi.target != condensed.group:
        raise ValidationError(
            f"identification must map {disc.group} to {condensed.group}"
        )
    if not phi.is_isomorphism():
        raise ValidationError("identification is not a group isomorphism")
    for i, gi in enumerate(phi.images):
        if condensed.q(gi) != disc.q_gen[i]:
            raise ValidationError(
                f"identification sends a spin {disc.q_gen[i]} generator to spin {condensed.q(gi)}"
            )
        for j in range(i):
            if condensed.pairing(gi, phi.images[j]) != disc.l_gen[i][j]:
                raise ValidationError("identification does not preserve the braiding")
    if d.polarization is not None:
        if d.polarization.lattice != d.residual.lattice:
            raise ValidationError("polarization is defined on a different lattice")
    elif d.residual_lattice.rank:
        d.resolved_polarization  # definite lattices have a unique choice; others use eigenspaces
    return d


def composite_twisted_partition(
    d: BordismBoundaryData,
    a,
    tau: complex,
    params: ThetaParams = ThetaParams(),
    normalization: str = "weighted",
) -> PartitionValue:
    """``|A| delta_{a in Ann_A} Z_residual^{[a]}(tau)``.

    ``normalization="indicator"`` drops the ``|A|`` prefactor so that the
    purely gapped case is the plain indicator of ``A``.
    """
    if normalization not in NORMALIZATIONS:
        raise InvalidArgument(f"normalization must be one of {NORMALIZATIONS}")
    a = as_element(d.bulk.group, a)
    cond = d.condensation
    if a not in cond.annihilator:
        return PartitionValue(0j, 0.0, 0j, 0, 0.0)
    b = d._inverse_identification(cond.surviving_to_condensed(a))
    z = twisted_partition(d.resolved_polarization, d.residual, b, tau, params)
    scale = d.subgroup.order if normalization == "weighted" else 1
    return PartitionValue(z.value * scale, z.error * scale, z.theta, z.n_points, z.radius)


def composite_partition_function(d: BordismBoundaryData, params: ThetaParams = ThetaParams(),
                                 normalization: str = "weighted") -> Callable:
    bordism_data_validate(d)

    def z(a, tau):
        return composite_twisted_partition(d, a, tau, params, normalization).value

    return z


def identification_via_bulk(bulk: AnyonTheory, sub: Subgroup,
                            residual: DiscriminantData,
                            to_bulk: Callable[[GroupElement], GroupElement]) -> GroupHom:
    """Identification obtained by sending residual generators into ``Ann_A`` first."""
    cond = condense(bulk, sub)
    images = tuple(
        cond.surviving_to_condensed(to_bulk(residual.group.generator(t)))
        for t in range(residual.group.rank)
    )
    return GroupHom(residual.group, cond.condensed.group, images)


def gapped_boundary_data(theory: AnyonTheory, sub: Subgroup) -> BordismBoundaryData:
    """Pure condensation boundary: empty residual lattice."""
    lat = GramLattice(())
    cond = condense(theory, sub)
    ident = GroupHom(FinAbGroup(()), cond.condensed.group, ())
    return bordism_data_validate(BordismBoundaryData(theory, sub, lat, ident, None))


def narain_boundary_data(lattice: GramLattice, pol: Polarization | None = None) -> BordismBoundaryData:
    """Pure Narain boundary of the lattice's own discriminant theory (nothing condensed)."""
    disc = discriminant_theory(lattice)
    bulk = disc.theory
    sub = subgroup_generate(bulk.group, [])
    ident = identification_via_bulk(bulk, sub, disc, lambda g: g)
    return bordism_data_validate(
        BordismBoundaryData(bulk, sub, disc.lattice, ident, pol)
    )


# --------------------------------------------------------------------------
# folding


@dataclass(frozen=True, eq=False)
class DomainWall:
    """Wall from ``source`` to ``target`` presented as a boundary of ``source (x) conj(target)``."""

    source: AnyonTheory
    target: AnyonTheory
    folded_boundary: BordismBoundaryData
    coordinates: ProductCoordinates

    def split(self, x) -> tuple[GroupElement, GroupElement]:
        return self.coordinates.split(x)

    def join(self, a, b) -> GroupElement:
        return self.coordinates.join(a, b)

    def support(self) -> set[tuple[GroupElement, GroupElement]]:
        """Anyon pairs ``(a, b)`` allowed to end on the folded boundary (``Ann_A``)."""
        return {self.split(x) for x in self.folded_boundary.condensation.annihilator}

    def is_transparent(self) -> bool:
        if self.source.group != self.target.group:
            return False
        diag = {(a, a) for a in self.source.group.elements()}
        return self.support() == diag and self.folded_boundary.residual_lattice.rank == 0


def fold(source: AnyonTheory, target: AnyonTheory, boundary: BordismBoundaryData) -> DomainWall:
    coords = deligne_coordinates(source, conjugate(target))
    if boundary.bulk != coords.product:
        raise InvalidArgument("boundary bulk is not source (x) conjugate(target)")
    bordism_data_validate(boundary)
    return DomainWall(source, target, boundary, coords)


def folded_coordinates(source: AnyonTheory, target: AnyonTheory) -> ProductCoordinates:
    return deligne_coordinates(source, conjugate(target))


def diagonal_subgroup(source: AnyonTheory) -> tuple[ProductCoordinates, Subgroup]:
    """``{(a, a)}`` inside ``source (x) conj(source)``; Lagrangian because q - q = 0."""
    coords = folded_coordinates(source, source)
    gens = [coords.join(g, g) for g in (source.group.generator(i) for i in range(source.group.rank))]
    return coords, subgroup_generate(coords.product.group, gens)
