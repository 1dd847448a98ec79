"""Abelian topological order from even Kirby diagrams, condensation and Narain boundaries."""
from .abelian import FinAbGroup, GroupElement, RationalMod1, Subgroup, subgroup_generate
from .boundary import BordismBoundaryData, composite_twisted_partition, fold
from .condense import annihilator, bosons, condense, lagrangians, wall_surgery
from .errors import SpinlinkError
from .kirby import KirbyDiagram, lens_diagram, parse, serialize, toric_diagram, zn_gauge_diagram
from .lattice import GramLattice, discriminant_theory
from .narain import Polarization, ThetaParams, modular_covariance_check, twisted_partition
from .toporder import AnyonTheory, central_charge_phase, gauss_milgram, modular_data, toric_code

__version__ = "0.1.0"

__all__ = [
    "AnyonTheory", "BordismBoundaryData", "FinAbGroup", "GramLattice", "GroupElement",
    "KirbyDiagram", "Polarization", "RationalMod1", "SpinlinkError", "Subgroup", "ThetaParams",
    "annihilator", "bosons", "central_charge_phase", "composite_twisted_partition", "condense",
    "discriminant_theory", "fold", "gauss_milgram", "lagrangians", "lens_diagram",
    "modular_covariance_check", "modular_data", "parse", "serialize", "subgroup_generate",
    "toric_code", "toric_diagram", "twisted_partition", "wall_surgery", "zn_gauge_diagram",
]
