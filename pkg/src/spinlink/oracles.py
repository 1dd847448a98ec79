"""Random instances and cross-checks shared by the CLI and the test-suite."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .abelian import subgroup_generate
from .condense import bosons, condense, wall_surgery
from .lattice import GramLattice, discriminant_theory
from .toporder import equivalent_small


def random_even_lattice(rng: random.Random, rank: int, bound: int,
                        max_disc: int | None = None, max_tries: int = 10_000) -> GramLattice:
    """Even nondegenerate symmetric matrix with entries in ``[-bound, bound]``."""
    for _ in range(max_tries):
        g = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            g[i][i] = 2 * rng.randint(-(bound // 2), bound // 2)
            for j in range(i + 1, rank):
                g[i][j] = g[j][i] = rng.randint(-bound, bound)
        lat = GramLattice(tuple(tuple(r) for r in g))
        d = lat.det
        if d != 0 and (max_disc is None or abs(d) <= max_disc):
            return lat
    raise RuntimeError("no admissible lattice found")


@dataclass
class SurgeryCase:
    lattice: GramLattice
    meridian: list[int]
    agrees: bool


def surgery_vs_condense(lat: GramLattice) -> list[SurgeryCase]:
    """Compare Wall surgery with algebraic condensation for every boson of ``lat``."""
    disc = discriminant_theory(lat)
    theory = disc.theory
    out = []
    for b in bosons(theory):
        c = [int(x) for x in _meridian_of(disc, b)]
        surgered = discriminant_theory(wall_surgery(lat, c)).theory
        expected = condense(theory, subgroup_generate(theory.group, [b])).condensed
        out.append(SurgeryCase(lat, c, equivalent_small(surgered, expected)[0]))
    return out


def _meridian_of(disc, a):
    """Integer meridian coordinates ``G w`` of the standard lift of ``a``."""
    from . import intmat

    return intmat.matvec(disc.lattice.gram, disc.lift(a))


def run_surgery_suite(cases: int, seed: int, max_rank: int = 4, bound: int = 6,
                      max_disc: int = 200) -> tuple[int, int]:
    """``(checked, failures)`` over random lattices."""
    rng = random.Random(seed)
    checked = failures = 0
    for _ in range(cases):
        lat = random_even_lattice(rng, rng.randint(1, max_rank), bound, max_disc)
        for case in surgery_vs_condense(lat):
            checked += 1
            failures += not case.agrees
    return checked, failures


@dataclass
class AlgebraReport:
    isotropic: int = 0
    order_failures: int = 0
    pairs: int = 0
    composition_failures: int = 0


def condensation_algebra(theory, report: AlgebraReport | None = None) -> AlgebraReport:
    """``|Ann_A||A| = |D|`` for every isotropic A, and stepwise condensation of A then B/A."""
    from .condense import annihilator, isotropic_subgroups

    report = report or AlgebraReport()
    subs = isotropic_subgroups(theory)
    for a in subs:
        report.isotropic += 1
        report.order_failures += annihilator(theory, a).order * a.order != theory.size
        first = condense(theory, a)
        cmap = first.surviving_to_condensed
        for b in subs:
            if b is a or not a.issubset(b):
                continue
            report.pairs += 1
            image = subgroup_generate(first.condensed.group, [cmap(x) for x in b.generators])
            twice = condense(first.condensed, image).condensed
            direct = condense(theory, b).condensed
            report.composition_failures += not equivalent_small(twice, direct)[0]
    return report


def run_algebra_suite(cases: int, seed: int, max_rank: int = 4, bound: int = 6,
                      max_disc: int = 64) -> AlgebraReport:
    rng = random.Random(seed)
    report = AlgebraReport()
    for _ in range(cases):
        lat = random_even_lattice(rng, rng.randint(1, max_rank), bound, max_disc)
        condensation_algebra(discriminant_theory(lat).theory, report)
    return report
