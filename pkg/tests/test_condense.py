import pytest
from hypothesis import given, strategies as st

from spinlink.abelian import subgroup_generate
from spinlink.condense import (
    annihilator,
    bosons,
    condense,
    gapped_boundary_vector,
    is_isotropic,
    is_lagrangian,
    isotropic_subgroups,
    lagrangians,
    wall_surgery,
    wall_surgery_sequence,
)
from spinlink.errors import DegenerateForm, NotABoson, NotIsotropic, NotLagrangian, OddLattice, TorsionLiftError
from spinlink.kirby import to_gram, zn_gauge_diagram
from spinlink.lattice import GramLattice, block_sum, discriminant_theory
from spinlink.oracles import condensation_algebra, run_surgery_suite, surgery_vs_condense
from spinlink.toporder import central_charge_mod8, cyclic_theory, deligne_product, equivalent_small, toric_code

from conftest import even_lattices


def test_toric_bosons_and_lagrangians():
    t = toric_code()
    assert [b.coeffs for b in bosons(t)] == [(0, 0), (0, 1), (1, 0)]
    subs = lagrangians(t)
    assert sorted(tuple(m.coeffs for m in s.members) for s in subs) == [
        ((0, 0), (0, 1)), ((0, 0), (1, 0))]
    assert all(is_lagrangian(t, s) for s in subs)


def test_electric_condensation_is_trivial():
    res = condense(toric_code(), subgroup_generate(toric_code().group, [(1, 0)]))
    assert res.condensed.size == 1
    assert res.wall_anyons.cardinality == 2
    assert res.annihilator.order == 2


def test_fermion_cannot_condense():
    t = toric_code()
    f = subgroup_generate(t.group, [(1, 1)])
    assert not is_isotropic(t, f)
    with pytest.raises(NotIsotropic):
        condense(t, f)
    with pytest.raises(NotLagrangian):
        gapped_boundary_vector(t, f)


def test_z4_gauge_census():
    disc = discriminant_theory(to_gram(zn_gauge_diagram(4)))
    t = disc.theory
    assert len(isotropic_subgroups(t)) == 7
    assert len(lagrangians(t)) == 3
    # condensing the order-2 charge leaves the toric code
    charge = disc.class_of_meridian((0, 2))
    res = condense(t, subgroup_generate(t.group, [charge]))
    assert equivalent_small(res.condensed, toric_code())[0]


def test_no_lagrangians_for_non_square():
    assert lagrangians(cyclic_theory(2, 1)) == []
    assert lagrangians(cyclic_theory(6, 1)) == []


def test_boundary_vector():
    t = toric_code()
    e = subgroup_generate(t.group, [(1, 0)])
    vec = gapped_boundary_vector(t, e)
    assert sorted(vec.values()) == [0, 0, 1, 1]
    assert vec[t.group.element((1, 0))] == 1


@given(even_lattices(max_rank=3, max_disc=64))
def test_annihilator_order(lat):
    t = discriminant_theory(lat).theory
    for a in isotropic_subgroups(t):
        ann = annihilator(t, a)
        assert ann.order * a.order == t.size
        assert a.issubset(ann)


@given(even_lattices(max_rank=3, max_disc=64))
def test_condensation_preserves_central_charge(lat):
    t = discriminant_theory(lat).theory
    for a in isotropic_subgroups(t):
        res = condense(t, a)
        assert res.condensed.nondegenerate
        assert res.condensed.size * a.order**2 == t.size
        assert central_charge_mod8(res.condensed) == central_charge_mod8(t)


@given(even_lattices(max_rank=3, max_disc=64))
def test_stepwise_condensation(lat):
    report = condensation_algebra(discriminant_theory(lat).theory)
    assert report.order_failures == 0 and report.composition_failures == 0


def test_toric_wall_surgery(toric_lattice):
    out = wall_surgery(toric_lattice, (0, 1))
    assert out.matrix() == [[0, 2, 0], [2, 0, 1], [0, 1, 0]]
    assert discriminant_theory(out).theory.size == 1


def test_surgery_rejections(toric_lattice):
    with pytest.raises(TorsionLiftError):
        wall_surgery(GramLattice(((4,),)), (1,))
    with pytest.raises(NotABoson):
        wall_surgery(GramLattice(((4,),)), (2,))
    with pytest.raises(OddLattice):
        wall_surgery(GramLattice(((1,),)), (1,))
    with pytest.raises(DegenerateForm):
        wall_surgery(GramLattice(((0,),)), (1,))
    assert issubclass(TorsionLiftError, NotABoson)


@given(even_lattices(max_rank=4, max_disc=200))
def test_surgery_matches_condensation(lat):
    assert all(case.agrees for case in surgery_vs_condense(lat))


def test_surgery_sequence_on_double_toric(toric_lattice):
    lat = block_sum(toric_lattice, toric_lattice)
    out = wall_surgery_sequence(lat, [(0, 1, 0, 0), (0, 0, 1, 0)])
    assert discriminant_theory(out).theory.size == 1
    half = wall_surgery_sequence(lat, [(0, 1, 0, 0)])
    assert equivalent_small(discriminant_theory(half).theory, toric_code())[0]


def test_surgery_sequence_matches_join():
    lat = to_gram(zn_gauge_diagram(4))
    t = discriminant_theory(lat).theory
    out = wall_surgery_sequence(lat, [(0, 2)])
    assert equivalent_small(discriminant_theory(out).theory, toric_code())[0]
    assert discriminant_theory(wall_surgery_sequence(lat, [(0, 2), (2, 0)])).theory.size == 1


def test_non_commuting_meridians_rejected():
    lat = to_gram(zn_gauge_diagram(4))
    with pytest.raises((NotIsotropic, NotABoson)):
        wall_surgery_sequence(lat, [(0, 2), (1, 0)])


@pytest.mark.slow
def test_surgery_suite_randomized():
    checked, failures = run_surgery_suite(100, seed=11)
    assert checked > 100 and failures == 0
