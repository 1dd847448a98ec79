import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinlink.errors import InvalidArgument
from spinlink.kirby import lens_diagram, to_gram
from spinlink.lattice import GramLattice, discriminant_theory, hyperbolic
from spinlink.narain import (
    Polarization,
    ThetaParams,
    coset_points,
    eta,
    gapped_partition_function,
    hk_norms,
    hyperbolic_polarization,
    modular_covariance_check,
    narain_boundary,
    parse_tau,
    partition_function,
    polarization_from_dict,
    standard_polarization,
    tail_bound,
    theta_sum,
    twisted_partition,
)
from spinlink.condense import gapped_boundary_vector, lagrangians
from spinlink.toporder import toric_code

ETA_I = math.gamma(0.25) / (2 * math.pi ** 0.75)


def eta_pentagonal(tau, terms=40):
    """Euler's pentagonal series, independent of the product formula."""
    q = cmath.exp(2j * math.pi * tau)
    s = sum((-1) ** k * q ** (k * (3 * k - 1) / 2) for k in range(-terms, terms + 1))
    return cmath.exp(1j * math.pi * tau / 12) * s


def compact_boson(r, tau, cutoff=40):
    """Momentum/winding sum ``sum q^{pL^2/2} qbar^{pR^2/2} / |eta|^2``."""
    q = cmath.exp(2j * math.pi * tau)
    total = 0j
    for n in range(-cutoff, cutoff + 1):
        for w in range(-cutoff, cutoff + 1):
            pl = (math.sqrt(r) * n + w / math.sqrt(r)) / math.sqrt(2)
            pr = (math.sqrt(r) * n - w / math.sqrt(r)) / math.sqrt(2)
            total += q ** (pl * pl / 2) * q.conjugate() ** (pr * pr / 2)
    return total / abs(eta_pentagonal(tau)) ** 2


def test_eta_values():
    assert abs(eta(1j) - ETA_I) < 1e-14
    tau = 0.3 + 0.8j
    assert abs(eta(tau) - eta_pentagonal(tau)) < 1e-12
    assert abs(eta(-1 / tau) - cmath.sqrt(-1j * tau) * eta(tau)) < 1e-12
    assert abs(eta(tau + 1) - cmath.exp(1j * math.pi / 12) * eta(tau)) < 1e-12


def test_parse_tau():
    assert parse_tau("0.1+1.2i") == complex(0.1, 1.2)
    assert parse_tau("0+1i") == 1j
    with pytest.raises(InvalidArgument):
        parse_tau("1-1i")
    with pytest.raises(InvalidArgument):
        parse_tau("tau")


def test_split_norms_on_hyperbolic():
    pol = hyperbolic_polarization(1.3)
    k, h = hk_norms(pol, (2, 3))
    assert k == pytest.approx(2 * 2 * 3)
    assert h == pytest.approx(1.3 * 4 + 9 / 1.3)


@pytest.mark.parametrize("r", [1.0, 1.3, 2.7])
@pytest.mark.parametrize("tau", [1j, 0.2 + 0.9j])
def test_compact_boson_oracle(r, tau):
    disc, pol, _ = narain_boundary(hyperbolic(), hyperbolic_polarization(r))
    z = twisted_partition(pol, disc, (), tau)
    assert abs(z.value - compact_boson(r, tau)) < 1e-9
    assert z.error < 1e-9


def test_t_duality():
    disc = discriminant_theory(hyperbolic())
    for r in (1.3, 0.45):
        a = twisted_partition(hyperbolic_polarization(r), disc, (), 1j).value
        b = twisted_partition(hyperbolic_polarization(1 / r), disc, (), 1j).value
        assert abs(a - b) < 1e-12


@pytest.mark.parametrize("n", [2, 4, 6])
def test_lens_covariance(n):
    lat = to_gram(lens_diagram(n))
    disc, pol, z = narain_boundary(lat)
    report = modular_covariance_check(disc.theory, z, pol.signature, 0.1 + 1.2j, 1e-9)
    assert report.passed, report


@pytest.mark.parametrize("gram", [
    ((0, 2), (2, 0)),
    ((2, 1), (1, -2)),
    ((2, 1, 0), (1, 2, 1), (0, 1, -4)),
    ((-2,),),
])
def test_indefinite_covariance(gram):
    lat = GramLattice(gram)
    disc, pol, z = narain_boundary(lat)
    report = modular_covariance_check(disc.theory, z, pol.signature, 0.15 + 1.1j, 1e-8)
    assert report.passed, report


def test_covariance_fails_without_central_charge_phase():
    lat = to_gram(lens_diagram(2))
    disc, pol, z = narain_boundary(lat)
    report = modular_covariance_check(disc.theory, z, (0, 0), 0.1 + 1.2j, 1e-6)
    assert not report.passed and report.t_residual > 0.1


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_theta_depends_only_on_class(shift):
    lat = GramLattice(((2, 1), (1, -2)))
    disc, pol, _ = narain_boundary(lat)
    for a in disc.theory.anyons():
        w = disc.lift(a)
        moved = [x + s for x, s in zip(w, shift)]
        t1, n1 = theta_sum(pol, w, 0.1 + 1.2j, 30.0)
        t2, n2 = theta_sum(pol, moved, 0.1 + 1.2j, 30.0)
        assert n1 == n2 and abs(t1 - t2) < 1e-12


def test_coset_points_are_exact_and_complete():
    pol = standard_polarization(GramLattice(((2, 1), (1, 2))))
    pts = coset_points(pol, (0, 0), 6.0)
    brute = [(x, y) for x in range(-5, 6) for y in range(-5, 6) if 2 * x * x + 2 * x * y + 2 * y * y <= 6]
    assert sorted(pts) == sorted(brute)


def test_tail_bound_decreases():
    pol = hyperbolic_polarization(1.3)
    assert tail_bound(pol, 1.0, 10) > tail_bound(pol, 1.0, 20) > tail_bound(pol, 1.0, 40)


def test_explicit_radius_and_error():
    disc, pol, _ = narain_boundary(hyperbolic(), hyperbolic_polarization(1.3))
    coarse = twisted_partition(pol, disc, (), 1j, ThetaParams(radius=2.0))
    fine = twisted_partition(pol, disc, (), 1j, ThetaParams(radius=40.0))
    assert abs(coarse.value - fine.value) <= coarse.error
    assert coarse.n_points < fine.n_points


def test_polarization_validation():
    lat = hyperbolic()
    with pytest.raises(InvalidArgument):
        Polarization(lat, np.array([[1.0], [-1.0]]))
    with pytest.raises(InvalidArgument):
        Polarization(lat, np.eye(2))
    pol = polarization_from_dict(lat, {"pos_basis": [[1.0, 2.0]]})
    assert polarization_from_dict(lat, pol.to_dict()).pos_basis.tolist() == pol.pos_basis.tolist()


def test_definite_lattices_have_no_choice():
    neg = standard_polarization(GramLattice(((-2,),)))
    assert neg.signature == (0, 1)
    pos = standard_polarization(GramLattice(((2, 1), (1, 2))))
    assert pos.signature == (2, 0)


def test_gapped_indicators_are_exactly_covariant():
    t = toric_code()
    for sub in lagrangians(t):
        z = gapped_partition_function(gapped_boundary_vector(t, sub))
        report = modular_covariance_check(t, z)
        assert report.t_residual == 0 and report.s_residual == 0


def test_fermion_indicator_fails_on_t():
    t = toric_code()
    vec = {a: int(a.coeffs in ((0, 0), (1, 1))) for a in t.anyons()}
    report = modular_covariance_check(t, gapped_partition_function(vec))
    assert not report.passed
    assert report.t_residual == 2.0
