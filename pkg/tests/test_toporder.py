import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinlink.abelian import FinAbGroup, RationalMod1, qz_make
from spinlink.errors import DegenerateForm, InvalidForm
from spinlink.kirby import lens_diagram, to_gram
from spinlink.lattice import congruent_transform, discriminant_theory, signature, stabilize_hyperbolic
from spinlink.toporder import (
    AnyonTheory,
    conjugate,
    cyclic_theory,
    deligne_coordinates,
    deligne_product,
    equivalent_small,
    gauss_milgram,
    kernel_size,
    modular_data,
    central_charge_mod8,
    theory_new,
    toric_code,
    trivial_theory,
)

from conftest import even_lattices


def theory_of(lat):
    return discriminant_theory(lat).theory


@given(even_lattices(), st.data())
def test_quadratic_refinement(lat, data):
    t = theory_of(lat)
    elems = list(t.anyons())
    a = data.draw(st.sampled_from(elems))
    b = data.draw(st.sampled_from(elems))
    n = data.draw(st.integers(-5, 5))
    assert t.q(a + b) - t.q(a) - t.q(b) == t.pairing(a, b)
    assert t.pairing(a, b) == t.pairing(b, a)
    assert t.q(a * n) == t.q(a) * (n * n)
    assert t.q(-a) == t.q(a)


@given(even_lattices())
def test_discriminant_forms_are_nondegenerate(lat):
    t = theory_of(lat)
    assert t.nondegenerate
    assert kernel_size(t) == 1
    assert t.size == abs(lat.det)


@given(even_lattices(max_rank=4, max_disc=100))
def test_gauss_milgram_matches_signature(lat):
    p, m, _ = signature(lat)
    assert abs(gauss_milgram(theory_of(lat)) - cmath.exp(2j * math.pi * (p - m) / 8)) < 1e-9
    assert central_charge_mod8(theory_of(lat)) == (p - m) % 8


@given(even_lattices(max_disc=40))
def test_modular_relations(lat):
    md = modular_data(theory_of(lat))
    s = md.s_normalized.conj()
    t = np.diag(md.t_vector)
    n = len(md.t_vector)
    assert np.allclose(s @ s.conj().T, np.eye(n))
    s2 = s @ s
    assert np.allclose(s2 @ s2, np.eye(n))
    theta = cmath.exp(2j * math.pi * float(md.central_charge_phase.as_fraction()))
    assert np.allclose(np.linalg.matrix_power(s @ t, 3), theta * s2)


def test_toric_code_data():
    t = toric_code()
    assert sorted(str(s) for s in t.spins()) == ["0/1", "0/1", "0/1", "1/2"]
    assert t.pairing((1, 0), (0, 1)) == RationalMod1(1, 2)
    md = modular_data(t)
    assert md.sigma_mod8 == 0
    assert np.allclose(md.s_matrix, [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]])


def test_validation_rejects_bad_forms():
    g = FinAbGroup((2,))
    with pytest.raises(InvalidForm):
        theory_new(g, [qz_make(1, 3)])
    with pytest.raises(InvalidForm):
        theory_new(FinAbGroup((2, 2)), [0, 0], [[None, qz_make(1, 2)], [qz_make(1, 4), None]])
    with pytest.raises(InvalidForm):
        theory_new(FinAbGroup((2, 2)), [0, 0], [[None, qz_make(1, 4)], [qz_make(1, 4), None]])


def test_degenerate_theory():
    t = theory_new(FinAbGroup((2,)), [0])
    assert not t.nondegenerate
    assert kernel_size(t) == 2
    with pytest.raises(DegenerateForm):
        modular_data(t)


@given(even_lattices())
def test_json_round_trip(lat):
    t = theory_of(lat)
    assert AnyonTheory.from_json(t.to_json()) == t


@given(even_lattices(max_rank=3, max_disc=30), st.data())
def test_equivalence_under_basis_change(lat, data):
    n = lat.rank
    i, j = data.draw(st.permutations(range(n)))[:2] if n > 1 else (0, 0)
    p = [[int(r == c) for c in range(n)] for r in range(n)]
    if i != j:
        p[i][j] = data.draw(st.sampled_from([-2, -1, 1, 2]))
    moved = congruent_transform(lat, p)
    ok, iso = equivalent_small(theory_of(lat), theory_of(moved))
    assert ok and iso.is_isomorphism()
    assert equivalent_small(theory_of(lat), theory_of(stabilize_hyperbolic(lat)))[0]


def test_equivalence_witness_preserves_q():
    # 3^2 = 9 mod 16, so a -> 3a carries a^2/16 to 9a^2/16
    t1 = theory_of(to_gram(lens_diagram(8)))
    t2 = cyclic_theory(8, 9)
    ok, iso = equivalent_small(t1, t2)
    assert ok
    for a in t1.anyons():
        assert t2.q(iso(a)) == t1.q(a)


def test_inequivalent_theories():
    double_semion = deligne_product(cyclic_theory(2, 1), cyclic_theory(2, -1))
    assert double_semion.size == 4
    assert not equivalent_small(toric_code(), double_semion)[0]
    assert not equivalent_small(cyclic_theory(4, 1), cyclic_theory(4, 3))[0]
    assert not equivalent_small(toric_code(), cyclic_theory(4, 1))[0]


def test_trivial_theory():
    t = trivial_theory()
    assert t.size == 1 and t.nondegenerate
    assert gauss_milgram(t) == 1


def test_deligne_product_coordinates():
    t1, t2 = cyclic_theory(2, 1), toric_code()
    coords = deligne_coordinates(t1, t2)
    prod = coords.product
    assert prod.size == 8
    for a in t1.anyons():
        for b in t2.anyons():
            x = coords.join(a, b)
            assert coords.split(x) == (a, b)
            assert prod.q(x) == t1.q(a) + t2.q(b)


def test_conjugate_flips_central_charge():
    t = cyclic_theory(2, 1)
    assert central_charge_mod8(t) == 1
    assert central_charge_mod8(conjugate(t)) == 7
    assert equivalent_small(deligne_product(t, conjugate(t)), deligne_product(t, conjugate(t)))[0]
