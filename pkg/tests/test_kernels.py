import importlib

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinlink import _pykernels, kernels
from spinlink.lattice import GramLattice
from spinlink.narain import Polarization, standard_polarization

from conftest import even_lattices

try:
    from spinlink import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def test_backend_selection(monkeypatch):
    monkeypatch.setenv("SPINLINK_PURE_PYTHON", "1")
    try:
        mod = importlib.reload(kernels)
        assert mod.BACKEND == "python"
        assert mod.theta_coset is _pykernels.theta_coset
    finally:
        monkeypatch.delenv("SPINLINK_PURE_PYTHON")
        importlib.reload(kernels)
    assert kernels.BACKEND == ("cython" if _ckernels is not None else "python")


@needs_ext
@given(st.lists(st.sampled_from([2, 3, 4, 6]), max_size=3), st.data())
def test_q_table_agrees(orders, data):
    orders = sorted(orders)
    k = len(orders)
    modulus = 48
    qnum = data.draw(st.lists(st.integers(0, modulus - 1), min_size=k, max_size=k))
    lnum = [[data.draw(st.integers(0, modulus - 1)) for _ in range(k)] for _ in range(k)]
    a = _pykernels.q_table(orders, qnum, lnum, modulus)
    b = _ckernels.q_table(orders, qnum, lnum, modulus)
    assert np.array_equal(a, b)


def _args(pol):
    return pol.chol.tolist(), pol.hmat.tolist(), pol.gram.tolist()


@needs_ext
@given(even_lattices(max_rank=4, max_disc=50), st.data())
def test_enumeration_agrees(lat, data):
    pol = standard_polarization(lat)
    chol, hmat, kmat = _args(pol)
    center = data.draw(st.lists(st.floats(-1, 1), min_size=lat.rank, max_size=lat.rank))
    radius = data.draw(st.floats(0.5, 12))
    pa = sorted(map(tuple, np.asarray(_pykernels.coset_points(chol, hmat, center, radius)).tolist()))
    pb = sorted(map(tuple, np.asarray(_ckernels.coset_points(chol, hmat, center, radius)).tolist()))
    assert pa == pb
    ra, ia, na = _pykernels.theta_coset(chol, hmat, kmat, center, radius, 0.1, 1.2)
    rb, ib, nb = _ckernels.theta_coset(chol, hmat, kmat, center, radius, 0.1, 1.2)
    assert na == nb == len(pa)
    assert abs(complex(ra, ia) - complex(rb, ib)) < 1e-12


def test_enumeration_is_complete():
    lat = GramLattice(((2, 1, 0), (1, 2, 1), (0, 1, 2)))
    pol = Polarization(lat, np.eye(3))
    chol, hmat, _ = _args(pol)
    got = {tuple(u) for u in np.asarray(kernels.coset_points(chol, hmat, [0.0] * 3, 8.0)).tolist()}
    g = np.array(lat.gram)
    rng = range(-4, 5)
    brute = {(a, b, c) for a in rng for b in rng for c in rng
             if np.array([a, b, c]) @ g @ np.array([a, b, c]) <= 8}
    assert got == brute


def test_rank_zero():
    out = kernels.theta_coset([], [], [], [], 1.0, 0.0, 1.0)
    assert out[2] == 1 and complex(out[0], out[1]) == 1
