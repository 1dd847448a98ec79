"""Narain boundary data: polarizations, split norms, eta, theta sums.

The lattice sums use the convergent weight ``exp(-pi y H(v) + pi i x K(v))``
at ``tau = x + i y``, i.e. ``q^{|v+|^2/2} qbar^{|v-|^2/2}``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, special

from . import kernels
from .abelian import as_element, root_of_unity
from .errors import DegenerateForm, InvalidArgument
from .lattice import DiscriminantData, GramLattice, discriminant_theory, hyperbolic, signature
from .toporder import AnyonTheory


def _check_tau(tau: complex) -> complex:
    tau = complex(tau)
    if not tau.imag > 0:
        raise InvalidArgument(f"tau = {tau} is not in the upper half-plane")
    return tau


def parse_tau(text: str) -> complex:
    """Parse ``"x+yi"`` (also accepts ``j``)."""
    try:
        return _check_tau(complex(text.strip().replace(" ", "").replace("i", "j")))
    except ValueError as exc:
        raise InvalidArgument(f"cannot parse tau {text!r}") from exc


@dataclass(frozen=True, eq=False)
class Polarization:
    """Positive-definite subspace of ``Lambda (x) R`` spanned by the columns of ``pos_basis``."""

    lattice: GramLattice
    pos_basis: np.ndarray

    def __post_init__(self):
        if not self.lattice.nondegenerate:
            raise DegenerateForm("polarizations need a nondegenerate lattice")
        n = self.lattice.rank
        p, _, _ = signature(self.lattice)
        b = np.asarray(self.pos_basis, dtype=float)
        b = b.reshape(n, -1) if b.size else np.zeros((n, 0))
        object.__setattr__(self, "pos_basis", b)
        if b.shape[1] != p:
            raise InvalidArgument(f"need {p} positive directions, got {b.shape[1]}")
        if p:
            try:
                np.linalg.cholesky(b.T @ self.gram @ b)
            except np.linalg.LinAlgError:
                raise InvalidArgument("pos_basis does not span a positive-definite subspace") from None

    @cached_property
    def gram(self) -> np.ndarray:
        return np.array(self.lattice.gram, dtype=float).reshape(self.lattice.rank, self.lattice.rank)

    @cached_property
    def signature(self) -> tuple[int, int]:
        p, m, _ = signature(self.lattice)
        return p, m

    @cached_property
    def projector(self) -> np.ndarray:
        """``P`` with ``v+ = P v`` (G-orthogonal projection)."""
        b = self.pos_basis
        n = self.lattice.rank
        if b.shape[1] == 0:
            return np.zeros((n, n))
        g = self.gram
        return b @ np.linalg.solve(b.T @ g @ b, b.T @ g)

    @cached_property
    def hmat(self) -> np.ndarray:
        """Matrix of the positive-definite norm ``H(v) = |v+|^2 + |v-|^2``."""
        p = self.projector
        h = 2 * p.T @ self.gram @ p - self.gram
        return (h + h.T) / 2

    @cached_property
    def chol(self) -> np.ndarray:
        n = self.lattice.rank
        if n == 0:
            return np.zeros((0, 0))
        return np.linalg.cholesky(self.hmat).T

    def to_dict(self) -> dict:
        return {"pos_basis": self.pos_basis.T.tolist()}


def polarization_from_dict(lattice: GramLattice, doc: dict) -> Polarization:
    """``{"pos_basis": [[...], ...]}`` lists the spanning vectors, one per entry."""
    vecs = np.asarray(doc.get("pos_basis", []), dtype=float)
    n = lattice.rank
    return Polarization(lattice, vecs.reshape(-1, n).T if vecs.size else np.zeros((n, 0)))


def standard_polarization(lattice: GramLattice) -> Polarization:
    """Positive eigenspace of the Gram matrix; the unique choice for definite forms."""
    n = lattice.rank
    g = np.array(lattice.gram, dtype=float).reshape(n, n)
    p, m, _ = signature(lattice)
    if m == 0:
        return Polarization(lattice, np.eye(n))
    if p == 0:
        return Polarization(lattice, np.zeros((n, 0)))
    vals, vecs = np.linalg.eigh(g)
    return Polarization(lattice, vecs[:, vals > 0])


def hodge_polarization_s2xs2(r1: float, r2: float) -> Polarization:
    """Hyperbolic lattice polarized by ``R(a + (r1/r2) b)``."""
    if not (r1 > 0 and r2 > 0):
        raise InvalidArgument("radii must be positive")
    return Polarization(hyperbolic(), np.array([[1.0], [r1 / r2]]))


def hyperbolic_polarization(r: float) -> Polarization:
    return hodge_polarization_s2xs2(r, 1.0)


def hk_norms(pol: Polarization, v: Sequence) -> tuple[float, float]:
    """``(K(v), H(v))`` with ``K = |v+|^2 - |v-|^2`` and ``H = |v+|^2 + |v-|^2``."""
    v = np.array([float(x) for x in v])
    vp = pol.projector @ v
    vm = v - vp
    g = pol.gram
    plus = float(vp @ g @ vp)
    minus = -float(vm @ g @ vm)
    return plus - minus, plus + minus


# --------------------------------------------------------------------------
# eta


def eta(tau: complex, n_terms: int = 100) -> complex:
    """Dedekind eta from the truncated product ``e^{pi i tau/12} prod (1 - q^n)``."""
    tau = _check_tau(tau)
    if n_terms < 1:
        raise InvalidArgument("n_terms must be at least 1")
    q = cmath.exp(2j * math.pi * tau)
    out = cmath.exp(1j * math.pi * tau / 12)
    qn = 1.0 + 0j
    for _ in range(n_terms):
        qn *= q
        out *= 1 - qn
    return out


def eta_error(tau: complex, n_terms: int = 100) -> float:
    """Magnitude of the first omitted factor's correction, times ``|eta|``."""
    tau = _check_tau(tau)
    aq = math.exp(-2 * math.pi * tau.imag)
    return abs(eta(tau, n_terms)) * aq ** (n_terms + 1) / (1 - aq)


# --------------------------------------------------------------------------
# theta sums


@dataclass(frozen=True)
class ThetaParams:
    """Truncation control: explicit ``radius`` (H-norm bound) or adaptive from ``tol``."""

    radius: float | None = None
    eta_terms: int = 100
    tol: float = 1e-12

    def __post_init__(self):
        if self.radius is not None and not self.radius > 0:
            raise InvalidArgument("radius must be positive")
        if self.eta_terms < 1:
            raise InvalidArgument("eta_terms must be at least 1")


def _count_bound(pol: Polarization) -> Callable[[float], float]:
    """Upper bound on ``#{v in coset : H(v) <= t}`` by a volume argument."""
    n = pol.lattice.rank
    h = pol.hmat
    rho = 0.5 * float(np.sum(np.sqrt(np.diag(h))))
    covol = math.sqrt(float(np.linalg.det(h)))
    ball = math.pi ** (n / 2) / special.gamma(n / 2 + 1)
    return lambda t: ball * (math.sqrt(max(t, 0.0)) + rho) ** n / covol


def tail_bound(pol: Polarization, y: float, radius: float) -> float:
    """Bound on ``sum_{H(v) > radius} exp(-pi y H(v))`` over any coset."""
    if pol.lattice.rank == 0:
        return 0.0
    count = _count_bound(pol)
    val, _ = integrate.quad(
        lambda t: math.pi * y * math.exp(-math.pi * y * t) * count(t), radius, math.inf,
        limit=200,
    )
    return val


def adaptive_radius(pol: Polarization, y: float, tol: float) -> float:
    r = 1.0
    while tail_bound(pol, y, r) > tol / 10:
        r *= 1.5
    return r


def coset_points(pol: Polarization, coset_rep: Sequence, radius: float) -> list[tuple]:
    """All ``v = u + w`` (``u`` integral) with ``H(v) <= radius``, exact rationals."""
    if radius < 0:
        raise InvalidArgument("radius must be nonnegative")
    w = [Fraction(x) for x in coset_rep]
    n = pol.lattice.rank
    if len(w) != n:
        raise InvalidArgument(f"coset representative must have length {n}")
    offs = kernels.coset_points(pol.chol.tolist(), pol.hmat.tolist(), [float(x) for x in w], float(radius))
    return [tuple(int(u[i]) + w[i] for i in range(n)) for u in offs]


@dataclass(frozen=True)
class PartitionValue:
    value: complex
    error: float
    theta: complex
    n_points: int
    radius: float

    def __complex__(self):
        return self.value


def theta_sum(pol: Polarization, coset_rep: Sequence, tau: complex, radius: float):
    """``(Theta, n_points)`` truncated at ``H(v) <= radius``."""
    tau = _check_tau(tau)
    n = pol.lattice.rank
    re, im, count = kernels.theta_coset(
        pol.chol.tolist(), pol.hmat.tolist(), pol.gram.tolist(),
        [float(Fraction(x)) for x in coset_rep], float(radius), tau.real, tau.imag,
    )
    return complex(re, im), int(count)


def twisted_partition(
    pol: Polarization,
    disc: DiscriminantData,
    a,
    tau: complex,
    params: ThetaParams = ThetaParams(),
) -> PartitionValue:
    """``Z^a(tau) = Theta^a / (eta^p conj(eta)^m)`` for the coset of anyon ``a``."""
    tau = _check_tau(tau)
    if disc.lattice != pol.lattice:
        raise InvalidArgument("polarization and discriminant data use different lattices")
    a = as_element(disc.group, a)
    radius = params.radius
    if radius is None:
        radius = adaptive_radius(pol, tau.imag, params.tol)
    theta, count = theta_sum(pol, disc.lift(a), tau, radius)
    p, m = pol.signature
    e = eta(tau, params.eta_terms)
    denom = e ** p * e.conjugate() ** m
    value = theta / denom
    tail = tail_bound(pol, tau.imag, radius)
    rel_eta = eta_error(tau, params.eta_terms) / abs(e)
    error = tail / abs(denom) + abs(value) * (p + m) * rel_eta
    return PartitionValue(value, error, theta, count, radius)


def partition_function(pol: Polarization, disc: DiscriminantData,
                       params: ThetaParams = ThetaParams()) -> Callable:
    """``Z(a, tau) -> complex`` for use with :func:`modular_covariance_check`."""

    def z(a, tau):
        return twisted_partition(pol, disc, a, tau, params).value

    return z


def narain_boundary(lattice: GramLattice, pol: Polarization | None = None,
                    params: ThetaParams = ThetaParams()):
    """Discriminant data, polarization and partition function of an even lattice."""
    disc = discriminant_theory(lattice)
    if pol is None:
        pol = standard_polarization(disc.lattice)
    return disc, pol, partition_function(pol, disc, params)


# --------------------------------------------------------------------------
# modular covariance


@dataclass(frozen=True)
class CovarianceReport:
    t_residual: float
    s_residual_plus: float
    s_residual_minus: float
    tol: float
    rows: list = field(repr=False, default_factory=list)

    @property
    def s_residual(self) -> float:
        return min(self.s_residual_plus, self.s_residual_minus)

    @property
    def s_convention(self) -> str | None:
        """``"+"`` if ``exp(+2 pi i L)`` fits, ``"-"`` for the conjugate, else ``None``."""
        if self.s_residual_plus <= self.tol:
            return "+"
        if self.s_residual_minus <= self.tol:
            return "-"
        return None

    @property
    def passed(self) -> bool:
        return self.t_residual <= self.tol and self.s_convention is not None


def modular_covariance_check(
    theory: AnyonTheory,
    z: Callable,
    central: tuple[int, int] = (0, 0),
    tau: complex = 0.1 + 1.2j,
    tol: float = 1e-9,
) -> CovarianceReport:
    """Residuals of ``Z(tau+1) = e^{-2 pi i c/24} theta_a Z(tau)`` and of the S relation.

    The S relation is tested with both ``exp(+2 pi i L)`` and its conjugate.
    """
    tau = _check_tau(tau)
    g = theory.group
    elems = list(g.elements())
    c = central[0] - central[1]
    shift = root_of_unity(-c, 24)
    z_tau = [complex(z(a, tau)) for a in elems]
    z_t = [complex(z(a, tau + 1)) for a in elems]
    z_s = [complex(z(a, -1 / tau)) for a in elems]
    norm = math.sqrt(len(elems))
    t_res = s_plus = s_minus = 0.0
    rows = []
    for i, a in enumerate(elems):
        spin = theory.q(a)
        rt = abs(z_t[i] - shift * spin.phase() * z_tau[i])
        acc_p = acc_m = 0j
        for j, b in enumerate(elems):
            if z_tau[j] == 0:
                continue
            l = theory.pairing(a, b)
            ph = root_of_unity(l.numerator, l.denominator)
            acc_p += ph * z_tau[j]
            acc_m += ph.conjugate() * z_tau[j]
        rp = abs(z_s[i] - acc_p / norm)
        rm = abs(z_s[i] - acc_m / norm)
        rows.append((a, spin, rt, rp, rm))
        t_res, s_plus, s_minus = max(t_res, rt), max(s_plus, rp), max(s_minus, rm)
    return CovarianceReport(t_res, s_plus, s_minus, tol, rows)


def gapped_partition_function(vector: dict) -> Callable:
    """Wrap a ``tau``-independent indicator vector as ``Z(a, tau)``."""

    def z(a, tau):
        return vector[a]

    return z
