"""Abelian anyon theories ``(D, q)``: spins, braiding, modular data.

A theory stores ``q`` on the canonical generators of ``D`` together with
the off-diagonal braidings ``L(g_i, g_j)``; the value on a general anyon
``x = sum x_i g_i`` is

    q(x) = sum_i x_i^2 q(g_i) + sum_{i<j} x_i x_j L(g_i, g_j)   (mod 1).
"""
from __future__ import annotations

import cmath
import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import intmat, kernels
from .abelian import (
    FinAbGroup,
    GroupElement,
    GroupHom,
    RationalMod1,
    as_element,
    check_bound,
    normalize_orders,
    qz_make,
    root_of_unity,
)
from .errors import DegenerateForm, InvalidArgument, InvalidForm, ResourceLimit

EQUIVALENCE_BOUND = 4096


def _qz(x) -> RationalMod1:
    if isinstance(x, RationalMod1):
        return x
    if isinstance(x, str):
        return RationalMod1.parse(x)
    return RationalMod1.from_fraction(Fraction(x))


@dataclass(frozen=True)
class AnyonTheory:
    """Finite abelian group with a quadratic refinement ``q`` of ``L``."""

    group: FinAbGroup
    q_gen: tuple[RationalMod1, ...]
    l_gen: tuple[tuple[RationalMod1, ...], ...]

    @property
    def size(self) -> int:
        return self.group.cardinality

    @cached_property
    def modulus(self) -> int:
        """Common denominator of every q and L value."""
        n = 1
        for x in self.q_gen:
            n = math.lcm(n, x.denominator)
        for row in self.l_gen:
            for x in row:
                n = math.lcm(n, x.denominator)
        return n

    @cached_property
    def nondegenerate(self) -> bool:
        return kernel_size(self) == 1

    # raw integer-vector evaluation, used internally on unreduced lifts
    def _q_raw(self, x: Sequence[int]) -> Fraction:
        k = len(self.q_gen)
        val = Fraction(0)
        for i in range(k):
            if x[i]:
                val += x[i] * x[i] * self.q_gen[i].as_fraction()
                for j in range(i + 1, k):
                    if x[j]:
                        val += x[i] * x[j] * self.l_gen[i][j].as_fraction()
        return val

    def _l_raw(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        k = len(self.q_gen)
        return sum(
            (x[i] * y[j] * self.l_gen[i][j].as_fraction()
             for i in range(k) if x[i] for j in range(k) if y[j]),
            Fraction(0),
        )

    def q(self, a) -> RationalMod1:
        return q_eval(self, a)

    def L(self, a, b) -> RationalMod1:
        return braiding(self, a, b)

    def pairing(self, a, b) -> RationalMod1:
        """Bilinear evaluation of ``L``; agrees with :meth:`L`."""
        a = as_element(self.group, a)
        b = as_element(self.group, b)
        return RationalMod1.from_fraction(self._l_raw(a.coeffs, b.coeffs))

    @cached_property
    def _q_table(self) -> np.ndarray:
        check_bound(self.size)
        n = self.modulus
        qnum = [x.numerator * (n // x.denominator) for x in self.q_gen]
        lnum = [[x.numerator * (n // x.denominator) for x in row] for row in self.l_gen]
        if n < 2**31:
            return kernels.q_table(list(self.group.orders), qnum, lnum, n)
        from . import _pykernels

        return _pykernels.q_table(list(self.group.orders), qnum, lnum, n)

    def q_numerators(self) -> np.ndarray:
        """``q`` on every anyon (lexicographic order) as numerators over :attr:`modulus`."""
        return self._q_table

    def spins(self) -> list[RationalMod1]:
        n = self.modulus
        return [qz_make(int(k), n) for k in self._q_table]

    def anyons(self):
        return self.group.elements()

    def to_dict(self) -> dict:
        return {
            "orders": list(self.group.orders),
            "q_gen": [str(x) for x in self.q_gen],
            "l_gen": [[str(x) for x in row] for row in self.l_gen],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "AnyonTheory":
        try:
            orders = doc["orders"]
            q_gen = doc["q_gen"]
            l_gen = doc["l_gen"]
        except (KeyError, TypeError) as exc:
            raise InvalidArgument(f"theory document missing field {exc}") from exc
        return theory_new(FinAbGroup(tuple(orders)), q_gen, l_gen)

    @classmethod
    def from_json(cls, text: str) -> "AnyonTheory":
        return cls.from_dict(json.loads(text))

    def __str__(self):
        return f"AnyonTheory({self.group}, |D|={self.size})"


def theory_new(group: FinAbGroup, q_gen, l_gen_offdiag=None) -> AnyonTheory:
    """Validate and build a theory on a canonical group.

    ``l_gen_offdiag`` is a full ``k x k`` matrix; its diagonal may be left as
    ``None`` (it is always ``2 q(g_i)``) but if given it must agree.
    """
    k = group.rank
    q_gen = tuple(_qz(x) for x in q_gen)
    if len(q_gen) != k:
        raise InvalidArgument(f"expected {k} generator spins, got {len(q_gen)}")
    if l_gen_offdiag is None:
        if k > 1:
            raise InvalidArgument("off-diagonal braidings required for rank > 1")
        l_gen_offdiag = [[None] * k for _ in range(k)]
    if len(l_gen_offdiag) != k or any(len(row) != k for row in l_gen_offdiag):
        raise InvalidArgument(f"braiding matrix must be {k}x{k}")
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            x = l_gen_offdiag[i][j]
            if i == j:
                want = q_gen[i] * 2
                if x is not None and _qz(x) != want:
                    raise InvalidForm(f"L(g{i},g{i}) = {_qz(x)} but 2q(g{i}) = {want}")
                row.append(want)
            else:
                if x is None:
                    raise InvalidArgument(f"missing braiding L(g{i},g{j})")
                row.append(_qz(x))
        rows.append(tuple(row))
    for i in range(k):
        for j in range(k):
            if rows[i][j] != rows[j][i]:
                raise InvalidForm(f"braiding matrix not symmetric at ({i},{j})")
            if not (rows[i][j] * group.orders[i]).is_zero():
                raise InvalidForm(
                    f"{group.orders[i]} * L(g{i},g{j}) = {rows[i][j] * group.orders[i]} != 0"
                )
        if not (q_gen[i] * (group.orders[i] ** 2)).is_zero():
            raise InvalidForm(f"d^2 q(g{i}) != 0 for d = {group.orders[i]}")
    return AnyonTheory(group, q_gen, tuple(rows))


def trivial_theory() -> AnyonTheory:
    return AnyonTheory(FinAbGroup(()), (), ())


def theory_from_presentation(orders: Sequence[int], q_fn, l_fn) -> AnyonTheory:
    """Build a theory on ``Z_{o_1} + ... + Z_{o_k}`` (any orders) and canonicalize.

    ``q_fn(x)`` and ``l_fn(x, y)`` take integer coefficient vectors against
    the given cyclic factors and return exact rationals mod 1.
    """
    group, _, lifts = normalize_orders(orders)
    q_gen = [_qz(q_fn(x)) for x in lifts]
    l_gen = [[_qz(l_fn(x, y)) for y in lifts] for x in lifts]
    return theory_new(group, q_gen, l_gen)


def kernel_size(theory: AnyonTheory) -> int:
    """Order of the radical ``{a : L(a, .) = 0}``, computed without enumeration."""
    k = theory.group.rank
    if k == 0:
        return 1
    n = theory.modulus
    rows = [[x.numerator * (n // x.denominator) for x in row] for row in theory.l_gen]
    rows += [[n if i == j else 0 for j in range(k)] for i in range(k)]
    coker = math.prod(d for d in intmat.snf(rows).diagonal)
    image = n**k // coker
    return theory.size // image


def q_eval(theory: AnyonTheory, a) -> RationalMod1:
    a = as_element(theory.group, a)
    return RationalMod1.from_fraction(theory._q_raw(a.coeffs))


def braiding(theory: AnyonTheory, a, b) -> RationalMod1:
    """``L(a, b) = q(a + b) - q(a) - q(b)``."""
    a = as_element(theory.group, a)
    b = as_element(theory.group, b)
    return q_eval(theory, a + b) - q_eval(theory, a) - q_eval(theory, b)


@dataclass(frozen=True)
class ModularData:
    """Unnormalized ``S(a, b) = exp(2 pi i L(a, b))`` and ``T_a = exp(2 pi i q(a))``.

    Rows and columns follow ``theory.group.elements()``.  The unitary
    matrix used by modular covariance is :attr:`s_normalized`.
    """

    s_matrix: np.ndarray
    t_vector: np.ndarray
    central_charge_phase: RationalMod1

    @property
    def s_normalized(self) -> np.ndarray:
        return self.s_matrix / math.sqrt(self.s_matrix.shape[0])

    @property
    def sigma_mod8(self) -> int:
        x = self.central_charge_phase.as_fraction() * 8
        return int(x) if x.denominator == 1 else float(x)


def modular_data(theory: AnyonTheory) -> ModularData:
    if not theory.nondegenerate:
        raise DegenerateForm("braiding is degenerate; S is not invertible")
    elems = list(theory.anyons())
    n = theory.modulus
    m = len(elems)
    s = np.empty((m, m), dtype=complex)
    for i, a in enumerate(elems):
        for j in range(i, m):
            val = theory._l_raw(a.coeffs, elems[j].coeffs)
            s[i, j] = s[j, i] = root_of_unity(val.numerator, val.denominator)
    t = np.array([root_of_unity(int(k), n) for k in theory.q_numerators()], dtype=complex)
    return ModularData(s, t, central_charge_phase(theory))


def gauss_milgram(theory: AnyonTheory) -> complex:
    """``|D|^{-1/2} sum_a exp(2 pi i q(a))`` with phases grouped exactly first."""
    n = theory.modulus
    counts = Counter(int(k) for k in theory.q_numerators())
    total = sum(c * root_of_unity(k, n) for k, c in sorted(counts.items()))
    return complex(total) / math.sqrt(theory.size)


def central_charge_phase(theory: AnyonTheory) -> RationalMod1:
    """``sigma/8 mod 1`` read off the Gauss-Milgram phase (nondegenerate theories)."""
    if not theory.nondegenerate:
        raise DegenerateForm("Gauss-Milgram phase is only meaningful for nondegenerate q")
    gm = gauss_milgram(theory)
    eighths = round(cmath.phase(gm) * 4 / math.pi) % 8
    return qz_make(eighths, 8)


def central_charge_mod8(theory: AnyonTheory) -> int:
    return central_charge_phase(theory).numerator * 8 // central_charge_phase(theory).denominator


@dataclass(frozen=True)
class ProductCoordinates:
    """Translate between anyon pairs ``(a1, a2)`` and the Deligne product group."""

    first: AnyonTheory
    second: AnyonTheory
    product: AnyonTheory
    _to_canonical: object
    _lifts: tuple

    def join(self, a1, a2) -> GroupElement:
        a1 = as_element(self.first.group, a1)
        a2 = as_element(self.second.group, a2)
        return self._to_canonical(list(a1.coeffs) + list(a2.coeffs))

    def split(self, x) -> tuple[GroupElement, GroupElement]:
        x = as_element(self.product.group, x)
        k1 = self.first.group.rank
        raw = [sum(c * lift[i] for c, lift in zip(x.coeffs, self._lifts))
               for i in range(k1 + self.second.group.rank)]
        return self.first.group.element(raw[:k1]), self.second.group.element(raw[k1:])


def deligne_coordinates(t1: AnyonTheory, t2: AnyonTheory) -> ProductCoordinates:
    k1 = t1.group.rank
    orders = list(t1.group.orders) + list(t2.group.orders)
    group, to_canonical, lifts = normalize_orders(orders)

    def q_fn(x):
        return t1._q_raw(x[:k1]) + t2._q_raw(x[k1:])

    def l_fn(x, y):
        return t1._l_raw(x[:k1], y[:k1]) + t2._l_raw(x[k1:], y[k1:])

    product = theory_new(
        group,
        [_qz(q_fn(x)) for x in lifts],
        [[_qz(l_fn(x, y)) for y in lifts] for x in lifts],
    )
    return ProductCoordinates(t1, t2, product, to_canonical, tuple(tuple(x) for x in lifts))


def deligne_product(t1: AnyonTheory, t2: AnyonTheory) -> AnyonTheory:
    """``(D1 + D2, q1 + q2)`` on the canonical form of the direct sum."""
    return deligne_coordinates(t1, t2).product


def conjugate(theory: AnyonTheory) -> AnyonTheory:
    return AnyonTheory(
        theory.group,
        tuple(-x for x in theory.q_gen),
        tuple(tuple(-x for x in row) for row in theory.l_gen),
    )


def _order_table(group: FinAbGroup) -> list[int]:
    out = []
    for coeffs in (e.coeffs for e in group.elements()):
        r = 1
        for x, d in zip(coeffs, group.orders):
            r = math.lcm(r, d // math.gcd(x, d))
        out.append(r)
    return out


def equivalent_small(t1: AnyonTheory, t2: AnyonTheory) -> tuple[bool, GroupHom | None]:
    """Search for a group isomorphism ``phi`` with ``q2(phi(a)) = q1(a)``.

    Returns ``(True, phi)`` or ``(False, None)``.
    """
    for t in (t1, t2):
        if t.size > EQUIVALENCE_BOUND:
            raise ResourceLimit(f"|D| = {t.size} exceeds {EQUIVALENCE_BOUND}")
    if t1.group != t2.group:
        return False, None
    g = t1.group
    if g.rank == 0:
        return True, GroupHom(g, g, ())

    def spectrum(t):
        n = t.modulus
        return Counter(Fraction(int(k), n) for k in t.q_numerators())

    if spectrum(t1) != spectrum(t2):
        return False, None

    n2 = t2.modulus
    qs2 = t2.q_numerators()
    orders2 = _order_table(g)
    elems = list(g.elements())
    candidates = []
    for i, d in enumerate(g.orders):
        want = t1.q_gen[i].as_fraction()
        cands = [
            elems[idx] for idx in range(len(elems))
            if orders2[idx] == d and Fraction(int(qs2[idx]), n2) == want
        ]
        # try the identity assignment first
        cands.sort(key=lambda y: y != g.generator(i))
        candidates.append(cands)

    chosen: list[GroupElement] = []

    def extend(i, span):
        if i == g.rank:
            return True
        need = len(span) * g.orders[i]
        for y in candidates[i]:
            if any(
                RationalMod1.from_fraction(t2._l_raw(y.coeffs, chosen[j].coeffs))
                != t1.l_gen[i][j]
                for j in range(i)
            ):
                continue
            step = [y * k for k in range(g.orders[i])]
            new_span = {s + z for s in span for z in step}
            if len(new_span) != need:
                continue
            chosen.append(y)
            if extend(i + 1, new_span):
                return True
            chosen.pop()
        return False

    if extend(0, {g.identity()}):
        return True, GroupHom(g, g, tuple(chosen))
    return False, None


def toric_code() -> AnyonTheory:
    """``Z2 + Z2`` with ``q(a, b) = ab/2``: e = (1,0), m = (0,1), f = (1,1)."""
    return theory_new(FinAbGroup((2, 2)), ["0", "0"], [[None, "1/2"], ["1/2", None]])


def cyclic_theory(n: int, k: int = 1) -> AnyonTheory:
    """``Z_n`` with ``q(a) = k a^2 / 2n`` (n even)."""
    if n % 2:
        raise InvalidArgument("q(a) = k a^2/2n needs n even")
    return theory_from_presentation([n], lambda x: Fraction(k * x[0] ** 2, 2 * n),
                                    lambda x, y: Fraction(k * x[0] * y[0], n))
