"""Ideal arithmetic, colon ideals, lengths, and monomial integral closure.

Lengths, colons and equality tests are computed in Q[x1..xd] but read as
local values at the origin; that reading is only sound for m-primary (or
unit) ideals, so those entry points guard on m-primarity eagerly.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

import numpy as np

from . import monomial_ideals as mi
from .errors import NotMonomialError, NotMPrimaryError, RingMismatchError
from .groebner import DEFAULT_GB_LIMITS, GBLimits, GroebnerBasis, buchberger
from .poly import Polynomial
from .ring import RingCtx, extended_ring, mono_divides


class Ideal:
    """An ideal of Q[x..] with cached Groebner data.

    Instances are treated as immutable; caches fill in lazily and are
    race-benign (recomputation gives identical canonical values).
    """

    __slots__ = (
        "ring",
        "gens",
        "_gb",
        "_mono_gens",
        "_m_primary",
        "_powers",
        "_length",
        "_local_bound",
    )

    def __init__(self, ring: RingCtx, gens):
        self.ring = ring
        cleaned = []
        for g in gens:
            if not isinstance(g, Polynomial):
                raise TypeError(f"ideal generator {g!r} is not a Polynomial")
            ring.check_same(g.ring)
            if not g.is_zero():
                cleaned.append(g)
        self.gens = tuple(cleaned)
        self._gb = None
        self._m_primary = None
        self._powers = {}
        self._length = None
        self._local_bound = None
        if cleaned and all(g.is_term() for g in cleaned):
            self._mono_gens = mi.minimalize(g.leading_monomial(ring.order) for g in cleaned)
        else:
            self._mono_gens = None

    # -- basic structure -----------------------------------------------

    @property
    def is_monomial(self) -> bool:
        return self._mono_gens is not None

    def monomial_gens(self) -> tuple:
        if self._mono_gens is None:
            raise NotMonomialError(f"{self} is not a monomial ideal")
        return self._mono_gens

    def is_zero(self) -> bool:
        return not self.gens

    def groebner(self, limits: GBLimits = DEFAULT_GB_LIMITS) -> GroebnerBasis:
        if self._gb is None:
            if not self.gens:
                raise ValueError("zero ideal has no Groebner basis here")
            self._gb = buchberger(self.gens, self.ring.order, limits)
        return self._gb

    def leading_monomials(self, limits: GBLimits = DEFAULT_GB_LIMITS) -> tuple:
        if self._mono_gens is not None:
            return self._mono_gens
        return mi.minimalize(self.groebner(limits).leading_monomials)

    def contains(self, f: Polynomial, limits: GBLimits = DEFAULT_GB_LIMITS) -> bool:
        """Membership via normal form (termwise divisibility when monomial)."""
        self.ring.check_same(f.ring)
        if f.is_zero():
            return True
        if self.is_zero():
            return False
        if self._mono_gens is not None:
            return all(mi.contains(self._mono_gens, m) for m, _ in f.items())
        return self.groebner(limits).contains(f)

    def is_unit(self, limits: GBLimits = DEFAULT_GB_LIMITS) -> bool:
        if self.is_zero():
            return False
        if any(g.is_constant() for g in self.gens):
            return True
        if self._mono_gens is not None:
            return self.ring.one() in self._mono_gens
        return self.groebner(limits).is_unit_ideal()

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.gens) if self.gens else "0"
        return f"({inside})"

    # -- convenience constructors ---------------------------------------

    @staticmethod
    def from_monomials(ring: RingCtx, monos) -> "Ideal":
        return Ideal(ring, [Polynomial.monomial(ring, m) for m in monos])

    @staticmethod
    def unit(ring: RingCtx) -> "Ideal":
        return Ideal(ring, [Polynomial.one(ring)])

    @staticmethod
    def maximal(ring: RingCtx) -> "Ideal":
        return Ideal.from_monomials(ring, [ring.var_mono(i) for i in range(ring.dimension)])


def _require_m_primary(I: Ideal, what: str, limits: GBLimits = DEFAULT_GB_LIMITS):
    if not is_m_primary(I, limits):
        raise NotMPrimaryError(f"{what} needs an m-primary (or unit) ideal, got {I}")


# -- spec operations -----------------------------------------------------


def ideal_power(I: Ideal, n: int, limits: GBLimits = DEFAULT_GB_LIMITS) -> Ideal:
    """I^n, with I^0 the unit ideal; cached per (I, n)."""
    if n < 0:
        raise ValueError("negative ideal power")
    cached = I._powers.get(n)
    if cached is not None:
        return cached
    if n == 0:
        result = Ideal.unit(I.ring)
    elif n == 1:
        result = I
    elif I.is_monomial:
        half = ideal_power(I, n // 2, limits)
        other = ideal_power(I, n - n // 2, limits)
        result = Ideal.from_monomials(
            I.ring, mi.product(half.monomial_gens(), other.monomial_gens())
        )
    else:
        gens = [
            _product_of(list(combo))
            for combo in combinations_with_replacement(I.gens, n)
        ]
        result = Ideal(I.ring, gens)
    I._powers[n] = result
    return result


def _product_of(polys) -> Polynomial:
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return out


def ideal_combine(I: Ideal, J: Ideal, op: str) -> Ideal:
    I.ring.check_same(J.ring)
    if op == "sum":
        return Ideal(I.ring, I.gens + J.gens)
    if op == "product":
        if I.is_zero() or J.is_zero():
            return Ideal(I.ring, [])
        return Ideal(I.ring, [f * g for f in I.gens for g in J.gens])
    raise ValueError(f"unknown ideal_combine op {op!r}")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return ideal_combine(I, J, "sum")


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return ideal_combine(I, J, "product")


def is_m_primary(I: Ideal, limits: GBLimits = DEFAULT_GB_LIMITS) -> bool:
    """Some pure power of every variable lies in the leading-term ideal."""
    if I._m_primary is None:
        if I.is_zero():
            I._m_primary = I.ring.dimension == 0
        elif I._mono_gens is not None:
            I._m_primary = mi.is_m_primary(I._mono_gens, I.ring.dimension)
        elif I.is_unit(limits):
            I._m_primary = True
        else:
            I._m_primary = mi.is_m_primary(I.leading_monomials(limits), I.ring.dimension)
    return I._m_primary


def length_quotient(I: Ideal, limits: GBLimits = DEFAULT_GB_LIMITS) -> int:
    """lambda(R/I) = number of standard monomials of the leading-term ideal."""
    if I._length is None:
        _require_m_primary(I, "length_quotient", limits)
        I._length = mi.staircase_count(I.leading_monomials(limits), I.ring.dimension)
    return I._length


def _lift_to_aux(ext, p: Polynomial, t_power: int = 0) -> Polynomial:
    return Polynomial(ext, {(t_power,) + m: c for m, c in p.items()})


def _seed_t_basis(ext, reduced_basis) -> "GroebnerBasis":
    """t * (a reduced basis of J) is itself a reduced basis of (t.J)."""
    from .groebner import GroebnerBasis

    lifted = [_lift_to_aux(ext, p, 1) for p in reduced_basis]
    return GroebnerBasis(ext, ext.order, lifted, lifted)


def _intersect_principal(reduced_basis, g: Polynomial, limits: GBLimits):
    """Groebner basis of I cap (g) via one elimination variable.

    Seeding with t * GB(I) skips every pair internal to I.
    """
    ring = g.ring
    ext = extended_ring(ring)
    t = Polynomial.variable(ext, "_t")
    seed = _seed_t_basis(ext, reduced_basis)
    gens = [(Polynomial.one(ext) - t) * _lift_to_aux(ext, g)]
    gb = buchberger(gens, ext.order, limits, seed_basis=seed)
    kept = []
    for p in gb.basis:
        if all(m[0] == 0 for m, _ in p.items()):
            kept.append(Polynomial(ring, {m[1:]: c for m, c in p.items()}))
    return kept


def _div_exact(p: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient p/g for an exact multiple p of g."""
    order = p.ring.order
    out = {}
    rest = p
    while not rest.is_zero():
        lm, lc = rest.leading_monomial(order), rest.leading_coeff(order)
        gm, gc = g.leading_monomial(order), g.leading_coeff(order)
        if not mono_divides(gm, lm):
            raise ValueError("not an exact multiple during division")
        shift = tuple(a - b for a, b in zip(lm, gm))
        coeff = lc / gc
        out[shift] = coeff
        rest = rest - g.mul_monomial(shift, coeff)
    return Polynomial(p.ring, out)


def colon_principal(I: Ideal, g: Polynomial, limits: GBLimits = DEFAULT_GB_LIMITS) -> Ideal:
    """(I : g) = (I cap (g)) / g, computed with the t-trick elimination."""
    I.ring.check_same(g.ring)
    if g.is_zero():
        raise ValueError("colon by zero element")
    if I._mono_gens is not None and g.is_term():
        return Ideal.from_monomials(
            I.ring, mi.colon_by_mono(I._mono_gens, g.leading_monomial())
        )
    base = I.groebner(limits).basis
    inter = _intersect_principal(base, g, limits)
    return Ideal(I.ring, [_div_exact(p, g) for p in inter])


def ideal_intersection(I: Ideal, J: Ideal, limits: GBLimits = DEFAULT_GB_LIMITS) -> Ideal:
    I.ring.check_same(J.ring)
    if I.is_monomial and J.is_monomial:
        return Ideal.from_monomials(I.ring, mi.intersect(I.monomial_gens(), J.monomial_gens()))
    ring = I.ring
    ext = extended_ring(ring)
    t = Polynomial.variable(ext, "_t")
    seed = _seed_t_basis(ext, I.groebner(limits).basis)
    gens = [(Polynomial.one(ext) - t) * _lift_to_aux(ext, p) for p in J.gens]
    gb = buchberger(gens, ext.order, limits, seed_basis=seed)
    kept = [
        Polynomial(ring, {m[1:]: c for m, c in p.items()})
        for p in gb.basis
        if all(m[0] == 0 for m, _ in p.items())
    ]
    return Ideal(ring, kept)


def colon(I: Ideal, J: Ideal, limits: GBLimits = DEFAULT_GB_LIMITS) -> Ideal:
    """(I : J), intersecting the principal colons over J's generators."""
    I.ring.check_same(J.ring)
    if J.is_zero():
        raise ValueError("colon by the zero ideal")
    if I._mono_gens is not None and J._mono_gens is not None:
        # monomial colons localize exactly; no m-primary guard needed
        return Ideal.from_monomials(I.ring, mi.colon(I._mono_gens, J._mono_gens))
    if not (is_m_primary(I, limits) or I.is_unit(limits)):
        raise NotMPrimaryError(f"colon needs m-primary or unit ideal, got {I}")
    result = None
    for g in J.gens:
        part = colon_principal(I, g, limits)
        result = part if result is None else ideal_intersection(result, part, limits)
    return result


def ideal_equal(I: Ideal, J: Ideal, limits: GBLimits = DEFAULT_GB_LIMITS) -> bool:
    """Equality via canonical data: minimal monomial generators when both
    sides are monomial, reduced Groebner bases otherwise (m-primary guard)."""
    I.ring.check_same(J.ring)
    if I.is_zero() or J.is_zero():
        return I.is_zero() and J.is_zero()
    if I._mono_gens is not None and J._mono_gens is not None:
        return I._mono_gens == J._mono_gens
    for side in (I, J):
        if not (is_m_primary(side, limits) or side.is_unit(limits)):
            raise NotMPrimaryError(f"ideal_equal needs m-primary or unit ideals, got {side}")
    return I.groebner(limits).basis == J.groebner(limits).basis


def ideal_contains_ideal(I: Ideal, J: Ideal, limits: GBLimits = DEFAULT_GB_LIMITS) -> bool:
    """True iff J is a subset of I."""
    return all(I.contains(g, limits) for g in J.gens)


def maximal_power_ideal(ring: RingCtx, n: int) -> Ideal:
    """m^n as a monomial ideal."""
    from .ring import all_monomials_upto

    monos = [m for m in all_monomials_upto(ring.dimension, n) if sum(m) == n]
    return Ideal.from_monomials(ring, monos)


def local_contains_bound(T: Ideal, limits: GBLimits = DEFAULT_GB_LIMITS) -> int:
    """Smallest verified N with m^N inside T (T m-primary).

    Starts from the staircase bound (one past the largest standard-monomial
    degree, exact for monomial ideals) and verifies by normal forms for
    general ideals.
    """
    if T._local_bound is not None:
        return T._local_bound
    _require_m_primary(T, "local_contains_bound", limits)
    dim = T.ring.dimension
    cells = mi.standard_monomials(T.leading_monomials(limits), dim)
    n = 1 + int(cells.sum(axis=1).max()) if len(cells) else 0
    if not T.is_monomial:
        from .ring import all_monomials_upto

        gb = T.groebner(limits)
        while True:
            level = [m for m in all_monomials_upto(dim, n) if sum(m) == n]
            if all(gb.contains(Polynomial.monomial(T.ring, m)) for m in level):
                break
            n += 1
            if n > 4 * (1 + int(cells.sum(axis=1).max() if len(cells) else 1)):
                raise NotMPrimaryError(f"no power of m found inside {T!r}")
    T._local_bound = n
    return n


def _augmented_equal(K: Ideal, T: Ideal, n: int, limits: GBLimits) -> bool:
    """Exact test K + m^n = T, seeding the augmented basis with GB(K)."""
    from .groebner import GroebnerBasis
    from .ring import all_monomials_upto

    gb_k = K.groebner(limits)
    level = [
        Polynomial.monomial(K.ring, m)
        for m in all_monomials_upto(K.ring.dimension, n)
        if sum(m) == n
    ]
    gb = buchberger(level, K.ring.order, limits, seed_basis=gb_k)
    return gb.basis == T.groebner(limits).basis


def local_ideal_equal(
    K: Ideal, T: Ideal, limits: GBLimits = DEFAULT_GB_LIMITS
) -> bool:
    """K = T in the local ring at the origin, for K contained in T, T m-primary.

    Exact via m-adic augmentation: with N such that m^N lies in m.T, the
    global equality K + m^N = T holds iff K and T agree locally (Nakayama
    gives one direction, the unit-denominator expansion the other).  This
    is how reduction equalities J.I^n = I^(n+1) are read through the
    polynomial-ring proxy: generic combinations of mixed-degree generators
    pick up off-origin zeros that the local ring never sees.

    Staged for speed: plain global equality first, then a sufficient
    normal-form criterion (all residues live in degrees >= N), then the
    augmented equality itself.
    """
    if ideal_equal(K, T, limits):
        return True
    n = local_contains_bound(T, limits) + 1
    if local_contains_sufficient(K, T, n, limits):
        return True
    return _augmented_equal(K, T, n, limits)


def local_contains_sufficient(
    K: Ideal, T: Ideal, n: int, limits: GBLimits = DEFAULT_GB_LIMITS
) -> bool:
    """Fast one-sided test for T inside K + m^n: every generator of T leaves
    only degree >= n residue modulo GB(K).  True is exact; False says nothing."""
    gb_k = K.groebner(limits)
    for w in T.gens:
        residue = gb_k.normal_form(w)
        if any(sum(m) < n for m, _ in residue.items()):
            return False
    return True


def local_colength(J: Ideal, containing_power: int, limits: GBLimits = DEFAULT_GB_LIMITS) -> int:
    """Length of R_m / J_m given a verified N = containing_power with m^N in J_m."""
    lhs = ideal_sum(J, maximal_power_ideal(J.ring, containing_power))
    return length_quotient(lhs, limits)


def monomial_integral_closure(I: Ideal, limits: GBLimits = DEFAULT_GB_LIMITS) -> Ideal:
    """Integral closure of an m-primary monomial ideal in <= 3 variables."""
    if not I.is_monomial:
        raise NotMonomialError("integral closure implemented for monomial ideals only")
    if I.ring.dimension > 3:
        raise NotMonomialError("integral closure scan supports at most 3 variables")
    closure = mi.integral_closure(I.monomial_gens(), I.ring.dimension)
    return Ideal.from_monomials(I.ring, closure)


def is_integrally_closed(I: Ideal, limits: GBLimits = DEFAULT_GB_LIMITS) -> bool:
    return monomial_integral_closure(I, limits).monomial_gens() == I.monomial_gens()


class StaircaseDiagram:
    """Standard monomials of an m-primary monomial ideal in <= 3 variables."""

    __slots__ = ("ideal_gens", "dimension", "cells")

    def __init__(self, ideal_gens, dimension: int, cells):
        self.ideal_gens = ideal_gens
        self.dimension = dimension
        self.cells = cells

    @staticmethod
    def from_ideal(I: Ideal) -> "StaircaseDiagram":
        if not I.is_monomial:
            raise NotMonomialError("staircase diagrams need a monomial ideal")
        if I.ring.dimension > 3:
            raise NotMonomialError("staircase diagrams support at most 3 variables")
        gens = I.monomial_gens()
        cells = mi.standard_monomials(gens, I.ring.dimension)
        return StaircaseDiagram(gens, I.ring.dimension, cells)

    def __len__(self):
        return len(self.cells)

    def standard_monomials(self) -> set:
        return set(map(tuple, self.cells.tolist()))

    def is_order_ideal(self) -> bool:
        """Closed under division: every coordinate decrement stays inside."""
        have = self.standard_monomials()
        for cell in have:
            for i in range(self.dimension):
                if cell[i] > 0:
                    below = cell[:i] + (cell[i] - 1,) + cell[i + 1 :]
                    if below not in have:
                        return False
        return True
