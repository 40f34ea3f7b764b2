"""Buchberger engine: reduced Groebner bases, normal forms, membership.

Internally polynomials are primitive integer dicts (content 1, positive
leading coefficient); reduction is fraction-free with a running rational
scale so exact remainders come out of the same loop.  Pair selection is the
normal strategy (minimal lcm degree first) with Gebauer-Moeller pruning,
which keeps runs deterministic for a fixed generator order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce as _fold
from heapq import heapify, heappop, heappush
from math import gcd

from .errors import BudgetExceededError, RingMismatchError
from .monomial_ideals import minimalize
from .poly import Polynomial
from .ring import RingCtx, TermOrder, mono_divides, mono_lcm, mono_mul
from . import monomial_ideals


@dataclass(frozen=True)
class GBLimits:
    """Pair/degree budgets; exceeding raises instead of looping."""

    max_pairs: int = 50_000
    max_degree: int = 80

    def scaled(self, factor: int) -> "GBLimits":
        return GBLimits(self.max_pairs * factor, self.max_degree * factor)


DEFAULT_GB_LIMITS = GBLimits()


def _content(coeffs) -> int:
    return _fold(gcd, coeffs, 0)


def _primitive(d: dict, keyf) -> dict:
    """Divide out integer content and make the leading coefficient positive."""
    if not d:
        return d
    g = _content(d.values())
    lead = max(d, key=keyf)
    if d[lead] < 0:
        g = -g
    if g != 1:
        d = {m: c // g for m, c in d.items()}
    return d


def _poly_to_int(p: Polynomial) -> dict:
    den = 1
    for c in p._coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return {m: int(c * den) for m, c in p.items()}


class _Record:
    """One basis element: leading data plus tail, ready for axpy reduction."""

    __slots__ = ("lt", "lc", "tail", "deg", "poly")

    def __init__(self, poly: dict, keyf):
        self.poly = poly
        self.lt = max(poly, key=keyf)
        self.lc = poly[self.lt]
        self.tail = [(m, c) for m, c in poly.items() if m != self.lt]
        self.deg = sum(self.lt)


def _reduce(f: dict, records, keyf, *, negk=None, top_only=False):
    """Reduce f (a Fraction dict, consumed) modulo records; Fraction dict out.

    Coefficients are normalized per operation, so sizes track the true
    values instead of compounding fraction-free scale factors (long
    inhomogeneous divisions explode otherwise while their actual results
    stay small).  Full reduction leaves no term divisible by any record's
    leading monomial; `top_only` stops at the first irreducible lead and
    returns the remaining tail raw, which is all completion needs.
    """
    if negk is None:
        def negk(m):
            return tuple(-v for v in keyf(m))

    out = {}
    heap = [(negk(m), m) for m in f]
    heapify(heap)
    while heap:
        _, m = heappop(heap)
        c = f.get(m)
        if not c:
            continue
        mdeg = sum(m)
        hit = None
        for rec in records:  # sorted by (deg, key): past mdeg nothing divides
            if rec.deg > mdeg:
                break
            ok = True
            for a, b in zip(rec.lt, m):
                if a > b:
                    ok = False
                    break
            if ok:
                hit = rec
                break
        if hit is None:
            del f[m]
            out[m] = c
            if top_only:
                break
            continue
        del f[m]
        factor = c / hit.lc
        shift = tuple(x - y for x, y in zip(m, hit.lt))
        for m2, c2 in hit.tail:
            mm = tuple(x + y for x, y in zip(m2, shift))
            old = f.get(mm)
            s = (old or 0) - factor * c2
            if s:
                f[mm] = s
                if old is None:
                    heappush(heap, (negk(mm), mm))
            elif old is not None:
                del f[mm]
    if top_only and f:
        out.update(f)
        f.clear()
    return out


def _frac_to_primitive(out: dict, keyf) -> dict:
    if not out:
        return {}
    den = 1
    for c in out.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {m: int(c * den) for m, c in out.items()}
    return _primitive(ints, keyf)


class GroebnerBasis:
    """A reduced Groebner basis: monic, interreduced, canonically sorted."""

    __slots__ = ("ring", "order", "basis", "source", "_records", "_keyf")

    def __init__(self, ring: RingCtx, order: TermOrder, basis, source):
        self.ring = ring
        self.order = order
        self.basis = tuple(basis)
        self.source = tuple(source)
        self._records = None
        self._keyf = order.key_func()

    def records(self):
        if self._records is None:
            keyf = self._keyf
            recs = [_Record(_primitive(_poly_to_int(p), keyf), keyf) for p in self.basis]
            recs.sort(key=lambda r: (r.deg, keyf(r.lt)))
            self._records = recs
        return self._records

    @property
    def leading_monomials(self) -> tuple:
        return tuple(p.leading_monomial(self.order) for p in self.basis)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring.variables != self.ring.variables:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        if f.is_zero():
            return f
        work = {m: Fraction(c) for m, c in f.items()}
        out = _reduce(work, self.records(), self._keyf)
        return Polynomial(self.ring, out)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit_ideal(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant() and not self.basis[0].is_zero()

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (
            self.ring.variables == other.ring.variables
            and self.order == other.order
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ring.variables, self.order, self.basis))

    def __repr__(self):
        return f"GroebnerBasis({len(self.basis)} elements over {self.ring})"


def _spoly(ri: _Record, rj: _Record) -> dict:
    u = mono_lcm(ri.lt, rj.lt)
    g = gcd(ri.lc, rj.lc)
    ci, cj = rj.lc // g, ri.lc // g
    si = tuple(x - y for x, y in zip(u, ri.lt))
    sj = tuple(x - y for x, y in zip(u, rj.lt))
    out = {}
    for m, c in ri.poly.items():
        out[mono_mul(m, si)] = ci * c
    for m, c in rj.poly.items():
        mm = mono_mul(m, sj)
        s = out.get(mm, 0) - cj * c
        if s:
            out[mm] = s
        else:
            out.pop(mm, None)
    return out


def buchberger(
    gens,
    order: TermOrder | None = None,
    limits: GBLimits = DEFAULT_GB_LIMITS,
    seed_basis: GroebnerBasis | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the given generators.

    The completion follows the improved Buchberger loop of Becker &
    Weispfenning (GROEBNERNEWS2): Gebauer-Moeller pair filters, plus the
    basis filter that retires every active element whose leading monomial
    the newcomer divides - retired elements keep their pending pairs but
    generate no new ones and stop serving as reducers, which is what keeps
    intermediate bases small on inhomogeneous inputs.

    `seed_basis` (same ring and order, known to be a Groebner basis)
    enters the loop without internal pairs, so GB(known + extras) is
    cheap.  Raises BudgetExceededError when the pair count or S-poly lcm
    degree exceeds `limits`.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("buchberger needs at least one generator")
    ring = gens[0].ring
    for g in gens:
        ring.check_same(g.ring)
    order = order or ring.order
    keyf = order.key_func()

    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        raise ValueError("all generators are zero")

    if seed_basis is None and all(g.is_term() for g in nonzero):
        monos = minimalize(g.leading_monomial(order) for g in nonzero)
        basis = [Polynomial.monomial(ring, m) for m in monos]
        basis.sort(key=lambda p: keyf(p.leading_monomial(order)), reverse=True)
        return GroebnerBasis(ring, order, basis, gens)

    if seed_basis is not None:
        if seed_basis.order != order:
            raise RingMismatchError("seed basis uses a different order")
        seed_basis.ring.check_same(ring)

    def negk(m):
        return tuple(-v for v in keyf(m))

    store: list = []          # every record ever adopted, by index
    active: set = set()       # indices generating pairs and reducing
    pairs: dict = {}          # (i, j) -> lcm monomial, i < j
    pair_heap: list = []
    lookup: list = []         # active records sorted by (deg, key)

    def rebuild_lookup():
        lookup[:] = sorted(
            (store[i] for i in active), key=lambda r: (r.deg, keyf(r.lt))
        )

    def reduce_vs_active(poly_fracs: dict) -> dict:
        return _reduce(poly_fracs, lookup, keyf, negk=negk)

    def adopt(rec: _Record):
        """[BW] update: new pairs with Gebauer-Moeller filters, old-pair
        pruning, and retirement of dominated active elements."""
        store.append(rec)
        t = len(store) - 1
        mh = rec.lt

        candidates = list(active)
        chosen = []
        lcms = {ig: mono_lcm(mh, store[ig].lt) for ig in candidates}
        for pos, ig in enumerate(candidates):
            lcm_hg = lcms[ig]
            coprime = mono_mul(mh, store[ig].lt) == lcm_hg
            others = (
                any(
                    mono_divides(lcms[other], lcm_hg) and other != ig
                    for other in candidates[pos + 1 :]
                )
                or any(mono_divides(lcms[other], lcm_hg) for other, _ in chosen)
            )
            if coprime or not others:
                chosen.append((ig, coprime))

        survivors = {}
        for (i, j), lcm_ij in pairs.items():
            if (
                mono_divides(mh, lcm_ij)
                and mono_lcm(store[i].lt, mh) != lcm_ij
                and mono_lcm(store[j].lt, mh) != lcm_ij
            ):
                continue
            survivors[(i, j)] = lcm_ij
        pairs.clear()
        pairs.update(survivors)

        for ig, coprime in chosen:
            if coprime:
                continue  # Buchberger's first criterion
            key = (min(ig, t), max(ig, t))
            pairs[key] = lcms[ig]
            heappush(pair_heap, (sum(lcms[ig]), keyf(lcms[ig]), key[0], key[1]))

        for ig in list(active):
            if mono_divides(mh, store[ig].lt):
                active.discard(ig)
        active.add(t)
        rebuild_lookup()

    if seed_basis is not None:
        for rec in seed_basis.records():
            store.append(rec)
            active.add(len(store) - 1)
        rebuild_lookup()

    # interreduce the inputs first ([BW] page 203)
    current = [_primitive(_poly_to_int(g), keyf) for g in nonzero]
    while True:
        reduced_inputs = []
        changed = False
        for i, d in enumerate(current):
            recs = sorted(
                (_Record(e, keyf) for e in reduced_inputs),
                key=lambda r: (r.deg, keyf(r.lt)),
            )
            work = {m: Fraction(c) for m, c in d.items()}
            rem = _frac_to_primitive(_reduce(work, recs, keyf, negk=negk), keyf)
            if rem != d:
                changed = True
            if rem:
                reduced_inputs.append(rem)
        if not changed:
            break
        current = reduced_inputs
    incoming = sorted(current, key=lambda d: keyf(max(d, key=keyf)))

    for d in incoming:
        work = {m: Fraction(c) for m, c in d.items()}
        rem = _frac_to_primitive(reduce_vs_active(work), keyf)
        if rem:
            adopt(_Record(rem, keyf))

    reductions = 0
    while pair_heap:
        deg, _, i, j = heappop(pair_heap)
        if (i, j) not in pairs:
            continue
        del pairs[(i, j)]
        if not store[i].tail and not store[j].tail:
            continue  # S-poly of two monomials is identically zero
        if deg > limits.max_degree:
            raise BudgetExceededError(
                f"S-polynomial lcm degree {deg} exceeds cap {limits.max_degree}",
                degree=deg,
            )
        reductions += 1
        if reductions > limits.max_pairs:
            raise BudgetExceededError(
                f"more than {limits.max_pairs} pair reductions", pairs=reductions
            )
        s = _spoly(store[i], store[j])
        if not s:
            continue
        work = {m: Fraction(c) for m, c in s.items()}
        rem = _frac_to_primitive(reduce_vs_active(work), keyf)
        if rem:
            adopt(_Record(rem, keyf))

    # minimal basis among the active survivors
    by_lt = sorted((store[i] for i in active), key=lambda r: keyf(r.lt))
    kept = []
    for rec in by_lt:
        if not any(mono_divides(k.lt, rec.lt) for k in kept):
            kept = [k for k in kept if not mono_divides(rec.lt, k.lt)]
            kept.append(rec)

    # interreduce tails, then normalize monic
    reduced = []
    for rec in kept:
        others = sorted(
            (r for r in kept if r is not rec), key=lambda r: (r.deg, keyf(r.lt))
        )
        work = {m: Fraction(c) for m, c in rec.poly.items()}
        out = _reduce(work, others, keyf, negk=negk)
        prim = _frac_to_primitive(out, keyf)
        reduced.append(prim)

    polys = []
    for prim in reduced:
        lt = max(prim, key=keyf)
        lc = prim[lt]
        polys.append(Polynomial(ring, {m: Fraction(c, lc) for m, c in prim.items()}))
    polys.sort(key=lambda p: keyf(p.leading_monomial(order)), reverse=True)
    return GroebnerBasis(ring, order, polys, gens)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of f modulo G; unique because G is reduced."""
    return G.normal_form(f)
