"""Exponent-vector kernels for monomial ideals.

A monomial ideal is held canonically as a sorted tuple of exponent tuples
(the minimal generators).  Everything here is exact integer work; numpy is
used for the staircase/lattice scans.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import NotMPrimaryError
from .ring import mono_divides, mono_lcm


def minimalize(gens) -> tuple:
    """Drop dominated exponent vectors; returns the sorted minimal set."""
    uniq = sorted(set(map(tuple, gens)))
    out = []
    for m in uniq:
        if any(mono_divides(g, m) for g in out):
            continue
        out = [g for g in out if not mono_divides(m, g)]
        out.append(m)
    return tuple(sorted(out))


def product(A, B) -> tuple:
    return minimalize(tuple(x + y for x, y in zip(a, b)) for a in A for b in B)


def intersect(A, B) -> tuple:
    return minimalize(mono_lcm(a, b) for a in A for b in B)


def colon_by_mono(A, g) -> tuple:
    """(A : x^g) for a monomial ideal A."""
    return minimalize(tuple(max(a - e, 0) for a, e in zip(m, g)) for m in A)


def colon(A, B) -> tuple:
    """(A : B) for monomial ideals, intersecting over B's generators."""
    result = None
    for g in B:
        part = colon_by_mono(A, g)
        result = part if result is None else intersect(result, part)
    return result if result is not None else A


def contains(A, mono) -> bool:
    return any(mono_divides(g, mono) for g in A)


def ideal_contains(A, B) -> bool:
    """True iff the ideal A contains the ideal B."""
    return all(contains(A, b) for b in B)


def pure_power_bounds(A, dim: int):
    """Per-variable minimal pure-power exponents, or None if some axis lacks one.

    A finite bound on every axis is exactly m-primarity of the monomial ideal.
    """
    bounds = []
    for i in range(dim):
        powers = [m[i] for m in A if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not powers:
            return None
        bounds.append(min(powers))
    return tuple(bounds)


def is_m_primary(A, dim: int) -> bool:
    return bool(A) and pure_power_bounds(A, dim) is not None


def standard_monomials(A, dim: int) -> np.ndarray:
    """Exponent vectors outside the ideal, as an (N, dim) int array."""
    bounds = pure_power_bounds(A, dim)
    if bounds is None:
        raise NotMPrimaryError(f"monomial ideal {A} is not m-primary in {dim} variables")
    grids = np.meshgrid(*[np.arange(b) for b in bounds], indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    gens = np.array(A, dtype=np.int64)
    dominated = np.zeros(len(pts), dtype=bool)
    step = max(1, 10_000_000 // max(1, len(gens) * dim))
    for lo in range(0, len(pts), step):
        chunk = pts[lo : lo + step]
        dominated[lo : lo + step] = (chunk[:, None, :] >= gens[None, :, :]).all(axis=2).any(axis=1)
    return pts[~dominated]


def staircase_count(A, dim: int) -> int:
    """Number of standard monomials = colength of the monomial ideal."""
    return len(standard_monomials(A, dim))


# -- Newton polyhedron / integral closure --------------------------------


def _facet_inequalities(A, dim: int):
    """Valid inequalities n.q >= c (n >= 0) covering all facets of conv(A)+R+^d."""
    pts = [tuple(m) for m in A]
    ineqs = set()

    def consider(n):
        n = tuple(int(v) for v in n)
        if all(v == 0 for v in n) or any(v < 0 for v in n):
            return
        from math import gcd
        g = 0
        for v in n:
            g = gcd(g, v)
        n = tuple(v // g for v in n)
        c = min(sum(nv * pv for nv, pv in zip(n, p)) for p in pts)
        ineqs.add((n, c))

    if dim == 1:
        consider((1,))
        return sorted(ineqs)

    axes = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    for ax in axes:
        consider(ax)

    if dim == 2:
        for p, q in combinations(pts, 2):
            dx, dy = q[0] - p[0], q[1] - p[1]
            consider((dy, -dx))
            consider((-dy, dx))
        return sorted(ineqs)

    # dim == 3: facets are spanned by point triples or point pairs + an axis ray
    def cross(u, v):
        return (
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )

    for p, q, r in combinations(pts, 3):
        u = tuple(q[i] - p[i] for i in range(3))
        v = tuple(r[i] - p[i] for i in range(3))
        n = cross(u, v)
        consider(n)
        consider(tuple(-x for x in n))
    for p, q in combinations(pts, 2):
        u = tuple(q[i] - p[i] for i in range(3))
        for ax in axes:
            n = cross(u, ax)
            consider(n)
            consider(tuple(-x for x in n))
    return sorted(ineqs)


def integral_closure(A, dim: int) -> tuple:
    """Minimal generators of the integral closure of a monomial ideal.

    A lattice point lies in the closure iff it satisfies every valid
    inequality of the Newton polyhedron conv(A) + R+^d; the candidate box is
    cut off by the pure-power generators.
    """
    bounds = pure_power_bounds(A, dim)
    if bounds is None:
        raise NotMPrimaryError("integral closure scan needs an m-primary monomial ideal")
    ineqs = _facet_inequalities(A, dim)
    grids = np.meshgrid(*[np.arange(b + 1) for b in bounds], indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
    keep = np.ones(len(pts), dtype=bool)
    for n, c in ineqs:
        keep &= pts @ np.array(n, dtype=np.int64) >= c
    return minimalize(map(tuple, pts[keep]))
