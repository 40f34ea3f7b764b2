"""Ring contexts, term orders and raw monomial helpers.

Monomials are plain tuples of non-negative ints (one exponent per ring
variable).  The ring is always Q[x1..xd] viewed locally at (x1..xd); all
length/colon/equality entry points that rely on that local reading guard
on m-primarity, see `ideals`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import RingMismatchError

Monomial = tuple  # exponent vector, length == ring dimension

LT, EQ, GT = -1, 0, 1

MAX_VARIABLES = 4


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """Exponent vector of x^a / x^b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def _degrevlex_key(mono: Monomial):
    return (sum(mono),) + tuple(-e for e in reversed(mono))


def _lex_key(mono: Monomial):
    return mono


@dataclass(frozen=True)
class TermOrder:
    """A monomial order: degrevlex, lex, or a block elimination order.

    `block` > 0 compares the first `block` exponents by degrevlex first and
    breaks ties with degrevlex on the remaining ones, so the first `block`
    variables are eliminated.
    """

    kind: str = "degrevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown term order kind {self.kind!r}")
        if self.kind == "block" and self.block < 1:
            raise ValueError("block order needs block >= 1")

    def key(self, mono: Monomial):
        """Sort key; bigger key = bigger monomial."""
        if self.kind == "degrevlex":
            return _degrevlex_key(mono)
        if self.kind == "lex":
            return _lex_key(mono)
        k = self.block
        return _degrevlex_key(mono[:k]) + _degrevlex_key(mono[k:])

    def key_func(self) -> Callable[[Monomial], tuple]:
        if self.kind == "degrevlex":
            return _degrevlex_key
        if self.kind == "lex":
            return _lex_key
        k = self.block

        def _key(mono: Monomial):
            return _degrevlex_key(mono[:k]) + _degrevlex_key(mono[k:])

        return _key


DEGREVLEX = TermOrder("degrevlex")
LEX = TermOrder("lex")


def cmp_monomials(a: Monomial, b: Monomial, order: TermOrder = DEGREVLEX) -> int:
    """Compare two monomials under `order`; returns LT, EQ or GT."""
    if len(a) != len(b):
        raise RingMismatchError(f"exponent vectors of length {len(a)} and {len(b)}")
    ka, kb = order.key(a), order.key(b)
    if ka < kb:
        return LT
    if ka > kb:
        return GT
    return EQ


@dataclass(frozen=True)
class RingCtx:
    """Q[variables] with a default term order, read locally at the origin."""

    variables: tuple
    order: TermOrder = field(default=DEGREVLEX)

    def __post_init__(self):
        names = tuple(self.variables)
        object.__setattr__(self, "variables", names)
        if not (1 <= len(names) <= MAX_VARIABLES):
            raise ValueError(f"need 1..{MAX_VARIABLES} variables, got {len(names)}")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        for name in names:
            if not name.isidentifier() or name.startswith("_"):
                raise ValueError(f"bad variable name {name!r}")

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def one(self) -> Monomial:
        return (0,) * self.dimension

    def var_mono(self, i: int, power: int = 1) -> Monomial:
        e = [0] * self.dimension
        e[i] = power
        return tuple(e)

    def check_same(self, other: "RingCtx"):
        if self is other:
            return
        if self.variables != other.variables or self.order != other.order:
            raise RingMismatchError(f"{self} vs {other}")

    def format_monomial(self, mono: Monomial) -> str:
        parts = []
        for name, e in zip(self.variables, mono):
            if e == 0:
                continue
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"Q[{','.join(self.variables)}]"


def extended_ring(ring: RingCtx, aux: str = "_t") -> RingCtx:
    """Ring with one leading elimination variable, for internal t-tricks.

    Bypasses the public variable-count cap: the extension is never
    user-visible, all results are contracted back to `ring`.
    """
    ext = object.__new__(RingCtx)
    object.__setattr__(ext, "variables", (aux,) + ring.variables)
    object.__setattr__(ext, "order", TermOrder("block", block=1))
    return ext


def all_monomials_upto(dim: int, max_degree: int) -> Iterable[Monomial]:
    """All exponent vectors with total degree <= max_degree, degree-major."""
    def rec(prefix, remaining, slots):
        if slots == 1:
            yield prefix + (remaining,)
            return
        for e in range(remaining + 1):
            yield from rec(prefix + (e,), remaining - e, slots - 1)

    for deg in range(max_degree + 1):
        yield from rec((), deg, dim)
