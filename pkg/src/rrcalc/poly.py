"""Exact sparse multivariate polynomials over Q.

A polynomial is an immutable mapping monomial -> Fraction with no zero
coefficients.  All operations are pure; values can be shared freely.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .errors import ParseError, RingMismatchError
from .ring import Monomial, RingCtx, TermOrder


class Polynomial:
    __slots__ = ("ring", "_coeffs", "_hash")

    def __init__(self, ring: RingCtx, coeffs: dict | None = None):
        self.ring = ring
        clean = {}
        if coeffs:
            for mono, c in coeffs.items():
                if c:
                    clean[tuple(mono)] = c if isinstance(c, Fraction) else Fraction(c)
        self._coeffs = clean
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(ring: RingCtx) -> "Polynomial":
        return Polynomial(ring)

    @staticmethod
    def constant(ring: RingCtx, c) -> "Polynomial":
        return Polynomial(ring, {ring.one(): Fraction(c)})

    @staticmethod
    def one(ring: RingCtx) -> "Polynomial":
        return Polynomial.constant(ring, 1)

    @staticmethod
    def monomial(ring: RingCtx, mono: Monomial, coeff=1) -> "Polynomial":
        return Polynomial(ring, {tuple(mono): Fraction(coeff)})

    @staticmethod
    def variable(ring: RingCtx, name: str) -> "Polynomial":
        i = ring.variables.index(name)
        return Polynomial.monomial(ring, ring.var_mono(i))

    # -- predicates and views -----------------------------------------

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return not self._coeffs or (len(self._coeffs) == 1 and self.ring.one() in self._coeffs)

    def is_term(self) -> bool:
        return len(self._coeffs) == 1

    def is_monomial(self) -> bool:
        """Single term with coefficient 1."""
        return len(self._coeffs) == 1 and next(iter(self._coeffs.values())) == 1

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def coeff(self, mono: Monomial) -> Fraction:
        return self._coeffs.get(tuple(mono), Fraction(0))

    def total_degree(self) -> int:
        """Max total degree of a term; -1 for the zero polynomial."""
        if not self._coeffs:
            return -1
        return max(sum(m) for m in self._coeffs)

    def terms(self, order: TermOrder | None = None):
        """Terms as (monomial, coeff) pairs, strictly descending in `order`."""
        order = order or self.ring.order
        key = order.key_func()
        return [(m, self._coeffs[m]) for m in sorted(self._coeffs, key=key, reverse=True)]

    def leading_monomial(self, order: TermOrder | None = None) -> Monomial:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading monomial")
        key = (order or self.ring.order).key_func()
        return max(self._coeffs, key=key)

    def leading_coeff(self, order: TermOrder | None = None) -> Fraction:
        return self._coeffs[self.leading_monomial(order)]

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring is not other.ring:
            self.ring.check_same(other.ring)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.ring, other)
        self._check(other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.ring, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        if len(other._coeffs) < len(self._coeffs):
            self, other = other, self
        out = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial(self.ring, {m: c * v for m, v in self._coeffs.items()})

    def mul_monomial(self, mono: Monomial, coeff=1) -> "Polynomial":
        coeff = Fraction(coeff)
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): coeff * c for m, c in self._coeffs.items()},
        )

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def monic(self, order: TermOrder | None = None) -> "Polynomial":
        if not self._coeffs:
            return self
        lc = self.leading_coeff(order)
        if lc == 1:
            return self
        return self.scale(Fraction(1) / lc)

    # -- equality ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if self.is_constant():
                return self.coeff(self.ring.one()) == other
            return NotImplemented
        return self.ring.variables == other.ring.variables and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self._coeffs.items())))
        return self._hash

    # -- printing ------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"<{format_polynomial(self)}>"


def format_polynomial(p: Polynomial, order: TermOrder | None = None) -> str:
    """Canonical text form; parse(format(p)) == p bit-exactly."""
    if p.is_zero():
        return "0"
    ring = p.ring
    parts = []
    for i, (mono, c) in enumerate(p.terms(order)):
        neg = c < 0
        mag = -c if neg else c
        mono_s = ring.format_monomial(mono)
        if mono_s == "1":
            body = str(mag)
        elif mag == 1:
            body = mono_s
        else:
            body = f"{mag}*{mono_s}"
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


# -- parsing -----------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|([-+*^/(),\[\]=])|(\S))")


def tokenize(text: str, line: int = 1):
    """Tokens as (kind, value, line, col); kind in int/name/op."""
    tokens = []
    col_base = 0
    for lineno_off, raw in enumerate(text.split("\n")):
        pos = 0
        while pos < len(raw):
            m = _TOKEN_RE.match(raw, pos)
            if not m:
                break
            col = m.start(m.lastindex) + 1
            if m.group(1) is not None:
                tokens.append(("int", m.group(1), line + lineno_off, col))
            elif m.group(2) is not None:
                tokens.append(("name", m.group(2), line + lineno_off, col))
            elif m.group(3) is not None:
                tokens.append(("op", m.group(3), line + lineno_off, col))
            else:
                raise ParseError(line + lineno_off, col, "token", m.group(4))
            pos = m.end()
        col_base = len(raw) + 1
    tokens.append(("end", "", line + text.count("\n"), col_base + 1))
    return tokens


class _PolyParser:
    """Recursive-descent parser for the `coeff*mono` sum grammar."""

    def __init__(self, ring: RingCtx, tokens, pos=0):
        self.ring = ring
        self.tokens = tokens
        self.pos = pos

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, expected: str):
        kind, value, line, col = self.peek()
        raise ParseError(line, col, expected, value or kind)

    def parse_poly(self) -> Polynomial:
        coeffs = {}
        sign = 1
        kind, value, _, _ = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        while True:
            mono, c = self.parse_term()
            c *= sign
            m = tuple(mono)
            s = coeffs.get(m, 0) + c
            if s:
                coeffs[m] = s
            else:
                coeffs.pop(m, None)
            kind, value, _, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                sign = -1 if value == "-" else 1
                continue
            break
        return Polynomial(self.ring, coeffs)

    def parse_term(self):
        ring = self.ring
        mono = [0] * ring.dimension
        coeff = Fraction(1)
        saw_factor = False
        kind, value, _, _ = self.peek()
        if kind == "int":
            coeff = Fraction(self.parse_rational())
            saw_factor = True
            kind, value, _, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                kind, value, _, _ = self.peek()
                if kind != "name":
                    self.error("variable")
        while True:
            kind, value, _, _ = self.peek()
            if kind != "name":
                break
            if value not in ring.variables:
                self.error(f"variable in {ring.variables}")
            self.take()
            power = 1
            kind2, value2, _, _ = self.peek()
            if kind2 == "op" and value2 == "^":
                self.take()
                kind3, value3, _, _ = self.peek()
                if kind3 != "int":
                    self.error("exponent")
                power = int(self.take()[1])
            mono[ring.variables.index(value)] += power
            saw_factor = True
            kind2, value2, _, _ = self.peek()
            if kind2 == "op" and value2 == "*":
                self.take()
                kind3, _, _, _ = self.peek()
                if kind3 != "name":
                    self.error("variable")
        if not saw_factor:
            self.error("term")
        return tuple(mono), coeff

    def parse_rational(self) -> Fraction:
        kind, value, _, _ = self.peek()
        if kind != "int":
            self.error("number")
        num = int(self.take()[1])
        kind, value, _, _ = self.peek()
        if kind == "op" and value == "/":
            save = self.pos
            self.take()
            kind2, value2, _, _ = self.peek()
            if kind2 == "int":
                return Fraction(num, int(self.take()[1]))
            self.pos = save
        return Fraction(num)


def parse_polynomial(ring: RingCtx, text: str, line: int = 1) -> Polynomial:
    """Parse `text` in the polynomial grammar; raises ParseError on junk."""
    tokens = tokenize(text, line=line)
    parser = _PolyParser(ring, tokens)
    p = parser.parse_poly()
    kind, value, ln, col = parser.peek()
    if kind != "end":
        raise ParseError(ln, col, "end of polynomial", value)
    return p


def parse_polynomials(ring: RingCtx, texts: Iterable[str]) -> list:
    return [parse_polynomial(ring, t) for t in texts]


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    """Normalized sum (sorted, merged, zero-free by construction)."""
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Product with exact rational coefficients."""
    return p * q
