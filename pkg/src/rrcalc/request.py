"""Line-oriented input grammar: ring / ideal / element declarations.

    # comments run to end of line
    ring Q[x,y]
    ideal I = x^6, x^4*y, x*y^5, y^6
    element p = x^4*y + y^6

Several `ideal` lines are allowed (distinct names); analyses run on `I`
(or the first one declared) and other ideals can serve as explicit
reductions.  Errors carry (line, col, expected).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError
from .ideals import Ideal
from .poly import Polynomial, _PolyParser, tokenize
from .ring import RingCtx


@dataclass
class AnalysisRequest:
    ring: RingCtx
    ideals: dict = field(default_factory=dict)  # name -> Ideal, insertion order
    element_name: str | None = None
    element: Polynomial | None = None

    @property
    def main_ideal(self) -> Ideal:
        if "I" in self.ideals:
            return self.ideals["I"]
        return next(iter(self.ideals.values()))


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def _expect(tokens, pos, kind, value=None, what=None):
    k, v, ln, col = tokens[pos]
    if k != kind or (value is not None and v != value):
        raise ParseError(ln, col, what or (value or kind), v or k)
    return v, pos + 1


def parse_request(text: str) -> AnalysisRequest:
    ring: RingCtx | None = None
    ideals: dict = {}
    element_name = None
    element = None
    last_line = 0

    for lineno, raw in enumerate(text.split("\n"), start=1):
        last_line = lineno
        line = _strip_comment(raw)
        if not line.strip():
            continue
        tokens = tokenize(line, line=lineno)
        kind, keyword, ln, col = tokens[0]
        if kind != "name":
            raise ParseError(ln, col, "ring/ideal/element declaration", keyword or kind)

        if keyword == "ring":
            _, pos = _expect(tokens, 1, "name", "Q", "base field Q")
            _, pos = _expect(tokens, pos, "op", "[", "'['")
            names = []
            while True:
                name, pos = _expect(tokens, pos, "name", what="variable name")
                names.append(name)
                k, v, _, _ = tokens[pos]
                if k == "op" and v == ",":
                    pos += 1
                    continue
                break
            _, pos = _expect(tokens, pos, "op", "]", "']'")
            _expect(tokens, pos, "end", what="end of line")
            try:
                ring = RingCtx(tuple(names))
            except ValueError as exc:
                raise ParseError(ln, col, str(exc)) from exc

        elif keyword == "ideal":
            if ring is None:
                raise ParseError(ln, col, "ring declaration before ideal")
            name, pos = _expect(tokens, 1, "name", what="ideal name")
            _, pos = _expect(tokens, pos, "op", "=", "'='")
            gens = []
            parser = _PolyParser(ring, tokens, pos)
            while True:
                gens.append(parser.parse_poly())
                k, v, pln, pcol = parser.peek()
                if k == "op" and v == ",":
                    parser.take()
                    continue
                if k == "end":
                    break
                raise ParseError(pln, pcol, "',' or end of line", v)
            if name in ideals:
                raise ParseError(ln, col, f"fresh ideal name (got duplicate {name!r})")
            ideals[name] = Ideal(ring, gens)

        elif keyword == "element":
            if ring is None:
                raise ParseError(ln, col, "ring declaration before element")
            name, pos = _expect(tokens, 1, "name", what="element name")
            _, pos = _expect(tokens, pos, "op", "=", "'='")
            parser = _PolyParser(ring, tokens, pos)
            poly = parser.parse_poly()
            k, v, pln, pcol = parser.peek()
            if k != "end":
                raise ParseError(pln, pcol, "end of line", v)
            element_name, element = name, poly

        else:
            raise ParseError(ln, col, "ring/ideal/element", keyword)

    if ring is None:
        raise ParseError(last_line + 1, 1, "ring declaration")
    if not ideals:
        raise ParseError(last_line + 1, 1, "ideal declaration")
    return AnalysisRequest(
        ring=ring, ideals=ideals, element_name=element_name, element=element
    )
