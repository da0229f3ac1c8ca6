"""Parser for interval-set literals such as ``[0,1/2) ∪ [2/3,1)``.

Grammar (whitespace is insignificant)::

    setexpr  := "∅" | "empty" | term (("∪" | "U") term)*
    term     := "[" rational "," rational ")"
    rational := integer "/" positive-integer | integer
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ParseError
from .intervals import IntervalSet, normalize

__all__ = ["parse_setexpr"]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self, token: str) -> bool:
        self.skip_ws()
        return self.text.startswith(token, self.pos)

    def expect(self, token: str):
        if not self.peek(token):
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise ParseError(f"expected {token!r}, found {found!r}", self.pos)
        self.pos += len(token)

    def integer(self, allow_sign: bool = True) -> int:
        self.skip_ws()
        start = self.pos
        if allow_sign and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def rational(self) -> Fraction:
        num = self.integer()
        if self.peek("/"):
            self.pos += 1
            self.skip_ws()
            at = self.pos
            den = self.integer(allow_sign=False)
            if den == 0:
                raise ParseError("denominator must be positive", at)
            return Fraction(num, den)
        return Fraction(num)

    def term(self) -> tuple[Fraction, Fraction]:
        self.expect("[")
        lo = self.rational()
        self.expect(",")
        hi = self.rational()
        self.expect(")")
        return lo, hi

    def setexpr(self) -> IntervalSet:
        if self.peek("∅"):
            self.pos += 1
        elif self.peek("empty"):
            self.pos += len("empty")
        else:
            terms = [self.term()]
            while self.peek("∪") or self.peek("U"):
                self.pos += 1
                terms.append(self.term())
            if not self.at_end():
                raise ParseError("unexpected trailing input", self.pos)
            return normalize(terms)
        if not self.at_end():
            raise ParseError("unexpected trailing input", self.pos)
        return IntervalSet.empty()


def parse_setexpr(text: str) -> IntervalSet:
    """Parse and normalize an interval-set literal.

    Raises :class:`ParseError` (with the offending position) on syntax errors
    and :class:`MalformedInterval` for intervals with ``lo >= hi`` or bounds
    outside ``[0, 1]``.
    """
    return _Parser(text).setexpr()
