"""Text grammar for gr^op morphisms and their linear combinations.

    lin   := '0' | term (('+' | '-') term)*
    term  := ['-'] [coef '*'] morph
    coef  := int | int '/' int
    morph := '[' [word ('|' word)*] ']' '_' int
    word  := 'e' | (x<k> ['^' ['-'] int])+

Whitespace between tokens is ignored.  The printer groups runs of a letter
into powers and lists terms leading-first (descending canonical order).
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import ParseError
from ..exactla import QQ, FieldSpec
from .words import GropMorphism, LinMorphism, power_word, reduce_word


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def word(self) -> tuple:
        letters: list = []
        seen_any = False
        while True:
            ch = self.peek()
            if ch == "e":
                self.pos += 1
                seen_any = True
            elif ch == "x":
                self.pos += 1
                var = self.integer()
                if var < 1:
                    self.error("variable index must be at least 1")
                exp = 1
                if self.peek() == "^":
                    self.pos += 1
                    sign = 1
                    if self.peek() == "-":
                        self.pos += 1
                        sign = -1
                    exp = sign * self.integer()
                letters.extend(power_word(var, exp))
                seen_any = True
            else:
                break
        if not seen_any:
            self.error("expected a word (use 'e' for the empty word)")
        return reduce_word(letters)

    def morph(self) -> GropMorphism:
        self.expect("[")
        words = []
        if self.peek() != "]":
            words.append(self.word())
            while self.peek() == "|":
                self.pos += 1
                words.append(self.word())
        self.expect("]")
        self.expect("_")
        n = self.integer()
        start = self.pos
        try:
            return GropMorphism(n, words)
        except ValueError as exc:
            self.pos = start
            self.error(str(exc))

    def coefficient(self):
        num = self.integer()
        if self.peek() == "/":
            self.pos += 1
            den = self.integer()
            if den == 0:
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def term(self):
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        elif self.peek() == "+":
            self.pos += 1
        coef = Fraction(1)
        if self.peek().isdigit():
            coef = self.coefficient()
            self.expect("*")
        return self.morph(), sign * coef

    def lin(self):
        if self.peek() == "0":
            save = self.pos
            self.pos += 1
            if self.peek() == "":
                return []
            self.pos = save
        terms = [self.term()]
        while self.peek() in ("+", "-"):
            terms.append(self.term())
        if self.peek() != "":
            self.error("unexpected trailing input")
        return terms


def parse_morphism(text: str) -> GropMorphism:
    p = _Parser(text)
    m = p.morph()
    if p.peek() != "":
        p.error("unexpected trailing input")
    return m


def parse_lin(text: str, field: FieldSpec = QQ, shape: tuple | None = None) -> LinMorphism:
    terms = _Parser(text).lin()
    if not terms:
        if shape is None:
            return LinMorphism.zero(0, 0, field)
        return LinMorphism.zero(shape[0], shape[1], field)
    src, tgt = terms[0][0].source, terms[0][0].target
    for g, _ in terms:
        if (g.source, g.target) != (src, tgt):
            raise ParseError(f"summand {format_morphism(g)} has a different shape", text, 0)
    return LinMorphism(src, tgt, [(g, c) for g, c in terms], field)


def format_word(w) -> str:
    if not w:
        return "e"
    out, i = [], 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        run = j - i
        var, neg = abs(w[i]), w[i] < 0
        exp = -run if neg else run
        out.append(f"x{var}" if exp == 1 else f"x{var}^{exp}")
        i = j
    return "".join(out)


def format_morphism(g: GropMorphism) -> str:
    return "[" + "|".join(format_word(w) for w in g.words) + f"]_{g.source}"


def format_lin(f: LinMorphism) -> str:
    if not f.terms:
        return "0"
    parts = []
    for k, (g, c) in enumerate(sorted(f.terms.items(), key=lambda kv: kv[0].sort_key(), reverse=True)):
        c = _signed(c, f.field)
        neg = c < 0
        mag = -c if neg else c
        body = format_morphism(g) if mag == 1 else f"{_fmt(mag)}*{format_morphism(g)}"
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def _signed(c, field: FieldSpec):
    """Rational value, or for F_p the residue shown in (-p/2, p/2]."""
    p = field.characteristic
    if p:
        c = int(c)
        return Fraction(c - p if c > p // 2 else c)
    return Fraction(c)


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
