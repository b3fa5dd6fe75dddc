"""Surface syntax for polynomials in ``a`` and ``ad``.

Grammar::

    expr     := ["+" | "-"] term (("+" | "-") term)*
    term     := rational factor* | factor+
    factor   := base ["^" uint]
    base     := "a" | "ad" | "a†" | "(" expr ")"
    rational := uint ["/" uint]

Juxtaposition is the operator product in written order, so ``a ad`` and
``ad a`` are different. A term that is just a rational is a multiple of the
identity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ._numeric import max_terms
from .errors import ExpressionSyntaxError, OutOfRangeError
from .weyl import ANNIHILATE, CREATE, Generator, NormalForm, Word, exact, multiply, power

__all__ = ["Expr", "Term", "Factor", "parse", "to_string", "to_normal_form", "to_words"]


@dataclass(frozen=True)
class Factor:
    base: Union[Generator, "Expr"]
    power: int = 1


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    factors: tuple[Factor, ...] = ()


@dataclass(frozen=True)
class Expr:
    terms: tuple[Term, ...]


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_†][A-Za-z0-9_†]*)|(?P<op>[-+^/()]))")
_NAMES = {"a": ANNIHILATE, "ad": CREATE, "a†": CREATE}

_FACTOR_START = {"'a'", "'ad'", "'('"}
_TERM_START = _FACTOR_START | {"integer"}


@dataclass
class _Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            if not rest.strip():
                tokens.append(_Token("end", "", len(text)))
                return tokens
            bad = pos + len(rest) - len(rest.lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[bad]!r}", bad, _TERM_START)
        kind = m.lastgroup
        tokens.append(_Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def fail(self, expected) -> ExpressionSyntaxError:
        tok = self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        return ExpressionSyntaxError(f"unexpected {found}", tok.pos, expected)

    def take_op(self, ops: str) -> str | None:
        if self.tok.kind == "op" and self.tok.text in ops:
            self.i += 1
            return self.tok_prev.text
        return None

    @property
    def tok_prev(self) -> _Token:
        return self.tokens[self.i - 1]

    def uint(self) -> int:
        if self.tok.kind != "int":
            raise self.fail({"integer"})
        self.i += 1
        return int(self.tok_prev.text)

    def expr(self, closing: str | None) -> Expr:
        follow = {"')'"} if closing else {"end of input"}
        sign = self.take_op("+-") or "+"
        terms = [self.term(sign, follow)]
        while True:
            sign = self.take_op("+-")
            if sign is None:
                break
            terms.append(self.term(sign, follow))
        return Expr(tuple(terms))

    def term(self, sign: str, follow: set) -> Term:
        coeff = Fraction(1)
        explicit = False
        if self.tok.kind == "int":
            num = self.uint()
            den = 1
            if self.take_op("/"):
                at = self.tok.pos
                den = self.uint()
                if den == 0:
                    raise ExpressionSyntaxError("zero denominator", at, ())
            coeff = Fraction(num, den)
            explicit = True
        factors = []
        while self.starts_factor():
            factors.append(self.factor())
        if not factors and not explicit:
            raise self.fail(_TERM_START)
        enders = "+-)" if "')'" in follow else "+-"
        at_end = self.tok.kind == "end" and "end of input" in follow
        if not at_end and not (self.tok.kind == "op" and self.tok.text in enders):
            expected = _FACTOR_START | {"'+'", "'-'"} | follow
            if explicit and not factors:
                expected |= {"'/'"}
            if factors and self.tokens[self.i - 2].text != "^":
                expected |= {"'^'"}
            raise self.fail(expected)
        return Term(-coeff if sign == "-" else coeff, tuple(factors))

    def starts_factor(self) -> bool:
        tok = self.tok
        return (tok.kind == "name" and tok.text in _NAMES) or (tok.kind == "op" and tok.text == "(")

    def factor(self) -> Factor:
        tok = self.tok
        if tok.kind == "name":
            self.i += 1
            base: Generator | Expr = _NAMES[tok.text]
        else:
            self.i += 1
            base = self.expr(")")
            if not self.take_op(")"):
                raise self.fail({"')'", "'+'", "'-'", "'^'"} | _FACTOR_START)
        power = self.uint() if self.take_op("^") else 1
        return Factor(base, power)


def parse(text: str) -> Expr:
    """Parse ``text`` into an :class:`Expr`; raises :class:`ExpressionSyntaxError`."""
    if not text.strip():
        raise ExpressionSyntaxError("empty expression", 0, _TERM_START)
    parser = _Parser(text)
    for tok in parser.tokens:
        if tok.kind == "name" and tok.text not in _NAMES:
            raise ExpressionSyntaxError(f"unknown name {tok.text!r}", tok.pos, _TERM_START)
    expr = parser.expr(None)
    if parser.tok.kind != "end":
        raise parser.fail({"end of input", "'+'", "'-'"})
    return expr


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _factor_str(f: Factor) -> str:
    base = f.base.value if isinstance(f.base, Generator) else f"({to_string(f.base)})"
    return base if f.power == 1 else f"{base}^{f.power}"


def to_string(expr: Expr) -> str:
    """Canonical text: single spaces, unit coefficients omitted."""
    out = ""
    for i, term in enumerate(expr.terms):
        c = term.coeff
        if i:
            out += " - " if c < 0 else " + "
        elif c < 0:
            out += "-"
        parts = [] if abs(c) == 1 and term.factors else [_coeff_str(abs(c))]
        out += " ".join(parts + [_factor_str(f) for f in term.factors])
    return out


def to_normal_form(expr: Expr) -> NormalForm:
    """Normal order ``expr`` by multiplying normal forms bottom up."""
    total = NormalForm()
    for term in expr.terms:
        acc = NormalForm.identity().scale(exact(term.coeff))
        for f in term.factors:
            if isinstance(f.base, Generator):
                r = 1 if f.base is CREATE else 0
                piece = NormalForm.monomial(r * f.power, (1 - r) * f.power)
            else:
                piece = power(to_normal_form(f.base), f.power)
            acc = multiply(acc, piece)
        total = total + acc
    return total


def to_words(expr: Expr) -> dict[Word, object]:
    """Expand ``expr`` into a linear combination of words, without reordering.

    Raises :class:`OutOfRangeError` when the expansion would exceed the
    ``BOSONORDER_MAX_TERMS`` cap.
    """
    cap = max_terms()
    combo: dict[tuple, object] = {}
    for term in expr.terms:
        partial: dict[tuple, object] = {(): exact(term.coeff)}
        for f in term.factors:
            if isinstance(f.base, Generator):
                options = {(f.base,) * f.power: 1}
            else:
                inner = {w.letters: c for w, c in to_words(f.base).items()}
                options = {(): 1}
                for _ in range(f.power):
                    options = _product(options, inner, cap)
            partial = _product(partial, options, cap)
        for letters, c in partial.items():
            combo[letters] = combo.get(letters, 0) + c
    return {Word(k): exact(c) for k, c in combo.items() if c}


def _product(left: dict, right: dict, cap: int) -> dict:
    if len(left) * len(right) > cap:
        raise OutOfRangeError(f"word expansion exceeds {cap} terms (BOSONORDER_MAX_TERMS)")
    out: dict = {}
    for u, cu in left.items():
        for v, cv in right.items():
            out[u + v] = out.get(u + v, 0) + cu * cv
    return out
