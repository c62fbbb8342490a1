"""Recursive-descent parser for classical polynomials, and the canonical printer.

Grammar (whitespace is ignored)::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor | '/' uint)*
    factor   := atom ('^' uint)?
    atom     := rational | 'i' | 'hbar' | var | '(' expr ')'
    rational := uint ('/' uint)?
    var      := ('q'|'p') index?          index is 1-based, default 1

Division is only by positive integer literals, so every accepted text is a
polynomial. The number of degrees of freedom is the largest index seen
(or ``dof`` if that is larger).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .classical import ClassicalPoly
from .exact import GaussianRational, HBarPolynomial
from .polybase import PhasePolynomial

__all__ = ["ParseError", "parse", "print_canonical", "MAX_EXPONENT", "MAX_INDEX"]

MAX_EXPONENT = 256
MAX_INDEX = 64

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>hbar|[qp]\d*|i)|(?P<op>[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, text: str):
        super().__init__(f"{message} at offset {offset}: {text!r}")
        self.offset = offset
        self.text = text


@dataclass
class _Token:
    kind: str
    value: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            off = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[off]!r}", _byte_offset(text, off), text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(_Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.dof = 1

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, _byte_offset(self.text, tok.offset), self.text)

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def accept(self, op: str) -> bool:
        tok = self.peek()
        if tok.kind == "op" and tok.value == op:
            self.pos += 1
            return True
        return False

    def uint(self, what: str, limit: int | None = None) -> int:
        tok = self.peek()
        if tok.kind != "num":
            self.error(f"expected {what}")
        self.pos += 1
        value = int(tok.value)
        if limit is not None and value > limit:
            self.error(f"{what} {value} exceeds limit {limit}", tok)
        return value

    # dof is only known after the whole text is read, so intermediate values use
    # sparse exponent keys (see _var_key) and are densified in parse()

    def expr(self) -> dict:
        negate = False
        if self.accept("-"):
            negate = True
        else:
            self.accept("+")
        acc = self.term()
        if negate:
            acc = _neg(acc)
        while True:
            if self.accept("+"):
                acc = _add(acc, self.term())
            elif self.accept("-"):
                acc = _add(acc, _neg(self.term()))
            else:
                return acc

    def term(self) -> dict:
        acc = self.factor()
        while True:
            if self.accept("*"):
                acc = _mul(acc, self.factor())
            elif self.accept("/"):
                tok = self.peek()
                d = self.uint("integer divisor")
                if d == 0:
                    self.error("division by zero", tok)
                acc = _scale(acc, GaussianRational(Fraction(1, d)))
            else:
                return acc

    def factor(self) -> dict:
        base = self.atom()
        if self.accept("^"):
            n = self.uint("exponent", MAX_EXPONENT)
            result = _const(GaussianRational(1))
            for _ in range(n):
                result = _mul(result, base)
            return result
        return base

    def atom(self) -> dict:
        tok = self.peek()
        if tok.kind == "num":
            self.pos += 1
            value = Fraction(int(tok.value))
            if self.peek().kind == "op" and self.peek().value == "/" and self.tokens[self.pos + 1].kind == "num":
                self.pos += 1
                dtok = self.peek()
                d = self.uint("denominator")
                if d == 0:
                    self.error("zero denominator", dtok)
                value /= d
            return _const(GaussianRational(value))
        if tok.kind == "name":
            self.pos += 1
            name = tok.value
            if name == "i":
                return _const(GaussianRational(0, 1))
            if name == "hbar":
                return {((), ()): HBarPolynomial({1: 1})}
            index = int(name[1:]) if len(name) > 1 else 1
            if index == 0:
                self.error("variable index must be >= 1", tok)
            if index > MAX_INDEX:
                self.error(f"variable index exceeds limit {MAX_INDEX}", tok)
            self.dof = max(self.dof, index)
            return {_var_key(name[0], index): HBarPolynomial.constant(1)}
        if self.accept("("):
            inner = self.expr()
            if not self.accept(")"):
                self.error("expected ')'")
            return inner
        if tok.kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected token {tok.value!r}")


# Sparse keys during parsing: (tuple of (index, exp) for q, same for p).

def _var_key(name: str, index: int):
    entry = ((index, 1),)
    return (entry, ()) if name == "q" else ((), entry)


def _const(c: GaussianRational) -> dict:
    return {((), ()): HBarPolynomial.constant(c)} if c else {}


def _merge(a, b):
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def _add(x: dict, y: dict) -> dict:
    out = dict(x)
    for k, c in y.items():
        v = out[k] + c if k in out else c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _neg(x: dict) -> dict:
    return {k: -c for k, c in x.items()}


def _scale(x: dict, g: GaussianRational) -> dict:
    return {k: c.scale(g) for k, c in x.items()} if g else {}


def _mul(x: dict, y: dict) -> dict:
    out: dict = {}
    for (qa, pa), ca in x.items():
        for (qb, pb), cb in y.items():
            k = (_merge(qa, qb), _merge(pa, pb))
            v = ca * cb
            out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if v}


def _dense(sparse, dof: int) -> tuple[int, ...]:
    exps = [0] * dof
    for i, e in sparse:
        if e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} exceeds limit {MAX_EXPONENT}")
        exps[i - 1] = e
    return tuple(exps)


def parse(text: str, dof: int | None = None) -> ClassicalPoly:
    """Parse ``text`` into a :class:`ClassicalPoly`.

    Raises :class:`ParseError` (with a byte offset) on malformed input.
    """
    p = _Parser(text)
    result = p.expr()
    if p.peek().kind != "end":
        p.error(f"unexpected token {p.peek().value!r}")
    n = max(p.dof, dof or 1)
    try:
        terms = {(_dense(qa, n), _dense(pa, n)): c for (qa, pa), c in result.items()}
    except OverflowError as exc:
        raise ParseError(str(exc), 0, text) from None
    return ClassicalPoly(n, terms)


def print_canonical(F: PhasePolynomial) -> str:
    """Deterministic text form; ``parse(print_canonical(F), F.dof) == F`` for classical F."""
    return str(F)
