"""Expression grammar: parsing and canonical printing.

Grammar: identifiers, integer literals, the literal ``i``, binary ``+ - * /``,
``^`` with nonnegative integer exponents, parentheses, unary minus.  A number
immediately followed by an identifier or ``(`` multiplies implicitly, so
exact Gaussian constants like ``3/2+1/2i`` read naturally.

The printer emits graded-lex descending terms; ``parse(print(v)) == v``.
"""

from __future__ import annotations

from .algebra.gaussian import GaussRational, format_gauss
from .algebra.polynomial import MultiPoly
from .algebra.rational import ParamRatio
from .errors import ParseError, UnboundNameError

_OPS = set("+-*/^()")


def _tokenize(text: str):
    tokens = []  # (kind, value, pos)
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            tokens.append(("int", int(text[start:pos]), start))
            # implicit multiplication: 2i, 2x, 2(
            if pos < n and (text[pos].isalpha() or text[pos] == "_" or text[pos] == "("):
                tokens.append(("op", "*", pos))
            continue
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            tokens.append(("name", text[start:pos], start))
            continue
        if ch in _OPS:
            tokens.append(("op", ch, pos))
            pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", pos)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str, names=None):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0
        self.names = None if names is None else set(names) | {"i"}

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> ParamRatio:
        v = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return v

    def expr(self) -> ParamRatio:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            v = self.term()
            if val == "-":
                v = -v
        else:
            v = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                v = v + rhs if val == "+" else v - rhs
            else:
                return v

    def term(self) -> ParamRatio:
        v = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.factor()
                if val == "*":
                    v = v * rhs
                else:
                    if rhs.is_zero():
                        raise ParseError("division by zero", pos)
                    v = v / rhs
            else:
                return v

    def factor(self) -> ParamRatio:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            v = self.factor()
            return -v if val == "-" else v
        v = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            ekind, eval_, epos = self.take()
            if ekind != "int":
                raise ParseError("exponent must be a nonnegative integer literal", epos)
            v = v ** eval_
        return v

    def atom(self) -> ParamRatio:
        kind, val, pos = self.take()
        if kind == "int":
            return ParamRatio.from_value(val)
        if kind == "name":
            if val == "i":
                return ParamRatio.from_value(GaussRational(0, 1))
            if self.names is not None and val not in self.names:
                raise ParseError(f"unknown identifier {val!r}", pos)
            return ParamRatio.variable(val)
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        raise ParseError("expected a value", pos)


def parse_expr(text: str, names=None) -> ParamRatio:
    """Parse to a reduced rational function.

    names: optional iterable of allowed identifiers (``i`` always allowed);
    anything else raises ParseError with its position.
    """
    return _Parser(text, names).parse()


def parse_poly(text: str, names=None) -> MultiPoly:
    v = parse_expr(text, names)
    if not v.is_polynomial():
        raise ParseError("expected a polynomial (no division by variables)")
    return v.as_poly()


def parse_gauss(text: str) -> GaussRational:
    """Exact Gaussian-rational constant, e.g. ``3/2+1/2i``; floats rejected."""
    v = parse_expr(text, names=())
    if not v.is_constant():
        raise ParseError("expected a constant")
    return v.constant_value()


# ---------------------------------------------------------------------------
# Canonical printing
# ---------------------------------------------------------------------------


def _format_coeff(c: GaussRational, lead: bool):
    """Return (sign, body) where body omits a unit coefficient."""
    if c.im != 0 and c.re != 0:
        return "+", f"({format_gauss(c)})"
    if c.im != 0:
        if c.im == 1:
            return "+", "i"
        if c.im == -1:
            return "-", "i"
        s = format_gauss(GaussRational(0, abs(c.im)))
        return ("-" if c.im < 0 else "+"), s.replace("*i", "*i")
    sign = "-" if c.re < 0 else "+"
    mag = abs(c.re)
    return sign, ("" if mag == 1 else str(mag))


def _format_monomial(vars, exps) -> str:
    parts = []
    for v, e in zip(vars, exps):
        if e == 0:
            continue
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def format_poly(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
    out = []
    for exps, coeff in items:
        mono = _format_monomial(p.vars, exps)
        sign, body = _format_coeff(coeff, lead=not out)
        if not mono:
            text = body if body else "1"
        elif not body:
            text = mono
        else:
            text = f"{body}*{mono}"
        if not out:
            out.append(text if sign == "+" else f"-{text}")
        else:
            out.append(f" {sign} {text}")
    return "".join(out)


def format_ratio(r: ParamRatio) -> str:
    num = format_poly(r.num)
    if r.den.is_constant() and r.den.constant_value().is_one():
        return num
    return f"({num})/({format_poly(r.den)})"
