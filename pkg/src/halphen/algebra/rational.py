"""Rational functions num/den over Q(i) in named variables, kept reduced.

Canonical form: gcd(num, den) = 1 and den has graded-lex leading coefficient
one, so equality of values is plain structural equality.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import PoleError, ZeroDenominatorError
from .gaussian import GaussRational
from .polynomial import MultiPoly, poly_gcd, poly_lcm


class ParamRatio:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        num = _as_poly(num)
        den = MultiPoly.constant(1) if den is None else _as_poly(den)
        if _reduced:
            object.__setattr__(self, "num", num)
            object.__setattr__(self, "den", den)
            return
        if den.is_zero():
            raise ZeroDenominatorError("zero denominator")
        if num.is_zero():
            object.__setattr__(self, "num", MultiPoly())
            object.__setattr__(self, "den", MultiPoly.constant(1))
            return
        g = poly_gcd(num, den)
        if not (g.is_constant() and g.constant_value().is_one()):
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.leading_coeff()
        if not lc.is_one():
            inv = lc.inverse()
            num = num.map_coeffs(lambda c: c * inv)
            den = den.map_coeffs(lambda c: c * inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("ParamRatio is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_value(cls, v) -> "ParamRatio":
        if isinstance(v, ParamRatio):
            return v
        return cls(_as_poly(v))

    @classmethod
    def variable(cls, name: str) -> "ParamRatio":
        return cls(MultiPoly.variable(name))

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MultiPoly:
        if not self.den.is_constant():
            raise ValueError("not a polynomial")
        return self.num.exact_div(self.den)

    def constant_value(self) -> GaussRational:
        return self.num.constant_value() / self.den.constant_value()

    def variables(self):
        return tuple(sorted(set(self.num.vars) | set(self.den.vars)))

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        other = ParamRatio.from_value(other)
        if self.den == other.den:
            return ParamRatio(self.num + other.num, self.den)
        return ParamRatio(self.num * other.den + other.num * self.den,
                          self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ParamRatio(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-ParamRatio.from_value(other))

    def __rsub__(self, other):
        return ParamRatio.from_value(other) - self

    def __mul__(self, other):
        other = ParamRatio.from_value(other)
        return ParamRatio(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ParamRatio.from_value(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return ParamRatio(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return ParamRatio.from_value(other) / self

    def inverse(self) -> "ParamRatio":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return ParamRatio(self.den, self.num)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return ParamRatio(self.num ** n, self.den ** n)

    # -- substitution / evaluation ---------------------------------------------------

    def substitute(self, repl: dict) -> "ParamRatio":
        """Substitute ParamRatio (or poly/scalar) values for variables."""
        repl = {k: ParamRatio.from_value(v) for k, v in repl.items()}
        n = compose_rational(self.num, repl)
        d = compose_rational(self.den, repl)
        if d.is_zero():
            raise ZeroDenominatorError("substitution makes the denominator vanish")
        return n / d

    def eval(self, bindings: dict) -> GaussRational:
        d = self.den.eval(bindings)
        if d.is_zero():
            n = self.num.eval(bindings)
            kind = "indeterminate 0/0" if n.is_zero() else "pole"
            raise PoleError(f"{kind} at the given binding")
        return self.num.eval(bindings) / d

    def eval_partial(self, bindings: dict) -> "ParamRatio":
        d = self.den.eval_partial(bindings)
        if d.is_zero():
            raise PoleError("denominator vanishes identically at the given binding")
        return ParamRatio(self.num.eval_partial(bindings), d)

    # -- comparison -------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational, MultiPoly)):
            other = ParamRatio.from_value(other)
        if not isinstance(other, ParamRatio):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        from ..exprio import format_ratio
        return format_ratio(self)

    __str__ = __repr__


def _as_poly(v) -> MultiPoly:
    if isinstance(v, MultiPoly):
        return v
    if isinstance(v, ParamRatio):
        return v.as_poly()
    return MultiPoly.constant(v)


def ratfunc_normalize(num: MultiPoly, den: MultiPoly) -> ParamRatio:
    """Canonical reduced form of num/den (errors on a zero denominator)."""
    return ParamRatio(num, den)


def compose_rational(p: MultiPoly, repl: dict) -> ParamRatio:
    """p with rational functions substituted for variables.

    Denominators are cleared once per variable rather than per operation:
    for x -> A/B the term x^e contributes A^e B^(dx-e), all over B^dx.
    """
    repl = {k: ParamRatio.from_value(v) for k, v in repl.items() if k in p.vars}
    if not repl:
        return ParamRatio(p)
    if p.is_zero():
        return ParamRatio(0)
    degs = {v: p.degree(v) for v in repl}
    num = MultiPoly()
    pow_cache = {}

    def power(key, base, e):
        if (key, e) not in pow_cache:
            pow_cache[(key, e)] = base ** e
        return pow_cache[(key, e)]

    for e, c in p.terms.items():
        term = MultiPoly.constant(c)
        for var, exp in zip(p.vars, e):
            if var in repl:
                r = repl[var]
                term = term * power((var, "n"), r.num, exp)
                term = term * power((var, "d"), r.den, degs[var] - exp)
            elif exp:
                term = term * power((var, "v"), MultiPoly.variable(var), exp)
        num = num + term
    den = MultiPoly.constant(1)
    for var, r in repl.items():
        den = den * power((var, "d"), r.den, degs[var])
    return ParamRatio(num, den)
