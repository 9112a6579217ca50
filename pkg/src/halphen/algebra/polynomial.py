"""Sparse multivariate polynomials over the Gaussian rationals.

Terms are stored as a map from exponent tuples to nonzero GaussRational
coefficients.  The variable list is kept sorted and pruned so that equal
polynomials built along different routes compare equal.  The term order
used throughout (leading terms, canonical normalisation) is graded
lexicographic on the sorted variable list.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd as int_gcd

from ..errors import NonDivisibleError, PoleError, UnboundNameError
from .gaussian import GaussRational, ONE, ZERO


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars=(), terms=None, _normalized=False):
        if _normalized:
            object.__setattr__(self, "vars", vars)
            object.__setattr__(self, "terms", terms or {})
            return
        terms = terms or {}
        clean = {e: c for e, c in terms.items() if not c.is_zero()}
        vars = tuple(vars)
        # prune variables that never occur, then sort
        used = [i for i in range(len(vars)) if any(e[i] for e in clean)]
        names = tuple(vars[i] for i in used)
        order = sorted(range(len(names)), key=lambda i: names[i])
        sorted_names = tuple(names[i] for i in order)
        remapped = {}
        for e, c in clean.items():
            key = tuple(e[used[i]] for i in order)
            remapped[key] = c
        object.__setattr__(self, "vars", sorted_names)
        object.__setattr__(self, "terms", remapped)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def constant(cls, c) -> "MultiPoly":
        c = GaussRational.from_value(c)
        if c.is_zero():
            return cls((), {}, _normalized=True)
        return cls((), {(): c}, _normalized=True)

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        return cls((name,), {(1,): ONE}, _normalized=True)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> GaussRational:
        if self.vars:
            raise ValueError("not a constant polynomial")
        return self.terms.get((), ZERO)

    def __bool__(self):
        return bool(self.terms)

    # -- alignment --------------------------------------------------------

    def with_vars(self, vars: tuple) -> "MultiPoly":
        """Re-express over a superset of variables (already sorted)."""
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        idx = [pos[v] for v in self.vars]
        n = len(vars)
        terms = {}
        for e, c in self.terms.items():
            key = [0] * n
            for i, exp in zip(idx, e):
                key[i] = exp
            terms[tuple(key)] = c
        return MultiPoly(vars, terms, _normalized=True)

    @staticmethod
    def _aligned(p: "MultiPoly", q: "MultiPoly"):
        if p.vars == q.vars:
            return p.vars, p.terms, q.terms
        vars = tuple(sorted(set(p.vars) | set(q.vars)))
        return vars, p.with_vars(vars).terms, q.with_vars(vars).terms

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        vars, a, b = MultiPoly._aligned(self, other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, ZERO) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()},
                         _normalized=True)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return MultiPoly()
        if other.is_constant():
            c = other.constant_value()
            return MultiPoly(self.vars,
                             {e: k * c for e, k in self.terms.items()},
                             _normalized=True)
        if self.is_constant():
            return other * self
        vars, a, b = MultiPoly._aligned(self, other)
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(key, ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return MultiPoly(vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- structure ----------------------------------------------------------

    def degree(self, var: str) -> int:
        """Exact degree in one variable; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return max(sum(e) for e in self.terms)

    def min_exponents(self):
        """Per-variable minimum exponent (the monomial content)."""
        if self.is_zero():
            return {}
        mins = None
        for e in self.terms:
            mins = e if mins is None else tuple(min(a, b) for a, b in zip(mins, e))
        return dict(zip(self.vars, mins))

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        key = max(self.terms, key=lambda e: (sum(e), e))
        return key, self.terms[key]

    def leading_coeff(self) -> GaussRational:
        return self.leading()[1]

    def monic(self) -> "MultiPoly":
        if self.is_zero():
            return self
        lc = self.leading_coeff()
        if lc.is_one():
            return self
        inv = lc.inverse()
        return MultiPoly(self.vars, {e: c * inv for e, c in self.terms.items()},
                         _normalized=True)

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    def coeff_of(self, var: str, power: int) -> "MultiPoly":
        """Coefficient of var**power, as a polynomial in the other variables."""
        if var not in self.vars:
            return self if power == 0 else MultiPoly()
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        terms = {}
        for e, c in self.terms.items():
            if e[i] == power:
                terms[e[:i] + e[i + 1:]] = c
        return MultiPoly(rest, terms)

    def as_univariate(self, var: str):
        """Dense coefficient list [c0, c1, ...] in var, entries MultiPoly."""
        d = self.degree(var)
        return [self.coeff_of(var, k) for k in range(max(d, 0) + 1)]

    def derivative(self, var: str) -> "MultiPoly":
        if var not in self.vars:
            return MultiPoly()
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            key = e[:i] + (e[i] - 1,) + e[i + 1:]
            terms[key] = c * e[i]
        return MultiPoly(self.vars, terms)

    # -- substitution ----------------------------------------------------------

    def subs_poly(self, repl: dict) -> "MultiPoly":
        """Substitute polynomials (or scalars) for variables."""
        repl = {k: _coerce(v) for k, v in repl.items()}
        out = MultiPoly()
        cache = {}
        for e, c in self.terms.items():
            term = MultiPoly.constant(c)
            for v, exp in zip(self.vars, e):
                if exp == 0:
                    continue
                base = repl.get(v, MultiPoly.variable(v))
                key = (v, exp)
                if key not in cache:
                    cache[key] = base ** exp
                term = term * cache[key]
            out = out + term
        return out

    def eval(self, bindings: dict) -> GaussRational:
        """Full evaluation; every variable must be bound."""
        missing = [v for v in self.vars if v not in bindings]
        if missing:
            raise UnboundNameError(f"unbound variable(s): {', '.join(missing)}")
        total = ZERO
        vals = [GaussRational.from_value(bindings[v]) for v in self.vars]
        powers = [dict() for _ in self.vars]
        for e, c in self.terms.items():
            prod = c
            for i, exp in enumerate(e):
                if exp == 0:
                    continue
                p = powers[i].get(exp)
                if p is None:
                    p = vals[i] ** exp
                    powers[i][exp] = p
                prod = prod * p
            total = total + prod
        return total

    def eval_partial(self, bindings: dict) -> "MultiPoly":
        repl = {k: MultiPoly.constant(GaussRational.from_value(v))
                for k, v in bindings.items() if k in self.vars}
        if not repl:
            return self
        return self.subs_poly(repl)

    # -- exact division -----------------------------------------------------------

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient self/other when the division is exact, else NonDivisibleError."""
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return MultiPoly()
        if other.is_constant():
            inv = other.constant_value().inverse()
            return self.map_coeffs(lambda c: c * inv)
        vars, a, b = MultiPoly._aligned(self, other)
        rem = dict(a)
        lead_b = max(b, key=lambda e: (sum(e), e))
        lc_b = b[lead_b]
        quot = {}
        while rem:
            lead_r = max(rem, key=lambda e: (sum(e), e))
            diff = tuple(x - y for x, y in zip(lead_r, lead_b))
            if any(d < 0 for d in diff):
                raise NonDivisibleError("polynomial division is not exact")
            q = rem[lead_r] * lc_b.inverse()
            quot[diff] = q
            for e, c in b.items():
                key = tuple(x + y for x, y in zip(diff, e))
                s = rem.get(key, ZERO) - q * c
                if s.is_zero():
                    rem.pop(key, None)
                else:
                    rem[key] = s
        return MultiPoly(vars, quot)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except NonDivisibleError:
            return False

    # -- comparison -------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        from ..exprio import format_poly
        return format_poly(self)

    __str__ = __repr__


def _coerce(v) -> MultiPoly:
    if isinstance(v, MultiPoly):
        return v
    if isinstance(v, (int, Fraction, GaussRational)):
        return MultiPoly.constant(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to MultiPoly")


# ---------------------------------------------------------------------------
# GCD machinery.
#
# Real-coefficient gcds go through sympy's sparse QQ rings (fast heuristic /
# modular algorithms).  Genuinely complex ones use a Gaussian-integer
# adaptation of the heuristic gcd, verified by exact trial division, with a
# primitive pseudo-remainder sequence as the guaranteed fallback.  sympy's own
# QQ_I multivariate gcd degenerates to PRS and is far too slow to use here.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _qq_ring(names: tuple):
    from sympy.polys.domains import QQ
    from sympy.polys.rings import ring
    R, *gens = ring(list(names), QQ)
    return R


def _to_sympy_qq(p: MultiPoly, names: tuple):
    from sympy.polys.domains import QQ
    R = _qq_ring(names)
    pos = {v: i for i, v in enumerate(names)}
    idx = [pos[v] for v in p.vars]
    n = len(names)
    d = {}
    for e, c in p.terms.items():
        key = [0] * n
        for i, exp in zip(idx, e):
            key[i] = exp
        d[tuple(key)] = QQ(c.re.numerator, c.re.denominator)
    return R.from_dict(d)


def _from_sympy_qq(elem, names: tuple) -> MultiPoly:
    terms = {}
    for e, c in elem.terms():
        terms[tuple(e)] = GaussRational(Fraction(c.numerator, c.denominator))
    return MultiPoly(names, terms)


def _is_real(p: MultiPoly) -> bool:
    return all(c.im == 0 for c in p.terms.values())


# Gaussian integer helpers (coefficients with denominator one).

def _gint_gcd(a: GaussRational, b: GaussRational) -> GaussRational:
    while not b.is_zero():
        # nearest-integer quotient keeps norms strictly decreasing
        q = a * b.conjugate()
        n = b.norm()
        qr = Fraction(round(q.re / n))
        qi = Fraction(round(q.im / n))
        r = a - GaussRational(qr, qi) * b
        a, b = b, r
    return _unit_normal(a)


def _unit_normal(z: GaussRational) -> GaussRational:
    if z.is_zero():
        return z
    best = max((z * u for u in (ONE, -ONE, GaussRational(0, 1), GaussRational(0, -1))),
               key=lambda w: (w.re, w.im))
    return best


def _denominator_lcm(p: MultiPoly) -> int:
    lcm = 1
    for c in p.terms.values():
        for q in (c.re, c.im):
            d = q.denominator
            lcm = lcm * d // int_gcd(lcm, d)
    return lcm


def _gauss_content(p: MultiPoly) -> GaussRational:
    g = ZERO
    for c in p.terms.values():
        g = _gint_gcd(g, c)
        if g.is_one():
            break
    return g


def _smod(v: Fraction, m: int) -> Fraction:
    r = int(v) % m
    if r > m // 2:
        r -= m
    return Fraction(r)


def _heu_interpolate(gamma: MultiPoly, var: str, xi: int) -> MultiPoly:
    out = MultiPoly()
    x = MultiPoly.variable(var)
    k = 0
    while not gamma.is_zero():
        digit = gamma.map_coeffs(lambda c: GaussRational(_smod(c.re, xi), _smod(c.im, xi)))
        out = out + digit * x ** k
        gamma = (gamma - digit).map_coeffs(lambda c: GaussRational(c.re / xi, c.im / xi))
        k += 1
        if k > 10_000:
            raise RuntimeError("runaway interpolation")
    return out


def _max_norm(p: MultiPoly) -> int:
    m = 0
    for c in p.terms.values():
        m = max(m, abs(int(c.re)), abs(int(c.im)))
    return m


class _HeuristicFailed(Exception):
    pass


def _heugcd(p: MultiPoly, q: MultiPoly, tries: int = 6) -> MultiPoly:
    """gcd of primitive Gaussian-integer polynomials, up to a unit."""
    if p.is_constant() or q.is_constant():
        return MultiPoly.constant(_gint_gcd(_gauss_content(p), _gauss_content(q)))
    common = sorted(set(p.vars) & set(q.vars))
    if not common:
        return MultiPoly.constant(_gint_gcd(_gauss_content(p), _gauss_content(q)))
    var = min(common, key=lambda v: max(p.degree(v), q.degree(v)))
    xi = 2 * min(_max_norm(p), _max_norm(q)) + 29
    for _ in range(tries):
        pe = p.eval_partial({var: xi})
        qe = q.eval_partial({var: xi})
        if pe.is_zero() or qe.is_zero():
            xi = xi * 73 // 21 + 17
            continue
        try:
            if pe.is_constant() and qe.is_constant():
                ge = MultiPoly.constant(_gint_gcd(pe.constant_value(), qe.constant_value()))
            else:
                ge = _heugcd(pe, qe, tries)
        except _HeuristicFailed:
            xi = xi * 73 // 21 + 17
            continue
        cand = _heu_interpolate(ge, var, xi)
        if not cand.is_zero():
            cand = cand.exact_div(MultiPoly.constant(_gauss_content(cand)))
            if cand.divides(p) and cand.divides(q):
                return cand
        xi = xi * 73 // 21 + 17
    raise _HeuristicFailed


def _pseudo_rem(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    da, db = a.degree(var), b.degree(var)
    lc_b = b.coeff_of(var, db)
    x = MultiPoly.variable(var)
    r = a
    while not r.is_zero() and r.degree(var) >= db:
        dr = r.degree(var)
        lc_r = r.coeff_of(var, dr)
        r = r * lc_b - b * lc_r * x ** (dr - db)
        if not r.is_zero() and r.degree(var) >= dr:
            raise RuntimeError("pseudo-remainder failed to reduce degree")
    return r


def _poly_content_wrt(p: MultiPoly, var: str) -> MultiPoly:
    coeffs = [c for c in p.as_univariate(var) if not c.is_zero()]
    g = coeffs[0]
    for c in coeffs[1:]:
        g = poly_gcd(g, c)
        if g.is_constant():
            break
    return g


def _prs_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    common = sorted(set(p.vars) & set(q.vars))
    if not common:
        return MultiPoly.constant(1)
    var = min(common, key=lambda v: max(p.degree(v), q.degree(v)))
    cp = _poly_content_wrt(p, var)
    cq = _poly_content_wrt(q, var)
    a = p.exact_div(cp)
    b = q.exact_div(cq)
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem(a, b, var)
        if r.is_zero():
            a = b
            break
        a, b = b, r.exact_div(_poly_content_wrt(r, var))
    content = poly_gcd(cp, cq)
    return (a.exact_div(_poly_content_wrt(a, var)) * content)


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Monic gcd in Q(i)[vars]; gcd(0, p) = monic p."""
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    mp, mq = p.min_exponents(), q.min_exponents()
    shared = {v: min(mp.get(v, 0), mq.get(v, 0)) for v in set(mp) & set(mq)}
    mono = MultiPoly(tuple(sorted(shared)),
                     {tuple(shared[v] for v in sorted(shared)): ONE}) \
        if any(shared.values()) else MultiPoly.constant(1)
    if any(shared.values()):
        p = p.exact_div(mono)
        q = q.exact_div(mono)
    if p.is_constant() or q.is_constant():
        return mono.monic()
    P = p.map_coeffs(lambda c: c * _denominator_lcm(p))
    Q = q.map_coeffs(lambda c: c * _denominator_lcm(q))
    cP, cQ = _gauss_content(P), _gauss_content(Q)
    P = P.exact_div(MultiPoly.constant(cP))
    Q = Q.exact_div(MultiPoly.constant(cQ))
    if _is_real(P) and _is_real(Q):
        names = tuple(sorted(set(P.vars) | set(Q.vars)))
        g = _from_sympy_qq(_to_sympy_qq(P, names).gcd(_to_sympy_qq(Q, names)), names)
    else:
        try:
            g = _heugcd(P, Q)
        except _HeuristicFailed:
            g = _prs_gcd(P, Q)
    return (g * mono).monic()


def poly_lcm(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    if p.is_zero() or q.is_zero():
        return MultiPoly()
    return (p * q).exact_div(poly_gcd(p, q)).monic()
