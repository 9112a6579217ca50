"""Blow-up configurations of P1xP1 and anticanonical linear systems.

A surface is P1xP1 blown up in 8 points, possibly infinitely near.  Points
at infinity live in one of the four standard affine charts (X = 1/x,
Y = 1/y); an infinitely-near point lives in one of the two standard charts
of the blow-up at its parent, always on the exceptional line u = 0.

Bidegrees are bihomogeneous: a curve of declared bidegree (d1, d2) given by
poly(x, y) has chart representative X^d1 * poly(1/X, y) in the (X, y)
chart, and so on; slack between declared and actual degree adds lines at
infinity to the divisor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.gaussian import GaussRational
from .algebra.polynomial import MultiPoly
from .algebra.rational import ParamRatio, compose_rational
from .algebra.linalg import kernel_basis
from .errors import GeometryError
from .lattice import DivClass, MINUS_K, CANONICAL

# frame variable names reserved for local computations
_FRAMES = (("_u0", "_v0"), ("_u1", "_v1"))


@dataclass(frozen=True)
class StandardChart:
    inv_x: bool
    inv_y: bool

    @classmethod
    def from_label(cls, label: str) -> "StandardChart":
        pair = tuple(s.strip() for s in label.split(","))
        if pair not in (("x", "y"), ("X", "y"), ("x", "Y"), ("X", "Y")):
            raise GeometryError(f"unknown chart {label!r}")
        return cls(pair[0] == "X", pair[1] == "Y")

    @property
    def label(self) -> str:
        return f"{'X' if self.inv_x else 'x'},{'Y' if self.inv_y else 'y'}"


class BasePoint:
    """A blow-up centre: either in a standard chart or infinitely near."""

    def __init__(self, index, chart=None, coords=None, parent=None,
                 side=None, v=None):
        self.index = index
        if parent is None:
            if chart is None or coords is None:
                raise GeometryError(f"P{index}: a first-level point needs chart+coords")
            self.chart = chart
            self.coords = (ParamRatio.from_value(coords[0]),
                           ParamRatio.from_value(coords[1]))
            self.parent = None
            self.side = None
        else:
            if side not in ("A", "B") or v is None:
                raise GeometryError(f"P{index}: an infinitely-near point needs side A|B and v")
            self.parent = parent
            self.side = side
            self.v = ParamRatio.from_value(v)
            self.chart = None
            self.coords = (ParamRatio(0), self.v)

    @property
    def is_infinitely_near(self) -> bool:
        return self.parent is not None

    def chain(self):
        """Ancestors from the first-level point down to self."""
        out = []
        p = self
        while p is not None:
            out.append(p)
            p = p.parent
        return list(reversed(out))

    def root_chart(self) -> StandardChart:
        return self.chain()[0].chart

    def position(self):
        """Coordinates in its own frame: chart coords, or (0, v)."""
        return self.coords

    def __repr__(self):
        if self.parent is None:
            return f"P{self.index}[{self.chart.label}]({self.coords[0]}, {self.coords[1]})"
        return f"P{self.index}[over P{self.parent.index}:{self.side}](v={self.v})"


class SurfaceSpec:
    """Ordered list of 8 blow-up points plus parameter constraints."""

    def __init__(self, points, constraints=(), parameters=()):
        points = list(points)
        if len(points) != 8:
            raise GeometryError("a surface spec needs exactly 8 blow-up points")
        seen = set()
        for p in points:
            if p.parent is not None and p.parent.index not in seen:
                raise GeometryError(
                    f"P{p.index}: parent P{p.parent.index} must precede it")
            seen.add(p.index)
        self.points = points
        self.constraints = list(constraints)  # (lhs, rhs) ParamRatio pairs
        self.parameters = tuple(parameters)

    def point(self, index) -> BasePoint:
        for p in self.points:
            if p.index == index:
                return p
        raise GeometryError(f"no base point P{index}")

    def children(self, p: BasePoint):
        return [q for q in self.points if q.parent is p]

    def strict_class(self, p: BasePoint) -> DivClass:
        out = DivClass.E(p.index)
        for q in self.children(p):
            out = out - DivClass.E(q.index)
        return out

    def constraint_substitution(self) -> dict:
        """Eliminate one parameter per constraint; {name: ParamRatio}."""
        subst = {}
        pending = [(l, r) for l, r in self.constraints]
        for lhs, rhs in pending:
            lhs = lhs.substitute(subst) if subst else lhs
            rhs = rhs.substitute(subst) if subst else rhs
            diff = lhs - rhs
            num = diff.num
            solved = False
            for name in reversed(sorted(set(num.vars))):
                if num.degree(name) == 1:
                    a = num.coeff_of(name, 1)
                    b = num.coeff_of(name, 0)
                    value = ParamRatio(-b, a)
                    for k in list(subst):
                        subst[k] = subst[k].substitute({name: value})
                    subst[name] = value
                    solved = True
                    break
            if not solved:
                raise GeometryError(
                    "cannot rewrite constraint: no parameter appears linearly")
        return subst

    def substitute_params(self, mapping) -> "SurfaceSpec":
        mapping = {k: ParamRatio.from_value(v) for k, v in mapping.items()}
        new = {}
        for p in self.points:
            if p.parent is None:
                new[p.index] = BasePoint(p.index, chart=p.chart,
                                         coords=(p.coords[0].substitute(mapping),
                                                 p.coords[1].substitute(mapping)))
            else:
                new[p.index] = BasePoint(p.index, parent=new[p.parent.index],
                                         side=p.side, v=p.v.substitute(mapping))
        return SurfaceSpec([new[p.index] for p in self.points],
                           parameters=self.parameters)

    def __repr__(self):
        return "SurfaceSpec(" + "; ".join(repr(p) for p in self.points) + ")"


@dataclass(frozen=True)
class CurveOnSurface:
    """A bipolynomial curve with a declared bihomogeneous bidegree."""

    poly: MultiPoly
    bidegree: tuple

    def __post_init__(self):
        d1, d2 = self.bidegree
        if self.poly.degree("x") > d1 or self.poly.degree("y") > d2:
            raise GeometryError("declared bidegree below actual degrees")

    @classmethod
    def from_poly(cls, poly: MultiPoly, bidegree=None) -> "CurveOnSurface":
        if bidegree is None:
            bidegree = (max(poly.degree("x"), 0), max(poly.degree("y"), 0))
        return cls(poly, tuple(bidegree))

    @classmethod
    def from_ratio(cls, expr, bidegree=None) -> "CurveOnSurface":
        """Curve from an expression whose denominator involves parameters only
        (a nonzero parameter function scales the equation, not the curve)."""
        expr = ParamRatio.from_value(expr)
        den = expr.den
        if den.degree("x") > 0 or den.degree("y") > 0:
            raise GeometryError("curve equation has a denominator involving x or y")
        return cls.from_poly(expr.num, bidegree)

    def is_zero(self):
        return self.poly.is_zero()

    def scaled(self, c) -> "CurveOnSurface":
        return CurveOnSurface(self.poly * c, self.bidegree)


def chart_rep(curve: CurveOnSurface, chart: StandardChart,
              names=("_u0", "_v0")) -> MultiPoly:
    """Chart representative as a polynomial in the chart coordinates."""
    d1, d2 = curve.bidegree
    un, vn = names
    p = curve.poly
    ix = p.vars.index("x") if "x" in p.vars else None
    iy = p.vars.index("y") if "y" in p.vars else None
    out = MultiPoly()
    u = MultiPoly.variable(un)
    v = MultiPoly.variable(vn)
    for e, c in p.terms.items():
        ex = e[ix] if ix is not None else 0
        ey = e[iy] if iy is not None else 0
        rest = {var: e[i] for i, var in enumerate(p.vars) if var not in ("x", "y") and e[i]}
        mono = MultiPoly.constant(c)
        for var, k in rest.items():
            mono = mono * MultiPoly.variable(var) ** k
        mono = mono * u ** (d1 - ex if chart.inv_x else ex)
        mono = mono * v ** (d2 - ey if chart.inv_y else ey)
        out = out + mono
    return out


def _frame_names(level):
    return _FRAMES[level % 2]


def _local_order(f: MultiPoly, names, pos) -> int:
    """Vanishing order of f at pos in the (names) frame; -1 for f == 0."""
    if f.is_zero():
        return -1
    un, vn = names
    s = ParamRatio.variable("_s")
    t = ParamRatio.variable("_t")
    shifted = compose_rational(f, {un: ParamRatio.from_value(pos[0]) + s,
                                   vn: ParamRatio.from_value(pos[1]) + t})
    num = shifted.num
    iu = num.vars.index("_s") if "_s" in num.vars else None
    iv = num.vars.index("_t") if "_t" in num.vars else None
    best = None
    for e in num.terms:
        total = (e[iu] if iu is not None else 0) + (e[iv] if iv is not None else 0)
        best = total if best is None else min(best, total)
    return best


def _blowup_subst(f: MultiPoly, names, pos, side, new_names) -> MultiPoly:
    """Local form after blowing up at pos: numerator of the substitution."""
    un, vn = names
    nu, nv = new_names
    u = ParamRatio.variable(nu)
    v = ParamRatio.variable(nv)
    a = ParamRatio.from_value(pos[0])
    b = ParamRatio.from_value(pos[1])
    if side == "A":
        repl = {un: a + u, vn: b + u * v}
    else:
        repl = {un: a + u * v, vn: b + u}
    return compose_rational(f, repl).num


def _shift_down(f: MultiPoly, uname: str, m: int) -> MultiPoly:
    """Drop terms of u-degree < m, divide the rest by u^m."""
    if m == 0:
        return f
    if uname not in f.vars:
        return MultiPoly()
    i = f.vars.index(uname)
    terms = {}
    for e, c in f.terms.items():
        if e[i] >= m:
            terms[e[:i] + (e[i] - m,) + e[i + 1:]] = c
    return MultiPoly(f.vars, terms)


def multiplicity_at(curve: CurveOnSurface, point: BasePoint,
                    assigned=None) -> int:
    """Multiplicity of the curve at a (possibly infinitely-near) point.

    Multiplicity m means every partial of order < m of the local
    representative vanishes there.  For an infinitely-near point the local
    representative is the transform with u^m divided out at each ancestor;
    by default m is the ancestor's actual multiplicity (the proper
    transform), and `assigned` ({point index: m}) overrides it for virtual
    transforms relative to prescribed base multiplicities.
    """
    if curve.is_zero():
        raise GeometryError("multiplicity of the zero curve is undefined")
    chain = point.chain()
    level = 0
    names = _frame_names(level)
    f = chart_rep(curve, chain[0].chart, names)
    for anc, child in zip(chain, chain[1:]):
        pos = anc.position()
        actual = _local_order(f, names, pos)
        m = assigned.get(anc.index, actual) if assigned else actual
        if m > actual:
            raise GeometryError(
                f"curve has multiplicity {actual} < assigned {m} at P{anc.index}")
        new_names = _frame_names(level + 1)
        f = _blowup_subst(f, names, pos, child.side, new_names)
        f = _shift_down(f, new_names[0], m)
        level += 1
        names = new_names
    order = _local_order(f, names, point.position())
    if order < 0:
        raise GeometryError(
            f"transform vanishes identically at P{point.index}; "
            "the curve contains the exceptional locus")
    return order


def proper_transform_chart(curve: CurveOnSurface, parent: BasePoint,
                           side: str = "A", m=None) -> MultiPoly:
    """Local polynomial at the blow-up of parent with u^m divided out.

    m defaults to the actual multiplicity at the parent; the result is
    expressed in the frame variables (_u1, _v1) alternating by level.
    """
    if curve.is_zero():
        raise GeometryError("proper transform of the zero curve is undefined")
    chain = parent.chain()
    level = 0
    names = _frame_names(level)
    f = chart_rep(curve, chain[0].chart, names)
    for anc, child in zip(chain, chain[1:]):
        pos = anc.position()
        actual = _local_order(f, names, pos)
        new_names = _frame_names(level + 1)
        f = _blowup_subst(f, names, pos, child.side, new_names)
        f = _shift_down(f, new_names[0], actual)
        level += 1
        names = new_names
    pos = parent.position()
    actual = _local_order(f, names, pos)
    if m is None:
        m = actual
    if m > actual:
        raise GeometryError(f"multiplicity {actual} at P{parent.index} is below {m}")
    new_names = _frame_names(level + 1)
    f = _blowup_subst(f, names, pos, side, new_names)
    return _shift_down(f, new_names[0], m)


def curve_class(curve: CurveOnSurface, s: SurfaceSpec) -> DivClass:
    """Class d1 Hx + d2 Hy - sum(mult_i E_i) from actual proper transforms."""
    d1, d2 = curve.bidegree
    v = [d1, d2] + [0] * 8
    for p in s.points:
        v[1 + p.index] = -multiplicity_at(curve, p)
    return DivClass(v)


# ---------------------------------------------------------------------------
# Linear systems |D| with prescribed base multiplicities
# ---------------------------------------------------------------------------


@dataclass
class LinearSystem:
    basis: list                      # CurveOnSurface
    bidegree: tuple
    multiplicities: list
    degeneracy_conditions: list      # pivot numerators (parameter polynomials)

    @property
    def dimension(self) -> int:
        """Vector-space dimension."""
        return len(self.basis)

    @property
    def projective_dimension(self) -> int:
        return len(self.basis) - 1


def _monomial_names(d1, d2):
    return [f"_c{p}_{q}" for p in range(d1 + 1) for q in range(d2 + 1)]


def _general_member(d1, d2, chart, names):
    un, vn = names
    u = MultiPoly.variable(un)
    v = MultiPoly.variable(vn)
    out = MultiPoly()
    for p in range(d1 + 1):
        for q in range(d2 + 1):
            c = MultiPoly.variable(f"_c{p}_{q}")
            out = out + c * u ** (d1 - p if chart.inv_x else p) \
                * v ** (d2 - q if chart.inv_y else q)
    return out


def _linear_rows(expr: MultiPoly, cnames):
    """Coefficient row of a form linear in the _c variables."""
    row = []
    residual = expr
    for name in cnames:
        coeff = expr.coeff_of(name, 1)
        if any(v.startswith("_c") for v in coeff.vars):
            raise GeometryError("condition is not linear in the coefficients")
        row.append(ParamRatio(coeff))
        residual = residual - coeff * MultiPoly.variable(name)
    if not residual.is_zero():
        raise GeometryError("condition has a coefficient-free part")
    return row


def _condition_rows(f: MultiPoly, names, pos, m, cnames):
    """Vanishing of all partials of order < m at pos, as rows in the _c's."""
    rows = []
    un, vn = names
    a = ParamRatio.from_value(pos[0])
    b = ParamRatio.from_value(pos[1])
    dv = f
    for p in range(m):
        dq = dv
        for q in range(m - p):
            value = compose_rational(dq, {un: a, vn: b}).num
            if not value.is_zero():
                rows.append(_linear_rows(value, cnames))
            dq = dq.derivative(vn)
        dv = dv.derivative(un)
    return rows


def linear_system(s: SurfaceSpec, bidegree, mults) -> LinearSystem:
    """Basis of bidegree-(d1,d2) curves with at least the given multiplicity
    at each base point (virtual transforms at infinitely-near points).

    Parameter constraints are applied by rewriting one parameter per
    relation; dimensions are generic over the parameter field, and the pivot
    numerators under which the rank could drop are reported.
    """
    d1, d2 = bidegree
    mults = list(mults)
    if len(mults) != len(s.points):
        raise GeometryError("need one multiplicity per base point")
    subst = s.constraint_substitution() if s.constraints else {}
    surf = s.substitute_params(subst) if subst else s
    massign = {pt.index: mm for pt, mm in zip(surf.points, mults)}
    cnames = _monomial_names(d1, d2)
    rows = []
    for p in surf.points:
        if massign[p.index] <= 0:
            continue
        chain = p.chain()
        level = 0
        names = _frame_names(level)
        f = _general_member(d1, d2, chain[0].chart, names)
        for anc, child in zip(chain, chain[1:]):
            pos = anc.position()
            rows.extend(_condition_rows(f, names, pos, massign[anc.index], cnames))
            new_names = _frame_names(level + 1)
            f = _blowup_subst(f, names, pos, child.side, new_names)
            f = _shift_down(f, new_names[0], massign[anc.index])
            level += 1
            names = new_names
        rows.extend(_condition_rows(f, names, p.position(), massign[p.index], cnames))
    from .algebra.linalg import Echelon
    ech = Echelon([list(r) for r in rows], len(cnames)) if rows else None
    vecs = ech.kernel_basis() if ech else \
        [[ParamRatio(1 if i == j else 0) for i in range(len(cnames))]
         for j in range(len(cnames))]
    basis = []
    x = MultiPoly.variable("x")
    y = MultiPoly.variable("y")
    for vec in vecs:
        den = MultiPoly.constant(1)
        from .algebra.polynomial import poly_lcm
        for entry in vec:
            if not entry.is_zero():
                den = poly_lcm(den, entry.den)
        poly = MultiPoly()
        k = 0
        for p in range(d1 + 1):
            for q in range(d2 + 1):
                entry = vec[k]
                k += 1
                if entry.is_zero():
                    continue
                coeff = entry.num * den.exact_div(entry.den)
                poly = poly + coeff * x ** p * y ** q
        basis.append(CurveOnSurface(poly, (d1, d2)))
    conditions = ech.pivot_conditions if ech else []
    return LinearSystem(basis, (d1, d2), mults, conditions)


class Pencil:
    """Two independent curves of equal bidegree; base parameter k = g/f."""

    def __init__(self, f: CurveOnSurface, g: CurveOnSurface):
        if f.bidegree != g.bidegree:
            raise GeometryError("pencil members must share a bidegree")
        self.f = f
        self.g = g

    @property
    def bidegree(self):
        return self.f.bidegree

    def member(self, k) -> CurveOnSurface:
        """The fiber over k: g - k*f = 0 (denominators of k cleared)."""
        k = ParamRatio.from_value(k)
        poly = self.g.poly * k.den - self.f.poly * k.num
        return CurveOnSurface(poly, self.bidegree)

    def parameter(self) -> ParamRatio:
        return ParamRatio(self.g.poly) / ParamRatio(self.f.poly)


def halphen_index(s: SurfaceSpec, m_max: int = 4):
    """Smallest m with |-mK| a pencil and |-kK| a point for k < m.

    Returns (m, Pencil) or None if no such m <= m_max; raises if some
    |-kK| has two or more projective dimensions.
    """
    for k in range(1, m_max + 1):
        sys = linear_system(s, (2 * k, 2 * k), [k] * 8)
        dim = sys.dimension
        if dim >= 3:
            raise GeometryError(
                f"|-{k}K| has projective dimension {dim - 1} >= 2: "
                "not an elliptic-fibration configuration")
        if dim == 2:
            return k, Pencil(sys.basis[0], sys.basis[1])
        if dim == 0:
            return None
    return None


# ---------------------------------------------------------------------------
# Anticanonical decompositions
# ---------------------------------------------------------------------------


@dataclass
class DecompositionReport:
    sum_check: bool
    perp_check: bool
    type: str
    cycle_rank: int
    messages: list = field(default_factory=list)


def _check_effective(s: SurfaceSpec, d: DivClass):
    c = d.coeffs
    if c[0] < 0 or c[1] < 0:
        raise GeometryError(f"component {d!r} has negative bidegree: not effective")
    if c[0] == 0 and c[1] == 0:
        # must be a nonnegative combination of strict exceptional chains
        coeff = {}
        for p in s.points:
            base = coeff.get(p.parent.index, 0) if p.parent else 0
            coeff[p.index] = c[1 + p.index] + base
        if any(v < 0 for v in coeff.values()):
            raise GeometryError(f"component {d!r} is not effective")


def decomposition_report(s: SurfaceSpec, components) -> DecompositionReport:
    """Verify an anticanonical decomposition and classify its type.

    components: list of (DivClass, multiplicity).  The dual graph counts
    D_i.D_j parallel edges; cycle rank 1 is multiplicative, 0 additive, and
    a single arithmetic-genus-one component is elliptic.
    """
    comps = [(d, int(m)) for d, m in components]
    if not comps:
        raise GeometryError("empty decomposition")
    messages = []
    for d, m in comps:
        _check_effective(s, d)
        if m < 1:
            raise GeometryError("component multiplicities must be >= 1")
    total = DivClass.zero()
    for d, m in comps:
        total = total + m * d
    sum_check = total == MINUS_K
    if not sum_check:
        messages.append(f"sum of components is {total!r}, off from -K by "
                        f"{(total - MINUS_K)!r}")
    perp_check = all(d.dot(CANONICAL) == 0 for d, _ in comps)
    if not perp_check:
        bad = [d for d, _ in comps if d.dot(CANONICAL) != 0]
        messages.append(f"components not orthogonal to K: {bad!r}")
    n = len(comps)
    edges = 0
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            e = comps[i][0].dot(comps[j][0])
            if e < 0:
                raise GeometryError(
                    f"components {i} and {j} have negative intersection {e}")
            adj[i][j] = adj[j][i] = e
            edges += e
    seen = [False] * n
    ncomp = 0
    for start in range(n):
        if seen[start]:
            continue
        ncomp += 1
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            for w in range(n):
                if adj[v][w] and not seen[w]:
                    seen[w] = True
                    stack.append(w)
    b1 = edges - n + ncomp
    if n == 1 and comps[0][1] == 1:
        d = comps[0][0]
        pa = 1 + (d.dot(d) + d.dot(CANONICAL)) // 2
        if pa == 1:
            return DecompositionReport(sum_check, perp_check, "ell", b1, messages)
    if b1 == 1:
        kind = "mult"
    elif b1 == 0:
        kind = "add"
    else:
        raise GeometryError(f"dual graph has first Betti number {b1} > 1")
    return DecompositionReport(sum_check, perp_check, kind, b1, messages)
