"""Rank-10 Picard lattice of P1xP1 blown up in 8 points.

Basis order: (H_x, H_y, E1, ..., E8).  Pairing: H_x.H_y = 1, H.H = 0,
Ei.Ej = -delta_ij, H.E = 0.  Classes are immutable integer vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GeometryError

RANK = 10


class DivClass:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != RANK:
            raise ValueError(f"a divisor class has {RANK} coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("DivClass is immutable")

    @classmethod
    def zero(cls):
        return cls((0,) * RANK)

    @classmethod
    def H(cls, axis: str):
        v = [0] * RANK
        v[0 if axis == "x" else 1] = 1
        return cls(v)

    @classmethod
    def E(cls, i: int):
        if not 1 <= i <= 8:
            raise ValueError("exceptional index must be 1..8")
        v = [0] * RANK
        v[1 + i] = 1
        return cls(v)

    def __add__(self, other):
        return DivClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return DivClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return DivClass(tuple(-a for a in self.coeffs))

    def __rmul__(self, n: int):
        return DivClass(tuple(n * a for a in self.coeffs))

    __mul__ = __rmul__

    def dot(self, other: "DivClass") -> int:
        a, b = self.coeffs, other.coeffs
        return a[0] * b[1] + a[1] * b[0] - sum(a[i] * b[i] for i in range(2, RANK))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, DivClass) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        names = ["Hx", "Hy"] + [f"E{i}" for i in range(1, 9)]
        parts = []
        for c, n in zip(self.coeffs, names):
            if c == 0:
                continue
            if c == 1:
                parts.append(f"+{n}")
            elif c == -1:
                parts.append(f"-{n}")
            else:
                parts.append(f"{c:+d}{n}")
        if not parts:
            return "0"
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text


MINUS_K = DivClass((2, 2, -1, -1, -1, -1, -1, -1, -1, -1))
CANONICAL = -MINUS_K


def intersection(a: DivClass, b: DivClass) -> int:
    return a.dot(b)


# ---------------------------------------------------------------------------
# Small exact integer lattice algebra
# ---------------------------------------------------------------------------


def _column_echelon(rows):
    """Unimodular column reduction: returns (H, U, pivots) with A U = H.

    H is in column-echelon form; pivots is a list of (row, col) pairs with
    strictly increasing rows and cols.
    """
    m, n = len(rows), len(rows[0])
    A = [list(r) for r in rows]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def addmul_col(dst, src, f):
        for i in range(m):
            A[i][dst] += f * A[i][src]
        for i in range(n):
            U[i][dst] += f * U[i][src]

    def swap_col(a, b):
        for i in range(m):
            A[i][a], A[i][b] = A[i][b], A[i][a]
        for i in range(n):
            U[i][a], U[i][b] = U[i][b], U[i][a]

    pivots = []
    c = 0
    for r in range(m):
        if c == n:
            break
        while True:
            nz = [j for j in range(c, n) if A[r][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(A[r][j]))
            if j0 != c:
                swap_col(c, j0)
            done = True
            for j in range(c + 1, n):
                if A[r][j] != 0:
                    q = A[r][j] // A[r][c]
                    addmul_col(j, c, -q)
                    if A[r][j] != 0:
                        done = False
            if done:
                break
        if c < n and A[r][c] != 0:
            pivots.append((r, c))
            c += 1
    return A, U, pivots


def integer_kernel(rows):
    """Basis of the integer kernel {v : A v = 0} for integer matrix rows."""
    if not rows:
        return []
    n = len(rows[0])
    _, U, pivots = _column_echelon(rows)
    c = len(pivots)
    return [[U[i][j] for i in range(n)] for j in range(c, n)]


def solve_integer(columns, target):
    """Some integer x with sum x_j * columns[j] = target, or None.

    The columns need not be independent.
    """
    if not columns:
        return [] if not any(target) else None
    m = len(columns[0])
    rows = [[columns[j][i] for j in range(len(columns))] for i in range(m)]
    H, U, pivots = _column_echelon(rows)
    n = len(columns)
    y = [0] * n
    for r, c in pivots:
        resid = target[r] - sum(H[r][j] * y[j] for j in range(c))
        if resid % H[r][c] != 0:
            return None
        y[c] = resid // H[r][c]
    x = [sum(U[i][j] * y[j] for j in range(n)) for i in range(n)]
    # verify (covers rows without pivots)
    for i in range(m):
        if sum(columns[j][i] * x[j] for j in range(n)) != target[i]:
            return None
    return x


def hnf_rows(rows):
    """Row Hermite normal form (pivot-positive, reduced above), zero rows dropped."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    n = len(work[0])
    out = []  # (pivot_col, row)
    col = 0
    while col < n and work:
        while True:
            idx = [i for i, r in enumerate(work) if r[col] != 0]
            if len(idx) <= 1:
                break
            i0 = min(idx, key=lambda i: abs(work[i][col]))
            for i in idx:
                if i == i0:
                    continue
                q = work[i][col] // work[i0][col]
                work[i] = [a - q * b for a, b in zip(work[i], work[i0])]
            work = [r for r in work if any(r)]
        idx = [i for i, r in enumerate(work) if r[col] != 0]
        if idx:
            row = work.pop(idx[0])
            if row[col] < 0:
                row = [-a for a in row]
            out.append((col, row))
        col += 1
    rows_out = [r for _, r in out]
    # reduce entries above each pivot
    for k in range(len(rows_out) - 1, -1, -1):
        pcol = out[k][0]
        piv = rows_out[k][pcol]
        for j in range(k):
            q = rows_out[j][pcol] // piv
            if q:
                rows_out[j] = [a - q * b for a, b in zip(rows_out[j], rows_out[k])]
    return rows_out


def lattice_equal(gens_a, gens_b) -> bool:
    return hnf_rows(gens_a) == hnf_rows(gens_b)


def in_lattice(gens, v) -> bool:
    """Is v an integer combination of the generators?"""
    H = hnf_rows(gens)
    v = list(v)
    for row in H:
        pcol = next(i for i, a in enumerate(row) if a != 0)
        if v[pcol] % row[pcol] != 0:
            return False
        q = v[pcol] // row[pcol]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def integer_combination(generators, target):
    """Some integer coefficients expressing target over the generators, or None."""
    return solve_integer([list(g) for g in generators], list(target))


# ---------------------------------------------------------------------------
# Pic maps (pushforward matrices)
# ---------------------------------------------------------------------------


class PicMap:
    """Linear action on the lattice; row i is the image of basis element i."""

    def __init__(self, rows, src=None, dst=None):
        rows = [r if isinstance(r, DivClass) else DivClass(r) for r in rows]
        if len(rows) != RANK:
            raise ValueError("a PicMap needs 10 image rows")
        self.rows = rows
        self.src = src
        self.dst = dst

    @classmethod
    def identity(cls, src=None, dst=None):
        rows = [[1 if i == j else 0 for j in range(RANK)] for i in range(RANK)]
        return cls(rows, src, dst)

    def matrix(self):
        return [list(r.coeffs) for r in self.rows]

    def apply(self, v: DivClass) -> DivClass:
        out = [0] * RANK
        for c, row in zip(v.coeffs, self.rows):
            if c:
                for j, r in enumerate(row.coeffs):
                    out[j] += c * r
        return DivClass(out)

    def compose(self, inner: "PicMap") -> "PicMap":
        """self after inner (as maps on classes)."""
        return PicMap([self.apply(r) for r in inner.rows], src=inner.src, dst=self.dst)

    def __pow__(self, n: int) -> "PicMap":
        out = PicMap.identity()
        base = self
        while n:
            if n & 1:
                out = base.compose(out)
            base = base.compose(base)
            n >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, PicMap) and self.rows == other.rows

    def is_isometry(self) -> bool:
        return all(self.rows[i].dot(self.rows[j]) == _basis_dot(i, j)
                   for i in range(RANK) for j in range(i, RANK))

    def fixes_anticanonical(self) -> bool:
        return self.apply(MINUS_K) == MINUS_K

    def validate(self):
        if not self.is_isometry():
            raise GeometryError("map does not preserve the intersection form")
        if not self.fixes_anticanonical():
            raise GeometryError("map does not fix the anticanonical class")

    def __repr__(self):
        return "PicMap(" + ", ".join(repr(r) for r in self.rows) + ")"


def _basis_dot(i, j):
    ei = [0] * RANK
    ei[i] = 1
    ej = [0] * RANK
    ej[j] = 1
    return DivClass(ei).dot(DivClass(ej))


# ---------------------------------------------------------------------------
# Root systems
# ---------------------------------------------------------------------------


@dataclass
class RootBasis:
    roots: list
    names: list
    cartan: list = field(init=False)
    dynkin_label: str = field(init=False)

    def __post_init__(self):
        for r, n in zip(self.roots, self.names):
            if r.dot(r) != -2:
                raise GeometryError(f"root {n} has self-intersection {r.dot(r)}, not -2")
        k = len(self.roots)
        self.cartan = [[-(self.roots[i].dot(self.roots[j])) if i != j else 2
                        for j in range(k)] for i in range(k)]
        for i in range(k):
            for j in range(k):
                if i != j and self.cartan[i][j] > 0:
                    raise GeometryError(
                        f"roots {self.names[i]}, {self.names[j]} pair positively; "
                        "not a simple-root system")
        self.dynkin_label = _dynkin_label(self.cartan)

    def index_of(self, name: str) -> int:
        return self.names.index(name)

    def coords_of(self, v: DivClass):
        vecs = [list(r.coeffs) for r in self.roots]
        return integer_combination(vecs, list(v.coeffs))

    def from_coords(self, coords) -> DivClass:
        out = DivClass.zero()
        for c, r in zip(coords, self.roots):
            out = out + c * r
        return out

    def delta_coords(self):
        """-K expressed in this basis (None if not in the span)."""
        return self.coords_of(MINUS_K)


def _components(n, adj):
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if adj[v][w] and not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _classify_component(nodes, mult):
    n = len(nodes)
    edges = [(a, b) for ii, a in enumerate(nodes) for b in nodes[ii + 1:]
             if mult[a][b] > 0]
    if any(mult[a][b] >= 2 for a, b in edges):
        if n == 2 and len(edges) == 1 and mult[edges[0][0]][edges[0][1]] == 2:
            return "A1(1)"
        return None
    deg = {v: sum(1 for w in nodes if w != v and mult[v][w]) for v in nodes}
    ne = len(edges)
    if ne == n and n >= 3 and all(deg[v] == 2 for v in nodes):
        return f"A{n - 1}(1)"
    if ne != n - 1:
        return None
    # tree shapes
    degs = sorted(deg.values())
    if n == 5 and degs == [1, 1, 1, 1, 4]:
        return "D4(1)"
    three = [v for v in nodes if deg[v] == 3]
    if len(three) == 2 and all(d <= 3 for d in degs) and n >= 6:
        return f"D{n - 1}(1)"
    if len(three) == 1 and max(degs) == 3:
        arms = _arm_lengths(nodes, mult, three[0])
        shape = {(2, 2, 2): "E6(1)", (1, 3, 3): "E7(1)", (1, 2, 5): "E8(1)"}
        return shape.get(tuple(sorted(arms)))
    return None


def _arm_lengths(nodes, mult, center):
    arms = []
    for w in nodes:
        if w == center or not mult[center][w]:
            continue
        length = 1
        prev, cur = center, w
        while True:
            nxt = [v for v in nodes if v != prev and mult[cur][v]]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return arms


def _int_det(rows):
    m = [[Fraction(v) for v in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def _dynkin_label(cartan):
    k = len(cartan)
    mult = [[-cartan[i][j] if i != j else 0 for j in range(k)] for i in range(k)]
    adj = [[1 if mult[i][j] else 0 for j in range(k)] for i in range(k)]
    labels = []
    for comp in _components(k, adj):
        sub = [[cartan[i][j] for j in comp] for i in comp]
        name = _classify_component(comp, mult)
        if name is None or _int_det(sub) != 0:
            labels.append(f"unrecognized[{len(comp)}]")
        else:
            labels.append(name)

    def rank_of(label):
        if label.startswith("unrecognized"):
            return -1
        return int(label[1:label.index("(")])

    labels.sort(key=lambda s: (-rank_of(s), s))
    return "+".join(labels)


def root_system_report(components, candidate_roots, names=None) -> RootBasis:
    """Validate candidate simple roots against the component configuration.

    Checks each candidate is a (-2)-class orthogonal to every component and
    that the candidates generate the full orthogonal complement lattice.
    """
    comps = list(components)
    roots = list(candidate_roots)
    if names is None:
        names = [f"alpha{i}" for i in range(len(roots))]
    for r, n in zip(roots, names):
        bad = [d for d in comps if r.dot(d) != 0]
        if bad:
            raise GeometryError(f"root {n} is not orthogonal to component {bad[0]!r}")
    basis = RootBasis(roots, list(names))
    complement = integer_kernel([_pair_row(d) for d in comps])
    if not lattice_equal([list(r.coeffs) for r in roots], complement):
        raise GeometryError("candidate roots do not generate the orthogonal complement")
    return basis


def _pair_row(d: DivClass):
    """Row of pairing functionals: v -> v.d as an integer linear form."""
    c = d.coeffs
    return [c[1], c[0]] + [-c[i] for i in range(2, RANK)]


def orthogonal_complement_rank(components) -> int:
    return len(integer_kernel([_pair_row(d) for d in components]))


def weyl_reflect(i: int, v: DivClass, basis: RootBasis) -> DivClass:
    alpha = basis.roots[i]
    return v + v.dot(alpha) * alpha


# Root-level linear maps (for words in reflections and permutations that the
# source only defines on the simple roots).


class RootMap:
    """Integer matrix on root coordinates; row j = image of basis root j."""

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]

    @classmethod
    def identity(cls, k):
        return cls([[1 if i == j else 0 for j in range(k)] for i in range(k)])

    @classmethod
    def reflection(cls, basis: RootBasis, i: int):
        k = len(basis.roots)
        rows = []
        for j in range(k):
            row = [1 if t == j else 0 for t in range(k)]
            row[i] -= basis.cartan[i][j]
            rows.append(row)
        return cls(rows)

    @classmethod
    def permutation(cls, images):
        """images[j] = index of the image of basis root j."""
        k = len(images)
        rows = [[1 if t == images[j] else 0 for t in range(k)] for j in range(k)]
        return cls(rows)

    def apply(self, coords):
        k = len(self.rows)
        out = [0] * k
        for c, row in zip(coords, self.rows):
            if c:
                for t in range(k):
                    out[t] += c * row[t]
        return out

    def compose(self, inner: "RootMap") -> "RootMap":
        return RootMap([self.apply(r) for r in inner.rows])

    def __eq__(self, other):
        return isinstance(other, RootMap) and self.rows == other.rows

    def __repr__(self):
        return f"RootMap({self.rows})"


def compose_word(factors):
    """Compose generators right-to-left: the last factor acts first."""
    out = None
    for f in factors:
        out = f if out is None else out.compose(f)
    return out


def root_action(M: PicMap, basis: RootBasis) -> RootMap:
    """Action of a PicMap on the root basis, exact integer matrix."""
    rows = []
    for r, n in zip(basis.roots, basis.names):
        img = M.apply(r)
        coords = basis.coords_of(img)
        if coords is None:
            raise GeometryError(f"image of {n} leaves the root lattice span")
        rows.append(coords)
    return RootMap(rows)


def same_action(basis: RootBasis, a: RootMap, b: RootMap) -> bool:
    """Equality of root-coordinate actions as lattice maps.

    Simple roots may satisfy relations (the two null roots of A2+A1 agree),
    so coordinate rows are compared through the classes they represent.
    """
    return all(basis.from_coords(ra) == basis.from_coords(rb)
               for ra, rb in zip(a.rows, b.rows))


# ---------------------------------------------------------------------------
# Finite / quasi-translation / positive-entropy trichotomy
# ---------------------------------------------------------------------------


@dataclass
class ActionClass:
    kind: str                      # finite | quasi_translation | positive_entropy
    order_or_power: int | None
    entropy: float
    spectral_radius_one: bool


_ORDER_BOUND = 120


def _charpoly_coeffs(M):
    import sympy
    mat = sympy.Matrix(M.matrix())
    lam = sympy.Symbol("lam")
    return sympy.Poly(mat.charpoly(lam).as_expr(), lam)


def _is_cyclotomic_product(poly) -> bool:
    import sympy
    lam = poly.gens[0]
    for factor, _mult in sympy.factor_list(poly.as_expr())[1]:
        f = sympy.Poly(factor, lam)
        d = f.degree()
        ok = False
        for n in range(1, 4 * d * d + 7):
            if sympy.totient(n) == d and f == sympy.Poly(sympy.cyclotomic_poly(n, lam), lam):
                ok = True
                break
        if not ok:
            return False
    return True


def _delta_perp_basis():
    # v.(-K) = 2 h0 + 2 h1 + sum(e_i)
    row = [2, 2] + [1] * 8
    return [DivClass(v) for v in integer_kernel([row])]


def classify_action(M: PicMap) -> ActionClass:
    """Entropy trichotomy from the characteristic polynomial, then exact
    finite-order / quasi-translation search at spectral radius one."""
    import sympy
    cp = _charpoly_coeffs(M)
    if not _is_cyclotomic_product(cp):
        roots = sympy.nroots(cp.as_expr(), n=30)
        radius = max(abs(complex(r)) for r in roots)
        return ActionClass("positive_entropy", None, math.log(radius), False)
    ident = PicMap.identity()
    power = M
    perp = _delta_perp_basis()
    quasi_at = None
    for n in range(1, _ORDER_BOUND + 1):
        if power == ident:
            return ActionClass("finite", n, 0.0, True)
        if quasi_at is None:
            diff_sq_zero = True
            for b in perp:
                w = power.apply(b) - b
                w2 = power.apply(w) - w
                if not w2.is_zero():
                    diff_sq_zero = False
                    break
            if diff_sq_zero:
                quasi_at = n
        power = M.compose(power)
    if quasi_at is not None:
        return ActionClass("quasi_translation", quasi_at, 0.0, True)
    raise GeometryError("spectral radius one but no finite order or quasi-translation "
                        f"power up to {_ORDER_BOUND}")
