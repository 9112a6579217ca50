"""Exact linear algebra over the rational-function field.

Elimination is fraction-free: rows are cleared to polynomial entries and
updated by cross-multiplication, with the polynomial content of every new
row divided out to keep expression swell under control.
"""

from __future__ import annotations

from .gaussian import GaussRational
from .polynomial import MultiPoly, poly_gcd, poly_lcm
from .rational import ParamRatio


def _clear_row(row):
    """ParamRatio row -> MultiPoly row (common denominator, content stripped)."""
    lcm = MultiPoly.constant(1)
    for r in row:
        r = ParamRatio.from_value(r)
        lcm = poly_lcm(lcm, r.den) if not r.is_zero() else lcm
    out = []
    for r in row:
        r = ParamRatio.from_value(r)
        out.append(r.num * lcm.exact_div(r.den) if not r.is_zero() else MultiPoly())
    return _strip_content(out)


def _strip_content(row):
    g = MultiPoly()
    for p in row:
        if p.is_zero():
            continue
        g = poly_gcd(g, p)
        if g.is_constant():
            break
    if g.is_zero() or g.is_constant():
        lead = next((p for p in row if not p.is_zero()), None)
        if lead is None:
            return row
        inv = lead.leading_coeff().inverse()
        return [p.map_coeffs(lambda c: c * inv) if not p.is_zero() else p for p in row]
    return [p.exact_div(g) if not p.is_zero() else p for p in row]


def _term_count(p: MultiPoly) -> int:
    return len(p.terms)


class Echelon:
    """Row-echelon data of a matrix over the function field."""

    def __init__(self, rows, ncols):
        self.ncols = ncols
        self.pivots = []          # list of (row_index_in_reduced, col)
        self.reduced = []         # polynomial rows in echelon form
        self.pivot_conditions = []  # pivot numerators (degeneracy conditions)
        work = [_clear_row(r) for r in rows]
        work = [r for r in work if any(not p.is_zero() for p in r)]
        col = 0
        while col < ncols and work:
            # choose the structurally simplest pivot in this column
            cand = [i for i, r in enumerate(work) if not r[col].is_zero()]
            if not cand:
                col += 1
                continue
            i = min(cand, key=lambda j: (_term_count(work[j][col]),
                                         sum(_term_count(p) for p in work[j])))
            piv_row = work.pop(i)
            piv = piv_row[col]
            self.pivots.append((len(self.reduced), col))
            self.reduced.append(piv_row)
            if not piv.is_constant():
                self.pivot_conditions.append(piv)
            new_work = []
            for r in work:
                if r[col].is_zero():
                    new_work.append(r)
                    continue
                factor = r[col]
                updated = [piv * a - factor * b for a, b in zip(r, piv_row)]
                updated = _strip_content(updated)
                if any(not p.is_zero() for p in updated):
                    new_work.append(updated)
            work = new_work
            col += 1
        self.rank = len(self.reduced)

    def kernel_basis(self):
        """Basis of the right kernel, entries ParamRatio."""
        pivot_cols = [c for _, c in self.pivots]
        free_cols = [c for c in range(self.ncols) if c not in pivot_cols]
        basis = []
        for fc in free_cols:
            vec = [ParamRatio(0)] * self.ncols
            vec[fc] = ParamRatio(1)
            # back-substitute through pivot rows from the bottom up
            for (ri, pc) in reversed(self.pivots):
                row = self.reduced[ri]
                s = ParamRatio(0)
                for c in range(pc + 1, self.ncols):
                    if not row[c].is_zero() and not vec[c].is_zero():
                        s = s + ParamRatio(row[c]) * vec[c]
                vec[pc] = -s / ParamRatio(row[pc])
            basis.append(vec)
        return basis


def kernel_basis(rows):
    """Right-kernel basis of a matrix given as rows of ParamRatio entries.

    Empty input (no rows) is treated as a map from the zero-dimensional
    space, so the kernel is empty-dimensional too; rows of length n with no
    constraints yield the full standard basis.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("rows have differing lengths")
    return Echelon(rows, ncols).kernel_basis()


def matrix_rank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return Echelon(rows, len(rows[0])).rank


def solve_linear(rows, rhs):
    """One solution x of A x = b over the function field, or None.

    rows: list of rows of A (ParamRatio-coercible); rhs: vector b.
    """
    rows = [list(r) + [v] for r, v in zip(rows, rhs)]
    if not rows:
        return []
    n = len(rows[0]) - 1
    ech = Echelon(rows, n + 1)
    # inconsistent iff a pivot lands in the rhs column
    if any(c == n for _, c in ech.pivots):
        return None
    x = [ParamRatio(0)] * n
    for (ri, pc) in reversed(ech.pivots):
        row = ech.reduced[ri]
        s = ParamRatio(row[n])
        for c in range(pc + 1, n):
            if not row[c].is_zero() and not x[c].is_zero():
                s = s - ParamRatio(row[c]) * x[c]
        x[pc] = s / ParamRatio(row[pc])
    return x


def in_span(vectors, target) -> bool:
    """Is target a function-field linear combination of the given vectors?"""
    if not vectors:
        return all(ParamRatio.from_value(t).is_zero() for t in target)
    cols = [list(v) for v in vectors]
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))]
    return solve_linear(rows, list(target)) is not None


def same_span(vectors_a, vectors_b) -> bool:
    return (all(in_span(vectors_a, v) for v in vectors_b)
            and all(in_span(vectors_b, v) for v in vectors_a))


def det(rows) -> ParamRatio:
    """Determinant by fraction-free elimination (square matrices)."""
    n = len(rows)
    if n == 0:
        return ParamRatio(1)
    work = [[ParamRatio.from_value(v) for v in r] for r in rows]
    sign = 1
    acc_num = ParamRatio(1)
    acc_den = ParamRatio(1)
    for col in range(n):
        piv_i = next((i for i in range(col, n) if not work[i][col].is_zero()), None)
        if piv_i is None:
            return ParamRatio(0)
        if piv_i != col:
            work[col], work[piv_i] = work[piv_i], work[col]
            sign = -sign
        piv = work[col][col]
        acc_num = acc_num * piv
        for i in range(col + 1, n):
            f = work[i][col] / piv
            if f.is_zero():
                continue
            work[i] = [a - f * b for a, b in zip(work[i], work[col])]
    return acc_num * sign
