"""Exact rational feasibility for {v : Mv = 0, sum(v) = 1, v >= 0}.

Phase-I simplex over fractions.Fraction with Bland's pivoting rule, so every
run terminates and identical inputs take identical paths.  A feasible system
yields an exact rational point; an infeasible one yields an integer vector u
with every coordinate of M^t u at least 1, extracted from the phase-I dual
multipliers and scaled by the common denominator.  Either certificate is
checkable by plain substitution, see verify_feasible / verify_farkas.

No floating point is used anywhere in this module.

Before pivoting, the constraint rows are thinned to a maximal linearly
independent subset (the simplex only ever sees <= ncols + 1 rows); dual
multipliers for discarded rows are zero, which keeps certificates valid for
the original matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm


@dataclass(frozen=True)
class Feasible:
    """Exact solution of Mv = 0, sum(v) = 1, v >= 0."""

    v: tuple


@dataclass(frozen=True)
class Infeasible:
    """Integer Farkas certificate: every coordinate of M^t u is >= 1."""

    u: tuple


def _as_rows(matrix):
    # Accept an ExponentMatrix or a plain row iterable.
    entries = getattr(matrix, "entries", matrix)
    return [tuple(row) for row in entries]


def _ncols(matrix, rows):
    cols = getattr(matrix, "ncols", None)
    if cols is not None:
        return cols
    return len(rows[0]) if rows else 0


def _independent_rows(rows, ncols):
    """Indices of a maximal Q-linearly-independent subset, scanned in order."""
    basis = []  # reduced rows, Fraction entries
    chosen = []
    for idx, row in enumerate(rows):
        work = [Fraction(x) for x in row]
        for pivot_col, pivot_row in basis:
            factor = work[pivot_col]
            if factor:
                for j in range(ncols):
                    work[j] -= factor * pivot_row[j]
        lead = next((j for j in range(ncols) if work[j]), None)
        if lead is None:
            continue
        inv = work[lead]
        reduced = [x / inv for x in work]
        basis.append((lead, reduced))
        chosen.append(idx)
    return chosen


class _Tableau:
    """Dense simplex tableau for equality constraints with artificial basis."""

    def __init__(self, rows, rhs):
        self.m = len(rows)
        self.n = len(rows[0]) if rows else 0
        # columns: structural 0..n-1, artificial n..n+m-1, rhs last
        self.T = []
        for i, row in enumerate(rows):
            line = [Fraction(x) for x in row]
            line += [Fraction(1) if k == i else Fraction(0) for k in range(self.m)]
            line.append(Fraction(rhs[i]))
            self.T.append(line)
        self.basis = [self.n + i for i in range(self.m)]

    def _pivot(self, row, col):
        T = self.T
        line = T[row]
        inv = 1 / line[col]
        T[row] = line = [x * inv for x in line]
        for i, other in enumerate(T):
            if i != row and other[col]:
                factor = other[col]
                T[i] = [a - factor * b for a, b in zip(other, line)]
        self.basis[row] = col

    def _bland(self, costs, allowed):
        """Minimize costs over the current basis; Bland's rule throughout."""
        T = self.T
        m, width = self.m, self.n + self.m
        while True:
            # reduced costs from scratch each step: small tableaus, exactness first
            cbar = list(costs)
            for i in range(m):
                cb = costs[self.basis[i]]
                if cb:
                    row = T[i]
                    for j in range(width):
                        if row[j]:
                            cbar[j] -= cb * row[j]
            enter = None
            for j in range(width):
                if allowed[j] and cbar[j] < 0 and j not in self.basis:
                    enter = j
                    break
            if enter is None:
                return
            leave = None
            best = None
            for i in range(m):
                coef = T[i][enter]
                if coef > 0:
                    ratio = T[i][-1] / coef
                    key = (ratio, self.basis[i])
                    if best is None or key < best:
                        best = key
                        leave = i
            if leave is None:
                raise AssertionError("unbounded pivot in a bounded system")
            self._pivot(leave, enter)

    def run_phase1(self):
        """Minimize the artificial-variable sum.  Returns the optimal value."""
        costs = [Fraction(0)] * self.n + [Fraction(1)] * self.m
        allowed = [True] * (self.n + self.m)
        self._bland(costs, allowed)
        value = Fraction(0)
        for i in range(self.m):
            if self.basis[i] >= self.n:
                value += self.T[i][-1]
        return value

    def dual_multipliers(self):
        """y = c_B B^-1 for the phase-I costs, one entry per constraint row."""
        y = []
        for j in range(self.m):
            col = self.n + j
            total = Fraction(0)
            for i in range(self.m):
                if self.basis[i] >= self.n:
                    total += self.T[i][col]
            y.append(total)
        return y

    def drop_artificials(self):
        """Pivot basic artificials out (or drop redundant rows), then forget them."""
        for i in range(self.m - 1, -1, -1):
            if self.basis[i] < self.n:
                continue
            enter = next((j for j in range(self.n) if self.T[i][j]), None)
            if enter is None:
                del self.T[i]
                del self.basis[i]
                self.m -= 1
            else:
                self._pivot(i, enter)
        self.T = [row[: self.n] + row[-1:] for row in self.T]

    def optimize(self, costs):
        """Minimize a structural objective after drop_artificials."""
        T = self.T
        m = self.m
        while True:
            cbar = list(costs)
            for i in range(m):
                cb = costs[self.basis[i]]
                if cb:
                    row = T[i]
                    for j in range(self.n):
                        if row[j]:
                            cbar[j] -= cb * row[j]
            enter = None
            for j in range(self.n):
                if cbar[j] < 0 and j not in self.basis:
                    enter = j
                    break
            if enter is None:
                return
            leave = None
            best = None
            for i in range(m):
                coef = T[i][enter]
                if coef > 0:
                    ratio = T[i][-1] / coef
                    key = (ratio, self.basis[i])
                    if best is None or key < best:
                        best = key
                        leave = i
            if leave is None:
                raise AssertionError("objective unbounded on the standard simplex")
            self._pivot(leave, enter)

    def solution(self):
        v = [Fraction(0)] * self.n
        for i, b in enumerate(self.basis):
            if b < self.n:
                v[b] = self.T[i][-1]
        return v


def _feasibility_tableau(rows, ncols):
    sel = _independent_rows(rows, ncols)
    system = [rows[i] for i in sel] + [tuple([1] * ncols)]
    rhs = [0] * len(sel) + [1]
    tab = _Tableau(system, rhs)
    gap = tab.run_phase1()
    return sel, tab, gap


def solve_feasibility(matrix):
    """Decide {Mv = 0, sum(v) = 1, v >= 0}; always returns a certificate.

    Feasible(v): exact rational point.  Infeasible(u): integer vector over the
    rows of M with M^t u >= 1 coordinatewise.
    """
    rows = _as_rows(matrix)
    ncols = _ncols(matrix, rows)
    if ncols == 0:
        # sum(v) = 1 has no variables to satisfy it
        return Infeasible(tuple([0] * len(rows)))
    sel, tab, gap = _feasibility_tableau(rows, ncols)
    if gap == 0:
        return Feasible(tuple(tab.solution()))
    y = tab.dual_multipliers()
    # y over [selected rows..., sum row]; y^t b = y[-1] = gap > 0 and
    # M_sel^t y_sel <= -gap * 1, so u = -y_sel clears gap on every coordinate.
    u_rat = [-c for c in y[:-1]]
    scale = lcm(*[c.denominator for c in u_rat]) if u_rat else 1
    u_sel = [int(c * scale) for c in u_rat]
    u = [0] * len(rows)
    for pos, row_idx in enumerate(sel):
        u[row_idx] = u_sel[pos]
    if not verify_farkas(matrix, u):
        raise AssertionError("internal error: Farkas certificate failed re-substitution")
    return Infeasible(tuple(u))


def relative_interior_solution(matrix):
    """A feasible point with inclusion-maximal support, or None.

    Maximizes each coordinate separately over the feasible set and averages
    the maximizers with uniform rational weights, so the result is positive on
    exactly the coordinates that are positive somewhere in the feasible set.
    """
    rows = _as_rows(matrix)
    ncols = _ncols(matrix, rows)
    if ncols == 0:
        return None
    sel, tab, gap = _feasibility_tableau(rows, ncols)
    if gap != 0:
        return None
    tab.drop_artificials()
    total = [Fraction(0)] * ncols
    for target in range(ncols):
        costs = [Fraction(0)] * ncols
        costs[target] = Fraction(-1)  # maximize v_target
        tab.optimize(costs)
        point = tab.solution()
        for j in range(ncols):
            total[j] += point[j]
    v = tuple(x / ncols for x in total)
    if not verify_feasible(matrix, v):
        raise AssertionError("internal error: averaged point failed re-substitution")
    return v


def verify_feasible(matrix, v):
    """Exact re-substitution check of Mv = 0, sum(v) = 1, v >= 0."""
    rows = _as_rows(matrix)
    ncols = _ncols(matrix, rows)
    if len(v) != ncols:
        raise ValueError(f"solution has length {len(v)}, matrix has {ncols} columns")
    vec = [Fraction(x) for x in v]
    if any(x < 0 for x in vec):
        return False
    if sum(vec) != 1:
        return False
    for row in rows:
        if sum(a * x for a, x in zip(row, vec)) != 0:
            return False
    return True


def verify_farkas(matrix, u):
    """Check u is integral and every coordinate of M^t u is >= 1."""
    rows = _as_rows(matrix)
    ncols = _ncols(matrix, rows)
    if len(u) != len(rows):
        raise ValueError(f"certificate has length {len(u)}, matrix has {len(rows)} rows")
    ints = []
    for x in u:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                return False
            x = x.numerator
        elif not isinstance(x, int):
            return False
        ints.append(x)
    for j in range(ncols):
        if sum(rows[i][j] * ints[i] for i in range(len(rows))) < 1:
            return False
    return True
