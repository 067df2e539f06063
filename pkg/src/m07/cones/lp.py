"""Exact rational linear programming with certificates.

One engine: min c.x over {x >= 0 : A x = b}, dense tableau simplex with
Bland's rule over Fractions (no cycling, no floating point).  Phase I
decides feasibility and returns a Farkas vector y (y.A <= 0, y.b > 0) on
infeasibility; phase II returns the optimum with primal point and dual
multipliers, and both are re-checked exactly (weak duality as an
assertion, complementary slackness by construction).

The two public wrappers build the cone problems of the search loop:
``lp_min`` minimizes a functional over a cone slice, ``lp_express``
decides conic membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple


@dataclass
class LPCertificate:
    optimum: Fraction
    primal: List[Fraction]
    duals: List[Fraction]


@dataclass
class InfeasibleCertificate:
    farkas: List[Fraction]


class _Tableau:
    def __init__(self, A: List[List[Fraction]], b: List[Fraction], c: List[Fraction]):
        self.m = len(A)
        self.n = len(A[0]) if A else 0
        self.A = [row[:] for row in A]
        self.b = b[:]
        self.c = c[:]
        # make b >= 0
        for i in range(self.m):
            if self.b[i] < 0:
                self.b[i] = -self.b[i]
                self.A[i] = [-v for v in self.A[i]]

    def solve(self):
        """Two-phase simplex; returns (status, x, basis, y) with
        status in {"optimal", "infeasible", "unbounded"}."""
        m, n = self.m, self.n
        Z = Fraction(0)
        ONE = Fraction(1)
        # phase I tableau with artificials
        T = [self.A[i][:] + [ONE if j == i else Z for j in range(m)] + [self.b[i]]
             for i in range(m)]
        basis = list(range(n, n + m))
        cost = [Z] * n + [ONE] * m

        def pivot(T, basis, row, col):
            piv = T[row][col]
            inv = 1 / piv
            T[row] = [v * inv for v in T[row]]
            prow = T[row]
            for r in range(len(T)):
                if r != row and T[r][col] != 0:
                    f = T[r][col]
                    T[r] = [a - f * p for a, p in zip(T[r], prow)]

        def run(T, basis, cost, ncols):
            # Bland's rule on reduced costs
            while True:
                # compute y = cost_B applied through current tableau:
                # reduced cost_j = cost_j - sum_i cost_B[i] * T[i][j]
                cb = [cost[b] for b in basis]
                enter = -1
                for j in range(ncols):
                    if j in basis:
                        continue
                    red = cost[j] - sum(cb[i] * T[i][j] for i in range(len(T)))
                    if red < 0:
                        enter = j
                        break
                if enter < 0:
                    return "optimal"
                # ratio test, Bland tie-break on basis variable index
                leave = -1
                best = None
                for i in range(len(T)):
                    a = T[i][enter]
                    if a > 0:
                        ratio = T[i][-1] / a
                        if best is None or ratio < best or \
                                (ratio == best and basis[i] < basis[leave]):
                            best = ratio
                            leave = i
                if leave < 0:
                    return "unbounded"
                pivot(T, basis, leave, enter)
                basis[leave] = enter

        status = run(T, basis, cost, n + m)
        phase1 = sum(cost[b] * T[i][-1] for i, b in enumerate(basis))
        if phase1 > 0:
            # Farkas: y = cost_B B^-1; rows of T give B^-1 A etc.
            y = self._dual_from(T, basis, cost)
            return "infeasible", None, None, y
        # drive artificials out of the basis where possible
        for i in range(m):
            if basis[i] >= n:
                piv_col = -1
                for j in range(n):
                    if T[i][j] != 0:
                        piv_col = j
                        break
                if piv_col >= 0:
                    pivot(T, basis, i, piv_col)
                    basis[i] = piv_col
        # rows whose basis is still artificial are redundant zero rows; keep.
        cost2 = self.c[:] + [Z] * m
        status = run(T, basis, cost2, n)  # artificials excluded from entering
        if status == "unbounded":
            return "unbounded", None, None, None
        x = [Z] * n
        for i, bidx in enumerate(basis):
            if bidx < n:
                x[bidx] = T[i][-1]
        y = self._dual_from(T, basis, cost2)
        return "optimal", x, basis, y

    def _dual_from(self, T, basis, cost):
        """y^T = cost_B^T B^{-1}, read from the artificial columns."""
        m, n = self.m, self.n
        cb = [cost[b] for b in basis]
        y = []
        for i in range(m):
            col = n + i
            y.append(sum(cb[r] * T[r][col] for r in range(m)))
        return y


def solve_eq_form(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction],
                  c: Sequence[Fraction]):
    """min c.x  s.t.  A x = b, x >= 0.  Exact; see class docstring."""
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    t = _Tableau(A, b, c)
    status, x, basis, y = t.solve()
    if status == "infeasible":
        # orient the Farkas vector against the ORIGINAL rows (t may have
        # flipped signs to make b nonnegative)
        farkas = list(y)
        for i in range(len(b)):
            if b[i] < 0:
                farkas[i] = -farkas[i]
        return InfeasibleCertificate(farkas)
    if status == "unbounded":
        return "unbounded"
    # exact verification: A x = b, x >= 0
    for i, row in enumerate(A):
        assert sum(a * v for a, v in zip(row, x)) == b[i], "primal verification failed"
    assert all(v >= 0 for v in x)
    opt = sum(ci * xi for ci, xi in zip(c, x))
    yb = sum(yi * bi for yi, bi in zip(y, b))
    assert yb == opt, "strong duality verification failed"
    return LPCertificate(opt, x, y)


# ---------------------------------------------------------------------------
# cone-flavored wrappers
# ---------------------------------------------------------------------------

def lp_min(objective: Sequence[int], constraint_rows: Sequence[Sequence[int]],
           slice_row: Sequence[int], slice_value: int = 1):
    """min objective.v  over  {v : row.v >= 0 for all rows, slice.v = value}.

    Free variables are split v = u - w; inequality slacks close the system.
    Returns LPCertificate (duals ordered: one per constraint row, then the
    slice multiplier) or InfeasibleCertificate, or "unbounded".
    """
    n = len(objective)
    rows = [list(r) for r in constraint_rows]
    m = len(rows)
    Z = Fraction(0)
    A: List[List[Fraction]] = []
    for i, r in enumerate(rows):
        A.append([Fraction(v) for v in r] + [Fraction(-v) for v in r]
                 + [Fraction(-(j == i)) for j in range(m)])
    A.append([Fraction(v) for v in slice_row] + [Fraction(-v) for v in slice_row]
             + [Z] * m)
    b = [Z] * m + [Fraction(slice_value)]
    c = [Fraction(v) for v in objective] + [Fraction(-v) for v in objective] + [Z] * m
    res = solve_eq_form(A, b, c)
    if isinstance(res, InfeasibleCertificate) or res == "unbounded":
        return res
    primal = [res.primal[j] - res.primal[n + j] for j in range(n)]
    return LPCertificate(res.optimum, primal, res.duals)


def lp_express(target: Sequence[int], generators: Sequence[Sequence[int]]):
    """Nonnegative rational coefficients with sum lam_i g_i = target, or a
    separating functional phi (phi.g <= 0 for all generators, phi.target > 0)."""
    if not generators:
        gens: List[Sequence[int]] = []
    else:
        gens = list(generators)
    n = len(target)
    A = [[Fraction(g[i]) for g in gens] for i in range(n)]
    b = [Fraction(v) for v in target]
    c = [Fraction(0)] * len(gens)
    res = solve_eq_form(A, b, c)
    if isinstance(res, InfeasibleCertificate):
        phi = res.farkas
        # verify the separation exactly
        assert sum(p * t for p, t in zip(phi, target)) > 0
        for g in gens:
            assert sum(p * v for p, v in zip(phi, g)) <= 0
        return res
    if res == "unbounded":
        raise AssertionError("feasibility problem cannot be unbounded")
    return res
