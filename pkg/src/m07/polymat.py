"""Matrices over k[t]: Hermite forms, module kernels, minimal bases.

A matrix is a list of rows; entries are :mod:`m07.unipoly` coefficient
tuples over one field.  Columns generate submodules of k[t]^r; the
operations here are exactly the ones the normal-bundle computation needs:

* ``hermite_columns``: a column-style Hermite normal form via unimodular
  column operations, used both to extract a module basis from a generator
  set and to compute module kernels (syzygies) exactly over k[t].
* ``minimal_basis``: column reduction to minimal degrees.  The column
  degrees of the output are the minimal indices of the module; with the
  twist convention of the bundle code they become splitting-type degrees.
* ``intersect_columns``: intersection of two full-rank submodules.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .fields import Field
from . import unipoly as up

Mat = List[List[tuple]]  # rows of unipoly tuples


class RankError(ValueError):
    def __init__(self, message, rank=None):
        super().__init__(message)
        self.rank = rank


def zeros(rows: int, cols: int) -> Mat:
    return [[() for _ in range(cols)] for _ in range(rows)]


def identity(F: Field, n: int) -> Mat:
    return [[(F.one,) if i == j else () for j in range(n)] for i in range(n)]


def ncols(M: Mat) -> int:
    return len(M[0]) if M else 0


def column(M: Mat, j: int) -> List[tuple]:
    return [row[j] for row in M]


def col_degree(M: Mat, j: int) -> int:
    return max((up.deg(row[j]) for row in M), default=-1)


def mul_vec(F: Field, M: Mat, v: Sequence[tuple]) -> List[tuple]:
    out = []
    for row in M:
        acc: tuple = ()
        for e, c in zip(row, v):
            if e and c:
                acc = up.padd(F, acc, up.pmul(F, e, c))
        out.append(acc)
    return out


def hstack(A: Mat, B: Mat) -> Mat:
    return [ra + rb for ra, rb in zip(A, B)]


def _col_axpy(F: Field, M: Mat, dst: int, src: int, q: tuple):
    """column dst -= q * column src."""
    if not q:
        return
    for row in M:
        row[dst] = up.psub(F, row[dst], up.pmul(F, q, row[src]))


def _col_swap(M: Mat, a: int, b: int):
    for row in M:
        row[a], row[b] = row[b], row[a]


def _col_scale(F: Field, M: Mat, j: int, c):
    for row in M:
        row[j] = up.pscale(F, c, row[j])


def hermite_columns(F: Field, M: Mat, transform: bool = False):
    """Column-style Hermite form via Euclidean column operations.

    Returns (H, U) with H = M * U, U unimodular over k[t], H in lower
    column-echelon form: pivot rows strictly increasing per nonzero
    column, pivots monic, zero columns at the right.  With
    ``transform=False`` U is None.
    """
    H = [list(r) for r in M]
    nr, nc = len(H), ncols(H)
    U = identity(F, nc) if transform else None
    cur = 0
    for r in range(nr):
        # Euclidean reduction among columns cur.. on row r
        while True:
            live = [j for j in range(cur, nc) if H[r][j]]
            if len(live) <= 1:
                break
            live.sort(key=lambda j: up.deg(H[r][j]))
            base = live[0]
            for j in live[1:]:
                q, _rem = up.pdivmod(F, H[r][j], H[r][base])
                _col_axpy(F, H, j, base, q)
                if U is not None:
                    _col_axpy(F, U, j, base, q)
        live = [j for j in range(cur, nc) if H[r][j]]
        if not live:
            continue
        j = live[0]
        if j != cur:
            _col_swap(H, cur, j)
            if U is not None:
                _col_swap(U, cur, j)
        c = F.inv(up.lc(H[r][cur]))
        _col_scale(F, H, cur, c)
        if U is not None:
            _col_scale(F, U, cur, c)
        # reduce earlier columns' row-r entries (keeps things small)
        for j in range(cur):
            if H[r][j] and up.deg(H[r][j]) >= up.deg(H[r][cur]):
                q, _ = up.pdivmod(F, H[r][j], H[r][cur])
                _col_axpy(F, H, j, cur, q)
                if U is not None:
                    _col_axpy(F, U, j, cur, q)
        cur += 1
        if cur == nc:
            break
    return H, U


def column_basis(F: Field, M: Mat) -> Mat:
    """Distill a generating set of columns into a free module basis."""
    H, _ = hermite_columns(F, M)
    keep = [j for j in range(ncols(H)) if any(row[j] for row in H)]
    return [[row[j] for j in keep] for row in H]


def kernel_columns(F: Field, M: Mat) -> Mat:
    """Free basis of {v in k[t]^c : M v = 0}, columns of the result."""
    H, U = hermite_columns(F, M, transform=True)
    zero_cols = [j for j in range(ncols(H)) if not any(row[j] for row in H)]
    if not zero_cols:
        return [[] for _ in range(ncols(M))]
    return [[U[i][j] for j in zero_cols] for i in range(ncols(M))]


def module_rank(F: Field, M: Mat) -> int:
    return ncols(column_basis(F, M))


def intersect_columns(F: Field, A: Mat, B: Mat) -> Mat:
    """Intersection of the column spans of A and B inside k[t]^r.

    Computed through the syzygy module of [A | B]: if (u, v) runs over a
    kernel basis then A u runs over a generating set of the intersection.
    """
    stacked = hstack(A, B)
    ker = kernel_columns(F, stacked)
    ca = ncols(A)
    gens_cols = len(ker[0]) if ker and ker[0] else 0
    gens: Mat = [[() for _ in range(gens_cols)] for _ in range(len(A))]
    for j in range(gens_cols):
        u = [ker[i][j] for i in range(ca)]
        img = mul_vec(F, A, u)
        for i in range(len(A)):
            gens[i][j] = img[i]
    return column_basis(F, gens)


def leading_coefficient_matrix(F: Field, M: Mat) -> tuple[list[list], list[int]]:
    degs = [col_degree(M, j) for j in range(ncols(M))]
    lcm_rows = []
    for i in range(len(M)):
        row = []
        for j in range(ncols(M)):
            e = M[i][j]
            row.append(e[degs[j]] if degs[j] >= 0 and up.deg(e) == degs[j] else F.zero)
        lcm_rows.append(row)
    return lcm_rows, degs


def minimal_basis(F: Field, M: Mat) -> tuple[Mat, list[int]]:
    """Column-reduced basis of the column span; degrees sorted ascending.

    Requires the columns to generate a module of rank equal to the column
    count of the distilled basis (full rank r for square use).  The output
    has an invertible leading-coefficient matrix, so its column degrees
    are the unique minimal indices of the module.
    """
    W = column_basis(F, M)
    if not W or not W[0]:
        raise RankError("zero module has no minimal basis", rank=0)
    r = len(W)
    k = ncols(W)
    from .linalg import kernel_basis as field_kernel
    while True:
        lcm_rows, degs = leading_coefficient_matrix(F, W)
        ker = field_kernel(F, lcm_rows, k)
        if not ker:
            break
        # use the kernel combo to drop the degree of its highest-degree column
        combo = ker[0]
        involved = [j for j in range(k) if not F.is_zero(combo[j])]
        target = max(involved, key=lambda j: (degs[j], j))
        dmax = degs[target]
        inv = F.inv(combo[target])
        for j in involved:
            if j == target:
                continue
            coeff = F.mul(inv, combo[j])
            shift = dmax - degs[j]
            q = up.pshift(F, (coeff,), shift)
            for row in W:
                row[target] = up.padd(F, row[target], up.pmul(F, q, row[j]))
        # degree of the target column strictly dropped; loop
    order = sorted(range(k), key=lambda j: (col_degree(W, j), j))
    out = [[row[j] for j in order] for row in W]
    return out, [col_degree(out, j) for j in range(k)]


def submodule_contains(F: Field, B: Mat, v: Sequence[tuple]) -> bool:
    """Membership of a vector in the column span, via Hermite division."""
    H, _ = hermite_columns(F, B)
    keep = [j for j in range(ncols(H)) if any(row[j] for row in H)]
    H = [[row[j] for j in keep] for row in H]
    vv = list(v)
    col_ptr = 0
    for r in range(len(H)):
        if col_ptr < len(H[0]) and H[r][col_ptr]:
            piv = H[r][col_ptr]
            q, rem = up.pdivmod(F, vv[r], piv)
            if rem:
                return False
            for i in range(len(vv)):
                vv[i] = up.psub(F, vv[i], up.pmul(F, q, H[i][col_ptr]))
            col_ptr += 1
        elif vv[r]:
            return False
    return all(not e for e in vv)
