"""Exact kernels and ranks of matrices over the toolkit fields.

Three execution paths, all returning exact results:

* GF(2): rows as Python-int bitmasks, word-parallel elimination.
* other prime fields: numpy int64 elimination mod p.
* rationals: row-wise denominator clearing, elimination modulo a
  deterministic sequence of word-size primes, CRT + rational
  reconstruction of the canonical kernel basis, then exact integer
  re-verification of M v = 0.  The verification step makes the modular
  shortcut rigorous: nullity mod p is always >= nullity over Q, and each
  verified vector certifies the reverse inequality.

Pivoting is reduced-echelon with the lowest-index pivot column, so kernel
bases are canonical and golden tests stay stable.

Extension-field matrices take a generic pure-Python path; they only occur
in small sizes (module intersections, Groebner auxiliaries).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import List, Sequence

import numpy as np

from .fields import Field, QQ

__all__ = ["kernel_basis", "rank", "MixedFieldError"]


class MixedFieldError(TypeError):
    """Entries do not all belong to the declared field."""


# primes just under 2^25: p^2 * ncols stays far below 2^63 for any matrix
# this toolkit builds
_CRT_PRIMES = (
    33554393, 33554383, 33554371, 33554347, 33554341, 33554317, 33554291,
    33554273, 33554267, 33554249, 33554227, 33554201, 33554167, 33554159,
    33554137, 33554123,
)


def _validate(F: Field, rows: Sequence[Sequence]) -> None:
    if F.p == 0:
        ok = lambda v: isinstance(v, (int, Fraction))
    elif F.k == 1:
        ok = lambda v: isinstance(v, int) and 0 <= v < F.p
    else:
        ok = lambda v: isinstance(v, tuple) and len(v) == F.k
    for row in rows:
        for v in row:
            if not ok(v):
                raise MixedFieldError(f"entry {v!r} is not a {F.spec.label()} value")


# ---------------------------------------------------------------------------
# GF(2) bitset path
# ---------------------------------------------------------------------------

def _rref_gf2(rows: List[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon over GF(2); rows are little-endian bitmasks.

    Returns (pivot_columns, reduced_rows_for_those_pivots).
    """
    pivots: list[int] = []
    reduced: list[int] = []
    work = [r for r in rows if r]
    for col in range(ncols):
        bit = 1 << col
        pivot_row = None
        for idx, r in enumerate(work):
            if r & bit:
                pivot_row = idx
                break
        if pivot_row is None:
            continue
        prow = work.pop(pivot_row)
        reduced = [rr ^ prow if rr & bit else rr for rr in reduced]
        work = [rr ^ prow if rr & bit else rr for rr in work]
        work = [rr for rr in work if rr]
        pivots.append(col)
        reduced.append(prow)
        if not work:
            break
    return pivots, reduced


def kernel_gf2(rows: List[int], ncols: int) -> List[int]:
    """Kernel basis over GF(2), one bitmask per basis vector."""
    pivots, reduced = _rref_gf2(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = 1 << free
        fbit = 1 << free
        for pcol, prow in zip(pivots, reduced):
            if prow & fbit:
                vec |= 1 << pcol
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# prime field path (numpy)
# ---------------------------------------------------------------------------

def _rref_mod_p(mat: np.ndarray, p: int) -> tuple[list[int], np.ndarray]:
    """In-place reduced echelon mod p; returns (pivot columns, matrix)."""
    mat = np.mod(mat, p)
    nrows, ncols = mat.shape
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(mat[r:, col])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            mat[[r, pr]] = mat[[pr, r]]
        inv = pow(int(mat[r, col]), -1, p)
        mat[r] = (mat[r] * inv) % p
        column = mat[:, col].copy()
        column[r] = 0
        nzrows = np.nonzero(column)[0]
        if nzrows.size:
            mat[nzrows] = (mat[nzrows] - np.outer(column[nzrows], mat[r])) % p
        pivots.append(col)
        r += 1
    return pivots, mat


def _kernel_from_rref(pivots: list[int], mat: np.ndarray, ncols: int, p: int):
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [0] * ncols
        vec[free] = 1
        for i, pcol in enumerate(pivots):
            vec[pcol] = (-int(mat[i, free])) % p
        basis.append(vec)
    return basis


def kernel_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> List[List[int]]:
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    mat = np.array(rows, dtype=np.int64)
    pivots, rref = _rref_mod_p(mat, p)
    return _kernel_from_rref(pivots, rref, ncols, p)


# ---------------------------------------------------------------------------
# rational path: CRT + rational reconstruction + exact verification
# ---------------------------------------------------------------------------

def _rational_reconstruct(r: int, m: int) -> Fraction | None:
    """Wang reconstruction: a/b = r mod m with |a|, b <= sqrt(m/2)."""
    bound = isqrt(m // 2)
    s0, s1 = m, r % m
    t0, t1 = 0, 1
    while s1 > bound:
        q = s0 // s1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    if gcd(s1, t1) != 1:
        return None
    if t1 < 0:
        s1, t1 = -s1, -t1
    return Fraction(s1, t1)


def _int_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fracs = [Fraction(v) for v in row]
        denom = 1
        for v in fracs:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        out.append([int(v * denom) for v in fracs])
    return out


def kernel_qq(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    int_rows = _int_rows(rows)
    if not int_rows:
        return [[Fraction(i == j) for i in range(ncols)] for j in range(ncols)]

    collected: list[tuple[int, list[int], list[list[int]]]] = []  # (p, pivots, basis)
    best_pivots: list[int] | None = None
    for p in _CRT_PRIMES:
        mat = np.array([[v % p for v in row] for row in int_rows], dtype=np.int64)
        pivots, rref = _rref_mod_p(mat, p)
        basis = _kernel_from_rref(pivots, rref, ncols, p)
        if best_pivots is None or len(pivots) > len(best_pivots) or \
                (len(pivots) == len(best_pivots) and pivots < best_pivots):
            if best_pivots is not None and pivots != best_pivots:
                collected.clear()
            best_pivots = pivots
        if pivots == best_pivots:
            collected.append((p, pivots, basis))
        if len(collected) < 2:
            continue
        candidate = _crt_reconstruct(collected, ncols)
        if candidate is not None and _verify_kernel(int_rows, candidate):
            return candidate
    raise ArithmeticError("rational kernel reconstruction failed; matrix too wild for the prime pool")


def _crt_reconstruct(collected, ncols) -> List[List[Fraction]] | None:
    base_p, _pv, base_basis = collected[0]
    nvecs = len(base_basis)
    modulus = 1
    residues = [[0] * ncols for _ in range(nvecs)]
    for p, _pivots, basis in collected:
        if len(basis) != nvecs:
            return None
        if modulus == 1:
            modulus = p
            residues = [list(v) for v in basis]
            continue
        inv = pow(modulus % p, -1, p)
        for vi in range(nvecs):
            for ci in range(ncols):
                r0 = residues[vi][ci]
                delta = ((basis[vi][ci] - r0) * inv) % p
                residues[vi][ci] = r0 + modulus * delta
        modulus *= p
    out = []
    for vec in residues:
        frac_vec = []
        for r in vec:
            f = _rational_reconstruct(r, modulus)
            if f is None:
                return None
            frac_vec.append(f)
        out.append(frac_vec)
    return out


def _verify_kernel(int_rows: list[list[int]], basis: List[List[Fraction]]) -> bool:
    for vec in basis:
        denom = 1
        for v in vec:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        ivec = [int(v * denom) for v in vec]
        for row in int_rows:
            if sum(a * b for a, b in zip(row, ivec) if b) != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# generic path and public API
# ---------------------------------------------------------------------------

def _rref_generic(F: Field, rows: list[list]) -> tuple[list[int], list[list]]:
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pr = None
        for i in range(r, len(work)):
            if not F.is_zero(work[i][col]):
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = F.inv(work[r][col])
        work[r] = [F.mul(inv, v) for v in work[r]]
        for i in range(len(work)):
            if i != r and not F.is_zero(work[i][col]):
                c = work[i][col]
                work[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
    return pivots, work[:r]


def kernel_basis(F: Field, rows: Sequence[Sequence], ncols: int | None = None) -> List[List]:
    """Basis of {v : M v = 0}, canonical (free columns carry identity)."""
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    _validate(F, rows)
    if F.p == 0:
        return kernel_qq(rows, ncols)
    if F.p == 2 and F.k == 1:
        masks = []
        for row in rows:
            m = 0
            for j, v in enumerate(row):
                if v & 1:
                    m |= 1 << j
            masks.append(m)
        bit_basis = kernel_gf2(masks, ncols)
        return [[(b >> j) & 1 for j in range(ncols)] for b in bit_basis]
    if F.k == 1:
        return kernel_mod_p(rows, ncols, F.p)
    pivots, rref = _rref_generic(F, rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [F.zero] * ncols
        vec[free] = F.one
        for i, pcol in enumerate(pivots):
            vec[pcol] = F.neg(rref[i][free])
        basis.append(vec)
    return basis


def rank(F: Field, rows: Sequence[Sequence], ncols: int | None = None) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return ncols - len(kernel_basis(F, rows, ncols))


def rank_int(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix (exact, via the rational path)."""
    if not rows:
        return 0
    return rank(QQ, [[Fraction(v) for v in row] for row in rows])
