"""Exact double description: rays of {x : a.x >= 0} and cone duality.

The incremental algorithm keeps, for every extreme ray, the bitset of
inequalities it saturates.  New inequalities split the ray set by sign;
adjacent (+,-) pairs combine into new rays, with the standard
combinatorial adjacency test (no third ray saturates the common tight
set).  Insertion order is lexicographic after a deterministic independent
initial set, so outputs are reproducible; there is no floating-point
prefilter anywhere.

``dual_description`` converts between generator and inequality form in
both directions (facets of cone(R) are the extreme rays of the dual cone).
A checkpoint hook makes the long rank-22 run resumable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .desc import ConeDesc, dot, primitive_oriented


class NotPointedError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


def _rank_and_kernel(rows: Sequence[Sequence[int]], n: int):
    """Fraction Gaussian elimination; returns (rank, one kernel vector or None,
    indices of an independent row subset)."""
    work = [[Fraction(v) for v in row] + [Fraction(i == k) for i in range(len(rows))]
            for k, row in enumerate(rows)]
    # only need row rank and pivot rows; do simple elimination on columns 0..n-1
    mat = [[Fraction(v) for v in row] for row in rows]
    pivots: List[Tuple[int, int]] = []  # (row, col)
    used_rows: List[int] = []
    r = 0
    m = len(mat)
    for col in range(n):
        pr = None
        for i in range(m):
            if i in used_rows:
                continue
            if mat[i][col] != 0:
                pr = i
                break
        if pr is None:
            continue
        used_rows.append(pr)
        inv = 1 / mat[pr][col]
        mat[pr] = [v * inv for v in mat[pr]]
        for i in range(m):
            if i != pr and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[pr])]
        pivots.append((pr, col))
        if len(pivots) == n:
            break
    rank = len(pivots)
    kernel_vec = None
    if rank < n:
        pivot_cols = {c for (_r, c) in pivots}
        free = next(c for c in range(n) if c not in pivot_cols)
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for (pr, pc) in pivots:
            vec[pc] = -mat[pr][free]
        denom = 1
        for v in vec:
            denom = denom * v.denominator // __import__("math").gcd(denom, v.denominator)
        kernel_vec = primitive_oriented([int(v * denom) for v in vec])
    return rank, kernel_vec, used_rows


def extreme_rays(normals: Sequence[Sequence[int]], n: int,
                 checkpoint: Optional[Callable[[int, list], None]] = None,
                 resume: Optional[tuple] = None) -> List[Tuple[int, ...]]:
    """Extreme rays of {x in R^n : a.x >= 0 for a in normals} (pointed).

    Raises NotPointedError (with a witness line) when rank(normals) < n.
    ``checkpoint(k, state)`` is called after inserting the k-th constraint;
    ``resume=(k, rays, tightsets)`` restarts from a dump.
    """
    normals = [tuple(v) for v in normals]
    # dedupe, keep deterministic order
    seen = set()
    uniq: List[tuple] = []
    for a in normals:
        p = primitive_oriented(a)
        if p not in seen and any(p):
            seen.add(p)
            uniq.append(p)
    rank, line, init_rows = _rank_and_kernel(uniq, n)
    if rank < n:
        raise NotPointedError(f"constraint normals span rank {rank} < {n}", line)

    init = [uniq[i] for i in init_rows]
    rest = sorted(p for i, p in enumerate(uniq) if i not in init_rows)
    order = init + rest

    if resume is not None:
        start_k, rays, tight = resume
    else:
        # initial simplicial cone: rays = scaled columns of init^{-1}
        mat = [[Fraction(v) for v in row] for row in init]
        inv = _invert(mat, n)
        rays = []
        for j in range(n):
            col = [inv[i][j] for i in range(n)]
            denom = 1
            from math import gcd
            for v in col:
                denom = denom * v.denominator // gcd(denom, v.denominator)
            rays.append(primitive_oriented([int(v * denom) for v in col]))
        tight = []
        for r in rays:
            mask = 0
            for k, a in enumerate(order):
                if dot(a, r) == 0:
                    mask |= 1 << k
            # only the first n constraints are inserted so far; field the mask fully
            tight.append(mask)
        start_k = n

    for k in range(start_k, len(order)):
        a = order[k]
        vals = [dot(a, r) for r in rays]
        keep_idx = [i for i, v in enumerate(vals) if v >= 0]
        plus = [i for i, v in enumerate(vals) if v > 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        if not minus:
            for i, v in enumerate(vals):
                if v == 0:
                    tight[i] |= 1 << k
            if checkpoint:
                checkpoint(k, [rays, tight])
            continue
        processed_mask = (1 << k) - 1
        new_rays: List[tuple] = []
        new_tight: List[int] = []
        all_tight = tight
        min_common = n - 2
        for i in plus:
            ti = tight[i]
            for j in minus:
                common = ti & tight[j]
                if common.bit_count() < min_common - 0:
                    continue
                # combinatorial adjacency: no third ray saturates the common set
                adjacent = True
                for h, th in enumerate(all_tight):
                    if h != i and h != j and (common & ~th) == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vi, vj = vals[i], vals[j]
                combo = [vi * rays[j][t] - vj * rays[i][t] for t in range(n)]
                nr = primitive_oriented(combo)
                mask = 0
                for kk in range(k + 1):
                    if dot(order[kk], nr) == 0:
                        mask |= 1 << kk
                new_rays.append(nr)
                new_tight.append(mask)
        rays = [rays[i] for i in keep_idx] + new_rays
        tight = [tight[i] | ((1 << k) if vals[i] == 0 else 0) for i in keep_idx] + new_tight
        if checkpoint:
            checkpoint(k, [rays, tight])
    return sorted(rays)


def _invert(mat: List[List[Fraction]], n: int) -> List[List[Fraction]]:
    aug = [row[:] + [Fraction(i == j) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        pr = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[pr] = aug[pr], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def dual_description(cone: ConeDesc,
                     checkpoint: Optional[Callable] = None,
                     resume: Optional[tuple] = None) -> ConeDesc:
    """Fill in the missing description (rays <-> facets), exact and minimal."""
    n = cone.ambient_rank
    if cone.facets is not None and cone.rays is None:
        rays = extreme_rays(cone.facets, n, checkpoint=checkpoint, resume=resume)
        return ConeDesc(n, rays=list(rays), facets=list(cone.facets),
                        group_tag=cone.group_tag)
    if cone.rays is not None:
        facets = extreme_rays(cone.rays, n, checkpoint=checkpoint, resume=resume)
        # pointedness of cone(R): its facet normals must span R^n
        rank, line, _ = _rank_and_kernel(facets, n)
        if rank < n:
            raise NotPointedError("input cone contains a line", line)
        return ConeDesc(n, rays=list(cone.rays), facets=list(facets),
                        group_tag=cone.group_tag)
    raise ValueError("cone carries no description to convert")
