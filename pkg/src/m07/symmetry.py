"""The symmetric-group action on divisor and curve classes.

S_7 permutes the seven markings {0..6}.  Marking 6 plays the role of the
projection class: permutations fixing 6 act by relabelling the blown-up
strata, while the transposition (k 6) acts through the degree-4 space
Cremona transformation centered at the five points other than p_k.  The
Cremona images of H and E_j are not printed anywhere usable, so they are
locked in by four independent machine checks in the test suite
(involution, boundary permutation, pairing invariance, anticanonical
invariance).

Curve classes transform by the pairing transpose: apply_curve(s) is the
unique linear map with pair(apply(s, D), apply_curve(s, c)) = pair(D, c).
"""

from __future__ import annotations

import re
from itertools import combinations
from typing import Iterable, List, Sequence, Tuple

from .lattice import (CurveClass, DivisorClass, LINES, PLANES, RANK,
                      SLOT_LABELS, slot)

Perm7 = Tuple[int, int, int, int, int, int, int]

IDENTITY: Perm7 = tuple(range(7))
GROUP_ORDER = 5040


def perm(images: Sequence[int]) -> Perm7:
    p = tuple(int(v) for v in images)
    if sorted(p) != list(range(7)):
        raise ValueError(f"not a permutation of 0..6: {images}")
    return p


def compose(s: Perm7, t: Perm7) -> Perm7:
    """(s o t)(i) = s(t(i))."""
    return tuple(s[t[i]] for i in range(7))


def inverse(s: Perm7) -> Perm7:
    out = [0] * 7
    for i, v in enumerate(s):
        out[v] = i
    return tuple(out)


def transposition(a: int, b: int) -> Perm7:
    out = list(range(7))
    out[a], out[b] = b, a
    return tuple(out)


def parse_cycles(text: str) -> Perm7:
    """Parse cycle notation like ``(0 1)(5 6)``; ``()`` is the identity."""
    out = list(range(7))
    for cyc in re.findall(r"\(([^()]*)\)", text):
        entries = [int(v) for v in cyc.split()]
        if len(entries) >= 2:
            base = list(out)
            for i, v in enumerate(entries):
                w = entries[(i + 1) % len(entries)]
                # apply cycle after what we have so far
            cycle_perm = list(range(7))
            for i, v in enumerate(entries):
                cycle_perm[v] = entries[(i + 1) % len(entries)]
            out = [cycle_perm[out[i]] for i in range(7)]
    return perm(out)


def cycles_str(s: Perm7) -> str:
    seen = [False] * 7
    parts = []
    for i in range(7):
        if seen[i] or s[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = s[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = s[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) if parts else "()"


# ---------------------------------------------------------------------------
# action on divisor classes
# ---------------------------------------------------------------------------

def _apply_label_perm(rho: Perm7, vec: Tuple[int, ...]) -> Tuple[int, ...]:
    """Action of a permutation fixing marking 6: relabel strata."""
    out = [0] * RANK
    out[0] = vec[0]
    for idx in range(1, RANK):
        label = SLOT_LABELS[idx]
        image = tuple(sorted(rho[i] for i in label))
        out[slot(image)] = vec[idx]
    return tuple(out)


def _apply_cremona(k: int, vec: Tuple[int, ...]) -> Tuple[int, ...]:
    """Action of the transposition (k 6): the Cremona centered away from p_k.

    H maps to the quartic class 4H - 3 sum_{j!=k} E_j - 2 sum E_ij - sum E_ijh
    (indices avoiding k); E_k is fixed; E_j maps to the degree-1 boundary
    class of {j, k}; lines and planes avoiding k swap with their
    complementary planes and lines.
    """
    d = vec[0]
    others = [j for j in range(6) if j != k]
    sum_pts = sum(vec[1 + j] for j in others)
    out = [0] * RANK
    out[0] = 4 * d - sum_pts
    out[1 + k] = vec[1 + k]
    for j in others:
        out[1 + j] = 3 * d - (sum_pts - vec[1 + j])
    for (a, b) in LINES:
        s_ab = slot((a, b))
        if k in (a, b):
            out[s_ab] += vec[s_ab]
        else:
            third = tuple(sorted(set(others) - {a, b}))
            out[s_ab] += 2 * d - (sum_pts - vec[1 + a] - vec[1 + b]) + vec[slot(third)]
    for tri in PLANES:
        s_tri = slot(tri)
        if k in tri:
            out[s_tri] += vec[s_tri]
        else:
            duo = tuple(sorted(set(others) - set(tri)))
            out[s_tri] += d - (sum_pts - sum(vec[1 + j] for j in tri)) + vec[slot(duo)]
    return tuple(out)


def apply(sigma: Perm7, D: DivisorClass) -> DivisorClass:
    """Image of a divisor class under a marking permutation."""
    k = None
    rho = sigma
    if sigma[6] != 6:
        k = sigma[6]
        rho = compose(transposition(k, 6), sigma)  # rho fixes 6
    vec = _apply_label_perm(rho, D.vec)
    if k is not None:
        vec = _apply_cremona(k, vec)
    return DivisorClass(vec)


_PAIR_SIGNS = (1,) + (-1,) * (RANK - 1)


# cache of the 42x42 integer matrices of the curve action
_CURVE_MATRIX_CACHE: dict = {}


def _curve_matrix(sigma: Perm7):
    if sigma not in _CURVE_MATRIX_CACHE:
        inv = inverse(sigma)
        cols = []
        for j in range(RANK):
            basis = [0] * RANK
            basis[j] = 1
            cols.append(apply(inv, DivisorClass(basis)).vec)
        # A[r][c] = cols[c][r] is the matrix of apply(sigma^{-1});
        # the curve action is B = G A^T G, i.e. B[i][j] = s_i s_j cols[i][j].
        matrix = [[cols[i][j] * _PAIR_SIGNS[i] * _PAIR_SIGNS[j] for j in range(RANK)]
                  for i in range(RANK)]
        _CURVE_MATRIX_CACHE[sigma] = matrix
    return _CURVE_MATRIX_CACHE[sigma]


def apply_curve(sigma: Perm7, c: CurveClass) -> CurveClass:
    """Pairing transpose of apply(sigma^{-1}): the unique pairing-preserving
    companion action on curve classes."""
    matrix = _curve_matrix(sigma)
    cv = c.vec
    nz = [j for j in range(RANK) if cv[j]]
    return CurveClass(tuple(sum(matrix[i][j] * cv[j] for j in nz) for i in range(RANK)))


apply_curve_fast = apply_curve


# ---------------------------------------------------------------------------
# orbits and canonical representatives
# ---------------------------------------------------------------------------

GENERATORS: Tuple[Perm7, ...] = tuple(transposition(i, i + 1) for i in range(6))


def _act(sigma: Perm7, x):
    if isinstance(x, DivisorClass):
        return apply(sigma, x)
    if isinstance(x, CurveClass):
        return apply_curve_fast(sigma, x)
    raise TypeError(f"cannot act on {type(x).__name__}")


def orbit(x) -> List:
    """Full orbit under S_7 via generator BFS; deterministic order."""
    seen = {x.vec: x}
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            for g in GENERATORS:
                z = _act(g, y)
                if z.vec not in seen:
                    seen[z.vec] = z
                    nxt.append(z)
        frontier = nxt
    return [seen[v] for v in sorted(seen)]


_LINE5_SLOTS = tuple(slot((i, 5)) for i in range(5))
_PLANE5_SLOTS = tuple(slot(tuple(sorted((i, j, 5)))) for (i, j) in combinations(range(5), 2))


def canonical_key(x) -> tuple:
    """Sort key: degree, m_5, sorted m_.5, sorted m_..5, then full lex."""
    v = x.vec
    return (v[0], v[6], tuple(sorted(v[s] for s in _LINE5_SLOTS)),
            tuple(sorted(v[s] for s in _PLANE5_SLOTS)), v)


def canonical_rep(x):
    """The orbit member minimizing canonical_key; idempotent by construction."""
    return min(orbit(x), key=canonical_key)


def orbit_record(x) -> tuple:
    """(canonical representative, orbit size, stabilizer order)."""
    members = orbit(x)
    size = len(members)
    if GROUP_ORDER % size:
        raise ArithmeticError(f"orbit size {size} does not divide {GROUP_ORDER}")
    return min(members, key=canonical_key), size, GROUP_ORDER // size


# ---------------------------------------------------------------------------
# coset transversals for stabilizer refinement
# ---------------------------------------------------------------------------

def transversals(blocks: Sequence[Iterable[int]], new_part: Iterable[int]) -> List[Perm7]:
    """Transversal of the refined stabilizer inside a Young subgroup.

    ``blocks`` partitions {0..6} (the orbits of the coarse stabilizer G);
    ``new_part`` is the subset J whose stabilizer is intersected in.  The
    returned permutations, products of order-preserving swap sets per
    block, traverse the cosets of G' = G meet (Sym(J) x Sym(J^c)); there
    are prod_i C(k_i, k_i') of them.
    """
    blocks = [sorted(set(b)) for b in blocks]
    flat = sorted(v for b in blocks for v in b)
    if flat != list(range(7)):
        raise ValueError("blocks must partition {0..6}")
    J = set(new_part)
    if not J <= set(range(7)):
        raise ValueError("new partition must be a subset of the markings")

    per_block: List[List[Perm7]] = []
    for b in blocks:
        inside = [v for v in b if v in J]
        outside = [v for v in b if v not in J]
        swaps: List[Perm7] = []
        for j in range(min(len(inside), len(outside)) + 1):
            for a_sel in combinations(inside, j):
                for b_sel in combinations(outside, j):
                    p = list(range(7))
                    for a, c in zip(a_sel, b_sel):
                        p[a], p[c] = p[c], p[a]
                    swaps.append(tuple(p))
        per_block.append(swaps)

    out = [IDENTITY]
    for swaps in per_block:
        out = [compose(s, t) for s in out for t in swaps]
    # remove duplicates while keeping deterministic order
    seen = set()
    unique = []
    for s in out:
        if s not in seen:
            seen.add(s)
            unique.append(s)
    return unique
