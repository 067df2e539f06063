"""Global sections of divisor classes via vanishing-condition matrices.

A divisor class D = dH - sum m_I E_I pulls its section space inside the
degree-d forms on P^4 cut out by multiplicity conditions along the
blown-up strata.  Conditions along 5-free strata are monomial and prune
the column basis directly.  Conditions along strata through the all-ones
point are read off after the staged coordinate changes

    g4 = f(x4-x0, x4-x1, x4-x2, x4-x3, x4)
    g3 = f(x3-x0, x3-x1, x3-x2, x3, x3-x4)
    g2 = f(x2-x0, x2-x1, x2, x2-x3, x2-x4)

which swap p_4, p_3, p_2 with p_5 in turn; each stage only stores rows
whose vanishing is not already implied by earlier stages.  The row
coefficients are signed products of binomials.

Every kernel section is re-verified against an independent multiplicity
oracle (full coefficient transforms frame by frame) before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Field, GF, QQ
from .lattice import DivisorClass, PLANES, LINES, slot
from .linalg import kernel_basis
from .multipoly import MultiPoly, colex_monomials
from .strata import ALL_STRATA, Stratum, stratum

Exp = Tuple[int, ...]


class VerificationError(RuntimeError):
    """A kernel section failed the independent multiplicity oracle."""


@dataclass
class SectionResult:
    h0: int
    section: Optional[MultiPoly]
    field: Field
    d: int
    ncols: int
    nrows: int


def demanded_multiplicity(D: DivisorClass, st: Stratum) -> int:
    m = D.m(st.indices)
    return m if m > 0 else 0


# ---------------------------------------------------------------------------
# staged condition bookkeeping
# ---------------------------------------------------------------------------

# stage alpha handles the 5-containing strata whose relabel (S \ 5) + alpha
# is coordinate in frame alpha and not handled by an earlier stage
def _stage_strata(alpha: int) -> List[Stratum]:
    if alpha == 4:
        out = [stratum((5,))]
        out += [stratum((h, 5)) for h in range(4)]
        out += [stratum((h, j, 5)) for h in range(4) for j in range(h + 1, 4)]
        return out
    if alpha == 3:
        return [stratum((4, 5))] + [stratum((h, 4, 5)) for h in range(3)]
    if alpha == 2:
        return [stratum((3, 4, 5))]
    raise ValueError(alpha)


def _relabel(st: Stratum, alpha: int) -> Tuple[int, ...]:
    return tuple(sorted((set(st.indices) - {5}) | {alpha}))


def _prior_coordinate_strata(alpha: int) -> List[tuple[Tuple[int, ...], Stratum]]:
    """(frame-alpha coordinate label, source stratum) for every stratum whose
    full condition set is already imposed when stage alpha runs and is
    monomial in frame alpha."""
    out = []
    # 5-free strata avoiding alpha keep their labels in frame alpha
    for st in ALL_STRATA:
        if not st.contains5 and alpha not in st.indices:
            out.append((st.indices, st))
    # 5-containing strata processed by earlier stages, relabelled, provided
    # they avoid alpha so the relabel is coordinate in this frame
    for beta in (4, 3):
        if beta <= alpha:
            break
        for st in _stage_strata(beta):
            if alpha not in st.indices:
                out.append((_relabel(st, alpha), st))
    return out


def _killed_by(label: Tuple[int, ...], m: int, I: Exp, d: int) -> bool:
    return m > 0 and sum(I[c] for c in label) > d - m


@lru_cache(maxsize=None)
def _binomials(n: int):
    return [[comb(a, b) for b in range(n + 1)] for a in range(n + 1)]


def retained_columns(D: DivisorClass, d: int) -> List[Exp]:
    """Colex basis of degree-d monomials not killed by 5-free conditions."""
    kills = []
    for st in ALL_STRATA:
        if st.contains5:
            continue
        m = demanded_multiplicity(D, st)
        if m > 0:
            kills.append((st.indices, m))
    cols = []
    for I in colex_monomials(d, 5):
        if not any(_killed_by(lbl, m, I, d) for lbl, m in kills):
            cols.append(I)
    return cols


def constraint_matrix(D: DivisorClass, F: Field):
    """(columns, rows) of the vanishing-condition matrix over F.

    Columns are retained degree-d exponents in colex order; each row is a
    list of F-values giving one b_I relation from the staged coordinate
    changes.
    """
    d = D.d
    if d < 0:
        raise ValueError("negative degree")
    cols = retained_columns(D, d)
    col_index = {e: i for i, e in enumerate(cols)}
    rows: List[List] = []
    binom = _binomials(max(d, 1))
    if F.p == 0:
        fval = lambda n: QQ.from_int(n)
    else:
        fval = F.from_int

    for alpha in (4, 3, 2):
        stage = [(st, _relabel(st, alpha), demanded_multiplicity(D, st))
                 for st in _stage_strata(alpha)]
        stage = [(st, lbl, m) for st, lbl, m in stage if m > 0]
        if not stage:
            continue
        prior = []
        for lbl, src in _prior_coordinate_strata(alpha):
            m = demanded_multiplicity(D, src)
            if m > 0:
                prior.append((lbl, m))
        others = [c for c in range(5) if c != alpha]
        for I in colex_monomials(d, 5):
            if not any(_killed_by(lbl, m, I, d) for _st, lbl, m in stage):
                continue
            if any(_killed_by(lbl, m, I, d) for lbl, m in prior):
                continue
            sign = -1 if sum(I[c] for c in others) % 2 else 1
            row = [F.zero] * len(cols)
            nonzero = False
            for J, jidx in col_index.items():
                coeff = 1
                for c in others:
                    if J[c] < I[c]:
                        coeff = 0
                        break
                    coeff *= binom[J[c]][I[c]]
                if coeff:
                    row[jidx] = fval(sign * coeff)
                    nonzero = True
            if nonzero or True:
                rows.append(row)
    return cols, rows


def h0(D: DivisorClass, F: Field, verify: bool = True) -> SectionResult:
    """Dimension of the section space of D over F, plus one kernel section.

    The returned section (when h0 > 0) has had its vanishing orders
    re-verified with the frame-transform oracle; disagreement raises
    VerificationError rather than returning silently.
    """
    d = D.d
    if d < 0:
        return SectionResult(0, None, F, d, 0, 0)
    cols, rows = constraint_matrix(D, F)
    if not cols:
        return SectionResult(0, None, F, d, 0, len(rows))
    ker = kernel_basis(F, rows, len(cols)) if rows else \
        [[F.one if i == j else F.zero for i in range(len(cols))] for j in range(len(cols))]
    result = SectionResult(len(ker), None, F, d, len(cols), len(rows))
    if ker:
        vec = ker[0]
        poly = MultiPoly(5, {e: c for e, c in zip(cols, vec) if not F.is_zero(c)}, F)
        if verify:
            orders = vanishing_orders(poly)
            for st in ALL_STRATA:
                need = demanded_multiplicity(D, st)
                if orders[st.indices] < need:
                    raise VerificationError(
                        f"section of {D.text()} has order {orders[st.indices]} < {need} "
                        f"along {st}")
        result.section = poly
    return result


# ---------------------------------------------------------------------------
# independent multiplicity oracle and strict transform classes
# ---------------------------------------------------------------------------

def frame_transform(poly: MultiPoly, alpha: int) -> MultiPoly:
    """Coefficients of f(.. x_alpha - x_c .., x_alpha) by binomial expansion."""
    F = poly.field
    out: Dict[Exp, object] = {}
    if F.p == 0:
        fval = QQ.from_int
    else:
        fval = F.from_int
    others = [c for c in range(5) if c != alpha]

    for J, cf in poly.terms.items():
        # expand prod_{c != alpha} (x_alpha - x_c)^{J_c} * x_alpha^{J_alpha}
        partial: Dict[Exp, int] = {(0,) * 5: 1}
        for c in others:
            jc = J[c]
            if jc == 0:
                continue
            nxt: Dict[Exp, int] = {}
            binom = _binomials(jc)[jc]
            for e, w in partial.items():
                for i in range(jc + 1):
                    ee = list(e)
                    ee[c] += i
                    ee[alpha] += jc - i
                    key = tuple(ee)
                    nxt[key] = nxt.get(key, 0) + w * binom[i] * (-1 if i % 2 else 1)
            partial = nxt
        ja = J[alpha]
        for e, w in partial.items():
            ee = list(e)
            ee[alpha] += ja
            key = tuple(ee)
            prev = out.get(key, F.zero)
            val = F.add(prev, F.mul(cf, fval(w)))
            if F.is_zero(val):
                out.pop(key, None)
            else:
                out[key] = val
    return MultiPoly(5, out, F)


def _coordinate_order(poly: MultiPoly, label: Sequence[int]) -> int:
    """Vanishing order along the coordinate span of {e_c : c in label}."""
    comp = [c for c in range(5) if c not in label]
    return min((sum(e[c] for c in comp) for e in poly.terms), default=10 ** 9)


def vanishing_orders(poly: MultiPoly) -> Dict[Tuple[int, ...], int]:
    """Exact vanishing order of a form along all 31 strata.

    Computed monomially in four coordinate frames; this is the oracle that
    double-checks every matrix-derived multiplicity claim.
    """
    if poly.is_zero():
        raise ValueError("zero polynomial has no strict transform")
    if not poly.is_homogeneous():
        raise ValueError("strict transforms need homogeneous input")
    orders: Dict[Tuple[int, ...], int] = {}
    for st in ALL_STRATA:
        if not st.contains5:
            orders[st.indices] = _coordinate_order(poly, st.indices)
    frames = {alpha: frame_transform(poly, alpha) for alpha in (4, 3, 2)}
    for alpha in (4, 3, 2):
        for st in _stage_strata(alpha):
            orders[st.indices] = _coordinate_order(frames[alpha], _relabel(st, alpha))
    return orders


def strict_transform_class(poly: MultiPoly) -> DivisorClass:
    """Class of the strict transform of V(poly) on the blown-up space."""
    orders = vanishing_orders(poly)
    vec = [0] * 42
    vec[0] = poly.total_degree()
    for label, order in orders.items():
        if order:
            vec[slot(label)] = order
    return DivisorClass(vec)


# ---------------------------------------------------------------------------
# component analysis by catalog divisibility
# ---------------------------------------------------------------------------

def _try_divide(f: MultiPoly, g: MultiPoly) -> Optional[MultiPoly]:
    """Exact multivariate division f / g, or None."""
    from .groebner import leading_term, _sub_exp, _divides
    F = f.field
    rem = dict(f.terms)
    quo: Dict[Exp, object] = {}
    glt = leading_term(g.terms)
    ginv = F.inv(g.terms[glt])
    while rem:
        lt = leading_term(rem)
        if not _divides(glt, lt):
            return None
        shift = _sub_exp(lt, glt)
        c = F.mul(rem[lt], ginv)
        quo[shift] = c
        for k, v in g.terms.items():
            kk = tuple(a + b for a, b in zip(k, shift))
            s = F.sub(rem.get(kk, F.zero), F.mul(c, v))
            if F.is_zero(s):
                rem.pop(kk, None)
            else:
                rem[kk] = s
    return MultiPoly(5, quo, F)


def _pth_power_root(f: MultiPoly) -> Optional[MultiPoly]:
    F = f.field
    p = F.p
    if p == 0:
        return None
    out = {}
    for e, c in f.terms.items():
        if any(x % p for x in e):
            return None
        out[tuple(x // p for x in e)] = F.pow(c, p ** (F.k - 1)) if F.k > 1 else \
            F.pow(c, max(p ** 0, 1)) if p == 2 else F.pow(c, pow(p, F.k - 1, 10**9))
    root = MultiPoly(5, out, F)
    return root if root.pow(p) == f else None


@dataclass
class Component:
    factor: MultiPoly
    multiplicity: int
    divisor_class: DivisorClass
    verified_irreducible: bool  # False means "residual, unverified-irreducible"


def linear_catalog(F: Field) -> List[MultiPoly]:
    """Linear forms through at least three base points: coordinates and
    coordinate differences."""
    out = [MultiPoly.variable(c, 5, F) for c in range(5)]
    for i in range(5):
        for j in range(i + 1, 5):
            out.append(MultiPoly.variable(i, 5, F) - MultiPoly.variable(j, 5, F))
    return out


def component_analysis(f: MultiPoly, extra_catalog: Sequence[MultiPoly] = ()) -> List[Component]:
    """Split a form into catalog components plus flagged residual factors.

    General multivariate factorization is deliberately out of scope; the
    divisors this pipeline meets factor into catalog hypersurfaces (linear
    forms through base points, the rigid low-degree catalog, table
    sections and their frame images).  Residual factors are returned with
    their strict-transform class and verified_irreducible=False.
    """
    if f.is_zero() or not f.is_homogeneous():
        raise ValueError("component analysis needs a nonzero homogeneous form")
    F = f.field
    catalog: List[MultiPoly] = list(linear_catalog(F)) + list(extra_catalog)
    out: List[Component] = []
    work = f
    # p-th power peeling first so catalog multiplicities come out right
    power = 1
    while True:
        root = _pth_power_root(work)
        if root is None or root.total_degree() == 0:
            break
        work = root
        power *= F.p
    for g in catalog:
        if g.total_degree() == 0 or g.total_degree() > work.total_degree():
            continue
        mult = 0
        while True:
            q = _try_divide(work, g)
            if q is None:
                break
            work = q
            mult += 1
            if work.total_degree() == 0:
                break
        if mult:
            out.append(Component(g, mult * power, strict_transform_class(g), True))
        if work.total_degree() == 0:
            break
    if work.total_degree() > 0:
        out.append(Component(work, power, strict_transform_class(work), False))
    return out
