"""Splitting types of the restricted and virtual normal bundles.

Identify the pullback of the five tautological coordinates along a
degree-d witness with k[t]^5 (sheaf-twisted by d at infinity).  For each
mark with contact order k at t = z the deformations preserving the
incidence form the submodule spanned by

    (t-z)^k * k[t]^5,   the k-th Hasse quotient column of the curve,
    and the constant directions of the affine cone over the stratum.

Intersecting these over all marks gives the bundle V; its minimal-basis
column degrees delta_i make V = O(d - delta_1) + ... + O(d - delta_5).

The kernel of V -> (virtual normal bundle) is explicit: it is spanned by
the curve itself (the Euler section) and its derivative (the Jacobian
image), so the quotient's splitting type is computed exactly instead of
being guessed from degree arithmetic.  Profile-only inference (with its
ambiguity reports) is retained for callers without witness data.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from typing import List, Optional, Sequence, Tuple

from .fields import Field, GF
from . import unipoly as up
from . import polymat as pm
from .curves import (ClassMismatchError, CurveWitness, DegenerateWitnessError,
                     Mark, contact_marks, move_marks_affine, verify_class)
from .lattice import CurveClass, DivisorClass, anticanonical, pair
from .multipoly import MultiPoly
from .strata import Stratum, cone_directions


@dataclass(frozen=True)
class SplittingType:
    degrees: Tuple[int, ...]  # sorted descending

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees, reverse=True)))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def degree(self) -> int:
        return sum(self.degrees)

    def globally_generated(self) -> bool:
        return all(x >= 0 for x in self.degrees)

    def negative_part(self) -> Tuple[int, ...]:
        return tuple(x for x in self.degrees if x < 0)

    def __str__(self):
        return "(" + ", ".join(map(str, self.degrees)) + ")"


@dataclass
class AmbiguityReport:
    V: SplittingType
    candidates: List[SplittingType]
    reason: str


class WitnessDegeneracyError(RuntimeError):
    pass


def _hasse_quotient(F: Field, f: tuple, z, k: int) -> tuple:
    """f / (t-z)^k, exact; degeneracy error if the division leaves remainder."""
    out = f
    for _ in range(k):
        q, r = up.pdivmod(F, out, (F.neg(z), F.one))
        if r:
            raise WitnessDegeneracyError("coordinate does not vanish to the contact order")
        out = q
    return out


def _mark_submodule(w: CurveWitness, mark: Mark) -> pm.Mat:
    """Generator matrix (5 rows) of the deformation submodule at one mark."""
    F = w.field
    z = mark.parameter
    k = mark.contact
    st = mark.stratum
    shift = up.ppow(F, (F.neg(z), F.one), k)
    cols: List[List[tuple]] = []
    for j in range(5):
        col = [() for _ in range(5)]
        col[j] = shift
        cols.append(col)
    # Hasse column: quotient of coordinates (or anchored differences)
    hasse = [() for _ in range(5)]
    if st.contains5:
        free = [c for c in range(5) if c not in st.indices]
        a0 = free[0]
        for a in free[1:]:
            hasse[a] = _hasse_quotient(F, up.psub(F, w.coords[a], w.coords[a0]), z, k)
    else:
        for j in range(5):
            if j not in st.indices:
                hasse[j] = _hasse_quotient(F, w.coords[j], z, k)
    cols.append(hasse)
    for direction in cone_directions(F, st):
        cols.append([(v,) if not F.is_zero(v) else () for v in direction])
    return [[cols[c][r] for c in range(len(cols))] for r in range(5)]


def bundle_V(w: CurveWitness) -> tuple[SplittingType, pm.Mat]:
    """Splitting type of V plus its minimal basis (columns in k[t]^5).

    Marks are recomputed from the coordinates (so contact orders are
    honest), moved into the affine patch first.
    """
    w = move_marks_affine(w)
    F = w.field
    d = w.degree
    marks = contact_marks(w)
    current: pm.Mat = pm.identity(F, 5)
    for mark in marks:
        current = pm.intersect_columns(F, current, _mark_submodule(w, mark))
        if pm.ncols(current) < 5:
            raise WitnessDegeneracyError("rank drop while intersecting mark submodules")
    basis, degs = pm.minimal_basis(F, current)
    if len(degs) != 5:
        raise WitnessDegeneracyError("intersection is not of rank 5")
    return SplittingType(tuple(d - delta for delta in degs)), basis


def infer_N(V: SplittingType, w: Optional[CurveWitness] = None,
            char_divides_degree: Optional[bool] = None):
    """Splitting type of the virtual normal bundle, or an ambiguity report.

    With a witness the quotient by the explicit Euler/Jacobian kernel is
    computed exactly.  Without one, the profile rule applies: the kernel
    is O + O(2) when the characteristic divides the map degree and
    O(1) + O(1) otherwise; when that profile cannot embed or several
    quotient profiles are abstractly possible, an AmbiguityReport carrying
    the candidate profiles is returned instead of a guess.
    """
    if w is not None:
        return _infer_N_exact(w)
    if char_divides_degree is None:
        raise ValueError("profile-only inference needs the p | deg(f) flag")
    K = (2, 0) if char_divides_degree else (1, 1)
    candidates = _quotient_profiles(V.degrees, K)
    if not candidates:
        other = (1, 1) if char_divides_degree else (2, 0)
        alt = _quotient_profiles(V.degrees, other)
        return AmbiguityReport(V, [SplittingType(c) for c in sorted(set(alt))],
                               "stated kernel profile cannot embed; candidates "
                               "under both kernel shapes reported")
    candidates = sorted(set(candidates))
    if len(candidates) > 1:
        return AmbiguityReport(V, [SplittingType(c) for c in candidates],
                               "multiple quotient profiles are consistent")
    return SplittingType(candidates[0])


def _quotient_profiles(v_degs: Sequence[int], k_degs: Sequence[int]) -> List[tuple]:
    """Abstractly possible quotient profiles of + O(v) by a subbundle + O(k).

    Maps O(k) -> O(v) exist only for v >= k; an embedding confined to the
    summands with v >= min(k) has constant coefficients exactly where
    v == k.  Candidates are enumerated by which summands absorb the
    kernel, with balancing allowed, then filtered by the subbundle
    degree inequalities.
    """
    v = sorted(v_degs, reverse=True)
    total = sum(v) - sum(k_degs)
    k_sorted = sorted(k_degs, reverse=True)
    if k_sorted[0] > v[0]:
        return []
    out = []
    lo, hi = min(v) - 0, max(v)
    from itertools import combinations_with_replacement
    rng_vals = range(lo, hi + 1)
    for cand in combinations_with_replacement(sorted(rng_vals, reverse=True), 3):
        if sum(cand) != total:
            continue
        cand_desc = tuple(sorted(cand, reverse=True))
        # subbundle constraint: top-j sums of the quotient cannot exceed those of V
        ok = True
        merged = sorted(list(cand_desc) + list(k_sorted), reverse=True)
        for j in range(1, 6):
            if sum(merged[:j]) < sum(v[:j]):
                ok = False
                break
        for j in range(1, 4):
            if sum(cand_desc[:j]) > sum(v[:j]):
                ok = False
                break
        if not ok:
            continue
        # every quotient summand must receive a map from some V summand
        if cand_desc[-1] < min(v):
            continue
        # Hom-support feasibility: the embedding lands in summands with
        # v_i >= min(k); the quotient of the remaining part bounds shape
        if not _embedding_feasible(v, k_sorted, cand_desc):
            continue
        out.append(cand_desc)
    return out


def _embedding_feasible(v: list, k: list, q: tuple) -> bool:
    # necessary counting: for every threshold a, the number of quotient
    # summands of degree >= a plus kernel summands of degree >= a that fit
    # under V must not exceed the V summands of degree >= a ... checked in
    # both directions via h0 comparisons at every twist.
    for m in range(min(v + list(q) + k) - 1, max(v + list(q) + k) + 2):
        h0v = sum(max(0, x + m + 1) for x in v)
        h0k = sum(max(0, x + m + 1) for x in k)
        h0q = sum(max(0, x + m + 1) for x in q)
        h1k = sum(max(0, -(x + m) - 1) for x in k)
        # 0 -> K -> V -> Q -> 0: h0(V) <= h0(K) + h0(Q) and
        # h0(Q) <= h0(V) + h1(K)
        if h0v > h0k + h0q:
            return False
        if h0q > h0v + h1k:
            return False
    return True


def _infer_N_exact(w: CurveWitness) -> SplittingType:
    """N as the exact quotient of V by the explicit (curve, curve') kernel."""
    w = move_marks_affine(w)
    F = w.field
    d = w.degree
    V, basis = bundle_V(w)
    # kernel columns inside V
    cols = [[w.coords[i] for i in range(5)],
            [up.pderiv(F, w.coords[i]) for i in range(5)]]
    Kmat = [[cols[0][i], cols[1][i]] for i in range(5)]
    Kbasis, kappa = pm.minimal_basis(F, Kmat)
    if len(kappa) != 2:
        raise WitnessDegeneracyError("Euler/Jacobian kernel degenerates (ramified map?)")
    delta = [pm.col_degree(basis, j) for j in range(5)]
    # solve basis * C = Kbasis column by column (exact membership)
    C = [[(), ()] for _ in range(5)]
    for cidx in range(2):
        target = [Kbasis[i][cidx] for i in range(5)]
        sol = _module_solve(F, basis, target)
        if sol is None:
            raise WitnessDegeneracyError("kernel does not lie in V")
        for i in range(5):
            C[i][cidx] = sol[i]
    a_list = [d - x for x in delta]          # V = + O(a_i)
    b_list = [d - x for x in kappa]          # K = + O(b_c)
    profile = _quotient_h0_profile(F, C, a_list, b_list)
    if profile is None:
        raise WitnessDegeneracyError("quotient has torsion; witness is ramified "
                                     "or marks are dirty")
    return SplittingType(tuple(profile))


def _module_solve(F: Field, B: pm.Mat, target: List[tuple]) -> Optional[List[tuple]]:
    """Solve B x = target over k[t] (B square, full rank)."""
    aug = [list(row) + [t] for row, t in zip(B, target)]
    ker = pm.kernel_columns(F, aug)
    ncols = len(B[0])
    for j in range(len(ker[0]) if ker and ker[0] is not None else 0):
        last = ker[ncols][j]
        if last and up.deg(last) == 0:
            inv = F.neg(F.inv(last[0]))
            return [up.pscale(F, inv, ker[i][j]) for i in range(ncols)]
    return None


def _quotient_h0_profile(F: Field, C, a_list, b_list) -> Optional[List[int]]:
    """Degrees of coker(+O(b) -> +O(a)) via dual kernel dimensions."""
    from .linalg import kernel_basis
    n_rank = len(a_list) - len(b_list)
    n_deg = sum(a_list) - sum(b_list)
    # sheaf-map degree bounds: deg C[i][c] <= a_i - b_c must hold
    for i in range(len(a_list)):
        for c in range(len(b_list)):
            if C[i][c] and up.deg(C[i][c]) > a_list[i] - b_list[c]:
                return None
    max_m = max([abs(x) for x in a_list + b_list] + [abs(n_deg)]) + 3
    dims = []
    for m in range(-max_m, max_m + 1):
        in_dims = [max(0, m - a) for a in [-x for x in a_list]]
        # sections of V^(m): deg q_i <= m + ... careful: V^ = +O(-a_i);
        # h0(O(-a)(m)) has dimension max(0, m - a + 1)
        in_dims = [max(0, m - a + 1) for a in a_list]
        out_dims = [max(0, m - b + 1) for b in b_list]
        total_in = sum(in_dims)
        if total_in == 0:
            dims.append((m, 0))
            continue
        # build the matrix of (q_i) -> (sum_i C[i][c] q_i)_c
        nrows = sum(out_dims)
        mat = [[F.zero] * total_in for _ in range(nrows)]
        colbase = 0
        for i in range(len(a_list)):
            for j in range(in_dims[i]):
                rowbase = 0
                for c in range(len(b_list)):
                    poly = up.pshift(F, C[i][c], j) if C[i][c] else ()
                    for e_idx, coeff in enumerate(poly):
                        if F.is_zero(coeff):
                            continue
                        if e_idx >= out_dims[c]:
                            return None  # violates twist bookkeeping
                        mat[rowbase + e_idx][colbase + j] = \
                            F.add(mat[rowbase + e_idx][colbase + j], coeff)
                    rowbase += out_dims[c]
            colbase += in_dims[i]
        ker = kernel_basis(F, mat, total_in)
        dims.append((m, len(ker)))
    # recover the degrees n_j of N = +O(n_j): h0(N^(m)) = sum max(0, m - n_j + 1),
    # so a new summand O(n) first contributes at twist m = n
    degrees: List[int] = []
    for m, dim in dims:
        new = dim - sum(max(0, m - n + 1) for n in degrees)
        for _ in range(new):
            degrees.append(m)
        if len(degrees) > n_rank:
            return None
    if len(degrees) != n_rank or sum(degrees) != n_deg:
        return None
    return sorted(degrees, reverse=True)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass
class Certificate:
    kind: str                    # negative-curve | nef | characteristic-pair | failure
    curve_class: CurveClass
    witness: CurveWitness
    V: SplittingType
    N: SplittingType | AmbiguityReport
    checks: List[tuple]          # (criterion tag, description, passed)
    verdict: bool
    divisor: Optional[DivisorClass] = None

    def text(self) -> str:
        lines = [f"certificate {self.kind} verdict={'pass' if self.verdict else 'fail'}",
                 f"class {self.curve_class.text()}"]
        if self.divisor is not None:
            lines.append(f"divisor {self.divisor.text()}")
        lines.append(f"V {self.V}")
        lines.append(f"N {self.N}")
        for tag, desc, passed in self.checks:
            lines.append(f"check {tag} {'pass' if passed else 'FAIL'} {desc}")
        return "\n".join(lines) + "\n"


def certify(w: CurveWitness, divisor: Optional[DivisorClass] = None,
            section: Optional[MultiPoly] = None, seed: int = 0) -> Certificate:
    """Deformation certificate for a verified witness.

    Possible outcomes: a nef certificate (N globally generated), a
    negative-curve certificate (N = gg + O(-n), pairing matches, and for
    n > 1 a smooth divisor point on the image), or a failure certificate
    naming the first failed clause.
    """
    checks: List[tuple] = []
    cls = verify_class(w)
    V, _basis = bundle_V(w)
    N = infer_N(V, w=w)
    mK = anticanonical()
    degree_sum_ok = isinstance(N, SplittingType) and \
        N.degree() == pair(mK, cls) - 2
    checks.append(("degree-sum", f"sum deg N = -K.c - 2 = {pair(mK, cls) - 2}",
                   degree_sum_ok))
    if not degree_sum_ok:
        return Certificate("failure", cls, w, V, N, checks, False, divisor)

    if N.globally_generated():
        checks.append(("L3.1", "N globally generated: class is nef (free witness)", True))
        return Certificate("nef", cls, w, V, N, checks, True, divisor)

    neg = N.negative_part()
    shape_ok = len(neg) == 1
    n = -neg[0] if shape_ok else None
    checks.append(("L3.1", f"N = gg + O(-n) with n = {n}", shape_ok))
    if not shape_ok:
        return Certificate("failure", cls, w, V, N, checks, False, divisor)
    if divisor is None:
        return Certificate("failure", cls, w, V, N,
                           checks + [("L3.1", "no divisor supplied for pairing", False)],
                           False, None)
    pairing_ok = pair(divisor, cls) == -n
    checks.append(("L3.1", f"c.D = -n = {-n}", pairing_ok))
    if not pairing_ok:
        return Certificate("failure", cls, w, V, N, checks, False, divisor)
    if n > 1:
        if section is None:
            checks.append(("L3.1", "n > 1 needs a section for the smoothness probe", False))
            return Certificate("failure", cls, w, V, N, checks, False, divisor)
        smooth = _smooth_point_probe(w, section, seed)
        checks.append(("L3.1", "divisor image smooth at a witness point", smooth))
        if not smooth:
            return Certificate("failure", cls, w, V, N, checks, False, divisor)
    return Certificate("negative-curve", cls, w, V, N, checks, True, divisor)


def _smooth_point_probe(w: CurveWitness, section: MultiPoly, seed: int,
                        tries: int = 5) -> bool:
    """Evaluate the section gradient at mark-free image points."""
    F = w.field
    sec = section if section.field == F else section.map_field(F)
    import random as _random
    rng = _random.Random(seed)
    mark_params = {m.parameter for m in w.marks if not m.at_infinity}
    for _ in range(tries * 40):
        t0 = F.random(rng)
        if t0 in mark_params:
            continue
        pt = [up.peval(F, f, t0) for f in w.coords]
        if all(F.is_zero(x) for x in pt):
            continue
        if not F.is_zero(sec.evaluate(pt)):
            continue  # the point must lie on the divisor image
        grad = [sec.partial(i).evaluate(pt) for i in range(5)]
        if any(not F.is_zero(g) for g in grad):
            return True
    return False
