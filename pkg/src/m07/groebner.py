"""Buchberger engine and zero-dimensional solving over finite fields.

Polynomials are dicts {exponent tuple: coefficient} over one field, in a
fixed number of variables; the monomial order is degrevlex throughout.
The S-pair loop uses the sugar selection strategy and both classic
Buchberger criteria, and it charges every reduction against a hard S-pair
budget so hanging computations surface as :class:`BudgetExceeded` instead
of stalling a search race.

Point extraction from a zero-dimensional ideal goes through the quotient
algebra: minimal polynomial of a (seeded) separating linear form, variable
recovery by linear solves, then base extension to the splitting field of a
chosen irreducible factor.  Extracted points are always re-verified on the
input equations, which keeps the shortcut sound even when a separating
form candidate is bad.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Field, GF
from . import unipoly as up
from .linalg import kernel_basis

Term = Tuple[int, ...]
PolyDict = Dict[Term, object]


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, stats: dict):
        super().__init__(message)
        self.stats = stats


def _cmp_key(e: Term) -> tuple:
    # degrevlex: higher degree first; ties broken by the reversed exponent
    # vector with SMALLER last entries first ("reverse lex").
    return (sum(e), tuple(-x for x in reversed(e)))


def _elim_cmp_key(e: Term) -> tuple:
    # block order eliminating the LAST variable: its degree dominates,
    # degrevlex on the rest
    rest = e[:-1]
    return (e[-1], sum(rest), tuple(-x for x in reversed(rest)))


def leading_term(f: PolyDict, key=_cmp_key) -> Term:
    return max(f, key=key)


def _divides(a: Term, b: Term) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_exp(a: Term, b: Term) -> Term:
    return tuple(x - y for x, y in zip(a, b))


def _add_exp(a: Term, b: Term) -> Term:
    return tuple(x + y for x, y in zip(a, b))


def _lcm_exp(a: Term, b: Term) -> Term:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mul_term(F: Field, f: PolyDict, e: Term, c) -> PolyDict:
    return {_add_exp(k, e): F.mul(v, c) for k, v in f.items()}


def add(F: Field, f: PolyDict, g: PolyDict) -> PolyDict:
    out = dict(f)
    for k, v in g.items():
        s = F.add(out.get(k, F.zero), v)
        if F.is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def normal_form(F: Field, f: PolyDict, basis: Sequence[tuple], charge=None,
                neg_key=None) -> PolyDict:
    """Multivariate division remainder of f by the basis.

    ``basis`` entries are (lead_term, lead_coeff_inverse, poly_dict).
    A lazy max-heap tracks the current leading term of the work
    polynomial, so each reduction step costs O(|reducer| log |work|).
    """
    import heapq
    if neg_key is None:
        neg_key = _neg_key
    work = dict(f)
    heap = [(neg_key(e)) + (e,) for e in work]
    heapq.heapify(heap)
    out: PolyDict = {}
    while work:
        while heap:
            top = heap[0][-1]
            if top in work:
                break
            heapq.heappop(heap)
        if not heap:
            break
        lt = top
        lc = work[lt]
        reduced = False
        for blt, binv, bf in basis:
            if _divides(blt, lt):
                coeff = F.mul(lc, binv)
                shift = _sub_exp(lt, blt)
                for k, v in bf.items():
                    kk = _add_exp(k, shift)
                    old = work.get(kk)
                    s = F.sub(old if old is not None else F.zero, F.mul(coeff, v))
                    if F.is_zero(s):
                        work.pop(kk, None)
                    else:
                        if old is None:
                            heapq.heappush(heap, neg_key(kk) + (kk,))
                        work[kk] = s
                reduced = True
                if charge is not None:
                    charge()
                break
        if not reduced:
            out[lt] = work.pop(lt)
    return out


def _neg_key(e: Term) -> tuple:
    return (-sum(e), tuple(x for x in reversed(e)))


def _elim_neg_key(e: Term) -> tuple:
    rest = e[:-1]
    return (-e[-1], -sum(rest), tuple(x for x in reversed(rest)))


ORDERS = {
    "degrevlex": (_cmp_key, _neg_key),
    "elim_last": (_elim_cmp_key, _elim_neg_key),
}


def _prep(F: Field, polys: Sequence[PolyDict], key=_cmp_key):
    out = []
    for f in polys:
        if not f:
            continue
        lt = leading_term(f, key)
        out.append((lt, F.inv(f[lt]), f))
    return out


def buchberger(F: Field, polys: Sequence[PolyDict], nvars: int,
               spair_budget: int = 200_000, order: str = "degrevlex") -> List[PolyDict]:
    """Reduced Groebner basis (sugar strategy) w.r.t. degrevlex or the
    last-variable elimination block order.

    Raises BudgetExceeded when the combined S-pair/reduction work exceeds
    the budget.
    """
    cmp_key, neg_key = ORDERS[order]
    charges = {"n": 0}

    def charge():
        charges["n"] += 1
        if charges["n"] > spair_budget * 16:
            raise BudgetExceeded("reduction budget exceeded", dict(charges))

    import heapq

    G: List[PolyDict] = []
    lts: List[Term] = []
    prepped: List[tuple] = []
    sugars: List[int] = []
    heap: list = []          # (sugar, lcm_key, i, j, lcm)
    alive = set()

    def push_pair(i: int, j: int):
        lcm = _lcm_exp(lts[i], lts[j])
        s = max(sum(lcm) - sum(lts[i]) + sugars[i],
                sum(lcm) - sum(lts[j]) + sugars[j])
        heapq.heappush(heap, (s, cmp_key(lcm), i, j, lcm))
        alive.add((i, j))

    def add_poly(f: PolyDict, sugar: int):
        lt = leading_term(f, cmp_key)
        new_index = len(G)
        G.append(f)
        lts.append(lt)
        prepped.append((lt, F.inv(f[lt]), f))
        sugars.append(sugar)
        for k in range(new_index):
            push_pair(new_index, k)

    seed_polys = [f for f in polys if f]
    seed_polys.sort(key=lambda f: (cmp_key(leading_term(f, cmp_key)), len(f)))
    for f in seed_polys:
        nf = normal_form(F, f, prepped, charge, neg_key)
        if nf:
            add_poly(nf, sum(leading_term(nf, cmp_key)))

    processed = 0
    while heap:
        processed += 1
        if processed > spair_budget:
            raise BudgetExceeded("S-pair budget exceeded",
                                 {"spairs": processed, **charges})
        _s, _k, i, j, lcm = heapq.heappop(heap)
        if (i, j) not in alive:
            continue
        alive.discard((i, j))
        lti, ltj = lts[i], lts[j]
        # product criterion
        if lcm == _add_exp(lti, ltj):
            continue
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if _divides(lts[k], lcm):
                a = (max(i, k), min(i, k))
                b = (max(j, k), min(j, k))
                if a not in alive and b not in alive:
                    skip = True
                    break
        if skip:
            continue
        spoly = add(F,
                    _mul_term(F, G[i], _sub_exp(lcm, lti), F.inv(G[i][lti])),
                    {k: F.neg(v) for k, v in
                     _mul_term(F, G[j], _sub_exp(lcm, ltj), F.inv(G[j][ltj])).items()})
        nf = normal_form(F, spoly, prepped, charge, neg_key)
        if nf:
            s = max(sum(lcm) - sum(lti) + sugars[i], sum(lcm) - sum(ltj) + sugars[j])
            add_poly(nf, s)

    # inter-reduce: minimal then reduced basis
    lead = [leading_term(g, cmp_key) for g in G]
    keep = []
    for idx, lt in enumerate(lead):
        if not any(_divides(lead[k], lt) for k in keep) and \
           not any(_divides(lead[k], lt) and k != idx for k in range(len(G)) if k not in keep and k < idx):
            keep = [k for k in keep if not _divides(lt, lead[k])]
            keep.append(idx)
    minimal = [G[k] for k in keep]
    reduced: List[PolyDict] = []
    for idx, g in enumerate(minimal):
        others = _prep(F, [h for k, h in enumerate(minimal) if k != idx], cmp_key)
        nf = normal_form(F, g, others, None, neg_key)
        if nf:
            lt = leading_term(nf, cmp_key)
            inv = F.inv(nf[lt])
            reduced.append({k: F.mul(inv, v) for k, v in nf.items()})
    reduced.sort(key=lambda f: cmp_key(leading_term(f, cmp_key)))
    return reduced


# ---------------------------------------------------------------------------
# zero-dimensional structure
# ---------------------------------------------------------------------------

def saturate(F: Field, polys: Sequence[PolyDict], nvars: int, q: PolyDict,
             spair_budget: int = 60_000) -> List[PolyDict]:
    """Saturation (I : q^infinity) intersected back into the original ring.

    Rabinowitsch with a fresh last variable and the elimination block
    order; generators with positive y-degree are discarded.  Repeatedly
    saturating by the coincidence equations removes the degenerate
    components the search must localize away from.
    """
    ext = [{k + (0,): v for k, v in f.items()} for f in polys]
    rab = {k + (1,): v for k, v in q.items()}
    one_exp = (0,) * (nvars + 1)
    rab[one_exp] = F.sub(rab.get(one_exp, F.zero), F.one)
    if F.is_zero(rab[one_exp]):
        del rab[one_exp]
    G = buchberger(F, ext + [rab], nvars + 1, spair_budget=spair_budget,
                   order="elim_last")
    out = []
    for g in G:
        if all(k[-1] == 0 for k in g):
            out.append({k[:-1]: v for k, v in g.items()})
    return out


def quotient_basis(G: Sequence[PolyDict], nvars: int, cap: int = 4096) -> Optional[List[Term]]:
    """Staircase monomial basis of the quotient, or None if not 0-dim."""
    leads = [leading_term(g) for g in G]
    for v in range(nvars):
        if not any(all(lt[w] == 0 for w in range(nvars) if w != v) and lt[v] > 0
                   for lt in leads) and not any(sum(lt) == 0 for lt in leads):
            return None
    basis: List[Term] = []
    frontier = [(0,) * nvars]
    seen = {frontier[0]}
    while frontier:
        m = frontier.pop()
        if any(_divides(lt, m) for lt in leads):
            continue
        basis.append(m)
        if len(basis) > cap:
            return None
        for v in range(nvars):
            m2 = list(m)
            m2[v] += 1
            m2 = tuple(m2)
            if m2 not in seen:
                seen.add(m2)
                frontier.append(m2)
    basis.sort(key=_cmp_key)
    return basis


class QuotientAlgebra:
    """Linear algebra model of F[x]/I for a zero-dimensional ideal."""

    def __init__(self, F: Field, G: Sequence[PolyDict], nvars: int):
        self.F = F
        self.nvars = nvars
        self.G = list(G)
        self.prepped = _prep(F, self.G)
        qb = quotient_basis(G, nvars)
        if qb is None:
            raise ValueError("ideal is not zero-dimensional")
        self.basis = qb
        self.index = {m: i for i, m in enumerate(qb)}
        self.dim = len(qb)

    def nf_vector(self, f: PolyDict) -> list:
        nf = normal_form(self.F, f, self.prepped)
        vec = [self.F.zero] * self.dim
        for k, v in nf.items():
            vec[self.index[k]] = v
        return vec

    def var_poly(self, i: int) -> PolyDict:
        e = [0] * self.nvars
        e[i] = 1
        return {tuple(e): self.F.one}

    def mult_by_linear(self, vec: list, coeffs: Sequence) -> list:
        """Multiply a quotient element by sum_i coeffs[i] x_i."""
        F = self.F
        poly: PolyDict = {}
        for bidx, c in enumerate(vec):
            if F.is_zero(c):
                continue
            m = self.basis[bidx]
            for i, ci in enumerate(coeffs):
                if F.is_zero(ci):
                    continue
                e = list(m)
                e[i] += 1
                k = tuple(e)
                s = F.add(poly.get(k, F.zero), F.mul(c, ci))
                if F.is_zero(s):
                    poly.pop(k, None)
                else:
                    poly[k] = s
        return self.nf_vector(poly)


def _min_poly_of_vectors(F: Field, vectors: List[list]) -> tuple:
    """Least monic combination: smallest r with v_r in span(v_0..v_{r-1});
    returns the dependency as a polynomial (c_0..c_{r-1}, 1)."""
    rows = []
    for r in range(1, len(vectors) + 1):
        mat = [[vectors[j][i] for j in range(r)] for i in range(len(vectors[0]))]
        ker = kernel_basis(F, mat, r)
        if ker:
            vec = ker[0]
            inv = F.inv(vec[-1]) if not F.is_zero(vec[-1]) else None
            if inv is None:
                continue
            return up.trim([F.mul(inv, c) for c in vec])
    raise ArithmeticError("no linear dependency found")


def solve_points(F: Field, G: Sequence[PolyDict], nvars: int, seed: int = 0,
                 max_tries: int = 8):
    """All candidate points grouped by separating-form factors.

    Returns (ext_field, point) for one deterministic choice: the factor of
    smallest degree (then lex-least), with every coordinate expressed in
    the Conway presentation of the splitting field.  Returns None when the
    quotient is trivial (no solutions).  Points are verified on G.
    """
    algebra = QuotientAlgebra(F, G, nvars)
    if algebra.dim == 0:
        return None
    rng = random.Random(seed)
    choices: List[Sequence] = []
    for i in range(nvars):
        coeffs = [F.zero] * nvars
        coeffs[i] = F.one
        choices.append(coeffs)
    for _ in range(max_tries):
        choices.append([F.random(rng) for _ in range(nvars)])

    one = [F.zero] * algebra.dim
    one[algebra.index[(0,) * nvars]] = F.one

    for coeffs in choices:
        # Krylov sequence of the separating form u
        vecs = [one]
        for _ in range(algebra.dim):
            vecs.append(algebra.mult_by_linear(vecs[-1], coeffs))
        try:
            mp = _min_poly_of_vectors(F, vecs)
        except ArithmeticError:
            continue
        e = up.deg(mp)
        if e == 0:
            continue
        # solve x_i = h_i(u) on the Krylov span
        span = vecs[:e]
        mat_rows = [[span[j][i] for j in range(e)] for i in range(algebra.dim)]
        h: List[tuple] = []
        solvable = True
        for i in range(nvars):
            target = algebra.nf_vector(algebra.var_poly(i))
            sol = _solve_exact(F, mat_rows, target)
            if sol is None:
                solvable = False
                break
            h.append(up.trim(sol))
        if not solvable:
            continue
        sf = _squarefree_part(F, mp)
        factors = up.factor(F, sf, seed=seed)
        factors.sort(key=lambda fm: (up.deg(fm[0]), fm[0]))
        for g, _m in factors:
            k = up.deg(g) * F.k
            try:
                ext = GF(F.p, k) if k > 1 else GF(F.p)
            except Exception:
                continue  # splitting degree outside the Conway table
            root = _root_in(F, ext, g, seed)
            if root is None:
                continue
            point = []
            for i in range(nvars):
                hi = h[i]
                val = ext.zero
                power = ext.one
                for c in hi:
                    val = ext.add(val, ext.mul(ext.embed_from(F, c), power))
                    power = ext.mul(power, root)
                point.append(val)
            if _verify_point(F, ext, G, point):
                return ext, point
    return None


def _squarefree_part(F: Field, f: tuple) -> tuple:
    out = (F.one,)
    for g, _m in up.squarefree_decomposition(F, f):
        out = up.pmul(F, out, g)
    return out


def _solve_exact(F: Field, mat_rows: List[list], target: list) -> Optional[list]:
    """Solve M x = target exactly; None if inconsistent."""
    ncols_ = len(mat_rows[0]) if mat_rows else 0
    aug = [row + [t] for row, t in zip(mat_rows, target)]
    ker = kernel_basis(F, aug, ncols_ + 1)
    for vec in ker:
        if not F.is_zero(vec[-1]):
            inv = F.neg(F.inv(vec[-1]))
            return [F.mul(inv, c) for c in vec[:-1]]
    return None


def _root_in(F: Field, ext: Field, g: tuple, seed: int):
    """Deterministic root of the F-irreducible g inside the extension."""
    gg = tuple(ext.embed_from(F, c) for c in g)
    if up.deg(g) == 1:
        return ext.neg(gg[0])
    factors = up.factor(ext, gg, seed=seed)
    linears = sorted([f for f, _ in factors if up.deg(f) == 1])
    if not linears:
        return None
    return ext.neg(linears[0][0])


def _verify_point(F: Field, ext: Field, G: Sequence[PolyDict], point: list) -> bool:
    for g in G:
        acc = ext.zero
        for e, c in g.items():
            term = ext.embed_from(F, c)
            for xi, ei in zip(point, e):
                if ei:
                    term = ext.mul(term, ext.pow(xi, ei))
            acc = ext.add(acc, term)
        if not ext.is_zero(acc):
            return False
    return True
