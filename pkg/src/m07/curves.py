"""Curve-class witnesses: incidence systems, solving, and class verification.

A curve class dl - sum n_I e_I with nonnegative multiplicities corresponds
to degree-d maps P^1 -> P^4 meeting each blown-up stratum at n_I marked
parameters.  The system builder writes each coordinate as
a_i prod (t - root), identifies roots across coordinates for marks on
coordinate strata (at most d per coordinate), and imposes difference
conditions at marks on strata through the all-ones point.  Aut(P^1) is
spent on fixing the image of t = infinity (a seeded general point, on the
target divisor when one is given) and two parameter values.

Solving cuts the system with expected-dimension many seeded hyperplanes,
runs Buchberger to a zero-dimensional basis, extracts a point over its
splitting field, rejects degenerate points, and re-verifies the strict
transform class of the witness from scratch.  Failure is always an
explicit report, never a nonexistence claim.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Field, GF
from . import unipoly as up
from .lattice import CurveClass, DivisorClass, RANK, SLOT_LABELS, pair, anticanonical, slot
from .multipoly import MultiPoly
from .strata import ALL_STRATA, Stratum, anchored_pairs, stratum
from . import groebner as gb


class OutOfScopeError(ValueError):
    pass


class DegenerateWitnessError(RuntimeError):
    pass


class ClassMismatchError(RuntimeError):
    def __init__(self, message, offending=None, verified=None):
        super().__init__(message)
        self.offending = offending
        self.verified = verified


@dataclass
class Mark:
    stratum: Stratum
    parameter: object          # field value, or the string "inf"
    contact: int = 1

    @property
    def at_infinity(self) -> bool:
        return isinstance(self.parameter, str)


@dataclass
class CurveWitness:
    field: Field
    coords: List[tuple]        # five unipoly tuples, max degree = d
    marks: List[Mark]

    @property
    def degree(self) -> int:
        return max(up.deg(f) for f in self.coords)


@dataclass
class CurveSystem:
    curve_class: CurveClass
    field: Field
    names: List[tuple]                       # variable ledger, index = var id
    equations: List[dict]                    # groebner PolyDicts
    localized_away: List[dict]               # inequation polynomials
    expected_dim: int
    mark_vars: Dict[int, int]                # mark index -> z variable id (affine marks)
    mark_list: List[Tuple[Stratum, object]]  # (stratum, var id | fixed value)
    coord_roots: List[List[object]]          # per coordinate: var ids / fixed values
    a_values: List[object]                   # fixed leading coefficients
    n_value: int

    @property
    def num_vars(self) -> int:
        return len(self.names)


def expected_dimension(c: CurveClass, n_value: int) -> int:
    d = c.deg
    w = 3 * sum(c.vec[1:7]) + 2 * sum(c.vec[7:22]) + sum(c.vec[22:42])
    return 5 * d + (n_value - 2) - w


def _random_smooth_point(F: Field, rng: random.Random,
                         section: Optional[MultiPoly]) -> List:
    """A general affine point: all coordinates and pairwise differences
    nonzero, on V(section) and off its singular locus when given."""
    for _ in range(4000):
        pt = [F.one] + [F.random(rng) for _ in range(4)]
        # re-randomize the first coordinate too, keeping it nonzero
        c0 = F.random(rng)
        if not F.is_zero(c0):
            pt[0] = c0
        if any(F.is_zero(x) for x in pt):
            continue
        if any(F.is_zero(F.sub(pt[i], pt[j])) for i in range(5) for j in range(i + 1, 5)):
            continue
        if section is None:
            return pt
        # move the point onto the hypersurface along a random line
        direction = [F.random(rng) for _ in range(5)]
        poly = _restrict_to_line(section, pt, direction)
        roots = up.roots_in_field(F, poly) if poly else []
        good = []
        for r in roots:
            q = [F.add(a, F.mul(r, b)) for a, b in zip(pt, direction)]
            if any(F.is_zero(x) for x in q):
                continue
            if any(F.is_zero(F.sub(q[i], q[j])) for i in range(5) for j in range(i + 1, 5)):
                continue
            grad = [section.partial(i).evaluate(q) for i in range(5)]
            if all(F.is_zero(g) for g in grad):
                continue
            good.append(q)
        if good:
            return good[0]
    raise RuntimeError("could not sample a general point (field too small?)")


def _restrict_to_line(poly: MultiPoly, base: List, direction: List) -> tuple:
    F = poly.field
    out: tuple = ()
    for e, c in poly.terms.items():
        term = (c,)
        for i, ei in enumerate(e):
            if ei:
                lin = up.trim([base[i], direction[i]])
                term = up.pmul(F, term, up.ppow(F, lin, ei))
        out = up.padd(F, out, term)
    return out


def build_system(c: CurveClass, F: Field, seed: int = 0,
                 target: Optional[MultiPoly] = None,
                 n_value: Optional[int] = None,
                 target_class: Optional[DivisorClass] = None,
                 fix_infinity_point: bool = True) -> CurveSystem:
    """Incidence system for the class over F (a prime field or small tower).

    ``target`` is the image polynomial of a divisor the curve should sweep
    (fixes f(inf) on its smooth locus); ``n_value`` overrides the default
    n = -(c.target_class), 3 when speculative, 0 when a nef witness is
    expected.  With ``fix_infinity_point=False`` the leading coefficients
    stay variables (a_0 scaled to 1) and a third parameter value is gauged
    instead; use this when the swept locus is unknown.
    """
    if any(v < 0 for v in c.vec[1:]):
        raise OutOfScopeError("classes with negative multiplicities are outside the "
                              "incidence-system algorithm")
    d = c.deg
    if d <= 0:
        raise OutOfScopeError("positive degree required")
    from .lattice import boundary_catalog
    for key, B in boundary_catalog().items():
        if pair(B, c) < 0:
            import warnings
            warnings.warn(f"class pairs negatively with boundary {sorted(key)}; "
                          "solvability guarantees do not apply")
            break
    if n_value is None:
        if target_class is not None:
            n_value = -pair(target_class, c)
        else:
            n_value = 3
    rng = random.Random(seed)

    names: List[tuple] = []

    def new_var(name: tuple) -> int:
        names.append(name)
        return len(names) - 1

    marks: List[Tuple[Stratum, object]] = []
    for st in ALL_STRATA:
        n = c.vec[slot(st.indices)]
        for copy in range(n):
            marks.append((st, new_var(("z",) + st.indices + (copy,))))

    # root identification: coordinates vanish at marks on 5-free strata
    coord_roots: List[List[object]] = [[] for _ in range(5)]
    for mi, (st, zv) in enumerate(marks):
        if st.contains5:
            continue
        for j in range(5):
            if j not in st.indices:
                coord_roots[j].append(zv)
                if len(coord_roots[j]) > d:
                    raise OutOfScopeError(
                        f"coordinate {j} needs more than {d} identified roots; "
                        "class is not representable this way")
    free_roots: List[List[object]] = [[] for _ in range(5)]
    for j in range(5):
        while len(coord_roots[j]) + len(free_roots[j]) < d:
            free_roots[j].append(new_var(("r", j, len(free_roots[j]))))

    gauge_targets: List[int] = []
    for st, zv in marks:
        gauge_targets.append(zv)
    for j in range(5):
        gauge_targets.extend(free_roots[j])
    fixed: Dict[int, object] = {}

    if fix_infinity_point:
        # image of t = infinity: a seeded general point fixes the a_i,
        # leaving the affine reparametrizations to pin two parameters
        a_values: List[object] = _random_smooth_point(F, rng, target)
        gauge_values = [F.zero, F.one]
    else:
        # scale gauge on the map plus the full Moebius group on parameters
        a_values = [F.one] + [new_var(("a", j)) for j in range(1, 5)]
        third = F.random(rng)
        while F.is_zero(third) or third == F.one:
            third = F.random(rng)
        gauge_values = [F.zero, F.one, third]
    for v, val in zip(gauge_targets[:len(gauge_values)], gauge_values):
        fixed[v] = val

    def var_poly(v: object) -> dict:
        if isinstance(v, int) and v in fixed:
            v = fixed[v]
        if isinstance(v, int):
            e = [0] * len(names)
            e[v] = 1
            return {tuple(e): F.one}
        return {(0,) * len(names): v} if not F.is_zero(v) else {}

    nvars = len(names)
    zero_exp = (0,) * nvars

    def const(val) -> dict:
        return {zero_exp: val} if not F.is_zero(val) else {}

    def resolve(v):
        return fixed.get(v, v) if isinstance(v, int) else v

    def poly_sub(p, q):
        return gb.add(F, p, {k: F.neg(v) for k, v in q.items()})

    def poly_mul(p, q):
        out: dict = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = F.add(out.get(e, F.zero), F.mul(c1, c2))
                if F.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return out

    def lin(v) -> dict:
        """The symbol for a variable-or-constant as a PolyDict."""
        v = resolve(v)
        if isinstance(v, int):
            e = [0] * nvars
            e[v] = 1
            return {tuple(e): F.one}
        return const(v)

    # evaluate f_j at a parameter symbol, optionally omitting given roots
    def f_eval(j: int, z, omit=()) -> dict:
        acc = lin(a_values[j])
        skip = list(omit)
        for root in coord_roots[j] + free_roots[j]:
            if root in skip:
                skip.remove(root)
                continue
            acc = poly_mul(acc, poly_sub(lin(z), lin(root)))
        return acc

    equations: List[dict] = []
    localized: List[dict] = []
    # difference conditions at 5-containing marks; shared explicit roots of
    # the two coordinates are divided out of the difference (they are
    # common symbolic factors), which removes the spurious components where
    # a mark collides with an identified root
    for mi, (st, zv) in enumerate(marks):
        if not st.contains5:
            continue
        free = [c for c in range(5) if c not in st.indices]
        for ai in range(len(free)):
            for bi in range(ai + 1, len(free)):
                a, b = free[ai], free[bi]
                shared = [r for r in coord_roots[a] if r in coord_roots[b]]
                eq = poly_sub(f_eval(a, zv, omit=shared), f_eval(b, zv, omit=shared))
                if eq:
                    equations.append(eq)

    # localization data (checked on candidate points, Rabinowitsch on retry)
    mark_syms = [lin(zv) for (_st, zv) in marks]
    for i in range(len(mark_syms)):
        for j in range(i + 1, len(mark_syms)):
            localized.append(poly_sub(mark_syms[i], mark_syms[j]))
    for j in range(5):
        for i, r1 in enumerate(free_roots[j]):
            for r2 in free_roots[j][i + 1:]:
                localized.append(poly_sub(lin(r1), lin(r2)))
            # free roots of f_j must avoid marks whose stratum contains j
            # (they are allowed to coincide with marks identified in f_j)
            for (st2, z2) in marks:
                if st2.contains5 or j in st2.indices:
                    localized.append(poly_sub(lin(r1), lin(z2)))
    for a in a_values:
        if isinstance(a, int):
            localized.append(lin(a))
    localized = [p for p in localized if p]

    e_dim = expected_dimension(c, n_value)
    mark_vars = {mi: zv for mi, (st, zv) in enumerate(marks)}
    return CurveSystem(curve_class=c, field=F, names=names, equations=equations,
                      localized_away=localized, expected_dim=e_dim,
                      mark_vars=mark_vars, mark_list=marks,
                      coord_roots=[[*coord_roots[j], *free_roots[j]] for j in range(5)],
                      a_values=a_values, n_value=n_value)


@dataclass
class SolveReport:
    status: str                 # "witness" | "exhausted" | "budget"
    witness: Optional[CurveWitness]
    attempts: int
    seed: int
    detail: str = ""


def _cut_values(F: Field, rng: random.Random, count: int) -> List:
    seen = set()
    out = []
    guard = 0
    while len(out) < count:
        guard += 1
        if guard > 10000:
            raise RuntimeError("field too small for distinct cut values")
        v = F.random(rng)
        if F.is_zero(v) or v == F.one or v in seen:
            continue
        seen.add(v)
        out.append(v)
    return out


def _gauged_value(system: CurveSystem, v, point) -> object:
    if isinstance(v, int):
        return point[v]
    return v


def solve(system: CurveSystem, seed: int = 0, spair_budget: int = 150_000,
          max_recuts: int = 6) -> SolveReport:
    """Drive the paper loop: localize, cut, Groebner, extract, verify.

    The coincidence inequations are saturated out of the ideal first (one
    elimination pass per inequation), so the remaining variety carries only
    honest curves; expected-dimension many seeded hyperplane cuts then make
    it finite.  Extracted points are still checked against the inequations
    and the witness class is recomputed from scratch.
    """
    F = system.field
    nvars = system.num_vars
    attempts = 0
    try:
        base = _saturated_equations(system, spair_budget)
    except gb.BudgetExceeded as exc:
        return SolveReport("budget", None, 1, seed, f"saturation: {exc}")
    if base == [{(0,) * nvars: F.one}] or any(g == {(0,) * nvars: F.one} for g in base):
        return SolveReport("exhausted", None, 1, seed,
                           "no nondegenerate curve through the seeded image point")
    for recut in range(max_recuts):
        rng = random.Random((seed << 8) | recut)
        attempts += 1
        eqs = [dict(e) for e in base]
        cut_vars = _choose_cut_vars(system, rng)
        cuts = max(system.expected_dim, 0)
        vals = _cut_values(F, rng, cuts) if cuts else []
        for var, val in zip(cut_vars, vals):
            e = [0] * nvars
            e[var] = 1
            eqs.append({tuple(e): F.one, (0,) * nvars: F.neg(val)})
        try:
            G = gb.buchberger(F, eqs, nvars, spair_budget=spair_budget)
        except gb.BudgetExceeded as exc:
            return SolveReport("budget", None, attempts, seed, str(exc))
        if G == [{(0,) * nvars: F.one}]:
            continue  # inconsistent cut; try again
        extra_cut_rounds = 0
        while gb.quotient_basis(G, nvars) is None and extra_cut_rounds < 4:
            extra_cut_rounds += 1
            var = _choose_cut_vars(system, rng)[0]
            val = _cut_values(F, rng, 1)[0]
            e = [0] * nvars
            e[var] = 1
            eqs.append({tuple(e): F.one, (0,) * nvars: F.neg(val)})
            try:
                G = gb.buchberger(F, eqs, nvars, spair_budget=spair_budget)
            except gb.BudgetExceeded as exc:
                return SolveReport("budget", None, attempts, seed, str(exc))
        if gb.quotient_basis(G, nvars) is None:
            continue
        found = gb.solve_points(F, G, nvars, seed=seed + recut)
        if found is None:
            continue
        ext, pt = found
        if not _point_nondegenerate(system, ext, pt):
            continue
        witness = _witness_from_point(system, ext, pt)
        try:
            verified = verify_class(witness)
        except (DegenerateWitnessError, ClassMismatchError):
            continue
        if verified == system.curve_class:
            return SolveReport("witness", witness, attempts, seed)
    return SolveReport("exhausted", None, attempts, seed,
                       "retry budget exhausted; no nondegenerate point found")


def _saturated_equations(system: CurveSystem, spair_budget: int) -> List[dict]:
    """Localize the incidence ideal away from every recorded inequation."""
    F = system.field
    nvars = system.num_vars
    eqs = [dict(e) for e in system.equations]
    for q in system.localized_away:
        eqs = gb.saturate(F, eqs, nvars, q, spair_budget=spair_budget)
        if eqs == [{(0,) * nvars: F.one}]:
            break
    return eqs


def _choose_cut_vars(system: CurveSystem, rng: random.Random) -> List[int]:
    pool = list(range(system.num_vars))
    rng.shuffle(pool)
    return pool


def _point_nondegenerate(system: CurveSystem, ext: Field, pt: List) -> bool:
    for ineq in system.localized_away:
        acc = ext.zero
        for e, c in ineq.items():
            term = ext.embed_from(system.field, c)
            for xi, ei in zip(pt, e):
                if ei:
                    term = ext.mul(term, ext.pow(xi, ei))
            acc = ext.add(acc, term)
        if ext.is_zero(acc):
            return False
    return True


def _witness_from_point(system: CurveSystem, ext: Field, pt: List) -> CurveWitness:
    F = system.field

    def val(v):
        if isinstance(v, int):
            return pt[v]
        return ext.embed_from(F, v)

    coords = []
    for j in range(5):
        poly = (val(system.a_values[j]),)
        for root in system.coord_roots[j]:
            poly = up.pmul(ext, poly, (ext.neg(val(root)), ext.one))
        coords.append(poly)
    marks = []
    for st, zv in system.mark_list:
        marks.append(Mark(st, val(zv), 1))
    return CurveWitness(ext, coords, marks)


# ---------------------------------------------------------------------------
# class verification from the witness alone
# ---------------------------------------------------------------------------

def _stratum_polys(w: CurveWitness, st: Stratum) -> List[tuple]:
    F = w.field
    if st.contains5:
        return [up.psub(F, w.coords[a], w.coords[b]) for (a, b) in anchored_pairs(st)]
    return [w.coords[j] for j in range(5) if j not in st.indices]


def _gcd_data(w: CurveWitness, st: Stratum) -> tuple[tuple, int]:
    """(affine gcd polynomial, vanishing count at infinity) for a stratum."""
    F = w.field
    d = w.degree
    polys = _stratum_polys(w, st)
    if all(not p for p in polys):
        raise DegenerateWitnessError(f"curve is contained in the span of {st}")
    g = up.pgcd_many(F, [p for p in polys if p])
    inf = min(d - up.deg(p) if p else d for p in polys)
    return g, inf


def verify_class(w: CurveWitness) -> CurveClass:
    """Recompute the strict-transform class from the coordinates alone.

    Incidence degrees come from gcds of coordinate subsets and coordinate
    differences (with s-power bookkeeping at infinity); multiplicities of
    deeper strata are peeled off lattice-style so each stratum only counts
    its own open-part contacts.  The result must match the witness mark
    ledger; contact orders beyond 1 are read off root multiplicities.
    """
    F = w.field
    d = w.degree
    if any(up.deg(f) < 0 for f in w.coords):
        raise DegenerateWitnessError("zero coordinate")
    total = up.pgcd_many(F, [f for f in w.coords])
    if up.deg(total) > 0 or min(d - up.deg(f) for f in w.coords) > 0:
        raise DegenerateWitnessError("coordinates share a common root")

    gcds: Dict[Tuple[int, ...], tuple] = {}
    infs: Dict[Tuple[int, ...], int] = {}
    for st in ALL_STRATA:
        g, inf = _gcd_data(w, st)
        gcds[st.indices] = g
        infs[st.indices] = inf

    # peel: n_S = deg gcd_S - sum_{T strictly below S} n_T
    n: Dict[Tuple[int, ...], int] = {}
    new_poly: Dict[Tuple[int, ...], tuple] = {}
    new_inf: Dict[Tuple[int, ...], int] = {}
    for size in (1, 2, 3):
        for st in ALL_STRATA:
            if len(st.indices) != size:
                continue
            g = gcds[st.indices]
            inf = infs[st.indices]
            for T in ALL_STRATA:
                if len(T.indices) < size and set(T.indices) < set(st.indices):
                    q = new_poly[T.indices]
                    if up.deg(q) > 0:
                        gq, r = up.pdivmod(F, g, q)
                        if r:
                            raise DegenerateWitnessError(
                                f"incidence bookkeeping failed between {T} and {st}")
                        g = gq
                    inf -= new_inf[T.indices]
            if inf < 0:
                raise DegenerateWitnessError(f"negative infinity count at {st}")
            new_poly[st.indices] = g
            new_inf[st.indices] = inf
            n[st.indices] = up.deg(g) + inf

    vec = [0] * RANK
    vec[0] = d
    for label, count in n.items():
        vec[slot(label)] = count
    verified = CurveClass(vec)

    # cross-check the mark ledger: every recorded mark must be a root of its
    # stratum's fresh gcd with at least the recorded contact order
    for mark in w.marks:
        g = new_poly[mark.stratum.indices]
        if mark.at_infinity:
            if new_inf[mark.stratum.indices] < mark.contact:
                raise ClassMismatchError(
                    f"mark at infinity on {mark.stratum} missing", mark.stratum.indices,
                    verified)
            continue
        rem = g
        for _ in range(mark.contact):
            q, r = up.pdivmod(F, rem, (F.neg(mark.parameter), F.one))
            if r:
                raise ClassMismatchError(
                    f"mark at {mark.stratum} lacks contact order {mark.contact}",
                    mark.stratum.indices, verified)
            rem = q
    return verified


def contact_marks(w: CurveWitness) -> List[Mark]:
    """Recover the full mark table (with contact orders) from the coords."""
    F = w.field
    verify_class(w)  # raises on degeneracies
    out: List[Mark] = []
    d = w.degree
    gcds: Dict[Tuple[int, ...], tuple] = {}
    infs: Dict[Tuple[int, ...], int] = {}
    for st in ALL_STRATA:
        g, inf = _gcd_data(w, st)
        gcds[st.indices] = g
        infs[st.indices] = inf
    new_poly: Dict[Tuple[int, ...], tuple] = {}
    new_inf: Dict[Tuple[int, ...], int] = {}
    for size in (1, 2, 3):
        for st in ALL_STRATA:
            if len(st.indices) != size:
                continue
            g = gcds[st.indices]
            inf = infs[st.indices]
            for T in ALL_STRATA:
                if len(T.indices) < size and set(T.indices) < set(st.indices):
                    q = new_poly[T.indices]
                    if up.deg(q) > 0:
                        g = up.pdiv_exact(F, g, q)
                    inf -= new_inf[T.indices]
            new_poly[st.indices] = g
            new_inf[st.indices] = inf
            if up.deg(g) > 0:
                for factor, mult in up.factor(F, g):
                    if up.deg(factor) != 1:
                        raise DegenerateWitnessError(
                            f"mark of {st} not rational over the witness field")
                    out.append(Mark(st, F.neg(factor[0]), mult))
            if inf > 0:
                out.append(Mark(st, "inf", inf))
    return out


# ---------------------------------------------------------------------------
# witness file format
# ---------------------------------------------------------------------------

def witness_to_text(w: CurveWitness) -> str:
    F = w.field
    lines = [f"field {F.p} {F.k}"]
    for f in w.coords:
        lines.append("coeffs " + " ".join(_el_str(F, c) for c in f))
    for m in w.marks:
        z = "inf" if m.at_infinity else _el_str(F, m.parameter)
        lines.append(f"mark {''.join(map(str, m.stratum.indices))} {z} {m.contact}")
    return "\n".join(lines) + "\n"


def witness_from_text(text: str) -> CurveWitness:
    field: Optional[Field] = None
    coords: List[tuple] = []
    marks: List[Mark] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "field":
            p, k = int(parts[1]), int(parts[2])
            field = GF(p, k) if k > 1 else GF(p)
        elif parts[0] == "coeffs":
            coords.append(up.trim([_el_parse(field, tok) for tok in parts[1:]]))
        elif parts[0] == "mark":
            label = tuple(int(ch) for ch in parts[1])
            z = "inf" if parts[2] == "inf" else _el_parse(field, parts[2])
            marks.append(Mark(stratum(label), z, int(parts[3])))
        else:
            raise ValueError(f"bad witness line: {raw!r}")
    if field is None or len(coords) != 5:
        raise ValueError("witness file needs a field line and five coefficient rows")
    return CurveWitness(field, coords, marks)


def _el_str(F: Field, v) -> str:
    if F.k == 1:
        return str(v)
    return ",".join(str(c) for c in v)


def _el_parse(F: Field, tok: str):
    if F.k == 1:
        return int(tok) % F.p
    parts = [int(c) % F.p for c in tok.split(",")]
    parts += [0] * (F.k - len(parts))
    return tuple(parts)


# ---------------------------------------------------------------------------
# reparametrization (gauge moves)
# ---------------------------------------------------------------------------

def reparametrize(w: CurveWitness, a, b, c, e) -> CurveWitness:
    """Apply t = (a tau + b) / (c tau + e) with ae - bc != 0.

    Coordinates become (c tau + e)^d f((a tau + b)/(c tau + e)); marks move
    by the inverse Moebius map.
    """
    F = w.field
    det = F.sub(F.mul(a, e), F.mul(b, c))
    if F.is_zero(det):
        raise ValueError("singular reparametrization")
    d = w.degree
    num = (b, a)    # a*tau + b, little endian
    den = (e, c)
    coords = []
    for f in w.coords:
        # evaluate homogeneously: sum f_i num^i den^(d-i)
        acc: tuple = ()
        fl = list(f) + [F.zero] * (d + 1 - len(f))
        for i in range(d + 1):
            if F.is_zero(fl[i]):
                continue
            term = up.pscale(F, fl[i], up.ppow(F, num, i))
            term = up.pmul(F, term, up.ppow(F, den, d - i))
            acc = up.padd(F, acc, term)
        coords.append(acc)
    marks = []
    for m in w.marks:
        if m.at_infinity:
            # t = inf <=> c tau + e = 0 at finite tau (if c != 0), else stays inf
            if F.is_zero(c):
                marks.append(Mark(m.stratum, "inf", m.contact))
            else:
                marks.append(Mark(m.stratum, F.neg(F.div(e, c)), m.contact))
        else:
            # tau with (a tau + b)/(c tau + e) = z  =>  tau = (e z - b)/(a - c z)
            denom = F.sub(a, F.mul(c, m.parameter))
            if F.is_zero(denom):
                marks.append(Mark(m.stratum, "inf", m.contact))
            else:
                marks.append(Mark(m.stratum,
                                  F.div(F.sub(F.mul(e, m.parameter), b), denom),
                                  m.contact))
    return CurveWitness(F, coords, marks)


def move_marks_affine(w: CurveWitness, seed: int = 0) -> CurveWitness:
    """Gauge move so every mark (and any degree drop) sits at finite t.

    Incidences at infinity can hide in coordinate differences, so the
    check recomputes the full mark table rather than trusting the ledger.
    """
    F = w.field
    if not _infinity_incidence(w):
        return w
    rng = random.Random(seed)
    for _ in range(200):
        sh = F.random(rng)
        # t = (sh*tau + 1)/tau sends infinity to the fresh value sh
        cand = reparametrize(w, sh, F.one, F.one, F.zero)
        if any(up.deg(f) != cand.degree for f in cand.coords):
            continue
        if _infinity_incidence(cand):
            continue
        return cand
    raise RuntimeError("failed to move marks into the affine patch")


def _infinity_incidence(w: CurveWitness) -> bool:
    if any(up.deg(f) < w.degree for f in w.coords):
        return True
    for st in ALL_STRATA:
        _g, inf = _gcd_data(w, st)
        if inf > 0:
            return True
    return False
