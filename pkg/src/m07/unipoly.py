"""Univariate polynomial arithmetic over any :class:`m07.fields.Field`.

Polynomials are little-endian coefficient tuples with no trailing zeros;
the zero polynomial is the empty tuple.  All functions take the field as
first argument so element values stay unboxed.
"""

from __future__ import annotations

import random
from math import comb
from typing import Iterable, List, Sequence, Tuple

from .fields import Field, UnsupportedFieldError

Poly = Tuple  # coefficient tuple


def trim(coeffs: Sequence) -> Poly:
    n = len(coeffs)
    while n and not _nz(coeffs[n - 1]):
        n -= 1
    return tuple(coeffs[:n])


def _nz(x) -> bool:
    # works for Fraction, int and tuple encodings alike
    if isinstance(x, tuple):
        return any(x)
    return bool(x)


def zero() -> Poly:
    return ()


def const(F: Field, c) -> Poly:
    return () if F.is_zero(c) else (c,)


def x(F: Field) -> Poly:
    return (F.zero, F.one)


def from_ints(F: Field, ints: Sequence[int]) -> Poly:
    return trim([F.from_int(n) for n in ints])


def deg(f: Poly) -> int:
    return len(f) - 1


def lc(f: Poly):
    return f[-1]


def is_monic(F: Field, f: Poly) -> bool:
    return bool(f) and f[-1] == F.one


def padd(F: Field, f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(out)


def psub(F: Field, f: Poly, g: Poly) -> Poly:
    out = list(f) + [F.zero] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] = F.sub(out[i], c)
    return trim(out)


def pneg(F: Field, f: Poly) -> Poly:
    return tuple(F.neg(c) for c in f)


def pscale(F: Field, c, f: Poly) -> Poly:
    if F.is_zero(c):
        return ()
    return trim([F.mul(c, a) for a in f])


def pmul(F: Field, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def ppow(F: Field, f: Poly, n: int) -> Poly:
    result = (F.one,)
    base = f
    while n:
        if n & 1:
            result = pmul(F, result, base)
        base = pmul(F, base, base)
        n >>= 1
    return result


def pdivmod(F: Field, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return (), f
    inv_lc = F.inv(g[-1])
    rem = list(f)
    dq = len(f) - len(g)
    quo = [F.zero] * (dq + 1)
    for i in range(dq, -1, -1):
        c = rem[i + len(g) - 1]
        if F.is_zero(c):
            continue
        q = F.mul(c, inv_lc)
        quo[i] = q
        for j, b in enumerate(g):
            rem[i + j] = F.sub(rem[i + j], F.mul(q, b))
    return trim(quo), trim(rem)


def pmod(F: Field, f: Poly, g: Poly) -> Poly:
    return pdivmod(F, f, g)[1]


def pdiv_exact(F: Field, f: Poly, g: Poly) -> Poly:
    q, r = pdivmod(F, f, g)
    if r:
        raise ValueError("division is not exact")
    return q


def monic(F: Field, f: Poly) -> Poly:
    if not f:
        return f
    return pscale(F, F.inv(f[-1]), f)


def pgcd(F: Field, f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, pmod(F, f, g)
    return monic(F, f)


def pgcd_many(F: Field, polys: Iterable[Poly]) -> Poly:
    acc: Poly = ()
    for f in polys:
        acc = pgcd(F, acc, f)
        if acc == (F.one,):
            break
    return acc


def peval(F: Field, f: Poly, t):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, t), c)
    return acc


def pshift(F: Field, f: Poly, n: int) -> Poly:
    """Multiply by t^n."""
    if not f:
        return f
    return (F.zero,) * n + tuple(f)


def pderiv(F: Field, f: Poly) -> Poly:
    return trim([F.mul(F.from_int(i), f[i]) for i in range(1, len(f))])


def hasse_deriv(F: Field, f: Poly, j: int) -> Poly:
    """j-th Hasse derivative: coefficient of t^i becomes C(i+j, j) f_{i+j}.

    Characteristic-safe replacement for f^(j)/j!.
    """
    if j == 0:
        return f
    out = []
    for i in range(j, len(f)):
        out.append(F.mul(F.from_int(comb(i, j)), f[i]))
    return trim(out)


def ppow_mod(F: Field, f: Poly, n: int, m: Poly) -> Poly:
    result = pmod(F, (F.one,), m)
    base = pmod(F, f, m)
    while n:
        if n & 1:
            result = pmod(F, pmul(F, result, base), m)
        base = pmod(F, pmul(F, base, base), m)
        n >>= 1
    return result


def random_poly(F: Field, degree: int, rng: random.Random) -> Poly:
    coeffs = [F.random(rng) for _ in range(degree)]
    coeffs.append(F.one)
    return trim(coeffs)


def from_roots(F: Field, roots: Sequence) -> Poly:
    f = (F.one,)
    for r in roots:
        f = pmul(F, f, (F.neg(r), F.one))
    return f


def to_str(F: Field, f: Poly, var: str = "t") -> str:
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if F.is_zero(c):
            continue
        cs = F.to_str(c)
        if i == 0:
            parts.append(cs)
        else:
            tv = var if i == 1 else f"{var}^{i}"
            parts.append(tv if cs == "1" else f"({cs})*{tv}" if ("+" in cs or "*" in cs) else f"{cs}*{tv}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# factorization over finite fields
# ---------------------------------------------------------------------------

def is_irreducible(F: Field, f: Poly) -> bool:
    """Distinct-degree irreducibility test over a finite field."""
    if F.order is None:
        raise UnsupportedFieldError("irreducibility test needs a finite field")
    n = deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    q = F.order
    xp = x(F)
    # x^(q^n) == x mod f, and gcd(x^(q^j) - x, f) trivial for j < n
    power = xp
    for j in range(1, n):
        power = ppow_mod(F, power, q, f)
        if pgcd(F, psub(F, power, xp), f) != (F.one,):
            return False
    power = ppow_mod(F, power, q, f)
    return psub(F, power, xp) == () or pmod(F, psub(F, power, xp), f) == ()


def pth_root(F: Field, f: Poly) -> Poly:
    """p-th root of a polynomial in F[t^p] (exists iff f' == 0)."""
    p, k = F.p, F.k
    out = []
    for i in range(0, len(f), p):
        c = f[i]
        # p-th root in F_{p^k} is x -> x^(p^(k-1))
        out.append(F.pow(c, p ** (k - 1)))
    return trim(out)


def squarefree_decomposition(F: Field, f: Poly) -> List[tuple[Poly, int]]:
    """Yun-style decomposition with p-th power peeling, char p > 0 or 0.

    Returns [(g_i, m_i)] with f = lc * prod g_i^{m_i}, g_i squarefree monic,
    pairwise coprime.
    """
    result: List[tuple[Poly, int]] = []
    f = monic(F, f)

    def accumulate(g: Poly, m: int):
        for idx, (h, e) in enumerate(result):
            if h == g:
                result[idx] = (h, e + m)
                return
        if deg(g) > 0:
            result.append((g, m))

    def rec(f: Poly, mult: int):
        if deg(f) == 0:
            return
        df = pderiv(F, f)
        if not df:
            # f is a p-th power
            accumulate_all(pth_root(F, f), mult * F.p)
            return
        a = pgcd(F, f, df)
        b = pdiv_exact(F, f, a)  # product of squarefree part
        i = 1
        while deg(b) > 0:
            c = pgcd(F, a, b)
            factor = pdiv_exact(F, b, c)
            if deg(factor) > 0:
                accumulate(monic(F, factor), mult * i)
            b = c
            a = pdiv_exact(F, a, c)
            i += 1
        if deg(a) > 0:
            rec(a, mult)

    def accumulate_all(g: Poly, mult: int):
        for h, e in squarefree_decomposition(F, g):
            accumulate(h, e * mult)

    rec(f, 1)
    result.sort(key=lambda pair: (deg(pair[0]), pair[0]))
    return result


def _distinct_degree(F: Field, f: Poly) -> List[tuple[Poly, int]]:
    """Split squarefree monic f into products of irreducibles of fixed degree."""
    q = F.order
    out = []
    xp = x(F)
    power = xp
    d = 0
    rest = f
    while deg(rest) > 2 * (d + 1) - 1 and deg(rest) > 0:
        d += 1
        power = ppow_mod(F, power, q, rest)
        g = pgcd(F, psub(F, power, xp), rest)
        if deg(g) > 0:
            out.append((g, d))
            rest = pdiv_exact(F, rest, g)
            power = pmod(F, power, rest)
    if deg(rest) > 0:
        out.append((rest, deg(rest)))
    return out


def _equal_degree_split(F: Field, f: Poly, d: int, rng: random.Random) -> Poly:
    """Cantor-Zassenhaus: find a proper monic factor of f (product of
    irreducibles of degree d, at least two of them)."""
    q = F.order
    n = deg(f)
    while True:
        a = trim([F.random(rng) for _ in range(n)])
        if deg(a) < 1:
            continue
        g = pgcd(F, a, f)
        if 0 < deg(g) < n:
            return g
        if F.p == 2:
            # trace map over F_{2^m}: sum of a^(2^i), i < d*k
            m = d * F.k
            t_ = a
            acc = a
            for _ in range(m - 1):
                t_ = pmod(F, pmul(F, t_, t_), f)
                acc = padd(F, acc, t_)
            g = pgcd(F, acc, f)
        else:
            e = (q ** d - 1) // 2
            b = ppow_mod(F, a, e, f)
            g = pgcd(F, psub(F, b, (F.one,)), f)
        if 0 < deg(g) < n:
            return g


def factor(F: Field, f: Poly, seed: int = 0) -> List[tuple[Poly, int]]:
    """Factor f over a finite field into monic irreducibles.

    Returns sorted [(irreducible, multiplicity)]; the leading coefficient is
    dropped (recover it as lc(f)).  Deterministic for a fixed seed.
    """
    if F.order is None:
        raise UnsupportedFieldError("factorization implemented over finite fields only")
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    work: List[tuple[Poly, int]] = []
    for g, m in squarefree_decomposition(F, f):
        for h, d in _distinct_degree(F, g):
            pieces = [h]
            done: List[Poly] = []
            while pieces:
                cur = pieces.pop()
                if deg(cur) == d:
                    done.append(cur)
                    continue
                split = _equal_degree_split(F, cur, d, rng)
                pieces.append(split)
                pieces.append(pdiv_exact(F, cur, split))
            for irr in done:
                work.append((monic(F, irr), m))
    work.sort(key=lambda pair: (deg(pair[0]), pair[0], pair[1]))
    merged: List[tuple[Poly, int]] = []
    for g, m in work:
        if merged and merged[-1][0] == g:
            merged[-1] = (g, merged[-1][1] + m)
        else:
            merged.append((g, m))
    return merged


def roots_in_field(F: Field, f: Poly) -> List:
    """Roots of f lying in F itself, with multiplicity collapsed."""
    out = []
    for g, _m in factor(F, f):
        if deg(g) == 1:
            out.append(F.neg(g[0]))
    return out
