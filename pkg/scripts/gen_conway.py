"""Regenerate the frozen Conway polynomial table in m07.fields.

A Conway polynomial C_{p,n} is the minimal monic primitive polynomial of
degree n over F_p, w.r.t. the standard word order, that is norm-compatible
with C_{p,m} for every m | n:

    C_{p,m}( x^((p^n-1)/(p^m-1)) ) == 0  (mod C_{p,n}).

The word order compares (w_{n-1}, ..., w_0) lexicographically where the
candidate is x^n + sum_i (-1)^(n-i) w_i x^i with w_i in [0, p).

Usage:  python scripts/gen_conway.py
Prints a table body ready to paste into m07/fields.py.
"""

import itertools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sympy import factorint

from m07.fields import GF
from m07 import unipoly as up

PRIMES = (2, 3, 5, 7, 11, 101)
MAX_DEG = 6


def candidate_from_word(F, n, word):
    # word = (w_{n-1}, ..., w_0)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for idx, w in enumerate(word):
        i = n - 1 - idx
        sign = -1 if (n - i) % 2 else 1
        coeffs[i] = (sign * w) % F.p
    return up.from_ints(F, coeffs)


def x_is_primitive(F, f, n, qn_factors):
    qn = F.p ** n - 1
    xp = up.x(F)
    for prime in qn_factors:
        if up.ppow_mod(F, xp, qn // prime, f) == (F.one,):
            return False
    return up.ppow_mod(F, xp, qn, f) == (F.one,)


def compatible(F, f, n, table):
    qn = F.p ** n - 1
    for m in range(1, n):
        if n % m:
            continue
        sub = table[(F.p, m)]
        y = up.ppow_mod(F, up.x(F), qn // (F.p ** m - 1), f)
        # evaluate the degree-m Conway polynomial at y, mod f
        acc = up.pmod(F, (F.one,), f)
        val = ()
        power = (F.one,)
        for c in sub + (1,):
            val = up.padd(F, val, up.pscale(F, F.from_int(c), power))
            power = up.pmod(F, up.pmul(F, power, y), f)
        if val:
            return False
    return True


def conway(p, n, table):
    F = GF(p)
    qn_factors = list(factorint(p ** n - 1))
    if n == 1:
        words = (((w,)) for w in range(p))
    else:
        # norm compatibility with C_{p,1} forces the last word letter to be
        # the smallest primitive root g: x^((p^n-1)/(p-1)) = Norm(x) = g.
        g = table[(p, 1)][0] if p > 2 else 1
        g = (-g) % p  # C_{p,1} = x + c0 with root -c0 = g
        words = (w + (g,) for w in itertools.product(range(p), repeat=n - 1))
    for word in words:
        f = candidate_from_word(F, n, word)
        if len(f) != n + 1:
            continue
        if not up.is_irreducible(F, f):
            continue
        if not x_is_primitive(F, f, n, qn_factors):
            continue
        if not compatible(F, f, n, table):
            continue
        return tuple(F.lift_to_int(c) for c in f[:-1])
    raise RuntimeError(f"no Conway polynomial found for p={p}, n={n}")


def main():
    import time
    table = {}
    for p in PRIMES:
        for n in range(1, MAX_DEG + 1):
            t0 = time.time()
            table[(p, n)] = conway(p, n, table)
            print(f"    ({p}, {n}): {table[(p, n)]},   # {time.time()-t0:.1f}s",
                  flush=True)


if __name__ == "__main__":
    main()
