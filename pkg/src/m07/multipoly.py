"""Sparse multivariate polynomials over a toolkit field.

A polynomial is a dict {exponent tuple: nonzero coefficient} plus the
number of variables and the field.  Degree-d monomial bases are indexed in
a fixed colex order so every constraint matrix in :mod:`m07.sections` has a
reproducible column layout.

Text format (shared CLI/file currency): integer coefficients, variables
``x0 .. x4``, ``^`` for powers, ``*`` for products, e.g.
``x0*x1 - x0*x2 - x1*x2 + x3*x4``.  Parser and printer round-trip.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from .fields import Field, QQ

Exp = Tuple[int, ...]


class MultiPoly:
    """Immutable sparse polynomial."""

    __slots__ = ("num_vars", "terms", "field")

    def __init__(self, num_vars: int, terms: Dict[Exp, object], field: Field):
        clean = {}
        for e, c in terms.items():
            if len(e) != num_vars:
                raise ValueError(f"exponent {e} has wrong arity")
            if not field.is_zero(c):
                clean[tuple(e)] = c
        self.num_vars = num_vars
        self.terms = clean
        self.field = field

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, field: Field) -> "MultiPoly":
        return cls(num_vars, {}, field)

    @classmethod
    def monomial(cls, exp: Exp, coeff, field: Field) -> "MultiPoly":
        return cls(len(exp), {tuple(exp): coeff}, field)

    @classmethod
    def variable(cls, i: int, num_vars: int, field: Field) -> "MultiPoly":
        e = tuple(1 if j == i else 0 for j in range(num_vars))
        return cls(num_vars, {e: field.one}, field)

    def map_field(self, target: Field) -> "MultiPoly":
        """Push integer/rational coefficients into another field."""
        conv = {}
        for e, c in self.terms.items():
            if self.field.p == 0:
                from fractions import Fraction
                conv[e] = target.from_fraction(Fraction(c))
            else:
                if target.p != self.field.p:
                    raise ValueError("no canonical map between these fields")
                conv[e] = target.embed_from(self.field, c)
        return MultiPoly(self.num_vars, conv, target)

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.field == other.field
                and self.num_vars == other.num_vars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, F.zero), c)
            if F.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(self.num_vars, out, F)

    def __neg__(self) -> "MultiPoly":
        F = self.field
        return MultiPoly(self.num_vars, {e: F.neg(c) for e, c in self.terms.items()}, F)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        F = self.field
        out: Dict[Exp, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = F.add(out.get(e, F.zero), F.mul(c1, c2))
                if F.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(self.num_vars, out, F)

    def scale(self, c) -> "MultiPoly":
        F = self.field
        if F.is_zero(c):
            return MultiPoly.zero(self.num_vars, F)
        return MultiPoly(self.num_vars, {e: F.mul(c, v) for e, v in self.terms.items()}, F)

    def pow(self, n: int) -> "MultiPoly":
        result = MultiPoly.monomial((0,) * self.num_vars, self.field.one, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, point: Sequence):
        F = self.field
        acc = F.zero
        for e, c in self.terms.items():
            term = c
            for xi, ei in zip(point, e):
                if ei:
                    term = F.mul(term, F.pow(xi, ei))
            acc = F.add(acc, term)
        return acc

    def substitute_linear(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute variable i by images[i] (any polynomials)."""
        F = self.field
        out = MultiPoly.zero(self.num_vars, F)
        cache: Dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            key = (i, e)
            if key not in cache:
                cache[key] = images[i].pow(e)
            return cache[key]

        for e, c in self.terms.items():
            term = MultiPoly.monomial((0,) * self.num_vars, c, F)
            for i, ei in enumerate(e):
                if ei:
                    term = term * power(i, ei)
            out = out + term
        return out

    def partial(self, i: int) -> "MultiPoly":
        F = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            coeff = F.mul(F.from_int(e[i]), c)
            if not F.is_zero(coeff):
                out[tuple(ne)] = coeff
        return MultiPoly(self.num_vars, out, F)

    # -- printing / parsing ---------------------------------------------

    def __repr__(self):
        return f"MultiPoly({to_str(self)})"


@lru_cache(maxsize=None)
def colex_monomials(degree: int, num_vars: int) -> tuple[Exp, ...]:
    """All exponent tuples of the given total degree, in colex order.

    Colex compares reversed tuples lexicographically; the resulting column
    order is the one every constraint matrix uses.
    """
    if degree < 0:
        return ()
    out: List[Exp] = []

    def rec(remaining_vars: int, total: int, suffix: Exp):
        if remaining_vars == 1:
            out.append((total,) + suffix)
            return
        for last in range(total + 1):
            rec(remaining_vars - 1, total - last, (last,) + suffix)

    rec(num_vars, degree, ())
    return tuple(out)


@lru_cache(maxsize=None)
def colex_index(degree: int, num_vars: int) -> Dict[Exp, int]:
    return {e: i for i, e in enumerate(colex_monomials(degree, num_vars))}


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR_RE = re.compile(r"^(?:(\d+)|x(\d+)(?:\^(\d+))?)$")


def parse(text: str, num_vars: int = 5, field: Field = QQ) -> MultiPoly:
    """Parse the shared polynomial text format (integer coefficients)."""
    terms: Dict[Exp, int] = {}
    pos = 0
    text = text.strip()
    if not text or text == "0":
        return MultiPoly.zero(num_vars, field)
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or not m.group(2).strip():
            raise ValueError(f"cannot parse polynomial at: {text[pos:pos+30]!r}")
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).strip()
        pos = m.end()
        coeff = sign
        exp = [0] * num_vars
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {body!r}")
            fm = _FACTOR_RE.match(factor)
            if not fm:
                raise ValueError(f"bad factor {factor!r}")
            if fm.group(1) is not None:
                coeff *= int(fm.group(1))
            else:
                i = int(fm.group(2))
                if i >= num_vars:
                    raise ValueError(f"variable x{i} out of range")
                exp[i] += int(fm.group(3)) if fm.group(3) else 1
        e = tuple(exp)
        terms[e] = terms.get(e, 0) + coeff
    return MultiPoly(num_vars, {e: field.from_int(c) for e, c in terms.items() if c},
                     field)


def to_str(poly: MultiPoly) -> str:
    """Inverse of :func:`parse` for integer-coefficient polynomials."""
    if poly.is_zero():
        return "0"
    F = poly.field
    items = sorted(poly.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))
    parts: List[str] = []
    for e, c in items:
        if F.p == 0:
            cint = c
            neg = cint < 0
            mag = abs(cint)
        else:
            cint = c if F.k == 1 else None
            if cint is None:
                raise ValueError("text format needs prime-field or rational coefficients")
            neg = False
            mag = cint
        factors = []
        if mag != 1 or all(x == 0 for x in e):
            factors.append(str(mag))
        for i, ei in enumerate(e):
            if ei == 1:
                factors.append(f"x{i}")
            elif ei > 1:
                factors.append(f"x{i}^{ei}")
        body = "*".join(factors)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)
