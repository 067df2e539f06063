"""Exact coefficient fields: the rationals, prime fields, and their extensions.

A field object is a lightweight context; elements are plain Python values
(``Fraction`` for the rationals, ``int`` for a prime field, a length-k tuple
of ints for an extension field).  Keeping elements unboxed makes the dense
linear algebra in :mod:`m07.linalg` tolerable in pure Python.

Extension fields are presented by tabulated Conway polynomials so that
subfield embeddings are compatible across degrees.  The table covers
p in {2, 3, 5, 7, 11, 101} and degrees up to 6; anything else is rejected.
The table is frozen output of ``scripts/gen_conway.py``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

__all__ = [
    "FieldSpec", "Field", "QQ", "GF",
    "CONWAY_PRIMES", "conway_polynomial", "UnsupportedFieldError",
]


class UnsupportedFieldError(ValueError):
    """Raised for characteristics or degrees outside the tabulated range."""


# Conway polynomials C_{p,k}, stored as coefficient tuples
# (c_0, c_1, ..., c_{k-1}) of the non-leading part: C = x^k + sum c_i x^i.
# Regenerate with scripts/gen_conway.py; test_fields re-verifies primitivity
# and subfield compatibility for every entry.
_CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1,),
    (2, 2): (1, 1,),
    (2, 3): (1, 1, 0,),
    (2, 4): (1, 1, 0, 0,),
    (2, 5): (1, 0, 1, 0, 0,),
    (2, 6): (1, 1, 0, 1, 1, 0,),
    (3, 1): (1,),
    (3, 2): (2, 2,),
    (3, 3): (1, 2, 0,),
    (3, 4): (2, 0, 0, 2,),
    (3, 5): (1, 2, 0, 0, 0,),
    (3, 6): (2, 2, 1, 0, 2, 0,),
    (5, 1): (3,),
    (5, 2): (2, 4,),
    (5, 3): (3, 3, 0,),
    (5, 4): (2, 4, 4, 0,),
    (5, 5): (3, 4, 0, 0, 0,),
    (5, 6): (2, 0, 1, 4, 1, 0,),
    (7, 1): (4,),
    (7, 2): (3, 6,),
    (7, 3): (4, 0, 6,),
    (7, 4): (3, 4, 5, 0,),
    (7, 5): (4, 1, 0, 0, 0,),
    (7, 6): (3, 6, 4, 5, 1, 0,),
    (11, 1): (9,),
    (11, 2): (2, 7,),
    (11, 3): (9, 2, 0,),
    (11, 4): (2, 10, 8, 0,),
    (11, 5): (9, 0, 10, 0, 0,),
    (11, 6): (2, 7, 6, 4, 3, 0,),
    (101, 1): (99,),
    (101, 2): (2, 97,),
    (101, 3): (99, 3, 0,),
    (101, 4): (2, 78, 1, 0,),
    (101, 5): (99, 2, 0, 0, 0,),
}

CONWAY_PRIMES = (2, 3, 5, 7, 11, 101)
_MAX_DEGREE = 6
_MISSING = {(101, 6)}  # lex-min search still running at freeze time; rejected at runtime


def conway_polynomial(p: int, k: int) -> tuple[int, ...]:
    """Full coefficient tuple (c_0, ..., c_{k-1}, 1) of C_{p,k}."""
    try:
        body = _CONWAY[(p, k)]
    except KeyError:
        raise UnsupportedFieldError(
            f"no tabulated Conway polynomial for p={p}, k={k}; "
            f"supported: p in {CONWAY_PRIMES}, k <= {_MAX_DEGREE}")
    return body + (1,)


@dataclass(frozen=True)
class FieldSpec:
    """Serializable description of a coefficient field."""

    characteristic: int
    extension_degree: int = 1
    conway_modulus: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        p, k = self.characteristic, self.extension_degree
        if p == 0:
            if k != 1 or self.conway_modulus is not None:
                raise UnsupportedFieldError("characteristic 0 admits no extension data")
            return
        if p not in CONWAY_PRIMES:
            raise UnsupportedFieldError(f"characteristic {p} not tabulated")
        if not 1 <= k <= _MAX_DEGREE:
            raise UnsupportedFieldError(f"extension degree {k} out of range")
        expected = conway_polynomial(p, k) if k > 1 else None
        if k > 1 and self.conway_modulus != expected:
            raise UnsupportedFieldError("modulus differs from the tabulated Conway polynomial")
        if k == 1 and self.conway_modulus is not None:
            raise UnsupportedFieldError("prime field carries no modulus")

    @property
    def order(self) -> Optional[int]:
        if self.characteristic == 0:
            return None
        return self.characteristic ** self.extension_degree

    def label(self) -> str:
        if self.characteristic == 0:
            return "Q"
        if self.extension_degree == 1:
            return f"F{self.characteristic}"
        return f"F{self.characteristic}^{self.extension_degree}"


class Field:
    """Arithmetic context for one coefficient field.

    Element encodings: ``Fraction`` over the rationals, ``int`` in [0, p)
    over a prime field, and a normalized length-k tuple of ints over an
    extension field (little-endian coefficients in the Conway generator).
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.characteristic
        self.k = spec.extension_degree
        self.order = spec.order
        if self.p == 0:
            self.zero = Fraction(0)
            self.one = Fraction(1)
        elif self.k == 1:
            self.zero = 0
            self.one = 1 % self.p
        else:
            self.zero = (0,) * self.k
            self.one = (1,) + (0,) * (self.k - 1)
            self._mod = conway_polynomial(self.p, self.k)

    # -- constructors -------------------------------------------------

    def __repr__(self):
        return f"Field({self.spec.label()})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def from_int(self, n: int):
        if self.p == 0:
            return Fraction(n)
        if self.k == 1:
            return n % self.p
        return (n % self.p,) + (0,) * (self.k - 1)

    def from_fraction(self, q: Fraction):
        if self.p == 0:
            return Fraction(q)
        num = self.from_int(q.numerator)
        den = self.from_int(q.denominator)
        return self.mul(num, self.inv(den))

    def gen(self):
        """Conway generator of an extension field (a primitive element)."""
        if self.p == 0 or self.k == 1:
            raise UnsupportedFieldError("generator only defined for proper extensions")
        return (0, 1) + (0,) * (self.k - 2)

    def elements(self) -> Iterable:
        if self.p == 0:
            raise UnsupportedFieldError("cannot enumerate the rationals")
        if self.k == 1:
            yield from range(self.p)
        else:
            def rec(i):
                if i == self.k:
                    yield ()
                    return
                for c in range(self.p):
                    for rest in rec(i + 1):
                        yield (c,) + rest
            yield from rec(0)

    def random(self, rng):
        if self.p == 0:
            return Fraction(rng.randrange(-20, 21), rng.randrange(1, 8))
        if self.k == 1:
            return rng.randrange(self.p)
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    # -- arithmetic ----------------------------------------------------

    def is_zero(self, a) -> bool:
        return a == self.zero

    def add(self, a, b):
        if self.p == 0:
            return a + b
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.p == 0:
            return a - b
        if self.k == 1:
            return (a - b) % self.p
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        if self.p == 0:
            return -a
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        if self.p == 0:
            return a * b
        if self.k == 1:
            return (a * b) % self.p
        return self._ext_mul(a, b)

    def _ext_mul(self, a, b):
        p, k, mod = self.p, self.k, self._mod
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce by the monic modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(k):
                    prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
        return tuple(prod[:k])

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / a
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._ext_inv(a)

    def _ext_inv(self, a):
        # extended Euclid on (lifted a, conway modulus) over F_p
        p, k = self.p, self.k
        r0 = list(self._mod)
        r1 = list(a) + [0]
        s0, s1 = [0] * (k + 1), [1] + [0] * k

        def deg(v):
            for i in range(len(v) - 1, -1, -1):
                if v[i]:
                    return i
            return -1

        while True:
            d1 = deg(r1)
            if d1 < 0:
                raise ZeroDivisionError("inverse of zero")
            if d1 == 0:
                c = pow(r1[0], -1, p)
                return tuple((c * x) % p for x in s1[:k])
            d0 = deg(r0)
            if d0 < d1:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            q = (r0[d0] * pow(r1[d1], -1, p)) % p
            shift = d0 - d1
            for i in range(d1 + 1):
                r0[i + shift] = (r0[i + shift] - q * r1[i]) % p
            for i in range(k + 1 - shift):
                s0[i + shift] = (s0[i + shift] - q * s1[i]) % p

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def frobenius(self, a):
        """x -> x^p, the absolute Frobenius."""
        return self.pow(a, self.p)

    # -- embeddings and conversions -------------------------------------

    def lift_to_int(self, a) -> int:
        """Inverse of from_int for prime-field values."""
        if self.p == 0 or self.k != 1:
            raise UnsupportedFieldError("lift_to_int needs a prime field")
        return a

    def embed_from(self, sub: "Field", a):
        """Embed a value of a subfield F_{p^m} (m | k) into this field.

        Uses the Conway-compatible canonical embedding: the subfield
        generator maps to gen^((p^k-1)/(p^m-1)).
        """
        if sub.p != self.p:
            raise UnsupportedFieldError("characteristics differ")
        if sub.k == self.k:
            return a
        if self.k % sub.k:
            raise UnsupportedFieldError(f"F_{sub.p}^{sub.k} is not a subfield of F_{self.p}^{self.k}")
        if sub.k == 1:
            return self.from_int(a)
        img_gen = self.pow(self.gen(), (self.order - 1) // (sub.order - 1))
        acc = self.zero
        power = self.one
        for coeff in a:
            acc = self.add(acc, self.mul(self.from_int(coeff), power))
            power = self.mul(power, img_gen)
        return acc

    # -- printing --------------------------------------------------------

    def to_str(self, a, var: str = "z") -> str:
        if self.p == 0:
            return str(a)
        if self.k == 1:
            return str(a)
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                terms.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(terms) if terms else "0"


_CACHE: dict[FieldSpec, Field] = {}


def _get(spec: FieldSpec) -> Field:
    if spec not in _CACHE:
        _CACHE[spec] = Field(spec)
    return _CACHE[spec]


QQ = _get(FieldSpec(0))


def GF(p: int, k: int = 1) -> Field:
    """The finite field with p^k elements in its Conway presentation."""
    if k == 1:
        return _get(FieldSpec(p, 1))
    return _get(FieldSpec(p, k, conway_polynomial(p, k)))
