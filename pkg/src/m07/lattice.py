"""Divisor and curve classes on the iterated blow-up model of P^4.

The ambient space is P^4 blown up at six general points p_0..p_5 (the four
coordinate points, [0:0:0:0:1], and [1:1:1:1:1]), then the strict
transforms of the 15 lines they span, then the 20 planes.  N^1 and N_1 are
free of rank 42 with bases

    H, E_i, E_ij, E_ijk          and          l, e_i, e_ij, e_ijk.

Classes are stored in the sign convention of the tables:
D = d*H - sum m_i E_i - sum m_ij E_ij - sum m_ijk E_ijk, as the integer
vector (d, m_0..m_5, m_ij in lex order, m_ijk in lex order); curve classes
the same with (deg, n_*).  The only nonzero basis pairings are H.l = 1 and
E_I.e_I = -1, so pair(D, c) = d*deg - sum_I m_I n_I.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple

RANK = 42
POINTS = tuple(range(6))
LINES: Tuple[Tuple[int, int], ...] = tuple(combinations(range(6), 2))
PLANES: Tuple[Tuple[int, int, int], ...] = tuple(combinations(range(6), 3))
LINE_INDEX: Dict[Tuple[int, int], int] = {s: 7 + i for i, s in enumerate(LINES)}
PLANE_INDEX: Dict[Tuple[int, int, int], int] = {s: 22 + i for i, s in enumerate(PLANES)}

#: slot index for an exceptional label (subset of {0..5})
def slot(subset: Sequence[int]) -> int:
    s = tuple(sorted(subset))
    if len(s) == 1:
        return 1 + s[0]
    if len(s) == 2:
        return LINE_INDEX[s]
    if len(s) == 3:
        return PLANE_INDEX[s]
    raise KeyError(f"no exceptional slot for {subset}")


SLOT_LABELS: List[Tuple[int, ...]] = [()] + [(i,) for i in POINTS] + list(LINES) + list(PLANES)


class _ClassBase:
    __slots__ = ("vec",)
    _letters = ("H", "E")

    def __init__(self, vec: Sequence[int]):
        vec = tuple(int(v) for v in vec)
        if len(vec) != RANK:
            raise ValueError(f"class vector must have length {RANK}, got {len(vec)}")
        object.__setattr__(self, "vec", vec)

    @property
    def d(self) -> int:
        return self.vec[0]

    def m(self, subset: Sequence[int]) -> int:
        return self.vec[slot(subset)]

    def __eq__(self, other):
        return type(self) is type(other) and self.vec == other.vec

    def __hash__(self):
        return hash((type(self).__name__, self.vec))

    def __add__(self, other):
        if type(self) is not type(other):
            raise TypeError("cannot mix divisor and curve classes")
        return type(self)(tuple(a + b for a, b in zip(self.vec, other.vec)))

    def __sub__(self, other):
        if type(self) is not type(other):
            raise TypeError("cannot mix divisor and curve classes")
        return type(self)(tuple(a - b for a, b in zip(self.vec, other.vec)))

    def __rmul__(self, n: int):
        return type(self)(tuple(n * a for a in self.vec))

    def __neg__(self):
        return type(self)(tuple(-a for a in self.vec))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.vec)

    def __repr__(self):
        return f"{type(self).__name__}({self.text()})"

    def text(self) -> str:
        big, small = self._letters
        parts = []
        if self.vec[0]:
            parts.append(f"{self.vec[0]}{big}")
        for idx in range(1, RANK):
            m = self.vec[idx]
            if m:
                label = "".join(str(i) for i in SLOT_LABELS[idx])
                parts.append(f"{-m:+d}{small}{label}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" {p[0]}{p[1:]}" if p[0] in "+-" else f" +{p}"
        return out

    def to_json(self) -> str:
        return json.dumps(list(self.vec))


class DivisorClass(_ClassBase):
    _letters = ("H", "E")


class CurveClass(_ClassBase):
    _letters = ("l", "e")

    @property
    def deg(self) -> int:
        return self.vec[0]


def pair(D: DivisorClass, c: CurveClass) -> int:
    """Intersection pairing d*deg - sum m_I n_I."""
    dv, cv = D.vec, c.vec
    return dv[0] * cv[0] - sum(dv[i] * cv[i] for i in range(1, RANK))


_TOKEN = re.compile(r"([+-]?)\s*(\d*)\s*([HlEe])\s*(\d*)")


def _parse(text: str, cls):
    big, small = cls._letters
    vec = [0] * RANK
    pos = 0
    text = text.strip()
    if text in ("0", ""):
        return cls(vec)
    for m in _TOKEN.finditer(text):
        if m.start() != pos and text[pos:m.start()].strip():
            raise ValueError(f"cannot parse class text near {text[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        letter = m.group(3)
        label = m.group(4)
        if letter == big:
            if label:
                raise ValueError(f"{big} takes no subscript: {m.group(0)!r}")
            vec[0] += sign * coeff
        elif letter == small:
            subset = tuple(int(ch) for ch in label)
            if len(set(subset)) != len(subset) or not subset:
                raise ValueError(f"bad label {label!r}")
            vec[slot(subset)] += -sign * coeff
        else:
            raise ValueError(f"letter {letter!r} does not belong to this class kind")
    if text[pos:].strip():
        raise ValueError(f"trailing garbage {text[pos:]!r}")
    return cls(vec)


def parse_divisor(text: str) -> DivisorClass:
    """Parse table text like ``9H -5E0 -3E01 -1E345``."""
    return _parse(text, DivisorClass)


def parse_curve(text: str) -> CurveClass:
    """Parse table text like ``4l -1e03 -2e345 +1e01``."""
    return _parse(text, CurveClass)


def from_json(text: str, kind: str = "divisor"):
    vec = json.loads(text)
    return DivisorClass(vec) if kind == "divisor" else CurveClass(vec)


# ---------------------------------------------------------------------------
# distinguished classes
# ---------------------------------------------------------------------------

def H() -> DivisorClass:
    return DivisorClass((1,) + (0,) * 41)


def line_class() -> CurveClass:
    return CurveClass((1,) + (0,) * 41)


def exceptional(subset: Sequence[int]) -> DivisorClass:
    vec = [0] * RANK
    vec[slot(subset)] = -1
    return DivisorClass(vec)


def exceptional_curve(subset: Sequence[int]) -> CurveClass:
    vec = [0] * RANK
    vec[slot(subset)] = -1
    return CurveClass(vec)


def anticanonical() -> DivisorClass:
    """-K = 5H - 3 sum E_i - 2 sum E_ij - sum E_ijk.

    Standard blow-up canonical formula K = pi^* K + sum (codim-1) E; it is
    re-validated downstream by the normal-bundle degree-sum law.
    """
    vec = [5] + [3] * 6 + [2] * 15 + [1] * 20
    return DivisorClass(vec)


def boundary_class(marks: Iterable[int]) -> DivisorClass:
    """The boundary divisor indexed by a subset of the 7 markings {0..6}.

    delta_I = delta_{I^c}; subsets containing the spine marking 6 map to
    exceptional classes, pairs inside {0..5} to degree-1 classes.
    """
    I = frozenset(marks)
    if not I <= set(range(7)) or not 2 <= len(I) <= 5:
        raise ValueError(f"boundary subsets have size 2..5 inside {{0..6}}, got {sorted(I)}")
    if 6 in I and len(I) > 4:
        I = frozenset(range(7)) - I
    if 6 not in I and len(I) > 2:
        I = frozenset(range(7)) - I
    if 6 in I:
        return exceptional(sorted(I - {6}))
    # |I| == 2, I inside {0..5}
    rest = sorted(set(range(6)) - I)
    vec = [0] * RANK
    vec[0] = 1
    for k in rest:
        vec[slot((k,))] = 1
    for pair_ in combinations(rest, 2):
        vec[slot(pair_)] = 1
    for triple in combinations(rest, 3):
        vec[slot(triple)] = 1
    return DivisorClass(vec)


def boundary_catalog() -> Dict[frozenset, DivisorClass]:
    """All 56 boundary divisor classes keyed by a canonical marking subset."""
    out: Dict[frozenset, DivisorClass] = {}
    for size in (2, 3):
        for I in combinations(range(7), size):
            key = frozenset(I)
            out[key] = boundary_class(key)
    return out


# ---------------------------------------------------------------------------
# pushforward to the two contractions
# ---------------------------------------------------------------------------

#: target space registry: name -> (rank, list of kept slot indices)
_HASSETT_SLOTS = list(range(0, 22))  # H, points, lines; planes die
_BLLM_SLOTS = [0] + [1 + i for i in range(6)] \
    + [LINE_INDEX[s] for s in LINES if 0 not in s] \
    + [PLANE_INDEX[s] for s in PLANES if 0 not in s]

TARGETS: Dict[str, tuple[int, List[int]]] = {
    "M07": (RANK, list(range(RANK))),
    "HassettA": (22, _HASSETT_SLOTS),
    "BlLM7": (27, _BLLM_SLOTS),
}


def target_rank(name: str) -> int:
    try:
        return TARGETS[name][0]
    except KeyError:
        raise ValueError(f"unknown target space {name!r}; known: {sorted(TARGETS)}")


def pushforward(D: DivisorClass, target: str) -> Tuple[int, ...]:
    """Image of a divisor class under the contraction to the named space.

    HassettA kills all plane classes E_ijk; BlLM7 kills E_0i and E_0ij.
    Returns a reduced-rank integer vector in the same sign convention.
    """
    rank_, kept = TARGETS.get(target, (None, None))
    if kept is None:
        raise ValueError(f"unknown target space {target!r}; known: {sorted(TARGETS)}")
    return tuple(D.vec[i] for i in kept)


def pullback_curve(vec: Sequence[int], target: str) -> CurveClass:
    """Inject a curve class of the contraction back into the rank-42 lattice."""
    rank_, kept = TARGETS.get(target, (None, None))
    if kept is None:
        raise ValueError(f"unknown target space {target!r}; known: {sorted(TARGETS)}")
    if len(vec) != rank_:
        raise ValueError(f"expected a vector of rank {rank_}")
    out = [0] * RANK
    for value, idx in zip(vec, kept):
        out[idx] = value
    return CurveClass(out)


# ---------------------------------------------------------------------------
# closed-form comparison classes on Bl_e LM_{n+2}
# ---------------------------------------------------------------------------

def chen_coskun_class(a: Sequence[int]) -> Dict[Tuple[int, ...], int]:
    """Proper-transform class Lambda_a on Bl_e LM_{n+2}, as a labelled dict.

    Input: integers (a_1..a_n) with sum 0 and every a_i nonzero.  Output
    maps () -> d (the H coefficient) and each exceptional label to its
    m-coefficient, in the D = dH - sum m E convention.  Labels: (0,) for
    the torus-identity blow-up, (i,) for points, longer tuples for the
    strict-transform strata E_I (I containing n for the last-marking
    family).
    """
    a = list(a)
    n = len(a)
    if sum(a) != 0:
        raise ValueError("entries must sum to zero")
    if any(v == 0 for v in a):
        raise ValueError("zero weights are the forgetful-pullback case, out of scope here")
    tot = sum(abs(v) for v in a)
    if tot % 2:
        raise ValueError("sum of |a_i| must be even")
    d = tot // 2
    N = list(range(1, n))  # indices 1..n-1

    def S(idx: Iterable[int]) -> int:
        pos = sum(abs(a[i - 1]) for i in idx if a[i - 1] > 0)
        neg = sum(abs(a[i - 1]) for i in idx if a[i - 1] < 0)
        return min(pos, neg)

    out: Dict[Tuple[int, ...], int] = {(): d, (0,): 1}
    for i in range(1, n + 1):
        out[(i,)] = d - abs(a[i - 1])
    for size in range(2, n - 1):
        for I in combinations(N, size):
            out[tuple(I)] = S(I) + d - sum(abs(a[i - 1]) for i in I)
    for size in range(1, n - 1):
        for I in combinations(N, size):
            out[tuple(sorted(I + (n,)))] = S(set(N) - set(I))
    return out
