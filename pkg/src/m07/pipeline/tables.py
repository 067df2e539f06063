"""Seed-table loading and group orbits on the contraction lattices.

The seed data lives in ``data/tables/`` at the repository root (or under
$M07_DATA).  Classes are stored in the shared text format; reduced-rank
classes (the rank-22 and rank-27 contractions) are written with the same
letters and parsed by zero-filling the killed slots, which is lossless
because those tables never mention killed labels.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..fields import GF, QQ
from .. import multipoly as mp
from ..lattice import (CurveClass, DivisorClass, TARGETS, parse_curve,
                       parse_divisor, pushforward)
from .. import symmetry as sym

TABLE_IDS = ("extdivs0", "extdivs1", "extdivs2", "boundary", "notext",
             "nefcurves", "unpaired", "cone22", "cone27", "lmcurves")


def data_dir() -> Path:
    env = os.environ.get("M07_DATA")
    if env:
        return Path(env)
    here = Path.cwd()
    for base in (here, *here.parents):
        cand = base / "data" / "tables"
        if cand.is_dir():
            return cand
    # fall back to a path relative to the package source checkout
    pkg = Path(__file__).resolve()
    for base in pkg.parents:
        cand = base / "data" / "tables"
        if cand.is_dir():
            return cand
    raise FileNotFoundError("seed data directory data/tables not found; set M07_DATA")


def _rows(table_id: str, data: Optional[Path] = None) -> List[List[str]]:
    path = (data or data_dir()) / f"{table_id}.txt"
    out = []
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append(line.split("\t"))
    return out


@dataclass
class DivisorRow:
    divisor: DivisorClass
    polynomial: Optional[mp.MultiPoly]
    curve: Optional[CurveClass]
    normal_bundle: Optional[Tuple[int, ...]]


def load_divisor_table(table_id: str, data: Optional[Path] = None) -> List[DivisorRow]:
    rows = []
    for cols in _rows(table_id, data):
        divisor = parse_divisor(cols[0])
        poly = None
        if len(cols) > 1 and cols[1] not in ("-", ""):
            poly = mp.parse(cols[1], 5, QQ)
        curve = None
        if len(cols) > 2 and cols[2] not in ("-", ""):
            curve = parse_curve(cols[2])
        nb = None
        if len(cols) > 3 and cols[3] not in ("-", ""):
            nb = tuple(int(v) for v in cols[3].split(","))
        rows.append(DivisorRow(divisor, poly, curve, nb))
    return rows


def load_boundary_pairs(data: Optional[Path] = None) -> List[Tuple[DivisorClass, CurveClass]]:
    return [(parse_divisor(c[0]), parse_curve(c[1])) for c in _rows("boundary", data)]


def load_curve_table(table_id: str, data: Optional[Path] = None) \
        -> List[Tuple[CurveClass, Optional[Tuple[int, ...]]]]:
    out = []
    for cols in _rows(table_id, data):
        nb = tuple(int(v) for v in cols[1].split(",")) if len(cols) > 1 and cols[1] != "-" \
            else None
        out.append((parse_curve(cols[0]), nb))
    return out


def load_cone_table(table_id: str, data: Optional[Path] = None) \
        -> List[Tuple[Tuple[int, ...], int]]:
    """Rows of cone22/cone27: (reduced-rank vector, stated orbit size)."""
    target = "HassettA" if table_id == "cone22" else "BlLM7"
    out = []
    for cols in _rows(table_id, data):
        D = parse_divisor(cols[0])
        vec = pushforward(D, target)
        out.append((vec, int(cols[1])))
    return out


# ---------------------------------------------------------------------------
# group actions on the contractions
# ---------------------------------------------------------------------------

#: generator sets for the symmetry groups of each target space
TARGET_GENERATORS: Dict[str, Tuple[sym.Perm7, ...]] = {
    "M07": sym.GENERATORS,
    # the rank-22 contraction only carries the label action of S_6
    "HassettA": tuple(sym.transposition(i, i + 1) for i in range(5)),
    # the rank-27 contraction carries S_2 x S_5 (heavy pair {0, 6})
    "BlLM7": tuple(sym.transposition(i, i + 1) for i in range(1, 5))
            + (sym.transposition(0, 6),),
}


def act_on_target(sigma: sym.Perm7, vec: Tuple[int, ...], target: str) -> Tuple[int, ...]:
    """Induced action on a contraction: lift by zero-filling, act, project.

    Well defined because every generator preserves the kernel of the
    pushforward (checked in the test suite).
    """
    rank_, kept = TARGETS[target]
    lift = [0] * 42
    for value, idx in zip(vec, kept):
        lift[idx] = value
    image = sym.apply(sigma, DivisorClass(lift))
    return pushforward(image, target)


def orbit_on_target(vec: Sequence[int], target: str) -> List[Tuple[int, ...]]:
    gens = TARGET_GENERATORS[target]
    start = tuple(vec)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = act_on_target(g, v, target)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


def orbit_m07(x) -> List:
    return sym.orbit(x)


def expand_boundary_curves(data: Optional[Path] = None) -> List[CurveClass]:
    """All S_7-images of the boundary-table negative curves (deduplicated)."""
    seen = {}
    for _D, c in load_boundary_pairs(data):
        for member in sym.orbit(c):
            seen[member.vec] = member
    return [seen[v] for v in sorted(seen)]


def known_divisor_orbits(data: Optional[Path] = None) -> List[DivisorClass]:
    """Orbit expansion of every seed divisor class (boundary + tables)."""
    from ..lattice import boundary_catalog
    seen = {}
    for D in boundary_catalog().values():
        seen[D.vec] = D
    for table in ("extdivs0", "extdivs1"):
        for row in load_divisor_table(table, data):
            for member in sym.orbit(row.divisor):
                seen[member.vec] = member
    return [seen[v] for v in sorted(seen)]


def known_negative_curves(data: Optional[Path] = None) -> List[CurveClass]:
    """Orbit expansion of every certified negative curve in the seed data."""
    seen = {}
    for c in expand_boundary_curves(data):
        seen[c.vec] = c
    for table in ("extdivs0", "extdivs1"):
        for row in load_divisor_table(table, data):
            if row.curve is not None:
                for member in sym.orbit(row.curve):
                    seen[member.vec] = member
    return [seen[v] for v in sorted(seen)]
