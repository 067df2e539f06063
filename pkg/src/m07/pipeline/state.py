"""Search state: certified divisor and curve sets with a replayable journal.

The state holds the orbit-keyed sets D (known extreme divisors, each with
an effectivity certificate) and C (known negative and nef curve classes,
each with a deformation certificate), plus caches of the two cone
approximations.  Every mutation appends one JSON line to the journal;
replaying a journal rebuilds the state bit-exactly, which is also how
long-running jobs resume.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..lattice import CurveClass, DivisorClass
from .. import symmetry as sym


@dataclass
class DivisorRecord:
    rep: DivisorClass            # canonical orbit representative
    certificate: dict            # effectivity evidence (h0 runs, polynomial ref)


@dataclass
class CurveRecord:
    rep: CurveClass
    kind: str                    # "negative" | "nef"
    certificate: dict


class SearchState:
    def __init__(self, journal_path: Optional[Path] = None):
        self.divisors: Dict[tuple, DivisorRecord] = {}
        self.curves: Dict[tuple, CurveRecord] = {}
        self._events: List[dict] = []
        self.journal_path = journal_path
        self._cone_cache: Dict[str, object] = {}

    # -- journalled mutation ------------------------------------------------

    def _log(self, event: dict):
        self._events.append(event)
        if self.journal_path is not None:
            with open(self.journal_path, "a") as fh:
                fh.write(json.dumps(event, sort_keys=True) + "\n")

    def add_divisor(self, D: DivisorClass, certificate: dict, _replay=False):
        rep = sym.canonical_rep(D)
        key = rep.vec
        if key in self.divisors:
            return False
        self.divisors[key] = DivisorRecord(rep, certificate)
        self._cone_cache.clear()
        if not _replay:
            self._log({"op": "add_divisor", "vec": list(D.vec), "cert": certificate})
        return True

    def add_curve(self, c: CurveClass, kind: str, certificate: dict, _replay=False):
        rep = sym.canonical_rep(c)
        key = rep.vec
        if key in self.curves:
            return False
        self.curves[key] = CurveRecord(rep, kind, certificate)
        self._cone_cache.clear()
        if not _replay:
            self._log({"op": "add_curve", "vec": list(c.vec), "kind": kind,
                       "cert": certificate})
        return True

    def remove_curve(self, rep_vec: tuple, coefficients=None, _replay=False):
        if rep_vec in self.curves:
            del self.curves[rep_vec]
            self._cone_cache.clear()
            if not _replay:
                self._log({"op": "remove_curve", "vec": list(rep_vec),
                           "coefficients": [str(c) for c in (coefficients or [])]})

    def note(self, payload: dict):
        self._log({"op": "note", **payload})

    # -- cached cone data -----------------------------------------------------

    def divisor_generators(self) -> List[DivisorClass]:
        """Orbit expansion of D (the generators of the inner cone)."""
        if "divgen" not in self._cone_cache:
            seen = {}
            for rec in self.divisors.values():
                for member in sym.orbit(rec.rep):
                    seen[member.vec] = member
            self._cone_cache["divgen"] = [seen[v] for v in sorted(seen)]
        return self._cone_cache["divgen"]

    def curve_generators(self) -> List[CurveClass]:
        """Orbit expansion of C (the inequalities bounding the outer cone)."""
        if "curvegen" not in self._cone_cache:
            seen = {}
            for rec in self.curves.values():
                for member in sym.orbit(rec.rep):
                    seen[member.vec] = member
            self._cone_cache["curvegen"] = [seen[v] for v in sorted(seen)]
        return self._cone_cache["curvegen"]

    # -- journal -----------------------------------------------------------

    def events(self) -> List[dict]:
        return list(self._events)

    @classmethod
    def replay(cls, journal_path: Path) -> "SearchState":
        state = cls(journal_path=None)
        with open(journal_path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                event = json.loads(line)
                state._events.append(event)
                if event["op"] == "add_divisor":
                    state.add_divisor(DivisorClass(event["vec"]), event["cert"],
                                      _replay=True)
                elif event["op"] == "add_curve":
                    state.add_curve(CurveClass(event["vec"]), event["kind"],
                                    event["cert"], _replay=True)
                elif event["op"] == "remove_curve":
                    state.remove_curve(tuple(event["vec"]), _replay=True)
        state.journal_path = journal_path
        return state


def seeded_state(journal_path: Optional[Path] = None, data=None) -> SearchState:
    """Fresh state loaded from the full seed tables."""
    from . import tables as tb
    from ..lattice import boundary_catalog
    state = SearchState(journal_path)
    for key, D in sorted(boundary_catalog().items(), key=lambda kv: sorted(kv[0])):
        state.add_divisor(D, {"kind": "boundary", "marks": sorted(key)})
    for D, c in tb.load_boundary_pairs(data):
        state.add_curve(c, "negative", {"kind": "boundary-table"})
    for table in ("extdivs0", "extdivs1"):
        for row in tb.load_divisor_table(table, data):
            state.add_divisor(row.divisor, {"kind": table})
            if row.curve is not None:
                state.add_curve(row.curve, "negative", {"kind": table})
    for c, nb in tb.load_curve_table("nefcurves", data):
        state.add_curve(c, "nef", {"kind": "nefcurves", "N": list(nb or [])})
    return state
