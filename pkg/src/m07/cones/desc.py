"""Cone descriptions: primitive integer rays and facet normals."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence, Tuple


def primitive(vec: Sequence[int]) -> Tuple[int, ...]:
    """Divide by the gcd and normalize the sign of the first nonzero entry."""
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(0 for _ in vec)
    out = [v // g for v in vec]
    for v in out:
        if v:
            if v < 0:
                out = [-x for x in out]
            break
    return tuple(out)


def primitive_oriented(vec: Sequence[int]) -> Tuple[int, ...]:
    """Primitive scaling only; the sign is geometric, keep it."""
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(0 for _ in vec)
    return tuple(v // g for v in vec)


@dataclass
class ConeDesc:
    """A pointed rational cone, by generators and/or facet normals.

    Rays and facets are primitive integer vectors; every ray pairs >= 0
    with every facet under the standard dot product.  ``group_tag`` names
    the permutation group acting (informational).
    """

    ambient_rank: int
    rays: Optional[List[Tuple[int, ...]]] = None
    facets: Optional[List[Tuple[int, ...]]] = None
    group_tag: Optional[str] = None

    def __post_init__(self):
        if self.rays is not None:
            self.rays = [primitive_oriented(r) for r in self.rays]
        if self.facets is not None:
            self.facets = [primitive_oriented(f) for f in self.facets]
        self.validate()

    def validate(self):
        for name, vs in (("ray", self.rays), ("facet", self.facets)):
            if vs is None:
                continue
            for v in vs:
                if len(v) != self.ambient_rank:
                    raise ValueError(f"{name} {v} has wrong length")
        if self.rays is not None and self.facets is not None:
            for r in self.rays:
                for f in self.facets:
                    if dot(r, f) < 0:
                        raise ValueError(f"ray {r} violates facet {f}")

    def to_text(self) -> str:
        lines = [f"cone rank={self.ambient_rank} "
                 f"rays={len(self.rays) if self.rays is not None else -1} "
                 f"facets={len(self.facets) if self.facets is not None else -1} "
                 f"group={self.group_tag or '-'}"]
        if self.rays is not None:
            for r in self.rays:
                lines.append("ray " + " ".join(map(str, r)))
        if self.facets is not None:
            for f in self.facets:
                lines.append("facet " + " ".join(map(str, f)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ConeDesc":
        rank = None
        group = None
        rays: List[tuple] = []
        facets: List[tuple] = []
        have_rays = have_facets = False
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "cone":
                kv = dict(p.split("=", 1) for p in parts[1:])
                rank = int(kv["rank"])
                have_rays = int(kv.get("rays", -1)) >= 0
                have_facets = int(kv.get("facets", -1)) >= 0
                group = None if kv.get("group", "-") == "-" else kv["group"]
            elif parts[0] == "ray":
                rays.append(tuple(int(v) for v in parts[1:]))
            elif parts[0] == "facet":
                facets.append(tuple(int(v) for v in parts[1:]))
        if rank is None:
            raise ValueError("missing cone header")
        return cls(rank, rays if (rays or have_rays) else None,
                   facets if (facets or have_facets) else None, group)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))
