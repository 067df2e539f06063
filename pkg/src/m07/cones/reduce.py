"""Orbit-aware redundancy elimination for cone generator sets."""

from __future__ import annotations

from typing import Callable, List, Sequence, Tuple

from .lp import InfeasibleCertificate, lp_express


def orbit_reduce(generators: Sequence[Sequence[int]],
                 orbit_of: Callable[[Tuple[int, ...]], Sequence[Tuple[int, ...]]]):
    """Discard generator orbits expressible from the others.

    ``orbit_of`` expands one vector to its full group orbit.  One LP runs
    per orbit (on a representative); symmetry transports the verdict to
    the rest.  Returns (survivor orbit representatives, removal log of
    (representative, coefficients)).
    """
    reps: List[Tuple[int, ...]] = []
    orbit_members: List[List[Tuple[int, ...]]] = []
    seen = set()
    for g in generators:
        g = tuple(g)
        if g in seen:
            continue
        orb = [tuple(v) for v in orbit_of(g)]
        seen.update(orb)
        reps.append(min(orb))
        orbit_members.append(sorted(set(orb)))

    removed = []
    survivors = list(range(len(reps)))
    changed = True
    while changed:
        changed = False
        for idx in list(survivors):
            others: List[Tuple[int, ...]] = []
            for j in survivors:
                if j == idx:
                    # other members of the same orbit may still express the rep
                    others.extend(v for v in orbit_members[j] if v != reps[idx])
                else:
                    others.extend(orbit_members[j])
            res = lp_express(list(reps[idx]), others)
            if not isinstance(res, InfeasibleCertificate):
                survivors.remove(idx)
                removed.append((reps[idx], res.primal))
                changed = True
    return [reps[i] for i in survivors], removed
