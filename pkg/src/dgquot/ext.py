"""Ext tables and cohomology of increasingly filtered complexes.

A filtered family is a callable ``level -> Complex`` whose basis labels are
nested: every label of level N is a label of level N+1, and the differential
of level N is the restriction of that of level N+1. The comparison map
H(F_N) -> H(F_{N+1}) is then induced by relabelling.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from dgquot.complexes import Complex, class_rank, cohomology


@dataclass
class ExtTable:
    """degree -> dimension, with stabilisation metadata.

    ``stable[n]`` says whether the value at degree n was confirmed by
    ``s`` consecutive isomorphic comparison maps (or is exact outright);
    ``certified[n]`` is the authority flag used by cross checks.
    """

    dims: Dict[int, int]
    window: Tuple[int, int]
    stable: Dict[int, bool] = field(default_factory=dict)
    stable_level: Dict[int, Optional[int]] = field(default_factory=dict)
    certified: Dict[int, bool] = field(default_factory=dict)
    provenance: str = ""
    representatives: Dict[int, list] = field(default_factory=dict)
    history: Dict[int, List[int]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @classmethod
    def exact(cls, dims: Dict[int, int], window, provenance: str = "", representatives=None) -> "ExtTable":
        return cls(dict(dims), tuple(window), {n: True for n in dims}, {n: 0 for n in dims},
                   {n: True for n in dims}, provenance, representatives or {})

    def __getitem__(self, n: int) -> int:
        return self.dims[n]

    def degrees(self):
        return sorted(self.dims)

    @property
    def all_stable(self) -> bool:
        return all(self.stable.get(n, False) for n in self.dims)

    def certified_degrees(self):
        return [n for n in self.degrees() if self.certified.get(n)]

    def as_dict(self) -> Dict[int, int]:
        return {n: self.dims[n] for n in self.degrees()}

    def to_json(self) -> dict:
        return {
            "window": list(self.window),
            "provenance": self.provenance,
            "degrees": [
                {
                    "degree": n,
                    "dimension": self.dims[n],
                    "stable": bool(self.stable.get(n)),
                    "stable_level": self.stable_level.get(n),
                    "certified": bool(self.certified.get(n)),
                }
                for n in self.degrees()
            ],
            "notes": list(self.notes),
        }


def filtered_ext(level: Callable[[int], Complex], window: Tuple[int, int], max_level: int,
                 s: int = 2, min_level: int = 0, provenance: str = "",
                 exact_from: Optional[Callable[[int], bool]] = None) -> ExtTable:
    """Cohomology of F_N for N = min_level..max_level with stabilisation flags.

    A degree is flagged stable when the last ``s`` comparison maps into
    F_max_level are isomorphisms; the reported dimension is the one at the
    top level. ``exact_from(n)``, when given and true, upgrades degree n to
    certified regardless of the heuristic (e.g. acyclic graded pieces).
    """
    lo, hi = window
    levels = list(range(min_level, max_level + 1))
    complexes = {N: level(N) for N in levels}
    history: Dict[int, List[int]] = {n: [] for n in range(lo, hi + 1)}
    iso: Dict[int, List[bool]] = {n: [] for n in range(lo, hi + 1)}
    reps_top: Dict[int, list] = {}
    prev = None
    for N in levels:
        c = complexes[N]
        res = {n: cohomology(c, n) for n in range(lo, hi + 1)}
        for n, r in res.items():
            history[n].append(r.dimension)
        if prev is not None:
            pc, pres = prev
            idx = c.index
            for n in range(lo, hi + 1):
                moved = [{idx[pc.label(k)]: v for k, v in z.items()} for z in pres[n].representatives]
                rk = class_rank(c, n, moved) if moved else 0
                iso[n].append(rk == pres[n].dimension == res[n].dimension)
        prev = (c, res)
        if N == levels[-1]:
            reps_top = {n: r.representatives for n, r in res.items()}
    t = ExtTable({n: history[n][-1] for n in history}, window, provenance=provenance,
                 representatives=reps_top, history=history)
    for n in history:
        flags = iso[n]
        run = 0
        for f in reversed(flags):
            if not f:
                break
            run += 1
        t.stable[n] = run >= s
        t.stable_level[n] = levels[-1] - run if run else None
        t.certified[n] = t.stable[n]
        if exact_from is not None and exact_from(n):
            t.certified[n] = True
            t.stable[n] = True
    return t
