"""DG categories freely generated by a graded quiver with a differential.

Words are tuples of generator names in written order: ``("g", "f")`` is
g o f. The empty word is the identity of an object. Hom complexes are
infinite in general; they are cut into finite pieces by a weight filtration
(each generator gets a weight >= 1 no smaller than the weight of any word in
its differential), so the weight-<= W part is a subcomplex.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from dgquot.category import DGCategory, ValidationReport, Verdict
from dgquot.complexes import Complex, cohomology, ChainMap, cone_complex
from dgquot.ext import ExtTable, filtered_ext
from dgquot.linalg import Echelon, Field, Vec, axpy, scale

Word = Tuple[str, ...]
LinWords = Dict[Word, object]


class NonComposable(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    source: str
    target: str
    degree: int


class FreeCategory:
    presentation = "free"

    def __init__(self, field: Field, objects: Sequence[str], generators: Sequence[Generator],
                 differential: Mapping[str, Mapping[Word, object]], weights: Optional[Mapping[str, int]] = None,
                 name: str = "", check: bool = True):
        self.field = field
        self.objects = tuple(objects)
        self.generators = tuple(generators)
        self.gen = {g.name: g for g in self.generators}
        if len(self.gen) != len(self.generators):
            raise ValueError("duplicate generator names")
        for g in self.generators:
            if g.source not in self.objects or g.target not in self.objects:
                raise KeyError(f"generator {g.name} has an unknown endpoint")
        self.differential = {g.name: {tuple(w): field(c) for w, c in differential.get(g.name, {}).items() if field(c) != 0}
                             for g in self.generators}
        self.name = name
        for g in self.generators:
            for w in self.differential[g.name]:
                self._check_word(w, g.source, g.target, g.degree + 1, f"d({g.name})")
        self.weights = dict(weights) if weights else self._compute_weights()
        self._cache: Dict = {}
        self.default_weight = 8
        if check:
            bad = self.d_squared_failures()
            if bad:
                raise ValueError(f"d^2 != 0 on generators {bad}")

    def __repr__(self):
        return f"<FreeCategory {self.name} objects={list(self.objects)} generators={[g.name for g in self.generators]}>"

    # -- words
    def _check_word(self, w: Word, src: str, tgt: str, degree: int, where: str):
        if not w:
            if src != tgt:
                raise NonComposable(f"identity word in {where} between different objects")
            if degree != 0:
                raise ValueError(f"identity in {where} has the wrong degree")
            return
        cur = tgt
        for name in w:
            if name not in self.gen:
                raise KeyError(f"unknown generator {name} in {where}")
            g = self.gen[name]
            if g.target != cur:
                raise NonComposable(f"word {'*'.join(w)} in {where} is not composable")
            cur = g.source
        if cur != src:
            raise NonComposable(f"word {'*'.join(w)} in {where} has the wrong source")
        if self.word_degree(w) != degree:
            raise ValueError(f"word {'*'.join(w)} in {where} has the wrong degree")

    def word_degree(self, w: Word) -> int:
        return sum(self.gen[n].degree for n in w)

    def word_weight(self, w: Word) -> int:
        return sum(self.weights[n] for n in w)

    def _compute_weights(self) -> Dict[str, int]:
        weights: Dict[str, int] = {}
        pending = [g.name for g in self.generators]
        while pending:
            progress = False
            for n in list(pending):
                words = self.differential[n]
                if all(m in weights for w in words for m in w):
                    weights[n] = max([1] + [sum(weights[m] for m in w) for w in words])
                    pending.remove(n)
                    progress = True
            if not progress:
                raise ValueError("generators cannot be ordered so that d only uses earlier ones; pass weights")
        return weights

    def d_word(self, w: Word) -> LinWords:
        F = self.field
        out: LinWords = {}
        sgn = 0
        for p, name in enumerate(w):
            s = F.sign(sgn)
            for t, c in self.differential[name].items():
                nw = w[:p] + t + w[p + 1:]
                axpy(F, out, s * c, {nw: 1})
            sgn += self.gen[name].degree
        return out

    def d_lin(self, v: LinWords) -> LinWords:
        F = self.field
        out: LinWords = {}
        for w, c in v.items():
            axpy(F, out, c, self.d_word(w))
        return out

    def d_squared_failures(self) -> List[str]:
        return [g.name for g in self.generators if self.d_lin(self.differential[g.name])]

    def words(self, X: str, Y: str, max_weight: int) -> List[Word]:
        """All composable words X -> Y of weight <= max_weight, sorted by (weight, word)."""
        key = ("words", X, Y, max_weight)
        if key in self._cache:
            return self._cache[key]
        out = []
        by_source: Dict[str, List[Generator]] = {}
        for g in self.generators:
            by_source.setdefault(g.source, []).append(g)

        def rec(cur: str, applied: List[str], wt: int):
            if cur == Y:
                out.append(tuple(reversed(applied)))
            for g in by_source.get(cur, ()):
                w2 = wt + self.weights[g.name]
                if w2 <= max_weight:
                    applied.append(g.name)
                    rec(g.target, applied, w2)
                    applied.pop()

        rec(X, [], 0)
        out.sort(key=lambda w: (self.word_weight(w), w))
        self._cache[key] = out
        return out

    def hom_truncated(self, X: str, Y: str, max_weight: int, window: Tuple[int, int]) -> Complex:
        """Weight <= max_weight part of Hom(X, Y) in degrees window[0]-1 .. window[1]+1."""
        lo, hi = window
        F = self.field
        ws = [w for w in self.words(X, Y, max_weight) if lo - 1 <= self.word_degree(w) <= hi + 1]
        pos = {w: i for i, w in enumerate(ws)}
        d = []
        for w in ws:
            if self.word_degree(w) > hi:
                d.append({})
                continue
            col = {}
            for t, c in self.d_word(w).items():
                col[pos[t]] = c
            d.append(col)
        labels = [w if w else ("1", X) for w in ws]
        return Complex.build(F, [self.word_degree(w) for w in ws], d, labels, window, check=False)

    def ext_table(self, X: str, Y: str, window: Tuple[int, int], max_weight: Optional[int] = None,
                  s: int = 2) -> ExtTable:
        max_weight = max_weight or self.default_weight
        return filtered_ext(lambda W: self.hom_truncated(X, Y, W, window), window, max_weight, s,
                            provenance=f"free weight<={max_weight}")

    def opposite(self) -> "FreeCategory":
        F = self.field
        gens = [Generator(g.name, g.target, g.source, g.degree) for g in self.generators]
        diff = {}
        for g in self.generators:
            out = {}
            for w, c in self.differential[g.name].items():
                # reversing a word of letters a_1..a_n picks up the Koszul sign of the reversal
                degs = [self.gen[n].degree for n in w]
                e = sum(degs[i] * degs[j] for i in range(len(degs)) for j in range(i + 1, len(degs)))
                out[tuple(reversed(w))] = F.norm(F.sign(e) * c)
            diff[g.name] = out
        return FreeCategory(F, self.objects, gens, diff, self.weights, (self.name + "^op") if self.name else "")

    def validate(self, max_weight: int = 6) -> ValidationReport:
        rep = ValidationReport()
        for g in self.generators:
            rep.count("d2")
            if self.d_lin(self.differential[g.name]):
                rep.fail("d2", f"d(d({g.name})) != 0")
        # Leibniz holds by construction; spot-check d^2 on materialised words
        for X in self.objects:
            for Y in self.objects:
                for w in self.words(X, Y, max_weight):
                    rep.count("d2-words")
                    if self.d_lin(self.d_word(w)):
                        rep.fail("d2", f"d(d({'*'.join(w)})) != 0")
        return rep


def free_category(field: Field, objects: Sequence[str], quiver: Sequence[Tuple[str, str, str, int]],
                  differential: Mapping[str, Mapping[Word, object]] = None, name: str = "", weights=None) -> FreeCategory:
    """Convenience constructor: quiver entries are (name, source, target, degree)."""
    gens = [Generator(*q) for q in quiver]
    return FreeCategory(field, objects, gens, differential or {}, weights, name)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("1", ""):
        return ()
    return tuple(p.strip() for p in text.split("*"))


# ---------------------------------------------------------------- functors

class FreeFunctor:
    """DG functor from a free category to a table category, given on generators."""

    def __init__(self, source: FreeCategory, target: DGCategory, objmap: Mapping[str, str],
                 images: Mapping[str, Vec], name: str = ""):
        self.source, self.target = source, target
        self.objmap = dict(objmap)
        self.images = {k: dict(v) for k, v in images.items()}
        self.name = name

    def __call__(self, X):
        return self.objmap[X]

    def word_image(self, w: Word, X: Optional[str] = None) -> Vec:
        T = self.target
        F = T.field
        if not w:
            return dict(T.units[self.objmap[X]])
        cur = None
        for name in reversed(w):
            g = self.source.gen[name]
            img = self.images.get(name, {})
            if cur is None:
                cur = img
            else:
                cur = T.compose(self(self.source.gen[w[-1]].source), self(g.source), self(g.target), img, cur)
        return cur

    def apply(self, v: LinWords, X: str) -> Vec:
        F = self.target.field
        out: Vec = {}
        for w, c in v.items():
            axpy(F, out, c, self.word_image(w, X))
        return out

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        S, T = self.source, self.target
        for g in S.generators:
            rep.count("differential")
            img = self.images.get(g.name, {})
            h = T.hom(self(g.source), self(g.target))
            if any(h.degrees[k] != g.degree for k in img):
                rep.fail("degree", f"image of {g.name} has the wrong degree")
            lhs = h.apply_d(img)
            rhs = self.apply(S.differential[g.name], g.source)
            if lhs != rhs:
                rep.fail("differential", f"F(d {g.name}) != d F({g.name})")
        return rep

    def hom_map(self, X: str, Y: str, max_weight: int, window) -> ChainMap:
        src = self.source.hom_truncated(X, Y, max_weight, window)
        tgt = self.target.hom(self(X), self(Y))
        cols = []
        for i in range(len(src)):
            lab = src.label(i)
            w = () if lab == ("1", X) else lab
            cols.append(self.word_image(w, X))
        return ChainMap.build(src, tgt, cols)


def induced_cone_filtered(Fn: FreeFunctor, X: str, Y: str, window: Tuple[int, int]):
    """level W -> Cone(weight<=W part of Hom(X,Y) -> Hom_T(FX, FY)) restricted to the window."""
    lo, hi = window

    def level(W):
        f = Fn.hom_map(X, Y, W, (lo, hi + 1))
        c = cone_complex_windowed(f, (lo, hi))
        return c

    return level


def cone_complex_windowed(f: ChainMap, window) -> Complex:
    X, Y = f.source, f.target
    F = X.field
    ny = len(Y)
    degrees = list(Y.degrees) + [k - 1 for k in X.degrees]
    d: List[Vec] = [dict(col) for col in Y.d]
    for j in range(len(X)):
        col = {i + ny: F.neg(v) for i, v in X.d[j].items()}
        for i, v in f.columns[j].items():
            col[i] = v
        d.append(col)
    labels = [("T", Y.label(i)) for i in range(ny)] + [("S", X.label(j)) for j in range(len(X))]
    return Complex.build(F, degrees, d, labels, window, check=False)


def check_quasi_equivalence_free(Fn: FreeFunctor, window: Tuple[int, int], max_weight: int = 12, s: int = 2) -> Verdict:
    """Quasi-equivalence check for a functor out of a free category, through weight truncations."""
    rep = Fn.validate()
    if not rep.ok:
        return Verdict("no", ("not a DG functor", rep.failures))
    lo, hi = window
    details = {}
    unstable = []
    for X in Fn.source.objects:
        for Y in Fn.source.objects:
            t = filtered_ext(induced_cone_filtered(Fn, X, Y, (lo - 1, hi)), (lo - 1, hi), max_weight, s)
            details[(X, Y)] = t
            for n in t.degrees():
                if t.dims[n] and t.stable[n]:
                    return Verdict("no", ("cone cohomology", X, Y, n), details)
                if not t.stable[n]:
                    unstable.append((X, Y, n))
    missing = [Z for Z in Fn.target.objects if Z not in Fn.objmap.values()]
    if unstable or missing:
        return Verdict("inconclusive", {"unstable": unstable, "objects not hit": missing}, details)
    return Verdict("yes", None, details)


# ---------------------------------------------------------------- resolutions of categories

@dataclass
class CategoryResolutionReport:
    steps: int
    generators_per_step: List[List[str]]
    cells: Dict[Tuple[str, str, int], bool] = field(default_factory=dict)
    exhausted: bool = False

    @property
    def certified(self):
        return [k for k, v in self.cells.items() if v]


def semi_free_resolve_category(C: DGCategory, step_bound: int, window: Tuple[int, int],
                               max_weight: int = 6, search_weight: Optional[int] = None):
    """Build a semi-free category over C's objects with a functor onto C.

    Stage 0 is discrete. Each stage looks at the shifted cone of
    (weight-truncated free Hom) -> Hom_C for every pair of objects and every
    degree near the window, and adjoins one generator e per cohomology class
    of lowest weight: d e = p (a cocycle of the free part) and e maps to -m.
    Returns (free category, functor, report); the report marks the cells
    (X, Y, n) where the induced map is a quasi-isomorphism at weight
    ``max_weight``.
    """
    F = C.field
    lo, hi = window
    sw = search_weight or max_weight
    gens: List[Generator] = []
    diff: Dict[str, LinWords] = {}
    images: Dict[str, Vec] = {}
    weights: Dict[str, int] = {}
    per_step: List[List[str]] = []
    objmap = {X: X for X in C.objects}
    counter = itertools.count()
    Q = FreeCategory(F, C.objects, [], {}, {}, "resolution")
    for step in range(step_bound):
        Fn = FreeFunctor(Q, C, objmap, images)
        found = []
        for X in C.objects:
            for Y in C.objects:
                for k in range(lo - 2, hi + 1):
                    for p, m in _pair_cohomology(Fn, X, Y, k, sw):
                        found.append((max([0] + [Q.word_weight(w) for w in p]), X, Y, k, p, m))
        if not found:
            break
        # lowest weight first: higher classes are often killed by products of the new generators
        wmin = min(f[0] for f in found)
        new_names = []
        for wt, X, Y, k, p, m in found:
            if wt != wmin:
                continue
            name = f"e{next(counter)}"
            gens.append(Generator(name, X, Y, k))
            diff[name] = p
            images[name] = scale(F, F.neg(1), m)
            weights[name] = max(1, wt)
            new_names.append(name)
        per_step.append(new_names)
        Q = FreeCategory(F, C.objects, gens, diff, weights, "resolution")
    Q.default_weight = max_weight
    Fn = FreeFunctor(Q, C, objmap, images, "resolution")
    report = CategoryResolutionReport(len(per_step), per_step)
    bad = {(X, Y, k) for X in C.objects for Y in C.objects for k in range(lo - 1, hi + 1)
           if _pair_cohomology(Fn, X, Y, k, max_weight)}
    report.exhausted = len(per_step) >= step_bound and bool(bad)
    for X in C.objects:
        for Y in C.objects:
            for k in range(lo, hi + 1):
                report.cells[(X, Y, k)] = (X, Y, k) not in bad and (X, Y, k - 1) not in bad
    return Q, Fn, report


def _pair_cohomology(Fn: FreeFunctor, X: str, Y: str, k: int, W: int):
    """Classes of the shifted cone at degree k: pairs (p in P^{k+1}, m in M^k) with
    dp = 0 and Psi(p) + dm = 0, modulo (-dp', Psi(p') + dm')."""
    Q, C = Fn.source, Fn.target
    F = C.field
    P = Q.hom_truncated(X, Y, W, (k, k + 1))
    M = C.hom(Fn(X), Fn(Y))
    image = {}
    for i in range(len(P)):
        lab = P.label(i)
        w = () if lab == ("1", X) else lab
        image[i] = Fn.word_image(w, X)

    def D(kind, i):
        if kind == "P":
            out = {("P", j): F.neg(c) for j, c in P.d[i].items()}
            for j, c in image[i].items():
                axpy(F, out, c, {("M", j): 1})
        else:
            out = {("M", j): c for j, c in M.d[i].items()}
        return out

    cur = [("P", i) for i in P.basis_in_degree(k + 1)] + [("M", i) for i in M.basis_in_degree(k)]
    prev = [("P", i) for i in P.basis_in_degree(k)] + [("M", i) for i in M.basis_in_degree(k - 1)]
    Eb = Echelon(F)
    for b in prev:
        Eb.add(D(*b))
    Ek = Echelon(F, track=True)
    out = []
    for t, b in enumerate(cur):
        dep = Ek.add(D(*b), tag=t)
        if dep is None:
            continue
        z = scale(F, F.neg(1), dep)
        z[t] = F(1)
        vec = {cur[t2]: c for t2, c in z.items()}
        if Eb.add(vec) is None:
            p = {}
            m = {}
            for (kind, i), c in vec.items():
                if kind == "P":
                    lab = P.label(i)
                    p[() if lab == ("1", X) else lab] = c
                else:
                    m[i] = c
            out.append((p, m))
    return out


def free_to_table(Q: FreeCategory, max_weight: int = 64, name: str = "") -> DGCategory:
    """Materialise a free category whose word sets are finite (acyclic quiver) as a table category."""
    F = Q.field
    homs, words = {}, {}
    for X in Q.objects:
        for Y in Q.objects:
            ws = Q.words(X, Y, max_weight)
            if any(Q.word_weight(w) == max_weight for w in ws):
                raise ValueError("word sets are not finite below the weight bound")
            words[(X, Y)] = ws
            pos = {w: i for i, w in enumerate(ws)}
            d = [{pos[t]: c for t, c in Q.d_word(w).items()} for w in ws]
            labels = ["*".join(w) if w else f"id_{X}" for w in ws]
            homs[(X, Y)] = Complex.build(F, [Q.word_degree(w) for w in ws], d, labels)
    comp = {}
    for X in Q.objects:
        for Y in Q.objects:
            for Z in Q.objects:
                tab = {}
                pos = {w: i for i, w in enumerate(words[(X, Z)])}
                for i, g in enumerate(words[(Y, Z)]):
                    for j, f in enumerate(words[(X, Y)]):
                        tab[(i, j)] = {pos[g + f]: F(1)}
                if tab:
                    comp[(X, Y, Z)] = tab
    units = {X: {words[(X, X)].index(()): F(1)} for X in Q.objects}
    return DGCategory(F, Q.objects, homs, comp, units, name or Q.name)
