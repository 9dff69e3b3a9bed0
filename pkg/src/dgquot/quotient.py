"""The DG quotient A/B and three ways to compute its Ext groups.

Morphisms X -> Y of A/B are spanned by words f_n e f_{n-1} e ... e f_0 with
f_0 in Hom(X, U_1), f_i in Hom(U_i, U_{i+1}), f_n in Hom(U_n, Y), U_i in B,
where each e is the adjoined degree -1 endomorphism with d e = 1. A word has
level n (the number of e letters) and degree sum|f_i| - n. Its differential
is the Leibniz expansion over the letters: a letter f_i becomes d f_i, an
e letter becomes the identity and its neighbours are composed in A. The sign
of each term is (-1) to the total degree of the letters to its left.
Words of level <= N span a subcomplex F_N.

Pipelines:

* ``quotient_ext``: cohomology of F_N for growing N with stabilisation flags.
* ``cone_formula_ext``: cohomology of Cone(h_Y (x)^L_B h~_X -> Hom(X, Y)) with
  the derived tensor computed from the bar resolution or from a semi-free
  resolution of Res_B h_Y.
* ``verdier_ext_via_orthogonal``: Hom(h_X, N) for N = Cone(LInd Res_B h_Y -> h_Y),
  computed as a complex of natural transformations; authoritative when N is
  right orthogonal to B.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from dgquot.category import (DGCategory, DGFunctor, Verdict, homotopy_equivalent_objects,
                             is_contractible_object, validate_functor)
from dgquot.complexes import ChainMap, Complex, cohomology, cohomology_dims, is_acyclic
from dgquot.ext import ExtTable, filtered_ext
from dgquot.free import cone_complex_windowed
from dgquot.linalg import Vec, axpy
from dgquot.modules import (RIGHT, SemiFreeModule, _spread, bar_generators, check_induced_image,
                            cone_module, lind_res_cone, module_hom, restrict, restrict_to,
                            semi_free_resolve, yoneda, ModuleMap)

Letter = Tuple[str, str, int]  # (source, target, basis index)

SIGN_CONVENTION = "signs: d(word) = sum over letters of (-1)^(degree left of the letter) * (letter replaced)"


class BlowupError(RuntimeError):
    pass


class QuotientCategory:
    """A/B presented by words; objects are those of A."""

    presentation = "quotient"

    def __init__(self, A: DGCategory, B: Sequence[str], cap: int = 400_000):
        if A.presentation != "table":
            raise TypeError("the base must be table-presented")
        missing = [U for U in B if U not in A.objects]
        if missing:
            raise KeyError(f"{missing} are not objects of the base")
        self.A = A
        self.B = tuple(B)
        self.field = A.field
        self.objects = A.objects
        self.cap = cap
        self.name = f"{A.name}/{{{','.join(self.B)}}}"
        degs = [k for h in A.homs.values() for k in h.degrees]
        self._dmin, self._dmax = (min(degs), max(degs)) if degs else (0, 0)

    def __repr__(self):
        return f"<QuotientCategory {self.name}>"

    def word_degree(self, w: Tuple[Letter, ...]) -> int:
        A = self.A
        return sum(A.degree(s, t, i) for s, t, i in w) - (len(w) - 1)

    def words(self, X: str, Y: str, level: int, deg_range: Optional[Tuple[int, int]] = None) -> List[Tuple[Letter, ...]]:
        """Words of exactly this level from X to Y (written order f_n ... f_0)."""
        A, out = self.A, []
        lo, hi = deg_range if deg_range else (None, None)

        def ok(deg, left):
            # left = letters of B still to place (each followed by an e), then the last letter
            if lo is None:
                return True
            return deg + left * (self._dmax - 1) + self._dmax >= lo and deg + left * (self._dmin - 1) + self._dmin <= hi

        def rec(tgt, n_left, acc, deg):
            # acc holds letters from the left; next letter ends at tgt
            if n_left == 0:
                h = A.hom(X, tgt)
                for i, k in enumerate(h.degrees):
                    d = deg + k
                    if lo is None or lo <= d <= hi:
                        out.append(tuple(acc + [(X, tgt, i)]))
                        if len(out) > self.cap:
                            raise BlowupError(f"more than {self.cap} words; lower the level or narrow the window")
                return
            for U in self.B:
                h = A.hom(U, tgt)
                for i, k in enumerate(h.degrees):
                    d = deg + k - 1
                    if ok(d, n_left - 1):
                        rec(U, n_left - 1, acc + [(U, tgt, i)], d)

        if level == 0:
            h = A.hom(X, Y)
            return [((X, Y, i),) for i, k in enumerate(h.degrees) if lo is None or lo <= k <= hi]
        rec(Y, level, [], 0)
        return out

    def d_word(self, w: Tuple[Letter, ...]) -> Dict[Tuple[Letter, ...], object]:
        A, F = self.A, self.field
        out: Dict = {}
        sgn = 0
        for p, (s, t, i) in enumerate(w):
            if p > 0:
                # the e between letter p-1 (left) and p (right)
                sg = F.sign(sgn)
                ls, lt, li = w[p - 1]
                prod = A.compose(s, t, lt, {li: F(1)}, {i: F(1)})
                for k, v in prod.items():
                    nw = w[:p - 1] + ((s, lt, k),) + w[p + 1:]
                    out[nw] = F.norm(out.get(nw, 0) + sg * v)
                sgn -= 1
            sg = F.sign(sgn)
            for k, v in A.hom(s, t).d[i].items():
                nw = w[:p] + ((s, t, k),) + w[p + 1:]
                out[nw] = F.norm(out.get(nw, 0) + sg * v)
            sgn += A.degree(s, t, i)
        return {k: v for k, v in out.items() if v}

    def hom_truncated(self, X: str, Y: str, level_bound: int, window: Tuple[int, int]) -> Complex:
        return quotient_hom_truncated(self, X, Y, level_bound, window).complex

    def ext_table(self, X, Y, window, max_level: int = 6, s: int = 2) -> ExtTable:
        return quotient_ext(self, X, Y, window, max_level, s)


def drinfeld_quotient(A: DGCategory, B: Sequence[str], cap: int = 400_000) -> QuotientCategory:
    return QuotientCategory(A, B, cap)


@dataclass
class FilteredHom:
    X: str
    Y: str
    level_bound: int
    window: Tuple[int, int]
    complex: Complex
    levels: List[int]  # level of each basis element

    def graded_dims(self) -> Dict[int, Dict[int, int]]:
        """level -> degree -> number of words."""
        out: Dict[int, Dict[int, int]] = {}
        for lv, deg in zip(self.levels, self.complex.degrees):
            out.setdefault(lv, {})
            out[lv][deg] = out[lv].get(deg, 0) + 1
        return out

    def graded_piece(self, n: int) -> Complex:
        """The level-n piece with the level-preserving part of the differential."""
        idx = [i for i, lv in enumerate(self.levels) if lv == n]
        pos = {i: t for t, i in enumerate(idx)}
        c = self.complex
        d = [{pos[k]: v for k, v in c.d[i].items() if k in pos} for i in idx]
        return Complex.build(c.field, [c.degrees[i] for i in idx], d, [c.label(i) for i in idx], c.window, check=False)


def quotient_hom_truncated(Q: QuotientCategory, X: str, Y: str, level_bound: int,
                           window: Tuple[int, int]) -> FilteredHom:
    """F_N of Hom_{A/B}(X, Y) on degrees window[0]-1 .. window[1]+1."""
    lo, hi = window
    words, levels = [], []
    for n in range(level_bound + 1):
        ws = Q.words(X, Y, n, (lo - 1, hi + 1))
        words.extend(ws)
        levels.extend([n] * len(ws))
    pos = {w: i for i, w in enumerate(words)}
    degrees = [Q.word_degree(w) for w in words]
    d = []
    for w, deg in zip(words, degrees):
        if deg > hi:
            d.append({})
            continue
        col = {}
        for t, v in Q.d_word(w).items():
            col[pos[t]] = v
        d.append(col)
    c = Complex.build(Q.field, degrees, d, words, window, check=False)
    return FilteredHom(X, Y, level_bound, window, c, levels)


def exact_degrees(A: DGCategory, B: Sequence[str], X: str, Y: str, window: Tuple[int, int],
                  level: int) -> List[int]:
    """Degrees n of the window where H^n(F_level) is already H^n of the whole Hom_{A/B}(X, Y).

    Over a field the level-m graded piece has cohomology
    sum over X -> U_1 -> ... -> U_m -> Y of H(Hom(U_m, Y)) (x) ... (x) H(Hom(X, U_1)),
    shifted down by m. If it vanishes in degrees n - 1 and n for every m > level,
    so does the cohomology of F_inf / F_level, and degree n is exact. Levels are
    enumerated with a transfer matrix; the enumeration is finite when every
    cohomologically live cycle through B lowers the degree (or there is none).
    """
    lo, hi = window
    if not B:
        return list(range(lo, hi + 1))
    H = {}
    for U in A.objects:
        for V in A.objects:
            dims = {k: v for k, v in cohomology_dims(A.hom(U, V)).items() if v}
            if dims:
                H[(U, V)] = dims
    shifts = [k - 1 for (U, V), dims in H.items() if U in B and V in B for k in dims]
    if shifts and max(shifts) >= 0:
        return []  # a live cycle may keep the degree from dropping
    tail = max([k for (U, V), dims in H.items() if V == Y and U in B for k in dims], default=None)
    if tail is None:
        return list(range(lo, hi + 1))
    bad = set()
    vec = {U: {k - 1: v for k, v in H[(X, U)].items()} for U in B if (X, U) in H}
    m = 1
    while vec:
        top = max(k for poly in vec.values() for k in poly) + tail
        if top < lo - 1:
            break
        if m > level:
            for U, poly in vec.items():
                for a, x in poly.items():
                    for b, y in H.get((U, Y), {}).items():
                        bad.add(a + b)
        nxt: Dict[str, Dict[int, int]] = {}
        for U, poly in vec.items():
            for V in B:
                for b, y in H.get((U, V), {}).items():
                    tgt = nxt.setdefault(V, {})
                    for a, x in poly.items():
                        tgt[a + b - 1] = tgt.get(a + b - 1, 0) + x * y
        vec = nxt
        m += 1
    return [n for n in range(lo, hi + 1) if n not in bad and n - 1 not in bad]


def quotient_ext(Q: QuotientCategory, X: str, Y: str, window: Tuple[int, int], N_max: int,
                 s: int = 2) -> ExtTable:
    """Ext^n_{A/B}(X, Y) from the word filtration.

    Degrees are stable when the comparison maps H(F_N) -> H(F_{N+1}) were
    isomorphisms for the last ``s`` steps. Degrees where the graded pieces
    above N_max have no cohomology (see ``exact_degrees``) are exact.
    """
    exact = set(exact_degrees(Q.A, Q.B, X, Y, window, N_max))
    t = filtered_ext(lambda N: quotient_hom_truncated(Q, X, Y, N, window).complex, window, N_max, s,
                     provenance=f"word filtration N<={N_max}", exact_from=exact.__contains__)
    t.notes.append(SIGN_CONVENTION)
    if exact:
        t.notes.append("exact in degrees " + ",".join(map(str, sorted(exact))))
    return t


# ---------------------------------------------------------------- cone formula

def _tensor_cone(A: DGCategory, gens, images, X: str, Y: str, window) -> Complex:
    """Cone(sum_g e_g Hom(X, U_g) -> Hom(X, Y)) on degrees window +- 1; e_g.a -> images[g] o a."""
    lo, hi = window
    F = A.field
    P = SemiFreeModule(A, gens)
    src = P.evaluate(X, A, (lo, hi + 2))
    tgt = A.hom(X, Y)
    cols = []
    for (gname, a) in src.labels or ():
        U = P.generators[P.index[gname]].obj
        cols.append(A.compose(X, U, Y, images.get(gname, {}), {a: F(1)}))
    f = ChainMap.build(src, tgt, cols)
    return cone_complex_windowed(f, window)


def cone_formula_ext(A: DGCategory, B: Sequence[str], X: str, Y: str, window: Tuple[int, int],
                     max_level: int = 6, s: int = 2, route: str = "bar", step_bound: int = 40) -> ExtTable:
    """Ext of Cone(h_Y (x)^L_B h~_X -> Hom_A(X, Y)).

    ``route="bar"`` truncates the bar resolution at length max_level - 1 and
    flags stability across lengths; ``route="semifree"`` resolves Res_B h_Y
    by adjoining generators and certifies degrees far enough from the edge of
    the resolved window.
    """
    lo, hi = window
    F = A.field
    if not B:
        t = filtered_ext(lambda N: _tensor_cone(A, [], {}, X, Y, window), window, 0, 0, provenance="B empty")
        for n in t.dims:
            t.stable[n] = t.certified[n] = True
        return t
    M = restrict_to(yoneda(A, Y, RIGHT), B)
    sp = _spread(A)
    if route == "bar":
        def level(N):
            gens = bar_generators(M, N - 1, (lo, hi + 2), -sp, sp) if N >= 1 else []
            images = {}
            for g in gens:
                if len(g.name) == 1:
                    U, m = g.name[0]
                    images[g.name] = {m: F.sign(M(U).degrees[m])}
            return _tensor_cone(A, gens, images, X, Y, window)
        exact = set(exact_degrees(A, B, X, Y, window, max_level))
        return filtered_ext(level, window, max_level, s, provenance=f"bar length<={max_level - 1}",
                            exact_from=exact.__contains__)
    if route != "semifree":
        raise ValueError("route is 'bar' or 'semifree'")
    pad = 2 * sp + 2
    P, phi, cert, rep = semi_free_resolve(M, step_bound, (lo - pad, hi + pad))
    c = _tensor_cone(A, P.generators, phi.images, X, Y, window)
    dims = {n: cohomology(c, n).dimension for n in range(lo, hi + 1)}
    t = ExtTable(dims, window, provenance=f"semi-free resolution, {rep.steps} steps")
    ok = all(rep.cells.values()) and not cert.validate(P)
    for n in dims:
        t.stable[n] = t.certified[n] = ok
        t.stable_level[n] = rep.steps if ok else None
    if not ok:
        t.notes.append("resolution not certified on the padded window")
    return t


# ---------------------------------------------------------------- via the orthogonal complement

def verdier_ext_via_orthogonal(A: DGCategory, B: Sequence[str], X: str, Y: str, window: Tuple[int, int],
                               step_bound: int = 40) -> ExtTable:
    """Cohomology of Hom(h_X, Cone(LInd Res_B h_Y -> h_Y)).

    The table is authoritative (certified) when the cone is right orthogonal
    to B on the window and the resolution is certified.
    """
    N, counit, rep = lind_res_cone(A, Y, B, (window[0] - 1, window[1] + 1), step_bound)
    H = module_hom(yoneda(A, X, RIGHT), N, window)
    lo, hi = window
    dims = {n: cohomology(H, n).dimension for n in range(lo, hi + 1)}
    t = ExtTable(dims, window, provenance="orthogonal complement")
    ok = bool(rep.orthogonal) and rep.certificate_ok and all(rep.resolution.cells.values())
    for n in dims:
        t.stable[n] = t.certified[n] = ok
    t.notes.append(f"B-orthogonality: {rep.orthogonal.status}")
    return t


# ---------------------------------------------------------------- cross check

@dataclass
class CrossCheckReport:
    window: Tuple[int, int]
    tables: Dict[Tuple[str, str], Dict[str, ExtTable]] = field(default_factory=dict)
    discrepancies: List[Tuple] = field(default_factory=list)
    uncertified: List[Tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def agreed(self, pair) -> Dict[int, int]:
        """Degrees certified by at least two pipelines that all agree."""
        tabs = self.tables[pair]
        out = {}
        for n in range(self.window[0], self.window[1] + 1):
            vals = [t.dims[n] for t in tabs.values() if t.certified.get(n)]
            if len(vals) >= 2 and len(set(vals)) == 1:
                out[n] = vals[0]
        return out

    def to_json(self) -> dict:
        return {
            "window": list(self.window),
            "pairs": [
                {"source": X, "target": Y,
                 "pipelines": {k: t.to_json() for k, t in sorted(tabs.items())}}
                for (X, Y), tabs in sorted(self.tables.items())
            ],
            "discrepancies": [list(map(str, d)) for d in self.discrepancies],
            "uncertified": [list(map(str, d)) for d in self.uncertified],
        }


PIPELINES = ("filtration", "cone", "orthogonal")


def cross_check(A: DGCategory, B: Sequence[str], pairs: Optional[Sequence[Tuple[str, str]]] = None,
                window: Tuple[int, int] = (-3, 3), max_level: int = 6, s: int = 2, step_bound: int = 40,
                cone_route: str = "bar") -> CrossCheckReport:
    """Run the three pipelines per pair; any two certified values that differ are a discrepancy."""
    Q = drinfeld_quotient(A, B)
    pairs = pairs or [(X, Y) for X in A.objects for Y in A.objects]
    rep = CrossCheckReport(tuple(window))
    for X, Y in pairs:
        tabs = {
            "filtration": quotient_ext(Q, X, Y, window, max_level, s),
            "cone": cone_formula_ext(A, B, X, Y, window, max_level, s, cone_route, step_bound),
            "orthogonal": verdier_ext_via_orthogonal(A, B, X, Y, window, step_bound),
        }
        rep.tables[(X, Y)] = tabs
        for n in range(window[0], window[1] + 1):
            cert = [k for k in PIPELINES if tabs[k].certified.get(n)]
            if len(cert) < len(PIPELINES):
                rep.uncertified.append((X, Y, n, tuple(k for k in PIPELINES if k not in cert)))
            vals = {tabs[k].dims[n] for k in cert}
            if len(vals) > 1:
                rep.discrepancies.append((X, Y, n, {k: tabs[k].dims[n] for k in PIPELINES}))
    return rep


# ---------------------------------------------------------------- quotient property

def is_dg_quotient(xi, B: Sequence[str], window: Tuple[int, int], step_bound: int = 40,
                   max_weight: int = 12) -> Verdict:
    """Decide, within bounds, whether xi: A -> C exhibits C as a DG quotient of A by B.

    Checks that xi is a DG functor, that xi(U) is contractible for U in B,
    that every object of C is homotopy equivalent to one in the image, and
    that for each Y the module X -> Cone(Hom_A(X, Y) -> Hom_C(xi X, xi Y)) is
    induced from B (LInd Res_B -> id is a quasi-isomorphism on the window).
    Verdicts: verified-to-bounds, refuted (with witness), inconclusive.
    """
    from dgquot.free import FreeFunctor, check_quasi_equivalence_free
    if isinstance(xi, FreeFunctor):
        rep = xi.validate()
        if not rep.ok:
            return Verdict("refuted", ("not a DG functor", rep.failures))
        if B:
            raise NotImplementedError("free sources are supported with B empty")
        v = check_quasi_equivalence_free(xi, window, max_weight)
        status = {"yes": "verified-to-bounds", "no": "refuted"}.get(v.status, "inconclusive")
        return Verdict(status, v.witness, v.details)
    A, C = xi.source, xi.target
    rep = validate_functor(xi)
    if not rep.ok:
        return Verdict("refuted", ("not a DG functor", rep.failures))
    for U in B:
        if is_contractible_object(C, xi(U)) is None:
            return Verdict("refuted", ("image of B not contractible", U))
    image = {xi(X) for X in A.objects}
    missing = [Z for Z in C.objects if Z not in image
               and not any(homotopy_equivalent_objects(C, W, Z) for W in sorted(image))]
    if missing:
        return Verdict("inconclusive", ("no homotopy equivalence found", missing))
    details = {}
    pending = []
    for Y in A.objects:
        hY = yoneda(A, Y, RIGHT)
        pulled = restrict(xi, yoneda(C, xi(Y), RIGHT))
        F = A.field
        cols = {X: [xi.apply(X, Y, {j: F(1)}) for j in range(len(A.hom(X, Y)))] for X in A.objects}
        M = cone_module(ModuleMap(hY, pulled, cols))
        v = check_induced_image(M, B, window, step_bound)
        details[Y] = v.status
        if v.status == "no":
            return Verdict("refuted", ("cone module not induced from B", Y, v.witness), details)
        if v.status != "yes":
            pending.append(Y)
    if pending:
        return Verdict("inconclusive", ("induced-image check undecided", pending), details)
    return Verdict("verified-to-bounds", None, details)
