"""One-sided twisted complexes over a table category.

A summand ``(C, r)`` stands for C[r]. A morphism entry from C_j[r_j] to
C'_i[r'_i] of (shifted) degree l is an element ``a`` of Hom_A(C_j, C'_i) of
degree ``l + r'_i - r_j``. Writing such an entry as s^{r'_i} a s^{-r_j} with a
formal suspension s of degree -1 makes composition plain multiplication and
gives the entrywise differential (-1)^{r'_i} d_A(a). On top of that

    d f = d_naive f + q' f - (-1)^l f q.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from dgquot.category import DGCategory, DGFunctor, ValidationReport, Verdict
from dgquot.complexes import Complex, NotClosed, cohomology, solve_coboundary
from dgquot.ext import ExtTable
from dgquot.linalg import Field, Vec, axpy, scale

# a matrix element: {(i, j, basis index of Hom_A(C_j, C'_i)): coefficient}
MatVec = Dict[Tuple[int, int, int], object]


class BaseMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TwistedComplex:
    base: DGCategory
    summands: Tuple[Tuple[str, int], ...]
    q: Tuple[Tuple[Tuple[int, int], Tuple[Tuple[int, object], ...]], ...] = ()
    name: str = ""

    @classmethod
    def build(cls, base: DGCategory, summands: Sequence[Tuple[str, int]],
              q: Optional[Mapping[Tuple[int, int], Vec]] = None, name: str = "", check: bool = True):
        summands = tuple((X, int(r)) for X, r in summands)
        for X, _ in summands:
            if X not in base.objects:
                raise KeyError(f"{X} is not an object of the base")
        entries = []
        for (i, j), v in sorted((q or {}).items()):
            if i >= j:
                raise ValueError("q must be strictly upper triangular (q_ij = 0 for i >= j)")
            v = {k: c for k, c in v.items() if c}
            if v:
                entries.append(((i, j), tuple(sorted(v.items()))))
        tc = cls(base, summands, tuple(entries), name)
        if check:
            tc.check()
        return tc

    @classmethod
    def singleton(cls, base: DGCategory, X: str, r: int = 0) -> "TwistedComplex":
        return cls.build(base, [(X, r)], name=X if r == 0 else f"{X}[{r}]")

    @classmethod
    def zero(cls, base: DGCategory) -> "TwistedComplex":
        return cls.build(base, [], name="0")

    def __len__(self):
        return len(self.summands)

    def q_entry(self, i: int, j: int) -> Vec:
        for (a, b), v in self.q:
            if (a, b) == (i, j):
                return dict(v)
        return {}

    def q_matrix(self) -> MatVec:
        out: MatVec = {}
        for (i, j), v in self.q:
            for k, c in v:
                out[(i, j, k)] = c
        return out

    def q_degree_ok(self) -> bool:
        A = self.base
        for (i, j), v in self.q:
            (Ci, ri), (Cj, rj) = self.summands[i], self.summands[j]
            h = A.hom(Cj, Ci)
            if any(h.degrees[k] != 1 + ri - rj for k, _ in v):
                return False
        return True

    def maurer_cartan(self) -> MatVec:
        """dq + q^2, which must vanish."""
        F = self.base.field
        q = self.q_matrix()
        out = _d_naive(self, self, q)
        axpy(F, out, F(1), _mat_mul(self.base, self, self, self, q, q))
        return out

    def check(self):
        if not self.q_degree_ok():
            raise ValueError("q entries must have degree 1 after shifts")
        if self.maurer_cartan():
            raise ValueError("dq + q^2 != 0")

    def shifted(self, n: int) -> "TwistedComplex":
        return shift_tc(self, n)


def _d_naive(src: TwistedComplex, tgt: TwistedComplex, f: MatVec) -> MatVec:
    A = src.base
    F = A.field
    out: MatVec = {}
    for (i, j, k), c in f.items():
        Ci, ri = tgt.summands[i]
        Cj, _ = src.summands[j]
        dk = A.hom(Cj, Ci).d[k]
        s = F.sign(ri)
        for kk, v in dk.items():
            axpy(F, out, s * c * v, {(i, j, kk): 1})
    return out


def _mat_mul(A: DGCategory, s0: TwistedComplex, s1: TwistedComplex, s2: TwistedComplex,
             g: MatVec, f: MatVec) -> MatVec:
    """g o f for f: s0 -> s1, g: s1 -> s2 (plain matrix product)."""
    F = A.field
    out: MatVec = {}
    by_row: Dict[int, List] = {}
    for (k, j, b), c in f.items():
        by_row.setdefault(k, []).append((j, b, c))
    for (i, k, a), c1 in g.items():
        for j, b, c2 in by_row.get(k, ()):
            X, Y, Z = s0.summands[j][0], s1.summands[k][0], s2.summands[i][0]
            prod = A.basis_product(X, Y, Z, a, b)
            for kk, v in prod.items():
                axpy(F, out, c1 * c2 * v, {(i, j, kk): 1})
    return out


def shift_tc(C: TwistedComplex, n: int) -> TwistedComplex:
    """All shifts raised by n. The q entries keep their A-degrees; the sign
    (-1)^n on q keeps dq + q^2 = 0 with the shifted naive differential."""
    if n == 0:
        return C
    F = C.base.field
    s = F.sign(n)
    q = {ij: {k: F.norm(s * c) for k, c in v} for ij, v in C.q}
    nm = f"{C.name}[{n}]" if C.name else ""
    return TwistedComplex.build(C.base, [(X, r + n) for X, r in C.summands], q, nm)


class PretrHom:
    """The Hom complex between two twisted complexes, with its matrix basis."""

    def __init__(self, src: TwistedComplex, tgt: TwistedComplex):
        if src.base is not tgt.base:
            raise BaseMismatch("twisted complexes over different base categories")
        self.src, self.tgt = src, tgt
        A = src.base
        F = A.field
        keys, degrees = [], []
        for i, (Ci, ri) in enumerate(tgt.summands):
            for j, (Cj, rj) in enumerate(src.summands):
                h = A.hom(Cj, Ci)
                for k in range(len(h)):
                    keys.append((i, j, k))
                    degrees.append(h.degrees[k] - ri + rj)
        self.keys = keys
        self.pos = {k: n for n, k in enumerate(keys)}
        qs, qt = src.q_matrix(), tgt.q_matrix()
        d = []
        for key, l in zip(keys, degrees):
            f = {key: F(1)}
            df = _d_naive(src, tgt, f)
            axpy(F, df, F(1), _mat_mul(A, src, tgt, tgt, qt, f))
            axpy(F, df, F.neg(F.sign(l)), _mat_mul(A, src, src, tgt, f, qs))
            d.append({self.pos[k]: v for k, v in df.items()})
        labels = [(i, j, A.hom(src.summands[j][0], tgt.summands[i][0]).label(k)) for i, j, k in keys]
        self.complex = Complex.build(F, degrees, d, labels, check=False)

    def to_vec(self, m: MatVec) -> Vec:
        return {self.pos[k]: v for k, v in m.items()}

    def to_mat(self, v: Vec) -> MatVec:
        return {self.keys[n]: c for n, c in v.items()}


def pretr_hom(C: TwistedComplex, D: TwistedComplex) -> Complex:
    return PretrHom(C, D).complex


def compose(C0: TwistedComplex, C1: TwistedComplex, C2: TwistedComplex, g: MatVec, f: MatVec) -> MatVec:
    return _mat_mul(C0.base, C0, C1, C2, g, f)


def identity(C: TwistedComplex) -> MatVec:
    A = C.base
    out: MatVec = {}
    for i, (X, _) in enumerate(C.summands):
        for k, v in A.units[X].items():
            out[(i, i, k)] = v
    return out


def cone(f: MatVec, X: TwistedComplex, Y: TwistedComplex, name: str = "") -> TwistedComplex:
    """Cone(f) = (Y + X[1], q) for a closed degree-0 f: X -> Y."""
    H = PretrHom(X, Y)
    v = H.to_vec(f)
    if any(H.complex.degrees[n] != 0 for n in v):
        raise NotClosed("cone needs a degree 0 morphism")
    if H.complex.apply_d(v):
        raise NotClosed("cone needs a closed morphism")
    F = X.base.field
    m = len(Y)
    q: Dict[Tuple[int, int], Vec] = {}
    for (i, j), e in Y.q:
        q[(i, j)] = dict(e)
    # X[1]: summand shifts +1, q_X gets sign -1 (see shift_tc)
    for (i, j), e in X.q:
        q[(m + i, m + j)] = {k: F.neg(c) for k, c in e}
    for (i, j, k), c in f.items():
        q.setdefault((i, m + j), {})
        axpy(F, q[(i, m + j)], c, {k: 1})
    summ = list(Y.summands) + [(Z, r + 1) for Z, r in X.summands]
    return TwistedComplex.build(X.base, summ, q, name or f"Cone({X.name}->{Y.name})")


def cone_of_morphism(A: DGCategory, X: str, Y: str, f: Vec, name: str = "") -> TwistedComplex:
    """Cone of a closed degree-0 f in Hom_A(X, Y), between singletons."""
    sx, sy = TwistedComplex.singleton(A, X), TwistedComplex.singleton(A, Y)
    return cone({(0, 0, k): c for k, c in f.items()}, sx, sy, name)


def is_contractible(C: TwistedComplex):
    """(True, h) with d h = id_C, or (False, None)."""
    H = PretrHom(C, C)
    idv = H.to_vec(identity(C))
    if not idv:
        return True, {}
    h = solve_coboundary(H.complex, idv)
    return (h is not None), (H.to_mat(h) if h is not None else None)


def is_homotopy_equivalence(f: MatVec, X: TwistedComplex, Y: TwistedComplex):
    """f is a homotopy equivalence iff Cone(f) is contractible."""
    Z = cone(f, X, Y)
    ok, h = is_contractible(Z)
    return ok, (Z, h)


def ext_tr(X: TwistedComplex, Y: TwistedComplex, window: Tuple[int, int]) -> ExtTable:
    H = pretr_hom(X, Y)
    lo, hi = window
    dims = {n: cohomology(H, n).dimension for n in range(lo, hi + 1)}
    return ExtTable.exact(dims, window, provenance="pretr")


def pretr_table(base: DGCategory, objects: Mapping[str, TwistedComplex], name: str = "") -> DGCategory:
    """The full subcategory of A^pretr on the given twisted complexes, as a table category."""
    F = base.field
    names = list(objects)
    H = {(a, b): PretrHom(objects[a], objects[b]) for a in names for b in names}
    homs = {k: h.complex for k, h in H.items()}
    comp = {}
    for a, b, c in itertools.product(names, repeat=3):
        hf, hg, hgf = H[(a, b)], H[(b, c)], H[(a, c)]
        tab = {}
        for ig, kg in enumerate(hg.keys):
            for jf, kf in enumerate(hf.keys):
                if kg[1] != kf[0]:
                    continue
                prod = _mat_mul(base, objects[a], objects[b], objects[c], {kg: F(1)}, {kf: F(1)})
                if prod:
                    tab[(ig, jf)] = hgf.to_vec(prod)
        if tab:
            comp[(a, b, c)] = tab
    units = {a: H[(a, a)].to_vec(identity(objects[a])) for a in names}
    return DGCategory(F, names, homs, comp, units, name or "pretr")


def pretr_functor(Fn: DGFunctor, C: TwistedComplex, target_base: Optional[DGCategory] = None) -> TwistedComplex:
    """Apply a table functor entrywise to a twisted complex."""
    B = target_base or Fn.target
    q = {}
    for (i, j), v in C.q:
        Xi, Xj = C.summands[i][0], C.summands[j][0]
        q[(i, j)] = Fn.apply(Xj, Xi, dict(v))
    return TwistedComplex.build(B, [(Fn(X), r) for X, r in C.summands], q, C.name)


def pretr_functor_table(Fn: DGFunctor, objects: Mapping[str, TwistedComplex]):
    """F^pretr restricted to the given twisted complexes, as a functor of table categories."""
    src = pretr_table(Fn.source, objects)
    images = {n: pretr_functor(Fn, t) for n, t in objects.items()}
    tgt = pretr_table(Fn.target, images)
    morph = {}
    for a in objects:
        for b in objects:
            Hs = PretrHom(objects[a], objects[b])
            Ht = PretrHom(images[a], images[b])
            cols = []
            for (i, j, k) in Hs.keys:
                Xj, Xi = objects[a].summands[j][0], objects[b].summands[i][0]
                img = Fn.apply(Xj, Xi, {k: Fn.source.field(1)})
                cols.append(Ht.to_vec({(i, j, kk): c for kk, c in img.items()}))
            morph[(a, b)] = cols
    return DGFunctor(src, tgt, {n: n for n in objects}, morph, "F^pretr")


def mc_iff_d2_report(C: TwistedComplex, D: Optional[TwistedComplex] = None) -> Tuple[bool, bool]:
    """(Maurer-Cartan holds, d^2 == 0 on Hom(C, D) and End(C)); for property tests."""
    D = D or C
    mc = not C.maurer_cartan() and not D.maurer_cartan()
    ok = True
    for S, T in ((C, C), (C, D), (D, D)):
        H = PretrHom(S, T)
        if not H.complex.d_squared_zero():
            ok = False
    return mc, ok
