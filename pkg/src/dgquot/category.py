"""DG categories given by finite tables.

Each Hom complex has a named graded basis. Composition is stored as structure
constants ``comp[(X, Y, Z)][(i, j)]`` = the vector of ``g_i o f_j`` in
Hom(X, Z), for ``f_j`` in Hom(X, Y) and ``g_i`` in Hom(Y, Z). Zero products
are omitted. Sign conventions: d(g o f) = dg o f + (-1)^|g| g o df.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from dgquot.complexes import Complex, class_rank, cohomology, cohomology_dims, solve_coboundary
from dgquot.ext import ExtTable
from dgquot.linalg import Echelon, Field, Vec, axpy

Pair = Tuple[str, str]


class ValidationError(ValueError):
    def __init__(self, report):
        super().__init__("; ".join(report.failures[:5]))
        self.report = report


@dataclass
class ValidationReport:
    failures: List[str] = field(default_factory=list)
    checked: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, kind: str, witness: str):
        self.failures.append(f"{kind}: {witness}")

    def count(self, kind: str, n: int = 1):
        self.checked[kind] = self.checked.get(kind, 0) + n

    def __bool__(self):
        return self.ok


class DGCategory:
    """A DG category with finitely many objects and finite-dimensional Homs."""

    presentation = "table"

    def __init__(self, field: Field, objects: Sequence[str], homs: Mapping[Pair, Complex],
                 comp: Mapping[Tuple[str, str, str], Mapping[Tuple[int, int], Vec]],
                 units: Mapping[str, Vec], name: str = ""):
        self.field = field
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate object labels")
        self.homs: Dict[Pair, Complex] = {}
        for X in self.objects:
            for Y in self.objects:
                self.homs[(X, Y)] = homs.get((X, Y)) or Complex.zero(field)
        self.comp = {k: {ij: dict(v) for ij, v in tab.items() if v} for k, tab in comp.items()}
        self.units = {X: dict(units.get(X, {})) for X in self.objects}
        self.name = name

    def __repr__(self):
        dims = sum(len(h) for h in self.homs.values())
        return f"<DGCategory {self.name or ''} objects={list(self.objects)} total_dim={dims} over {self.field!r}>"

    def hom(self, X: str, Y: str) -> Complex:
        try:
            return self.homs[(X, Y)]
        except KeyError:
            raise KeyError(f"unknown object in pair ({X}, {Y})") from None

    def compose(self, X: str, Y: str, Z: str, g: Vec, f: Vec) -> Vec:
        """g o f for f in Hom(X, Y), g in Hom(Y, Z)."""
        F = self.field
        tab = self.comp.get((X, Y, Z))
        out: Vec = {}
        if not tab:
            return out
        for i, a in g.items():
            for j, b in f.items():
                v = tab.get((i, j))
                if v:
                    axpy(F, out, a * b, v)
        return out

    def basis_product(self, X, Y, Z, i, j) -> Vec:
        tab = self.comp.get((X, Y, Z))
        return dict(tab.get((i, j), {})) if tab else {}

    def degree(self, X: str, Y: str, i: int) -> int:
        return self.homs[(X, Y)].degrees[i]

    def label(self, X: str, Y: str, i: int):
        return self.homs[(X, Y)].label(i)

    def full_subcategory(self, objects: Iterable[str], name: str = "") -> "DGCategory":
        objs = [X for X in objects]
        for X in objs:
            if X not in self.objects:
                raise KeyError(f"{X} is not an object")
        homs = {(X, Y): self.homs[(X, Y)] for X in objs for Y in objs}
        comp = {k: v for k, v in self.comp.items() if all(o in objs for o in k)}
        return DGCategory(self.field, objs, homs, comp, {X: self.units[X] for X in objs}, name or self.name)

    def relabel(self, mapping: Mapping[str, str]) -> "DGCategory":
        m = lambda X: mapping.get(X, X)
        return DGCategory(self.field, [m(X) for X in self.objects],
                          {(m(X), m(Y)): h for (X, Y), h in self.homs.items()},
                          {(m(X), m(Y), m(Z)): t for (X, Y, Z), t in self.comp.items()},
                          {m(X): u for X, u in self.units.items()}, self.name)

    def structurally_equal(self, other: "DGCategory") -> bool:
        if self.field != other.field or self.objects != other.objects:
            return False
        for k, h in self.homs.items():
            g = other.homs[k]
            if h.degrees != g.degrees or h.d != g.d:
                return False
        strip = lambda c: {k: v for k, v in c.items() if v}
        if strip(self.comp) != strip(other.comp):
            return False
        return self.units == other.units


# ---------------------------------------------------------------- validation

def validate(C: DGCategory, max_triples: Optional[int] = None) -> ValidationReport:
    """Check d^2 = 0, unit axioms, the Leibniz rule and associativity on basis elements."""
    rep = ValidationReport()
    F = C.field
    obs = C.objects
    for (X, Y), h in C.homs.items():
        for j, col in enumerate(h.d):
            rep.count("d2")
            if h.apply_d(col):
                rep.fail("d2", f"d(d({h.label(j)})) != 0 in Hom({X},{Y})")
            for i in col:
                if h.degrees[i] != h.degrees[j] + 1:
                    rep.fail("degree", f"d({h.label(j)}) not of degree +1")
    for X in obs:
        u = C.units[X]
        h = C.hom(X, X)
        rep.count("unit")
        if not u and len(h) > 0:
            rep.fail("unit", f"missing unit for {X}")
        if any(h.degrees[i] != 0 for i in u):
            rep.fail("unit", f"unit of {X} not of degree 0")
        if h.apply_d(u):
            rep.fail("unit-closure", f"d(id_{X}) != 0")
        for Y in obs:
            hxy = C.hom(X, Y)
            for j in range(len(hxy)):
                e = {j: F(1)}
                if C.compose(X, Y, Y, C.units[Y], e) != e:
                    rep.fail("unit", f"id_{Y} o {hxy.label(j)} != {hxy.label(j)}")
                if C.compose(X, X, Y, e, u) != e:
                    rep.fail("unit", f"{hxy.label(j)} o id_{X} != {hxy.label(j)}")
    for X, Y, Z in itertools.product(obs, repeat=3):
        hf, hg, hgf = C.hom(X, Y), C.hom(Y, Z), C.hom(X, Z)
        for i in range(len(hg)):
            for j in range(len(hf)):
                rep.count("leibniz")
                prod = C.basis_product(X, Y, Z, i, j)
                if any(hgf.degrees[k] != hg.degrees[i] + hf.degrees[j] for k in prod):
                    rep.fail("degree", f"{hg.label(i)} o {hf.label(j)} has wrong degree")
                lhs = hgf.apply_d(prod)
                rhs = C.compose(X, Y, Z, hg.d[i], {j: F(1)})
                axpy(F, rhs, F.sign(hg.degrees[i]), C.compose(X, Y, Z, {i: F(1)}, hf.d[j]))
                axpy(F, lhs, F.neg(1), rhs)
                if lhs:
                    rep.fail("leibniz", f"d({hg.label(i)} o {hf.label(j)}) in Hom({X},{Z})")
    n = 0
    for W, X, Y, Z in itertools.product(obs, repeat=4):
        h1, h2, h3 = C.hom(W, X), C.hom(X, Y), C.hom(Y, Z)
        for a in range(len(h3)):
            for b in range(len(h2)):
                ab = C.basis_product(X, Y, Z, a, b)
                for c in range(len(h1)):
                    n += 1
                    if max_triples is not None and n > max_triples:
                        return rep
                    rep.count("assoc")
                    lhs = C.compose(W, X, Z, ab, {c: F(1)})
                    rhs = C.compose(W, Y, Z, {a: F(1)}, C.basis_product(W, X, Y, b, c))
                    if lhs != rhs:
                        rep.fail("assoc", f"({h3.label(a)} o {h2.label(b)}) o {h1.label(c)}")
    return rep


# ---------------------------------------------------------------- constructions

def one_object(F: Field, degrees: Sequence[int], labels: Sequence[str], d: Sequence[Vec],
               mult: Mapping[Tuple[int, int], Vec], unit: int = 0, obj: str = "*", name: str = "") -> DGCategory:
    """One-object category (a DG algebra); ``mult[(i, j)]`` = b_i * b_j."""
    h = Complex.build(F, degrees, d, labels)
    return DGCategory(F, [obj], {(obj, obj): h}, {(obj, obj, obj): dict(mult)}, {obj: {unit: F(1)}}, name)


def ground_category(F: Field, obj: str = "*") -> DGCategory:
    """One object with End = k."""
    return one_object(F, [0], ["id"], [{}], {(0, 0): {0: F(1)}}, obj=obj, name="k")


def discrete_category(F: Field, objects: Sequence[str]) -> DGCategory:
    homs = {(X, X): Complex.build(F, [0], [{}], [f"id_{X}"]) for X in objects}
    comp = {(X, X, X): {(0, 0): {0: F(1)}} for X in objects}
    return DGCategory(F, objects, homs, comp, {X: {0: F(1)} for X in objects}, "discrete")


def dual_numbers(F: Field, degree: int = 1, obj: str = "*") -> DGCategory:
    """End = k[x]/x^2 with x closed of the given degree."""
    return one_object(F, [0, degree], ["id", "x"], [{}, {}],
                      {(0, 0): {0: F(1)}, (0, 1): {1: F(1)}, (1, 0): {1: F(1)}}, obj=obj, name="k[x]/x^2")


def opposite(C: DGCategory) -> DGCategory:
    """Hom_op(X, Y) = Hom(Y, X); g o_op f = (-1)^{|f||g|} f o g."""
    F = C.field
    homs = {(X, Y): C.homs[(Y, X)] for X in C.objects for Y in C.objects}
    comp: Dict = {}
    for (X, Y, Z), tab in C.comp.items():
        # in C: g_i: Y->Z, f_j: X->Y. In C_op this is f_j: Z->Y ... composed as f o_op g: Z -> X
        new = {}
        for (i, j), v in tab.items():
            s = F.sign(C.degree(Y, Z, i) * C.degree(X, Y, j))
            new[(j, i)] = {k: F.norm(s * c) for k, c in v.items()}
        comp[(Z, Y, X)] = new
    name = C.name[:-3] if C.name.endswith("^op") else (C.name + "^op" if C.name else "")
    return DGCategory(F, C.objects, homs, comp, C.units, name)


def tensor_categories(A: DGCategory, B: DGCategory, sep: str = "|") -> DGCategory:
    """A (x) B with (f1 (x) g1)(f2 (x) g2) = (-1)^{|g1||f2|} f1 f2 (x) g1 g2."""
    if A.presentation != "table" or B.presentation != "table":
        raise TypeError("tensor product needs table-presented categories")
    A.field.check_same(B.field)
    F = A.field
    objs = [(a, b) for a in A.objects for b in B.objects]
    name = lambda ab: f"{ab[0]}{sep}{ab[1]}"
    homs = {}
    from dgquot.complexes import tensor as ctensor
    for (a, b) in objs:
        for (a2, b2) in objs:
            homs[(name((a, b)), name((a2, b2)))] = ctensor(A.hom(a, a2), B.hom(b, b2))
    comp = {}
    for (a1, b1), (a2, b2), (a3, b3) in itertools.product(objs, repeat=3):
        hf_A, hg_A = A.hom(a1, a2), A.hom(a2, a3)
        hf_B, hg_B = B.hom(b1, b2), B.hom(b2, b3)
        nB13 = len(B.hom(b1, b3))
        nfB, ngB = len(hf_B), len(hg_B)
        tabA, tabB = A.comp.get((a1, a2, a3), {}), B.comp.get((b1, b2, b3), {})
        tab = {}
        for (i1, i2), va in tabA.items():  # f1 = hg_A[i1], f2 = hf_A[i2]
            q = hf_A.degrees[i2]
            for (j1, j2), vb in tabB.items():  # g1 = hg_B[j1], g2 = hf_B[j2]
                p = hg_B.degrees[j1]
                s = F.sign(p * q)
                out: Vec = {}
                for ka, ca in va.items():
                    for kb, cb in vb.items():
                        axpy(F, out, s * ca * cb, {ka * nB13 + kb: 1})
                if out:
                    tab[(i1 * ngB + j1, i2 * nfB + j2)] = out
        if tab:
            comp[(name((a1, b1)), name((a2, b2)), name((a3, b3)))] = tab
    units = {}
    for (a, b) in objs:
        nb = len(B.hom(b, b))
        u: Vec = {}
        for i, x in A.units[a].items():
            for j, y in B.units[b].items():
                u[i * nb + j] = F.norm(x * y)
        units[name((a, b))] = u
    return DGCategory(F, [name(o) for o in objs], homs, comp, units, f"({A.name})x({B.name})")


# ---------------------------------------------------------------- Ext

def ext_table(C, X: str, Y: str, window: Tuple[int, int], **kw) -> ExtTable:
    """Per-degree cohomology of Hom(X, Y); free categories go through their weight filtration."""
    if getattr(C, "presentation", "table") != "table":
        return C.ext_table(X, Y, window, **kw)
    h = C.hom(X, Y)
    lo, hi = window
    dims, reps = {}, {}
    for n in range(lo, hi + 1):
        r = cohomology(h, n)
        dims[n] = r.dimension
        reps[n] = r.representatives
    return ExtTable.exact(dims, window, provenance="table", representatives=reps)


# ---------------------------------------------------------------- functors

class DGFunctor:
    """Functor between table categories: object map plus, for each pair,
    columns giving the image of each basis element."""

    def __init__(self, source: DGCategory, target: DGCategory, objmap: Mapping[str, str],
                 morph: Mapping[Pair, Sequence[Vec]], name: str = ""):
        self.source, self.target = source, target
        self.objmap = dict(objmap)
        self.morph = {k: [dict(c) for c in v] for k, v in morph.items()}
        self.name = name

    def __call__(self, X: str) -> str:
        return self.objmap[X]

    def apply(self, X: str, Y: str, v: Vec) -> Vec:
        F = self.target.field
        out: Vec = {}
        cols = self.morph.get((X, Y))
        for j, c in v.items():
            axpy(F, out, c, cols[j])
        return out

    @classmethod
    def identity(cls, C: DGCategory) -> "DGFunctor":
        F = C.field
        return cls(C, C, {X: X for X in C.objects},
                   {k: [{j: F(1)} for j in range(len(h))] for k, h in C.homs.items()}, "id")

    @classmethod
    def inclusion(cls, sub: DGCategory, C: DGCategory) -> "DGFunctor":
        F = C.field
        return cls(sub, C, {X: X for X in sub.objects},
                   {k: [{j: F(1)} for j in range(len(h))] for k, h in sub.homs.items()}, "incl")

    def compose(self, other: "DGFunctor") -> "DGFunctor":
        """self o other."""
        morph = {}
        for (X, Y), cols in other.morph.items():
            morph[(X, Y)] = [self.apply(other(X), other(Y), c) for c in cols]
        return DGFunctor(other.source, self.target, {X: self(other(X)) for X in other.source.objects}, morph)


def validate_functor(Fn: DGFunctor) -> ValidationReport:
    rep = ValidationReport()
    A, B = Fn.source, Fn.target
    F = A.field
    for X in A.objects:
        rep.count("unit")
        if Fn.apply(X, X, A.units[X]) != B.units[Fn(X)]:
            rep.fail("unit", f"F(id_{X}) != id")
    for (X, Y), h in A.homs.items():
        hb = B.hom(Fn(X), Fn(Y))
        for j in range(len(h)):
            rep.count("differential")
            img = Fn.apply(X, Y, {j: F(1)})
            if any(hb.degrees[k] != h.degrees[j] for k in img):
                rep.fail("degree", f"F({h.label(j)}) wrong degree")
            lhs = hb.apply_d(img)
            rhs = Fn.apply(X, Y, h.d[j])
            if lhs != rhs:
                rep.fail("differential", f"F(d {h.label(j)}) != d F({h.label(j)})")
    for X, Y, Z in itertools.product(A.objects, repeat=3):
        for (i, j), v in A.comp.get((X, Y, Z), {}).items():
            rep.count("composition")
            lhs = Fn.apply(X, Z, v)
            rhs = B.compose(Fn(X), Fn(Y), Fn(Z), Fn.apply(Y, Z, {i: F(1)}), Fn.apply(X, Y, {j: F(1)}))
            if lhs != rhs:
                rep.fail("composition", f"F({A.label(Y, Z, i)} o {A.label(X, Y, j)})")
        for i in range(len(A.hom(Y, Z))):
            for j in range(len(A.hom(X, Y))):
                if (i, j) not in A.comp.get((X, Y, Z), {}):
                    rhs = B.compose(Fn(X), Fn(Y), Fn(Z), Fn.apply(Y, Z, {i: F(1)}), Fn.apply(X, Y, {j: F(1)}))
                    if rhs:
                        rep.fail("composition", f"F of zero product {A.label(Y, Z, i)} o {A.label(X, Y, j)}")
    return rep


def induced_cone(Fn: DGFunctor, X: str, Y: str) -> Complex:
    """Cone of Hom_A(X, Y) -> Hom_B(FX, FY)."""
    from dgquot.complexes import ChainMap, cone_complex
    src = Fn.source.hom(X, Y)
    tgt = Fn.target.hom(Fn(X), Fn(Y))
    return cone_complex(ChainMap.build(src, tgt, Fn.morph[(X, Y)]))


def induced_iso_on_cohomology(Fn: DGFunctor, X: str, Y: str, n: int) -> bool:
    src = Fn.source.hom(X, Y)
    tgt = Fn.target.hom(Fn(X), Fn(Y))
    reps = cohomology(src, n).representatives
    dim_t = cohomology(tgt, n).dimension
    if len(reps) != dim_t:
        return False
    return class_rank(tgt, n, [Fn.apply(X, Y, r) for r in reps]) == dim_t


def is_contractible_object(C: DGCategory, X: str) -> Optional[Vec]:
    """Witness h with d h = id_X, or None."""
    u = C.units[X]
    if not u:
        return {}
    return solve_coboundary(C.hom(X, X), u)


def _h0_inverse(C: DGCategory, X: str, Y: str, phi: Vec) -> Optional[Vec]:
    """A closed degree-0 psi: Y -> X with psi phi ~ id_X and phi psi ~ id_Y, if any."""
    F = C.field
    hyx = C.hom(Y, X)
    Z = [z for z in _cocycle_basis(hyx, 0)]
    if not Z:
        return None
    hxx, hyy = C.hom(X, X), C.hom(Y, Y)
    nX = len(hxx)
    # unknown coefficients c_t on Z: need sum c_t (z_t phi, phi z_t) == (id_X, id_Y) mod coboundaries
    cols = []
    for z in Z:
        a = C.compose(X, Y, X, z, phi)
        b = C.compose(Y, X, Y, phi, z)
        v = {("X", k): c for k, c in a.items()}
        v.update({("Y", k): c for k, c in b.items()})
        cols.append(v)
    E = Echelon(F, track=True)
    for j in hxx.basis_in_degree(-1):
        E.add({("X", k): c for k, c in hxx.d[j].items()}, tag=("bx", j))
    for j in hyy.basis_in_degree(-1):
        E.add({("Y", k): c for k, c in hyy.d[j].items()}, tag=("by", j))
    for t, v in enumerate(cols):
        E.add(v, tag=("z", t))
    target = {("X", k): c for k, c in C.units[X].items()}
    target.update({("Y", k): c for k, c in C.units[Y].items()})
    sol = E.solve(target)
    if sol is None:
        return None
    psi: Vec = {}
    for tag, c in sol.items():
        if tag[0] == "z":
            axpy(F, psi, c, Z[tag[1]])
    return psi


def _cocycle_basis(h: Complex, n: int):
    from dgquot.complexes import cocycles
    return cocycles(h, n)


def homotopy_equivalent_objects(C: DGCategory, X: str, Y: str, max_candidates: int = 64):
    """Search closed degree-0 maps X -> Y invertible in H^0; returns (phi, psi) or None.

    Candidates are H^0 representatives and their pairwise sums; the search is
    capped, so None means 'none found', not 'none exists'."""
    F = C.field
    reps = cohomology(C.hom(X, Y), 0).representatives
    cands = list(reps)
    for a, b in itertools.combinations(reps, 2):
        v = dict(a)
        axpy(F, v, F(1), b)
        cands.append(v)
    for phi in cands[:max_candidates]:
        psi = _h0_inverse(C, X, Y, phi)
        if psi is not None:
            return phi, psi
    return None


@dataclass
class Verdict:
    status: str  # "yes" | "no" | "inconclusive" | "verified-to-bounds" | "refuted"
    witness: object = None
    details: Dict = field(default_factory=dict)

    def __bool__(self):
        return self.status in ("yes", "verified-to-bounds")


def check_quasi_equivalence(Fn: DGFunctor, window: Tuple[int, int]) -> Verdict:
    """Full faithfulness on cohomology in the window plus essential surjectivity on H^0."""
    A, B = Fn.source, Fn.target
    lo, hi = window
    for X in A.objects:
        for Y in A.objects:
            for n in range(lo, hi + 1):
                if not induced_iso_on_cohomology(Fn, X, Y, n):
                    return Verdict("no", ("not fully faithful", X, Y, n))
    image = set(Fn.objmap.values())
    undecided = []
    for Z in B.objects:
        if Z in image:
            continue
        if any(homotopy_equivalent_objects(B, Fn(X), Z) for X in A.objects):
            continue
        undecided.append(Z)
    if undecided:
        return Verdict("inconclusive", ("no homotopy equivalence found", undecided))
    return Verdict("yes")
