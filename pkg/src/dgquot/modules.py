"""DG modules over table categories.

Right modules carry ``m . a`` for m in M(Y), a in Hom(X, Y), landing in M(X),
with d(m.a) = dm.a + (-1)^|m| m.da. Left modules carry ``a . m`` in M(Y) for
m in M(X), with d(a.m) = da.m + (-1)^|a| a.dm. Action tables store basis
products only; zero products are omitted.

Semi-free modules are stored by generators: ``e_g`` sits over an object U_g
in some degree, and d(e_g) is a combination of ``e_h . a``. Their values are
P(Z) = sum_g e_g . Hom(Z, U_g).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from dgquot.category import DGCategory, DGFunctor, Verdict
from dgquot.complexes import (ChainMap, Complex, cohomology, cone_complex, is_acyclic,
                              subcomplex_quotient)
from dgquot.linalg import Echelon, Field, Vec, axpy, kernel, scale

RIGHT, LEFT = "right", "left"


class VarianceMismatch(ValueError):
    pass


class DGModule:
    def __init__(self, base: DGCategory, variance: str, values: Mapping[str, Complex],
                 act: Mapping[Tuple[str, str], Mapping[Tuple[int, int], Vec]], name: str = ""):
        if variance not in (RIGHT, LEFT):
            raise ValueError("variance is 'right' or 'left'")
        self.base = base
        self.variance = variance
        self.values = {X: values.get(X) or Complex.zero(base.field) for X in base.objects}
        self.act = {k: {ij: dict(v) for ij, v in t.items() if v} for k, t in act.items()}
        self.name = name

    @property
    def field(self) -> Field:
        return self.base.field

    def __repr__(self):
        return f"<DGModule {self.name} {self.variance} dims={ {X: len(c) for X, c in self.values.items()} }>"

    def __call__(self, X: str) -> Complex:
        return self.values[X]

    def action(self, X: str, Y: str, first: Vec, second: Vec) -> Vec:
        """right: first = m in M(Y), second = a in Hom(X, Y); left: first = a in Hom(X, Y), second = m in M(X)."""
        F = self.field
        tab = self.act.get((X, Y))
        out: Vec = {}
        if not tab:
            return out
        for i, x in first.items():
            for j, y in second.items():
                v = tab.get((i, j))
                if v:
                    axpy(F, out, x * y, v)
        return out

    def total_dim(self) -> int:
        return sum(len(c) for c in self.values.values())

    def validate(self) -> "ValidationReport":
        from dgquot.category import ValidationReport
        rep = ValidationReport()
        A, F = self.base, self.field
        for X, c in self.values.items():
            rep.count("d2")
            if not c.d_squared_zero():
                rep.fail("d2", f"M({X})")
        right = self.variance == RIGHT
        for X in A.objects:
            u = A.units[X]
            for i in range(len(self(X))):
                rep.count("unit")
                e = {i: F(1)}
                got = self.action(X, X, e, u) if right else self.action(X, X, u, e)
                if got != e:
                    rep.fail("unit", f"id_{X} does not act trivially on {self(X).label(i)}")
        for X, Y in itertools.product(A.objects, repeat=2):
            h, MX, MY = A.hom(X, Y), self(X), self(Y)
            src = MY if right else MX
            for a in range(len(h)):
                for m in range(len(src)):
                    rep.count("leibniz")
                    ea, em = {a: F(1)}, {m: F(1)}
                    if right:
                        lhs = MX.apply_d(self.action(X, Y, em, ea))
                        rhs = self.action(X, Y, src.d[m], ea)
                        axpy(F, rhs, F.sign(src.degrees[m]), self.action(X, Y, em, h.d[a]))
                    else:
                        lhs = MY.apply_d(self.action(X, Y, ea, em))
                        rhs = self.action(X, Y, h.d[a], em)
                        axpy(F, rhs, F.sign(h.degrees[a]), self.action(X, Y, ea, src.d[m]))
                    if lhs != rhs:
                        rep.fail("leibniz", f"{h.label(a)} on {src.label(m)}")
        for X, Y, Z in itertools.product(A.objects, repeat=3):
            hf, hg = A.hom(X, Y), A.hom(Y, Z)
            for f in range(len(hf)):
                for g in range(len(hg)):
                    ef, eg = {f: F(1)}, {g: F(1)}
                    gf = A.compose(X, Y, Z, eg, ef)
                    if right:
                        for m in range(len(self(Z))):
                            rep.count("associativity")
                            em = {m: F(1)}
                            lhs = self.action(X, Y, self.action(Y, Z, em, eg), ef)
                            rhs = self.action(X, Z, em, gf)
                            if lhs != rhs:
                                rep.fail("associativity", f"(m g) f on {self(Z).label(m)}")
                    else:
                        for m in range(len(self(X))):
                            rep.count("associativity")
                            em = {m: F(1)}
                            lhs = self.action(Y, Z, eg, self.action(X, Y, ef, em))
                            rhs = self.action(X, Z, gf, em)
                            if lhs != rhs:
                                rep.fail("associativity", f"g (f m) on {self(X).label(m)}")
        return rep


# ---------------------------------------------------------------- basic modules

def yoneda(C: DGCategory, Y: str, variance: str = RIGHT) -> DGModule:
    """h_Y = Hom(-, Y) (right) or h~_Y = Hom(Y, -) (left), acting by composition."""
    if Y not in C.objects:
        raise KeyError(f"unknown object {Y}")
    if variance == RIGHT:
        values = {Z: C.hom(Z, Y) for Z in C.objects}
        act = {(X, Z): C.comp.get((X, Z, Y), {}) for X in C.objects for Z in C.objects}
        return DGModule(C, RIGHT, values, act, f"h_{Y}")
    values = {Z: C.hom(Y, Z) for Z in C.objects}
    act = {(X, Z): C.comp.get((Y, X, Z), {}) for X in C.objects for Z in C.objects}
    return DGModule(C, LEFT, values, act, f"h~_{Y}")


def zero_module(C: DGCategory, variance: str = RIGHT) -> DGModule:
    return DGModule(C, variance, {}, {}, "0")


def restrict(Fn: DGFunctor, M: DGModule) -> DGModule:
    """M o F: values M(F X), acting through F."""
    A = Fn.source
    F = A.field
    values = {X: M(Fn(X)) for X in A.objects}
    act = {}
    for X, Y in itertools.product(A.objects, repeat=2):
        tab = {}
        h = A.hom(X, Y)
        src = values[Y] if M.variance == RIGHT else values[X]
        for a in range(len(h)):
            img = Fn.apply(X, Y, {a: F(1)})
            if not img:
                continue
            for m in range(len(src)):
                em = {m: F(1)}
                v = M.action(Fn(X), Fn(Y), em, img) if M.variance == RIGHT else M.action(Fn(X), Fn(Y), img, em)
                if v:
                    tab[(m, a) if M.variance == RIGHT else (a, m)] = v
        act[(X, Y)] = tab
    return DGModule(A, M.variance, values, act, f"Res({M.name})")


def restrict_to(M: DGModule, objects: Sequence[str]) -> DGModule:
    sub = M.base.full_subcategory(objects)
    return restrict(DGFunctor.inclusion(sub, M.base), M)


# ---------------------------------------------------------------- tensor product

@dataclass
class TensorProduct:
    """Cokernel of the coend relations; ``project`` sends g (x) f to the quotient."""
    complex: Complex
    big: Complex
    offsets: Dict[str, int]
    widths: Dict[str, int]
    echelon: Echelon
    keep: List[int]
    origin: List[Tuple[str, int, int]]

    def project(self, X: str, g: int, f: int) -> Vec:
        i = self.offsets[X] + g * self.widths[X] + f
        pos = {k: n for n, k in enumerate(self.keep)}
        r, _ = self.echelon.reduce({i: self.big.field(1)})
        return {pos[k]: v for k, v in r.items()}


def module_tensor_full(G: DGModule, Fm: DGModule) -> TensorProduct:
    """G (x)_A F for G right and F left: sum_X G(X) (x) F(X) modulo (u.a) (x) v - u (x) (a.v)."""
    if G.variance != RIGHT or Fm.variance != LEFT:
        raise VarianceMismatch("module_tensor needs a right module and a left module")
    A = G.base
    A.field.check_same(Fm.base.field)
    F = A.field
    degrees, d, labels, origin = [], [], [], []
    offsets, widths = {}, {}
    for X in A.objects:
        GX, FX = G(X), Fm(X)
        off = len(degrees)
        offsets[X], widths[X] = off, len(FX)
        for i, a in enumerate(GX.degrees):
            s = F.sign(a)
            for j, b in enumerate(FX.degrees):
                degrees.append(a + b)
                labels.append((X, GX.label(i), FX.label(j)))
                origin.append((X, i, j))
                col: Vec = {}
                for ii, v in GX.d[i].items():
                    col[off + ii * len(FX) + j] = v
                for jj, v in FX.d[j].items():
                    axpy(F, col, s * v, {off + i * len(FX) + jj: 1})
                d.append(col)
    big = Complex.build(F, degrees, d, labels, check=False)
    rels = []
    for X, Y in itertools.product(A.objects, repeat=2):
        h = A.hom(X, Y)
        for u in range(len(G(Y))):
            for a in range(len(h)):
                ua = G.action(X, Y, {u: F(1)}, {a: F(1)})
                for v in range(len(Fm(X))):
                    av = Fm.action(X, Y, {a: F(1)}, {v: F(1)})
                    rel: Vec = {}
                    for k, c in ua.items():
                        axpy(F, rel, c, {offsets[X] + k * widths[X] + v: 1})
                    for k, c in av.items():
                        axpy(F, rel, F.neg(c), {offsets[Y] + u * widths[Y] + k: 1})
                    if rel:
                        rels.append(rel)
    q, keep, E = subcomplex_quotient(big, rels)
    return TensorProduct(q, big, offsets, widths, E, keep, origin)


def module_tensor(G: DGModule, Fm: DGModule) -> Complex:
    return module_tensor_full(G, Fm).complex


# ---------------------------------------------------------------- maps and cones

@dataclass
class ModuleMap:
    source: DGModule
    target: DGModule
    columns: Dict[str, List[Vec]]
    images: Optional[Dict[Hashable, Vec]] = None  # generator images when the source is semi-free

    def component(self, X: str) -> ChainMap:
        return ChainMap.build(self.source(X), self.target(X), self.columns[X])

    def apply(self, X: str, v: Vec) -> Vec:
        F = self.source.field
        out: Vec = {}
        for j, c in v.items():
            axpy(F, out, c, self.columns[X][j])
        return out

    def validate(self) -> List[str]:
        """Failures of closedness and of compatibility with the action."""
        M, N, A = self.source, self.target, self.source.base
        F = A.field
        bad = []
        for X in A.objects:
            if not self.component(X).is_closed():
                bad.append(f"not closed at {X}")
        for X, Y in itertools.product(A.objects, repeat=2):
            h = A.hom(X, Y)
            src = M(Y) if M.variance == RIGHT else M(X)
            for a in range(len(h)):
                ea = {a: F(1)}
                for m in range(len(src)):
                    em = {m: F(1)}
                    if M.variance == RIGHT:
                        lhs = self.apply(X, M.action(X, Y, em, ea))
                        rhs = N.action(X, Y, self.apply(Y, em), ea)
                    else:
                        lhs = self.apply(Y, M.action(X, Y, ea, em))
                        rhs = N.action(X, Y, ea, self.apply(X, em))
                    if lhs != rhs:
                        bad.append(f"action at {h.label(a)}")
        return bad


def identity_map(M: DGModule) -> ModuleMap:
    F = M.field
    return ModuleMap(M, M, {X: [{i: F(1)} for i in range(len(M(X)))] for X in M.base.objects})


def cone_module(phi: ModuleMap) -> DGModule:
    """Cone(phi) = target + source[1] objectwise; for right modules the action needs no sign."""
    M, N = phi.source, phi.target
    if M.variance != RIGHT:
        raise VarianceMismatch("cones are implemented for right modules")
    A = M.base
    values = {X: cone_complex(phi.component(X)) for X in A.objects}
    act = {}
    for X, Y in itertools.product(A.objects, repeat=2):
        tab = {}
        nY, nX = len(N(Y)), len(N(X))
        for (m, a), v in N.act.get((X, Y), {}).items():
            tab[(m, a)] = dict(v)
        for (m, a), v in M.act.get((X, Y), {}).items():
            tab[(m + nY, a)] = {k + nX: c for k, c in v.items()}
        act[(X, Y)] = tab
    return DGModule(A, RIGHT, values, act, f"Cone({M.name}->{N.name})")


def is_quasi_isomorphism(phi: ModuleMap, window: Tuple[int, int]) -> Verdict:
    """Objectwise cone acyclicity in the window."""
    lo, hi = window
    for X in phi.source.base.objects:
        c = cone_complex(phi.component(X))
        for n in range(lo - 1, hi + 1):
            if cohomology(c, n).dimension:
                return Verdict("no", (X, n + 1 if n < lo else n))
    return Verdict("yes")


# ---------------------------------------------------------------- module Hom complexes

def module_hom(M: DGModule, N: DGModule, window: Tuple[int, int]) -> Complex:
    """Hom_A(M, N) in degrees window, as families phi_Z: M(Z) -> N(Z) commuting with the action.

    Right modules: phi(m a) = phi(m) a. Left modules: phi(a m) = (-1)^{|phi||a|} a phi(m).
    d(phi) = d phi - (-1)^|phi| phi d. Basis vectors are kernel vectors over the
    unknowns (Z, k, i) meaning e_i -> e_k.
    """
    if M.variance != N.variance:
        raise VarianceMismatch("module Hom needs equal variances")
    A = M.base
    F = A.field
    lo, hi = window
    right = M.variance == RIGHT
    pieces: Dict[int, List[Vec]] = {}
    for n in range(lo - 1, hi + 2):
        unknowns = [(Z, k, i) for Z in A.objects for i, a in enumerate(M(Z).degrees)
                    for k, b in enumerate(N(Z).degrees) if b - a == n]
        cols = [_hom_constraint(M, N, u, n, right) for u in unknowns]
        pieces[n] = [{unknowns[t]: c for t, c in z.items()} for z in kernel(F, cols)]
    degrees, d, labels = [], [], []
    order: List[Tuple[int, int]] = []
    for n in range(lo - 1, hi + 2):
        for t, _ in enumerate(pieces[n]):
            order.append((n, t))
    pos = {nt: i for i, nt in enumerate(order)}
    ech = {}
    for n in range(lo, hi + 2):
        E = Echelon(F, track=True)
        for t, z in enumerate(pieces[n]):
            E.add(z, tag=t)
        ech[n] = E
    for (n, t) in order:
        degrees.append(n)
        labels.append(("phi", n, t))
        if n > hi:
            d.append({})
            continue
        dz = _hom_d(M, N, pieces[n][t], n)
        sol = ech[n + 1].solve(dz)
        if sol is None:
            raise ArithmeticError("module Hom differential left the kernel")
        d.append({pos[(n + 1, s)]: c for s, c in sol.items()})
    return Complex.build(F, degrees, d, labels, window)


def _hom_d(M: DGModule, N: DGModule, phi: Vec, n: int) -> Vec:
    F = M.field
    out: Vec = {}
    s = F.neg(F.sign(n))
    for (Z, k, i), c in phi.items():
        for kk, v in N(Z).d[k].items():
            axpy(F, out, c * v, {(Z, kk, i): 1})
    # phi o d: for each j with i in d(e_j)
    for (Z, k, i), c in phi.items():
        for j, col in enumerate(M(Z).d):
            v = col.get(i)
            if v:
                axpy(F, out, s * c * v, {(Z, k, j): 1})
    return out


def _hom_constraint(M, N, u, n, right) -> Vec:
    """Image of the unknown u = (Z, k, i) under phi -> (phi(x.a) - phi(x).a) or its left analogue."""
    Z, k, i = u
    A = M.base
    F = M.field
    out: Vec = {}
    for X, Y in itertools.product(A.objects, repeat=2):
        h = A.hom(X, Y)
        if right:
            # constraint labelled (X, Y, m in M(Y), a, slot in N(X))
            if X == Z:
                for (m, a), v in M.act.get((X, Y), {}).items():
                    c = v.get(i)
                    if c:
                        axpy(F, out, c, {(X, Y, m, a, k): 1})
            if Y == Z:
                for a in range(len(h)):
                    for kk, c in N.action(X, Y, {k: F(1)}, {a: F(1)}).items():
                        axpy(F, out, F.neg(c), {(X, Y, i, a, kk): 1})
        else:
            # phi_Y(a.m) - (-1)^{n|a|} a.phi_X(m) for m in M(X), slot in N(Y)
            if Y == Z:
                for (a, m), v in M.act.get((X, Y), {}).items():
                    c = v.get(i)
                    if c:
                        axpy(F, out, c, {(X, Y, a, m, k): 1})
            if X == Z:
                for a in range(len(h)):
                    s = F.sign(n * h.degrees[a])
                    for kk, c in N.action(X, Y, {a: F(1)}, {k: F(1)}).items():
                        axpy(F, out, F.neg(s * c), {(X, Y, a, i, kk): 1})
    return out


# ---------------------------------------------------------------- induction

def induce(Fn: DGFunctor, M: DGModule) -> DGModule:
    """Ind_F M for a right A-module M: (Ind M)(Z) = M (x)_A Hom_C(Z, F-)."""
    if M.variance != RIGHT:
        raise VarianceMismatch("induce is implemented for right modules")
    A, C = Fn.source, Fn.target
    F = A.field
    tens = {}
    for Z in C.objects:
        L = _probe(Fn, Z)
        tens[Z] = module_tensor_full(M, L)
    values = {Z: tens[Z].complex for Z in C.objects}
    act = {}
    for X, Y in itertools.product(C.objects, repeat=2):
        # (m (x) l) . c = m (x) (l o c) for c: X -> Y, l: Y -> F W
        tab = {}
        tY, tX = tens[Y], tens[X]
        h = C.hom(X, Y)
        for b, big_idx in enumerate(tY.keep):
            W, m, l = tY.origin[big_idx]
            for c in range(len(h)):
                lc = C.compose(X, Y, Fn(W), {l: F(1)}, {c: F(1)})
                out: Vec = {}
                for l2, v in lc.items():
                    axpy(F, out, v, tX.project(W, m, l2))
                if out:
                    tab[(b, c)] = out
        act[(X, Y)] = tab
    return DGModule(C, RIGHT, values, act, f"Ind({M.name})")


def _probe(Fn: DGFunctor, Z: str) -> DGModule:
    """The left A-module W -> Hom_C(Z, F W)."""
    A, C = Fn.source, Fn.target
    F = A.field
    values = {W: C.hom(Z, Fn(W)) for W in A.objects}
    act = {}
    for X, Y in itertools.product(A.objects, repeat=2):
        tab = {}
        for a in range(len(A.hom(X, Y))):
            img = Fn.apply(X, Y, {a: F(1)})
            if not img:
                continue
            for l in range(len(values[X])):
                v = C.compose(Z, Fn(X), Fn(Y), img, {l: F(1)})
                if v:
                    tab[(a, l)] = v
        act[(X, Y)] = tab
    return DGModule(A, LEFT, values, act)


# ---------------------------------------------------------------- semi-free modules

@dataclass(frozen=True)
class FreeGenerator:
    name: Hashable
    obj: str
    degree: int
    d: Tuple[Tuple[Tuple[Hashable, int], object], ...] = ()  # ((generator, basis index of Hom(obj, U_h)), coeff)
    stage: int = 1


@dataclass
class SemiFreeCertificate:
    stages: List[List[Hashable]]

    def validate(self, P: "SemiFreeModule") -> List[str]:
        """Stage 0 is empty and each d(e_g) only involves generators of earlier stages."""
        bad = []
        stage_of = {}
        for s, names in enumerate(self.stages):
            if s == 0 and names:
                bad.append("stage 0 must be empty")
            for n in names:
                stage_of[n] = s
        for g in P.generators:
            if g.name not in stage_of:
                bad.append(f"{g.name} has no stage")
                continue
            for (h, _), _c in g.d:
                if stage_of.get(h, 10 ** 9) >= stage_of[g.name]:
                    bad.append(f"d({g.name}) uses {h} of a later or equal stage")
        return bad


class SemiFreeModule:
    """Right module sum_g e_g . h_{U_g}[-deg g] with differential given on generators."""

    def __init__(self, base: DGCategory, generators: Sequence[FreeGenerator], name: str = ""):
        self.base = base
        self.generators = list(generators)
        self.index = {g.name: t for t, g in enumerate(self.generators)}
        self.name = name

    @property
    def field(self):
        return self.base.field

    def certificate(self) -> SemiFreeCertificate:
        top = max([g.stage for g in self.generators], default=0)
        stages: List[List[Hashable]] = [[] for _ in range(top + 1)]
        for g in self.generators:
            stages[g.stage].append(g.name)
        return SemiFreeCertificate(stages)

    def basis(self, Z: str, C: Optional[DGCategory] = None, deg_range=None) -> List[Tuple[Hashable, int]]:
        C = C or self.base
        out = []
        for g in self.generators:
            h = C.hom(Z, g.obj)
            for a, da in enumerate(h.degrees):
                if deg_range is None or deg_range[0] <= g.degree + da <= deg_range[1]:
                    out.append((g.name, a))
        return out

    def evaluate(self, Z: str, C: Optional[DGCategory] = None, deg_range=None, top=None) -> Complex:
        """P(Z) (over C when C contains the base as a full subcategory, giving LInd P at Z).

        With ``deg_range`` the complex is cut to those degrees; the differential
        of elements at the top degree (or above ``top``) is dropped.
        """
        C = C or self.base
        F = self.field
        basis = self.basis(Z, C, deg_range)
        pos = {b: i for i, b in enumerate(basis)}
        degrees, d = [], []
        for (gname, a) in basis:
            g = self.generators[self.index[gname]]
            h = C.hom(Z, g.obj)
            deg = g.degree + h.degrees[a]
            degrees.append(deg)
            if deg_range is not None and deg >= (top if top is not None else deg_range[1]):
                d.append({})
                continue
            col: Vec = {}
            for (hname, b), c in g.d:
                U = self.generators[self.index[hname]].obj
                ba = C.compose(Z, g.obj, U, {b: F(1)}, {a: F(1)})
                for k, v in ba.items():
                    axpy(F, col, c * v, {pos[(hname, k)]: 1})
            s = F.sign(g.degree)
            for k, v in h.d[a].items():
                axpy(F, col, s * v, {pos[(gname, k)]: 1})
            d.append(col)
        return Complex.build(F, degrees, d, basis, check=False)

    def module(self, C: Optional[DGCategory] = None) -> DGModule:
        C = C or self.base
        F = self.field
        values = {Z: self.evaluate(Z, C) for Z in C.objects}
        act = {}
        for X, Y in itertools.product(C.objects, repeat=2):
            tab = {}
            posX = values[X].index
            h = C.hom(X, Y)
            for t, (gname, a) in enumerate(values[Y].labels or ()):
                U = self.generators[self.index[gname]].obj
                for c in range(len(h)):
                    ac = C.compose(X, Y, U, {a: F(1)}, {c: F(1)})
                    if ac:
                        tab[(t, c)] = {posX[(gname, k)]: v for k, v in ac.items()}
            act[(X, Y)] = tab
        return DGModule(C, RIGHT, values, act, self.name)

    def map_to(self, M: DGModule, images: Mapping[Hashable, Vec], C: Optional[DGCategory] = None) -> ModuleMap:
        """The module map determined by e_g -> images[g] in M(U_g)."""
        P = self.module(C)
        F = self.field
        cols = {}
        for Z in P.base.objects:
            cz = []
            for (gname, a) in P(Z).labels or ():
                U = self.generators[self.index[gname]].obj
                cz.append(M.action(Z, U, images.get(gname, {}), {a: F(1)}))
            cols[Z] = cz
        return ModuleMap(P, M, cols, {k: dict(v) for k, v in images.items()})


# ---------------------------------------------------------------- resolutions

@dataclass
class ResolutionReport:
    steps: int
    generators_per_step: List[int]
    cells: Dict[Tuple[str, int], bool] = field(default_factory=dict)
    exhausted: bool = False
    certificate_ok: bool = True
    notes: List[str] = field(default_factory=list)

    def certified(self, Z: str, n: int) -> bool:
        return self.cells.get((Z, n), False)


def semi_free_resolve(M: DGModule, step_bound: int, window: Tuple[int, int]):
    """Adjoin free generators until P -> M is a quasi-isomorphism in the window.

    Each step reads off H^k of Cone(P(Z) -> M(Z)) for every object Z and
    every k in [lo-1, hi] and adjoins one generator for a class of lowest
    degree: a class (m, p) with p in P^{k+1} and m in M^k gives e over Z of
    degree k with d e = p and e -> -m. Among the first classes of the
    objects in that degree, the one leaving the least cone cohomology wins
    (ties by object order). Adding one generator at a time avoids
    generators that products of earlier ones already account for. Returns (P, phi, certificate, report).
    """
    if M.variance != RIGHT:
        raise VarianceMismatch("resolve right modules (use the opposite category for left ones)")
    A = M.base
    F = A.field
    lo, hi = window
    gens: List[FreeGenerator] = []
    images: Dict[Hashable, Vec] = {}
    P = SemiFreeModule(A, gens, "P")
    phi = P.map_to(M, images)
    steps = 0

    def defect(phi_):
        return sum(cohomology(cone_complex(phi_.component(Z)), n).dimension
                   for Z in A.objects for n in range(lo - 1, hi + 1))

    for step in range(1, step_bound + 1):
        found = []
        for k in range(lo - 1, hi + 1):
            for Z in A.objects:
                c = cone_complex(phi.component(Z))
                reps = cohomology(c, k).representatives
                if reps:
                    found.append((k, Z, reps[0], len(M(Z))))
            if found:
                break
        if not found:
            break
        best = None
        for k, Z, rep, nM in found:
            p = tuple(sorted((P_label(phi, Z, i - nM), v) for i, v in rep.items() if i >= nM))
            g = FreeGenerator(f"g{len(gens)}", Z, k, p, step)
            img = {i: F.neg(v) for i, v in rep.items() if i < nM}
            P_try = SemiFreeModule(A, gens + [g], "P")
            phi_try = P_try.map_to(M, {**images, g.name: img})
            score = defect(phi_try) if len(found) > 1 else 0
            if best is None or score < best[0]:
                best = (score, g, img, P_try, phi_try)
        _, g, img, P, phi = best
        gens.append(g)
        images[g.name] = img
        steps = step
    report = _cell_report(phi, window)
    report.steps = steps
    report.generators_per_step = [1] * steps
    report.exhausted = steps >= step_bound and not all(report.cells.values())
    cert = P.certificate()
    report.certificate_ok = not cert.validate(P)
    return P, phi, cert, report


def P_label(phi: ModuleMap, Z: str, i: int):
    return phi.source(Z).label(i)


def _cell_report(phi: ModuleMap, window) -> ResolutionReport:
    lo, hi = window
    rep = ResolutionReport(0, [])
    for Z in phi.source.base.objects:
        c = cone_complex(phi.component(Z))
        zero = {n: cohomology(c, n).dimension == 0 for n in range(lo - 1, hi + 1)}
        for n in range(lo, hi + 1):
            rep.cells[(Z, n)] = zero[n - 1] and zero[n]
    return rep


def bar_generators(M: DGModule, length_bound: int, deg_range: Optional[Tuple[int, int]] = None,
                   amin: int = 0, amax: int = 0) -> List[FreeGenerator]:
    """Generators (m, b_k, ..., b_1) of the bar resolution of a right module M.

    The generator sits over the source U_0 of b_1 (over the object of m when
    k = 0) in degree |m| + sum|b| - k. Its differential is minus the Leibniz
    expansion of the word m eps b_k eps ... eps b_1 eps, where d eps = 1 merges
    neighbours, without the final merge into M (that is the augmentation).
    With ``deg_range`` only generators whose degree can reach it after acting
    by elements of degree in [amin, amax] are kept.
    """
    B = M.base
    F = B.field
    objs = B.objects
    gens: Dict[Tuple, FreeGenerator] = {}
    bdeg = [h.degrees[i] for h in B.homs.values() for i in range(len(h))]
    bmin, bmax = (min(bdeg), max(bdeg)) if bdeg else (0, 0)

    def feasible(deg, left):
        if deg_range is None:
            return True
        lo_reach = deg + min(0, left * (bmin - 1)) + amin
        hi_reach = deg + max(0, left * (bmax - 1)) + amax
        return hi_reach >= deg_range[0] and lo_reach <= deg_range[1]

    words = []

    def rec(U, word, deg, k):
        # word = (U_k, m, b_k, ..., b_j) ; U = current source object
        if deg_range is None or (deg_range[0] <= deg + amax and deg + amin <= deg_range[1]):
            words.append((U, word, deg, k))
        if k == length_bound:
            return
        for V in objs:
            h = B.hom(V, U)
            for b in range(len(h)):
                nd = deg + h.degrees[b] - 1
                if feasible(nd, length_bound - k - 1):
                    rec(V, word + ((V, U, b),), nd, k + 1)

    for U in objs:
        for m in range(len(M(U))):
            d0 = M(U).degrees[m]
            if feasible(d0, length_bound):
                rec(U, ((U, m),), d0, 0)
    present = {w for _, w, _, _ in words}
    result = []
    for U0, word, deg, k in words:
        d = _bar_d(M, word, present)
        result.append(FreeGenerator(word, U0, deg, tuple(sorted(d.items(), key=repr)), 0))
    # stages: by (level, -degree) so every differential term is earlier
    keys = sorted({(g.name.__len__() - 1, -g.degree) for g in result})
    rank = {kk: s + 1 for s, kk in enumerate(keys)}
    return [FreeGenerator(g.name, g.obj, g.degree, g.d, rank[(len(g.name) - 1, -g.degree)]) for g in result]


def _bar_d(M: DGModule, word, present) -> Dict[Tuple[Hashable, int], object]:
    """d of the generator ``word`` = ((U_k, m), (U_{k-1}, U_k, b_k), ..., (U_0, U_1, b_1))."""
    B = M.base
    F = B.field
    out: Dict = {}
    k = len(word) - 1
    U0 = word[-1][0]
    unit0 = B.units[U0]

    def add(new_word, a_vec, coeff):
        for a, v in a_vec.items():
            key = (new_word, a)
            out[key] = F.norm(out.get(key, 0) + coeff * v)
            if not out[key]:
                del out[key]

    sgn = 0  # degree of the letters to the left
    # letter m
    Uk, m = word[0]
    for mm, v in M(Uk).d[m].items():
        add(((Uk, mm),) + word[1:], unit0, F.neg(v))
    sgn += M(Uk).degrees[m]
    for j in range(1, k + 1):
        # the eps between letter j-1 and letter j: merge them
        s = F.sign(sgn)
        if j == 1:
            V, U, b = word[1]
            prod = M.action(V, U, {m: F(1)}, {b: F(1)})
            for mm, v in prod.items():
                add(((V, mm),) + word[2:], unit0, F.neg(s * v))
        else:
            X1, Y1, b1 = word[j - 1]
            X2, Y2, b2 = word[j]
            prod = B.compose(X2, Y2, Y1, {b1: F(1)}, {b2: F(1)})
            for bb, v in prod.items():
                add(word[:j - 1] + ((X2, Y1, bb),) + word[j + 1:], unit0, F.neg(s * v))
        sgn -= 1
        # letter b_j itself
        X, Y, b = word[j]
        s = F.sign(sgn)
        h = B.hom(X, Y)
        for bb, v in h.d[b].items():
            add(word[:j] + ((X, Y, bb),) + word[j + 1:], unit0, F.neg(s * v))
        sgn += h.degrees[b]
    # final eps merges b_1 with the acting element: e_{word minus b_1} . b_1
    if k >= 1:
        s = F.sign(sgn)
        X, Y, b = word[-1]
        add(word[:-1], {b: F(1)}, F.neg(s))
    return {key: c for key, c in out.items() if key[0] in present}


def bar_resolution(M: DGModule, length_bound: int, window: Tuple[int, int]):
    """Truncated bar resolution with its augmentation e_(m) -> (-1)^|m| m.

    Returns (module, augmentation, certificate, report); the report marks
    (object, degree) cells where the augmentation cone is acyclic.
    """
    gens = bar_generators(M, length_bound)
    P = SemiFreeModule(M.base, gens, f"Bar_{length_bound}({M.name})")
    F = M.field
    images = {}
    for g in gens:
        if len(g.name) == 1:
            U, m = g.name[0]
            images[g.name] = {m: F.sign(M(U).degrees[m])}
    aug = P.map_to(M, images)
    report = _cell_report(aug, window)
    report.generators_per_step = [sum(1 for g in gens if len(g.name) == k + 1) for k in range(length_bound + 1)]
    report.steps = length_bound
    cert = P.certificate()
    report.certificate_ok = not cert.validate(P)
    return P.module(), aug, cert, report


# ---------------------------------------------------------------- orthogonality and induced images

def in_right_orthogonal(X, B: Sequence, window: Tuple[int, int], category: Optional[DGCategory] = None) -> Verdict:
    """Hom(b, X) acyclic in the window for every b in B.

    X may be a right module (Hom(h_b, X) = X(b)), a twisted complex with B a
    list of twisted complexes, or an object name of ``category``.
    """
    from dgquot.pretr import TwistedComplex, pretr_hom
    lo, hi = window
    for b in B:
        if isinstance(X, DGModule):
            c = X(b)
        elif isinstance(X, TwistedComplex):
            c = pretr_hom(b, X)
        else:
            c = category.hom(b, X)
        for n in range(lo, hi + 1):
            if cohomology(c, n).dimension:
                return Verdict("no", (getattr(b, "name", b), n))
    return Verdict("yes")


def _spread(A: DGCategory) -> int:
    return max([abs(k) for h in A.homs.values() for k in h.degrees] + [0])


@dataclass
class LIndReport:
    resolution: ResolutionReport
    certificate_ok: bool
    orthogonal: Verdict
    window: Tuple[int, int]


def lind_res_cone(A: DGCategory, Y: str, B: Sequence[str], window: Tuple[int, int], step_bound: int = 40):
    """Cone(LInd Res_B h_Y -> h_Y) as a right A-module, with its B-orthogonality report.

    Returns (N, counit, report). With B empty, LInd Res is zero and N = h_Y.
    """
    hY = yoneda(A, Y, RIGHT)
    lo, hi = window
    pad = 2 * _spread(A) + 2
    if not B:
        P = SemiFreeModule(A, [], "0")
        counit = P.map_to(hY, {})
        rr = ResolutionReport(0, [])
        cert_ok = True
    else:
        Bsub = A.full_subcategory(B)
        M = restrict_to(hY, B)
        Pb, phi, cert, rr = semi_free_resolve(M, step_bound, (lo - pad, hi + pad))
        cert_ok = not cert.validate(Pb)
        P = SemiFreeModule(A, Pb.generators, "LInd Res")
        counit = P.map_to(hY, phi.images, A)
    N = cone_module(counit)
    orth = in_right_orthogonal(N, B, window)
    if orth.status == "no" and not all(rr.cells.values()):
        orth = Verdict("inconclusive", orth.witness, {"reason": "resolution not certified"})
    return N, counit, LIndReport(rr, cert_ok, orth, window)


def check_induced_image(M: DGModule, B: Sequence[str], window: Tuple[int, int], step_bound: int = 40) -> Verdict:
    """Is LInd Res_B M -> M a quasi-isomorphism in the window?"""
    A = M.base
    lo, hi = window
    if not B:
        return is_quasi_isomorphism(ModuleMap(zero_module(A), M, {X: [] for X in A.objects}), window)
    pad = 2 * _spread(A) + 2
    Mb = restrict_to(M, B)
    Pb, phi, cert, rr = semi_free_resolve(Mb, step_bound, (lo - pad, hi + pad))
    P = SemiFreeModule(A, Pb.generators, "LInd Res")
    counit = P.map_to(M, phi.images, A)
    v = is_quasi_isomorphism(counit, window)
    if v.status == "yes":
        return Verdict("yes", None, {"resolution": rr})
    resolved = all(rr.cells.values())
    return Verdict("no" if resolved else "inconclusive", v.witness, {"resolution": rr})
