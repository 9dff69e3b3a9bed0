"""Finite cochain complexes with a flat graded basis.

A :class:`Complex` lists one degree per basis element and stores the
differential column-wise (``d[j]`` is the image of basis vector ``j``).
Degree +1 differentials, ``d(d(x)) == 0`` is checked on construction when
asked. Only the degrees inside ``window`` are meaningful for windowed
complexes cut out of something infinite: the differential leaving the top
degree may have been dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from dgquot.linalg import Echelon, Field, Vec, axpy, scale


class NotClosed(ValueError):
    pass


class WindowInsufficient(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Complex:
    field: Field
    degrees: Tuple[int, ...]
    d: Tuple[Vec, ...]
    labels: Optional[Tuple[Hashable, ...]] = None
    window: Optional[Tuple[int, int]] = None

    @classmethod
    def build(cls, F: Field, degrees: Sequence[int], d: Sequence[Vec], labels=None,
              window=None, check: bool = True) -> "Complex":
        if F.p:
            cols = tuple({k: v % F.p for k, v in col.items() if v % F.p} for col in d)
        else:
            cols = tuple({k: v for k, v in col.items() if v} for col in d)
        c = cls(F, tuple(degrees), cols,
                tuple(labels) if labels is not None else None, window)
        if len(c.d) != len(c.degrees):
            raise ValueError("differential size does not match basis")
        if check:
            c.check()
        return c

    @classmethod
    def zero(cls, F: Field) -> "Complex":
        return cls(F, (), ())

    @classmethod
    def ground(cls, F: Field, degree: int = 0) -> "Complex":
        """k placed in a single degree."""
        return cls(F, (degree,), ({},))

    def __len__(self):
        return len(self.degrees)

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def label(self, i: int):
        return self.labels[i] if self.labels is not None else i

    @cached_property
    def _by_degree(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for i, n in enumerate(self.degrees):
            out.setdefault(n, []).append(i)
        return out

    @cached_property
    def index(self) -> Dict[Hashable, int]:
        if self.labels is None:
            return {i: i for i in range(len(self.degrees))}
        return {lab: i for i, lab in enumerate(self.labels)}

    def basis_in_degree(self, n: int) -> List[int]:
        return self._by_degree.get(n, [])

    def support(self) -> List[int]:
        return sorted(self._by_degree)

    def dims(self) -> Dict[int, int]:
        return {n: len(v) for n, v in sorted(self._by_degree.items())}

    def apply_d(self, v: Vec) -> Vec:
        out: Vec = {}
        for j, c in v.items():
            axpy(self.field, out, c, self.d[j])
        return out

    def check(self):
        degs = self.degrees
        top = self.window[1] + 1 if self.window else None
        for j, col in enumerate(self.d):
            for i in col:
                if not 0 <= i < len(degs):
                    raise IndexError(f"differential of {self.label(j)} leaves the basis")
                if degs[i] != degs[j] + 1:
                    raise ValueError(f"differential of {self.label(j)} does not raise degree by 1")
        for j, col in enumerate(self.d):
            if top is not None and degs[j] >= top:
                continue
            if self.apply_d(col):
                raise ValueError(f"d^2 != 0 on basis element {self.label(j)}")

    def d_squared_zero(self) -> bool:
        try:
            self.check()
        except ValueError:
            return False
        return True

    def is_cocycle(self, v: Vec) -> bool:
        return not self.apply_d(v)


# ---------------------------------------------------------------- cohomology

@dataclass
class CohomologyResult:
    degree: int
    dimension: int
    representatives: List[Vec] = field(default_factory=list)


def _coboundary_echelon(c: Complex, n: int) -> Echelon:
    E = Echelon(c.field)
    for j in c.basis_in_degree(n - 1):
        E.add(c.d[j])
    return E


def cocycles(c: Complex, n: int) -> List[Vec]:
    F = c.field
    idx = c.basis_in_degree(n)
    E = Echelon(F, track=True)
    out = []
    for j in idx:
        dep = E.add(c.d[j], tag=j)
        if dep is not None:
            z = scale(F, F.neg(1), dep)
            z[j] = F(1)
            out.append(z)
    return out


def cohomology(c: Complex, degree: int) -> CohomologyResult:
    """dim H^degree(c) together with cocycles spanning a complement of the coboundaries."""
    if c.window is not None and not (c.window[0] <= degree <= c.window[1]):
        raise WindowInsufficient(f"degree {degree} outside window {c.window}")
    E = _coboundary_echelon(c, degree)
    reps = []
    for z in cocycles(c, degree):
        if E.add(z) is None:
            reps.append(z)
    return CohomologyResult(degree, len(reps), reps)


def cohomology_dims(c: Complex, degrees=None) -> Dict[int, int]:
    if degrees is None:
        if c.window is not None:
            degrees = range(c.window[0], c.window[1] + 1)
        else:
            sup = c.support()
            degrees = range(sup[0], sup[-1] + 1) if sup else ()
    return {n: cohomology(c, n).dimension for n in degrees}


def is_acyclic(c: Complex, degrees=None) -> bool:
    return all(v == 0 for v in cohomology_dims(c, degrees).values())


def class_rank(c: Complex, degree: int, vectors: List[Vec]) -> int:
    """Dimension of the span of the classes of the given cocycles in H^degree(c)."""
    E = _coboundary_echelon(c, degree)
    base = E.rank
    for v in vectors:
        E.add(v)
    return E.rank - base


def solve_coboundary(c: Complex, target: Vec) -> Optional[Vec]:
    """x with d(x) == target, or None if target is not a coboundary."""
    if not target:
        return {}
    degs = {c.degrees[i] for i in target}
    if len(degs) != 1:
        raise ValueError("target is not homogeneous")
    n = degs.pop()
    E = Echelon(c.field, track=True)
    for j in c.basis_in_degree(n - 1):
        E.add(c.d[j], tag=j)
    return E.solve(target)


# ---------------------------------------------------------------- chain maps

@dataclass(frozen=True, eq=False)
class ChainMap:
    """Degree-``offset`` linear map given column-wise on the source basis."""

    source: Complex
    target: Complex
    columns: Tuple[Vec, ...]
    offset: int = 0

    @classmethod
    def build(cls, source: Complex, target: Complex, columns: Sequence[Vec], offset: int = 0) -> "ChainMap":
        source.field.check_same(target.field)
        cols = tuple({k: v for k, v in col.items() if v} for col in columns)
        if len(cols) != len(source):
            raise ValueError("wrong number of columns")
        for j, col in enumerate(cols):
            for i in col:
                if target.degrees[i] != source.degrees[j] + offset:
                    raise ValueError("map is not homogeneous of the stated degree")
        return cls(source, target, cols, offset)

    @classmethod
    def identity(cls, c: Complex) -> "ChainMap":
        F = c.field
        return cls(c, c, tuple({j: F(1)} for j in range(len(c))), 0)

    @classmethod
    def zero(cls, source: Complex, target: Complex, offset: int = 0) -> "ChainMap":
        return cls(source, target, tuple({} for _ in range(len(source))), offset)

    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for j, c in v.items():
            axpy(self.source.field, out, c, self.columns[j])
        return out

    def is_closed(self) -> bool:
        """d f - (-1)^offset f d == 0."""
        F = self.source.field
        sgn = F.sign(self.offset)
        top = self.source.window[1] if self.source.window else None
        for j in range(len(self.source)):
            if top is not None and self.source.degrees[j] + self.offset >= top:
                continue
            lhs = self.target.apply_d(self.columns[j])
            axpy(F, lhs, F.neg(sgn), self.apply(self.source.d[j]))
            if lhs:
                return False
        return True


@dataclass(frozen=True, eq=False)
class Homotopy:
    source: Complex
    target: Complex
    columns: Tuple[Vec, ...]

    def as_map(self) -> ChainMap:
        return ChainMap(self.source, self.target, self.columns, -1)


# ---------------------------------------------------------------- constructions

def shift(c: Complex, n: int) -> Complex:
    """c[n]: degrees lowered by n, differential multiplied by (-1)^n."""
    if n == 0:
        return c
    F = c.field
    s = F.sign(n)
    win = (c.window[0] - n, c.window[1] - n) if c.window else None
    return Complex(F, tuple(k - n for k in c.degrees), tuple(scale(F, s, col) for col in c.d), c.labels, win)


def cone_complex(f: ChainMap) -> Complex:
    """Cone(f) = target + source[1] with d(y, x) = (dy + f x, -dx)."""
    if f.offset != 0:
        raise NotClosed("cone needs a degree 0 map")
    if not f.is_closed():
        raise NotClosed("map does not commute with differentials")
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
    win = None
    if X.window and Y.window:
        win = (max(Y.window[0], X.window[0] - 1), min(Y.window[1], X.window[1] - 1))
    return Complex.build(F, degrees, d, labels, win)


def tensor(c1: Complex, c2: Complex) -> Complex:
    """c1 (x) c2 with d(a(x)b) = da(x)b + (-1)^|a| a(x)db."""
    c1.field.check_same(c2.field)
    F = c1.field
    n2 = len(c2)
    degrees, d, labels = [], [], []
    for i, a in enumerate(c1.degrees):
        s = F.sign(a)
        for j, b in enumerate(c2.degrees):
            degrees.append(a + b)
            labels.append((c1.label(i), c2.label(j)))
            col: Vec = {}
            for ii, v in c1.d[i].items():
                col[ii * n2 + j] = v
            for jj, v in c2.d[j].items():
                axpy(F, col, s * v, {i * n2 + jj: 1})
            d.append(col)
    return Complex.build(F, degrees, d, labels)


def hom(c1: Complex, c2: Complex) -> Complex:
    """Hom(c1, c2) with basis E(k, i): e_i -> e_k and d(phi) = d phi - (-1)^|phi| phi d."""
    c1.field.check_same(c2.field)
    F = c1.field
    n1 = len(c1)
    # transpose of c1's differential: which j have i in d(e_j)
    into: List[List[Tuple[int, object]]] = [[] for _ in range(n1)]
    for j, col in enumerate(c1.d):
        for i, v in col.items():
            into[i].append((j, v))
    degrees, d, labels = [], [], []
    for k, b in enumerate(c2.degrees):
        for i, a in enumerate(c1.degrees):
            deg = b - a
            degrees.append(deg)
            labels.append((c2.label(k), c1.label(i)))
            col: Vec = {}
            for kk, v in c2.d[k].items():
                col[kk * n1 + i] = v
            s = F.neg(F.sign(deg))
            for j, v in into[i]:
                axpy(F, col, s * v, {k * n1 + j: 1})
            d.append(col)
    return Complex.build(F, degrees, d, labels)


def solve_homotopy(f: ChainMap, g: Optional[ChainMap] = None) -> Optional[Homotopy]:
    """h of degree -1 with d h + h d == f - g (g defaults to 0), or None."""
    X, Y = f.source, f.target
    F = X.field
    H = hom(X, Y)
    n1 = len(X)
    target: Vec = {}
    for j, col in enumerate(f.columns):
        for k, v in col.items():
            axpy(F, target, v, {k * n1 + j: 1})
    if g is not None:
        for j, col in enumerate(g.columns):
            for k, v in col.items():
                axpy(F, target, F.neg(v), {k * n1 + j: 1})
    if not target:
        return Homotopy(X, Y, tuple({} for _ in range(n1)))
    sol = solve_coboundary(H, target)
    if sol is None:
        return None
    cols: List[Vec] = [{} for _ in range(n1)]
    for e, v in sol.items():
        k, j = divmod(e, n1)
        cols[j][k] = v
    return Homotopy(X, Y, tuple(cols))


def homotopy_holds(f: ChainMap, h: Homotopy, g: Optional[ChainMap] = None) -> bool:
    """Substitute h back: d h + h d == f - g, entrywise."""
    F = f.source.field
    X, Y = f.source, f.target
    for j in range(len(X)):
        lhs = Y.apply_d(h.columns[j])
        for i, v in X.d[j].items():
            axpy(F, lhs, v, h.columns[i])
        axpy(F, lhs, F.neg(1), f.columns[j])
        if g is not None:
            axpy(F, lhs, F(1), g.columns[j])
        if lhs:
            return False
    return True


def subcomplex_quotient(c: Complex, generators: List[Vec]) -> Tuple[Complex, List[int], Echelon]:
    """Quotient of c by the subcomplex spanned by ``generators`` (which must be
    closed under d). Returns the quotient, the surviving basis indices of c and
    the echelon of the relations."""
    F = c.field
    E = Echelon(F)
    for v in generators:
        E.add(v)
    piv = E.pivots()
    keep = [i for i in range(len(c)) if i not in piv]
    pos = {i: n for n, i in enumerate(keep)}
    d = []
    for i in keep:
        r, _ = E.reduce(c.d[i])
        d.append({pos[k]: v for k, v in r.items()})
    labels = [c.label(i) for i in keep]
    q = Complex.build(F, [c.degrees[i] for i in keep], d, labels, c.window)
    return q, keep, E
