"""Exact scalars and sparse linear algebra over Q and F_p.

Vectors are plain dicts ``{index: coefficient}`` without explicit zeros.
Coefficients are ``gmpy2.mpq`` rationals over Q and ints in ``[0, p)``
over F_p; :class:`Field` knows how to normalise, invert, parse and print them.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from gmpy2 import mpq
from typing import Dict, Hashable, Iterable, List, Optional, Tuple

Vec = Dict[Hashable, object]


class FieldMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Either Q (``p == 0``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if not self.p else f"GF({self.p})"

    @property
    def spec(self) -> str:
        return "Q" if not self.p else f"Fp:{self.p}"

    @classmethod
    def from_spec(cls, text: str) -> "Field":
        text = text.strip()
        if text == "Q":
            return cls(0)
        if text.startswith("Fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field spec {text!r}")

    def __call__(self, x) -> object:
        if self.p:
            den = getattr(x, "denominator", 1)
            if den != 1:
                return (int(x.numerator) * pow(int(den), -1, self.p)) % self.p
            return int(x) % self.p
        return mpq(x)

    def norm(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(x), -1, self.p)
        return 1 / mpq(x)

    def neg(self, x):
        return (-x) % self.p if self.p else -x

    def sign(self, k: int):
        """(-1)**k as a field element."""
        return self(-1 if k % 2 else 1)

    def parse(self, text: str):
        text = text.strip()
        return self(Fraction(text))

    def format(self, x) -> str:
        if self.p:
            return str(int(x) % self.p)
        x = mpq(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def check_same(self, other: "Field"):
        if self != other:
            raise FieldMismatch(f"field mismatch: {self!r} vs {other!r}")


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------- vectors

def axpy(F: Field, y: Vec, c, x: Vec) -> Vec:
    """y += c*x in place; returns y."""
    if c == 0:
        return y
    p = F.p
    for k, v in x.items():
        w = y.get(k, 0) + c * v
        if p:
            w %= p
        if w:
            y[k] = w
        else:
            y.pop(k, None)
    return y


def scale(F: Field, c, x: Vec) -> Vec:
    if c == 0:
        return {}
    p = F.p
    if p:
        return {k: (c * v) % p for k, v in x.items()}
    return {k: c * v for k, v in x.items()}


def lincomb(F: Field, terms: Iterable[Tuple[object, Vec]]) -> Vec:
    out: Vec = {}
    for c, x in terms:
        axpy(F, out, c, x)
    return out


# ---------------------------------------------------------------- echelon

class Echelon:
    """Incremental row echelon form of a set of sparse vectors.

    Each stored row has a pivot (its smallest key, normalised to 1). With
    ``track=True`` every row also remembers which inserted vectors it is a
    combination of, so reductions double as linear solves.
    """

    def __init__(self, F: Field, track: bool = False, order=None):
        self.F = F
        self.track = track
        self.rows: Dict[Hashable, Vec] = {}
        self.combos: Dict[Hashable, Vec] = {}
        self._order = order  # optional key function for pivot choice
        self._count = 0

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _key(self, k):
        return k if self._order is None else self._order(k)

    def reduce(self, v: Vec, combo: Optional[Vec] = None) -> Tuple[Vec, Vec]:
        """Eliminate every pivot key from ``v``.

        Returns ``(residual, coeffs)`` with ``v == residual + sum(coeffs[t] * input_t)``
        where ``input_t`` are the tracked inserted vectors.
        """
        F = self.F
        v = dict(v)
        coeffs: Vec = {} if combo is None else dict(combo)
        rows = self.rows
        if not rows or not v:
            return v, coeffs
        heap = [(self._key(k), i, k) for i, k in enumerate(v) if k in rows]
        heapq.heapify(heap)
        tie = len(heap)
        while heap:
            _, _, k = heapq.heappop(heap)
            c = v.get(k)
            if not c:
                continue
            row = rows[k]
            neg = F.neg(c)
            for kk, x in row.items():
                if kk not in v and kk in rows and kk != k:
                    heapq.heappush(heap, (self._key(kk), tie, kk))
                    tie += 1
            axpy(F, v, neg, row)
            if self.track:
                axpy(F, coeffs, c, self.combos[k])
        return v, coeffs

    def add(self, v: Vec, tag: Hashable = None) -> Optional[Vec]:
        """Insert ``v``. Returns ``None`` if it was independent, else the
        dependency combination (in tags) expressing ``v`` via earlier inputs."""
        F = self.F
        if tag is None:
            tag = self._count
        self._count += 1
        res, coeffs = self.reduce(v)
        if not res:
            return coeffs
        piv = min(res, key=self._key)
        inv = F.inv(res[piv])
        row = scale(F, inv, res)
        self.rows[piv] = row
        if self.track:
            combo = scale(F, F.neg(inv), coeffs)
            axpy(F, combo, inv, {tag: 1})
            self.combos[piv] = combo
        return None

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)[0]

    def solve(self, v: Vec) -> Optional[Vec]:
        """Coefficients c with sum(c[t]*input_t) == v, or None."""
        res, coeffs = self.reduce(v)
        return None if res else coeffs

    def pivots(self):
        return set(self.rows)


@dataclass(frozen=True)
class SparseMatrix:
    """rows x cols matrix stored column-wise: ``cols_data[j] = {i: a_ij}``."""

    nrows: int
    ncols: int
    cols_data: Tuple[Tuple[Tuple[int, object], ...], ...] = dc_field(default=())

    @classmethod
    def from_columns(cls, nrows: int, columns: List[Vec]) -> "SparseMatrix":
        data = []
        for col in columns:
            for i in col:
                if not 0 <= i < nrows:
                    raise IndexError(f"row index {i} out of range")
            data.append(tuple(sorted((i, x) for i, x in col.items() if x != 0)))
        return cls(nrows, len(columns), tuple(data))

    def column(self, j: int) -> Vec:
        return dict(self.cols_data[j])

    def entries(self):
        for j, col in enumerate(self.cols_data):
            for i, x in col:
                yield i, j, x

    def to_dense(self, F: Field) -> List[List[object]]:
        out = [[F(0)] * self.ncols for _ in range(self.nrows)]
        for i, j, x in self.entries():
            out[i][j] = x
        return out


def rank(F: Field, columns: Iterable[Vec]) -> int:
    E = Echelon(F)
    for c in columns:
        E.add(c)
    return E.rank


def kernel(F: Field, columns: List[Vec]) -> List[Vec]:
    """Basis of {x : sum_j x_j * columns[j] == 0}, as dicts over column indices."""
    E = Echelon(F, track=True)
    out = []
    for j, col in enumerate(columns):
        dep = E.add(col, tag=j)
        if dep is not None:
            ker = scale(F, F.neg(1), dep)
            ker[j] = F(1)
            out.append(ker)
    return out


def dense_rank(F: Field, rows: List[List[object]]) -> int:
    """Plain Gaussian elimination on a dense matrix; independent of :class:`Echelon`."""
    m = [[F(x) for x in r] for r in rows]
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.norm(x * inv) for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [F.norm(a - f * b) for a, b in zip(m[i], m[r])]
        r += 1
        if r == nr:
            break
    return r
