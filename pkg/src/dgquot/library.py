"""Small named categories used by the demos, the CLI and the tests."""
from __future__ import annotations

from typing import Dict, Mapping, Sequence, Tuple

from dgquot.category import DGCategory, DGFunctor, ground_category
from dgquot.complexes import Complex
from dgquot.ext import ExtTable
from dgquot.free import FreeCategory, FreeFunctor, free_category
from dgquot.linalg import QQ, Field, Vec
from dgquot.pretr import TwistedComplex, cone_of_morphism, pretr_table


def table_from_labels(F: Field, objects: Sequence[str], basis: Mapping[Tuple[str, str], Sequence[Tuple[str, int]]],
                      d: Mapping[str, Mapping[str, object]], products: Mapping[Tuple[str, str], Mapping[str, object]],
                      units: Mapping[str, str], name: str = "") -> DGCategory:
    """Build a table category from globally unique basis labels.

    ``products[(g, f)]`` is g o f as a combination of labels; missing products are zero.
    """
    where: Dict[str, Tuple[Tuple[str, str], int]] = {}
    homs = {}
    for (X, Y), elems in basis.items():
        for i, (lab, _) in enumerate(elems):
            if lab in where:
                raise ValueError(f"basis label {lab} used twice")
            where[lab] = ((X, Y), i)
    for (X, Y), elems in basis.items():
        cols = []
        for lab, _ in elems:
            col = {}
            for t, c in d.get(lab, {}).items():
                pair, k = where[t]
                if pair != (X, Y):
                    raise ValueError(f"d({lab}) leaves Hom{(X, Y)}")
                col[k] = F(c)
            cols.append(col)
        homs[(X, Y)] = Complex.build(F, [deg for _, deg in elems], cols, [lab for lab, _ in elems])
    comp: Dict = {}
    for (g, f), v in products.items():
        (Y, Z), i = where[g]
        (X, Y2), j = where[f]
        if Y != Y2:
            raise ValueError(f"{g} o {f} is not composable")
        out = {}
        for t, c in v.items():
            pair, k = where[t]
            if pair != (X, Z):
                raise ValueError(f"{g} o {f} lands in the wrong Hom")
            if F(c):
                out[k] = F(c)
        comp.setdefault((X, Y, Z), {})[(i, j)] = out
    us = {}
    for X, lab in units.items():
        pair, k = where[lab]
        if pair != (X, X):
            raise ValueError(f"unit {lab} is not an endomorphism of {X}")
        us[X] = {k: F(1)}
    return DGCategory(F, objects, homs, comp, us, name)


def _with_units(objects, basis, products, units):
    """Add the unit products id o a = a = a o id."""
    products = dict(products)
    for (X, Y), elems in basis.items():
        for lab, _ in elems:
            products.setdefault((units[Y], lab), {lab: 1})
            products.setdefault((lab, units[X]), {lab: 1})
    return products


def a0(F: Field = QQ) -> DGCategory:
    """Two objects X1, X2 and a single closed degree-0 arrow f: X1 -> X2."""
    objects = ["X1", "X2"]
    basis = {("X1", "X1"): [("id1", 0)], ("X2", "X2"): [("id2", 0)], ("X1", "X2"): [("f", 0)]}
    units = {"X1": "id1", "X2": "id2"}
    return table_from_labels(F, objects, basis, {}, _with_units(objects, basis, {}, units), units, "A0")


def i2(F: Field = QQ) -> DGCategory:
    """Two isomorphic objects: every Hom is one-dimensional in degree 0, g f = 1, f g = 1."""
    objects = ["X1", "X2"]
    basis = {("X1", "X1"): [("id1", 0)], ("X2", "X2"): [("id2", 0)],
             ("X1", "X2"): [("f", 0)], ("X2", "X1"): [("g", 0)]}
    units = {"X1": "id1", "X2": "id2"}
    products = {("g", "f"): {"id1": 1}, ("f", "g"): {"id2": 1}}
    return table_from_labels(F, objects, basis, {}, _with_units(objects, basis, products, units), units, "I2")


def a0_free(F: Field = QQ) -> FreeCategory:
    return free_category(F, ["X1", "X2"], [("f", "X1", "X2", 0)], {}, "A0")


def k_resolution(F: Field = QQ) -> FreeCategory:
    """Free on f, g (degree 0), alpha1, alpha2 (degree -1), u (degree -2) with
    d alpha1 = g f - 1, d alpha2 = f g - 1, d u = f alpha1 - alpha2 f."""
    quiver = [("f", "X1", "X2", 0), ("g", "X2", "X1", 0), ("a1", "X1", "X1", -1),
              ("a2", "X2", "X2", -1), ("u", "X1", "X2", -2)]
    diff = {"a1": {("g", "f"): 1, (): -1}, "a2": {("f", "g"): 1, (): -1},
            "u": {("f", "a1"): 1, ("a2", "f"): -1}}
    return free_category(F, ["X1", "X2"], quiver, diff, "K")


def k_broken(F: Field = QQ) -> FreeCategory:
    """K with d alpha1 = g f (the -1 dropped) and u removed; d^2 = 0 still holds."""
    quiver = [("f", "X1", "X2", 0), ("g", "X2", "X1", 0), ("a1", "X1", "X1", -1), ("a2", "X2", "X2", -1)]
    diff = {"a1": {("g", "f"): 1}, "a2": {("f", "g"): 1, (): -1}}
    return free_category(F, ["X1", "X2"], quiver, diff, "K-broken")


def k_to_i2(K: FreeCategory, I: DGCategory) -> FreeFunctor:
    """f, g to the generators, everything else to zero."""
    F = I.field
    f = I.hom("X1", "X2").index["f"]
    g = I.hom("X2", "X1").index["g"]
    return FreeFunctor(K, I, {"X1": "X1", "X2": "X2"}, {"f": {f: F(1)}, "g": {g: F(1)}}, "K->I2")


def a0_to_i2(A: DGCategory, I: DGCategory) -> DGFunctor:
    F = I.field
    morph = {}
    for (X, Y), h in A.homs.items():
        hi = I.hom(X, Y)
        morph[(X, Y)] = [{hi.index[{"id1": "id1", "id2": "id2", "f": "f"}[h.label(j)]]: F(1)} for j in range(len(h))]
    return DGFunctor(A, I, {"X1": "X1", "X2": "X2"}, morph, "A0->I2")


def example_i2_objects(A0: DGCategory) -> Dict[str, TwistedComplex]:
    f = A0.hom("X1", "X2").index["f"]
    return {"X1": TwistedComplex.singleton(A0, "X1"), "X2": TwistedComplex.singleton(A0, "X2"),
            "Cf": cone_of_morphism(A0, "X1", "X2", {f: A0.field(1)}, "Cf")}


def expected_i2_tables(window: Tuple[int, int] = (-3, 3)) -> Dict[Tuple[str, str], ExtTable]:
    lo, hi = window
    return {(X, Y): ExtTable.exact({n: int(n == 0) for n in range(lo, hi + 1)}, window, "expected")
            for X in ("X1", "X2") for Y in ("X1", "X2")}


def build_example_i2(F: Field = QQ, window: Tuple[int, int] = (-3, 3)):
    """(A, B, expected): A is the table category on {X1, X2, Cone f} inside A0^pretr,
    B = ["Cf"], and the expected Ext tables of the quotient between X1 and X2."""
    A0 = a0(F)
    A = pretr_table(A0, example_i2_objects(A0), "A0pretr{X1,X2,Cf}")
    return A, ["Cf"], expected_i2_tables(window)


def point_example(F: Field = QQ):
    """One object with End = k, B = everything: the quotient is zero."""
    return ground_category(F, "*"), ["*"]
