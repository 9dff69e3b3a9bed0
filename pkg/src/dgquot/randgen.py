"""Seeded random DG categories for property tests and cross checks.

Instances are built from a random acyclic graded quiver: some arrows are
closed, the others get a differential that is a random combination of
paths of closed arrows, so d^2 = 0 and Leibniz hold by construction. The
path category is finite because the quiver is acyclic. Optionally a cone of
a random closed degree-0 morphism is added as an extra object through the
pretriangulated hull, which brings nontrivial differentials into the Homs.
"""
from __future__ import annotations

import random
from typing import List, Optional, Sequence, Tuple

from dgquot.category import DGCategory, validate
from dgquot.free import FreeCategory, Generator, free_to_table
from dgquot.linalg import GF, Field
from dgquot.pretr import TwistedComplex, cone_of_morphism, pretr_table
from dgquot.complexes import cocycles
from dgquot.library import table_from_labels


def random_quiver_category(rng: random.Random, F: Field, n_objects: int, n_arrows: int,
                           degrees: Sequence[int] = (-1, 0, 1)) -> DGCategory:
    objs = [f"O{i}" for i in range(n_objects)]
    gens: List[Generator] = []
    diff = {}
    closed: List[Generator] = []
    for t in range(n_arrows):
        i = rng.randrange(n_objects - 1) if n_objects > 1 else 0
        j = rng.randrange(i + 1, n_objects) if n_objects > 1 else 0
        if n_objects == 1:
            break
        g = Generator(f"a{t}", objs[i], objs[j], rng.choice(list(degrees)))
        gens.append(g)
        diff[g.name] = {}
        closed.append(g)
    # one attempt at a non-closed arrow whose boundary is a path of two closed arrows
    for g1 in list(closed):
        for g2 in list(closed):
            if g1.target == g2.source and rng.random() < 0.5:
                name = f"b{len(gens)}"
                deg = g1.degree + g2.degree - 1
                gens.append(Generator(name, g1.source, g2.target, deg))
                diff[name] = {(g2.name, g1.name): F(rng.randrange(1, max(2, F.p or 5)))}
                break
    Q = FreeCategory(F, objs, gens, diff, name="quiver")
    return free_to_table(Q, name="quiver")


def random_loop_category(rng: random.Random, F: Field) -> DGCategory:
    """P with End(P) = k[x]/x^2, Q with End(Q) = k, and Hom(P, Q) spanned by a and a x."""
    while True:
        dx, da = rng.choice((-1, 0, 1)), rng.choice((-1, 0, 1))
        if -1 <= dx + da <= 1:
            break
    basis = {("P", "P"): [("idP", 0), ("x", dx)], ("Q", "Q"): [("idQ", 0)],
             ("P", "Q"): [("a", da), ("ax", da + dx)]}
    products = {("idP", "idP"): {"idP": 1}, ("idP", "x"): {"x": 1}, ("x", "idP"): {"x": 1},
                ("idQ", "idQ"): {"idQ": 1}, ("idQ", "a"): {"a": 1}, ("idQ", "ax"): {"ax": 1},
                ("a", "idP"): {"a": 1}, ("ax", "idP"): {"ax": 1}, ("a", "x"): {"ax": 1}}
    return table_from_labels(F, ["P", "Q"], basis, {}, products, {"P": "idP", "Q": "idQ"}, "loop")


def _small(C: DGCategory, max_dim: int, degrees: Tuple[int, int]) -> bool:
    for h in C.homs.values():
        counts = {}
        for k in h.degrees:
            if not degrees[0] <= k <= degrees[1]:
                return False
            counts[k] = counts.get(k, 0) + 1
        if any(v > max_dim for v in counts.values()):
            return False
    return True


def _random_closed(rng, C: DGCategory, X: str, Y: str, F: Field):
    f = {}
    for z in cocycles(C.hom(X, Y), 0):
        c = rng.randrange(F.p or 5)
        for k, v in z.items():
            f[k] = F.norm(f.get(k, 0) + c * v)
    return {k: v for k, v in f.items() if v}


def random_table_category(seed: int, F: Optional[Field] = None, max_objects: int = 3, max_dim: int = 3,
                          degrees: Tuple[int, int] = (-1, 1), max_tries: int = 500) -> DGCategory:
    """A valid table category with at most ``max_objects`` objects, Homs of dimension
    <= max_dim per degree and all degrees in the given range. Rejection sampling."""
    F = F or GF(5)
    rng = random.Random(seed)
    for _ in range(max_tries):
        if rng.random() < 0.4:
            base = random_loop_category(rng, F)
        else:
            # degree-0 quivers leave room for cones inside the degree range
            degs = rng.choice(((0,), (-1, 0, 1)))
            base = random_quiver_category(rng, F, rng.randint(2, 3), rng.randint(1, 4), degs)
        objs = list(base.objects)
        cand = base
        if rng.random() < 0.75:
            pairs = [(X, Y) for X in objs for Y in objs if X != Y and cocycles(base.hom(X, Y), 0)]
            f = None
            if pairs:
                X, Y = rng.choice(pairs)
                f = _random_closed(rng, base, X, Y, F)
            if f:
                tcs = {o: TwistedComplex.singleton(base, o) for o in objs}
                tcs["C"] = cone_of_morphism(base, X, Y, f, "C")
                keep = sorted(["C"] + rng.sample(objs, min(max_objects - 1, len(objs))))
                cand = pretr_table(base, {k: tcs[k] for k in keep})
        if len(cand.objects) > max_objects or not _small(cand, max_dim, degrees):
            continue
        cand.name = f"rand{seed}"
        return cand
    raise RuntimeError("no instance found; relax the constraints")


def random_instance(seed: int, F: Optional[Field] = None):
    """(A, B) with B a single object of A."""
    A = random_table_category(seed, F)
    rng = random.Random(seed * 7919 + 1)
    return A, [rng.choice(list(A.objects))]
