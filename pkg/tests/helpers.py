"""Random inputs shared by the test modules."""
import random

from hypothesis import strategies as st

from dgquot.complexes import Complex
from dgquot.linalg import GF, QQ, axpy

FIELDS = [QQ, GF(2), GF(5)]


def random_complex(rng: random.Random, F, n_pieces: int, lo: int = -2, hi: int = 2) -> Complex:
    """Direct sum of k[a] and (k -> k) pieces, scrambled by a random triangular
    change of basis inside each degree. The cohomology is known by construction:
    one dimension per single piece."""
    degrees, d, known = [], [], {}
    for _ in range(n_pieces):
        a = rng.randint(lo, hi)
        if rng.random() < 0.5:
            degrees.append(a)
            d.append({})
            known[a] = known.get(a, 0) + 1
        else:
            i = len(degrees)
            degrees += [a, a + 1]
            d += [{i + 1: F(1)}, {}]
    # change of basis e_j -> e_j + c e_i for i < j in the same degree
    n = len(degrees)
    P = [{j: F(1)} for j in range(n)]
    for j in range(n):
        for i in range(j):
            if degrees[i] == degrees[j] and rng.random() < 0.5:
                P[j][i] = F(rng.randint(1, 4))
    # new basis f_j = sum P[j][i] e_i; d f_j expressed back in the f basis
    inv = _unitriangular_inverse(F, P, n)
    dnew = []
    for j in range(n):
        img = {}
        for i, c in P[j].items():
            axpy(F, img, c, d[i])
        col = {}
        for k, c in img.items():
            axpy(F, col, c, inv[k])
        dnew.append(col)
    return Complex.build(F, degrees, dnew), known


def _unitriangular_inverse(F, P, n):
    """Columns of P^{-1}: inv[k] expresses e_k in the f basis."""
    inv = [None] * n
    for k in range(n):
        v = {k: F(1)}
        for i, c in sorted(P[k].items()):
            if i != k:
                axpy(F, v, F.neg(c), inv[i])
        inv[k] = v
    return inv


seeds = st.integers(min_value=0, max_value=10**6)
fields = st.sampled_from(FIELDS)
