import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dgquot.linalg import GF, QQ, Echelon, Field, dense_rank, kernel, rank, SparseMatrix
from helpers import fields, seeds


def test_field_arithmetic():
    F = GF(7)
    assert F(-1) == 6
    assert F.inv(3) * 3 % 7 == 1
    assert F.sign(3) == 6 and F.sign(4) == 1
    assert QQ.parse("3/7") == Fraction(3, 7)
    assert QQ.format(Fraction(-3, 7)) == "-3/7"
    assert F.format(F(-2)) == "5"
    assert Field.from_spec("Fp:5") == GF(5)
    assert Field.from_spec("Q") == QQ


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        GF(6)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        QQ.inv(0)


def _random_columns(rng, F, nrows, ncols):
    p = F.p or 7
    return [{i: F(rng.randrange(-3, 4) if not F.p else rng.randrange(p))
             for i in range(nrows) if rng.random() < 0.6} for _ in range(ncols)]


@given(seeds, fields)
def test_rank_matches_dense_elimination(seed, F):
    rng = random.Random(seed)
    cols = _random_columns(rng, F, rng.randint(1, 6), rng.randint(1, 6))
    cols = [{k: v for k, v in c.items() if v} for c in cols]
    nrows = 1 + max([k for c in cols for k in c] + [0])
    dense = SparseMatrix.from_columns(nrows, cols).to_dense(F)
    assert rank(F, cols) == dense_rank(F, dense)


@given(seeds, fields)
def test_kernel_vectors_are_in_the_kernel(seed, F):
    rng = random.Random(seed)
    cols = [{k: v for k, v in c.items() if v} for c in _random_columns(rng, F, 4, 6)]
    ker = kernel(F, cols)
    assert len(ker) == len(cols) - rank(F, cols)
    for x in ker:
        total = {}
        for j, c in x.items():
            for i, v in cols[j].items():
                total[i] = F.norm(total.get(i, 0) + c * v)
        assert not any(total.values())


def test_echelon_solve_reports_combination():
    F = QQ
    E = Echelon(F, track=True)
    assert E.add({0: 1, 1: 2}, "a") is None
    assert E.add({1: 1}, "b") is None
    dep = E.add({0: 1, 1: 5}, "c")
    assert dep == {"a": 1, "b": 3}
    assert E.solve({0: 2, 1: 4}) == {"a": 2}
    assert E.solve({2: 1}) is None
