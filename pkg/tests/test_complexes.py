import random

import pytest
from hypothesis import given

from dgquot.complexes import (ChainMap, Complex, NotClosed, class_rank, cohomology, cohomology_dims,
                              cone_complex, hom, homotopy_holds, is_acyclic, shift, solve_coboundary,
                              solve_homotopy, subcomplex_quotient, tensor)
from dgquot.linalg import GF, QQ
from helpers import fields, random_complex, seeds


def dims(c, lo=-8, hi=8):
    return {n: v for n, v in cohomology_dims(c, range(lo, hi + 1)).items() if v}


def test_two_term_complex():
    c = Complex.build(QQ, [0, 1], [{1: 2}, {}])
    assert is_acyclic(c)
    c2 = Complex.build(GF(2), [0, 1], [{1: 2}, {}])
    assert dims(c2) == {0: 1, 1: 1}


def test_d_squared_is_checked():
    with pytest.raises(ValueError):
        Complex.build(QQ, [0, 1, 2], [{1: 1}, {2: 1}, {}])
    with pytest.raises(ValueError):
        Complex.build(QQ, [0, 2], [{1: 1}, {}])


@given(seeds, fields)
def test_cohomology_of_scrambled_sums(seed, F):
    rng = random.Random(seed)
    c, known = random_complex(rng, F, rng.randint(1, 5))
    assert c.d_squared_zero()
    assert dims(c) == {k: v for k, v in known.items() if v}


@given(seeds, fields)
def test_kunneth(seed, F):
    rng = random.Random(seed)
    c1, k1 = random_complex(rng, F, rng.randint(1, 3), -1, 1)
    c2, k2 = random_complex(rng, F, rng.randint(1, 3), -1, 1)
    t = tensor(c1, c2)
    assert t.d_squared_zero()
    expect = {}
    for a, x in k1.items():
        for b, y in k2.items():
            expect[a + b] = expect.get(a + b, 0) + x * y
    assert dims(t) == {k: v for k, v in expect.items() if v}


@given(seeds, fields)
def test_hom_complex_cohomology(seed, F):
    # over a field H(Hom(c1, c2))^n = sum_k Hom(H^k c1, H^(k+n) c2)
    rng = random.Random(seed)
    c1, k1 = random_complex(rng, F, rng.randint(1, 3), -1, 1)
    c2, k2 = random_complex(rng, F, rng.randint(1, 3), -1, 1)
    h = hom(c1, c2)
    assert h.d_squared_zero()
    expect = {}
    for a, x in k1.items():
        for b, y in k2.items():
            expect[b - a] = expect.get(b - a, 0) + x * y
    assert dims(h) == {k: v for k, v in expect.items() if v}


def test_shift_lowers_degrees_and_signs_d():
    c = Complex.build(QQ, [0, 1], [{1: 3}, {}])
    s = shift(c, 1)
    assert s.degrees == (-1, 0)
    assert s.d[0] == {1: -3}
    assert shift(c, 2).d[0] == {1: 3}


def test_cone_of_identity_is_acyclic():
    rng = random.Random(4)
    c, _ = random_complex(rng, QQ, 4)
    cone = cone_complex(ChainMap.identity(c))
    assert cone.d_squared_zero()
    assert is_acyclic(cone)


def test_cone_rejects_non_closed_map():
    c = Complex.build(QQ, [0, 1], [{1: 1}, {}])
    f = ChainMap.build(c, c, [{0: 1}, {}])
    with pytest.raises(NotClosed):
        cone_complex(f)


def test_null_homotopy_found_and_checked():
    c = Complex.build(QQ, [0, 1], [{1: 1}, {}])
    idc = ChainMap.identity(c)
    h = solve_homotopy(idc)
    assert h is not None and homotopy_holds(idc, h)
    k = Complex.ground(QQ)
    assert solve_homotopy(ChainMap.identity(k)) is None


def test_coboundary_and_class_rank():
    c = Complex.build(QQ, [0, 1, 1], [{1: 1}, {}, {}])
    assert solve_coboundary(c, {1: 2}) == {0: 2}
    assert solve_coboundary(c, {2: 1}) is None
    assert class_rank(c, 1, [{1: 1}, {2: 1}, {1: 1, 2: 1}]) == 1


def test_quotient_by_subcomplex():
    c = Complex.build(QQ, [0, 1, 1], [{1: 1}, {}, {}])
    q, keep, _ = subcomplex_quotient(c, [{0: 1, }, {1: 1}])
    assert dims(q) == {1: 1}
    assert cohomology(c, 1).dimension == 1
