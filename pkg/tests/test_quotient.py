import itertools

import pytest

from dgquot.category import (DGFunctor, check_quasi_equivalence, ground_category, one_object, validate)
from dgquot.complexes import class_rank, cohomology, is_acyclic
from dgquot.library import build_example_i2, point_example
from dgquot.linalg import GF, QQ
from dgquot.pretr import TwistedComplex, cone_of_morphism, ext_tr, pretr_functor_table
from dgquot.quotient import (BlowupError, cone_formula_ext, cross_check, drinfeld_quotient, exact_degrees, quotient_ext,
                             quotient_hom_truncated, verdier_ext_via_orthogonal)
from dgquot.randgen import random_instance, random_table_category


@pytest.fixture(scope="module")
def example():
    return build_example_i2()


def singletons(A):
    return {X: TwistedComplex.singleton(A, X) for X in A.objects}


def expected_graded_dims(A, B, X, Y, n, deg_range):
    """Dimension of the level-n piece per degree, as a sum over B-tuples of tensor products of Hom dims."""
    out = {}
    lo, hi = deg_range
    if n == 0:
        for k in A.hom(X, Y).degrees:
            if lo <= k <= hi:
                out[k] = out.get(k, 0) + 1
        return out
    for Us in itertools.product(B, repeat=n):
        chain = [X, *Us, Y]
        factors = [A.hom(chain[i], chain[i + 1]).degrees for i in range(len(chain) - 1)]
        for combo in itertools.product(*factors):
            k = sum(combo) - n
            if lo <= k <= hi:
                out[k] = out.get(k, 0) + 1
    return out


def test_unknown_subcategory_object():
    with pytest.raises(KeyError):
        drinfeld_quotient(ground_category(QQ), ["nope"])


@pytest.mark.parametrize("seed", range(10))
def test_truncations_are_complexes(seed):
    A, B = random_instance(seed)
    Q = drinfeld_quotient(A, B)
    for X in A.objects:
        for Y in A.objects:
            fh = quotient_hom_truncated(Q, X, Y, 3, (-2, 2))
            assert fh.complex.d_squared_zero()


def test_example_truncations_are_complexes(example):
    A, B, _ = example
    Q = drinfeld_quotient(A, B)
    for X in A.objects:
        for Y in A.objects:
            assert quotient_hom_truncated(Q, X, Y, 5, (-3, 3)).complex.d_squared_zero()


@pytest.mark.parametrize("seed", range(10))
def test_graded_dimensions_match_tuple_count(seed):
    A, B = random_instance(seed)
    Q = drinfeld_quotient(A, B)
    window = (-2, 2)
    rng = (window[0] - 1, window[1] + 1)
    for X in A.objects:
        for Y in A.objects:
            gd = quotient_hom_truncated(Q, X, Y, 3, window).graded_dims()
            for n in range(4):
                assert gd.get(n, {}) == expected_graded_dims(A, B, X, Y, n, rng)


def test_example_level_one_dims(example):
    A, B, _ = example
    Q = drinfeld_quotient(A, B)
    gd = quotient_hom_truncated(Q, "X1", "X1", 1, (-4, 4)).graded_dims()
    assert gd[1] == expected_graded_dims(A, B, "X1", "X1", 1, (-5, 5))


def test_level_zero_is_hom_a(example):
    A, B, _ = example
    Q = drinfeld_quotient(A, B)
    for X in A.objects:
        for Y in A.objects:
            c = quotient_hom_truncated(Q, X, Y, 0, (-3, 3)).complex
            h = A.hom(X, Y)
            assert sorted(c.degrees) == sorted(h.degrees)
            assert [len(col) for col in c.d] == [len(col) for col in h.d]


def test_empty_b_has_no_higher_levels():
    A = random_table_category(2)
    Q = drinfeld_quotient(A, [])
    for X in A.objects:
        for Y in A.objects:
            for n in (1, 2, 3):
                assert Q.words(X, Y, n) == []


def test_point_words_and_differential():
    A, B = point_example()
    Q = drinfeld_quotient(A, B)
    fh = quotient_hom_truncated(Q, "*", "*", 4, (-4, 0))
    assert fh.graded_dims() == {n: {-n: 1} for n in range(5)}
    for n in range(1, 5):
        (w,) = Q.words("*", "*", n)
        dw = Q.d_word(w)
        if n % 2:
            assert len(dw) == 1 and len(next(iter(dw))) == n and abs(int(next(iter(dw.values())))) == 1
        else:
            assert dw == {}


def test_point_quotient_is_zero():
    A, B = point_example()
    Q = drinfeld_quotient(A, B)
    t = quotient_ext(Q, "*", "*", (-5, 2), 8)
    assert t.as_dict() == {n: 0 for n in range(-5, 3)}
    assert t.all_stable
    tb = cone_formula_ext(A, B, "*", "*", (-5, 2), 8, route="bar")
    assert tb.as_dict() == t.as_dict()


def test_i2_positive_levels_acyclic_into_x2(example):
    A, B, _ = example
    Q = drinfeld_quotient(A, B)
    for X in ("X1", "X2"):
        fh = quotient_hom_truncated(Q, X, "X2", 4, (-3, 3))
        for n in range(1, 5):
            piece = fh.graded_piece(n)
            for k in range(-3, 4):
                assert cohomology(piece, k).dimension == 0


def test_i2_ext_tables_all_pipelines(example):
    A, B, expected = example
    Q = drinfeld_quotient(A, B)
    window = (-3, 3)
    for (X, Y), want in expected.items():
        tq = quotient_ext(Q, X, Y, window, 8)
        assert tq.as_dict() == want.as_dict() and tq.all_stable
        for route in ("bar", "semifree"):
            assert cone_formula_ext(A, B, X, Y, window, 6, route=route).as_dict() == want.as_dict()
        tv = verdier_ext_via_orthogonal(A, B, X, Y, window)
        assert tv.as_dict() == want.as_dict()
        assert all(tv.certified.values())


def test_f_spans_ext0(example):
    A, B, _ = example
    Q = drinfeld_quotient(A, B)
    fh = quotient_hom_truncated(Q, "X1", "X2", 4, (-1, 1))
    c = fh.complex
    f_idx = A.hom("X1", "X2").index[(0, 0, "f")]
    i = c.index[(("X1", "X2", f_idx),)]
    assert class_rank(c, 0, [{i: QQ(1)}]) == 1


@pytest.mark.parametrize("seed", range(6))
def test_empty_b_gives_ext_tr(seed):
    A = random_table_category(seed)
    tcs = singletons(A)
    Q = drinfeld_quotient(A, [])
    window = (-2, 2)
    for X in A.objects:
        for Y in A.objects:
            want = ext_tr(tcs[X], tcs[Y], window).as_dict()
            assert quotient_ext(Q, X, Y, window, 2).as_dict() == want
            assert cone_formula_ext(A, [], X, Y, window).as_dict() == want
            assert verdier_ext_via_orthogonal(A, [], X, Y, window).as_dict() == want


def test_verdier_on_orthogonal_target(example):
    A, B, _ = example
    tcs = singletons(A)
    for X in ("X1", "X2"):
        t = verdier_ext_via_orthogonal(A, B, X, "X2", (-3, 3))
        assert t.as_dict() == ext_tr(tcs[X], tcs["X2"], (-3, 3)).as_dict()
        assert all(t.certified.values())
        assert "B-orthogonality: yes" in t.notes


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
def test_cross_check_random(seed):
    A, B = random_instance(seed)
    rep = cross_check(A, B, window=(-2, 2), max_level=4)
    assert rep.ok, rep.discrepancies


def test_blowup_guard(example):
    A, B, _ = example
    Q = drinfeld_quotient(A, B, cap=10)
    with pytest.raises(BlowupError):
        quotient_hom_truncated(Q, "X1", "X1", 6, (-6, 6))


def test_gf2_example_matches():
    A, B, expected = build_example_i2(GF(2))
    Q = drinfeld_quotient(A, B)
    for (X, Y), want in expected.items():
        assert quotient_ext(Q, X, Y, (-3, 3), 6).as_dict() == want.as_dict()


# ---------------------------------------------------------------- extension to twisted complexes

def _fat_point(F):
    """End = k.id + k.a + k.b with a of degree -1, d a = b, all products of a, b zero."""
    return one_object(F, [0, -1, 0], ["id", "a", "b"], [{}, {2: F(1)}, {}],
                      {(0, 0): {0: F(1)}, (0, 1): {1: F(1)}, (1, 0): {1: F(1)},
                       (0, 2): {2: F(1)}, (2, 0): {2: F(1)}}, name="fat point")


@pytest.mark.parametrize("F", [QQ, GF(5)])
def test_quasi_equivalence_extends_to_twisted_complexes(F):
    T = _fat_point(F)
    assert validate(T).ok
    k = ground_category(F)
    Fn = DGFunctor(T, k, {"*": "*"}, {("*", "*"): [{0: F(1)}, {}, {}]}, "collapse")
    window = (-3, 3)
    assert check_quasi_equivalence(Fn, window).status == "yes"
    objects = {
        "P": TwistedComplex.singleton(T, "*"),
        "P1": TwistedComplex.singleton(T, "*", 1),
        "Cb": cone_of_morphism(T, "*", "*", {2: F(1)}, "Cb"),
        "C2": cone_of_morphism(T, "*", "*", {0: F(2), 2: F(1)}, "C2"),
        "Cid": cone_of_morphism(T, "*", "*", {0: F(1)}, "Cid"),
    }
    for t in objects.values():
        assert len(t.summands) <= 3
    G = pretr_functor_table(Fn, objects)
    assert validate(G.source).ok and validate(G.target).ok
    assert check_quasi_equivalence(G, window).status == "yes"


@pytest.mark.parametrize("seed", range(15))
def test_exact_degrees_agree_with_deeper_truncations(seed):
    A, B = random_instance(seed)
    Q = drinfeld_quotient(A, B)
    window = (-2, 2)
    for X in A.objects:
        for Y in A.objects:
            for N in (0, 1, 2):
                exact = exact_degrees(A, B, X, Y, window, N)
                if not exact:
                    continue
                low = quotient_hom_truncated(Q, X, Y, N, window).complex
                high = quotient_hom_truncated(Q, X, Y, N + 3, window).complex
                for n in exact:
                    assert cohomology(low, n).dimension == cohomology(high, n).dimension


def test_exact_degrees_on_the_example(example):
    A, B, _ = example
    assert exact_degrees(A, B, "X1", "X2", (-3, 3), 0) == list(range(-3, 4))
    assert exact_degrees(A, B, "X2", "X1", (-3, 3), 2) == [0, 1, 2, 3]
    assert exact_degrees(A, B, "X2", "X1", (-3, 3), 5) == list(range(-3, 4))
