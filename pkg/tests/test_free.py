import itertools
import pytest

from dgquot.category import dual_numbers, ext_table, validate, discrete_category
from dgquot.free import (FreeCategory, FreeFunctor, Generator, NonComposable, check_quasi_equivalence_free,
                         free_category, free_to_table, semi_free_resolve_category)
from dgquot.library import a0_free, i2, k_broken, k_resolution, k_to_i2
from dgquot.linalg import GF, QQ


def brute_words(Q, X, Y, max_len):
    """Every composable word X -> Y with at most max_len letters, by exhaustive product."""
    names = [g.name for g in Q.generators]
    out = set()
    for n in range(max_len + 1):
        for w in itertools.product(names, repeat=n):
            cur = X
            ok = True
            for name in reversed(w):
                g = Q.gen[name]
                if g.source != cur:
                    ok = False
                    break
                cur = g.target
            if ok and cur == Y:
                out.add(w)
    return out


def test_empty_quiver_is_the_ground_field():
    Q = free_category(QQ, ["*"], [])
    assert Q.words("*", "*", 10) == [()]
    assert Q.ext_table("*", "*", (-2, 2)).as_dict() == {-2: 0, -1: 0, 0: 1, 1: 0, 2: 0}


def test_single_arrow():
    Q = a0_free()
    assert Q.words("X1", "X2", 10) == [("f",)]
    assert Q.words("X2", "X1", 10) == []
    t = Q.ext_table("X1", "X2", (-3, 3))
    assert t.as_dict() == {n: int(n == 0) for n in range(-3, 4)}
    assert t.all_stable


def test_k_is_valid_and_weights_filter():
    K = k_resolution()
    assert K.validate(max_weight=7).ok
    assert K.weights == {"f": 1, "g": 1, "a1": 2, "a2": 2, "u": 3}
    for X in K.objects:
        for Y in K.objects:
            for W in range(1, 7):
                h = K.hom_truncated(X, Y, W, (-3, 3))
                assert h.d_squared_zero()


@pytest.mark.parametrize("X,Y", [("X1", "X1"), ("X1", "X2"), ("X2", "X2")])
def test_word_enumeration_matches_brute_force(X, Y):
    K = k_resolution()
    max_len = 4
    ours = {w for w in K.words(X, Y, 3 * max_len) if len(w) <= max_len}
    assert ours == brute_words(K, X, Y, max_len)
    deg0 = [w for w in ours if K.word_degree(w) == 0]
    assert len(deg0) == len([w for w in brute_words(K, X, Y, max_len) if K.word_degree(w) == 0])


def test_hom_dimensions_monotone_in_weight():
    K = k_resolution()
    prev = None
    for W in range(1, 9):
        dims = [len(K.hom_truncated("X1", "X2", W, (-3, 3)).basis_in_degree(n)) for n in range(-3, 4)]
        if prev is not None:
            assert all(a >= b for a, b in zip(dims, prev))
        prev = dims


def test_d_squared_and_composability_errors():
    with pytest.raises(NonComposable):
        free_category(QQ, ["X", "Y"], [("f", "X", "Y", 0), ("h", "X", "Y", -1)], {"h": {("f", "f"): 1}})
    # d e = a with a not closed: d^2 e = b != 0
    with pytest.raises(ValueError, match="d\\^2"):
        free_category(QQ, ["X"], [("b", "X", "X", 1), ("a", "X", "X", 0), ("e", "X", "X", -1)],
                      {"a": {("b",): 1}, "e": {("a",): 1}})
    # d^2 = 0 but the word in d has the wrong degree
    with pytest.raises(ValueError):
        free_category(QQ, ["X"], [("a", "X", "X", 0), ("e", "X", "X", 0)], {"e": {("a",): 1}})


def test_opposite_reverses_arrows_and_preserves_ext():
    K = k_resolution()
    Kop = K.opposite()
    assert {(g.name, g.source, g.target) for g in Kop.generators} == \
        {(g.name, g.target, g.source) for g in K.generators}
    assert Kop.validate().ok
    for X in K.objects:
        for Y in K.objects:
            assert K.ext_table(X, Y, (-2, 2)).as_dict() == Kop.ext_table(Y, X, (-2, 2)).as_dict()
    A0op = a0_free().opposite()
    assert [(g.source, g.target) for g in A0op.generators] == [("X2", "X1")]


def test_k_ext_matches_i2():
    K = k_resolution()
    for X in K.objects:
        for Y in K.objects:
            t = K.ext_table(X, Y, (-3, 3), max_weight=8)
            for n in t.degrees():
                if t.stable[n]:
                    assert t[n] == int(n == 0)
            t = K.ext_table(X, Y, (-3, 3), max_weight=12)
            assert t.all_stable
            assert t.as_dict() == {n: int(n == 0) for n in range(-3, 4)}


def test_k_to_i2_is_a_quasi_equivalence():
    K = k_resolution()
    Fn = k_to_i2(K, i2())
    assert Fn.validate().ok
    v = check_quasi_equivalence_free(Fn, (-3, 3))
    assert v.status == "yes"


def test_broken_k_functor_is_rejected():
    Kb = k_broken()
    Fn = k_to_i2(Kb, i2())
    rep = Fn.validate()
    assert not rep.ok
    assert any("a1" in w for w in rep.failures)


def test_free_to_table_roundtrip_ext():
    for F in (QQ, GF(3)):
        Q = free_category(F, ["A", "B", "C"], [("x", "A", "B", 0), ("y", "B", "C", 0), ("h", "A", "C", -1)],
                          {"h": {("y", "x"): 1}})
        T = free_to_table(Q)
        assert validate(T).ok
        for X in Q.objects:
            for Y in Q.objects:
                assert T.hom(X, Y).dims() == Q.hom_truncated(X, Y, 10, (-5, 5)).dims()
                assert ext_table(T, X, Y, (-2, 2)).as_dict() == Q.ext_table(X, Y, (-2, 2)).as_dict()


def test_resolve_discrete_category_is_stage_zero():
    C = discrete_category(QQ, ["P", "Q"])
    Q, Fn, rep = semi_free_resolve_category(C, 5, (-2, 2))
    assert Q.generators == ()
    assert all(rep.cells.values())


@pytest.mark.parametrize("name", ["i2", "dual"])
def test_resolve_category_reproduces_ext(name):
    C = i2() if name == "i2" else dual_numbers(QQ, 1)
    window = (-2, 2)
    Q, Fn, rep = semi_free_resolve_category(C, 8, window)
    assert Fn.validate().ok
    assert Q.validate(max_weight=5).ok
    for X in C.objects:
        for Y in C.objects:
            want = ext_table(C, X, Y, window).as_dict()
            got = Q.ext_table(X, Y, window)
            for n in range(window[0], window[1] + 1):
                if rep.cells[(X, Y, n)]:
                    assert got[n] == want[n]
    assert rep.certified
