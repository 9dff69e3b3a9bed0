import random

import pytest

from dgquot.category import DGFunctor, dual_numbers, ground_category, validate
from dgquot.complexes import cohomology, cohomology_dims, cone_complex, is_acyclic
from dgquot.library import a0, build_example_i2
from dgquot.linalg import GF, QQ
from dgquot.modules import (LEFT, RIGHT, DGModule, ModuleMap, VarianceMismatch, bar_resolution, check_induced_image,
                            identity_map, in_right_orthogonal, induce, is_quasi_isomorphism, lind_res_cone,
                            module_hom, module_tensor, restrict, restrict_to, semi_free_resolve, yoneda,
                            zero_module)
from dgquot.randgen import random_table_category


def same_complex(a, b):
    return sorted(a.degrees) == sorted(b.degrees) and cohomology_dims(a) == cohomology_dims(b)


@pytest.fixture(scope="module")
def example():
    A, B, _ = build_example_i2()
    return A, B


def small_instances(n=20):
    return [random_table_category(s) for s in range(n)]


def test_yoneda_over_a_point():
    C = ground_category(QQ)
    h = yoneda(C, "*")
    assert list(h("*").degrees) == [0]
    assert not h.validate().failures


def test_yoneda_over_a0():
    A = a0()
    h = yoneda(A, "X2")
    assert list(h("X1").labels) == ["f"] and list(h("X2").labels) == ["id2"]
    with pytest.raises(KeyError):
        yoneda(A, "nope")


@pytest.mark.parametrize("seed", range(12))
def test_yoneda_modules_validate(seed):
    C = random_table_category(seed)
    for Y in C.objects:
        for var in (RIGHT, LEFT):
            assert not yoneda(C, Y, var).validate().failures


def test_validate_catches_a_broken_action():
    A = a0()
    h = yoneda(A, "X2")
    bad = DGModule(A, RIGHT, h.values, {k: {} for k in h.act}, "broken")
    assert bad.validate().failures


@pytest.mark.parametrize("seed", range(10))
def test_tensor_with_representables(seed):
    C = random_table_category(seed)
    for Y in C.objects:
        for X in C.objects:
            G = yoneda(C, X, RIGHT)
            Fm = yoneda(C, X, LEFT)
            # G (x) h~_Y = G(Y) and h_Y (x) F = F(Y)
            assert same_complex(module_tensor(G, yoneda(C, Y, LEFT)), G(Y))
            assert same_complex(module_tensor(yoneda(C, Y, RIGHT), Fm), Fm(Y))


def test_tensor_needs_right_then_left():
    C = a0()
    with pytest.raises(VarianceMismatch):
        module_tensor(yoneda(C, "X1", LEFT), yoneda(C, "X1", LEFT))


@pytest.mark.parametrize("seed", range(6))
def test_unit_property(seed):
    # Hom(-, -) (x)_A F = F: as a left module in the second slot, each value is h_Z (x) F = F(Z)
    C = random_table_category(seed)
    Fm = yoneda(C, C.objects[0], LEFT)
    total = sum(len(module_tensor(yoneda(C, Z, RIGHT), Fm)) for Z in C.objects)
    assert total == sum(len(Fm(Z)) for Z in C.objects)


def test_restrict_along_identity_is_equal():
    C = random_table_category(3)
    h = yoneda(C, C.objects[-1])
    r = restrict(DGFunctor.identity(C), h)
    assert r.values == h.values and r.act == h.act


def test_restrict_h_x2_to_cone_is_acyclic(example):
    A, B = example
    r = restrict_to(yoneda(A, "X2"), B)
    assert is_acyclic(r("Cf"))


@pytest.mark.parametrize("seed", range(20))
def test_induce_representable(seed):
    A = random_table_category(seed)
    sub = A.objects[:max(1, len(A.objects) - 1)]
    Bc = A.full_subcategory(sub)
    inc = DGFunctor.inclusion(Bc, A)
    for X in sub:
        ind = induce(inc, yoneda(Bc, X))
        h = yoneda(A, X)
        for Z in A.objects:
            assert same_complex(ind(Z), h(Z))
        assert not ind.validate().failures


@pytest.mark.parametrize("seed", range(20))
def test_induction_restriction_adjunction(seed):
    A = random_table_category(seed)
    rng = random.Random(seed)
    sub = sorted(rng.sample(list(A.objects), rng.randint(1, len(A.objects))))
    Bc = A.full_subcategory(sub)
    inc = DGFunctor.inclusion(Bc, A)
    window = (-3, 3)
    M = restrict(inc, yoneda(A, rng.choice(list(A.objects))))
    N = yoneda(A, rng.choice(list(A.objects)))
    lhs = module_hom(induce(inc, M), N, window)
    rhs = module_hom(M, restrict(inc, N), window)
    for n in range(window[0], window[1] + 1):
        assert len(lhs.basis_in_degree(n)) == len(rhs.basis_in_degree(n))
    assert cohomology_dims(lhs) == cohomology_dims(rhs)


def test_quasi_isomorphism_checks():
    A = a0()
    h = yoneda(A, "X2")
    assert is_quasi_isomorphism(identity_map(h), (-2, 2)).status == "yes"
    z = ModuleMap(zero_module(A), h, {X: [] for X in A.objects})
    v = is_quasi_isomorphism(z, (-2, 2))
    assert v.status == "no" and v.witness[1] == 0


@pytest.mark.parametrize("seed", range(12))
def test_semi_free_resolution_certificates(seed):
    A = random_table_category(seed, GF(5))
    window = (-2, 2)
    for Y in A.objects:
        P, phi, cert, rep = semi_free_resolve(yoneda(A, Y), 20, window)
        assert not cert.validate(P)
        assert cert.stages[0] == []
        assert not phi.validate()
        for (Z, n), ok in rep.cells.items():
            if ok:
                c = cone_complex(phi.component(Z))
                assert cohomology(c, n).dimension == 0 and cohomology(c, n - 1).dimension == 0
        assert rep.steps >= 1


def test_free_module_is_a_fixpoint():
    A = a0()
    P, phi, cert, rep = semi_free_resolve(yoneda(A, "X2"), 10, (-2, 2))
    assert [(g.obj, g.degree) for g in P.generators] == [("X2", 0)]
    assert all(rep.cells.values())


def test_acyclic_module_resolves_to_acyclic(example):
    A, B = example
    M = restrict_to(yoneda(A, "X2"), B)
    P, phi, cert, rep = semi_free_resolve(M, 10, (-2, 2))
    assert all(rep.cells.values())
    for Z in P.base.objects:
        assert is_acyclic(P.module()(Z))


def test_bar_resolution_of_the_ground_module():
    C = ground_category(QQ)
    M = yoneda(C, "*")
    Pm, aug, cert, rep = bar_resolution(M, 3, (-1, 1))
    assert rep.certificate_ok
    assert all(rep.cells.values())
    assert is_quasi_isomorphism(aug, (-1, 1)).status == "yes"


def test_bar_resolution_of_dual_numbers_module():
    C = dual_numbers(QQ, 1)
    M = yoneda(C, "*")
    L = 4
    Pm, aug, cert, rep = bar_resolution(M, L, (-2, 1))
    assert rep.certificate_ok
    assert not aug.validate()
    # certified cells agree with the quasi-isomorphism test on the same degrees
    for (Z, n), ok in rep.cells.items():
        if ok:
            assert is_quasi_isomorphism(aug, (n, n)).status == "yes"


def test_bar_stage_zero_is_not_certified():
    C = dual_numbers(QQ, 0)
    M = yoneda(C, "*")
    Pm, aug, cert, rep = bar_resolution(M, 0, (-1, 1))
    assert not all(rep.cells.values())


def test_bar_resolution_of_acyclic_restriction(example):
    A, B = example
    M = restrict_to(yoneda(A, "X2"), B)
    Pm, aug, cert, rep = bar_resolution(M, 3, (-1, 1))
    assert rep.certificate_ok
    for n in (-1, 0, 1):
        assert cohomology_dims(Pm("Cf")).get(n, 0) == 0


def test_orthogonality(example):
    A, B = example
    assert in_right_orthogonal("X2", B, (-3, 3), category=A).status == "yes"
    v = in_right_orthogonal("Cf", B, (-3, 3), category=A)
    assert v.status == "no" and v.witness == ("Cf", 0)
    assert in_right_orthogonal("X1", [], (-3, 3), category=A).status == "yes"
    assert in_right_orthogonal(yoneda(A, "X2"), B, (-3, 3)).status == "yes"


def test_lind_res_cone_examples(example):
    A, B = example
    window = (-2, 2)
    N, counit, rep = lind_res_cone(A, "X2", B, window)
    assert rep.orthogonal.status == "yes" and rep.certificate_ok
    for Z in ("X1", "X2"):
        assert cohomology_dims(N(Z)) == cohomology_dims(A.hom(Z, "X2"))
    N1, _, rep1 = lind_res_cone(A, "X1", B, window)
    assert rep1.orthogonal.status == "yes"
    for Z in ("X1", "X2"):
        got = {n: d for n, d in cohomology_dims(N1(Z)).items() if window[0] <= n <= window[1] and d}
        assert got == {0: 1}
    N0, _, rep0 = lind_res_cone(A, "X1", [], window)
    assert all(N0(Z).dims() == A.hom(Z, "X1").dims() for Z in A.objects)


def test_check_induced_image(example):
    A, B = example
    window = (-2, 2)
    v = check_induced_image(yoneda(A, "X2"), B, window)
    assert v.status == "no"
    assert check_induced_image(yoneda(A, "Cf"), B, window).status == "yes"
    assert check_induced_image(zero_module(A), B, window).status == "yes"
