"""
Semi-free resolutions of modules and of categories
"""
from dgquot import yoneda, restrict, semi_free_resolve, bar_resolution, cohomology
from dgquot.category import DGFunctor, dual_numbers
from dgquot.complexes import cohomology_dims
from dgquot.linalg import QQ
from dgquot.library import build_example_i2

A, B, _ = build_example_i2()
Bcat = A.full_subcategory(B)

# restrict Hom(-, X1) to the cone subcategory and resolve it
M = restrict(DGFunctor.inclusion(Bcat, A), yoneda(A, "X1"))
P, phi, cert, report = semi_free_resolve(M, 20, (-3, 3))
for g in P.generators:
    print("generator", g.name, "on", g.obj, "in degree", g.degree, "stage", g.stage)
print("certificate:", report.certificate_ok, "steps:", report.steps)

# the same module via the bar construction, truncated at length 3
Pb, aug, cert_b, rep_b = bar_resolution(M, 3, (-2, 2))
print("bar generators per length:", rep_b.generators_per_step, "certified cells:", sum(rep_b.cells.values()))

"""
Dual numbers: a module with infinitely many bar generators
"""
# With x in degree 0 a bar word of length k sits in degree -k, so each extra
# letter makes the augmentation a quasi-isomorphism one degree further down.
K = dual_numbers(QQ, 0)
print(cohomology_dims(K.hom("*", "*")))
for L in (1, 2, 3, 4):
    Pb, aug, cert_b, rep_b = bar_resolution(yoneda(K, "*"), L, (-2, 1))
    print(L, rep_b.generators_per_step, sorted(n for (Z, n), ok in rep_b.cells.items() if ok))

"""
Free categories: the semi-free model K of the interval category
"""
from dgquot.free import check_quasi_equivalence_free
from dgquot.library import i2, k_resolution, k_broken, k_to_i2

Kf = k_resolution()
print([(g.name, g.source, g.target, g.degree) for g in Kf.generators])
print(check_quasi_equivalence_free(k_to_i2(Kf, i2()), (-3, 3)).status)
print(k_to_i2(k_broken(), i2()).validate().failures[:1])
