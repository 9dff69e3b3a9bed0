"""
Quotients commute with tensoring by dual numbers
"""
# A (x) k[e] modulo B (x) k[e] should have Ext equal to Ext of A/B tensored
# with Ext of k[e], which is one-dimensional in degrees 0 and 1.
from dgquot import drinfeld_quotient, quotient_ext, tensor_categories, ext_table, exact_degrees
from dgquot.category import dual_numbers
from dgquot.linalg import QQ
from dgquot.library import build_example_i2

A, B, _ = build_example_i2()
K = dual_numbers(QQ, 1)
AK = tensor_categories(A, K)
BK = [f"{U}|*" for U in B]
Q, QK = drinfeld_quotient(A, B), drinfeld_quotient(AK, BK)
kt = ext_table(K, "*", "*", (-6, 6))
print("Ext of dual numbers:", {n: v for n, v in kt.as_dict().items() if v})

for X in ("X1", "X2"):
    for Y in ("X1", "X2"):
        base = quotient_ext(Q, X, Y, (-4, 3), 6)
        want = {n: sum(base[i] * kt[n - i] for i in base.degrees() if -6 <= n - i <= 6) for n in range(-3, 4)}
        got = quotient_ext(QK, f"{X}|*", f"{Y}|*", (-3, 3), 3)
        print(X, Y, "certified", got.certified_degrees(),
              "agree:", all(got[n] == want[n] for n in got.certified_degrees()))

# Into X1 from X2 most degrees stay uncertified: the cone of f now has a
# degree-0 self-map in cohomology, so longer words never stop contributing.
print(exact_degrees(AK, BK, "X2|*", "X1|*", (-3, 3), 3))
