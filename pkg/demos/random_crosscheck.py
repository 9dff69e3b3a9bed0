"""
Cross-checking the quotient pipelines on random small categories
"""
# Each seed gives a category over F_5 with at most three objects, Hom spaces
# of dimension at most three in degrees -1..1, and one object to kill.
import time
from dgquot import cross_check
from dgquot.randgen import random_instance

t0 = time.time()
cells = 0
for seed in range(10):
    A, B = random_instance(seed)
    r = cross_check(A, B, window=(-2, 2), max_level=4)
    n = sum(len(r.agreed(p)) for p in r.tables)
    cells += n
    print(seed, A.objects, "kill", B, "agreed cells:", n, "discrepancies:", r.discrepancies)
print(cells, "cells certified by at least two pipelines", round(time.time() - t0, 1), "s")

"""
Certified versus stable
"""
# A degree is only compared when two pipelines certify it. A truncated
# pipeline certifies a degree once consecutive truncations agree there, or
# once an exactness argument shows deeper truncations cannot change it.
A, B = random_instance(7)
r = cross_check(A, B, window=(-2, 2), max_level=4)
for pair, tables in list(r.tables.items())[:2]:
    for name, t in tables.items():
        print(pair, name, t.as_dict(), t.certified_degrees())
