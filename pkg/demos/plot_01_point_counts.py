"""
Counting points on a curve over F_p
===================================

Reduce y^2 = x^3 + 2 modulo a few primes, count points two ways and look at
the group each count describes.
"""

from ellcensus import get_curve, reduce
from ellcensus.order import group_structure, order_bsgs, order_exhaustive

curve = get_curve("1728.n4")
print(curve)

###############################################################################
# Small fields: the Legendre sum and baby-step giant-step agree.

for p in (5, 7, 13, 19, 103, 1009):
    E = reduce(curve, p)
    n = order_exhaustive(E)
    s = group_structure(E, n)
    print(f"p={p:5d}  #E={n:5d}  a_p={p + 1 - n:4d}  bsgs={order_bsgs(E):5d}  Z/{s.n1} x Z/{s.n2}")

###############################################################################
# Large fields need the Hasse-interval search.  For this curve every prime
# p = 2 mod 3 is supersingular, so #E = p + 1 there.

for p in (1000003, 99999989, 1000000007):
    n = order_bsgs(reduce(curve, p))
    print(f"p={p}  #E={n}  p + 1 - #E = {p + 1 - n}")
