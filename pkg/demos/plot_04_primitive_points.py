"""
Detecting primitive points
==========================

On a cyclic E(F_p) a point generates the group iff no (n/q) multiple
vanishes.  The same verdict comes out of division polynomials and out of two
character-sum identities built on discrete logarithms.
"""

from ellcensus import get_curve, reduce
from ellcensus.characters import EllipticChar, lucas_primitive_test, psi_divisor, psi_divisor_free
from ellcensus.divpoly import DivPolyContext
from ellcensus.order import group_order, point_order

E = reduce(get_curve("1728.w1"), 103)
n = group_order(E)
char = EllipticChar.for_curve(E, n)
ctx = DivPolyContext(E)
print(f"E(F_103) has order {n}; anchor T = {char.T}")

shown = 0
for P in E.points():
    row = (
        point_order(E, P, n) == n,
        lucas_primitive_test(E, P, n),
        ctx.primitive_test(P, n),
        psi_divisor(char, P),
        psi_divisor_free(char, P),
    )
    if shown < 8:
        print(P, row)
        shown += 1

###############################################################################
# Summed over the group, the indicator counts generators: phi(n).

total = sum(psi_divisor(char, P, exact=True) for P in [None, *E.points()])
print(f"generators: {total}")
