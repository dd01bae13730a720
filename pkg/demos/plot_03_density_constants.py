"""
Euler-product densities
=======================

The Koblitz constant converges absolutely, so a partial product and an
explicit tail bound trap it.  The quartic-twist product only converges
conditionally and comes with a heuristic error bar instead.
"""

from ellcensus.density import P0_REFERENCE, delta_quartic_twist, delta_serre, koblitz_constant

for limit in (10**3, 10**4, 10**5, 10**6):
    b = koblitz_constant(limit)
    print(f"L=1e{len(str(limit)) - 1}  [{b.lower:.12f}, {b.upper:.12f}]  width={b.width:.2e}")
print(f"reference value          {P0_REFERENCE:.12f}")

###############################################################################
# A Serre curve whose discriminant field is Q(sqrt(-3)) picks up the exact
# factor 10/9.

b = delta_serre(-3)
print(f"delta_serre(-3) in [{b.lower:.12f}, {b.upper:.12f}]")

###############################################################################
# Partial products of the quartic-twist density at growing limits.

for limit in (10**5, 10**6, 10**7):
    q = delta_quartic_twist(limit)
    print(f"L=1e{len(str(limit)) - 1}  {q.value:.8f} +- {q.width / 2:.1e}")
