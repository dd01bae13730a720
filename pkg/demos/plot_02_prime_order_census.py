"""
Which primes give a group of prime order?
=========================================

Sweep p <= x for the four registry curves and compare the number of primes
with #E(F_p)/t prime against the Koblitz-style predicted counts.
"""

from ellcensus import load_registry, run_census

registry = load_registry()
x = 20000

###############################################################################
# t is the fixed divisor forced by rational torsion (and CM); dividing by it
# is what leaves room for a prime quotient.  For t = 1 the integral form
# integrates dt / (t log(t + 1)), which only grows like log log x, so the
# leading term x / log^2 x is the one to compare with the count.

for label, t in (("1728.n4", 1), ("1728.w1", 1), ("32.a3", 8), ("36a1", 12)):
    report = run_census(registry[label], x, t=t)
    print(
        f"{label:8s} t={t:2d}  counted={report.pi_count:4d}  "
        f"leading={report.predicted:8.1f}  integral={report.predicted_integral:8.1f}  "
        f"sum 1/p={report.brun_partial:.6f}"
    )

###############################################################################
# Prime-power quotients show up too; the n = 81 at p = 73 is the first one
# that is not prime itself but a power of 3.

report = run_census(registry["1728.n4"], 1000, mode="prime_power")
for r in report.counted:
    if r.primality_class != "prime":
        print(f"p={r.p}  n={r.n}  ({r.primality_class})")
