"""
q-expansions from point counts
==============================

a_p = p + 1 - #E(F_p) at good primes, extended to all n by the Hecke
recurrence and multiplicativity.
"""

from ellcensus import an_table, load_registry, q_expansion_text

for label, curve in load_registry().items():
    table = an_table(curve, 30)
    print(f"{label:8s} {q_expansion_text(table, 30)} + ...   (bad primes {list(table.bad_primes)})")

###############################################################################
# For a CM curve half of the a_p vanish.

table = an_table(load_registry()["1728.n4"], 2000)
zeros = sum(1 for p in range(5, 2000) if all(p % d for d in range(2, int(p**0.5) + 1)) and table[p] == 0)
print(f"supersingular good primes below 2000: {zeros}")
