"""Desk-scale audit for a signature (4, 2) field found by randomized search.

Every totally positive u = prod g_i^e_i with |e_i| <= 2 is checked against
the modulus chain. Each unit that satisfies it is trapped either in a proper
subfield or on a hyperplane x_1 + x_j = x_k + x_l. The satisfiers span a
lattice of rank below s = 4.
"""

from otlck.lckcheck import nolck_audit, subfield_rank_bound
from otlck.loglattice import UnitSubgroup
from otlck.search import find_field

found = find_field((4, 2), seed=0, even=True)
K = found.field
x = K.gen
print(K, " irreducibility primes:", found.primes, " tries:", found.tries)

gens = list(found.units) + ([(x + 1) ** 2] if (x + 1).is_unit() else [])
report = nolck_audit(UnitSubgroup(K, gens), box=2, precision_bits=256)
print(f"enumerated {report.enumerated}, totally positive {report.totally_positive}, "
      f"satisfiers {len(report.satisfiers)}")
for s in report.satisfiers[:6]:
    c = s.classification
    print("  ", s.exponents, c.kind, "degree", c.degree, "signature", c.subfield_signature, "rank", c.subfield_rank)
print("satisfier rank:", report.satisfier_rank.rank, "->", report.conclusion)

print("index-2 subfields of a (4,2) octic:")
for row in subfield_rank_bound(8, 2, 4, 2):
    print("  ", row.signature, "unit rank", row.rank, "< 4:", row.satisfies_bound)
