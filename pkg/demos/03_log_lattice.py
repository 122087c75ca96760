"""Logarithmic embedding, the Dirichlet hyperplane and certified ranks."""

from otlck import NumberField
from otlck.intervals import fraction_to_decimal
from otlck.loglattice import UnitSubgroup, dirichlet_residual, log_embedding, subgroup_rank

K = NumberField([1, 0, -1, 0, 4, 0, -4, 0, 1])
x = K.gen
units = [x ** 2, (x - 1) ** 2, (x + 1) ** 2]

for u in units:
    v = log_embedding(u, 128)
    mids = ", ".join(fraction_to_decimal(e.mid, 6) for e in v.entries)
    r = dirichlet_residual(v)
    print(f"l({u}) = ({mids})   residual contains 0: {r.contains_zero()}")

print(subgroup_rank(UnitSubgroup(K, units)))

# (x^2 - 1)^2 = (x - 1)^2 (x + 1)^2: the relation is found by LLL and verified exactly
r = subgroup_rank(UnitSubgroup(K, units + [(x ** 2 - 1) ** 2]))
print("rank", r.rank, "relations", r.relations)
