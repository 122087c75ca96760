"""The LCK criterion: |sigma_{s+1}(u)| = ... = |sigma_{s+t}(u)| on generators.

Equality is decided exactly. Both sides are roots of an integer polynomial
built from the minimal polynomial of u, so enclosures that overlap below
that polynomial's root-separation bound prove equality.
"""

from otlck import NumberField
from otlck.lckcheck import classify_signature, compare_moduli, lck_criterion
from otlck.loglattice import UnitSubgroup

cubic = NumberField([-1, -1, 0, 1])
print("t = 1:", lck_criterion(UnitSubgroup(cubic, [cubic.gen])).status, classify_signature(1, 1))

quintic = NumberField([-1, -1, 0, 0, 0, 1])
c = compare_moduli(quintic.gen, 2, 3)
print("x^5 - x - 1, |sigma_2(x)| vs |sigma_3(x)|:", c.decision.value, "at", c.precision_bits, "bits")
print("criterion:", lck_criterion(UnitSubgroup(quintic, [quintic.gen])).status, classify_signature(1, 2))

# in the octic, units from the quartic subfield Q(x^2) satisfy the criterion
octic = NumberField([1, 0, -1, 0, 4, 0, -4, 0, 1])
x = octic.gen
c = compare_moduli(x ** 2, 5, 6)
print("octic, |sigma_5(x^2)| vs |sigma_6(x^2)|:", c.decision.value,
      f"(separation 2^-{c.separation_bits}, decided at {c.precision_bits} bits)")
v = lck_criterion(UnitSubgroup(octic, [x ** 2, (x ** 2 - 1) ** 2]))
print("subfield units:", v.status, "  with (x-1)^2 added:",
      lck_criterion(UnitSubgroup(octic, [x ** 2, (x - 1) ** 2])).status)
print("signature (4, 2):", classify_signature(4, 2))
