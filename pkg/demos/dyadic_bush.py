# Dyadic step functions with exact integrals, and the canonical bush
# that the validator certifies.
#
# Run as:  python demos/dyadic_bush.py

from fractions import Fraction

from bairelab import (
    bush_check,
    cell_indicator,
    l1_norm,
    level_difference,
    rademacher_bush,
    step_combine,
)

F = Fraction

# A height-2^k indicator on a dyadic cell always integrates to one.
for k in (1, 3, 5):
    print(f"cell indicator at resolution {k}:",
          l1_norm(cell_indicator(k, 2, height=2**k)))

# The canonical bush: level k holds the 2^k scaled cell indicators.
bush = rademacher_bush(6)
print("levels:", [len(level) for level in bush.levels])

# Each parent is exactly the average of its two children.
mid = step_combine(F(1, 2), bush.entry(3, 1), F(1, 2), bush.entry(3, 2))
print("midpoint identity at (3,1):", mid == bush.entry(2, 1))

# The level-k alternating difference has constant modulus 2^k, so its
# integral is exactly 2^k: the strict lower bound holds for delta < 1
# and fails at delta = 1.
for k in range(1, 7):
    print(f"level {k} difference norm:", l1_norm(level_difference(bush, k)))

for delta in (F(1, 4), F(1, 2), F(99, 100), F(1)):
    print(f"bush_check at delta={delta}:", bush_check(bush, delta, 1).status)
