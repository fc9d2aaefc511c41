"""Two independent dimension probes: pair energies and content sums."""

import numpy as np

from limsup_lab import (
    DimensionFunction,
    PowerSequence,
    content_sum_criterion,
    energy,
    ifs_cover,
)

# E^s of the unit interval is finite for s < 1; at s = 0.5 the double
# integral evaluates to 8/3 by hand.
print("=== pair energies of the unit interval ===")
for s in (0.25, 0.5, 0.75, 1.0):
    r = energy("unit_interval", s=s, samples=2 * 10**5, seed=0)
    if r.divergent:
        print(f"  s={s}: divergent (s >= ambient dimension)")
    else:
        print(f"  s={s}: E = {r.energy:.4f} +- {r.standard_error:.4f}")
print(f"  hand value at s=0.5: {8 / 3:.4f}")

print("\n=== energy localizes: a middle-thirds generation ===")
gen = ifs_cover((1 / 3, 1 / 3), 5)
sub = energy("unit_interval", s=0.5, samples=10**5, seed=1)
print(f"  unit interval  E^0.5 = {sub.energy:.4f}")
print(f"  finite generation has {gen.element_count} intervals of length "
      f"{float(2 * gen.halves[0, 0]):.5f}")

print("\n=== content sums against radius rules ===")
rule = PowerSequence(1.0, 2.0)
for s in (0.4, 0.5, 0.6):
    rep = content_sum_criterion(rule, DimensionFunction.power(s))
    print(f"  gauge r^{s}: sum {rep.series.classification:<12} -> {rep.conclusion}")

rep = content_sum_criterion(rule, DimensionFunction.power(0.6))
print(f"\nscaled-gauge constant for the lower bound: {rep.lower_constant:.6f} "
      f"(= (1/2)^0.6 = {0.5**0.6:.6f})")

# finite covers always give finite sums; the criterion reports it as such
gen_report = content_sum_criterion(gen, DimensionFunction.power(0.63))
print(f"finite cover content sum: {gen_report.series.classification}, "
      f"{gen_report.conclusion}")
