"""Seeded random covering of the circle: when do the tails cover everything?

Radius rules r_i = c * i^-a sit on either side of a sharp threshold: the
tail unions keep covering the whole space when the radius series diverges
and shrink to sparse dust when it converges.
"""

from limsup_lab import (
    PowerSequence,
    exponent_of_convergence,
    random_cover,
    random_cover_dim,
    tail_coverage,
)

N = 10**5
SEED = 7

for label, rule in [("r_i = 1/(2i)", PowerSequence(0.5, 1.0)),
                    ("r_i = i^-2", PowerSequence(1.0, 2.0))]:
    sample, _ = random_cover(rule, N=N, k=1, seed=SEED)
    print(f"=== {label}, {N} balls, seed {SEED} ===")
    M = 10
    while M <= N:
        cov = tail_coverage(sample, M, N)
        print(f"  tail from i={M:<7} covers {cov.value:.6f}")
        M *= 10
    exp = exponent_of_convergence(rule)
    print(f"  exponent of convergence: {exp.value}"
          + ("" if exp.exact else f" +- {exp.half_width:.3f}"))
    print(f"  predicted covering-set dimension: {random_cover_dim(exp.value)}")
    print()

# the same exponent recovered blind, from the radii alone
radii = PowerSequence(1.0, 2.0).eval_many(range(1, 2001))
fit = exponent_of_convergence(radii)
print(f"fit from 2000 raw radii: {fit.value:.4f} +- {fit.half_width:.4f} "
      f"(exact value 0.5)")
