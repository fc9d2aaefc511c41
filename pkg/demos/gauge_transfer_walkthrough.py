"""From one measure statement to many: transforms and full dichotomies."""

import numpy as np

from limsup_lab import (
    ApproxFunction,
    BallSpec,
    DimensionFunction,
    IndexFamily,
    PowerSequence,
    ResonantFamily,
    ball_f_transform,
    dichotomy_verdict,
    theta_transform,
    upsilon_transform,
)

# A ball shrinks or grows under a gauge depending on which side of the
# volume exponent the gauge sits.
print("=== ball transforms in k = 2 ===")
ball = BallSpec(center=(0.3, 0.7), radius=1e-4, k=2)
for s in (1.0, 2.0, 3.0):
    out = ball_f_transform(ball, DimensionFunction.power(s))
    trend = "grows" if out.radius > ball.radius else ("fixed" if s == 2 else "shrinks")
    print(f"  gauge r^{s}: radius {ball.radius:.1e} -> {out.radius:.1e}  ({trend})")

print("\n=== neighborhood girth rules around planes ===")
fam = ResonantFamily(k=3, l=2, upsilon=PowerSequence(0.25, 2.0))
rule = upsilon_transform(fam, DimensionFunction.power(2.5))
ns = np.arange(1, 6, dtype=float)
print(f"  transformed girths: {np.round(rule.eval_many(ns), 6).tolist()}")
print(f"  exact power rule: coef {rule.coef}, decay {rule.decay}")

print("\n=== modulus-indexed rescaling ===")
theta = theta_transform(ApproxFunction.power(3.0), DimensionFunction.power(2.5),
                        n=3, m=1)
qs = np.arange(1, 9, dtype=float)
print(f"  theta(q) for q=1..8: {np.round(theta.eval_moduli(qs), 6).tolist()}")
print(f"  behaves like q^-{theta.approx.tau}")

# Full verdicts. Exit-style outcomes: FullMeasure / ZeroMeasure, or
# HypothesesNotMet with the failed condition spelled out.
print("\n=== dichotomy verdicts ===")
cases = [
    ("KhintchineSim", dict(psi=ApproxFunction.power(0.4), k=2)),
    ("KhintchineSim", dict(psi=ApproxFunction.power(0.6), k=2)),
    ("KGHausdorff", dict(psi=ApproxFunction.power(3.0),
                         f=DimensionFunction.power(2.5), n=3, m=1)),
    ("KGHausdorff", dict(psi=ApproxFunction.power(3.0),
                         f=DimensionFunction.power(3.5), n=3, m=1)),
]
for setting, kw in cases:
    v = dichotomy_verdict(setting, **kw)
    print(f"  {setting:<14} {sorted(kw)!r:<24} -> {v.verdict}")

wiggly = ApproxFunction.piecewise_power(0.2, 0.3, IndexFamily.polynomial_ceil(4))
v = dichotomy_verdict("InhomKGHausdorff", psi=wiggly,
                      f=DimensionFunction.power(0.5), n=1, m=1, y=(0.25,))
print(f"  InhomKGHausdorff with non-monotone psi -> {v.verdict}")
print(f"    failed hypothesis: {v.failed_hypothesis}")
