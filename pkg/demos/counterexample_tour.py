"""A tuned non-monotone rate that breaks the naive divergence heuristic.

The rate decays like q^-beta off a sparse index set and like the much
slower q^-alpha on it. Every content sum still converges just above the
target exponent s0, yet the liminf order diagnostic sees the slow branch.
"""

import numpy as np

from limsup_lab import (
    DimensionFunction,
    classify,
    counterexample_params,
    kg_hausdorff_series,
    lower_order_diag,
)

n, m, alpha, s0 = 3, 1, 4.0, 2.7
p = counterexample_params(n, m, alpha, s0)

print(f"inputs: n={n}, m={m}, alpha={alpha}, s0={s0}")
print(f"tuned fast branch: beta = {p.beta:.12f} (= 33/7)")
print(f"auxiliary gamma:   {p.gamma:.12f}")
identity = n + m - 1 - (alpha + 1) * (s0 - m * (n - 1))
print(f"2/gamma identity residual: {abs(2 / p.gamma - identity):.2e}")
print(f"valid target window: {p.bounds}")
print(f"sparse index set: a_k = ceil(k^{p.index_family.p:.4f})")

print("\n=== content sums just above s0 ===")
for delta in (0.05, 0.1, 0.2):
    s = round(s0 + delta, 10)
    spec = kg_hausdorff_series(n, m, p.psi, DimensionFunction.power(s))
    verdict = classify(spec)
    parts = ", ".join(
        f"{part.meta['branch']}: {c.classification} ({c.exponent:+.4f})"
        for part, c in zip(spec.components, verdict.components)
    )
    print(f"  s = {s}: {verdict.classification}  [{parts}]")

print("\n=== the on-set terms stay summable ===")
spec = kg_hausdorff_series(n, m, p.psi, DimensionFunction.power(s0 + 0.05))
ks = np.arange(1, 11, dtype=float)
terms = spec.components[0].term(ks)
for k, t in zip(ks[:6], terms[:6]):
    print(f"  k={int(k)}: term(a_k) = {t:.3e}   k^-2 = {k**-2:.3e}")

print("\n=== liminf order sees the slow branch ===")
diag = lower_order_diag(p.psi, depth=20)
print(f"  lambda over all q:      {diag.lambda_full}")
print(f"  lambda on dyadic q:     {diag.lambda_dyadic}")
print(f"  construction value:     {diag.exact}  (the slow exponent alpha)")
print(f"  fast branch for contrast: beta = {p.beta:.4f}")
