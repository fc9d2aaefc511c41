"""Classify the volume sums that drive the zero-full measure laws.

Walks each series builder across its convergence threshold and prints the
verdict with the method that settled it.
"""

import numpy as np

from limsup_lab import (
    ApproxFunction,
    DimensionFunction,
    IndexFamily,
    cantor_critical,
    cantor_lsv_series,
    classify,
    duffin_schaeffer_series,
    jarnik_series,
    jb_dim,
    kg_hausdorff_series,
    kg_series,
    khintchine_sim_series,
    partial_sum_diagnostics,
)


def show(label, spec, n_terms=10**6):
    v = classify(spec, n_terms=n_terms)
    extra = ""
    if v.exponent is not None:
        extra = f"  exponent {v.exponent:+.4f}"
    print(f"  {label:<38} {v.classification:<12} via {v.method}{extra}")


print("=== simultaneous approximation, k = 2 ===")
for tau in (0.4, 0.5, 0.6):
    show(f"psi = q^-{tau}", khintchine_sim_series(2, ApproxFunction.power(tau)))

print("\n=== Hausdorff refinement, k = 1 ===")
tau = 3.0
s_crit = jb_dim(tau)
for s in (s_crit - 0.1, s_crit, s_crit + 0.1):
    show(f"gauge r^{s:.2f}", jarnik_series(1, ApproxFunction.power(tau),
                                           DimensionFunction.power(s)))

print("\n=== systems of linear forms ===")
show("n=2, m=1, psi = q^-3 (converges)", kg_series(2, 1, ApproxFunction.power(3.0)))
show("n=2, m=1, psi = q^-1 (boundary)", kg_series(2, 1, ApproxFunction.power(1.0)))
show("n=3, m=1, psi=q^-3, gauge r^2.5",
     kg_hausdorff_series(3, 1, ApproxFunction.power(3.0),
                         DimensionFunction.power(2.5)))

print("\n=== coprime pairs only ===")
show("k=1, psi = q^-2", duffin_schaeffer_series(1, ApproxFunction.power(2.0)),
     n_terms=10**5)
show("k=1, psi = q^-0.8", duffin_schaeffer_series(1, ApproxFunction.power(0.8)),
     n_terms=10**5)

print("\n=== denominators restricted to powers of 3 ===")
crit = cantor_critical(2.0)
print(f"  critical gauge exponent: {crit:.6f}")
fam = IndexFamily.geometric(3)
for s in (0.95 * crit, 1.05 * crit):
    show(f"gauge r^{s:.4f}",
         cantor_lsv_series(ApproxFunction.power(2.0),
                           DimensionFunction.power(s), fam))

print("\n=== split series on a sparse index set ===")
psi = ApproxFunction.piecewise_power(0.5, 3.0, IndexFamily.polynomial_ceil(2))
split_spec = khintchine_sim_series(1, psi)
verdict = classify(split_spec)
print(f"  overall: {verdict.classification} via {verdict.method}")
for part, comp in zip(split_spec.components, verdict.components):
    print(f"    component {part.meta['branch']:<4} "
          f"{comp.classification:<12} exponent {comp.exponent:+.4f}")

print("\n=== numeric cross-check on a symbolic verdict ===")
diag = partial_sum_diagnostics(khintchine_sim_series(2, ApproxFunction.power(0.4)),
                               n_terms=10**5)
print(f"  fitted term exponent {diag.term_exponent_estimate:+.3f} "
      f"(symbolic {-0.8:+.3f}), saturated={diag.saturated}")
sums = np.round(np.log10(diag.partial_sums), 3)
print(f"  log10 partial sums at cutoffs {diag.cutoffs}: {sums.tolist()}")
