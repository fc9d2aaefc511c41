"""Tour of the closed-form dimension calculators.

Each block prints a value next to an independent way of getting the same
number, so the output doubles as a quick sanity sheet.
"""

import math

from limsup_lab import (
    affinity_dim,
    cantor_critical,
    jb_dim,
    levesley_dim,
    levesley_bounds_nonmonotone,
    LinearMapSpec,
    rect_upper_bound,
    rynne_dim,
    similarity_dim,
    slicing_bounds,
    wwx_exponent,
)

print("=== single-weight approximation ===")
for tau in (1.5, 2.0, 3.0, 5.0):
    print(f"  tau={tau:<4}  dim = {jb_dim(tau):.6f}  (2/(tau+1) = {2/(tau+1):.6f})")

print("\n=== systems of forms, one-parameter speed ===")
n, m = 3, 2
for lam in (1.0, n / m, 2.0, 4.0):
    d = levesley_dim(n, m, lam)
    branch = "ambient" if lam <= n / m else "lower-order"
    print(f"  lam={lam:<5} dim = {d:.6f}  [{branch} branch]")
lo, hi = levesley_bounds_nonmonotone(3, 1, 4.0)
print(f"  non-monotone bracket at lam=4: [{lo:.6f}, {hi:.6f}] "
      f"(width {hi - lo:.6f} = 1/(lam+1))")

print("\n=== weighted simultaneous approximation ===")
r = rynne_dim(2, (1.0, 2.0), 1.0)
print(f"  k=2, tau=(1,2), nu=1: dim = {r.value:.6f}, argmin at j={list(r.argmin)}")
w = wwx_exponent(2, (1.0, 2.0))
print(f"  matching shrink-rate exponent: {w.value:.6f}, argmin {list(w.argmin)}")
print(f"  unit rates recover ambient dimension: "
      f"{[float(wwx_exponent(k, (1.0,) * k)) for k in range(1, 5)]}")

print("\n=== slices and rectangles ===")
print(f"  slicing bound (k=4 through k0=2, a=(1,2)): "
      f"{slicing_bounds(4, 2, (1.0, 2.0)):.6f}")
print(f"  rectangle upper bound on unit sides equals the ball case: "
      f"{float(rect_upper_bound(3, (1.0, 1.0, 1.0), (1.0, 1.5, 2.0))):.6f} vs "
      f"{float(wwx_exponent(3, (1.0, 1.5, 2.0))):.6f}")

print("\n=== restricted denominators ===")
c = cantor_critical(2.0)
print(f"  critical exponent at tau=2: {c:.12f}")
print(f"  closed form log2/(2 log3):  {math.log(2) / (2 * math.log(3)):.12f}")

print("\n=== self-similar and self-affine ===")
print(f"  two halves: similarity dim = {similarity_dim((0.5, 0.5)):.9f}")
maps = [LinearMapSpec((0.5, 1 / 3))] * 3
print(f"  three affine maps sigma=(1/2,1/3): {affinity_dim(maps):.9f}")
print(f"  closed-form comparison: {1 + math.log(1.5) / math.log(3):.9f}")
