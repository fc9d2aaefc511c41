"""Generate finite set generations, count boxes, fit a dimension.

The same pipeline runs on a rational-approximation family (answer known
from the closed formula) and on a middle-thirds construction (answer known
from the similarity equation), so the fits can be judged against truth.
"""

import math
import time

from limsup_lab import (
    ApproxFunction,
    approx_set_union,
    box_count,
    dim_fit,
    ifs_cover,
    jb_dim,
    natural_cover_estimate,
    similarity_dim,
    union_measure,
)

print("=== one generation, in detail ===")
Q = 16
cover = approx_set_union("SimultaneousBalls", psi=ApproxFunction.power(2.0),
                         k=1, Q=Q, M=Q // 2 + 1)
print(f"  band ({Q // 2}, {Q}]: {cover.element_count} intervals, "
      f"union measure {union_measure(cover).value:.6f}")
for j in (8, 10, 12):
    delta = 2.0**-j
    print(f"  delta = 2^-{j}: {box_count(cover, delta)} boxes")

print("\n=== dimension from matched scales ===")
t0 = time.perf_counter()
est = natural_cover_estimate("simultaneous", [2**j for j in range(6, 12)], tau=2.0)
dt = time.perf_counter() - t0
print(f"  tau=2 fit: {est.value:.4f} +- {est.half_width:.4f}  ({dt:.1f}s)")
print(f"  closed form: {jb_dim(2.0):.4f}")

print("\n=== middle-thirds construction ===")
scales = []
for depth in range(4, 11):
    c = ifs_cover((1 / 3, 1 / 3), depth)
    scales.append((3.0**-depth, box_count(c, 3.0**-depth)))
fit = dim_fit(scales)
print(f"  box-count fit over depths 4..10: {fit.value:.8f}")
print(f"  similarity dimension:            {similarity_dim((1/3, 1/3)):.8f}")
print(f"  log 2 / log 3:                   {math.log(2) / math.log(3):.8f}")

print("\n=== an unequal-ratio variant ===")
est = natural_cover_estimate("ifs", list(range(4, 11)), ratios=(0.25, 0.25, 0.25))
print(f"  three quarter-scale maps: fit {est.value:.6f}, "
      f"similarity {similarity_dim((0.25, 0.25, 0.25)):.6f}")
