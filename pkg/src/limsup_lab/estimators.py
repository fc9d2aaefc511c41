"""Independent numerical verification of the closed-form predictions.

Nothing here reuses a formula under test: measures come from sweep-line
merging or Monte Carlo, box counts from exact integer interval arithmetic,
dimension estimates from least-squares slopes over natural-cover scales,
and the liminf diagnostics from brute-force scans.  All Monte Carlo takes
explicit seeds and reports standard errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import stats

from .core import ApproxFunction, DimensionFunction, PowerSequence
from .errors import DomainError, SizeError, UnsupportedError
from .generators import (
    INTERVALS,
    RECTANGLES,
    SLABS,
    CoverSpec,
    RandomCoverSample,
    approx_set_union,
    ifs_cover,
)
from .series import (
    CONVERGES,
    SeriesSpec,
    SeriesVerdict,
    classify,
)

_WORK_CAP = 10**9
_MC_CAP = 5 * 10**8


# ---------------------------------------------------------------------------
# measures

@dataclass(frozen=True)
class MeasureResult:
    """A measure value with its provenance: exact sweeps carry zero SE."""

    value: float
    standard_error: float
    method: str  # "exact_sweep" | "monte_carlo"

    def __float__(self) -> float:
        return self.value

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "standard_error": self.standard_error,
            "method": self.method,
        }


def union_measure(
    cover: CoverSpec, samples: int = 10**5, seed: int = 0
) -> MeasureResult:
    """Measure of the union inside the unit cube (or torus).

    1-D interval covers are merged exactly; k in {2, 3} falls back to seeded
    Monte Carlo with a reported standard error.
    """
    if cover.k == 1 and cover.geometry != SLABS:
        merged = cover.merged_intervals()
        total = float(np.sum(merged[:, 1] - merged[:, 0])) if len(merged) else 0.0
        return MeasureResult(total, 0.0, "exact_sweep")
    if cover.k > 3:
        raise UnsupportedError("union measure implemented for k <= 3")
    if cover.element_count == 0:
        return MeasureResult(0.0, 0.0, "exact_sweep")
    samples = int(samples)
    if samples < 100:
        raise DomainError("need at least 100 samples")
    if samples * cover.element_count > _MC_CAP:
        raise SizeError("Monte Carlo work beyond the guard; shrink the cover or samples")
    rng = np.random.default_rng(int(seed))
    pts = rng.random((samples, cover.k))
    hit = np.zeros(samples, dtype=bool)
    if cover.geometry == SLABS:
        rem = np.arange(samples)
        for nrm, off, th in zip(cover.normals, cover.offsets, cover.thickness):
            vals = pts[rem] @ np.asarray(nrm) + off
            inside = np.abs(vals) < th
            hit[rem[inside]] = True
            rem = rem[~inside]
            if not len(rem):
                break
    else:
        rem = np.arange(samples)
        for c, h in zip(cover.centers, cover.halves):
            d = np.abs(pts[rem] - c)
            if cover.torus:
                d = np.minimum(d, 1.0 - d)
            inside = np.all(d < h, axis=1)
            hit[rem[inside]] = True
            rem = rem[~inside]
            if not len(rem):
                break
    p = float(np.mean(hit))
    se = math.sqrt(max(p * (1 - p), 0.0) / samples)
    return MeasureResult(p, se, "monte_carlo")


# ---------------------------------------------------------------------------
# box counting

def _interval_box_count(merged: np.ndarray, delta: float) -> int:
    """Exact count of grid boxes [i d, (i+1) d) met by disjoint sorted open
    intervals.  Endpoints exactly on the grid follow the open convention."""
    if not len(merged):
        return 0
    lo, hi = merged[:, 0], merged[:, 1]
    i0 = np.floor(lo / delta + 1e-9).astype(np.int64)
    i1 = np.ceil(hi / delta - 1e-9).astype(np.int64) - 1
    i1 = np.maximum(i1, i0)
    run = np.maximum.accumulate(i1)
    prev = np.concatenate([[np.int64(-1)], run[:-1]])
    eff = np.maximum(i0, prev + 1)
    return int(np.sum(np.maximum(i1 - eff + 1, 0)))


def _grid_ranges(cover: CoverSpec, delta: float) -> tuple[np.ndarray, np.ndarray]:
    """Per-element inclusive index ranges along each axis, clipped or wrapped."""
    lo = cover.centers - cover.halves
    hi = cover.centers + cover.halves
    i0 = np.floor(lo / delta + 1e-9).astype(np.int64)
    i1 = (np.ceil(hi / delta - 1e-9) - 1).astype(np.int64)
    i1 = np.maximum(i1, i0)
    G = int(round(1.0 / delta))
    if cover.torus:
        if abs(G * delta - 1.0) > 1e-9:
            raise DomainError("torus box counting needs a grid that divides 1")
        spans = i1 - i0
        full = spans >= G - 1
        i0 = np.where(full, 0, i0)
        i1 = np.where(full, G - 1, i1)
    else:
        i0 = np.clip(i0, 0, None)
        i1 = np.minimum(i1, int(math.ceil(1.0 / delta)) - 1)
    return i0, i1


def box_count(cover: CoverSpec, delta: float) -> int:
    """Number of grid boxes [i delta, (i+1) delta)^k meeting the union.

    Exact integer interval arithmetic throughout; no rasterization.  Work is
    guarded at 1e9 emitted box ids.
    """
    delta = float(delta)
    if not (0 < delta <= 1):
        raise DomainError("box size must lie in (0, 1]")
    if cover.geometry == SLABS:
        raise UnsupportedError("box counting implemented for interval/rectangle covers")
    if cover.k > 3:
        raise UnsupportedError("box counting implemented for k <= 3")
    if cover.element_count == 0:
        return 0
    if cover.k == 1:
        return _interval_box_count(cover.merged_intervals(), delta)

    i0, i1 = _grid_ranges(cover, delta)
    sizes = (i1 - i0 + 1).astype(np.int64)
    keep = np.all(sizes > 0, axis=1)
    i0, sizes = i0[keep], sizes[keep]
    if not len(sizes):
        return 0
    per_elem = np.prod(sizes, axis=1)
    total = int(np.sum(per_elem))
    if total > _WORK_CAP:
        raise SizeError(f"box id emission of {total:.2e} beyond the 1e9 work guard")
    G = int(round(1.0 / delta)) if cover.torus else int(math.ceil(1.0 / delta))
    # chunk the id emission so peak memory stays bounded regardless of total
    chunk_ids = 4_000_000
    cum = np.cumsum(per_elem)
    bounds = [0]
    while bounds[-1] < len(per_elem):
        nxt = int(np.searchsorted(cum, (cum[bounds[-1] - 1] if bounds[-1] else 0)
                                  + chunk_ids))
        bounds.append(min(max(nxt, bounds[-1] + 1), len(per_elem)))
    uniques = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        pe = per_elem[a:b]
        starts = np.concatenate([[0], np.cumsum(pe)[:-1]])
        flat = np.arange(int(pe.sum()), dtype=np.int64)
        elem = np.searchsorted(np.cumsum(pe), flat, side="right")
        local = flat - starts[elem]
        base = i0[a:b]
        sz = sizes[a:b]
        if cover.k == 2:
            sy = sz[elem, 1]
            dx, dy = local // sy, local % sy
            ix = base[elem, 0] + dx
            iy = base[elem, 1] + dy
            if cover.torus:
                ix %= G
                iy %= G
            ids = ix * G + iy
        else:
            syv, szv = sz[elem, 1], sz[elem, 2]
            area = syv * szv
            dx = local // area
            rem = local % area
            dy, dz = rem // szv, rem % szv
            ix = base[elem, 0] + dx
            iy = base[elem, 1] + dy
            iz = base[elem, 2] + dz
            if cover.torus:
                ix %= G
                iy %= G
                iz %= G
            ids = (ix * G + iy) * G + iz
        uniques.append(np.unique(ids))
        if sum(len(u) for u in uniques) > 3 * chunk_ids:
            uniques = [np.unique(np.concatenate(uniques))]
    return int(len(np.unique(np.concatenate(uniques))))


# ---------------------------------------------------------------------------
# dimension fitting

@dataclass(frozen=True)
class DimensionEstimate:
    """Least-squares box dimension over natural-cover scales."""

    value: float
    half_width: float
    scales: tuple          # ((delta, count), ...) with delta strictly decreasing
    residual: float
    degenerate: bool = False
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "half_width": self.half_width,
            "residual": self.residual,
            "degenerate": self.degenerate,
            "scales": [[d, int(n)] for d, n in self.scales],
            "meta": dict(self.meta),
        }


def dim_fit(scales: Sequence[tuple], meta: dict | None = None) -> DimensionEstimate:
    """Slope of log N against log(1/delta) with a 95% confidence half-width.

    Scales are sorted to strictly decreasing delta; counts must not decrease
    as delta shrinks (a violation means the inputs are not covers of one set).
    """
    pts = sorted(((float(d), int(n)) for d, n in scales), key=lambda p: -p[0])
    if len(pts) < 4:
        raise DomainError("need at least 4 scales for a fit")
    deltas = np.asarray([p[0] for p in pts])
    counts = np.asarray([p[1] for p in pts], dtype=float)
    if np.any(np.diff(deltas) >= 0):
        raise DomainError("scales must be strictly decreasing in delta")
    if np.any(np.diff(counts) < 0):
        raise DomainError("counts decreased while delta shrank; not a nested cover")
    if np.any(counts <= 0):
        raise DomainError("counts must be positive")
    x = np.log(1.0 / deltas)
    y = np.log(counts)
    if np.allclose(y, y[0]):
        return DimensionEstimate(
            0.0, math.inf, tuple(pts), 0.0, degenerate=True, meta=meta or {})
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    dof = len(x) - 2
    sxx = float(np.sum((x - x.mean()) ** 2))
    se = math.sqrt(float(resid @ resid) / dof / sxx) if dof > 0 else math.inf
    half = float(stats.t.ppf(0.975, dof) * se) if dof > 0 else math.inf
    rms = math.sqrt(float(resid @ resid) / len(x))
    return DimensionEstimate(
        float(slope), half, tuple(pts), rms, degenerate=False, meta=meta or {})


def _dyadic_at_least(x: float) -> float:
    """Largest 2^-j that is <= x (the matching dyadic scale)."""
    return 2.0 ** (-int(math.ceil(-math.log2(x) - 1e-9)))


def natural_cover_estimate(
    setting: str,
    schedule: Sequence[int],
    tau=None,
    ratios=None,
    k: int = 1,
    psi: ApproxFunction | None = None,
) -> DimensionEstimate:
    """Box dimension estimated from generation-matched scales.

    Each schedule level Q generates the modulus band (Q/2, Q] and counts
    boxes at the dyadic scale matched to the band's finest element; counting
    the full union from q = 1 up saturates the cube and fits nothing.  IFS
    levels use the exact element counts of the construction.
    """
    key = setting.replace("-", "").replace("_", "").lower()
    levels = [int(v) for v in schedule]
    if len(levels) < 4:
        raise DomainError("need at least 4 levels")
    if sorted(set(levels)) != levels:
        raise DomainError("schedule must be strictly increasing")

    scales = []
    if key in ("simultaneous", "simultaneousballs"):
        t = float(tau if tau is not None else (psi.tau if psi is not None else 2.0))
        use_psi = psi if psi is not None else ApproxFunction.power(t)
        for Q in levels:
            cover = approx_set_union(
                "SimultaneousBalls", psi=use_psi, k=1, Q=Q, M=Q // 2 + 1)
            delta = _dyadic_at_least(float(Q) ** (-(t + 1.0)))
            scales.append((delta, box_count(cover, delta)))
        return dim_fit(scales, meta={"setting": "simultaneous", "tau": t,
                                     "levels": levels})
    if key in ("weighted", "weightedrectangles"):
        taus = [float(v) for v in tau]
        for Q in levels:
            cover = approx_set_union(
                "WeightedRectangles", k=len(taus), tau=taus, Q=Q, M=Q // 2 + 1)
            delta = _dyadic_at_least(float(Q) ** (-(1.0 + max(taus))))
            scales.append((delta, box_count(cover, delta)))
        return dim_fit(scales, meta={"setting": "weighted", "tau": taus,
                                     "levels": levels})
    if key == "ifs":
        rs = [float(r) for r in ratios]
        for depth in levels:
            cover = ifs_cover(rs, depth)
            # the generation is exactly N^depth disjoint intervals of length
            # ratio^depth: the natural cover at that scale, counted exactly
            scales.append((rs[0] ** depth, cover.element_count))
        return dim_fit(scales, meta={"setting": "ifs", "ratios": rs,
                                     "levels": levels})
    raise DomainError(f"unknown estimation setting {setting!r}")


# ---------------------------------------------------------------------------
# random covering statistics

def tail_coverage(sample: RandomCoverSample, M: int, N: int) -> MeasureResult:
    """Measure of the union of balls M..N from a seeded sample; exact torus
    sweep in 1-D, Monte Carlo (seeded from the sample's seed) otherwise."""
    M, N = int(M), int(N)
    if not (1 <= M <= N <= sample.N):
        raise DomainError("need 1 <= M <= N <= sample size")
    idx = np.arange(M - 1, N)
    radii = sample.rule.eval_many(np.arange(M, N + 1, dtype=float))
    sub = CoverSpec(
        k=sample.k,
        geometry=INTERVALS if sample.k == 1 else RECTANGLES,
        centers=sample.centers[idx],
        halves=np.repeat(radii[:, None], sample.k, axis=1),
        torus=True,
        meta={"M": M, "N": N, "seed": sample.seed},
    )
    return union_measure(sub, seed=sample.seed + 1)


# ---------------------------------------------------------------------------
# energy functionals

@dataclass(frozen=True)
class EnergyResult:
    energy: float
    standard_error: float
    g_value: float
    divergent: bool
    samples: int
    seed: int

    def to_json(self) -> dict:
        return {
            "energy": self.energy,
            "standard_error": self.standard_error,
            "g": self.g_value,
            "divergent": self.divergent,
            "samples": self.samples,
            "seed": self.seed,
        }


def energy(
    target="unit_interval",
    s: float | None = None,
    f: DimensionFunction | None = None,
    samples: int = 10**5,
    seed: int = 0,
) -> EnergyResult:
    """Monte Carlo pair-sampling estimate of the double integral of
    1/|x-y|^s (or 1/f(|x-y|)) over the target, with g = volume^2 / energy.

    A power kernel with s >= k on a solid k-volume target is flagged
    divergent without sampling.
    """
    samples = int(samples)
    if samples < 10**4:
        raise DomainError("need at least 1e4 samples")
    if (s is None) == (f is None):
        raise DomainError("give exactly one of the exponent s or the gauge f")

    if isinstance(target, str):
        if target not in ("unit_interval", "unit_square", "unit_cube"):
            raise DomainError(f"unknown target {target!r}")
        k = {"unit_interval": 1, "unit_square": 2, "unit_cube": 3}[target]
        lo = np.zeros(k)
        side = np.ones(k)
        volume = 1.0
    else:
        cover = target
        if not isinstance(cover, CoverSpec) or cover.element_count != 1 \
                or cover.geometry == SLABS:
            raise DomainError("target must be a named cube or a single-element cover")
        k = cover.k
        lo = cover.centers[0] - cover.halves[0]
        side = 2.0 * cover.halves[0]
        volume = float(np.prod(side))

    s_eff = s if s is not None else (f.s if f.form == "power_log" else None)
    if s_eff is not None and s_eff >= k:
        return EnergyResult(math.inf, 0.0, 0.0, True, samples, int(seed))

    rng = np.random.default_rng(int(seed))
    x = lo + side * rng.random((samples, k))
    y = lo + side * rng.random((samples, k))
    d = np.sqrt(np.sum((x - y) ** 2, axis=1))
    d = np.maximum(d, 1e-300)
    if s is not None:
        kern = d ** (-float(s))
    else:
        kern = 1.0 / f.eval_many(d)
    mean = float(np.mean(kern))
    se = float(np.std(kern, ddof=1) / math.sqrt(samples))
    e_val = volume**2 * mean
    g = volume**2 / e_val if e_val > 0 else math.inf
    return EnergyResult(e_val, volume**2 * se, g, False, samples, int(seed))


# ---------------------------------------------------------------------------
# content sum criterion

@dataclass(frozen=True)
class ContentSumReport:
    """Convergence verdict for the gauge-content sum over a ball sequence.

    Upper envelope: content <= f(diam).  Lower envelope: content >=
    c * f(diam) with c from the fixed grid-subdivision constant of the
    element shapes.  Convergence of the upper sum is what carries a
    zero-measure conclusion; divergence concludes nothing.
    """

    series: SeriesVerdict
    conclusion: str
    upper_constant: float
    lower_constant: float

    def to_json(self) -> dict:
        return {
            "series": self.series.to_json(),
            "conclusion": self.conclusion,
            "upper_constant": self.upper_constant,
            "lower_constant": self.lower_constant,
        }


def content_sum_criterion(obj, f: DimensionFunction, k: int = 1) -> ContentSumReport:
    """Classify sum f(diam A_i) for a radii rule (symbolic, exact exponent
    test) or a finite cover (trivially convergent)."""
    if isinstance(obj, PowerSequence):
        rule = obj

        def term(ns):
            return f.eval_many(2.0 * rule.eval_many(ns))

        symbolic = None
        if f.form == "power_log":
            symbolic = (
                -rule.decay * f.s,
                rule.log_exp * f.s + f.b,
            )
        verdict = classify(SeriesSpec(kind="content_sum", term=term, symbolic=symbolic))
    elif isinstance(obj, CoverSpec):
        total = float(np.sum(f.eval_many(np.maximum(obj.diameters(), 1e-300)))) \
            if obj.element_count else 0.0
        verdict = SeriesVerdict(
            CONVERGES, "ExactExponent",
            note=f"finite cover, upper content sum {total:.6g}")
    else:
        diams = np.asarray(obj, dtype=float)
        if diams.ndim != 1:
            raise DomainError("expected a radii rule, a cover, or a diameter list")
        verdict = SeriesVerdict(
            CONVERGES, "ExactExponent", note="finite diameter list")
    if f.form == "power_log":
        probe = np.asarray([1e-2, 1e-4, 1e-6])
    else:
        # stay inside the sampled support on both sides of the subdivision
        shrink = 2.0 * math.sqrt(k)
        cands = np.asarray([r for r in f.radii if r / shrink >= f.radii[0]])
        probe = cands[-3:] if len(cands) else np.zeros(0)
    if len(probe):
        lower = float(np.min(f.eval_many(probe / (2.0 * math.sqrt(k)))
                             / f.eval_many(probe)))
    else:
        lower = 0.0
    conclusion = (
        "zero gauge measure" if verdict.classification == CONVERGES
        else "no conclusion from the content sum"
    )
    return ContentSumReport(verdict, conclusion, 1.0, lower)


# ---------------------------------------------------------------------------
# lower-order diagnostics

@dataclass(frozen=True)
class LowerOrderDiag:
    """Running-minimum estimates of the lower order of psi at infinity."""

    lambda_full: float
    lambda_dyadic: float
    exact: float | None
    depth: int
    burn_in: int
    points: int

    def to_json(self) -> dict:
        return {
            "lambda_full": self.lambda_full,
            "lambda_dyadic": self.lambda_dyadic,
            "exact": self.exact,
            "depth": self.depth,
            "burn_in": self.burn_in,
            "points": self.points,
        }


def lower_order_diag(
    psi: ApproxFunction, depth: int, max_points: int = 10**6
) -> LowerOrderDiag:
    """Brute-force liminf scan of -log psi(q) / log q.

    The scan covers dyadic blocks from 2^(depth//2) to 2^depth: a liminf is
    a tail statement, so the early moduli are burned off.  Every block is
    stratified-sampled, block endpoints are always included, and for the
    two-branch psi every sparse-set member in range is added so the slow
    branch cannot be missed.
    """
    depth = int(depth)
    if depth < 10:
        raise DomainError("need depth >= 10")
    burn = depth // 2

    if psi.form == "sampled":
        qs = np.asarray(psi.qs, dtype=float)
        qs = qs[(qs >= 2.0**burn) & (qs <= 2.0**depth) & (qs > 1)]
        if len(qs) > max_points:
            step = len(qs) // max_points + 1
            qs = qs[::step]
        if not len(qs):
            raise DomainError("sampled psi has no support in the scan range")
        vals = psi.eval_many(qs)
        lam = -np.log(np.maximum(vals, 1e-300)) / np.log(qs)
        lam_full = float(np.min(lam))
        dyads = 2.0 ** np.arange(burn, depth + 1, dtype=float)
        have = np.isin(dyads, qs)
        if np.any(have):
            dv = psi.eval_many(dyads[have])
            lam_dyadic = float(np.min(-np.log(np.maximum(dv, 1e-300))
                                      / np.log(dyads[have])))
        else:
            lam_dyadic = lam_full
        return LowerOrderDiag(lam_full, lam_dyadic, None, depth, 2**burn, len(qs))

    blocks = np.arange(burn, depth)
    per_block = max(max_points // max(len(blocks), 1), 2)
    pieces = [2.0 ** np.arange(burn, depth + 1, dtype=float)]
    for t in blocks:
        lo, hi = 2.0**t, 2.0 ** (t + 1)
        pts = np.unique(np.floor(np.linspace(lo, hi, per_block)))
        pieces.append(pts)
    if psi.form == "piecewise_power":
        members = psi.index_family.members_up_to(int(2.0**depth))
        members = members[members >= 2**burn]
        if len(members) > max_points:
            members = members[:: len(members) // max_points + 1]
        pieces.append(members.astype(float))
    qs = np.unique(np.concatenate(pieces))
    qs = qs[qs > 1]
    vals = psi.eval_many(qs)
    lam = -np.log(np.maximum(vals, 1e-300)) / np.log(qs)
    lam_full = float(np.min(lam))
    dmask = np.isin(qs, 2.0 ** np.arange(burn, depth + 1, dtype=float))
    lam_dyadic = float(np.min(lam[dmask]))
    if psi.form == "power":
        exact = float(psi.tau)
    else:
        exact = float(min(psi.alpha, psi.beta))
    return LowerOrderDiag(lam_full, lam_dyadic, exact, depth, 2**burn, len(qs))
