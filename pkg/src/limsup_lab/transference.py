"""Transforms between Lebesgue-scale and gauge-scale limsup systems.

The central objects are radius rewrites: a ball B(x, r) becomes
B(x, f(r)^(1/k)), a plane-neighborhood girth sequence Upsilon becomes
g(Upsilon)^(1/m) with g(r) = r^-l f(r), and an approximating function psi
becomes theta(q) = q * g(psi(q)/q)^(1/m).  On top of these sit the
hypothesis-checked dichotomy pipelines: classify the volume series, check
the side conditions the statements need, and emit a zero/full verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import (
    NON_INCREASING,
    ApproxFunction,
    DimensionFunction,
    PowerSequence,
    validate_hypotheses,
)
from .errors import (
    DegenerateBallError,
    DomainError,
    HypothesisError,
    PreconditionError,
    UnsupportedError,
)
from .series import (
    CONVERGES,
    DIVERGES,
    SeriesVerdict,
    _safe_gauge,
    cantor_lsv_series,
    classify,
    jarnik_series,
    kg_hausdorff_series,
    kg_series,
    khintchine_sim_series,
)

ZERO_MEASURE = "ZeroMeasure"
FULL_MEASURE = "FullMeasure"
HYPOTHESES_NOT_MET = "HypothesesNotMet"

BY_MODULUS = "ByModulus"
BY_VECTOR_Q = "ByVectorQ"
BY_PQ = "ByPQ"

SETTINGS = (
    "KhintchineSim", "Jarnik", "KG", "KGHausdorff", "InhomKGHausdorff", "CantorLSV",
)


@dataclass(frozen=True)
class BallSpec:
    """A ball in R^k given by center and radius."""

    center: tuple
    radius: float
    k: int

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        if self.k < 1:
            raise DomainError("ambient dimension must be >= 1")
        if len(self.center) != self.k:
            raise DomainError("center length must equal the ambient dimension")
        if not (self.radius > 0):
            raise DomainError("ball radius must be positive")

    def to_json(self) -> dict:
        return {"center": list(self.center), "radius": self.radius, "k": self.k}


@dataclass(frozen=True)
class ResonantFamily:
    """Shrinking neighborhoods of l-dimensional planes in R^k.

    The planes may be given explicitly as (normal, offset) pairs or left
    symbolic; the girth sequence is what the transforms act on, so it is the
    only mandatory piece."""

    k: int
    l: int
    upsilon: PowerSequence | tuple
    planes: tuple = ()

    def __post_init__(self):
        if self.k < 1 or not (0 <= self.l < self.k):
            raise DomainError("need 0 <= plane dimension < ambient dimension")
        if isinstance(self.upsilon, PowerSequence):
            if self.upsilon.decay <= 0:
                raise DomainError("girth rule must decay to 0")
        else:
            vals = tuple(float(v) for v in self.upsilon)
            if any(v < 0 for v in vals):
                raise DomainError("girths must be non-negative")
            object.__setattr__(self, "upsilon", vals)
        planes = tuple(self.planes)
        for normal, _offset in planes:
            if not any(abs(c) > 0 for c in normal):
                raise DomainError("plane normals must be nonzero")
        object.__setattr__(self, "planes", planes)

    @property
    def m(self) -> int:
        return self.k - self.l


class TransformedSequence:
    """Pointwise-evaluated sequence rule, used when the transform of a girth
    rule has no closed power form (log factors, sampled gauges)."""

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray], label: str):
        self._fn = fn
        self.label = label

    def eval_many(self, ns) -> np.ndarray:
        return self._fn(np.asarray(ns, dtype=float))

    def eval(self, n: int) -> float:
        return float(self.eval_many([n])[0])

    __call__ = eval


def ball_f_transform(b: BallSpec, f: DimensionFunction) -> BallSpec:
    """B(x, r) -> B(x, f(r)^(1/k)).  With f(r) = r^k this is the identity."""
    if not (0 < b.radius < 1):
        raise DomainError("transform defined for radii in (0, 1)")
    val = f(b.radius)
    if not (val > 0):
        raise DegenerateBallError(f"f({b.radius}) = {val} gives an empty ball")
    return BallSpec(b.center, val ** (1.0 / b.k), b.k)


def ball_fg_transform(b: BallSpec, f: DimensionFunction, g: DimensionFunction) -> BallSpec:
    """B(x, r) -> B(x, g^-1(f(r))) for an invertible pure power g(r) = r^kappa."""
    if g.form != "power_log" or g.b != 0.0:
        raise UnsupportedError("reference gauge g must be a pure power for inversion")
    if not (0 < b.radius < 1):
        raise DomainError("transform defined for radii in (0, 1)")
    val = f(b.radius)
    if not (val > 0):
        raise DegenerateBallError(f"f({b.radius}) = {val} gives an empty ball")
    return BallSpec(b.center, val ** (1.0 / g.s), b.k)


def upsilon_transform(fam: ResonantFamily, f: DimensionFunction):
    """Girth rewrite for plane neighborhoods: n -> g(Upsilon_n)^(1/m) with
    g(r) = r^-l f(r).  Exact power rules map to exact power rules."""
    report = validate_hypotheses(f, fam.k, fam.l)
    if not report.g_valid:
        raise HypothesisError(report.g_reason)
    m, l = fam.m, fam.l
    ups = fam.upsilon
    if (
        isinstance(ups, PowerSequence)
        and ups.log_exp == 0.0
        and f.form == "power_log"
        and f.b == 0.0
    ):
        e = (f.s - l) / m
        return PowerSequence(coef=ups.coef ** e, decay=ups.decay * e)
    gauge = _safe_gauge(f, l=float(l))
    if isinstance(ups, tuple):
        vals = np.asarray(ups, dtype=float)
        return tuple(float(v) for v in gauge(vals) ** (1.0 / m))

    def fn(ns: np.ndarray) -> np.ndarray:
        return gauge(ups.eval_many(ns)) ** (1.0 / m)

    return TransformedSequence(fn, label=f"g(upsilon)^(1/{m})")


@dataclass(frozen=True)
class ThetaRule:
    """The transformed approximating rule theta(q) = q * g(psi(q)/q)^(1/m).

    `approx` carries the exact power form when psi and f admit one; the
    eval methods always work directly from psi and f."""

    variant: str
    n: int
    m: int
    l: int
    f: DimensionFunction
    psi: ApproxFunction | None
    pq_rule: Callable | None = None
    approx: ApproxFunction | None = None

    def eval_moduli(self, qs) -> np.ndarray:
        qs = np.asarray(qs, dtype=float)
        gauge = _safe_gauge(self.f, l=float(self.l))
        return qs * gauge(self.psi.eval_many(qs) / qs) ** (1.0 / self.m)

    def eval_vectors(self, qvecs) -> np.ndarray:
        # |q| is the sup norm; zero vectors are not admissible moduli
        qvecs = np.atleast_2d(np.asarray(qvecs, dtype=float))
        mods = np.max(np.abs(qvecs), axis=1)
        if np.any(mods < 1):
            raise DomainError("vector moduli must be >= 1")
        return self.eval_moduli(mods)

    def eval_pq(self, ps, qs) -> np.ndarray:
        qs = np.atleast_2d(np.asarray(qs, dtype=float))
        mods = np.max(np.abs(qs), axis=1)
        if np.any(mods < 1):
            raise DomainError("vector moduli must be >= 1")
        if self.pq_rule is None:
            return self.eval_moduli(mods)
        vals = np.asarray(self.pq_rule(ps, qs), dtype=float)
        gauge = _safe_gauge(self.f, l=float(self.l))
        return mods * gauge(vals / mods) ** (1.0 / self.m)

    def to_json(self) -> dict:
        out = {"variant": self.variant, "n": self.n, "m": self.m, "l": self.l,
               "f": self.f.to_json()}
        if self.approx is not None:
            out["approx"] = self.approx.to_json()
        return out


def theta_transform(
    psi: ApproxFunction,
    f: DimensionFunction,
    n: int,
    m: int,
    variant: str = BY_MODULUS,
    pq_rule: Callable | None = None,
    pq_decay: bool = False,
) -> ThetaRule:
    """Rewrite a linear-forms approximating function through the gauge.

    For ByPQ the caller must assert (via pq_decay) that psi(p, q)/|q| -> 0
    uniformly as |q| grows; without it the rewrite is not meaningful.
    """
    n, m = int(n), int(m)
    if n < 1 or m < 1:
        raise DomainError("n, m must be >= 1")
    if variant not in (BY_MODULUS, BY_VECTOR_Q, BY_PQ):
        raise DomainError(f"unknown variant {variant!r}")
    if variant == BY_PQ and not pq_decay:
        raise PreconditionError("ByPQ requires the caller to assert the psi/|q| decay condition")
    l = m * (n - 1)
    report = validate_hypotheses(f, n * m, l)
    if not report.g_valid:
        raise HypothesisError(f"g(r) = r^-{l} f(r) is not a valid gauge: {report.g_reason}")

    approx = None
    if f.form == "power_log" and f.b == 0.0:
        e = (f.s - l) / m
        if psi.form == "power":
            # theta(q) = q^(1 - (tau+1) e)
            approx = ApproxFunction.power((psi.tau + 1.0) * e - 1.0)
        elif psi.form == "piecewise_power":
            a_t = (psi.alpha + 1.0) * e - 1.0
            b_t = (psi.beta + 1.0) * e - 1.0
            if a_t > 0 and b_t > 0:
                approx = ApproxFunction.piecewise_power(a_t, b_t, psi.index_family)
    return ThetaRule(
        variant=variant, n=n, m=m, l=l, f=f, psi=psi, pq_rule=pq_rule, approx=approx
    )


# ---------------------------------------------------------------------------
# dichotomy pipelines

@dataclass
class DichotomyVerdict:
    verdict: str
    failed_hypothesis: str | None = None
    series: SeriesVerdict | None = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "failed_hypothesis": self.failed_hypothesis,
            "series": self.series.to_json() if self.series is not None else None,
        }


def _not_met(reason: str, series: SeriesVerdict | None = None) -> DichotomyVerdict:
    return DichotomyVerdict(HYPOTHESES_NOT_MET, failed_hypothesis=reason, series=series)


def _settle(verdict: SeriesVerdict, divergence_ok: Callable[[], str | None]) -> DichotomyVerdict:
    """Map a series verdict to a measure verdict, gating the divergence
    branch on its extra hypothesis (convergence needs none)."""
    if verdict.classification == CONVERGES:
        return DichotomyVerdict(ZERO_MEASURE, series=verdict)
    if verdict.classification == DIVERGES:
        reason = divergence_ok()
        if reason is None:
            return DichotomyVerdict(FULL_MEASURE, series=verdict)
        return _not_met(reason, verdict)
    return _not_met("series classification inconclusive", verdict)


def dichotomy_verdict(
    setting: str,
    psi: ApproxFunction,
    f: DimensionFunction | None = None,
    n: int | None = None,
    m: int | None = None,
    k: int | None = None,
    y=None,
    n_terms: int = 10**6,
) -> DichotomyVerdict:
    """Hypothesis-checked zero-full classification for the named setting.

    Convergent volume series always yield ZeroMeasure; divergent series
    yield FullMeasure only when the divergence branch's side conditions
    hold (monotone psi where demanded, nm > 1 for the non-monotone
    linear-forms statement).  Monotonicity that is merely unknown counts
    as absent.
    """
    key = setting.replace("-", "").replace("_", "").lower()
    names = {s.lower(): s for s in SETTINGS}
    if key not in names:
        raise DomainError(f"unknown dichotomy setting {setting!r}")
    setting = names[key]
    monotone = psi.monotone_flag == NON_INCREASING

    if setting == "KhintchineSim":
        if k is None:
            raise DomainError("KhintchineSim needs the ambient dimension k")
        series = khintchine_sim_series(k, psi)
        return _settle(
            classify(series, n_terms=n_terms),
            lambda: None if monotone else "psi monotone required for the divergence branch",
        )

    if setting == "Jarnik":
        if k is None or f is None:
            raise DomainError("Jarnik needs k and a gauge f")
        report = validate_hypotheses(f, k, 0)
        if not report.ratio_monotone:
            return _not_met("r^-k f(r) must be monotone")
        series = jarnik_series(k, psi, f)
        return _settle(
            classify(series, n_terms=n_terms),
            lambda: None if monotone else "psi monotone required for the divergence branch",
        )

    if setting == "KG":
        if n is None or m is None:
            raise DomainError("KG needs n and m")
        series = kg_series(n, m, psi)
        return _settle(
            classify(series, n_terms=n_terms),
            lambda: None if (n * m > 1 or monotone)
            else "nm = 1 requires monotone psi for the divergence branch",
        )

    if setting in ("KGHausdorff", "InhomKGHausdorff"):
        if n is None or m is None or f is None:
            raise DomainError(f"{setting} needs n, m and a gauge f")
        try:
            series = kg_hausdorff_series(n, m, psi, f)
        except HypothesisError as err:
            return _not_met(str(err))
        return _settle(
            classify(series, n_terms=n_terms),
            lambda: None if (n >= 3 or monotone) else f"psi monotone required, n={n}",
        )

    # CantorLSV
    if f is None:
        raise DomainError("CantorLSV needs a gauge f")
    series = cantor_lsv_series(psi, f)
    return _settle(
        classify(series, n_terms=n_terms),
        lambda: None if monotone else "psi monotone required for the divergence branch",
    )
