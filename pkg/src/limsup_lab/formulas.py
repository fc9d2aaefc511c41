"""Closed-form dimension calculators and root-finding dimension solvers.

Most formulas are minima over a coordinate index j of explicit rational
expressions in the exponent data; ties are reported as argmin sets, never
broken.  The solver family (similarity, affinity, affine covers) brackets a
strictly monotone objective and bisects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import CANTOR_DIMENSION, ApproxFunction, IndexFamily
from .errors import DomainError
from .series import CONVERGES, SingularValueSequence, classify, svf_sum_series

SHRINK_A = "ShrinkA"
WEIGHT_TAU = "WeightTau"
SIDE_T = "SideT"

_TIE_TOL = 1e-12


@dataclass(frozen=True)
class ExponentVector:
    """Exponent data with role-specific admissibility.

    ShrinkA: per-axis shrinking exponents, non-decreasing with a_1 >= 1.
    WeightTau: positive weights, non-decreasing.
    SideT: side-length exponents, each >= 1.
    """

    values: tuple
    role: str

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise DomainError("exponent vector must be non-empty")
        if self.role == SHRINK_A:
            if vals[0] < 1:
                raise DomainError("shrinking exponents need a_1 >= 1")
            if any(vals[i] > vals[i + 1] for i in range(len(vals) - 1)):
                raise DomainError("shrinking exponents must be non-decreasing")
        elif self.role == WEIGHT_TAU:
            if any(v <= 0 for v in vals):
                raise DomainError("weights must be positive")
            if any(vals[i] > vals[i + 1] for i in range(len(vals) - 1)):
                raise DomainError("weights must be non-decreasing")
        elif self.role == SIDE_T:
            if any(v < 1 for v in vals):
                raise DomainError("side exponents must be >= 1")
        else:
            raise DomainError(f"unknown exponent role {self.role!r}")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def _coerce(vec, role: str) -> tuple:
    if isinstance(vec, ExponentVector):
        if vec.role != role:
            raise DomainError(f"expected a {role} vector, got {vec.role}")
        return vec.values
    return ExponentVector(tuple(vec), role).values


@dataclass(frozen=True)
class LinearMapSpec:
    """Singular values of one contracting linear map, largest first."""

    sigma: tuple

    def __post_init__(self):
        vals = tuple(float(s) for s in self.sigma)
        object.__setattr__(self, "sigma", vals)
        if not vals:
            raise DomainError("need at least one singular value")
        if any(not (0 < s < 1) for s in vals):
            raise DomainError("singular values must lie in (0, 1)")
        if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
            raise DomainError("singular values must be non-increasing")

    @property
    def k(self) -> int:
        return len(self.sigma)


@dataclass(frozen=True)
class MinFormula:
    """Value of a min_j formula together with every index attaining it."""

    value: float
    argmin: tuple

    def __float__(self) -> float:
        return self.value

    def to_json(self) -> dict:
        return {"value": self.value, "argmin": list(self.argmin)}


def _minimize(terms: Sequence[float]) -> MinFormula:
    best = min(terms)
    scale = max(abs(best), 1.0)
    arg = tuple(j + 1 for j, v in enumerate(terms) if v <= best + _TIE_TOL * scale)
    return MinFormula(float(best), arg)


# ---------------------------------------------------------------------------
# closed forms

def jb_dim(tau: float) -> float:
    """Critical dimension 2/(tau+1) for tau-approximable reals, tau > 1."""
    tau = float(tau)
    if tau <= 1:
        raise DomainError("dimension formula applies for tau > 1")
    return 2.0 / (tau + 1.0)


def levesley_dim(n: int, m: int, lam: float) -> float:
    """Two-branch formula in the lower order lam: ambient nm below the
    critical order n/m, else m(n-1) + (m+n)/(lam+1).  Continuous at n/m."""
    n, m = int(n), int(m)
    if n < 1 or m < 1:
        raise DomainError("n, m must be >= 1")
    lam = float(lam)
    if lam < 0:
        raise DomainError("lower order must be non-negative")
    if lam <= n / m:
        return float(n * m)
    return m * (n - 1) + (m + n) / (lam + 1.0)


def levesley_bounds_nonmonotone(n: int, m: int, lam: float) -> tuple[float, float]:
    """Dimension bounds when monotonicity is dropped (n >= 3): the gap
    between lower and upper is exactly 1/(lam+1)."""
    n, m = int(n), int(m)
    if n < 3:
        raise DomainError("non-monotone bounds stated for n >= 3")
    if m < 1:
        raise DomainError("m must be >= 1")
    lam = float(lam)
    if lam <= n / m:
        raise DomainError("bounds apply above the critical order n/m")
    base = m * (n - 1)
    return base + (m + n - 1) / (lam + 1.0), base + (m + n) / (lam + 1.0)


def rynne_dim(k: int, tau, nu: float) -> MinFormula:
    """min_j (k + nu + j tau_j - sum_{i<=j} tau_i) / (1 + tau_j) over
    non-decreasing positive weights with sum(tau) >= nu."""
    k = int(k)
    taus = _coerce(tau, WEIGHT_TAU)
    if len(taus) != k:
        raise DomainError("need one weight per coordinate")
    nu = float(nu)
    sigma = sum(taus)
    if sigma < nu:
        raise DomainError(f"sum(tau) = {sigma} < nu = {nu}")
    terms = []
    prefix = 0.0
    for j, tj in enumerate(taus, start=1):
        prefix += tj
        terms.append((k + nu + j * tj - prefix) / (1.0 + tj))
    return _minimize(terms)


def wwx_exponent(k: int, a) -> MinFormula:
    """min_j (k + j a_j - sum_{i<=j} a_i) / a_j for non-decreasing shrinking
    exponents with a_1 >= 1."""
    k = int(k)
    avals = _coerce(a, SHRINK_A)
    if len(avals) != k:
        raise DomainError("need one shrinking exponent per coordinate")
    terms = []
    prefix = 0.0
    for j, aj in enumerate(avals, start=1):
        prefix += aj
        terms.append((k + j * aj - prefix) / aj)
    return _minimize(terms)


def slicing_bounds(k: int, k0: int, a) -> float:
    """Lower bound for shrinking only k0 of k coordinates: the k0-dimensional
    critical exponent plus the k - k0 unshrunk directions."""
    k, k0 = int(k), int(k0)
    if not (1 <= k0 <= k):
        raise DomainError("need 1 <= k0 <= k")
    avals = _coerce(a, SHRINK_A)
    if len(avals) != k0:
        raise DomainError("need one shrinking exponent per shrunk coordinate")
    return wwx_exponent(k0, avals).value + (k - k0)


def rect_upper_bound(k: int, t, a) -> float:
    """min_j (sum t_i + j a_j t_j - sum_{i<=j} a_i t_i) / (a_j t_j) from the
    generation covers; requires the products a_i t_i non-decreasing."""
    k = int(k)
    tvals = _coerce(t, SIDE_T)
    avals = tuple(float(x) for x in a)
    if len(tvals) != k or len(avals) != k:
        raise DomainError("need one side and one shrinking exponent per coordinate")
    if any(x < 1 for x in avals):
        raise DomainError("shrinking exponents must be >= 1")
    prods = [ai * ti for ai, ti in zip(avals, tvals)]
    if any(prods[i] > prods[i + 1] + _TIE_TOL for i in range(len(prods) - 1)):
        raise DomainError("products a_i t_i must be non-decreasing")
    total = sum(tvals)
    terms = []
    prefix = 0.0
    for j, p in enumerate(prods, start=1):
        prefix += p
        terms.append((total + j * p - prefix) / p)
    return float(min(terms))


def cantor_critical(tau: float) -> float:
    """Critical gauge exponent (log 2 / log 3) / tau for approximation at
    geometric denominators inside the middle-third set."""
    tau = float(tau)
    if tau <= 0:
        raise DomainError("tau must be positive")
    return CANTOR_DIMENSION / tau


def random_cover_dim(s0: float) -> float:
    """min(1, s0) where s0 is the convergence exponent of the radii."""
    s0 = float(s0)
    if s0 < 0:
        raise DomainError("convergence exponent must be non-negative")
    return min(1.0, s0)


# ---------------------------------------------------------------------------
# counterexample parameters

@dataclass(frozen=True)
class CounterexampleParams:
    """Non-monotone approximating function pinned to a target dimension.

    The fast branch beta holds off the sparse index set J; on J the slow
    branch alpha takes over, and J's polynomial growth is tuned so that the
    split volume sums converge just barely above the target."""

    n: int
    m: int
    alpha: float
    s0: float
    beta: float
    gamma: float
    index_family: IndexFamily
    psi: ApproxFunction
    bounds: tuple

    def to_json(self) -> dict:
        return {
            "n": self.n, "m": self.m, "alpha": self.alpha, "s0": self.s0,
            "beta": self.beta, "gamma": self.gamma,
            "index_family": self.index_family.to_json(),
            "psi": self.psi.to_json(),
            "bounds": list(self.bounds),
        }


def counterexample_params(n: int, m: int, alpha: float, s0: float) -> CounterexampleParams:
    """beta = (n+m)/(s0 - m(n-1)) - 1 and gamma from the reciprocal identity
    2/gamma = n+m-1 - (alpha+1)(s0 - m(n-1)); J = {ceil(k^-gamma)}."""
    n, m = int(n), int(m)
    if n < 1 or m < 1:
        raise DomainError("n, m must be >= 1")
    alpha = float(alpha)
    if alpha <= n / m:
        raise DomainError("alpha must exceed the critical order n/m")
    s0 = float(s0)
    base = m * (n - 1)
    lower = base + (m + n - 1) / (alpha + 1.0)
    upper = base + (m + n) / (alpha + 1.0)
    if not (lower < s0 < upper):
        raise DomainError(
            f"target dimension {s0} outside the admissible interval ({lower}, {upper})"
        )
    beta = (n + m) / (s0 - base) - 1.0
    gamma = 2.0 / (n + m - 1.0 - (alpha + 1.0) * (s0 - base))
    fam = IndexFamily.polynomial_ceil(-gamma)
    psi = ApproxFunction.piecewise_power(alpha, beta, fam)
    return CounterexampleParams(
        n=n, m=m, alpha=alpha, s0=s0, beta=beta, gamma=gamma,
        index_family=fam, psi=psi, bounds=(lower, upper),
    )


# ---------------------------------------------------------------------------
# solvers

def similarity_dim(ratios: Sequence[float]) -> float:
    """Root of sum c_i^s = 1 by bisection; 0 for a single map."""
    cs = [float(c) for c in ratios]
    if not cs:
        raise DomainError("need at least one ratio")
    if any(not (0 < c < 1) for c in cs):
        raise DomainError("ratios must lie in (0, 1)")
    if len(cs) == 1:
        return 0.0

    def excess(s: float) -> float:
        return math.fsum(c**s for c in cs) - 1.0

    lo, hi = 0.0, math.log(len(cs)) / math.log(1.0 / max(cs)) + 1.0
    while excess(hi) > 0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        val = excess(mid)
        if abs(val) < 1e-13:
            return mid
        if val > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14:
            break
    return 0.5 * (lo + hi)


def singular_value_fn(spec, t: float) -> float:
    """Interpolated product of the largest singular values: in the regime
    n-1 <= t < n it is sigma_1...sigma_{n-1} sigma_n^(t-n+1); for t >= k the
    continuous extension (sigma_1...sigma_k)^(t/k)."""
    if not isinstance(spec, LinearMapSpec):
        spec = LinearMapSpec(tuple(spec))
    t = float(t)
    if t < 0:
        raise DomainError("exponent must be non-negative")
    k = spec.k
    if t >= k:
        return math.prod(spec.sigma) ** (t / k)
    n = int(math.floor(t)) + 1
    theta = t - n + 1
    return math.prod(spec.sigma[: n - 1]) * spec.sigma[n - 1] ** theta


def affinity_dim(maps: Sequence[LinearMapSpec]) -> float:
    """Root of sum_T Phi^t(T) = 1 over the maps; strictly decreasing in t,
    solved by bisection to 1e-12."""
    specs = [m if isinstance(m, LinearMapSpec) else LinearMapSpec(tuple(m)) for m in maps]
    if not specs:
        raise DomainError("need at least one map")
    k = specs[0].k
    if any(s.k != k for s in specs):
        raise DomainError("all maps must share the ambient dimension")

    def excess(t: float) -> float:
        return math.fsum(singular_value_fn(s, t) for s in specs) - 1.0

    sig_max = max(s.sigma[0] for s in specs)
    lo = 0.0
    hi = 2.0 * k + math.log(max(len(specs), 2)) / math.log(1.0 / sig_max)
    while excess(hi) > 0:
        hi *= 2.0
    if excess(0.0) <= 0:
        return 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return 0.5 * (lo + hi)


def affine_cover_dim(rule: SingularValueSequence, tol: float = 1e-9) -> float:
    """Summability threshold of t -> sum_i Phi^t(T_i) for a symbolic
    contraction-sequence rule, by bisection with the exact series classifier
    as the oracle.  Clamped to [0, k]."""
    if not isinstance(rule, SingularValueSequence):
        raise DomainError("affine cover dimension needs a symbolic singular value rule")
    k = rule.k

    def converges(t: float) -> bool:
        return classify(svf_sum_series(rule, t)).classification == CONVERGES

    if not converges(float(k)):
        return float(k)
    lo, hi = 0.0, float(k)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= 0:
            break
        if converges(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
