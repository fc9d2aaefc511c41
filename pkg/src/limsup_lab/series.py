"""Volume-sum construction and convergence classification.

Every dichotomy in the package reduces to one question: does a positive
series built from psi, a gauge f and the ambient exponents converge?  The
builders here produce `SeriesSpec` objects carrying a vectorized term rule
plus, whenever the inputs are symbolic, the exact exponent pair (E, B) with
term(q) = Theta(1) * q^E (log q)^B.  `classify` then applies the integral
test exactly, a ratio test for geometrically indexed sums, or a partial-sum
slope diagnostic when nothing symbolic is available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import (
    CANTOR_DIMENSION,
    ApproxFunction,
    DimensionFunction,
    IndexFamily,
    PowerSequence,
    validate_hypotheses,
)
from .errors import DomainError, HypothesisError, SizeError, UnsupportedError

CONVERGES = "Converges"
DIVERGES = "Diverges"
INCONCLUSIVE = "Inconclusive"

EXACT_EXPONENT = "ExactExponent"
INTEGRAL_TEST_LOG = "IntegralTestLog"
NUMERIC_DIAGNOSTIC = "NumericDiagnostic"

_BOUNDARY_TOL = 1e-12
_SLOPE_BAND = 0.05


@dataclass
class PartialSumDiagnostics:
    """Partial sums at geometric cutoffs and the fitted tail slope.

    tail_slope is d log(S_{2N} - S_N) / d log N; for a term ~ N^E this sits
    near E + 1, so term_exponent_estimate = tail_slope - 1.
    """

    cutoffs: list
    partial_sums: list
    tail_slope: float | None
    term_exponent_estimate: float | None
    saturated: bool = False
    note: str = ""

    def to_json(self) -> dict:
        return {
            "cutoffs": self.cutoffs,
            "partial_sums": self.partial_sums,
            "tail_slope": self.tail_slope,
            "term_exponent_estimate": self.term_exponent_estimate,
            "saturated": self.saturated,
            "note": self.note,
        }


@dataclass
class SeriesVerdict:
    classification: str
    method: str
    exponent: float | None = None
    log_exponent: float | None = None
    diagnostics: PartialSumDiagnostics | None = None
    components: tuple = ()
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "class": self.classification,
            "method": self.method,
            "exponent": self.exponent,
            "log_exponent": self.log_exponent,
        }
        if self.diagnostics is not None:
            out["diagnostics"] = self.diagnostics.to_json()
        if self.components:
            out["components"] = [c.to_json() for c in self.components]
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class SeriesSpec:
    """A positive series: vectorized term rule over the natural index, plus
    whatever exact structure the inputs admit."""

    kind: str
    term: Callable[[np.ndarray], np.ndarray]
    symbolic: tuple | None = None        # (E, B): term = Theta(1) n^E (log n)^B
    geometric: tuple | None = None       # (log_ratio, B): term = Theta(1) e^{n log_ratio} n^B
    components: tuple = ()               # split pieces whose verdicts combine
    finite: bool = False                 # finitely many nonzero terms
    meta: dict = field(default_factory=dict)

    def split(self) -> tuple:
        return self.components


# ---------------------------------------------------------------------------
# Euler totient sieve (shared by the coprime-denominator series and counts)

_TOTIENT_CAP = 10**7
_totient_cache: dict[int, np.ndarray] = {}


def euler_totient_sieve(limit: int) -> np.ndarray:
    """phi(0..limit) as int64.  Capped at 1e7; values beyond the cap are only
    ever used diagnostically, never exactly."""
    limit = int(limit)
    if limit > _TOTIENT_CAP:
        raise SizeError(f"totient sieve capped at {_TOTIENT_CAP}, got {limit}")
    for cached in sorted(_totient_cache):
        if cached >= limit:
            return _totient_cache[cached][: limit + 1]
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if phi[p] == p:  # p is prime
            phi[p::p] -= phi[p::p] // p
    _totient_cache.clear()
    _totient_cache[limit] = phi
    return phi


# ---------------------------------------------------------------------------
# builders

def _safe_gauge(f: DimensionFunction, l: float = 0.0):
    """r -> r^-l f(r), extended by 0 at r = 0 (its limit for valid gauges)."""

    def g(r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        pos = r > 0
        if np.any(pos):
            rp = r[pos]
            vals = f.eval_many(rp)
            if l != 0.0:
                vals = vals * rp ** (-l)
            out[pos] = vals
        return out

    return g


def _power_log_pair(f: DimensionFunction | None) -> tuple[float, float] | None:
    if f is None:
        return None
    if f.form == "power_log":
        return f.s, f.b
    return None


def _psi_split_series(kind, psi, exponent_of, term_core, meta):
    """Split a piecewise-power psi series into on-set and off-set components."""
    fam = psi.index_family
    E_on, B = exponent_of(psi.alpha)
    E_off, _ = exponent_of(psi.beta)
    members_of = fam.contains_many

    def off_term(qs):
        qs = np.asarray(qs, dtype=float)
        vals = term_core(qs, qs ** (-psi.beta))
        return np.where(members_of(qs), 0.0, vals)

    off = SeriesSpec(
        kind=f"{kind}[off-set]",
        term=off_term,
        symbolic=(E_off, B),
        meta={**meta, "branch": "off", "exponent_branch": psi.beta},
    )

    def on_term(ks):
        # the on-set lives on the sparse family by construction, so the
        # alpha branch applies without any membership lookup
        a = fam.sequence_values(np.asarray(ks, dtype=float))
        return term_core(a, a ** (-psi.alpha))

    if fam.kind == "polynomial_ceil":
        on = SeriesSpec(
            kind=f"{kind}[on-set]",
            term=on_term,
            symbolic=(fam.p * E_on, B),
            meta={**meta, "branch": "on", "index_exponent": fam.p},
        )
    elif fam.kind == "geometric":
        on = SeriesSpec(
            kind=f"{kind}[on-set]",
            term=on_term,
            geometric=(math.log(fam.base) * E_on, B),
            meta={**meta, "branch": "on"},
        )
    elif fam.kind == "explicit":
        on = SeriesSpec(
            kind=f"{kind}[on-set]", term=on_term, finite=True,
            meta={**meta, "branch": "on"},
        )
    else:  # all_naturals: the "piecewise" function is the alpha branch everywhere
        on = SeriesSpec(
            kind=f"{kind}[on-set]", term=on_term, symbolic=(E_on, B),
            meta={**meta, "branch": "on"},
        )
    return on, off


def _psi_series(kind, psi, f, exponent_of, term_core, meta) -> SeriesSpec:
    fb = _power_log_pair(f)
    symbolic = None
    components = ()
    if psi.form == "power" and (f is None or fb is not None):
        symbolic = exponent_of(psi.tau)
    elif psi.form == "piecewise_power" and (f is None or fb is not None):
        components = _psi_split_series(kind, psi, exponent_of, term_core, meta)

    def term(qs):
        qs = np.asarray(qs, dtype=float)
        return term_core(qs, psi.eval_many(qs))

    return SeriesSpec(
        kind=kind, term=term, symbolic=symbolic, components=components, meta=meta
    )


def khintchine_sim_series(k: int, psi: ApproxFunction) -> SeriesSpec:
    """sum_q psi(q)^k — the volume sum for simultaneous approximation in k
    coordinates (Lebesgue dichotomy)."""
    k = int(k)
    if k < 1:
        raise DomainError("k must be >= 1")

    def term_core(qs, vals):
        return vals ** k

    return _psi_series(
        "khintchine_sim", psi, None,
        lambda tau: (-tau * k, 0.0), term_core, {"k": k},
    )


def jarnik_series(k: int, psi: ApproxFunction, f: DimensionFunction) -> SeriesSpec:
    """sum_q q^k f(psi(q)/q) — the Hausdorff-gauge volume sum for simultaneous
    approximation."""
    k = int(k)
    if k < 1:
        raise DomainError("k must be >= 1")
    g = _safe_gauge(f)

    def term_core(qs, vals):
        return qs ** k * g(vals / qs)

    fb = _power_log_pair(f)

    def exponent_of(tau):
        s, b = fb
        return k - (tau + 1.0) * s, b

    return _psi_series("jarnik", psi, f, exponent_of, term_core,
                       {"k": k, "f": f.to_json()})


def kg_series(n: int, m: int, psi: ApproxFunction) -> SeriesSpec:
    """sum_q q^(n-1) psi(q)^m — the Lebesgue volume sum for systems of m
    linear forms in n variables."""
    n, m = int(n), int(m)
    if n < 1 or m < 1:
        raise DomainError("n, m must be >= 1")

    def term_core(qs, vals):
        return qs ** (n - 1) * vals ** m

    return _psi_series(
        "kg", psi, None, lambda tau: (n - 1.0 - tau * m, 0.0), term_core,
        {"n": n, "m": m},
    )


def kg_hausdorff_series(n: int, m: int, psi: ApproxFunction, f: DimensionFunction) -> SeriesSpec:
    """sum_q q^(n+m-1) g(psi(q)/q) with g(r) = r^(-m(n-1)) f(r).

    Builds only when g is itself a valid gauge (checked through
    `validate_hypotheses` with l = m(n-1)); otherwise raises HypothesisError.
    """
    n, m = int(n), int(m)
    if n < 1 or m < 1:
        raise DomainError("n, m must be >= 1")
    l = m * (n - 1)
    report = validate_hypotheses(f, k=n * m, l=l)
    if not report.g_valid:
        raise HypothesisError(f"g(r) = r^-{l} f(r) is not a valid gauge: {report.g_reason}")
    g = _safe_gauge(f, l=float(l))

    def term_core(qs, vals):
        return qs ** (n + m - 1) * g(vals / qs)

    fb = _power_log_pair(f)

    def exponent_of(tau):
        s, b = fb
        return n + m - 1.0 - (tau + 1.0) * (s - l), b

    return _psi_series(
        "kg_hausdorff", psi, f, exponent_of, term_core,
        {"n": n, "m": m, "l": l, "f": f.to_json()},
    )


def duffin_schaeffer_series(k: int, psi: ApproxFunction, f: DimensionFunction | None = None) -> SeriesSpec:
    """sum_q phi(q)^k f(psi(q)/q) — coprime-denominator volume sum.

    phi oscillates, so no exact exponent is claimed; classification is always
    the numeric partial-sum diagnostic (sieve capped at 1e7).
    """
    k = int(k)
    if k < 1:
        raise DomainError("k must be >= 1")
    # f = r^k recovers the volume sum phi(q)^k (psi(q)/q)^k
    g = _safe_gauge(f if f is not None else DimensionFunction.power(k))

    def term(qs):
        qs = np.asarray(qs, dtype=float)
        hi = int(qs.max(initial=1))
        phi = euler_totient_sieve(hi).astype(float)
        w = phi[qs.astype(np.int64)] ** k
        return w * g(psi.eval_many(qs) / qs)

    meta = {"k": k}
    if f is not None:
        meta["f"] = f.to_json()
    return SeriesSpec(kind="duffin_schaeffer", term=term, meta=meta)


def cantor_lsv_series(
    psi: ApproxFunction,
    f: DimensionFunction,
    base_family: IndexFamily | None = None,
) -> SeriesSpec:
    """sum_n f(psi(b_n)) * b_n^(log 2 / log 3) over a geometric modulus family
    (default b_n = 3^n) — the volume sum for approximation restricted to the
    middle-third Cantor set's natural denominators."""
    fam = base_family if base_family is not None else IndexFamily.geometric(3)
    if fam.kind != "geometric":
        raise UnsupportedError("restricted approximation expects a geometric modulus family")
    g = _safe_gauge(f)

    def term(ts):
        ts = np.asarray(ts, dtype=float)
        b = float(fam.base) ** (ts - 1.0)
        return g(psi.eval_many(b)) * b ** CANTOR_DIMENSION

    geometric = None
    fb = _power_log_pair(f)
    if psi.form == "power" and fb is not None:
        s, b_log = fb
        geometric = (math.log(fam.base) * (CANTOR_DIMENSION - psi.tau * s), b_log)
    return SeriesSpec(
        kind="cantor_lsv", term=term, geometric=geometric,
        meta={"base": fam.base, "f": f.to_json()},
    )


def power_radii_series(rule: PowerSequence, s: float) -> SeriesSpec:
    """sum_i r_i^s for a power-law radius rule r_i = c i^-p."""
    s = float(s)
    if s < 0:
        raise DomainError("content exponent must be non-negative")

    def term(ns):
        return rule.eval_many(ns) ** s

    return SeriesSpec(
        kind="power_radii", term=term,
        symbolic=(-rule.decay * s, rule.log_exp * s),
        meta={"rule": rule.to_json(), "s": s},
    )


# ---------------------------------------------------------------------------
# singular value function sums for sequences of affine contractions

@dataclass(frozen=True)
class SingularValueSequence:
    """Per-axis singular values of a sequence of diagonal contractions,
    sigma_j(T_i) = coefs[j] * i^-rates[j] (kind "power") or
    coefs[j] * rates[j]^i (kind "geometric"), ordered so that
    sigma_1 >= ... >= sigma_k for every i."""

    coefs: tuple
    rates: tuple
    kind: str = "power"

    def __post_init__(self):
        if len(self.coefs) != len(self.rates) or not self.coefs:
            raise DomainError("coefs and rates must be equal-length and non-empty")
        if any(not (0 < c < 1) for c in self.coefs):
            raise DomainError("coefficients must lie in (0, 1)")
        if list(self.coefs) != sorted(self.coefs, reverse=True):
            raise DomainError("coefficients must be non-increasing")
        if self.kind == "power":
            if any(not (r > 0) for r in self.rates):
                raise DomainError("power rates must be positive")
            if list(self.rates) != sorted(self.rates):
                raise DomainError("power rates must be non-decreasing (axis ordering)")
        elif self.kind == "geometric":
            if any(not (0 < r < 1) for r in self.rates):
                raise DomainError("geometric rates must lie in (0, 1)")
            if list(self.rates) != sorted(self.rates, reverse=True):
                raise DomainError("geometric rates must be non-increasing (axis ordering)")
        else:
            raise DomainError(f"unknown singular value rule kind {self.kind!r}")

    @property
    def k(self) -> int:
        return len(self.coefs)

    def sigma(self, i: int) -> tuple:
        if self.kind == "power":
            return tuple(c * float(i) ** (-r) for c, r in zip(self.coefs, self.rates))
        return tuple(c * r ** float(i) for c, r in zip(self.coefs, self.rates))

    def to_json(self) -> dict:
        return {"kind": self.kind, "coefs": list(self.coefs), "rates": list(self.rates)}


def svf_regime(t: float, k: int) -> tuple[int, float]:
    """For 0 <= t < k return (n, theta): the singular value function is
    sigma_1 ... sigma_{n-1} * sigma_n^theta with n - 1 <= t < n and
    theta = t - n + 1."""
    if t < 0:
        raise DomainError("singular value exponent must be non-negative")
    n = int(math.floor(t)) + 1
    if n > k:
        n = k
    return n, t - n + 1


def svf_sum_series(seq: SingularValueSequence, t: float) -> SeriesSpec:
    """sum_i Phi^t(T_i), with the continuous extension (sigma_1...sigma_k)^(t/k)
    for t >= k."""
    t = float(t)
    k = seq.k
    if t < 0:
        raise DomainError("singular value exponent must be non-negative")
    if seq.kind == "power":
        if t >= k:
            P = sum(seq.rates) * t / k
            C = math.prod(seq.coefs) ** (t / k)
        else:
            n, theta = svf_regime(t, k)
            P = sum(seq.rates[: n - 1]) + theta * seq.rates[n - 1]
            C = math.prod(seq.coefs[: n - 1]) * seq.coefs[n - 1] ** theta

        def term(ns):
            return C * np.asarray(ns, dtype=float) ** (-P)

        return SeriesSpec(
            kind="svf_sum", term=term, symbolic=(-P, 0.0),
            meta={"rule": seq.to_json(), "t": t},
        )
    # geometric contraction rates: a geometric series in i
    if t >= k:
        lr = sum(math.log(r) for r in seq.rates) * t / k
        C = math.prod(seq.coefs) ** (t / k)
    else:
        n, theta = svf_regime(t, k)
        lr = sum(math.log(r) for r in seq.rates[: n - 1]) + theta * math.log(seq.rates[n - 1])
        C = math.prod(seq.coefs[: n - 1]) * seq.coefs[n - 1] ** theta

    def term(ns):
        return C * np.exp(lr * np.asarray(ns, dtype=float))

    return SeriesSpec(
        kind="svf_sum", term=term, geometric=(lr, 0.0),
        meta={"rule": seq.to_json(), "t": t},
    )


_BUILDERS = {
    "khintchine_sim": lambda **kw: khintchine_sim_series(kw["k"], kw["psi"]),
    "jarnik": lambda **kw: jarnik_series(kw["k"], kw["psi"], kw["f"]),
    "kg": lambda **kw: kg_series(kw["n"], kw["m"], kw["psi"]),
    "kg_hausdorff": lambda **kw: kg_hausdorff_series(kw["n"], kw["m"], kw["psi"], kw["f"]),
    "duffin_schaeffer": lambda **kw: duffin_schaeffer_series(kw["k"], kw["psi"], kw.get("f")),
    "cantor_lsv": lambda **kw: cantor_lsv_series(kw["psi"], kw["f"], kw.get("base_family")),
    "power_radii": lambda **kw: power_radii_series(kw["rule"], kw["s"]),
    "svf_sum": lambda **kw: svf_sum_series(kw["rule"], kw["t"]),
}


def build_series(kind: str, **params) -> SeriesSpec:
    """Uniform entry point used by the CLI; see the individual builders."""
    key = kind.replace("-", "_")
    if key not in _BUILDERS:
        raise DomainError(f"unknown series kind {kind!r}")
    return _BUILDERS[key](**params)


# ---------------------------------------------------------------------------
# classification

def partial_sum_diagnostics(series: SeriesSpec, n_terms: int = 10**6) -> PartialSumDiagnostics:
    """Partial sums at geometric cutoffs plus a tail-slope fit.

    The slope of log(S_{2N} - S_N) against log N estimates E + 1 for a term
    ~ N^E; overflowing terms are clamped and flagged as saturated.
    """
    n_terms = int(n_terms)
    if n_terms < 100:
        raise DomainError("diagnostics need at least 100 terms")
    ns = np.arange(1, n_terms + 1, dtype=float)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        vals = np.asarray(series.term(ns), dtype=float)
    # clamp low enough that the running sum itself cannot overflow
    saturated = bool(np.any(~np.isfinite(vals)) or np.any(vals > 1e280))
    if saturated:
        vals = np.nan_to_num(vals, nan=0.0, posinf=1e280, neginf=0.0)
        vals = np.minimum(vals, 1e280)
    sums = np.cumsum(vals)
    cutoffs = []
    c = n_terms
    while c >= 50 and len(cutoffs) < 8:
        cutoffs.append(c)
        c //= 2
    cutoffs = sorted(cutoffs)
    partial = [float(sums[c - 1]) for c in cutoffs]
    blocks = np.diff(np.asarray(partial))
    lows = np.asarray(cutoffs[:-1], dtype=float)
    keep = blocks > 0
    note = ""
    if keep.sum() < 2:
        tail = None
        est = None
        if len(blocks) and blocks[-1] <= 0:
            note = "tail blocks vanished numerically"
    else:
        slope = np.polyfit(np.log(lows[keep]), np.log(blocks[keep]), 1)[0]
        tail = float(slope)
        est = tail - 1.0
    return PartialSumDiagnostics(
        cutoffs=cutoffs, partial_sums=partial, tail_slope=tail,
        term_exponent_estimate=est, saturated=saturated, note=note,
    )


def _classify_exponent(E: float, B: float) -> SeriesVerdict:
    if E > -1.0 + _BOUNDARY_TOL:
        cls = DIVERGES
    elif E < -1.0 - _BOUNDARY_TOL:
        cls = CONVERGES
    else:
        # boundary term 1/(n log^(-B) n): integral test on the log factor;
        # B = -1 gives sum 1/(n log n), divergent
        cls = DIVERGES if B >= -1.0 else CONVERGES
    boundary = abs(E + 1.0) <= _BOUNDARY_TOL
    method = INTEGRAL_TEST_LOG if (boundary or B != 0.0) else EXACT_EXPONENT
    return SeriesVerdict(cls, method, exponent=E, log_exponent=B)


def _classify_geometric(log_ratio: float, B: float) -> SeriesVerdict:
    if log_ratio > _BOUNDARY_TOL:
        return SeriesVerdict(DIVERGES, EXACT_EXPONENT, exponent=log_ratio, log_exponent=B,
                             note="geometric ratio > 1")
    if log_ratio < -_BOUNDARY_TOL:
        return SeriesVerdict(CONVERGES, EXACT_EXPONENT, exponent=log_ratio, log_exponent=B,
                             note="geometric ratio < 1")
    cls = DIVERGES if B >= -1.0 else CONVERGES
    return SeriesVerdict(cls, INTEGRAL_TEST_LOG, exponent=0.0, log_exponent=B,
                         note="unit ratio, polynomial factor decides")


def classify(series: SeriesSpec, n_terms: int = 10**6) -> SeriesVerdict:
    """Converges / Diverges / Inconclusive, with the method that decided."""
    if series.components:
        kids = tuple(classify(c, n_terms=n_terms) for c in series.components)
        if any(k.classification == DIVERGES for k in kids):
            cls = DIVERGES
        elif all(k.classification == CONVERGES for k in kids):
            cls = CONVERGES
        else:
            cls = INCONCLUSIVE
        methods = {k.method for k in kids}
        method = (
            EXACT_EXPONENT if methods == {EXACT_EXPONENT}
            else (NUMERIC_DIAGNOSTIC if NUMERIC_DIAGNOSTIC in methods else INTEGRAL_TEST_LOG)
        )
        return SeriesVerdict(cls, method, components=kids,
                             note="split into on-set and off-set components")
    if series.finite:
        return SeriesVerdict(CONVERGES, EXACT_EXPONENT, note="finitely many nonzero terms")
    if series.symbolic is not None:
        return _classify_exponent(*series.symbolic)
    if series.geometric is not None:
        return _classify_geometric(*series.geometric)
    diag = partial_sum_diagnostics(series, n_terms=n_terms)
    if diag.tail_slope is None:
        if diag.note == "tail blocks vanished numerically":
            return SeriesVerdict(CONVERGES, NUMERIC_DIAGNOSTIC, diagnostics=diag,
                                 note=diag.note)
        return SeriesVerdict(INCONCLUSIVE, NUMERIC_DIAGNOSTIC, diagnostics=diag)
    if abs(diag.tail_slope) < _SLOPE_BAND:
        cls = INCONCLUSIVE
    elif diag.tail_slope > 0:
        cls = DIVERGES
    else:
        cls = CONVERGES
    return SeriesVerdict(
        cls, NUMERIC_DIAGNOSTIC,
        exponent=diag.term_exponent_estimate, diagnostics=diag,
    )


# ---------------------------------------------------------------------------
# exponent of convergence

@dataclass(frozen=True)
class ConvergenceExponent:
    """inf{ s : sum x_i^-s (or r_i^s) converges }, clamped to >= 0."""

    value: float
    exact: bool
    half_width: float = 0.0

    def to_json(self) -> dict:
        return {"value": self.value, "exact": self.exact, "half_width": self.half_width}


def exponent_of_convergence(obj) -> ConvergenceExponent:
    """Exact for index families and power radius rules; a slope fit flagged
    non-exact for sampled radii."""
    if isinstance(obj, IndexFamily):
        if obj.kind == "all_naturals":
            return ConvergenceExponent(1.0, True)
        if obj.kind == "geometric":
            return ConvergenceExponent(0.0, True)
        if obj.kind == "polynomial_ceil":
            return ConvergenceExponent(1.0 / obj.p, True)
        return ConvergenceExponent(0.0, True)  # finite sums converge for every exponent
    if isinstance(obj, PowerSequence):
        if obj.decay <= 0:
            raise DomainError("radius rule must decay")
        return ConvergenceExponent(1.0 / obj.decay, True)
    radii = np.asarray(obj, dtype=float)
    if radii.ndim != 1 or len(radii) < 8:
        raise DomainError("sampled radii need at least 8 values")
    if np.any(radii <= 0):
        raise DomainError("radii must be positive")
    idx = np.arange(1, len(radii) + 1, dtype=float)
    x, y = np.log(idx), np.log(radii)
    slope, _ = np.polyfit(x, y, 1)
    resid = y - np.polyval(np.polyfit(x, y, 1), x)
    se = math.sqrt(float(resid @ resid) / max(len(x) - 2, 1) / float(((x - x.mean()) ** 2).sum()))
    p_hat = -slope
    if p_hat <= 0:
        return ConvergenceExponent(math.inf, False, math.inf)
    return ConvergenceExponent(1.0 / p_hat, False, se / p_hat**2)
