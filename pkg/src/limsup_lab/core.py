"""Function families shared by every pipeline in the package.

Dimension functions f(r) gauge Hausdorff content; approximating functions
psi(q) shrink with the denominator/modulus q; index families carve out the
subset of moduli a restricted-approximation set may use.  Everything here is
immutable and evaluates on scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, RangeError, SizeError

# Hausdorff dimension of the middle-third Cantor set, used as the ambient
# regularity exponent for base-3 restricted approximation.
CANTOR_DIMENSION = math.log(2.0) / math.log(3.0)

NON_INCREASING = "non_increasing"
NON_MONOTONE = "non_monotone"
UNKNOWN = "unknown"

_INV_E = 1.0 / math.e


def _log_factor(r):
    """log(1/r), clamped to 1 for r >= 1/e so powers of it stay finite/positive."""
    r = np.asarray(r, dtype=float)
    out = np.where(r < _INV_E, np.log(1.0 / np.maximum(r, 1e-320)), 1.0)
    return out


@dataclass(frozen=True)
class DimensionFunction:
    """A gauge r -> r^s * (log 1/r)^b, or a sampled table of one.

    The log factor is clamped to 1 for r >= 1/e when b != 0; only behaviour
    as r -> 0 is ever consumed by the dichotomy theorems.
    """

    form: str  # "power_log" | "sampled"
    s: float | None = None
    b: float = 0.0
    radii: tuple = ()   # sampled support, ascending
    values: tuple = ()

    @classmethod
    def power_log(cls, s: float, b: float = 0.0) -> "DimensionFunction":
        if not (s > 0):
            raise DomainError(f"power exponent must be positive, got s={s}")
        return cls(form="power_log", s=float(s), b=float(b))

    @classmethod
    def power(cls, s: float) -> "DimensionFunction":
        return cls.power_log(s, 0.0)

    @classmethod
    def from_table(cls, pairs: Iterable[tuple[float, float]]) -> "DimensionFunction":
        pts = sorted((float(r), float(v)) for r, v in pairs)
        if len(pts) < 2:
            raise DomainError("sampled dimension function needs at least two points")
        radii = tuple(r for r, _ in pts)
        values = tuple(v for _, v in pts)
        if any(r <= 0 for r in radii):
            raise DomainError("sampled radii must be positive")
        if any(v < 0 for v in values):
            raise DomainError("sampled values must be non-negative")
        if any(values[i] > values[i + 1] for i in range(len(values) - 1)):
            raise DomainError("sampled values must be non-decreasing in r")
        _check_zero_trend(radii, values)
        return cls(form="sampled", radii=radii, values=values)

    def __call__(self, r: float) -> float:
        return float(self.eval_many(np.asarray([r], dtype=float))[0])

    def eval_many(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0):
            raise DomainError("dimension functions are defined for r > 0 only")
        if self.form == "power_log":
            if self.b == 0.0:
                return r ** self.s
            return (r ** self.s) * _log_factor(r) ** self.b
        lo, hi = self.radii[0], self.radii[-1]
        if np.any(r < lo * (1 - 1e-12)) or np.any(r > hi * (1 + 1e-12)):
            raise RangeError(f"r outside sampled support [{lo}, {hi}]")
        return np.interp(r, np.asarray(self.radii), np.asarray(self.values))

    def to_json(self) -> dict:
        if self.form == "power_log":
            return {"form": "power_log", "s": self.s, "b": self.b}
        return {"form": "sampled", "radii": list(self.radii), "values": list(self.values)}

    @classmethod
    def from_json(cls, obj: dict) -> "DimensionFunction":
        if obj["form"] == "power_log":
            return cls.power_log(obj["s"], obj.get("b", 0.0))
        return cls.from_table(zip(obj["radii"], obj["values"]))


def _check_zero_trend(radii, values):
    # A finite table cannot witness f(r) -> 0; as a proxy the value at the
    # smallest radius must sit within 10x of the power-law trend through the
    # next two points, and the table must not be flat outright.
    if values[0] >= values[-1]:
        raise DomainError(
            "sampled dimension function does not trend to zero: table is constant"
        )
    if len(radii) < 3:
        return
    r0, r1, r2 = radii[0], radii[1], radii[2]
    v0, v1, v2 = values[0], values[1], values[2]
    if v1 <= 0 or v2 <= 0:
        return
    slope = math.log(v2 / v1) / math.log(r2 / r1)
    predicted = v1 * (r0 / r1) ** slope
    if predicted > 0 and v0 > 10.0 * predicted:
        raise DomainError(
            "sampled dimension function does not trend to zero: "
            f"value {v0} at r={r0} exceeds 10x the local power-law trend {predicted}"
        )


@dataclass(frozen=True)
class IndexFamily:
    """A set of admissible moduli: all of N, powers of a base, ceil(k^p), or
    an explicit finite list.  Enumeration is strictly increasing."""

    kind: str  # "all_naturals" | "geometric" | "polynomial_ceil" | "explicit"
    base: int | None = None
    p: float | None = None
    explicit_members: tuple = ()

    @classmethod
    def all_naturals(cls) -> "IndexFamily":
        return cls(kind="all_naturals")

    @classmethod
    def geometric(cls, base: int) -> "IndexFamily":
        if int(base) != base or base < 2:
            raise DomainError(f"geometric base must be an integer >= 2, got {base}")
        return cls(kind="geometric", base=int(base))

    @classmethod
    def polynomial_ceil(cls, p: float) -> "IndexFamily":
        # p < 1 would repeat values, so the entries would not be distinct
        if not (p >= 1):
            raise DomainError(f"polynomial exponent must be >= 1, got {p}")
        return cls(kind="polynomial_ceil", p=float(p))

    @classmethod
    def explicit(cls, members: Iterable[int]) -> "IndexFamily":
        ms = sorted({int(m) for m in members})
        if not ms or ms[0] < 1:
            raise DomainError("explicit members must be positive integers")
        return cls(kind="explicit", explicit_members=tuple(ms))

    # --- the k-th entry of the defining sequence (before dedup) ---

    def sequence_value(self, k: int) -> int:
        if k < 1:
            raise DomainError("sequence index starts at 1")
        if self.kind == "all_naturals":
            return k
        if self.kind == "geometric":
            return self.base ** (k - 1)
        if self.kind == "polynomial_ceil":
            if float(self.p).is_integer():
                return k ** int(self.p)  # exact big-int arithmetic
            v = math.pow(float(k), self.p)
            if v > 2**53:
                raise SizeError("non-integer exponent beyond exact float range")
            return math.ceil(v)
        if k > len(self.explicit_members):
            raise RangeError("index beyond explicit family")
        return self.explicit_members[k - 1]

    def sequence_values(self, ks: np.ndarray) -> np.ndarray:
        """Float-valued a_k for large vectorized sweeps (exact to 1 ulp)."""
        ks = np.asarray(ks, dtype=float)
        if self.kind == "all_naturals":
            return ks
        if self.kind == "geometric":
            return float(self.base) ** (ks - 1)
        if self.kind == "polynomial_ceil":
            return np.ceil(ks ** self.p - 1e-12)
        return np.asarray([self.sequence_value(int(k)) for k in ks], dtype=float)

    # --- set view ---

    def members_up_to(self, bound: int) -> np.ndarray:
        """Strictly increasing members <= bound, as int64."""
        bound = int(bound)
        if bound < 1:
            return np.zeros(0, dtype=np.int64)
        if self.kind == "all_naturals":
            if bound > 10**8:
                raise SizeError("enumeration bound too large")
            return np.arange(1, bound + 1, dtype=np.int64)
        if self.kind == "geometric":
            out, v = [], 1
            while v <= bound:
                out.append(v)
                v *= self.base
            return np.asarray(out, dtype=np.int64)
        if self.kind == "polynomial_ceil":
            kmax = int(math.ceil(bound ** (1.0 / self.p))) + 2
            if float(self.p).is_integer():
                ks = np.arange(1, kmax + 1, dtype=np.float64)
                vals = np.ceil(ks ** self.p - 1e-12)
            else:
                if bound > 2**53:
                    raise SizeError("non-integer exponent beyond exact float range")
                ks = np.arange(1, kmax + 1, dtype=np.float64)
                vals = np.ceil(ks ** self.p - 1e-12)
            vals = vals[vals <= bound].astype(np.int64)
            return np.unique(vals)
        ms = np.asarray(self.explicit_members, dtype=np.int64)
        return ms[ms <= bound]

    def contains(self, q: int) -> bool:
        q = int(q)
        if q < 1:
            return False
        if self.kind == "all_naturals":
            return True
        if self.kind == "geometric":
            v = 1
            while v < q:
                v *= self.base
            return v == q
        if self.kind == "polynomial_ceil":
            k0 = int(q ** (1.0 / self.p))
            for k in range(max(1, k0 - 2), k0 + 4):
                if self.sequence_value(k) == q:
                    return True
            return False
        return q in self.explicit_members

    def contains_many(self, qs: np.ndarray) -> np.ndarray:
        qs = np.asarray(qs)
        if self.kind == "all_naturals":
            return np.ones(qs.shape, dtype=bool)
        hi = int(qs.max(initial=0))
        members = self.members_up_to(hi) if hi >= 1 else np.zeros(0, np.int64)
        return np.isin(qs.astype(np.int64), members)

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.base is not None:
            out["base"] = self.base
        if self.p is not None:
            out["p"] = self.p
        if self.explicit_members:
            out["members"] = list(self.explicit_members)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "IndexFamily":
        kind = obj["kind"]
        if kind == "all_naturals":
            return cls.all_naturals()
        if kind == "geometric":
            return cls.geometric(obj["base"])
        if kind == "polynomial_ceil":
            return cls.polynomial_ceil(obj["p"])
        return cls.explicit(obj["members"])


@dataclass(frozen=True)
class ApproxFunction:
    """An approximating function psi: N -> R_{>=0}.

    Forms: a pure power q^-tau, a two-exponent piecewise power that is q^-alpha
    on an index family and q^-beta off it, or an exact table.  The monotone
    flag is the tri-state consumed by divergence-branch hypothesis checks.
    """

    form: str  # "power" | "piecewise_power" | "sampled"
    tau: float | None = None
    alpha: float | None = None
    beta: float | None = None
    index_family: IndexFamily | None = None
    qs: tuple = ()
    table_values: tuple = ()
    monotone_flag: str = UNKNOWN

    @classmethod
    def power(cls, tau: float, monotone_flag: str | None = None) -> "ApproxFunction":
        tau = float(tau)
        if monotone_flag is None:
            # an increasing psi fails the "monotonically decreasing" theorem
            # hypotheses, so tau < 0 is treated as non-monotone for them
            monotone_flag = NON_INCREASING if tau >= 0 else NON_MONOTONE
        return cls(form="power", tau=tau, monotone_flag=monotone_flag)

    @classmethod
    def piecewise_power(
        cls,
        alpha: float,
        beta: float,
        index_family: IndexFamily,
        monotone_flag: str | None = None,
    ) -> "ApproxFunction":
        alpha, beta = float(alpha), float(beta)
        if alpha <= 0 or beta <= 0:
            raise DomainError("piecewise exponents must be positive")
        if monotone_flag is None:
            monotone_flag = NON_INCREASING if alpha == beta else NON_MONOTONE
        return cls(
            form="piecewise_power",
            alpha=alpha,
            beta=beta,
            index_family=index_family,
            monotone_flag=monotone_flag,
        )

    @classmethod
    def from_table(
        cls, pairs: Iterable[tuple[int, float]], monotone_flag: str | None = None
    ) -> "ApproxFunction":
        pts = sorted((int(q), float(v)) for q, v in pairs)
        if not pts:
            raise DomainError("sampled psi needs at least one point")
        if pts[0][0] < 1:
            raise DomainError("moduli must be positive integers")
        if len({q for q, _ in pts}) != len(pts):
            raise DomainError("duplicate moduli in table")
        if any(v < 0 for _, v in pts):
            raise DomainError("psi values must be non-negative")
        qs = tuple(q for q, _ in pts)
        vals = tuple(v for _, v in pts)
        if monotone_flag is None:
            noninc = all(vals[i] >= vals[i + 1] for i in range(len(vals) - 1))
            monotone_flag = NON_INCREASING if noninc else NON_MONOTONE
        return cls(form="sampled", qs=qs, table_values=vals, monotone_flag=monotone_flag)

    def __call__(self, q: int) -> float:
        return float(self.eval_many(np.asarray([q]))[0])

    def eval_many(self, qs: np.ndarray) -> np.ndarray:
        qs = np.asarray(qs, dtype=float)
        if np.any(qs < 1):
            raise DomainError("psi is defined on q >= 1")
        if self.form == "power":
            return qs ** (-self.tau)
        if self.form == "piecewise_power":
            if qs.max(initial=1) > 2**62:
                raise SizeError("piecewise membership test beyond integer range")
            on = self.index_family.contains_many(qs.astype(np.int64))
            return np.where(on, qs ** (-self.alpha), qs ** (-self.beta))
        sq = np.asarray(self.qs, dtype=float)
        idx = np.searchsorted(sq, qs)
        bad = (idx >= len(sq)) | (sq[np.minimum(idx, len(sq) - 1)] != qs)
        if np.any(bad):
            missing = int(qs[bad][0])
            raise RangeError(f"q={missing} not in sampled psi table")
        return np.asarray(self.table_values, dtype=float)[idx]

    def to_json(self) -> dict:
        if self.form == "power":
            return {"form": "power", "tau": self.tau, "monotone_flag": self.monotone_flag}
        if self.form == "piecewise_power":
            return {
                "form": "piecewise_power",
                "alpha": self.alpha,
                "beta": self.beta,
                "index_family": self.index_family.to_json(),
                "monotone_flag": self.monotone_flag,
            }
        return {
            "form": "sampled",
            "qs": list(self.qs),
            "values": list(self.table_values),
            "monotone_flag": self.monotone_flag,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ApproxFunction":
        form = obj["form"]
        flag = obj.get("monotone_flag")
        if form == "power":
            return cls.power(obj["tau"], monotone_flag=flag)
        if form == "piecewise_power":
            return cls.piecewise_power(
                obj["alpha"], obj["beta"], IndexFamily.from_json(obj["index_family"]),
                monotone_flag=flag,
            )
        return cls.from_table(zip(obj["qs"], obj["values"]), monotone_flag=flag)


@dataclass(frozen=True)
class PowerSequence:
    """A sequence rule n -> coef * n^-decay * (log n)^log_exp.

    The log factor is clamped to 1 below n = e, mirroring the dimension
    function clamp; rules feed radii, resonant-plane girths and transformed
    scalings, where only the decay exponents are load-bearing.
    """

    coef: float
    decay: float
    log_exp: float = 0.0

    def __post_init__(self):
        if not (self.coef > 0):
            raise DomainError("sequence coefficient must be positive")

    def eval(self, n: int) -> float:
        return float(self.eval_many(np.asarray([n]))[0])

    __call__ = eval

    def eval_many(self, ns: np.ndarray) -> np.ndarray:
        ns = np.asarray(ns, dtype=float)
        if np.any(ns < 1):
            raise DomainError("sequence index starts at 1")
        out = self.coef * ns ** (-self.decay)
        if self.log_exp != 0.0:
            out = out * np.maximum(np.log(ns), 1.0) ** self.log_exp
        return out

    def to_json(self) -> dict:
        return {"coef": self.coef, "decay": self.decay, "log_exp": self.log_exp}


@dataclass(frozen=True)
class HypothesisReport:
    """What `validate_hypotheses` found.  Failures are reported, not raised."""

    k: int
    l: int
    ratio_monotone: bool
    ratio_direction: str   # "increasing" | "decreasing" | "constant" | "unknown"
    ratio_exact: bool
    g_valid: bool
    g_reason: str
    doubling: bool | None
    doubling_constant: float | None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "ratio_monotone": self.ratio_monotone,
            "ratio_direction": self.ratio_direction,
            "ratio_exact": self.ratio_exact,
            "g_valid": self.g_valid,
            "g_reason": self.g_reason,
            "doubling": self.doubling,
            "doubling_constant": self.doubling_constant,
        }


def _dyadic_grid(lo: float, hi: float, cap: int = 64) -> np.ndarray:
    """Up to `cap` dyadic points 2^-j inside [lo, hi], finest first preferred."""
    jmin = max(1, int(math.ceil(-math.log2(hi))))
    jmax = int(math.floor(-math.log2(lo))) if lo > 0 else jmin + cap
    js = np.arange(jmin, jmax + 1)
    if len(js) > cap:
        js = js[-cap:]
    return 2.0 ** (-js.astype(float))


def validate_hypotheses(f: DimensionFunction, k: int, l: int) -> HypothesisReport:
    """Check the two recurring side conditions on a gauge f.

    (a) is r^-k f(r) monotone near 0 (either direction; constants count)?
    (b) is g(r) = r^-l f(r) itself a valid gauge (non-decreasing, -> 0)?

    Exact for the power-log family; grid-checked on up to 64 dyadic points
    for sampled tables.  A doubling estimate sup f(2r)/f(r) is reported as a
    diagnostic with no downstream consumer.
    """
    k, l = int(k), int(l)
    if k < 1:
        raise DomainError("ambient exponent k must be >= 1")
    if l < 0 or l >= k:
        raise DomainError("shaving exponent l must satisfy 0 <= l < k")

    if f.form == "power_log":
        a = f.s - k
        if a > 0:
            direction = "increasing"
        elif a < 0:
            direction = "decreasing"
        else:
            direction = "decreasing" if f.b > 0 else ("increasing" if f.b < 0 else "constant")
        g_valid = f.s > l or (f.s == l and f.b < 0)
        if g_valid:
            g_reason = "g(r) = r^-l f(r) is non-decreasing and vanishes at 0"
        else:
            g_reason = (
                f"g(r) = r^({f.s - l})(log 1/r)^{f.b} does not vanish (non-decreasingly) as r -> 0"
            )
        if f.b == 0.0:
            doubling, lam = True, 2.0 ** f.s
        else:
            grid = 2.0 ** (-np.arange(2.0, 60.0))
            lam = float(np.max(f.eval_many(2 * grid) / f.eval_many(grid)))
            doubling = True
        return HypothesisReport(k, l, True, direction, True, g_valid, g_reason, doubling, lam)

    grid = _dyadic_grid(f.radii[0], min(f.radii[-1], 0.5))
    if len(grid) < 2:
        return HypothesisReport(
            k, l, False, "unknown", False, False,
            "sampled support too narrow for the dyadic grid check", None, None,
        )
    grid = np.sort(grid)
    fv = f.eval_many(grid)
    ratio = fv * grid ** (-float(k))
    inc = bool(np.all(np.diff(ratio) >= -1e-12 * np.maximum(ratio[:-1], 1e-300)))
    dec = bool(np.all(np.diff(ratio) <= 1e-12 * np.maximum(ratio[:-1], 1e-300)))
    monotone = inc or dec
    direction = "constant" if (inc and dec) else ("increasing" if inc else ("decreasing" if dec else "unknown"))
    g = fv * grid ** (-float(l))
    g_nondec = bool(np.all(np.diff(g) >= -1e-12 * np.maximum(g[:-1], 1e-300)))
    g_to_zero = g[0] < 0.5 * g[-1] or g[0] == 0.0
    g_valid = g_nondec and g_to_zero
    g_reason = (
        "grid check: g non-decreasing and trending to 0"
        if g_valid
        else "grid check: g fails non-decreasing/vanishing trend"
    )
    half = grid[grid <= 0.5 * grid[-1] * (1 + 1e-12)]
    if len(half):
        lam = float(np.max(f.eval_many(2 * half) / np.maximum(f.eval_many(half), 1e-300)))
        doubling = bool(lam < 1e6)
    else:
        lam, doubling = None, None
    return HypothesisReport(k, l, monotone, direction, False, g_valid, g_reason, doubling, lam)
