"""Finite truncations and samples of the limsup set families.

A limsup set is never finitely representable; what can be built is one
generation: the union of defining balls, rectangles or slabs over a modulus
band M <= q <= Q.  Every generated cover records its (M, Q) band so that
downstream measures and dimension fits are explicit about which tail they
looked at.  Random coverings are seeded and regenerate bit-identically.
"""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .core import ApproxFunction, IndexFamily, PowerSequence
from .errors import DomainError, SizeError
from .formulas import counterexample_params

INTERVALS = "Intervals"
RECTANGLES = "Rectangles"
SLABS = "Slabs"

_ELEMENT_CAP = 20_000_000

SIMULTANEOUS_BALLS = "SimultaneousBalls"
WEIGHTED_RECTANGLES = "WeightedRectangles"
LINEAR_FORMS_SLABS = "LinearFormsSlabs"
CANTOR_RESTRICTED = "CantorRestricted"


@dataclass
class CoverSpec:
    """A finite union of axis-aligned elements (or slabs) in [0,1]^k.

    Box geometries store center and half-width arrays of shape (n, k); slabs
    store integer normal vectors, offsets and half-thicknesses.  The torus
    flag switches measures and counts to arithmetic mod 1.
    """

    k: int
    geometry: str
    centers: np.ndarray | None = None
    halves: np.ndarray | None = None
    normals: np.ndarray | None = None
    offsets: np.ndarray | None = None
    thickness: np.ndarray | None = None
    torus: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.geometry not in (INTERVALS, RECTANGLES, SLABS):
            raise DomainError(f"unknown geometry {self.geometry!r}")
        if self.geometry == SLABS:
            self.normals = np.atleast_2d(np.asarray(self.normals, dtype=float)) \
                if self.normals is not None else np.zeros((0, self.k))
            self.offsets = np.asarray(
                self.offsets if self.offsets is not None else [], dtype=float)
            self.thickness = np.asarray(
                self.thickness if self.thickness is not None else [], dtype=float)
            if len(self.normals) and not np.all(np.any(self.normals != 0, axis=1)):
                raise DomainError("slab normals must be nonzero")
            if np.any(self.thickness <= 0):
                raise DomainError("slab thickness must be positive")
        else:
            self.centers = np.asarray(self.centers, dtype=float).reshape(-1, self.k) \
                if self.centers is not None else np.zeros((0, self.k))
            self.halves = np.asarray(self.halves, dtype=float).reshape(-1, self.k) \
                if self.halves is not None else np.zeros((0, self.k))
            if self.centers.shape != self.halves.shape:
                raise DomainError("centers and half-widths must align")
            if np.any(self.halves <= 0):
                raise DomainError("half-widths must be positive")
            if self.torus and len(self.centers):
                self.centers = np.mod(self.centers, 1.0)

    # --- views ---

    @property
    def element_count(self) -> int:
        if self.geometry == SLABS:
            return len(self.offsets)
        return len(self.centers)

    def elements(self) -> Iterator[tuple]:
        if self.geometry == SLABS:
            for nrm, off, th in zip(self.normals, self.offsets, self.thickness):
                yield tuple(nrm), float(off), float(th)
        else:
            for c, h in zip(self.centers, self.halves):
                yield tuple(c), tuple(h)

    def volumes(self) -> np.ndarray:
        """Product of side lengths per element (box geometries only)."""
        if self.geometry == SLABS:
            raise DomainError("slab volumes depend on the cube clip; use union measure")
        return np.prod(2.0 * self.halves, axis=1)

    def diameters(self) -> np.ndarray:
        if self.geometry == SLABS:
            raise DomainError("slab diameters are not defined")
        return 2.0 * np.sqrt(np.sum(self.halves**2, axis=1))

    def merged_intervals(self) -> np.ndarray:
        """Disjoint sorted intervals (n, 2) covering the same set, k = 1 only.

        Non-torus covers are clipped to [0, 1]; torus covers are reduced
        mod 1 with wraparound splitting, so rows partition inside [0, 1)."""
        if self.k != 1 or self.geometry == SLABS:
            raise DomainError("exact merging implemented for 1-D interval covers")
        if self.element_count == 0:
            return np.zeros((0, 2))
        lo = self.centers[:, 0] - self.halves[:, 0]
        hi = self.centers[:, 0] + self.halves[:, 0]
        if self.torus:
            full = (hi - lo) >= 1.0
            if np.any(full):
                return np.asarray([[0.0, 1.0]])
            frac = np.mod(lo, 1.0)
            hi = frac + (hi - lo)
            lo = frac
            wrap = hi > 1.0
            if np.any(wrap):
                lo = np.concatenate([lo[~wrap], lo[wrap], np.zeros(wrap.sum())])
                hi = np.concatenate([hi[~wrap], np.ones(wrap.sum()), hi[wrap] - 1.0])
        else:
            lo, hi = np.clip(lo, 0.0, 1.0), np.clip(hi, 0.0, 1.0)
        keep = hi > lo
        lo, hi = lo[keep], hi[keep]
        if not len(lo):
            return np.zeros((0, 2))
        order = np.argsort(lo, kind="stable")
        lo, hi = lo[order], hi[order]
        merged = [[lo[0], hi[0]]]
        for a, b in zip(lo[1:], hi[1:]):
            if a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        return np.asarray(merged)

    # --- serialization ---

    def to_json(self, include_elements: bool = True) -> dict:
        out = {
            "k": self.k,
            "geometry": self.geometry,
            "torus": self.torus,
            "element_count": self.element_count,
            "meta": dict(self.meta),
        }
        if include_elements:
            if self.geometry == SLABS:
                out["elements"] = [
                    {"normal": list(n), "offset": o, "thickness": t}
                    for n, o, t in self.elements()
                ]
            else:
                out["elements"] = [
                    {"center": list(c), "half": list(h)} for c, h in self.elements()
                ]
        return out

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            if self.geometry == SLABS:
                w.writerow(
                    [f"n{i+1}" for i in range(self.k)] + ["offset", "thickness"])
                for nrm, off, th in self.elements():
                    w.writerow([f"{v:.12g}" for v in (*nrm, off, th)])
            else:
                w.writerow(
                    [f"c{i+1}" for i in range(self.k)]
                    + [f"h{i+1}" for i in range(self.k)])
                for c, h in self.elements():
                    w.writerow([f"{v:.12g}" for v in (*c, *h)])


# ---------------------------------------------------------------------------
# rational enumeration

def rationals(Q: int, filter: str = "Coprime") -> list:
    """All fractions p/q in [0,1] with q <= Q, ascending.

    Coprime enumeration walks the Farey mediant recurrence; All enumerates
    every pair including non-reduced representatives.
    """
    Q = int(Q)
    if Q < 1:
        raise DomainError("Q must be >= 1")
    if filter not in ("All", "Coprime"):
        raise DomainError(f"unknown rational filter {filter!r}")
    if filter == "All":
        if (Q + 1) * (Q + 2) // 2 > _ELEMENT_CAP:
            raise SizeError("rational enumeration too large")
        out = [(p, q) for q in range(1, Q + 1) for p in range(q + 1)]
        out.sort(key=lambda pq: (pq[0] / pq[1], pq[1]))
        return out
    est = int(3 * Q * Q / (math.pi**2)) + Q + 2
    if est > _ELEMENT_CAP:
        raise SizeError("Farey enumeration too large")
    seq = [(0, 1)]
    if Q == 1:
        return [(0, 1), (1, 1)]
    a, b, c, d = 0, 1, 1, Q
    while c <= Q and not (c == 1 and d == 1):
        seq.append((c, d))
        step = (Q + b) // d
        a, b, c, d = c, d, step * c - a, step * d - b
    seq.append((1, 1))
    return seq


# ---------------------------------------------------------------------------
# approximation set generations

def _normalize_setting(setting: str) -> str:
    key = setting.replace("-", "").replace("_", "").lower()
    names = {
        s.lower(): s
        for s in (SIMULTANEOUS_BALLS, WEIGHTED_RECTANGLES, LINEAR_FORMS_SLABS,
                  CANTOR_RESTRICTED)
    }
    if key not in names:
        raise DomainError(f"unknown generation setting {setting!r}")
    return names[key]


def _center_grid(q: int, k: int, shift: np.ndarray) -> np.ndarray:
    """All points ((p_1+y_1)/q, ..., (p_k+y_k)/q), p_i in 0..q: shape ((q+1)^k, k)."""
    axes = [(np.arange(q + 1, dtype=float) + shift[i]) / q for i in range(k)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def approx_set_union(
    setting: str,
    psi: ApproxFunction | None = None,
    k: int | None = None,
    n: int | None = None,
    m: int | None = None,
    tau=None,
    y=None,
    Q: int = 1,
    M: int = 1,
    torus: bool = False,
) -> CoverSpec:
    """One generation of the named limsup family: the finite union over
    moduli M <= q <= Q, one element per admissible (p, q).

    The (M, Q) band is recorded in the cover's meta; measures and counts of
    a generation are always statements about that band, not the limsup set.
    """
    setting = _normalize_setting(setting)
    Q, M = int(Q), int(M)
    if Q < 1 or M < 1 or M > Q:
        raise DomainError("need 1 <= M <= Q")
    meta = {"setting": setting, "M": M, "Q": Q}

    if setting == SIMULTANEOUS_BALLS or setting == CANTOR_RESTRICTED:
        if k is None:
            k = 1
        k = int(k)
        if psi is None:
            raise DomainError("psi required")
        shift = np.zeros(k) if y is None else np.asarray(y, dtype=float).reshape(k)
        if setting == CANTOR_RESTRICTED:
            if k != 1:
                raise DomainError("restricted approximation is one-dimensional here")
            qs = IndexFamily.geometric(3).members_up_to(Q)
            qs = qs[qs >= M]
            meta["modulus_family"] = "geometric(3)"
        else:
            qs = np.arange(M, Q + 1, dtype=np.int64)
        if len(qs) == 0:
            return CoverSpec(k=k, geometry=INTERVALS if k == 1 else RECTANGLES,
                             torus=torus, meta=meta)
        total = float(np.sum((qs + 1.0) ** k))
        if total > _ELEMENT_CAP:
            raise SizeError(f"generation would hold ~{total:.2e} elements")
        radii = psi.eval_many(qs.astype(float)) / qs
        centers, halves = [], []
        for q, r in zip(qs, radii):
            if r <= 0:
                continue
            grid = _center_grid(int(q), k, shift)
            centers.append(grid)
            halves.append(np.full((len(grid), k), r))
        geometry = INTERVALS if k == 1 else RECTANGLES
        if not centers:
            return CoverSpec(k=k, geometry=geometry, torus=torus, meta=meta)
        return CoverSpec(
            k=k, geometry=geometry, centers=np.concatenate(centers),
            halves=np.concatenate(halves), torus=torus, meta=meta,
        )

    if setting == WEIGHTED_RECTANGLES:
        if k is None or tau is None:
            raise DomainError("weighted rectangles need k and the weight vector")
        k = int(k)
        taus = np.asarray([float(t) for t in tau], dtype=float)
        if len(taus) != k or np.any(taus <= 0):
            raise DomainError("need one positive weight per coordinate")
        shift = np.zeros(k) if y is None else np.asarray(y, dtype=float).reshape(k)
        qs = np.arange(M, Q + 1, dtype=np.int64)
        total = float(np.sum((qs + 1.0) ** k))
        if total > _ELEMENT_CAP:
            raise SizeError(f"generation would hold ~{total:.2e} elements")
        centers, halves = [], []
        for q in qs:
            grid = _center_grid(int(q), k, shift)
            # |q x_i - p_i| < q^-tau_i  =>  half-width q^-(tau_i + 1)
            hw = float(q) ** (-(taus + 1.0))
            centers.append(grid)
            halves.append(np.tile(hw, (len(grid), 1)))
        meta["tau"] = [float(t) for t in taus]
        return CoverSpec(
            k=k, geometry=RECTANGLES, centers=np.concatenate(centers),
            halves=np.concatenate(halves), torus=torus, meta=meta,
        )

    # LinearFormsSlabs
    if n is None or m is None or psi is None:
        raise DomainError("linear forms need n, m and psi")
    n, m = int(n), int(m)
    if n * m > 3:
        raise SizeError("slab generation guarded to n*m <= 3")
    if m != 1:
        raise DomainError("slab geometry stores one linear form; use m = 1")
    shift = 0.0 if y is None else float(np.asarray(y).reshape(()))
    normals, offsets, thick = [], [], []
    rng = range(-Q, Q + 1)
    for qvec in itertools.product(rng, repeat=n):
        mod = max(abs(c) for c in qvec)
        if mod < M or mod > Q:
            continue
        val = float(psi(mod))
        if val <= 0:
            continue
        lo = sum(min(c, 0) for c in qvec)
        hi = sum(max(c, 0) for c in qvec)
        # keep p when {q.x + p - y : x in cube} = [lo+p-y, hi+p-y] meets (-val, val)
        p_min = int(math.floor(-val + shift - hi)) + 1
        p_max = int(math.ceil(val + shift - lo)) - 1
        for p in range(p_min, p_max + 1):
            normals.append(qvec)
            offsets.append(p - shift)
            thick.append(val)
    meta.update({"n": n, "m": m})
    return CoverSpec(
        k=n, geometry=SLABS, normals=np.asarray(normals, dtype=float),
        offsets=np.asarray(offsets, dtype=float),
        thickness=np.asarray(thick, dtype=float), torus=torus, meta=meta,
    )


def counterexample_psi(n: int, m: int, alpha: float, s0: float) -> ApproxFunction:
    """The two-branch approximating function of the pinned-dimension
    construction; see formulas.counterexample_params for the exponents."""
    return counterexample_params(n, m, alpha, s0).psi


# ---------------------------------------------------------------------------
# random coverings

@dataclass(frozen=True)
class RandomCoverSample:
    """Seeded draw of N uniform torus centers with a deterministic radii rule."""

    seed: int
    rule: PowerSequence
    k: int
    N: int
    centers: np.ndarray

    def radii(self) -> np.ndarray:
        return self.rule.eval_many(np.arange(1, self.N + 1, dtype=float))

    def to_json(self, include_centers: bool = True) -> dict:
        out = {
            "seed": self.seed, "rule": self.rule.to_json(),
            "k": self.k, "N": self.N,
        }
        if include_centers:
            out["centers"] = [[float(x) for x in row] for row in self.centers]
        return out


def random_cover(
    rule: PowerSequence, N: int, k: int, seed: int
) -> tuple[RandomCoverSample, CoverSpec]:
    """N torus balls with centers drawn i.i.d.-uniform from the seeded
    generator; regeneration with the same seed is bit-identical.  Balls are
    realized as sup-norm boxes, which coincides with intervals for k = 1."""
    N, k = int(N), int(k)
    if N < 1:
        raise DomainError("need at least one ball")
    if k < 1:
        raise DomainError("ambient dimension must be >= 1")
    if rule.decay <= 0:
        raise DomainError("radius rule must decrease to 0")
    if N > _ELEMENT_CAP:
        raise SizeError("too many balls")
    rng = np.random.default_rng(int(seed))
    centers = rng.random((N, k))
    sample = RandomCoverSample(seed=int(seed), rule=rule, k=k, N=N, centers=centers)
    radii = sample.radii()
    cover = CoverSpec(
        k=k, geometry=INTERVALS if k == 1 else RECTANGLES,
        centers=centers, halves=np.repeat(radii[:, None], k, axis=1),
        torus=True, meta={"seed": int(seed), "N": N, "rule": rule.to_json()},
    )
    return sample, cover


# ---------------------------------------------------------------------------
# iterated function system generations

def ifs_cover(ratios: Sequence[float], depth: int) -> CoverSpec:
    """Depth-d generation of an equal-ratio separated system on [0, 1]:
    N^depth intervals of length ratio^depth, left/right placement for two
    maps and even spacing in general."""
    rs = [float(r) for r in ratios]
    if not rs:
        raise DomainError("need at least one ratio")
    if any(not (0 < r < 1) for r in rs):
        raise DomainError("ratios must lie in (0, 1)")
    if max(rs) - min(rs) > 1e-12:
        raise DomainError("placement scheme requires equal ratios")
    if sum(rs) > 1 + 1e-12:
        raise DomainError("ratios overlap: total contraction exceeds 1")
    depth = int(depth)
    if depth < 1:
        raise DomainError("depth must be >= 1")
    N, c = len(rs), rs[0]
    if N**depth > _ELEMENT_CAP:
        raise SizeError("generation too large")
    if N == 1:
        base = np.asarray([0.0])
    else:
        gap = (1.0 - N * c) / (N - 1)
        base = np.arange(N, dtype=float) * (c + gap)
    offs = np.asarray([0.0])
    for level in range(depth):
        offs = (offs[:, None] + (c**level) * base[None, :]).ravel()
    length = c**depth
    centers = np.sort(offs) + length / 2.0
    return CoverSpec(
        k=1, geometry=INTERVALS, centers=centers,
        halves=np.full_like(centers, length / 2.0),
        torus=False,
        meta={"depth": depth, "ratio": c, "n_maps": N},
    )
