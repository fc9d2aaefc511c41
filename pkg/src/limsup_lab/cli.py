"""Command-line surface: reproducible JSON reports over every module.

Conventions: results as compact JSON on stdout with a 12-significant-digit
float policy and an embedded run manifest; CSV tables through --out (or
--format csv on table-producing commands); wall time on stderr only, so
repeated runs with the same flags and seed are byte-identical.

Exit codes: 0 success, 2 domain/hypothesis failures (including verdicts of
HypothesesNotMet), 1 internal errors, 64 usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .core import ApproxFunction, DimensionFunction, IndexFamily, PowerSequence
from .errors import (
    DomainError,
    HypothesisError,
    LimsupLabError,
    PreconditionError,
    RangeError,
    SizeError,
    UnsupportedError,
)
from . import estimators, formulas, generators, series, transference

_USAGE_EXIT = 64
_HYPOTHESIS_EXIT = 2
_INTERNAL_EXIT = 1

_HYPOTHESIS_ERRORS = (
    DomainError, HypothesisError, RangeError, UnsupportedError, PreconditionError,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(_USAGE_EXIT)


# ---------------------------------------------------------------------------
# value parsing

def _floats(txt: str) -> list:
    return [float(v) for v in txt.split(",") if v != ""]


def _read_table(path: str) -> list:
    rows = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if len(row) < 2:
                continue
            try:
                rows.append((float(row[0]), float(row[1])))
            except ValueError:
                continue  # header line
    if not rows:
        raise DomainError(f"no numeric rows in {path}")
    return rows


def parse_psi(txt: str) -> ApproxFunction:
    """pow:<tau> | piecewise:<alpha>:<beta>:poly:<p> |
    piecewise:<alpha>:<beta>:geom:<base> | sampled:@file.csv"""
    parts = txt.split(":")
    if parts[0] == "pow" and len(parts) == 2:
        return ApproxFunction.power(float(parts[1]))
    if parts[0] == "piecewise" and len(parts) == 5:
        alpha, beta = float(parts[1]), float(parts[2])
        if parts[3] == "poly":
            fam = IndexFamily.polynomial_ceil(float(parts[4]))
        elif parts[3] == "geom":
            fam = IndexFamily.geometric(int(parts[4]))
        else:
            raise DomainError(f"unknown index family {parts[3]!r}")
        return ApproxFunction.piecewise_power(alpha, beta, fam)
    if parts[0] == "sampled" and len(parts) == 2 and parts[1].startswith("@"):
        return ApproxFunction.from_table(_read_table(parts[1][1:]))
    raise DomainError(f"cannot parse approximating function {txt!r}")


def parse_gauge(txt: str) -> DimensionFunction:
    """pow:<s> | powlog:<s>:<b> | sampled:@file.csv"""
    parts = txt.split(":")
    if parts[0] == "pow" and len(parts) == 2:
        return DimensionFunction.power(float(parts[1]))
    if parts[0] == "powlog" and len(parts) == 3:
        return DimensionFunction.power_log(float(parts[1]), float(parts[2]))
    if parts[0] == "sampled" and len(parts) == 2 and parts[1].startswith("@"):
        return DimensionFunction.from_table(_read_table(parts[1][1:]))
    raise DomainError(f"cannot parse dimension function {txt!r}")


def _parse_rule(txt: str) -> PowerSequence:
    vals = _floats(txt)
    if len(vals) == 2:
        return PowerSequence(coef=vals[0], decay=vals[1])
    if len(vals) == 3:
        return PowerSequence(coef=vals[0], decay=vals[1], log_exp=vals[2])
    raise DomainError("radius rule is coef,decay[,log_exp]")


def _parse_maps(txt: str) -> list:
    return [formulas.LinearMapSpec(tuple(_floats(part)))
            for part in txt.split(";") if part]


# ---------------------------------------------------------------------------
# output plumbing

def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        obj = float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        if obj == int(obj) and abs(obj) < 2**53:
            return obj
        return float(f"{obj:.12g}")
    return obj


def _manifest(command: str, args: argparse.Namespace) -> dict:
    skip = {"func", "out", "format"}
    params = {
        k: _jsonable(v)
        for k, v in sorted(vars(args).items())
        if k not in skip and not k.startswith("_")
    }
    return {
        "subcommand": command,
        "params": params,
        "seed": getattr(args, "seed", None),
        "version": __version__,
    }


def _emit(result: dict, command: str, args: argparse.Namespace,
          table: tuple | None = None) -> None:
    """Print the JSON report; write the CSV table to --out or, with
    --format csv, to stdout instead of the JSON."""
    payload = dict(result)
    payload["manifest"] = _manifest(command, args)
    text = json.dumps(_jsonable(payload), separators=(",", ":"))
    fmt = getattr(args, "format", "json")
    out = getattr(args, "out", None)
    if table is not None:
        header, rows = table
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(header)
        for row in rows:
            w.writerow([f"{v:.12g}" if isinstance(v, float) else v for v in row])
        if out:
            with open(out, "w", newline="") as fh:
                fh.write(buf.getvalue())
        if fmt == "csv":
            sys.stdout.write(buf.getvalue())
            return
    elif out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# dim formula

def _cmd_dim_formula(args) -> int:
    name = args.name.replace("_", "-")
    if name == "jb":
        result = {"value": formulas.jb_dim(args.tau[0])}
    elif name == "levesley":
        value = formulas.levesley_dim(args.n, args.m, args.lam)
        branch = "ambient" if args.lam <= args.n / args.m else "lower-order"
        result = {"value": value, "branch": branch}
    elif name == "levesley-bounds":
        lo, hi = formulas.levesley_bounds_nonmonotone(args.n, args.m, args.lam)
        result = {"lower": lo, "upper": hi}
    elif name == "rynne":
        r = formulas.rynne_dim(args.k, args.tau, args.nu)
        result = {"value": r.value, "argmin": list(r.argmin)}
    elif name == "wwx":
        r = formulas.wwx_exponent(args.k, args.a)
        result = {"value": r.value, "argmin": list(r.argmin)}
    elif name == "slicing":
        result = {"value": formulas.slicing_bounds(args.k, args.k0, args.a)}
    elif name == "rect-upper":
        result = {"value": formulas.rect_upper_bound(args.k, args.t, args.a)}
    elif name == "similarity":
        result = {"value": formulas.similarity_dim(args.ratios)}
    elif name == "affinity":
        result = {"value": formulas.affinity_dim(_parse_maps(args.maps))}
    elif name == "svf":
        result = {"value": formulas.singular_value_fn(tuple(args.sigma), args.t[0])}
    elif name == "affine-cover":
        rule = series.SingularValueSequence(
            coefs=tuple(args.coefs), rates=tuple(args.rates), kind=args.rule_kind)
        result = {"value": formulas.affine_cover_dim(rule)}
    elif name == "cantor-critical":
        result = {"value": formulas.cantor_critical(args.tau[0])}
    elif name == "random-cover":
        result = {"value": formulas.random_cover_dim(args.s0)}
    else:
        raise DomainError(f"unknown formula {args.name!r}")
    _emit(result, f"dim formula {name}", args)
    return 0


def _cmd_dim_estimate(args) -> int:
    tau = args.tau
    if tau is not None and args.setting == "simultaneous":
        if len(tau) != 1:
            raise DomainError("the simultaneous setting takes a single tau")
        tau = tau[0]
    est = estimators.natural_cover_estimate(
        args.setting, args.levels, tau=tau, ratios=args.ratios)
    table = (["delta", "count"], [[d, n] for d, n in est.scales])
    _emit(est.to_json(), "dim estimate", args, table=table)
    return 0


# ---------------------------------------------------------------------------
# series classify

def _cmd_series_classify(args) -> int:
    kind = args.kind.replace("-", "_")
    kw = {}
    if args.psi:
        kw["psi"] = parse_psi(args.psi)
    if args.f:
        kw["f"] = parse_gauge(args.f)
    if args.k is not None:
        kw["k"] = args.k
    if args.n is not None:
        kw["n"] = args.n
    if args.m is not None:
        kw["m"] = args.m
    if kind == "power_radii":
        kw = {"rule": _parse_rule(args.rule), "s": args.s}
    if kind == "svf_sum":
        kw = {
            "rule": series.SingularValueSequence(
                coefs=tuple(args.coefs), rates=tuple(args.rates),
                kind=args.rule_kind),
            "t": args.t,
        }
    spec = series.build_series(kind, **kw)
    verdict = series.classify(spec, n_terms=args.terms)
    _emit(verdict.to_json(), "series classify", args)
    return 0


# ---------------------------------------------------------------------------
# transfer

def _cmd_transfer_ball(args) -> int:
    ball = transference.BallSpec(tuple(args.center), args.radius, len(args.center))
    f = parse_gauge(args.f)
    if args.g:
        out = transference.ball_fg_transform(ball, f, parse_gauge(args.g))
    else:
        out = transference.ball_f_transform(ball, f)
    _emit(out.to_json(), "transfer ball", args)
    return 0


def _cmd_transfer_upsilon(args) -> int:
    fam = transference.ResonantFamily(k=args.k, l=args.l, upsilon=_parse_rule(args.rule))
    rule = transference.upsilon_transform(fam, parse_gauge(args.f))
    if isinstance(rule, PowerSequence):
        result = {"rule": rule.to_json()}
    else:
        ns = np.arange(1, 9, dtype=float)
        result = {"rule": {"kind": "pointwise"},
                  "first_values": list(rule.eval_many(ns))}
    _emit(result, "transfer upsilon", args)
    return 0


def _cmd_transfer_theta(args) -> int:
    variant = {
        "by-modulus": transference.BY_MODULUS,
        "by-vector-q": transference.BY_VECTOR_Q,
        "by-pq": transference.BY_PQ,
    }[args.variant]
    rule = transference.theta_transform(
        parse_psi(args.psi), parse_gauge(args.f), args.n, args.m,
        variant=variant, pq_decay=args.pq_decay)
    result = rule.to_json()
    qs = np.arange(1, 9, dtype=float)
    result["first_values"] = list(rule.eval_moduli(qs))
    _emit(result, "transfer theta", args)
    return 0


def _cmd_transfer_verdict(args) -> int:
    verdict = transference.dichotomy_verdict(
        args.setting,
        psi=parse_psi(args.psi),
        f=parse_gauge(args.f) if args.f else None,
        n=args.n, m=args.m, k=args.k,
        y=args.y,
        n_terms=args.terms,
    )
    _emit(verdict.to_json(), "transfer verdict", args)
    return _HYPOTHESIS_EXIT if verdict.verdict == transference.HYPOTHESES_NOT_MET else 0


# ---------------------------------------------------------------------------
# generate / simulate

def _cmd_generate(args) -> int:
    family = args.family.replace("_", "-")
    if family == "rationals":
        pairs = generators.rationals(args.q, filter=args.filter)
        result = {"count": len(pairs), "Q": args.q, "filter": args.filter}
        if len(pairs) <= 512:
            result["fractions"] = [[p, q] for p, q in pairs]
        table = (["p", "q"], [[p, q] for p, q in pairs])
        _emit(result, "generate rationals", args, table=table)
        return 0
    if family == "ifs-cover":
        cover = generators.ifs_cover(args.ratios, args.depth)
    elif family == "random-cover":
        _, cover = generators.random_cover(
            _parse_rule(args.rule), args.n_balls, args.k, args.seed)
    else:
        cover = generators.approx_set_union(
            family,
            psi=parse_psi(args.psi) if args.psi else None,
            k=args.k, n=args.n, m=args.m,
            tau=args.tau, y=args.y,
            Q=args.q, M=args.band_lo, torus=args.torus,
        )
    result = cover.to_json(include_elements=cover.element_count <= 512)
    if cover.k == 1 and cover.geometry == generators.INTERVALS:
        result["measure"] = estimators.union_measure(cover).to_json()
    if cover.geometry == generators.SLABS:
        rows = [[*n, o, t] for n, o, t in cover.elements()]
        header = [f"n{i+1}" for i in range(cover.k)] + ["offset", "thickness"]
    else:
        rows = [[*c, *h] for c, h in cover.elements()]
        header = [f"c{i+1}" for i in range(cover.k)] + \
                 [f"h{i+1}" for i in range(cover.k)]
    _emit(result, f"generate {family}", args, table=(header, rows))
    return 0


def _cmd_simulate_cover(args) -> int:
    rule = _parse_rule(args.rule)
    sample, cover = generators.random_cover(rule, args.n_balls, args.k, args.seed)
    M = args.tail_from
    N = args.tail_to if args.tail_to is not None else args.n_balls
    measure = estimators.tail_coverage(sample, M, N)
    exponent = series.exponent_of_convergence(rule)
    result = {
        "coverage": measure.to_json(),
        "M": M, "N": N, "k": args.k, "seed": args.seed,
        "rule": rule.to_json(),
        "convergence_exponent": exponent.to_json(),
        "predicted_dimension": formulas.random_cover_dim(exponent.value)
        if math.isfinite(exponent.value) else 1.0,
    }
    # coverage curve at dyadic cutoffs for plotting
    rows = []
    n = M
    while n <= N:
        rows.append([n, estimators.tail_coverage(sample, M, n).value])
        if n == N:
            break
        n = min(2 * n, N)
    _emit(result, "simulate cover", args, table=(["n", "coverage"], rows))
    return 0


def _cmd_construct_counterexample(args) -> int:
    params = formulas.counterexample_params(args.n, args.m, args.alpha, args.s0)
    base = args.m * (args.n - 1)
    residual = abs(
        2.0 / params.gamma
        - (args.n + args.m - 1 - (args.alpha + 1) * (args.s0 - base))
    )
    splits = []
    for delta in args.deltas:
        s = args.s0 + delta
        f = DimensionFunction.power(s)
        spec = series.kg_hausdorff_series(args.n, args.m, params.psi, f)
        verdict = series.classify(spec)
        entry = {"delta": delta, "s": s, "class": verdict.classification}
        entry["components"] = [c.to_json() for c in verdict.components]
        splits.append(entry)
    result = params.to_json()
    result["identity_residual"] = residual
    result["split_sums"] = splits
    diag = estimators.lower_order_diag(params.psi, depth=args.depth)
    result["lower_order"] = diag.to_json()
    _emit(result, "construct counterexample", args)
    return 0


def _cmd_energy(args) -> int:
    res = estimators.energy(
        target=args.target,
        s=args.s,
        f=parse_gauge(args.f) if args.f else None,
        samples=args.samples,
        seed=args.seed,
    )
    _emit(res.to_json(), "energy", args)
    return 0


def _cmd_diagnose_lower_order(args) -> int:
    diag = estimators.lower_order_diag(parse_psi(args.psi), depth=args.depth)
    _emit(diag.to_json(), "diagnose lower-order", args)
    return 0


# ---------------------------------------------------------------------------
# parser assembly

def _add_out_flags(p: _Parser) -> None:
    p.add_argument("--out", help="write the CSV table to this path")
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="stdout format (csv prints the table instead)")


def build_parser() -> _Parser:
    root = _Parser(prog="limsup-lab",
                   description="limsup-set dimension formulas, series "
                               "dichotomies and numerical verifiers")
    root.add_argument("--version", action="version", version=__version__)
    sub = root.add_subparsers(dest="command", required=True, parser_class=_Parser)

    # dim
    dim = sub.add_parser("dim", help="dimension formulas and estimates")
    dsub = dim.add_subparsers(dest="dim_command", required=True, parser_class=_Parser)
    df = dsub.add_parser("formula", help="closed-form calculators")
    df.add_argument("name", help="jb | levesley | levesley-bounds | rynne | wwx | "
                                 "slicing | rect-upper | similarity | affinity | svf | "
                                 "affine-cover | cantor-critical | random-cover")
    df.add_argument("--tau", type=_floats, default=None)
    df.add_argument("--n", type=int)
    df.add_argument("--m", type=int)
    df.add_argument("--lam", type=float)
    df.add_argument("--k", type=int)
    df.add_argument("--k0", type=int)
    df.add_argument("--nu", type=float, default=1.0)
    df.add_argument("--a", type=_floats)
    df.add_argument("--t", type=_floats)
    df.add_argument("--s0", type=float)
    df.add_argument("--ratios", type=_floats)
    df.add_argument("--maps", help="semicolon-separated singular value lists")
    df.add_argument("--sigma", type=_floats)
    df.add_argument("--coefs", type=_floats)
    df.add_argument("--rates", type=_floats)
    df.add_argument("--rule-kind", choices=("power", "geometric"), default="power")
    df.set_defaults(func=_cmd_dim_formula)

    de = dsub.add_parser("estimate", help="natural-cover box dimension")
    de.add_argument("--setting", required=True,
                    choices=("simultaneous", "weighted", "ifs"))
    de.add_argument("--levels", type=lambda s: [int(v) for v in s.split(",")],
                    required=True)
    de.add_argument("--tau", type=_floats)
    de.add_argument("--ratios", type=_floats)
    _add_out_flags(de)
    de.set_defaults(func=_cmd_dim_estimate)

    # series
    ser = sub.add_parser("series", help="volume-sum classification")
    ssub = ser.add_subparsers(dest="series_command", required=True,
                              parser_class=_Parser)
    sc = ssub.add_parser("classify")
    sc.add_argument("--kind", required=True,
                    choices=("khintchine-sim", "jarnik", "kg", "kg-hausdorff",
                             "duffin-schaeffer", "cantor-lsv", "power-radii",
                             "svf-sum"))
    sc.add_argument("--psi")
    sc.add_argument("--f")
    sc.add_argument("--k", type=int)
    sc.add_argument("--n", type=int)
    sc.add_argument("--m", type=int)
    sc.add_argument("--s", type=float)
    sc.add_argument("--t", type=float)
    sc.add_argument("--rule", help="coef,decay[,log_exp]")
    sc.add_argument("--coefs", type=_floats)
    sc.add_argument("--rates", type=_floats)
    sc.add_argument("--rule-kind", choices=("power", "geometric"), default="power")
    sc.add_argument("--terms", type=int, default=10**6)
    sc.set_defaults(func=_cmd_series_classify)

    # transfer
    tr = sub.add_parser("transfer", help="gauge transforms and dichotomies")
    tsub = tr.add_subparsers(dest="transfer_command", required=True,
                             parser_class=_Parser)
    tb = tsub.add_parser("ball")
    tb.add_argument("--center", type=_floats, required=True)
    tb.add_argument("--radius", type=float, required=True)
    tb.add_argument("--f", required=True)
    tb.add_argument("--g", help="invertible reference gauge for the f,g transform")
    tb.set_defaults(func=_cmd_transfer_ball)

    tu = tsub.add_parser("upsilon")
    tu.add_argument("--k", type=int, required=True)
    tu.add_argument("--l", type=int, required=True)
    tu.add_argument("--rule", required=True, help="girth rule coef,decay")
    tu.add_argument("--f", required=True)
    tu.set_defaults(func=_cmd_transfer_upsilon)

    tt = tsub.add_parser("theta")
    tt.add_argument("--n", type=int, required=True)
    tt.add_argument("--m", type=int, required=True)
    tt.add_argument("--psi", required=True)
    tt.add_argument("--f", required=True)
    tt.add_argument("--variant", choices=("by-modulus", "by-vector-q", "by-pq"),
                    default="by-modulus")
    tt.add_argument("--pq-decay", action="store_true",
                    help="assert the psi/|q| decay condition for by-pq")
    tt.set_defaults(func=_cmd_transfer_theta)

    tv = tsub.add_parser("verdict")
    tv.add_argument("--setting", required=True)
    tv.add_argument("--psi", required=True)
    tv.add_argument("--f")
    tv.add_argument("--n", type=int)
    tv.add_argument("--m", type=int)
    tv.add_argument("--k", type=int)
    tv.add_argument("--y", type=_floats)
    tv.add_argument("--terms", type=int, default=10**6)
    tv.set_defaults(func=_cmd_transfer_verdict)

    # generate
    gen = sub.add_parser("generate", help="finite generations of set families")
    gen.add_argument("--family", required=True,
                     choices=("simultaneous-balls", "weighted-rectangles",
                              "linear-forms-slabs", "cantor-restricted",
                              "rationals", "ifs-cover", "random-cover"))
    gen.add_argument("--q", type=int, default=1, help="largest modulus Q")
    gen.add_argument("--band-lo", type=int, default=1, help="smallest modulus M")
    gen.add_argument("--psi")
    gen.add_argument("--k", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--m", type=int)
    gen.add_argument("--tau", type=_floats)
    gen.add_argument("--y", type=_floats)
    gen.add_argument("--filter", choices=("All", "Coprime"), default="Coprime")
    gen.add_argument("--ratios", type=_floats)
    gen.add_argument("--depth", type=int, default=1)
    gen.add_argument("--rule", help="radius rule for random-cover")
    gen.add_argument("--n-balls", type=int, default=100)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--torus", action="store_true")
    _add_out_flags(gen)
    gen.set_defaults(func=_cmd_generate)

    # simulate
    sim = sub.add_parser("simulate", help="seeded random covering runs")
    simsub = sim.add_subparsers(dest="simulate_command", required=True,
                                parser_class=_Parser)
    scov = simsub.add_parser("cover")
    scov.add_argument("--rule", required=True, help="radius rule coef,decay")
    scov.add_argument("--n-balls", type=int, required=True)
    scov.add_argument("--k", type=int, default=1)
    scov.add_argument("--seed", type=int, default=0)
    scov.add_argument("--tail-from", type=int, default=1)
    scov.add_argument("--tail-to", type=int, default=None)
    _add_out_flags(scov)
    scov.set_defaults(func=_cmd_simulate_cover)

    # construct
    con = sub.add_parser("construct", help="tuned counterexample parameters")
    csub = con.add_subparsers(dest="construct_command", required=True,
                              parser_class=_Parser)
    cc = csub.add_parser("counterexample")
    cc.add_argument("--n", type=int, required=True)
    cc.add_argument("--m", type=int, required=True)
    cc.add_argument("--alpha", type=float, required=True)
    cc.add_argument("--s0", type=float, required=True)
    cc.add_argument("--deltas", type=_floats, default=[0.05, 0.1, 0.2])
    cc.add_argument("--depth", type=int, default=20)
    cc.set_defaults(func=_cmd_construct_counterexample)

    # energy
    en = sub.add_parser("energy", help="Monte Carlo pair-energy estimates")
    en.add_argument("--target", default="unit_interval")
    en.add_argument("--s", type=float)
    en.add_argument("--f")
    en.add_argument("--samples", type=int, default=10**5)
    en.add_argument("--seed", type=int, default=0)
    en.set_defaults(func=_cmd_energy)

    # diagnose
    dia = sub.add_parser("diagnose", help="liminf order diagnostics")
    diasub = dia.add_subparsers(dest="diagnose_command", required=True,
                                parser_class=_Parser)
    dl = diasub.add_parser("lower-order")
    dl.add_argument("--psi", required=True)
    dl.add_argument("--depth", type=int, default=20)
    dl.set_defaults(func=_cmd_diagnose_lower_order)

    return root


def main(argv=None) -> int:
    t0 = time.perf_counter()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        code = args.func(args)
    except _HYPOTHESIS_ERRORS as exc:
        err = {"error": {"type": type(exc).__name__, "condition": str(exc)}}
        sys.stdout.write(json.dumps(_jsonable(err), separators=(",", ":")) + "\n")
        return _HYPOTHESIS_EXIT
    except SizeError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return _INTERNAL_EXIT
    except LimsupLabError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return _INTERNAL_EXIT
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return _INTERNAL_EXIT
    finally:
        print(f"wall_time_s={time.perf_counter() - t0:.3f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
