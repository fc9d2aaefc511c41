"""Volume-sum builders, convergence classification, exponents."""

import math

import numpy as np
import pytest

from limsup_lab import (
    CONVERGES,
    DIVERGES,
    INCONCLUSIVE,
    EXACT_EXPONENT,
    INTEGRAL_TEST_LOG,
    NUMERIC_DIAGNOSTIC,
    ApproxFunction,
    DimensionFunction,
    DomainError,
    HypothesisError,
    IndexFamily,
    PowerSequence,
    SingularValueSequence,
    SizeError,
    UnsupportedError,
    build_series,
    cantor_critical,
    cantor_lsv_series,
    classify,
    duffin_schaeffer_series,
    euler_totient_sieve,
    exponent_of_convergence,
    jarnik_series,
    jb_dim,
    kg_hausdorff_series,
    kg_series,
    khintchine_sim_series,
    levesley_dim,
    partial_sum_diagnostics,
    power_radii_series,
    svf_regime,
    svf_sum_series,
)


def _classify_threshold(make_spec, lo, hi, tol=1e-9):
    """Bisect the Converges/Diverges flip of a one-parameter series family."""
    assert classify(make_spec(lo)).classification == DIVERGES
    assert classify(make_spec(hi)).classification == CONVERGES
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if classify(make_spec(mid)).classification == CONVERGES:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


# ---------------------------------------------------------------- totient


def test_totient_sieve_against_gcd_count():
    phi = euler_totient_sieve(300)
    for n in range(1, 301):
        expected = sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)
        assert phi[n] == expected


def test_totient_sieve_cap():
    with pytest.raises(SizeError):
        euler_totient_sieve(10**7 + 1)


# --------------------------------------------------- simultaneous volume sum


def test_khintchine_sim_terms_and_exponent():
    psi = ApproxFunction.power(0.75)
    spec = khintchine_sim_series(2, psi)
    qs = np.arange(1, 50, dtype=float)
    assert np.allclose(spec.term(qs), qs ** (-1.5), rtol=1e-14, atol=0)
    assert spec.symbolic == (-1.5, 0.0)


def test_khintchine_sim_classification_threshold():
    # sum psi(q)^k flips at tau = 1/k
    for k in (1, 2, 3):
        below = classify(khintchine_sim_series(k, ApproxFunction.power(0.9 / k)))
        above = classify(khintchine_sim_series(k, ApproxFunction.power(1.1 / k)))
        boundary = classify(khintchine_sim_series(k, ApproxFunction.power(1.0 / k)))
        assert below.classification == DIVERGES
        assert above.classification == CONVERGES
        assert boundary.classification == DIVERGES
        assert below.method == EXACT_EXPONENT
        assert boundary.method == INTEGRAL_TEST_LOG


def test_khintchine_sim_piecewise_split():
    fam = IndexFamily.polynomial_ceil(2.0)
    psi = ApproxFunction.piecewise_power(3.0, 0.25, fam)
    spec = khintchine_sim_series(1, psi)
    on, off = spec.split()
    ks = np.arange(1, 30, dtype=float)
    a = np.ceil(ks**2 - 1e-12)
    assert np.allclose(on.term(ks), a ** (-3.0), rtol=0)
    qs = np.arange(1, 200, dtype=float)
    off_vals = off.term(qs)
    members = fam.contains_many(np.arange(1, 200))
    assert (off_vals[members] == 0).all()
    assert np.allclose(off_vals[~members], qs[~members] ** (-0.25), rtol=0)
    # off-set dominates: q^-1/4 diverges, so the whole series diverges
    verdict = classify(spec)
    assert verdict.classification == DIVERGES
    assert len(verdict.components) == 2


# ----------------------------------------------------- Hausdorff volume sum


def test_jarnik_threshold_matches_dimension_formula():
    # the series flip in s recovers the critical dimension 2/(tau+1)
    for tau in (1.2, 1.5, 3.0):
        psi = ApproxFunction.power(tau)
        flip = _classify_threshold(
            lambda s, psi=psi: jarnik_series(1, psi, DimensionFunction.power(s)),
            lo=0.05,
            hi=1.0,
        )
        assert abs(flip - jb_dim(tau)) < 1e-8


def test_jarnik_terms():
    psi = ApproxFunction.power(2.0)
    f = DimensionFunction.power(0.5)
    spec = jarnik_series(1, psi, f)
    qs = np.array([2.0, 5.0, 10.0])
    # q^k f(psi(q)/q) with k = 1
    assert np.allclose(spec.term(qs), qs * (qs**-3.0) ** 0.5, rtol=1e-15)


def test_jarnik_log_factor_boundary():
    # at the exact boundary exponent the log power decides
    psi = ApproxFunction.power(1.0)
    s = 1.0  # E = k - (tau+1)s = -1
    diverge = classify(jarnik_series(1, psi, DimensionFunction.power_log(s, -1.0)))
    converge = classify(jarnik_series(1, psi, DimensionFunction.power_log(s, -1.5)))
    assert diverge.classification == DIVERGES
    assert converge.classification == CONVERGES
    assert diverge.method == INTEGRAL_TEST_LOG


# ------------------------------------------------------- linear forms sums


def test_kg_threshold():
    for n, m in ((1, 1), (2, 1), (2, 3)):
        crit = n / m
        assert classify(kg_series(n, m, ApproxFunction.power(crit - 0.05))).classification == DIVERGES
        assert classify(kg_series(n, m, ApproxFunction.power(crit))).classification == DIVERGES
        assert classify(kg_series(n, m, ApproxFunction.power(crit + 0.05))).classification == CONVERGES


def test_kg_terms():
    psi = ApproxFunction.power(1.5)
    spec = kg_series(3, 2, psi)
    qs = np.array([2.0, 7.0])
    assert np.allclose(spec.term(qs), qs**2 * qs ** (-3.0), rtol=1e-15)


def test_kg_hausdorff_threshold_matches_levesley():
    # flip in s sits at the two-branch dimension value for tau > n/m
    n, m = 3, 1
    for tau in (3.5, 5.0):
        psi = ApproxFunction.power(tau)
        flip = _classify_threshold(
            lambda s, psi=psi: kg_hausdorff_series(n, m, psi, DimensionFunction.power(s)),
            lo=2.05,
            hi=3.0,
        )
        assert abs(flip - levesley_dim(n, m, tau)) < 1e-8


def test_kg_hausdorff_rejects_invalid_gauge():
    # g(r) = r^-l f(r) must itself be a gauge; s <= l = m(n-1) is not
    psi = ApproxFunction.power(3.0)
    with pytest.raises(HypothesisError):
        kg_hausdorff_series(3, 1, psi, DimensionFunction.power(1.5))
    with pytest.raises(HypothesisError):
        kg_hausdorff_series(3, 1, psi, DimensionFunction.power(2.0))
    # s == l with a negative log power is a valid gauge again
    spec = kg_hausdorff_series(3, 1, psi, DimensionFunction.power_log(2.0, -2.0))
    assert classify(spec).classification == DIVERGES


# ------------------------------------------------- coprime denominators


def test_duffin_schaeffer_terms_brute_force():
    k, tau = 2, 0.8
    psi = ApproxFunction.power(tau)
    spec = duffin_schaeffer_series(k, psi)
    total = float(spec.term(np.arange(1, 201, dtype=float)).sum())
    brute = 0.0
    for q in range(1, 201):
        phi = sum(1 for a in range(1, q + 1) if math.gcd(a, q) == 1)
        brute += phi**k * (q**-tau / q) ** k
    assert math.isclose(total, brute, rel_tol=1e-12)


def test_duffin_schaeffer_classification_is_numeric():
    diverging = classify(duffin_schaeffer_series(1, ApproxFunction.power(0.5)))
    converging = classify(duffin_schaeffer_series(1, ApproxFunction.power(2.0)))
    assert diverging.classification == DIVERGES
    assert converging.classification == CONVERGES
    assert diverging.method == NUMERIC_DIAGNOSTIC
    # the totient oscillation hides the boundary case from a slope fit
    boundary = classify(duffin_schaeffer_series(1, ApproxFunction.power(1.0)))
    assert boundary.classification == INCONCLUSIVE


def test_duffin_schaeffer_hausdorff_gauge():
    psi = ApproxFunction.power(1.0)
    spec = duffin_schaeffer_series(1, psi, DimensionFunction.power(0.5))
    qs = np.array([3.0, 8.0])
    phi = euler_totient_sieve(8).astype(float)
    assert np.allclose(spec.term(qs), phi[[3, 8]] * (qs**-2.0) ** 0.5, rtol=1e-15)


# ------------------------------------------------ restricted denominators


def test_cantor_lsv_threshold():
    # geometric ratio changes sign at s = (log 2 / log 3) / tau
    for tau in (1.0, 2.0):
        crit = cantor_critical(tau)
        psi = ApproxFunction.power(tau)
        below = cantor_lsv_series(psi, DimensionFunction.power(crit * 0.98))
        above = cantor_lsv_series(psi, DimensionFunction.power(crit * 1.02))
        assert classify(below).classification == DIVERGES
        assert classify(above).classification == CONVERGES


def test_cantor_lsv_boundary_and_terms():
    tau = 2.0
    crit = cantor_critical(tau)
    psi = ApproxFunction.power(tau)
    spec = cantor_lsv_series(psi, DimensionFunction.power(crit))
    verdict = classify(spec)
    assert verdict.classification == DIVERGES
    assert verdict.method == INTEGRAL_TEST_LOG
    ts = np.array([1.0, 2.0, 3.0])
    b = 3.0 ** (ts - 1.0)
    expected = (b ** (-tau)) ** crit * b ** (math.log(2) / math.log(3))
    assert np.allclose(spec.term(ts), expected, rtol=1e-12)


def test_cantor_lsv_requires_geometric_family():
    psi = ApproxFunction.power(1.0)
    with pytest.raises(UnsupportedError):
        cantor_lsv_series(psi, DimensionFunction.power(0.3),
                          base_family=IndexFamily.polynomial_ceil(2.0))


# ------------------------------------------------------------ radius sums


def test_power_radii_series():
    rule = PowerSequence(coef=0.5, decay=2.0)
    spec = power_radii_series(rule, 0.4)
    ns = np.arange(1, 10, dtype=float)
    assert np.allclose(spec.term(ns), (0.5 * ns**-2.0) ** 0.4, rtol=1e-15)
    assert spec.symbolic == (-0.8, 0.0)
    assert classify(spec).classification == DIVERGES
    assert classify(power_radii_series(rule, 0.5)).classification == DIVERGES
    assert classify(power_radii_series(rule, 0.6)).classification == CONVERGES


def test_exponent_of_convergence_exact_rules():
    assert exponent_of_convergence(PowerSequence(1.0, 2.0)).value == 0.5
    assert exponent_of_convergence(PowerSequence(1.0, 2.0)).exact
    assert exponent_of_convergence(IndexFamily.all_naturals()).value == 1.0
    assert exponent_of_convergence(IndexFamily.geometric(3)).value == 0.0
    assert exponent_of_convergence(IndexFamily.polynomial_ceil(4.0)).value == 0.25
    assert exponent_of_convergence(IndexFamily.explicit([1, 5, 9])).value == 0.0


def test_exponent_of_convergence_sampled_fit():
    idx = np.arange(1, 2001, dtype=float)
    rng = np.random.default_rng(3)
    radii = idx**-2.0 * np.exp(rng.normal(0, 0.01, len(idx)))
    est = exponent_of_convergence(radii)
    assert not est.exact
    assert abs(est.value - 0.5) < 0.01
    assert est.half_width < 0.01
    with pytest.raises(DomainError):
        exponent_of_convergence(np.array([1.0, 0.5, 0.25]))


# -------------------------------------------------- singular value sums


def test_svf_regime():
    assert svf_regime(0.0, 3) == (1, 0.0)
    assert svf_regime(1.5, 3) == (2, 0.5)
    n, theta = svf_regime(2.0, 3)
    assert (n, theta) == (3, 0.0)
    # above k the regime pins to the top
    assert svf_regime(4.0, 3) == (3, 2.0)


def test_svf_sum_power_kind():
    seq = SingularValueSequence(coefs=(0.5, 0.4), rates=(1.0, 2.0))
    # t = 1.5: P = 1 + 0.5 * 2 = 2, C = 0.5 * 0.4^0.5
    spec = svf_sum_series(seq, 1.5)
    assert spec.symbolic == (-2.0, 0.0)
    ns = np.array([1.0, 2.0, 5.0])
    C = 0.5 * 0.4**0.5
    assert np.allclose(spec.term(ns), C * ns**-2.0, rtol=1e-15)
    assert classify(spec).classification == CONVERGES
    # t = 0.5 sits below the P(t) = 1 threshold
    assert classify(svf_sum_series(seq, 0.5)).classification == DIVERGES
    # beyond t = k the exponent extends as (r1 + r2) t / k
    spec3 = svf_sum_series(seq, 3.0)
    assert spec3.symbolic == (-4.5, 0.0)


def test_svf_sum_power_term_matches_direct_product():
    seq = SingularValueSequence(coefs=(0.5, 0.4, 0.3), rates=(1.0, 1.5, 2.0))
    t = 2.3
    spec = svf_sum_series(seq, t)
    for i in (1, 2, 7):
        s1, s2, s3 = seq.sigma(i)
        direct = s1 * s2 * s3**0.3
        assert math.isclose(float(spec.term(np.array([i], dtype=float))[0]), direct,
                            rel_tol=1e-12)


def test_svf_sum_geometric_kind():
    seq = SingularValueSequence(coefs=(0.9, 0.8), rates=(0.5, 0.25), kind="geometric")
    spec = svf_sum_series(seq, 1.0)
    assert spec.geometric is not None
    assert math.isclose(spec.geometric[0], math.log(0.5), rel_tol=1e-15)
    assert classify(spec).classification == CONVERGES
    i = 4
    s1, _ = seq.sigma(i)
    assert math.isclose(float(spec.term(np.array([i], dtype=float))[0]), s1, rel_tol=1e-12)


def test_singular_value_sequence_validation():
    with pytest.raises(DomainError):
        SingularValueSequence(coefs=(0.5, 0.6), rates=(1.0, 2.0))
    with pytest.raises(DomainError):
        SingularValueSequence(coefs=(0.5, 0.4), rates=(2.0, 1.0))
    with pytest.raises(DomainError):
        SingularValueSequence(coefs=(1.2,), rates=(1.0,))
    with pytest.raises(DomainError):
        SingularValueSequence(coefs=(0.5,), rates=(0.5,), kind="other")
    with pytest.raises(DomainError):
        SingularValueSequence(coefs=(0.9, 0.8), rates=(0.25, 0.5), kind="geometric")


# ------------------------------------------------------------- dispatch


def test_build_series_dispatch():
    psi = ApproxFunction.power(0.6)
    via_builder = classify(build_series("khintchine-sim", k=2, psi=psi))
    direct = classify(khintchine_sim_series(2, psi))
    assert via_builder.classification == direct.classification
    with pytest.raises(DomainError):
        build_series("no-such-series")


# ---------------------------------------------------------- diagnostics


def test_partial_sum_diagnostics_slope():
    spec = power_radii_series(PowerSequence(1.0, 1.0), 0.4)  # term n^-0.4
    diag = partial_sum_diagnostics(spec, n_terms=10**5)
    # blocks of sum n^-0.4 grow like N^0.6
    assert abs(diag.tail_slope - 0.6) < 0.02
    assert abs(diag.term_exponent_estimate - (-0.4)) < 0.02
    assert not diag.saturated
    assert len(diag.cutoffs) == 8
    assert diag.cutoffs[-1] == 10**5


def test_partial_sum_diagnostics_saturation():
    spec = power_radii_series(PowerSequence(1.0, -300.0), 1.0)  # term n^300
    diag = partial_sum_diagnostics(spec, n_terms=1000)
    assert diag.saturated
    with pytest.raises(DomainError):
        partial_sum_diagnostics(spec, n_terms=10)


def test_verdict_json_shape():
    verdict = classify(khintchine_sim_series(1, ApproxFunction.power(2.0)))
    obj = verdict.to_json()
    assert obj["class"] == CONVERGES
    assert obj["method"] == EXACT_EXPONENT
