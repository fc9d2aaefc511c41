"""Gauges, index families, approximating functions, sequence rules."""

import math

import numpy as np
import pytest

from limsup_lab import (
    ApproxFunction,
    DimensionFunction,
    DomainError,
    IndexFamily,
    PowerSequence,
    RangeError,
    SizeError,
    NON_INCREASING,
    NON_MONOTONE,
    validate_hypotheses,
)


# ---------------------------------------------------------------- gauges


def test_power_gauge_values():
    f = DimensionFunction.power(2.5)
    rs = np.array([1e-6, 1e-3, 0.125, 0.5])
    assert np.allclose(f.eval_many(rs), rs**2.5, rtol=0, atol=0)
    assert f(0.25) == 0.25**2.5


def test_power_log_gauge_small_r():
    # below 1/e the log factor is log(1/r); oracle computed directly
    f = DimensionFunction.power_log(1.0, 2.0)
    r = 1e-4
    assert math.isclose(f(r), r * math.log(1 / r) ** 2, rel_tol=1e-14)


def test_power_log_clamps_near_one():
    # at r >= 1/e the log factor is pinned to 1 so b < 0 cannot blow up
    f = DimensionFunction.power_log(1.0, -3.0)
    assert f(0.9) == 0.9
    assert f(1.0) == 1.0


def test_gauge_rejects_bad_exponent_and_domain():
    with pytest.raises(DomainError):
        DimensionFunction.power(0.0)
    with pytest.raises(DomainError):
        DimensionFunction.power(-1.0)
    f = DimensionFunction.power(1.0)
    with pytest.raises(DomainError):
        f(0.0)
    with pytest.raises(DomainError):
        f(-0.5)


def test_sampled_gauge_interpolates_and_guards_support():
    pairs = [(2.0**-j, 2.0**-j) for j in range(1, 20)]
    f = DimensionFunction.from_table(pairs)
    assert math.isclose(f(2.0**-7), 2.0**-7, rel_tol=1e-15)
    # linear interpolation between table knots
    mid = (2.0**-7 + 2.0**-8) / 2
    assert math.isclose(f(mid), mid, rel_tol=1e-12)
    with pytest.raises(RangeError):
        f(2.0**-25)
    with pytest.raises(RangeError):
        f(0.9)


def test_sampled_gauge_rejects_decreasing_values():
    with pytest.raises(DomainError):
        DimensionFunction.from_table([(0.1, 0.5), (0.2, 0.4)])


def test_sampled_gauge_rejects_no_zero_trend():
    # values bounded away from 0 at the small end are not a gauge
    pairs = [(2.0**-j, 0.5) for j in range(1, 12)]
    with pytest.raises(DomainError):
        DimensionFunction.from_table(pairs)


def test_gauge_json_round_trip():
    f = DimensionFunction.power_log(1.5, -2.0)
    g = DimensionFunction.from_json(f.to_json())
    assert g == f
    t = DimensionFunction.from_table([(0.001, 1e-6), (0.01, 1e-4), (0.1, 1e-2)])
    t2 = DimensionFunction.from_json(t.to_json())
    assert t2.radii == t.radii and t2.values == t.values


# ---------------------------------------------------------- index families


def test_geometric_family_sequence_and_membership():
    fam = IndexFamily.geometric(3)
    ks = np.arange(1, 11)
    assert list(fam.sequence_values(ks)) == [3 ** (k - 1) for k in range(1, 11)]
    assert fam.contains(81)
    assert not fam.contains(82)
    assert list(fam.members_up_to(100)) == [1, 3, 9, 27, 81]


def test_polynomial_family_matches_ceiling():
    fam = IndexFamily.polynomial_ceil(4.0)
    for k in range(1, 50):
        assert fam.sequence_value(k) == k**4
    frac = IndexFamily.polynomial_ceil(1.5)
    for k in range(1, 200):
        assert frac.sequence_value(k) == math.ceil(k**1.5 - 1e-12)


def test_polynomial_family_membership_round_trip():
    fam = IndexFamily.polynomial_ceil(2.5)
    members = fam.members_up_to(10**6)
    assert fam.contains_many(members).all()
    gaps = members[:-1] + 1
    hit = fam.contains_many(gaps)
    # consecutive values of ceil(k^2.5) differ by > 1 beyond the start
    assert not hit[5:].any()


def test_explicit_family_and_guards():
    fam = IndexFamily.explicit([4, 2, 8, 16])
    assert list(fam.members_up_to(10)) == [2, 4, 8]
    assert fam.contains(16) and not fam.contains(3)
    with pytest.raises(DomainError):
        IndexFamily.geometric(1)
    with pytest.raises(DomainError):
        IndexFamily.polynomial_ceil(0.5)


def test_family_scalar_membership_exact_for_big_integers():
    # scalar membership runs on exact integers, so huge q stays correct
    fam = IndexFamily.polynomial_ceil(4.0)
    assert fam.contains(100000**4)
    assert not fam.contains(100000**4 + 1)
    assert not fam.contains(2**63)


def test_family_json_round_trip():
    for fam in (
        IndexFamily.all_naturals(),
        IndexFamily.geometric(5),
        IndexFamily.polynomial_ceil(3.0),
        IndexFamily.explicit([1, 7, 9]),
    ):
        back = IndexFamily.from_json(fam.to_json())
        assert back == fam


# ----------------------------------------------------- approximating psi


def test_power_psi_values_and_flag():
    psi = ApproxFunction.power(2.0)
    qs = np.array([1, 2, 10, 1000])
    assert np.allclose(psi.eval_many(qs), qs.astype(float) ** -2.0, rtol=0)
    assert psi.monotone_flag == NON_INCREASING
    assert ApproxFunction.power(-0.5).monotone_flag == NON_MONOTONE


def test_piecewise_psi_switches_on_family():
    fam = IndexFamily.geometric(2)
    psi = ApproxFunction.piecewise_power(3.0, 1.0, fam)
    assert psi(8) == 8.0**-3
    assert psi(7) == 7.0**-1
    assert psi.monotone_flag == NON_MONOTONE
    qs = np.arange(1, 70)
    vals = psi.eval_many(qs)
    on = fam.contains_many(qs)
    ref = np.where(on, qs.astype(float) ** -3.0, qs.astype(float) ** -1.0)
    assert np.array_equal(vals, ref)


def test_piecewise_psi_guard_beyond_int_range():
    psi = ApproxFunction.piecewise_power(2.0, 1.0, IndexFamily.polynomial_ceil(2.0))
    with pytest.raises(SizeError):
        psi(2**63)


def test_sampled_psi_exact_lookup_only():
    psi = ApproxFunction.from_table([(1, 1.0), (2, 0.25), (4, 0.0625)])
    assert psi(2) == 0.25
    with pytest.raises(RangeError):
        psi(3)
    assert psi.monotone_flag == NON_INCREASING
    bumpy = ApproxFunction.from_table([(1, 0.5), (2, 0.9)])
    assert bumpy.monotone_flag == NON_MONOTONE


def test_psi_domain_guard():
    psi = ApproxFunction.power(1.0)
    with pytest.raises(DomainError):
        psi(0)


def test_psi_json_round_trip():
    fam = IndexFamily.polynomial_ceil(4.0)
    for psi in (
        ApproxFunction.power(1.75),
        ApproxFunction.piecewise_power(4.0, 33 / 7, fam),
        ApproxFunction.from_table([(1, 0.5), (3, 0.1)]),
    ):
        back = ApproxFunction.from_json(psi.to_json())
        assert back == psi


# --------------------------------------------------------- sequence rules


def test_power_sequence_values():
    rule = PowerSequence(coef=2.0, decay=1.5)
    ns = np.array([1, 4, 9])
    assert np.allclose(rule.eval_many(ns), 2.0 * ns.astype(float) ** -1.5, rtol=0)
    logged = PowerSequence(coef=1.0, decay=1.0, log_exp=2.0)
    assert math.isclose(logged(10), math.log(10) ** 2 / 10, rel_tol=1e-15)
    # log factor clamps to 1 at the start of the sequence
    assert logged(1) == 1.0
    with pytest.raises(DomainError):
        PowerSequence(coef=0.0, decay=1.0)
    with pytest.raises(DomainError):
        rule(0)


# ------------------------------------------------------ hypothesis checks


def test_validate_hypotheses_power_family_exact():
    # r^-k f stays monotone for pure powers; direction from sign(s - k)
    rep = validate_hypotheses(DimensionFunction.power(2.5), k=3, l=0)
    assert rep.ratio_monotone and rep.ratio_exact
    assert rep.ratio_direction == "decreasing"
    rep2 = validate_hypotheses(DimensionFunction.power(3.5), k=3, l=0)
    assert rep2.ratio_direction == "increasing"
    rep3 = validate_hypotheses(DimensionFunction.power(3.0), k=3, l=0)
    assert rep3.ratio_direction == "constant"


def test_validate_hypotheses_g_validity():
    # g(r) = r^-l f(r) must be a gauge: needs s > l, or s == l with b < 0
    ok = validate_hypotheses(DimensionFunction.power(2.5), k=3, l=2)
    assert ok.g_valid
    bad = validate_hypotheses(DimensionFunction.power(2.0), k=3, l=2)
    assert not bad.g_valid
    log_ok = validate_hypotheses(DimensionFunction.power_log(2.0, -1.0), k=3, l=2)
    assert log_ok.g_valid
    log_bad = validate_hypotheses(DimensionFunction.power_log(2.0, 1.0), k=3, l=2)
    assert not log_bad.g_valid


def test_validate_hypotheses_sampled_grid():
    pairs = [(2.0**-j, 2.0 ** (-2.5 * j)) for j in range(1, 40)]
    rep = validate_hypotheses(DimensionFunction.from_table(pairs), k=3, l=2)
    assert rep.ratio_monotone
    assert rep.ratio_direction == "decreasing"
    assert not rep.ratio_exact
    assert rep.g_valid
