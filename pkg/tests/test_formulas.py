"""Closed-form dimension values against independently coded expressions."""

import math

import numpy as np
import pytest

from limsup_lab import (
    CANTOR_DIMENSION,
    ApproxFunction,
    DomainError,
    ExponentVector,
    LinearMapSpec,
    SingularValueSequence,
    affine_cover_dim,
    affinity_dim,
    cantor_critical,
    counterexample_params,
    jb_dim,
    levesley_bounds_nonmonotone,
    levesley_dim,
    random_cover_dim,
    rect_upper_bound,
    rynne_dim,
    similarity_dim,
    singular_value_fn,
    slicing_bounds,
    wwx_exponent,
)


def _min_over_gaps(k, weights, nu):
    # same minimum written through pairwise gaps instead of prefix sums
    best = math.inf
    arg = ()
    for j, tj in enumerate(weights, start=1):
        gaps = sum(max(tj - ti, 0.0) for ti in weights)
        val = (k + nu + gaps) / (1.0 + tj)
        if val < best - 1e-12:
            best, arg = val, (j,)
        elif val <= best + 1e-12:
            arg = arg + (j,)
    return best, arg


# ----------------------------------------------------------- scalar forms


def test_jb_dim():
    assert math.isclose(jb_dim(3.0), 0.5, rel_tol=1e-15)
    assert math.isclose(jb_dim(1.0 + 1e-9), 1.0, rel_tol=1e-8)
    with pytest.raises(DomainError):
        jb_dim(1.0)


def test_levesley_dim_branches_and_continuity():
    assert levesley_dim(3, 1, 2.0) == 3.0
    assert math.isclose(levesley_dim(3, 1, 4.0), 2.0 + 4.0 / 5.0, rel_tol=1e-15)
    # the two branches agree at the critical order n/m
    n, m = 5, 2
    crit = n / m
    below = levesley_dim(n, m, crit)
    above = m * (n - 1) + (m + n) / (crit + 1.0)
    assert math.isclose(below, above, rel_tol=1e-14)
    with pytest.raises(DomainError):
        levesley_dim(0, 1, 2.0)
    with pytest.raises(DomainError):
        levesley_dim(1, 1, -0.5)


def test_levesley_reduces_to_jb_in_one_dimension():
    rng = np.random.default_rng(11)
    for lam in 1.0 + 49.0 * rng.random(1000):
        assert math.isclose(levesley_dim(1, 1, lam), jb_dim(lam), rel_tol=1e-14)


def test_levesley_bounds_nonmonotone():
    lo, hi = levesley_bounds_nonmonotone(3, 1, 4.0)
    assert math.isclose(lo, 2.6, rel_tol=1e-15)
    assert math.isclose(hi, 2.8, rel_tol=1e-15)
    # the gap is exactly 1/(lam+1), and the upper end is the monotone value
    for lam in (3.5, 6.0, 20.0):
        lo, hi = levesley_bounds_nonmonotone(3, 1, lam)
        assert math.isclose(hi - lo, 1.0 / (lam + 1.0), rel_tol=1e-13)
        assert math.isclose(hi, levesley_dim(3, 1, lam), rel_tol=1e-15)
    with pytest.raises(DomainError):
        levesley_bounds_nonmonotone(2, 1, 4.0)
    with pytest.raises(DomainError):
        levesley_bounds_nonmonotone(3, 1, 2.0)


def test_cantor_critical():
    assert math.isclose(cantor_critical(2.0), math.log(2) / (2 * math.log(3)),
                        rel_tol=1e-13)
    assert cantor_critical(1.0) == CANTOR_DIMENSION
    with pytest.raises(DomainError):
        cantor_critical(0.0)


def test_random_cover_dim():
    assert random_cover_dim(0.5) == 0.5
    assert random_cover_dim(2.0) == 1.0
    assert random_cover_dim(1.0) == 1.0


# ------------------------------------------------------------- min forms


def test_rynne_dim_reference_values():
    out = rynne_dim(2, (1.0, 2.0), 1.0)
    assert math.isclose(out.value, 4.0 / 3.0, rel_tol=1e-15)
    assert out.argmin == (2,)
    assert float(out) == out.value


def test_rynne_dim_against_gap_form():
    rng = np.random.default_rng(5)
    for _ in range(300):
        k = int(rng.integers(1, 7))
        taus = tuple(sorted(rng.uniform(0.05, 5.0, k)))
        nu = rng.uniform(0.0, sum(taus))
        out = rynne_dim(k, taus, nu)
        ref, arg = _min_over_gaps(k, taus, nu)
        assert math.isclose(out.value, ref, rel_tol=1e-12)
        assert set(out.argmin) == set(arg)


def test_rynne_dim_guards():
    with pytest.raises(DomainError):
        rynne_dim(2, (1.0, 2.0), 4.0)  # sum(tau) < nu
    with pytest.raises(DomainError):
        rynne_dim(2, (2.0, 1.0), 1.0)  # weights must be non-decreasing
    with pytest.raises(DomainError):
        rynne_dim(3, (1.0, 2.0), 1.0)  # length mismatch


def test_wwx_exponent_identity_on_unit_vectors():
    for k in range(1, 9):
        out = wwx_exponent(k, (1.0,) * k)
        assert math.isclose(out.value, float(k), rel_tol=1e-15)
        assert out.argmin == tuple(range(1, k + 1))


def test_wwx_exponent_against_gap_form():
    rng = np.random.default_rng(6)
    assert math.isclose(wwx_exponent(2, (1.0, 2.0)).value, 1.5, rel_tol=1e-15)
    for _ in range(300):
        k = int(rng.integers(1, 7))
        a = tuple(sorted(1.0 + 4.0 * rng.random(k)))
        out = wwx_exponent(k, a)
        best = min((k + sum(max(aj - ai, 0.0) for ai in a)) / aj for aj in a)
        assert math.isclose(out.value, best, rel_tol=1e-12)
    with pytest.raises(DomainError):
        wwx_exponent(2, (0.5, 2.0))  # needs a_1 >= 1


def test_slicing_bounds_is_wwx_plus_codimension():
    rng = np.random.default_rng(7)
    for _ in range(200):
        k = int(rng.integers(1, 8))
        k0 = int(rng.integers(1, k + 1))
        a = tuple(sorted(1.0 + 3.0 * rng.random(k0)))
        assert math.isclose(
            slicing_bounds(k, k0, a),
            wwx_exponent(k0, a).value + (k - k0),
            rel_tol=1e-14,
        )
    with pytest.raises(DomainError):
        slicing_bounds(2, 3, (1.0, 1.0, 1.0))


def test_rect_upper_bound_reduces_to_wwx_on_unit_sides():
    rng = np.random.default_rng(8)
    for _ in range(200):
        k = int(rng.integers(1, 7))
        a = tuple(sorted(1.0 + 3.0 * rng.random(k)))
        got = rect_upper_bound(k, (1.0,) * k, a)
        assert math.isclose(got, wwx_exponent(k, a).value, rel_tol=1e-13)


def test_rect_upper_bound_general_and_guards():
    # direct evaluation for k = 2, t = (1, 2), a = (1, 1.5)
    t, a = (1.0, 2.0), (1.0, 1.5)
    prods = [1.0, 3.0]
    total = 3.0
    expected = min(
        (total + 1 * prods[0] - 1.0) / prods[0],
        (total + 2 * prods[1] - 4.0) / prods[1],
    )
    assert math.isclose(rect_upper_bound(2, t, a), expected, rel_tol=1e-14)
    with pytest.raises(DomainError):
        rect_upper_bound(2, (2.0, 1.0), (1.0, 1.0))  # products must be sorted
    with pytest.raises(DomainError):
        rect_upper_bound(2, (1.0, 1.0), (0.5, 1.0))
    with pytest.raises(DomainError):
        rect_upper_bound(2, (0.5, 1.0), (1.0, 1.0))  # sides must be >= 1


def test_exponent_vector_roles():
    with pytest.raises(DomainError):
        ExponentVector((1.0, 2.0), "no_such_role")
    with pytest.raises(DomainError):
        ExponentVector((), "WeightTau")
    vec = ExponentVector((1.0, 2.0), "WeightTau")
    with pytest.raises(DomainError):
        rynne_dim(2, ExponentVector((1.0, 2.0), "ShrinkA"), 1.0)
    assert rynne_dim(2, vec, 1.0).value == rynne_dim(2, (1.0, 2.0), 1.0).value


# ------------------------------------------------------- counterexample


def test_counterexample_params_reference_case():
    p = counterexample_params(3, 1, 4, 2.7)
    assert abs(p.beta - 33.0 / 7.0) < 1e-12
    # gamma satisfies 2/gamma = n + m - 1 - (alpha+1)(s0 - m(n-1))
    rhs = 3 + 1 - 1 - (4 + 1) * (2.7 - 2.0)
    assert abs(2.0 / p.gamma - rhs) < 1e-12
    assert abs(p.gamma + 4.0) < 1e-12
    assert p.bounds == (2.6, 2.8)
    assert p.index_family.kind == "polynomial_ceil"
    assert abs(p.index_family.p - 4.0) < 1e-12
    assert p.psi.form == "piecewise_power"
    assert p.psi.alpha == 4.0 and abs(p.psi.beta - 33.0 / 7.0) < 1e-12


def test_counterexample_params_identity_everywhere():
    rng = np.random.default_rng(9)
    for _ in range(100):
        n = int(rng.integers(1, 5))
        m = int(rng.integers(1, 4))
        alpha = n / m + rng.uniform(0.2, 4.0)
        base = m * (n - 1)
        lo = base + (m + n - 1) / (alpha + 1)
        hi = base + (m + n) / (alpha + 1)
        s0 = rng.uniform(lo + 1e-3, hi - 1e-3)
        p = counterexample_params(n, m, alpha, s0)
        assert abs((p.beta + 1) * (s0 - base) - (m + n)) < 1e-10
        assert abs(2.0 / p.gamma - (n + m - 1 - (alpha + 1) * (s0 - base))) < 1e-10
        assert lo < s0 < hi


def test_counterexample_params_guards():
    with pytest.raises(DomainError):
        counterexample_params(3, 1, 2.0, 2.7)  # alpha <= n/m
    with pytest.raises(DomainError):
        counterexample_params(3, 1, 4, 2.6)  # s0 at the interval edge
    with pytest.raises(DomainError):
        counterexample_params(3, 1, 4, 2.9)


# ------------------------------------------------------------- IFS solves


def test_similarity_dim_known_values():
    assert abs(similarity_dim((0.5, 0.5)) - 1.0) < 1e-12
    assert abs(similarity_dim((1 / 3, 1 / 3)) - CANTOR_DIMENSION) < 1e-12
    assert similarity_dim((0.7,)) == 0.0
    with pytest.raises(DomainError):
        similarity_dim(())
    with pytest.raises(DomainError):
        similarity_dim((0.5, 1.0))


def test_similarity_dim_solves_moran_equation():
    rng = np.random.default_rng(10)
    for _ in range(50):
        ratios = rng.uniform(0.05, 0.6, int(rng.integers(2, 6)))
        s = similarity_dim(tuple(ratios))
        assert abs(math.fsum(c**s for c in ratios) - 1.0) < 1e-10


def test_singular_value_fn_values():
    assert math.isclose(singular_value_fn((0.5, 0.25), 1.5), 0.25, rel_tol=1e-15)
    spec = LinearMapSpec((0.5, 0.3, 0.2))
    assert singular_value_fn(spec, 0.0) == 1.0
    assert math.isclose(singular_value_fn(spec, 2.0), 0.15, rel_tol=1e-15)
    # beyond k the product extends by the power t/k
    assert math.isclose(singular_value_fn(spec, 4.5), (0.5 * 0.3 * 0.2) ** 1.5,
                        rel_tol=1e-14)
    with pytest.raises(DomainError):
        singular_value_fn(spec, -0.1)
    with pytest.raises(DomainError):
        LinearMapSpec((0.3, 0.5))


def test_singular_value_fn_continuous_at_integer_boundaries():
    rng = np.random.default_rng(12)
    for _ in range(200):
        k = int(rng.integers(1, 5))
        sigma = tuple(sorted(rng.uniform(0.05, 0.95, k), reverse=True))
        spec = LinearMapSpec(sigma)
        for j in range(1, k + 1):
            left = math.prod(sigma[: j - 1]) * sigma[j - 1] ** 1.0
            assert abs(singular_value_fn(spec, float(j)) - left) < 1e-12
            eps = 1e-9
            assert abs(singular_value_fn(spec, j - eps)
                       - singular_value_fn(spec, float(j))) < 1e-7
            assert abs(singular_value_fn(spec, j + eps)
                       - singular_value_fn(spec, float(j))) < 1e-7


def test_affinity_dim_matches_similarity_for_equal_sigma():
    assert abs(affinity_dim([(0.5, 0.5), (0.5, 0.5)]) - 1.0) < 1e-9
    assert abs(affinity_dim([(0.5, 0.5), (0.5, 0.5)])
               - similarity_dim((0.5, 0.5))) < 1e-9


def test_affinity_dim_closed_form_three_maps():
    maps = [LinearMapSpec((0.5, 1 / 3))] * 3
    expected = 1.0 + math.log(1.5) / math.log(3.0)
    assert abs(affinity_dim(maps) - expected) < 1e-6
    with pytest.raises(DomainError):
        affinity_dim([])
    with pytest.raises(DomainError):
        affinity_dim([(0.5, 0.4), (0.5,)])


def test_affinity_dim_root_property():
    rng = np.random.default_rng(13)
    for _ in range(30):
        k = int(rng.integers(1, 4))
        maps = [
            LinearMapSpec(tuple(sorted(rng.uniform(0.1, 0.6, k), reverse=True)))
            for _ in range(int(rng.integers(2, 5)))
        ]
        t = affinity_dim(maps)
        total = math.fsum(singular_value_fn(m, t) for m in maps)
        if t > 0:
            assert abs(total - 1.0) < 1e-9


def test_affine_cover_dim_piecewise_inverse():
    # threshold solves P(t) = 1 for the cumulative rate interpolation
    seq = SingularValueSequence(coefs=(0.5, 0.4), rates=(1.0, 2.0))
    assert abs(affine_cover_dim(seq) - 1.0) < 1e-8
    seq2 = SingularValueSequence(coefs=(0.5, 0.4), rates=(0.6, 2.0))
    # P(t) = 0.6 t for t <= 1, 0.6 + 2(t-1) after; P = 1 at t = 1.2
    assert abs(affine_cover_dim(seq2) - 1.2) < 1e-8
    # total decay <= 1 cannot converge below t = k, so the dim clamps at k
    slow = SingularValueSequence(coefs=(0.5, 0.4), rates=(0.3, 0.5))
    assert affine_cover_dim(slow) == 2.0
    with pytest.raises(DomainError):
        affine_cover_dim((0.5, 0.4))


def test_affine_cover_dim_geometric_rates_vanish():
    seq = SingularValueSequence(coefs=(0.9,), rates=(0.5,), kind="geometric")
    assert affine_cover_dim(seq) < 1e-8
