"""Profile engine: evaluation, powered integrals, centroids, concavity checks.

Derived expected values are frozen from independent oracles: elementary
antiderivatives for the affine cases, scipy quadrature for everything else.
"""

import numpy as np
import pytest
from scipy.integrate import quad

import grunlab as gl
from grunlab.errors import (
    DegenerateProfileError,
    DomainError,
    ParameterError,
    ProfileError,
)

from conftest import random_profiles


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def test_evaluate_piecewise_linear(affine):
    assert gl.evaluate(affine, 0.5) == pytest.approx(0.5, abs=0)


def test_evaluate_constant():
    h = gl.ConstantProfile(2.0, 0.0, 3.0)
    assert gl.evaluate(h, 1.7) == 2.0


def test_evaluate_decreasing_power():
    h = gl.DecreasingPowerProfile(1.0, 0.0, 1.0, 2.0)
    assert gl.evaluate(h, 0.5) == pytest.approx(0.25, abs=0)


def test_evaluate_outside_domain_rejected(affine):
    with pytest.raises(DomainError):
        gl.evaluate(affine, 1.5)
    with pytest.raises(DomainError):
        gl.evaluate(affine, -0.1)


def test_profile_validation_errors():
    with pytest.raises(ProfileError):
        gl.ConcaveProfile([[0.0, 1.0]])
    with pytest.raises(ProfileError):
        gl.ConcaveProfile([[0.0, 1.0], [0.0, 0.5]])
    with pytest.raises(ProfileError):
        gl.ConcaveProfile([[0.0, 1.0], [1.0, -0.1]])
    with pytest.raises(ProfileError):  # convex kink
        gl.ConcaveProfile([[0.0, 1.0], [0.5, 0.2], [1.0, 1.0]])
    with pytest.raises(ProfileError):  # interior zero
        gl.ConcaveProfile([[0.0, 1.0], [0.5, 0.0], [1.0, 0.0]])


# ---------------------------------------------------------------------------
# powered and moment integrals
# ---------------------------------------------------------------------------

def test_powered_integral_unit_constant():
    h = gl.ConcaveProfile([[0.0, 1.0], [3.0, 1.0]])
    assert gl.powered_integral(h, 5.0) == pytest.approx(3.0, rel=1e-14)


def test_powered_integral_affine(affine):
    # oracle: -(1-t)^3/3 antiderivative
    assert gl.powered_integral(affine, 2.0) == pytest.approx(1.0 / 3.0, rel=1e-14)
    # oracle: (2/3)^2/2
    assert gl.powered_integral(affine, 1.0, (1.0 / 3.0, 1.0)) == pytest.approx(2.0 / 9.0, rel=1e-13)


def test_powered_integral_rejects_bad_beta(affine):
    with pytest.raises(ParameterError):
        gl.powered_integral(affine, 0.0)
    with pytest.raises(ParameterError):
        gl.powered_integral(affine, -1.0)


def test_powered_integral_rejects_interval_outside_domain(affine):
    with pytest.raises(DomainError):
        gl.powered_integral(affine, 1.0, (0.5, 1.5))


def test_moment_integral_examples(affine):
    h = gl.ConcaveProfile([[0.0, 1.0], [2.0, 1.0]])
    assert gl.moment_integral(h, 1.0) == pytest.approx(2.0, rel=1e-14)
    assert gl.moment_integral(affine, 1.0) == pytest.approx(1.0 / 6.0, rel=1e-13)
    rising = gl.ConcaveProfile([[0.0, 0.0], [1.0, 1.0]])
    assert gl.moment_integral(rising, 1.0) == pytest.approx(1.0 / 3.0, rel=1e-13)


@pytest.mark.parametrize("beta", [0.5, 1.0, 1.7, 2.0, 3.3])
def test_pl_integrals_match_quadrature_oracle(beta):
    rng = np.random.default_rng(101)
    for prof in random_profiles(7, 5, m=7):
        a, b = prof.domain
        lo = rng.uniform(a, (a + b) / 2)
        hi = rng.uniform((a + b) / 2, b)
        ref, _ = quad(lambda t: prof.value(t) ** beta, lo, hi, limit=200,
                      points=list(prof.ts[(prof.ts > lo) & (prof.ts < hi)]))
        assert gl.powered_integral(prof, beta, (lo, hi)) == pytest.approx(ref, rel=1e-9, abs=1e-12)
        ref_m, _ = quad(lambda t: t * prof.value(t) ** beta, lo, hi, limit=200,
                        points=list(prof.ts[(prof.ts > lo) & (prof.ts < hi)]))
        assert gl.moment_integral(prof, beta, (lo, hi)) == pytest.approx(ref_m, rel=1e-9, abs=1e-12)


def test_powered_integral_additivity(affine):
    spec = gl.DEFAULT_QUADRATURE
    for prof in random_profiles(3, 8, m=9):
        a, b = prof.domain
        mid = 0.456 * a + 0.544 * b
        whole = gl.powered_integral(prof, 1.7, spec=spec)
        parts = gl.powered_integral(prof, 1.7, (a, mid), spec=spec) \
            + gl.powered_integral(prof, 1.7, (mid, b), spec=spec)
        assert abs(whole - parts) <= 2.0 * spec.abs_tol + 1e-12 * whole


def test_closed_form_matches_adaptive_simpson_on_power_profiles():
    h = gl.DecreasingPowerProfile(1.3, 0.2, 1.7, 0.8)
    for beta in (0.5, 1.0, 2.5):
        exact = gl.powered_integral(h, beta)
        numeric = gl.adaptive_simpson(lambda t: float(h.value(t)) ** beta, 0.2, 1.7)
        assert numeric == pytest.approx(exact, rel=1e-9)


def test_ball_section_profile_against_quad_oracle():
    h = gl.BallSectionProfile(1.0, 3, center=0.0)
    ref, _ = quad(lambda t: float(h.value(t)) ** 1.5, -1.0, 0.6)
    assert gl.powered_integral(h, 1.5, (-1.0, 0.6)) == pytest.approx(ref, rel=1e-8)


def test_increasing_power_profile_matches_quad():
    h = gl.IncreasingPowerProfile(2.0, -1.0, 2.0, 0.5)
    ref, _ = quad(lambda t: float(h.value(t)) ** 2.0, -1.0, 2.0)
    assert gl.powered_integral(h, 2.0) == pytest.approx(ref, rel=1e-10)
    ref_m, _ = quad(lambda t: t * float(h.value(t)) ** 2.0, -1.0, 2.0)
    assert gl.moment_integral(h, 2.0) == pytest.approx(ref_m, rel=1e-10)


def test_quadrature_convergence_error_carries_best_estimate():
    spec = gl.QuadratureSpec(abs_tol=1e-13, max_subdivisions=2)
    with pytest.raises(gl.ConvergenceError) as err:
        gl.adaptive_simpson(lambda t: np.sqrt(abs(t)), -1.0, 1.0, spec)
    assert err.value.best_estimate == pytest.approx(4.0 / 3.0, rel=1e-2)


# ---------------------------------------------------------------------------
# centroids and tail ratios
# ---------------------------------------------------------------------------

def test_alpha_centroid_examples(affine):
    h = gl.ConcaveProfile([[0.0, 1.0], [2.0, 1.0]])
    assert gl.alpha_centroid(h, 7.0) == pytest.approx(1.0, rel=1e-14)
    assert gl.alpha_centroid(affine, 1.0) == pytest.approx(1.0 / 3.0, rel=1e-13)
    assert gl.alpha_centroid(affine, 2.0) == pytest.approx(1.0 / 4.0, rel=1e-13)
    rising = gl.ConcaveProfile([[0.0, 0.0], [1.0, 1.0]])
    assert gl.alpha_centroid(rising, 1.0) == pytest.approx(2.0 / 3.0, rel=1e-13)


def test_alpha_centroid_zero_is_exact_midpoint():
    h = gl.ConcaveProfile([[0.25, 0.3], [2.0, 1.0], [3.0, 0.2]])
    assert gl.alpha_centroid(h, 0.0) == (0.25 + 3.0) / 2.0


def test_alpha_centroid_beta_power_of_decreasing_affine():
    # for h = c(delta - t) on [gamma, delta]: g_alpha = delta - (alpha+1)(delta-gamma)/(alpha+2)
    h = gl.DecreasingPowerProfile(2.0, 0.0, 1.0, 1.0)
    for alpha in (0.5, 1.0, 2.0, 5.0):
        expect = 1.0 - (alpha + 1.0) / (alpha + 2.0)
        assert gl.alpha_centroid(h, alpha) == pytest.approx(expect, rel=1e-13)


def test_alpha_centroid_scale_invariance_and_translation_covariance():
    for prof in random_profiles(11, 6, m=8):
        lam = 3.7
        scaled = gl.ConcaveProfile(np.column_stack([prof.ts, lam * prof.hs]))
        shifted = gl.ConcaveProfile(np.column_stack([prof.ts + 2.5, prof.hs]))
        for alpha in (0.5, 1.0, 3.0):
            g = gl.alpha_centroid(prof, alpha)
            assert gl.alpha_centroid(scaled, alpha) == pytest.approx(g, abs=1e-12)
            assert gl.alpha_centroid(shifted, alpha) == pytest.approx(g + 2.5, abs=1e-10)


def test_alpha_centroid_strictly_interior():
    for prof in random_profiles(13, 10, m=6):
        a, b = prof.domain
        for alpha in (0.25, 1.0, 4.0):
            g = gl.alpha_centroid(prof, alpha)
            assert a < g < b


def test_tail_mass_ratio_examples(affine, flat):
    for alpha, beta in ((0.3, 1.0), (2.0, 0.7), (1.0, 1.0)):
        assert gl.tail_mass_ratio(flat, alpha, beta) == pytest.approx(0.5, rel=1e-13)
    assert gl.tail_mass_ratio(affine, 1.0, 1.0) == pytest.approx(4.0 / 9.0, rel=1e-13)
    assert gl.tail_mass_ratio(affine, 1.0, 2.0) == pytest.approx(8.0 / 27.0, rel=1e-13)


def test_tail_mass_ratio_scale_invariance_and_reflection():
    for prof in random_profiles(17, 6, m=8):
        for alpha, beta in ((1.0, 1.0), (0.5, 2.0), (3.0, 1.5)):
            r = gl.tail_mass_ratio(prof, alpha, beta)
            assert 0.0 < r < 1.0
            scaled = gl.ConcaveProfile(np.column_stack([prof.ts, 0.37 * prof.hs]))
            assert gl.tail_mass_ratio(scaled, alpha, beta) == pytest.approx(r, abs=1e-12)
            # reflection swaps the two sides of the cut
            mirrored = gl.reflect(prof)
            assert gl.tail_mass_ratio(mirrored, alpha, beta) == pytest.approx(1.0 - r, abs=1e-10)


def test_tail_masses_vectorized_matches_scalar():
    prof = random_profiles(23, 1, m=9)[0]
    a, b = prof.domain
    cuts = np.linspace(a - 0.1, b + 0.1, 37)
    vec = gl.tail_masses(prof, 1.8, cuts)
    for s, v in zip(cuts, vec):
        lo = min(max(s, a), b)
        assert v == pytest.approx(gl.powered_integral(prof, 1.8, (lo, b)), rel=1e-12, abs=1e-15)


def test_degenerate_profile_rejected():
    with pytest.raises(DegenerateProfileError):
        gl.ConcaveProfile([[0.0, 0.0], [1.0, 0.0]])


# ---------------------------------------------------------------------------
# p-concavity certification
# ---------------------------------------------------------------------------

def test_p_concavity_sampled_square_root_affine():
    ts = np.linspace(0.0, 1.0, 64)
    f = gl.PiecewiseLinear(np.column_stack([ts, (1.0 - ts) ** 2]))
    assert gl.p_concavity_check(f, 0.5).ok


def test_p_concavity_affine_squared_fails_near_midpoint(affine):
    res = gl.p_concavity_check(affine, 2.0)
    assert not res.ok
    assert res.witness is not None
    assert abs(res.witness[1] - 0.5) < 0.3


def test_p_concavity_constant_any_p(flat):
    for p in (0.1, 1.0, 10.0):
        assert gl.p_concavity_check(flat, p).ok


def test_p_concavity_rejects_bad_p(flat):
    with pytest.raises(ParameterError):
        gl.p_concavity_check(flat, 0.0)


def test_p_concavity_on_analytic_profiles():
    cone_section = gl.DecreasingPowerProfile(np.pi, 0.0, 1.0, 2.0)
    assert gl.p_concavity_check(cone_section, 0.5).ok
    assert not gl.p_concavity_check(cone_section, 1.0).ok
    ball3 = gl.BallSectionProfile(1.0, 3)
    assert gl.p_concavity_check(ball3, 0.5).ok


# ---------------------------------------------------------------------------
# superlevel measure concavity
# ---------------------------------------------------------------------------

def test_superlevel_mass_closed_form_flat(flat):
    # W(s) = (1 - s^beta)/beta * |{h >= s}| = (1 - s)/1 for beta = 1, h = 1
    levels = np.linspace(0.0, 1.0, 11)
    w = gl.superlevel_masses(flat, 1.0, levels)
    assert np.allclose(w, 1.0 - levels, atol=1e-14)
    assert gl.superlevel_measure_concavity_check(flat, 1.0).ok


def test_superlevel_mass_closed_form_affine(affine):
    # hypograph is a triangle: W(s) = (1-s)^2/2 for beta = 1
    levels = np.linspace(0.0, 1.0, 9)
    w = gl.superlevel_masses(affine, 1.0, levels)
    assert np.allclose(w, 0.5 * (1.0 - levels) ** 2, atol=1e-14)
    assert gl.superlevel_measure_concavity_check(affine, 1.0).ok


def test_superlevel_mass_matches_brute_force():
    prof = random_profiles(31, 1, m=8)[0]
    grid = np.linspace(*prof.domain, 200_001)
    vals = prof.value(grid)
    dt = grid[1] - grid[0]
    for beta in (0.5, 1.0, 2.0):
        for s in (0.0, 0.21, 0.55, 0.9):
            brute = np.sum(np.maximum(vals ** beta - s ** beta, 0.0)
                           * (vals >= s)) * dt / beta
            w = gl.superlevel_masses(prof, beta, [s])[0]
            assert w == pytest.approx(brute, rel=5e-4, abs=1e-6)


@pytest.mark.parametrize("beta", [1.0, 2.0, 3.0])
def test_superlevel_power_concavity_holds_for_beta_ge_one(beta):
    # oracle: the same grid check at double resolution agrees
    for prof in random_profiles(37, 10, m=9):
        assert gl.superlevel_measure_concavity_check(prof, beta).ok
        assert gl.superlevel_measure_concavity_check(prof, beta, grid_size=1024).ok


def test_superlevel_power_concavity_fails_below_one():
    # the (beta+1)-th root of the superlevel mass is genuinely non-concave for
    # beta < 1: even the extremal decreasing affine profile violates it.
    affine = gl.ConcaveProfile([[0.0, 1.0], [1.0, 0.0]])
    res = gl.superlevel_measure_concavity_check(affine, 0.5)
    assert not res.ok
    assert res.max_violation > 1e-3


# ---------------------------------------------------------------------------
# power wrappers, reflection, serialization
# ---------------------------------------------------------------------------

def test_power_profile_collapse_and_delegation(affine):
    p = gl.power_profile(gl.DecreasingPowerProfile(2.0, 0.0, 1.0, 1.0), 3.0)
    assert isinstance(p, gl.DecreasingPowerProfile)
    assert p.c == 8.0 and p.q == 3.0
    w = gl.power_profile(affine, 2.0)
    assert gl.evaluate(w, 0.25) == pytest.approx(0.5625, abs=0)
    assert gl.powered_integral(w, 1.0) == pytest.approx(1.0 / 3.0, rel=1e-13)
    ref, _ = quad(lambda t: t * (1.0 - t) ** 3.0, 0.0, 1.0)
    assert gl.moment_integral(w, 1.5) == pytest.approx(ref, rel=1e-12)


def test_reflect_all_kinds(affine):
    mirrored = gl.reflect(affine)
    assert mirrored.domain == (-1.0, 0.0)
    assert gl.evaluate(mirrored, -0.25) == pytest.approx(0.75, abs=0)
    dec = gl.reflect(gl.DecreasingPowerProfile(1.0, 0.0, 1.0, 2.0))
    assert isinstance(dec, gl.IncreasingPowerProfile)
    assert gl.evaluate(dec, -0.5) == pytest.approx(0.25, abs=0)
    ball = gl.reflect(gl.BallSectionProfile(1.0, 3, center=0.3))
    assert ball.center == -0.3


def test_json_round_trips(affine):
    profiles = [
        affine,
        gl.ConstantProfile(2.0, -1.0, 4.0),
        gl.DecreasingPowerProfile(np.pi, 0.0, 1.0, 2.0),
        gl.IncreasingPowerProfile(0.5, -2.0, 0.0, 0.7),
        gl.BallSectionProfile(1.5, 4, center=0.2),
    ]
    for prof in profiles:
        back = gl.profile_from_json(gl.profile_to_json(prof))
        assert type(back) is type(prof)
        t = 0.5 * sum(prof.domain)
        assert gl.evaluate(back, t) == pytest.approx(gl.evaluate(prof, t), rel=1e-15)


def test_json_schema_field_names(affine):
    data = gl.profile_to_json(affine)
    assert list(data.keys()) == ["breakpoints"]
    assert data["breakpoints"][0] == [0.0, 1.0]
    data = gl.profile_to_json(gl.DecreasingPowerProfile(1.0, 0.0, 1.0, 2.0))
    assert set(data.keys()) == {"kind", "params"}
    assert data["kind"] == "decreasing-power"


def test_json_errors():
    with pytest.raises(ProfileError):
        gl.profile_from_json({"kind": "spiral", "params": {}})
    with pytest.raises(ProfileError):
        gl.profile_from_json({"nope": 1})
    raw = gl.profile_from_json({"breakpoints": [[0.0, 1.0], [0.5, 0.1], [1.0, 1.0]]})
    assert isinstance(raw, gl.PiecewiseLinear)
    assert not isinstance(raw, gl.ConcaveProfile)
