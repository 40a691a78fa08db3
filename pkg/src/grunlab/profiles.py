"""One-dimensional engine for nonnegative concave profiles.

Everything downstream (sharp-bound verification, body sectioning, extremal
search) reduces to weighted integrals of a nonnegative function h on a compact
interval [a, b]:

    powered mass      I_beta(h; s, e) = int_s^e h(t)^beta dt
    powered moment    M_beta(h; s, e) = int_s^e t h(t)^beta dt
    alpha-centroid    g_alpha(h) = M_alpha(h; a, b) / I_alpha(h; a, b)
    tail-mass ratio   I_beta(h; g_alpha(h), b) / I_beta(h; a, b)

Piecewise-linear and power-law profiles integrate in closed form for any
positive exponent; only the ball-section kind needs adaptive quadrature.
All profiles are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateProfileError,
    DomainError,
    ParameterError,
    ProfileError,
)
from .quadrature import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    adaptive_simpson,
    unit_ball_volume,
)

# Slope-difference tolerance certifying concavity of a piecewise-linear profile.
CONCAVITY_TOL = 1e-9

# Relative ordinate change below which a segment is integrated as constant
# (avoids catastrophic cancellation in the antiderivative form).
_FLAT_RTOL = 1e-9


# ---------------------------------------------------------------------------
# segment antiderivatives (the closed-form core)
# ---------------------------------------------------------------------------

def _segment_power_mass(ha, hb, ta, tb, beta):
    """Vectorized int_ta^tb h(t)^beta dt for h affine with h(ta)=ha, h(tb)=hb.

    For slope m != 0 the antiderivative is h^{beta+1} / ((beta+1) m); written
    with dt = tb - ta to stay finite for near-flat segments.
    """
    ha = np.maximum(ha, 0.0)
    hb = np.maximum(hb, 0.0)
    dt = tb - ta
    dh = hb - ha
    flat = np.abs(dh) <= _FLAT_RTOL * (ha + hb)
    safe_dh = np.where(flat, 1.0, dh)
    mid = 0.5 * (ha + hb)
    sloped = (hb ** (beta + 1.0) - ha ** (beta + 1.0)) * dt / ((beta + 1.0) * safe_dh)
    return np.where(flat, mid ** beta * dt, sloped) * (dt > 0)


def _segment_power_moment(ha, hb, ta, tb, beta):
    """Vectorized int_ta^tb t h(t)^beta dt for affine segments."""
    ha = np.maximum(ha, 0.0)
    hb = np.maximum(hb, 0.0)
    dt = tb - ta
    dh = hb - ha
    flat = np.abs(dh) <= _FLAT_RTOL * (ha + hb)
    safe_dh = np.where(flat, 1.0, dh)
    mid = 0.5 * (ha + hb)
    p1 = (hb ** (beta + 1.0) - ha ** (beta + 1.0)) / (beta + 1.0)
    p2 = (hb ** (beta + 2.0) - ha ** (beta + 2.0)) / (beta + 2.0)
    # t = ta + (h - ha) dt/dh on the segment
    sloped = (ta - ha * dt / safe_dh) * p1 * dt / safe_dh + p2 * (dt / safe_dh) ** 2
    flat_val = mid ** beta * 0.5 * (tb * tb - ta * ta)
    return np.where(flat, flat_val, sloped) * (dt > 0)


def _clip_segments(ts, hs, lo, hi):
    """Clip piecewise-linear segments to [lo, hi]; returns (ha, hb, ta, tb)."""
    t0, t1 = ts[:-1], ts[1:]
    h0, h1 = hs[:-1], hs[1:]
    slope = (h1 - h0) / (t1 - t0)
    ta = np.maximum(t0, lo)
    tb = np.minimum(t1, hi)
    ta = np.minimum(ta, tb)  # empty segments collapse to zero width
    ha = h0 + slope * (ta - t0)
    hb = h0 + slope * (tb - t0)
    return ha, hb, ta, tb


# ---------------------------------------------------------------------------
# profile types
# ---------------------------------------------------------------------------

class PiecewiseLinear:
    """Nonnegative piecewise-linear function given by breakpoints.

    No concavity requirement: this is the raw-profile representation used as
    input to the p-concavity certifier. Use ConcaveProfile for validated
    concave profiles.
    """

    integrates_exactly = True

    def __init__(self, breakpoints):
        pts = np.asarray(breakpoints, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ProfileError("breakpoints must be an (m, 2) array with m >= 2")
        if not np.all(np.isfinite(pts)):
            raise ProfileError("breakpoints must be finite")
        ts, hs = pts[:, 0].copy(), pts[:, 1].copy()
        if np.any(np.diff(ts) <= 0.0):
            raise ProfileError("abscissas must be strictly increasing")
        if np.any(hs < 0.0):
            raise ProfileError("ordinates must be non-negative")
        ts.setflags(write=False)
        hs.setflags(write=False)
        self.ts = ts
        self.hs = hs

    @property
    def domain(self):
        return float(self.ts[0]), float(self.ts[-1])

    @property
    def breakpoints(self):
        return np.column_stack([self.ts, self.hs])

    def value(self, t):
        t = _check_in_domain(t, self.domain)
        return np.interp(t, self.ts, self.hs)

    def max_value(self):
        return float(self.hs.max())

    @property
    def quadrature_breakpoints(self):
        return self.ts

    def powered_integral_exact(self, beta, lo, hi):
        ha, hb, ta, tb = _clip_segments(self.ts, self.hs, lo, hi)
        return float(np.sum(_segment_power_mass(ha, hb, ta, tb, beta)))

    def moment_integral_exact(self, beta, lo, hi):
        ha, hb, ta, tb = _clip_segments(self.ts, self.hs, lo, hi)
        return float(np.sum(_segment_power_moment(ha, hb, ta, tb, beta)))

    def to_json(self):
        return {"breakpoints": [[float(t), float(h)] for t, h in zip(self.ts, self.hs)]}

    def __repr__(self):
        a, b = self.domain
        return f"{type(self).__name__}({len(self.ts)} pts on [{a:g}, {b:g}])"


class ConcaveProfile(PiecewiseLinear):
    """Piecewise-linear profile certified concave with positive interior.

    Invariants: slopes non-increasing within CONCAVITY_TOL, ordinates >= 0
    with strict positivity at interior breakpoints, total mass positive.
    Endpoint ordinates may vanish.
    """

    def __init__(self, breakpoints, concavity_tol=CONCAVITY_TOL):
        super().__init__(breakpoints)
        slopes = np.diff(self.hs) / np.diff(self.ts)
        scale = max(self.hs.max(), 1.0) / max(self.ts[-1] - self.ts[0], 1e-300)
        if np.any(np.diff(slopes) > concavity_tol * max(scale, 1.0)):
            i = int(np.argmax(np.diff(slopes)))
            raise ProfileError(
                f"not concave: slope increases at breakpoint t={self.ts[i + 1]:g}")
        if self.hs.shape[0] > 2 and np.any(self.hs[1:-1] <= 0.0):
            raise ProfileError("interior ordinates must be strictly positive")
        if self.powered_integral_exact(1.0, *self.domain) <= 0.0:
            raise DegenerateProfileError("profile has zero total integral")


class AnalyticProfile:
    """Base for closed-form profile families; subclasses fix the formula."""

    kind = None
    integrates_exactly = True

    @property
    def domain(self):
        raise NotImplementedError

    @property
    def quadrature_breakpoints(self):
        a, b = self.domain
        return np.array([a, b])

    def value(self, t):
        raise NotImplementedError

    def max_value(self):
        raise NotImplementedError

    def powered_integral_exact(self, beta, lo, hi):
        return None

    def moment_integral_exact(self, beta, lo, hi):
        return None

    def to_json(self):
        return {"kind": self.kind, "params": self._params()}

    def __repr__(self):
        return f"{type(self).__name__}({self._params()})"


class ConstantProfile(AnalyticProfile):
    """h(t) = c on [gamma, delta]."""

    kind = "constant"

    def __init__(self, c, gamma, delta):
        if not c > 0.0:
            raise ProfileError("constant level c must be positive")
        if not gamma < delta:
            raise ProfileError("need gamma < delta")
        self.c = float(c)
        self.gamma = float(gamma)
        self.delta = float(delta)

    @property
    def domain(self):
        return self.gamma, self.delta

    def value(self, t):
        t = _check_in_domain(t, self.domain)
        if np.ndim(t) == 0:
            return self.c
        return np.full(np.shape(t), self.c)

    def max_value(self):
        return self.c

    def powered_integral_exact(self, beta, lo, hi):
        return self.c ** beta * max(hi - lo, 0.0)

    def moment_integral_exact(self, beta, lo, hi):
        return self.c ** beta * 0.5 * (hi * hi - lo * lo) if hi > lo else 0.0

    def _params(self):
        return {"c": self.c, "gamma": self.gamma, "delta": self.delta}


class _PowerLawProfile(AnalyticProfile):
    """Shared closed forms for c * (signed distance to an endpoint)^q."""

    def __init__(self, c, gamma, delta, q):
        if not c > 0.0:
            raise ProfileError("scale c must be positive")
        if not q > 0.0:
            raise ProfileError("exponent q must be positive")
        if not gamma < delta:
            raise ProfileError("need gamma < delta")
        self.c = float(c)
        self.gamma = float(gamma)
        self.delta = float(delta)
        self.q = float(q)

    @property
    def domain(self):
        return self.gamma, self.delta

    def max_value(self):
        return self.c * (self.delta - self.gamma) ** self.q

    def _params(self):
        return {"c": self.c, "gamma": self.gamma, "delta": self.delta, "q": self.q}


class DecreasingPowerProfile(_PowerLawProfile):
    """h(t) = c (delta - t)^q on [gamma, delta]; vanishes at the right endpoint."""

    kind = "decreasing-power"

    def value(self, t):
        t = _check_in_domain(t, self.domain)
        return self.c * np.maximum(self.delta - t, 0.0) ** self.q

    def powered_integral_exact(self, beta, lo, hi):
        if hi <= lo:
            return 0.0
        m = self.q * beta
        u0, u1 = self.delta - hi, self.delta - lo
        return self.c ** beta * (u1 ** (m + 1.0) - u0 ** (m + 1.0)) / (m + 1.0)

    def moment_integral_exact(self, beta, lo, hi):
        if hi <= lo:
            return 0.0
        m = self.q * beta
        u0, u1 = self.delta - hi, self.delta - lo
        first = self.delta * (u1 ** (m + 1.0) - u0 ** (m + 1.0)) / (m + 1.0)
        second = (u1 ** (m + 2.0) - u0 ** (m + 2.0)) / (m + 2.0)
        return self.c ** beta * (first - second)


class IncreasingPowerProfile(_PowerLawProfile):
    """h(t) = c (t - gamma)^q on [gamma, delta]; vanishes at the left endpoint."""

    kind = "increasing-power"

    def value(self, t):
        t = _check_in_domain(t, self.domain)
        return self.c * np.maximum(t - self.gamma, 0.0) ** self.q

    def powered_integral_exact(self, beta, lo, hi):
        if hi <= lo:
            return 0.0
        m = self.q * beta
        v0, v1 = lo - self.gamma, hi - self.gamma
        return self.c ** beta * (v1 ** (m + 1.0) - v0 ** (m + 1.0)) / (m + 1.0)

    def moment_integral_exact(self, beta, lo, hi):
        if hi <= lo:
            return 0.0
        m = self.q * beta
        v0, v1 = lo - self.gamma, hi - self.gamma
        first = self.gamma * (v1 ** (m + 1.0) - v0 ** (m + 1.0)) / (m + 1.0)
        second = (v1 ** (m + 2.0) - v0 ** (m + 2.0)) / (m + 2.0)
        return self.c ** beta * (first + second)


class BallSectionProfile(AnalyticProfile):
    """Section-volume profile of a Euclidean ball in R^dim.

    h(t) = kappa_{dim-1} (radius^2 - (t - center)^2)^{(dim-1)/2}; integrated
    by adaptive quadrature (no elementary antiderivative for general dim).
    """

    kind = "ball-section"
    integrates_exactly = False

    def __init__(self, radius, dim, center=0.0):
        if not radius > 0.0:
            raise ProfileError("radius must be positive")
        if dim < 2 or int(dim) != dim:
            raise ProfileError("ambient dimension must be an integer >= 2")
        self.radius = float(radius)
        self.dim = int(dim)
        self.center = float(center)
        self._kappa = unit_ball_volume(self.dim - 1)

    @property
    def domain(self):
        return self.center - self.radius, self.center + self.radius

    def value(self, t):
        t = _check_in_domain(t, self.domain)
        x = np.asarray(t, dtype=float) - self.center
        return self._kappa * np.maximum(self.radius ** 2 - x * x, 0.0) ** ((self.dim - 1) / 2.0)

    def max_value(self):
        return self._kappa * self.radius ** (self.dim - 1)

    def _params(self):
        return {"radius": self.radius, "dim": self.dim, "center": self.center}


class PowerProfile:
    """Lazy pointwise power base(t)^exponent of another profile.

    Integrals of (base^e)^beta reduce to integrals of base^(e*beta), so the
    wrapper stays exact whenever the base is.
    """

    def __init__(self, base, exponent):
        if not exponent > 0.0:
            raise ParameterError("exponent must be positive")
        self.base = base
        self.exponent = float(exponent)
        self.integrates_exactly = getattr(base, "integrates_exactly", False)

    @property
    def domain(self):
        return self.base.domain

    @property
    def quadrature_breakpoints(self):
        return self.base.quadrature_breakpoints

    def value(self, t):
        return np.maximum(self.base.value(t), 0.0) ** self.exponent

    def max_value(self):
        return self.base.max_value() ** self.exponent

    def powered_integral_exact(self, beta, lo, hi):
        if not self.integrates_exactly:
            return None
        return self.base.powered_integral_exact(beta * self.exponent, lo, hi)

    def moment_integral_exact(self, beta, lo, hi):
        if not self.integrates_exactly:
            return None
        return self.base.moment_integral_exact(beta * self.exponent, lo, hi)

    def __repr__(self):
        return f"PowerProfile({self.base!r} ** {self.exponent:g})"


def power_profile(base, exponent):
    """Raise a profile to a positive power, collapsing closed forms eagerly."""
    if exponent == 1.0:
        return base
    if isinstance(base, PowerProfile):
        return power_profile(base.base, base.exponent * exponent)
    if isinstance(base, ConstantProfile):
        return ConstantProfile(base.c ** exponent, base.gamma, base.delta)
    if isinstance(base, DecreasingPowerProfile):
        return DecreasingPowerProfile(base.c ** exponent, base.gamma, base.delta,
                                      base.q * exponent)
    if isinstance(base, IncreasingPowerProfile):
        return IncreasingPowerProfile(base.c ** exponent, base.gamma, base.delta,
                                      base.q * exponent)
    return PowerProfile(base, exponent)


def reflect(h):
    """The profile t -> h(-t), with the matching reversed domain."""
    if isinstance(h, PowerProfile):
        return PowerProfile(reflect(h.base), h.exponent)
    if isinstance(h, ConcaveProfile):
        return ConcaveProfile(np.column_stack([-h.ts[::-1], h.hs[::-1]]))
    if isinstance(h, PiecewiseLinear):
        return PiecewiseLinear(np.column_stack([-h.ts[::-1], h.hs[::-1]]))
    if isinstance(h, ConstantProfile):
        return ConstantProfile(h.c, -h.delta, -h.gamma)
    if isinstance(h, DecreasingPowerProfile):
        return IncreasingPowerProfile(h.c, -h.delta, -h.gamma, h.q)
    if isinstance(h, IncreasingPowerProfile):
        return DecreasingPowerProfile(h.c, -h.delta, -h.gamma, h.q)
    if isinstance(h, BallSectionProfile):
        return BallSectionProfile(h.radius, h.dim, -h.center)
    raise ProfileError(f"cannot reflect profile of type {type(h).__name__}")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

_ANALYTIC_KINDS = {
    "constant": lambda p: ConstantProfile(p["c"], p["gamma"], p["delta"]),
    "increasing-power": lambda p: IncreasingPowerProfile(p["c"], p["gamma"], p["delta"], p["q"]),
    "decreasing-power": lambda p: DecreasingPowerProfile(p["c"], p["gamma"], p["delta"], p["q"]),
    "ball-section": lambda p: BallSectionProfile(p["radius"], p["dim"], p.get("center", 0.0)),
}


def profile_from_json(data):
    """Build a profile from its JSON object form.

    {"breakpoints": [[t, h], ...]} yields a ConcaveProfile when the data
    certifies concave, otherwise a raw PiecewiseLinear. {"kind": ...,
    "params": {...}} yields the matching analytic family.
    """
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise ProfileError("profile JSON must be an object")
    if "breakpoints" in data:
        try:
            return ConcaveProfile(data["breakpoints"])
        except DegenerateProfileError:
            raise
        except ProfileError:
            return PiecewiseLinear(data["breakpoints"])
    if "kind" in data:
        kind = data["kind"]
        if kind not in _ANALYTIC_KINDS:
            raise ProfileError(f"unknown analytic profile kind {kind!r}")
        try:
            return _ANALYTIC_KINDS[kind](dict(data.get("params", {})))
        except KeyError as exc:
            raise ProfileError(f"missing parameter {exc} for kind {kind!r}") from exc
    raise ProfileError("profile JSON needs either 'breakpoints' or 'kind'")


def profile_to_json(profile):
    return profile.to_json()


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _check_in_domain(t, domain):
    a, b = domain
    slack = 1e-12 * max(b - a, 1.0)
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < a - slack) or np.any(t_arr > b + slack):
        raise DomainError(f"point {t!r} outside profile domain [{a:g}, {b:g}]")
    return np.clip(t_arr, a, b)[()] if np.ndim(t) == 0 else np.clip(t_arr, a, b)


def _check_interval(h, interval):
    a, b = h.domain
    if interval is None:
        return a, b
    lo, hi = float(interval[0]), float(interval[1])
    slack = 1e-12 * max(b - a, 1.0)
    if lo < a - slack or hi > b + slack or hi < lo:
        raise DomainError(
            f"interval [{lo:g}, {hi:g}] not contained in domain [{a:g}, {b:g}]")
    return max(lo, a), min(hi, b)


def evaluate(h, t):
    """Evaluate a profile at t; raises DomainError outside its domain."""
    return float(h.value(t)) if np.ndim(t) == 0 else h.value(t)


def powered_integral(h, beta, interval=None, spec=DEFAULT_QUADRATURE):
    """int h(t)^beta dt over the interval (default: full domain)."""
    if not beta > 0.0:
        raise ParameterError(f"beta must be positive, got {beta}")
    lo, hi = _check_interval(h, interval)
    exact = h.powered_integral_exact(beta, lo, hi)
    if exact is not None:
        return max(float(exact), 0.0)
    val = adaptive_simpson(lambda t: float(h.value(t)) ** beta, lo, hi, spec,
                           breakpoints=h.quadrature_breakpoints)
    return max(val, 0.0)


def moment_integral(h, beta, interval=None, spec=DEFAULT_QUADRATURE):
    """int t h(t)^beta dt over the interval (default: full domain)."""
    if not beta > 0.0:
        raise ParameterError(f"beta must be positive, got {beta}")
    lo, hi = _check_interval(h, interval)
    exact = h.moment_integral_exact(beta, lo, hi)
    if exact is not None:
        return float(exact)
    return adaptive_simpson(lambda t: t * float(h.value(t)) ** beta, lo, hi, spec,
                            breakpoints=h.quadrature_breakpoints)


def alpha_centroid(h, alpha, spec=DEFAULT_QUADRATURE):
    """Weighted mean g_alpha(h) = int t h^alpha / int h^alpha.

    alpha = 0 returns the exact midpoint (the continuous limit), avoiding the
    0^0 ambiguity at endpoints where h vanishes.
    """
    if alpha < 0.0:
        raise ParameterError(f"alpha must be non-negative, got {alpha}")
    a, b = h.domain
    if alpha == 0.0:
        return 0.5 * (a + b)
    total = powered_integral(h, alpha, spec=spec)
    if not total > 0.0:
        raise DegenerateProfileError("zero total powered mass; centroid undefined")
    g = moment_integral(h, alpha, spec=spec) / total
    return min(max(g, a), b)


def tail_mass_ratio(h, alpha, beta, spec=DEFAULT_QUADRATURE):
    """Right-tail powered-mass fraction cut at the alpha-centroid.

    Returns int_{g_alpha(h)}^b h^beta / int_a^b h^beta, a number in (0, 1).
    """
    g = alpha_centroid(h, alpha, spec=spec)
    a, b = h.domain
    total = powered_integral(h, beta, spec=spec)
    if not total > 0.0:
        raise DegenerateProfileError("zero total powered mass")
    return powered_integral(h, beta, (g, b), spec=spec) / total


def integration_provenance(h, spec=DEFAULT_QUADRATURE):
    """Describe how integrals of this profile are computed (for reports)."""
    if getattr(h, "integrates_exactly", False):
        return {"kind": "exact"}
    return {"kind": "quadrature", "abs_tol": spec.abs_tol}


# ---------------------------------------------------------------------------
# concavity certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConcavityCheck:
    """Result of a discrete concavity test.

    ok is True when every sampled triple satisfies the chord inequality within
    tolerance; witness holds the worst triple (t0, t1, t2, violation) scaled
    by the profile's maximum.
    """

    ok: bool
    max_violation: float
    witness: tuple | None


def _unwrap_piecewise_linear(f):
    g = f
    while isinstance(g, PowerProfile):
        g = g.base
    return g if isinstance(g, PiecewiseLinear) else None


def _concavity_triples(f, grid_size):
    """Sample triples (t0, t1, t2) for the discrete chord test.

    For piecewise-linear data the triples are the across-knot ones plus one
    midpoint triple per segment: checking consecutive points of the refined
    grid instead would test the interpolant against itself and falsely fail
    exactly p-concave sample sets. Analytic profiles use a uniform grid.
    """
    a, b = f.domain
    pl = _unwrap_piecewise_linear(f)
    if pl is not None and grid_size is None:
        knots = pl.ts
        mids = 0.5 * (knots[:-1] + knots[1:])
        t0 = np.concatenate([knots[:-2], knots[:-1]])
        t1 = np.concatenate([knots[1:-1], mids])
        t2 = np.concatenate([knots[2:], knots[1:]])
        return t0, t1, t2
    knots = np.asarray(getattr(f, "quadrature_breakpoints", [a, b]), dtype=float)
    pts = np.union1d(knots, np.linspace(a, b, int(grid_size) if grid_size else 129))
    return pts[:-2], pts[1:-1], pts[2:]


def p_concavity_check(f, p, tol=CONCAVITY_TOL, grid_size=None):
    """Certify that f^p is concave by discrete chord tests.

    Every sampled triple of the powered values must lie above its chord
    within tol (relative to the powered maximum). Total: never raises on a
    valid profile; a failure returns the violating triple as witness.
    """
    if not p > 0.0:
        raise ParameterError(f"p must be positive, got {p}")
    t0, t1, t2 = _concavity_triples(f, grid_size)
    pts, inverse = np.unique(np.concatenate([t0, t1, t2]), return_inverse=True)
    vals = np.maximum(np.asarray(f.value(pts), dtype=float), 0.0) ** p
    g0, g1, g2 = np.split(vals[inverse], 3)
    scale = max(vals.max(), 1e-300)
    lam = (t1 - t0) / (t2 - t0)
    viol = ((1.0 - lam) * g0 + lam * g2 - g1) / scale
    worst = int(np.argmax(viol))
    max_violation = float(viol[worst])
    if max_violation <= tol:
        return ConcavityCheck(True, max_violation, None)
    witness = (float(t0[worst]), float(t1[worst]), float(t2[worst]), max_violation)
    return ConcavityCheck(False, max_violation, witness)


@dataclass(frozen=True)
class SuperlevelCheck:
    """Concavity verdict for s -> W(s)^(1/(beta+1)) on a uniform level grid."""

    ok: bool
    max_violation: float
    worst_level: float


def superlevel_masses(h, beta, levels):
    """W(s) = (1/beta) int_{h >= s} (h(t)^beta - s^beta) dt for each level s.

    This is the mass, under the weight y^{beta-1} dy dt, of the part of the
    hypograph of h lying above height s. Exact per segment for piecewise-
    linear h; vectorized over levels.
    """
    ts, hs = h.ts, h.hs
    s = np.asarray(levels, dtype=float)[:, None]
    t0, t1 = ts[:-1][None, :], ts[1:][None, :]
    h0, h1 = hs[:-1][None, :], hs[1:][None, :]
    slope = (h1 - h0) / (t1 - t0)
    rising = slope > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        t_cross = t0 + (s - h0) / np.where(slope == 0.0, 1.0, slope)
    lo = np.where(rising & (h0 < s), np.minimum(np.maximum(t_cross, t0), t1), t0)
    hi = np.where(~rising & (h1 < s), np.minimum(np.maximum(t_cross, t0), t1), t1)
    flat_out = (slope == 0.0) & (h0 < s)
    hi = np.where(flat_out, lo, hi)
    hi = np.maximum(hi, lo)
    ha = np.maximum(h0 + slope * (lo - t0), s)
    hb = np.maximum(h0 + slope * (hi - t0), s)
    mass = _segment_power_mass(ha, hb, lo, hi, beta) - s ** beta * (hi - lo)
    return np.maximum(mass.sum(axis=1), 0.0) / beta


def superlevel_measure_concavity_check(h, beta, grid_size=512, tol=1e-7):
    """Test concavity of W^(1/(beta+1)) on a uniform grid over [0, max h].

    W(s) is the superlevel mass of superlevel_masses; the verdict compares
    centered second differences against tol (positive difference = violation).
    """
    if not beta > 0.0:
        raise ParameterError(f"beta must be positive, got {beta}")
    if grid_size < 3:
        raise ParameterError("grid_size must be at least 3")
    levels = np.linspace(0.0, h.max_value(), int(grid_size))
    u = superlevel_masses(h, beta, levels) ** (1.0 / (beta + 1.0))
    d2 = u[2:] - 2.0 * u[1:-1] + u[:-2]
    worst = int(np.argmax(d2))
    return SuperlevelCheck(bool(d2[worst] <= tol), float(d2[worst]),
                           float(levels[worst + 1]))


def tail_masses(h, beta, cuts, spec=DEFAULT_QUADRATURE):
    """int_{max(s, a)}^{b} h^beta dt for an array of cut positions s.

    Cuts at or beyond b give 0; vectorized for piecewise-linear profiles.
    """
    a, b = h.domain
    s = np.asarray(cuts, dtype=float)
    if isinstance(h, PiecewiseLinear):
        lo = np.clip(s, a, b)[:, None]
        t0, t1 = h.ts[:-1][None, :], h.ts[1:][None, :]
        h0, h1 = h.hs[:-1][None, :], h.hs[1:][None, :]
        slope = (h1 - h0) / (t1 - t0)
        ta = np.clip(lo, t0, t1)
        ha = h0 + slope * (ta - t0)
        return _segment_power_mass(ha, h1, ta, t1, beta).sum(axis=1)
    return np.array([powered_integral(h, beta, (min(max(si, a), b), b), spec=spec)
                     for si in s])
