"""Random concave profiles and extremal search on the tail-mass ratio.

The search probes sharpness of the tail-mass bounds by minimizing

    R(h) = int_{g_alpha(h)}^b h^beta / int_a^b h^beta

over concave piecewise-linear profiles on [0, 1] with max ordinate 1 (both
normalizations leave R invariant). The optimizer is deliberately simple:
seeded multi-restart coordinate descent on the ordinates, with re-sorting of
the slope sequence as the concavity projection. Determinism: a fixed seed
fixes the entire trajectory; restarts and sweep cells use independently
derived generators.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass, field

import numpy as np

from .bounds import functional_bound
from .errors import ParameterError
from .profiles import ConcaveProfile

_MIN_GAP = 1e-3  # minimum abscissa spacing in random profiles


def random_concave(seed, m, domain=(0.0, 1.0)):
    """Draw a random concave profile with m breakpoints, valid by construction.

    Ordinates come from a strictly decreasing random slope sequence (sorted
    normal draws), shifted nonnegative and scaled to max 1; with probability
    1/2 the minimum stays at an endpoint zero, otherwise the profile is
    lifted. The same seed always returns the same profile.
    """
    if m < 3:
        raise ParameterError(f"need at least 3 breakpoints, got {m}")
    a, b = float(domain[0]), float(domain[1])
    if not b > a:
        raise ParameterError("domain must have positive length")
    rng = np.random.default_rng(seed)
    while True:
        ts = np.sort(rng.uniform(a, b, m))
        ts[0], ts[-1] = a, b
        if np.all(np.diff(ts) >= _MIN_GAP * (b - a)):
            break
    slopes = np.sort(rng.normal(0.0, 2.0 / (b - a), m - 1))[::-1]
    slopes -= np.arange(m - 1) * 1e-9  # strict decrease even under ties
    hs = np.concatenate([[0.0], np.cumsum(slopes * np.diff(ts))])
    hs -= hs.min()
    if rng.random() < 0.5:
        hs += rng.uniform(0.05, 0.5) * max(hs.max(), 1e-12)
    hs /= hs.max()
    return ConcaveProfile(np.column_stack([ts, hs]))


# ---------------------------------------------------------------------------
# fast objective on a fixed uniform grid
# ---------------------------------------------------------------------------

def _masses(ts, hs, expo):
    """(total integral of h^expo, total moment of t h^expo), exact, vectorized."""
    dt = np.diff(ts)
    ha, hb = hs[:-1], hs[1:]
    dh = hb - ha
    flat = np.abs(dh) <= 1e-9 * (ha + hb)
    safe = np.where(flat, 1.0, dh)
    p1 = (hb ** (expo + 1.0) - ha ** (expo + 1.0)) / (expo + 1.0)
    p2 = (hb ** (expo + 2.0) - ha ** (expo + 2.0)) / (expo + 2.0)
    mid = 0.5 * (ha + hb)
    mass = np.where(flat, mid ** expo * dt, p1 * dt / safe)
    mom = np.where(flat, mid ** expo * 0.5 * (ts[1:] ** 2 - ts[:-1] ** 2),
                   (ts[:-1] - ha * dt / safe) * p1 * dt / safe + p2 * (dt / safe) ** 2)
    return mass.sum(), mom.sum()


def _tail_from(ts, hs, beta, cut):
    i = int(np.searchsorted(ts, cut, side="right")) - 1
    i = min(max(i, 0), ts.size - 2)
    slope = (hs[i + 1] - hs[i]) / (ts[i + 1] - ts[i])
    hcut = hs[i] + slope * (cut - ts[i])
    seg_ts = np.concatenate([[cut], ts[i + 1:]])
    seg_hs = np.concatenate([[hcut], hs[i + 1:]])
    mass, _ = _masses(seg_ts, seg_hs, beta)
    return mass

def tail_ratio_grid(ts, hs, alpha, beta):
    """Tail-mass ratio of the PL profile (ts, hs) without object overhead."""
    mass_a, mom_a = _masses(ts, hs, alpha)
    cut = mom_a / mass_a
    total, _ = _masses(ts, hs, beta)
    return _tail_from(ts, hs, beta, cut) / total


def _project_concave(ts, hs):
    """Concavity projection: re-sort the slope sequence, renormalize to max 1."""
    slopes = np.sort(np.diff(hs) / np.diff(ts))[::-1]
    out = np.concatenate([[hs[0]], hs[0] + np.cumsum(slopes * np.diff(ts))])
    out -= out.min()
    mx = out.max()
    if mx <= 0.0:
        return None
    out /= mx
    if np.any(out[1:-1] <= 0.0):
        return None
    return out


# ---------------------------------------------------------------------------
# the search itself
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    alpha: float
    beta: float
    seed: int
    m: int = 16
    budget: int = 10_000
    restarts: int = 8
    step_init: float = 0.3
    step_final: float = 1e-4

    def __post_init__(self):
        if self.m < 3:
            raise ParameterError("m must be at least 3")
        if self.budget < 1:
            raise ParameterError("budget must be at least 1")
        if self.restarts < 1:
            raise ParameterError("restarts must be at least 1")
        if self.seed is None:
            raise ParameterError("search requires an explicit seed")


@dataclass(frozen=True)
class SearchResult:
    profile: ConcaveProfile
    ratio: float
    bound: float
    gap: float
    trace: list = field(default_factory=list)
    config: SearchConfig | None = None


def minimize_tail_ratio(config):
    """Seeded multi-restart coordinate descent; gap >= -1e-9 always.

    A gap below -1e-9 would falsify the underlying inequality and raises
    RuntimeError; nothing downstream should ever see it.
    """
    ts = np.linspace(0.0, 1.0, config.m)
    bound = functional_bound(config.alpha, config.beta).value
    decay = (config.step_final / config.step_init) ** (1.0 / max(config.budget, 1))
    best_hs, best_ratio = None, np.inf
    trace = []
    for k in range(config.restarts):
        rng = np.random.default_rng([config.seed, k])
        hs = _project_concave(ts, np.maximum(rng.uniform(0.0, 1.0, config.m), 1e-3))
        if hs is None:
            hs = 1.0 - 0.5 * ts
        cur = tail_ratio_grid(ts, hs, config.alpha, config.beta)
        step = config.step_init
        for it in range(config.budget):
            j = int(rng.integers(0, config.m))
            prop = hs.copy()
            prop[j] = max(prop[j] + rng.choice((-1.0, 1.0)) * step * rng.uniform(0.1, 1.0), 0.0)
            proj = _project_concave(ts, prop)
            step = max(step * decay, config.step_final)
            if proj is None:
                continue
            val = tail_ratio_grid(ts, proj, config.alpha, config.beta)
            if val < cur - 1e-15:
                cur, hs = val, proj
                trace.append((k, it, float(val)))
        if cur < best_ratio:
            best_ratio, best_hs = cur, hs
    gap = best_ratio - bound
    if gap < -1e-9:
        raise RuntimeError(
            f"search found ratio {best_ratio!r} below the sharp bound {bound!r}: "
            "this falsifies the inequality and is a build-stopping failure")
    profile = ConcaveProfile(np.column_stack([ts, best_hs]))
    return SearchResult(profile=profile, ratio=float(best_ratio), bound=float(bound),
                        gap=float(gap), trace=trace, config=config)


# ---------------------------------------------------------------------------
# falsification sweep
# ---------------------------------------------------------------------------

def profile_hash(profile):
    """Stable short hash of a profile's breakpoints (for sweep provenance)."""
    return hashlib.sha256(np.ascontiguousarray(
        profile.breakpoints).tobytes()).hexdigest()[:16]


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    beta: float
    trials: int
    min_slack: float
    argmin_profile_hash: str
    seed: int


@dataclass(frozen=True)
class SweepTable:
    rows: tuple

    COLUMNS = ("alpha", "beta", "trials", "min_slack", "argmin_profile_hash", "seed")

    @property
    def violations(self):
        return sum(1 for r in self.rows if r.min_slack < -1e-9)

    def to_csv(self, stream=None):
        own = stream is None
        if own:
            stream = io.StringIO()
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(self.COLUMNS)
        for r in self.rows:
            writer.writerow([repr(r.alpha), repr(r.beta), r.trials,
                             repr(r.min_slack), r.argmin_profile_hash, r.seed])
        return stream.getvalue() if own else None


def sweep(alpha_grid, beta_grid, trials, seed, m=12):
    """Random-profile falsification sweep over an (alpha, beta) grid.

    Each cell draws its own deterministic batch of profiles (derived from the
    global seed and the cell indices, so cells are order-independent) and
    records the minimum slack ratio - bound and the profile attaining it.
    """
    rows = []
    for i, alpha in enumerate(alpha_grid):
        for j, beta in enumerate(beta_grid):
            bound = functional_bound(alpha, beta).value
            min_slack, argmin = np.inf, ""
            for k in range(trials):
                prof = random_concave([seed, i, j, k], m)
                ratio = tail_ratio_grid(prof.ts, prof.hs, alpha, beta)
                slack = ratio - bound
                if slack < min_slack:
                    min_slack, argmin = slack, profile_hash(prof)
            if trials == 0:
                min_slack, argmin = np.nan, ""
            rows.append(SweepRow(float(alpha), float(beta), int(trials),
                                 float(min_slack), argmin, int(seed)))
    return SweepTable(rows=tuple(rows))
