"""Convex bodies, their sectional profiles, and geometric verifiers.

Every operation reduces a body K and unit direction u to the one-dimensional
section profile f(t) = vol_{n-1}(K intersect {<x, u> = t}) and then reuses the
profile engine: r-powered centroid cuts, halfspace mass fractions, and the
sharp-constant verdicts. Exact sectioning covers balls in any dimension,
polytopes up to R^3, simplices along a facet-normal axis in any dimension,
axis-aligned boxes, and bodies of revolution along their axis; everything
else goes through seeded Monte Carlo with declared uncertainty.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .bounds import classic_bounds, grunbaum_r_bound
from .errors import (
    DegenerateBodyError,
    DomainError,
    GrunlabError,
    ParameterError,
    PreconditionError,
)
from .profiles import (
    BallSectionProfile,
    ConcaveProfile,
    ConstantProfile,
    DecreasingPowerProfile,
    DEFAULT_QUADRATURE,
    IncreasingPowerProfile,
    evaluate,
    integration_provenance,
    moment_integral,
    p_concavity_check,
    power_profile,
    powered_integral,
    profile_from_json,
    reflect,
)
from .quadrature import unit_ball_volume
from .reports import make_report

_GEOM_TOL = 1e-12
_Z99_ONE_SIDED = 2.3263478740408408  # 99% one-sided normal quantile


def _unit(u, dim=None):
    u = np.asarray(u, dtype=float)
    norm = float(np.linalg.norm(u))
    if norm <= 0.0:
        raise ParameterError("direction must be a nonzero vector")
    if dim is not None and u.shape != (dim,):
        raise ParameterError(f"direction must have dimension {dim}")
    return u / norm


# ---------------------------------------------------------------------------
# body variants
# ---------------------------------------------------------------------------

class Ball:
    """Euclidean ball with positive radius."""

    variant = "ball"

    def __init__(self, center, radius):
        self.center = np.asarray(center, dtype=float)
        self.center.setflags(write=False)
        self.radius = float(radius)
        if self.center.ndim != 1 or self.center.size < 1:
            raise DegenerateBodyError("center must be a vector")
        if not self.radius > 0.0:
            raise DegenerateBodyError("radius must be positive")

    @property
    def dim(self):
        return self.center.size

    def support_interval(self, u):
        c = float(self.center @ _unit(u, self.dim))
        return c - self.radius, c + self.radius

    def contains(self, pts):
        d = pts - self.center
        return np.einsum("ij,ij->i", d, d) <= self.radius ** 2

    def bounding_box(self):
        return self.center - self.radius, self.center + self.radius

    def volume(self):
        return unit_ball_volume(self.dim) * self.radius ** self.dim

    def centroid(self):
        return self.center.copy()

    def to_json(self):
        return {"variant": "ball", "center": list(self.center), "radius": self.radius}


class Box:
    """Axis-aligned box with positive edge lengths."""

    variant = "box"

    def __init__(self, min_corner, max_corner):
        self.lo = np.asarray(min_corner, dtype=float)
        self.hi = np.asarray(max_corner, dtype=float)
        if self.lo.shape != self.hi.shape or self.lo.ndim != 1:
            raise DegenerateBodyError("corners must be vectors of equal dimension")
        if not np.all(self.hi > self.lo):
            raise DegenerateBodyError("box must have positive edge lengths")
        self.lo.setflags(write=False)
        self.hi.setflags(write=False)

    @property
    def dim(self):
        return self.lo.size

    def support_interval(self, u):
        u = _unit(u, self.dim)
        a = float(np.sum(np.where(u >= 0.0, u * self.lo, u * self.hi)))
        b = float(np.sum(np.where(u >= 0.0, u * self.hi, u * self.lo)))
        return a, b

    def contains(self, pts):
        return np.all((pts >= self.lo) & (pts <= self.hi), axis=1)

    def bounding_box(self):
        return self.lo.copy(), self.hi.copy()

    def volume(self):
        return float(np.prod(self.hi - self.lo))

    def centroid(self):
        return 0.5 * (self.lo + self.hi)

    def vertices(self):
        dim = self.dim
        corners = np.array([[self.lo[i] if (k >> i) & 1 == 0 else self.hi[i]
                             for i in range(dim)] for k in range(1 << dim)])
        return corners

    def to_json(self):
        return {"variant": "box", "min_corner": list(self.lo), "max_corner": list(self.hi)}


class Simplex:
    """Simplex given by its n+1 affinely independent vertices in R^n."""

    variant = "simplex"

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1] + 1:
            raise DegenerateBodyError("simplex needs n+1 vertices in R^n")
        self._edge_matrix = (v[1:] - v[0]).T
        det = float(np.linalg.det(self._edge_matrix))
        if abs(det) <= _GEOM_TOL * max(1.0, np.abs(v).max()) ** v.shape[1]:
            raise DegenerateBodyError("simplex vertices are affinely dependent")
        self._abs_det = abs(det)
        self._inv_edges = np.linalg.inv(self._edge_matrix)
        v.setflags(write=False)
        self.verts = v

    @property
    def dim(self):
        return self.verts.shape[1]

    def support_interval(self, u):
        dots = self.verts @ _unit(u, self.dim)
        return float(dots.min()), float(dots.max())

    def contains(self, pts):
        lam = (pts - self.verts[0]) @ self._inv_edges.T
        eps = 1e-12
        return (np.all(lam >= -eps, axis=1)) & (lam.sum(axis=1) <= 1.0 + eps)

    def bounding_box(self):
        return self.verts.min(axis=0), self.verts.max(axis=0)

    def volume(self):
        return self._abs_det / math.factorial(self.dim)

    def centroid(self):
        return self.verts.mean(axis=0)

    def to_json(self):
        return {"variant": "simplex", "vertices": [list(v) for v in self.verts]}


class Polytope2D:
    """Convex polygon with counter-clockwise vertices."""

    variant = "polytope2d"

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise DegenerateBodyError("polygon needs at least 3 planar vertices")
        edges = np.roll(v, -1, axis=0) - v
        cross = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] \
            - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        scale = max(float(np.abs(v).max()), 1.0) ** 2
        if np.any(cross < -1e-9 * scale):
            raise DegenerateBodyError("vertices must be convex in counter-clockwise order")
        if self._signed_area(v) <= 0.0:
            raise DegenerateBodyError("polygon must have positive area (ccw order)")
        v.setflags(write=False)
        self.verts = v

    @staticmethod
    def _signed_area(v):
        x, y = v[:, 0], v[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    @property
    def dim(self):
        return 2

    def support_interval(self, u):
        dots = self.verts @ _unit(u, 2)
        return float(dots.min()), float(dots.max())

    def contains(self, pts):
        inside = np.ones(pts.shape[0], dtype=bool)
        scale = max(float(np.abs(self.verts).max()), 1.0)
        for p, q in zip(self.verts, np.roll(self.verts, -1, axis=0)):
            e = q - p
            cross = e[0] * (pts[:, 1] - p[1]) - e[1] * (pts[:, 0] - p[0])
            inside &= cross >= -1e-12 * scale * scale
        return inside

    def bounding_box(self):
        return self.verts.min(axis=0), self.verts.max(axis=0)

    def volume(self):
        return self._signed_area(self.verts)

    def centroid(self):
        v = self.verts
        w = np.roll(v, -1, axis=0)
        cross = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
        area = 0.5 * cross.sum()
        cx = np.sum((v[:, 0] + w[:, 0]) * cross) / (6.0 * area)
        cy = np.sum((v[:, 1] + w[:, 1]) * cross) / (6.0 * area)
        return np.array([cx, cy])

    def chord_length(self, u, t):
        """Length of the intersection with the line <x, u> = t."""
        u = _unit(u, 2)
        perp = np.array([-u[1], u[0]])
        dots = self.verts @ u - t
        spans = []
        scale = max(float(np.abs(dots).max()), 1e-300)
        for i in range(len(self.verts)):
            p, q = self.verts[i], self.verts[(i + 1) % len(self.verts)]
            dp, dq = dots[i], dots[(i + 1) % len(self.verts)]
            if abs(dp) <= 1e-14 * scale:
                spans.append(float(p @ perp))
            if (dp < 0 < dq) or (dq < 0 < dp):
                lam = dp / (dp - dq)
                spans.append(float((p + lam * (q - p)) @ perp))
        if len(spans) < 2:
            return 0.0
        return max(spans) - min(spans)

    def to_json(self):
        return {"variant": "polytope2d", "vertices": [list(v) for v in self.verts]}


class Polytope3D:
    """Convex 3-polytope from a vertex list and face incidence loops."""

    variant = "polytope3d"

    def __init__(self, vertices, faces):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3 or v.shape[0] < 4:
            raise DegenerateBodyError("polytope needs at least 4 vertices in R^3")
        self.faces = [tuple(int(i) for i in f) for f in faces]
        if any(len(f) < 3 for f in self.faces):
            raise DegenerateBodyError("every face needs at least 3 vertices")
        v.setflags(write=False)
        self.verts = v
        self._interior = v.mean(axis=0)
        normals, offsets = [], []
        scale = max(float(np.abs(v).max()), 1.0)
        for f in self.faces:
            pts = v[list(f)]
            n = self._newell_normal(pts)
            if np.linalg.norm(n) <= _GEOM_TOL * scale * scale:
                raise DegenerateBodyError("degenerate face")
            n = n / np.linalg.norm(n)
            off = float(n @ pts[0])
            if n @ self._interior > off:
                n, off = -n, -off
            if np.any(v @ n > off + 1e-9 * scale):
                raise DegenerateBodyError("face plane does not support the polytope")
            normals.append(n)
            offsets.append(off)
        self._normals = np.array(normals)
        self._offsets = np.array(offsets)
        edges = set()
        for f in self.faces:
            for i in range(len(f)):
                a, b = f[i], f[(i + 1) % len(f)]
                edges.add((min(a, b), max(a, b)))
        self._edges = sorted(edges)

    @staticmethod
    def _newell_normal(pts):
        n = np.zeros(3)
        for p, q in zip(pts, np.roll(pts, -1, axis=0)):
            n += np.cross(p, q)
        return n

    @property
    def dim(self):
        return 3

    def support_interval(self, u):
        dots = self.verts @ _unit(u, 3)
        return float(dots.min()), float(dots.max())

    def contains(self, pts):
        scale = max(float(np.abs(self.verts).max()), 1.0)
        return np.all(pts @ self._normals.T <= self._offsets + 1e-12 * scale, axis=1)

    def bounding_box(self):
        return self.verts.min(axis=0), self.verts.max(axis=0)

    def _tetra_fan(self):
        p0 = self._interior
        for f in self.faces:
            pts = self.verts[list(f)]
            for i in range(1, len(f) - 1):
                yield p0, pts[0], pts[i], pts[i + 1]

    def volume(self):
        total = 0.0
        for p0, a, b, c in self._tetra_fan():
            total += abs(np.linalg.det(np.stack([a - p0, b - p0, c - p0]))) / 6.0
        return total

    def centroid(self):
        total = 0.0
        acc = np.zeros(3)
        for p0, a, b, c in self._tetra_fan():
            vol = abs(np.linalg.det(np.stack([a - p0, b - p0, c - p0]))) / 6.0
            acc += vol * (p0 + a + b + c) / 4.0
            total += vol
        if total <= 0.0:
            raise DegenerateBodyError("polytope has zero volume")
        return acc / total

    def section_area(self, u, t):
        """Area of the cross-section polygon at <x, u> = t."""
        u = _unit(u, 3)
        dots = self.verts @ u - t
        scale = max(float(np.abs(self.verts).max()), 1.0)
        eps = 1e-12 * scale
        pts = [self.verts[i] for i in range(len(self.verts)) if abs(dots[i]) <= eps]
        for i, j in self._edges:
            di, dj = dots[i], dots[j]
            if (di < -eps and dj > eps) or (dj < -eps and di > eps):
                lam = di / (di - dj)
                pts.append(self.verts[i] + lam * (self.verts[j] - self.verts[i]))
        if len(pts) < 3:
            return 0.0
        basis = _plane_basis(u)
        planar = np.array(pts) @ basis.T
        hull = _convex_hull_2d(planar)
        if hull.shape[0] < 3:
            return 0.0
        x, y = hull[:, 0], hull[:, 1]
        return 0.5 * abs(float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)))

    def to_json(self):
        return {"variant": "polytope3d",
                "vertices": [list(v) for v in self.verts],
                "faces": [list(f) for f in self.faces]}


class Revolution:
    """Body of revolution around the first coordinate axis in R^dim.

    The stored profile IS the sectional volume function: the radius is
    (profile / kappa_{dim-1})^(1/(dim-1)), so sections orthogonal to the axis
    reproduce the profile exactly (section_scale == 1). Convexity requires
    profile^(1/(dim-1)) concave, certified at construction.
    """

    variant = "revolution"
    section_scale = 1.0

    def __init__(self, profile, dim):
        if int(dim) != dim or dim < 2:
            raise ParameterError("ambient dimension must be an integer >= 2")
        self.dim = int(dim)
        self.profile = profile
        self._kappa = unit_ball_volume(self.dim - 1)
        check = p_concavity_check(profile, 1.0 / (self.dim - 1))
        if not check.ok:
            raise PreconditionError(
                f"profile^(1/{self.dim - 1}) is not concave "
                f"(violation {check.max_violation:.3e}); body would not be convex",
                witness=check.witness)

    @property
    def axis(self):
        e1 = np.zeros(self.dim)
        e1[0] = 1.0
        return e1

    def radius(self, t):
        return (np.maximum(self.profile.value(t), 0.0) / self._kappa) ** (1.0 / (self.dim - 1))

    def max_radius(self):
        return (self.profile.max_value() / self._kappa) ** (1.0 / (self.dim - 1))

    def _axis_sign(self, u):
        u = _unit(u, self.dim)
        if abs(u[0] - 1.0) <= 1e-12 and np.all(np.abs(u[1:]) <= 1e-12):
            return 1
        if abs(u[0] + 1.0) <= 1e-12 and np.all(np.abs(u[1:]) <= 1e-12):
            return -1
        raise GrunlabError("revolution bodies support sectioning only along their axis")

    def support_interval(self, u):
        a, b = self.profile.domain
        return (a, b) if self._axis_sign(u) == 1 else (-b, -a)

    def contains(self, pts):
        a, b = self.profile.domain
        t = pts[:, 0]
        f = _masked_profile(self.profile, t, a, b)
        perp = np.linalg.norm(pts[:, 1:], axis=1)
        return self._kappa * perp ** (self.dim - 1) <= f

    def bounding_box(self):
        a, b = self.profile.domain
        rmax = self.max_radius()
        lo = np.concatenate([[a], -rmax * np.ones(self.dim - 1)])
        hi = np.concatenate([[b], rmax * np.ones(self.dim - 1)])
        return lo, hi

    def volume(self):
        return powered_integral(self.profile, 1.0)

    def centroid(self):
        total = powered_integral(self.profile, 1.0)
        first = moment_integral(self.profile, 1.0) / total
        out = np.zeros(self.dim)
        out[0] = first
        return out

    def to_json(self):
        return {"variant": "revolution", "dim": self.dim,
                "profile": self.profile.to_json()}


def _masked_profile(profile, t, a, b):
    vals = np.zeros_like(t)
    ok = (t >= a) & (t <= b)
    if np.any(ok):
        vals[ok] = np.maximum(np.asarray(profile.value(np.clip(t[ok], a, b)),
                                         dtype=float), 0.0)
    return np.where(ok, vals, -1.0)


def _plane_basis(u):
    """Two orthonormal vectors spanning the plane orthogonal to u."""
    pivot = np.zeros(3)
    pivot[int(np.argmin(np.abs(u)))] = 1.0
    e = np.cross(u, pivot)
    e /= np.linalg.norm(e)
    f = np.cross(u, e)
    return np.stack([e, f])


def _convex_hull_2d(pts):
    """Andrew monotone chain; tolerant of duplicates and collinear points."""
    pts = np.unique(np.round(pts / max(np.abs(pts).max(), 1e-300) * 1e13), axis=0) \
        * max(np.abs(pts).max(), 1e-300) / 1e13
    if pts.shape[0] <= 2:
        return pts
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]

    def half(points):
        chain = []
        for p in points:
            while len(chain) >= 2:
                o, a = chain[-2], chain[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= 0:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def body_from_json(data):
    """Build a convex body from its JSON object form (extra keys ignored)."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "variant" not in data:
        raise DegenerateBodyError("body JSON must be an object with a 'variant'")
    variant = data["variant"]
    try:
        if variant == "ball":
            return Ball(data["center"], data["radius"])
        if variant == "box":
            return Box(data["min_corner"], data["max_corner"])
        if variant == "simplex":
            return Simplex(data["vertices"])
        if variant == "polytope2d":
            return Polytope2D(data["vertices"])
        if variant == "polytope3d":
            return Polytope3D(data["vertices"], data["faces"])
        if variant == "revolution":
            return Revolution(profile_from_json(data["profile"]), data["dim"])
    except KeyError as exc:
        raise DegenerateBodyError(f"missing field {exc} for variant {variant!r}") from exc
    raise DegenerateBodyError(f"unknown body variant {variant!r}")


def body_to_json(body):
    return body.to_json()


# ---------------------------------------------------------------------------
# exact sectional profiles
# ---------------------------------------------------------------------------

def support_interval(body, u):
    """Exact support [a, b] of <x, u> over the body."""
    return body.support_interval(u)


def _simplex_cone_profile(body, u):
    """Closed-form profile when u is normal to a facet (cone-like position)."""
    u = _unit(u, body.dim)
    dots = body.verts @ u
    a, b = float(dots.min()), float(dots.max())
    spread = b - a
    near_a = np.abs(dots - a) <= 1e-9 * spread
    near_b = np.abs(dots - b) <= 1e-9 * spread
    n = body.dim
    c = n * body.volume() / spread ** n
    if near_a.sum() == n and near_b.sum() == 1:
        return DecreasingPowerProfile(c, a, b, n - 1)
    if near_a.sum() == 1 and near_b.sum() == n:
        return IncreasingPowerProfile(c, a, b, n - 1)
    return None


def _polygon_profile(verts, u):
    u = _unit(u, 2)
    poly = Polytope2D(verts) if not isinstance(verts, Polytope2D) else verts
    dots = np.sort(poly.verts @ u)
    a, b = float(dots[0]), float(dots[-1])
    levels = [a]
    for d in dots[1:]:
        if d - levels[-1] > 1e-12 * (b - a):
            levels.append(float(d))
    levels[-1] = b
    chords = [poly.chord_length(u, t) for t in levels]
    return ConcaveProfile(np.column_stack([levels, chords]))


class PlaneSectionProfile:
    """Exact cross-section area profile of a 3-polytope along a direction.

    Piecewise quadratic between vertex levels: evaluation is exact geometry,
    powered integrals go through adaptive quadrature split at the levels.
    """

    integrates_exactly = False

    def __init__(self, body, u):
        self.body = body
        self.u = _unit(u, 3)
        dots = body.verts @ self.u
        self._a, self._b = float(dots.min()), float(dots.max())
        self._levels = np.unique(dots)

    @property
    def domain(self):
        return self._a, self._b

    @property
    def quadrature_breakpoints(self):
        return self._levels

    def value(self, t):
        if np.ndim(t) == 0:
            tt = float(np.clip(t, self._a, self._b))
            if t < self._a - 1e-12 or t > self._b + 1e-12:
                raise DomainError(f"t={t} outside support [{self._a}, {self._b}]")
            return self.body.section_area(self.u, tt)
        return np.array([self.value(float(ti)) for ti in np.asarray(t, dtype=float)])

    def max_value(self):
        # area^(1/2) is concave, so the area is unimodal: golden-section search
        return _unimodal_max(lambda t: self.body.section_area(self.u, t),
                             self._a, self._b)

    def powered_integral_exact(self, beta, lo, hi):
        return None

    def moment_integral_exact(self, beta, lo, hi):
        return None


def _unimodal_max(f, a, b, iters=120):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
    mid = 0.5 * (a + b)
    return max(f(mid), f1, f2)


def _box_polytope3d(box):
    lo, hi = box.lo, box.hi
    v = box.vertices()
    faces = [(0, 1, 3, 2), (4, 6, 7, 5), (0, 4, 5, 1), (2, 3, 7, 6),
             (0, 2, 6, 4), (1, 5, 7, 3)]
    return Polytope3D(v, faces)


def exact_section_profile(body, u):
    """The exact 1-D section profile along u, or None when unsupported."""
    if isinstance(body, Ball):
        return BallSectionProfile(body.radius, body.dim,
                                  center=float(body.center @ _unit(u, body.dim)))
    if isinstance(body, Revolution):
        sign = body._axis_sign(u)
        return body.profile if sign == 1 else reflect(body.profile)
    if isinstance(body, Box):
        u_hat = _unit(u, body.dim)
        axis = np.abs(np.abs(u_hat) - 1.0) <= 1e-12
        if axis.sum() == 1 and np.all(np.abs(u_hat[~axis]) <= 1e-12):
            i = int(np.argmax(axis))
            others = float(np.prod(np.delete(body.hi - body.lo, i)))
            a, b = body.support_interval(u_hat)
            return ConstantProfile(others, a, b)
        if body.dim == 2:
            return _polygon_profile(Polytope2D(_rect_ccw(body)), u_hat)
        if body.dim == 3:
            return PlaneSectionProfile(_box_polytope3d(body), u_hat)
        return None
    if isinstance(body, Simplex):
        cone = _simplex_cone_profile(body, u)
        if cone is not None:
            return cone
        if body.dim == 2:
            return _polygon_profile(Polytope2D(_ccw_order(body.verts)), u)
        if body.dim == 3:
            faces = [(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)]
            return PlaneSectionProfile(Polytope3D(body.verts, faces), u)
        return None
    if isinstance(body, Polytope2D):
        return _polygon_profile(body, u)
    if isinstance(body, Polytope3D):
        return PlaneSectionProfile(body, u)
    raise ParameterError(f"unknown body type {type(body).__name__}")


def _rect_ccw(box):
    (x0, y0), (x1, y1) = box.lo, box.hi
    return np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]])


def _ccw_order(verts):
    c = verts.mean(axis=0)
    ang = np.arctan2(verts[:, 1] - c[1], verts[:, 0] - c[0])
    return verts[np.argsort(ang)]


def section_volume(body, u, t, mc=None):
    """vol_{n-1} of the cross-section at <x, u> = t (exact when supported)."""
    profile = exact_section_profile(body, u)
    if profile is None:
        if mc is None:
            raise GrunlabError(
                "exact sectioning unsupported for this body/direction; "
                "pass an McSpec for a slab estimate")
        profile = mc_section_profile(body, u, mc).profile
    return float(evaluate(profile, t))


# ---------------------------------------------------------------------------
# Monte Carlo engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class McSpec:
    """Sampling plan: mandatory seed, total samples, and profile bin count."""

    seed: int
    samples: int = 1_000_000
    bins: int = 256

    def __post_init__(self):
        if self.seed is None:
            raise ParameterError("Monte Carlo runs require an explicit seed")
        if self.samples < 10_000:
            raise ParameterError("sample_count must be at least 10^4")
        if self.bins < 16:
            raise ParameterError("bin_count must be at least 16")

    def meta(self):
        return {"seed": self.seed, "samples": self.samples, "bins": self.bins}


# Fixed substream granularity: chunk i always draws the same points for a given
# seed, so totals do not depend on how chunks are distributed across workers.
_MC_CHUNK = 1 << 16


def mc_chunks(body, mc):
    """Yield (points inside the body, chunk sample count) per substream.

    Substreams are counter-derived from the seed (one Philox jump per fixed-
    size chunk); accumulation over them is order-independent.
    """
    lo, hi = body.bounding_box()
    n_chunks = (mc.samples + _MC_CHUNK - 1) // _MC_CHUNK
    remaining = mc.samples
    base = np.random.Philox(key=mc.seed)
    for i in range(n_chunks):
        m = min(_MC_CHUNK, remaining)
        remaining -= m
        rng = np.random.Generator(base.jumped(i))
        pts = lo + rng.random((m, lo.size)) * (hi - lo)
        yield pts[body.contains(pts)], m


class HistogramProfile:
    """Piecewise-constant binned profile (the Monte Carlo sample grid)."""

    integrates_exactly = True

    def __init__(self, edges, values):
        self.edges = np.asarray(edges, dtype=float)
        self.values = np.maximum(np.asarray(values, dtype=float), 0.0)
        self.edges.setflags(write=False)
        self.values.setflags(write=False)

    @property
    def domain(self):
        return float(self.edges[0]), float(self.edges[-1])

    @property
    def quadrature_breakpoints(self):
        return self.edges

    @property
    def centers(self):
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    def value(self, t):
        a, b = self.domain
        t_arr = np.clip(np.asarray(t, dtype=float), a, b)
        idx = np.clip(np.searchsorted(self.edges, t_arr, side="right") - 1,
                      0, self.values.size - 1)
        out = self.values[idx]
        return float(out) if np.ndim(t) == 0 else out

    def max_value(self):
        return float(self.values.max())

    def powered_integral_exact(self, beta, lo, hi):
        width = np.minimum(self.edges[1:], hi) - np.maximum(self.edges[:-1], lo)
        return float(np.sum(self.values ** beta * np.maximum(width, 0.0)))

    def moment_integral_exact(self, beta, lo, hi):
        a = np.maximum(self.edges[:-1], lo)
        b = np.minimum(self.edges[1:], hi)
        good = b > a
        return float(np.sum(self.values[good] ** beta * 0.5 * (b[good] ** 2 - a[good] ** 2)))


class SectionProfile:
    """A body's 1-D sectional profile with provenance and (for MC) error bars."""

    def __init__(self, direction, profile, kind, sigma=None, meta=None):
        self.direction = np.asarray(direction, dtype=float)
        self.profile = profile
        self.kind = kind
        self.sigma = sigma
        self.meta = dict(meta or {})

    @property
    def support(self):
        return self.profile.domain

    def value(self, t):
        return evaluate(self.profile, t)


def section_profile(body, u, mc=None):
    """Sectional profile along u.

    An explicit McSpec forces the sampled route; otherwise the exact profile
    is used and its absence is an error.
    """
    if mc is not None:
        return mc_section_profile(body, u, mc)
    exact = exact_section_profile(body, u)
    if exact is None:
        raise GrunlabError("no exact section profile; pass an McSpec")
    return SectionProfile(_unit(u), exact, "exact")


def mc_section_profile(body, u, mc):
    """Binned rejection-sampling estimate of the section profile with sigma."""
    u = _unit(u, body.dim)
    a, b = body.support_interval(u)
    lo, hi = body.bounding_box()
    box_vol = float(np.prod(hi - lo))
    edges = np.linspace(a, b, mc.bins + 1)
    width = edges[1] - edges[0]
    counts = np.zeros(mc.bins)
    total = 0
    for pts, m in mc_chunks(body, mc):
        total += m
        if pts.shape[0]:
            idx = np.clip(((pts @ u - a) / width).astype(int), 0, mc.bins - 1)
            counts += np.bincount(idx, minlength=mc.bins)
    p = counts / total
    values = box_vol * p / width
    sigma = box_vol * np.sqrt(np.maximum(p * (1.0 - p), 0.0) / total) / width
    return SectionProfile(u, HistogramProfile(edges, values), "mc",
                          sigma=sigma, meta=mc.meta())


@dataclass(frozen=True)
class McEstimate:
    value: float
    sigma: float
    meta: dict


def mc_halfspace_fraction(body, u, c, mc):
    """Direct-count estimate of vol(K ∩ {<x,u> <= c}) / vol(K)."""
    u = _unit(u, body.dim)
    a, b = body.support_interval(u)
    if not (a - 1e-12 <= c <= b + 1e-12):
        raise DomainError(f"cut {c} outside support [{a}, {b}]")
    inside = 0
    below = 0
    for pts, _ in mc_chunks(body, mc):
        inside += pts.shape[0]
        if pts.shape[0]:
            below += int(np.count_nonzero(pts @ u <= c))
    if inside == 0:
        raise DegenerateBodyError("no Monte Carlo samples landed inside the body")
    p = below / inside
    sigma = math.sqrt(max(p * (1.0 - p), 0.0) / inside)
    return McEstimate(value=p, sigma=sigma, meta=mc.meta())


# ---------------------------------------------------------------------------
# powered centroids and halfspace fractions
# ---------------------------------------------------------------------------

def r_centroid_point(body, u, r, spec=DEFAULT_QUADRATURE, mc=None):
    """Coordinate along u of the r-powered centroid; r = 0 gives the midpoint."""
    if r < 0.0:
        raise ParameterError(f"r must be non-negative, got {r}")
    a, b = body.support_interval(u)
    if r == 0.0:
        return 0.5 * (a + b)
    prof = section_profile(body, u, mc=mc).profile
    total = powered_integral(prof, r, spec=spec)
    lam = moment_integral(prof, r, spec=spec) / total
    return float(min(max(lam, a), b))


def halfspace_fraction(body, u, c, spec=DEFAULT_QUADRATURE, mc=None):
    """vol(K ∩ {<x,u> <= c}) / vol(K) via the 1-D profile (or MC counting)."""
    a, b = body.support_interval(u)
    if not (a - 1e-12 * max(b - a, 1.0) <= c <= b + 1e-12 * max(b - a, 1.0)):
        raise DomainError(f"cut {c} outside support [{a}, {b}]")
    if mc is not None:
        return mc_halfspace_fraction(body, u, c, mc).value
    exact = exact_section_profile(body, u)
    if exact is None:
        raise GrunlabError("no exact profile; pass an McSpec")
    c = min(max(c, a), b)
    total = powered_integral(exact, 1.0, spec=spec)
    return powered_integral(exact, 1.0, (a, c), spec=spec) / total


def centroid(body):
    """Exact centroid vector (simplicial decomposition for polytopes)."""
    return body.centroid()


# ---------------------------------------------------------------------------
# geometric theorem verifiers
# ---------------------------------------------------------------------------

def _normal_upper_quantile(tail):
    """z with P(Z > z) = tail for standard normal Z, by bisection on erfc."""
    import math as _m

    lo, hi = 0.0, 12.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if 0.5 * _m.erfc(mid / _m.sqrt(2.0)) > tail:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _mc_concavity_ok(profile, sigma, p):
    """Noise-aware p-concavity test for binned profiles.

    Each triple's chord violation is compared against its propagated noise;
    the per-triple threshold is Bonferroni-adjusted so the whole-profile test
    has the false-alarm rate of a single 3-sigma test.
    """
    t = profile.centers
    v = profile.values
    keep = v > 3.0 * sigma
    t, v, s = t[keep], v[keep], sigma[keep]
    if t.size < 3:
        return True, 0.0
    g = v ** p
    gs = p * v ** (p - 1.0) * s
    mid = g[1:-1]
    chord = 0.5 * (g[:-2] + g[2:])
    noise = np.sqrt(gs[1:-1] ** 2 + 0.25 * gs[:-2] ** 2 + 0.25 * gs[2:] ** 2)
    single_3sigma_tail = 0.0013498980316300933
    z = max(3.0, _normal_upper_quantile(single_3sigma_tail / (t.size - 2)))
    viol = chord - mid - z * noise
    worst = float(viol.max())
    return worst <= 0.0, worst


def verify_grunbaum_r(body, u, p, r, spec=DEFAULT_QUADRATURE, mc=None, tol=1e-9):
    """Halfspace-mass bound at the r-powered centroid for a p-concave profile.

    Reports min(lower, upper) side against the sharp constant; the hypothesis
    (p-concavity of the section profile) is certified first and a failure
    raises PreconditionError naming the witness.
    """
    sp = section_profile(body, u, mc=mc)
    if sp.kind == "exact":
        check = p_concavity_check(sp.profile, p)
        if not check.ok:
            raise PreconditionError(
                f"section profile is not {p}-concave "
                f"(violation {check.max_violation:.3e} at {check.witness[:3]})",
                witness=check.witness)
    else:
        ok, worst = _mc_concavity_ok(sp.profile, sp.sigma, p)
        if not ok:
            raise PreconditionError(
                f"binned profile violates {p}-concavity beyond 3 sigma ({worst:.3e})",
                witness=worst)
    a, b = sp.support
    if r == 0.0:
        cut = 0.5 * (a + b)
    else:
        total_r = powered_integral(sp.profile, r, spec=spec)
        cut = float(moment_integral(sp.profile, r, spec=spec) / total_r)
    bound = grunbaum_r_bound(p, r)
    if sp.kind == "exact":
        lower = halfspace_fraction(body, u, cut, spec=spec)
        sigma = 0.0
        tolerance = tol
        prov = integration_provenance(sp.profile, spec)
    else:
        est = mc_halfspace_fraction(body, u, cut, mc)
        lower, sigma = est.value, est.sigma
        tolerance = max(tol, _Z99_ONE_SIDED * sigma)
        prov = {"kind": "mc", **mc.meta(), "sigma": sigma, "ci": "one-sided 99%"}
    upper = 1.0 - lower
    ratio = min(lower, upper)
    prov["params"] = {"p": p, "r": r, "u": list(_unit(u, body.dim))}
    details = {"lower_fraction": lower, "upper_fraction": upper, "cut": cut,
               "regime": bound.regime}
    return make_report("grunbaum-r", ratio, bound.value, tolerance, prov, details)


def verify_minkowski_radon(body, u, tol=1e-9):
    """Projection split at the centroid: both sides carry at least 1/(n+1)."""
    u = _unit(u, body.dim)
    a, b = body.support_interval(u)
    g1 = float(centroid(body) @ u)
    ratio = min(g1 - a, b - g1) / (b - a)
    bound = classic_bounds(body.dim)["minkowski_radon"]
    prov = {"kind": "exact", "params": {"n": body.dim, "u": list(u)}}
    details = {"lower_fraction": (g1 - a) / (b - a),
               "upper_fraction": (b - g1) / (b - a), "cut": g1}
    return make_report("minkowski-radon", ratio, bound.value, tol, prov, details)


def verify_makai_fradelizi(body, u, spec=DEFAULT_QUADRATURE, tol=1e-9):
    """Central section against the largest parallel section: f(g1)/max f."""
    u = _unit(u, body.dim)
    sp = section_profile(body, u)
    g1 = float(centroid(body) @ u)
    ratio = float(evaluate(sp.profile, g1)) / sp.profile.max_value()
    bound = classic_bounds(body.dim)["makai_fradelizi"]
    prov = integration_provenance(sp.profile, spec)
    prov["params"] = {"n": body.dim, "u": list(u)}
    details = {"cut": g1, "max_section": sp.profile.max_value()}
    return make_report("makai-fradelizi", ratio, bound.value, tol, prov, details)


# ---------------------------------------------------------------------------
# bodies of revolution and the functional/geometric round trip
# ---------------------------------------------------------------------------

def revolve(profile, n):
    """Body of revolution in R^n whose axis sections equal the profile exactly.

    Requires profile^(1/(n-1)) concave (so the body is convex); raises
    PreconditionError otherwise.
    """
    return Revolution(profile, n)


@dataclass(frozen=True)
class RoundTrip:
    """Functional tail ratio vs geometric halfspace fraction of the revolved body."""

    functional_ratio: float
    geometric_ratio: float
    discrepancy: float
    cut: float
    n: int
    r: float
    tol: float

    @property
    def passed(self):
        return bool(self.discrepancy < self.tol)


def revolve_roundtrip(profile, n, r=1.0, spec=DEFAULT_QUADRATURE, tol=1e-8):
    """Compare the functional and geometric routes to the same mass ratio.

    The body of revolution built from a section profile f, cut at its
    r-powered centroid, splits volume exactly as the profile h = f^(1/(n-1))
    splits beta-powered mass at its alpha-centroid with beta = n-1 and
    alpha = r(n-1).
    """
    body = revolve(profile, n)
    axis = body.axis
    lam = r_centroid_point(body, axis, r, spec=spec)
    geometric = 1.0 - halfspace_fraction(body, axis, lam, spec=spec)
    h = power_profile(profile, 1.0 / (n - 1))
    beta = float(n - 1)
    alpha = r * beta
    a, b = h.domain
    if alpha == 0.0:
        cut = 0.5 * (a + b)
    else:
        cut = moment_integral(h, alpha, spec=spec) / powered_integral(h, alpha, spec=spec)
    functional = powered_integral(h, beta, (cut, b), spec=spec) \
        / powered_integral(h, beta, spec=spec)
    return RoundTrip(functional_ratio=float(functional),
                     geometric_ratio=float(geometric),
                     discrepancy=float(abs(functional - geometric)),
                     cut=float(lam), n=int(n), r=float(r), tol=tol)
