import json

import numpy as np
import pytest

import grunlab as gl


def load_fixture(name):
    with open(gl.fixture_path(name), "r", encoding="utf-8") as handle:
        return json.load(handle)


@pytest.fixture
def affine():
    """h(t) = 1 - t on [0, 1]: the equality case of the tail-mass bounds."""
    return gl.ConcaveProfile([[0.0, 1.0], [1.0, 0.0]])


@pytest.fixture
def flat():
    """h = 1 on [0, 1]."""
    return gl.ConcaveProfile([[0.0, 1.0], [1.0, 1.0]])


@pytest.fixture
def cone3():
    return gl.body_from_json(load_fixture("cone3.json"))


def random_profiles(seed, count, m=10):
    return [gl.random_concave([seed, k], m) for k in range(count)]


def random_convex_polygon(rng, n_pts=12):
    """Convex hull (ccw) of random planar points."""
    pts = rng.normal(size=(n_pts, 2))
    hull = _hull2d_ccw(pts)
    return gl.Polytope2D(hull)


def _hull2d_ccw(pts):
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]

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


def random_polytope3d(rng, n_pts=10):
    """Convex hull of random points in R^3 as a Polytope3D (scipy oracle)."""
    from scipy.spatial import ConvexHull

    pts = rng.normal(size=(n_pts, 3))
    hull = ConvexHull(pts)
    return gl.Polytope3D(pts[hull.vertices],
                         _reindex_faces(hull.simplices, hull.vertices))


def _reindex_faces(simplices, vertex_ids):
    lookup = {int(v): i for i, v in enumerate(vertex_ids)}
    return [[lookup[int(i)] for i in face] for face in simplices]


def rotation_matrix_3d(rng):
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
