"""Exact reproduction of every equality case, with zero slack.

The cone, the simplex, and the decreasing affine profile are the extremal
configurations of the halfspace, projection, and tail-mass bounds; each
verification below lands on its sharp constant to machine precision.
"""

import json

import grunlab as gl


def show(rep):
    print(f"  {rep.theorem:<16} ratio {rep.ratio:.12f}  bound {rep.bound:.12f}"
          f"  slack {rep.slack:+.1e}  pass={rep.passed}")


with open(gl.fixture_path("cone3.json"), encoding="utf-8") as fh:
    cone = gl.body_from_json(json.load(fh))

print("R^3 cone, cut at the centroid (p=1/2, r=1): attains 27/64")
show(gl.verify_grunbaum_r(cone, [1, 0, 0], 0.5, 1.0))

print("R^3 cone, cut at the midpoint (r=0): attains (1/2)^3")
show(gl.verify_grunbaum_r(cone, [1, 0, 0], 0.5, 0.0))

print("R^3 cone, central section over max section: attains 9/16")
show(gl.verify_makai_fradelizi(cone, [1, 0, 0]))

print("simplices along a facet normal: centroid splits the height 1:n")
tri = gl.Simplex([[0, 0], [1, 0], [0, 1]])
show(gl.verify_minkowski_radon(tri, [1, 0]))
tet = gl.Simplex([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
show(gl.verify_minkowski_radon(tet, [1, 0, 0]))

print("decreasing affine profile: equality in the tail-mass bound for alpha <= beta")
affine = gl.ConcaveProfile([[0.0, 1.0], [1.0, 0.0]])
for alpha, beta in ((1.0, 1.0), (1.0, 2.0), (0.5, 3.0)):
    rep = gl.verify_functional(affine, alpha, beta)
    print(f"  alpha={alpha} beta={beta}:", end="")
    show(rep)

print("symmetric bodies sit far from the bound (every centered split is 1/2):")
ball = gl.Ball([0.0, 0.0, 0.0], 1.0)
show(gl.verify_grunbaum_r(ball, [0, 0, 1], 0.5, 1.0))
