"""The 1-D profile engine: powered integrals, alpha-centroids, tail ratios.

Everything in the laboratory reduces to these operations on nonnegative
concave profiles; power-law and piecewise-linear profiles integrate exactly.
"""

import json

import numpy as np

import grunlab as gl

# a piecewise-linear tent and the decreasing affine equality case
tent = gl.ConcaveProfile([[0.0, 0.2], [0.4, 1.0], [1.0, 0.0]])
affine = gl.ConcaveProfile([[0.0, 1.0], [1.0, 0.0]])

print("profile:", tent)
print("  value at 0.7        :", gl.evaluate(tent, 0.7))
print("  mass int h dt       :", gl.powered_integral(tent, 1.0))
print("  powered int h^2.5 dt:", gl.powered_integral(tent, 2.5))
print("  moment int t h dt   :", gl.moment_integral(tent, 1.0))

print("\nalpha-centroids drift toward the peak as alpha grows:")
for alpha in (0.0, 0.5, 1.0, 2.0, 8.0, 32.0):
    print(f"  g_{alpha:<4} = {gl.alpha_centroid(tent, alpha):.6f}")

print("\ntail-mass ratios (fraction of h^beta mass right of the alpha-centroid):")
for alpha, beta in ((1.0, 1.0), (2.0, 1.0), (1.0, 2.0)):
    ratio = gl.tail_mass_ratio(tent, alpha, beta)
    bound = gl.functional_bound(alpha, beta).value
    print(f"  alpha={alpha}, beta={beta}: ratio {ratio:.6f} >= bound {bound:.6f}")

print("\nthe decreasing affine profile attains the bound whenever alpha <= beta:")
for alpha, beta in ((1.0, 1.0), (0.5, 2.0), (2.0, 3.0)):
    ratio = gl.tail_mass_ratio(affine, alpha, beta)
    bound = gl.functional_bound(alpha, beta).value
    print(f"  alpha={alpha}, beta={beta}: ratio - bound = {ratio - bound:+.2e}")

# p-concavity certification: h^p concave?
cone_section = gl.DecreasingPowerProfile(np.pi, 0.0, 1.0, 2.0)
print("\ncone section profile pi(1-t)^2:")
print("  1/2-concave:", gl.p_concavity_check(cone_section, 0.5).ok)
check = gl.p_concavity_check(cone_section, 1.0)
print(f"  1-concave  : {check.ok} (violation {check.max_violation:.1e} "
      f"at t = {check.witness[1]:.3f})")

# profiles serialize to plain JSON
blob = json.dumps(gl.profile_to_json(tent))
print("\nJSON round trip:", gl.profile_from_json(blob))
