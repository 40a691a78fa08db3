"""Probing sharpness: falsification sweep and extremal coordinate descent.

The sweep hammers random concave profiles against the bound (any negative
slack would falsify the inequality); the search actively minimizes the tail
ratio and, in the regimes with a known equality case, recovers it.
"""

import io

import grunlab as gl

print("falsification sweep (4x4 grid, 150 random profiles per cell):")
table = gl.sweep([0.5, 1.0, 2.0, 3.0], [0.5, 1.0, 2.0, 3.0], trials=150, seed=7)
out = io.StringIO()
table.to_csv(out)
print(out.getvalue())
print(f"violations: {table.violations} (any would be a build-stopping event)")

print("\nextremal search at alpha = beta = 1 (bound 4/9, minimizer: decreasing affine):")
cfg = gl.SearchConfig(alpha=1.0, beta=1.0, seed=7, m=16, budget=6000, restarts=4)
res = gl.minimize_tail_ratio(cfg)
print(f"  best ratio {res.ratio:.8f}  bound {res.bound:.8f}  gap {res.gap:.2e}")
print(f"  accepted moves: {len(res.trace)}")
print("  best profile found (ordinates on the uniform grid):")
hs = res.profile.hs
print("   ", " ".join(f"{h:.3f}" for h in hs))

print("\nsearch in the alpha < beta regime (alpha=1, beta=2, bound 8/27):")
res = gl.minimize_tail_ratio(gl.SearchConfig(alpha=1.0, beta=2.0, seed=11,
                                             m=16, budget=6000, restarts=4))
print(f"  best ratio {res.ratio:.8f}  bound {res.bound:.8f}  gap {res.gap:.2e}")

print("\nexploratory regime beta < alpha (sharpness unknown): gap is only reported")
res = gl.minimize_tail_ratio(gl.SearchConfig(alpha=3.0, beta=1.0, seed=13,
                                             m=16, budget=6000, restarts=4))
print(f"  alpha=3, beta=1: best ratio {res.ratio:.6f}  bound {res.bound:.6f}"
      f"  gap {res.gap:.4f}")
