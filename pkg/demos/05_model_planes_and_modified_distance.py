"""Model planes, comparison triangles, and the modified distance.
==============================================================

The constant-curvature Lorentzian planes are represented through warped
charts over the line.  Timelike triangles with prescribed side lengths are
realized canonically; points on sides correspond across models at equal
time separation from the vertices.  The modified distance function of the
signed energy satisfies a linear ODE along geodesics and orders the models
strictly: larger curvature means larger time separations between
corresponding points.
"""

import numpy as np

from lorcone import (corresponding_point, model_tau, modified_distance,
                     realize_timelike_triangle)
from lorcone.lorentz_model import signed_energy

# a timelike triangle with sides a = 1, b = 1, c = 2.5 in the Minkowski plane
tri = realize_timelike_triangle(0.0, 1.0, 1.0, 2.5)
print("K = 0 triangle, sides (1, 1, 2.5)")
print("  x' = (%.4f, %.4f)" % (tri.x.t, tri.x.x))
print("  y' = (%.4f, %.4f)   <- apex off the axis" % (tri.y.t, tri.y.x))
print("  z' = (%.4f, %.4f)" % (tri.z.t, tri.z.x))

# the same sides in the curved planes; recomputed separations match
for K in (-1.0, 1.0):
    t = realize_timelike_triangle(K, 0.3, 0.4, 0.8)
    print("K = %+g triangle sides recovered: a=%.9f b=%.9f c=%.9f"
          % (K, model_tau(K, t.x, t.y), model_tau(K, t.y, t.z),
             model_tau(K, t.x, t.z)))

# modified distance: ODE residual along the far side
K = 1.0
tri = realize_timelike_triangle(K, 0.25, 0.3, 0.8)
us = np.linspace(0.0, 1.0, 21)
phi = np.array([
    modified_distance(K, signed_energy(K, tri.x,
                                       corresponding_point(tri, "yz", u * tri.b)))
    for u in us])
h = us[1] - us[0]
second = (phi[2:] - 2 * phi[1:-1] + phi[:-2]) / (h * h)
resid = second - tri.b ** 2 * K * phi[1:-1] + tri.b ** 2
print("\nmodified-distance ODE residual along side yz (K = 1): max %.2e"
      % np.max(np.abs(resid)))

# strict two-model comparison: same sides, larger K, strictly larger tau
lo = realize_timelike_triangle(0.0, 0.3, 0.35, 0.8)
hi = realize_timelike_triangle(1.0, 0.3, 0.35, 0.8)
print("\ncorresponding interior points on side yz (K = 0 vs K' = 1):")
for u in (0.25, 0.5, 0.75):
    q0 = corresponding_point(lo, "yz", u * 0.35)
    q1 = corresponding_point(hi, "yz", u * 0.35)
    print("  u = %.2f: tau_K0 = %.9f  <  tau_K1 = %.9f"
          % (u, model_tau(0.0, lo.x, q0), model_tau(1.0, hi.x, q1)))
