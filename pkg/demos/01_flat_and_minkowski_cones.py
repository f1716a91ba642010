"""Causality and time separation in flat space and in Minkowski cones.
=====================================================================

The cone with constant warp 1 over Euclidean space is Minkowski spacetime:
its time separation has the closed form sqrt(dt^2 - |dx|^2).  The cone with
warp f(t) = t over a metric space X is the Minkowski cone over X, where the
closed form sqrt(s^2 + t^2 - 2 s t cosh d(p, q)) holds.  Both are recovered
numerically by the conservation-law solver.
"""

import math

import numpy as np

from lorcone import EuclideanN, GeneralizedCone, Hyperbolic2, WarpSpec

# flat spacetime: constant warp over the plane
flat = GeneralizedCone(WarpSpec.constant(1.0), EuclideanN(2))
p = flat.point(0.0, np.array([0.0, 0.0]))
q = flat.point(2.0, np.array([1.0, 0.0]))

print("flat cone, p = (0; 0,0), q = (2; 1,0)")
print("  relation        :", flat.relate(p, q).relation)
print("  tau (solver)    : %.9f" % flat.time_separation(p, q))
print("  tau (closed)    : %.9f" % math.sqrt(2.0 ** 2 - 1.0 ** 2))

# the null boundary: d equal to dt is reached by a null curve, not timelike
edge = flat.point(1.0, np.array([1.0, 0.0]))
print("  null boundary   :", flat.relate(p, edge).relation)

# Minkowski cone over the hyperbolic plane
hyp = Hyperbolic2(1.0)
cone = GeneralizedCone(WarpSpec.identity(), hyp)
x = hyp.from_polar(0.0, 0.0)
y = hyp.geodesic_point(x, hyp.from_polar(2.0, 0.7), 0.31)
d = hyp.distance(x, y)
s, t = 1.0, 2.0
pc, qc = cone.point(s, x), cone.point(t, y)

print("\nMinkowski cone over H2(1), s = 1, t = 2, d = %.6f" % d)
print("  tau (solver)    : %.9f" % cone.time_separation(pc, qc))
print("  tau (closed)    : %.9f"
      % math.sqrt(s * s + t * t - 2 * s * t * math.cosh(d)))

# maximizing geodesics realize tau and have a causal character
path = flat.maximizing_geodesic(p, q, 65)
print("\nmaximizer from p to q in the flat cone")
print("  path length     : %.9f" % flat.path_length(path))
print("  classification  :", flat.classify_path(path))
print("  energy (t-param): %.9f" % flat.energy(path))

# the variational length over dyadic partition refinements decreases onto
# the length
var = flat.variational_length(path, 5)
print("  refinement path :", " -> ".join("%.7f" % v for v in var.sequence))
