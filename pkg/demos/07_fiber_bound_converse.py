"""Reading fiber curvature back out of the cone.
=============================================

The transfer works both ways: comparing fiber distances between
corresponding points of lifted triangles against the model surface of
curvature K tests whether the fiber itself satisfies the metric bound.
Exact model fibers sit on the boundary (gaps at rounding level), while the
tripod's branch point fails every lower bound on the fiber side too.
"""

from lorcone import (EuclideanN, GeneralizedCone, Hyperbolic2, SamplingSpec,
                     Sphere2, WarpSpec, fiber_bound_from_cone)
from lorcone.fiber import tripod

cases = [
    ("H2(1) fiber vs K = -1 (below)",
     GeneralizedCone(WarpSpec.identity(), Hyperbolic2(1.0)), -1.0, "below"),
    ("H2(1) fiber vs K = -1 (above)",
     GeneralizedCone(WarpSpec.identity(), Hyperbolic2(1.0)), -1.0, "above"),
    ("R^2 fiber vs K = 0 (below)",
     GeneralizedCone(WarpSpec.constant(1.0), EuclideanN(2)), 0.0, "below"),
    ("S2(1) fiber vs K = 1 under cosh (below)",
     GeneralizedCone(WarpSpec.cosh(), Sphere2(1.0)), 1.0, "below"),
]
for label, cone, K, direction in cases:
    rep = fiber_bound_from_cone(cone, K, K, direction,
                                SamplingSpec(n_triangles=40, seed=2))
    print("%-42s -> %-10s  worst violation %.2e"
          % (label, rep.verdict, rep.worst_gap))

print()
print("tripod fiber vs lower bound K = -1:")
Yt = GeneralizedCone(WarpSpec.identity(), tripod())
rep = fiber_bound_from_cone(Yt, -1.0, 0.0, "below",
                            SamplingSpec(n_triangles=200, seed=123))
print("  verdict:", rep.verdict, " worst violation %.3e" % rep.worst_gap)
w = rep.worst_witness
print("  witness pair: fiber distance %.6f in the tree vs %.6f in the model"
      % (w["tau_cone"], w["tau_model"]))
