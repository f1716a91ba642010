"""Two-dimensional Lorentzian model planes of constant curvature K.

Each plane is represented through its canonical warped chart over the real
line: the Minkowski plane for K = 0, warp cosh(sqrt(K) t)/sqrt(K) on all of
R for K > 0, and warp cos(sqrt(-K) t)/sqrt(-K) on the strip
|t| < pi/(2 sqrt(-K)) for K < 0.  Time separation and geodesics inside the
chart delegate to the generalized-cone solver; everything triangle-shaped
assumes the timelike size bounds, under which the chart realizes the
canonical comparison configurations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cone import ConePoint, GeneralizedCone
from .errors import DomainError, RealizationError, TriangleError
from .fiber import RealLine
from .warp import WarpSpec


def chart_warp(K: float) -> WarpSpec:
    if K == 0.0:
        return WarpSpec.constant(1.0)
    if K > 0:
        s = math.sqrt(K)
        w = WarpSpec.cosh(amplitude=1.0 / s, rate=s)
    else:
        s = math.sqrt(-K)
        half = math.pi / (2.0 * s)
        w = WarpSpec.cos(interval=(-half, half), amplitude=1.0 / s, rate=s)
    # chart sanity: the warped product has f''/f = K
    half = math.pi / (2.0 * s) if K < 0 else 1.0
    for t in (-0.5 * half, 0.1 * half, 0.3 * half):
        if abs(w.second_derivative(t) / w(t) - K) > 1e-9 * max(1.0, abs(K)):
            raise RealizationError(f"chart warp for K={K} fails f''/f = K")
    return w


@lru_cache(maxsize=64)
def model_cone(K: float) -> GeneralizedCone:
    """The warped chart of the model plane as a generalized cone over R."""
    return GeneralizedCone(chart_warp(K), RealLine())


def strip_half_width(K: float) -> float:
    return math.inf if K >= 0 else math.pi / (2.0 * math.sqrt(-K))


@dataclass(frozen=True)
class ModelPoint:
    """Chart coordinates (t, x) of a point of the model plane."""
    K: float
    t: float
    x: float

    def __post_init__(self):
        if abs(self.t) >= strip_half_width(self.K):
            raise DomainError(
                f"|t| = {abs(self.t)} outside the K={self.K} chart strip")

    def as_cone_point(self):
        return ConePoint(self.t, self.x)


def model_tau(K: float, p: ModelPoint, q: ModelPoint) -> float:
    """Time separation in the model plane; 0 for non-related pairs."""
    if p.K != K or q.K != K:
        raise DomainError("points belong to a different chart")
    if K == 0.0:
        dt = q.t - p.t
        dx = q.x - p.x
        rad = dt * dt - dx * dx
        return math.sqrt(rad) if (dt > 0 and rad > 0) else 0.0
    return model_cone(K).time_separation(p.as_cone_point(), q.as_cone_point())


def size_bounds(K: float, a: float, b: float, c: float,
                eq_tol: float = 1e-12) -> bool:
    """Timelike size bounds: c >= a+b, and c < pi/sqrt(|K|) whenever the
    equality case meets K > 0 or the strict case meets K < 0."""
    if min(a, b, c) < 0:
        return False
    scale = max(1.0, a, b, c)
    if c < a + b - eq_tol * scale:
        return False
    equality = abs(c - (a + b)) <= eq_tol * scale
    if (equality and K > 0) or (not equality and K < 0):
        return c < math.pi / math.sqrt(abs(K))
    return True


@dataclass(frozen=True)
class ModelTriangle:
    """Realized comparison triangle x' << y' << z' with side lengths
    a = tau(x', y'), b = tau(y', z'), c = tau(x', z')."""
    K: float
    x: ModelPoint
    y: ModelPoint
    z: ModelPoint
    a: float
    b: float
    c: float

    def side(self, name):
        if name == "xy":
            return self.x, self.y, self.a
        if name == "yz":
            return self.y, self.z, self.b
        if name == "xz":
            return self.x, self.z, self.c
        raise DomainError(f"unknown side {name!r}; expected xy, yz or xz")


def _flat_apex(a, b, c, t0):
    """Closed-form Minkowski placement of y' over x' = (t0, 0), z' = (t0+c, 0)."""
    if a <= 0.0:
        return t0, 0.0
    if b <= 0.0:
        return t0 + c, 0.0
    scale = max(1.0, c)
    if abs(c - (a + b)) <= 1e-12 * scale:
        return t0 + a, 0.0
    ch = (a * a + c * c - b * b) / (2.0 * a * c)
    ch = max(1.0, ch)
    sh = math.sqrt(max(0.0, ch * ch - 1.0))
    return t0 + a * ch, a * sh


def realize_timelike_triangle(K: float, a: float, b: float, c: float,
                              tol: float = 1e-8) -> ModelTriangle:
    """Canonical comparison triangle: x' and z' on the time axis, y' on the
    nonnegative-x side, with tau(x',y') = a, tau(y',z') = b, tau(x',z') = c."""
    if not size_bounds(K, a, b, c):
        raise TriangleError(
            f"timelike size bounds fail for K={K}, sides ({a}, {b}, {c})")
    half = strip_half_width(K)
    t0 = -0.5 * c if K < 0 else 0.0
    if c >= 2.0 * half * (1.0 - 1e-12):
        raise RealizationError(
            f"side c = {c} exceeds the chart's timelike diameter for K={K}")
    x = ModelPoint(K, t0, 0.0)
    z = ModelPoint(K, t0 + c, 0.0)
    ty, xy_ = _flat_apex(a, b, c, t0)
    if K == 0.0 or a <= 0.0 or b <= 0.0 or abs(c - (a + b)) <= 1e-12 * max(1.0, c):
        y = ModelPoint(K, ty, xy_)
        tri = ModelTriangle(K, x, y, z, a, b, c)
        _check_residual(tri, tol)
        return tri
    # K != 0: the apex candidates y(kappa) sweep the level set tau(x, y) = a
    # along geodesics from x with conserved momentum kappa >= 0; the single
    # remaining equation tau(y, z) = b is solved by bracketed root finding.
    y = _apex_on_level_set(K, x, z, a, b, c, tol)
    tri = ModelTriangle(K, x, y, z, a, b, c)
    _check_residual(tri, tol)
    return tri


def _apex_on_level_set(K, x, z, a, b, c, tol):
    from scipy.optimize import brentq
    from .warp import _gl_nodes
    cone = model_cone(K)
    w = cone.warp
    zc = z.as_cone_point()

    def integrals(kappa, t):
        ts, ws = _gl_nodes(x.t, t, 96)
        f = w(ts)
        if kappa <= 1.0:
            root = np.sqrt(f * f + kappa * kappa)
            return (float(np.sum(ws * f / root)),
                    float(np.sum(ws * kappa / (f * root))))
        r = f / kappa
        root = np.sqrt(r * r + 1.0)
        return (float(np.sum(ws * r / root)),
                float(np.sum(ws / (f * root))))

    def y_of(kappa):
        if kappa == 0.0:
            return ModelPoint(K, x.t + a, x.x)
        # proper time accrues at rate <= 1, so t >= x.t + a; expand upward
        lo_t = x.t + a
        hi_t = lo_t
        span = max(a, 1.0)
        for _ in range(200):
            cand = hi_t + span
            if cand >= w.b:
                cand = w.b - (w.b - hi_t) * 1e-9
            hi_t = cand
            if integrals(kappa, hi_t)[0] >= a:
                break
            if w.b - hi_t <= abs(w.b) * 1e-12 + 1e-300:
                return None   # level set leaves the chart along this geodesic
            span *= 2.0
        else:
            return None
        if integrals(kappa, lo_t)[0] >= a:
            t_a = lo_t
        else:
            t_a = brentq(lambda t: integrals(kappa, t)[0] - a, lo_t, hi_t,
                         xtol=1e-13 * max(1.0, abs(lo_t), abs(hi_t)),
                         rtol=8.9e-16, maxiter=200)
        return ModelPoint(K, float(t_a), x.x + integrals(kappa, t_a)[1])

    def remaining(kappa):
        y = y_of(kappa)
        if y is None:
            return -b - 1.0
        return cone.time_separation(y.as_cone_point(), zc) - b

    g0 = remaining(0.0)
    if g0 < -tol * max(1.0, c):
        raise RealizationError(
            f"no apex on the tau = {a} level set reaches tau(y, z) = {b}",
            residual=g0)
    if abs(g0) <= 0.25 * tol * max(1.0, c):
        return y_of(0.0)
    k_hi = 1e-3
    for _ in range(600):
        if remaining(k_hi) < 0.0:
            break
        k_hi *= 2.0
    else:
        raise RealizationError(
            f"could not bracket the apex momentum for K={K}; sides "
            f"({a}, {b}, {c})")
    kappa = brentq(remaining, 0.0, k_hi, xtol=1e-300, rtol=8.9e-16,
                   maxiter=300)
    return y_of(kappa)


def _check_residual(tri: ModelTriangle, tol: float):
    scale = max(1.0, tri.c)
    got = (model_tau(tri.K, tri.x, tri.y), model_tau(tri.K, tri.y, tri.z),
           model_tau(tri.K, tri.x, tri.z))
    resid = max(abs(got[0] - tri.a), abs(got[1] - tri.b), abs(got[2] - tri.c))
    if resid > 10.0 * tol * scale:
        raise RealizationError(
            f"triangle side residual {resid:g} after placement", residual=resid)


def corresponding_point(tri: ModelTriangle, side: str, s: float) -> ModelPoint:
    """The point on the realized side at time separation s from its first
    vertex (the comparison correspondence)."""
    v0, v1, length = tri.side(side)
    if not -1e-12 <= s <= length + 1e-9 * max(1.0, length):
        raise DomainError(f"parameter {s} outside [0, {length}] on side {side}")
    s = min(max(s, 0.0), length)
    if s == 0.0 or length == 0.0:
        return v0
    if s >= length:
        return v1
    if tri.K == 0.0:
        u = s / length
        return ModelPoint(tri.K, v0.t + u * (v1.t - v0.t), v0.x + u * (v1.x - v0.x))
    cone = model_cone(tri.K)
    pt = cone.point_on_maximizer(v0.as_cone_point(), v1.as_cone_point(), s)
    return ModelPoint(tri.K, pt.t, pt.x)


def modified_distance(K: float, E: float) -> float:
    """h_{K,x} as a function of the signed energy E (E = -tau^2 for
    timelike-related pairs): (1 - cos(sqrt(K E)))/K, with cos(i phi) = cosh phi
    and a series fallback that is continuous in K at 0."""
    z = K * E
    if K == 0.0:
        return E / 2.0
    if abs(z) < 1e-6:
        # (1 - cos sqrt(z))/z = 1/2 - z/24 + z^2/720 - ...
        g = 0.5 - z / 24.0 + z * z / 720.0
        return E * g
    if z >= 0.0:
        return (1.0 - math.cos(math.sqrt(z))) / K
    return (1.0 - math.cosh(math.sqrt(-z))) / K


def signed_energy(K: float, x: ModelPoint, q: ModelPoint) -> float:
    """E_x(q) = -tau(x, q)^2 for causally ordered pairs."""
    tau = model_tau(K, x, q)
    return -tau * tau
