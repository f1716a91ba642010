"""Warping functions on an open interval and derived one-dimensional data.

A warping function is a positive continuous ``f`` on an open interval
``(a, b)``; the closed-form kinds carry analytic derivatives and analytic
interval extrema.  :class:`NullTransport` packages the null-parameter
integral ``F(r) = int_{p0}^r 1/f`` together with its inverse ``h`` and the
forward/backward horizons, which may be infinite and are detected as such
rather than overflowed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import DomainError, QuadratureError, RangeError

CLOSED_FORM_KINDS = ("constant", "identity", "sin", "cos", "cosh", "exp", "power")
KINDS = CLOSED_FORM_KINDS + ("sampled",)

_TWO_PI = 2.0 * math.pi

# Horizon detection: geometric endpoint refinement stops when either the
# partial integral exceeds the cap (declared infinite) or the last increment
# is negligible (declared finite).
HORIZON_CAP = 1e12
_HORIZON_STEPS = 64
_HORIZON_ATOL = 1e-13


@lru_cache(maxsize=32)
def _leggauss(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _gl_nodes(lo, hi, n):
    x, w = _leggauss(n)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    return mid + half * x, half * w


@dataclass(frozen=True)
class WarpSpec:
    """A warping function ``f`` on the open interval ``(a, b)``.

    ``kind`` selects the functional form; ``amplitude`` and ``rate`` scale the
    trigonometric/hyperbolic/exponential kinds as ``amplitude * base(rate*t)``.
    The ``sampled`` kind interpolates a strictly positive ``(t, f(t))`` grid,
    linearly by default or with a cubic spline when derivative information is
    needed.
    """

    a: float
    b: float
    kind: str
    c: float = 1.0
    p: float = 1.0
    amplitude: float = 1.0
    rate: float = 1.0
    samples: tuple | None = None
    interpolation: str = "linear"
    quad_tol: float = 1e-10

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"empty interval ({self.a}, {self.b})")
        if self.kind not in KINDS:
            raise DomainError(f"unknown warp kind {self.kind!r}")
        if self.kind == "sampled":
            self._validate_sampled()
        else:
            self._validate_closed_form()

    # -- construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, c=1.0, interval=(-math.inf, math.inf), **kw):
        return cls(interval[0], interval[1], "constant", c=float(c), **kw)

    @classmethod
    def identity(cls, interval=(0.0, math.inf), amplitude=1.0, **kw):
        return cls(interval[0], interval[1], "identity", amplitude=amplitude, **kw)

    @classmethod
    def sin(cls, interval=(0.0, math.pi), amplitude=1.0, rate=1.0, **kw):
        return cls(interval[0], interval[1], "sin", amplitude=amplitude, rate=rate, **kw)

    @classmethod
    def cos(cls, interval=(-math.pi / 2, math.pi / 2), amplitude=1.0, rate=1.0, **kw):
        return cls(interval[0], interval[1], "cos", amplitude=amplitude, rate=rate, **kw)

    @classmethod
    def cosh(cls, interval=(-math.inf, math.inf), amplitude=1.0, rate=1.0, **kw):
        return cls(interval[0], interval[1], "cosh", amplitude=amplitude, rate=rate, **kw)

    @classmethod
    def exp(cls, interval=(-math.inf, math.inf), amplitude=1.0, rate=1.0, **kw):
        return cls(interval[0], interval[1], "exp", amplitude=amplitude, rate=rate, **kw)

    @classmethod
    def power(cls, p, interval=(0.0, math.inf), amplitude=1.0, **kw):
        return cls(interval[0], interval[1], "power", p=float(p), amplitude=amplitude, **kw)

    @classmethod
    def sampled(cls, points, interval=None, interpolation="linear", **kw):
        pts = tuple((float(t), float(v)) for t, v in points)
        if interval is None:
            interval = (pts[0][0], pts[-1][0])
        return cls(interval[0], interval[1], "sampled", samples=pts,
                   interpolation=interpolation, **kw)

    # -- validation ------------------------------------------------------------

    def _validate_closed_form(self):
        k = self.kind
        if k == "constant":
            if self.c <= 0:
                raise DomainError("constant warp requires c > 0")
            return
        if self.amplitude <= 0:
            raise DomainError("warp amplitude must be positive")
        if k in ("identity", "power"):
            if self.a < 0:
                raise DomainError(f"{k} warp requires interval within (0, inf)")
            return
        if k in ("cosh", "exp"):
            return
        # sin / cos: positivity requires the (rate-scaled) interval to sit
        # inside a single positive arch, modulo the period.
        if self.rate <= 0:
            raise DomainError("sin/cos warp requires rate > 0")
        w = self.rate
        lo, hi = w * self.a, w * self.b
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError(f"{k} warp requires a finite interval")
        shift = 0.0 if k == "sin" else math.pi / 2.0
        lo, hi = lo + shift, hi + shift
        pos = lo - _TWO_PI * math.floor(lo / _TWO_PI)
        if pos > _TWO_PI - 1e-9:
            pos -= _TWO_PI   # snap a just-below-period phase back to zero
        if pos + (hi - lo) > math.pi + 1e-9:
            raise DomainError(
                f"{k} warp is not positive on the whole interval ({self.a}, {self.b})")

    def _validate_sampled(self):
        if not self.samples or len(self.samples) < 2:
            raise DomainError("sampled warp needs at least two samples")
        ts = [t for t, _ in self.samples]
        vs = [v for _, v in self.samples]
        if any(t2 <= t1 for t1, t2 in zip(ts, ts[1:])):
            raise DomainError("sampled warp grid must be strictly increasing")
        if any(v <= 0 for v in vs):
            raise DomainError("sampled warp values must be strictly positive")
        if self.a < ts[0] or self.b > ts[-1]:
            raise DomainError("interval must lie inside the sampled grid")
        if self.interpolation not in ("linear", "cubic"):
            raise DomainError(f"unknown interpolation {self.interpolation!r}")
        if self.interpolation == "cubic":
            spl = self._spline()
            grid = np.linspace(ts[0], ts[-1], 16 * len(ts))
            if np.min(spl(grid)) <= 0:
                raise DomainError("cubic interpolation dips below zero between samples")

    # -- evaluation ------------------------------------------------------------

    def _spline(self):
        cached = getattr(self, "_spline_cache", None)
        if cached is None:
            from scipy.interpolate import CubicSpline
            ts = np.array([t for t, _ in self.samples])
            vs = np.array([v for _, v in self.samples])
            cached = CubicSpline(ts, vs)
            object.__setattr__(self, "_spline_cache", cached)
        return cached

    def _check_domain(self, t):
        arr = np.asarray(t, dtype=float)
        if np.any(arr <= self.a) or np.any(arr >= self.b):
            raise DomainError(
                f"argument outside the open interval ({self.a}, {self.b})")
        return arr

    def __call__(self, t):
        """Evaluate f(t); t strictly inside (a, b), scalar or array."""
        arr = self._check_domain(t)
        k = self.kind
        if k == "constant":
            out = np.full_like(arr, self.c)
        elif k == "identity":
            out = self.amplitude * arr
        elif k == "power":
            out = self.amplitude * np.power(arr, self.p)
        elif k == "sin":
            out = self.amplitude * np.sin(self.rate * arr)
        elif k == "cos":
            out = self.amplitude * np.cos(self.rate * arr)
        elif k == "cosh":
            out = self.amplitude * np.cosh(self.rate * arr)
        elif k == "exp":
            out = self.amplitude * np.exp(self.rate * arr)
        else:
            if self.interpolation == "cubic":
                out = np.asarray(self._spline()(arr), dtype=float)
            else:
                ts = np.array([t0 for t0, _ in self.samples])
                vs = np.array([v for _, v in self.samples])
                out = np.interp(arr, ts, vs)
        if np.any(out <= 0):
            raise DomainError("warp evaluated non-positive (domain violation)")
        return float(out) if np.isscalar(t) or np.ndim(t) == 0 else out

    @property
    def has_derivatives(self):
        return self.kind != "sampled" or self.interpolation == "cubic"

    def derivative(self, t):
        arr = self._check_domain(t)
        k, A, w = self.kind, self.amplitude, self.rate
        if k == "constant":
            out = np.zeros_like(arr)
        elif k == "identity":
            out = np.full_like(arr, A)
        elif k == "power":
            out = A * self.p * np.power(arr, self.p - 1.0)
        elif k == "sin":
            out = A * w * np.cos(w * arr)
        elif k == "cos":
            out = -A * w * np.sin(w * arr)
        elif k == "cosh":
            out = A * w * np.sinh(w * arr)
        elif k == "exp":
            out = A * w * np.exp(w * arr)
        elif self.interpolation == "cubic":
            out = np.asarray(self._spline()(arr, 1), dtype=float)
        else:
            raise DomainError("sampled warp has no derivative without a cubic rule")
        return float(out) if np.ndim(t) == 0 else out

    def second_derivative(self, t):
        arr = self._check_domain(t)
        k, A, w = self.kind, self.amplitude, self.rate
        if k in ("constant", "identity"):
            out = np.zeros_like(arr)
        elif k == "power":
            out = A * self.p * (self.p - 1.0) * np.power(arr, self.p - 2.0)
        elif k == "sin":
            out = -A * w * w * np.sin(w * arr)
        elif k == "cos":
            out = -A * w * w * np.cos(w * arr)
        elif k == "cosh":
            out = A * w * w * np.cosh(w * arr)
        elif k == "exp":
            out = A * w * w * np.exp(w * arr)
        elif self.interpolation == "cubic":
            out = np.asarray(self._spline()(arr, 2), dtype=float)
        else:
            raise DomainError("sampled warp has no derivative without a cubic rule")
        return float(out) if np.ndim(t) == 0 else out

    # -- interval extrema --------------------------------------------------------

    def _check_subinterval(self, s, t):
        if not (self.a < s <= t < self.b):
            raise DomainError(
                f"[{s}, {t}] is not inside the open interval ({self.a}, {self.b})")

    def min_on(self, s, t):
        """m_{s,t}: the minimum of f over [s, t] (analytic where possible)."""
        self._check_subinterval(s, t)
        return self._extremum_on(s, t, minimum=True)

    def max_on(self, s, t):
        self._check_subinterval(s, t)
        return self._extremum_on(s, t, minimum=False)

    def _extremum_on(self, s, t, minimum):
        k = self.kind
        pick = min if minimum else max
        if k == "constant":
            return self.c
        if k in ("identity", "exp", "power"):
            # monotone on the positive domain
            return pick(self(s), self(t))
        if k in ("sin", "cos"):
            # concave on its positive arch: interior max at the crest,
            # minimum always at an endpoint
            if minimum:
                return pick(self(s), self(t))
            w = self.rate
            crest = 0.0 if k == "cos" else math.pi / 2.0
            lo, hi = sorted((w * s, w * t))
            n0 = math.ceil((lo - crest) / _TWO_PI)
            if crest + _TWO_PI * n0 <= hi:
                return self.amplitude
            return pick(self(s), self(t))
        if k == "cosh":
            # convex with trough at rate*t = 0
            if not minimum:
                return pick(self(s), self(t))
            w = self.rate
            lo, hi = sorted((w * s, w * t))
            if lo <= 0.0 <= hi:
                return self.amplitude
            return pick(self(s), self(t))
        return self._sampled_extremum(s, t, minimum)

    def _sampled_extremum(self, s, t, minimum):
        ts = np.array([t0 for t0, _ in self.samples])
        inside = ts[(ts > s) & (ts < t)]
        cand = [self(s), self(t)] + [self(u) for u in inside]
        if self.interpolation == "cubic":
            # interior extrema of each cubic piece: roots of the derivative
            spl = self._spline()
            dspl = spl.derivative()
            knots = np.concatenate(([s], inside, [t]))
            for lo, hi in zip(knots[:-1], knots[1:]):
                for r in dspl.solve(0.0, extrapolate=False):
                    if lo < r < hi:
                        cand.append(float(spl(r)))
        return min(cand) if minimum else max(cand)

    def is_constant(self):
        if self.kind == "constant":
            return True
        if self.kind == "sampled":
            vs = [v for _, v in self.samples]
            return max(vs) - min(vs) <= 1e-14 * max(vs)
        if self.kind == "power":
            return self.p == 0.0
        return False

    def finite_window(self, width=20.0, margin_frac=1e-3):
        """A finite closed window inside (a, b) for grid-based checks."""
        a, b = self.a, self.b
        if math.isfinite(a) and math.isfinite(b):
            m = (b - a) * margin_frac
            return a + m, b - m
        if math.isfinite(a):
            return a + margin_frac * width, a + width
        if math.isfinite(b):
            return b - width, b - margin_frac * width
        return -width, width


def eval_warp(w: WarpSpec, t):
    """f(t) for t strictly inside the interval."""
    return w(t)


def min_on_interval(w: WarpSpec, s, t):
    """m_{s,t} = min of f over [s, t]."""
    return w.min_on(s, t)


def _inv_integrand(w):
    return lambda t: 1.0 / w(t)


def _quad_inverse(w, lo, hi):
    """Adaptive Gauss-Kronrod integral of 1/f over [lo, hi] (signed)."""
    if lo == hi:
        return 0.0
    sign = 1.0
    if hi < lo:
        lo, hi, sign = hi, lo, -1.0
    if w.kind == "sampled" and w.interpolation == "linear":
        return sign * _piecewise_linear_inverse(w, lo, hi)
    # sampled cubic warps have interpolation kinks at the grid knots;
    # integrate each smooth piece separately
    edges = [lo, hi]
    if w.kind == "sampled":
        edges = [lo] + [t for t, _ in w.samples if lo < t < hi] + [hi]
    total = 0.0
    err_total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, err = integrate.quad(_inv_integrand(w), a, b,
                                  epsabs=w.quad_tol, epsrel=w.quad_tol,
                                  limit=200)
        total += val
        err_total += err
    if (not math.isfinite(total)
            or err_total > 1e4 * w.quad_tol * max(1.0, abs(total))):
        raise QuadratureError(
            f"quadrature of 1/f over [{lo}, {hi}] did not converge",
            estimate=err_total)
    return sign * total


def _piecewise_linear_inverse(w, lo, hi):
    """Exact integral of 1/f over [lo, hi] for a linearly interpolated warp:
    each piece contributes log(f_b / f_a) / slope."""
    knots = [lo] + [t for t, _ in w.samples if lo < t < hi] + [hi]
    ts = np.array(knots)
    fs = np.asarray(w(ts))
    dts = np.diff(ts)
    slopes = np.diff(fs) / dts
    flat = np.abs(slopes) < 1e-14 * np.maximum(1.0, np.abs(fs[:-1]))
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.log(fs[1:] / fs[:-1]) / slopes
    pieces = np.where(flat, dts / fs[:-1], logs)
    return float(np.sum(pieces))


class NullTransport:
    """Null-parameter transport from a base time p0.

    Holds the strictly increasing map ``F(r) = int_{p0}^r 1/f`` (negative for
    r < p0), its inverse ``h`` (computed by bracketed root refinement on a
    cached monotone table) and the horizons ``a_p0 <= 0 <= b_p0``, with
    divergent improper integrals detected and reported as infinite.
    """

    def __init__(self, warp: WarpSpec, p0: float):
        if not warp.a < p0 < warp.b:
            raise DomainError(f"base point {p0} outside ({warp.a}, {warp.b})")
        self.warp = warp
        self.p0 = float(p0)
        r_fwd, f_fwd, self.forward_horizon = self._march(+1)
        r_bwd, f_bwd, back = self._march(-1)
        self.backward_horizon = back
        self._r_tab = np.concatenate((r_bwd[::-1], [self.p0], r_fwd))
        self._f_tab = np.concatenate((f_bwd[::-1], [0.0], f_fwd))

    def _march(self, direction):
        """Geometric refinement toward one endpoint; returns (nodes, F values,
        horizon)."""
        w, p0 = self.warp, self.p0
        end = w.b if direction > 0 else w.a
        rs, fs = [], []
        total = 0.0
        prev = p0
        horizon = math.inf * direction
        if math.isfinite(end):
            gaps = (end - p0) * 0.5 ** np.arange(1, _HORIZON_STEPS + 1)
            nodes = end - gaps
        else:
            nodes = p0 + direction * 2.0 ** np.arange(0, _HORIZON_STEPS)
        for k, r in enumerate(nodes):
            inc = self._piece(prev, r)
            if not math.isfinite(inc) or abs(total + inc) > HORIZON_CAP:
                return np.array(rs), np.array(fs), horizon
            total += inc
            rs.append(r)
            fs.append(total)
            prev = r
            if abs(inc) < _HORIZON_ATOL * max(1.0, abs(total)):
                # converged; for a finite endpoint add the closing sliver
                if math.isfinite(end):
                    tail = self._piece(prev, end - (end - prev) * 1e-12)
                    if math.isfinite(tail):
                        total += tail
                return np.array(rs), np.array(fs), total
        return np.array(rs), np.array(fs), horizon

    def _piece(self, lo, hi):
        if lo == hi:
            return 0.0
        ts, ws = _gl_nodes(lo, hi, 32)
        try:
            vals = 1.0 / self.warp(ts)
        except (DomainError, FloatingPointError):
            return math.inf if hi > lo else -math.inf
        with np.errstate(over="ignore", invalid="ignore"):
            out = float(np.sum(ws * vals))
        return out

    def null_parameter(self, r):
        """F(r) = int_{p0}^r 1/f by adaptive quadrature (signed)."""
        if not self.warp.a < r < self.warp.b:
            raise DomainError(f"{r} outside ({self.warp.a}, {self.warp.b})")
        return _quad_inverse(self.warp, self.p0, r)

    def _table_value(self, r):
        """F(r) via the cached table plus a local refinement integral."""
        idx = int(np.searchsorted(self._r_tab, r))
        idx = min(max(idx, 1), len(self._r_tab) - 1)
        base_i = idx if abs(self._r_tab[idx] - r) < abs(self._r_tab[idx - 1] - r) else idx - 1
        return self._f_tab[base_i] + self._piece(self._r_tab[base_i], r)

    def h_solve(self, s):
        """h(s): the unique r with F(r) = s, for s in (a_p0, b_p0)."""
        from scipy.optimize import brentq
        if not self.backward_horizon < s < self.forward_horizon:
            raise RangeError(
                f"null parameter {s} outside ({self.backward_horizon}, "
                f"{self.forward_horizon})")
        if s == 0.0:
            return self.p0
        lo, hi = self._bracket(s)
        if lo == hi:
            return lo
        r = brentq(lambda x: self._table_value(x) - s, lo, hi,
                   xtol=1e-13 * max(1.0, abs(lo), abs(hi)), rtol=8.9e-16,
                   maxiter=200)
        return float(r)

    def _bracket(self, s):
        tab_r, tab_f = self._r_tab, self._f_tab
        i = int(np.searchsorted(tab_f, s))
        if 0 < i < len(tab_f):
            return tab_r[i - 1], tab_r[i]
        # beyond the cached table but inside the horizons: extend geometrically
        w, p0 = self.warp, self.p0
        if s > 0:
            end, lo = w.b, tab_r[-1]
            flo = tab_f[-1]
        else:
            end, lo = w.a, tab_r[0]
            flo = tab_f[0]
        direction = 1.0 if s > 0 else -1.0
        r, fval = lo, flo
        for _ in range(4096):
            if math.isfinite(end):
                nxt = r + 0.5 * (end - r)
            else:
                nxt = r + direction * max(1.0, abs(r))
            if not math.isfinite(nxt) or abs(nxt) > 1e300:
                raise RangeError(f"h({s}) beyond representable range")
            fnxt = fval + self._piece(r, nxt)
            if (s > 0 and fnxt >= s) or (s < 0 and fnxt <= s):
                return (r, nxt) if r < nxt else (nxt, r)
            r, fval = nxt, fnxt
        raise RangeError(f"could not bracket h({s})")


def null_parameter(nt: NullTransport, r):
    return nt.null_parameter(r)


def h_solve(nt: NullTransport, s):
    return nt.h_solve(s)


@dataclass(frozen=True)
class ConcavityReport:
    holds_concave: bool
    holds_convex: bool
    worst_margin: float
    worst_t: float
    band: float


def concavity_check(w: WarpSpec, K: float, grid_size: int = 256,
                    window=None) -> ConcavityReport:
    """Sign verdicts for g = f'' - K f on a uniform interior grid.

    Equality cases (model warps) must report both verdicts true, so the
    comparison uses the tolerance band 1e-9 * max(1, |f|) pointwise.
    """
    if not w.has_derivatives:
        raise DomainError("concavity check needs derivatives; "
                          "sampled warp requires the cubic rule")
    lo, hi = window if window is not None else w.finite_window()
    ts = np.linspace(lo, hi, grid_size)
    fv = np.asarray(w(ts))
    g = np.asarray(w.second_derivative(ts)) - K * fv
    band = 1e-9 * np.maximum(1.0, np.abs(fv))
    holds_concave = bool(np.all(g <= band))
    holds_convex = bool(np.all(g >= -band))
    i = int(np.argmax(np.abs(g)))
    return ConcavityReport(holds_concave, holds_convex, float(g[i]), float(ts[i]),
                           float(np.max(band)))


@dataclass(frozen=True)
class SingularityReport:
    lower_bound_K_consistent: bool
    a_finite: bool
    b_finite: bool
    tau_diameter_bound: float
    big_bang: bool
    big_crunch: bool
    upper_bound_possible: bool
    verdicts: tuple


def _endpoint_limits(w: WarpSpec, side):
    """Numerical limits of (f, f') toward one endpoint.

    Returns (f_to_zero, fprime_to_signed_inf, conclusive).
    """
    end = w.a if side == "a" else w.b
    lo, hi = w.finite_window()
    start = lo if side == "a" else hi
    if math.isfinite(end):
        gaps = abs(start - end) * 0.5 ** np.arange(0, 48)
        ts = end + gaps if side == "a" else end - gaps
    else:
        ts = (start - 2.0 ** np.arange(0, 10)) if side == "a" else \
             (start + 2.0 ** np.arange(0, 10))
    # tiny gaps can round onto the endpoint itself; stay strictly inside
    ts = ts[(ts > w.a) & (ts < w.b)]
    if w.kind == "sampled":
        # sampled data may simply not reach the endpoint
        grid_lo, grid_hi = w.samples[0][0], w.samples[-1][0]
        if math.isfinite(end) and min(abs(grid_lo - end), abs(grid_hi - end)) > 1e-6:
            return False, False, False
    with np.errstate(over="ignore", invalid="ignore"):
        fv = np.asarray(w(ts))
        sign = 1.0 if side == "a" else -1.0
        dv = sign * np.asarray(w.derivative(ts)) if w.has_derivatives else None
    f_to_zero = bool(fv[-1] < 1e-6 * max(1.0, fv[0]) and np.all(np.diff(fv) <= 0))
    if dv is None:
        return f_to_zero, False, False
    d_to_inf = bool(dv[-1] > 1e3 * max(1.0, abs(dv[0])) and np.all(np.diff(dv) >= 0))
    return f_to_zero, d_to_inf, True


def singularity_report(w: WarpSpec, K: float) -> SingularityReport:
    """Singularity-theorem style verdicts for a lower curvature bound K.

    Combines the K-concavity necessary condition, the interval finiteness
    consequences for K < 0 and K = 0, big bang / big crunch detection from
    endpoint limits, and the resulting impossibility of upper bounds.
    """
    verdicts = []
    conc = concavity_check(w, K)
    consistent = conc.holds_concave
    if not consistent:
        verdicts.append(f"lower curvature bound {K:g} impossible")
    a_fin, b_fin = math.isfinite(w.a), math.isfinite(w.b)
    diameter = math.inf
    if consistent and K < 0:
        diameter = (w.b - w.a) if (a_fin and b_fin) else math.inf
        if a_fin and b_fin:
            verdicts.append(
                f"time separation bounded by b-a = {w.b - w.a:.9g}; "
                "timelike geodesically incomplete")
        else:
            verdicts.append(
                "inconsistent combination: K-concave positive warp with K < 0 "
                "cannot live on an infinite interval")
    if consistent and K == 0 and not w.is_constant():
        if a_fin or b_fin:
            verdicts.append("at least one endpoint finite: past or future "
                            "timelike geodesically incomplete")
        else:
            verdicts.append(
                "inconsistent combination: non-constant 0-concave positive warp "
                "cannot live on an infinite interval")
    bang = crunch = False
    try:
        f0a, dinfa, oka = _endpoint_limits(w, "a")
        bang = f0a and dinfa
        if not oka:
            verdicts.append("endpoint limit at a inconclusive")
    except DomainError:
        verdicts.append("endpoint limit at a inconclusive")
    try:
        f0b, dinfb, okb = _endpoint_limits(w, "b")
        crunch = f0b and dinfb
        if not okb:
            verdicts.append("endpoint limit at b inconclusive")
    except DomainError:
        verdicts.append("endpoint limit at b inconclusive")
    if bang:
        verdicts.append("big bang singularity at a")
    if crunch:
        verdicts.append("big crunch singularity at b")
    upper_possible = not (bang or crunch)
    if not upper_possible:
        verdicts.append("no timelike curvature bound from above is possible")
    return SingularityReport(consistent, a_fin, b_fin, diameter, bang, crunch,
                             upper_possible, tuple(verdicts))
