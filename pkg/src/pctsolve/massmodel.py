"""Position-dependent mass profiles and their mapping functions.

Built-in profiles (alpha > 0, q > 0):

* ``asymptotically_vanishing``  m(x) = alpha^2 / (x^2 + q), on the whole line;
* ``tanh_sq``                   m(x) = tanh_q(alpha x)^2, on x > ln(q)/(2 alpha);
* ``coth_sq``                   m(x) = coth_q(alpha x)^2, on x > ln(q)/(2 alpha);

plus ``custom`` profiles defined by an expression string evaluated with
second-order jets.  Each profile carries the strictly increasing mapping
function f(x) = int sqrt(m) dx (closed form for the built-ins, adaptive
Simpson for customs) together with its inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import exprlang, qmath
from .errors import ConfigError, DomainError, PctError
from .exprlang import Jet2

ASYMPTOTICALLY_VANISHING = "asymptotically_vanishing"
TANH_SQ = "tanh_sq"
COTH_SQ = "coth_sq"
CUSTOM = "custom"

BUILTIN_KINDS = (ASYMPTOTICALLY_VANISHING, TANH_SQ, COTH_SQ)

_VALIDATION_SAMPLES = 401


# ---------------------------------------------------------------------------
# overflow-safe q-hyperbolics (valid for arbitrarily large |u|)


def _tanh_q(u, q):
    u = np.asarray(u, dtype=float)
    e = np.exp(-2.0 * np.abs(u))
    pos = u >= 0
    out = np.empty_like(e)
    out[pos] = (1.0 - q * e[pos]) / (1.0 + q * e[pos])
    out[~pos] = (e[~pos] - q) / (e[~pos] + q)
    return out


def _coth_q(u, q):
    return 1.0 / _tanh_q(u, q)


def _inv_cosh_sq_q(u, q):
    """1/cosh_q(u)^2 without overflow."""
    u = np.asarray(u, dtype=float)
    e = np.exp(-2.0 * np.abs(u))
    pos = u >= 0
    out = np.empty_like(e)
    out[pos] = 4.0 * e[pos] / (1.0 + q * e[pos]) ** 2
    out[~pos] = 4.0 * e[~pos] / (e[~pos] + q) ** 2
    return out


def _inv_sinh_sq_q(u, q):
    """1/sinh_q(u)^2 without overflow (increasing branch, sinh_q != 0)."""
    u = np.asarray(u, dtype=float)
    e = np.exp(-2.0 * np.abs(u))
    pos = u >= 0
    out = np.empty_like(e)
    out[pos] = 4.0 * e[pos] / (1.0 - q * e[pos]) ** 2
    out[~pos] = 4.0 * e[~pos] / (e[~pos] - q) ** 2
    return out


def _log_cosh_q(u, q):
    u = np.asarray(u, dtype=float)
    e = np.exp(-2.0 * np.abs(u))
    pos = u >= 0
    out = np.empty_like(e)
    out[pos] = u[pos] - math.log(2.0) + np.log1p(q * e[pos])
    out[~pos] = -u[~pos] - math.log(2.0) + np.log(e[~pos] + q)
    return out


def _log_sinh_q(u, q):
    """ln sinh_q(u) on the branch where sinh_q > 0 (u > ln(q)/2)."""
    u = np.asarray(u, dtype=float)
    e = np.exp(-2.0 * np.abs(u))
    pos = u >= 0
    out = np.empty_like(e)
    with np.errstate(invalid="ignore", divide="ignore"):
        out[pos] = u[pos] - math.log(2.0) + np.log1p(-q * e[pos])
        out[~pos] = -u[~pos] - math.log(2.0) + np.log(e[~pos] - q)
    return out


def _maybe_scalar(a):
    a = np.asarray(a)
    return float(a) if a.ndim == 0 else a


# ---------------------------------------------------------------------------
# adaptive Simpson quadrature (custom mapping functions)


def adaptive_simpson(f, a, b, tol=1e-11, max_depth=50):
    """Adaptive Simpson integral of f over [a, b] to absolute tolerance tol."""
    if a == b:
        return 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0

    def simpson(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, eps, depth):
        xm = 0.5 * (x0 + x2)
        xl, xr = 0.5 * (x0 + xm), 0.5 * (xm + x2)
        fl, fr = f(xl), f(xr)
        left = simpson(x0, xm, f0, fl, f1)
        right = simpson(xm, x2, f1, fr, f2)
        if depth >= max_depth or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return recurse(x0, xm, f0, fl, f1, left, eps / 2.0, depth + 1) + recurse(
            xm, x2, f1, fr, f2, right, eps / 2.0, depth + 1
        )

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = simpson(a, b, fa, fm, fb)
    return sign * recurse(a, b, fa, fm, fb, whole, tol, 0)


# ---------------------------------------------------------------------------
# mass profiles


@dataclass(frozen=True)
class MassProfile:
    """A positive, twice-differentiable mass function m(x).

    ``x_min``/``x_max`` bound the working domain; for built-ins they may be
    None (unbounded on that side, up to the profile's natural limits).
    """

    kind: str
    alpha: float = 1.0
    q: float = 1.0
    x_min: Optional[float] = None
    x_max: Optional[float] = None
    expression: Optional[str] = None
    parameters: dict = field(default_factory=dict)

    # constructors ----------------------------------------------------------

    @classmethod
    def asymptotically_vanishing(cls, alpha, q, x_min=None, x_max=None):
        return cls(ASYMPTOTICALLY_VANISHING, alpha, q, x_min, x_max)

    @classmethod
    def tanh_sq(cls, alpha, q, x_min=None, x_max=None):
        return cls(TANH_SQ, alpha, q, x_min, x_max)

    @classmethod
    def coth_sq(cls, alpha, q, x_min=None, x_max=None):
        return cls(COTH_SQ, alpha, q, x_min, x_max)

    @classmethod
    def custom(cls, expression, x_min, x_max, parameters=None):
        return cls(
            CUSTOM,
            x_min=x_min,
            x_max=x_max,
            expression=expression,
            parameters=dict(parameters or {}),
        )

    def __post_init__(self):
        if self.kind not in BUILTIN_KINDS + (CUSTOM,):
            raise ConfigError(f"unknown mass profile kind {self.kind!r}")
        if self.kind == CUSTOM:
            if self.expression is None:
                raise ConfigError("custom mass profile requires an expression")
            if self.x_min is None or self.x_max is None:
                raise ConfigError("custom mass profile requires a finite domain")
            object.__setattr__(self, "_ast", exprlang.parse(self.expression))
        else:
            if not self.alpha > 0:
                raise ConfigError("mass profile requires alpha > 0")
            if not self.q > 0:
                raise ConfigError("built-in mass profiles require q > 0")
        if self.x_min is not None and self.x_max is not None:
            if not self.x_min < self.x_max:
                raise ConfigError("mass profile domain is empty")
        lo, hi = self.natural_domain()
        for name, v in (("x_min", self.x_min), ("x_max", self.x_max)):
            if v is not None and not (lo < v < hi or v == hi == math.inf):
                raise ConfigError(
                    f"{name}={v} outside the profile's natural domain ({lo}, {hi})"
                )
        self._validate_by_sampling()

    # geometry --------------------------------------------------------------

    def branch_point(self) -> Optional[float]:
        """Zero of sinh_q(alpha x) bounding the tanh_sq/coth_sq domains."""
        if self.kind in (TANH_SQ, COTH_SQ):
            return math.log(self.q) / (2.0 * self.alpha)
        return None

    def natural_domain(self):
        if self.kind in (TANH_SQ, COTH_SQ):
            return (self.branch_point(), math.inf)
        if self.kind == CUSTOM:
            return (-math.inf, math.inf)
        return (-math.inf, math.inf)

    def domain(self):
        lo, hi = self.natural_domain()
        if self.x_min is not None:
            lo = self.x_min
        if self.x_max is not None:
            hi = self.x_max
        return lo, hi

    def _check_in_domain(self, x):
        lo, hi = self.domain()
        x = np.asarray(x, dtype=float)
        eps = 1e-12 * (1.0 + np.abs(x))
        if np.any(x < lo - eps) or np.any(x > hi + eps):
            raise DomainError(
                f"x outside the {self.kind} profile domain [{lo}, {hi}]"
            )

    def _validate_by_sampling(self):
        lo, hi = self.domain()
        if not (math.isfinite(lo) and math.isfinite(hi)):
            # unbounded built-in: probe a representative box
            bp = self.branch_point()
            lo = max(lo, -10.0 / self.alpha) if bp is None else bp + 1e-3 / self.alpha
            hi = min(hi, 10.0 / self.alpha) if math.isinf(hi) else hi
            hi = max(hi, lo + 1.0)
        xs = np.linspace(lo, hi, _VALIDATION_SAMPLES)
        try:
            jet = self.mass_jet(xs)
        except PctError as exc:
            raise ConfigError(f"mass profile not evaluable on its domain: {exc}")
        vals = np.asarray(jet.value, dtype=float)
        if not np.all(np.isfinite(vals)) or not np.all(
            np.isfinite(np.asarray(jet.d1, dtype=float))
        ) or not np.all(np.isfinite(np.asarray(jet.d2, dtype=float))):
            raise ConfigError("mass profile has non-finite values on its domain")
        if not np.all(vals > 0):
            raise ConfigError("mass profile must be positive on its domain")

    # evaluation ------------------------------------------------------------

    def mass_jet(self, x) -> Jet2:
        """(m, m', m'') at x; closed forms for built-ins, jets for customs."""
        self._check_in_domain(x)
        x = np.asarray(x, dtype=float)
        a, q = self.alpha, self.q
        if self.kind == ASYMPTOTICALLY_VANISHING:
            d = x * x + q
            m = a * a / d
            m1 = -2.0 * a * a * x / d**2
            m2 = a * a * (6.0 * x * x - 2.0 * q) / d**3
        elif self.kind == TANH_SQ:
            u = a * x
            t = _tanh_q(u, q)
            ic2 = _inv_cosh_sq_q(u, q)
            m = t * t
            m1 = 2.0 * a * q * t * ic2
            m2 = 2.0 * a * a * q * (1.0 - 3.0 * t * t) * ic2
        elif self.kind == COTH_SQ:
            u = a * x
            ct = _coth_q(u, q)
            is2 = _inv_sinh_sq_q(u, q)
            m = ct * ct
            m1 = -2.0 * a * q * ct * is2
            m2 = 2.0 * a * a * q * (3.0 * ct * ct - 1.0) * is2
        else:
            jet = exprlang.eval_jet(self._ast, x, self.parameters)
            # constant sub-expressions collapse to scalars; restore x's shape
            comps = [
                np.broadcast_to(np.asarray(c, dtype=float), x.shape).copy()
                if x.ndim
                else float(np.asarray(c, dtype=float))
                for c in (jet.value, jet.d1, jet.d2)
            ]
            return Jet2(*comps)
        return Jet2(_maybe_scalar(m), _maybe_scalar(m1), _maybe_scalar(m2))

    def mass(self, x):
        return self.mass_jet(x).value

    def correction(self, x):
        """PCT correction potential (1/8m)[m''/m - (7/4)(m'/m)^2]."""
        jet = self.mass_jet(x)
        m, m1, m2 = jet.value, jet.d1, jet.d2
        r = m1 / m
        return (m2 / m - 1.75 * r * r) / (8.0 * m)


def mass_jet(profile: MassProfile, x) -> Jet2:
    return profile.mass_jet(x)


def correction_potential(profile: MassProfile, x):
    return profile.correction(x)


# ---------------------------------------------------------------------------
# mapping functions


_INVERSE_TABLE_SIZE = 1025
_INVERSE_BISECTION_TOL = 1e-12


class MappingFunction:
    """The strictly increasing coordinate change y = f(x) with f' = sqrt(m).

    Closed forms for the built-in profiles; adaptive Simpson anchored at the
    domain midpoint, plus an eagerly built inverse-interpolation table, for
    custom profiles.
    """

    def __init__(self, profile: MassProfile):
        self.profile = profile
        self.anchor = None
        self._table_x = None
        self._table_f = None
        if profile.kind == CUSTOM:
            lo, hi = profile.domain()
            self.anchor = 0.5 * (lo + hi)
            xs = np.linspace(lo, hi, _INVERSE_TABLE_SIZE)
            sqrt_m = lambda t: math.sqrt(float(profile.mass(t)))
            segs = [
                adaptive_simpson(sqrt_m, xs[i], xs[i + 1])
                for i in range(len(xs) - 1)
            ]
            fs = np.concatenate([[0.0], np.cumsum(segs)])
            fs -= np.interp(self.anchor, xs, fs)
            self._table_x = xs
            self._table_f = fs

    # forward ---------------------------------------------------------------

    def forward(self, x):
        """y = f(x)."""
        p = self.profile
        p._check_in_domain(x)
        x = np.asarray(x, dtype=float)
        a, q = p.alpha, p.q
        if p.kind == ASYMPTOTICALLY_VANISHING:
            s = np.sqrt(x * x + q)
            y = a * np.where(x >= 0, np.log(x + s), np.log(q) - np.log(s - x))
        elif p.kind == TANH_SQ:
            y = _log_cosh_q(a * x, q) / a
        elif p.kind == COTH_SQ:
            y = _log_sinh_q(a * x, q) / a
        else:
            y = self._forward_custom(x)
        return _maybe_scalar(y)

    def _forward_custom(self, x):
        sqrt_m = lambda t: math.sqrt(float(self.profile.mass(t)))
        flat = np.atleast_1d(x).ravel()
        order = np.argsort(flat)
        out = np.empty_like(flat)
        prev_x, prev_f = self.anchor, 0.0
        for idx in order:
            prev_f = prev_f + adaptive_simpson(sqrt_m, prev_x, float(flat[idx]))
            prev_x = float(flat[idx])
            out[idx] = prev_f
        return out.reshape(np.shape(x))

    # range -----------------------------------------------------------------

    def y_range(self):
        """Attainable (y_lo, y_hi) given the profile's domain bounds."""
        p = self.profile
        lo, hi = p.domain()
        if p.kind == CUSTOM:
            return float(self._table_f[0]), float(self._table_f[-1])
        a, q = p.alpha, p.q
        if math.isfinite(lo):
            y_lo = float(self.forward(lo))
        elif p.kind == ASYMPTOTICALLY_VANISHING:
            y_lo = -math.inf
        elif p.kind == TANH_SQ:
            y_lo = math.log(math.sqrt(q)) / a  # infimum at the branch point
        else:
            y_lo = -math.inf  # coth_sq: ln sinh_q -> -inf at the branch point
        y_hi = float(self.forward(hi)) if math.isfinite(hi) else math.inf
        return y_lo, y_hi

    # inverse ---------------------------------------------------------------

    def inverse(self, y):
        """The unique x in the domain with f(x) = y."""
        y = np.asarray(y, dtype=float)
        y_lo, y_hi = self.y_range()
        eps = 1e-9 * (1.0 + np.abs(y))
        if np.any(y < y_lo - eps) or np.any(y > y_hi + eps):
            raise DomainError(f"y outside the mapping range [{y_lo}, {y_hi}]")
        p = self.profile
        a, q = p.alpha, p.q
        if p.kind == ASYMPTOTICALLY_VANISHING:
            x = qmath.sinh_q(y / a, q)
        elif p.kind == TANH_SQ:
            x = self._inv_exp(y, qmath.arccosh_q)
        elif p.kind == COTH_SQ:
            x = self._inv_exp(y, qmath.arcsinh_q)
        else:
            x = self._inverse_custom(y)
        lo, hi = p.domain()
        x = np.clip(x, lo, hi)
        return _maybe_scalar(x)

    def _inv_exp(self, y, arc):
        """x = arc(e^{alpha y})/alpha, switching to the asymptote for large y."""
        a, q = self.profile.alpha, self.profile.q
        u = a * np.asarray(y, dtype=float)
        if arc is qmath.arccosh_q:
            # guard rounding just below the branch value e^{alpha y} = sqrt(q)
            u = np.maximum(u, 0.5 * math.log(q))
            lo_arg = math.sqrt(q) * (1.0 + 4e-16)
        else:
            lo_arg = 0.0
        big = u > 350.0
        arg = np.maximum(np.exp(np.minimum(u, 350.0)), lo_arg)
        x = np.where(big, y + math.log(2.0) / a, np.asarray(arc(arg, q)) / a)
        return x

    def _inverse_custom(self, y):
        flat = np.atleast_1d(y).ravel()
        out = np.empty_like(flat)
        for i, yi in enumerate(flat):
            j = int(np.searchsorted(self._table_f, yi))
            j = min(max(j, 1), len(self._table_f) - 1)
            lo, hi = float(self._table_x[j - 1]), float(self._table_x[j])
            f_lo = float(self._table_f[j - 1]) - yi
            for _ in range(200):
                if hi - lo <= _INVERSE_BISECTION_TOL * (1.0 + abs(lo)):
                    break
                mid = 0.5 * (lo + hi)
                if (float(self.forward(mid)) - yi) * (f_lo if f_lo != 0 else -1.0) > 0:
                    lo = mid
                else:
                    hi = mid
            out[i] = 0.5 * (lo + hi)
        return out.reshape(np.shape(y))


def map_forward(mapping: MappingFunction, x):
    return mapping.forward(x)


def map_inverse(mapping: MappingFunction, y):
    return mapping.inverse(y)
