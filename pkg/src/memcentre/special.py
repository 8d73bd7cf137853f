"""The kernel-averaged log function L, its derivative and the Cauchy surrogate.

L(a) = 3/4 * int_{-1}^{1} ln|x - a| (1 - x^2) dx is the logarithmic distance
from ``a`` averaged against the Epanechnikov kernel.  The textbook closed form

    1/2 ln|1 - a^2| + (3a/4 - a^3/4) ln|(1 + a)/(1 - a)| + a^2/2 - 4/3

cancels catastrophically near |a| = 1 and for large |a|.  Collecting the
logarithms gives the equivalent form used here,

    (1 - a)^2 (2 + a)/4 ln|1 - a| + (1 + a)^2 (2 - a)/4 ln(1 + a) + a^2/2 - 4/3,

in which the singular factor appears only as u^2 ln|u| with u = 1 - a,
computed without cancellation.  For |a| > 2 the convergent series

    L(a) = ln|a| - 3/2 * sum_k 1 / (k (2k+1) (2k+3) a^(2k))

is used instead.

All functions accept scalars or array-likes and take |a| first, so evenness
holds bitwise.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import integrate

#: e^{-8/3}; chosen so that the surrogate agrees with L at the origin.
CAUCHY_SCALE = math.exp(-8.0 / 3.0)

L_AT_ZERO = -4.0 / 3.0
L_AT_ONE = math.log(2.0) - 5.0 / 6.0

_SERIES_FROM = 2.0
_SERIES_TERMS = 40
_k = np.arange(1, _SERIES_TERMS + 1, dtype=float)
_L_SERIES = 1.5 / (_k * (2 * _k + 1) * (2 * _k + 3))
_DL_SERIES = 3.0 / ((2 * _k + 1) * (2 * _k + 3))


@dataclass(frozen=True)
class EvalGuard:
    """Half-width of the bands around |a| in {0, 1} treated as singular.

    Exactly at the singular points the limit values are substituted; the
    bands themselves mark where finite-difference checks are unreliable.
    """

    singular_radius: float = 1e-4

    def __post_init__(self):
        if not 0.0 < self.singular_radius < 0.5:
            raise DomainError("singular_radius must lie in (0, 0.5)")

    def in_band(self, a):
        """True where |a| is within the radius of 0 or 1."""
        r = np.abs(np.asarray(a, dtype=float))
        return (r < self.singular_radius) | (np.abs(r - 1.0) < self.singular_radius)


DEFAULT_GUARD = EvalGuard()


def _finite(a, name="a"):
    arr = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


def _out(arr, like):
    return float(arr) if np.ndim(like) == 0 else arr


def _series(r, coefs):
    # Horner in 1/r^2; r > 2 so terms shrink at least like 4^-k
    q = 1.0 / (r * r)
    acc = np.zeros_like(r)
    for c in coefs[::-1]:
        acc = (acc + c) * q
    return acc


def l_exact(a):
    """Closed-form L(a); L(0) = -4/3, L(+-1) = ln 2 - 5/6."""
    arr = _finite(a)
    r = np.abs(arr)
    with np.errstate(divide="ignore", invalid="ignore"):
        u = 1.0 - r
        ulog = np.where(u == 0.0, 0.0, u * u * np.log(np.abs(u)))
        out = 0.25 * (2.0 + r) * ulog + 0.25 * (1.0 + r) ** 2 * (2.0 - r) * np.log1p(r) \
            + 0.5 * r * r + L_AT_ZERO
    far = r > _SERIES_FROM
    if np.any(far):
        rf = r[far]
        out = np.where(far, 0.0, out)
        out[far] = np.log(rf) - _series(rf, _L_SERIES)
    out = np.where(r == 1.0, L_AT_ONE, out)
    return _out(out, a)


def l_exact_derivative(a):
    """dL/da = 3/4 (1 - a^2) ln|(1 + a)/(1 - a)| + 3a/2.

    The derivative is continuous through |a| = 1 where it equals +-3/2.
    """
    arr = _finite(a)
    r = np.abs(arr)
    with np.errstate(divide="ignore", invalid="ignore"):
        # ln|(1+r)/(1-r)| = 2 atanh(r) inside, 2 atanh(1/r) outside the unit interval
        t = np.where(r < 1.0, r, 1.0 / np.maximum(r, 1.0))
        out = 1.5 * (1.0 - r * r) * np.arctanh(t) + 1.5 * r
    far = r > _SERIES_FROM
    if np.any(far):
        rf = r[far]
        out = np.where(far, 0.0, out)
        out[far] = (1.0 + _series(rf, _DL_SERIES)) / rf
    out = np.where(r == 1.0, 1.5, out)
    return _out(np.sign(arr) * out, a)


def l_sqrt_derivative(s):
    """d/ds L(sqrt(s)) for s >= 0, the parametrisation used by some references.

    Equals 3/4 at s = 1 and tends to L''(0)/2 = 3/2 as s -> 0+.
    """
    arr = _finite(s, "s")
    if np.any(arr < 0):
        raise DomainError("s must be non-negative")
    r = np.sqrt(arr)
    with np.errstate(divide="ignore", invalid="ignore"):
        # L'(r) / (2r), with the removable singularity at r = 0 filled in
        out = np.where(r == 0.0, 1.5, np.asarray(l_exact_derivative(r)) / (2.0 * np.where(r == 0.0, 1.0, r)))
    return _out(out, s)


def l_bar(a):
    """Cauchy surrogate 1/2 ln(e^{-8/3} + a^2)."""
    arr = np.abs(_finite(a))
    return _out(0.5 * np.log(CAUCHY_SCALE + arr * arr), a)


def weight_kernel(s):
    """IRLS weight (e^{-8/3} + s)^{-1} for a squared scaled residual s >= 0."""
    arr = _finite(s, "s")
    if np.any(arr < 0):
        raise DomainError("s must be non-negative")
    return _out(1.0 / (CAUCHY_SCALE + arr), s)


def l_quadrature(a, panels=1024, tol=1e-9):
    """L(a) by direct numerical integration of its defining integral.

    Independent of the closed form; used as an oracle.  The log singularity
    at x = a is made a panel endpoint when |a| < 1.
    """
    a = float(_finite(a))
    if panels < 64:
        raise DomainError("panels must be at least 64")
    sing = (a,) if -1.0 <= a <= 1.0 else ()

    def f(x):
        with np.errstate(divide="ignore", invalid="ignore"):
            d = np.abs(x - a)
            return np.where(d == 0.0, 0.0, 0.75 * np.log(d) * (1.0 - x * x))

    return integrate(f, -1.0, 1.0, singular=sing, panels=panels, tol=tol)
