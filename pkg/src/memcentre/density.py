"""Samples, bandwidths and Epanechnikov kernel density estimation."""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSampleError, DomainError

#: Rule-of-thumb constant for the Epanechnikov kernel under a Gaussian reference.
RULE_CONSTANT = 2.35


@dataclass(frozen=True)
class Sample:
    """An ordered, immutable list of finite observations.

    ``std`` uses the N - 1 denominator and is NaN for a single observation.
    """

    values: np.ndarray
    n: int = field(init=False)
    mean: float = field(init=False)
    std: float = field(init=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        if values.size == 0:
            raise DegenerateSampleError("no data")
        if not np.all(np.isfinite(values)):
            raise DomainError("sample values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "n", int(values.size))
        object.__setattr__(self, "mean", float(np.mean(values)))
        std = float(np.std(values, ddof=1)) if values.size > 1 else float("nan")
        object.__setattr__(self, "std", std)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Sample):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    @property
    def min(self):
        return float(self.values.min())

    @property
    def max(self):
        return float(self.values.max())

    def shifted(self, c):
        return Sample(self.values + c)


@dataclass(frozen=True)
class Bandwidth:
    """KDE window width ``h`` and where it came from (``"rule"`` or ``"user"``)."""

    h: float
    source: str = "user"

    def __post_init__(self):
        h = float(self.h)
        if not (np.isfinite(h) and h > 0):
            raise DomainError(f"bandwidth must be a positive finite number, got {self.h!r}")
        if self.source not in ("rule", "user"):
            raise DomainError(f"unknown bandwidth source {self.source!r}")
        object.__setattr__(self, "h", h)

    def __float__(self):
        return self.h


def as_sample(data):
    return data if isinstance(data, Sample) else Sample(data)


def as_bandwidth(h):
    return h if isinstance(h, Bandwidth) else Bandwidth(h, "user")


def epanechnikov(x):
    """Unscaled Epanechnikov kernel 3/4 (1 - x^2) on (-1, 1), zero elsewhere."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("x must be finite")
    out = np.where(np.abs(arr) < 1.0, 0.75 * (1.0 - arr * arr), 0.0)
    return float(out) if np.ndim(x) == 0 else out


def rule_bandwidth(sample):
    """h = 2.35 s N^{-1/5}."""
    sample = as_sample(sample)
    if sample.n < 2:
        raise DegenerateSampleError("rule bandwidth needs at least two observations")
    if not sample.std > 0:
        raise DegenerateSampleError("rule bandwidth is undefined for a constant sample (s = 0)")
    return Bandwidth(RULE_CONSTANT * sample.std * sample.n ** -0.2, "rule")


def kde_eval(sample, h, x):
    """Kernel density estimate (1/(N h)) sum K((x - x_i)/h) at ``x``."""
    sample = as_sample(sample)
    h = as_bandwidth(h).h
    xs = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xs)):
        raise DomainError("x must be finite")
    z = (xs[..., None] - sample.values) / h
    out = np.sum(epanechnikov(z), axis=-1) / (sample.n * h)
    return float(out) if np.ndim(x) == 0 else out
