"""Bit-length accounting for values coded relative to an origin.

Two notions are kept apart:

* ``ideal_code_length`` is the real-valued log2(max(1, |x|/h));
* ``exact_code_length`` counts the bits of an actual sign-magnitude code of
  the quantised value round(x/h): one sign bit plus the binary length of the
  magnitude, and zero bits for a zero value.  End-of-word framing is not
  charged.
"""

import enum
import math

import numpy as np

from .density import as_sample
from .errors import DomainError

#: Largest |x/h| accepted by the exact coder (signed 64-bit magnitude).
MAX_QUANTUM = 2 ** 63


class CodeLengthMode(str, enum.Enum):
    IDEALIZED = "idealized"
    EXACT = "exact"


def _check_h(h):
    if not (h > 0 and math.isfinite(h)):
        raise DomainError(f"accuracy h must be positive, got {h!r}")


def ideal_code_length(x, h):
    _check_h(h)
    return math.log2(max(1.0, abs(x) / h))


def quantize(x, h):
    """round(x/h), halves away from zero."""
    _check_h(h)
    q = x / h
    if not math.isfinite(q) or abs(q) >= MAX_QUANTUM:
        raise OverflowError(f"x/h = {q!r} is outside the representable range")
    k = math.floor(abs(q) + 0.5)
    return -k if q < 0 else k


def exact_code_length(x, h):
    k = quantize(x, h)
    if k == 0:
        return 0
    return 1 + abs(k).bit_length()


def mean_code_length(sample, h, a, mode=CodeLengthMode.IDEALIZED):
    """Average code length of the residuals x_i - a in the given mode."""
    sample = as_sample(sample)
    _check_h(h)
    mode = CodeLengthMode(mode)
    residuals = sample.values - a
    if mode is CodeLengthMode.IDEALIZED:
        return float(np.mean(np.log2(np.maximum(1.0, np.abs(residuals) / h))))
    return sum(exact_code_length(float(r), h) for r in residuals) / sample.n
