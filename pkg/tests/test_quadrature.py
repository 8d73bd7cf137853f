import math

import numpy as np
import pytest

from memcentre.errors import QuadratureError
from memcentre.quadrature import integrate


def test_polynomial_exact():
    assert integrate(lambda x: x ** 5 - 3 * x ** 2, -0.7, 1.3, panels=1) == pytest.approx(
        (1.3 ** 6 - 0.7 ** 6) / 6 - (1.3 ** 3 + 0.7 ** 3), abs=1e-12)


def test_log_singularity_inside():
    # int_{-1}^{2} ln|x| dx = 2 ln 2 - 2 - 1
    f = lambda x: np.log(np.abs(np.where(x == 0, 1.0, x)))
    assert integrate(f, -1.0, 2.0, singular=(0.0,)) == pytest.approx(2 * math.log(2) - 3, abs=1e-10)


def test_log_singularity_at_endpoint():
    f = lambda x: np.log(np.where(x == 0, 1.0, x))
    assert integrate(f, 0.0, 1.0, singular=(0.0,)) == pytest.approx(-1.0, abs=1e-10)


def test_reversed_limits():
    assert integrate(np.cos, 1.0, 0.0) == pytest.approx(-math.sin(1.0), abs=1e-13)


def test_non_convergence_reports_estimate():
    rng = np.random.default_rng(0)
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: rng.normal(size=np.shape(x)), 0.0, 1.0, max_doublings=2)
    assert math.isfinite(info.value.estimate)
