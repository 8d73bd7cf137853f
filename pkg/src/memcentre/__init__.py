"""Memory centre: the origin minimising the mean binary code length of 1-D data."""

__version__ = "0.1.0"

from .coder import CodeLengthMode, exact_code_length, ideal_code_length, mean_code_length
from .density import Bandwidth, Sample, epanechnikov, kde_eval, rule_bandwidth
from .errors import DegenerateSampleError, DomainError, MemcentreError, QuadratureError
from .experiments import (PAPER_MODELS, ExperimentRow, MixtureModel, Normal, Uniform,
                          convergence_study, grid_argmin, run_table1, sample_mixture)
from .irls import IrlsConfig, IrlsTrace, iterate_once, majorizer_value, solve
from .objective import (ObjectiveKind, expected_bits_analytic, expected_bits_empirical,
                        m_bar_s, m_f_uniform, m_s)
from .special import (EvalGuard, l_bar, l_exact, l_exact_derivative, l_quadrature,
                      l_sqrt_derivative, weight_kernel)
