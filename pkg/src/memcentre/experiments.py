"""Synthetic mixtures, a global-minimum oracle and the Table-1 style drivers."""

import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .density import Bandwidth, Sample, as_bandwidth, as_sample, rule_bandwidth
from .errors import DomainError
from .irls import IrlsConfig, solve
from .objective import ObjectiveKind, expected_bits_analytic, m_f_uniform, m_s, objective

GENERATOR = "numpy.random.PCG64"
NORMAL_METHOD = "numpy ziggurat (Generator.normal)"
DEFAULT_GRID_POINTS = 4096
GOLDEN_TOL = 1e-8

INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class Normal:
    mean: float
    sd: float

    def __post_init__(self):
        if not self.sd > 0:
            raise DomainError("normal component needs sd > 0")

    def draw(self, rng, size):
        return rng.normal(self.mean, self.sd, size)

    def __str__(self):
        return f"N({self.mean:g},{self.sd:g})"


@dataclass(frozen=True)
class Uniform:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError("uniform component needs lo < hi")

    def draw(self, rng, size):
        return rng.uniform(self.lo, self.hi, size)

    def __str__(self):
        return f"U({self.lo:g},{self.hi:g})"


_TERM = re.compile(r"((?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\*?([NU])\(([^,()]+),([^,()]+)\)")
_MIXTURE = re.compile(rf"{_TERM.pattern}(?:\+{_TERM.pattern})*")


@dataclass(frozen=True)
class MixtureModel:
    """Finite mixture of Normal and Uniform components."""

    components: Tuple[Tuple[float, object], ...]

    def __post_init__(self):
        comps = tuple((float(w), d) for w, d in self.components)
        if not comps:
            raise DomainError("mixture needs at least one component")
        for w, d in comps:
            if not w > 0:
                raise DomainError("mixture weights must be positive")
            if not isinstance(d, (Normal, Uniform)):
                raise DomainError(f"unsupported component {d!r}")
        if abs(sum(w for w, _ in comps) - 1.0) > 1e-12:
            raise DomainError("mixture weights must sum to 1")
        object.__setattr__(self, "components", comps)

    @property
    def weights(self):
        return np.array([w for w, _ in self.components])

    def __str__(self):
        return "+".join(f"{w:g}{d}" for w, d in self.components)

    @classmethod
    def parse(cls, text):
        """Parse the compact notation ``0.4N(-6,1)+0.6N(6,1)`` / ``1U(0,1)``."""
        spec = text.replace(" ", "")
        if not _MIXTURE.fullmatch(spec):
            raise DomainError(f"cannot parse mixture {text!r}")
        comps = []
        for m in _TERM.finditer(spec):
            try:
                w = float(m.group(1)) if m.group(1) else 1.0
                p, q = float(m.group(3)), float(m.group(4))
            except ValueError:
                raise DomainError(f"cannot parse mixture {text!r}") from None
            comps.append((w, Normal(p, q) if m.group(2) == "N" else Uniform(p, q)))
        return cls(tuple(comps))


PAPER_MODELS = [MixtureModel.parse(s) for s in (
    "0.6N(-1,1)+0.4N(1,1)",
    "0.4N(-6,1)+0.6N(6,1)",
    "0.4N(-1,1)+0.6N(1,1)",
    "0.3N(-6,0.5)+0.7N(6,1)",
    "0.2N(-2,0.5)+0.8N(3,2)",
    "0.6U(-3,-1)+0.4U(0,1)",
    "0.4U(-3,-1)+0.6U(0,1)",
    "0.3U(-3,-1)+0.7U(0,1)",
    "0.2U(-2,-1)+0.8U(1,2)",
    "0.2U(-5,-2)+0.8U(3,4)",
)]


def sample_mixture(model, n, seed):
    """Draw ``n`` observations; output depends only on (model, n, seed)."""
    if not isinstance(model, MixtureModel):
        raise DomainError("model must be a MixtureModel")
    if n < 1:
        raise DomainError("n must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    labels = rng.choice(len(model.components), size=n, p=model.weights)
    out = np.empty(n)
    for k, (_, dist) in enumerate(model.components):
        idx = np.flatnonzero(labels == k)
        out[idx] = dist.draw(rng, idx.size)
    return Sample(out)


def golden_section(f, lo, hi, tol=GOLDEN_TOL):
    """Shrink [lo, hi] around a minimum of ``f`` to width ``tol``.

    Returns the best point evaluated and its value.
    """
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def grid_argmin(sample, h, kind=ObjectiveKind.EXACT_L, grid_points=DEFAULT_GRID_POINTS):
    """Global minimiser of the chosen objective by grid search plus refinement.

    The grid spans [min - h, max + h]; the best grid point (smallest ``a`` on
    ties) is refined by golden-section search on its two neighbouring cells.
    """
    if grid_points < 100:
        raise DomainError("grid_points must be at least 100")
    sample = as_sample(sample)
    h = as_bandwidth(h)
    kind = ObjectiveKind(kind)
    grid = np.linspace(sample.min - h.h, sample.max + h.h, grid_points)
    values = objective(kind, sample, h, grid)
    best = int(np.argmin(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, grid_points - 1)]
    a, v = golden_section(lambda t: objective(kind, sample, h, t), lo, hi)
    if values[best] <= v:
        return float(grid[best]), float(values[best])
    return float(a), float(v)


@dataclass(frozen=True)
class ExperimentRow:
    model: MixtureModel
    seed: int
    n: int
    h: float
    mean: float
    a_r: float
    a_m: float
    m_s_a_r: float
    m_s_a_m: float
    m_s_mean: float
    iterations: int
    stop_reason: str
    generator: str = GENERATOR

    @property
    def gap_solver(self):
        return self.m_s_a_r - self.m_s_a_m

    @property
    def gap_mean(self):
        return self.m_s_mean - self.m_s_a_m


def run_row(model, n, seed, grid_points=DEFAULT_GRID_POINTS):
    sample = sample_mixture(model, n, seed)
    h = rule_bandwidth(sample)
    trace = solve(sample, IrlsConfig(bandwidth=h))
    a_m, v_m = grid_argmin(sample, h, ObjectiveKind.EXACT_L, grid_points)
    return ExperimentRow(
        model=model, seed=seed, n=n, h=h.h, mean=sample.mean,
        a_r=trace.result, a_m=a_m,
        m_s_a_r=m_s(sample, h, trace.result), m_s_a_m=v_m,
        m_s_mean=m_s(sample, h, sample.mean),
        iterations=trace.iterations, stop_reason=trace.stop_reason,
    )


def _run_row_args(args):
    return run_row(*args)


def run_table1(models, n, seeds, grid_points=DEFAULT_GRID_POINTS, workers=None):
    """One row per (model, seed), in input order.

    Rows are independent; ``workers > 1`` computes them in separate
    processes without changing any output.
    """
    models = list(models)
    seeds = list(seeds)
    if not models or not seeds:
        raise DomainError("models and seeds must be non-empty")
    jobs = [(m, n, s, grid_points) for m in models for s in seeds]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_row_args, jobs))
    return [run_row(*job) for job in jobs]


def summarize(rows):
    """Median gaps per model, in first-appearance order."""
    groups = {}
    for row in rows:
        groups.setdefault(str(row.model), []).append(row)
    return [
        {
            "model": name,
            "seeds": len(rs),
            "median_gap_solver": float(np.median([r.gap_solver for r in rs])),
            "median_gap_mean": float(np.median([r.gap_mean for r in rs])),
        }
        for name, rs in groups.items()
    ]


@dataclass(frozen=True)
class ConvergencePoint:
    a: float
    h: float
    expected_bits: float
    deviation: float


def convergence_study(a_values, h_values):
    """|E m_h(X - a) - M_f(a)/ln 2 + log2 h| for X uniform on [-1/2, 1/2]."""
    h_values = [float(h) for h in h_values]
    if any(not h > 0 for h in h_values):
        raise DomainError("h values must be positive")
    if any(b >= a for a, b in zip(h_values, h_values[1:])):
        raise DomainError("h values must be strictly decreasing")
    out = []
    for a in a_values:
        limit = m_f_uniform(a) / math.log(2)
        for h in h_values:
            e = expected_bits_analytic("uniform_example", h, a)
            out.append(ConvergencePoint(float(a), h, e, abs(e - limit + math.log2(h))))
    return out
