"""Gradient-free minimizers: Nelder-Mead simplex and Powell's method.

Both evaluate the objective through a cache keyed on the exact bytes of the
point, so revisiting a vertex never re-runs an expensive objective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .core import DegenerateSimplex

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0
_INV_GOLDEN = 1.0 / GOLDEN
_MAX_BRACKET_STEPS = 60


@dataclass(frozen=True)
class OptimizerConfig:
    max_iterations: int = 1000
    f_tolerance: float = 1e-12
    x_tolerance: float = 1e-10
    # reflection, expansion, contraction, shrink
    nm_coefficients: tuple = (1.0, 2.0, 0.5, 0.5)
    seed: int = 0
    # Nelder-Mead only: std-dev of seeded noise added to trial points.
    jitter: float = 0.0
    line_tolerance: float = 1e-9

    def __post_init__(self):
        alpha, gamma, rho, sigma = self.nm_coefficients
        if not (alpha > 0 and gamma > 1 and 0 < rho < 1 and 0 < sigma < 1):
            raise ValueError(f"invalid Nelder-Mead coefficients {self.nm_coefficients}")
        if self.f_tolerance <= 0 or self.x_tolerance <= 0 or self.line_tolerance <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")
        if self.jitter < 0:
            raise ValueError("jitter must be non-negative")


class TraceRecord(NamedTuple):
    iteration: int
    f_best: float
    spread: float


class OptimizeResult(NamedTuple):
    x: np.ndarray
    fun: float
    trace: list


class CachedObjective:
    def __init__(self, func: Callable[[np.ndarray], float]):
        self.func = func
        self.cache: dict = {}

    def __call__(self, x: np.ndarray) -> float:
        key = x.tobytes()
        value = self.cache.get(key)
        if value is None:
            value = float(self.func(x.copy()))
            self.cache[key] = value
        return value

    @property
    def evaluations(self) -> int:
        return len(self.cache)


def format_trace(trace: Sequence[TraceRecord]) -> str:
    return "".join(f"{r.iteration}\t{r.f_best!r}\t{r.spread!r}\n" for r in trace)


def standard_simplex_vertices(k: int) -> np.ndarray:
    """Rows ``e_1, ..., e_k`` followed by the origin: ``k + 1`` affinely
    independent points in ``R^k``."""
    if k < 1:
        raise ValueError("dimension must be at least 1")
    return np.vstack([np.eye(k), np.zeros((1, k))])


def simplex_around(x0: Sequence[float], step: float = 0.05) -> np.ndarray:
    """Initial simplex perturbing one coordinate of ``x0`` per vertex
    (relative step, or 0.00025 where the coordinate is zero)."""
    x0 = np.asarray(x0, dtype=np.float64)
    sim = np.tile(x0, (x0.size + 1, 1))
    for i in range(x0.size):
        sim[i + 1, i] = x0[i] * (1 + step) if x0[i] != 0 else 0.00025
    return sim


def _check_simplex(sim: np.ndarray):
    if sim.ndim != 2 or sim.shape[0] != sim.shape[1] + 1:
        raise DegenerateSimplex(f"need k+1 vertices of dimension k, got shape {sim.shape}")
    if not np.all(np.isfinite(sim)):
        raise DegenerateSimplex("simplex has non-finite coordinates")
    edges = sim[1:] - sim[0]
    if np.linalg.matrix_rank(edges) < sim.shape[1]:
        raise DegenerateSimplex("simplex vertices are affinely dependent")


def nelder_mead(objective: Callable[[np.ndarray], float], initial_simplex,
                cfg: OptimizerConfig = OptimizerConfig()) -> OptimizeResult:
    """Minimize ``objective`` starting from ``initial_simplex`` (k+1 rows).

    Stops when both the spread of vertex values is within ``f_tolerance``
    and every vertex lies within ``x_tolerance`` of the best one, or after
    ``max_iterations`` iterations.
    """
    sim = np.array(initial_simplex, dtype=np.float64)
    _check_simplex(sim)
    alpha, gamma, rho, sigma = cfg.nm_coefficients
    f = CachedObjective(objective)
    rng = np.random.default_rng(cfg.seed) if cfg.jitter > 0 else None

    def trial(x):
        if rng is not None:
            x = x + rng.normal(scale=cfg.jitter, size=x.shape)
        return x, f(x)

    fs = np.array([f(v) for v in sim])
    trace = []
    for it in range(cfg.max_iterations + 1):
        order = np.argsort(fs, kind="stable")
        sim, fs = sim[order], fs[order]
        f_spread = fs[-1] - fs[0]
        trace.append(TraceRecord(it, float(fs[0]), float(f_spread)))
        if it == cfg.max_iterations:
            break
        if f_spread <= cfg.f_tolerance and np.max(np.abs(sim[1:] - sim[0])) <= cfg.x_tolerance:
            break

        centroid = sim[:-1].mean(axis=0)
        worst = sim[-1]
        xr, fr = trial(centroid + alpha * (centroid - worst))
        if fr < fs[0]:
            xe, fe = trial(centroid + gamma * (xr - centroid))
            sim[-1], fs[-1] = (xe, fe) if fe < fr else (xr, fr)
            continue
        if fr < fs[-2]:
            sim[-1], fs[-1] = xr, fr
            continue
        if fr < fs[-1]:
            xc, fc = trial(centroid + rho * (xr - centroid))
            if fc <= fr:
                sim[-1], fs[-1] = xc, fc
                continue
        else:
            xc, fc = trial(centroid + rho * (worst - centroid))
            if fc < fs[-1]:
                sim[-1], fs[-1] = xc, fc
                continue
        sim[1:] = sim[0] + sigma * (sim[1:] - sim[0])
        fs[1:] = [f(v) for v in sim[1:]]

    return OptimizeResult(sim[0].copy(), float(fs[0]), trace)


def _bracket(phi, fa: float):
    """Golden-ratio expansion from t=0 until a minimum is enclosed.

    Returns (a, b, c, fb) with b between a and c and phi(b) <= phi(a), phi(c)."""
    a, b = 0.0, 1.0
    fb = phi(b)
    if fb > fa:
        a, b, fa, fb = b, a, fb, fa
    c = b + GOLDEN * (b - a)
    fc = phi(c)
    steps = 0
    while fb > fc and steps < _MAX_BRACKET_STEPS:
        a, b, c = b, c, c + GOLDEN * (c - b)
        fa, fb, fc = fb, fc, phi(c)
        steps += 1
    return a, b, c, fb


def _golden_section(phi, a: float, b: float, c: float, fb: float, tol: float):
    lo, hi = min(a, c), max(a, c)
    # place the second probe in the larger sub-interval
    if hi - b > b - lo:
        x1, f1 = b, fb
        x2 = b + (1 - _INV_GOLDEN) * (hi - b)
        f2 = phi(x2)
    else:
        x2, f2 = b, fb
        x1 = b - (1 - _INV_GOLDEN) * (b - lo)
        f1 = phi(x1)
    while hi - lo > tol * (abs(x1) + abs(x2)) + 1e-12:
        if f2 < f1:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_GOLDEN * (hi - lo)
            f2 = phi(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_GOLDEN * (hi - lo)
            f1 = phi(x1)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _line_minimize(f, x: np.ndarray, fx: float, direction: np.ndarray, tol: float):
    def phi(t):
        return f(x + t * direction)

    a, b, c, fb = _bracket(phi, fx)
    t, ft = _golden_section(phi, a, b, c, fb, tol)
    if ft < fx:
        return x + t * direction, ft
    return x, fx


def powell(objective: Callable[[np.ndarray], float], x0,
           cfg: OptimizerConfig = OptimizerConfig()) -> OptimizeResult:
    """Powell's conjugate-direction method.

    Each iteration line-minimizes along every direction in turn, then tries
    the net displacement as a new direction, replacing the direction of
    largest decrease when the usual acceptance test passes. Stops once a
    full sweep lowers f by at most ``f_tolerance * (1 + |f|)``.
    """
    x = np.array(x0, dtype=np.float64).ravel()
    f = CachedObjective(objective)
    fx = f(x)
    directions = np.eye(x.size)
    trace = [TraceRecord(0, fx, 0.0)]
    for it in range(1, cfg.max_iterations + 1):
        x_start, f_start = x.copy(), fx
        biggest, big_idx = 0.0, 0
        for i in range(x.size):
            f_before = fx
            x, fx = _line_minimize(f, x, fx, directions[i], cfg.line_tolerance)
            if f_before - fx > biggest:
                biggest, big_idx = f_before - fx, i
        decrease = f_start - fx
        if decrease <= cfg.f_tolerance * (1.0 + abs(fx)):
            trace.append(TraceRecord(it, fx, decrease))
            break

        new_dir = x - x_start
        x_ext = x + new_dir
        f_ext = f(x_ext)
        if f_ext < f_start:
            t = (2.0 * (f_start - 2.0 * fx + f_ext) * (f_start - fx - biggest) ** 2
                 - biggest * (f_start - f_ext) ** 2)
            if t < 0.0:
                x, fx = _line_minimize(f, x, fx, new_dir, cfg.line_tolerance)
                directions[big_idx] = directions[-1]
                directions[-1] = new_dir
        trace.append(TraceRecord(it, fx, f_start - fx))
    return OptimizeResult(x, fx, trace)
