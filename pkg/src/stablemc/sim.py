"""Seeded Monte Carlo sampling of the channel noise laws and KS validation.

Reproducibility contract: a batch is a function of (seed, count, model)
only.  Draws are generated in fixed 2^16-sample blocks, each from its own
counter-based Philox stream derived from the seed, so the assembled array
is bit-identical no matter how many workers computed the blocks or in what
order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc as _erfc

from . import stable
from .channels import ChannelConfig, ChannelNoiseModel, component_scales, noise_model
from .stable import StableParams

__all__ = [
    "SampleBatch",
    "GofReport",
    "sample_levy",
    "sample_channel",
    "sample_stable_cms",
    "ks_test",
    "ks_statistic_two_sample",
    "ks_threshold",
    "fold_observable_b",
]

_BLOCK = 1 << 16
# asymptotic two-sided critical coefficient at ~1% significance
KS_COEFFICIENT = 1.63


@dataclass(frozen=True)
class SampleBatch:
    """Draws of one noise term plus the metadata that reproduces them."""

    values: np.ndarray
    seed: int
    count: int
    model: ChannelNoiseModel

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if len(v) != self.count:
            raise ValueError("SampleBatch: count must equal len(values)")
        if not np.all(np.isfinite(v)):
            raise ValueError("SampleBatch: values must be finite")
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class GofReport:
    """Kolmogorov-Smirnov goodness-of-fit summary."""

    ks_statistic: float
    sample_count: int
    threshold: float
    passed: bool

    def __post_init__(self):
        if not 0.0 <= self.ks_statistic <= 1.0:
            raise ValueError("GofReport: ks_statistic must lie in [0, 1]")
        if self.sample_count <= 0:
            raise ValueError("GofReport: sample_count must be positive")
        if self.passed != (self.ks_statistic <= self.threshold):
            raise ValueError("GofReport: passed must equal ks_statistic <= threshold")


def _block_generator(seed: int, stream: int, block: int) -> np.random.Generator:
    # counter-based: every (seed, stream, block) triple owns its own Philox
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(stream, block))
    return np.random.Generator(np.random.Philox(ss))


def _map_blocks(fill_block, n: int, workers: int, out: np.ndarray) -> np.ndarray:
    n_blocks = (n + _BLOCK - 1) // _BLOCK
    def run(b):
        lo = b * _BLOCK
        hi = min(lo + _BLOCK, n)
        out[lo:hi] = fill_block(b, hi - lo)
    if workers <= 1:
        for b in range(n_blocks):
            run(b)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(n_blocks)))
    return out


def _normal_blocks(seed: int, stream: int, n: int, workers: int) -> np.ndarray:
    def fill(block, m):
        gen = _block_generator(seed, stream, block)
        g = gen.standard_normal(m)
        # a draw of exactly 0.0 would map to an infinite hitting time;
        # redraw by consuming further values of the same block stream
        while np.any(g == 0.0):
            idx = np.nonzero(g == 0.0)[0]
            g[idx] = gen.standard_normal(len(idx))
        return g
    return _map_blocks(fill, n, workers, np.empty(n))


def _levy_values(mu: float, c: float, seed: int, stream: int, n: int,
                 workers: int) -> np.ndarray:
    g = _normal_blocks(seed, stream, n, workers)
    return mu + c / (g * g)


def sample_levy(mu: float, c: float, n: int, seed: int, workers: int = 1) -> SampleBatch:
    """Draw Levy(mu, c) via the exact identity X = mu + c/G^2, G ~ N(0,1)."""
    if c <= 0:
        raise ValueError(f"sample_levy: requires c > 0, got c={c!r}")
    if n <= 0:
        raise ValueError(f"sample_levy: requires n > 0, got n={n!r}")
    values = _levy_values(mu, c, seed, 0, n, workers)
    support = "nonnegative" if mu == 0.0 else "full_line"
    model = ChannelNoiseModel(params=StableParams(mu, c, 0.5, 1.0),
                              symmetric=False, support=support)
    return SampleBatch(values=values, seed=int(seed), count=int(n), model=model)


def sample_channel(cfg: ChannelConfig, n: int, seed: int, workers: int = 1) -> SampleBatch:
    """Draw the channel noise by the defining construction: kind A a single
    hitting time, kinds B and C the difference of two independent hitting
    times (second release minus first)."""
    if n <= 0:
        raise ValueError(f"sample_channel: requires n > 0, got n={n!r}")
    model = noise_model(cfg)
    if cfg.kind == "A":
        (c,) = component_scales(cfg)
        values = _levy_values(0.0, c, seed, 0, n, workers)
    else:
        c_first, c_second = component_scales(cfg)
        t_first = _levy_values(0.0, c_first, seed, 1, n, workers)
        t_second = _levy_values(0.0, c_second, seed, 2, n, workers)
        values = t_second - t_first
    return SampleBatch(values=values, seed=int(seed), count=int(n), model=model)


def sample_stable_cms(params: StableParams, n: int, seed: int,
                      workers: int = 1) -> np.ndarray:
    """Chambers-Mallows-Stuck draws of S(mu, c, alpha, beta), alpha != 1.

    Cross-check sampler for the difference construction: uses the
    (V, W)-representation with B = arctan(beta tan(pi alpha/2))/alpha and
    amplitude (1 + beta^2 tan^2(pi alpha/2))^(1/(2 alpha)).
    """
    if params.alpha == 1.0:
        raise ValueError("sample_stable_cms: alpha = 1 (log branch) not supported")
    if n <= 0:
        raise ValueError(f"sample_stable_cms: requires n > 0, got n={n!r}")
    alpha, beta = params.alpha, params.beta
    tan_pa2 = 0.0 if alpha == 2.0 else (1.0 if alpha == 0.5 else math.tan(math.pi * alpha / 2.0))
    B = math.atan(beta * tan_pa2) / alpha
    S = (1.0 + beta * beta * tan_pa2 * tan_pa2) ** (1.0 / (2.0 * alpha))
    inv_a = 1.0 / alpha

    def fill(block, m):
        g = _block_generator(seed, 3, block)
        V = g.uniform(-math.pi / 2.0, math.pi / 2.0, m)
        W = g.exponential(1.0, m)
        while np.any(W == 0.0):
            idx = np.nonzero(W == 0.0)[0]
            W[idx] = g.exponential(1.0, len(idx))
        x = (S * np.sin(alpha * (V + B)) / np.cos(V) ** inv_a
             * (np.cos(V - alpha * (V + B)) / W) ** ((1.0 - alpha) * inv_a))
        return x

    std = _map_blocks(fill, n, workers, np.empty(n))
    return params.mu + params.c * std


def ks_threshold(n: int, coefficient: float = KS_COEFFICIENT) -> float:
    """Two-sided one-sample critical value c/sqrt(n) (default c = 1.63,
    the asymptotic ~1% point)."""
    return coefficient / math.sqrt(n)


def _model_cdf_evaluator(params: StableParams):
    """Vectorized CDF for KS duty; exact closed forms where they exist and a
    dense monotone interpolation of exact quadrature values otherwise."""
    if params.alpha == 0.5 and abs(params.beta) == 1.0:
        sign = params.beta

        def f(x):
            x = np.asarray(x, dtype=float)
            u = sign * (x - params.mu) / params.c
            out = np.zeros_like(u)
            pos = u > 0
            out[pos] = _erfc(np.sqrt(0.5 / u[pos]))
            return out if sign > 0 else 1.0 - out
        return f
    if params.alpha == 2.0:
        def f(x):
            x = np.asarray(x, dtype=float)
            return 0.5 * _erfc(-(x - params.mu) / (2.0 * params.c))
        return f
    if params.alpha == 0.5:
        table = stable.HalfStableCdf(params.beta)

        def f(x):
            u = (np.asarray(x, dtype=float) - params.mu) / params.c
            return table(u)
        return f
    def f(x):
        return np.array([stable.cdf(float(v), params) for v in np.asarray(x, dtype=float)])
    return f


def ks_test(batch: SampleBatch, model: ChannelNoiseModel | None = None,
            threshold_coefficient: float = KS_COEFFICIENT) -> GofReport:
    """Two-sided one-sample KS test of a batch against a model law."""
    if batch.count == 0:
        raise ValueError("ks_test: batch must be non-empty")
    params = (model or batch.model).params
    x = np.sort(batch.values)
    f = _model_cdf_evaluator(params)(x)
    n = len(x)
    i = np.arange(1, n + 1)
    d = float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))
    thr = ks_threshold(n, threshold_coefficient)
    return GofReport(ks_statistic=d, sample_count=n, threshold=thr, passed=d <= thr)


def ks_statistic_two_sample(a: np.ndarray, b: np.ndarray) -> float:
    """Two-sample KS statistic sup |F_a - F_b| (sorting + counting)."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    both = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, both, side="right") / len(a)
    cdf_b = np.searchsorted(b, both, side="right") / len(b)
    return float(np.max(np.abs(cdf_a - cdf_b)))


def fold_observable_b(l_x: float, batch: SampleBatch) -> SampleBatch:
    """Receiver observable of channel B: element-wise |l_x + noise|.

    The fold belongs to the receiver model, not the noise law; the returned
    batch keeps the noise model as generation metadata.
    """
    if batch.model.params.beta != 0.0 or batch.model.params.alpha != 0.5:
        raise ValueError("fold_observable_b: batch must come from a kind-B model")
    values = np.abs(l_x + batch.values)
    return SampleBatch(values=values, seed=batch.seed, count=batch.count,
                       model=batch.model)
