"""Photon-ensemble Monte Carlo and rotation-angle jitter for the measured setup.

The photon picture is an addition to the classical intensity law: each photon
passes every polarizer independently with the Malus probability
``cos^2(total_angle/N)``, so the survival fraction estimates
``[cos^2(total_angle/N)]^N``.

Random numbers come from Philox used as a counter-based generator. Item ``j``
(a photon or a jitter trial) owns the counter blocks
``[j*B, (j+1)*B)`` with ``B = ceil(N/4)`` (each block yields four 64-bit words),
so results depend on ``(seed, j)`` only, never on chunking or thread count.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import ndtri

from . import polarization as pol
from .zeno import cos_sq, output_ratio

THREADS_ENV = "ZENOPTICS_THREADS"
# cap on 64-bit words drawn per batch (32 MiB)
_MAX_WORDS = 1 << 22


def default_threads():
    value = os.environ.get(THREADS_ENV)
    if value:
        n = int(value)
        if n < 1:
            raise ValueError(f"{THREADS_ENV} must be >= 1, got {value!r}")
        return n
    return min(8, os.cpu_count() or 1)


def _check_seed(seed):
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def uniforms(seed, start, count, width):
    """Open-interval uniforms for items ``start .. start+count-1``, ``width`` per item.

    Returns shape ``(count, width)``. Row ``j`` depends only on
    ``(seed, start + j, width)``.
    """
    blocks = -(-width // 4)
    gen = np.random.Philox(key=_check_seed(seed), counter=start * blocks)
    raw = gen.random_raw(count * blocks * 4).reshape(count, blocks * 4)[:, :width]
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def _batches(start, stop, width):
    step = max(1, _MAX_WORDS // (4 * -(-width // 4)))
    for lo in range(start, stop, step):
        yield lo, min(lo + step, stop)


def _run_chunks(fn, total, chunk_size, threads):
    bounds = [(lo, min(lo + chunk_size, total)) for lo in range(0, total, chunk_size)]
    threads = threads or default_threads()
    if threads == 1 or len(bounds) == 1:
        return [fn(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda b: fn(*b), bounds))


@dataclass(frozen=True)
class MonteCarloConfig:
    photons: int = 10**6
    seed: int = 42
    chunk_size: int = 65536

    def __post_init__(self):
        if isinstance(self.photons, bool) or int(self.photons) != self.photons or self.photons < 1:
            raise ValueError(f"photons must be an integer >= 1, got {self.photons!r}")
        if int(self.chunk_size) != self.chunk_size or self.chunk_size < 1:
            raise ValueError(f"chunk_size must be an integer >= 1, got {self.chunk_size!r}")
        _check_seed(self.seed)


@dataclass(frozen=True)
class JitterConfig:
    sigma: float = 0.0
    trials: int = 10**4
    seed: int = 42
    chunk_size: int = 4096

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma >= 0):
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma!r}")
        if isinstance(self.trials, bool) or int(self.trials) != self.trials or self.trials < 1:
            raise ValueError(f"trials must be an integer >= 1, got {self.trials!r}")
        if int(self.chunk_size) != self.chunk_size or self.chunk_size < 1:
            raise ValueError(f"chunk_size must be an integer >= 1, got {self.chunk_size!r}")
        _check_seed(self.seed)


@dataclass(frozen=True)
class SurvivalEstimate:
    mean: float
    std_error: float
    photons: int


def mc_survival(cfg, mc=None, threads=None):
    """Fraction of photons that pass all ``cfg.N`` polarizers."""
    mc = mc or MonteCarloConfig()
    N = cfg.N
    p = float(cos_sq(cfg.total_angle / N))

    def count(lo, hi):
        survived = 0
        for a, b in _batches(lo, hi, N):
            u = uniforms(mc.seed, a, b - a, N)
            survived += int(np.count_nonzero((u < p).all(axis=1)))
        return survived

    survivors = sum(_run_chunks(count, mc.photons, mc.chunk_size, threads))
    mean = survivors / mc.photons
    return SurvivalEstimate(mean, math.sqrt(mean * (1.0 - mean) / mc.photons), mc.photons)


def mc_survival_exact_check(cfg, mc=None, threads=None):
    """Run :func:`mc_survival` and return ``(estimate, z_score)`` against the closed form.

    With a degenerate estimate (``std_error == 0``) the z-score is 0 when the
    mean equals the exact value and ``inf`` otherwise.
    """
    est = mc_survival(cfg, mc, threads)
    exact = output_ratio(cfg.N, cfg.total_angle)
    if est.std_error == 0.0:
        z = 0.0 if est.mean == exact else math.inf
    else:
        z = (est.mean - exact) / est.std_error
    return est, z


class JitterResult(NamedTuple):
    mean_ratio: float
    std_dev: float
    trials: int

    @property
    def std_error(self):
        return self.std_dev / math.sqrt(self.trials)


def measured_chain_ratios(angles, measure_axis=pol.Y_AXIS):
    """Output ratio of measured chains with per-rotator ``angles`` of shape (trials, N).

    Batched Jones propagation: y-polarized unit input, each rotator followed by
    an ideal polarizer at ``measure_axis``.
    """
    angles = np.atleast_2d(angles)
    proj = pol.polarizer_matrix(measure_axis)
    state = np.broadcast_to(pol.linear_polarized(1.0, pol.Y_AXIS), (angles.shape[0], 2)).copy()
    for k in range(angles.shape[1]):
        c, s = np.cos(angles[:, k]), np.sin(angles[:, k])
        ex, ey = state[:, 0], state[:, 1]
        state = np.stack([c * ex - s * ey, s * ex + c * ey], axis=1)
        state = state @ proj.T
    return np.sum(np.abs(state) ** 2, axis=1)


def jittered_output(cfg, jitter=None, threads=None):
    """Mean and spread of the output ratio when each rotator angle gets a
    Gaussian error of standard deviation ``jitter.sigma``."""
    jitter = jitter or JitterConfig()
    N = cfg.N
    nominal = cfg.total_angle / N

    def run(lo, hi):
        out = []
        for a, b in _batches(lo, hi, N):
            eps = jitter.sigma * ndtri(uniforms(jitter.seed, a, b - a, N))
            out.append(measured_chain_ratios(nominal + eps))
        return np.concatenate(out)

    ratios = np.concatenate(_run_chunks(run, jitter.trials, jitter.chunk_size, threads))
    if np.all(ratios == ratios[0]):
        return JitterResult(float(ratios[0]), 0.0, jitter.trials)
    std = float(np.std(ratios, ddof=1)) if jitter.trials > 1 else 0.0
    return JitterResult(float(np.mean(ratios)), std, jitter.trials)


def jitter_expectation(N, sigma, total_angle=math.pi / 2):
    """Expected output ratio under independent Gaussian angle errors.

    Each stage contributes ``E[cos^2(theta + eps)] = (1 + exp(-2 sigma^2) cos 2theta) / 2``.
    """
    theta = total_angle / N
    return (0.5 * (1.0 + math.exp(-2.0 * sigma**2) * math.cos(2.0 * theta))) ** N
