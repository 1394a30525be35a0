"""Independent verification paths for the analytic mutual information.

Three routes that never touch the closed-form channel formula:

* a joint-Gaussian determinant identity over (encoded, measured) variables,
* seeded Monte-Carlo sampling of the physical channel with a Gaussian
  plug-in estimator,
* exact symplectic propagation of the measured conditional distribution.

The measured pair is (x of the difference port, p of the sum port) after
the balanced beam splitter; with the package displacement convention its
center responds to the encoded amplitude with unit gain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import GaussianState, beam_splitter_5050, displace, pair_stats
from .densecode import EncodingPolicy

RNG_ALGORITHM = f"numpy.random.PCG64 (numpy {np.__version__})"

_N_SHARDS = 10


@dataclass(frozen=True)
class MCConfig:
    """Monte-Carlo run configuration; ``seed`` alone fixes the stream."""

    samples: int
    seed: int
    bins: int = 64

    def __post_init__(self):
        if self.samples < 1000:
            raise ValueError("need at least 1000 samples")
        if self.bins < 1:
            raise ValueError("bins must be positive")


def _joint_covariance(state: GaussianState, enc: EncodingPolicy) -> np.ndarray:
    """Covariance of (alpha_x, alpha_p, y_x, y_p) for the physical channel."""
    stats = pair_stats(state, 0, 1)
    sx = 0.5 * enc.sigma_x2
    sp = 0.5 * enc.sigma_p2
    return np.array(
        [
            [sx, 0.0, sx, 0.0],
            [0.0, sp, 0.0, sp],
            [sx, 0.0, sx + stats.v_xm, stats.v_xp],
            [0.0, sp, stats.v_xp, sp + stats.v_pp],
        ]
    )


def joint_gaussian_mi(state: GaussianState, enc: EncodingPolicy) -> float:
    """Mutual information from the determinant identity of the joint Gaussian."""
    if state.n_modes != 2:
        raise ValueError("oracle expects a two-mode state")
    if enc.sigma_x2 == 0.0 and enc.sigma_p2 == 0.0:
        return 0.0
    joint = _joint_covariance(state, enc)
    # degenerate encodings (one silent quadrature) drop to the live block
    live = [i for i in range(4) if joint[i, i] > 0.0]
    joint = joint[np.ix_(live, live)]
    k = sum(1 for i in live if i < 2)
    sign, ld_joint = np.linalg.slogdet(joint)
    if sign <= 0:
        raise ValueError("joint covariance is singular")
    ld_alpha = np.linalg.slogdet(joint[:k, :k])[1]
    ld_meas = np.linalg.slogdet(joint[k:, k:])[1]
    return 0.5 * float(ld_alpha + ld_meas - ld_joint)


def conditional_via_symplectic(state: GaussianState, alpha: complex):
    """Distribution of the measured pair for one encoded amplitude.

    Displaces the sender mode, applies the balanced beam splitter, and
    marginalizes onto (x of port one, p of port two). Returns
    (center, covariance); the covariance is independent of ``alpha``.
    """
    if state.n_modes != 2:
        raise ValueError("oracle expects a two-mode state")
    out = beam_splitter_5050(displace(state, 0, alpha), 0, 1)
    idx = [0, 3]  # x of difference port, p of sum port
    center = out.mean[idx]
    cov = out.cov[np.ix_(idx, idx)]
    return center, cov


def _shard_seeds(seed: int, shards: int):
    return np.random.SeedSequence(seed).spawn(shards)


def _plugin_mi(samples: np.ndarray) -> float:
    """Gaussian plug-in estimator on (alpha_x, alpha_p, y_x, y_p) samples."""
    cov = np.cov(samples, rowvar=False)
    live = [i for i in range(4) if cov[i, i] > 0.0]
    k = sum(1 for i in live if i < 2)
    cov = cov[np.ix_(live, live)]
    ld_joint = np.linalg.slogdet(cov)[1]
    ld_alpha = np.linalg.slogdet(cov[:k, :k])[1]
    ld_meas = np.linalg.slogdet(cov[k:, k:])[1]
    return 0.5 * float(ld_alpha + ld_meas - ld_joint)


def monte_carlo_samples(state: GaussianState, enc: EncodingPolicy, rng, n: int):
    """Draw (alpha_x, alpha_p, y_x, y_p) channel samples."""
    stats = pair_stats(state, 0, 1)
    alpha = rng.normal(size=(n, 2)) * np.array(
        [math.sqrt(0.5 * enc.sigma_x2), math.sqrt(0.5 * enc.sigma_p2)]
    )
    noise_cov = np.array([[stats.v_xm, stats.v_xp], [stats.v_xp, stats.v_pp]])
    chol = np.linalg.cholesky(noise_cov)
    noise = rng.normal(size=(n, 2)) @ chol.T
    offset = np.array(
        [
            (state.mean[0] - state.mean[2]) / math.sqrt(2.0),
            (state.mean[1] + state.mean[3]) / math.sqrt(2.0),
        ]
    )
    meas = alpha + noise + offset
    return np.hstack([alpha, meas])


def monte_carlo_mi(state: GaussianState, enc: EncodingPolicy, cfg: MCConfig):
    """Monte-Carlo estimate of the channel mutual information.

    Samples are split into fixed shards with per-shard seeds derived from
    ``cfg.seed``, so the estimate is bit-reproducible and shards could be
    evaluated concurrently. Returns (estimate, stderr) in nats from the
    shard mean and its standard error.
    """
    if state.n_modes != 2:
        raise ValueError("oracle expects a two-mode state")
    if enc.sigma_x2 == 0.0 and enc.sigma_p2 == 0.0:
        return 0.0, 0.0
    per_shard = cfg.samples // _N_SHARDS
    if per_shard < 100:
        raise ValueError("too few samples per shard; raise cfg.samples")
    estimates = np.empty(_N_SHARDS)
    for i, child in enumerate(_shard_seeds(cfg.seed, _N_SHARDS)):
        rng = np.random.default_rng(child)
        estimates[i] = _plugin_mi(monte_carlo_samples(state, enc, rng, per_shard))
    stderr = float(np.std(estimates, ddof=1) / math.sqrt(_N_SHARDS))
    return float(np.mean(estimates)), stderr
