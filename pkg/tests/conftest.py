import math

import numpy as np
import pytest

import cvdc


def tms_symplectic(s: float) -> np.ndarray:
    """Two-mode squeezer: correlates x's, anti-correlates p's."""
    ch, sh = math.cosh(s), math.sinh(s)
    return np.array(
        [
            [ch, 0.0, sh, 0.0],
            [0.0, ch, 0.0, -sh],
            [sh, 0.0, ch, 0.0],
            [0.0, -sh, 0.0, ch],
        ]
    )


def random_two_mode_state(rng, mean_scale: float = 0.0, pure: bool = False) -> cvdc.GaussianState:
    """Random physical two-mode state built from symplectics on a thermal core."""
    if pure:
        nu1 = nu2 = 0.5
    else:
        nu1 = 0.5 + rng.exponential(0.3)
        nu2 = 0.5 + rng.exponential(0.3)
    state = cvdc.GaussianState(np.zeros(4), np.diag([nu1, nu1, nu2, nu2]))
    for mode in (0, 1):
        state = cvdc.local_rotate(state, mode, rng.uniform(-math.pi, math.pi))
        state = cvdc.local_squeeze(state, mode, rng.uniform(-0.8, 0.8))
    state = cvdc.apply_symplectic(
        state, cvdc.SymplecticTransform(tms_symplectic(rng.uniform(-1.0, 1.0)))
    )
    for mode in (0, 1):
        state = cvdc.local_rotate(state, mode, rng.uniform(-math.pi, math.pi))
    if mean_scale:
        state = cvdc.GaussianState(rng.normal(scale=mean_scale, size=4), state.cov)
    return state


def random_stats(rng, zero_vxp: bool = False) -> cvdc.ChannelStats:
    """Realizable channel statistics drawn from a random physical state."""
    stats = cvdc.pair_stats(random_two_mode_state(rng), 0, 1)
    if not zero_vxp:
        return stats
    total = stats.v_xm + stats.v_pp
    gap = math.hypot(stats.v_xm - stats.v_pp, 2.0 * stats.v_xp)
    return cvdc.ChannelStats(
        v_xm=(total - gap) / 2.0, v_pp=(total + gap) / 2.0, v_xp=0.0, n0=stats.n0
    )


def random_valid_triple(rng, a1_range=(0.6, 3.0)):
    """Local-variance triple inside the pure-three-mode triangle."""
    a1 = rng.uniform(*a1_range)
    c2 = rng.uniform(0.0, 2.0)
    c3 = rng.uniform(abs(1.0 - c2), min(2.0, 1.0 + c2))
    return a1, 0.5 + c2 * (a1 - 0.5), 0.5 + c3 * (a1 - 0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
