"""Multipartite advantage bounds: one sender can beat the single-mode
benchmarks with at most one receiver.

The variance-product bound holds for arbitrary per-pair local squeezing
applied after the per-pair rotations (the pipeline order); the strict
monogamy assertion is proven for states with vanishing (x-, p+) cross
correlation in both pairs and for permutation-symmetric states, and is
downgraded to an observation elsewhere.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import GaussianState, pair_stats, reduce_modes
from .errors import SingleQuadratureRegimeError, SqueezeBracketError, UnprovenRegimeWarning
from .optimize import (
    _scan_cells,
    minimize_variance_product,
    optimal_rotation,
    rotate_pair,
    squeeze_pair,
    zero_displacement,
)
from .densecode import EnergyBudget, advantage

ADVANTAGE_BOUND = 1.0 / 16.0
PRODUCT_FLOOR = 1.0 / 256.0  # (1/16)^2, equal per-pair rotations
HYPOTHESIS_TOL = 1e-10


@dataclass(frozen=True)
class PairAssignment:
    """Sender/receiver layout with per-pair local operations.

    Each pair applies its rotation {theta, -theta} first and its squeezes
    (sender, receiver) second, matching the optimization pipeline order.
    """

    sender: int
    receiver_b: int
    receiver_c: int
    squeeze_b: tuple = (0.0, 0.0)
    squeeze_c: tuple = (0.0, 0.0)
    theta_b: float = 0.0
    theta_c: float = 0.0

    def __post_init__(self):
        ids = (self.sender, self.receiver_b, self.receiver_c)
        if len(set(ids)) != 3:
            raise ValueError(f"sender and receivers must be distinct, got {ids}")


def _transformed_pair_stats(state, sender, receiver, theta, squeezes):
    rotated = rotate_pair(state, sender, receiver, theta)
    squeezed = squeeze_pair(rotated, sender, receiver, squeezes[0], squeezes[1])
    return pair_stats(squeezed, sender, receiver)


def pair_product(state: GaussianState, assign: PairAssignment) -> float:
    """Product of both pairs' variance products under the assigned operations.

    Both pairs' statistics are evaluated on the same input state, each in
    its own locally transformed frame. The uncertainty principle bounds the
    result by (1/16)^2 cos^4(theta_b - theta_c).
    """
    for m in (assign.sender, assign.receiver_b, assign.receiver_c):
        if not 0 <= m < state.n_modes:
            raise ValueError(f"mode {m} out of range for {state.n_modes} modes")
    stats_b = _transformed_pair_stats(
        state, assign.sender, assign.receiver_b, assign.theta_b, assign.squeeze_b
    )
    stats_c = _transformed_pair_stats(
        state, assign.sender, assign.receiver_c, assign.theta_c, assign.squeeze_c
    )
    return (stats_b.v_xm * stats_b.v_pp) * (stats_c.v_xm * stats_c.v_pp)


def pair_product_bound(assign: PairAssignment) -> float:
    """Uncertainty-principle floor for :func:`pair_product`."""
    return PRODUCT_FLOOR * math.cos(assign.theta_b - assign.theta_c) ** 4


def _swap_indices(n_modes: int, i: int, j: int):
    order = list(range(n_modes))
    order[i], order[j] = order[j], order[i]
    return [2 * m + off for m in order for off in (0, 1)]


def is_permutation_symmetric(state: GaussianState, tol: float = HYPOTHESIS_TOL) -> bool:
    """True when mean and covariance are invariant under every mode swap."""
    for i in range(state.n_modes):
        for j in range(i + 1, state.n_modes):
            idx = _swap_indices(state.n_modes, i, j)
            if np.max(np.abs(state.mean[idx] - state.mean)) > tol:
                return False
            if np.max(np.abs(state.cov[np.ix_(idx, idx)] - state.cov)) > tol:
                return False
    return True


@dataclass(frozen=True)
class MonogamyReport:
    """Per-pair optimized criterion values and the monogamy verdict."""

    crit_ab: float
    crit_ac: float
    h_ab: float
    h_ac: float
    advantaged: str | None
    proven: bool
    monogamy_satisfied: bool


def _optimized_pair(state: GaussianState, sender: int, receiver: int, n_bar: float):
    """Criterion value after the per-pair optimization, plus the capacity."""
    reduced = reduce_modes(state, [sender, receiver])
    flat = zero_displacement(reduced, 0)
    theta = optimal_rotation(pair_stats(flat, 0, 1))
    rotated = rotate_pair(flat, 0, 1, theta)
    try:
        sr = minimize_variance_product(rotated)
        squeezed = squeeze_pair(rotated, 0, 1, sr.r1, sr.r2)
    except (SqueezeBracketError, ValueError):
        squeezed = rotated
    stats = pair_stats(squeezed, 0, 1)
    crit = stats.det
    try:
        h = advantage(stats, EnergyBudget.for_stats(n_bar, stats)).h_max
    except (SingleQuadratureRegimeError, ValueError):
        h = math.nan
    return crit, h


def monogamy_certificate(state: GaussianState, n_bar: float) -> MonogamyReport:
    """Optimize both pairs sharing the sender and check the advantage count.

    The strict assertion (at most one advantaged pair) is proven for states
    with vanishing (x-, p+) cross correlation in both pairs or with full
    permutation symmetry; otherwise an :class:`UnprovenRegimeWarning` is
    emitted and the verdict is reported as an observation.
    """
    if state.n_modes != 3:
        raise ValueError("certificate expects a three-mode state")
    vxp_ab = pair_stats(state, 0, 1).v_xp
    vxp_ac = pair_stats(state, 0, 2).v_xp
    proven = (
        max(abs(vxp_ab), abs(vxp_ac)) <= HYPOTHESIS_TOL
        or is_permutation_symmetric(state)
    )
    if not proven:
        warnings.warn(
            "state is outside the proven monogamy hypotheses (nonzero pair "
            "cross correlations and no permutation symmetry); reporting the "
            "observed verdict only",
            UnprovenRegimeWarning,
            stacklevel=2,
        )
    crit_ab, h_ab = _optimized_pair(state, 0, 1, n_bar)
    crit_ac, h_ac = _optimized_pair(state, 0, 2, n_bar)
    adv_ab = crit_ab < ADVANTAGE_BOUND
    adv_ac = crit_ac < ADVANTAGE_BOUND
    if adv_ab and adv_ac:
        advantaged = "both"
    elif adv_ab:
        advantaged = "ab"
    elif adv_ac:
        advantaged = "ac"
    else:
        advantaged = None
    return MonogamyReport(
        crit_ab=crit_ab,
        crit_ac=crit_ac,
        h_ab=h_ab,
        h_ac=h_ac,
        advantaged=advantaged,
        proven=proven,
        monogamy_satisfied=not (adv_ab and adv_ac),
    )


def monogamy_scan(a1: float, grid: int = 201) -> list:
    """Budget-free criterion scan of both pairs over the (c2, c3) triangle.

    Records carry the squeeze-optimized criterion values and an overlap
    flag; a monogamy violation would show up as any cell with both pairs
    below 1/16.
    """
    return _scan_cells(a1, None, grid)


def count_overlap(records) -> int:
    """Cells where both pairs satisfy the optimized advantage criterion."""
    return sum(1 for r in records if r.overlap_flag)
