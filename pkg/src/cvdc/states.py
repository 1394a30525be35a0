"""Constructors for the canonical two- and three-mode Gaussian states.

The pure three-mode family is parametrized by the local variances
(a1, a2, a3); its cross correlations are fixed by purity. The x-x entry of
each pair gets the larger (positive) correlation coefficient and the p-p
entry the smaller (negative) one, giving the usual correlated-x /
anti-correlated-p structure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import GaussianState
from .errors import TriangleError

# Exact zeros on the pure-state boundary round slightly negative; anything
# below this is a genuine domain violation.
SQRT_CLAMP_TOL = -1e-12

_VACUUM_TOL = 1e-12


@dataclass(frozen=True)
class TwoModeStandardForm:
    """Two-mode covariance in standard form.

    Local variances a1, a2 on both quadratures, x-correlation c12 and
    p-correlation d12; all same-mode and cross x-p entries vanish.
    """

    a1: float
    a2: float
    c12: float
    d12: float


def two_mode_standard(form: TwoModeStandardForm) -> GaussianState:
    """Zero-mean state with the standard-form covariance layout.

    Physicality is reported by ``validate_cm``, not enforced, so boundary
    and unphysical parameter sets can be probed.
    """
    a1, a2, c, d = form.a1, form.a2, form.c12, form.d12
    cov = np.array(
        [
            [a1, 0.0, c, 0.0],
            [0.0, a1, 0.0, d],
            [c, 0.0, a2, 0.0],
            [0.0, d, 0.0, a2],
        ]
    )
    return GaussianState(np.zeros(4), cov)


def tmsv(s: float) -> GaussianState:
    """Two-mode squeezed vacuum with squeezing parameter ``s``."""
    if not math.isfinite(s):
        raise ValueError("squeezing parameter must be finite")
    a = math.cosh(2 * s) / 2
    c = math.sinh(2 * s) / 2
    return two_mode_standard(TwoModeStandardForm(a1=a, a2=a, c12=c, d12=-c))


def triangle_valid(a1: float, a2: float, a3: float):
    """Check the pure-state triangle inequality for local variances.

    Returns ``(valid, c2, c3)`` with c_j = (a_j - 1/2)/(a_1 - 1/2); validity
    means |c2 - c3| <= 1 <= c2 + c3. A vacuum first mode (a1 = 1/2) is the
    degenerate case, valid only when the other modes are vacuum too.
    """
    if min(a1, a2, a3) < 0.5 - _VACUUM_TOL:
        return False, math.nan, math.nan
    if a1 - 0.5 <= _VACUUM_TOL:
        valid = abs(a2 - 0.5) <= _VACUUM_TOL and abs(a3 - 0.5) <= _VACUUM_TOL
        return valid, math.nan, math.nan
    c2 = (a2 - 0.5) / (a1 - 0.5)
    c3 = (a3 - 0.5) / (a1 - 0.5)
    valid = abs(c2 - c3) <= 1.0 and 1.0 <= c2 + c3
    return valid, c2, c3


@dataclass(frozen=True)
class PureThreeModeParams:
    """Local-variance triple of a pure three-mode state.

    Scans prefer the rescaled coordinates (c2, c3) at fixed a1; both
    representations are carried by emitted records.
    """

    a1: float
    a2: float
    a3: float

    @classmethod
    def from_correlation_coords(cls, a1: float, c2: float, c3: float):
        if a1 <= 0.5:
            raise ValueError("a1 must exceed the vacuum variance 1/2")
        return cls(a1, 0.5 + c2 * (a1 - 0.5), 0.5 + c3 * (a1 - 0.5))

    @property
    def c2(self) -> float:
        return (self.a2 - 0.5) / (self.a1 - 0.5)

    @property
    def c3(self) -> float:
        return (self.a3 - 0.5) / (self.a1 - 0.5)


def _clamped_sqrt(arg: float) -> float:
    if arg < SQRT_CLAMP_TOL:
        raise ValueError(
            f"square-root argument {arg:.3e} below tolerance; parameters do "
            "not describe a pure three-mode state"
        )
    return math.sqrt(max(arg, 0.0))


def pair_correlations(ai: float, aj: float, ak: float):
    """Cross correlations (x-x, p-p) of the reduced pair {i, j}.

    ``ak`` is the local variance of the traced-out third mode. Purity of
    the global state fixes both values up to the stated sign split.
    """
    diff2 = (ai - aj) ** 2
    sum2 = (ai + aj) ** 2
    lo = (ak - 0.5) ** 2
    hi = (ak + 0.5) ** 2
    root_diff = _clamped_sqrt((diff2 - lo) * (diff2 - hi))
    root_sum = _clamped_sqrt((sum2 - lo) * (sum2 - hi))
    den = 4.0 * math.sqrt(ai * aj)
    return (root_diff + root_sum) / den, (root_diff - root_sum) / den


def pure_three_mode(a1: float, a2: float, a3: float) -> GaussianState:
    """Pure three-mode state in standard form from its local variances.

    Raises :class:`TriangleError` naming the violated inequality when the
    triple is outside the pure-state region.
    """
    valid, c2, c3 = triangle_valid(a1, a2, a3)
    if not valid:
        if math.isnan(c2):
            raise TriangleError(
                f"local variances ({a1}, {a2}, {a3}) are not a valid "
                "vacuum-degenerate triple (all must be >= 1/2; a1 = 1/2 "
                "requires a2 = a3 = 1/2)"
            )
        if c2 + c3 < 1.0:
            raise TriangleError(
                f"c2 + c3 = {c2 + c3:.6g} < 1 for (a1, a2, a3) = "
                f"({a1}, {a2}, {a3})"
            )
        raise TriangleError(
            f"|c2 - c3| = {abs(c2 - c3):.6g} > 1 for (a1, a2, a3) = "
            f"({a1}, {a2}, {a3})"
        )
    e12 = pair_correlations(a1, a2, a3)
    e13 = pair_correlations(a1, a3, a2)
    e23 = pair_correlations(a2, a3, a1)
    cov = np.zeros((6, 6))
    for i, a in enumerate((a1, a2, a3)):
        cov[2 * i, 2 * i] = a
        cov[2 * i + 1, 2 * i + 1] = a
    for (i, j), (ex, ep) in (((0, 1), e12), ((0, 2), e13), ((1, 2), e23)):
        cov[2 * i, 2 * j] = cov[2 * j, 2 * i] = ex
        cov[2 * i + 1, 2 * j + 1] = cov[2 * j + 1, 2 * i + 1] = ep
    return GaussianState(np.zeros(6), cov)
