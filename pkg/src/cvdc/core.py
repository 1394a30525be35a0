"""Mean-vector / covariance-matrix representation of N-mode Gaussian states.

Conventions, fixed package-wide and recorded in state files:

* quadrature ordering  ``(x1, p1, x2, p2, ..., xN, pN)``
* commutator ``[x, p] = i`` (hbar = 1), vacuum variance 1/2 per quadrature
* ``local_squeeze(r)`` maps ``x -> exp(-r) x``, ``p -> exp(+r) p``
  (positive r squeezes the x quadrature)
* displacement by a complex amplitude ``alpha`` shifts the mean by
  ``(sqrt(2) Re alpha, sqrt(2) Im alpha)``, so a displaced vacuum carries
  ``|alpha|^2`` photons

All values are immutable after construction; every operation is a pure
function returning a new state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnphysicalStateError

CONVENTION = "hbar=1,vac=1/2"

SYMMETRY_TOL = 1e-12
UNCERTAINTY_TOL = -1e-10


def omega(n_modes: int) -> np.ndarray:
    """Symplectic form for ``n_modes`` modes in interleaved ordering."""
    o = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        o[2 * k, 2 * k + 1] = 1.0
        o[2 * k + 1, 2 * k] = -1.0
    return o


def _frozen_array(values, shape=None) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if shape is not None and arr.shape != shape:
        raise ValueError(f"expected array of shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GaussianState:
    """Gaussian state of ``n_modes`` modes: mean vector and covariance matrix.

    Construction checks shapes only; physicality is reported by
    :func:`validate_cm` so that callers may probe boundary or unphysical
    matrices deliberately.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.atleast_1d(np.array(self.mean, dtype=float))
        cov = np.array(self.cov, dtype=float)
        if mean.ndim != 1 or mean.size == 0 or mean.size % 2:
            raise ValueError("mean must be a vector of even length 2N")
        if cov.shape != (mean.size, mean.size):
            raise ValueError(
                f"cov shape {cov.shape} does not match mean length {mean.size}"
            )
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n_modes(self) -> int:
        return self.mean.size // 2

    @staticmethod
    def vacuum(n_modes: int) -> "GaussianState":
        return GaussianState(np.zeros(2 * n_modes), 0.5 * np.eye(2 * n_modes))


@dataclass(frozen=True)
class SymplecticTransform:
    """Real 2N x 2N matrix S with S Omega S^T = Omega (checked at 1e-10)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError("symplectic matrix must be square with even dimension")
        n = m.shape[0] // 2
        defect = np.max(np.abs(m @ omega(n) @ m.T - omega(n)))
        if defect > 1e-10:
            raise ValueError(f"matrix is not symplectic: |S O S^T - O|_max = {defect:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2

    @staticmethod
    def identity(n_modes: int) -> "SymplecticTransform":
        return SymplecticTransform(np.eye(2 * n_modes))

    @staticmethod
    def from_mode_block(n_modes: int, mode: int, block) -> "SymplecticTransform":
        """Embed a single-mode 2x2 symplectic block at ``mode``."""
        if not 0 <= mode < n_modes:
            raise ValueError(f"mode {mode} out of range for {n_modes} modes")
        m = np.eye(2 * n_modes)
        m[2 * mode : 2 * mode + 2, 2 * mode : 2 * mode + 2] = block
        return SymplecticTransform(m)


@dataclass(frozen=True)
class ChannelStats:
    """Second moments of the correlated quadrature pair seen by the receiver.

    ``v_xm`` is the variance of (x1 - x2)/sqrt(2), ``v_pp`` the variance of
    (p1 + p2)/sqrt(2), ``v_xp`` their covariance, and ``n0`` the sender-mode
    mean photon number before encoding.
    """

    v_xm: float
    v_pp: float
    v_xp: float
    n0: float

    def __post_init__(self):
        if not (self.v_xm > 0 and self.v_pp > 0):
            raise UnphysicalStateError(
                f"variances must be positive: v_xm={self.v_xm}, v_pp={self.v_pp}"
            )
        if self.v_xm * self.v_pp - self.v_xp**2 <= 0:
            raise UnphysicalStateError(
                "correlation matrix of (x-, p+) is singular or indefinite"
            )
        if self.n0 < -1e-12:
            raise UnphysicalStateError(f"negative photon number n0={self.n0}")
        object.__setattr__(self, "n0", max(self.n0, 0.0))

    @property
    def det(self) -> float:
        """Determinant v_xm * v_pp - v_xp^2 of the pair covariance."""
        return self.v_xm * self.v_pp - self.v_xp**2


@dataclass(frozen=True)
class ValidityReport:
    is_symmetric: bool
    min_uncertainty_eigenvalue: float
    is_physical: bool


def validate_cm(state: GaussianState) -> ValidityReport:
    """Check symmetry and the uncertainty relation of a covariance matrix.

    The uncertainty check computes the minimum eigenvalue of the Hermitian
    matrix ``cov + (i/2) Omega``; physical states keep it above -1e-10
    (pure states saturate zero up to rounding).
    """
    cov = state.cov
    asym = float(np.max(np.abs(cov - cov.T))) if cov.size else 0.0
    is_symmetric = asym <= SYMMETRY_TOL
    sym_cov = 0.5 * (cov + cov.T)
    herm = sym_cov + 0.5j * omega(state.n_modes)
    min_eig = float(np.linalg.eigvalsh(herm)[0])
    return ValidityReport(
        is_symmetric=is_symmetric,
        min_uncertainty_eigenvalue=min_eig,
        is_physical=is_symmetric and min_eig >= UNCERTAINTY_TOL,
    )


def apply_symplectic(
    state: GaussianState, s: SymplecticTransform, shift=None
) -> GaussianState:
    """Transform mean -> S mean + shift and cov -> S cov S^T."""
    if s.n_modes != state.n_modes:
        raise ValueError(
            f"transform acts on {s.n_modes} modes, state has {state.n_modes}"
        )
    m = s.matrix
    shift = np.zeros(2 * state.n_modes) if shift is None else np.asarray(shift, float)
    if shift.shape != state.mean.shape:
        raise ValueError("shift length does not match the state dimension")
    return GaussianState(m @ state.mean + shift, m @ state.cov @ m.T)


def local_squeeze(state: GaussianState, mode: int, r: float) -> GaussianState:
    """Squeeze one mode: x -> exp(-r) x, p -> exp(+r) p."""
    block = np.diag([math.exp(-r), math.exp(r)])
    return apply_symplectic(
        state, SymplecticTransform.from_mode_block(state.n_modes, mode, block)
    )


def local_rotate(state: GaussianState, mode: int, theta: float) -> GaussianState:
    """Rotate one mode's quadratures: x -> x cos(t) + p sin(t), p -> p cos(t) - x sin(t)."""
    c, s = math.cos(theta), math.sin(theta)
    block = np.array([[c, s], [-s, c]])
    return apply_symplectic(
        state, SymplecticTransform.from_mode_block(state.n_modes, mode, block)
    )


def displace(state: GaussianState, mode: int, alpha: complex) -> GaussianState:
    """Displace one mode in phase space; covariance is untouched."""
    if not 0 <= mode < state.n_modes:
        raise ValueError(f"mode {mode} out of range for {state.n_modes} modes")
    alpha = complex(alpha)
    shift = np.zeros(2 * state.n_modes)
    shift[2 * mode] = math.sqrt(2.0) * alpha.real
    shift[2 * mode + 1] = math.sqrt(2.0) * alpha.imag
    return GaussianState(state.mean + shift, state.cov)


def beam_splitter_5050(state: GaussianState, mode_a: int, mode_b: int) -> GaussianState:
    """Balanced beam splitter mixing two modes.

    Output port ``mode_a`` carries the difference quadratures
    ((x_a - x_b)/sqrt2, (p_a - p_b)/sqrt2) and port ``mode_b`` the sums,
    so measuring x on port a and p on port b accesses exactly the
    correlated pair (x-, p+) used by the decoder.
    """
    n = state.n_modes
    if mode_a == mode_b:
        raise ValueError("beam splitter needs two distinct modes")
    for m in (mode_a, mode_b):
        if not 0 <= m < n:
            raise ValueError(f"mode {m} out of range for {n} modes")
    s = np.eye(2 * n)
    inv = 1.0 / math.sqrt(2.0)
    for off in (0, 1):  # same mixing for x and p rows
        ia, ib = 2 * mode_a + off, 2 * mode_b + off
        s[ia, ia] = inv
        s[ia, ib] = -inv
        s[ib, ia] = inv
        s[ib, ib] = inv
    return apply_symplectic(state, SymplecticTransform(s))


def reduce_modes(state: GaussianState, keep) -> GaussianState:
    """Restrict mean and covariance to the kept modes."""
    keep = list(keep)
    if not keep or len(set(keep)) != len(keep):
        raise ValueError("keep must be a non-empty list of distinct mode indices")
    for m in keep:
        if not 0 <= m < state.n_modes:
            raise ValueError(f"mode {m} out of range for {state.n_modes} modes")
    idx = [2 * m + off for m in keep for off in (0, 1)]
    return GaussianState(state.mean[idx], state.cov[np.ix_(idx, idx)])


def mean_photon(state: GaussianState, mode: int) -> float:
    """Mean photon number (<x^2> + <p^2> - 1) / 2 of one mode."""
    if not 0 <= mode < state.n_modes:
        raise ValueError(f"mode {mode} out of range for {state.n_modes} modes")
    ix, ip = 2 * mode, 2 * mode + 1
    xx = state.mean[ix] ** 2 + state.cov[ix, ix]
    pp = state.mean[ip] ** 2 + state.cov[ip, ip]
    return float((xx + pp - 1.0) / 2.0)


def pair_stats(state: GaussianState, mode_a: int, mode_b: int) -> ChannelStats:
    """Correlated-pair statistics for sender ``mode_a`` and receiver ``mode_b``.

    Evaluates the bilinear forms of (x_a - x_b)/sqrt2 and (p_a + p_b)/sqrt2
    on the covariance matrix and attaches the sender photon number.
    """
    if mode_a == mode_b:
        raise ValueError("pair_stats needs two distinct modes")
    for m in (mode_a, mode_b):
        if not 0 <= m < state.n_modes:
            raise ValueError(f"mode {m} out of range for {state.n_modes} modes")
    c = state.cov
    xa, pa, xb, pb = 2 * mode_a, 2 * mode_a + 1, 2 * mode_b, 2 * mode_b + 1
    v_xm = 0.5 * (c[xa, xa] + c[xb, xb] - 2.0 * c[xa, xb])
    v_pp = 0.5 * (c[pa, pa] + c[pb, pb] + 2.0 * c[pa, pb])
    v_xp = 0.5 * (c[xa, pa] + c[xa, pb] - c[xb, pa] - c[xb, pb])
    return ChannelStats(
        v_xm=float(v_xm),
        v_pp=float(v_pp),
        v_xp=float(v_xp),
        n0=mean_photon(state, mode_a),
    )
