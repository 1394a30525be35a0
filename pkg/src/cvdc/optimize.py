"""Local-unitary optimization of a two-mode channel and parameter-region scans.

Pipeline order is displacement, paired phase rotation, local squeezing.
Squeeze parameters follow the package convention ``x -> exp(-r) x``
(see :mod:`cvdc.core`); the variance product of the correlated pair
depends only on the difference r1 - r2, so the search runs over
``t = exp(r1 - r2)`` with the canonical gauge r2 = -r1.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize as _nm_minimize

from .core import (
    ChannelStats,
    GaussianState,
    displace,
    local_rotate,
    local_squeeze,
    mean_photon,
    pair_stats,
)
from .densecode import (
    EnergyBudget,
    advantage,
    capacity_single_mode,
    max_mutual_information,
)
from .errors import SingleQuadratureRegimeError, SqueezeBracketError
from .states import TwoModeStandardForm, pair_correlations, triangle_valid

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

LOG_T_BRACKET = (-5.0, 5.0)
LOG_T_TOL = 1e-10


def golden_section_min(f, lo: float, hi: float, tol: float = 1e-10, max_iter: int = 200):
    """Bracketed golden-section minimization of a scalar function.

    Returns (argmin, minimum, iterations). Assumes f is unimodal on
    [lo, hi]; the bracket never expands.
    """
    x1 = hi - _INV_GOLDEN * (hi - lo)
    x2 = lo + _INV_GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    it = 0
    while hi - lo > tol and it < max_iter:
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_GOLDEN * (hi - lo)
            f2 = f(x2)
        it += 1
    x = 0.5 * (lo + hi)
    return x, f(x), it


@dataclass(frozen=True)
class SqueezeSearchResult:
    """Outcome of the variance-product minimization over local squeezing."""

    t_opt: float
    v_product_min: float
    r1: float
    r2: float
    iterations: int


@dataclass
class RegionRecord:
    """One (c2, c3) grid cell of a scan over pure three-mode states.

    ``crit_*`` columns hold the variance product of the pair minimized over
    local squeezing; h and the beats flags refer to the unsqueezed standard
    form at the scan's photon budget (nan / False in budget-free scans).
    """

    c2: float
    c3: float
    a2: float
    a3: float
    h_ab: float
    h_ac: float
    crit_ab: float
    crit_ac: float
    beats_coh_ab: bool
    beats_coh_ac: bool
    beats_sq_ab: bool
    beats_sq_ac: bool
    t_opt_ab: float
    t_opt_ac: float
    crit_ab_opt: float = math.nan
    crit_ac_opt: float = math.nan
    overlap_flag: bool = False


SCAN_COLUMNS = [
    "c2", "c3", "a2", "a3", "h_ab", "h_ac", "crit_ab", "crit_ac",
    "beats_coh_ab", "beats_coh_ac", "beats_sq_ab", "beats_sq_ac",
    "t_opt_ab", "t_opt_ac",
]
MONOGAMY_COLUMNS = SCAN_COLUMNS + ["crit_ab_opt", "crit_ac_opt", "overlap_flag"]


def zero_displacement(state: GaussianState, mode: int) -> GaussianState:
    """Remove the first moments of one mode, minimizing its photon number."""
    mx = state.mean[2 * mode]
    mp = state.mean[2 * mode + 1]
    if mx == 0.0 and mp == 0.0:
        return state
    return displace(state, mode, complex(-mx, -mp) / math.sqrt(2.0))


def optimal_rotation(stats: ChannelStats) -> float:
    """Paired-rotation angle {theta, -theta} that removes the cross correlation.

    After rotating sender by theta and receiver by -theta the (x-, p+)
    covariance vanishes; the branch puts the smaller variance on x-.
    """
    scale = max(stats.v_xm, stats.v_pp)
    if abs(stats.v_xp) <= 1e-15 * scale:
        return 0.0
    return 0.5 * math.atan2(-2.0 * stats.v_xp, stats.v_pp - stats.v_xm)


def rotate_pair(state: GaussianState, mode_a: int, mode_b: int, theta: float) -> GaussianState:
    """Apply the paired rotation {theta, -theta} to two modes."""
    return local_rotate(local_rotate(state, mode_a, theta), mode_b, -theta)


def squeeze_pair(state: GaussianState, mode_a: int, mode_b: int, r1: float, r2: float) -> GaussianState:
    return local_squeeze(local_squeeze(state, mode_a, r1), mode_b, r2)


def _pair_entries(form) -> tuple:
    """Extract (X1, X2, Cx, P1, P2, Cp) covariance entries of a two-mode input."""
    if isinstance(form, TwoModeStandardForm):
        return form.a1, form.a2, form.c12, form.a1, form.a2, form.d12
    if isinstance(form, GaussianState):
        if form.n_modes != 2:
            raise ValueError("variance-product search needs a two-mode state")
        c = form.cov
        stats = pair_stats(form, 0, 1)
        if abs(stats.v_xp) > 1e-8:
            raise ValueError(
                "input has a residual (x-, p+) cross correlation; apply the "
                "optimal rotation first"
            )
        return c[0, 0], c[2, 2], c[0, 2], c[1, 1], c[3, 3], c[1, 3]
    raise TypeError("expected TwoModeStandardForm or two-mode GaussianState")


def variance_product(form, log_t: float) -> float:
    """Variance product V(x-) V(p+) after squeezing with r1 - r2 = log_t."""
    x1, x2, cx, p1, p2, cp = _pair_entries(form)
    t = math.exp(log_t)
    vx = 0.5 * (x1 / t + x2 * t) - cx
    vp = 0.5 * (p1 * t + p2 / t) + cp
    return vx * vp


def minimize_variance_product(form) -> SqueezeSearchResult:
    """Minimize the pair variance product over the local squeeze difference.

    Golden-section search on log t over the fixed bracket [-5, 5] at
    tolerance 1e-10; the reported split is the canonical gauge
    r1 = log(t)/2, r2 = -log(t)/2. Raises :class:`SqueezeBracketError`
    when the minimum sits on the bracket boundary.
    """
    x1, x2, cx, p1, p2, cp = _pair_entries(form)

    def product(log_t: float) -> float:
        t = math.exp(log_t)
        return (0.5 * (x1 / t + x2 * t) - cx) * (0.5 * (p1 * t + p2 / t) + cp)

    lo, hi = LOG_T_BRACKET
    log_t, v_min, iters = golden_section_min(product, lo, hi, tol=LOG_T_TOL)
    if min(log_t - lo, hi - log_t) < 1e-6:
        raise SqueezeBracketError(
            f"variance-product minimum pinned at log t = {log_t:.3f}; "
            "input is pathological for local-squeeze optimization"
        )
    if v_min <= 0.0:
        raise ValueError("variance product is nonpositive; input is unphysical")
    t_opt = math.exp(log_t)
    return SqueezeSearchResult(
        t_opt=t_opt,
        v_product_min=v_min,
        r1=0.5 * log_t,
        r2=-0.5 * log_t,
        iterations=iters,
    )


def refine_joint_squeeze(state: GaussianState, n_bar: float, seeds=None, bound: float = 1.0):
    """Direct search for the (r1, r2) squeeze pair maximizing the capacity.

    Nelder-Mead over [-bound, bound]^2, seeded at the variance-product
    split and the identity (extra seeds may be supplied). The input state
    should already be displacement-free and rotation-optimized. Returns
    (r1, r2, h).
    """
    if seeds is None:
        sr = minimize_variance_product(state)
        seeds = [(0.0, 0.0), (sr.r1, sr.r2)]

    def neg_h(r):
        r1 = min(max(r[0], -bound), bound)
        r2 = min(max(r[1], -bound), bound)
        squeezed = squeeze_pair(state, 0, 1, r1, r2)
        try:
            stats = pair_stats(squeezed, 0, 1)
            return -max_mutual_information(stats, n_bar)
        except (SingleQuadratureRegimeError, ValueError):
            return 1e9

    best = None
    for seed in seeds:
        res = _nm_minimize(
            neg_h,
            x0=np.asarray(seed, float),
            method="Nelder-Mead",
            options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 4000, "maxfev": 4000},
        )
        if best is None or res.fun < best.fun:
            best = res
    r1 = float(min(max(best.x[0], -bound), bound))
    r2 = float(min(max(best.x[1], -bound), bound))
    return r1, r2, -float(best.fun)


def optimize_pipeline(state: GaussianState, n_bar: float, refine: bool = False):
    """Optimize a two-mode channel by displacement, rotation, and squeezing.

    Returns the optimized state and its capacity report. The squeeze stage
    keeps the better of the identity and the variance-product split, so the
    resulting capacity never drops below the unsqueezed value and the
    criterion value never rises. With ``refine=True`` a joint (r1, r2)
    direct search (which trades criterion value for capacity) is added to
    the candidate set.
    """
    if state.n_modes != 2:
        raise ValueError("pipeline expects a two-mode state")
    flat = zero_displacement(state, 0)
    stats = pair_stats(flat, 0, 1)
    theta = optimal_rotation(stats)
    rotated = rotate_pair(flat, 0, 1, theta)

    candidates = [(0.0, 0.0)]
    sr = minimize_variance_product(rotated)
    candidates.append((sr.r1, sr.r2))
    if refine:
        r1, r2, _ = refine_joint_squeeze(rotated, n_bar, seeds=list(candidates))
        candidates.append((r1, r2))

    best = None
    first_error = None
    for r1, r2 in candidates:
        squeezed = squeeze_pair(rotated, 0, 1, r1, r2)
        try:
            s_stats = pair_stats(squeezed, 0, 1)
            h = max_mutual_information(s_stats, n_bar)
        except (SingleQuadratureRegimeError, ValueError) as err:
            if first_error is None:
                first_error = err
            continue
        if best is None or h > best[0]:
            best = (h, squeezed, s_stats)
    if best is None:
        raise first_error
    _, opt_state, opt_stats = best
    return opt_state, advantage(opt_stats, EnergyBudget.for_stats(n_bar, opt_stats))


def _pair_cell(a_alice: float, a_other: float, a_traced: float, n_bar, c_coh, c_sq):
    """Per-pair numbers of one scan cell; nan-filled on per-cell failure."""
    h = math.nan
    beats_coh = beats_sq = False
    crit = t_opt = math.nan
    try:
        ex, ep = pair_correlations(a_alice, a_other, a_traced)
    except ValueError:
        return h, crit, beats_coh, beats_sq, t_opt
    if n_bar is not None:
        vx = 0.5 * (a_alice + a_other) - ex
        vp = 0.5 * (a_alice + a_other) + ep
        if vx > 0 and vp > 0:
            n_s = n_bar - (a_alice - 0.5)
            boundary = abs(vx - vp)
            if n_s > boundary:
                h = math.log((n_s + vx + vp) / (2.0 * math.sqrt(vx * vp)))
                beats_coh = h > c_coh
                beats_sq = h > c_sq
    try:
        sr = minimize_variance_product(
            TwoModeStandardForm(a1=a_alice, a2=a_other, c12=ex, d12=ep)
        )
        crit, t_opt = sr.v_product_min, sr.t_opt
    except (SqueezeBracketError, ValueError):
        pass
    return h, crit, beats_coh, beats_sq, t_opt


def triangle_grid(a1: float, grid: int):
    """(c2, c3) cells of a [0, 2]^2 grid inside the pure-state triangle."""
    if a1 <= 0.5:
        raise ValueError("a1 must exceed the vacuum variance 1/2")
    if grid < 2:
        raise ValueError("grid resolution must be at least 2")
    axis = np.linspace(0.0, 2.0, grid)
    cells = []
    for c2 in axis:
        for c3 in axis:
            a2 = 0.5 + c2 * (a1 - 0.5)
            a3 = 0.5 + c3 * (a1 - 0.5)
            if triangle_valid(a1, a2, a3)[0]:
                cells.append((float(c2), float(c3), a2, a3))
    return cells


def _scan_threads() -> int:
    raw = os.environ.get("CVDC_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _scan_cells(a1: float, n_bar, grid: int) -> list:
    cells = triangle_grid(a1, grid)
    if n_bar is None:
        c_coh = c_sq = math.nan
    else:
        c_coh = capacity_single_mode("coherent", n_bar)
        c_sq = capacity_single_mode("squeezed", n_bar)

    def one(cell) -> RegionRecord:
        c2, c3, a2, a3 = cell
        h_ab, crit_ab, bc_ab, bs_ab, t_ab = _pair_cell(a1, a2, a3, n_bar, c_coh, c_sq)
        h_ac, crit_ac, bc_ac, bs_ac, t_ac = _pair_cell(a1, a3, a2, n_bar, c_coh, c_sq)
        both = (
            not math.isnan(crit_ab) and not math.isnan(crit_ac)
            and crit_ab < 1.0 / 16.0 and crit_ac < 1.0 / 16.0
        )
        return RegionRecord(
            c2=c2, c3=c3, a2=a2, a3=a3,
            h_ab=h_ab, h_ac=h_ac,
            crit_ab=crit_ab, crit_ac=crit_ac,
            beats_coh_ab=bc_ab, beats_coh_ac=bc_ac,
            beats_sq_ab=bs_ab, beats_sq_ac=bs_ac,
            t_opt_ab=t_ab, t_opt_ac=t_ac,
            crit_ab_opt=crit_ab, crit_ac_opt=crit_ac,
            overlap_flag=both,
        )

    threads = _scan_threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, cells))
    return [one(cell) for cell in cells]


def region_scan(a1: float, n_bar: float, grid: int = 201) -> list:
    """Scan the (c2, c3) triangle at fixed a1 and photon budget n_bar.

    Each record carries both pairs' unsqueezed capacities, benchmark flags,
    and squeeze-minimized criterion values; cells outside the triangle are
    omitted and per-cell failures are recorded as nan, never aborting.
    """
    if n_bar <= 0:
        raise ValueError("photon budget must be positive")
    return _scan_cells(a1, float(n_bar), grid)


def count_both_beat(records, scheme: str = "squeezed") -> int:
    """Cells where both pairs beat the chosen single-mode benchmark."""
    if scheme == "squeezed":
        return sum(1 for r in records if r.beats_sq_ab and r.beats_sq_ac)
    if scheme == "coherent":
        return sum(1 for r in records if r.beats_coh_ab and r.beats_coh_ac)
    raise ValueError("scheme must be 'squeezed' or 'coherent'")
