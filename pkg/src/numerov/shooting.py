"""Two-sided propagation and derivative matching for one trial energy.

A trial solution is started at each end of the grid with ``psi = 0`` on the
boundary and a small seed one step inside, then advanced towards the outer
classical turning point. The left branch is rescaled to meet the right branch
there and the mismatch of their first derivatives is measured.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np
from numba import njit

from .errors import EnergyOutsideWell, MatchPointNode, StepFailure
from .potentials import Form, PotentialModel
from .recurrence import DENOMINATOR_FLOOR, central_derivative, general_terms, standard_terms

OVERFLOW_LIMIT = 1e250
OVERFLOW_RESCALE = 1e-250
NODE_FLOOR = 1e-300
MISMATCH_FLOOR = 1e-12
MAX_NODE_SHIFTS = 3
# match point used when the whole grid is classically allowed (hard walls only)
_WALL_MATCH_FRACTION = 0.6180339887498949


@dataclass(frozen=True)
class Grid:
    """Uniform samples ``x_i = a + i * delta``, ``i = 0 .. n-1``, with ``x_{n-1} = b``."""

    a: float
    b: float
    delta: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.b > self.a):
            raise ValueError(f"need finite b > a, got a={self.a!r}, b={self.b!r}")
        if not (math.isfinite(self.delta) and self.delta > 0):
            raise ValueError(f"delta must be finite and > 0, got {self.delta!r}")
        if self.n < 8:
            raise ValueError(f"grid needs at least 8 points, got {self.n}")
        steps = (self.b - self.a) / self.delta
        if abs(steps - (self.n - 1)) > 1e-9 * (self.n - 1):
            raise ValueError(
                f"(b - a) / delta = {steps!r} does not match n - 1 = {self.n - 1}"
            )

    @classmethod
    def from_step(cls, a: float, b: float, delta: float) -> Grid:
        """Build the grid for a nominal step; ``delta`` is snapped to ``(b-a)/(n-1)``."""
        if not (delta > 0 and b > a):
            raise ValueError(f"need b > a and delta > 0, got a={a!r}, b={b!r}, delta={delta!r}")
        steps = (b - a) / delta
        n = int(round(steps)) + 1
        if abs(steps - (n - 1)) > 1e-9 * max(n - 1, 1):
            raise ValueError(f"(b - a) / delta = {steps!r} is not an integer number of steps")
        return cls(a, b, (b - a) / (n - 1), n)

    @cached_property
    def x(self) -> np.ndarray:
        x = np.linspace(self.a, self.b, self.n)
        x.flags.writeable = False
        return x


@dataclass(frozen=True)
class ShootingConfig:
    """Boundary seeds and the match-point rule (``None`` = outer turning point)."""

    seed_left: float = 1e-6
    seed_right: float = 1e-6
    match_index: int | None = None

    def __post_init__(self):
        for name in ("seed_left", "seed_right"):
            seed = getattr(self, name)
            if not (0 < seed <= 1e-3):
                raise ValueError(f"{name} must satisfy 0 < seed <= 1e-3, got {seed!r}")


@dataclass(frozen=True)
class ShootingResult:
    """Both branches for one trial energy.

    ``left`` holds grid indices ``0 .. match_index + 1`` and ``right`` holds
    ``match_index - 1 .. n - 1``. ``mismatch`` is the derivative jump divided
    by ``max(|psi_match|, 1e-12)``. ``wronskian`` is the same jump expressed
    as the sine of the angle between the two ``(psi, delta * psi')`` vectors;
    it has the same zeros but no poles when the left branch has a node at the
    match point.
    """

    eps: float
    left: np.ndarray
    right: np.ndarray
    match_index: int
    mismatch: float
    psi_match: float
    wronskian: float = float("nan")

    @property
    def left_at_match(self) -> float:
        return float(self.left[self.match_index])

    @property
    def right_at_match(self) -> float:
        return float(self.right[1])

    def stitched(self) -> np.ndarray:
        """Left branch on ``[a, x_match)`` joined to the right branch on ``[x_match, b]``."""
        return np.concatenate((self.left[: self.match_index], self.right[1:]))


@njit(cache=True)
def _rescale_visited(out, start, j):
    lo, hi = (start, j) if j > start else (j, start)
    for q in range(lo, hi + 1):
        out[q] *= OVERFLOW_RESCALE


@njit(cache=True)
def _sweep_standard(k2, delta, start, stop, seed, out):
    step = 1 if stop > start else -1
    out[start] = 0.0
    out[start + step] = seed
    i = start + step
    while i != stop:
        j = i + step
        w_prev, w_cur, w_next = standard_terms(k2[i - step], k2[i], k2[j], delta)
        if not abs(w_next) >= DENOMINATOR_FLOOR:
            return j
        out[j] = (w_cur * out[i] - w_prev * out[i - step]) / w_next
        if abs(out[j]) > OVERFLOW_LIMIT:
            _rescale_visited(out, start, j)
        i = j
    return -1


@njit(cache=True)
def _sweep_general(p, dp, s, delta, start, stop, seed, out):
    # going towards smaller x the relation is solved for the other end:
    # p changes sign, s_prev and s_next swap, p' is unchanged
    step = 1 if stop > start else -1
    out[start] = 0.0
    out[start + step] = seed
    i = start + step
    while i != stop:
        j = i + step
        w_prev, w_cur, w_next = general_terms(step * p[i], dp[i], s[i - step], s[i], s[j], delta)
        if not abs(w_next) >= DENOMINATOR_FLOOR:
            return j
        out[j] = (w_cur * out[i] - w_prev * out[i - step]) / w_next
        if abs(out[j]) > OVERFLOW_LIMIT:
            _rescale_visited(out, start, j)
        i = j
    return -1


class _Sweeper:
    """Coefficient arrays for one (model, energy, grid), shared by both sweeps."""

    def __init__(self, model: PotentialModel, eps: float, grid: Grid):
        self.grid = grid
        x = grid.x
        if model.form is Form.NORMAL:
            self.k2 = np.ascontiguousarray(model.k2(x, eps), dtype=float)
            self.general = False
        else:
            p, dp, s = model.coefficients(x, eps)
            self.p = np.ascontiguousarray(p, dtype=float)
            self.dp = np.ascontiguousarray(dp, dtype=float)
            self.s = np.ascontiguousarray(s, dtype=float)
            self.general = True

    def run(self, start: int, stop: int, seed: float) -> np.ndarray:
        out = np.zeros(self.grid.n)
        d = self.grid.delta
        if self.general:
            bad = _sweep_general(self.p, self.dp, self.s, d, start, stop, seed, out)
        else:
            bad = _sweep_standard(self.k2, d, start, stop, seed, out)
        if bad >= 0:
            raise StepFailure("vanishing recurrence denominator", index=int(bad),
                              x=float(self.grid.x[bad]))
        return out


def _clamp_match(i: int, grid: Grid) -> int:
    return min(max(int(i), 1), grid.n - 3)


def find_match_index(model: PotentialModel, eps: float, grid: Grid,
                     cfg: ShootingConfig | None = None) -> int:
    """Index of the outer classical turning point, clamped to ``[1, n-3]``.

    This is the largest ``i`` with ``V(x_i) <= eps < V(x_{i+1})``. When the
    energy lies above ``V`` on the entire grid the problem is confined by the
    boundary walls alone and a fixed interior index is used instead.

    Raises
    ------
    EnergyOutsideWell
        If no such crossing exists on the grid.
    """
    if cfg is not None and cfg.match_index is not None:
        return _clamp_match(cfg.match_index, grid)
    v = model.potential(grid.x)
    below = v <= eps
    if not below.any():
        raise EnergyOutsideWell(f"eps={eps!r} lies below the potential everywhere on the grid")
    if below.all():
        return _clamp_match(round((grid.n - 1) * _WALL_MATCH_FRACTION), grid)
    crossings = np.flatnonzero(below[:-1] & ~below[1:])
    if crossings.size == 0:
        raise EnergyOutsideWell(
            f"eps={eps!r} has no outer turning point inside [{grid.a!r}, {grid.b!r}]"
        )
    return _clamp_match(crossings[-1], grid)


def integrate_left(model: PotentialModel, eps: float, grid: Grid, cfg: ShootingConfig,
                   match_index: int | None = None) -> np.ndarray:
    """Samples of the left branch on grid indices ``0 .. match_index + 1``."""
    if match_index is None:
        match_index = find_match_index(model, eps, grid, cfg)
    out = _Sweeper(model, eps, grid).run(0, match_index + 1, cfg.seed_left)
    return out[: match_index + 2]


def integrate_right(model: PotentialModel, eps: float, grid: Grid, cfg: ShootingConfig,
                    match_index: int | None = None) -> np.ndarray:
    """Samples of the right branch on grid indices ``match_index - 1 .. n - 1``."""
    if match_index is None:
        match_index = find_match_index(model, eps, grid, cfg)
    out = _Sweeper(model, eps, grid).run(grid.n - 1, match_index - 1, cfg.seed_right)
    return out[match_index - 1:]


def rescale_left(result: ShootingResult) -> ShootingResult:
    """Scale the left branch so that it equals the right branch at the match point."""
    psi_l = result.left_at_match
    if not abs(psi_l) >= NODE_FLOOR:
        raise MatchPointNode(
            f"left solution vanishes at match index {result.match_index} (psi={psi_l!r})"
        )
    psi_r = result.right_at_match
    return replace(result, left=result.left * (psi_r / psi_l), psi_match=psi_r)


def _match(eps: float, left: np.ndarray, right: np.ndarray, m: int, delta: float) -> ShootingResult:
    raw = ShootingResult(eps=eps, left=left, right=right, match_index=m,
                         mismatch=float("nan"), psi_match=float("nan"))
    scaled = rescale_left(raw)

    dl_raw = central_derivative(left[m - 1], left[m + 1], delta)
    dl = central_derivative(scaled.left[m - 1], scaled.left[m + 1], delta)
    dr = central_derivative(right[0], right[2], delta)
    psi_r = scaled.psi_match
    g = (dl - dr) / max(abs(psi_r), MISMATCH_FLOOR)

    norm_l = math.hypot(left[m], delta * dl_raw)
    norm_r = math.hypot(psi_r, delta * dr)
    w = (delta * dl_raw / norm_l) * (psi_r / norm_r) - (delta * dr / norm_r) * (left[m] / norm_l)
    return replace(scaled, mismatch=float(g), wronskian=float(w))


def mismatch(model: PotentialModel, eps: float, grid: Grid,
             cfg: ShootingConfig | None = None) -> tuple[float, ShootingResult]:
    """Propagate both branches, match them and return ``(g, result)``.

    If the left branch has a node exactly at the match point the match index is
    moved one step towards ``a`` and the match retried, at most three times.
    """
    cfg = cfg or ShootingConfig()
    m = find_match_index(model, eps, grid, cfg)
    sweeper = _Sweeper(model, eps, grid)
    left_full = sweeper.run(0, m + 1, cfg.seed_left)
    right_full = sweeper.run(grid.n - 1, max(m - 1 - MAX_NODE_SHIFTS, 0), cfg.seed_right)

    error = None
    for shift in range(MAX_NODE_SHIFTS + 1):
        mi = m - shift
        if mi < 1:
            break
        try:
            result = _match(eps, left_full[: mi + 2].copy(), right_full[mi - 1:].copy(),
                            mi, grid.delta)
        except MatchPointNode as exc:
            error = exc
            continue
        return result.mismatch, result
    raise error if error is not None else MatchPointNode(f"no usable match point near index {m}")


def count_sign_changes(psi: np.ndarray) -> int:
    nz = psi[psi != 0.0]
    if nz.size < 2:
        return 0
    sign = np.signbit(nz)
    return int(np.count_nonzero(sign[1:] != sign[:-1]))


def left_node_count(model: PotentialModel, eps: float, grid: Grid,
                    cfg: ShootingConfig | None = None) -> int:
    """Interior zeros of the left solution carried across the whole grid.

    By Sturm oscillation this counts the eigenvalues below ``eps``; the scan
    uses it to split intervals that hold more than one level.
    """
    cfg = cfg or ShootingConfig()
    psi = _Sweeper(model, eps, grid).run(0, grid.n - 1, cfg.seed_left)
    return count_sign_changes(psi[1:])
