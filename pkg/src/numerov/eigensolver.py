"""Energy scan, bisection refinement and assembly of normalized eigenstates."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    ConvergenceError,
    DegenerateSolution,
    NumerovError,
    PartialResultError,
    SolveError,
)
from .potentials import HydrogenRadial, PotentialModel, potential_minimum
from .shooting import (
    Grid,
    ShootingConfig,
    ShootingResult,
    count_sign_changes,
    left_node_count,
    mismatch,
)

DELTA_E_FLOOR = 1e-4
DELTA_E_DIVISOR = 2000
# relative amplitude below which samples are ignored when counting nodes
NODE_AMPLITUDE_FLOOR = 1e-12
# scan step cap for wells with no finite top (hard walls only)
MAX_SCAN_STEPS = 200_000
# subdivision stops once an interval is this fraction of the scan step
MIN_SPLIT_FRACTION = 1e-7
CEILING_MARGIN = 1e-3


class MissingStateWarning(UserWarning):
    """Node counts of the returned states skip an integer."""


@dataclass(frozen=True)
class ScanConfig:
    delta_e: float
    eps_tol: float = 1e-9
    g_tol: float = 1e-6
    max_bisect: int = 100
    n_states: int = 1

    def __post_init__(self):
        if not (self.delta_e > 0 and math.isfinite(self.delta_e)):
            raise ValueError(f"delta_e must be finite and > 0, got {self.delta_e!r}")
        if not self.eps_tol >= 1e-13:
            raise ValueError(f"eps_tol must be >= 1e-13, got {self.eps_tol!r}")
        if not self.g_tol > 0:
            raise ValueError(f"g_tol must be > 0, got {self.g_tol!r}")
        if not 1 <= self.max_bisect <= 200:
            raise ValueError(f"max_bisect must be in [1, 200], got {self.max_bisect!r}")
        if self.n_states < 1:
            raise ValueError(f"n_states must be positive, got {self.n_states!r}")


@dataclass(frozen=True)
class EigenSolution:
    index: int
    eps: float
    psi: np.ndarray
    g_final: float
    bisect_iters: int
    match_index: int


class Refinement(NamedTuple):
    eps: float
    result: ShootingResult
    iterations: int


def well_ceiling(model: PotentialModel, grid: Grid) -> float:
    """Highest energy that still has decaying tails at the walls.

    For the radial problem only the outer edge matters; elsewhere it is the
    lower of the two boundary values. A well whose boundary values do not rise
    above its minimum is confined by the walls alone and has no ceiling.
    """
    v = model.potential(grid.x)
    if isinstance(model, HydrogenRadial):
        return min(0.0, float(v[-1]))
    top = float(min(v[0], v[-1]))
    if top <= float(np.min(v)):
        return math.inf
    return top


def default_delta_e(model: PotentialModel, grid: Grid) -> float:
    """Scan increment: a 2000th of the well depth, at least ``1e-4``.

    Wells without a ceiling use a twentieth of the hard-wall ground level
    ``(pi / (b - a))**2`` instead.
    """
    top = well_ceiling(model, grid)
    _, v_min = potential_minimum(model, grid)
    if math.isfinite(top):
        return max((top - v_min) / DELTA_E_DIVISOR, DELTA_E_FLOOR)
    ground = (math.pi / (grid.b - grid.a)) ** 2 / model.kinetic_factor
    return max(ground / 20, DELTA_E_FLOOR)


class _Probe(NamedTuple):
    eps: float
    sign: float
    nodes: int


def scan_brackets(model: PotentialModel, grid: Grid, scan: ScanConfig,
                  shoot: ShootingConfig | None = None) -> list[tuple[float, float]]:
    """Walk up from the well bottom in steps of ``delta_e`` and bracket levels.

    An interval is a bracket when the matching function changes sign across
    it. Intervals where the left-solution node count rises by two or more, or
    rises without a sign change, are bisected until each piece holds a single
    sign change.

    Raises
    ------
    PartialResultError
        If the ceiling of the well is reached with fewer than ``n_states``
        brackets. The brackets found so far travel with the exception.
    """
    shoot = shoot or ShootingConfig()
    _, v_min = potential_minimum(model, grid)
    top = well_ceiling(model, grid)
    min_width = scan.delta_e * MIN_SPLIT_FRACTION

    def probe(eps: float) -> _Probe:
        _, res = mismatch(model, eps, grid, shoot)
        return _Probe(eps, res.wronskian, left_node_count(model, eps, grid, shoot))

    def resolve(lo: _Probe, hi: _Probe, out: list):
        changed = lo.sign * hi.sign < 0 or hi.sign == 0
        extra = hi.nodes - lo.nodes
        if changed and extra <= 1:
            out.append((lo.eps, hi.eps))
            return
        if extra >= 2 or (extra == 1 and not changed):
            if hi.eps - lo.eps > min_width:
                mid = probe(0.5 * (lo.eps + hi.eps))
                resolve(lo, mid, out)
                if len(out) < scan.n_states:
                    resolve(mid, hi, out)
                return
        if changed:
            out.append((lo.eps, hi.eps))

    # the last, partial step ends just under the ceiling
    last = top - scan.delta_e * CEILING_MARGIN
    brackets: list[tuple[float, float]] = []
    if v_min + scan.delta_e >= top:
        raise PartialResultError(
            f"delta_e={scan.delta_e!r} does not fit inside the well [{v_min!r}, {top!r}]",
            brackets,
        )
    # the well bottom itself serves as the zero-node reference, so levels
    # below the first step are still caught by node counting
    prev = probe(v_min)
    for k in range(1, MAX_SCAN_STEPS + 1):
        eps = v_min + k * scan.delta_e
        if eps >= top:
            if prev.eps >= last:
                break
            eps = last
        cur = probe(eps)
        resolve(prev, cur, brackets)
        if len(brackets) >= scan.n_states:
            return brackets[: scan.n_states]
        if eps == last:
            break
        prev = cur
    raise PartialResultError(
        f"scan reached eps={prev.eps!r} before finding "
        f"{scan.n_states} level(s)",
        brackets,
    )


def refine_bisection(model: PotentialModel, grid: Grid, bracket: tuple[float, float],
                     scan: ScanConfig, shoot: ShootingConfig | None = None) -> Refinement:
    """Bisect a bracket until it is narrower than ``eps_tol`` or ``|g| < g_tol``.

    The interval is halved on the sign of the pole-free matching function
    (``ShootingResult.wronskian``), which shares its zeros with ``g``.
    """
    shoot = shoot or ShootingConfig()
    lo, hi = bracket
    g_lo, res_lo = mismatch(model, lo, grid, shoot)
    if g_lo == 0.0:
        return Refinement(lo, res_lo, 0)
    g_hi, res_hi = mismatch(model, hi, grid, shoot)
    if g_hi == 0.0:
        return Refinement(hi, res_hi, 0)
    w_lo, w_hi = res_lo.wronskian, res_hi.wronskian
    if not w_lo * w_hi < 0:
        raise ValueError(f"bracket ({lo!r}, {hi!r}) does not straddle a level")

    mid, res = lo, res_lo
    for it in range(1, scan.max_bisect + 1):
        mid = 0.5 * (lo + hi)
        g, res = mismatch(model, mid, grid, shoot)
        if abs(g) < scan.g_tol or hi - lo < scan.eps_tol or res.wronskian == 0.0:
            return Refinement(mid, res, it)
        if (res.wronskian < 0) == (w_lo < 0):
            lo, w_lo = mid, res.wronskian
        else:
            hi = mid
    raise ConvergenceError(
        f"no convergence after {scan.max_bisect} bisections", mid, res.mismatch
    )


def count_nodes(psi) -> int:
    """Sign changes between samples above ``1e-12 * max|psi|``."""
    psi = np.asarray(psi, dtype=float)
    peak = np.max(np.abs(psi)) if psi.size else 0.0
    if peak == 0.0:
        return 0
    kept = psi[np.abs(psi) >= NODE_AMPLITUDE_FLOOR * peak]
    return count_sign_changes(kept)


def normalize(psi, delta: float) -> np.ndarray:
    """Scale to unit trapezoid norm and make the first significant sample positive."""
    psi = np.asarray(psi, dtype=float)
    total = float(np.trapezoid(psi * psi, dx=delta))
    if not total > 0 or not math.isfinite(total):
        raise DegenerateSolution(f"cannot normalize: trapezoid norm is {total!r}")
    out = psi / math.sqrt(total)
    peak = np.max(np.abs(out))
    first = np.flatnonzero(np.abs(out) > NODE_AMPLITUDE_FLOOR * peak)[0]
    if out[first] < 0:
        out = -out
    return out


def _rescale_for_norm(psi: np.ndarray) -> np.ndarray:
    # stitched branches can sit near 1e250; bring them to O(1) before squaring
    peak = np.max(np.abs(psi))
    return psi / peak if peak > 0 else psi


def solve_states(model: PotentialModel, grid: Grid, scan: ScanConfig,
                 shoot: ShootingConfig | None = None) -> list[EigenSolution]:
    """Find the lowest ``scan.n_states`` levels with normalized wavefunctions.

    Raises
    ------
    SolveError
        When the scan comes up short or a bracket fails to converge. The
        exception carries every state that did converge.
    """
    shoot = shoot or ShootingConfig()
    failures: list[tuple[str, str]] = []
    try:
        brackets = scan_brackets(model, grid, scan, shoot)
    except PartialResultError as exc:
        brackets = exc.brackets
        failures.append(("scan", str(exc)))
    except NumerovError as exc:
        brackets = []
        failures.append(("scan", str(exc)))

    solutions = []
    for k, bracket in enumerate(brackets):
        try:
            eps, res, iters = refine_bisection(model, grid, bracket, scan, shoot)
            psi = normalize(_rescale_for_norm(res.stitched()), grid.delta)
        except NumerovError as exc:
            failures.append((f"level {k} in [{bracket[0]!r}, {bracket[1]!r}]", str(exc)))
            continue
        solutions.append(EigenSolution(
            index=count_nodes(psi),
            eps=eps,
            psi=psi,
            g_final=res.mismatch,
            bisect_iters=iters,
            match_index=res.match_index,
        ))
    solutions.sort(key=lambda s: s.eps)

    nodes = [s.index for s in solutions]
    expected = list(range(nodes[0], nodes[0] + len(nodes))) if nodes else []
    if nodes and (nodes != expected or nodes[0] != 0):
        warnings.warn(f"node counts {nodes} are not consecutive from 0", MissingStateWarning,
                      stacklevel=2)
    if failures:
        raise SolveError(solutions, failures)
    return solutions
