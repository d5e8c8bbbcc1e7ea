"""Three-point finite-difference kernels.

Two recurrences advance a sampled solution by one grid step:

* the standard Numerov step for ``psi'' = -k2(x) psi``, fourth order globally;
* a generalized step for ``psi'' = -p(x) psi' - s(x) psi`` in which the
  first-derivative term is folded in through one-sided difference
  approximations of ``psi'(x +- delta)``.

The scalar formulas are compiled with numba so the sweeps in
:mod:`numerov.shooting` evaluate exactly the same floating-point expression as
the public single-step functions here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from numba import njit

from .errors import StepFailure

# |denominator| below this is treated as vanishing
DENOMINATOR_FLOOR = 1e-12


@dataclass(frozen=True)
class StepTriple:
    """Two known samples ``psi(x - delta)``, ``psi(x)`` and the step."""

    psi_prev: float
    psi_cur: float
    delta: float

    def __post_init__(self):
        if not (math.isfinite(self.delta) and self.delta > 0):
            raise ValueError(f"delta must be finite and > 0, got {self.delta!r}")


@dataclass(frozen=True)
class NormalFormCoeffs:
    """``k2`` sampled at ``x - delta``, ``x`` and ``x + delta``."""

    k2_prev: float
    k2_cur: float
    k2_next: float

    def __post_init__(self):
        if not all(map(math.isfinite, (self.k2_prev, self.k2_cur, self.k2_next))):
            raise ValueError("k2 samples must be finite")


@dataclass(frozen=True)
class GeneralizedCoeffs:
    """``p`` and ``p'`` at ``x``; ``s`` at ``x - delta``, ``x``, ``x + delta``."""

    p_cur: float
    dp_cur: float
    s_prev: float
    s_cur: float
    s_next: float

    def __post_init__(self):
        values = (self.p_cur, self.dp_cur, self.s_prev, self.s_cur, self.s_next)
        if not all(map(math.isfinite, values)):
            raise ValueError("coefficients must be finite (singular points must be off-grid)")


@njit(cache=True)
def standard_terms(k2_prev, k2_cur, k2_next, delta):
    """Return the (prev, cur, next) weights of the standard Numerov relation.

    ``next * psi(x+d) = cur * psi(x) - prev * psi(x-d)``.
    """
    h = delta * delta / 12.0
    w_prev = 1.0 + k2_prev * h
    w_cur = 2.0 * (1.0 - k2_cur * (5.0 * h))
    w_next = 1.0 + k2_next * h
    return w_prev, w_cur, w_next


@njit(cache=True)
def general_terms(p, dp, s_prev, s_cur, s_next, delta):
    """Return the (prev, cur, next) weights of the generalized relation.

    With ``p = dp = 0`` the weights are bitwise equal to :func:`standard_terms`
    evaluated with ``k2 := s``.
    """
    h = delta * delta / 12.0
    half = p * delta / 2.0
    w_prev = 1.0 - half + (s_prev + dp) * h
    w_cur = 2.0 * (1.0 - (s_cur - dp / 5.0) * (5.0 * h))
    w_next = 1.0 + half + (s_next + dp) * h
    return w_prev, w_cur, w_next


def _advance(psi_prev, psi_cur, w_prev, w_cur, w_next):
    if not abs(w_next) >= DENOMINATOR_FLOOR:
        raise StepFailure(f"vanishing recurrence denominator {w_next!r}")
    return (w_cur * psi_cur - w_prev * psi_prev) / w_next


def numerov_step(t: StepTriple, c: NormalFormCoeffs) -> float:
    """Advance ``psi'' = -k2 psi`` by one step and return ``psi(x + delta)``.

    Raises
    ------
    StepFailure
        If ``1 + delta**2 * k2_next / 12`` vanishes.
    """
    w = standard_terms(c.k2_prev, c.k2_cur, c.k2_next, t.delta)
    return float(_advance(t.psi_prev, t.psi_cur, *w))


def numerov_step_general(t: StepTriple, g: GeneralizedCoeffs) -> float:
    """Advance ``psi'' = -p psi' - s psi`` by one step and return ``psi(x + delta)``.

    Stepping towards decreasing ``x`` is the same relation solved for the
    other end: pass ``-p`` and swap ``s_prev``/``s_next``.
    """
    w = general_terms(g.p_cur, g.dp_cur, g.s_prev, g.s_cur, g.s_next, t.delta)
    return float(_advance(t.psi_prev, t.psi_cur, *w))


def normal_form_q(P: float, dP: float, Q: float) -> float:
    """Coefficient of ``u'' + q u = 0`` equivalent to ``y'' + P y' + Q y = 0``."""
    # the P-dependent terms are combined first so that they cancel before
    # meeting Q when P = 2/x
    return Q - (P * P / 4.0 + dP / 2.0)


def central_derivative(psi_minus: float, psi_plus: float, delta: float) -> float:
    return (psi_plus - psi_minus) / (2.0 * delta)
