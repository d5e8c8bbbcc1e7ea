"""Problem definitions in dimensionless units.

Harmonic oscillator
    ``x`` in units of ``sqrt(hbar / (m omega))``, energy in ``hbar omega``;
    ``psi'' = -k2 psi`` with ``k2 = 2 (eps - x**2 / 2)``.
Hydrogen radial equation
    ``x = r / a_B``, energy in Rydberg ``e**2 / (2 a_B)``;
    ``y'' = -(2/x) y' - (eps - V_eff) y``.
Tabulated potential
    piecewise-linear ``V(x)`` in units where ``hbar**2 / (2m) = 1``, so
    ``k2 = eps - V``. A flat table on ``[0, 1]`` is the particle in a box with
    levels ``(n pi)**2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from .errors import DomainError

if TYPE_CHECKING:
    from .shooting import Grid

RYDBERG_EV = 13.605693
MAX_L = 10


class Form(enum.Enum):
    NORMAL = "normal"
    GENERALIZED = "generalized"


def harmonic_k2(x, eps):
    return 2.0 * (eps - 0.5 * x * x)


def effective_potential(x, l: int):
    """Centrifugal barrier plus Coulomb term, ``l(l+1)/x**2 - 2/x``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("effective potential is singular at x <= 0")
    v = l * (l + 1) / (x * x) - 2.0 / x
    return float(v) if v.ndim == 0 else v


def hydrogen_coeffs(x, eps, l: int):
    """Return ``(p, p', s)`` of the dimensionless radial equation at ``x``.

    Works elementwise on arrays. ``s`` is computed as
    ``eps - effective_potential(x, l)`` so the two agree bitwise.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("radial coefficients are singular at x <= 0")
    p = 2.0 / x
    dp = -2.0 / (x * x)
    s = eps - effective_potential(x, l)
    if x.ndim == 0:
        return float(p), float(dp), float(s)
    return p, dp, s


def eps_to_ev(eps):
    return eps * RYDBERG_EV


@dataclass(frozen=True)
class Harmonic:
    form = Form.NORMAL
    kinetic_factor = 2.0

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * x * x

    def k2(self, x, eps):
        return harmonic_k2(np.asarray(x, dtype=float), eps)


@dataclass(frozen=True)
class HydrogenRadial:
    l: int = 0
    form = Form.GENERALIZED
    kinetic_factor = 1.0

    def __post_init__(self):
        if not (isinstance(self.l, int) and 0 <= self.l <= MAX_L):
            raise ValueError(f"l must be an integer in [0, {MAX_L}], got {self.l!r}")

    def potential(self, x):
        return effective_potential(x, self.l)

    def coefficients(self, x, eps):
        return hydrogen_coeffs(x, eps, self.l)


@dataclass(frozen=True, eq=False)
class CustomTable:
    """Piecewise-linear potential through ``(x, v)`` samples."""

    x: np.ndarray
    v: np.ndarray
    source: str | None = field(default=None, compare=False)
    form = Form.NORMAL
    kinetic_factor = 1.0

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        v = np.array(self.v, dtype=float)
        if x.ndim != 1 or x.shape != v.shape or x.size < 2:
            raise ValueError("potential table needs at least two (x, V) rows")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise ValueError("potential table contains non-finite values")
        if np.any(np.diff(x) <= 0):
            raise ValueError("potential table x values must be strictly increasing")
        x.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "v", v)

    def covers(self, a: float, b: float) -> bool:
        return self.x[0] <= a and b <= self.x[-1]

    def potential(self, x):
        return np.interp(np.asarray(x, dtype=float), self.x, self.v)

    def k2(self, x, eps):
        return eps - self.potential(x)


PotentialModel = Harmonic | HydrogenRadial | CustomTable


def load_potential_table(path) -> CustomTable:
    """Read a two-column ``x V(x)`` text file; ``#`` starts a comment."""
    path = Path(path)
    rows = []
    with path.open() as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected two columns, got {len(parts)}")
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: not a number: {line!r}") from None
    if not rows:
        raise ValueError(f"{path}: no data rows")
    xs, vs = zip(*rows)
    return CustomTable(np.array(xs), np.array(vs), source=str(path))


def potential_minimum(model: PotentialModel, grid: Grid) -> tuple[float, float]:
    """Grid point where ``V`` is smallest, and the value there."""
    if isinstance(model, Harmonic) and grid.a <= 0.0 <= grid.b:
        return 0.0, 0.0
    x = grid.x
    v = model.potential(x)
    i = int(np.argmin(v))
    return float(x[i]), float(v[i])
