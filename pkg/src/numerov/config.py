"""``key = value`` solve configuration: parsing, defaults, validation, round trip."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ConfigError
from .potentials import MAX_L, CustomTable, Harmonic, HydrogenRadial, load_potential_table
from .shooting import Grid

PROBLEMS = ("harmonic", "hydrogen", "custom")
MAX_STATES = 64

DOMAIN_DEFAULTS = {
    "harmonic": {"a": -10.0, "b": 10.0, "delta": 0.01, "n_states": 6},
    "hydrogen": {"b": 80.0, "delta": 0.004, "n_states": 3},
    "custom": {"n_states": 3},
}
# custom tables without an explicit step use this many intervals
CUSTOM_STEPS = 2000


@dataclass(frozen=True)
class SolveConfig:
    problem: str
    a: float | None = None
    b: float | None = None
    delta: float | None = None
    l: int | None = None
    n_states: int = 1
    delta_e: float | None = None
    eps_tol: float = 1e-9
    g_tol: float = 1e-6
    max_bisect: int = 100
    out_dir: str = "numerov_out"
    emit_svg: bool = True
    potential_file: str | None = None


KEYS = tuple(f.name for f in fields(SolveConfig))
_FLOAT_KEYS = {"a", "b", "delta", "delta_e", "eps_tol", "g_tol"}
_INT_KEYS = {"l", "n_states", "max_bisect"}
_BOOL_KEYS = {"emit_svg"}
_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


def read_pairs(text: str) -> dict[str, tuple[str, int]]:
    """Split config text into ``{key: (raw value, line number)}``."""
    pairs: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError("unknown key", key=key, line=lineno)
        if key in pairs:
            raise ConfigError(f"duplicate key (first set on line {pairs[key][1]})",
                              key=key, line=lineno)
        if not value:
            raise ConfigError("missing value", key=key, line=lineno)
        pairs[key] = (value, lineno)
    return pairs


def _convert(key: str, value: str, line: int | None):
    try:
        if key in _FLOAT_KEYS:
            out = float(value)
            if not math.isfinite(out):
                raise ValueError
            return out
        if key in _INT_KEYS:
            return int(value)
        if key in _BOOL_KEYS:
            lowered = value.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ValueError
    except ValueError:
        raise ConfigError(f"invalid value {value!r}", key=key, line=line) from None
    return value


def build_config(pairs: dict[str, tuple[str, int | None]]) -> SolveConfig:
    """Apply defaults to raw pairs and validate the result."""
    line = {key: ln for key, (_, ln) in pairs.items()}
    values = {key: _convert(key, raw, line[key]) for key, (raw, _) in pairs.items()}

    if "problem" not in values:
        raise ConfigError("missing required key", key="problem")
    problem = values["problem"]
    if problem not in PROBLEMS:
        raise ConfigError(f"must be one of {', '.join(PROBLEMS)}, got {problem!r}",
                          key="problem", line=line.get("problem"))

    for key, default in DOMAIN_DEFAULTS[problem].items():
        values.setdefault(key, default)
    if problem == "hydrogen":
        values.setdefault("a", values["delta"])
        values.setdefault("l", 0)
    elif "l" in values:
        raise ConfigError("only applies to problem = hydrogen", key="l", line=line.get("l"))

    cfg = SolveConfig(**values)
    _validate(cfg, line)
    return cfg


def _validate(cfg: SolveConfig, line: dict[str, int | None]):
    def fail(key, message):
        raise ConfigError(message, key=key, line=line.get(key))

    if cfg.problem == "hydrogen":
        if not cfg.a > 0:
            fail("a", "a must be > 0 (the radial equation is singular at x = 0)")
        if not 0 <= cfg.l <= MAX_L:
            fail("l", f"must be in [0, {MAX_L}]")
    if cfg.problem == "custom":
        if cfg.potential_file is None:
            fail("potential_file", "required when problem = custom")
    elif cfg.potential_file is not None:
        fail("potential_file", "only applies to problem = custom")

    if cfg.a is not None and cfg.b is not None and not cfg.b > cfg.a:
        fail("b", "b must be greater than a")
    if cfg.delta is not None and not cfg.delta > 0:
        fail("delta", "must be > 0")
    if cfg.a is not None and cfg.b is not None and cfg.delta is not None:
        try:
            Grid.from_step(cfg.a, cfg.b, cfg.delta)
        except ValueError as exc:
            fail("delta", str(exc))
    if not 1 <= cfg.n_states <= MAX_STATES:
        fail("n_states", f"must be in [1, {MAX_STATES}]")
    if cfg.delta_e is not None and not cfg.delta_e > 0:
        fail("delta_e", "must be > 0")
    if not cfg.eps_tol >= 1e-13:
        fail("eps_tol", "must be >= 1e-13")
    if not cfg.g_tol > 0:
        fail("g_tol", "must be > 0")
    if not 1 <= cfg.max_bisect <= 200:
        fail("max_bisect", "must be in [1, 200]")


def parse_config(text: str) -> SolveConfig:
    return build_config(read_pairs(text))


def _format(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(value) if isinstance(value, float) else str(value)


def serialize_config(cfg: SolveConfig) -> str:
    lines = [f"{key} = {_format(getattr(cfg, key))}" for key in KEYS
             if getattr(cfg, key) is not None]
    return "\n".join(lines) + "\n"


def build_problem(cfg: SolveConfig):
    """Return the ``(model, grid)`` pair a config describes.

    Raises
    ------
    ConfigError
        If a custom table cannot be read or does not cover the domain.
    """
    if cfg.problem == "harmonic":
        model = Harmonic()
    elif cfg.problem == "hydrogen":
        model = HydrogenRadial(cfg.l)
    else:
        try:
            model = load_potential_table(Path(cfg.potential_file))
        except (OSError, ValueError) as exc:
            raise ConfigError(str(exc), key="potential_file") from None
    a = cfg.a if cfg.a is not None else float(model.x[0])
    b = cfg.b if cfg.b is not None else float(model.x[-1])
    delta = cfg.delta if cfg.delta is not None else (b - a) / CUSTOM_STEPS
    try:
        grid = Grid.from_step(a, b, delta)
    except ValueError as exc:
        raise ConfigError(str(exc), key="delta") from None
    if isinstance(model, CustomTable) and not model.covers(grid.a, grid.b):
        raise ConfigError(
            f"table spans [{model.x[0]!r}, {model.x[-1]!r}] but the domain is [{a!r}, {b!r}]",
            key="potential_file",
        )
    return model, grid
