"""Run configuration shared by the CLI and the verification suites.

Precedence: command-line flags > config file (key=value lines) > the
WEIER_TOL environment variable > built-in defaults.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace

from .errors import DomainError
from .evaluate import TOL_FLOOR
from .forms import CONVENTIONS
from .shells import SHELL_CAP

__all__ = ["RunConfig", "load_config"]

_FORMATS = ("json", "csv", "text")
_ROUTES = ("auto", "shell", "series")


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-8
    shell_cap: int = SHELL_CAP
    output_format: str = "text"
    seed: int = 0
    convention: str = "paper-b"
    route: str = "auto"
    jobs: int = field(default_factory=lambda: os.cpu_count() or 1)
    slack: float = 1e-6

    def __post_init__(self):
        if not self.tolerance >= TOL_FLOOR:
            raise DomainError(f"tolerance must be >= {TOL_FLOOR}, got {self.tolerance}")
        if self.shell_cap < 1:
            raise DomainError("shell cap must be positive")
        if self.output_format not in _FORMATS:
            raise DomainError(f"output format must be one of {_FORMATS}")
        if self.convention not in CONVENTIONS:
            raise DomainError(f"convention must be one of {CONVENTIONS}")
        if self.route not in _ROUTES:
            raise DomainError(f"route must be one of {_ROUTES}")
        if self.jobs < 1:
            raise DomainError("jobs must be >= 1")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_FIELD_PARSERS = {
    "tolerance": float,
    "shell_cap": int,
    "output_format": str,
    "seed": int,
    "convention": str,
    "route": str,
    "jobs": int,
    "slack": float,
}


def _parse_config_file(path: str) -> dict:
    values: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, _, val = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in _FIELD_PARSERS:
                raise DomainError(f"{path}:{lineno}: unknown config key {key!r}")
            try:
                values[key] = _FIELD_PARSERS[key](val.strip())
            except ValueError as exc:
                raise DomainError(f"{path}:{lineno}: bad value for {key}: {val.strip()!r}") from exc
    return values


def load_config(path: str | None = None, overrides: dict | None = None, env: dict | None = None) -> RunConfig:
    """Merge defaults, WEIER_TOL, an optional config file, and explicit overrides."""
    env = os.environ if env is None else env
    values: dict = {}
    tol_env = env.get("WEIER_TOL")
    if tol_env:
        try:
            values["tolerance"] = float(tol_env)
        except ValueError as exc:
            raise DomainError(f"WEIER_TOL is not a number: {tol_env!r}") from exc
    if path:
        values.update(_parse_config_file(path))
    for key, val in (overrides or {}).items():
        if val is not None:
            values[key] = val
    cfg = RunConfig()
    return replace(cfg, **values)
