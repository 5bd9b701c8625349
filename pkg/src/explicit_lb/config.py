"""Run configuration: defaults, ``key = value`` files and environment overrides.

Precedence, lowest first: built-in defaults, the config file, environment
variables named ``EXPLICIT_LB_<KEY>``, then explicit command-line values.
"""
from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field, fields
from pathlib import Path

from .arith_primes import DEFAULT_LIMIT
from .errors import DomainError

ENV_PREFIX = "EXPLICIT_LB_"
FORMATS = ("json", "csv", "human")
SUMMATION_MODES = ("kahan", "fsum")
# not configuration keys; read elsewhere
_ENV_RESERVED = {"EXPLICIT_LB_DISABLE_NUMBA"}


@dataclass(frozen=True)
class RunConfig:
    summation: str = "kahan"
    rel_tol: float = 1e-12
    abs_tol: float = 1e-12
    sieve_limit: int = DEFAULT_LIMIT
    zeta_zeros: str | None = None
    dirichlet_zeros: tuple[str, ...] = field(default_factory=tuple)
    output_format: str = "json"
    parallelism: int = 1

    def __post_init__(self):
        if self.summation not in SUMMATION_MODES:
            raise DomainError(f"summation must be one of {SUMMATION_MODES}, got {self.summation!r}")
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.sieve_limit < 2:
            raise DomainError(f"sieve_limit={self.sieve_limit} < 2")
        if self.output_format not in FORMATS:
            raise DomainError(f"output_format must be one of {FORMATS}, got {self.output_format!r}")
        if self.parallelism < 1:
            raise DomainError(f"parallelism must be >= 1, got {self.parallelism}")

    def replace(self, **changes) -> "RunConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["dirichlet_zeros"] = list(self.dirichlet_zeros)
        return d


def _coerce(name: str, raw: str):
    f = {f.name: f for f in fields(RunConfig)}[name]
    t = str(f.type)
    raw = raw.strip()
    try:
        if t == "int":
            return int(float(raw)) if "e" in raw.lower() else int(raw)
        if t == "float":
            return float(raw)
    except ValueError:
        raise DomainError(f"{name}: cannot read {raw!r}") from None
    if "tuple" in t:
        return tuple(p.strip() for p in raw.split(",") if p.strip())
    if "None" in t and raw.lower() in ("", "none"):
        return None
    return raw


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse ``key = value`` lines; '#' starts a comment, blank lines are skipped."""
    known = {f.name for f in fields(RunConfig)}
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{source}:{lineno}: expected key = value")
        key, value = (p.strip() for p in line.split("=", 1))
        key = key.replace("-", "_").lower()
        if key not in known:
            raise DomainError(f"{source}:{lineno}: unknown key {key!r}")
        out[key] = _coerce(key, value)
    return out


def env_overrides(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    known = {f.name for f in fields(RunConfig)}
    out = {}
    for var, value in environ.items():
        if not var.startswith(ENV_PREFIX) or var in _ENV_RESERVED:
            continue
        key = var[len(ENV_PREFIX):].lower()
        if key in known:
            out[key] = _coerce(key, value)
    return out


def load_config(path=None, environ=None, **cli) -> RunConfig:
    values = {}
    if path is not None:
        p = Path(path)
        values.update(parse_config_text(p.read_text(encoding="utf-8"), str(p)))
    values.update(env_overrides(environ))
    values.update({k: v for k, v in cli.items() if v is not None})
    return RunConfig(**values)
