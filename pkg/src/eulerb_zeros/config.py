"""Run configuration: validated defaults, `key = value` files, env override.

Precedence, lowest to highest: built-in defaults, config file, the cache-dir
environment variable, explicit flag values.  Flags always win so a command
line is self-describing; the env var only covers the cache directory, which
is the one setting that legitimately varies per machine rather than per run.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .textio import parse_eps_token

ENV_CACHE_VAR = "EULERB_ZEROS_CACHE"

DEFAULT_N_LIST = (8, 16, 32, 64)
DEFAULT_EPS = Fraction(1, 10**30)

_EPS_CEILING = Fraction(1, 10**6)


@dataclass(frozen=True)
class RunConfig:
    """Validated, immutable settings for one CLI invocation."""

    n_list: tuple[int, ...] = DEFAULT_N_LIST
    eps: Fraction = DEFAULT_EPS
    precision_bits: int = 128
    cache_dir: Path | None = None
    output_dir: Path = Path(".")
    plot: bool = False

    def __post_init__(self) -> None:
        normalized = tuple(sorted(set(self.n_list)))
        if not normalized:
            raise ValueError("n_list must not be empty")
        for n in normalized:
            if not isinstance(n, int) or n < 2:
                raise ValueError(f"every n must be an integer >= 2, got {n!r}")
        object.__setattr__(self, "n_list", normalized)
        eps = Fraction(self.eps)
        if not 0 < eps <= _EPS_CEILING:
            raise ValueError("eps must lie in (0, 1e-6]")
        object.__setattr__(self, "eps", eps)
        if not isinstance(self.precision_bits, int) or self.precision_bits < 64:
            raise ValueError("precision_bits must be an integer >= 64")
        if self.cache_dir is not None:
            object.__setattr__(self, "cache_dir", Path(self.cache_dir))
        object.__setattr__(self, "output_dir", Path(self.output_dir))


def parse_n_list(text: str) -> tuple[int, ...]:
    items = [piece.strip() for piece in text.split(",")]
    if not any(items):
        raise ValueError("n list is empty")
    return tuple(int(piece) for piece in items if piece)


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in {"true", "1", "yes", "on"}:
        return True
    if lowered in {"false", "0", "no", "off"}:
        return False
    raise ValueError(f"not a boolean: {text!r}")


_FILE_PARSERS = {
    "n_list": parse_n_list,
    "eps": parse_eps_token,
    "precision_bits": int,
    "cache_dir": Path,
    "output_dir": Path,
    "plot": _parse_bool,
}


def load_config_file(path: Path) -> dict:
    """Parse a `key = value` file; unknown keys are hard errors."""
    settings: dict = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected `key = value`, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        parser = _FILE_PARSERS.get(key)
        if parser is None:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            settings[key] = parser(value.strip())
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return settings


def build_config(
    config_file: Path | None = None,
    env: Mapping[str, str] | None = None,
    **overrides,
) -> RunConfig:
    """Merge defaults, file, env cache override, and flag overrides in order.

    Overrides with value None mean "not given on the command line" and are
    skipped, so argparse defaults of None flow through cleanly.
    """
    if env is None:
        env = os.environ
    settings: dict = {}
    if config_file is not None:
        settings.update(load_config_file(config_file))
    cache_override = env.get(ENV_CACHE_VAR)
    if cache_override:
        settings["cache_dir"] = Path(cache_override)
    for key, value in overrides.items():
        if key not in _FILE_PARSERS:
            raise ValueError(f"unknown config override {key!r}")
        if value is not None:
            settings[key] = value
    return RunConfig(**settings)
