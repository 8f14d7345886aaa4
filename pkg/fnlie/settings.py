"""
Configuration: built-in defaults, ``~/.fnlie/config`` and ``FNLIE_*`` variables.
"""

import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Dict, Optional

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

ENV_PREFIX = "FNLIE_"
FORMATS = ("text", "json")


@dataclass(frozen=True)
class Settings:
    """Defaults for the command line options."""
    seed: int = 0
    trials: int = 20
    dim: int = 2
    max_degree: int = 1
    coeff_degree: int = 1
    format: str = "text"
    jobs: int = 1

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}, got '{self.format}'")
        if self.trials < 1 or self.jobs < 1:
            raise ValueError("trials and jobs must be positive")

    def as_dict(self) -> Dict[str, object]:
        return asdict(self)


_FIELDS = {f.name: f.type for f in fields(Settings)}


def config_path() -> Path:
    return Path.home() / ".fnlie" / "config"


def read_config(path: Optional[Path] = None) -> Dict[str, str]:
    """Simple key=value config file; missing file means no entries."""
    path = path or config_path()
    configs: Dict[str, str] = {}
    if path.exists():
        with open(path, "r", encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if "=" in line and not line.startswith("#"):
                    key, value = line.split("=", 1)
                    configs[key.strip()] = value.strip()
    return configs


def write_config(key: str, value: str, path: Optional[Path] = None) -> Path:
    """Validate and store one setting."""
    if key not in _FIELDS:
        raise KeyError(f"Unknown setting '{key}'; known: {', '.join(_FIELDS)}")
    _coerce(Settings(), {key: value})
    path = path or config_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    configs = read_config(path)
    configs[key] = value
    with open(path, "w", encoding="utf-8") as f:
        for name, entry in configs.items():
            f.write(f"{name}={entry}\n")
    return path


def _coerce(settings: Settings, raw: Dict[str, str]) -> Settings:
    values = {}
    for key, value in raw.items():
        if key not in _FIELDS:
            logger.warning(f"Ignoring unknown setting '{key}'")
            continue
        try:
            values[key] = value if key == "format" else int(value)
        except ValueError as exc:
            raise ValueError(f"Setting '{key}' must be an integer, got '{value}'") from exc
    return replace(settings, **values)


def load_settings(path: Optional[Path] = None, environ: Optional[Dict[str, str]] = None) -> Settings:
    """Defaults < config file < environment (``.env`` loaded through python-dotenv)."""
    if environ is None:
        load_dotenv()
        environ = dict(os.environ)
    settings = _coerce(Settings(), read_config(path))
    from_env = {key[len(ENV_PREFIX):].lower(): value
                for key, value in environ.items() if key.startswith(ENV_PREFIX)}
    settings = _coerce(settings, from_env)
    logger.debug(f"Effective settings: {settings}")
    return settings
