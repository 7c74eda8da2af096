"""Settings: built-in defaults < config/settings.json < environment."""

import json
import os
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Dict, Optional

from .core.errors import Diagnostic, ValidationError

SETTINGS_PATH = Path(__file__).resolve().parents[2] / "config" / "settings.json"


@dataclass(frozen=True)
class Settings:
    max_states: int = 1_000_000
    rewrite_fuel: int = 1_000_000
    pomset_cap: int = 6
    channel_capacity: int = 2
    brute_force_cap: int = 40
    log_dir: str = "logs"
    seed: int = 0
    jobs: int = 1
    axiom_instances: int = 200
    default_params: Dict[str, int] = field(default_factory=lambda: {"n": 2, "delta": 2})

    def with_overrides(self, **kwargs) -> "Settings":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


_INT_KEYS = ("max_states", "rewrite_fuel", "pomset_cap", "channel_capacity", "brute_force_cap", "jobs", "axiom_instances")


def _check(settings: Settings) -> Settings:
    problems = [Diagnostic("error", f"setting '{key}' must be a positive integer")
                for key in _INT_KEYS
                if not isinstance(getattr(settings, key), int) or getattr(settings, key) < 1]
    if problems:
        raise ValidationError(problems)
    return settings


def load_settings(path: Optional[Path] = None) -> Settings:
    path = Path(path) if path else SETTINGS_PATH
    data: Dict = {}
    if path.is_file():
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh) or {}
    known = {k: v for k, v in data.items() if k in Settings.__dataclass_fields__}
    settings = Settings(**known)
    env_states = os.environ.get("APTC_MAX_STATES")
    if env_states:
        try:
            settings = replace(settings, max_states=int(env_states))
        except ValueError:
            raise ValidationError([Diagnostic("error", f"APTC_MAX_STATES is not an integer: {env_states!r}")])
    env_logs = os.environ.get("APTC_LOG_DIR")
    if env_logs:
        settings = replace(settings, log_dir=env_logs)
    return _check(settings)


@lru_cache(maxsize=1)
def settings() -> Settings:
    """Process-wide settings, read once."""
    return load_settings()
