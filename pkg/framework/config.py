"""
Configuration loading.

Defaults come from `LraConfig`; `LRA_<FIELD>` environment variables (a `.env`
file is honoured) override them, a flat key=value config file overrides the
environment, and explicit keyword overrides win over everything.
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from dotenv import dotenv_values, load_dotenv
from pydantic import ValidationError

from framework.errors import ConfigError
from models.config import LraConfig

ENV_PREFIX = "LRA_"

load_dotenv()


def _config_fields() -> set[str]:
    return set(LraConfig.model_fields)


def _from_environment() -> Dict[str, str]:
    values: Dict[str, str] = {}
    for field in _config_fields():
        raw = os.getenv(ENV_PREFIX + field.upper())
        if raw is not None:
            values[field] = raw
    return values


def _from_file(path: Path) -> Dict[str, str]:
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    values: Dict[str, str] = {}
    for key, value in dotenv_values(path).items():
        name = key.strip().lower()
        if name not in _config_fields():
            raise ConfigError(f"unknown config key '{key}' in {path}")
        if value is None:
            raise ConfigError(f"config key '{key}' in {path} has no value")
        values[name] = value.strip()
    return values


def load_config(
    path: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    use_environment: bool = True,
) -> LraConfig:
    """Merge defaults, environment, config file and overrides into a validated `LraConfig`."""
    merged: Dict[str, Any] = {}
    if use_environment:
        merged.update(_from_environment())
    if path is not None:
        merged.update(_from_file(Path(path)))
    if overrides:
        merged.update({key: value for key, value in overrides.items() if value is not None})

    # a changed max_phrase drags max_inter along unless max_inter was given too
    if "max_phrase" in merged and "max_inter" not in merged:
        try:
            merged["max_inter"] = int(merged["max_phrase"]) - 2
        except (TypeError, ValueError):
            pass

    try:
        return LraConfig(**merged)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(part) for part in err['loc']) or 'config'}: {err['msg']}" for err in exc.errors()
        )
        raise ConfigError(f"invalid configuration: {problems}") from exc
