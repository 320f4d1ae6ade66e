"""
Configuración centralizada de ff-pseudoarc.
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from dotenv import dotenv_values


@dataclass
class Settings:
    """Configuración de la libreria y del CLI."""

    # Oraculo
    MAX_ENUM: int = 10**8

    # Barridos aleatorios
    SEED: int = 0
    CAP_INSTANCES: int = 500
    AP_INSTANCES: int = 200
    TOWER_EXTENSIONS: int = 10

    # Render
    THEME: str = "light"
    SVG_CELL: int = 24

    # Debug
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"

    def __str__(self) -> str:
        return f"<Settings max_enum={self.MAX_ENUM} seed={self.SEED} theme={self.THEME}>"


def _as_bool(value: Any, default: bool = False) -> bool:
    if value is None:
        return default
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in {"1", "true", "yes", "on", "y", "si"}


def _as_int(value: Any, default: int) -> int:
    if value is None:
        return default
    try:
        return int(value)
    except (TypeError, ValueError):
        return default


def _load_raw_config() -> dict[str, Any]:
    candidates: list[Path] = []
    custom_env_path = os.environ.get("FF_ENV_FILE")
    if custom_env_path:
        candidates.append(Path(custom_env_path))

    cwd = Path.cwd()
    candidates.extend([cwd / "ff.env", cwd / ".env"])

    dotenv_config: dict[str, Any] = {}
    for env_path in candidates:
        try:
            if env_path.exists():
                loaded = dotenv_values(env_path)
                dotenv_config.update({k: v for k, v in loaded.items() if v is not None})
                break
        except OSError:
            continue

    merged = dict(dotenv_config)
    merged.update(os.environ)
    return merged


def get_settings() -> Settings:
    """Factory para obtener settings a partir de .env y variables de entorno."""
    values = _load_raw_config()

    max_enum = _as_int(values.get("FF_MAX_ENUM"), 10**8)
    return Settings(
        MAX_ENUM=max_enum if max_enum > 0 else 10**8,
        SEED=_as_int(values.get("FF_SEED"), 0),
        CAP_INSTANCES=_as_int(values.get("FF_CAP_INSTANCES"), 500),
        AP_INSTANCES=_as_int(values.get("FF_AP_INSTANCES"), 200),
        TOWER_EXTENSIONS=_as_int(values.get("FF_TOWER_EXTENSIONS"), 10),
        THEME=str(values.get("FF_THEME", "light")),
        SVG_CELL=_as_int(values.get("FF_SVG_CELL"), 24),
        DEBUG=_as_bool(values.get("FF_DEBUG"), False),
        LOG_LEVEL=str(values.get("FF_LOG_LEVEL", "WARNING")).upper(),
    )
