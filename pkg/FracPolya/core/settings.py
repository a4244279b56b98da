"""
FracPolya Run Settings Manager - user-wide and per-run configuration.

Settings are plain `key = value` text; `#` starts a comment. They are layered
as

    defaults < ~/.fracpolya/settings.conf < --config FILE < command-line flags

and every value is coerced to the type of its default. Unknown keys are
rejected, so a typo never silently falls back to a default.

Usage:
    from .settings import get_settings_manager

    mgr = get_settings_manager()
    settings = mgr.load_settings("batch.conf")     # dict of all keys
    settings = mgr.apply_overrides(settings, {"basis": 512, "abs_tol": None})
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from .defaultsConfig import (CLI_DEFAULTS, QUADRATURE_DEFAULTS, SOLVER_DEFAULTS,
                             VERDICT_DEFAULTS, debug_module, warn_module)
from .errors import InputError


def _setting_defaults() -> Dict[str, Any]:
    return {
        'panel_nodes': QUADRATURE_DEFAULTS['panel_nodes'],
        'abs_tol': QUADRATURE_DEFAULTS['abs_tol'],
        'truncation_policy': QUADRATURE_DEFAULTS['truncation_policy'],
        'max_doublings': QUADRATURE_DEFAULTS['max_doublings'],
        'basis': SOLVER_DEFAULTS['basis'],
        'length': SOLVER_DEFAULTS['length'],
        'workers': SOLVER_DEFAULTS['workers'],
        'margin': VERDICT_DEFAULTS['margin'],
        'threshold_tol': VERDICT_DEFAULTS['threshold_tol'],
        'format': CLI_DEFAULTS['format'],
        'cache_dir': '',
        'report_dir': CLI_DEFAULTS['report_dir'],
    }


def _coerce(key: str, raw: str, default: Any) -> Any:
    try:
        if isinstance(default, bool):
            lowered = raw.lower()
            if lowered not in ('true', 'false', '1', '0', 'yes', 'no'):
                raise ValueError(raw)
            return lowered in ('true', '1', 'yes')
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
    except ValueError:
        raise InputError(f"setting {key!r}: cannot read {raw!r} as {type(default).__name__}")
    return raw


class RunSettingsManager:
    """Loads layered run settings."""

    def __init__(self, settings_dir: Optional[os.PathLike] = None):
        base = settings_dir or CLI_DEFAULTS['settings_dir']
        self._settings_path = Path(base).expanduser() / CLI_DEFAULTS['settings_file']

    @staticmethod
    def defaults() -> Dict[str, Any]:
        return _setting_defaults()

    def parse_text(self, text: str, source: str = "<text>") -> Dict[str, Any]:
        defaults = _setting_defaults()
        values: Dict[str, Any] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise InputError(f"{source}:{lineno}: expected 'key = value'")
            key, raw = (part.strip() for part in line.split('=', 1))
            key = key.replace('-', '_')
            if key not in defaults:
                raise InputError(f"{source}:{lineno}: unknown setting {key!r}")
            values[key] = _coerce(key, raw, defaults[key])
        return values

    def parse_file(self, path: os.PathLike) -> Dict[str, Any]:
        try:
            text = Path(path).read_text(encoding='utf-8')
        except OSError as e:
            raise InputError(f"cannot read config file {path}: {e}") from e
        return self.parse_text(text, str(path))

    def load_settings(self, config_path: Optional[os.PathLike] = None) -> Dict[str, Any]:
        """
        Defaults, then the user-wide file, then `config_path`.
        An unreadable user-wide file is logged and skipped; bad keys or
        values in either file raise InputError.
        """
        settings = _setting_defaults()
        if self.has_user_settings():
            try:
                text = self._settings_path.read_text(encoding='utf-8')
            except OSError as e:
                warn_module('settings', f"ignoring user settings: {e}")
            else:
                settings.update(self.parse_text(text, self.get_settings_path()))
                debug_module('settings', f"loaded user settings from {self.get_settings_path()}")
        else:
            debug_module('settings', f"no user settings at {self.get_settings_path()}")
        if config_path is not None:
            settings.update(self.parse_file(config_path))
            debug_module('settings', f"loaded run settings from {config_path}")
        return settings

    @staticmethod
    def apply_overrides(settings: Mapping[str, Any],
                        overrides: Mapping[str, Any]) -> Dict[str, Any]:
        """Command-line values win; None means the flag was not given."""
        merged = dict(settings)
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in merged:
                raise InputError(f"unknown setting {key!r}")
            merged[key] = value
        return merged

    def get_settings_path(self) -> str:
        return str(self._settings_path)

    def has_user_settings(self) -> bool:
        return self._settings_path.exists()


_settings_manager: Optional[RunSettingsManager] = None


def get_settings_manager() -> RunSettingsManager:
    """Get singleton RunSettingsManager instance."""
    global _settings_manager
    if _settings_manager is None:
        _settings_manager = RunSettingsManager()
    return _settings_manager


__all__ = ["RunSettingsManager", "get_settings_manager"]
