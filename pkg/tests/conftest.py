"""Shared fixtures: isolated home directory, debug state, small spectra."""

import pytest

from FracPolya.core import defaultsConfig, settings
from FracPolya.core.interval_solver import QuadratureSpec, ritz_upper_bounds


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """Keep ~/.fracpolya and the cache env var out of every test."""
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    monkeypatch.delenv(defaultsConfig.CLI_DEFAULTS['cache_env_var'], raising=False)
    monkeypatch.setattr(settings, "_settings_manager", None)
    monkeypatch.setattr(defaultsConfig, "DEBUG_MODULES", dict(defaultsConfig.DEBUG_MODULES))
    monkeypatch.setattr(defaultsConfig, "DEBUG_ENABLED", False)
    yield home


@pytest.fixture
def quad():
    return QuadratureSpec()


@pytest.fixture(scope="session")
def spectrum_alpha1():
    """Ritz values for alpha = 1 on (0, 2) with N = 64."""
    return ritz_upper_bounds(64, 1.0, 2.0)


@pytest.fixture(scope="session")
def spectrum_alpha2():
    return ritz_upper_bounds(64, 2.0, 2.0)
