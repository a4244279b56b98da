"""
FracPolya version.

An installed distribution reports its own metadata; a source checkout reads
metadata.json next to this file, then falls back to the constant below.
"""

import json
from importlib import metadata
from pathlib import Path

_FALLBACK_VERSION = "0.1.0"
__license__ = "Apache-2.0"


def _version_from_json() -> str:
    path = Path(__file__).with_name("metadata.json")
    try:
        versions = json.loads(path.read_text(encoding="utf-8")).get("versions") or []
    except (OSError, ValueError):
        return _FALLBACK_VERSION
    return versions[0].get("version", _FALLBACK_VERSION) if versions else _FALLBACK_VERSION


def get_version() -> str:
    try:
        return metadata.version("fracpolya")
    except metadata.PackageNotFoundError:
        return _version_from_json()


__version__ = get_version()
