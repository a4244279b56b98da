"""
FracPolya Stiffness Cache Manager

Stores assembled stiffness matrices on disk keyed by (alpha, L, N, abs_tol,
panel_nodes), so repeated runs (and `report` after `verify`) skip assembly.

Container, one file per matrix:
    FPSTIFF <version> <alpha> <L> <N> <abs_tol> <panel_nodes> <sha256>\\n
    lower triangle, row-major, little-endian float64

Floats in the header are written with repr() and round-trip exactly. A file
whose payload does not hash to the header checksum is logged and treated as
a miss.

Usage:
    cache = get_stiffness_cache()            # $FRACPOLYA_CACHE_DIR or ~/.fracpolya/cache
    matrix = cache.load(N, alpha, L, quad)   # None on miss
    cache.save(matrix)
    for header in cache.inspect(): ...
    cache.clear()
"""

from __future__ import annotations

import hashlib
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

from .defaultsConfig import CLI_DEFAULTS, debug_module, warn_module
from .errors import CacheError
from .interval_solver import QuadratureSpec, StiffnessMatrix

MAGIC = "FPSTIFF"
FORMAT_VERSION = 1
SUFFIX = ".fps"
_DTYPE = np.dtype('<f8')


@dataclass(frozen=True)
class CacheHeader:
    version: int
    alpha: float
    L: float
    N: int
    abs_tol: float
    panel_nodes: int
    checksum: str

    def to_line(self) -> str:
        return (f"{MAGIC} {self.version} {self.alpha!r} {self.L!r} {self.N} "
                f"{self.abs_tol!r} {self.panel_nodes} {self.checksum}\n")

    @classmethod
    def parse(cls, line: str) -> "CacheHeader":
        fields = line.split()
        if len(fields) != 8 or fields[0] != MAGIC:
            raise CacheError(f"not a stiffness cache header: {line[:60]!r}")
        try:
            return cls(int(fields[1]), float(fields[2]), float(fields[3]), int(fields[4]),
                       float(fields[5]), int(fields[6]), fields[7])
        except ValueError as e:
            raise CacheError(f"malformed stiffness cache header: {e}") from e


def default_cache_dir() -> Path:
    override = os.environ.get(CLI_DEFAULTS['cache_env_var'])
    return Path(override or CLI_DEFAULTS['cache_dir']).expanduser()


def _pack(entries: np.ndarray) -> bytes:
    rows, cols = np.tril_indices(entries.shape[0])
    return np.ascontiguousarray(entries[rows, cols], dtype=_DTYPE).tobytes()


def _unpack(payload: bytes, N: int) -> np.ndarray:
    expected = N * (N + 1) // 2
    values = np.frombuffer(payload, dtype=_DTYPE)
    if values.size != expected:
        raise CacheError(f"payload holds {values.size} values, expected {expected}")
    entries = np.zeros((N, N))
    rows, cols = np.tril_indices(N)
    entries[rows, cols] = values
    entries[cols, rows] = values
    return entries


class StiffnessCacheManager:
    """
    Disk cache of stiffness matrices.

    - load() never raises on a bad file: it logs and reports a miss
    - save() writes through a temp file and rename
    - one lock per manager serialises file access within the process
    """

    def __init__(self, cache_dir: Optional[os.PathLike] = None):
        self._dir = Path(cache_dir).expanduser() if cache_dir else default_cache_dir()
        self._lock = threading.Lock()

    @property
    def cache_dir(self) -> Path:
        return self._dir

    def path_for(self, N: int, alpha: float, L: float, quad: QuadratureSpec) -> Path:
        name = f"stiff_a{float(alpha)!r}_L{float(L)!r}_N{int(N)}_tol{quad.abs_tol!r}" \
               f"_p{quad.panel_nodes}{SUFFIX}"
        return self._dir / name

    def read(self, path: Path) -> StiffnessMatrix:
        """Parse and verify one cache file; raises CacheError when it is unusable."""
        try:
            raw = path.read_bytes()
        except OSError as e:
            raise CacheError(f"cannot read {path}: {e}") from e
        newline = raw.find(b"\n")
        if newline < 0:
            raise CacheError(f"{path} has no header line")
        try:
            header = CacheHeader.parse(raw[:newline].decode('ascii'))
        except UnicodeDecodeError as e:
            raise CacheError(f"{path} header is not ASCII") from e
        if header.version != FORMAT_VERSION:
            raise CacheError(f"{path} has format version {header.version}")
        payload = raw[newline + 1:]
        if hashlib.sha256(payload).hexdigest() != header.checksum:
            raise CacheError(f"{path} fails its checksum")
        quad = QuadratureSpec(panel_nodes=header.panel_nodes, abs_tol=header.abs_tol)
        return StiffnessMatrix(header.N, header.alpha, header.L, quad,
                               _unpack(payload, header.N))

    def load(self, N: int, alpha: float, L: float,
             quad: QuadratureSpec) -> Optional[StiffnessMatrix]:
        path = self.path_for(N, alpha, L, quad)
        with self._lock:
            if not path.exists():
                debug_module('cache', f"miss: {path.name}")
                return None
            try:
                matrix = self.read(path)
            except CacheError as e:
                warn_module('cache', f"ignoring cache file: {e}")
                return None
        if (matrix.N, matrix.alpha, matrix.L) != (int(N), float(alpha), float(L)):
            warn_module('cache', f"{path.name} header does not match its key")
            return None
        debug_module('cache', f"hit: {path.name}")
        return StiffnessMatrix(matrix.N, matrix.alpha, matrix.L, quad, matrix.entries)

    def save(self, matrix: StiffnessMatrix) -> bool:
        """Write atomically; a failed write is logged and reported as False."""
        path = self.path_for(matrix.N, matrix.alpha, matrix.L, matrix.quad)
        payload = _pack(matrix.entries)
        header = CacheHeader(FORMAT_VERSION, float(matrix.alpha), float(matrix.L), matrix.N,
                             matrix.quad.abs_tol, matrix.quad.panel_nodes,
                             hashlib.sha256(payload).hexdigest())
        with self._lock:
            try:
                self._dir.mkdir(parents=True, exist_ok=True)
                fd, temp_path = tempfile.mkstemp(suffix='.tmp', prefix='fracpolya_',
                                                 dir=str(self._dir))
                try:
                    with os.fdopen(fd, 'wb') as f:
                        f.write(header.to_line().encode('ascii'))
                        f.write(payload)
                    os.replace(temp_path, path)
                except Exception:
                    if os.path.exists(temp_path):
                        os.remove(temp_path)
                    raise
            except OSError as e:
                warn_module('cache', f"could not write {path}: {e}")
                return False
        debug_module('cache', f"stored: {path.name}")
        return True

    def inspect(self) -> List[CacheHeader]:
        """Headers of every readable cache file, sorted by file name."""
        headers = []
        with self._lock:
            if not self._dir.is_dir():
                return headers
            for path in sorted(self._dir.glob(f"*{SUFFIX}")):
                try:
                    with open(path, 'rb') as f:
                        line = f.readline().decode('ascii')
                    headers.append(CacheHeader.parse(line))
                except (OSError, UnicodeDecodeError, CacheError) as e:
                    warn_module('cache', f"unreadable cache file {path.name}: {e}")
        return headers

    def clear(self) -> int:
        """Delete every cache file; returns how many were removed."""
        removed = 0
        with self._lock:
            if not self._dir.is_dir():
                return 0
            for path in self._dir.glob(f"*{SUFFIX}"):
                try:
                    path.unlink()
                    removed += 1
                except OSError as e:
                    warn_module('cache', f"could not remove {path.name}: {e}")
        debug_module('cache', f"cleared {removed} file(s) from {self._dir}")
        return removed


# Global singletons, one per directory
_cache_managers = {}


def get_stiffness_cache(cache_dir: Optional[os.PathLike] = None) -> StiffnessCacheManager:
    """Get or create the cache manager for `cache_dir` (default directory when None)."""
    key = str(Path(cache_dir).expanduser() if cache_dir else default_cache_dir())
    if key not in _cache_managers:
        _cache_managers[key] = StiffnessCacheManager(key)
    return _cache_managers[key]


__all__ = ["CacheHeader", "StiffnessCacheManager", "get_stiffness_cache", "default_cache_dir"]
