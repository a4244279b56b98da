import hashlib

import numpy as np
import pytest

from FracPolya.core.errors import CacheError
from FracPolya.core.interval_solver import QuadratureSpec, assemble_stiffness
from FracPolya.core.stiffness_cache import (CacheHeader, StiffnessCacheManager,
                                            default_cache_dir, get_stiffness_cache)


@pytest.fixture(scope="module")
def matrix():
    return assemble_stiffness(9, 0.3, 2.0)


def test_round_trip_is_bit_identical(tmp_path, matrix):
    cache = StiffnessCacheManager(tmp_path)
    assert cache.save(matrix)
    loaded = cache.load(9, 0.3, 2.0, matrix.quad)
    assert loaded is not None
    assert np.array_equal(loaded.entries, matrix.entries)
    assert (loaded.N, loaded.alpha, loaded.L) == (9, 0.3, 2.0)


def test_header_layout(tmp_path, matrix):
    cache = StiffnessCacheManager(tmp_path)
    cache.save(matrix)
    path = cache.path_for(9, 0.3, 2.0, matrix.quad)
    raw = path.read_bytes()
    line, payload = raw.split(b"\n", 1)
    fields = line.decode("ascii").split()
    assert fields[:7] == ["FPSTIFF", "1", "0.3", "2.0", "9", repr(matrix.quad.abs_tol),
                          str(matrix.quad.panel_nodes)]
    assert fields[7] == hashlib.sha256(payload).hexdigest()
    assert len(payload) == 8 * 9 * 10 // 2
    first = np.frombuffer(payload[:8], dtype="<f8")[0]
    assert first == matrix.entries[0, 0]


def test_corrupt_file_is_a_miss(tmp_path, matrix):
    cache = StiffnessCacheManager(tmp_path)
    cache.save(matrix)
    path = cache.path_for(9, 0.3, 2.0, matrix.quad)
    raw = bytearray(path.read_bytes())
    raw[-1] ^= 0xFF
    path.write_bytes(bytes(raw))
    assert cache.load(9, 0.3, 2.0, matrix.quad) is None
    with pytest.raises(CacheError):
        cache.read(path)


def test_key_includes_quadrature(tmp_path, matrix):
    cache = StiffnessCacheManager(tmp_path)
    cache.save(matrix)
    assert cache.load(9, 0.3, 2.0, QuadratureSpec(panel_nodes=20)) is None
    assert cache.load(9, 0.3, 2.0, QuadratureSpec(abs_tol=1e-8)) is None
    assert cache.load(9, 0.31, 2.0, matrix.quad) is None


def test_inspect_and_clear(tmp_path, matrix):
    cache = StiffnessCacheManager(tmp_path / "nested")
    assert cache.inspect() == []
    assert cache.clear() == 0
    cache.save(matrix)
    headers = cache.inspect()
    assert len(headers) == 1 and headers[0].N == 9 and headers[0].alpha == 0.3
    assert cache.clear() == 1
    assert cache.inspect() == []


def test_header_parse_rejects_garbage():
    with pytest.raises(CacheError):
        CacheHeader.parse("NOPE 1 2 3")
    with pytest.raises(CacheError):
        CacheHeader.parse("FPSTIFF x 0.5 2.0 9 1e-10 16 abc")


def test_default_dir_follows_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("FRACPOLYA_CACHE_DIR", str(tmp_path / "env"))
    assert default_cache_dir() == tmp_path / "env"
    assert get_stiffness_cache().cache_dir == tmp_path / "env"
    assert get_stiffness_cache(tmp_path) is get_stiffness_cache(tmp_path)


def test_unwritable_directory_is_logged_not_raised(tmp_path, matrix):
    blocker = tmp_path / "file"
    blocker.write_text("not a directory")
    assert StiffnessCacheManager(blocker / "sub").save(matrix) is False
