"""The compiled and pure GF(2) kernels must be interchangeable."""

import random

import pytest

from icsie import _gf2pure as pure
from icsie import kernels

try:
    from icsie import _gf2fast as fast
except ImportError:
    fast = None

needs_fast = pytest.mark.skipif(fast is None, reason="compiled kernels not built")


def test_selected_backend_known():
    assert kernels.BACKEND in ("pure", "compiled")


def _random_cases(seed):
    rng = random.Random(seed)
    for _ in range(200):
        n = rng.randrange(1, 12)
        nrows = rng.randrange(1, 8)
        rows = [rng.randrange(1 << n) for _ in range(nrows)]
        yield n, rows, rng


@needs_fast
def test_rank_agrees():
    for n, rows, _ in _random_cases(1):
        assert pure.gf2_rank(rows) == fast.gf2_rank(rows)


@needs_fast
def test_mul_vec_agrees():
    for n, rows, rng in _random_cases(2):
        ncols = rng.randrange(1, 10)
        cols = [rng.randrange(1 << n) for _ in range(ncols)]
        for z in rows:
            assert pure.gf2_mul_vec(z, cols) == fast.gf2_mul_vec(z, cols)


@needs_fast
def test_first_failing_agrees():
    for n, zs, rng in _random_cases(3):
        ncols = rng.randrange(1, 8)
        cols = [rng.randrange(1 << n) for _ in range(ncols)]
        for need in (1, 2, 3):
            assert (pure.gf2_first_failing(zs, cols, need)
                    == fast.gf2_first_failing(zs, cols, need))


@needs_fast
def test_span_intersects_agrees():
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randrange(1, 9)
        d = rng.randrange(0, min(n, 5) + 1)
        basis = [rng.randrange(1, 1 << n) for _ in range(d)]
        m = rng.randrange(1, 5)
        fmasks = [1 << rng.randrange(n) for _ in range(m)]
        xmasks = [rng.randrange(1 << n) for _ in range(m)]
        caps = [rng.randrange(0, 4) for _ in range(m)]
        assert (pure.gf2_span_intersects(basis, fmasks, xmasks, caps)
                == fast.gf2_span_intersects(basis, fmasks, xmasks, caps))


def test_pure_rank_small_known():
    assert pure.gf2_rank([0b10, 0b01, 0b11]) == 2
    assert pure.gf2_rank([0]) == 0


def test_pure_mul_vec_known():
    # z selects rows; output bit k (from the high end) is parity of column k
    cols = [0b110, 0b011]
    assert pure.gf2_mul_vec(0b100, cols) == 0b10
    assert pure.gf2_mul_vec(0b111, cols) == 0b00


def test_env_override_forces_pure(monkeypatch):
    import importlib

    monkeypatch.setenv("ICSIE_PURE_KERNELS", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "pure"
    finally:
        monkeypatch.delenv("ICSIE_PURE_KERNELS")
        importlib.reload(kernels)
