import os
import random
import subprocess
import sys

import numpy as np
import pytest

from qtorus import _isotropic_py, kernels, oracle, selftest

needs_compiled = pytest.mark.skipif(not kernels.compiled_available(), reason="compiled extension not built")


def _forms(rng, n, m):
    return np.array([selftest.random_alternating(rng, n).tolist() for _ in range(m)], dtype=np.int64)


@needs_compiled
@pytest.mark.parametrize("seed", range(12))
def test_backends_return_identical_results(seed):
    rng = random.Random(seed)
    n, m = rng.randint(2, 4), rng.randint(1, 3)
    F = _forms(rng, n, m)
    V = oracle.box_vectors(n, 2)
    a = kernels.isotropic_search(V, F, n, 10**6, backend="compiled")
    b = kernels.isotropic_search(V, F, n, 10**6, backend="python")
    assert a == b


@needs_compiled
def test_backends_agree_on_abort_and_roots():
    rng = random.Random(99)
    F = _forms(rng, 5, 1)
    V = oracle.box_vectors(5, 2)
    for limit in (10, 200):
        assert kernels.isotropic_search(V, F, 5, limit, backend="compiled") == kernels.isotropic_search(
            V, F, 5, limit, backend="python"
        )
    roots = [0, 3, 7]
    assert kernels.isotropic_search(V, F, 5, 10**6, roots, backend="compiled") == kernels.isotropic_search(
        V, F, 5, 10**6, roots, backend="python"
    )


def test_python_backend_handles_large_entries():
    # entries whose products overflow 64 bits take the object-dtype path
    big = 3**25
    F = np.array([[[0, big], [-big, 0]]], dtype=np.int64)
    assert _isotropic_py.isotropic_search(oracle.box_vectors(2, 2), F, 2, 10**4)[0] == 1


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.isotropic_search(oracle.box_vectors(2, 1), np.zeros((0, 2, 2), dtype=np.int64), 2, 10, backend="gpu")


def test_environment_forces_pure_python():
    code = "from qtorus import kernels; print(kernels.default_backend())"
    env = dict(os.environ, QTORUS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def _scaled_form(scale):
    return np.array([[[0, scale, scale], [-scale, 0, scale], [-scale, -scale, 0]]], dtype=np.int64)


@pytest.mark.parametrize("scale", [3 << 58, 1 << 61])
@pytest.mark.parametrize("backend", sorted(kernels.BACKENDS))
def test_overflowing_entries_stay_exact(backend, scale):
    # rank-2 form on Q^3, scaled so 64-bit arithmetic would wrap
    res = kernels.isotropic_search(oracle.box_vectors(3, 2), _scaled_form(scale), 3, 10**5, backend=backend)
    assert res == kernels.isotropic_search(oracle.box_vectors(3, 2), _scaled_form(1), 3, 10**5, backend="python")


@needs_compiled
@pytest.mark.parametrize("scale", [3 << 58, 1 << 61])
def test_compiled_kernel_detects_overflow(scale):
    with pytest.raises(OverflowError):
        kernels.BACKENDS["compiled"](oracle.box_vectors(3, 2), _scaled_form(scale), 3, 10**5, None)
