"""Backend consistency: the jitted kernels, the vectorized numpy kernels, and
the single-operator map API must agree on identical inputs."""

import os
import subprocess
import sys

import numpy as np
import pytest

from sepmaps import BipartiteOperator, Dims, hermitian_spectrum, partial_transpose
from sepmaps.kernels import numpy_backend
from sepmaps.maps import (
    AndoParams,
    FourParams,
    PAULI_Y,
    ando_2xn_apply,
    ando_mxn_apply,
    bh_two_param_apply,
    four_param_apply,
    reduction_like_apply,
)
from sepmaps.linalg import breuer_hall_unitary
from sepmaps.oracle import sample_pure_states

numba_backend = pytest.importorskip("sepmaps.kernels.numba_backend")


def reference_margins(psis, dims, apply_fn):
    psd, ppt = [], []
    for vec in psis:
        rho = BipartiteOperator(Dims(*dims), np.outer(vec, vec.conj()))
        img = apply_fn(rho)
        psd.append(hermitian_spectrum(img)[0])
        ppt.append(hermitian_spectrum(partial_transpose(img, "A"))[0])
    return np.array(psd), np.array(ppt)


CASES = [
    (
        "reduction", (2, 3),
        lambda psis: ("reduction_margins", (psis, 2, 3, 1.3)),
        lambda x: reduction_like_apply(x, 1.3),
    ),
    (
        "bh2", (2, 4),
        lambda psis: ("bh2_margins", (psis, 4, 1.1, -0.4)),
        lambda x: bh_two_param_apply(x, 1.1, -0.4),
    ),
    (
        "four_param", (2, 4),
        lambda psis: (
            "four_param_margins",
            (psis, 4, 0.9, 0.3, -0.2, 0.5,
             np.kron(np.eye(2), breuer_hall_unitary(4)),
             np.kron(PAULI_Y, breuer_hall_unitary(4))),
        ),
        lambda x: four_param_apply(x, FourParams(0.9, 0.3, -0.2, 0.5)),
    ),
    (
        "ando2xN", (2, 3),
        lambda psis: ("ando_2xn_margins", (psis, 3, 1, 0.6)),
        lambda x: ando_2xn_apply(x, AndoParams(1, 0.6)),
    ),
    (
        "andoMxN", (3, 3),
        lambda psis: ("ando_mxn_margins", (psis, 3, 3, 0.4)),
        lambda x: ando_mxn_apply(x, 0.4),
    ),
]


@pytest.mark.parametrize("name,dims,kernel_call,apply_fn", CASES, ids=[c[0] for c in CASES])
def test_backends_agree_with_map_api(name, dims, kernel_call, apply_fn):
    rng = np.random.default_rng(17)
    psis = sample_pure_states(Dims(*dims), 20, rng)
    fn_name, args = kernel_call(psis)
    ref_psd, ref_ppt = reference_margins(psis, dims, apply_fn)
    for backend in (numpy_backend, numba_backend):
        psd, ppt = getattr(backend, fn_name)(*args)
        assert np.abs(psd - ref_psd).max() < 1e-12, backend.BACKEND_NAME
        assert np.abs(ppt - ref_ppt).max() < 1e-12, backend.BACKEND_NAME


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, SEPMAPS_BACKEND="numpy")
    out = subprocess.run(
        [sys.executable, "-c", "from sepmaps import kernels; print(kernels.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_env_flag_rejects_unknown_backend():
    env = dict(os.environ, SEPMAPS_BACKEND="cuda")
    out = subprocess.run(
        [sys.executable, "-c", "import sepmaps.kernels"],
        capture_output=True, text=True, env=env,
    )
    assert out.returncode != 0
    assert "SEPMAPS_BACKEND" in out.stderr
