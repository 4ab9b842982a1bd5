"""Pure-numpy batch kernels: vectorized over a stack of pure-state vectors.

Each function takes psis of shape (S, m*n) with unit-norm rows, applies one
map family to every projector |ψ⟩⟨ψ|, and returns two (S,) arrays holding the
smallest eigenvalue of each image and of its partial transpose on A.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"


def _stack_margins(stack: np.ndarray, m: int, n: int):
    s, d = stack.shape[0], m * n
    herm = (stack + stack.conj().transpose(0, 2, 1)) / 2
    psd = np.linalg.eigvalsh(herm)[:, 0]
    pt = stack.reshape(s, m, n, m, n).transpose(0, 3, 2, 1, 4).reshape(s, d, d)
    pt = (pt + pt.conj().transpose(0, 2, 1)) / 2
    ppt = np.linalg.eigvalsh(pt)[:, 0]
    return psd, ppt


def _projectors(psis: np.ndarray) -> np.ndarray:
    return psis[:, :, None] * psis.conj()[:, None, :]


def reduction_margins(psis: np.ndarray, m: int, n: int, alpha: float):
    rho = _projectors(psis)
    img = np.eye(m * n)[None, :, :] + alpha * rho
    return _stack_margins(img, m, n)


def _tilde_a_stack(rho: np.ndarray, psis: np.ndarray, n: int) -> np.ndarray:
    # I_2 ⊗ Tr_A(ρ) − ρ, valid for M=2
    s = psis.shape[0]
    blocks = psis.reshape(s, 2, n)
    marginal = np.einsum("sia,sib->sab", blocks, blocks.conj())
    out = -rho.copy()
    out[:, :n, :n] += marginal
    out[:, n:, n:] += marginal
    return out


def bh2_margins(psis: np.ndarray, n: int, alpha: float, beta: float):
    rho = _projectors(psis)
    img = np.eye(2 * n)[None, :, :] + alpha * rho + beta * _tilde_a_stack(rho, psis, n)
    return _stack_margins(img, 2, n)


def four_param_margins(
    psis: np.ndarray,
    n: int,
    alpha: float,
    beta: float,
    gamma: float,
    delta: float,
    w_b: np.ndarray,
    w_full: np.ndarray,
):
    s, d = psis.shape[0], 2 * n
    rho = _projectors(psis)
    pt_b = rho.reshape(s, 2, n, 2, n).transpose(0, 1, 4, 3, 2).reshape(s, d, d)
    tilde_b = np.einsum("ab,sbc,dc->sad", w_b, pt_b, w_b.conj())
    full_t = rho.transpose(0, 2, 1)
    tilde_full = np.einsum("ab,sbc,dc->sad", w_full, full_t, w_full.conj())
    img = (
        np.eye(d)[None, :, :]
        + alpha * rho
        + beta * _tilde_a_stack(rho, psis, n)
        + gamma * tilde_b
        + delta * tilde_full
    )
    return _stack_margins(img, 2, n)


def ando_2xn_margins(psis: np.ndarray, n: int, k: int, alpha: float):
    s = psis.shape[0]
    rho = _projectors(psis)
    rd = (psis * psis.conj()).real.reshape(s, 2, n)
    diag = (n - k - 1) * rd + rd.sum(axis=2, keepdims=True)
    flipped = rd[:, ::-1, :]
    for shift_count in range(k + 1):
        diag = diag + np.roll(flipped, shift_count, axis=2)
    img = alpha * rho
    idx = np.arange(2 * n)
    img[:, idx, idx] += diag.reshape(s, 2 * n)
    return _stack_margins(img, 2, n)


def ando_mxn_margins(psis: np.ndarray, m: int, n: int, alpha: float):
    s = psis.shape[0]
    rho = _projectors(psis)
    rd = (psis * psis.conj()).real.reshape(s, m, n)
    diag = (m - 1) * n * rd + rd.sum(axis=2, keepdims=True)
    img = alpha * rho
    idx = np.arange(m * n)
    img[:, idx, idx] += diag.reshape(s, m * n)
    return _stack_margins(img, m, n)
