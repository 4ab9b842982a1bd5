"""Numba-jitted batch kernels; same contracts as numpy_backend.

Per-sample loops compile away the Python overhead that dominates scans over
many small matrices.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BACKEND_NAME = "numba"


@njit(cache=True)
def _pt_a(x, m, n):
    return x.reshape(m, n, m, n).transpose(2, 1, 0, 3).copy().reshape(m * n, m * n)


@njit(cache=True)
def _min_eig(x):
    h = (x + x.conj().T) * 0.5
    return np.linalg.eigvalsh(np.ascontiguousarray(h))[0]


@njit(cache=True)
def _margins(img, m, n):
    return _min_eig(img), _min_eig(_pt_a(img, m, n))


@njit(cache=True)
def _projector(v):
    d = v.shape[0]
    out = np.empty((d, d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            out[i, j] = v[i] * np.conj(v[j])
    return out


@njit(cache=True)
def reduction_margins(psis, m, n, alpha):
    s = psis.shape[0]
    d = m * n
    psd = np.empty(s)
    ppt = np.empty(s)
    eye = np.eye(d, dtype=np.complex128)
    for t in range(s):
        img = eye + alpha * _projector(psis[t])
        psd[t], ppt[t] = _margins(img, m, n)
    return psd, ppt


@njit(cache=True)
def _tilde_a_single(rho, v, n):
    # I_2 ⊗ Tr_A(ρ) − ρ for M=2
    marginal = np.zeros((n, n), dtype=np.complex128)
    for i in range(2):
        blk = v[i * n : (i + 1) * n]
        for a in range(n):
            for b in range(n):
                marginal[a, b] += blk[a] * np.conj(blk[b])
    out = -rho
    out[:n, :n] += marginal
    out[n:, n:] += marginal
    return out


@njit(cache=True)
def bh2_margins(psis, n, alpha, beta):
    s = psis.shape[0]
    d = 2 * n
    psd = np.empty(s)
    ppt = np.empty(s)
    eye = np.eye(d, dtype=np.complex128)
    for t in range(s):
        rho = _projector(psis[t])
        img = eye + alpha * rho + beta * _tilde_a_single(rho.copy(), psis[t], n)
        psd[t], ppt[t] = _margins(img, 2, n)
    return psd, ppt


@njit(cache=True)
def four_param_margins(psis, n, alpha, beta, gamma, delta, w_b, w_full):
    s = psis.shape[0]
    d = 2 * n
    psd = np.empty(s)
    ppt = np.empty(s)
    eye = np.eye(d, dtype=np.complex128)
    w_b_dag = np.ascontiguousarray(w_b.conj().T)
    w_full_dag = np.ascontiguousarray(w_full.conj().T)
    for t in range(s):
        rho = _projector(psis[t])
        pt_b = rho.reshape(2, n, 2, n).transpose(0, 3, 2, 1).copy().reshape(d, d)
        tide_b = w_b @ pt_b @ w_b_dag
        tide_full = w_full @ np.ascontiguousarray(rho.T) @ w_full_dag
        img = (
            eye
            + alpha * rho
            + beta * _tilde_a_single(rho.copy(), psis[t], n)
            + gamma * tide_b
            + delta * tide_full
        )
        psd[t], ppt[t] = _margins(img, 2, n)
    return psd, ppt


@njit(cache=True)
def ando_2xn_margins(psis, n, k, alpha):
    s = psis.shape[0]
    d = 2 * n
    psd = np.empty(s)
    ppt = np.empty(s)
    for t in range(s):
        v = psis[t]
        rho = _projector(v)
        rd = np.empty((2, n))
        for i in range(2):
            for j in range(n):
                rd[i, j] = (v[i * n + j] * np.conj(v[i * n + j])).real
        img = alpha * rho
        for i in range(2):
            row = rd[i, 0] + rd[i, 1 :].sum()
            for j in range(n):
                extra = (n - k - 1) * rd[i, j] + row
                for mm in range(k + 1):
                    extra += rd[1 - i, (j - mm) % n]
                img[i * n + j, i * n + j] += extra
        psd[t], ppt[t] = _margins(img, 2, n)
    return psd, ppt


@njit(cache=True)
def ando_mxn_margins(psis, m, n, alpha):
    s = psis.shape[0]
    psd = np.empty(s)
    ppt = np.empty(s)
    for t in range(s):
        v = psis[t]
        rho = _projector(v)
        img = alpha * rho
        for i in range(m):
            row = 0.0
            for j in range(n):
                row += (v[i * n + j] * np.conj(v[i * n + j])).real
            for j in range(n):
                entry = (v[i * n + j] * np.conj(v[i * n + j])).real
                img[i * n + j, i * n + j] += (m - 1) * n * entry + row
        psd[t], ppt[t] = _margins(img, m, n)
    return psd, ppt
