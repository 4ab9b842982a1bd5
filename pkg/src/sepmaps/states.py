"""Constructors for example states, structured pure states and random instances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import BipartiteOperator, Dims


@dataclass(frozen=True)
class SchmidtVector:
    """Nonincreasing Schmidt coefficients of a pure state on the given dims."""

    coeffs: tuple
    dims: Dims

    def __post_init__(self):
        dims = Dims(*self.dims)
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs or len(coeffs) > min(dims.m, dims.n):
            raise ValueError(f"need 1..min(m,n) coefficients, got {len(coeffs)}")
        if any(c < 0 for c in coeffs):
            raise ValueError("Schmidt coefficients must be nonnegative")
        if any(a < b for a, b in zip(coeffs, coeffs[1:])):
            raise ValueError("Schmidt coefficients must be nonincreasing")
        if abs(sum(c * c for c in coeffs) - 1.0) > 1e-12:
            raise ValueError("Schmidt coefficients must satisfy Σλ² = 1")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "dims", dims)


def _projector(vec: np.ndarray, dims: Dims) -> BipartiteOperator:
    return BipartiteOperator(dims, np.outer(vec, vec.conj()))


def schmidt_pure(sv: SchmidtVector) -> BipartiteOperator:
    """Projector onto Σ_k λ_k |k⟩⊗|k⟩."""
    m, n = sv.dims
    vec = np.zeros(m * n, dtype=np.complex128)
    for k, lam in enumerate(sv.coeffs):
        vec[k * n + k] = lam
    return _projector(vec, sv.dims)


def maximally_entangled(d: int) -> BipartiteOperator:
    """Projector onto (1/√d) Σ_k |kk⟩ on dims (d, d)."""
    if d < 2:
        raise ValueError("need d >= 2")
    vec = np.zeros(d * d, dtype=np.complex128)
    for k in range(d):
        vec[k * d + k] = 1.0 / np.sqrt(d)
    return _projector(vec, Dims(d, d))


def horodecki_2x4(a: float) -> BipartiteOperator:
    """The 2⊗4 PPT (bound entangled for 0<a<1) family, normalized."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a}")
    dims = Dims(2, 4)
    rho_ent = np.zeros((8, 8), dtype=np.complex128)
    for i in (1, 2, 3):
        psi = np.zeros(8, dtype=np.complex128)
        psi[i - 1] = psi[4 + i] = 1.0 / np.sqrt(2)
        rho_ent += (2.0 / 7.0) * np.outer(psi, psi.conj())
    e03 = np.zeros(8, dtype=np.complex128)
    e03[3] = 1.0
    rho_ent += (1.0 / 7.0) * np.outer(e03, e03.conj())
    phi = np.zeros(8, dtype=np.complex128)
    phi[4 + 0] = np.sqrt((1.0 + a) / 2.0)
    phi[4 + 3] = np.sqrt((1.0 - a) / 2.0)
    mat = (7.0 * a / (7.0 * a + 1.0)) * rho_ent + (1.0 / (7.0 * a + 1.0)) * np.outer(phi, phi.conj())
    return BipartiteOperator(dims, mat)


def horodecki_smoothed(a: float, p: float) -> BipartiteOperator:
    """Convex mixture p·ρ_a + (1−p)/8 · 𝟙₈; min eigenvalue ≥ (1−p)/8."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    base = horodecki_2x4(a)
    mat = p * base.matrix + (1.0 - p) / 8.0 * np.eye(8)
    return BipartiteOperator(base.dims, mat)


def three_by_three_family(beta: float) -> BipartiteOperator:
    """The 3⊗3 one-parameter family (2/7)|Φ⟩⟨Φ| + (β/7)σ₊ + ((5−β)/7)σ₋."""
    if not 0.0 <= beta <= 5.0:
        raise ValueError(f"beta must lie in [0, 5], got {beta}")
    phi = maximally_entangled(3).matrix
    sig_plus = np.zeros((9, 9), dtype=np.complex128)
    sig_minus = np.zeros((9, 9), dtype=np.complex128)
    for i, j in ((0, 1), (1, 2), (2, 0)):
        sig_plus[3 * i + j, 3 * i + j] = 1.0 / 3.0
        sig_minus[3 * j + i, 3 * j + i] = 1.0 / 3.0
    mat = (2.0 / 7.0) * phi + (beta / 7.0) * sig_plus + ((5.0 - beta) / 7.0) * sig_minus
    return BipartiteOperator(Dims(3, 3), mat)


def haar_vector(size: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector from independent standard complex Gaussians."""
    v = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return v / np.linalg.norm(v)


def random_pure(dims: Dims, seed: int) -> BipartiteOperator:
    """Haar-random pure projector, reproducible from the seed."""
    dims = Dims(*dims)
    rng = np.random.default_rng(seed)
    return _projector(haar_vector(dims.size, rng), dims)


def random_density(dims: Dims, seed: int) -> BipartiteOperator:
    """Full-rank random density matrix G·G†/Tr(G·G†) with Gaussian G."""
    dims = Dims(*dims)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dims.size, dims.size)) + 1j * rng.standard_normal((dims.size, dims.size))
    mat = g @ g.conj().T
    return BipartiteOperator(dims, mat / np.trace(mat).real)
