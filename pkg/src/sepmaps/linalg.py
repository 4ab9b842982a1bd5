"""Dense complex linear algebra on bipartite operators.

The computational product basis is fixed A-major: |i⟩_A ⊗ |j⟩_B sits at
index i*n + j.  Every partial operation in the package is defined against
this ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import (
    DimensionMismatchError,
    NotHermitianError,
    OddDimensionError,
    SingularError,
)


class Dims(NamedTuple):
    """Factor dimensions (m: Alice, n: Bob)."""

    m: int
    n: int

    @property
    def size(self) -> int:
        return self.m * self.n


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances used by PSD / Hermiticity / inversion checks."""

    psd_tol: float = 1e-9  # relative to max(1, operator norm)
    herm_tol: float = 1e-10  # absolute, max-entry
    inverse_singularity_tol: float = 1e-12

    def __post_init__(self):
        if min(self.psd_tol, self.herm_tol, self.inverse_singularity_tol) < 0:
            raise ValueError("tolerances must be nonnegative")


DEFAULT_TOL = ToleranceConfig()


class PsdResult(NamedTuple):
    holds: bool
    margin: float  # smallest eigenvalue


@dataclass(frozen=True)
class BipartiteOperator:
    """A dense complex (m*n)×(m*n) matrix tagged with its factor dimensions."""

    dims: Dims
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = Dims(*self.dims)
        if dims.m < 1 or dims.n < 1:
            raise DimensionMismatchError(f"factor dimensions must be >= 1, got {dims}")
        mat = np.array(self.matrix, dtype=np.complex128)
        if mat.shape != (dims.size, dims.size):
            raise DimensionMismatchError(
                f"matrix shape {mat.shape} does not match dims {dims} (size {dims.size})"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", mat)

    # -- basic algebra -------------------------------------------------

    def _check_same_space(self, other: "BipartiteOperator"):
        if self.dims != other.dims:
            raise DimensionMismatchError(f"dims mismatch: {self.dims} vs {other.dims}")

    def __add__(self, other: "BipartiteOperator") -> "BipartiteOperator":
        self._check_same_space(other)
        return BipartiteOperator(self.dims, self.matrix + other.matrix)

    def __sub__(self, other: "BipartiteOperator") -> "BipartiteOperator":
        self._check_same_space(other)
        return BipartiteOperator(self.dims, self.matrix - other.matrix)

    def __mul__(self, scalar) -> "BipartiteOperator":
        return BipartiteOperator(self.dims, self.matrix * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "BipartiteOperator":
        return BipartiteOperator(self.dims, -self.matrix)

    def __matmul__(self, other: "BipartiteOperator") -> "BipartiteOperator":
        self._check_same_space(other)
        return BipartiteOperator(self.dims, self.matrix @ other.matrix)

    def adjoint(self) -> "BipartiteOperator":
        return BipartiteOperator(self.dims, self.matrix.conj().T)

    def conj(self) -> "BipartiteOperator":
        return BipartiteOperator(self.dims, self.matrix.conj())

    def transpose(self) -> "BipartiteOperator":
        return BipartiteOperator(self.dims, self.matrix.T)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def is_hermitian(self, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        return herm_defect(self.matrix) <= tol.herm_tol


def identity(dims: Dims) -> BipartiteOperator:
    dims = Dims(*dims)
    return BipartiteOperator(dims, np.eye(dims.size, dtype=np.complex128))


def kron_product(a: np.ndarray, b: np.ndarray) -> BipartiteOperator:
    """Tensor product of an (M×M) Alice factor and an (N×N) Bob factor."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise DimensionMismatchError("kron_product expects two square factors")
    return BipartiteOperator(Dims(a.shape[0], b.shape[0]), np.kron(a, b))


def _mat(x) -> np.ndarray:
    return x.matrix if isinstance(x, BipartiteOperator) else np.asarray(x, dtype=np.complex128)


def herm_defect(matrix: np.ndarray) -> float:
    """Max-entry distance to the adjoint, ‖X − X†‖_max."""
    return float(np.abs(matrix - matrix.conj().T).max()) if matrix.size else 0.0


def require_hermitian(x, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    mat = _mat(x)
    defect = herm_defect(mat)
    if defect > tol.herm_tol:
        raise NotHermitianError(f"‖X − X†‖_max = {defect:.3e} exceeds herm_tol {tol.herm_tol:.1e}")
    return mat


# -- partial operations ------------------------------------------------


def partial_transpose(x: BipartiteOperator, subsystem: str) -> BipartiteOperator:
    """Blockwise transpose on the chosen factor ('A' or 'B')."""
    m, n = x.dims
    r = x.matrix.reshape(m, n, m, n)
    if subsystem == "A":
        out = r.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        out = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return BipartiteOperator(x.dims, out.reshape(m * n, m * n))


def partial_trace(x: BipartiteOperator, subsystem: str) -> np.ndarray:
    """Trace over the named factor; returns the marginal of the other one."""
    m, n = x.dims
    r = x.matrix.reshape(m, n, m, n)
    if subsystem == "A":
        return np.einsum("ijil->jl", r)
    if subsystem == "B":
        return np.einsum("ijkj->ik", r)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def dephase_diagonal(x: BipartiteOperator) -> BipartiteOperator:
    """Project onto the diagonal of the computational product basis."""
    return BipartiteOperator(x.dims, np.diag(np.diag(x.matrix)))


# -- structured unitaries ----------------------------------------------


def shift_unitary(d: int) -> np.ndarray:
    """Cyclic shift S|i⟩ = |i+1 mod d⟩."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    s = np.zeros((d, d), dtype=np.complex128)
    for i in range(d):
        s[(i + 1) % d, i] = 1.0
    return s


def breuer_hall_unitary(d: int) -> np.ndarray:
    """Canonical antisymmetric unitary: direct sum of d/2 blocks [[0,1],[-1,0]].

    Satisfies V†V = I and Vᵀ = −V exactly, hence ⟨e|V|e*⟩ = 0 for every
    vector e.  Exists only for even d.
    """
    if d < 1 or d % 2:
        raise OddDimensionError(f"antisymmetric unitary needs even dimension, got {d}")
    v = np.zeros((d, d), dtype=np.complex128)
    for j in range(d // 2):
        v[2 * j, 2 * j + 1] = 1.0
        v[2 * j + 1, 2 * j] = -1.0
    return v


def is_antisymmetric_unitary(v: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        return False
    d = v.shape[0]
    return (
        np.abs(v.T + v).max() <= tol.herm_tol
        and np.abs(v.conj().T @ v - np.eye(d)).max() <= tol.herm_tol
    )


# -- spectra and norms --------------------------------------------------


def hermitian_spectrum(x, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Ascending eigenvalues of the symmetrized (X+X†)/2; input must be Hermitian."""
    mat = require_hermitian(x, tol)
    return np.linalg.eigvalsh((mat + mat.conj().T) / 2)


def psd_check(x, tol: ToleranceConfig = DEFAULT_TOL) -> PsdResult:
    """Smallest eigenvalue and whether it clears the relative PSD floor."""
    spectrum = hermitian_spectrum(x, tol)
    margin = float(spectrum[0])
    op_norm = float(np.abs(spectrum).max()) if spectrum.size else 0.0
    return PsdResult(margin >= -tol.psd_tol * max(1.0, op_norm), margin)


def operator_norm(x) -> float:
    """Largest singular value."""
    return float(np.linalg.svd(_mat(x), compute_uv=False)[0])


def matrix_inverse(x, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Inverse of a full-rank matrix; raises SingularError near rank deficiency."""
    mat = _mat(x)
    svals = np.linalg.svd(mat, compute_uv=False)
    if svals[-1] <= tol.inverse_singularity_tol * max(1.0, float(svals[0])):
        raise SingularError(
            f"smallest singular value {svals[-1]:.3e} within singularity tolerance"
        )
    inv = np.linalg.inv(mat)
    if np.abs(mat @ inv - np.eye(mat.shape[0])).max() > 1e-10 * max(1.0, float(svals[0])):
        raise SingularError("inverse failed the residual check ‖X·X⁻¹ − I‖_max ≤ 1e-10")
    return inv
