"""Families of hermiticity-preserving linear maps, their admissible-parameter
regions, and exact inverses where they exist.

All families act on bipartite operators in the fixed A-major product basis.
Inputs may be unnormalized; every formula carries Tr(ρ) explicitly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    NotPSDError,
    OddDimensionError,
    SingularMapError,
    WrongDimsError,
)
from .linalg import (
    DEFAULT_TOL,
    BipartiteOperator,
    Dims,
    ToleranceConfig,
    breuer_hall_unitary,
    identity,
    is_antisymmetric_unitary,
    partial_transpose,
    psd_check,
)

PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)


@dataclass(frozen=True)
class FourParams:
    """Parameters (α, β, γ, δ) of the four-term map family."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.delta)


@dataclass(frozen=True)
class AndoParams:
    """Shift-dephasing family parameters: number of Alice-shift terms k ≥ −1 and weight α."""

    k: int
    alpha: float

    def __post_init__(self):
        if self.k < -1:
            raise ValueError(f"k must be >= -1, got {self.k}")


@dataclass(frozen=True)
class RegionVerdict:
    """Outcome of a closed-form admissible-region test.

    inside ⇔ slack ≥ 0; binding_constraint labels the smallest slack.
    """

    inside: bool
    binding_constraint: str
    slack: float


def _min_slack(slacks: dict) -> RegionVerdict:
    label = min(slacks, key=slacks.get)
    slack = float(slacks[label])
    return RegionVerdict(inside=bool(slack >= 0.0), binding_constraint=label, slack=slack)


# -- twisted partial transposes ------------------------------------------


def tilde_a(x: BipartiteOperator) -> BipartiteOperator:
    """σ₂-twisted partial transpose on Alice: σ₂ X^{T_A} σ₂ (requires M=2)."""
    m, n = x.dims
    if m != 2:
        raise WrongDimsError(f"tilde_a needs M=2, got M={m}")
    w = np.kron(PAULI_Y, np.eye(n))
    return BipartiteOperator(x.dims, w @ partial_transpose(x, "A").matrix @ w.conj().T)


def _bob_antisym_unitary(n: int, antisym_unitary) -> np.ndarray:
    if antisym_unitary is None:
        if n % 2:
            raise OddDimensionError(f"canonical antisymmetric unitary needs even N, got N={n}")
        return breuer_hall_unitary(n)
    v = np.asarray(antisym_unitary, dtype=np.complex128)
    if v.shape != (n, n) or not is_antisymmetric_unitary(v):
        raise ValueError("antisym_unitary must be an antisymmetric unitary on Bob's space")
    return v


def tilde_b(x: BipartiteOperator, antisym_unitary=None) -> BipartiteOperator:
    """V-twisted partial transpose on Bob: V X^{T_B} V† (canonical V unless supplied)."""
    m, n = x.dims
    v = _bob_antisym_unitary(n, antisym_unitary)
    w = np.kron(np.eye(m), v)
    return BipartiteOperator(x.dims, w @ partial_transpose(x, "B").matrix @ w.conj().T)


def tilde_full(x: BipartiteOperator, antisym_unitary=None) -> BipartiteOperator:
    """Twisted full transpose (σ₂⊗V) Xᵀ (σ₂⊗V)† (requires M=2)."""
    m, n = x.dims
    if m != 2:
        raise WrongDimsError(f"tilde_full needs M=2, got M={m}")
    v = _bob_antisym_unitary(n, antisym_unitary)
    w = np.kron(PAULI_Y, v)
    return BipartiteOperator(x.dims, w @ x.matrix.T @ w.conj().T)


# -- reduction-like family -----------------------------------------------


def reduction_like_apply(rho: BipartiteOperator, alpha: float) -> BipartiteOperator:
    """Λ_α(ρ) = Tr(ρ)𝟙 + αρ; trace scales by (MN + α)."""
    return rho.trace() * identity(rho.dims) + alpha * rho


def reduction_like_region(alpha: float) -> RegionVerdict:
    """Separable-image interval −1 ≤ α ≤ 2 (any dims)."""
    return _min_slack({"alpha>=-1": alpha + 1.0, "alpha<=2": 2.0 - alpha})


def reduction_like_invert(
    sigma: BipartiteOperator, alpha: float, tol: ToleranceConfig = DEFAULT_TOL
) -> BipartiteOperator:
    """Exact inverse [σ − Tr(σ)𝟙/(MN+α)]/α of the reduction-like family."""
    d = sigma.dims.size
    if abs(alpha) <= tol.inverse_singularity_tol:
        raise SingularMapError("reduction-like map is singular at alpha = 0")
    if abs(d + alpha) <= tol.inverse_singularity_tol:
        raise SingularMapError(f"reduction-like map is singular at alpha = -MN = {-d}")
    return (sigma - (sigma.trace() / (d + alpha)) * identity(sigma.dims)) * (1.0 / alpha)


# -- two-parameter family on 2⊗N ------------------------------------------


def bh_two_param_apply(rho: BipartiteOperator, alpha: float, beta: float) -> BipartiteOperator:
    """Λ_{α,β}(ρ) = Tr(ρ)𝟙 + αρ + βρ̃_A (requires M=2)."""
    return rho.trace() * identity(rho.dims) + alpha * rho + beta * tilde_a(rho)


def bh_two_param_region(alpha: float, beta: float) -> RegionVerdict:
    """α ≥ max(−1, β/2−1) and β ≥ max(−1, α/2−1)."""
    return _min_slack(
        {
            "alpha>=max(-1,beta/2-1)": alpha - max(-1.0, beta / 2.0 - 1.0),
            "beta>=max(-1,alpha/2-1)": beta - max(-1.0, alpha / 2.0 - 1.0),
        }
    )


def bh_two_param_invert(
    sigma: BipartiteOperator, alpha: float, beta: float, tol: ToleranceConfig = DEFAULT_TOL
) -> BipartiteOperator:
    """Exact inverse (ασ − βσ̃_A − (α−β)/(2N+α+β)·Tr(σ)𝟙) / (α²−β²)."""
    n = sigma.dims.n
    denom = alpha * alpha - beta * beta
    if abs(denom) <= tol.inverse_singularity_tol:
        raise SingularMapError("two-parameter map is singular at alpha = ±beta")
    if abs(2 * n + alpha + beta) <= tol.inverse_singularity_tol:
        raise SingularMapError(f"two-parameter map is singular at alpha+beta = -2N = {-2 * n}")
    num = (
        alpha * sigma
        - beta * tilde_a(sigma)
        - ((alpha - beta) / (2 * n + alpha + beta)) * sigma.trace() * identity(sigma.dims)
    )
    return num * (1.0 / denom)


# -- four-parameter family on 2⊗N (N even) --------------------------------


def four_param_apply(rho: BipartiteOperator, p: FourParams) -> BipartiteOperator:
    """Λ_p(ρ) = Tr(ρ)𝟙 + αρ + βρ̃_A + γρ̃_B + δρ̃."""
    out = rho.trace() * identity(rho.dims) + p.alpha * rho + p.beta * tilde_a(rho)
    return out + p.gamma * tilde_b(rho) + p.delta * tilde_full(rho)


def four_param_region(p: FourParams, dims: Dims) -> RegionVerdict:
    """Closed-form existence test for the split weights 0 ≤ a, b, a+b ≤ 1.

    a must cover max(0, β/2−α, α/2−β), b likewise for the (γ, δ) pair; the
    split exists iff a_min + b_min ≤ 1 (each ≤ 1 follows), together with all
    four parameters ≥ −1.  Conservative for N > 2.
    """
    dims = Dims(*dims)
    if dims.m != 2:
        raise WrongDimsError(f"four-parameter family needs M=2, got M={dims.m}")
    if dims.n % 2:
        raise OddDimensionError(f"four-parameter family needs even N, got N={dims.n}")
    a, b, g, d = p.as_tuple()
    a_min = max(0.0, b / 2.0 - a, a / 2.0 - b)
    b_min = max(0.0, d / 2.0 - g, g / 2.0 - d)
    return _min_slack(
        {
            "a_min<=1": 1.0 - a_min,
            "b_min<=1": 1.0 - b_min,
            "a_min+b_min<=1": 1.0 - a_min - b_min,
            "min(alpha..delta)>=-1": min(a, b, g, d) + 1.0,
        }
    )


def two_by_two_region(p: FourParams) -> RegionVerdict:
    """Exact 2⊗2 region in the combined weights s = α+δ, s̃ = β+γ.

    s multiplies the pair {ρ, ρ̃} whose images are diagonal-aligned on a
    maximally entangled input and s̃ the anti-aligned pair {ρ̃_A, ρ̃_B}:
    s ≥ max(−1, s̃/2−1), s̃ ≥ max(−1, s/2−1), all parameters ≥ −1.
    """
    a, b, g, d = p.as_tuple()
    s = a + d
    s_twist = b + g
    return _min_slack(
        {
            "s>=max(-1,s~/2-1)": s - max(-1.0, s_twist / 2.0 - 1.0),
            "s~>=max(-1,s/2-1)": s_twist - max(-1.0, s / 2.0 - 1.0),
            "min(alpha..delta)>=-1": min(a, b, g, d) + 1.0,
        }
    )


# -- shift-dephasing (Ando-like) families ----------------------------------


def _diag_grid(rho: BipartiteOperator) -> np.ndarray:
    m, n = rho.dims
    return np.diag(rho.matrix).reshape(m, n)


def _embed_diagonal(rho_term: np.ndarray, diag_grid: np.ndarray, dims: Dims) -> BipartiteOperator:
    out = rho_term.copy()
    idx = np.arange(dims.size)
    out[idx, idx] += diag_grid.reshape(-1)
    return BipartiteOperator(dims, out)


def ando_2xn_apply(rho: BipartiteOperator, params: AndoParams) -> BipartiteOperator:
    """(N−k−1)ε(ρ) + Σ_m ε(S_B^m ρ S_B^{m†}) + Σ_{m≤k} ε(S_A S_B^m ρ S_A†S_B^{m†}) + αρ.

    ε dephases in the product basis; for k = −1 the Alice-shift sum is empty
    and the first coefficient is N (the plain Bob-shift family).
    """
    m, n = rho.dims
    if m != 2:
        raise WrongDimsError(f"2×N shift-dephasing family needs M=2, got M={m}")
    if not -1 <= params.k <= n - 1:
        raise ValueError(f"k must lie in [-1, N-1] = [-1, {n - 1}], got {params.k}")
    rd = _diag_grid(rho)
    diag = (n - params.k - 1) * rd + rd.sum(axis=1, keepdims=True)
    for shift_count in range(params.k + 1):
        diag += np.roll(rd[::-1], shift_count, axis=1)
    return _embed_diagonal(params.alpha * rho.matrix, diag, rho.dims)


def ando_2xn_region(params: AndoParams, n: int, conjectured: bool = False) -> RegionVerdict:
    """Proven separable-image interval for the given k.

    k=−1 → [−2N/(3N−1), 1]; 0 ≤ k ≤ N−2 → [−(2N−k−1)/(3N−2), 1];
    k=N−1 → [−1, 2] (the reduction map).  With conjectured=True and k=−1 the
    numerically suggested band [−1, 1] is tested instead, labeled unproven.
    """
    if not -1 <= params.k <= n - 1:
        raise ValueError(f"k must lie in [-1, N-1] = [-1, {n - 1}], got {params.k}")
    if conjectured:
        if params.k != -1:
            raise ValueError("conjectured band is only formulated for k = -1")
        lo, hi = -1.0, 1.0
        tag = "conjectured-unproven"
    elif params.k == n - 1:
        lo, hi = -1.0, 2.0
        tag = "reduction"
    elif params.k == -1:
        lo, hi = -2.0 * n / (3.0 * n - 1.0), 1.0
        tag = "k=-1"
    else:
        lo, hi = -(2.0 * n - params.k - 1.0) / (3.0 * n - 2.0), 1.0
        tag = f"k={params.k}"
    return _min_slack({f"alpha>={lo} [{tag}]": params.alpha - lo, f"alpha<={hi} [{tag}]": hi - params.alpha})


def ando_2xn_interval(k: int, n: int) -> tuple:
    """Endpoints of the proven interval for ando_2xn_region."""
    if not -1 <= k <= n - 1:
        raise ValueError(f"k must lie in [-1, N-1] = [-1, {n - 1}], got {k}")
    if k == n - 1:
        return (-1.0, 2.0)
    if k == -1:
        return (-2.0 * n / (3.0 * n - 1.0), 1.0)
    return (-(2.0 * n - k - 1.0) / (3.0 * n - 2.0), 1.0)


def ando_2xn_invert(
    sigma: BipartiteOperator, alpha: float, tol: ToleranceConfig = DEFAULT_TOL
) -> BipartiteOperator:
    """Exact inverse of the k=−1 family.

    (1/α)(σ − N/(N+α)·ε(σ) − α/((N+α)(2N+α))·Σ_m ε(S_B^m σ S_B^{m†})); the
    three terms act on the invariant splitting off-diagonal / diagonal /
    Alice-marginal row sums.
    """
    m, n = sigma.dims
    if m != 2:
        raise WrongDimsError(f"2×N shift-dephasing inverse needs M=2, got M={m}")
    for bad, label in ((alpha, "0"), (n + alpha, f"-N = {-n}"), (2 * n + alpha, f"-2N = {-2 * n}")):
        if abs(bad) <= tol.inverse_singularity_tol:
            raise SingularMapError(f"k=-1 family is singular at alpha = {label}")
    sd = _diag_grid(sigma)
    row = np.broadcast_to(sd.sum(axis=1, keepdims=True), sd.shape)
    diag = -(n / (n + alpha)) * sd - (alpha / ((n + alpha) * (2 * n + alpha))) * row
    return _embed_diagonal(sigma.matrix.copy(), diag, sigma.dims) * (1.0 / alpha)


def ando_mxn_apply(rho: BipartiteOperator, alpha: float) -> BipartiteOperator:
    """(M−1)N ε(ρ) + Σ_m ε(S_B^m ρ S_B^{m†}) + αρ for any M, N ≥ 2."""
    m, n = rho.dims
    rd = _diag_grid(rho)
    diag = (m - 1) * n * rd + rd.sum(axis=1, keepdims=True)
    return _embed_diagonal(alpha * rho.matrix, diag, rho.dims)


def ando_mxn_region(alpha: float, dims: Dims) -> RegionVerdict:
    """Proven band |α| ≤ 1/2 for all M, N."""
    return _min_slack({"abs(alpha)<=1/2": 0.5 - abs(alpha)})


def ando_mxn_k_apply(rho: BipartiteOperator, k: int, alpha: float) -> BipartiteOperator:
    """(N−1)ε(ρ) + Σ_{i≤M−2}Σ_j ε(S_A^iS_B^j ρ ··) + Σ_{j≤k} ε(S_A^{M−1}S_B^j ρ ··) + αρ."""
    m, n = rho.dims
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must lie in [0, N-1] = [0, {n - 1}], got {k}")
    rd = _diag_grid(rho)
    diag = (n - 1) * rd
    for i in range(m - 1):
        diag += np.broadcast_to(np.roll(rd, i, axis=0).sum(axis=1, keepdims=True), rd.shape)
    last = np.roll(rd, m - 1, axis=0)
    for j in range(k + 1):
        diag += np.roll(last, j, axis=1)
    return _embed_diagonal(alpha * rho.matrix, diag, rho.dims)


def ando_mxn_k_region(k: int, alpha: float, dims: Dims) -> RegionVerdict:
    """Proven band for k=0: max[−(2N−1)/(N+(N+2)(M−1)), −1/2] ≤ α ≤ 1/2.

    Other k values are exposed by the map but carry no proven region.
    """
    m, n = Dims(*dims)
    if k != 0:
        return RegionVerdict(inside=False, binding_constraint=f"unproven-for-k={k}", slack=float("-inf"))
    lo = max(-(2.0 * n - 1.0) / (n + (n + 2.0) * (m - 1.0)), -0.5)
    return _min_slack({f"alpha>={lo}": alpha - lo, "alpha<=1/2": 0.5 - alpha})


# -- non-invertible block maps ---------------------------------------------


def phi_alpha(x: BipartiteOperator, alpha: float) -> BipartiteOperator:
    """Block map on 2⊗N: diag(𝟙_N TrX₁₁, 𝟙_N TrX₂₂) with αB coherences,
    B = X₁₂ + R_N(X₁₂†) and R_N(Y) = Tr(Y)𝟙_N − Y.  Non-invertible.
    """
    m, n = x.dims
    if m != 2:
        raise WrongDimsError(f"phi_alpha needs M=2, got M={m}")
    mat = x.matrix
    x11, x12, x22 = mat[:n, :n], mat[:n, n:], mat[n:, n:]
    b = x12 + (np.trace(x12.conj().T) * np.eye(n) - x12.conj().T)
    out = np.zeros_like(mat)
    out[:n, :n] = np.trace(x11) * np.eye(n)
    out[n:, n:] = np.trace(x22) * np.eye(n)
    out[:n, n:] = alpha * b
    out[n:, :n] = alpha * b.conj().T
    return BipartiteOperator(x.dims, out)


def psi_alpha(x: BipartiteOperator, alpha: float, antisym_unitary=None) -> BipartiteOperator:
    """Block map on 4⊗N (2×2 blocks of size 2N): coherence C = X₁₂ + U X̄₁₂ U†
    with an antisymmetric unitary U (canonical block form unless supplied).
    Non-invertible.
    """
    m, n = x.dims
    if m != 4:
        raise WrongDimsError(f"psi_alpha needs M=4, got M={m}")
    half = 2 * n
    u = breuer_hall_unitary(half) if antisym_unitary is None else np.asarray(antisym_unitary, dtype=np.complex128)
    if not is_antisymmetric_unitary(u) or u.shape != (half, half):
        raise ValueError("antisym_unitary must be an antisymmetric unitary of size 2N")
    mat = x.matrix
    x11, x12, x22 = mat[:half, :half], mat[:half, half:], mat[half:, half:]
    c = x12 + u @ x12.conj() @ u.conj().T
    out = np.zeros_like(mat)
    out[:half, :half] = np.trace(x11) * np.eye(half)
    out[half:, half:] = np.trace(x22) * np.eye(half)
    out[:half, half:] = alpha * c
    out[half:, :half] = alpha * c.conj().T
    return BipartiteOperator(x.dims, out)


# -- decomposable pre-witness image -----------------------------------------


def prewitness_image(
    p_op: BipartiteOperator,
    q_op: BipartiteOperator,
    params: FourParams,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> BipartiteOperator:
    """Λ_p(P + Q^{T_A}) for PSD P, Q; separable whenever params lie in the region.

    Relies on Λ_p commuting with T_A: Λ_p(w^{T_A}) = Λ_p(w)^{T_A}.
    """
    for name, op in (("P", p_op), ("Q", q_op)):
        res = psd_check(op, tol)
        if not res.holds:
            raise NotPSDError(f"{name} is not PSD (margin {res.margin:.3e})")
    verdict = four_param_region(params, p_op.dims)
    if not verdict.inside:
        warnings.warn(
            f"parameters outside the proven region (binding {verdict.binding_constraint}, "
            f"slack {verdict.slack:.3g}); image is not certified separable",
            stacklevel=2,
        )
    w = p_op + partial_transpose(q_op, "A")
    return four_param_apply(w, params)
