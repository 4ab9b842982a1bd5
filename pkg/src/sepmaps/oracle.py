"""Independent verification machinery: exact separability at PPT-exact dims,
constructive separable decompositions, worst-case region scans, and
round-trip validators for the invertible families.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import kernels
from .criteria import SEPARABLE
from .errors import NotPSDError, SingularMapError, WrongDimsError
from .linalg import (
    DEFAULT_TOL,
    BipartiteOperator,
    Dims,
    ToleranceConfig,
    breuer_hall_unitary,
    partial_transpose,
    psd_check,
)
from .maps import (
    PAULI_Y,
    AndoParams,
    FourParams,
    ando_2xn_apply,
    ando_2xn_invert,
    ando_2xn_region,
    ando_mxn_region,
    bh_two_param_apply,
    bh_two_param_invert,
    bh_two_param_region,
    four_param_region,
    reduction_like_apply,
    reduction_like_invert,
    reduction_like_region,
    two_by_two_region,
)
from .states import haar_vector

ENTANGLED = "entangled"

SCAN_FAMILIES = {
    "reduction": ("alpha",),
    "bh2": ("alpha", "beta"),
    "four_param": ("alpha", "beta", "gamma", "delta"),
    "ando2xN": ("k", "alpha"),
    "andoMxN": ("alpha",),
}


def exact_sep_small(sigma: BipartiteOperator, tol: ToleranceConfig = DEFAULT_TOL) -> str:
    """Ground truth at 2⊗2 / 2⊗3, where PPT is necessary and sufficient."""
    if Dims(*sigma.dims) not in (Dims(2, 2), Dims(2, 3)):
        raise WrongDimsError(f"exact separability only at (2,2)/(2,3), got {sigma.dims}")
    res = psd_check(sigma, tol)
    if not res.holds:
        raise NotPSDError(f"input is not a state (min eigenvalue {res.margin:.3e})")
    return SEPARABLE if psd_check(partial_transpose(sigma, "A"), tol).holds else ENTANGLED


# -- constructive decomposition for the 2⊗3 shift-dephasing family -----------


@dataclass(frozen=True)
class DecompositionCertificate:
    pieces: tuple  # (BipartiteOperator, kind) with kind in sigma_ij | diagonal_remainder | product_term
    reconstruction_error: float
    all_pieces_separable: bool
    worst_piece_margin: float


def _sigma_ij_piece(lam: np.ndarray, i: int, j: int, alpha: float) -> np.ndarray:
    s = np.zeros((6, 6), dtype=np.complex128)
    top = abs(alpha) * (abs(lam[0, i]) ** 2 + abs(lam[0, j]) ** 2)
    bottom = abs(alpha) * (abs(lam[1, i]) ** 2 + abs(lam[1, j]) ** 2)
    s[i, i] = s[j, j] = top
    s[3 + i, 3 + i] = s[3 + j, 3 + j] = bottom
    s[i, 3 + j] = alpha * lam[0, i] * np.conj(lam[1, j])
    s[3 + j, i] = np.conj(s[i, 3 + j])
    s[j, 3 + i] = alpha * lam[0, j] * np.conj(lam[1, i])
    s[3 + i, j] = np.conj(s[j, 3 + i])
    return s


def ando_decomposition_2x3(psi: np.ndarray, alpha: float, tol: ToleranceConfig = DEFAULT_TOL) -> DecompositionCertificate:
    """Explicit separable decomposition of the k=−1 family image of |ψ⟩⟨ψ| on 2⊗3.

    Pieces: three 2⊗2-supported coherence blocks σ_{i,j}; for α ≥ 0 one
    diagonal remainder carrying the matched coherences plus two product
    terms α|i⟩⟨i|⊗(row projector); for α < 0 three product terms absorbing
    the matched coherences and two diagonal remainders.  Valid (all pieces
    PSD, σ_{i,j} PPT on support) exactly on the proven α interval; outside it
    the certificate is returned with all_pieces_separable=False.
    """
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if psi.shape != (6,):
        raise WrongDimsError(f"need a pure-state vector on 2⊗3 (length 6), got {psi.shape}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-12:
        raise ValueError("pure-state vector must be normalized")
    dims = Dims(2, 3)
    lam = psi.reshape(2, 3)
    e_row, f_row = lam[0], lam[1]
    n0 = float(np.sum(np.abs(e_row) ** 2))
    n1 = float(np.sum(np.abs(f_row) ** 2))

    pieces = []
    for i in range(3):
        for j in range(i + 1, 3):
            pieces.append((BipartiteOperator(dims, _sigma_ij_piece(lam, i, j, alpha)), "sigma_ij"))

    proj_e = np.outer(e_row, e_row.conj())
    proj_f = np.outer(f_row, f_row.conj())
    upper = np.diag([1.0, 0.0]).astype(np.complex128)
    lower = np.diag([0.0, 1.0]).astype(np.complex128)
    if alpha >= 0:
        rem = np.zeros((6, 6), dtype=np.complex128)
        for j in range(3):
            rem[j, j] = (3.0 - alpha) * abs(lam[0, j]) ** 2 + (1.0 - alpha) * n0
            rem[3 + j, 3 + j] = (3.0 - alpha) * abs(lam[1, j]) ** 2 + (1.0 - alpha) * n1
            rem[j, 3 + j] = alpha * lam[0, j] * np.conj(lam[1, j])
            rem[3 + j, j] = np.conj(rem[j, 3 + j])
        pieces.append((BipartiteOperator(dims, rem), "diagonal_remainder"))
        pieces.append((BipartiteOperator(dims, alpha * np.kron(upper, proj_e)), "product_term"))
        pieces.append((BipartiteOperator(dims, alpha * np.kron(lower, proj_f)), "product_term"))
    else:
        mag = abs(alpha)
        for i in range(3):
            flip = np.array([lam[0, i], -lam[1, i]], dtype=np.complex128)
            site = np.zeros((3, 3), dtype=np.complex128)
            site[i, i] = 1.0
            pieces.append((BipartiteOperator(dims, mag * np.kron(np.outer(flip, flip.conj()), site)), "product_term"))
        d0 = np.diag([(3.0 - 2.0 * mag) * abs(lam[0, j]) ** 2 + (1.0 - mag) * n0 for j in range(3)])
        d1 = np.diag([(3.0 - 2.0 * mag) * abs(lam[1, j]) ** 2 + (1.0 - mag) * n1 for j in range(3)])
        pieces.append((BipartiteOperator(dims, np.kron(upper, d0 + alpha * proj_e)), "diagonal_remainder"))
        pieces.append((BipartiteOperator(dims, np.kron(lower, d1 + alpha * proj_f)), "diagonal_remainder"))

    target = ando_2xn_apply(BipartiteOperator(dims, np.outer(psi, psi.conj())), AndoParams(-1, alpha))
    total = sum(piece.matrix for piece, _ in pieces)
    reconstruction_error = float(np.abs(total - target.matrix).max())

    worst = np.inf
    valid = reconstruction_error <= 1e-10
    for piece, kind in pieces:
        res = psd_check(piece, tol)
        worst = min(worst, res.margin)
        valid = valid and res.holds
        if kind == "sigma_ij":
            valid_sub, sub_margin = _sigma_ij_ppt_on_support(piece.matrix, tol)
            worst = min(worst, sub_margin)
            valid = valid and valid_sub
    return DecompositionCertificate(
        pieces=tuple(pieces),
        reconstruction_error=reconstruction_error,
        all_pieces_separable=bool(valid),
        worst_piece_margin=float(worst),
    )


def _sigma_ij_ppt_on_support(mat: np.ndarray, tol: ToleranceConfig):
    """PT positivity of a σ_{i,j} piece on its 2⊗2 support span{|0i⟩,|0j⟩,|1i⟩,|1j⟩}."""
    cols = [idx for idx in range(3) if np.abs(mat[[idx, 3 + idx], :]).max() > 0 or np.abs(mat[:, [idx, 3 + idx]]).max() > 0]
    if len(cols) < 2:  # piece vanished (zero coefficients); trivially fine
        return True, 0.0
    i, j = cols[0], cols[1]
    support = [i, j, 3 + i, 3 + j]
    sub = BipartiteOperator(Dims(2, 2), mat[np.ix_(support, support)])
    res = psd_check(partial_transpose(sub, "A"), tol)
    return res.holds, res.margin


# -- region scans --------------------------------------------------------------


@dataclass(frozen=True)
class ScanResult:
    family: str
    params: dict
    worst_psd_margin: float
    worst_ppt_margin: float
    n_samples: int
    seed: int

    def empirically_separable(self, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        return self.worst_psd_margin >= -tol.psd_tol and self.worst_ppt_margin >= -tol.psd_tol


def sample_pure_states(dims: Dims, n_random: int, rng: np.random.Generator) -> np.ndarray:
    """Haar samples plus the analytic extremal states (embedded maximally
    entangled and a product basis state), which bind the regions."""
    dims = Dims(*dims)
    d = min(dims.m, dims.n)
    entangled = np.zeros(dims.size, dtype=np.complex128)
    for k in range(d):
        entangled[k * dims.n + k] = 1.0 / np.sqrt(d)
    prod = np.zeros(dims.size, dtype=np.complex128)
    prod[0] = 1.0
    rows = [entangled, prod] + [haar_vector(dims.size, rng) for _ in range(n_random)]
    return np.stack(rows)


def _point_margins(family: str, dims: Dims, params: dict, psis: np.ndarray):
    m, n = dims
    if family == "reduction":
        return kernels.reduction_margins(psis, m, n, float(params["alpha"]))
    if family == "bh2":
        return kernels.bh2_margins(psis, n, float(params["alpha"]), float(params["beta"]))
    if family == "four_param":
        w_b = np.kron(np.eye(m), breuer_hall_unitary(n))
        w_full = np.kron(PAULI_Y, breuer_hall_unitary(n))
        return kernels.four_param_margins(
            psis, n,
            float(params["alpha"]), float(params["beta"]),
            float(params["gamma"]), float(params["delta"]),
            w_b, w_full,
        )
    if family == "ando2xN":
        return kernels.ando_2xn_margins(psis, n, int(params["k"]), float(params["alpha"]))
    if family == "andoMxN":
        return kernels.ando_mxn_margins(psis, m, n, float(params["alpha"]))
    raise ValueError(f"unknown scan family {family!r}")


def theorem_region_inside(family: str, dims: Dims, params: dict) -> bool:
    """Closed-form proven-region predicate used for scan overlays."""
    dims = Dims(*dims)
    if family == "reduction":
        return reduction_like_region(float(params["alpha"])).inside
    if family == "bh2":
        return bh_two_param_region(float(params["alpha"]), float(params["beta"])).inside
    if family == "four_param":
        p = FourParams(
            float(params["alpha"]), float(params["beta"]),
            float(params["gamma"]), float(params["delta"]),
        )
        if dims == Dims(2, 2):
            return two_by_two_region(p).inside
        return four_param_region(p, dims).inside
    if family == "ando2xN":
        return ando_2xn_region(AndoParams(int(params["k"]), float(params["alpha"])), dims.n).inside
    if family == "andoMxN":
        return ando_mxn_region(float(params["alpha"]), dims).inside
    raise ValueError(f"unknown scan family {family!r}")


def region_boundary_scan(
    family: str,
    dims: Dims,
    grid: dict,
    n_samples: int = 50,
    seed: int = 0,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> list:
    """Worst-case PSD/PPT margins of the family images over a parameter grid.

    grid maps parameter names to value lists; points run over their Cartesian
    product.  Each point draws its own generator from (seed, point index), so
    results are reproducible and order-independent.
    """
    if family not in SCAN_FAMILIES:
        raise ValueError(f"unknown scan family {family!r}; choose from {sorted(SCAN_FAMILIES)}")
    dims = Dims(*dims)
    names = SCAN_FAMILIES[family]
    missing = [name for name in names if name not in grid]
    if missing:
        raise ValueError(f"{family} scan needs grid values for {missing}")
    axes = [np.atleast_1d(np.asarray(grid[name])) for name in names]
    results = []
    n_random = max(0, n_samples - 2)
    for idx, values in enumerate(product(*axes)):
        params = dict(zip(names, (float(v) for v in values)))
        if "k" in params:
            params["k"] = int(round(params["k"]))
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(idx,)))
        psis = sample_pure_states(dims, n_random, rng)
        psd, ppt = _point_margins(family, dims, params, psis)
        results.append(
            ScanResult(
                family=family,
                params=params,
                worst_psd_margin=float(np.min(psd)),
                worst_ppt_margin=float(np.min(ppt)),
                n_samples=psis.shape[0],
                seed=seed,
            )
        )
    return results


# -- Schmidt-number overlap oracle ----------------------------------------------


def schmidt_overlap_necessary(sigma: BipartiteOperator, n: int, d: int, tol: ToleranceConfig = DEFAULT_TOL):
    """Necessary check for Schmidt number ≤ n on d⊗d: ⟨Φ|σ̂|Φ⟩ ≤ n/d.

    The raw overlap lower-bounds the local-unitary maximum, so inconsistency
    refutes the claim while consistency proves nothing.
    """
    if Dims(*sigma.dims) != Dims(d, d):
        raise WrongDimsError(f"expected dims ({d},{d}), got {sigma.dims}")
    vec = np.zeros(d * d, dtype=np.complex128)
    for k in range(d):
        vec[k * d + k] = 1.0 / np.sqrt(d)
    overlap = float(np.real(vec.conj() @ sigma.matrix @ vec) / sigma.trace().real)
    return bool(overlap <= n / d + tol.psd_tol), overlap


# -- round-trip validation --------------------------------------------------------


@dataclass(frozen=True)
class RoundtripResult:
    passed: bool
    max_error: float
    skipped: bool = False
    reason: str = ""


ROUNDTRIP_DEFAULTS = {
    "reduction": {"alpha": 1.5},
    "bh2": {"alpha": 3.0, "beta": 0.5},
    "ando2xN": {"alpha": 0.7},
}


def roundtrip_validator(
    family: str,
    dims: Dims,
    n_trials: int,
    seed: int = 0,
    params: dict | None = None,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> RoundtripResult:
    """Max relative error of apply∘invert and invert∘apply on random Hermitian inputs."""
    if family not in ROUNDTRIP_DEFAULTS:
        raise ValueError(f"no invertible family named {family!r}")
    dims = Dims(*dims)
    params = {**ROUNDTRIP_DEFAULTS[family], **(params or {})}
    if family == "reduction":
        apply_fn = lambda x: reduction_like_apply(x, params["alpha"])
        invert_fn = lambda x: reduction_like_invert(x, params["alpha"], tol)
    elif family == "bh2":
        apply_fn = lambda x: bh_two_param_apply(x, params["alpha"], params["beta"])
        invert_fn = lambda x: bh_two_param_invert(x, params["alpha"], params["beta"], tol)
    else:
        apply_fn = lambda x: ando_2xn_apply(x, AndoParams(-1, params["alpha"]))
        invert_fn = lambda x: ando_2xn_invert(x, params["alpha"], tol)

    rng = np.random.default_rng(seed)
    max_error = 0.0
    for _ in range(n_trials):
        g = rng.standard_normal((dims.size, dims.size)) + 1j * rng.standard_normal((dims.size, dims.size))
        h = BipartiteOperator(dims, (g + g.conj().T) / 2)
        scale = max(1.0, float(np.abs(h.matrix).max()))
        try:
            there = np.abs(apply_fn(invert_fn(h)).matrix - h.matrix).max()
            back = np.abs(invert_fn(apply_fn(h)).matrix - h.matrix).max()
        except SingularMapError as err:
            return RoundtripResult(passed=True, max_error=float("nan"), skipped=True, reason=str(err))
        max_error = max(max_error, float(there) / scale, float(back) / scale)
    return RoundtripResult(passed=max_error <= 1e-10, max_error=max_error)
