"""Sufficient separability / Schmidt-number criteria and their aggregation.

Criteria accept unnormalized Hermitian PSD inputs (all formulas carry Tr(σ)
explicitly).  A Separable verdict certifies separability; Inconclusive never
does.  EntangledNPT comes only from a negative partial-transpose eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    NotPSDError,
    SepmapsError,
    SingularError,
    ToleranceViolationError,
    WrongDimsError,
)
from .linalg import (
    DEFAULT_TOL,
    BipartiteOperator,
    Dims,
    ToleranceConfig,
    hermitian_spectrum,
    identity,
    matrix_inverse,
    operator_norm,
    partial_transpose,
    psd_check,
)
from .maps import (
    ando_2xn_interval,
    ando_2xn_invert,
    bh_two_param_invert,
    bh_two_param_region,
    reduction_like_invert,
    tilde_a,
)

SEPARABLE = "separable"
SCHMIDT_NUMBER_AT_MOST = "schmidt_number_at_most"
ENTANGLED_NPT = "entangled_npt"
INCONCLUSIVE = "inconclusive"

PPT_EXACT_DIMS = (Dims(2, 2), Dims(2, 3))


@dataclass(frozen=True)
class Verdict:
    kind: str
    criterion: str
    margin: float
    params: dict = field(default_factory=dict)
    schmidt_n: int | None = None


@dataclass(frozen=True)
class InputDigest:
    dims: Dims
    trace: float
    purity: float
    min_eigenvalue: float


@dataclass(frozen=True)
class Summary:
    kind: str
    schmidt_n: int | None
    supporting_criteria: tuple


@dataclass(frozen=True)
class CriterionReport:
    digest: InputDigest
    verdicts: tuple
    failures: tuple  # (criterion label, error message) pairs
    summary: Summary


def _separable_or_inconclusive(label: str, margin: float, holds: bool, params: dict) -> Verdict:
    return Verdict(SEPARABLE if holds else INCONCLUSIVE, label, float(margin), params)


# -- inverse-image criteria --------------------------------------------------


def criterion1(sigma: BipartiteOperator, alpha: float, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Separable if the reduction-like inverse image is PSD; valid for α ∈ [−1,2]\\{0}."""
    if not -1.0 <= alpha <= 2.0 or alpha == 0.0:
        raise ValueError(f"criterion1 is only proven for alpha in [-1, 2] minus 0, got {alpha}")
    res = psd_check(reduction_like_invert(sigma, alpha, tol), tol)
    return _separable_or_inconclusive("criterion1", res.margin, res.holds, {"alpha": alpha})


def criterion1_upper(sigma: BipartiteOperator, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Boundary case α = 2: fires iff σ − Tr(σ)𝟙/(MN+2) ≥ 0."""
    return criterion1(sigma, 2.0, tol)


def criterion1_lower(sigma: BipartiteOperator, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Boundary case α = −1: fires iff Tr(σ)𝟙/(MN−1) − σ ≥ 0."""
    return criterion1(sigma, -1.0, tol)


def criterion2(
    sigma: BipartiteOperator, alpha: float, beta: float, tol: ToleranceConfig = DEFAULT_TOL
) -> Verdict:
    """Two-parameter inverse-image criterion on 2⊗N; (α, β) must lie in the proven region."""
    region = bh_two_param_region(alpha, beta)
    if not region.inside:
        raise ValueError(
            f"(alpha, beta) = ({alpha}, {beta}) outside the proven region "
            f"(binding {region.binding_constraint})"
        )
    res = psd_check(bh_two_param_invert(sigma, alpha, beta, tol), tol)
    return _separable_or_inconclusive("criterion2", res.margin, res.holds, {"alpha": alpha, "beta": beta})


def criterion3(
    sigma: BipartiteOperator, value: float, branch: str, tol: ToleranceConfig = DEFAULT_TOL
) -> Verdict:
    """Boundary-line criterion on 2⊗N, branch 'a' (weight on σ) or 'b' (weight on σ̃_A).

    Requires value > 2/3: below that the boundary map's inverse flips sign and
    positivity of the displayed combination certifies nothing.
    """
    if branch not in ("a", "b"):
        raise ValueError(f"branch must be 'a' or 'b', got {branch!r}")
    if not np.isfinite(value) or value <= 2.0 / 3.0:
        raise ValueError(f"criterion3 requires a finite value > 2/3, got {value}")
    n = sigma.dims.n
    trace_term = ((1.0 + value / 2.0) / (2 * n + 1.5 * value - 1.0)) * sigma.trace() * identity(sigma.dims)
    first, second = (sigma, tilde_a(sigma)) if branch == "a" else (tilde_a(sigma), sigma)
    displayed = value * first - (value / 2.0 - 1.0) * second - trace_term
    res = psd_check(displayed, tol)
    label = f"criterion3{branch}"
    return _separable_or_inconclusive(label, res.margin, res.holds, {"value": value, "branch": branch})


def criterion4(sigma: BipartiteOperator, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Asymptotic criterion on 2⊗N: σ − σ̃_A/2 > 0 or σ̃_A − σ/2 > 0, strictly."""
    twisted = tilde_a(sigma)
    margins = []
    fired = False
    for displayed in (sigma - 0.5 * twisted, twisted - 0.5 * sigma):
        spectrum = hermitian_spectrum(displayed, tol)
        margin = float(spectrum[0])
        scale = max(1.0, float(np.abs(spectrum).max()))
        fired = fired or margin > tol.psd_tol * scale
        margins.append(margin)
    return Verdict(
        SEPARABLE if fired else INCONCLUSIVE,
        "criterion4",
        max(margins),
        {"margin_a": margins[0], "margin_b": margins[1]},
    )


def criterion5(sigma: BipartiteOperator, alpha: float, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Shift-dephasing inverse-image criterion on 2⊗N for −2N/(3N−1) ≤ α ≤ 1, α ≠ 0."""
    n = sigma.dims.n
    lo, hi = ando_2xn_interval(-1, n)
    if not lo <= alpha <= hi or alpha == 0.0:
        raise ValueError(f"criterion5 requires alpha in [{lo}, {hi}] minus 0, got {alpha}")
    res = psd_check(ando_2xn_invert(sigma, alpha, tol), tol)
    return _separable_or_inconclusive("criterion5", res.margin, res.holds, {"alpha": alpha})


# -- partial-transpose proximity criteria ------------------------------------


def karnas_equal_pt(sigma: BipartiteOperator, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """PSD states on 2⊗N equal to their partial transpose are separable."""
    if sigma.dims.m != 2:
        raise WrongDimsError(f"needs M=2, got M={sigma.dims.m}")
    defect = float(np.abs(sigma.matrix - partial_transpose(sigma, "A").matrix).max())
    threshold = tol.herm_tol * operator_norm(sigma)
    return _separable_or_inconclusive(
        "karnas_equal_pt", threshold - defect, defect <= threshold, {"pt_defect": defect}
    )


def karnas_norm(sigma: BipartiteOperator, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Norm-product criterion on 2⊗N: ‖(σ+σ^{T_A})⁻¹‖·‖σ−σ^{T_A}‖ ≤ 1.

    Requires σ+σ^{T_A} positive definite (full rank alone admits maximally
    entangled false positives at product exactly 1); indefinite sums yield
    Inconclusive, singular sums raise.
    """
    if sigma.dims.m != 2:
        raise WrongDimsError(f"needs M=2, got M={sigma.dims.m}")
    pt = partial_transpose(sigma, "A")
    total = sigma + pt
    spectrum = hermitian_spectrum(total, tol)
    scale = max(1.0, float(np.abs(spectrum).max()))
    if float(np.abs(spectrum).min()) <= tol.inverse_singularity_tol * scale:
        raise SingularError("σ + σ^{T_A} is singular; the norm criterion does not apply")
    if float(spectrum[0]) <= tol.psd_tol * scale:
        return Verdict(
            INCONCLUSIVE, "karnas_norm", float("-inf"), {"sum_min_eig": float(spectrum[0])}
        )
    product = operator_norm(matrix_inverse(total, tol)) * operator_norm(sigma - pt)
    return _separable_or_inconclusive("karnas_norm", 1.0 - product, product <= 1.0, {"product": product})


# -- independent sufficient / necessary tests ---------------------------------


def purity_ball(sigma: BipartiteOperator, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Separable ball around the maximally mixed state: Tr(σ̂²) ≤ 1/(MN−1)."""
    trace = sigma.trace().real
    if abs(trace) < tol.inverse_singularity_tol:
        raise ValueError("purity is undefined for zero-trace input")
    normalized = sigma.matrix / trace
    purity = float(np.trace(normalized @ normalized).real)
    bound = 1.0 / (sigma.dims.size - 1)
    margin = bound - purity
    return _separable_or_inconclusive("purity_ball", margin, margin >= -tol.psd_tol, {"purity": purity})


def ppt_necessary(sigma: BipartiteOperator, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Negative PT eigenvalue ⇒ entangled; PPT upgrades to separable at 2⊗2 and 2⊗3."""
    res = psd_check(partial_transpose(sigma, "A"), tol)
    if not res.holds:
        return Verdict(ENTANGLED_NPT, "ppt", res.margin, {})
    if Dims(*sigma.dims) in PPT_EXACT_DIMS:
        return Verdict(SEPARABLE, "ppt", res.margin, {"exact_dims": True})
    return Verdict(INCONCLUSIVE, "ppt", res.margin, {})


def schmidt_bound_criterion(
    sigma: BipartiteOperator, n: int, alpha: float, tol: ToleranceConfig = DEFAULT_TOL
) -> Verdict:
    """Schmidt number ≤ n on d⊗d if the reduction-like inverse image is PSD,
    for α ∈ [−1, 2(dn−1)/(d−n)] \\ {0}."""
    d, d2 = sigma.dims
    if d != d2:
        raise WrongDimsError(f"Schmidt-number bound needs square dims, got {sigma.dims}")
    if not 1 <= n < d:
        raise ValueError(f"need 1 <= n < d = {d}, got n = {n}")
    upper = 2.0 * (d * n - 1.0) / (d - n)
    if not -1.0 <= alpha <= upper or alpha == 0.0:
        raise ValueError(f"alpha must lie in [-1, {upper}] minus 0 for n = {n}, got {alpha}")
    res = psd_check(reduction_like_invert(sigma, alpha, tol), tol)
    kind = SCHMIDT_NUMBER_AT_MOST if res.holds else INCONCLUSIVE
    return Verdict(kind, "schmidt", res.margin, {"alpha": alpha, "n": n}, schmidt_n=n if res.holds else None)


# -- aggregation ---------------------------------------------------------------

CRITERION1_DEFAULT_ALPHAS = (-1.0, -0.5, 1.0, 2.0)
BOUNDARY_DEFAULT_ALPHAS = (0.0, 2.0, 6.0, 20.0)  # criterion2 sweep (α, α/2−1)
CRITERION3_DEFAULT_VALUES = (2.0, 6.0, 20.0)


def _default_runs(sigma: BipartiteOperator, tol: ToleranceConfig, sweeps: dict | None = None):
    m, n = sigma.dims
    sweeps = sweeps or {}
    runs = [
        ("ppt", lambda: ppt_necessary(sigma, tol)),
        ("purity_ball", lambda: purity_ball(sigma, tol)),
    ]
    for alpha in sweeps.get("criterion1", CRITERION1_DEFAULT_ALPHAS):
        runs.append((f"criterion1[alpha={alpha:g}]", lambda a=alpha: criterion1(sigma, a, tol)))
    if m == 2:
        points = sweeps.get("criterion2", [(a, a / 2.0 - 1.0) for a in BOUNDARY_DEFAULT_ALPHAS])
        for alpha, beta in points:
            runs.append(
                (f"criterion2[alpha={alpha:g},beta={beta:g}]",
                 lambda a=alpha, b=beta: criterion2(sigma, a, b, tol))
            )
        for value in sweeps.get("criterion3", CRITERION3_DEFAULT_VALUES):
            runs.append((f"criterion3a[{value:g}]", lambda v=value: criterion3(sigma, v, "a", tol)))
            runs.append((f"criterion3b[{value:g}]", lambda v=value: criterion3(sigma, v, "b", tol)))
        runs.append(("criterion4", lambda: criterion4(sigma, tol)))
        lo, _ = ando_2xn_interval(-1, n)
        for alpha in sweeps.get("criterion5", (lo, -0.5, 0.5, 1.0)):
            runs.append((f"criterion5[alpha={alpha:g}]", lambda a=alpha: criterion5(sigma, a, tol)))
        runs.append(("karnas_equal_pt", lambda: karnas_equal_pt(sigma, tol)))
        runs.append(("karnas_norm", lambda: karnas_norm(sigma, tol)))
    if m == n and m >= 3:
        default_pairs = [
            (ns, alpha)
            for ns in range(2, m)
            for alpha in (-1.0, 2.0 * (m * ns - 1.0) / (m - ns))
        ]
        for ns, alpha in sweeps.get("schmidt", default_pairs):
            runs.append(
                (f"schmidt[n={ns},alpha={alpha:g}]",
                 lambda a=alpha, k=ns: schmidt_bound_criterion(sigma, k, a, tol))
            )
    return runs


def _summarize(verdicts) -> Summary:
    separable = [v for v in verdicts if v.kind == SEPARABLE]
    npt = [v for v in verdicts if v.kind == ENTANGLED_NPT]
    if separable and npt:
        raise ToleranceViolationError(
            "Separable and EntangledNPT verdicts co-occurred: "
            f"{[v.criterion for v in separable]} vs {[v.criterion for v in npt]}; "
            "tolerances are inconsistent for this input"
        )
    if npt:
        return Summary(ENTANGLED_NPT, None, tuple(v.criterion for v in npt))
    if separable:
        return Summary(SEPARABLE, None, tuple(v.criterion for v in separable))
    schmidt = [v for v in verdicts if v.kind == SCHMIDT_NUMBER_AT_MOST]
    if schmidt:
        best = min(v.schmidt_n for v in schmidt)
        return Summary(
            SCHMIDT_NUMBER_AT_MOST, best,
            tuple(v.criterion for v in schmidt if v.schmidt_n == best),
        )
    return Summary(INCONCLUSIVE, None, ())


def aggregate_report(
    sigma: BipartiteOperator,
    tol: ToleranceConfig = DEFAULT_TOL,
    criteria=None,
    sweeps: dict | None = None,
) -> CriterionReport:
    """Run every dimension-applicable criterion with default sweeps.

    Per-criterion errors are collected, never raised; a Separable/EntangledNPT
    co-occurrence raises ToleranceViolationError instead of being resolved.
    criteria optionally restricts to labels with the given prefixes; sweeps
    overrides the parameter lists per criterion (criterion1/criterion5: α
    values, criterion2: (α, β) pairs, criterion3: boundary values, schmidt:
    (n, α) pairs).
    """
    spectrum = hermitian_spectrum(sigma, tol)
    min_eig = float(spectrum[0])
    scale = max(1.0, float(np.abs(spectrum).max()))
    if min_eig < -tol.psd_tol * scale:
        raise NotPSDError(f"input is not PSD (min eigenvalue {min_eig:.3e})")
    trace = sigma.trace().real
    normalized = sigma.matrix / trace
    digest = InputDigest(
        dims=Dims(*sigma.dims),
        trace=trace,
        purity=float(np.trace(normalized @ normalized).real),
        min_eigenvalue=min_eig,
    )
    verdicts = []
    failures = []
    for label, run in _default_runs(sigma, tol, sweeps):
        if criteria is not None and not any(label.startswith(c) for c in criteria):
            continue
        try:
            verdicts.append(run())
        except (SepmapsError, ValueError) as err:
            failures.append((label, str(err)))
    return CriterionReport(
        digest=digest,
        verdicts=tuple(verdicts),
        failures=tuple(failures),
        summary=_summarize(verdicts),
    )
