import numpy as np
import pytest

from sepmaps import (
    BipartiteOperator,
    DEFAULT_TOL,
    DimensionMismatchError,
    Dims,
    NotHermitianError,
    OddDimensionError,
    SingularError,
    ToleranceConfig,
    breuer_hall_unitary,
    dephase_diagonal,
    hermitian_spectrum,
    identity,
    kron_product,
    matrix_inverse,
    maximally_entangled,
    operator_norm,
    partial_trace,
    partial_transpose,
    psd_check,
    shift_unitary,
)
from sepmaps.states import haar_vector, three_by_three_family

from conftest import max_abs, random_hermitian


def swap_matrix(d):
    s = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d):
        for l in range(d):
            s[l * d + k, k * d + l] = 1.0
    return s


# -- basic algebra ------------------------------------------------------------


def test_identity_trace():
    assert identity(Dims(2, 3)).trace() == 6


def test_adjoint_involution(rng):
    x = random_hermitian((2, 3), rng)
    y = BipartiteOperator(x.dims, x.matrix + 1j * rng.standard_normal((6, 6)))
    assert max_abs(y.adjoint().adjoint().matrix, y.matrix) == 0.0


def test_kron_identity_factors():
    assert max_abs(kron_product(np.eye(2), np.eye(3)).matrix, np.eye(6)) == 0.0


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionMismatchError):
        identity(Dims(2, 2)) + identity(Dims(2, 3))
    with pytest.raises(DimensionMismatchError):
        BipartiteOperator(Dims(2, 2), np.eye(5))


def test_matrix_is_read_only():
    op = identity(Dims(2, 2))
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 2.0


# -- partial transpose --------------------------------------------------------


def test_partial_transpose_identity():
    eye = identity(Dims(2, 3))
    assert max_abs(partial_transpose(eye, "A").matrix, eye.matrix) == 0.0


def test_partial_transpose_of_max_entangled_is_swap_over_two():
    phi = maximally_entangled(2)
    pt = partial_transpose(phi, "A")
    assert max_abs(pt.matrix, swap_matrix(2) / 2) < 1e-15
    assert abs(hermitian_spectrum(pt)[0] - (-0.5)) < 1e-12


def test_partial_transpose_involution_and_composition(rng):
    x = random_hermitian((2, 4), rng)
    assert max_abs(partial_transpose(partial_transpose(x, "A"), "A").matrix, x.matrix) == 0.0
    both = partial_transpose(partial_transpose(x, "A"), "B")
    assert max_abs(both.matrix, x.matrix.T) == 0.0


def test_pt_spectra_match_between_subsystems(rng):
    # X^{T_B} = (X^{T_A})^T, so both partial transposes share a spectrum
    x = random_hermitian((2, 3), rng)
    sa = hermitian_spectrum(partial_transpose(x, "A"))
    sb = hermitian_spectrum(partial_transpose(x, "B"))
    assert max_abs(sa, sb) < 1e-12


def test_spectrum_invariant_under_local_unitaries(rng):
    x = random_hermitian((2, 4), rng)
    w = np.kron(breuer_hall_unitary(2), breuer_hall_unitary(4))
    rotated = BipartiteOperator(x.dims, w @ x.matrix @ w.conj().T)
    assert max_abs(hermitian_spectrum(rotated), hermitian_spectrum(x)) < 1e-12


# -- partial trace --------------------------------------------------------------


def test_partial_trace_identity():
    assert max_abs(partial_trace(identity(Dims(2, 5)), "A"), 2 * np.eye(5)) == 0.0


def test_partial_trace_max_entangled_marginal():
    assert max_abs(partial_trace(maximally_entangled(2), "A"), np.eye(2) / 2) < 1e-15


def test_partial_trace_of_product(rng):
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    a, b = a + a.conj().T, b + b.conj().T
    prod = kron_product(a, b)
    # independent summation oracle
    expected = np.zeros((3, 3), dtype=complex)
    for i in range(3):
        for k in range(3):
            expected[i, k] = sum(prod.matrix[i * 4 + j, k * 4 + j] for j in range(4))
    assert max_abs(partial_trace(prod, "B"), expected) < 1e-12
    assert max_abs(partial_trace(prod, "B"), np.trace(b) * a) < 1e-12
    assert abs(np.trace(partial_trace(prod, "A")) - prod.trace()) < 1e-12


# -- dephasing -------------------------------------------------------------------


def test_dephase_all_ones():
    op = BipartiteOperator(Dims(2, 2), np.ones((4, 4)))
    assert max_abs(dephase_diagonal(op).matrix, np.eye(4)) == 0.0


def test_dephase_idempotent_and_trace_preserving(rng):
    x = random_hermitian((2, 3), rng)
    once = dephase_diagonal(x)
    assert max_abs(dephase_diagonal(once).matrix, once.matrix) == 0.0
    assert abs(once.trace() - x.trace()) < 1e-12


# -- structured unitaries ---------------------------------------------------------


def test_shift_unitary_small_cases():
    assert max_abs(shift_unitary(1), np.array([[1.0]])) == 0.0
    assert max_abs(np.linalg.matrix_power(shift_unitary(3), 3), np.eye(3)) == 0.0
    e2 = np.zeros(4)
    e2[2] = 1.0
    out = shift_unitary(4) @ e2
    assert out[3] == 1.0 and np.abs(out).sum() == 1.0


def test_breuer_hall_two_dimensional():
    v = breuer_hall_unitary(2)
    assert max_abs(v, np.array([[0.0, 1.0], [-1.0, 0.0]])) == 0.0
    e = np.array([1.0, 1.0j]) / np.sqrt(2)
    assert abs(e.conj() @ v @ e.conj()) < 1e-15


def test_breuer_hall_antisymmetric_unitary():
    v = breuer_hall_unitary(4)
    assert max_abs(v.T + v, np.zeros((4, 4))) == 0.0
    assert max_abs(v.conj().T @ v, np.eye(4)) == 0.0


def test_breuer_hall_orthogonality_random_vectors(rng):
    v = breuer_hall_unitary(6)
    for _ in range(100):
        e = haar_vector(6, rng)
        assert abs(e.conj() @ v @ e.conj()) <= 1e-12


def test_breuer_hall_odd_dimension_rejected():
    with pytest.raises(OddDimensionError):
        breuer_hall_unitary(3)


# -- spectra, psd, norms ------------------------------------------------------------


def test_spectrum_identity():
    assert max_abs(hermitian_spectrum(identity(Dims(2, 2))), np.ones(4)) == 0.0


def test_spectrum_rank_one_projector():
    spec = hermitian_spectrum(maximally_entangled(2))
    assert max_abs(spec, np.array([0.0, 0.0, 0.0, 1.0])) < 1e-12


def test_spectrum_sums_to_trace():
    rho = three_by_three_family(2.0)
    assert abs(hermitian_spectrum(rho).sum() - 1.0) < 1e-12


def test_spectrum_rejects_non_hermitian():
    op = BipartiteOperator(Dims(1, 2), np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotHermitianError):
        hermitian_spectrum(op)


def test_psd_check_cases():
    holds, margin = psd_check(identity(Dims(2, 2)))
    assert holds and abs(margin - 1.0) < 1e-12
    holds, margin = psd_check(BipartiteOperator(Dims(1, 2), np.diag([1.0, -0.5])))
    assert not holds and abs(margin - (-0.5)) < 1e-12


def test_operator_norm_and_inverse():
    assert abs(operator_norm(identity(Dims(2, 3))) - 1.0) < 1e-12
    assert abs(operator_norm(2.0 * shift_unitary(6)) - 2.0) < 1e-12
    inv = matrix_inverse(np.diag([2.0, 4.0]))
    assert max_abs(inv, np.diag([0.5, 0.25])) < 1e-12
    with pytest.raises(SingularError):
        matrix_inverse(np.diag([1.0, 0.0]))


def test_tolerance_config_rejects_negative():
    with pytest.raises(ValueError):
        ToleranceConfig(psd_tol=-1e-9)
    assert DEFAULT_TOL.psd_tol == 1e-9 and DEFAULT_TOL.herm_tol == 1e-10


def test_matrix_multiply_matches_numpy(rng):
    x = random_hermitian((2, 2), rng)
    y = random_hermitian((2, 2), rng)
    assert max_abs((x @ y).matrix, x.matrix @ y.matrix) == 0.0


def test_kron_product_rejects_non_square():
    with pytest.raises(DimensionMismatchError):
        kron_product(np.ones((2, 3)), np.eye(2))
