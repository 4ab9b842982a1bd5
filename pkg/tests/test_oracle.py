import numpy as np
import pytest

from sepmaps import (
    BipartiteOperator,
    Dims,
    WrongDimsError,
    identity,
    maximally_entangled,
)
from sepmaps.criteria import SEPARABLE
from sepmaps.errors import NotPSDError
from sepmaps.maps import reduction_like_apply
from sepmaps.oracle import (
    ENTANGLED,
    ando_decomposition_2x3,
    exact_sep_small,
    region_boundary_scan,
    roundtrip_validator,
    sample_pure_states,
    schmidt_overlap_necessary,
    theorem_region_inside,
)
from sepmaps.states import haar_vector

from conftest import max_abs


# -- exact separability at PPT-exact dims ----------------------------------------


def test_exact_sep_trivial_cases():
    assert exact_sep_small(identity(Dims(2, 2)) * 0.25) == SEPARABLE
    assert exact_sep_small(maximally_entangled(2)) == ENTANGLED


def test_exact_sep_gates():
    with pytest.raises(WrongDimsError):
        exact_sep_small(identity(Dims(3, 3)))
    with pytest.raises(NotPSDError):
        exact_sep_small(BipartiteOperator(Dims(2, 2), np.diag([1.0, 1, 1, -1])))


def test_exact_sep_on_reduction_images(rng):
    for _ in range(20):
        vec = haar_vector(6, rng)
        rho = BipartiteOperator(Dims(2, 3), np.outer(vec, vec.conj()))
        assert exact_sep_small(reduction_like_apply(rho, 2.0)) == SEPARABLE


# -- constructive decomposition ----------------------------------------------------


def test_decomposition_product_state():
    e = np.array([0.6, 0.8j, 0.0])
    psi = np.kron(np.array([1.0, 0.0]), e)
    cert = ando_decomposition_2x3(psi, 0.8)
    assert cert.all_pieces_separable
    assert cert.reconstruction_error <= 1e-10
    for piece, kind in cert.pieces:
        if kind == "sigma_ij":
            off = piece.matrix - np.diag(np.diag(piece.matrix))
            assert max_abs(off, np.zeros((6, 6))) == 0.0


@pytest.mark.parametrize("alpha", [1.0, 0.5, -0.5, -0.74])
def test_decomposition_random_states(alpha, rng):
    for _ in range(20):
        cert = ando_decomposition_2x3(haar_vector(6, rng), alpha)
        assert cert.all_pieces_separable, f"alpha={alpha}: margin {cert.worst_piece_margin}"
        assert cert.reconstruction_error <= 1e-10


def test_decomposition_fails_outside_interval():
    # the flat product state maximizes the binding constraint; invalid at -0.9
    psi = np.kron(np.array([1.0, 0.0]), np.ones(3) / np.sqrt(3))
    cert = ando_decomposition_2x3(psi, -0.9)
    assert not cert.all_pieces_separable
    assert cert.worst_piece_margin < -1e-3


def test_decomposition_sigma_sparsity(rng):
    cert = ando_decomposition_2x3(haar_vector(6, rng), 0.7)
    sigma_pieces = [p for p, kind in cert.pieces if kind == "sigma_ij"]
    assert len(sigma_pieces) == 3
    for piece in sigma_pieces:
        assert np.count_nonzero(piece.matrix) <= 8


def test_decomposition_piece_kinds_by_sign(rng):
    kinds_pos = sorted(k for _, k in ando_decomposition_2x3(haar_vector(6, rng), 0.5).pieces)
    assert kinds_pos == ["diagonal_remainder", "product_term", "product_term"] + ["sigma_ij"] * 3
    kinds_neg = sorted(k for _, k in ando_decomposition_2x3(haar_vector(6, rng), -0.5).pieces)
    assert kinds_neg == ["diagonal_remainder"] * 2 + ["product_term"] * 3 + ["sigma_ij"] * 3


def test_decomposition_input_validation():
    with pytest.raises(WrongDimsError):
        ando_decomposition_2x3(np.ones(4) / 2.0, 0.5)
    with pytest.raises(ValueError):
        ando_decomposition_2x3(np.ones(6), 0.5)


# -- scans --------------------------------------------------------------------------


def test_sample_pure_states_injects_extremals(rng):
    psis = sample_pure_states(Dims(2, 3), 4, rng)
    assert psis.shape == (6, 6)
    phi = np.zeros(6)
    phi[[0, 4]] = 1 / np.sqrt(2)
    assert max_abs(psis[0], phi) < 1e-15
    assert psis[1][0] == 1.0 and np.abs(psis[1]).sum() == 1.0
    assert np.allclose(np.linalg.norm(psis, axis=1), 1.0)


def test_scan_reproducibility():
    grid = {"alpha": np.linspace(-1.2, 2.2, 9)}
    a = region_boundary_scan("reduction", Dims(2, 2), grid, n_samples=12, seed=5)
    b = region_boundary_scan("reduction", Dims(2, 2), grid, n_samples=12, seed=5)
    assert a == b
    c = region_boundary_scan("reduction", Dims(2, 2), grid, n_samples=12, seed=6)
    assert any(x != y for x, y in zip(a, c))


def test_scan_reduction_interval():
    grid = {"alpha": np.round(np.arange(-1.5, 2.51, 0.1), 10)}
    results = region_boundary_scan("reduction", Dims(2, 2), grid, n_samples=10, seed=0)
    emp = [r.params["alpha"] for r in results if r.empirically_separable()]
    assert abs(min(emp) - (-1.0)) <= 0.1 + 1e-9
    assert abs(max(emp) - 2.0) <= 0.1 + 1e-9


def test_scan_never_contradicts_proven_regions():
    cases = [
        ("reduction", Dims(2, 2), {"alpha": np.linspace(-1.0, 2.0, 7)}),
        ("bh2", Dims(2, 3), {"alpha": np.arange(-1.0, 3.1, 1.0), "beta": np.arange(-1.0, 3.1, 1.0)}),
        ("ando2xN", Dims(2, 3), {"k": np.array([-1]), "alpha": np.linspace(-0.75, 1.0, 8)}),
        ("andoMxN", Dims(3, 3), {"alpha": np.linspace(-0.5, 0.5, 5)}),
        ("four_param", Dims(2, 2), {"alpha": np.linspace(-1, 2, 4), "beta": np.array([0.0]),
                                    "gamma": np.array([0.0]), "delta": np.array([0.0])}),
    ]
    for family, dims, grid in cases:
        for r in region_boundary_scan(family, dims, grid, n_samples=20, seed=3):
            if theorem_region_inside(family, dims, r.params):
                worst = min(r.worst_psd_margin, r.worst_ppt_margin)
                assert worst >= -10 * 1e-9, f"{family} {r.params}: margin {worst}"


def test_scan_validation():
    with pytest.raises(ValueError):
        region_boundary_scan("nope", Dims(2, 2), {"alpha": [1.0]})
    with pytest.raises(ValueError):
        region_boundary_scan("bh2", Dims(2, 2), {"alpha": [1.0]})  # missing beta


# -- Schmidt overlap oracle -----------------------------------------------------------


def test_overlap_maximally_mixed():
    consistent, overlap = schmidt_overlap_necessary(identity(Dims(3, 3)) * (1 / 9), 1, 3)
    assert consistent and abs(overlap - 1.0 / 9.0) < 1e-12


def test_overlap_fixture_value():
    sigma = BipartiteOperator(Dims(3, 3), np.eye(9)) + 10.0 * maximally_entangled(3)
    consistent, overlap = schmidt_overlap_necessary(sigma, 2, 3)
    assert consistent and abs(overlap - 11.0 / 19.0) < 1e-12


def test_overlap_refutes_separability_of_max_entangled():
    consistent, overlap = schmidt_overlap_necessary(maximally_entangled(3), 1, 3)
    assert not consistent and abs(overlap - 1.0) < 1e-12


def test_overlap_wrong_dims():
    with pytest.raises(WrongDimsError):
        schmidt_overlap_necessary(identity(Dims(2, 3)), 1, 2)


# -- round-trip validator ----------------------------------------------------------------


def test_roundtrip_validator_passes():
    assert roundtrip_validator("reduction", Dims(3, 3), 100, seed=1).passed
    assert roundtrip_validator("bh2", Dims(2, 4), 50, seed=1).passed
    assert roundtrip_validator("ando2xN", Dims(2, 3), 50, seed=1).passed


def test_roundtrip_validator_skips_singular_params():
    res = roundtrip_validator("bh2", Dims(2, 2), 10, seed=1, params={"alpha": 1.0, "beta": 1.0})
    assert res.skipped and res.passed
    assert "singular" in res.reason.lower()


def test_roundtrip_validator_unknown_family():
    with pytest.raises(ValueError):
        roundtrip_validator("phi", Dims(2, 2), 10)


def test_exact_sep_agrees_with_ppt_upgrade():
    from sepmaps import random_density
    from sepmaps.criteria import ppt_necessary

    for dims in ((2, 2), (2, 3)):
        for i in range(25):
            state = random_density(Dims(*dims), seed=900 + i)
            upgraded = ppt_necessary(state).kind == SEPARABLE
            assert upgraded == (exact_sep_small(state) == SEPARABLE)
