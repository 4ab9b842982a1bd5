"""sepmaps: separability criteria from invertible positive-map families on
bipartite systems, with region scans and a built-in verification suite."""

__version__ = "0.1.0"

from .errors import (
    DimensionMismatchError,
    NotHermitianError,
    NotPSDError,
    OddDimensionError,
    SepmapsError,
    SingularError,
    SingularMapError,
    ToleranceViolationError,
    WrongDimsError,
)
from .linalg import (
    DEFAULT_TOL,
    BipartiteOperator,
    Dims,
    PsdResult,
    ToleranceConfig,
    breuer_hall_unitary,
    dephase_diagonal,
    hermitian_spectrum,
    identity,
    kron_product,
    matrix_inverse,
    operator_norm,
    partial_trace,
    partial_transpose,
    psd_check,
    shift_unitary,
)
from .maps import (
    AndoParams,
    FourParams,
    RegionVerdict,
    ando_2xn_apply,
    ando_2xn_invert,
    ando_2xn_region,
    ando_mxn_apply,
    ando_mxn_k_apply,
    ando_mxn_k_region,
    ando_mxn_region,
    bh_two_param_apply,
    bh_two_param_invert,
    bh_two_param_region,
    four_param_apply,
    four_param_region,
    phi_alpha,
    prewitness_image,
    psi_alpha,
    reduction_like_apply,
    reduction_like_invert,
    reduction_like_region,
    tilde_a,
    tilde_b,
    tilde_full,
    two_by_two_region,
)
from .states import (
    SchmidtVector,
    horodecki_2x4,
    horodecki_smoothed,
    maximally_entangled,
    random_density,
    random_pure,
    schmidt_pure,
    three_by_three_family,
)
from .criteria import (
    ENTANGLED_NPT,
    INCONCLUSIVE,
    SCHMIDT_NUMBER_AT_MOST,
    SEPARABLE,
    CriterionReport,
    Verdict,
    aggregate_report,
    criterion1,
    criterion2,
    criterion3,
    criterion4,
    criterion5,
    karnas_equal_pt,
    karnas_norm,
    ppt_necessary,
    purity_ball,
    schmidt_bound_criterion,
)
from .oracle import (
    DecompositionCertificate,
    ScanResult,
    ando_decomposition_2x3,
    exact_sep_small,
    region_boundary_scan,
    roundtrip_validator,
    schmidt_overlap_necessary,
)
