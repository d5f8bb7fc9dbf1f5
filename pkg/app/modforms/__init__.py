from .qexpansion import (
    QExpansion,
    cusp_dimension,
    delta,
    delta_qexpansion,
    eisenstein_series,
    hecke_operator,
    miller_basis,
)
from .eigenforms import (
    EigenformData,
    NumericExpansion,
    deligne_violations,
    hecke_eigenforms,
    lambda_vector,
    multiplicativity_defect,
    t2_matrix,
)
from .petersson import PeterssonResult, normalized_inner, petersson_inner
from .lfunctions import (
    delta_lambdas,
    harmonic_weight,
    normalizing_coefficient_squared,
    sym_square_euler_product,
    sym_square_L1,
    triple_product_gamma_shifts,
    triple_product_conductor,
)
from .watson import (
    FourthMomentResult,
    SpectralEntry,
    WatsonDecomposition,
    WatsonRow,
    eigenbasis_spectrum,
    fourth_moment,
    harmonic_measure,
    moment_from_l_values,
    spectral_data,
    watson_L_value,
)
from .trace_formula import (
    bessel_j,
    bessel_j_backward,
    harmonic_sum_check,
    kloosterman_sum,
    petersson_full_diagonal,
    petersson_tail_bound,
)
