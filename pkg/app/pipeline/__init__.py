from .partition import PartitionParams, partition_params
from .coefficients import CoefficientSystem, as_lambda_matrix, build_coefficients
from .polynomials import g_poly, p_poly
from .classify import ClassificationReport, classify_family
from .bounds import (
    HeuristicPrediction,
    SoundBound,
    certify_e_trunc,
    e_trunc,
    e_trunc_exact,
    e_trunc_ratio,
    gaussian_heuristic_prediction,
    sound_margins,
    sound_upper,
    sym_side_by_side,
    techn_factor,
    truncation_length,
)
from .chain import (
    ChainReport,
    ChainStep,
    ExceptionalMeasure,
    MarkovReport,
    chain_validator,
    exceptional_measure_bound,
    final_bound_exponent,
    generic_exponential_moment,
    integer_size_check,
    main_contribution_factor,
    markov_comparison,
    markov_moment_bound,
    minimal_threshold_exponent,
    primes_squared_tail_bound,
)
