from .combinato import (
    combinato2_bound,
    combinato2_bound_log,
    combinato2_sum,
    combinato_bound,
    combinato_sum,
    dyadic_primes,
    gaussian_main_term,
    gaussian_sum,
    model_power_expectation,
    window_primes,
)
from .lemma_reports import LEMMAS, LemmaReport, rational_weights, verify_lemma_instance

__all__ = [
    "LEMMAS",
    "LemmaReport",
    "combinato2_bound",
    "combinato2_bound_log",
    "combinato2_sum",
    "combinato_bound",
    "combinato_sum",
    "dyadic_primes",
    "gaussian_main_term",
    "gaussian_sum",
    "model_power_expectation",
    "rational_weights",
    "verify_lemma_instance",
    "window_primes",
]
