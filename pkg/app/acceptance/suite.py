"""
Acceptance battery: exact identities, brute-force lemma instances, modular-form
cross-validations and the determinism of the emitted artifacts.
"""
import hashlib
import logging
import math
import tempfile
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import mpmath
import numpy as np
from pydantic import BaseModel, ConfigDict

from ..config import settings
from ..errors import AcceptanceFailure, ConfigError
from ..hecke import catalan, expand_lambda_power, h1_power, h2_power
from ..modforms import (
    cusp_dimension,
    deligne_violations,
    delta,
    delta_qexpansion,
    fourth_moment,
    harmonic_sum_check,
    hecke_eigenforms,
    miller_basis,
    multiplicativity_defect,
    petersson_full_diagonal,
)
from ..oracles import (
    combinato2_bound,
    combinato2_sum,
    combinato_bound,
    combinato_sum,
    dyadic_primes,
    verify_lemma_instance,
    window_primes,
)
from ..pipeline import (
    PartitionParams,
    certify_e_trunc,
    chain_validator,
    e_trunc_exact,
    sound_margins,
)
from ..satotate import make_rng, model_expectation_exact, model_expectation_product, monte_carlo_expectation, sample_family
from ..storage import BOUND_COLUMNS, LVALUE_COLUMNS, MARGIN_COLUMNS, ReportStore, TableWriter, chain_rows

logger = logging.getLogger(__name__)

SUITES = ("quick", "primary")
# direct enumeration is only compared where it stays cheap
DUAL_STRATEGY_LIMIT = 200_000


class SuiteSizes(BaseModel):
    model_config = ConfigDict(frozen=True)

    weight_systems: int
    monomials: int
    mc_forms: int
    mc_configs: int
    mc_pass_fraction: float
    deligne_max_weight: int
    deligne_primes: int
    trace_weights: tuple
    watson_weights: tuple
    margin_ncoeffs: int
    family_forms: int


SIZES = {
    "quick": SuiteSizes(
        weight_systems=10,
        monomials=20,
        mc_forms=100_000,
        mc_configs=10,
        mc_pass_fraction=0.9,
        deligne_max_weight=24,
        deligne_primes=200,
        trace_weights=(24,),
        watson_weights=(12,),
        margin_ncoeffs=200,
        family_forms=1000,
    ),
    "primary": SuiteSizes(
        weight_systems=50,
        monomials=100,
        mc_forms=1_000_000,
        mc_configs=100,
        mc_pass_fraction=0.99,
        deligne_max_weight=40,
        deligne_primes=1000,
        trace_weights=(24, 28, 32),
        watson_weights=(12, 16, 18, 20),
        margin_ncoeffs=1000,
        family_forms=10_000,
    ),
}


class CriterionResult(BaseModel):
    number: int
    name: str
    passed: bool
    details: Dict[str, Any]


class SuiteReport(BaseModel):
    suite: str
    seed: int
    passed: bool
    results: List[CriterionResult]
    digests: Dict[str, str]


def file_digests(directory: Path) -> Dict[str, str]:
    return {
        path.name: hashlib.sha256(path.read_bytes()).hexdigest()
        for path in sorted(Path(directory).iterdir())
        if path.is_file()
    }


class AcceptanceSuite:
    """Runs the acceptance criteria and writes their artifacts"""

    def __init__(self, suite: str = "quick", output_dir: Optional[str] = None, seed: Optional[int] = None):
        if suite not in SUITES:
            raise ConfigError(f"unknown suite {suite!r}; expected one of {SUITES}")
        self.suite = suite
        self.sizes = SIZES[suite]
        self.seed = settings.seed if seed is None else seed
        self.output_dir = Path(output_dir) if output_dir is not None else settings.output_path / "acceptance"

    # 1
    def moment_identities(self) -> CriterionResult:
        catalan_ok = all(h1_power(2 * m) == catalan(m) for m in range(21))
        odd_ok = all(h1_power(2 * m + 1) == 0 for m in range(21))
        small_ok = (h2_power(1), h2_power(2), h2_power(3)) == (0, 1, 1)
        growth_ok = all(abs(h2_power(b)) <= 3**b for b in range(21))
        return CriterionResult(
            number=1,
            name="moment identities",
            passed=catalan_ok and odd_ok and small_ok and growth_ok,
            details={"catalan": catalan_ok, "odd": odd_ok, "h2_small": small_ok, "h2_growth": growth_ok},
        )

    # 2
    def hecke_expansion(self) -> CriterionResult:
        thetas = np.linspace(0.01, math.pi - 0.01, 200)
        worst = 0.0
        for alpha in range(1, 21):
            expansion = expand_lambda_power(alpha)
            for theta in thetas:
                target = (2 * math.cos(theta)) ** alpha
                worst = max(worst, abs(expansion.evaluate(theta) - target) / max(1.0, abs(target)))
        bounds_ok = all(expand_lambda_power(alpha).check_bounds() for alpha in range(1, 65))
        return CriterionResult(
            number=2,
            name="hecke expansion oracle",
            passed=worst < 1e-10 and bounds_ok,
            details={"max_chebyshev_error": worst, "coefficient_bounds": bounds_ok},
        )

    # 3
    def lemma_brute_force(self) -> CriterionResult:
        rng = make_rng(self.seed, 3)
        instances = failures = odd_failures = strategy_mismatches = 0
        worst_ratio = 0.0
        for _ in range(self.sizes.weight_systems):
            x1 = int(rng.integers(2, 100))
            window = (x1, x1 + int(rng.integers(5, 60)))
            primes = window_primes(window)[:25]
            if not primes:
                continue
            window = (window[0], primes[-1])
            u = {p: Fraction(int(rng.integers(-2000, 2001)), 1000) for p in primes}
            m = int(rng.integers(1, 6))
            w = {p: Fraction(int(rng.integers(-2000, 2001)), 1000) for p in dyadic_primes(m)}
            c = max((abs(v) for v in w.values()), default=Fraction(0))

            for n in (2, 4, 6):
                instances += 1
                value = combinato_sum(window, u, n, "partition")
                bound = combinato_bound(window, u, n)
                if abs(value) > bound:
                    failures += 1
                if bound:
                    worst_ratio = max(worst_ratio, float(abs(value) / bound))
                if len(primes) ** n <= DUAL_STRATEGY_LIMIT and combinato_sum(window, u, n, "direct") != value:
                    strategy_mismatches += 1
                if combinato_sum(window, u, n - 1) != 0:
                    odd_failures += 1
            for big_m in (1, 2, 3):
                instances += 1
                value = combinato2_sum(m, w, big_m, "partition")
                if abs(value) > combinato2_bound(m, c, big_m):
                    failures += 1
                if len(w) ** (2 * big_m) <= DUAL_STRATEGY_LIMIT and combinato2_sum(m, w, big_m, "direct") != value:
                    strategy_mismatches += 1
        return CriterionResult(
            number=3,
            name="moment lemmas by brute force",
            passed=failures == 0 and odd_failures == 0 and strategy_mismatches == 0,
            details={
                "instances": instances,
                "bound_failures": failures,
                "odd_failures": odd_failures,
                "strategy_mismatches": strategy_mismatches,
                "worst_ratio": worst_ratio,
            },
        )

    # 4
    def model_equivalence(self) -> CriterionResult:
        rng = make_rng(self.seed, 4)

        def monomial():
            exponents = [(int(rng.integers(0, 7)), int(rng.integers(0, 4))) for _ in range(int(rng.integers(1, 4)))]
            if all(a == 0 and b == 0 for a, b in exponents):
                exponents[0] = (2, 0)
            return exponents

        worst = 0.0
        for _ in range(self.sizes.monomials):
            exponents = monomial()
            exact = model_expectation_exact(exponents)
            worst = max(worst, abs(model_expectation_product(exponents) - exact) / max(1, abs(exact)))

        inside = 0
        for index in range(self.sizes.mc_configs):
            exponents = monomial()
            mean, std_err = monte_carlo_expectation(exponents, self.sizes.mc_forms, self.seed + index)
            if abs(mean - model_expectation_exact(exponents)) <= 3 * std_err:
                inside += 1
        needed = math.ceil(self.sizes.mc_pass_fraction * self.sizes.mc_configs)
        return CriterionResult(
            number=4,
            name="independent-model equivalence",
            passed=worst < 1e-9 and inside >= needed,
            details={"max_quadrature_error": worst, "mc_within_3se": inside, "mc_configs": self.sizes.mc_configs},
        )

    # 5
    def modular_forms(self) -> CriterionResult:
        N = self.sizes.deligne_primes
        d = delta(60)
        delta_ok = d.coeffs == delta_qexpansion(60).coeffs and d[1] == 1 and d[2] == -24 and d[3] == 252
        dimension_ok = len(miller_basis(24, 60)) == 2 == cusp_dimension(24)
        violations = {}
        worst_defect = 0.0
        for k in range(12, self.sizes.deligne_max_weight + 1, 2):
            for f in hecke_eigenforms(k, N):
                bad = deligne_violations(f, N)
                if bad:
                    violations[f"{k}:{f.index}"] = bad[:5]
                worst_defect = max(worst_defect, multiplicativity_defect(f))
        return CriterionResult(
            number=5,
            name="modular forms",
            passed=delta_ok and dimension_ok and not violations and worst_defect < 1e-10,
            details={
                "delta_identity": delta_ok,
                "dim_S24": dimension_ok,
                "deligne_violations": violations,
                "max_multiplicativity_defect": worst_defect,
            },
        )

    # 6
    def trace_formula_closure(self) -> CriterionResult:
        worst = 0.0
        worst_diagonal = 0.0
        for weight in self.sizes.trace_weights:
            for t in (1, 2, 3):
                for u in (1, 2, 3):
                    gap = abs(harmonic_sum_check(t, u, weight) - petersson_full_diagonal(t, u, weight))
                    worst = max(worst, gap)
            worst_diagonal = max(worst_diagonal, abs(harmonic_sum_check(1, 1, weight) - 1))
        return CriterionResult(
            number=6,
            name="trace formula closure",
            passed=worst < 1e-3 and worst_diagonal < 1e-2,
            details={"max_gap": worst, "max_diagonal_deviation": worst_diagonal},
        )

    # 7
    def watson_round_trip(self, writer: TableWriter) -> CriterionResult:
        rows = []
        worst_watson = worst_parseval = 0.0
        nonnegative = True
        for k in self.sizes.watson_weights:
            result = fourth_moment(k)
            worst_watson = max(worst_watson, result.watson_gap)
            worst_parseval = max(worst_parseval, result.parseval_gap)
            nonnegative = nonnegative and all(row.value >= 0 for row in result.rows)
            rows.extend(
                {"k": row.k, "g_index": row.g_index, "value": row.value, "est_error": row.est_error}
                for row in result.rows
            )
        writer.write("l_values", rows, LVALUE_COLUMNS)
        return CriterionResult(
            number=7,
            name="watson identity round trip",
            passed=worst_watson < 1e-3 and worst_parseval < 1e-3 and nonnegative,
            details={"watson_gap": worst_watson, "parseval_gap": worst_parseval, "nonnegative": nonnegative},
        )

    def margin_rows(self) -> List[Dict]:
        k = 12
        return sound_margins(k, [float(k**exponent) for exponent in (2, 4, 6)],
                             ncoeffs=self.sizes.margin_ncoeffs)

    # 8
    def sound_margins(self, writer: TableWriter) -> CriterionResult:
        first = self.margin_rows()
        second = self.margin_rows()
        finite = all(math.isfinite(row["margin"]) for row in first)
        reproducible = all(abs(a["margin"] - b["margin"]) < 1e-6 for a, b in zip(first, second))
        writer.write("margins", first, MARGIN_COLUMNS)
        return CriterionResult(
            number=8,
            name="upper-bound margins",
            passed=finite and reproducible,
            details={"rows": len(first), "finite": finite, "reproducible": reproducible},
        )

    # 9
    def chain(self, writer: TableWriter) -> CriterionResult:
        strict = chain_validator(PartitionParams.from_log_loglog(5.2e4, settings.strict_threshold_exponent))
        loose = chain_validator(PartitionParams.from_log_loglog(5.2e3, settings.loose_threshold_exponent))
        target = 800 * strict.C
        close = abs(strict.min_threshold_exponent - target) <= 0.01 * target
        finite = strict.log_geometric_sum is not None and bool(mpmath.isfinite(mpmath.mpf(strict.log_geometric_sum)))
        writer.write("chain_bounds", chain_rows(strict), BOUND_COLUMNS)
        return CriterionResult(
            number=9,
            name="chain validator",
            passed=strict.all_pass and close and finite,
            details={
                "min_threshold_exponent": strict.min_threshold_exponent,
                "steps": len(strict.steps),
                "all_pass_at_1e5": strict.all_pass,
                "failing_at_1e4": len(loose.failing),
            },
        )

    # 10
    def truncated_exponential(self) -> CriterionResult:
        grid = range(-50, 51)
        positive = all(e_trunc_exact(ell, x) > 0 for ell in range(2, 21, 2) for x in grid)
        certified = all(certify_e_trunc(ell, float(x)) for ell in range(2, 21, 2) for x in grid if x <= 0)
        return CriterionResult(
            number=10,
            name="truncated exponential",
            passed=positive and certified,
            details={"positive": positive, "dominates_exp": certified},
        )

    def write_artifacts(self, directory: Path) -> Dict[str, str]:
        """Deterministic artifacts of a fixed seed; returns their SHA-256 digests."""
        directory.mkdir(parents=True, exist_ok=True)
        writer = TableWriter(str(directory))
        store = ReportStore(str(directory))
        family = sample_family(50, self.sizes.family_forms, self.seed, threads=settings.threads)
        writer.write_family("family", family)
        store.write("family_meta", family.metadata())
        for lemma in ("combinato", "combinato2", "gaussian"):
            store.write(f"oracle_{lemma}", verify_lemma_instance(lemma, {"seed": str(self.seed % 1000), "m": "6"}).to_record())
        chain = chain_validator(PartitionParams.from_log_loglog(5.2e4, settings.strict_threshold_exponent))
        store.write("chain", chain)
        writer.write("chain_bounds", chain_rows(chain), BOUND_COLUMNS)
        return file_digests(directory)

    # 11
    def determinism(self) -> CriterionResult:
        with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
            a = self.write_artifacts(Path(first))
            b = self.write_artifacts(Path(second))
        return CriterionResult(
            number=11,
            name="determinism",
            passed=a == b,
            details={"files": len(a), "identical": a == b},
        )

    def run(self) -> SuiteReport:
        logger.info(f"Starting {self.suite} acceptance suite (seed {self.seed})...")
        self.output_dir.mkdir(parents=True, exist_ok=True)
        writer = TableWriter(str(self.output_dir))
        store = ReportStore(str(self.output_dir))
        criteria: List[Callable[[], CriterionResult]] = [
            self.moment_identities,
            self.hecke_expansion,
            self.lemma_brute_force,
            self.model_equivalence,
            self.modular_forms,
            self.trace_formula_closure,
            lambda: self.watson_round_trip(writer),
            lambda: self.sound_margins(writer),
            lambda: self.chain(writer),
            self.truncated_exponential,
            self.determinism,
        ]
        results = []
        for criterion in criteria:
            started = time.perf_counter()
            result = criterion()
            elapsed = time.perf_counter() - started
            log = logger.info if result.passed else logger.error
            log(f"Criterion {result.number} ({result.name}): {'pass' if result.passed else 'FAIL'} in {elapsed:.1f}s")
            results.append(result)

        digests = self.write_artifacts(self.output_dir / "artifacts")
        report = SuiteReport(
            suite=self.suite,
            seed=self.seed,
            passed=all(r.passed for r in results),
            results=results,
            digests=digests,
        )
        store.write("acceptance", report)
        passed = sum(r.passed for r in results)
        logger.info(f"Acceptance suite finished: {passed}/{len(results)} criteria pass")
        return report


def run_suite(suite: str = "quick", output_dir: Optional[str] = None, seed: Optional[int] = None) -> SuiteReport:
    report = AcceptanceSuite(suite, output_dir, seed).run()
    if not report.passed:
        failed = [r.number for r in report.results if not r.passed]
        logger.error(f"Acceptance suite {suite}: criteria {failed} failed")
        raise AcceptanceFailure(f"criteria {failed} failed")
    logger.info(f"Acceptance suite {suite}: all {len(report.results)} criteria pass")
    return report
