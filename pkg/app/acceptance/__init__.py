from .suite import SIZES, SUITES, AcceptanceSuite, CriterionResult, SuiteReport, file_digests, run_suite

__all__ = ["SIZES", "SUITES", "AcceptanceSuite", "CriterionResult", "SuiteReport", "file_digests", "run_suite"]
