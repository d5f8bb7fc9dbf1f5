import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..scheduler import TaskRunner
from .coefficients import CoefficientSystem, as_lambda_matrix
from .polynomials import g_poly, p_poly

logger = logging.getLogger(__name__)

ROW_CHUNK = 4096


@dataclass(frozen=True, eq=False)
class ClassificationReport:
    """
    Membership of every form in the good set, the exceptional sets E(j) and the sets P(m).

    `labels` partitions the family: "G", or "E<j>" for the first scale j+1 whose
    polynomials exceed beta_{j+1}^{-3/4}. `in_good` is the raw good-set test on the
    G_(i,I) alone and may also hold for forms labelled E<j>.
    """

    pairs: Tuple[Tuple[int, int], ...]
    g_values: np.ndarray = field(repr=False)
    thresholds: Tuple[float, ...]
    in_good: np.ndarray = field(repr=False)
    first_failure: np.ndarray = field(repr=False)
    m_range: Tuple[int, ...]
    p_values: np.ndarray = field(repr=False)
    m_index: np.ndarray = field(repr=False)
    clipped: bool

    @property
    def n_forms(self) -> int:
        return len(self.in_good)

    @property
    def labels(self) -> List[str]:
        return ["G" if i == 0 else f"E{i - 1}" for i in self.first_failure]

    def in_exceptional(self, j: int) -> np.ndarray:
        return self.first_failure == j + 1

    def in_p(self, m: int) -> np.ndarray:
        return self.m_index == m

    def g_value(self, i: int, ell: int) -> np.ndarray:
        return self.g_values[:, self.pairs.index((i, ell))]

    def partition_holds(self) -> bool:
        labelled = (self.first_failure == 0).astype(int)
        for j in range(len(self.thresholds)):
            labelled += self.in_exceptional(j).astype(int)
        return bool(np.all(labelled == 1)) and bool(np.all(self.m_index >= 0))

    def summary(self) -> Dict:
        label_counts = Counter(self.labels)
        m_counts = Counter(int(m) for m in self.m_index)
        overlap = int(np.sum(self.in_good & (self.first_failure > 0)))
        return {
            "n_forms": self.n_forms,
            "labels": {key: label_counts[key] for key in sorted(label_counts)},
            "good_flag": int(np.sum(self.in_good)),
            "good_and_exceptional": overlap,
            "p_sets": {str(m): m_counts[m] for m in sorted(m_counts)},
            "m_range": list(self.m_range),
            "clipped": self.clipped,
            "partition": self.partition_holds(),
        }


def _m_range(coeffs: CoefficientSystem) -> Tuple[int, ...]:
    """m >= 0 with 2^{m+1} <= min(sqrt(x_I), largest available prime)"""
    log_top = min(coeffs.params.log_x(coeffs.params.I) / 2, math.log(max(coeffs.primes, default=1)))
    out = []
    m = 0
    while (m + 1) * math.log(2) <= log_top:
        out.append(m)
        m += 1
    return tuple(out)


def classify_family(family, coeffs: CoefficientSystem, threads: Optional[int] = None) -> ClassificationReport:
    params = coeffs.params
    I = params.I
    lam = as_lambda_matrix(family, coeffs)
    pairs = tuple((i, ell) for i in range(1, I + 1) for ell in range(i, I + 1))
    thresholds = tuple(params.threshold(i) for i in range(1, I + 1))
    m_range = _m_range(coeffs)

    def evaluate(rows: np.ndarray):
        g_block = np.column_stack([g_poly(rows, i, ell, coeffs) for i, ell in pairs])
        if m_range:
            p_block = np.column_stack([p_poly(rows, m, coeffs) for m in m_range])
        else:
            p_block = np.zeros((rows.shape[0], 0))
        return g_block, p_block

    chunks = [lam[start:start + ROW_CHUNK] for start in range(0, lam.shape[0], ROW_CHUNK)]
    results = TaskRunner(threads).map_ordered(evaluate, chunks)
    g_values = np.vstack([g for g, _ in results])
    p_values = np.vstack([p for _, p in results])

    limits = np.array([thresholds[i - 1] for i, _ in pairs])
    exceeds = np.abs(g_values) > limits

    # first scale i with some |G_(i,l)| > beta_i^{-3/4}; 0 when none
    first_failure = np.zeros(lam.shape[0], dtype=int)
    for i in range(I, 0, -1):
        columns = [n for n, (a, _) in enumerate(pairs) if a == i]
        failing = np.any(exceeds[:, columns], axis=1)
        first_failure[failing] = i

    final_columns = [n for n, (_, ell) in enumerate(pairs) if ell == I]
    in_good = ~np.any(exceeds[:, final_columns], axis=1)

    m_index = np.zeros(lam.shape[0], dtype=int)
    for n, m in enumerate(m_range):
        large = np.abs(p_values[:, n]) > 2.0 ** (-m / 10)
        m_index[large] = m

    report = ClassificationReport(
        pairs=pairs,
        g_values=g_values,
        thresholds=thresholds,
        in_good=in_good,
        first_failure=first_failure,
        m_range=m_range,
        p_values=p_values,
        m_index=m_index,
        clipped=coeffs.clipped,
    )
    logger.info(f"Classified {report.n_forms} forms: {report.summary()['labels']}")
    return report
