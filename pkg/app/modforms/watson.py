"""
Spectral data of weight-w eigenbases and the fourth moment through Watson's formula.

For F = f/||f|| of weight k and G = g/||g|| running over B_{2k},

    int |F|^4 y^{2k} dmu = sum_G |<F^2, G>|^2
    L(1/2, f x f x g) = |<F^2, G>|^2 * 2(2k-1) L(1, sym^2 f)^2 L(1, sym^2 g) / pi^3
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

from pydantic import BaseModel

from ..config import settings
from ..errors import DomainError
from .eigenforms import EigenformData, hecke_eigenforms
from .lfunctions import harmonic_weight, sym_square_euler_product, sym_square_L1
from .petersson import PeterssonResult, petersson_inner

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SpectralEntry:
    form: EigenformData
    norm: PeterssonResult
    l_sym2: float
    l_sym2_euler: float
    harmonic_weight: float

    @property
    def euler_discrepancy(self) -> float:
        return self.l_sym2_euler / self.l_sym2 - 1


class WatsonRow(BaseModel):
    k: int
    g_index: int
    inner: float
    inner_error: float
    l_sym2_g: float
    value: float
    est_error: float


class FourthMomentResult(BaseModel):
    k: int
    value: float
    est_error: float
    parseval: float
    watson_sum: float
    rows: List[WatsonRow]

    @property
    def parseval_gap(self) -> float:
        return abs(self.parseval - self.value) / self.value

    @property
    def watson_gap(self) -> float:
        return abs(self.watson_sum - self.value) / self.value


def _ncoeffs(ncoeffs: Optional[int]) -> int:
    return settings.ncoeffs if ncoeffs is None else ncoeffs


@lru_cache(maxsize=None)
def eigenbasis_spectrum(weight: int, ncoeffs: Optional[int] = None) -> Tuple[SpectralEntry, ...]:
    """Eigenforms of weight w with Petersson norms and L(1, sym^2 g) by both routes."""
    N = _ncoeffs(ncoeffs)
    entries = []
    for form in hecke_eigenforms(weight, N):
        norm = petersson_inner(form, form)
        l_value = sym_square_L1(weight, norm.value)
        euler = sym_square_euler_product(form.lambdas_at_primes(), N)
        entries.append(SpectralEntry(form, norm, l_value, euler, harmonic_weight(weight, l_value)))
        logger.info(
            f"B_{weight}[{form.index}]: <g,g>={norm.value:.12g} L(1,sym2)={l_value:.10g} "
            f"euler(p<={N})={euler:.6g}"
        )
    return tuple(entries)


def harmonic_measure(weight: int, ncoeffs: Optional[int] = None) -> float:
    """sum^h 1 over B_w; its distance from 1 is the exponentially small Kloosterman correction."""
    return math.fsum(entry.harmonic_weight for entry in eigenbasis_spectrum(weight, ncoeffs))


def _eigenform(k: int, index: int, ncoeffs: Optional[int]) -> EigenformData:
    forms = hecke_eigenforms(k, _ncoeffs(ncoeffs))
    if not forms:
        raise DomainError(f"S_{k} is zero")
    if not 0 <= index < len(forms):
        raise DomainError(f"eigenform index {index} outside 0..{len(forms) - 1}")
    return forms[index]


def fourth_moment(k: int, index: int = 0, tolerance: Optional[float] = None, depth: Optional[int] = None,
                  ncoeffs: Optional[int] = None) -> FourthMomentResult:
    """int |F|^4 y^{2k} dmu for the index-th eigenform of weight k, with its Watson decomposition."""
    f = _eigenform(k, index, ncoeffs)
    square = f.square()
    ff = petersson_inner(f, f, tolerance, depth)
    quartic = petersson_inner(square, square, tolerance, depth)
    value = quartic.value / ff.value**2
    est_error = value * (quartic.est_error / quartic.value + 2 * ff.est_error / ff.value)

    l_f = sym_square_L1(k, ff.value)
    rows = []
    for entry in eigenbasis_spectrum(2 * k, ncoeffs):
        cross = petersson_inner(square, entry.form, tolerance, depth)
        scale = ff.value * math.sqrt(entry.norm.value)
        inner = cross.value / scale
        inner_error = cross.est_error / scale + abs(inner) * (
            ff.est_error / ff.value + entry.norm.est_error / (2 * entry.norm.value)
        )
        l_half = _l_value_from_inner(k, inner, l_f, entry.l_sym2)
        rows.append(WatsonRow(
            k=k,
            g_index=entry.form.index,
            inner=inner,
            inner_error=inner_error,
            l_sym2_g=entry.l_sym2,
            value=l_half,
            est_error=2 * l_half * inner_error / abs(inner) if inner else 0.0,
        ))

    parseval = math.fsum(row.inner**2 for row in rows)
    watson_sum = moment_from_l_values(k, l_f, rows)
    result = FourthMomentResult(
        k=k, value=value, est_error=est_error, parseval=parseval, watson_sum=watson_sum, rows=rows
    )
    logger.info(
        f"Fourth moment k={k}: {value:.10g} (err {est_error:.2g}), parseval gap {result.parseval_gap:.2g}"
    )
    return result


def _l_value_from_inner(k: int, inner: float, l_f: float, l_g: float) -> float:
    """L(1/2, f x f x g) from <F^2, G> and the symmetric-square values."""
    return inner**2 * 2 * (2 * k - 1) * l_f**2 * l_g / math.pi**3


def watson_L_value(f: EigenformData, g: EigenformData, tolerance: Optional[float] = None,
                   depth: Optional[int] = None) -> float:
    """L(1/2, f x f x g) for f of weight k and g of weight 2k, through <F^2, G>."""
    k = f.weight
    if g.weight != 2 * k:
        logger.error(f"watson_L_value: g has weight {g.weight}, expected {2 * k}")
        raise DomainError(f"g must have weight 2k = {2 * k}, got {g.weight}")
    ff = petersson_inner(f, f, tolerance, depth)
    gg = petersson_inner(g, g, tolerance, depth)
    cross = petersson_inner(f.square(), g, tolerance, depth)
    inner = cross.value / (ff.value * math.sqrt(gg.value))
    return _l_value_from_inner(k, inner, sym_square_L1(k, ff.value), sym_square_L1(2 * k, gg.value))


def moment_from_l_values(k: int, l_f: float, rows: List[WatsonRow]) -> float:
    """pi^3/(2(2k-1)) sum_g L(1/2, f x f x g)/(L(1,sym^2 f)^2 L(1,sym^2 g))"""
    return math.pi**3 / (2 * (2 * k - 1)) * math.fsum(
        row.value / (l_f**2 * row.l_sym2_g) for row in rows
    )


@dataclass(frozen=True, eq=False)
class WatsonDecomposition:
    """Everything the fourth-moment identity needs at one weight k."""

    k: int
    form: EigenformData
    norm: PeterssonResult
    l_sym2: float
    spectrum: Tuple[SpectralEntry, ...]
    moment: FourthMomentResult
    harmonic_measure: float

    @property
    def measure_deviation(self) -> float:
        return self.harmonic_measure - 1.0


@lru_cache(maxsize=None)
def spectral_data(k: int, index: int = 0, ncoeffs: Optional[int] = None) -> WatsonDecomposition:
    f = _eigenform(k, index, ncoeffs)
    norm = petersson_inner(f, f)
    spectrum = eigenbasis_spectrum(2 * k, ncoeffs)
    return WatsonDecomposition(
        k=k,
        form=f,
        norm=norm,
        l_sym2=sym_square_L1(k, norm.value),
        spectrum=spectrum,
        moment=fourth_moment(k, index, ncoeffs=ncoeffs),
        harmonic_measure=math.fsum(entry.harmonic_weight for entry in spectrum),
    )
