"""
Petersson inner products by quadrature over the standard fundamental domain.

The domain splits at y = 1. Above, integrating over |x| <= 1/2 first turns the
integrand into sum_n a(n) b(n) e^{-4 pi n y} y^{w-2}; each term is an incomplete
gamma value on [1, Y] and only the leading term is kept beyond the height Y.
Below, the region between the unit circle and y = 1 is covered by tensor
Gauss-Legendre tiles, with x-tiles outermost so the curved boundary is smooth.
"""
import logging
import math
from typing import Optional, Sequence, Tuple

import mpmath
import numpy as np
from pydantic import BaseModel

from ..config import settings
from ..errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

SQRT3_2 = math.sqrt(3) / 2
# |q| <= e^{-pi sqrt 3} on the lower region; 60 terms reach far below double precision
EVALUATION_TERMS = 60
FOURIER_TERMS = 80


class PeterssonResult(BaseModel):
    value: float
    est_error: float
    quad_depth: int
    truncation_height: float
    fourier_cutoff: int
    upper_region: float
    lower_region: float
    tail: float
    scale: float


def _coefficient_floats(form, count: int) -> np.ndarray:
    count = min(count, form.N + 1)
    return np.array([float(c) for c in form.coefficients(count)], dtype=float)


def _evaluate(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """sum_{n>=1} c(n) q^n by Horner in q = e^{2 pi i z}."""
    q = np.exp(2j * np.pi * z)
    acc = np.zeros_like(q)
    for c in coeffs[:0:-1]:
        acc = (acc + c) * q
    return acc


def _lower_region(a: np.ndarray, b: np.ndarray, weight: int, depth: int, nodes: int) -> float:
    t, wt = np.polynomial.legendre.leggauss(nodes)
    tiles = 2**depth
    x_edges = np.linspace(0.0, 0.5, tiles + 1)
    xs, wxs = [], []
    for lo, hi in zip(x_edges[:-1], x_edges[1:]):
        xs.append(lo + (hi - lo) * (t + 1) / 2)
        wxs.append(wt * (hi - lo) / 2)
    x = np.concatenate(xs)
    wx = np.concatenate(wxs)

    y_floor = np.sqrt(1.0 - x**2)
    frac_edges = np.linspace(0.0, 1.0, tiles + 1)
    total = 0.0
    for lo, hi in zip(frac_edges[:-1], frac_edges[1:]):
        s = lo + (hi - lo) * (t + 1) / 2
        ws = wt * (hi - lo) / 2
        height = 1.0 - y_floor
        y = y_floor[:, None] + height[:, None] * s[None, :]
        weights = wx[:, None] * height[:, None] * ws[None, :]
        z = x[:, None] + 1j * y
        integrand = _evaluate(a, z) * np.conj(_evaluate(b, z)) * y ** (weight - 2)
        total += float(np.sum(weights * integrand.real))
    # the x < 0 half is the complex conjugate for real coefficients
    return 2.0 * total


def _upper_region(a: Sequence[float], b: Sequence[float], weight: int, height: float):
    s = weight - 1
    body = mpmath.mpf(0)
    scale = mpmath.mpf(0)
    last = mpmath.mpf(0)
    remainder = mpmath.mpf(0)
    for n in range(1, len(a)):
        c = mpmath.mpf(a[n]) * mpmath.mpf(b[n])
        if not c:
            continue
        rate = 4 * mpmath.pi * n
        piece = mpmath.gammainc(s, rate, rate * height) / rate**s
        body += c * piece
        scale += abs(c) * piece
        last = abs(c * piece)
        if n > 1:
            remainder += abs(c) * mpmath.gammainc(s, rate * height) / rate**s
    lead = mpmath.mpf(a[1]) * mpmath.mpf(b[1]) if len(a) > 1 else mpmath.mpf(0)
    tail = lead * mpmath.gammainc(s, 4 * mpmath.pi * height) / (4 * mpmath.pi) ** s
    return float(body), float(tail), float(scale), float(last), float(remainder)


def petersson_inner(f, g, tolerance: Optional[float] = None, depth: Optional[int] = None,
                    height: Optional[float] = None) -> PeterssonResult:
    """<f, g> = int_D f conj(g) y^w dxdy/y^2 for cusp forms of equal weight w with real coefficients."""
    if f.weight != g.weight:
        logger.error(f"petersson_inner: weights {f.weight} and {g.weight} differ")
        raise DomainError("petersson_inner needs equal weights")
    if f.coefficients(1)[0] != 0 or g.coefficients(1)[0] != 0:
        raise DomainError("petersson_inner needs cusp forms")

    tolerance = settings.petersson_tolerance if tolerance is None else tolerance
    depth = settings.quad_depth if depth is None else depth
    height = settings.truncation_height if height is None else height
    weight = f.weight

    cutoff = min(FOURIER_TERMS, f.N + 1, g.N + 1)
    with mpmath.workdps(30):
        a_mp = f.coefficients(cutoff)
        b_mp = g.coefficients(cutoff)
        body, tail, scale, last, remainder = _upper_region(a_mp, b_mp, weight, height)

    a = _coefficient_floats(f, EVALUATION_TERMS)
    b = _coefficient_floats(g, EVALUATION_TERMS)
    terms = min(len(a), len(b))
    a, b = a[:terms], b[:terms]

    best = None
    for attempt in range(depth, depth + 3):
        lower = _lower_region(a, b, weight, attempt, settings.quad_nodes)
        coarse = _lower_region(a, b, weight, max(attempt - 1, 0), settings.quad_nodes)
        quad_error = abs(lower - coarse)
        # first neglected Fourier terms on the lower region, |q| <= e^{-pi sqrt 3}
        decay = math.exp(-2 * math.pi * SQRT3_2 * terms)
        series_error = (abs(a[-1]) * np.sum(np.abs(b)) + abs(b[-1]) * np.sum(np.abs(a))) * decay
        est_error = quad_error + float(series_error) + last + remainder
        value = body + tail + lower
        total_scale = scale + abs(lower)
        best = PeterssonResult(
            value=value,
            est_error=est_error,
            quad_depth=attempt,
            truncation_height=height,
            fourier_cutoff=cutoff,
            upper_region=body,
            lower_region=lower,
            tail=tail,
            scale=total_scale,
        )
        if est_error < tolerance * total_scale:
            logger.debug(f"Petersson weight {weight}: value={value:.12g} err={est_error:.3g} depth={attempt}")
            return best
    logger.error(f"Petersson quadrature did not reach tolerance {tolerance}: err={best.est_error}")
    raise ConvergenceError("Petersson quadrature tolerance unreachable", best.value, best.est_error)


def normalized_inner(f, g, tolerance: Optional[float] = None) -> float:
    """<F, G> for F = f/||f||, G = g/||g||."""
    ff = petersson_inner(f, f, tolerance).value
    gg = petersson_inner(g, g, tolerance).value
    fg = petersson_inner(f, g, tolerance).value
    return fg / math.sqrt(ff * gg)
