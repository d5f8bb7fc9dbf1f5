from typing import Dict

import mpmath


def qexpansion_to_dict(f) -> Dict:
    return {"weight": f.weight, "N": f.N, "coeffs": [str(int(c)) for c in f.coeffs]}


def eigenform_to_dict(f, count: int = 20) -> Dict:
    """Rational eigenforms keep exact coefficients; the others are printed to 30 digits."""
    count = min(count, f.N + 1)
    if f.rational:
        coeffs = [str(int(c)) for c in f.coeffs[:count]]
    else:
        coeffs = [mpmath.nstr(c, 30) for c in f.coeffs[:count]]
    return {
        "weight": f.weight,
        "index": f.index,
        "rational": f.rational,
        "t2_eigenvalue": str(f.eigenvalue_t2) if f.rational else mpmath.nstr(f.eigenvalue_t2, 30),
        "coeffs": coeffs,
        "lambda": {str(p): f.lam(p) for p in f.primes(count - 1)},
    }


def family_metadata(family) -> Dict:
    return family.metadata()
