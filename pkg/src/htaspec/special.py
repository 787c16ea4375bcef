"""Special-function surface: real Airy functions and their zeros, complex
gamma, complex upper incomplete gamma.

Evaluation lives in the kernel backend (compiled extension when built, pure
Python otherwise); this module adds argument validation, the no-NaN/overflow
guarantee of the public API, and the Airy zero solver.
"""

from __future__ import annotations

import math

from . import backend
from .errors import DomainError, NumericError

__all__ = [
    "airy_ai",
    "airy_ai_prime",
    "airy_bi",
    "airy_bi_prime",
    "airy_ai_zero",
    "gamma_complex",
    "upper_incomplete_gamma",
]


def _check_real(x, name):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"{name}: argument must be finite, got {x}")
    return x


def _check_finite_result(v, name):
    if isinstance(v, complex):
        bad = not (math.isfinite(v.real) and math.isfinite(v.imag))
    else:
        bad = not math.isfinite(v)
    if bad:
        raise OverflowError(f"{name}: result overflowed double range")
    return v


def airy_ai(x: float) -> float:
    """Airy function Ai(x), real argument."""
    return _check_finite_result(backend.airy_ai(_check_real(x, "airy_ai")), "airy_ai")


def airy_ai_prime(x: float) -> float:
    """Derivative Ai'(x), real argument."""
    return _check_finite_result(backend.airy_ai_prime(_check_real(x, "airy_ai_prime")), "airy_ai_prime")


def airy_bi(x: float) -> float:
    """Airy function Bi(x), real argument.  Grows like exp((2/3)x^{3/2})."""
    return _check_finite_result(backend.airy_bi(_check_real(x, "airy_bi")), "airy_bi")


def airy_bi_prime(x: float) -> float:
    """Derivative Bi'(x), real argument."""
    return _check_finite_result(backend.airy_bi_prime(_check_real(x, "airy_bi_prime")), "airy_bi_prime")


_zero_cache: dict[int, float] = {}


def _ai_zero_estimate(k: int) -> float:
    # McMahon-style expansion: z_k ~ -T(3*pi*(4k-1)/8)
    t = 3.0 * math.pi * (4 * k - 1) / 8.0
    t2 = t * t
    return -(t ** (2.0 / 3.0)) * (1.0 + 5.0 / 48.0 / t2 - 5.0 / 36.0 / (t2 * t2) + 77125.0 / 82944.0 / (t2 * t2 * t2))


def airy_ai_zero(k: int) -> float:
    """k-th negative zero z_k of Ai, k = 1, 2, ... (z_1 = -2.33810741...).

    Zeros are strictly decreasing in k.  Accurate to ~1e-12; resolved by
    Newton on Ai with a guaranteed bisection bracket as fallback.
    """
    k = int(k)
    if k < 1:
        raise DomainError(f"airy_ai_zero: index must be >= 1, got {k}")
    if k in _zero_cache:
        return _zero_cache[k]
    z = _ai_zero_estimate(k)
    # Newton, then verify against the midpoints to the neighbouring zeros.
    for _ in range(60):
        f = backend.airy_ai(z)
        fp = backend.airy_ai_prime(z)
        step = f / fp
        z -= step
        if abs(step) < 1e-14 * abs(z):
            break
    lo = 0.5 * (_ai_zero_estimate(k) + _ai_zero_estimate(k + 1))
    hi = 0.5 * (_ai_zero_estimate(k) + (_ai_zero_estimate(k - 1) if k > 1 else 0.0))
    if not (lo < z < hi):
        # fallback: plain bisection on the guaranteed bracket
        flo = backend.airy_ai(lo)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fm = backend.airy_ai(mid)
            if fm == 0.0 or hi - lo < 1e-14:
                z = mid
                break
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
            z = 0.5 * (lo + hi)
    if abs(backend.airy_ai(z)) > 1e-9:
        raise NumericError(f"airy_ai_zero: refinement failed for k={k} (residual {backend.airy_ai(z):.3e})")
    _zero_cache[k] = z
    return z


def gamma_complex(z: complex) -> complex:
    """Gamma(z) for complex z; non-positive integers are poles (DomainError)."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"gamma_complex: argument must be finite, got {z}")
    try:
        return _check_finite_result(backend.gamma_cx(z), "gamma_complex")
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def upper_incomplete_gamma(s: complex, z: complex) -> complex:
    """Upper incomplete gamma Gamma(s, z) on the principal branch.

    z = 0 requires Re s > 0 (the limit Gamma(s, 0) = Gamma(s)); the negative
    real z axis is treated as approached from above.
    """
    s = complex(s)
    z = complex(z)
    for name, v in (("s", s), ("z", z)):
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise DomainError(f"upper_incomplete_gamma: {name} must be finite, got {v}")
    try:
        return _check_finite_result(backend.upper_gamma_cx(s, z), "upper_incomplete_gamma")
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    except ArithmeticError as exc:
        raise NumericError(str(exc)) from None
