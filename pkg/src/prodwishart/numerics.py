"""Precision infrastructure shared by the rest of the package.

Exact rationals are plain :class:`fractions.Fraction` values. Extended
precision goes through private :class:`mpmath.MPContext` instances so that
the working precision is always an explicit argument and never global state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable

import mpmath

DEFAULT_START_BITS = 256
DEFAULT_CAP_BITS = 2**20
DEFAULT_RTOL = 1e-12


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class NumericalFailure(RuntimeError):
    """A numerical procedure did not reach its accuracy target."""


class PrecisionCapExceeded(NumericalFailure):
    """Adaptive evaluation needed more bits than the configured cap."""


@dataclass(frozen=True)
class AdaptiveReal:
    """Extended-precision value together with how it was obtained.

    ``rel_error_bound`` is the observed relative change between the last two
    evaluations of the producing expression (at ``precision_bits // 2`` and
    ``precision_bits``).
    """

    value: mpmath.mpf
    precision_bits: int
    rel_error_bound: float

    def __float__(self) -> float:
        return float(self.value)

    def sign(self) -> int:
        return int(mpmath.sign(self.value))

    def log_abs(self) -> float:
        """Natural log of ``|value|``; ``-inf`` for an exact zero."""
        if self.value == 0:
            return -math.inf
        return float(mpmath.log(abs(self.value)))


def make_context(bits: int) -> mpmath.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


def adaptive(
    expr: Callable[[mpmath.MPContext], mpmath.mpf],
    rtol: float = DEFAULT_RTOL,
    start_bits: int = DEFAULT_START_BITS,
    cap_bits: int = DEFAULT_CAP_BITS,
) -> AdaptiveReal:
    """Evaluate ``expr(ctx)`` at doubling precision until it stabilizes.

    Two successive evaluations must agree to ``rtol`` relatively. Raises
    :class:`PrecisionCapExceeded` rather than returning a value computed at
    more than ``cap_bits`` or one that never settled.
    """
    if start_bits > cap_bits:
        raise PrecisionCapExceeded(f"start precision {start_bits} exceeds cap {cap_bits}")
    bits = start_bits
    prev = expr(make_context(bits))
    while True:
        bits *= 2
        if bits > cap_bits:
            raise PrecisionCapExceeded(
                f"no agreement to rtol={rtol:g} below the {cap_bits}-bit cap"
            )
        ctx = make_context(bits)
        cur = expr(ctx)
        diff = abs(cur - prev)
        if diff == 0:
            return AdaptiveReal(cur, bits, 0.0)
        scale = abs(cur)
        if scale > 0 and diff <= rtol * scale:
            return AdaptiveReal(cur, bits, float(diff / scale))
        prev = cur


def log_gamma(x: float) -> float:
    """ln Gamma(x) in double precision for ``x > 0``."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def log_gamma_mp(x, rtol: float = DEFAULT_RTOL, cap_bits: int = DEFAULT_CAP_BITS) -> AdaptiveReal:
    """Extended-precision ln Gamma(x) under the adaptive contract.

    ``x`` may be an int, float, Fraction or decimal string; it is converted
    exactly (rationals become a quotient at working precision).
    """
    if isinstance(x, Rational):
        if x <= 0:
            raise DomainError(f"log_gamma requires x > 0, got {x!r}")
        num, den = x.numerator, x.denominator
        return adaptive(lambda ctx: ctx.loggamma(ctx.mpf(num) / den), rtol=rtol, cap_bits=cap_bits)
    if not float(x) > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return adaptive(lambda ctx: ctx.loggamma(ctx.mpf(x)), rtol=rtol, cap_bits=cap_bits)


def gen_binomial(a, n: int, exact: bool | None = None):
    """Generalized binomial coefficient a(a-1)...(a-n+1)/n!.

    With rational ``a`` (int or Fraction) the result is an exact
    :class:`Fraction` unless ``exact=False``; otherwise a float.
    """
    if n < 0:
        raise DomainError(f"gen_binomial requires n >= 0, got {n}")
    if exact is None:
        exact = isinstance(a, Rational)
    if exact:
        a = Fraction(a)
        out = Fraction(1)
        for j in range(n):
            out = out * (a - j) / (j + 1)
        return out
    out = 1.0
    a = float(a)
    for j in range(n):
        out *= (a - j) / (j + 1)
    return out
