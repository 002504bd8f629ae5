"""The polynomials F_n and the average characteristic polynomials P_n.

F_n(x) = sum_k binom(n,k) (n+kappa)_k (-x)^k / (k! (nu_1+k)! ... (nu_{r-1}+k)!)

and P_n = (-1)^n n! prod Gamma(n+1+nu_i) Gamma(kappa+n)/Gamma(kappa+2n) F_n,
which is monic. All zeros of F_n are real, positive and simple; :func:`zeros`
finds them with brackets certified by exact integer sign evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Sequence

import numpy as np

from .numerics import (
    DEFAULT_CAP_BITS,
    DEFAULT_RTOL,
    AdaptiveReal,
    DomainError,
    adaptive,
)


class CertificationError(RuntimeError):
    """Could not certify the expected number of real zeros.

    Every F_n has n simple positive zeros, so this signals a bug or a
    corrupted input rather than a property of the polynomial.
    """


@dataclass(frozen=True)
class PolySpec:
    """Integer parameters (r, kappa, nu_1..nu_{r-1}) of the polynomial family."""

    r: int
    kappa: int
    nu: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(int(v) for v in self.nu))
        if self.r < 2:
            raise DomainError(f"r must be >= 2, got {self.r}")
        if self.kappa < 0:
            raise DomainError(f"kappa must be >= 0, got {self.kappa}")
        if len(self.nu) != self.r - 1:
            raise DomainError(f"nu must have r-1 = {self.r - 1} entries, got {len(self.nu)}")
        if any(v < 0 for v in self.nu):
            raise DomainError(f"nu entries must be >= 0, got {self.nu}")

    @property
    def nu_sum(self) -> int:
        return sum(self.nu)


@dataclass(frozen=True)
class RationalPoly:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``."""
        acc = Fraction(0) if isinstance(x, Rational) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class CertifiedZeros:
    """Zeros of F_n (unrescaled) with exact sign-change brackets.

    ``brackets[i] = (lo, hi)`` are Fractions such that F_n(lo) and F_n(hi)
    have opposite exact signs, and ``lo <= zeros[i] <= hi``.
    """

    n: int
    zeros: tuple[float, ...]
    brackets: tuple[tuple[Fraction, Fraction], ...]

    def rescaled(self, r: int) -> np.ndarray:
        return np.asarray(self.zeros) / float(self.n) ** (r - 1)


def _rising(a: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= a + j
    return out


@lru_cache(maxsize=256)
def coefficients(spec: PolySpec, n: int) -> RationalPoly:
    """Exact coefficients of F_n, index k holding the coefficient of x^k."""
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    coeffs = []
    for k in range(n + 1):
        den = math.factorial(k)
        for v in spec.nu:
            den *= math.factorial(v + k)
        num = (-1) ** k * math.comb(n, k) * _rising(n + spec.kappa, k)
        coeffs.append(Fraction(num, den))
    return RationalPoly(n, tuple(coeffs))


@lru_cache(maxsize=256)
def _integer_coefficients(spec: PolySpec, n: int) -> tuple[int, ...]:
    # positive common multiple of the denominators; signs are unchanged
    poly = coefficients(spec, n)
    lcm = 1
    for c in poly.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return tuple(int(c * lcm) for c in poly.coeffs)


def exact_sign(spec: PolySpec, n: int, x) -> int:
    """Exact sign of F_n(x) for rational x (floats are taken at face value)."""
    q = Fraction(x)
    p, d = q.numerator, q.denominator
    ints = _integer_coefficients(spec, n)
    # sum_k c_k p^k d^(n-k), Horner in homogeneous form
    acc = ints[n]
    dpow = 1
    for k in range(n - 1, -1, -1):
        dpow *= d
        acc = acc * p + ints[k] * dpow
    return (acc > 0) - (acc < 0)


def _series(spec: PolySpec, n: int, x, ctx):
    """Sum F_n at ``x`` (already a ``ctx`` number) in increasing k."""
    nu_fact = 1
    for v in spec.nu:
        nu_fact *= math.factorial(v)
    term = ctx.mpf(1) / nu_fact
    total = term
    for k in range(n):
        ratio_num = -(n - k) * (n + spec.kappa + k)
        ratio_den = (k + 1) ** 2
        for v in spec.nu:
            ratio_den *= v + k + 1
        term = term * x * ratio_num / ratio_den
        total += term
    return total


def evaluate(
    spec: PolySpec,
    n: int,
    x,
    rescaled: bool = False,
    exact: bool = False,
    rtol: float = DEFAULT_RTOL,
    cap_bits: int = DEFAULT_CAP_BITS,
):
    """Value of F_n(x), or of F_n(n^{r-1} x) when ``rescaled``.

    Returns an exact :class:`Fraction` when ``exact`` is set (``x`` must then
    be rational); otherwise an :class:`AdaptiveReal`.
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    scale = n ** (spec.r - 1) if rescaled else 1
    if exact:
        if not isinstance(x, (Rational, float)):
            raise DomainError("exact evaluation needs a rational argument")
        return coefficients(spec, n)(Fraction(x) * scale)
    if isinstance(x, (Rational, float)):
        q = Fraction(x) * scale

        def expr(ctx):
            return _series(spec, n, ctx.mpf(q.numerator) / q.denominator, ctx)
    else:
        # mpf input: scaling is exact at working precision
        def expr(ctx):
            return _series(spec, n, ctx.mpf(x) * scale, ctx)

    return adaptive(expr, rtol=rtol, cap_bits=cap_bits)


def avg_charpoly_prefactor(spec: PolySpec, n: int) -> Fraction:
    """(-1)^n n! prod Gamma(n+1+nu_i) Gamma(kappa+n) / Gamma(kappa+2n), exactly."""
    if n < 1:
        raise DomainError(f"P_n is defined for n >= 1, got {n}")
    num = math.factorial(n) * math.factorial(spec.kappa + n - 1)
    for v in spec.nu:
        num *= math.factorial(n + v)
    return Fraction((-1) ** n * num, math.factorial(spec.kappa + 2 * n - 1))


def evaluate_avg_charpoly(spec: PolySpec, n: int, x, exact: bool = False, **kw):
    """Average characteristic polynomial P_n(x) (monic of degree n)."""
    pref = avg_charpoly_prefactor(spec, n)
    val = evaluate(spec, n, x, exact=exact, **kw)
    if exact:
        return pref * val
    return AdaptiveReal(val.value * pref.numerator / pref.denominator,
                        val.precision_bits, val.rel_error_bound)


def avg_charpoly_coefficients(spec: PolySpec, n: int) -> tuple[Fraction, ...]:
    pref = avg_charpoly_prefactor(spec, n)
    return tuple(pref * c for c in coefficients(spec, n).coeffs)


# --- zeros -----------------------------------------------------------------


def _root_bounds(spec: PolySpec, n: int) -> tuple[float, float]:
    """Bounds lo <= min zero, max zero <= hi from the first/last coefficients.

    With all zeros positive, sum(1/z_i) = -c_1/c_0 and sum(z_i) = -c_{n-1}/c_n.
    """
    c = coefficients(spec, n).coeffs
    lo = c[0] / -c[1]
    hi = c[n - 1] / -c[n]
    return float(lo) / 2, float(hi) * 2


def _asymptotic_seeds(spec: PolySpec, n: int) -> np.ndarray:
    from .asymptotics import phase_f, phase_g, sigma_array

    r = spec.r
    m = 40 * n + 400
    phis = np.linspace(0, np.pi / (r + 1), m + 2)[1:-1]
    phase = n * phase_f(phis, r) + phase_g(phis, spec)
    c = np.cos(phase)
    idx = np.nonzero(np.sign(c[:-1]) * np.sign(c[1:]) < 0)[0]
    # linear interpolation of the cosine root between grid points
    t = c[idx] / (c[idx] - c[idx + 1])
    roots_phi = phis[idx] + t * (phis[idx + 1] - phis[idx])
    xs = np.sort(sigma_array(roots_phi, r)) * float(n) ** (r - 1)
    return xs[np.isfinite(xs) & (xs > 0)]


def _sign_brackets(spec: PolySpec, n: int, points: Sequence[float]) -> list[tuple[float, float]]:
    pts = sorted(set(float(p) for p in points if p > 0))
    signs = []
    clean = []
    for p in pts:
        s = exact_sign(spec, n, p)
        if s == 0:
            # an exact hit: step off it so brackets stay open
            p = math.nextafter(p, math.inf)
            s = exact_sign(spec, n, p)
        clean.append(p)
        signs.append(s)
    out = []
    for i in range(len(clean) - 1):
        if signs[i] * signs[i + 1] < 0:
            out.append((clean[i], clean[i + 1]))
    return out


def _bisect(spec: PolySpec, n: int, a: float, b: float, rtol: float) -> tuple[float, Fraction, Fraction]:
    sa = exact_sign(spec, n, a)
    while b - a > rtol * abs(a):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        sm = exact_sign(spec, n, mid)
        if sm == 0:
            lo, hi = math.nextafter(mid, -math.inf), math.nextafter(mid, math.inf)
            return mid, Fraction(lo), Fraction(hi)
        if sm == sa:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b), Fraction(a), Fraction(b)


def zeros(spec: PolySpec, n: int, rtol: float = DEFAULT_RTOL, max_scan_doublings: int = 12) -> CertifiedZeros:
    """All n zeros of F_n (unrescaled), each in an exact sign-change bracket.

    Brackets are seeded from the cosine zeros of the large-n asymptotic
    formula; if that does not produce n sign changes, a geometric grid
    between rigorous root bounds is refined until it does.
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    if n == 0:
        return CertifiedZeros(0, (), ())
    lo, hi = _root_bounds(spec, n)
    brackets: list[tuple[float, float]] = []
    if n >= 2:
        seeds = _asymptotic_seeds(spec, n)
        if len(seeds):
            cuts = np.concatenate([[lo], np.sqrt(seeds[:-1] * seeds[1:]), [hi]])
            cuts = cuts[(cuts >= lo) & (cuts <= hi)]
            brackets = _sign_brackets(spec, n, cuts)
    m = max(8 * n, 64)
    doublings = 0
    while len(brackets) != n:
        if doublings > max_scan_doublings:
            raise CertificationError(
                f"found {len(brackets)} sign changes for degree {n} ({spec})"
            )
        grid = np.geomspace(lo, hi, m)
        brackets = _sign_brackets(spec, n, grid)
        m *= 2
        doublings += 1
    found = [_bisect(spec, n, a, b, rtol) for a, b in brackets]
    found.sort(key=lambda t: t[0])
    return CertifiedZeros(
        n,
        tuple(z for z, _, _ in found),
        tuple((a, b) for _, a, b in found),
    )
