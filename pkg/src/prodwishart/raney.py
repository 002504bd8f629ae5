"""The Raney distribution R_{(r+1)/2, 1/2}: limit law of the rescaled zeros.

Moments are available for general Raney parameters; density, distribution
function, Stieltjes transform and sampling only for the model instance
alpha = (r+1)/2, beta = 1/2, where everything has an elementary form in the
angle phi with x = sigma(phi).

Integrals over x are done in phi, with phi = (pi/(r+1)) (1 - s^2) so that the
square-root behaviour at the hard edge x = 0 becomes smooth in s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .asymptotics import phase_f, phi_max, sigma_array, sigma_inv, sigma_inv_array, x_star
from .numerics import DomainError, NumericalFailure, gen_binomial


@dataclass(frozen=True)
class RaneyParams:
    alpha: float | Fraction
    beta: float | Fraction

    def __post_init__(self):
        if not self.alpha >= 1:
            raise DomainError(f"alpha must be >= 1, got {self.alpha}")
        if not 0 < self.beta <= self.alpha:
            raise DomainError(f"need 0 < beta <= alpha, got beta={self.beta}")

    @classmethod
    def model(cls, r: int) -> "RaneyParams":
        """alpha = (r+1)/2, beta = 1/2."""
        return cls(Fraction(r + 1, 2), Fraction(1, 2))


@dataclass(frozen=True)
class SupportInterval:
    r: int

    @property
    def lower(self) -> float:
        return 0.0

    @property
    def upper(self) -> float:
        return x_star(self.r)


def raney_number(params: RaneyParams, n: int):
    """beta/(alpha n + beta) * binom(alpha n + beta, n); exact for rational params."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    al, be = params.alpha, params.beta
    if isinstance(al, Rational) and isinstance(be, Rational):
        top = Fraction(al) * n + Fraction(be)
        return Fraction(be) / top * gen_binomial(top, n, exact=True)
    top = float(al) * n + float(be)
    return float(be) / top * gen_binomial(top, n, exact=False)


# --- density and distribution function -------------------------------------


def density_phi(phi, r: int):
    """v(sigma(phi)) in closed form."""
    phi = np.asarray(phi, dtype=float)
    val = (
        np.sin(2 * phi) * np.sin(phi) * np.sin((r - 1) * phi) ** (r / 2 - 1)
        / (np.pi * np.sin((r + 1) * phi) ** (r / 2))
    )
    return val if val.ndim else float(val)


def _check_r(r: int):
    if r < 2:
        raise DomainError(f"r must be >= 2, got {r}")


def density_v(x: float, r: int) -> float:
    """Density of R_{(r+1)/2,1/2} at x in the open support (0, x*)."""
    _check_r(r)
    return density_phi(sigma_inv(x, r).phi, r)


def cdf_phase_phi(phi, r: int):
    """V(sigma(phi)) = 1 - f(phi)/pi."""
    return 1 - np.asarray(phase_f(phi, r)) / np.pi


def cdf_closed_phi(phi, r: int):
    phi = np.asarray(phi, dtype=float)
    s_minus, s_plus = np.sin((r - 1) * phi), np.sin((r + 1) * phi)
    val = (
        0.5
        + (r - 1) * np.sin(phi) / np.pi * np.sqrt(s_plus / s_minus)
        + np.arctan(np.cos(r * phi) / np.sqrt(s_minus * s_plus)) / np.pi
    )
    return val if val.ndim else float(val)


def cdf_V(x: float, r: int, form: str = "phase") -> float:
    """Distribution function V, total on the real line."""
    _check_r(r)
    if form not in ("phase", "closed"):
        raise DomainError(f"form must be 'phase' or 'closed', got {form!r}")
    if x <= 0:
        return 0.0
    if x >= x_star(r):
        return 1.0
    phi = sigma_inv(x, r).phi
    if form == "phase":
        return float(cdf_phase_phi(phi, r))
    return float(cdf_closed_phi(phi, r))


def cdf_V_array(xs, r: int, form: str = "phase") -> np.ndarray:
    """Vectorized :func:`cdf_V` (phi found by bisection instead of Brent)."""
    _check_r(r)
    xs = np.asarray(xs, dtype=float)
    out = np.where(xs <= 0, 0.0, 1.0)
    inside = (xs > 0) & (xs < x_star(r))
    if np.any(inside):
        phi = sigma_inv_array(xs[inside], r)
        out[inside] = cdf_phase_phi(phi, r) if form == "phase" else cdf_closed_phi(phi, r)
    return out


# --- quadrature in phi ------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


def _mass_weight_s(s: np.ndarray, r: int) -> tuple[np.ndarray, np.ndarray]:
    """x(s) and the measure density in s: v(x) |dx/ds|."""
    pm = phi_max(r)
    eps = pm * s * s
    phi = pm - eps
    # sin((r+1) phi) = sin((r+1) eps) keeps full relative accuracy at the hard edge
    s_plus = np.sin((r + 1) * eps)
    s_minus = np.sin((r - 1) * phi)
    s2 = np.sin(2 * phi)
    x = s_plus ** ((r + 1) / 2) / (s2 * s_minus ** ((r - 1) / 2))
    v = s2 * np.sin(phi) * s_minus ** (r / 2 - 1) / (np.pi * s_plus ** (r / 2))
    dlog = (
        -(r + 1) ** 2 / 2 / np.tan((r + 1) * eps)
        - 2 / np.tan(2 * phi)
        - (r - 1) ** 2 / 2 / np.tan((r - 1) * phi)
    )
    # v(sigma) * (-sigma') * |dphi/ds|, with dphi/ds = -2 pm s
    w = v * x * (-dlog) * 2 * pm * s
    return x, w


def _panel_nodes(panels: int, s_max: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    edges = np.linspace(0.0, s_max, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    s = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    wts = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return s, wts


def integrate(
    func, r: int, upper: float | None = None,
    rtol: float = 1e-13, atol: float = 1e-15, max_panels: int = 4096,
) -> float:
    """Integral of func(x) against v(x) dx over (0, x*), or over (0, upper).

    Composite Gauss-Legendre in s; the panel count doubles until two
    successive results agree.
    """
    _check_r(r)
    s_max = 1.0
    if upper is not None:
        if upper <= 0:
            return 0.0
        if upper < x_star(r):
            s_max = math.sqrt(1 - sigma_inv(upper, r).phi / phi_max(r))
    panels = 4

    def run(p):
        s, wts = _panel_nodes(p, s_max)
        x, w = _mass_weight_s(s, r)
        return float(np.sum(wts * w * func(x)))

    prev = run(panels)
    while panels < max_panels:
        panels *= 2
        cur = run(panels)
        if abs(cur - prev) <= max(rtol * abs(cur), atol):
            return cur
        prev = cur
    raise NumericalFailure(f"quadrature did not settle with {max_panels} panels")


def moment_quadrature(k: int, r: int) -> float:
    """k-th moment of v by quadrature."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    return integrate(lambda x: x**k, r)


def total_mass(r: int) -> float:
    return integrate(lambda x: np.ones_like(x), r)


# --- Stieltjes transform ----------------------------------------------------


def _ae(w: float, z: float, r: int) -> float:
    return w ** (r + 1) - z * w * w + z


def _ae_dw(w: float, z: float, r: int) -> float:
    return (r + 1) * w**r - 2 * z * w


def _newton(w: float, z: float, r: int, steps: int = 60) -> float:
    for _ in range(steps):
        dw = _ae(w, z, r) / _ae_dw(w, z, r)
        w -= dw
        if abs(dw) <= 1e-16 * abs(w):
            break
    return w


def stieltjes_w(z: float, r: int) -> float:
    """Root w(z) of w^{r+1} - z w^2 + z = 0 on the branch with w -> 1 at infinity."""
    _check_r(r)
    xs = x_star(r)
    if not z > xs:
        raise DomainError(f"z={z!r} must exceed x*={xs}")
    if r == 3:
        # biquadratic: u = w^2 solves u^2 - z u + z = 0, smaller root
        disc = math.sqrt(z * z - 4 * z)
        u = 2 * z / (z + disc)
        w = _newton(math.sqrt(u), z, r, steps=3)
    else:
        z0 = max(10 * xs, z)
        w = _newton(1.0, z0, r)
        if z < z0:
            # continuation inward along a geometric path
            for zz in np.geomspace(z0, z, 200)[1:]:
                w = _newton(w, float(zz), r)
    # the w -> 1 branch is the smaller positive root, where the polynomial decreases
    if not (w > 0 and _ae_dw(w, z, r) < 0 and abs(_ae(w, z, r)) <= 1e-10 * z):
        raise NumericalFailure(f"branch tracking failed at z={z}, r={r}")
    return w


def stieltjes(z: float, r: int) -> float:
    """F(z) = w(z)/z for real z > x*."""
    return stieltjes_w(z, r) / z


def stieltjes_quadrature(z: float, r: int) -> float:
    """Independent route: integral of v(x)/(z - x) over the support."""
    if not z > x_star(r):
        raise DomainError(f"z={z!r} must exceed x*={x_star(r)}")
    return integrate(lambda x: 1.0 / (z - x), r)


# --- sampling ---------------------------------------------------------------


def sample(r: int, count: int, seed: int) -> np.ndarray:
    """i.i.d. draws from V by inversion (bisection on phi, where V is monotone)."""
    _check_r(r)
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    u = rng.random(count)
    # V(sigma(phi)) = 1 - f(phi)/pi is decreasing in phi
    target = np.pi * (1 - u)
    lo = np.zeros(count)
    hi = np.full(count, phi_max(r))
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        below = phase_f(mid, r) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    phi = 0.5 * (lo + hi)
    return np.clip(sigma_array(phi, r), 0.0, x_star(r))
