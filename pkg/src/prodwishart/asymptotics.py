"""Large-n behaviour of F_n(n^{r-1} x) on the oscillatory interval (0, x*).

Points of the interval are addressed through the angle phi in (0, pi/(r+1))
via x = sigma(phi). At such a point the exponent of the r-fold contour
integral for F_n has the conjugate pair of saddle points built from
w = a(phi) e^{i phi}, and

    F_n(n^{r-1} sigma(phi)) ~ (-1)^n E_n(phi) cos(n f(phi) + g(phi)),

where the envelope E_n is handled in log space (it leaves double range for n
in the low hundreds).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np
from scipy import optimize

from . import charpoly
from .charpoly import PolySpec
from .numerics import DEFAULT_CAP_BITS, DomainError, NumericalFailure


def x_star(r: int) -> float:
    """Right endpoint (r+1)^{(r+1)/2} / (2 (r-1)^{(r-1)/2}) of the zero interval."""
    return (r + 1) ** ((r + 1) / 2) / (2 * (r - 1) ** ((r - 1) / 2))


def phi_max(r: int) -> float:
    return math.pi / (r + 1)


@dataclass(frozen=True)
class PhiCoord:
    phi: float
    r: int

    def __post_init__(self):
        if self.r < 2:
            raise DomainError(f"r must be >= 2, got {self.r}")
        if not 0 < self.phi < phi_max(self.r):
            raise DomainError(f"phi={self.phi!r} outside (0, pi/{self.r + 1})")


@dataclass(frozen=True)
class SaddleData:
    a: float
    b: float
    theta: float
    w: complex


@dataclass(frozen=True)
class PRParts:
    envelope_log: float
    phase_f: float
    phase_g: float
    sign: int


# --- vectorized primitives --------------------------------------------------


def amplitude_a(phi, r: int):
    """a(phi) = sqrt(sin((r+1)phi) / sin((r-1)phi))."""
    phi = np.asarray(phi, dtype=float)
    return np.sqrt(np.sin((r + 1) * phi) / np.sin((r - 1) * phi))


def sigma_array(phi, r: int):
    phi = np.asarray(phi, dtype=float)
    s_plus = np.sin((r + 1) * phi)
    s_minus = np.sin((r - 1) * phi)
    return s_plus ** ((r + 1) / 2) / (np.sin(2 * phi) * s_minus ** ((r - 1) / 2))


def dlog_sigma(phi, r: int):
    """sigma'(phi) / sigma(phi)."""
    phi = np.asarray(phi, dtype=float)
    return (
        (r + 1) ** 2 / 2 / np.tan((r + 1) * phi)
        - 2 / np.tan(2 * phi)
        - (r - 1) ** 2 / 2 / np.tan((r - 1) * phi)
    )


def phase_f(phi, r: int):
    """f(phi); continuous extension f(0) = 0, f(pi/(r+1)) = pi at the endpoints."""
    phi = np.asarray(phi, dtype=float)
    inner = (phi > 0) & (phi < phi_max(r))
    p = np.where(inner, phi, phi_max(r) / 2)
    a = amplitude_a(p, r)
    val = np.pi / 2 - (r - 1) * a * np.sin(p) + np.arctan((1 - a * a) / (2 * a * np.sin(p)))
    val = np.where(phi <= 0, 0.0, val)
    val = np.where(phi >= phi_max(r), np.pi, val)
    return val if val.ndim else float(val)


def phase_g(phi, spec: PolySpec):
    """g(phi) for the parameters of ``spec``.

    The linear term is (r/2 + nu_1 + ... + nu_{r-1}) phi: r/2 comes from
    arg(w^r)^{-1/2} in the Gaussian factor and the nu-sum from w^{-nu}.
    """
    r = spec.r
    phi = np.asarray(phi, dtype=float)
    a = amplitude_a(phi, r)
    third = np.arctan(
        (r - 1) * a * a * np.sin(2 * phi) / (r + 1 - (r - 1) * a * a * np.cos(2 * phi))
    )
    val = (
        (r / 2 + spec.nu_sum) * phi
        - spec.kappa * np.arctan(a * np.sin(phi) / (1 + a * np.cos(phi)))
        - 0.5 * third
    )
    return val if val.ndim else float(val)


def envelope_log_array(phi, spec: PolySpec, n: int):
    """Natural log of the positive prefactor multiplying (-1)^n cos(n f + g)."""
    r = spec.r
    phi = np.asarray(phi, dtype=float)
    a = amplitude_a(phi, r)
    c1, s1 = np.cos(phi), np.sin(phi)
    quartic = (r + 1) ** 2 - 2 * (r * r - 1) * a * a * np.cos(2 * phi) + (r - 1) ** 2 * a**4
    ratio_log = 0.5 * np.log((1 - a * a) ** 2 + (2 * a * s1) ** 2) - np.log(1 + a * a - 2 * a * c1)
    val = (
        math.log(2)
        - (r / 2) * math.log(2 * math.pi)
        - (r / 2 + spec.nu_sum) * np.log(a * n)
        + (spec.kappa / 2) * np.log(1 + 2 * a * c1 + a * a)
        - 0.25 * np.log(quartic)
        + n * a * (r - 1) * c1
        + n * ratio_log
    )
    return val if val.ndim else float(val)


# --- scalar operations on PhiCoord -----------------------------------------


def _coord(phi, r: int | None = None) -> PhiCoord:
    if isinstance(phi, PhiCoord):
        return phi
    if r is None:
        raise TypeError("pass a PhiCoord or give r")
    return PhiCoord(float(phi), r)


def sigma(phi: PhiCoord | float, r: int | None = None) -> float:
    """x = sigma(phi), strictly decreasing from x* (phi -> 0) to 0."""
    pc = _coord(phi, r)
    return float(sigma_array(pc.phi, pc.r))


def sigma_inv(x: float, r: int) -> PhiCoord:
    """The phi in (0, pi/(r+1)) with sigma(phi) = x."""
    xs = x_star(r)
    if not 0 < x < xs:
        raise DomainError(f"x={x!r} outside (0, {xs})")
    hi = phi_max(r)
    lo_bracket, hi_bracket = hi * 1e-12, hi * (1 - 1e-15)
    # sigma is decreasing; clamp brackets in case x sits in the last ulp
    if sigma_array(lo_bracket, r) <= x:
        return PhiCoord(lo_bracket, r)
    if sigma_array(hi_bracket, r) >= x:
        return PhiCoord(hi_bracket, r)
    phi = optimize.brentq(
        lambda p: float(sigma_array(p, r)) - x, lo_bracket, hi_bracket,
        xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500,
    )
    return PhiCoord(phi, r)


def sigma_inv_array(xs, r: int) -> np.ndarray:
    """Vectorized inverse of sigma by bisection; xs must lie in (0, x*)."""
    xs = np.asarray(xs, dtype=float)
    if np.any((xs <= 0) | (xs >= x_star(r))):
        raise DomainError(f"all x must lie in (0, {x_star(r)})")
    lo = np.zeros_like(xs)
    hi = np.full_like(xs, phi_max(r))
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        # sigma decreases: sigma(mid) > x means the root is to the right
        right = sigma_array(mid, r) > xs
        lo = np.where(right, mid, lo)
        hi = np.where(right, hi, mid)
    return 0.5 * (lo + hi)


def saddle_coords(phi: PhiCoord) -> SaddleData:
    r, p = phi.r, phi.phi
    a = float(amplitude_a(p, r))
    b = a / math.sqrt(1 + 2 * a * math.cos(p) + a * a)
    theta = math.atan(math.sin(p) / (math.cos(p) + a))
    return SaddleData(a, b, theta, a * complex(math.cos(p), math.sin(p)))


def ae_residual(phi: PhiCoord, conjugate: bool = False) -> float:
    """|w^{r+1} - w^2 x + x| at x = sigma(phi) for the saddle w (or its conjugate)."""
    w = saddle_coords(phi).w
    if conjugate:
        w = w.conjugate()
    x = sigma(phi)
    return abs(w ** (phi.r + 1) - w * w * x + x)


def phases(phi: PhiCoord, spec: PolySpec, n: int = 1) -> PRParts:
    if spec.r != phi.r:
        raise DomainError(f"spec.r={spec.r} does not match phi.r={phi.r}")
    return PRParts(
        envelope_log=envelope_log_array(phi.phi, spec, n),
        phase_f=phase_f(phi.phi, phi.r),
        phase_g=phase_g(phi.phi, spec),
        sign=-1 if n % 2 else 1,
    )


def cosine_approximant(phi: PhiCoord, spec: PolySpec, n: int) -> float:
    return math.cos(n * phase_f(phi.phi, phi.r) + phase_g(phi.phi, spec))


def pr_approx(phi: PhiCoord, spec: PolySpec, n: int) -> mpmath.mpf:
    """Right-hand side of the Plancherel-Rotach formula without the o(1).

    Returned as an mpf because the envelope overflows doubles for large n.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    parts = phases(phi, spec, n)
    return parts.sign * mpmath.exp(parts.envelope_log) * math.cos(n * parts.phase_f + parts.phase_g)


def normalized_poly(
    phi: PhiCoord, spec: PolySpec, n: int, cap_bits: int = DEFAULT_CAP_BITS
) -> float:
    """F_n(n^{r-1} sigma(phi)) divided by (-1)^n times the envelope."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    val = charpoly.evaluate(spec, n, sigma(phi), rescaled=True, cap_bits=cap_bits)
    if val.value == 0:
        return 0.0
    parts = phases(phi, spec, n)
    log_ratio = val.log_abs() - parts.envelope_log
    return parts.sign * val.sign() * math.exp(log_ratio)


def normalized_poly_array(phis: Sequence[float], spec: PolySpec, n: int, **kw) -> np.ndarray:
    return np.array([normalized_poly(PhiCoord(float(p), spec.r), spec, n, **kw) for p in phis])


FIG1 = dict(r=3, kappa=2, nu=(2, 5), n=150, phi_min=2 * math.pi / 13, phi_max=math.pi / 6, points=500)


def fig1_table(points: int | None = None) -> dict[str, np.ndarray]:
    """Normalized polynomial and its cosine approximant on the preset window."""
    cfg = FIG1
    spec = PolySpec(cfg["r"], cfg["kappa"], cfg["nu"])
    n = cfg["n"]
    phis = np.linspace(cfg["phi_min"], cfg["phi_max"], points or cfg["points"])
    return {
        "phi": phis,
        "x": sigma_array(phis, spec.r),
        "normalized_poly": normalized_poly_array(phis, spec, n),
        "cosine_approximant": np.cos(n * phase_f(phis, spec.r) + phase_g(phis, spec)),
    }


# --- saddle point geometry --------------------------------------------------


def hessian_matrix(phi: PhiCoord) -> np.ndarray:
    """Second partials of the exponent p at the saddle S(phi)."""
    r = phi.r
    w = saddle_coords(phi).w
    off = -w * (w - 1)
    mat = np.full((r, r), off, dtype=complex)
    mat[0, 0] = 2 * w
    for j in range(1, r):
        mat[j, j] = w + off
    return mat


def hessian_det(phi: PhiCoord) -> complex:
    """Closed form w^r (r+1 - (r-1) w^2) of det Hess p(S(phi))."""
    w = saddle_coords(phi).w
    r = phi.r
    return w**r * (r + 1 - (r - 1) * w * w)


def hessian_det_assembled(phi: PhiCoord) -> complex:
    return complex(np.linalg.det(hessian_matrix(phi)))


def real_hessian_det(phi: PhiCoord) -> float:
    """Closed form of det Re Hess p(S(phi))."""
    r, p = phi.r, phi.phi
    a = saddle_coords(phi).a
    bracket = (r + 1) * math.cos(p) ** 2 - (r - 1) * math.sin((r + 1) * p) / math.sin((r - 1) * p) * math.cos(2 * p) ** 2
    return a**r * math.cos(p) ** (r - 2) * bracket


def _exponent_constants(phi: PhiCoord) -> tuple[float, float, float]:
    sd = saddle_coords(phi)
    c = math.sin((phi.r + 1) * phi.phi) / (sd.b * math.sin(2 * phi.phi))
    return sd.a, sd.b, c


def exponent_p(t: Sequence[float], phi: PhiCoord) -> complex:
    """p(t) = -log H~(t) with the branch used near the saddle."""
    a, b, c = _exponent_constants(phi)
    t = np.asarray(t, dtype=float)
    s = t.sum()
    return complex(
        -a * np.exp(1j * t[1:]).sum() + np.log(1 - b * np.exp(1j * t[0])) - np.log(1 - c * np.exp(-1j * s))
    )


def saddle_point(phi: PhiCoord) -> np.ndarray:
    """S(phi) = (theta, phi, ..., phi)."""
    return np.array([saddle_coords(phi).theta] + [phi.phi] * (phi.r - 1))


def h_modulus(t: Sequence[float], phi: PhiCoord) -> float:
    """|H~(t)| on [-pi, pi]^r."""
    t = np.asarray(t, dtype=float)
    if t.shape != (phi.r,):
        raise DomainError(f"expected {phi.r} angles, got shape {t.shape}")
    if np.any(np.abs(t) > math.pi):
        raise DomainError("angles must lie in [-pi, pi]")
    return float(np.exp(_log_h(t[None, :], phi))[0])


def _log_h(T: np.ndarray, phi: PhiCoord) -> np.ndarray:
    a, b, c = _exponent_constants(phi)
    s = T.sum(axis=1)
    return (
        a * np.cos(T[:, 1:]).sum(axis=1)
        - np.log(np.abs(1 - b * np.exp(1j * T[:, 0])))
        + np.log(np.abs(1 - c * np.exp(-1j * s)))
    )


def _grad_log_h(t: np.ndarray, phi: PhiCoord) -> np.ndarray:
    a, b, c = _exponent_constants(phi)
    e1 = np.exp(1j * t[0])
    es = c * np.exp(-1j * t.sum())
    common = (1j * es / (1 - es)).real
    g = np.empty_like(t)
    g[0] = (1j * b * e1 / (1 - b * e1)).real + common
    g[1:] = -a * np.sin(t[1:]) + common
    return g


def h_argmax(phi: PhiCoord, points_per_axis: int = 41) -> list[np.ndarray]:
    """Global maximisers of h: grid search, then gradient refinement.

    Returns the refined maximiser from each of the two best separated grid
    cells (the maximum is attained at a conjugate pair).
    """
    r = phi.r
    axis = np.linspace(-math.pi, math.pi, points_per_axis)
    mesh = np.stack(np.meshgrid(*([axis] * r), indexing="ij"), axis=-1).reshape(-1, r)
    vals = _log_h(mesh, phi)
    order = np.argsort(vals)[::-1]
    starts = [mesh[order[0]]]
    spacing = axis[1] - axis[0]
    for idx in order[1:]:
        if np.max(np.abs(mesh[idx] + starts[0])) < 2.5 * spacing:
            starts.append(mesh[idx])
            break
    out = []
    for s in starts:
        res = optimize.minimize(
            lambda t: -_log_h(t[None, :], phi)[0], s, jac=lambda t: -_grad_log_h(t, phi),
            method="BFGS", options={"gtol": 1e-13, "maxiter": 1000},
        )
        out.append(res.x)
    return out


# --- brute-force contour oracle --------------------------------------------


def _oracle_radii(x: float, r: int) -> tuple[float, float]:
    if 0 < x < x_star(r):
        sd = saddle_coords(sigma_inv(x, r))
        return sd.a, sd.b
    # any radii with b < 1 represent F_n; use the x -> x* saddle values
    a = math.sqrt((r + 1) / (r - 1))
    return a, a / (1 + a)


def contour_oracle(spec: PolySpec, n: int, x: float, grid_points: int = 64) -> float:
    """Trapezoidal quadrature of the r-fold torus integral for F_n(n^{r-1} x).

    The integrand on [-pi, pi]^r is

        exp(n a sum_{j>=2} e^{i t_j}) (1 - b e^{i t_1})^{-n-kappa}
        (1 - c e^{-i sum t})^n prod_{j>=2} (a e^{i t_j})^{-nu_{j-1}}

    with c = x / (b a^{r-1}), times n^{-sum nu} / (2 pi)^r; the Jacobian of
    w_j = radius e^{i t_j} is already folded in.
    """
    if grid_points < 8:
        raise DomainError("grid_points must be >= 8")
    r = spec.r
    if n == 0:
        return 1.0 / math.prod(math.factorial(v) for v in spec.nu)
    a, b = _oracle_radii(x, r)
    c = x / (b * a ** (r - 1))
    m = grid_points
    t = -math.pi + 2 * math.pi * np.arange(m) / m
    e = np.exp(1j * t)
    # factor depending on a single t_j (j >= 2), with nu_{j-1}
    singles = [np.exp(n * a * e) * (a * e) ** (-v) for v in spec.nu]
    first = (1 - b * e) ** (-n - spec.kappa)
    # sum over t_2..t_r of prod singles * (1 - c e^{-i(t_1 + ... )})^n, chunked on t_1
    rest_shape = (m,) * (r - 1)
    prod_singles = np.ones(rest_shape, dtype=complex)
    rest_angle = np.zeros(rest_shape)
    for j, s in enumerate(singles):
        shape = [1] * (r - 1)
        shape[j] = m
        prod_singles = prod_singles * s.reshape(shape)
        rest_angle = rest_angle + t.reshape(shape)
    prod_singles = prod_singles.ravel()
    rest_phase = np.exp(-1j * rest_angle.ravel())
    total = 0j
    for i in range(m):
        inner = (1 - c * np.exp(-1j * t[i]) * rest_phase) ** n
        total += first[i] * np.dot(inner, prod_singles)
    return float((total / m**r).real * float(n) ** (-spec.nu_sum))


def contour_oracle_converged(
    spec: PolySpec, n: int, x: float, rtol: float = 1e-12, start: int = 64, max_points: int = 512
) -> float:
    """Double the grid until two successive oracle values agree to ``rtol``."""
    m = start
    prev = contour_oracle(spec, n, x, m)
    while m < max_points:
        m *= 2
        cur = contour_oracle(spec, n, x, m)
        if abs(cur - prev) <= rtol * max(abs(cur), 1e-300):
            return cur
        prev = cur
    raise NumericalFailure(f"contour quadrature did not settle by {max_points} points")
