import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from prodwishart import raney
from prodwishart.asymptotics import phase_f, phi_max, sigma_array, x_star
from prodwishart.empirics import EmpiricalMeasure, ks_distance
from prodwishart.numerics import DomainError


def _d5(func, x, h):
    """Five-point central difference; fourth order, so the square-root
    behaviour near the ends of the phi interval does not swamp the check."""
    return (func(x - 2 * h) - 8 * func(x - h) + 8 * func(x + h) - func(x + 2 * h)) / (12 * h)


def test_params_validation():
    with pytest.raises(DomainError):
        raney.RaneyParams(Fraction(1, 2), Fraction(1, 4))
    with pytest.raises(DomainError):
        raney.RaneyParams(2, 3)
    with pytest.raises(DomainError):
        raney.RaneyParams(2, 0)
    assert raney.RaneyParams.model(3) == raney.RaneyParams(Fraction(2), Fraction(1, 2))


def test_support_interval():
    s = raney.SupportInterval(3)
    assert s.lower == 0
    assert s.upper == x_star(3) == pytest.approx(4.0)


def test_raney_number_examples():
    r3 = raney.RaneyParams.model(3)
    r2 = raney.RaneyParams.model(2)
    assert [raney.raney_number(r3, k) for k in range(4)] == [1, Fraction(1, 2), Fraction(7, 8), Fraction(33, 16)]
    assert [raney.raney_number(r2, k) for k in range(3)] == [1, Fraction(1, 2), Fraction(5, 8)]


@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=12))
def test_raney_number_model_formula(r, n):
    # 1/((r+1)n+1) * binom(((r+1)n+1)/2, n)
    a = Fraction((r + 1) * n + 1, 2)
    binom = Fraction(1)
    for j in range(n):
        binom *= (a - j) / (j + 1)
    assert raney.raney_number(raney.RaneyParams.model(r), n) == binom / ((r + 1) * n + 1)


def test_fuss_catalan_special_case():
    # alpha = beta = p gives the Fuss-Catalan numbers binom(p n, n) / ((p-1) n + 1)
    p = raney.RaneyParams(Fraction(3), Fraction(1))
    for n in range(8):
        assert raney.raney_number(p, n) == Fraction(math.comb(3 * n, n), 2 * n + 1)


def _perron_density_r3(x, eps=1e-9):
    z = complex(x, eps)
    w = cmath.sqrt((z - cmath.sqrt(z * z - 4 * z)) / 2)
    # principal branches may land on the conjugate sheet; the density is the magnitude
    return abs((w / z).imag) / math.pi


def test_density_value_against_perron_inversion():
    assert raney.density_v(2.0, 3) == pytest.approx(_perron_density_r3(2.0), rel=1e-7)
    assert raney.density_v(2.0, 3) == pytest.approx(0.0724298, abs=5e-8)
    for x in (0.3, 1.0, 3.5):
        assert raney.density_v(x, 3) == pytest.approx(_perron_density_r3(x), rel=1e-6)


def test_density_domain_and_edges():
    for bad in (0.0, -1.0, 4.0, 7.0):
        with pytest.raises(DomainError):
            raney.density_v(bad, 3)
    assert raney.density_v(4.0 - 1e-9, 3) < 1e-3


@pytest.mark.parametrize("r", [2, 3, 4])
def test_density_is_phase_derivative(r):
    phi = np.linspace(0, phi_max(r), 10_002)[1:-1][::37]
    h = 1e-6
    df = _d5(lambda p: phase_f(p, r), phi, h)
    ds = _d5(lambda p: sigma_array(p, r), phi, h)
    v = raney.density_phi(phi, r)
    # near phi = 0 the step is comparable to phi itself, so compare on the scale max(1, v)
    assert np.all(np.abs(v + df / (math.pi * ds)) <= 1e-6 * np.maximum(1.0, v))


def test_cdf_examples():
    for form in ("phase", "closed"):
        assert raney.cdf_V(-1.0, 3, form) == 0
        assert raney.cdf_V(0.0, 3, form) == 0
        assert raney.cdf_V(4.0, 3, form) == 1
        assert raney.cdf_V(9.0, 3, form) == 1
        assert raney.cdf_V(2.0, 3, form) == pytest.approx(0.9256625396640428, rel=1e-12)
    oracle = raney.integrate(lambda x: np.ones_like(x), 3, upper=2.0)
    assert raney.cdf_V(2.0, 3) == pytest.approx(oracle, abs=1e-12)
    with pytest.raises(DomainError):
        raney.cdf_V(1.0, 3, "other")


@pytest.mark.parametrize("r", [2, 3, 4])
def test_cdf_forms_agree_and_monotone(r):
    xs = np.linspace(-0.5, x_star(r) + 0.5, 10_000)
    ph = raney.cdf_V_array(xs, r, "phase")
    cl = raney.cdf_V_array(xs, r, "closed")
    np.testing.assert_allclose(ph, cl, atol=1e-10)
    assert np.all(np.diff(ph) >= 0)
    assert ph[0] == 0 and ph[-1] == 1


@pytest.mark.parametrize("r", [2, 3, 4])
def test_moments(r):
    params = raney.RaneyParams.model(r)
    assert raney.total_mass(r) == pytest.approx(1.0, abs=1e-10)
    for k in range(9):
        assert raney.moment_quadrature(k, r) == pytest.approx(float(raney.raney_number(params, k)), abs=1e-8, rel=1e-8)


def test_stieltjes_examples():
    w = math.sqrt((5 - math.sqrt(5)) / 2)
    assert raney.stieltjes_w(5.0, 3) == pytest.approx(w, rel=1e-14)
    assert raney.stieltjes(5.0, 3) == pytest.approx(w / 5, rel=1e-14)
    assert raney.stieltjes(5.0, 3) == pytest.approx(0.2351141, abs=1e-6)
    for r in (2, 3, 4):
        z = 1e8
        assert z * raney.stieltjes(z, r) == pytest.approx(1.0, rel=1e-6)
        near = x_star(r) * (1 + 1e-10)
        assert raney.stieltjes_w(near, r) == pytest.approx(math.sqrt((r + 1) / (r - 1)), rel=1e-4)
    with pytest.raises(DomainError):
        raney.stieltjes(3.0, 3)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_stieltjes_matches_quadrature(r):
    for factor in (1.1, 2.0, 10.0):
        z = factor * x_star(r)
        assert raney.stieltjes(z, r) == pytest.approx(raney.stieltjes_quadrature(z, r), rel=1e-9)


def test_sampler():
    a = raney.sample(3, 100_000, seed=123)
    assert np.all((a >= 0) & (a <= 4.0))
    assert abs(a.mean() - 0.5) <= 0.01
    assert ks_distance(EmpiricalMeasure(a), lambda x: raney.cdf_V_array(x, 3)) <= 0.01
    np.testing.assert_array_equal(raney.sample(3, 500, seed=9), raney.sample(3, 500, seed=9))
    assert not np.array_equal(raney.sample(3, 500, seed=9), raney.sample(3, 500, seed=10))
    with pytest.raises(DomainError):
        raney.sample(3, 0, seed=1)
