import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from normlab.operators import (
    adjoint_apply,
    apply,
    domain_range,
    fejer,
    fejer_apply,
    fejer_kernel,
    fejer_multiplier,
    gk_symbol,
    id_minus_fejer,
    identity,
    make_symbol,
    operator_matrix,
    output_range,
    restrict,
    riesz,
    riesz_project,
    toeplitz,
    toeplitz_apply,
)
from normlab.trig import DomainError, GridConfig, TrigPoly, lp_norm, monomial, transform


def random_poly(rng, lo, hi):
    n = hi - lo + 1
    return TrigPoly(rng.standard_normal(n) + 1j * rng.standard_normal(n), lo)


def test_riesz_project_examples():
    f = TrigPoly.from_dict({-2: 1, 0: 2, 3: 4})
    assert riesz_project(f) == TrigPoly.from_dict({0: 2, 3: 4})
    assert riesz_project(monomial(-1)).is_zero()


def test_backward_shift():
    f = TrigPoly([1, 2, 3])
    assert toeplitz_apply(make_symbol("e", -1), f) == TrigPoly([2, 3])
    assert toeplitz_apply(make_symbol("e", -1), monomial(0)).is_zero()


def test_toeplitz_rejects_two_sided_input():
    with pytest.raises(DomainError):
        toeplitz_apply(make_symbol("e", -1), monomial(-1))


def test_fejer_multiplier_values():
    assert np.allclose(fejer_multiplier(0, [-1, 0, 1]), [0, 1, 0])
    assert np.allclose(fejer_multiplier(3, [0, 1, 2, 3, 4]), [1, 0.75, 0.5, 0.25, 0])


def test_fejer_kernel_mass_and_sign():
    for n in (0, 1, 4, 10):
        g = GridConfig(64)
        K = fejer_kernel(n, g)
        assert K.min() >= -1e-10
        # 2 pi * mean = integral of K over the circle
        assert 2 * np.pi * K.mean() == pytest.approx(1, abs=1e-10)


def test_fejer_kernel_convolution_matches_multiplier():
    # discrete circular convolution with the sampled kernel reproduces K_n f
    rng = np.random.default_rng(4)
    n, size = 5, 64
    f = random_poly(rng, -8, 8)
    g = GridConfig(size)
    K = fejer_kernel(n, g)
    fs = transform(f, g)
    # (K * f)(t_j) = (2 pi / M) sum_l K(t_l + pi) f(t_j - t_l - pi) on the shifted grid
    Kc = np.roll(K, -size // 2)  # kernel at angles 2 pi l / M
    conv = np.array([np.sum(Kc * fs[(j - np.arange(size)) % size]) for j in range(size)]) * 2 * np.pi / size
    assert np.max(np.abs(conv - transform(fejer_apply(n, f), g))) < 1e-8


def test_fejer_kernel_grid_guard():
    with pytest.raises(ValueError):
        fejer_kernel(8, GridConfig(16))


def test_gk_values():
    p = 4
    a = gk_symbol(p, "+")
    s, c = math.sin(math.pi / p), math.cos(math.pi / p)
    vals = a.func(np.array([0.5, -0.5, 0.0]))
    assert np.allclose(vals, [s + 1j * c, s - 1j * c, s + 1j * c])
    assert np.allclose(np.abs(a.values(GridConfig(1024))), 1, atol=1e-15)
    assert a.sup_norm == 1
    with pytest.raises(ValueError):
        gk_symbol(1, "+")
    with pytest.raises(ValueError):
        gk_symbol(4, "x")


def test_gk_toeplitz_matches_analytic_coefficients():
    # a = s + i c sign(theta): a^(0) = s, a^(k) = 2c/(pi k) for odd k, 0 for even k != 0
    p, d = 4, 16
    A = toeplitz(gk_symbol(p, "+"), d)
    s, c = math.sin(math.pi / p), math.cos(math.pi / p)
    out = apply(A, monomial(0))
    # the sampling grid aliases the jump; use a modest tolerance on low coefficients
    assert out[0] == pytest.approx(s, abs=2e-2)
    for kk in (1, 3, 5):
        assert out[kk] == pytest.approx(2 * c / (np.pi * kk), abs=2e-2)
    assert abs(out[2]) < 2e-2


def test_cph_symbol_sup_norm_and_restriction():
    h = TrigPoly([1, 0.5])
    a = make_symbol("cph", 2, h)
    assert a.sup_norm == pytest.approx(1.5, abs=1e-12)
    assert not a.sup_norm_exact
    A = restrict(toeplitz(a, 10), 2)
    rng = np.random.default_rng(5)
    f = TrigPoly(rng.standard_normal(9) + 0j, 2)
    # on H^p_2 the projection is inactive: T(a) f = a f
    assert apply(A, f).allclose(a.coeffs * f)


def test_cph_rejects_nonanalytic():
    with pytest.raises(DomainError):
        make_symbol("cph", 1, monomial(-1))


def test_restrict_errors():
    with pytest.raises(ValueError):
        restrict(identity(3), 4)
    with pytest.raises(ValueError):
        restrict(riesz(3), 1)


def test_apply_domain_check():
    with pytest.raises(DomainError):
        apply(fejer(1, 3), monomial(4))
    with pytest.raises(DomainError):
        apply(restrict(identity(5), 2), monomial(1))


def test_riesz_domain_is_two_sided():
    assert domain_range(riesz(4)) == (-4, 4)
    assert output_range(riesz(4)) == (0, 4)


OPS = [
    lambda d: identity(d),
    lambda d: riesz(d),
    lambda d: fejer(2, d),
    lambda d: id_minus_fejer(1, d),
    lambda d: toeplitz(make_symbol("e", -1), d),
    lambda d: toeplitz(make_symbol("e", 2), d),
    lambda d: restrict(toeplitz(make_symbol("cph", 2, TrigPoly([1, 0.5])), d), 2),
    lambda d: toeplitz(gk_symbol(4, "+"), d),
    lambda d: toeplitz(gk_symbol(1.5, "-"), d),
]


@pytest.mark.parametrize("make", OPS)
@pytest.mark.parametrize("d", [3, 8, 12])
def test_adjoint_matches_dense_matrix(make, d):
    A = make(d)
    M, (lo, hi), (olo, ohi) = operator_matrix(A)
    rng = np.random.default_rng(d)
    f = random_poly(rng, lo, hi)
    g = random_poly(rng, olo, ohi)
    assert np.allclose(apply(A, f).dense(olo, ohi), M @ f.dense(lo, hi), atol=1e-12)
    assert np.allclose(adjoint_apply(A, g).dense(lo, hi), M.conj().T @ g.dense(olo, ohi), atol=1e-12)
    # <A f, g> = <f, A* g>
    lhs = np.vdot(g.dense(olo, ohi), apply(A, f).dense(olo, ohi))
    rhs = np.vdot(adjoint_apply(A, g).dense(lo, hi), f.dense(lo, hi))
    assert lhs == pytest.approx(rhs, abs=1e-10)


def test_laurent_matrix_is_independent_oracle():
    # matrix entries of T(e_{-1}) by hand: ones on the superdiagonal
    M, _, _ = operator_matrix(toeplitz(make_symbol("e", -1), 4))
    ref = np.zeros((5, 5))
    ref[np.arange(4), np.arange(1, 5)] = 1
    assert np.array_equal(M, ref)


coef = st.floats(-3, 3, allow_nan=False)


@st.composite
def analytic(draw, max_deg=12):
    n = draw(st.integers(1, max_deg + 1))
    re = draw(st.lists(coef, min_size=n, max_size=n))
    im = draw(st.lists(coef, min_size=n, max_size=n))
    return TrigPoly(np.array(re) + 1j * np.array(im), 0)


@settings(max_examples=60, deadline=None)
@given(analytic(), st.integers(0, 6), st.sampled_from([1.2, 2.0, 3.5]))
def test_fejer_contractive(f, n, p):
    # K_n is convolution with a probability density
    assert lp_norm(fejer_apply(n, f), p) <= lp_norm(f, p) * (1 + 1e-9) + 1e-12


@settings(max_examples=60, deadline=None)
@given(analytic(), st.integers(-3, 3))
def test_unimodular_laurent_toeplitz_l2_contraction(f, m):
    out = toeplitz_apply(make_symbol("e", m), f)
    assert lp_norm(out, 2) <= lp_norm(f, 2) + 1e-12
