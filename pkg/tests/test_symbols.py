import numpy as np
import pytest

from loopcs.expressions import parse_expression
from loopcs.geometry import (BergerMetric, builtin_family, christoffel_table,
                             round_metric)
from loopcs.symbols import (curvature_symbol,
                            require_residue_extractable, sigma0_connection,
                            sigma_minus1_connection_beta,
                            sigma_minus1_connection_dot,
                            sigma_minus1_curvature_beta, symbol_pair)
from loopcs.verify import (check_curvature_vanishing, check_sigma0_routes,
                           check_sigma_minus1_routes, random_metric)


def metric(lam, mu, nu):
    return BergerMetric(parse_expression(lam), parse_expression(mu),
                        parse_expression(nu))


# ------------------------------------------------------------------ sigma_0

def test_round_metric_sigma0_vanishes():
    assert sigma0_connection(round_metric(), 0.9).max_abs() == 0.0


def test_sigma0_constant_scales():
    s0 = sigma0_connection(metric("1", "2", "3"), 0.4)
    psi3 = s0.coeff((3,))
    assert abs(psi3[0, 1] - 4.5) < 1e-14   # U in position (1,2)
    assert abs(psi3[1, 0] - 4.5) < 1e-14
    assert s0.coeff((3,))[2, 3] == 0.0              # C/2 entry: zero for constants
    assert np.max(np.abs(s0.coeff((4,)))) == 0.0    # -A,-B,-C diagonal: zero


def test_sigma0_matrix_is_symmetric():
    rng = np.random.default_rng(23)
    for _ in range(100):
        m = random_metric(rng)
        s0 = sigma0_connection(m, float(rng.uniform(0, 2 * np.pi)))
        for p in (1, 2, 3, 4):
            mat = s0.coeff((p,))
            assert np.array_equal(mat, mat.T)


def test_sigma0_display_equals_christoffel_route():
    assert check_sigma0_routes(np.random.default_rng(20240)).passed


def test_sigma0_coefficients_are_real():
    s0 = sigma0_connection(builtin_family(2), 1.0)
    for p in (1, 2, 3, 4):
        assert np.isrealobj(s0.coeff((p,)))


# ----------------------------------------------------------------- sigma_-1

def test_constant_scales_sigma_minus1_vanishes():
    # every term carries either a gamma^._{.4} factor or an alpha-derivative
    assert sigma_minus1_connection_beta(metric("1", "2", "3"), 0.8).max_abs() == 0.0


def test_hand_expanded_entry():
    # lam = 1, mu = nu: gamma^1_32 = -mu^2 and gamma^2_13 = -(2 - mu^2), so
    # M_3[1,2] = B(mu^2 - (2 - mu^2)) + d_alpha(-mu^2 - (2 - mu^2))
    #          = 2 B (mu^2 - 1)
    # with mu = 2 - cos(alpha) at alpha = pi/3: mu = 3/2, B = (sqrt3/2)/(3/2),
    # so M_3[1,2] = 2 * sqrt(3)/3 * 5/4 = 5 sqrt(3) / 6
    m = metric("1", "2-cos(alpha)", "2-cos(alpha)")
    got = sigma_minus1_connection_beta(m, np.pi / 3.0).coeff((3,))[0, 1]
    assert abs(got - 5.0 * np.sqrt(3.0) / 6.0) < 1e-13


def test_builtin_family_sigma_minus1_finite_and_consistent():
    m = builtin_family(2)
    form = sigma_minus1_connection_beta(m, 0.0)
    assert np.all(np.isfinite(form.coeff((1,))))
    assert form.max_abs() > 0.0
    for direction in (1, 2, 3):
        loops = sigma_minus1_connection_dot(m, 0.0, direction, None)
        assert np.allclose(form.coeff((direction,)), loops, atol=1e-13)


def test_dot_route_matches_beta_route():
    assert check_sigma_minus1_routes(np.random.default_rng(20240)).passed


def test_drift_term_is_twice_sigma0():
    # the coefficient of xdot^l is gamma[a,b,l] + gamma[b,a,l], i.e. exactly
    # twice the psi^l coefficient of the order-0 symbol
    rng = np.random.default_rng(29)
    for _ in range(20):
        m = random_metric(rng)
        alpha = float(rng.uniform(0, 2 * np.pi))
        s0 = sigma0_connection(m, alpha)
        for l in (1, 2, 3, 4):
            xdot = np.zeros(4)
            xdot[l - 1] = 1.0
            drift = (sigma_minus1_connection_dot(m, alpha, 1, xdot)
                     - sigma_minus1_connection_dot(m, alpha, 1, None))
            assert np.allclose(drift, 2.0 * s0.coeff((l,)), atol=1e-12)


def test_round_metric_drift_vanishes():
    # round metric: sigma0 = 0, so the drift contribution cancels entirely
    out = sigma_minus1_connection_dot(round_metric(), 0.5, 1, np.array([0.0, 1.0, 0.0, 0.0]))
    assert np.max(np.abs(out)) == 0.0


def test_constant_scales_drift_entry():
    # lam=1, mu=2, nu=3: drift on xdot = e_2 has (1,3)/(3,1) entries -32/3,
    # twice the -V psi^2 entry of sigma0
    m = metric("1", "2", "3")
    out = sigma_minus1_connection_dot(m, 0.0, 1, np.array([0.0, 1.0, 0.0, 0.0]))
    assert abs(out[0, 2] - (-32.0 / 3.0)) < 1e-13
    assert abs(out[2, 0] - (-32.0 / 3.0)) < 1e-13


def test_dot_rejects_bad_input():
    m = round_metric()
    with pytest.raises(ValueError):
        sigma_minus1_connection_dot(m, 0.0, 5, None)
    with pytest.raises(ValueError):
        sigma_minus1_connection_dot(m, 0.0, 1, np.zeros(3))


# ---------------------------------------------------------------- curvature

def test_curvature_vanishes_on_constant_loops():
    m = builtin_family(8)
    rng = np.random.default_rng(31)
    for alpha in rng.uniform(0.0, 2 * np.pi, 50):
        out = sigma_minus1_curvature_beta(m, float(alpha), 1, 2)
        assert np.max(np.abs(out)) < 1e-12
    assert check_curvature_vanishing(np.random.default_rng(20240)).passed


def test_curvature_antisymmetry():
    m = builtin_family(3)
    a = sigma_minus1_curvature_beta(m, 0.7, 1, 2)
    b = sigma_minus1_curvature_beta(m, 0.7, 2, 1)
    assert np.allclose(a, -b, atol=1e-15)


def test_curvature_bilinear_map_uses_second_derivatives():
    # with a fourth component in play the middle-bracket terms survive and
    # carry second alpha-derivatives of the scale-rate entries
    m = metric("1", "1", "2-cos(alpha)")
    sym = curvature_symbol(m, 0.4)
    x = np.array([0.0, 0.0, 1.0, 0.0])
    y = np.array([0.0, 0.0, 0.0, 1.0])
    out = sym(x, y)
    assert np.max(np.abs(out)) > 1e-3
    assert np.allclose(sym(y, x), -out, atol=1e-15)
    table = christoffel_table(m, 0.4)
    # entry check: bracket[k,l,r=3] = dd(gamma[k,3,l] + gamma[l,k,3])
    expect = -(table.gamma.d2[:, 2, :] + table.gamma.d2[:, :, 2].T)
    assert np.allclose(out, expect, atol=1e-14)


def test_curvature_index_validation():
    with pytest.raises(ValueError):
        sigma_minus1_curvature_beta(round_metric(), 0.0, 1, 4)


# ------------------------------------------------------------- housekeeping

def test_symbol_pair_shape():
    pair = symbol_pair(builtin_family(2), 0.3)
    assert pair.sigma0.degree == 1
    assert pair.sigma_minus1.degree == 1
    assert all(idx[0] in (1, 2, 3) for idx in pair.sigma_minus1.indices())


def test_residue_order_bookkeeping():
    require_residue_extractable((-1, 0, 0))
    require_residue_extractable((0, -1))
    with pytest.raises(ValueError):
        require_residue_extractable((-1, -1, 0))
    with pytest.raises(ValueError):
        require_residue_extractable((0, 0, 0))
