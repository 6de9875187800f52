import numpy as np
import pytest

from loopcs.expressions import parse_expression
from loopcs.geometry import (BergerMetric, builtin_family, christoffel_koszul,
                             christoffel_table, coefficient_set, round_metric,
                             structure_constants)
from loopcs.verify import (check_christoffel_oracle, check_jacobi_identity,
                           check_metric_compatibility, check_round_degeneracy,
                           check_torsion_freedom)


def metric(lam="1", mu="1", nu="1"):
    return BergerMetric(parse_expression(lam), parse_expression(mu),
                        parse_expression(nu))


# ---------------------------------------------------------------- structure

def test_round_metric_brackets():
    c = structure_constants(round_metric(), 0.3).c.v
    assert c[2, 0, 1] == 2.0      # c^3_12
    assert c[0, 1, 2] == 2.0      # c^1_23
    assert c[1, 0, 2] == -2.0     # c^2_13
    assert np.all(c[3] == 0.0)    # no bracket has an F4 component
    assert np.all(c[:, 3, :] == 0.0) and np.all(c[:, :, 3] == 0.0)


def test_constant_scales_bracket():
    c = structure_constants(metric("1", "2", "3"), 1.0).c.v
    assert abs(c[2, 0, 1] - 4.0 / 3.0) < 1e-15  # 2 lam mu / nu


def test_circle_bracket_picks_up_scale_rate():
    m = metric("1+0.1*sin(alpha)", "1", "1")
    c = structure_constants(m, 0.0).c
    assert abs(c.v[0, 3, 0] - 0.1) < 1e-15  # c^1_41 = lam'/lam = 0.1 at 0
    assert c.v[1, 3, 1] == 0.0 and c.v[2, 3, 2] == 0.0


def test_antisymmetry_and_jacobi():
    rng = np.random.default_rng(3)
    m = builtin_family(3)
    c = structure_constants(m, rng.uniform(0, 2 * np.pi, 7)).c.v
    assert np.max(np.abs(c + np.einsum("...kij->...kji", c))) == 0.0
    result = check_jacobi_identity(np.random.default_rng(20240))
    assert result.passed, result.detail


# -------------------------------------------------------------- christoffel

def test_round_metric_koszul():
    g = christoffel_koszul(round_metric(), 0.0).gamma.v
    assert g[2, 0, 1] == 1.0    # gamma^3_12
    assert g[2, 1, 0] == -1.0   # gamma^3_21
    assert g[1, 2, 0] == 1.0    # gamma^2_31
    assert g[0, 2, 1] == -1.0   # gamma^1_32
    # no alpha dependence: every scale-rate entry vanishes
    assert np.max(np.abs(g[:, :, 3])) == 0.0
    assert np.max(np.abs(g[3])) == 0.0


def test_constant_scales_table_values():
    g = christoffel_table(metric("1", "2", "3"), 0.5).gamma.v
    assert abs(g[2, 0, 1] - (-23.0 / 6.0)) < 1e-14   # (4 - 36 + 9)/6
    assert abs(g[2, 1, 0] - (-31.0 / 6.0)) < 1e-14   # (-4 - 36 + 9)/6
    # torsion against the bracket: gamma^3_12 - gamma^3_21 = c^3_12 = 4/3
    assert abs((g[2, 0, 1] - g[2, 1, 0]) - 4.0 / 3.0) < 1e-14
    # constants: every F4-related entry is zero
    assert np.max(np.abs(g[:, :, 3])) == 0.0
    assert np.max(np.abs(g[3])) == 0.0


def test_scale_rate_entries():
    m = metric("1", "2+0.25*cos(2*alpha)*sin(2*alpha)", "2-cos(2*alpha)")
    g = christoffel_table(m, 0.0).gamma.v
    assert g[0, 0, 3] == 0.0  # gamma^1_14 = -lam'/lam = 0 (lam = 1)
    # mu = 2 + (1/8) sin(4 alpha): mu'(0) = 1/2, mu(0) = 2, B = 1/4
    assert abs(g[1, 1, 3] - (-0.25)) < 1e-14   # gamma^2_24 = -B
    assert abs(g[3, 1, 1] - 0.25) < 1e-14      # gamma^4_22 = +B


def test_sparsity_pattern():
    g = christoffel_table(builtin_family(5), 1.1).gamma.v
    assert np.max(np.abs(g[:, 3, :])) == 0.0   # gamma^i_4j and gamma^i_44
    assert np.max(np.abs(g[3, :, 3])) == 0.0   # gamma^4_j4


def test_table_matches_koszul_oracle():
    result = check_christoffel_oracle(np.random.default_rng(20240))
    assert result.passed, result.detail


def test_metric_compatibility_and_torsion():
    assert check_metric_compatibility(np.random.default_rng(20240)).passed
    assert check_torsion_freedom(np.random.default_rng(20240)).passed


# -------------------------------------------------------------- coefficients

def test_coefficient_values_constant_scales():
    cs = coefficient_set(metric("1", "2", "3"), 0.7)
    assert abs(cs.U.v - 4.5) < 1e-14          # nu^2 (mu^2-lam^2) / (lam mu nu)
    assert abs(cs.W.v - 5.0 / 6.0) < 1e-14    # lam^2 (nu^2-mu^2) / (lam mu nu)
    # V = mu^2 (nu^2 - lam^2) / (lam mu nu): the combination the Christoffel
    # table produces, -(gamma^1_32 + gamma^3_12)/2 = -(-41/6 - 23/6)/2 = 16/3
    g = christoffel_koszul(metric("1", "2", "3"), 0.7).gamma.v
    assert abs(cs.V.v - 16.0 / 3.0) < 1e-14
    assert abs(cs.V.v - (-(g[0, 2, 1] + g[2, 0, 1]) / 2.0)) < 1e-14
    assert cs.A.v == cs.B.v == cs.C.v == 0.0


def test_round_metric_coefficients_vanish():
    cs = coefficient_set(round_metric(), 1.3)
    assert cs.U.v == cs.V.v == cs.W.v == 0.0
    result = check_round_degeneracy(np.random.default_rng(20240))
    assert result.passed, result.detail


def test_log_rate():
    m = metric("1", "1", "2-cos(alpha)")
    cs = coefficient_set(m, np.pi / 2.0)
    assert abs(cs.C.v - 0.5) < 1e-15  # nu'/nu = 1/2 at pi/2
    lam, mu, nu = m.scale_jets(np.pi / 2.0)
    assert abs(cs.C.v - nu.d1 / nu.v) < 1e-15
    assert abs(cs.C.d1 - (nu.d2 / nu.v - (nu.d1 / nu.v) ** 2)) < 1e-15


# ------------------------------------------------------------------ metrics

def test_positivity_enforced():
    with pytest.raises(ValueError) as err:
        metric("1", "cos(alpha)", "1")
    assert "alpha" in str(err.value)


def test_family_parameter_zero_rejected():
    with pytest.raises(ValueError):
        builtin_family(0)


def test_batched_tables_match_pointwise():
    m = builtin_family(2)
    alphas = np.linspace(0.0, 2 * np.pi, 9)
    batched = christoffel_table(m, alphas).gamma
    for i, alpha in enumerate(alphas):
        single = christoffel_table(m, float(alpha)).gamma
        assert np.allclose(batched.v[i], single.v, atol=1e-15)
        assert np.allclose(batched.d1[i], single.d1, atol=1e-15)
        assert np.allclose(batched.d2[i], single.d2, atol=1e-15)
