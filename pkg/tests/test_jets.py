import numpy as np
import pytest

from loopcs.expressions import Alpha, Cos, Num, Sin, evaluate, parse_expression
from loopcs.jets import Jet2
from loopcs.verify import check_jet_finite_differences


def central_differences(f, x, h1=1e-5, h2=1e-4):
    d1 = (f(x + h1) - f(x - h1)) / (2.0 * h1)
    d2 = (f(x + h2) - 2.0 * f(x) + f(x - h2)) / h2 ** 2
    return d1, d2


def test_constant_lift():
    j = Jet2.constant(2.0)
    assert j.v == 2.0 and j.d1 == 0.0 and j.d2 == 0.0


def test_sine_jet_at_zero():
    j = evaluate(Sin(Alpha()), 0.0)
    assert j.v == 0.0
    assert j.d1 == 1.0
    assert j.d2 == 0.0


def test_family_jet_matches_finite_differences():
    # mu of the a=2 family at alpha=0.3, central differences with h=1e-5
    e = parse_expression("2+(1/2)*cos(2*alpha)*sin(2*alpha)")
    f = lambda t: evaluate(e, t, 2).v
    jet = evaluate(e, 0.3, 2)
    h = 1e-5
    fd1 = (f(0.3 + h) - f(0.3 - h)) / (2 * h)
    fd2 = (f(0.3 + h) - 2 * f(0.3) + f(0.3 - h)) / h ** 2
    assert abs(jet.d1 - fd1) / max(1.0, abs(fd1)) < 1e-6
    assert abs(jet.d2 - fd2) / max(1.0, abs(fd2)) < 1e-6


def test_arithmetic_against_finite_differences():
    # every node kind, random coefficients in [-3, 3], 100 random points
    rng = np.random.default_rng(7)
    c1, c2, c3 = rng.uniform(-3.0, 3.0, 3)
    exprs = [
        Num(c1) + Sin(Alpha()) * Num(c2),
        Num(c1) - Cos(Alpha()) * Num(c3),
        Sin(Num(2.0) * Alpha()) * Cos(Num(3.0) * Alpha()),
        (Num(c1) + Sin(Alpha())) / (Num(4.0) + Cos(Alpha())),
        Cos(Alpha()) ** 3,
        (Num(4.0) + Sin(Alpha())) ** -1,
        Sin(Cos(Alpha()) * Num(c2)),
    ]
    for e in exprs:
        f = lambda t: evaluate(e, t).v
        for x in rng.uniform(0.0, 2 * np.pi, 100):
            jet = evaluate(e, float(x))
            fd1, fd2 = central_differences(f, float(x))
            assert abs(jet.d1 - fd1) / max(1.0, abs(fd1)) < 1e-6
            assert abs(jet.d2 - fd2) / max(1.0, abs(fd2)) < 1e-6


def test_power_special_cases():
    j = Jet2(2.0, 3.0, 4.0)
    p0 = j ** 0
    assert (p0.v, p0.d1, p0.d2) == (1.0, 0.0, 0.0)
    assert (j ** 1) is j
    p2 = j ** 2
    assert p2.v == 4.0 and p2.d1 == 12.0  # 2 u u' = 12
    assert p2.d2 == 2 * 3.0 ** 2 + 2 * 2.0 * 4.0  # 2 u'^2 + 2 u u''
    pm1 = j ** -1
    assert pm1.v == 0.5 and abs(pm1.d1 - (-3.0 / 4.0)) < 1e-15
    with pytest.raises(TypeError):
        j ** 0.5


def test_array_jets_broadcast():
    grid = np.linspace(0.0, 2 * np.pi, 33)
    jet = evaluate(Sin(Alpha()) + Num(1.0), grid)
    assert jet.v.shape == grid.shape
    assert np.allclose(jet.v, np.sin(grid) + 1.0)
    assert np.allclose(jet.d1, np.cos(grid))
    assert np.allclose(jet.d2, -np.sin(grid))


def test_random_expression_sweep():
    result = check_jet_finite_differences(np.random.default_rng(20240))
    assert result.passed, result.detail
