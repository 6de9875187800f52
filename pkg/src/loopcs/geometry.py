"""Berger-type metrics on S^3 x S^1 and their frame geometry.

The round 3-sphere carries left-invariant vector fields E1, E2, E3 with

    [E1,E2] = 2 E3,   [E2,E3] = 2 E1,   [E1,E3] = -2 E2,

and E4 is the unit coordinate field of the S^1 factor.  A metric in this
family makes the scaled frame

    F1 = lam*E1,  F2 = mu*E2,  F3 = nu*E3,  F4 = E4

orthonormal, where lam, mu, nu are positive functions of the circle
coordinate alpha.  Everything downstream (structure constants, Christoffel
symbols, connection symbols) is a function of alpha alone: the frame is
left-invariant on the S^3 factor, so spatial derivatives of all these
quantities vanish identically.

Index conventions for the rank-3 tables, with 0-based array axes
[component, direction, vector] corresponding to frame labels 1..4:

    c[k,i,j]     = <[F_i, F_j], F_k>
    gamma[k,i,j] = <nabla_{F_i} F_j, F_k>

All tables are carried as value / first derivative / second derivative
arrays; the derivatives are exact (propagated through jets and symbolic
differentiation of the scale functions, never finite differences).

Every function here is pure over immutable inputs and accepts either a
scalar alpha or a grid of alphas (leading batch axes on the tables), so
evaluation parallelizes trivially.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .expressions import (Alpha, Cos, Div, Expr, Mul, Num, ParamA, Sin, Sub,
                          derivative, evaluate)
from .jets import Jet2, Number


@dataclass(frozen=True)
class BergerMetric:
    """Scale functions lam, mu, nu of alpha plus the integer parameter a."""

    lam: Expr
    mu: Expr
    nu: Expr
    a: int = 1

    def __post_init__(self):
        grid = np.linspace(0.0, 2.0 * np.pi, 1024, endpoint=False)
        for name, e in (("lam", self.lam), ("mu", self.mu), ("nu", self.nu)):
            values = np.asarray(evaluate(e, grid, self.a).v)
            if not np.all(np.isfinite(values)):
                raise ValueError(f"{name} is not finite on [0, 2*pi)")
            if np.any(values <= 0.0):
                bad = grid[np.argmin(values)]
                raise ValueError(f"{name} is not positive at alpha={bad:.6f}")

    @cached_property
    def _dotted(self):
        return (derivative(self.lam), derivative(self.mu), derivative(self.nu))

    def scale_jets(self, alpha: Number):
        """Jets of (lam, mu, nu) at alpha."""
        return (evaluate(self.lam, alpha, self.a),
                evaluate(self.mu, alpha, self.a),
                evaluate(self.nu, alpha, self.a))

    def log_rate_jets(self, alpha: Number):
        """Jets of (lam'/lam, mu'/mu, nu'/nu): dotted expressions over jets,
        so even the second derivatives are exact."""
        dl, dm, dn = self._dotted
        return (evaluate(dl, alpha, self.a) / evaluate(self.lam, alpha, self.a),
                evaluate(dm, alpha, self.a) / evaluate(self.mu, alpha, self.a),
                evaluate(dn, alpha, self.a) / evaluate(self.nu, alpha, self.a))


# the built-in one-parameter family: lam = 1, mu = 2 + (1/a) cos(a alpha)
# sin(a alpha), nu = 2 - cos(a alpha); a is carried symbolically so one tree
# serves every parameter value
_LAM = Num(1.0)
_MU = 2.0 + Div(Num(1.0), ParamA()) * Cos(Mul(ParamA(), Alpha())) * Sin(Mul(ParamA(), Alpha()))
_NU = Sub(Num(2.0), Cos(Mul(ParamA(), Alpha())))


def builtin_family(a: int) -> BergerMetric:
    """The built-in oscillating family of Berger-type metrics."""
    if a == 0:
        raise ValueError("family parameter a must be a nonzero integer")
    return BergerMetric(_LAM, _MU, _NU, a=int(a))


def round_metric() -> BergerMetric:
    return BergerMetric(Num(1.0), Num(1.0), Num(1.0))


@dataclass(frozen=True)
class CoefficientSet:
    """The six scalar functions populating the order-0 symbol.

    U, V, W are the shear-type combinations of the scales; A, B, C are the
    logarithmic derivatives lam'/lam, mu'/mu, nu'/nu.  V carries nu^2-lam^2
    (the combination consistent with the Christoffel table: the (1,3) entry
    of the order-0 symbol is -(Gamma^1_32 + Gamma^3_12)/2 = -V psi^2).
    """

    U: Jet2
    V: Jet2
    W: Jet2
    A: Jet2
    B: Jet2
    C: Jet2


def coefficient_set(m: BergerMetric, alpha: Number) -> CoefficientSet:
    lam, mu, nu = m.scale_jets(alpha)
    A, B, C = m.log_rate_jets(alpha)
    lmn = lam * mu * nu
    return CoefficientSet(
        U=nu ** 2 * (mu ** 2 - lam ** 2) / lmn,
        V=mu ** 2 * (nu ** 2 - lam ** 2) / lmn,
        W=lam ** 2 * (nu ** 2 - mu ** 2) / lmn,
        A=A, B=B, C=C,
    )


def _jet_tensor(batch_shape) -> Jet2:
    shape = tuple(batch_shape) + (4, 4, 4)
    return Jet2(np.zeros(shape), np.zeros(shape), np.zeros(shape))


def _set(tensor: Jet2, k: int, i: int, j: int, value: Jet2):
    tensor.v[..., k, i, j] = value.v
    tensor.d1[..., k, i, j] = value.d1
    tensor.d2[..., k, i, j] = value.d2


@dataclass(frozen=True)
class StructureConstants:
    """Brackets of the orthonormal frame, c[k,i,j] = <[F_i,F_j], F_k>."""

    c: Jet2

    def entry(self, k: int, i: int, j: int) -> Jet2:
        return Jet2(self.c.v[..., k, i, j], self.c.d1[..., k, i, j],
                    self.c.d2[..., k, i, j])


@dataclass(frozen=True)
class ChristoffelTable:
    """gamma[k,i,j] = <nabla_{F_i} F_j, F_k> with exact alpha-derivatives."""

    gamma: Jet2

    def entry(self, k: int, i: int, j: int) -> Jet2:
        return Jet2(self.gamma.v[..., k, i, j], self.gamma.d1[..., k, i, j],
                    self.gamma.d2[..., k, i, j])


def structure_constants(m: BergerMetric, alpha: Number) -> StructureConstants:
    """Brackets of the scaled frame at alpha.

    [F1,F2] = (2 lam mu / nu) F3 and cyclic partners from the S^3 relations;
    brackets with F4 = d/drho pick up the scale rates, e.g.
    [F4, F1] = (lam'/lam) F1.
    """
    lam, mu, nu = m.scale_jets(alpha)
    A, B, C = m.log_rate_jets(alpha)
    c = _jet_tensor(np.shape(np.asarray(alpha)))
    pairs = [
        (2, 0, 1, 2.0 * lam * mu / nu),   # c^3_12
        (0, 1, 2, 2.0 * mu * nu / lam),   # c^1_23
        (1, 0, 2, -2.0 * lam * nu / mu),  # c^2_13
        (0, 3, 0, A),                     # c^1_41
        (1, 3, 1, B),                     # c^2_42
        (2, 3, 2, C),                     # c^3_43
    ]
    for k, i, j, value in pairs:
        _set(c, k, i, j, value)
        _set(c, k, j, i, -value)
    return StructureConstants(c)


def christoffel_koszul(m: BergerMetric, alpha: Number) -> ChristoffelTable:
    """Christoffel symbols from the Koszul formula, structure constants only.

    In an orthonormal frame the inner products are constant, so

        gamma^k_ij = (c^k_ij - c^i_jk + c^j_ki) / 2.

    Independent of :func:`christoffel_table`; the two are each other's
    correctness oracle.
    """
    c = structure_constants(m, alpha).c

    def koszul(x):
        t2 = np.einsum("...ijk->...kij", x)  # t2[k,i,j] = x[i,j,k]
        t3 = np.einsum("...jki->...kij", x)  # t3[k,i,j] = x[j,k,i]
        return 0.5 * (x - t2 + t3)

    return ChristoffelTable(Jet2(koszul(c.v), koszul(c.d1), koszul(c.d2)))


def christoffel_table(m: BergerMetric, alpha: Number) -> ChristoffelTable:
    """The closed-form Christoffel table of the scaled orthonormal frame.

    Nonzero entries (gamma[k,i,j], frame labels 1..4):

        gamma^3_12 = ( lam^2 mu^2 - mu^2 nu^2 + nu^2 lam^2) / (lam mu nu) = -gamma^2_13
        gamma^3_21 = (-lam^2 mu^2 - mu^2 nu^2 + nu^2 lam^2) / (lam mu nu) = -gamma^1_23
        gamma^2_31 = ( nu^2 lam^2 - lam^2 mu^2 + mu^2 nu^2) / (lam mu nu) = -gamma^1_32
        gamma^1_14 = -gamma^4_11 = -lam'/lam, and likewise for (2, mu), (3, nu).

    Every gamma^i_4j, gamma^i_44 and gamma^4_4j vanishes: F4-directed
    derivatives of the orthonormal frame are zero, i.e. the frame is
    parallel along the circle fibers.
    """
    lam, mu, nu = m.scale_jets(alpha)
    A, B, C = m.log_rate_jets(alpha)
    lmn = lam * mu * nu
    l2, m2, n2 = lam ** 2, mu ** 2, nu ** 2
    p = (l2 * m2 - m2 * n2 + n2 * l2) / lmn
    q = (-l2 * m2 - m2 * n2 + n2 * l2) / lmn
    r = (n2 * l2 - l2 * m2 + m2 * n2) / lmn
    g = _jet_tensor(np.shape(np.asarray(alpha)))
    for k, i, j, value in [
        (2, 0, 1, p), (1, 0, 2, -p),
        (2, 1, 0, q), (0, 1, 2, -q),
        (1, 2, 0, r), (0, 2, 1, -r),
        (0, 0, 3, -A), (3, 0, 0, A),
        (1, 1, 3, -B), (3, 1, 1, B),
        (2, 2, 3, -C), (3, 2, 2, C),
    ]:
        _set(g, k, i, j, value)
    return ChristoffelTable(g)
