"""Second-order jets: exact propagation of (value, d/dalpha, d2/dalpha2).

A Jet2 carries a function value together with its first two derivatives
with respect to the circle coordinate alpha.  Arithmetic implements the
Leibniz and chain rules exactly, so derivative information never degrades
through the rational/trigonometric formulas built on top.  Components may
be floats or numpy arrays of matching shape (evaluation on a grid of
alpha values is just arithmetic on arrays).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

Number = Union[int, float, np.ndarray]


@dataclass(frozen=True)
class Jet2:
    """(value, first derivative, second derivative) with exact arithmetic."""

    v: Number
    d1: Number
    d2: Number

    @staticmethod
    def constant(c: Number) -> "Jet2":
        c = np.asarray(c, dtype=float) if isinstance(c, np.ndarray) else float(c)
        return Jet2(c, 0.0 * c, 0.0 * c)

    @staticmethod
    def variable(alpha: Number) -> "Jet2":
        """The jet of the identity function alpha -> alpha."""
        if isinstance(alpha, np.ndarray):
            a = np.asarray(alpha, dtype=float)
            return Jet2(a, np.ones_like(a), np.zeros_like(a))
        return Jet2(float(alpha), 1.0, 0.0)

    @staticmethod
    def _coerce(x: Union["Jet2", Number]) -> "Jet2":
        return x if isinstance(x, Jet2) else Jet2.constant(x)

    def __add__(self, other):
        o = Jet2._coerce(other)
        return Jet2(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)

    __radd__ = __add__

    def __sub__(self, other):
        o = Jet2._coerce(other)
        return Jet2(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)

    def __rsub__(self, other):
        return Jet2._coerce(other).__sub__(self)

    def __neg__(self):
        return Jet2(-self.v, -self.d1, -self.d2)

    def __mul__(self, other):
        o = Jet2._coerce(other)
        return Jet2(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Jet2._coerce(other)
        q0 = self.v / o.v
        q1 = (self.d1 - q0 * o.d1) / o.v
        q2 = (self.d2 - 2.0 * q1 * o.d1 - q0 * o.d2) / o.v
        return Jet2(q0, q1, q2)

    def __rtruediv__(self, other):
        return Jet2._coerce(other).__truediv__(self)

    def __pow__(self, k: int):
        if not isinstance(k, (int, np.integer)):
            raise TypeError("jet exponent must be an integer")
        if k == 0:
            one = 1.0 + 0.0 * self.v
            return Jet2(one, 0.0 * one, 0.0 * one)
        if k == 1:
            return self
        # f = u^k, f' = k u^(k-1) u', f'' = k(k-1) u^(k-2) u'^2 + k u^(k-1) u''
        vk2 = self.v ** (k - 2.0)
        vk1 = vk2 * self.v
        return Jet2(
            vk1 * self.v,
            k * vk1 * self.d1,
            k * (k - 1) * vk2 * self.d1 * self.d1 + k * vk1 * self.d2,
        )

    def sin(self) -> "Jet2":
        s, c = np.sin(self.v), np.cos(self.v)
        return Jet2(s, c * self.d1, -s * self.d1 * self.d1 + c * self.d2)

    def cos(self) -> "Jet2":
        s, c = np.sin(self.v), np.cos(self.v)
        return Jet2(c, -s * self.d1, -c * self.d1 * self.d1 - s * self.d2)
