"""Hyper-dual numbers for exact first and second derivatives of closed-form maps.

A hyper-dual number is ``a + b1*e1 + b2*e2 + c*e1*e2`` with ``e1**2 = e2**2 = 0``.
Seeding ``x = HyperDual(x0, 1, 0, 0)`` recovers plain forward-mode dual numbers;
seeding two variables along ``e1`` and ``e2`` gives the mixed second derivative in
the ``c`` slot with no truncation error.

Maps written against the functions in this module (``sin``, ``cosh``, ``sqrt``...)
accept floats, numpy arrays and hyper-duals alike.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np


class HyperDual:
    __slots__ = ("a", "b1", "b2", "c")
    __array_priority__ = 1000

    def __init__(self, a, b1=0.0, b2=0.0, c=0.0):
        self.a = a
        self.b1 = b1
        self.b2 = b2
        self.c = c

    def __repr__(self) -> str:
        return f"HyperDual({self.a!r}, {self.b1!r}, {self.b2!r}, {self.c!r})"

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(self.a + other.a, self.b1 + other.b1, self.b2 + other.b2, self.c + other.c)
        return HyperDual(self.a + other, self.b1, self.b2, self.c)

    __radd__ = __add__

    def __neg__(self):
        return HyperDual(-self.a, -self.b1, -self.b2, -self.c)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(
                self.a * other.a,
                self.a * other.b1 + self.b1 * other.a,
                self.a * other.b2 + self.b2 * other.a,
                self.a * other.c + self.b1 * other.b2 + self.b2 * other.b1 + self.c * other.a,
            )
        return HyperDual(self.a * other, self.b1 * other, self.b2 * other, self.c * other)

    __rmul__ = __mul__

    def _recip(self):
        return _chain(self, 1.0 / self.a, -1.0 / self.a**2, 2.0 / self.a**3)

    def __truediv__(self, other):
        if isinstance(other, HyperDual):
            return self * other._recip()
        return HyperDual(self.a / other, self.b1 / other, self.b2 / other, self.c / other)

    def __rtruediv__(self, other):
        return self._recip() * other

    def __pow__(self, n):
        if isinstance(n, HyperDual):
            return exp(n * log(self))
        if n == 2:
            return self * self
        a = self.a
        return _chain(self, a**n, n * a ** (n - 1), n * (n - 1) * a ** (n - 2))

    # comparisons look at the real part only (branch selection inside maps)
    def __lt__(self, other):
        return self.a < _real(other)

    def __gt__(self, other):
        return self.a > _real(other)

    def __le__(self, other):
        return self.a <= _real(other)

    def __ge__(self, other):
        return self.a >= _real(other)


def _real(x):
    return x.a if isinstance(x, HyperDual) else x


def _chain(x: HyperDual, f0, f1, f2) -> HyperDual:
    """Lift a scalar function with value f0, first derivative f1, second f2."""
    return HyperDual(f0, f1 * x.b1, f1 * x.b2, f1 * x.c + f2 * x.b1 * x.b2)


def _lift(fn, d1, d2):
    def wrapped(x):
        if isinstance(x, HyperDual):
            return _chain(x, fn(x.a), d1(x.a), d2(x.a))
        return fn(x)

    wrapped.__name__ = fn.__name__
    return wrapped


sin = _lift(np.sin, np.cos, lambda a: -np.sin(a))
cos = _lift(np.cos, lambda a: -np.sin(a), lambda a: -np.cos(a))
sinh = _lift(np.sinh, np.cosh, np.sinh)
cosh = _lift(np.cosh, np.sinh, np.cosh)
tanh = _lift(np.tanh, lambda a: 1.0 - np.tanh(a) ** 2, lambda a: -2.0 * np.tanh(a) * (1.0 - np.tanh(a) ** 2))
exp = _lift(np.exp, np.exp, np.exp)
log = _lift(np.log, lambda a: 1.0 / a, lambda a: -1.0 / a**2)
sqrt = _lift(np.sqrt, lambda a: 0.5 / np.sqrt(a), lambda a: -0.25 / a**1.5)
arcsin = _lift(np.arcsin, lambda a: 1.0 / np.sqrt(1.0 - a * a), lambda a: a / (1.0 - a * a) ** 1.5)
arcsinh = _lift(np.arcsinh, lambda a: 1.0 / np.sqrt(1.0 + a * a), lambda a: -a / (1.0 + a * a) ** 1.5)
arctanh = _lift(np.arctanh, lambda a: 1.0 / (1.0 - a * a), lambda a: 2.0 * a / (1.0 - a * a) ** 2)


def value(x):
    return _real(x)


def jet2(f: Callable[[object, object], Sequence], u: float, v: float):
    """Value, gradient and Hessian of a vector map ``f(u, v)`` at ``(u, v)``.

    Returns arrays of shape ``(n,)``, ``(n, 2)`` and ``(n, 2, 2)``.  Three
    hyper-dual passes cover the (u,u), (u,v) and (v,v) seeds.
    """
    seeds = ((1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 0, 1))
    outs = []
    for su1, sv1, su2, sv2 in seeds:
        U = HyperDual(u, su1, su2, 0.0)
        V = HyperDual(v, sv1, sv2, 0.0)
        outs.append([_as_hd(c) for c in f(U, V)])
    n = len(outs[0])
    p = np.array([outs[0][k].a for k in range(n)], dtype=float)
    d1 = np.empty((n, 2))
    d2 = np.empty((n, 2, 2))
    for k in range(n):
        uu, uv, vv = outs[0][k], outs[1][k], outs[2][k]
        d1[k, 0] = uu.b1
        d1[k, 1] = vv.b1
        d2[k, 0, 0] = uu.c
        d2[k, 0, 1] = d2[k, 1, 0] = uv.c
        d2[k, 1, 1] = vv.c
    return p, d1, d2


def jet1(f: Callable[[object, object], Sequence], u: float, v: float):
    """Value and gradient via plain dual numbers (one seed per variable)."""
    gu = [_as_hd(c) for c in f(HyperDual(u, 1.0), HyperDual(v, 0.0))]
    gv = [_as_hd(c) for c in f(HyperDual(u, 0.0), HyperDual(v, 1.0))]
    p = np.array([c.a for c in gu], dtype=float)
    d1 = np.array([[a.b1, b.b1] for a, b in zip(gu, gv)], dtype=float)
    return p, d1


def _as_hd(c) -> HyperDual:
    if isinstance(c, HyperDual):
        return c
    return HyperDual(float(c))


def derivative(f: Callable, x: float) -> float:
    """First derivative of a scalar function (dual-number route)."""
    return float(_as_hd(f(HyperDual(x, 1.0))).b1)


def second_derivative(f: Callable, x: float) -> float:
    return float(_as_hd(f(HyperDual(x, 1.0, 1.0))).c)


__all__ = [
    "HyperDual", "jet1", "jet2", "derivative", "second_derivative", "value",
    "sin", "cos", "sinh", "cosh", "tanh", "exp", "log", "sqrt", "arcsin", "arcsinh", "arctanh",
]
