"""Truncated Taylor series (jets) and functions presented as jet generators.

A :class:`Jet` of order ``N`` at ``x0`` stores ``f^(n)(x0) / n!`` for
``n = 0..N``. Jets are the only source of integer derivatives in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, JetOrderError

__all__ = [
    "MAX_ORDER",
    "Jet",
    "FunctionModel",
    "jet_arith",
    "jet_pow",
    "jet_elem",
    "jet_compose",
    "constant_jet",
    "identity_jet",
    "elementary",
    "scaled",
    "compose",
    "identity",
    "constant",
    "exp",
    "sinh",
    "cosh",
    "tanh",
    "sech",
    "sin",
    "cos",
    "power",
]

MAX_ORDER = 64

_INV_FACTORIAL = np.array([1.0 / math.factorial(n) for n in range(MAX_ORDER + 1)])


def _check_order(order: int) -> None:
    if order < 0:
        raise JetOrderError("jet order must be non-negative")
    if order > MAX_ORDER:
        raise JetOrderError(f"jet order {order} exceeds the maximum {MAX_ORDER}")


@dataclass(frozen=True, eq=False)
class Jet:
    base_point: float
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d sequence")
        _check_order(c.size - 1)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "base_point", float(self.base_point))

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    def derivative(self, n: int) -> float:
        """n-th derivative at the base point."""
        if n > self.order:
            raise JetOrderError(f"jet of order {self.order} has no derivative {n}")
        return math.factorial(n) * float(self.coeffs[n])

    def derivatives(self) -> np.ndarray:
        return self.coeffs / _INV_FACTORIAL[: self.coeffs.size]

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise JetOrderError("cannot raise the order of a jet by truncation")
        return Jet(self.base_point, self.coeffs[: order + 1])

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return constant_jet(float(other), self.base_point, self.order)

    def __add__(self, other):
        return jet_arith(self, self._lift(other), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return jet_arith(self, self._lift(other), "sub")

    def __rsub__(self, other):
        return jet_arith(self._lift(other), self, "sub")

    def __mul__(self, other):
        return jet_arith(self, self._lift(other), "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return jet_arith(self, self._lift(other), "div")

    def __rtruediv__(self, other):
        return jet_arith(self._lift(other), self, "div")

    def __neg__(self):
        return Jet(self.base_point, -self.coeffs)

    def __pow__(self, p: int):
        return jet_pow(self, p)

    def __repr__(self) -> str:
        return f"Jet(base_point={self.base_point!r}, coeffs={self.coeffs.tolist()!r})"


def constant_jet(c: float, x0: float, order: int) -> Jet:
    coeffs = np.zeros(order + 1)
    coeffs[0] = c
    return Jet(x0, coeffs)


def identity_jet(x0: float, order: int) -> Jet:
    coeffs = np.zeros(order + 1)
    coeffs[0] = x0
    if order >= 1:
        coeffs[1] = 1.0
    return Jet(x0, coeffs)


def _cauchy(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)[: a.size]


def jet_arith(a: Jet, b: Jet, op: str) -> Jet:
    """Combine two jets with ``op`` in ``{"add", "sub", "mul", "div"}``."""
    if a.base_point != b.base_point or a.order != b.order:
        raise ValueError("jets must share base point and order")
    x0 = a.base_point
    if op == "add":
        return Jet(x0, a.coeffs + b.coeffs)
    if op == "sub":
        return Jet(x0, a.coeffs - b.coeffs)
    if op == "mul":
        return Jet(x0, _cauchy(a.coeffs, b.coeffs))
    if op == "div":
        b0 = b.coeffs[0]
        if b0 == 0.0:
            raise ZeroDivisionError("jet division by a jet with zero constant term")
        out = np.empty_like(a.coeffs)
        for n in range(out.size):
            acc = a.coeffs[n] - np.dot(b.coeffs[1 : n + 1], out[n - 1 :: -1][:n])
            out[n] = acc / b0
        return Jet(x0, out)
    raise ValueError(f"unknown jet operation {op!r}")


def jet_pow(a: Jet, p: int) -> Jet:
    """Non-negative integer power of a jet by binary exponentiation."""
    if p < 0 or int(p) != p:
        raise ValueError("jet_pow needs a non-negative integer exponent")
    result = constant_jet(1.0, a.base_point, a.order).coeffs
    base = a.coeffs
    p = int(p)
    while p:
        if p & 1:
            result = _cauchy(result, base)
        p >>= 1
        if p:
            base = _cauchy(base, base)
    return Jet(a.base_point, result)


def _tanh_coeffs(x: float, order: int) -> np.ndarray:
    # t' = 1 - t^2
    t = np.zeros(order + 1)
    t[0] = math.tanh(x)
    for n in range(order):
        rhs = -np.dot(t[: n + 1], t[n::-1])
        if n == 0:
            rhs += 1.0
        t[n + 1] = rhs / (n + 1)
    return t


def _sech_coeffs(x: float, order: int) -> np.ndarray:
    # s' = -s t
    t = _tanh_coeffs(x, order)
    s = np.zeros(order + 1)
    s[0] = 1.0 / math.cosh(x)
    for n in range(order):
        s[n + 1] = -np.dot(s[: n + 1], t[n::-1]) / (n + 1)
    return s


def _cycle_coeffs(values: list[float], order: int) -> np.ndarray:
    n = np.arange(order + 1)
    return np.array(values)[n % len(values)] * _INV_FACTORIAL[: order + 1]


def _power_coeffs(x: float, order: int, p: float) -> np.ndarray:
    out = np.zeros(order + 1)
    if p == math.floor(p) and p >= 0:
        ip = int(p)
        for n in range(min(ip, order) + 1):
            out[n] = math.comb(ip, n) * x ** (ip - n)
        return out
    if p == math.floor(p):
        if x == 0:
            raise DomainError("negative integer power at 0")
    elif x <= 0:
        raise DomainError("non-integer power needs x > 0")
    out[0] = x**p
    for n in range(order):
        out[n + 1] = out[n] * (p - n) / ((n + 1) * x)
    return out


def jet_elem(kind: str, x: float, order: int, p: float | None = None, c: float | None = None) -> Jet:
    """Jet of an elementary function at ``x``.

    ``kind`` is one of ``exp, sinh, cosh, tanh, sech, sin, cos, power,
    identity, constant``; ``power`` takes the exponent ``p`` and ``constant``
    takes the value ``c``.
    """
    _check_order(order)
    x = float(x)
    if kind == "exp":
        coeffs = math.exp(x) * _INV_FACTORIAL[: order + 1]
    elif kind == "sinh":
        coeffs = _cycle_coeffs([math.sinh(x), math.cosh(x)], order)
    elif kind == "cosh":
        coeffs = _cycle_coeffs([math.cosh(x), math.sinh(x)], order)
    elif kind == "sin":
        s, co = math.sin(x), math.cos(x)
        coeffs = _cycle_coeffs([s, co, -s, -co], order)
    elif kind == "cos":
        s, co = math.sin(x), math.cos(x)
        coeffs = _cycle_coeffs([co, -s, -co, s], order)
    elif kind == "tanh":
        coeffs = _tanh_coeffs(x, order)
    elif kind == "sech":
        coeffs = _sech_coeffs(x, order)
    elif kind == "power":
        if p is None:
            raise ValueError("power needs an exponent p")
        coeffs = _power_coeffs(x, order, float(p))
    elif kind == "identity":
        return identity_jet(x, order)
    elif kind == "constant":
        return constant_jet(0.0 if c is None else float(c), x, order)
    else:
        raise ValueError(f"unknown elementary kind {kind!r}")
    return Jet(x, coeffs)


@dataclass(frozen=True)
class FunctionModel:
    """A real function that can produce its jet of any order at a point.

    ``jet_fn(x, order)`` must be free of side effects; models are shared
    between threads without locking.
    """

    name: str
    jet_fn: Callable[[float, int], Jet]

    def jet(self, x: float, order: int) -> Jet:
        _check_order(order)
        j = self.jet_fn(float(x), order)
        if j.base_point != float(x) or j.order != order:
            raise ValueError(f"{self.name}: jet generator returned the wrong base point or order")
        return j

    def __call__(self, x: float) -> float:
        return self.jet(x, 0).value

    def derivative(self, x: float, n: int = 1) -> float:
        return self.jet(x, n).derivative(n)

    def _binary(self, other, op: str, symbol: str) -> "FunctionModel":
        if not isinstance(other, FunctionModel):
            other = constant(float(other))
        a, b = self, other
        return FunctionModel(
            f"({a.name}{symbol}{b.name})",
            lambda x, n: jet_arith(a.jet(x, n), b.jet(x, n), op),
        )

    def __add__(self, other):
        return self._binary(other, "add", "+")

    def __sub__(self, other):
        return self._binary(other, "sub", "-")

    def __mul__(self, other):
        return self._binary(other, "mul", "*")

    def __truediv__(self, other):
        return self._binary(other, "div", "/")

    def __radd__(self, other):
        return constant(float(other))._binary(self, "add", "+")

    def __rsub__(self, other):
        return constant(float(other))._binary(self, "sub", "-")

    def __rmul__(self, other):
        return constant(float(other))._binary(self, "mul", "*")

    def __rtruediv__(self, other):
        return constant(float(other))._binary(self, "div", "/")

    def __neg__(self):
        f = self
        return FunctionModel(f"-{f.name}", lambda x, n: -f.jet(x, n))


def jet_compose(f: FunctionModel, g_jet: Jet) -> Jet:
    """Taylor coefficients of ``f(g(x))`` at the base point of ``g_jet``.

    Horner evaluation of ``sum_n a_n (g - g0)^n`` where ``a_n`` is the jet of
    ``f`` at ``g0 = g(x0)``.
    """
    order = g_jet.order
    outer = f.jet(g_jet.value, order).coeffs
    delta = g_jet.coeffs.copy()
    delta[0] = 0.0
    acc = np.zeros(order + 1)
    acc[0] = outer[order]
    for n in range(order - 1, -1, -1):
        acc = _cauchy(acc, delta)
        acc[0] += outer[n]
    return Jet(g_jet.base_point, acc)


def compose(f: FunctionModel, g: FunctionModel) -> FunctionModel:
    return FunctionModel(f"{f.name}({g.name})", lambda x, n: jet_compose(f, g.jet(x, n)))


def scaled(f: FunctionModel, beta: float) -> FunctionModel:
    """The function ``x -> f(beta * x)``."""
    beta = float(beta)
    if beta == 1.0:
        return f

    def jet_fn(x, n):
        inner = f.jet(beta * x, n).coeffs
        return Jet(x, inner * beta ** np.arange(n + 1))

    return FunctionModel(f"{f.name}[{beta:g}x]", jet_fn)


def elementary(kind: str, beta: float = 1.0, p: float | None = None, c: float | None = None) -> FunctionModel:
    """FunctionModel of an elementary kind, optionally with argument scale ``beta``."""
    if kind == "power":
        name = f"x^{p:g}"
    elif kind == "constant":
        name = f"{0.0 if c is None else c:g}"
    elif kind == "identity":
        name = "x"
    else:
        name = kind
    base = FunctionModel(name, lambda x, n: jet_elem(kind, x, n, p=p, c=c))
    return scaled(base, beta)


def identity() -> FunctionModel:
    return elementary("identity")


def constant(c: float) -> FunctionModel:
    return elementary("constant", c=c)


def exp(beta: float = 1.0) -> FunctionModel:
    return elementary("exp", beta)


def sinh(beta: float = 1.0) -> FunctionModel:
    return elementary("sinh", beta)


def cosh(beta: float = 1.0) -> FunctionModel:
    return elementary("cosh", beta)


def tanh(beta: float = 1.0) -> FunctionModel:
    return elementary("tanh", beta)


def sech(beta: float = 1.0) -> FunctionModel:
    return elementary("sech", beta)


def sin(beta: float = 1.0) -> FunctionModel:
    return elementary("sin", beta)


def cos(beta: float = 1.0) -> FunctionModel:
    return elementary("cos", beta)


def power(p: float, beta: float = 1.0) -> FunctionModel:
    return elementary("power", beta, p=p)
