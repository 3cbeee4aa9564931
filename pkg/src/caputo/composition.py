r"""Fractional product and chain rules and their application to ``tanh``.

Product rule (order on ``f``, integer derivatives on ``g``):

.. math::

    D^\alpha[f g](x) = \sum_{l\ge 0} \binom{\alpha}{l}\, g^{(l)}(x)\, D^{\alpha-l} f(x).

Chain rule:

.. math::

    D^\alpha[f(g(x))] = \sum_{m\ge 0} W_m(\alpha, x, g)\,\operatorname{sinc}(\alpha-m)
        \frac{\Gamma(\alpha+1)}{m!}\, x^{m-\alpha} f^{(m)}(g(x)),

with the weight ``W_m`` built from a normal-ordered 2F2 series in ``x d/dx``
acting on derivatives of powers of ``g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional

import numpy as np

from . import jets
from .core import DEFAULT_SERIES_TOL, _check_x, caputo_series, check_order, fractional_series
from .eit import caputo_sinh_shifted
from .errors import JetOrderError
from .jets import MAX_ORDER, FunctionModel, Jet, jet_pow
from .specfun import SeriesResult, gamma, gen_binomial, sinc_factor

__all__ = [
    "TruncationPlan",
    "product_rule",
    "di_bruno_kth",
    "inverse_derivative",
    "chain_weight",
    "chain_rule",
    "caputo_tanh",
    "sech_via_inverse",
]

#: closed-form strategy: (alpha, l, x) -> D^(alpha-l) f(x)
FracDerivative = Callable[[float, int, float], float]


@dataclass(frozen=True)
class TruncationPlan:
    """Truncation of the outer sum (``L`` terms) and the inner sums (``K`` terms).

    ``inner_terms`` defaults to ``2 * outer_terms``.
    """

    outer_terms: int = 10
    inner_terms: Optional[int] = None
    tol: float = DEFAULT_SERIES_TOL

    def __post_init__(self):
        if self.inner_terms is None:
            object.__setattr__(self, "inner_terms", 2 * self.outer_terms)
        if self.outer_terms < 1 or self.inner_terms < 1:
            raise ValueError("truncation orders must be at least 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")


def _accumulate(terms, tol: float) -> SeriesResult:
    """Sum an iterator of terms with the two-small-terms stopping rule."""
    total = 0.0
    last = 0.0
    small = 0
    used = 0
    for term in terms:
        used += 1
        total += term
        last = abs(term)
        if last <= tol * abs(total):
            small += 1
            if small == 2:
                return SeriesResult(float(total), used, float(last), True)
        else:
            small = 0
    return SeriesResult(float(total), max(used, 1), float(last), bool(last <= tol * abs(total)))


def product_rule(
    f: FunctionModel,
    g: FunctionModel,
    alpha: float,
    x: float,
    plan: TruncationPlan | None = None,
    dfrac: FracDerivative | None = None,
) -> SeriesResult:
    """Caputo derivative of ``f * g`` by the fractional product rule.

    ``dfrac`` supplies ``D^(alpha-l) f(x)`` in closed form; by default each one
    is the integer-derivative series of order ``alpha - l`` with
    ``plan.inner_terms`` terms. At integer ``alpha`` the binomial weights
    vanish beyond ``l = alpha`` and the sum is the Leibniz rule.

    The rule as summed gives the derivative of ``(f - f(0)) g``; when
    ``f(0) != 0`` the missing ``f(0) D^alpha g`` is added from the series of
    ``g`` and its diagnostics are merged into the result.
    """
    alpha = check_order(alpha)
    x = _check_x(x)
    plan = plan or TruncationPlan()
    L, K = plan.outer_terms, plan.inner_terms
    if L - 1 > MAX_ORDER:
        raise JetOrderError("outer truncation exceeds the maximum jet order")
    g_jet = g.jet(x, L - 1)

    def inner(l: int) -> float:
        if dfrac is not None:
            return dfrac(alpha, l, x)
        return fractional_series(f, alpha - l, x, K, plan.tol).value

    def terms():
        for l in range(L):
            weight = gen_binomial(alpha, l)
            if weight == 0.0:
                yield 0.0
                continue
            yield weight * g_jet.derivative(l) * inner(l)

    result = _accumulate(terms(), plan.tol)
    f0 = f(0.0)
    if f0 == 0.0:
        return result
    corr = caputo_series(g, alpha, x, K, plan.tol)
    return SeriesResult(
        result.value + f0 * corr.value,
        result.terms_used,
        result.last_term,
        result.converged and corr.converged,
    )


def _powers(g_jet: Jet, count: int) -> list[Jet]:
    return [jet_pow(g_jet, p) for p in range(count)]


def di_bruno_kth(f: FunctionModel, g: FunctionModel, k: int, x: float) -> float:
    """k-th derivative of ``f(g(x))`` by di Bruno's formula in power form.

    ``sum_m 1/m! * (sum_j (-1)^j C(m,j) g^j d^k g^(m-j)) * f^(m)(g(x))``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    g_jet = g.jet(x, k)
    g0 = g_jet.value
    f_jet = f.jet(g0, k)
    powers = _powers(g_jet, k + 1)
    total = 0.0
    for m in range(k + 1):
        inner = 0.0
        for j in range(m + 1):
            inner += (-1) ** j * math.comb(m, j) * g0**j * powers[m - j].derivative(k)
        total += inner / math.factorial(m) * f_jet.derivative(m)
    return total


def inverse_derivative(f: FunctionModel, n: int, x: float) -> float:
    """n-th derivative of ``1 / f(x)``.

    ``(n+1) sum_k C(n,k) (-1)^k / (k+1) * f^-(k+1) * d^n f^k``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    f_jet = f.jet(x, n)
    f0 = f_jet.value
    if f0 == 0.0:
        raise ZeroDivisionError(f"{f.name} vanishes at x={x}")
    total = 0.0
    for k in range(n + 1):
        dn = jet_pow(f_jet, k).derivative(n)
        total += math.comb(n, k) * (-1) ** k / (k + 1) * dn / f0 ** (k + 1)
    return (n + 1) * total


def sech_via_inverse(beta: float = 1.0) -> FunctionModel:
    """``sech(beta x)`` whose derivatives come from :func:`inverse_derivative` of cosh."""
    ch = jets.cosh(beta)

    def jet_fn(x, n):
        coeffs = [inverse_derivative(ch, l, x) / math.factorial(l) for l in range(n + 1)]
        return Jet(x, np.array(coeffs))

    return FunctionModel(f"1/{ch.name}", jet_fn)


def _hyp22_coeffs(alpha: float, m: int, K: int) -> np.ndarray:
    # series coefficients of 2F2(1, m-alpha; 1+m, 1+m-alpha; .)
    c = np.empty(K + 1)
    c[0] = 1.0
    for k in range(K):
        c[k + 1] = c[k] * (1.0 + k) * (m - alpha + k) / ((1.0 + m + k) * (1.0 + m - alpha + k) * (k + 1.0))
    return c


def _weight(powers: list[Jet], g0: float, alpha: float, m: int, x: float, K: int) -> float:
    c = _hyp22_coeffs(alpha, m, K)
    total = 0.0
    for j in range(m + 1):
        gp = powers[m - j]
        # :2F2:[...; -x d/dx] applied to d^m g^(m-j), normal-ordered term by term
        op = 0.0
        for k in range(K + 1):
            op += c[k] * (-1) ** k * x**k * gp.derivative(k + m)
        total += (-1) ** j / math.factorial(m) * math.comb(m, j) * g0**j * op
    return total


def chain_weight(g: FunctionModel, alpha: float, m: int, x: float, K: int) -> float:
    """Weight ``W_m`` of the fractional chain rule with ``K + 1`` operator-series terms."""
    alpha = check_order(alpha)
    if m < 0 or K < 0:
        raise ValueError("m and K must be non-negative")
    if K + m > MAX_ORDER:
        raise JetOrderError(f"chain weight needs jets of order {K + m} > {MAX_ORDER}")
    g_jet = g.jet(x, K + m)
    return _weight(_powers(g_jet, m + 1), g_jet.value, alpha, m, x, K)


def chain_rule(
    f: FunctionModel,
    g: FunctionModel,
    alpha: float,
    x: float,
    plan: TruncationPlan | None = None,
) -> SeriesResult:
    """Caputo derivative of ``f(g(x))`` by the fractional chain rule.

    The outer sum runs over ``m = 0 .. plan.outer_terms - 1``; each weight
    uses ``plan.inner_terms`` operator terms. The ``m = 0`` term carries
    ``f(g(x)) - f(g(0))``, i.e. the origin shift is applied to the composite.
    """
    alpha = check_order(alpha)
    x = _check_x(x)
    if alpha == 0.0:
        return SeriesResult(f(g(x)) - f(g(0.0)), 1, 0.0, True)
    if alpha == 1.0:
        return SeriesResult(f.derivative(g(x), 1) * g.derivative(x, 1), 1, 0.0, True)
    plan = plan or TruncationPlan()
    L, K = plan.outer_terms, plan.inner_terms
    if K + L - 1 > MAX_ORDER:
        raise JetOrderError(f"chain rule needs jets of order {K + L - 1} > {MAX_ORDER}")
    g_jet = g.jet(x, K + L - 1)
    g0 = g_jet.value
    f_jet = f.jet(g0, L - 1)
    powers = _powers(g_jet, L)
    scale = gamma(alpha + 1.0)

    def terms():
        for m in range(L):
            fm = f_jet.coeffs[m]  # f^(m)(g)/m!, absorbing the 1/Gamma(m+1)
            if m == 0:
                fm = fm - f(g(0.0))
            w = _weight(powers, g0, alpha, m, x, K)
            yield w * sinc_factor(alpha, m) * scale * x ** (m - alpha) * fm

    return _accumulate(terms(), plan.tol)


def caputo_tanh(
    beta: float,
    alpha: float,
    x: float,
    L: int = 10,
    sech_derivatives: str = "jets",
) -> SeriesResult:
    """Caputo derivative of ``tanh(beta x)`` as a sum of 1F2 functions.

    Product rule with ``f = sinh(beta x)`` in closed form and ``g = sech(beta x)``;
    ``sech_derivatives`` picks ``"jets"`` or ``"inverse"`` (derivatives of
    ``1/cosh``) as the source of ``g^(l)``.
    """
    f = jets.sinh(beta)
    if sech_derivatives == "jets":
        g = jets.sech(beta)
    elif sech_derivatives == "inverse":
        g = sech_via_inverse(beta)
    else:
        raise ValueError(f"unknown sech derivative source {sech_derivatives!r}")
    return product_rule(f, g, alpha, x, TruncationPlan(outer_terms=L), dfrac=partial(caputo_sinh_shifted, beta))
