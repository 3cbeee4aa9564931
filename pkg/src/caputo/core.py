r"""Generic evaluation of the Caputo derivative of order :math:`0 \le \alpha \le 1`.

Two independent routes are provided:

* :func:`caputo_quadrature` integrates the defining singular integral

  .. math::

      D^\alpha f(x) = \frac{1}{\Gamma(1-\alpha)} \int_0^x (x-t)^{-\alpha} f'(t)\,dt

  with a Gauss-Jacobi rule that absorbs the kernel singularity;

* :func:`caputo_series` sums the expansion in integer derivatives at ``x``

  .. math::

      D^\alpha f(x) = \sum_{k\ge 0} \operatorname{sinc}(\alpha-k)\,
          \frac{\Gamma(\alpha+1)}{k!}\, x^{k-\alpha}\, \frac{d^k}{dx^k}[f(x)-f(0)].

At ``alpha == 0`` both return ``f(x) - f(0)``; at ``alpha == 1`` both return
``f'(x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .errors import DomainError
from .jets import FunctionModel, MAX_ORDER
from .specfun import SeriesResult, gamma, sinc_factor

__all__ = [
    "QuadratureConfig",
    "SeriesResult",
    "check_order",
    "caputo_quadrature",
    "caputo_series",
    "fractional_series",
    "DEFAULT_SERIES_TERMS",
    "DEFAULT_SERIES_TOL",
]

DEFAULT_SERIES_TERMS = 10
DEFAULT_SERIES_TOL = 1e-12


@dataclass(frozen=True)
class QuadratureConfig:
    """Node count per panel and number of panels for composite quadrature."""

    nodes: int = 24
    subdivisions: int = 4

    def __post_init__(self):
        if self.nodes < 4:
            raise ValueError("quadrature needs at least 4 nodes per panel")
        if self.subdivisions < 1:
            raise ValueError("quadrature needs at least one panel")


def check_order(alpha: float) -> float:
    """Validate a fractional order in [0, 1] and return it as a float."""
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"fractional order {alpha} outside [0, 1]")
    return alpha


def _check_x(x: float) -> float:
    x = float(x)
    if not x > 0:
        raise DomainError(f"Caputo derivative is evaluated only for x > 0, got {x}")
    return x


@lru_cache(maxsize=64)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    u, w = roots_legendre(n)
    u.setflags(write=False)
    w.setflags(write=False)
    return u, w


@lru_cache(maxsize=256)
def _jacobi(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    # weight (1-u)^a (1+u)^b on [-1, 1]
    u, w = roots_jacobi(n, a, b)
    u.setflags(write=False)
    w.setflags(write=False)
    return u, w


def caputo_quadrature(
    f: FunctionModel,
    alpha: float,
    x: float,
    cfg: QuadratureConfig | None = None,
) -> float:
    """Caputo derivative from its defining integral.

    With ``t = x s`` the integral becomes
    ``x^(1-alpha)/Gamma(1-alpha) * int_0^1 (1-s)^(-alpha) f'(x s) ds``.
    The unit interval is split into ``cfg.subdivisions`` equal panels; the last
    one, touching ``s = 1``, uses Gauss-Jacobi nodes for the weight
    ``(1-s)^(-alpha)`` and the others use Gauss-Legendre.
    """
    alpha = check_order(alpha)
    x = _check_x(x)
    if alpha == 0.0:
        return f(x) - f(0.0)
    if alpha == 1.0:
        return f.derivative(x, 1)
    cfg = cfg or QuadratureConfig()

    def fprime(s: np.ndarray) -> np.ndarray:
        return np.array([f.derivative(x * si, 1) for si in s])

    edges = np.linspace(0.0, 1.0, cfg.subdivisions + 1)
    total = 0.0
    u, w = _legendre(cfg.nodes)
    for a, b in zip(edges[:-2], edges[1:-1]):
        half = 0.5 * (b - a)
        s = a + half * (u + 1.0)
        total += half * np.dot(w, (1.0 - s) ** (-alpha) * fprime(s))
    a = edges[-2]
    uj, wj = _jacobi(cfg.nodes, -alpha, 0.0)
    half = 0.5 * (1.0 - a)
    s = a + half * (uj + 1.0)
    total += half ** (1.0 - alpha) * np.dot(wj, fprime(s))
    return float(total * x ** (1.0 - alpha) / gamma(1.0 - alpha))


def _series_from_coeffs(
    coeffs: np.ndarray,
    order: float,
    x: float,
    n_terms: int,
    tol: float,
) -> SeriesResult:
    # coeffs[k] = h^(k)(x)/k! with h = f - f(0); the k! of the expansion cancels
    scale = gamma(order + 1.0)
    total = 0.0
    last = 0.0
    small = 0
    for k in range(n_terms):
        term = sinc_factor(order, k) * scale * x ** (k - order) * coeffs[k]
        total += term
        last = abs(term)
        if last <= tol * abs(total):
            small += 1
            if small == 2:
                return SeriesResult(float(total), k + 1, float(last), True)
        else:
            small = 0
    return SeriesResult(float(total), n_terms, float(last), bool(last <= tol * abs(total)))


def _shifted_coeffs(f: FunctionModel, x: float, order: int) -> np.ndarray:
    coeffs = np.array(f.jet(x, order).coeffs)
    coeffs[0] -= f(0.0)
    return coeffs


def fractional_series(
    f: FunctionModel,
    order: float,
    x: float,
    n_terms: int = DEFAULT_SERIES_TERMS,
    tol: float = DEFAULT_SERIES_TOL,
) -> SeriesResult:
    """Integer-derivative series for any order ``order <= 1``.

    Negative non-integer orders give the fractional integral of
    ``f - f(0)``; this is the inner sum of the product rule. Orders 0 and 1
    return the exact classical values.
    """
    x = _check_x(x)
    order = float(order)
    if order > 1.0:
        raise DomainError("orders above 1 are not supported")
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    if n_terms - 1 > MAX_ORDER:
        raise ValueError(f"n_terms is limited to {MAX_ORDER + 1} by the jet order")
    if order == 0.0:
        return SeriesResult(f(x) - f(0.0), 1, 0.0, True)
    if order == 1.0:
        return SeriesResult(f.derivative(x, 1), 1, 0.0, True)
    if order == math.floor(order):
        raise DomainError("negative integer orders are not supported by the series")
    coeffs = _shifted_coeffs(f, x, n_terms - 1)
    return _series_from_coeffs(coeffs, order, x, n_terms, tol)


def caputo_series(
    f: FunctionModel,
    alpha: float,
    x: float,
    n_terms: int = DEFAULT_SERIES_TERMS,
    tol: float = DEFAULT_SERIES_TOL,
) -> SeriesResult:
    """Caputo derivative from the truncated integer-derivative expansion.

    Terms ``k = 0 .. n_terms-1`` are summed; summation stops early once two
    consecutive terms are below ``tol * |partial sum|``. Non-convergence is
    reported through ``converged=False``, never raised.
    """
    return fractional_series(f, check_order(alpha), x, n_terms, tol)
