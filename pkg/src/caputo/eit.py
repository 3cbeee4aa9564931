r"""Repeated integrals of power-law hypergeometric terms and sinh closed forms.

The central identity is the generalized Euler integral transform

.. math::

    \int_0^1 t^{c-1}(1-t)^{d-c-1}\,{}_AF_B[a;b;z t^m]\,dt
      = \frac{\Gamma(d-c)\Gamma(c)}{\Gamma(d)}\,
        {}_{A+m}F_{B+m}\Big[a, \tfrac{c}{m},\dots,\tfrac{c+m-1}{m};\;
                            b, \tfrac{d}{m},\dots,\tfrac{d+m-1}{m};\; z\Big],

which turns the ``n``-fold integral of ``x^kappa pFq(zeta x^m)`` into a single
hypergeometric function of higher order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .core import QuadratureConfig, _jacobi, _legendre, check_order
from .errors import DomainError, ValidationError
from .specfun import HypSeriesSpec, gamma, gamma_ratio, phyperg

__all__ = [
    "EITPrefactor",
    "cancel_parameters",
    "cauchy_repeated_integral",
    "eit_lift",
    "euler_integral_lhs",
    "eit_transform_check",
    "sinh_caputo_spec",
    "caputo_sinh",
    "caputo_sinh_shifted",
    "closed_form_spec",
]

_MATCH_TOL = 1e-12
# geometric panel grading toward t = 0 for the repeated integral
_GRADING = 0.15
CAUCHY_DEFAULT = QuadratureConfig(nodes=16, subdivisions=20)


def cauchy_repeated_integral(
    f: Callable[[float], float],
    n: int,
    x: float,
    cfg: QuadratureConfig | None = None,
) -> float:
    """``n``-fold integral of ``f`` from 0 to ``x`` as one weighted integral.

    Evaluates ``1/Gamma(n) * int_0^x (x-t)^(n-1) f(t) dt`` with composite
    Gauss-Legendre. Panels shrink geometrically toward ``t = 0`` so that
    integrands with an algebraic endpoint factor such as ``t^kappa`` are
    still integrated to near machine precision.
    """
    if n < 1 or int(n) != n:
        raise DomainError("integration depth must be a positive integer")
    x = float(x)
    if not x > 0:
        raise DomainError(f"repeated integral needs x > 0, got {x}")
    cfg = cfg or CAUCHY_DEFAULT
    edges = [0.0] + [x * _GRADING**i for i in range(cfg.subdivisions - 1, -1, -1)]
    u, w = _legendre(cfg.nodes)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        t = a + half * (u + 1.0)
        vals = np.array([f(ti) for ti in t])
        total += half * np.dot(w, (x - t) ** (n - 1) * vals)
    return float(total / gamma(n))


def cancel_parameters(
    upper: tuple[float, ...], lower: tuple[float, ...], tol: float = _MATCH_TOL
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Drop every upper/lower pair that agrees to within ``tol``."""
    lower_left = list(lower)
    kept = []
    for a in upper:
        for i, b in enumerate(lower_left):
            if abs(a - b) <= tol * max(1.0, abs(a)):
                del lower_left[i]
                break
        else:
            kept.append(a)
    return tuple(kept), tuple(lower_left)


@dataclass(frozen=True)
class EITPrefactor:
    """``x^power * Gamma(gamma_num) / Gamma(gamma_den)`` produced by a lift."""

    gamma_num: float
    gamma_den: float
    power: float

    @property
    def gamma_ratio(self) -> float:
        # log-Gamma difference; stays finite for deep lifts
        return gamma_ratio([self.gamma_num], [self.gamma_den])

    def __call__(self, x: float) -> float:
        return x**self.power * self.gamma_ratio


def eit_lift(spec: HypSeriesSpec, n: int, cancel: bool = True) -> tuple[EITPrefactor, HypSeriesSpec]:
    """Integrate ``spec`` ``n`` times from 0, returning the prefactor and the lifted term.

    The lifted spec gains upper parameters ``(kappa+j)/m`` and lower
    parameters ``(kappa+n+j)/m`` for ``j = 1..m``, has ``kappa + n`` as its
    power and absorbs ``Gamma(kappa+1)/Gamma(kappa+n+1)`` into ``coeff``, so
    calling it gives the repeated integral directly.
    """
    if n < 0 or int(n) != n:
        raise DomainError("lift depth must be a non-negative integer")
    kappa, m = spec.kappa, spec.m
    if not kappa > -1.0:
        raise DomainError(f"repeated integral diverges at the origin for kappa={kappa}")
    prefactor = EITPrefactor(kappa + 1.0, kappa + n + 1.0, kappa + n)
    if n == 0:
        return prefactor, spec
    upper = spec.upper + tuple((kappa + j) / m for j in range(1, m + 1))
    lower = spec.lower + tuple((kappa + n + j) / m for j in range(1, m + 1))
    if cancel:
        upper, lower = cancel_parameters(upper, lower)
    lifted = replace(
        spec,
        upper=upper,
        lower=lower,
        kappa=kappa + n,
        coeff=spec.coeff * prefactor.gamma_ratio,
    )
    return prefactor, lifted


def euler_integral_lhs(spec: HypSeriesSpec, c: float, d: float, z: float, nodes: int = 40) -> float:
    """Left side of the Euler transform by Gauss-Jacobi quadrature.

    The weight ``t^(c-1) (1-t)^(d-c-1)`` is carried by the rule; only
    ``pFq(z t^m)`` is sampled.
    """
    if not d > c > 0:
        raise DomainError("Euler transform needs d > c > 0")
    u, w = _jacobi(nodes, d - c - 1.0, c - 1.0)
    t = 0.5 * (u + 1.0)
    vals = np.array([phyperg(spec, z * ti**spec.m).value for ti in t])
    return float(2.0 ** (1.0 - d) * np.dot(w, vals))


def eit_transform_check(
    spec: HypSeriesSpec,
    c: float,
    d: float,
    z: float,
    validate: bool = False,
    rtol: float = 1e-10,
) -> float:
    """Right side of the Euler transform, optionally checked against quadrature.

    Appends ``(c+j)/m`` and ``(d+j)/m``, ``j = 0..m-1``, to the parameter
    lists. With ``validate=True`` the left side is integrated numerically and
    :class:`ValidationError` is raised when the two differ by more than
    ``rtol``.
    """
    if not d > c > 0:
        raise DomainError("Euler transform needs d > c > 0")
    m = spec.m
    lifted = HypSeriesSpec(
        spec.upper + tuple((c + j) / m for j in range(m)),
        spec.lower + tuple((d + j) / m for j in range(m)),
        m=m,
    )
    rhs = gamma_ratio([d - c, c], [d]) * phyperg(lifted, z).value
    if validate:
        lhs = euler_integral_lhs(spec, c, d, z)
        if abs(lhs - rhs) > rtol * max(abs(rhs), 1e-300):
            raise ValidationError(f"Euler transform mismatch: quadrature {lhs!r} vs closed form {rhs!r}")
    return rhs


def sinh_caputo_spec(beta: float, alpha: float) -> HypSeriesSpec:
    r"""Caputo derivative of ``sinh(beta x)`` as a power-law term.

    :math:`\beta x^{1-\alpha}\,{}_1F_2(1; \tfrac{2-\alpha}{2}, \tfrac{3-\alpha}{2};
    \beta^2x^2/4) / \Gamma(2-\alpha)`.
    """
    alpha = check_order(alpha)
    return HypSeriesSpec(
        upper=(1.0,),
        lower=((2.0 - alpha) / 2.0, (3.0 - alpha) / 2.0),
        kappa=1.0 - alpha,
        zeta=beta * beta / 4.0,
        m=2,
        coeff=beta / gamma(2.0 - alpha),
    )


def _check_x(x: float) -> float:
    x = float(x)
    if not x > 0:
        raise DomainError(f"closed forms are evaluated only for x > 0, got {x}")
    return x


def caputo_sinh(beta: float, alpha: float, x: float) -> float:
    """Closed-form Caputo derivative of ``sinh(beta x)``."""
    alpha = check_order(alpha)
    x = _check_x(x)
    if alpha == 0.0:
        return math.sinh(beta * x)
    if alpha == 1.0:
        return beta * math.cosh(beta * x)
    return sinh_caputo_spec(beta, alpha)(x)


def caputo_sinh_shifted(beta: float, alpha: float, l: int, x: float) -> float:
    """Derivative of order ``alpha - l`` of ``sinh(beta x)``.

    Obtained as the ``l``-fold integral of the order-``alpha`` closed form; the
    lift cancels the two original lower parameters, leaving
    ``beta x^(1-alpha+l) 1F2(1; (2+l-alpha)/2, (3+l-alpha)/2; beta^2 x^2/4) / Gamma(2+l-alpha)``.
    """
    if l < 0 or int(l) != l:
        raise DomainError("l must be a non-negative integer")
    if l == 0:
        return caputo_sinh(beta, alpha, x)
    x = _check_x(x)
    _, lifted = eit_lift(sinh_caputo_spec(beta, alpha), int(l))
    return lifted(x)


def closed_form_spec(name: str, beta: float, alpha: float) -> HypSeriesSpec:
    """Power-law hypergeometric form of the Caputo derivative of a catalog function.

    Supported names: ``const, x, x^2, exp, sinh, cosh, sin, cos``, each taken
    at argument ``beta * x``.
    """
    alpha = check_order(alpha)
    b2 = beta * beta
    if name == "const":
        return HypSeriesSpec((), (), zeta=0.0, coeff=0.0)
    if name == "x":
        return HypSeriesSpec((), (), kappa=1.0 - alpha, zeta=0.0, coeff=beta / gamma(2.0 - alpha))
    if name == "x^2":
        return HypSeriesSpec((), (), kappa=2.0 - alpha, zeta=0.0, coeff=2.0 * b2 / gamma(3.0 - alpha))
    if name == "exp":
        return HypSeriesSpec((1.0,), (2.0 - alpha,), 1.0 - alpha, beta, 1, beta / gamma(2.0 - alpha))
    if name in ("sinh", "sin"):
        spec = sinh_caputo_spec(beta, alpha)
        return spec if name == "sinh" else replace(spec, zeta=-spec.zeta)
    if name in ("cosh", "cos"):
        sign = 1.0 if name == "cosh" else -1.0
        return HypSeriesSpec(
            (1.0,),
            ((3.0 - alpha) / 2.0, (4.0 - alpha) / 2.0),
            2.0 - alpha,
            sign * b2 / 4.0,
            2,
            sign * b2 / gamma(3.0 - alpha),
        )
    raise ValueError(f"no closed form for {name!r}")
