"""Special-function primitives: Gamma, binomials, the sinc weight, pFq series.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, PoleError, SeriesConvergenceError

__all__ = [
    "HypSeriesSpec",
    "SeriesResult",
    "gamma",
    "lgamma_signed",
    "gamma_ratio",
    "gen_binomial",
    "sinc_factor",
    "phyperg",
    "pochhammer",
]

PFQ_TOL = 1e-14
PFQ_MAX_TERMS = 500

_SINC_SERIES_CUTOFF = 1e-8
_PARAM_MATCH = 1e-12


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def gamma(x: float) -> float:
    """Gamma function, raising :class:`PoleError` at non-positive integers."""
    if _is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    return math.gamma(x)


def lgamma_signed(x: float) -> tuple[float, float]:
    """Return ``(log|Gamma(x)|, sign(Gamma(x)))``."""
    if _is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    if x > 0:
        return math.lgamma(x), 1.0
    # Gamma alternates sign between consecutive negative integers
    sign = 1.0 if math.floor(x) % 2 == 0 else -1.0
    return math.lgamma(x), sign


def gamma_ratio(num: Sequence[float], den: Sequence[float]) -> float:
    """Compute prod Gamma(num) / prod Gamma(den) through log-Gamma.

    A non-positive integer in ``den`` makes the ratio exactly zero; one in
    ``num`` raises :class:`PoleError`.
    """
    if any(_is_nonpositive_integer(d) for d in den):
        for n in num:
            if _is_nonpositive_integer(n):
                raise PoleError("indeterminate Gamma ratio (poles above and below)")
        return 0.0
    log, sign = 0.0, 1.0
    for n in num:
        lg, s = lgamma_signed(n)
        log += lg
        sign *= s
    for d in den:
        lg, s = lgamma_signed(d)
        log -= lg
        sign *= s
    return sign * math.exp(log)


def gen_binomial(alpha: float, l: int) -> float:
    r"""Generalized binomial coefficient :math:`\Gamma(\alpha+1)/(\Gamma(\alpha-l+1)\,l!)`.

    For integer ``alpha = n`` and ``l > n`` the pole of the lower Gamma is
    resolved to its limit, 0.
    """
    if l < 0:
        raise DomainError("l must be non-negative")
    if alpha == math.floor(alpha) and alpha >= 0:
        n = int(alpha)
        return float(math.comb(n, l)) if l <= n else 0.0
    return gamma_ratio([alpha + 1.0], [alpha - l + 1.0, l + 1.0])


def sinc_factor(alpha: float, k: int) -> float:
    r""":math:`\sin(\pi(\alpha-k))/(\pi(\alpha-k))` with the removable singularity filled in.

    Integer ``alpha`` yields the Kronecker delta exactly.
    """
    z = alpha - k
    if alpha == math.floor(alpha):
        return 1.0 if z == 0 else 0.0
    if abs(z) < _SINC_SERIES_CUTOFF:
        pz2 = (math.pi * z) ** 2
        return 1.0 - pz2 / 6.0 + pz2 * pz2 / 120.0
    # reduce the argument so sin(pi*r) is evaluated with |r| <= 1/2
    n = round(alpha)
    r = alpha - n
    sign = -1.0 if (n - k) % 2 else 1.0
    return sign * math.sin(math.pi * r) / (math.pi * z)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k by direct product."""
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated series together with its truncation diagnostics."""

    value: float
    terms_used: int
    #: magnitude of the final term that was added
    last_term: float
    converged: bool

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class HypSeriesSpec:
    r"""A power-law hypergeometric term ``coeff * x**kappa * pFq(upper; lower; zeta * x**m)``.

    ``coeff`` is an overall constant so that closed forms such as
    :math:`\beta x^{1-\alpha}\,{}_1F_2(\dots)/\Gamma(2-\alpha)` fit in one object.
    """

    upper: tuple[float, ...]
    lower: tuple[float, ...]
    kappa: float = 0.0
    zeta: float = 1.0
    m: int = 1
    coeff: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))
        for b in self.lower:
            if _is_nonpositive_integer(b):
                raise PoleError(f"lower parameter {b} is a non-positive integer")
        if len(self.upper) > len(self.lower):
            raise DomainError("only A <= B (entire) series are supported")
        if int(self.m) != self.m or self.m < 1:
            raise DomainError("argument power m must be a positive integer")

    @property
    def order(self) -> tuple[int, int]:
        return len(self.upper), len(self.lower)

    def pfq(self, z: float, tol: float = PFQ_TOL, max_terms: int = PFQ_MAX_TERMS) -> SeriesResult:
        return phyperg(self, z, tol=tol, max_terms=max_terms)

    def __call__(self, x: float) -> float:
        if self.coeff == 0.0:
            return 0.0
        if x < 0 or (x == 0 and self.kappa < 0):
            raise DomainError("power-law prefactor needs x > 0")
        series = phyperg(self, self.zeta * x**self.m)
        return self.coeff * x**self.kappa * series.value


def phyperg(
    spec: HypSeriesSpec,
    z: float,
    tol: float = PFQ_TOL,
    max_terms: int = PFQ_MAX_TERMS,
) -> SeriesResult:
    """Sum the generalized hypergeometric series of ``spec`` at ``z``.

    Only the parameter lists of ``spec`` are used; ``kappa``, ``zeta`` and
    ``coeff`` are ignored. Each term is obtained from the previous one by a
    single multiplication, and summation stops once two consecutive terms fall
    below ``tol * |partial sum|``.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    upper, lower = spec.upper, spec.lower
    term = 1.0
    total = 1.0
    small = 0
    for k in range(max_terms):
        ratio = z / (k + 1.0)
        for a in upper:
            ratio *= a + k
        for b in lower:
            ratio /= b + k
        term *= ratio
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small == 2:
                return SeriesResult(total, k + 2, abs(term), True)
        else:
            small = 0
    raise SeriesConvergenceError(
        f"pFq series did not converge in {max_terms} terms (z={z!r}, last term {term!r})"
    )
