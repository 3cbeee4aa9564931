"""Caputo fractional derivatives by quadrature, integer-derivative series,
hypergeometric closed forms, and fractional product/chain rules."""

from .composition import (
    TruncationPlan,
    caputo_tanh,
    chain_rule,
    chain_weight,
    di_bruno_kth,
    inverse_derivative,
    product_rule,
    sech_via_inverse,
)
from .core import QuadratureConfig, caputo_quadrature, caputo_series, check_order, fractional_series
from .eit import (
    EITPrefactor,
    caputo_sinh,
    caputo_sinh_shifted,
    cauchy_repeated_integral,
    closed_form_spec,
    eit_lift,
    eit_transform_check,
    euler_integral_lhs,
    sinh_caputo_spec,
)
from .errors import DomainError, JetOrderError, PoleError, SeriesConvergenceError, ValidationError
from .jets import FunctionModel, Jet, jet_arith, jet_compose, jet_elem, jet_pow
from .specfun import HypSeriesSpec, SeriesResult, gamma, gen_binomial, phyperg, sinc_factor

__version__ = "0.1.0"
