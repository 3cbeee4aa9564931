import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from caputo import jets
from caputo.errors import DomainError, JetOrderError
from caputo.jets import Jet, compose, jet_arith, jet_compose, jet_elem, jet_pow

KINDS = ["exp", "sinh", "cosh", "tanh", "sech", "sin", "cos"]
SCALAR = {
    "exp": math.exp,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "tanh": math.tanh,
    "sech": lambda x: 1 / math.cosh(x),
    "sin": math.sin,
    "cos": math.cos,
}


def richardson_derivative(f, x, n, h=0.2, levels=4):
    """n-th derivative by central differences, Richardson-extrapolated in h^2."""

    def central(h):
        return sum((-1) ** i * math.comb(n, i) * f(x + (n / 2 - i) * h) for i in range(n + 1)) / h**n

    table = [central(h / 2**i) for i in range(levels)]
    for j in range(1, levels):
        table = [(4**j * table[i + 1] - table[i]) / (4**j - 1) for i in range(len(table) - 1)]
    return table[0]


def test_mul_square_of_identity():
    x = jets.identity_jet(0.0, 2)
    np.testing.assert_array_equal((x * x).coeffs, [0.0, 0.0, 1.0])


def test_div_geometric_series():
    one = jets.constant_jet(1.0, 0.0, 3)
    onep = Jet(0.0, [1.0, 1.0, 0.0, 0.0])
    np.testing.assert_allclose(jet_arith(one, onep, "div").coeffs, [1, -1, 1, -1], rtol=0, atol=0)


def test_div_by_zero_constant_term():
    with pytest.raises(ZeroDivisionError):
        jets.constant_jet(1.0, 0.0, 2) / Jet(0.0, [0.0, 1.0, 0.0])


def test_mismatched_jets():
    with pytest.raises(ValueError):
        jet_arith(jets.constant_jet(1.0, 0.0, 2), jets.constant_jet(1.0, 0.1, 2), "add")


def test_sinh_times_sech_is_tanh():
    x = 0.7
    prod = jet_elem("sinh", x, 6) * jet_elem("sech", x, 6)
    np.testing.assert_allclose(prod.coeffs, jet_elem("tanh", x, 6).coeffs, rtol=1e-13, atol=1e-15)


def test_exp_jet():
    np.testing.assert_allclose(jet_elem("exp", 0.0, 4).coeffs, [1, 1, 1 / 2, 1 / 6, 1 / 24], rtol=1e-15)


def test_sech_jet_at_zero():
    np.testing.assert_allclose(jet_elem("sech", 0.0, 2).coeffs, [1.0, 0.0, -0.5], atol=1e-16)


def test_tanh_jet_against_finite_differences():
    x = 1.3
    j = jet_elem("tanh", x, 8)
    for n in range(1, 5):
        fd = richardson_derivative(math.tanh, x, n)
        assert j.derivative(n) == pytest.approx(fd, rel=1e-7, abs=1e-9)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("x", [-0.9, 0.2, 1.1])
def test_elementary_jets_against_finite_differences(kind, x):
    j = jet_elem(kind, x, 4)
    assert j.value == pytest.approx(SCALAR[kind](x), rel=1e-15)
    for n in range(1, 5):
        fd = richardson_derivative(SCALAR[kind], x, n)
        assert j.derivative(n) == pytest.approx(fd, rel=1e-6, abs=1e-8)


def test_power_jet():
    j = jet_elem("power", 2.0, 3, p=0.5)
    expected = [math.sqrt(2), 0.5 / math.sqrt(2), -0.125 * 2**-1.5, 0.0625 * 2**-2.5]
    np.testing.assert_allclose(j.coeffs, expected, rtol=1e-14)
    np.testing.assert_array_equal(jet_elem("power", 0.0, 3, p=2).coeffs, [0, 0, 1, 0])
    with pytest.raises(DomainError):
        jet_elem("power", -1.0, 2, p=0.5)


def test_order_limit():
    jet_elem("exp", 0.0, jets.MAX_ORDER)
    with pytest.raises(JetOrderError):
        jet_elem("exp", 0.0, jets.MAX_ORDER + 1)


def test_jet_pow_matches_repeated_product():
    a = jet_elem("sin", 0.4, 10)
    acc = jets.constant_jet(1.0, 0.4, 10)
    for p in range(7):
        np.testing.assert_allclose(jet_pow(a, p).coeffs, acc.coeffs, rtol=1e-13, atol=1e-16)
        acc = acc * a


def test_compose_identity_and_exp():
    g = jet_elem("sin", 0.3, 5)
    np.testing.assert_allclose(jet_compose(jets.identity(), g).coeffs, g.coeffs, rtol=1e-15)
    np.testing.assert_allclose(
        jet_compose(jets.exp(), jets.identity_jet(0.0, 5)).coeffs, jet_elem("exp", 0.0, 5).coeffs, rtol=1e-15
    )


def test_compose_scaling():
    beta, x, n = 2.0, 0.5, 8
    composed = jet_compose(jets.tanh(), jets.identity_jet(x, n) * beta)
    base = jet_elem("tanh", beta * x, n)
    for k in range(n + 1):
        assert composed.derivative(k) == pytest.approx(beta**k * base.derivative(k), rel=1e-12, abs=1e-12)


def test_scaled_model_matches_compose():
    x = 0.45
    a = jets.sech(1.7).jet(x, 7).coeffs
    b = compose(jets.sech(), jets.identity() * 1.7).jet(x, 7).coeffs
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-14)


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from(KINDS),
    st.sampled_from(KINDS),
    st.floats(-1.5, 1.5),
    st.integers(0, 10),
)
def test_leibniz_for_products(k1, k2, x, n):
    a, b = jet_elem(k1, x, 10), jet_elem(k2, x, 10)
    prod = a * b
    leibniz = sum(math.comb(n, i) * a.derivative(i) * b.derivative(n - i) for i in range(n + 1))
    scale = sum(math.comb(n, i) * abs(a.derivative(i) * b.derivative(n - i)) for i in range(n + 1))
    assert abs(prod.derivative(n) - leibniz) <= 1e-13 * max(scale, 1.0)


def test_model_arithmetic():
    f = jets.sinh() / jets.cosh()
    j = f.jet(0.8, 6)
    np.testing.assert_allclose(j.coeffs, jet_elem("tanh", 0.8, 6).coeffs, rtol=1e-13, atol=1e-15)
    g = 2.0 * jets.identity() + 1.0
    assert g(3.0) == 7.0
    assert g.derivative(3.0) == 2.0


def test_jets_are_immutable():
    j = jet_elem("exp", 0.0, 3)
    with pytest.raises(ValueError):
        j.coeffs[0] = 2.0
