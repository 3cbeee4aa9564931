"""Caputo derivative of tanh(x) computed four ways.

The defining integral is the reference. The plain Taylor-type series, the
product rule (sinh times sech with closed-form sinh pieces) and the chain rule
(tanh of the identity) should all approach it as their truncation grows.
"""
import numpy as np

from caputo import jets
from caputo.composition import TruncationPlan, caputo_tanh, chain_rule
from caputo.core import caputo_quadrature, caputo_series

alpha = 0.5
xs = np.linspace(0.25, 1.5, 6)

print(f"D^{alpha} tanh(x)")
print(f"{'x':>6} {'quadrature':>14} {'series L=10':>12} {'product L=10':>12} {'chain L=20':>12}")
for x in xs:
    ref = caputo_quadrature(jets.tanh(), alpha, x)
    ser = caputo_series(jets.tanh(), alpha, x, n_terms=10).value
    prod = caputo_tanh(1.0, alpha, x, L=10).value
    chain = chain_rule(jets.tanh(), jets.identity(), alpha, x, TruncationPlan(20)).value
    # relative errors, the value itself only for the reference
    print(f"{x:6.3f} {ref:14.10f} {abs(ser - ref) / ref:12.2e} {abs(prod - ref) / ref:12.2e} {abs(chain - ref) / ref:12.2e}")

# truncation of the product rule at the far end of the grid
x = 1.5
ref = caputo_quadrature(jets.tanh(), alpha, x)
for L in (4, 6, 8, 10, 14, 20):
    res = caputo_tanh(1.0, alpha, x, L=L)
    print(f"L={L:2d}  rel err {abs(res.value - ref) / ref:.2e}  last term {res.last_term:.2e}")
