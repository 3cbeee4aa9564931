"""Repeated integrals of x^kappa pFq(zeta x^m) without quadrature.

Integrating the closed form of D^alpha sinh(x) l times should give the
derivative of order alpha - l. The lift appends two upper and two lower
parameters, two of which cancel the original lower ones, so the 3F4 that comes
out is really a 1F2 again.
"""
from caputo.eit import caputo_sinh, cauchy_repeated_integral, eit_lift, sinh_caputo_spec

alpha, x = 0.5, 1.0
base = sinh_caputo_spec(1.0, alpha)
print("base:", base)

for l in (1, 2, 3):
    _, raw = eit_lift(base, l, cancel=False)
    pre, lifted = eit_lift(base, l)
    numeric = cauchy_repeated_integral(lambda t: caputo_sinh(1.0, alpha, t), l, x)
    print(f"l={l}: {raw.order} -> {lifted.order}, lower={tuple(round(b, 6) for b in lifted.lower)}")
    print(f"     lifted {lifted(x):.15f}  numeric {numeric:.15f}  Gamma ratio {pre.gamma_ratio:.6g}")
