"""Regenerate the frozen reference values in ``oracle_values.py`` (needs mpmath).

Run from the repository root: ``python tests/_make_oracles.py``.
"""

import mpmath as mp

mp.mp.dps = 40


def caputo_mp(fprime, alpha, x):
    kernel = lambda t: (x - t) ** (-alpha) * fprime(t)
    return mp.quad(kernel, [0, x]) / mp.gamma(1 - alpha)


def pfq_partial(upper, lower, z, n_terms):
    total = mp.mpf(0)
    for k in range(n_terms):
        num = mp.fprod(mp.rf(a, k) for a in upper)
        den = mp.fprod(mp.rf(b, k) for b in lower)
        total += num / den * mp.mpf(z) ** k / mp.factorial(k)
    return total


def main():
    out = []
    out.append(f"PFQ_1F2_1_1_1P5_AT_1 = {mp.nstr(pfq_partial([1], [1, mp.mpf(3) / 2], 1, 30), 20)}")
    tanh_prime = lambda t: mp.sech(t) ** 2
    rows = []
    for alpha in ("0.25", "0.5", "0.75"):
        for x in ("0.5", "1.0", "1.5"):
            v = caputo_mp(tanh_prime, mp.mpf(alpha), mp.mpf(x))
            rows.append(f"    ({alpha}, {x}): {mp.nstr(v, 20)},")
    out.append("CAPUTO_TANH = {\n" + "\n".join(rows) + "\n}")
    v = caputo_mp(mp.cosh, mp.mpf("0.5"), mp.mpf(1))
    out.append(f"CAPUTO_SINH_HALF_AT_1 = {mp.nstr(v, 20)}")
    print("\n".join(out))


if __name__ == "__main__":
    main()
