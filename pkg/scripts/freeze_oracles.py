"""Compute reference values with mpmath, independently of the package, and
freeze them into tests/oracle_values.json.

Every kernel value here comes from the defining Bessel-Gegenbauer series
(arbitrary c, any m) or the m = 2 plane-wave sum, evaluated at 40 digits.
"""
from __future__ import annotations

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
I = mp.mpc(0, 1)
OUT = Path(__file__).resolve().parents[1] / "tests" / "oracle_values.json"


def cplx(v) -> list[float]:
    v = mp.mpc(v)
    return [float(v.real), float(v.imag)]


def kernel_definition(m, c, z, w, t=1, K=90):
    """Scalar and bivector from the alpha_k, gamma_k Gegenbauer series."""
    z, w, c = mp.mpf(z), mp.mpf(w), mp.mpf(c)
    lam = mp.mpf(m - 2) / 2
    mu = 1 + (m - 1) / (1 + c)

    def alpha(k):
        return 0 if k < 0 else mp.exp(-I * mp.pi * k / (2 * (1 + c)))

    def gam(k):
        return 2 / (1 + c) * (k + lam) + (c + 2) / (1 + c)

    A = B = C = 0
    for k in range(K):
        a = alpha(k) * mp.besselj(gam(k) / 2 - 1, z * t)
        b = alpha(k - 1) * mp.besselj(gam(k - 1) / 2, z * t) if k >= 1 else 0
        A += (k + lam) * (a - I * b) * mp.gegenbauer(k, lam, w)
        B += (a + I * b) * mp.gegenbauer(k, lam, w)
        if k >= 1:
            C += (a + I * b) * mp.gegenbauer(k - 1, lam + 1, w)
    return z ** (-(mu - 2) / 2) * (A / (2 * lam) + B / 2), -z ** (-mu / 2) * C


def kernel_m2_definition(n, z, w, t=1, K=90):
    """m = 2 series with the lambda -> 0 Gegenbauer limits 2 cos(k theta)/k and U_{k-1}."""
    nt = (n - 1) // 2
    z, w = mp.mpf(z), mp.mpf(w)
    th = mp.acos(w)
    sc = bv = 0
    for k in range(K):
        ph = (-I) ** (k * n)
        sc += z ** (-nt) * ph * mp.besselj(k * n + nt, z * t) * mp.cos(k * th)
        if k >= 1:
            sc += (-1) ** nt * z ** (-nt) * ph * mp.besselj(k * n - nt, z * t) * mp.cos(k * th)
            u = k * mp.sign(w) ** (k - 1) if abs(w) == 1 else mp.sin(k * th) / mp.sin(th)
            bv += -z ** (-nt - 1) * ph * (mp.besselj(k * n + nt, z * t)
                                          - (-1) ** nt * mp.besselj(k * n - nt, z * t)) * u
    return sc, bv


def closed_m2(n, z, w, t=1):
    nt = (n - 1) // 2
    z, th = mp.mpf(z), mp.acos(w)
    sc = bv = 0
    for j in range(n):
        ph = (th + 2 * mp.pi * j) / n
        e = mp.exp(-I * z * t * mp.cos(ph))
        sc += mp.cos(nt * ph) * e
        bv += mp.sin(nt * ph) * e
    pre = I ** nt / n
    return pre * z ** (-nt) * sc, pre * z ** (-nt - 1) * bv / mp.sin(th)


def prabhakar(delta, alpha, beta, z):
    delta, alpha, beta, z = mp.mpf(delta), mp.mpf(alpha), mp.mpf(beta), mp.mpc(z)
    return mp.nsum(lambda k: mp.rf(delta, k) / (mp.factorial(k) * mp.gamma(alpha * k + beta)) * z ** k,
                   [0, mp.inf])


def h_series(delta, n, beta, bp, bm, t, K=80):
    """Exact convolution of two Prabhakar kernels by Beta integrals term by term."""
    delta, beta, t = mp.mpf(delta), mp.mpf(beta), mp.mpf(t)
    bp, bm = mp.mpc(bp), mp.mpc(bm)
    coef = [mp.rf(delta, j) / (mp.factorial(j) * mp.gamma(n * j + beta)) for j in range(K)]
    total = 0
    for j in range(K):
        for k in range(K - j):
            total += (coef[j] * coef[k] * bp ** j * bm ** k * mp.beta(beta + n * j, beta + n * k)
                      * t ** (n * (j + k)))
    return t ** (2 * beta - 1) * total


def laplace_of_kernel(n, z, w, s):
    """Forward transform of the m = 2 auxiliary-t kernel (plane-wave form) by mpmath quadrature."""
    f = [lambda t, c=c: mp.exp(-s * t) * closed_m2(n, z, w, t)[c] for c in (0, 1)]
    return [mp.quad(g, [0, 2, 6, 15, 40, mp.inf]) for g in f]


def main():
    data: dict = {}
    data["bessel_j"] = [[nu, x, float(mp.besselj(nu, x))]
                        for nu, x in [(0, 1.0), (1, 2.5), (3, 2.0), (0.5, 1.2), (2.5, 7.0), (7, 15.0),
                                      (10, 30.0), (21, 40.0), (0, 60.0), (4.5, 0.01)]]
    data["gegenbauer"] = [[k, lam, w, float(mp.gegenbauer(k, lam, w))]
                          for k, lam, w in [(5, 0.5, 0.3), (7, 1.5, -0.8), (12, 2.0, 0.95), (30, 1.0, 0.1),
                                            (9, 0.25, -0.4)]]
    data["chebyshev_u"] = [[k, w, float(mp.chebyu(k, w))] for k, w in [(4, 0.3), (9, -0.7), (17, 0.99)]]
    data["prabhakar"] = [[d, a, b, cplx(z), cplx(prabhakar(d, a, b, z))]
                         for d, a, b, z in [(2, 3, 6, 0.5), (1.5, 3, 2.5, mp.mpc(-4, 3)), (1, 5, 1, mp.mpc(0, 20)),
                                            (2.5, 7, 4, mp.mpc(-100, -50)), (0.5, 0.8, 1.2, mp.mpc(1.5, 0.5))]]
    data["kernel_m2"] = []
    for n in (1, 3, 5, 7):
        for z, w in [(0.5, -0.7), (1.0, 0.2), (3.0, 0.9), (6.0, -0.3), (8.0, 0.95), (2.0, 1.0), (4.0, -1.0)]:
            s, b = kernel_m2_definition(n, z, w)
            if abs(w) < 1:
                cs, cb = closed_m2(n, z, w)
                assert abs(cs - s) < 1e-25 and abs(cb - b) < 1e-25
            data["kernel_m2"].append([n, z, w, cplx(s), cplx(b)])
    data["kernel_n"] = []
    for m, n in [(3, 3), (4, 3), (4, 5), (6, 3), (3, 1), (5, 1), (5, 7)]:
        for z, w in [(0.5, -0.4), (1.0, 0.2), (1.0, 0.3), (2.5, 0.8), (4.0, -0.9)]:
            s, b = kernel_definition(m, mp.mpf(1) / n - 1, z, w)
            data["kernel_n"].append([m, n, z, w, cplx(s), cplx(b)])
    data["kernel_general"] = []
    for m, c, z, w in [(4, -0.5, 1.0, 0.2), (3, 0.5, 2.0, -0.3), (5, -0.25, 0.7, 0.9), (3, 2.0, 3.0, 0.05)]:
        s, b = kernel_definition(m, c, z, w)
        data["kernel_general"].append([m, c, z, w, cplx(s), cplx(b)])
    data["h_function"] = []
    for delta, n, bp, bm, t in [(1, 3, mp.mpc(0.5, 0.2), mp.mpc(0.5, -0.2), 0.5),
                                (1, 3, mp.mpc(0.3, -0.8), mp.mpc(-0.6, 0.1), 1.0),
                                (1.5, 3, mp.mpc(0, 1), mp.mpc(0, -1), 0.8),
                                (2, 5, mp.mpc(1, 1), mp.mpc(2, 0), 0.7)]:
        data["h_function"].append([delta, n, cplx(bp), cplx(bm), t,
                                   cplx(h_series(delta, n, n * delta, bp, bm, t))])
    data["laplace_m2"] = []
    for n, z, w, s in [(3, 1.0, 0.2, 2.0), (5, 0.8, -0.5, 3.0)]:
        sc, bv = laplace_of_kernel(n, z, w, s)
        data["laplace_m2"].append([n, z, w, s, cplx(sc), cplx(bv)])
    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
