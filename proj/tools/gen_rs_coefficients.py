#!/usr/bin/env python3
"""Generate src/rs_coefficients.inc: Taylor coefficients of the Riemann-Siegel
correction functions C0..C4 in powers of x = p - 1/2.

C_k are the classical combinations of derivatives of
    Psi(p) = cos(2*pi*(p^2 - p - 1/16)) / cos(2*pi*p)
(Edwards, Riemann's Zeta Function, ch. 7; Gabcke 1979).
"""
import sys

import mpmath as mp

mp.mp.dps = 60
DEG = 80
CUTOFF = mp.mpf("1e-22")


def psi(x):
    p = x + mp.mpf(1) / 2
    return mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)


base = mp.taylor(psi, 0, DEG + 14)


def deriv(coefs, k):
    out = list(coefs)
    for _ in range(k):
        out = [out[i] * i for i in range(1, len(out))]
    return out


def combine(terms):
    res = [mp.mpf(0)] * (DEG + 1)
    for weight, order in terms:
        d = deriv(base, order)
        for i in range(DEG + 1):
            res[i] += weight * d[i]
    return res


pi = mp.pi
C = [
    combine([(1, 0)]),
    combine([(-1 / (96 * pi**2), 3)]),
    combine([(1 / (64 * pi**2), 2), (1 / (18432 * pi**4), 6)]),
    combine([(-1 / (64 * pi**2), 1), (-1 / (3840 * pi**4), 5), (-1 / (5308416 * pi**6), 9)]),
    combine([(1 / (128 * pi**2), 0), (mp.mpf(19) / (24576 * pi**4), 4),
             (mp.mpf(11) / (5898240 * pi**6), 8), (1 / (2038431744 * pi**8), 12)]),
]

out = sys.stdout if len(sys.argv) < 2 else open(sys.argv[1], "w")
out.write("// Generated by tools/gen_rs_coefficients.py. Do not edit.\n")
out.write("// Riemann-Siegel corrections C_k(p) = sum_i coeff[i] * (p - 1/2)^i.\n\n")
for k, coefs in enumerate(C):
    last = max(i for i in range(DEG + 1) if abs(coefs[i]) * mp.mpf(0.5) ** i > CUTOFF)
    out.write(f"inline constexpr double kRsC{k}[{last + 1}] = {{\n")
    for i in range(last + 1):
        v = coefs[i] if abs(coefs[i]) > mp.mpf("1e-40") else mp.mpf(0)
        out.write(f"    {mp.nstr(v, 25, min_fixed=1, max_fixed=0)},\n")
    out.write("};\n\n")
