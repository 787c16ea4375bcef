"""Regenerate the Chebyshev tables used by the Airy kernels.

The scaled functions

    s_ai(x)  = Ai(x)  * 2*sqrt(pi) * x**0.25  * exp(+zeta)
    s_aip(x) = Ai'(x) * (-2)*sqrt(pi) * x**-0.25 * exp(+zeta),   zeta = (2/3) x**1.5

are smooth and O(1) on [4, 9.5], where neither the Maclaurin series nor the
asymptotic expansion reaches 1e-10 in double precision.  This script fits
degree-27 Chebyshev expansions with mpmath (40 digits) and prints them in the
form pasted into the kernel sources.  Run manually after any interval change:

    python tools/gen_airy_cheb.py
"""

import mpmath as mp
import numpy as np

mp.mp.dps = 40

XLO, XHI = 4.0, 9.5
N = 28


def scaled_ai(x):
    x = mp.mpf(x)
    return mp.airyai(x) * 2 * mp.sqrt(mp.pi) * x ** mp.mpf("0.25") * mp.e ** (mp.mpf(2) / 3 * x ** mp.mpf("1.5"))


def scaled_aip(x):
    x = mp.mpf(x)
    return mp.airyai(x, 1) * (-2) * mp.sqrt(mp.pi) * x ** mp.mpf("-0.25") * mp.e ** (mp.mpf(2) / 3 * x ** mp.mpf("1.5"))


def cheb_fit(f):
    k = np.arange(N)
    t = np.cos(np.pi * (k + 0.5) / N)
    x = 0.5 * (XHI - XLO) * t + 0.5 * (XHI + XLO)
    fv = np.array([float(f(xi)) for xi in x])
    return np.array([2.0 / N * np.sum(fv * np.cos(np.pi * j * (k + 0.5) / N)) for j in range(N)])


# Negative mid-zone: on t = -x in [4.2, 8.0] both the series (cancellation)
# and the asymptotic expansion (series bottoms out near 1e-10) miss the
# accuracy target, so the slowly-varying envelope pair (P, Q) of
#   Ai(-t) = ( cos(xi - pi/4) P + sin(xi - pi/4) Q ) / (sqrt(pi) t^0.25)
#   Bi(-t) = (-sin(xi - pi/4) P + cos(xi - pi/4) Q ) / (sqrt(pi) t^0.25)
# and the derivative pair (R, S) of
#   Ai'(-t) = t^0.25 / sqrt(pi) * ( sin(xi - pi/4) R - cos(xi - pi/4) S )
#   Bi'(-t) = t^0.25 / sqrt(pi) * ( cos(xi - pi/4) R + sin(xi - pi/4) S )
# are fitted instead (xi = (2/3) t^1.5).

NEG_LO, NEG_HI = 4.2, 8.0
N_NEG = 24


def _neg_parts(t):
    t = mp.mpf(t)
    xi = mp.mpf(2) / 3 * t ** mp.mpf("1.5")
    c, s = mp.cos(xi - mp.pi / 4), mp.sin(xi - mp.pi / 4)
    q = mp.sqrt(mp.pi) * t ** mp.mpf("0.25")
    ai, bi = mp.airyai(-t), mp.airybi(-t)
    p_env = q * (ai * c - bi * s)
    q_env = q * (ai * s + bi * c)
    qp = mp.sqrt(mp.pi) / t ** mp.mpf("0.25")
    aip, bip = mp.airyai(-t, 1), mp.airybi(-t, 1)
    r_env = qp * (aip * s + bip * c)
    s_env = qp * (bip * s - aip * c)
    return p_env, q_env, r_env, s_env


def cheb_fit_on(f, lo, hi, n):
    k = np.arange(n)
    t = np.cos(np.pi * (k + 0.5) / n)
    x = 0.5 * (hi - lo) * t + 0.5 * (hi + lo)
    fv = np.array([float(f(xi)) for xi in x])
    return np.array([2.0 / n * np.sum(fv * np.cos(np.pi * j * (k + 0.5) / n)) for j in range(n)])


if __name__ == "__main__":
    for name, f in (("_AI_CHEB", scaled_ai), ("_AIP_CHEB", scaled_aip)):
        c = cheb_fit(f)
        print(f"{name} = (")
        for v in c:
            print(f"    {float(v)!r},")
        print(")")
    for idx, name in enumerate(("_NEG_P_CHEB", "_NEG_Q_CHEB", "_NEG_R_CHEB", "_NEG_S_CHEB")):
        c = cheb_fit_on(lambda t, i=idx: _neg_parts(t)[i], NEG_LO, NEG_HI, N_NEG)
        print(f"{name} = (")
        for v in c:
            print(f"    {float(v)!r},")
        print(")")
