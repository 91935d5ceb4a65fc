"""Reference values for the specfun unit tests.

Each value is computed by a route independent of the C++ implementation and
printed with 20 significant digits; the numbers are frozen in
tests/test_specfun.cpp.  Re-run with:  python3 specfun_values.py
"""
import mpmath as mp

mp.mp.dps = 30


def stirling_gamma(z, shift=40, terms=30):
    # log Gamma(z+shift) by the Stirling series, then shift back with the recurrence.
    w = z + shift
    s = (w - mp.mpf(1) / 2) * mp.log(w) - w + mp.log(2 * mp.pi) / 2
    for k in range(1, terms):
        b = mp.bernoulli(2 * k)
        s += b / (2 * k * (2 * k - 1) * w ** (2 * k - 1))
    g = mp.exp(s)
    for j in range(shift):
        g /= z + j
    return g


def ml_taylor(alpha, z, n=200):
    return mp.fsum(mp.mpf(z) ** k / mp.gamma(alpha * k + 1) for k in range(n))


# exp(-Re(w) cosh t) is below 1e-190 beyond t = 8 for every argument used here
def bessel_k_quad(nu, w):
    return mp.quad(lambda t: mp.exp(-w * mp.cosh(t)) * mp.cosh(nu * t), mp.linspace(0, 8, 17))


def laguerre_sum(n, a, x):
    return mp.fsum((-1) ** k * mp.binomial(n + a, n - k) * x ** k / mp.factorial(k) for k in range(n + 1))


def show(label, v):
    if isinstance(v, mp.mpc):
        print(f"{label}: {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}")
    else:
        print(f"{label}: {mp.nstr(v, 20)}")


show("gamma(3.7+2.1i)", stirling_gamma(mp.mpc("3.7", "2.1")))
show("gamma(-2.3+0.4i)", stirling_gamma(mp.mpc("-2.3", "0.4")))
show("E_0.5(-1)", ml_taylor(mp.mpf("0.5"), -1))
show("E_0.5(-0.7)", ml_taylor(mp.mpf("0.5"), mp.mpf("-0.7")))
show("E_0.5(-4)", ml_taylor(mp.mpf("0.5"), -4, n=400))
show("E_0.8(-1)", ml_taylor(mp.mpf("0.8"), -1))
show("K_1/3(1)", bessel_k_quad(mp.mpf(1) / 3, 1))
show("K_2.7(0.3)", bessel_k_quad(mp.mpf("2.7"), mp.mpf("0.3")))
show("K_0.4(7.5)", bessel_k_quad(mp.mpf("0.4"), mp.mpf("7.5")))
show("K_0.6(1.2+0.9i)", bessel_k_quad(mp.mpf("0.6"), mp.mpc("1.2", "0.9")))
show("K_0.75(3-2.5i)", bessel_k_quad(mp.mpf("0.75"), mp.mpc("3", "-2.5")))
show("L_4^0.5(1.5)", laguerre_sum(4, mp.mpf("0.5"), mp.mpf("1.5")))
