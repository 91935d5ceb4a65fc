"""Reference values for the solutions unit tests.

Routes independent of the Fox H machinery: the M-Wright series for the
gamma = 1/2, theta = 0 kernel and direct quadrature of the stable-law
characteristic function. Frozen in tests/test_solutions.cpp.
Re-run with:  python3 solution_values.py
"""
import mpmath as mp

mp.mp.dps = 30


def m_wright(nu, z, terms=400):
    return mp.fsum((-z) ** n * mp.rgamma(1 - nu - nu * n) / mp.factorial(n) for n in range(terms))


def subdiffusion_kernel(x, t, beta=mp.mpf("0.5"), D=1):
    # u_t^beta = D u_xx from a point source
    s = mp.sqrt(D * t ** beta)
    return m_wright(beta / 2, abs(x) / s) / (2 * s)


def stable_density(mu, x, t=1):
    f = lambda k: mp.cos(k * x) * mp.exp(-t * k ** mu)
    return mp.quad(f, mp.linspace(0, 40, 81)) / mp.pi


for x in ["0", "0.5", "2"]:
    print(f"G(gamma=0.5, x={x}, t=1): {mp.nstr(subdiffusion_kernel(mp.mpf(x), 1), 20)}")
print(f"G(gamma=0.5, x=1.3, t=2.5): {mp.nstr(subdiffusion_kernel(mp.mpf('1.3'), mp.mpf('2.5')), 20)}")
for x in ["0", "0.7", "3"]:
    print(f"stable(mu=1.5, x={x}): {mp.nstr(stable_density(mp.mpf('1.5'), mp.mpf(x)), 20)}")
