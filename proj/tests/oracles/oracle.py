"""High-precision reference values frozen into the unit tests.

Run: python3 tests/oracles/oracle.py
"""
import mpmath as mp
import numpy as np

mp.mp.dps = 50


def ball_of_siegel(z, w):
    # C^{-1}(z, w) = ((z - 1)/(z + 1), 2w/(z + 1))
    return [(z - 1) / (z + 1)] + [2 * x / (z + 1) for x in w]


def inner(a, b):
    return mp.fsum(x * mp.conj(y) for x, y in zip(a, b))


def dist_ball(a, b):
    na = mp.re(inner(a, a))
    nb = mp.re(inner(b, b))
    return mp.sqrt(1 - (1 - na) * (1 - nb) / abs(1 - inner(a, b)) ** 2)


def dist_siegel(p, q):
    return dist_ball(ball_of_siegel(p[0], p[1:]), ball_of_siegel(q[0], q[1:]))


def show(label, x):
    print(f"{label}: {mp.nstr(x, 20)}")


mpc = mp.mpc
P = [mpc(1, 0.5), mpc(0.3, -0.2)]
Q = [mpc(2, -1), mpc(0.1, 0.4)]
show("dist_siegel P Q", dist_siegel(P, Q))

# near the boundary, tiny separation
P2 = [mpc(mp.mpf("1e-8"), 0.3), mpc(0)]
Q2 = [mpc(mp.mpf("2e-8"), 0.3), mpc(mp.mpf("1e-5"))]
show("dist_siegel near boundary", dist_siegel(P2, Q2))

# large |z|
P3 = [mpc(1e6, 3e5), mpc(10, 0)]
Q3 = [mpc(1.1e6, 3e5), mpc(10, 1)]
show("dist_siegel far", dist_siegel(P3, Q3))

# the double nearest to -1 + 1e-9, which is what the library receives
x = mp.mpf(-1 + 1e-9)
show("cayley z of (-1+1e-9, 0)", (1 + x) / (1 - x))

A = [mpc(0.3, 0.1), mpc(0, 0.2)]
B = [mpc(-0.5, 0), mpc(0.4, 0.1)]
show("dist_ball A B", dist_ball(A, B))

# horosphere / Koranyi ratios of C^{-1}(P) at C^{-1}(0) = (-1, 0)
Z = ball_of_siegel(P[0], P[1:])
X = [mpc(-1), mpc(0)]
nz = mp.re(inner(Z, Z))
show("horosphere ratio P at 0", abs(1 - inner(Z, X)) ** 2 / (1 - nz))
show("koranyi ratio P at 0", abs(1 - inner(Z, X)) / (1 - mp.sqrt(nz)))

# derivative of b(z) = z(z + 1/2)/(1 + z/2) at 1
b = lambda z: z * (z + mp.mpf(1) / 2) / (1 + z / 2)
show("b'(1)", mp.diff(b, 1))

# quadratic inverse: f(z, w) = (A z + B w^2, C w) with (A, B, C) = (2, 0.5+0.5i, 0.3i)
Aq, Bq, Cq = mpc(2), mpc(0.5, 0.5), mpc(0, 0.3)
target = [mpc(1.5, -0.25), mpc(0.2, 0.1)]
w = target[1] / Cq
z = (target[0] - Bq * w * w) / Aq
show("quadratic inverse z re", mp.re(z))
show("quadratic inverse z im", mp.im(z))
show("quadratic inverse w re", mp.re(w))
show("quadratic inverse w im", mp.im(w))

# elliptic growth constant of (b(z), w/2) on B^2 for r in [0.5, 1): dense sampling
def growth(r0, nr=600, nt=401):
    best = 0.0
    for r in 1 - (1 - r0) * np.logspace(0, -6, nr):
        s = np.linspace(0, 1, nt)  # |z|^2 share
        th = np.linspace(0, 2 * np.pi, nt)
        S, T = np.meshgrid(s, th)
        rz = r * np.sqrt(S)
        zz = rz * np.exp(1j * T)
        bz = zz * (zz + 0.5) / (1 + 0.5 * zz)
        m = np.sqrt(np.abs(bz) ** 2 + (r ** 2 * (1 - S)) / 4).max()
        best = max(best, (1 - r) / (1 - m))
    return best


print(f"elliptic growth c(0.5): {growth(0.5):.15f}")
