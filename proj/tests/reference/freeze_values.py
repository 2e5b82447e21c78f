#!/usr/bin/env python3
"""High-precision reference values frozen into the C++ unit tests.

Independent of the C++ code path: 50-digit mpmath evaluation of the moment
equations (dense LU on the 4x4 affine system), the normal-mode rate
equations, and the closed-form currents. Re-run to regenerate the constants.
"""
from mpmath import mp, mpf, exp, sqrt, matrix, lu_solve, atan2, cos, sin

mp.dps = 50


def rate(T, kappa, w):
    return kappa * w**3 / (1 - exp(-w / T))


def local_steady(wh, wc, eps, Th, Tc, kappa, delta):
    gh, gc = rate(Th, kappa, wh), rate(Tc, kappa, wc)
    eh, ec = exp(-wh / Th), exp(-wc / Tc)
    Gh, Gc = gh * (1 + delta * eh), gc * (1 + delta * ec)
    A = matrix([[-Gh, 0, 0, -eps],
                [0, -Gc, 0, eps],
                [0, 0, -(Gh + Gc) / 2, wh - wc],
                [2 * eps, -2 * eps, -(wh - wc), -(Gh + Gc) / 2]])
    b = matrix([-gh * eh, -gc * ec, 0, 0])
    nA, nB, X, Y = lu_solve(A, b)
    Jh = wh * (gh * eh - Gh * nA) - eps * Gh * X / 2
    Jc = wc * (gc * ec - Gc * nB) - eps * Gc * X / 2
    return dict(nA=nA, nB=nB, X=X, Y=Y, Jh=Jh, Jc=Jc)


def normal_modes(wh, wc, eps):
    r = sqrt(((wh - wc) / 2)**2 + eps**2)
    wp, wm = (wh + wc) / 2 + r, (wh + wc) / 2 - r
    th = atan2(2 * eps, wh - wc) / 2
    return wp, wm, cos(th)**2, sin(th)**2


def global_steady(wh, wc, eps, Th, Tc, kappa):
    wp, wm, c2, s2 = normal_modes(wh, wc, eps)
    out = {}
    Jh = 0
    for tag, w, wgh, wgc in (("plus", wp, c2, s2), ("minus", wm, s2, c2)):
        Gh, Gc = rate(Th, kappa, w) * wgh, rate(Tc, kappa, w) * wgc
        eh, ec = exp(-w / Th), exp(-w / Tc)
        n = (Gh * eh + Gc * ec) / (Gh * (1 - eh) + Gc * (1 - ec))
        out["n_" + tag] = n
        Jh += w * Gh * (eh - (1 - eh) * n)
    out["Jh"] = Jh
    out["nA"] = out["n_plus"] * c2 + out["n_minus"] * s2
    return out


def show(label, d):
    for k, v in d.items():
        print(f"{label}.{k} = {mp.nstr(v, 17)}")


if __name__ == "__main__":
    print("rate(T=10,kappa=1,W=5) =", mp.nstr(rate(mpf(10), mpf(1), mpf(5)), 17))
    wp, wm, c2, s2 = normal_modes(mpf(10), mpf(5), mpf("1e-3"))
    print("modes(10,5,1e-3):", mp.nstr(wp, 17), mp.nstr(wm, 17), mp.nstr(c2, 17), mp.nstr(s2, 17))
    fig3 = [mpf(10), mpf(5), mpf("1e-2"), mpf(12), mpf(10), mpf("1e-4")]
    show("local_boson_fig3", local_steady(*fig3, -1))
    show("local_tls_fig3", local_steady(*fig3, 1))
    show("global_fig3", global_steady(*fig3))
    fig4 = [mpf("5.001"), mpf(5), mpf("1e-3"), mpf(12), mpf(10), mpf("1e-7")]
    show("global_fig4_5001", global_steady(*fig4))
