"""kappa(ell) = C2/(g C1) for two closed forms of the inversion multiplier g.

The multiplier defined by g c1 = |c(i ell)|^{-2} gives a constant kappa; the coth
closed form (i ell/4) sinh/(1 - cosh) does not, so it cannot serve as the multiplier.
"""
import numpy as np

from horokit import spectra as sp


def main():
    ell = np.array([0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0])
    k_def = sp.kappa_ratio(ell)
    k_coth = sp.kappa_ratio(ell, g=sp.multiplier_g_coth)
    print(" ell     kappa (defining g)              kappa (coth form)")
    for l, a, b in zip(ell, k_def, k_coth):
        print(f"{l:5.2f}  {a.real:+.12f}{a.imag:+.1e}i   {b.real:+.8f}{b.imag:+.8f}i")


if __name__ == "__main__":
    main()
