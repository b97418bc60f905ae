"""Approach of the grid supremum D O(iX)/|W_H| to ||f||_H^2 as X -> 2 Z_H.

The gap at eps behaves like the Weyl-sum defect 1 - cosh((1 - eps) pi ell/2)/cosh(pi ell/2),
so it grows with the spectral content of f.  The table shows the ratio at each eps for
packets of increasing width, together with the polynomial extrapolation to eps = 0.
"""
import argparse

import numpy as np

from horokit import hardy as hd
from horokit import spectra as sp
from horokit import transforms as tr


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--sigmas", type=float, nargs="+", default=[0.2, 0.3, 0.5, 0.8, 1.0, 1.5])
    p.add_argument("--eps", type=float, nargs="+", default=[0.2, 0.1, 0.05, 0.025])
    args = p.parse_args()
    eps = tuple(args.eps)
    print("sigma  " + "  ".join(f"eps={e:<6g}" for e in eps) + "  extrapolated")
    for s in args.sigmas:
        G = hd.hardy_norm_geometric(tr.WavePacket(sp.gaussian_packet(s)), eps)
        r = np.asarray(G.values) / G.spectral
        print(f"{s:5.2f}  " + "  ".join(f"{v:10.6f}" for v in r) + f"  {G.extrapolated / G.spectral:10.6f}")


if __name__ == "__main__":
    main()
