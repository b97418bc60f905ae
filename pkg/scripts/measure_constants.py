"""Measure the normalization constants fixed by the chosen measures.

Prints the ratio C(f)/R(f), the inversion constant kappa, the Gutzmer ratio,
the Lambda norm ratio and the line kernel at the origin for the reference packets.
"""
import argparse

import numpy as np

from horokit import geometry as geo
from horokit import hardy as hd
from horokit import spectra as sp
from horokit import transforms as tr
from horokit import tube_hardy as th


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--with-cauchy", action="store_true", help="also run the (slow) Cauchy quadrature")
    p.add_argument("--with-gutzmer", action="store_true", help="also run the (slow) G-orbit quadrature")
    args = p.parse_args()
    M = geo.RankOneModel(2)
    packets = tr.packet_family()
    k = sp.kappa_ratio(np.linspace(0.25, 16, 5))
    print("kappa = C2/(g C1):", np.round(k, 15))
    print("phi_0(y_o) = %.13f  (quarter form %.7f)" % (sp.phi_y_o_beta(0.0).real, sp.phi_y_o_quarter(0.0).real))
    for i, f in enumerate(packets):
        ratio = th.tube_hardy_norm(hd.lambda_map(f).tube_function) / hd.hardy_norm_spectral(f)
        print(f"packet {i}: ||Lambda f||^2/||f||^2 = {ratio:.13f}  (sqrt(pi/2) = {np.sqrt(np.pi / 2):.13f})")
        if args.with_cauchy:
            xi = geo.HoroParam(np.exp(0.5j) * M.xi_o)
            c = tr.cauchy_transform(f, xi).value / tr.radon_spectral(f, xi)
            print(f"          C(f)/R(f) at z = 0.5i: {c:.12f}  (2 pi = {2 * np.pi:.12f})")
        if args.with_gutzmer:
            g = hd.orbital_integral_direct(f, 0.5 * np.pi) / hd.OrbitalIntegral(f)(0.5j * np.pi)[0].real
            print(f"          direct/spectral orbital integral at x = pi/2: {g:.10f}")
    print("line kernel K(0,0) = %.16f" % th.tube_kernel(0.0, 0.0, th.trivial_multiplier(th.line_model())).real)


if __name__ == "__main__":
    main()
