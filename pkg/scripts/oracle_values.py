"""Regenerate the mpmath reference values frozen into the unit tests."""
import mpmath as mp

mp.mp.dps = 30


def show(label, v):
    print(f"{label:<48s} {complex(v)!r}")


def main():
    for z in (0.3 + 0.4j, -2.7 + 1.1j, 5.5 - 3j, 12.5 + 0.5j, 0.5):
        show(f"Gamma({z})", mp.gamma(z))
    for a, b, c, x in [(0.25 + 0.5j, 0.25 - 0.5j, 1, 0.5), (1.5, -0.3, 2.2, -0.9),
                       (0.3 + 1j, 0.7, 1.9 - 0.4j, 0.95 + 0.1j), (0.25, 0.75, 1.3, -1)]:
        show(f"2F1({a}, {b}; {c}; {x})", mp.hyp2f1(a, b, c, x))
    for ell, u in [(0.5, 1.3), (2.0, 0.2 + 0.4j), (3.0, 5.0 + 2j), (7.0, 1j), (0.0, -0.5 + 0.3j), (1.0, 40 - 10j)]:
        show(f"P_(-1/2+i{ell}/2)({u})", mp.legenp(-0.5 + 0.5j * ell, 0, u, type=3))
    for ell in (0.5, 3.0):
        lam = 1j * ell
        show(f"c(i {ell})", mp.gamma(lam / 2) / mp.gamma((lam + 1) / 2) / mp.sqrt(mp.pi))
    for lam in (1, 5):
        show(f"int (cosh 2t)^-(1+i{lam})/2 dt", mp.quad(lambda t: mp.cosh(2 * t) ** (-(1 + 1j * lam) / 2),
                                                       [-mp.inf, 0, mp.inf]))
    for ell in (0, 1, 4):
        show(f"phi_{ell}(y_o) = 2F1(.;.;1;1)", mp.hyp2f1(0.25 + 0.25j * ell, 0.25 - 0.25j * ell, 1, 1))
    show("B(3/4, 3/4)", mp.beta(0.75, 0.75))
    show("line kernel K(0,0) = sqrt(pi/2)/2", mp.sqrt(mp.pi / 2) / 2)


if __name__ == "__main__":
    main()
