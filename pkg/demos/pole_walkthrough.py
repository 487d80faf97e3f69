"""Walk through the pole sets of one spray configuration.

Shows the integer lattice polynomial, its roots, how each root lifts to
the two pole families, and the z -> 2 + 2z correspondence between them.

Usage: python3 pole_walkthrough.py [k1] [k2]
"""

import sys

from kochspray.ifs import LATTICE_A, exponent_histogram
from kochspray.zeros import (
    correspondence_check,
    lattice_polynomial,
    similarity_dimension,
    zero_set,
)


def main(argv):
    k1 = int(argv[1]) if len(argv) > 1 else 6
    k2 = int(argv[2]) if len(argv) > 2 else 6

    hist = exponent_histogram(k1, k2)
    poly = lattice_polynomial(k1, k2)
    print(f"configuration (k1, k2) = ({k1}, {k2})")
    print(f"exponent histogram: {hist}")
    terms = " + ".join(f"{c}x^{nu}" for nu, c in sorted(hist.items()))
    print(f"lattice polynomial: {terms} = 1")
    print(f"similarity dimension D = {similarity_dimension(k1, k2):.12f}")
    print()

    zc = zero_set(k1, k2, kind="C")
    zp = zero_set(k1, k2, kind="P")
    print(f"counting-side poles ({len(zc)} in the strip, period pi/a):")
    for rec in zc:
        print(
            f"  z = {rec.z.real:+.6f} {rec.z.imag:+.6f}i"
            f"   from root x = {rec.source_root:.6f}"
            f"   residual {rec.residual:.1e}"
        )
    print(f"volume-side poles ({len(zp)} in the strip, period 2 pi/a):")
    for rec in zp:
        print(f"  z = {rec.z.real:+.6f} {rec.z.imag:+.6f}i")
    print()

    defect = correspondence_check(zc, zp)
    print("correspondence z_P = 2 + 2 z_C (mod 2 pi i / a):")
    print(f"  max bijective defect {defect:.2e}")
    print(f"  lattice constant a = ln(3)/2 = {LATTICE_A:.12f}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
