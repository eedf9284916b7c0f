"""K(0,0) of the quadrature-built basis against the two candidate normalizations."""

import argparse
import math

from kahlercoh import BundleModel, build_onb, coherent_kernel


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-m", type=int, default=8)
    args = parser.parse_args()
    print(f"{'m':>3} {'K(0,0)':>14} {'(m+1)/2pi':>14} {'(m+1)/(2pi m)':>14}")
    for m in range(1, args.max_m + 1):
        k00 = coherent_kernel(build_onb(BundleModel.p1(m)), 0, 0).real
        print(f"{m:>3} {k00:14.10f} {(m + 1) / (2 * math.pi):14.10f} {(m + 1) / (2 * math.pi * m):14.10f}")


if __name__ == "__main__":
    main()
