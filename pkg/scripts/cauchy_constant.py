"""Constant of the third Cauchy formula for several models, next to vol(P^N)/(N+1)."""

import argparse

import numpy as np

from kahlercoh import BundleModel, build_onb, harness


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--models", nargs="+", default=["P1:m=1", "P1:m=2", "P1:m=4", "PN:n=2,m=1", "PN:n=2,m=2"])
    parser.add_argument("--pairs", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)
    for descriptor in args.models:
        basis = build_onb(BundleModel.parse(descriptor))
        n = basis.model.n
        probes = list(zip(harness.random_chart_points(rng, args.pairs, n),
                          harness.random_chart_points(rng, args.pairs, n)))
        r = harness.verify_cauchy_third(basis, probes)
        const = complex(*r.notes["constant"])
        print(f"{descriptor:>12}  N={basis.N:<3} constant={const.real:.12f}  "
              f"vol/(N+1)={r.notes['predicted_vol_over_dim']:.12f}  CV={r.notes['coefficient_of_variation']:.1e}")


if __name__ == "__main__":
    main()
