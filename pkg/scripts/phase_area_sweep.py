"""Phase of the three-point function against geodesic-triangle area over random triples.

Prints the worst circle distance, the share of skipped (degenerate) draws
and a histogram of areas, for P^1 and P^2 hyperplane models.
"""

import argparse
import time

import numpy as np

from kahlercoh import BundleModel, build_onb, harness


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    for descriptor in ("P1:m=1", "PN:n=2,m=1"):
        basis = build_onb(BundleModel.parse(descriptor))
        rng = np.random.default_rng(args.seed)
        t0 = time.perf_counter()
        triples = harness.random_nondegenerate_triples(rng, args.count, basis.model.n, basis)
        r = harness.verify_phase_area(basis, triples)
        areas = np.array([d["area"] for d in r.details if not d.get("skipped")])
        hist, edges = np.histogram(areas, bins=8, range=(-np.pi, np.pi))
        print(f"{descriptor}: {r.cases} triples, worst circle distance {r.max_abs_err:.2e}, "
              f"{time.perf_counter() - t0:.1f}s")
        for h, lo in zip(hist, edges):
            print(f"  [{lo:+.2f}, {lo + edges[1] - edges[0]:+.2f})  {'#' * int(60 * h / max(1, hist.max()))} {h}")


if __name__ == "__main__":
    main()
