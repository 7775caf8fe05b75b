"""Draw random rational almost-complex structures and tally integrability and Hodge diamonds."""

import argparse
import random
from collections import Counter

from nilhodge.complex_structure import is_integrable
from nilhodge.dolbeault import build_complex, full_diamond, has_02_component
from nilhodge.sampling import SMALL_ALGEBRAS, random_almost_complex, small_algebra


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=20, help="per algebra")
    ap.add_argument("--bound", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    for name in sorted(SMALL_ALGEBRAS):
        g = small_algebra(name)
        hits, diamonds = 0, Counter()
        for _ in range(args.samples):
            J = random_almost_complex(g, rng, args.bound)
            ok = is_integrable(J)
            assert ok == (not has_02_component(J))
            if ok:
                hits += 1
                diamonds[full_diamond(build_complex(J), g).h] += 1
        print(f"{name:<11} integrable {hits}/{args.samples}")
        for h, count in diamonds.most_common():
            print(f"    {count:>3} x {h}")


if __name__ == "__main__":
    main()
