"""Scan the Iwasawa deformation family over a few parameters and print the diamonds."""

import argparse

from nilhodge import catalog
from nilhodge.deformation import deform_rule, scan
from nilhodge.scalars import parse_scalar


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("t", nargs="*", default=["0", "1", "1*i", "1+1*i", "1/2", "s2"])
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    doc = catalog.get("iwasawa")
    J0 = doc.complex_structure()
    fam = deform_rule(J0, doc.family["deform_index"] - 1, doc.family["conjugate_index"] - 1)
    rep = scan(fam, [parse_scalar(t) for t in args.t], threads=args.threads)
    for s in rep.samples:
        if s.error is not None:
            print(f"t={s.t}: {s.error}")
            continue
        rows = " / ".join(" ".join(str(x) for x in row) for row in s.hodge.h)
        print(f"t={str(s.t):<10} integrable={s.integrable} rational={s.rational}  h: {rows}")


if __name__ == "__main__":
    main()
