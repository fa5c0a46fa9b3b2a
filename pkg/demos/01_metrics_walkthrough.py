"""Walk through validation and the metric theory on the shipped fixtures.

Run from the repository root: python3 demos/01_metrics_walkthrough.py
"""
from pathlib import Path

from gsf.core import ValidationError, format_point, read_semigroup, validate
from gsf.metrics import (distance_oracle, gapset_clipped, member_points,
                         metrics_report, number_of_levels, pseudo_frobenius)

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def main() -> None:
    print("== validation ==")
    s3 = read_semigroup(FIXTURES / "s3.sgp")
    print("s3 small:", " ".join(format_point(p) for p in s3.small))
    try:
        validate([(0, 0), (1, 2), (2, 1)])
    except ValidationError as exc:
        print("rejected non-semigroup:", exc)

    print()
    print("== four-branch worked example ==")
    n4 = read_semigroup(FIXTURES / "n4_example.sgp")
    rep = metrics_report(n4)
    print("conductor:", format_point(rep.conductor))
    for i, (l, g) in enumerate(zip(rep.axis_lengths, rep.axis_genera), 1):
        print(f"  axis {i}: length {l}, genus {g}")
    print("total length", rep.length, "and genus", rep.genus)

    print()
    print("== distance function as an independent oracle ==")
    box = {(x, y) for x in range(4) for y in range(4)}
    g = distance_oracle(box, member_points(s3, pad=1) & box)
    print("genus of s3 via saturated chains:", g)

    print()
    print("== levels and type ==")
    pf = pseudo_frobenius(s3)
    print("pseudo-frobenius set:", " ".join(format_point(p) for p in pf))
    print("type:", number_of_levels(pf))
    print("gap levels:", number_of_levels(gapset_clipped(s3)))


if __name__ == "__main__":
    main()
