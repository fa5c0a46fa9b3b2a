"""The genus-23 semigroup whose embedding dimension breaks the Wilf bound.

Run from the repository root: python3 demos/03_wilf_counterexample.py
"""
from pathlib import Path

from gsf.analysis import generates, wilf_check, wilf_scan
from gsf.core import format_point, read_semigroup
from gsf.tracks import irreducible_maximals

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def main() -> None:
    sgp = read_semigroup(FIXTURES / "wilf23.sgp")
    report = wilf_check(sgp)
    print("genus:", report.genus)
    print("conductor sum:", report.conductor_sum)
    print("irreducible maximals:",
          " ".join(format_point(p) for p in irreducible_maximals(sgp)))
    print("embedding dimension:", report.edim)
    print("witness:", " ".join(format_point(p) for p in report.witness))
    print("witness generates the semigroup:", generates(sgp, report.witness))
    print(f"bound: edim >= {report.rhs.numerator}/{report.rhs.denominator}"
          f" = {float(report.rhs):.3f}")
    print("inequality holds:", report.holds)

    print()
    print("scanning small genus for other violations...")
    violations = wilf_scan(5)
    print("violations up to genus 5:", len(violations))


if __name__ == "__main__":
    main()
