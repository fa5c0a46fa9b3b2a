"""Emit the per-genus count table with consecutive-count ratios as CSV.

Run from the repository root: python3 demos/04_ratio_table.py [MAX_GENUS]
"""
import sys
import time

from gsf.enumeration import count_by_genus


def main() -> None:
    max_genus = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    t0 = time.time()
    table = count_by_genus(max_genus, threads=1)
    elapsed = time.time() - t0
    sys.stdout.write(table.to_csv())
    sys.stderr.write(f"enumerated up to genus {max_genus} "
                     f"in {elapsed:.1f}s\n")


if __name__ == "__main__":
    main()
