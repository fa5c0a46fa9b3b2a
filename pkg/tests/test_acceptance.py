"""Acceptance gate: seven criteria, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
print. Every check is exact (integer or string equality); the only tolerance
is the wall-clock budget of criterion 1, pinned at 300 seconds.
"""
from __future__ import annotations

import io
import time
from contextlib import redirect_stdout

from gsf.analysis import generates, wilf_check
from gsf.cli import main
from gsf.core import read_semigroup, INF
from gsf.enumeration import (
    checkpoint_counts,
    count_by_genus,
    expand,
    audit_mode,
    root_frontier,
)
from gsf.metrics import (
    axis_genera,
    axis_lengths,
    cone_points,
    distance_oracle,
    full_box_points,
    gapset_clipped,
    genus,
    length,
    member_points,
    number_of_levels,
)

TIME_BUDGET_SECONDS = 300.0

EXPECTED_COUNTS = [1, 3, 10, 29, 78, 211, 555, 1419, 3658, 9291, 23559, 59750]

GENUS3_SMALLS = {
    ((0, 0), (1, 2), (2, 3)),
    ((0, 0), (1, 2), (1, 3), (2, 2), (2, 4)),
    ((0, 0), (2, 2)),
    ((0, 0), (1, 3)),
    ((0, 0), (1, 2), (1, 4)),
    ((0, 0), (2, 1), (3, 2)),
    ((0, 0), (2, 1), (2, 2), (3, 1), (4, 2)),
    ((0, 0), (3, 1)),
    ((0, 0), (2, 1), (4, 1)),
    ((0, 0), (1, 1), (2, 2), (3, 3)),
}


def _report(n: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {n}: {detail}"


def test_criterion_1_counts_through_genus_12() -> None:
    buf = io.StringIO()
    start = time.perf_counter()
    with redirect_stdout(buf):
        code = main(["enumerate", "--max-genus", "12", "--count-only", "--no-banner"])
    elapsed = time.perf_counter() - start
    counts = [int(line) for line in buf.getvalue().split()]
    ok = code == 0 and counts == EXPECTED_COUNTS and elapsed < TIME_BUDGET_SECONDS
    _report(1, ok, f"counts to genus 12 in {elapsed:.1f}s, budget {TIME_BUDGET_SECONDS:.0f}s")


def test_criterion_2_four_branch_example() -> None:
    s = read_semigroup("fixtures/n4_example.sgp")
    ok = (
        s.conductor == (8, 10, 10, 18)
        and len(s.small) == 43
        and length(s) == 10
        and genus(s) == 36
        and axis_lengths(s) == (5, 4, 1, 0)
        and axis_genera(s) == (3, 6, 9, 18)
    )
    _report(2, ok, "four-branch example: length 10, genus 36, axes (5,4,1,0)/(3,6,9,18)")


def test_criterion_3_wilf_counterexample() -> None:
    w = read_semigroup("fixtures/wilf23.sgp")
    rep = wilf_check(w)
    ok = (
        rep.genus == 23
        and rep.conductor_sum == 34
        and rep.edim == 3
        and rep.witness == ((4, 3), (8, INF), (13, 11))
        and generates(w, rep.witness)
        and not rep.holds
        and rep.lhs == 3
        and (rep.rhs.numerator, rep.rhs.denominator) == (34, 11)
        and rep.lhs < rep.rhs
    )
    _report(3, ok, "genus 23, edim 3 with regenerating witness, violation 3 < 34/11")


def test_criterion_4_genus_three_frontier() -> None:
    fr = expand(expand(root_frontier()))
    got = {s.small for s in fr.members}
    ok = got == GENUS3_SMALLS
    _report(4, ok, f"genus-3 frontier matches all {len(GENUS3_SMALLS)} listed semigroups")


def test_criterion_5_audit_depth_eight() -> None:
    rep = audit_mode(8)
    visited = sum(n for _, n in rep.visited)
    ok = rep.ok and rep.max_genus == 8 and visited == sum(EXPECTED_COUNTS[:8])
    _report(5, ok, f"audit to genus 8: {visited} semigroups, {len(rep.failures)} failures")


def _padded_level_count(s, pad: int) -> int:
    # brute-force levels on the finite box [0, c+pad]; the box's top edge
    # carries the role of the unbounded classes, so it maps to inf before
    # the peel
    c = s.conductor
    top = tuple(ci + pad for ci in c)
    gaps = full_box_points(top) - member_points(s, pad=pad)
    mapped = {tuple(INF if x == t else x for x, t in zip(p, top)) for p in gaps}
    return number_of_levels(mapped)


def test_criterion_6_oracle_equivalence() -> None:
    checked = 0
    ok = True
    fr = root_frontier()
    for _ in range(6):
        for s in fr.members:
            c = s.conductor
            bound = tuple(ci + 1 for ci in c)
            member = member_points(s, pad=1)
            if distance_oracle(member, cone_points(c, bound)) != length(s):
                ok = False
            if distance_oracle(full_box_points(bound), member) != genus(s):
                ok = False
            clipped_nl = number_of_levels(gapset_clipped(s))
            levels = {_padded_level_count(s, pad) for pad in (2, 3, 4)}
            if levels != {clipped_nl}:
                ok = False
            checked += 1
        fr = expand(fr)
    _report(6, ok, f"distances and padded level counts agree on {checked} semigroups")


def test_criterion_7_determinism() -> None:
    t1 = count_by_genus(10, threads=1)
    t2 = count_by_genus(10, threads=2)
    t8 = count_by_genus(10, threads=8)
    ok = t1 == t2 == t8

    import tempfile

    with tempfile.TemporaryDirectory() as ckpt:
        count_by_genus(6, checkpoint_dir=ckpt)
        ok = ok and set(checkpoint_counts(ckpt)) == set(range(1, 7))
        resumed = count_by_genus(10, checkpoint_dir=ckpt, resume=True)
        ok = ok and resumed.to_csv().encode() == t1.to_csv().encode()
    _report(7, ok, "identical tables for 1/2/8 workers, resume byte-equal to fresh")
