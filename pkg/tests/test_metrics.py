from __future__ import annotations

import pytest

from gsf.core import INF, read_semigroup, validate
from gsf.enumeration import expand, root_frontier
from gsf.metrics import (
    axis_genera,
    axis_lengths,
    cone_points,
    distance_oracle,
    full_box_points,
    gapset_clipped,
    genus,
    length,
    level_partition,
    member_points,
    metrics_report,
    number_of_levels,
    pseudo_frobenius,
    semigroup_type,
)

ROOT = [(0, 0), (1, 1)]
S1 = [(0, 0), (1, 2)]
S2 = [(0, 0), (2, 1)]
S3 = [(0, 0), (1, 1), (2, 2)]


def test_corpus_length_genus_type() -> None:
    expected = {
        tuple(ROOT): (1, 1, 1),
        tuple(S1): (1, 2, 2),
        tuple(S2): (1, 2, 2),
        tuple(S3): (2, 2, 1),
    }
    for pts, (l, g, t) in expected.items():
        s = validate(list(pts))
        assert length(s) == l
        assert genus(s) == g
        assert semigroup_type(s) == t


def test_four_branch_example_metrics() -> None:
    s = read_semigroup("fixtures/n4_example.sgp")
    assert s.conductor == (8, 10, 10, 18)
    assert len(s.small) == 43
    assert length(s) == 10
    assert genus(s) == 36
    assert axis_lengths(s) == (5, 4, 1, 0)
    assert axis_genera(s) == (3, 6, 9, 18)


def test_metrics_report_dict() -> None:
    r = metrics_report(read_semigroup("fixtures/n4_example.sgp"))
    d = r.as_dict()
    assert d == {
        "dim": 4,
        "conductor": [8, 10, 10, 18],
        "conductor_sum": 46,
        "length": 10,
        "genus": 36,
        "axis_lengths": [5, 4, 1, 0],
        "axis_genera": [3, 6, 9, 18],
        "type": None,
    }
    r2 = metrics_report(validate(S3))
    assert r2.as_dict()["type"] == 1
    assert r2.conductor_sum == 4


def test_length_plus_genus_is_conductor_sum() -> None:
    fr = root_frontier()
    for g in range(1, 5):
        for s in fr.members:
            assert length(s) + genus(s) == sum(s.conductor)
            assert genus(s) == g
        fr = expand(fr)


def test_distance_oracle_matches_projection_counts() -> None:
    # chain-length distances between the ideal pairs that define length and
    # genus must agree with the projection-based computations
    fr = root_frontier()
    for _ in range(4):
        for s in fr.members:
            c = s.conductor
            bound = tuple(ci + 1 for ci in c)
            member = member_points(s, pad=1)
            assert distance_oracle(member, cone_points(c, bound)) == length(s)
            assert distance_oracle(full_box_points(bound), member) == genus(s)
            assert distance_oracle(member, member) == 0
        fr = expand(fr)


def test_gapset_levels_count_genus() -> None:
    fr = root_frontier()
    for g in range(1, 5):
        for s in fr.members:
            assert number_of_levels(gapset_clipped(s)) == g
        fr = expand(fr)


def test_gapset_and_levels_frozen_small_case() -> None:
    s3 = validate(S3)
    gaps = gapset_clipped(s3)
    assert gaps == frozenset(
        {(0, 1), (0, 2), (0, INF), (1, 0), (1, 2), (1, INF),
         (2, 0), (2, 1), (INF, 0), (INF, 1)}
    )
    lv = level_partition(gaps)
    assert lv == (
        frozenset({(0, 1), (0, 2), (0, INF), (1, 0), (2, 0), (INF, 0)}),
        frozenset({(1, 2), (1, INF), (2, 1), (INF, 1)}),
    )


def test_pseudo_frobenius_frozen() -> None:
    s3 = validate(S3)
    assert pseudo_frobenius(s3) == ((1, 2), (1, INF), (2, 1), (INF, 1))
    root = validate(ROOT)
    assert pseudo_frobenius(root) == ((0, 1), (0, INF), (1, 0), (INF, 0))


def test_type_counts_pseudo_frobenius_levels() -> None:
    for pts in (ROOT, S1, S2, S3):
        s = validate(pts)
        assert semigroup_type(s) == len(level_partition(pseudo_frobenius(s)))


def test_level_partition_rejects_fully_infinite_point() -> None:
    with pytest.raises(ValueError):
        level_partition([(INF, INF)])


def test_level_partition_of_empty_set() -> None:
    assert level_partition([]) == ()
    assert number_of_levels([]) == 0


def test_dim2_only_guards() -> None:
    n4 = read_semigroup("fixtures/n4_example.sgp")
    with pytest.raises(ValueError):
        gapset_clipped(n4)
    with pytest.raises(ValueError):
        pseudo_frobenius(n4)
    with pytest.raises(ValueError):
        semigroup_type(n4)
    # the report maps the unsupported dimension to a null type instead
    assert metrics_report(n4).as_dict()["type"] is None


def test_box_helpers() -> None:
    full = full_box_points((2, 1))
    assert full == frozenset(
        {(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)}
    )
    assert cone_points((1, 1), (2, 1)) == frozenset({(1, 1), (2, 1)})
    root = validate(ROOT)
    assert (0, 0) in member_points(root)
    assert (2, 2) in member_points(root, pad=1)
