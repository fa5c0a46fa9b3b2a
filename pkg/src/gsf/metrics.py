"""Metric invariants: length, genus, distance, level partitions, type."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from gsf.core import INF, GoodSemigroup, delta_empty, infinity_projection

__all__ = [
    "axis_lengths",
    "axis_genera",
    "length",
    "genus",
    "MetricsReport",
    "metrics_report",
    "member_points",
    "full_box_points",
    "cone_points",
    "gapset_clipped",
    "distance_oracle",
    "level_partition",
    "number_of_levels",
    "pseudo_frobenius",
    "semigroup_type",
    "canonical_ideal",
]


def axis_lengths(sgp: GoodSemigroup) -> tuple[int, ...]:
    return tuple(len(infinity_projection(sgp, i)) for i in range(sgp.dim))


def axis_genera(sgp: GoodSemigroup) -> tuple[int, ...]:
    c = sgp.conductor
    return tuple(ci - li for ci, li in zip(c, axis_lengths(sgp)))


def length(sgp: GoodSemigroup) -> int:
    """Distance of the semigroup above its conductor cone, as a sum of axis
    contributions."""
    return sum(axis_lengths(sgp))


def genus(sgp: GoodSemigroup) -> int:
    """Distance of the gap set: conductor sum minus length."""
    return sgp.conductor_sum - length(sgp)


@dataclass(frozen=True)
class MetricsReport:
    dim: int
    conductor: tuple[int, ...]
    conductor_sum: int
    length: int
    genus: int
    axis_lengths: tuple[int, ...]
    axis_genera: tuple[int, ...]
    type: int | None

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "conductor": list(self.conductor),
            "conductor_sum": self.conductor_sum,
            "length": self.length,
            "genus": self.genus,
            "axis_lengths": list(self.axis_lengths),
            "axis_genera": list(self.axis_genera),
            "type": self.type,
        }


def metrics_report(sgp: GoodSemigroup) -> MetricsReport:
    t = semigroup_type(sgp) if sgp.dim == 2 else None
    return MetricsReport(
        dim=sgp.dim,
        conductor=sgp.conductor,
        conductor_sum=sgp.conductor_sum,
        length=length(sgp),
        genus=genus(sgp),
        axis_lengths=axis_lengths(sgp),
        axis_genera=axis_genera(sgp),
        type=t,
    )


def member_points(sgp: GoodSemigroup, pad: int = 1) -> frozenset:
    """Members inside [0, c+pad], tails encoded by the boundary rows."""
    bound = tuple(ci + pad for ci in sgp.conductor)
    grid = sgp.box_grid(bound)
    return frozenset(tuple(int(x) for x in p) for p in np.argwhere(grid))


def full_box_points(bound: Sequence[int]) -> frozenset:
    """Every lattice point of [0, bound]: the ambient monoid, clipped."""
    grids = np.meshgrid(*[np.arange(int(b) + 1) for b in bound], indexing="ij")
    stacked = np.stack([g.ravel() for g in grids], axis=1)
    return frozenset(tuple(int(x) for x in p) for p in stacked)


def cone_points(corner: Sequence[int], bound: Sequence[int]) -> frozenset:
    """Points of corner + N^d inside [0, bound]."""
    out = set()
    for p in full_box_points(bound):
        if all(x >= k for x, k in zip(p, corner)):
            out.add(p)
    return frozenset(out)


def gapset_clipped(sgp: GoodSemigroup) -> frozenset:
    """Gaps inside [0, c] plus one marker per unbounded gap line: (x, inf) for a
    column whose tail misses the semigroup, (inf, y) for such a row (dim 2)."""
    if sgp.dim != 2:
        raise ValueError("clipped gap sets are only defined for dimension 2")
    c1, c2 = sgp.conductor
    grid = sgp.grid
    out = set()
    for x in range(c1 + 1):
        for y in range(c2 + 1):
            if not grid[x, y]:
                out.add((x, y))
    for x in range(c1):
        if not grid[x, c2]:
            out.add((x, INF))
    for y in range(c2):
        if not grid[c1, y]:
            out.add((INF, y))
    return frozenset(out)


def _le(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lt(a, b) -> bool:
    return a != b and _le(a, b)


def _ideal_conductor(pts: frozenset, bound: tuple[int, ...]) -> tuple[int, ...]:
    grid = np.zeros(tuple(b + 1 for b in bound), dtype=bool)
    for p in pts:
        grid[p] = True
    full = grid
    for ax in range(len(bound)):
        rev = np.flip(full, axis=ax)
        full = np.flip(np.logical_and.accumulate(rev, axis=ax), axis=ax)
    idx = np.argwhere(full)
    if idx.size == 0:
        raise ValueError("ideal has no full corner inside its box")
    cond = tuple(int(v) for v in idx.min(axis=0))
    if not full[cond]:
        raise ValueError("ideal is not min-closed at its full corner")
    return cond


def _chain_length(pts: frozenset, start, alpha, pick_high: bool) -> int:
    cur = start
    steps = 0
    limit = len(pts) + 1
    while cur != alpha:
        cands = [z for z in pts if _lt(cur, z) and _le(z, alpha)]
        minimals = [z for z in cands if not any(w != z and _le(w, z) for w in cands)]
        cur = max(minimals) if pick_high else min(minimals)
        steps += 1
        if steps > limit:
            raise AssertionError("saturated chain failed to terminate")
    return steps


def distance_oracle(big: Iterable[Sequence[int]], small: Iterable[Sequence[int]]) -> int:
    """Distance d(E \\ F) between nested clipped relative ideals, computed as the
    difference of saturated chain lengths from each minimum up to a common
    reference point above both conductors. Both greedy tie-breaks (always the
    lexicographically first or always the last minimal cover) must agree, which
    is asserted."""
    E = frozenset(tuple(int(x) for x in p) for p in big)
    F = frozenset(tuple(int(x) for x in p) for p in small)
    if not F:
        raise ValueError("the smaller ideal is empty")
    if not F <= E:
        raise ValueError("ideals are not nested")
    dim = len(next(iter(F)))
    bound = tuple(max(p[i] for p in E) for i in range(dim))
    cond_e = _ideal_conductor(E, bound)
    cond_f = _ideal_conductor(F, bound)
    alpha = tuple(max(a, b) + 1 for a, b in zip(cond_e, cond_f))
    if not all(a <= b for a, b in zip(alpha, bound)):
        raise ValueError("ideal boxes too small for a common reference point")
    if alpha not in E or alpha not in F:
        raise ValueError("reference point missing from an ideal")
    lengths = []
    for pts in (E, F):
        start = tuple(min(p[i] for p in pts) for i in range(dim))
        if start not in pts:
            raise ValueError("ideal is not min-closed at its minimum")
        lo = _chain_length(pts, start, alpha, pick_high=False)
        hi = _chain_length(pts, start, alpha, pick_high=True)
        if lo != hi:
            raise AssertionError(f"saturated chains disagree: {lo} vs {hi}")
        lengths.append(lo)
    d = lengths[0] - lengths[1]
    if d < 0:
        raise AssertionError("negative distance for nested ideals")
    return d


def _ll(a, b) -> bool:
    # strict in every coordinate, except that inf == inf also counts
    return all((x == INF and y == INF) or (x != INF and x < y) for x, y in zip(a, b))


def level_partition(points: Iterable[Sequence]) -> tuple[frozenset, ...]:
    """Partition a co-cone set into levels, lowest first.

    Accepts finite points of any dimension; in dimension 2 coordinates may be
    inf, but no point may be infinite in every coordinate. Levels are peeled
    from the top: take the maximals of what remains, drop those that are a
    componentwise minimum of two other maximals, and repeat.
    """
    pts = set()
    for p in points:
        t = tuple(INF if x == INF else int(x) for x in p)
        if all(x == INF for x in t):
            raise ValueError("point with every coordinate infinite")
        pts.add(t)
    peeled = []
    remaining = set(pts)
    while remaining:
        b = [a for a in remaining if not any(_ll(a, z) for z in remaining if z != a)]
        bset = set(b)
        dropped = set()
        for a in b:
            others = [z for z in b if z != a]
            found = False
            for i in range(len(others)):
                for j in range(i + 1, len(others)):
                    m = tuple(min(x, y) for x, y in zip(others[i], others[j]))
                    if m == a:
                        found = True
                        break
                if found:
                    break
            if found:
                dropped.add(a)
        level = bset - dropped
        if not level:
            raise AssertionError("level extraction stalled")
        peeled.append(frozenset(level))
        remaining -= level
    return tuple(reversed(peeled))


def number_of_levels(points: Iterable[Sequence]) -> int:
    return len(level_partition(points))


def pseudo_frobenius(sgp: GoodSemigroup) -> tuple:
    """Gaps that every nonzero member pushes back into the semigroup, clipped:
    exact points inside [0, c] plus (x, inf) / (inf, y) markers for gap lines
    whose whole tail qualifies (dim 2)."""
    if sgp.dim != 2:
        raise ValueError("pseudo-frobenius sets are only defined for dimension 2")
    c1, c2 = sgp.conductor
    grid = sgp.grid
    nz = [s for s in sgp.small if any(s)]
    out = set()
    for x in range(c1 + 1):
        for y in range(c2 + 1):
            if grid[x, y]:
                continue
            if all(grid[min(x + s1, c1), min(y + s2, c2)] for s1, s2 in nz):
                out.add((x, y))
    for x in range(c1):
        if not grid[x, c2] and all(grid[min(x + s1, c1), c2] for s1, _ in nz):
            out.add((x, INF))
    for y in range(c2):
        if not grid[c1, y] and all(grid[c1, min(y + s2, c2)] for _, s2 in nz):
            out.add((INF, y))
    return tuple(sorted(out))


def semigroup_type(sgp: GoodSemigroup) -> int:
    """Number of levels of the clipped pseudo-frobenius set."""
    pf = pseudo_frobenius(sgp)
    if not pf:
        raise ValueError("empty pseudo-frobenius set")
    return number_of_levels(pf)


def canonical_ideal(sgp: GoodSemigroup) -> frozenset:
    """Points alpha of [0, c+1]^2 with every upper Delta section of f - alpha
    empty, f being the frobenius corner."""
    if sgp.dim != 2:
        raise ValueError("canonical ideals are only defined for dimension 2")
    f1, f2 = sgp.frobenius
    out = set()
    for x in range(sgp.conductor[0] + 2):
        for y in range(sgp.conductor[1] + 2):
            if delta_empty(sgp, (f1 - x, f2 - y)):
                out.add((x, y))
    return frozenset(out)
