"""Value-semiring closure, embedding dimension, and the Wilf inequality.

The closure operator works on the clipped lattice [0, c+1]^2 where the value
c_i + 1 encodes the infinity class of axis i: sums saturate at the class line
and componentwise minimum treats it as the largest value.  Generation of the
whole semigroup is tested structurally: a set generates S exactly when no
proper good subsemigroup of S contains it, and the maximal proper good
subsemigroups are the track-removal children.  Embedding dimension is the
smallest subset of the irreducible maximals that generates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.signal import fftconvolve

from gsf import metrics
from gsf.core import INF, GoodSemigroup
from gsf.tracks import irreducible_maximals, remove_track, tracks

__all__ = [
    "semiring_closure",
    "clipped_semiring",
    "generates",
    "embedding_dimension",
    "WilfReport",
    "wilf_check",
    "wilf_scan",
]


def _clip_index(value, bound: int) -> int:
    if value == INF:
        return bound + 1
    return min(int(value), bound + 1)


def semiring_closure(generators, conductor) -> frozenset:
    """Least subset of the clipped lattice containing the generators and 0,
    closed under componentwise minimum and saturating addition.

    Coordinates clip to [0, c_i + 1]; c_i + 1 is the infinity class, so inf
    coordinates in the input land there and sums never leave the lattice.
    """
    c1, c2 = (int(v) for v in conductor)
    grid = np.zeros((c1 + 2, c2 + 2), dtype=bool)
    grid[0, 0] = True
    for p in generators:
        x, y = tuple(p)
        grid[_clip_index(x, c1), _clip_index(y, c2)] = True
    while True:
        prev = grid.copy()
        conv = fftconvolve(grid.astype(np.float64), grid.astype(np.float64)) > 0.5
        sums = np.zeros_like(grid)
        sums[: c1 + 1, : c2 + 1] = conv[: c1 + 1, : c2 + 1]
        sums[c1 + 1, : c2 + 1] = conv[c1 + 1 :, : c2 + 1].any(axis=0)
        sums[: c1 + 1, c2 + 1] = conv[: c1 + 1, c2 + 1 :].any(axis=1)
        sums[c1 + 1, c2 + 1] = conv[c1 + 1 :, c2 + 1 :].any()
        grid |= sums
        ge_y = np.flip(np.logical_or.accumulate(np.flip(grid, 1), 1), 1)
        ge_x = np.flip(np.logical_or.accumulate(np.flip(grid, 0), 0), 0)
        grid |= ge_y & ge_x
        if (grid == prev).all():
            break
    return frozenset((int(x), int(y)) for x, y in np.argwhere(grid))


def clipped_semiring(sgp: GoodSemigroup) -> frozenset:
    """All members of the value semiring as clipped lattice classes."""
    if sgp.dim != 2:
        raise ValueError("clipped semiring view is only implemented for dimension 2")
    c1, c2 = sgp.conductor
    grid = sgp.box_grid((c1 + 1, c2 + 1))
    return frozenset((int(x), int(y)) for x, y in np.argwhere(grid))


def _children(sgp: GoodSemigroup) -> tuple:
    trs = tracks(sgp)
    if not trs:
        raise AssertionError("a good semigroup always has at least one track")
    return tuple(remove_track(sgp, t) for t in trs)


def generates(sgp: GoodSemigroup, gens) -> bool:
    """True when no proper good subsemigroup of sgp contains every generator.

    Every proper good subsemigroup lies inside a maximal one, and those are
    exactly the track-removal children, so it suffices that each child misses
    at least one generator.
    """
    pts = [tuple(p) for p in gens]
    return all(any(not child.contains(p) for p in pts)
               for child in _children(sgp))


def _point_key(p):
    return tuple((1, 0) if x == INF else (0, int(x)) for x in p)


def embedding_dimension(sgp: GoodSemigroup) -> tuple[int, tuple]:
    """Size of a minimum generating subset of the irreducible maximals, with
    one witness subset."""
    if sgp.dim != 2:
        raise ValueError("embedding dimension is only implemented for dimension 2")
    if sgp.conductor == (0, 0):
        raise ValueError("the full monoid has no embedding dimension here")
    anchors = irreducible_maximals(sgp)
    missed = []
    for child in _children(sgp):
        m = frozenset(a for a in anchors if not child.contains(a))
        if not m:
            raise AssertionError("irreducible maximals fail to generate")
        missed.append(m)
    for size in range(1, len(anchors) + 1):
        for combo in itertools.combinations(anchors, size):
            chosen = set(combo)
            if all(chosen & m for m in missed):
                return size, tuple(sorted(combo, key=_point_key))
    raise AssertionError("anchor subset search exhausted without a generating set")


@dataclass(frozen=True)
class WilfReport:
    edim: int
    witness: tuple
    conductor_sum: int
    length: int
    genus: int
    rhs: Fraction
    holds: bool

    @property
    def lhs(self) -> int:
        return self.edim

    def as_dict(self) -> dict:
        return {
            "edim": self.edim,
            "witness": [["inf" if x == INF else int(x) for x in p] for p in self.witness],
            "conductor_sum": self.conductor_sum,
            "length": self.length,
            "genus": self.genus,
            "rhs": {"num": self.rhs.numerator, "den": self.rhs.denominator},
            "holds": self.holds,
        }


def wilf_check(sgp: GoodSemigroup) -> WilfReport:
    """Exact test of edim >= conductor_sum / (conductor_sum - genus)."""
    if sgp.conductor == tuple([0] * sgp.dim):
        raise ValueError("the full monoid is out of scope for the inequality")
    edim, witness = embedding_dimension(sgp)
    c_s = sgp.conductor_sum
    g = metrics.genus(sgp)
    l = c_s - g
    if l <= 0:
        raise ValueError("degenerate length")
    rhs = Fraction(c_s, l)
    holds = edim * l >= c_s
    return WilfReport(edim, witness, c_s, l, g, rhs, holds)


def wilf_scan(max_genus: int, threads: int = 1) -> list:
    """All Wilf violations in the tree up to max_genus, as (semigroup, report)."""
    from gsf.enumeration import expand, root_frontier

    violations = []
    frontier = root_frontier()
    while True:
        for sgp in frontier.members:
            report = wilf_check(sgp)
            if not report.holds:
                violations.append((sgp, report))
        if frontier.genus >= max_genus:
            break
        frontier = expand(frontier, threads=threads)
    return violations
