"""Canonical small-element model of good subsemigroups of N^d."""
from __future__ import annotations

import functools
import json
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

INF = float("inf")

# Grid cells we are willing to allocate while validating one semigroup.
_MAX_BOX_CELLS = 50_000_000

__all__ = [
    "INF",
    "ValidationError",
    "GoodSemigroup",
    "DeltaSets",
    "parse_points",
    "parse_semigroup",
    "read_semigroup",
    "to_text",
    "to_json",
    "validate",
    "membership",
    "infinity_projection",
    "finite_maximals",
    "infinite_maximals",
    "delta_sets",
    "delta_empty",
    "format_point",
    "format_points",
]


class ValidationError(ValueError):
    """Axiom failure raised by validate(), carrying the axiom code and a witness."""

    def __init__(self, axiom: str, witness=None, detail: str = ""):
        self.axiom = axiom
        self.witness = witness
        msg = f"not a good semigroup: {axiom}"
        if witness is not None:
            msg += f", witness {_fmt_witness(witness)}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


def _fmt_witness(w) -> str:
    if isinstance(w, tuple) and w and isinstance(w[0], tuple):
        return " ".join(format_point(p) if isinstance(p, tuple) else str(p) for p in w)
    if isinstance(w, tuple):
        return format_point(w)
    return str(w)


def format_point(p: Sequence) -> str:
    """Render a point as "(1,2)" with infinite coordinates printed as inf."""
    return "(" + ",".join("inf" if x == INF else str(int(x)) for x in p) + ")"


def format_points(pts: Iterable[Sequence]) -> str:
    return "{" + ", ".join(format_point(p) for p in sorted(pts)) + "}"


def _suffix_or(a: np.ndarray, axis: int) -> np.ndarray:
    # out[m] = any a[m'] with m'_axis >= m_axis, other coordinates fixed
    rev = np.flip(a, axis=axis)
    return np.flip(np.logical_or.accumulate(rev, axis=axis), axis=axis)


def _suffix_and(a: np.ndarray, axis: int) -> np.ndarray:
    rev = np.flip(a, axis=axis)
    return np.flip(np.logical_and.accumulate(rev, axis=axis), axis=axis)


@dataclass(frozen=True)
class GoodSemigroup:
    """Immutable good semigroup, represented by its sorted tuple of small elements.

    The small elements are the members below or equal to the conductor; they
    determine the whole semigroup through clipping: alpha is a member iff
    min(alpha, conductor) is small. Instances are produced by validate() or
    parse_semigroup(); the raw constructor performs no checking.
    """

    dim: int
    small: tuple[tuple[int, ...], ...]

    @classmethod
    def _trusted(cls, dim: int, small: Iterable[Sequence[int]]) -> "GoodSemigroup":
        return cls(dim, tuple(sorted(tuple(int(x) for x in p) for p in small)))

    @functools.cached_property
    def small_set(self) -> frozenset:
        return frozenset(self.small)

    @functools.cached_property
    def conductor(self) -> tuple[int, ...]:
        arr = self._small_array
        return tuple(int(v) for v in arr.max(axis=0))

    @property
    def conductor_sum(self) -> int:
        return sum(self.conductor)

    @property
    def frobenius(self) -> tuple[int, ...]:
        return tuple(c - 1 for c in self.conductor)

    @functools.cached_property
    def multiplicity(self) -> tuple[int, ...]:
        """Componentwise minimum of the nonzero members; (1,...,1) for N^d."""
        arr = self._small_array
        nz = arr[arr.any(axis=1)]
        if nz.size == 0:
            return (1,) * self.dim
        return tuple(int(v) for v in nz.min(axis=0))

    @functools.cached_property
    def _small_array(self) -> np.ndarray:
        return np.array(self.small, dtype=np.int64).reshape(len(self.small), self.dim)

    @functools.cached_property
    def grid(self) -> np.ndarray:
        """Boolean membership grid over the conductor box [0, c]."""
        c = self.conductor
        g = np.zeros(tuple(ci + 1 for ci in c), dtype=bool)
        g[tuple(self._small_array.T)] = True
        return g

    def box_grid(self, bound: Sequence[int]) -> np.ndarray:
        """Membership grid over [0, bound], bound >= conductor componentwise."""
        c = self.conductor
        idx = [np.minimum(np.arange(int(b) + 1), ci) for b, ci in zip(bound, c)]
        return self.grid[np.ix_(*idx)]

    def contains(self, point: Sequence[int]) -> bool:
        p = tuple(point)
        if len(p) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(p)}")
        clipped = []
        for x, ci in zip(p, self.conductor):
            if x == INF:
                clipped.append(ci)
                continue
            x = int(x)
            if x < 0:
                return False
            clipped.append(min(x, ci))
        return tuple(clipped) in self.small_set

    def key(self) -> tuple:
        return self.small

    def __repr__(self) -> str:
        return f"GoodSemigroup(dim={self.dim}, small={format_points(self.small)})"


def membership(sgp: GoodSemigroup, point: Sequence[int]) -> bool:
    """Whether point belongs to the semigroup (clip against the conductor)."""
    return sgp.contains(point)


def _normalize_points(points: Iterable[Sequence[int]]) -> tuple[int, list[tuple[int, ...]]]:
    pts = []
    dim = None
    for p in points:
        t = tuple(p)
        if dim is None:
            dim = len(t)
            if dim == 0:
                raise ValueError("zero-dimensional point")
        elif len(t) != dim:
            raise ValueError(f"inconsistent dimensions: {len(t)} vs {dim}")
        out = []
        for x in t:
            if isinstance(x, float) and not float(x).is_integer():
                raise ValueError(f"non-integer coordinate in {t}")
            xi = int(x)
            if xi < 0:
                raise ValueError(f"negative coordinate in {t}")
            out.append(xi)
        pts.append(tuple(out))
    if dim is None:
        raise ValueError("empty point list")
    return dim, pts


def validate(points: Iterable[Sequence[int]]) -> GoodSemigroup:
    """Check the good-semigroup axioms and return the canonical representation.

    Raises ValidationError naming the violated axiom (zero-missing, locality,
    conductor-missing, G1, additive, G3) together with a witness. Inputs whose
    listed maximum exceeds the true conductor are accepted and trimmed to the
    canonical small set. The degenerate set {0} is accepted as N^d with a
    warning.
    """
    dim, raw = _normalize_points(points)
    pts = sorted(set(raw))
    zero = (0,) * dim
    if zero not in pts:
        raise ValidationError("zero-missing", detail="0 must be listed")
    arr = np.array(pts, dtype=np.int64)
    cmax = tuple(int(v) for v in arr.max(axis=0))
    cells = 1
    for ci in cmax:
        cells *= ci + 1
    if cells > _MAX_BOX_CELLS:
        raise ValueError(f"conductor box too large ({cells} cells)")
    if len(pts) == cells:
        # the whole box is listed, so the true conductor is 0: this is N^d
        warnings.warn("small set describes the full monoid N^d", stacklevel=2)
        return GoodSemigroup(dim, (zero,))
    for p in pts:
        if p != zero and any(x == 0 for x in p):
            raise ValidationError("locality", p, "nonzero member with a zero coordinate")

    grid = np.zeros(tuple(ci + 1 for ci in cmax), dtype=bool)
    grid[tuple(arr.T)] = True

    _check_min_closure(grid, pts, dim)
    if cmax not in set(pts):
        raise ValidationError("conductor-missing", cmax,
                              "componentwise maximum of the listed points must be listed")
    _check_additive(grid, arr, cmax, pts)
    _check_g3(grid, arr, cmax, pts, dim)

    # Trim non-minimal boxes down to the true conductor.
    full = grid.copy()
    for ax in range(dim):
        full = _suffix_and(full, ax)
    idx = np.argwhere(full)
    true_c = tuple(int(v) for v in idx.min(axis=0))
    if not full[true_c]:
        raise ValidationError("conductor-missing", true_c,
                              "componentwise minimal full corner is not full")
    if true_c != cmax:
        sub = grid[tuple(slice(0, ci + 1) for ci in true_c)]
        pts = [tuple(int(x) for x in p) for p in np.argwhere(sub)]
    return GoodSemigroup(dim, tuple(sorted(pts)))


def _check_min_closure(grid: np.ndarray, pts: list, dim: int) -> None:
    # cand[m] per axis i: some member matches coordinate i exactly and
    # dominates the others; all axes at once forces min(members) == m.
    cand = np.ones_like(grid)
    for i in range(dim):
        w = grid.copy()
        for j in range(dim):
            if j != i:
                w = _suffix_or(w, j)
        cand &= w
    if not (cand & ~grid).any():
        return
    seen = set(pts)
    for a in pts:
        for b in pts:
            m = tuple(min(x, y) for x, y in zip(a, b))
            if m not in seen:
                raise ValidationError("G1", (a, b), "componentwise minimum missing")
    raise AssertionError("min-closure grid criterion disagrees with pair scan")


def _check_additive(grid: np.ndarray, arr: np.ndarray, cmax, pts: list) -> None:
    n, dim = arr.shape
    sums = arr[:, None, :] + arr[None, :, :]
    np.minimum(sums, np.array(cmax, dtype=np.int64), out=sums)
    flat = sums.reshape(n * n, dim)
    ok = grid[tuple(flat.T)]
    if ok.all():
        return
    seen = set(pts)
    for a in pts:
        for b in pts:
            s = tuple(min(x + y, ci) for x, y, ci in zip(a, b, cmax))
            if s not in seen:
                raise ValidationError("additive", (a, b), "clipped sum missing")
    raise AssertionError("additive grid criterion disagrees with pair scan")


def _check_g3(grid: np.ndarray, arr: np.ndarray, cmax, pts: list, dim: int) -> None:
    if dim == 2:
        _check_g3_dim2(arr, cmax)
        return
    n = len(pts)
    for ai in range(n):
        a = pts[ai]
        for bi in range(ai + 1, n):
            b = pts[bi]
            for i in range(dim):
                if a[i] != b[i] or a[i] >= cmax[i]:
                    continue
                if not _g3_witness_exists(pts, a, b, i):
                    raise ValidationError("G3", (a, b, i),
                                          "no member escapes the shared coordinate")


def _g3_witness_exists(pts: list, a, b, i: int) -> bool:
    for s in pts:
        if s[i] <= a[i]:
            continue
        ok = True
        for j, (aj, bj) in enumerate(zip(a, b)):
            if j == i:
                continue
            if aj != bj:
                if s[j] != min(aj, bj):
                    ok = False
                    break
            elif s[j] < aj:
                ok = False
                break
        if ok:
            return True
    return False


def _check_g3_dim2(arr: np.ndarray, cmax) -> None:
    c1, c2 = cmax
    xs, ys = arr[:, 0], arr[:, 1]
    rowmaxx = np.full(c2 + 1, -1, dtype=np.int64)
    colmaxy = np.full(c1 + 1, -1, dtype=np.int64)
    np.maximum.at(rowmaxx, ys, xs)
    np.maximum.at(colmaxy, xs, ys)
    # A pair sharing x = v < c1 with no escape exists iff some member (v, y)
    # has a strictly higher partner in its column while row y tops out at <= v.
    bad1 = (xs < c1) & (ys < colmaxy[xs]) & (rowmaxx[ys] <= xs)
    bad2 = (ys < c2) & (xs < rowmaxx[ys]) & (colmaxy[xs] <= ys)
    if not bad1.any() and not bad2.any():
        return
    if bad1.any():
        k = int(np.argwhere(bad1)[0][0])
        v, y = int(xs[k]), int(ys[k])
        partner = (v, int(colmaxy[v]))
        raise ValidationError("G3", ((v, y), partner, 0),
                              "no member escapes the shared coordinate")
    k = int(np.argwhere(bad2)[0][0])
    x, v = int(xs[k]), int(ys[k])
    partner = (int(rowmaxx[v]), v)
    raise ValidationError("G3", ((x, v), partner, 1),
                          "no member escapes the shared coordinate")


def parse_points(text: str) -> list[tuple[int, ...]]:
    """Parse a small-set document: one point per line, or JSON {"small": [...]}."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad JSON document: {exc}") from exc
        if not isinstance(doc, dict) or "small" not in doc:
            raise ValueError('JSON document must be an object with a "small" array')
        return [tuple(p) for p in doc["small"]]
    pts = []
    dim = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            point = tuple(int(tok) for tok in body.split())
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        if any(x < 0 for x in point):
            raise ValueError(f"line {lineno}: negative coordinate in {point}")
        if dim is None:
            dim = len(point)
        elif len(point) != dim:
            raise ValueError(f"line {lineno}: expected {dim} coordinates, got {len(point)}")
        pts.append(point)
    if not pts:
        raise ValueError("document lists no points")
    return pts


def parse_semigroup(text: str) -> GoodSemigroup:
    """Parse and validate a small-set document."""
    return validate(parse_points(text))


def read_semigroup(path) -> GoodSemigroup:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_semigroup(fh.read())


def to_text(sgp: GoodSemigroup) -> str:
    return "\n".join(" ".join(str(x) for x in p) for p in sgp.small) + "\n"


def to_json(sgp: GoodSemigroup) -> str:
    return json.dumps({"small": [list(p) for p in sgp.small]})


def infinity_projection(sgp: GoodSemigroup, axis: int) -> frozenset:
    """Finite values the semigroup attains on coordinate `axis` after saturating
    all earlier coordinates: {x < c_axis : some small s has s_j = c_j for j < axis
    and s_axis = x}."""
    c = sgp.conductor
    if not 0 <= axis < sgp.dim:
        raise ValueError(f"axis {axis} out of range")
    vals = set()
    for s in sgp.small:
        if all(s[j] == c[j] for j in range(axis)) and s[axis] < c[axis]:
            vals.add(s[axis])
    return frozenset(vals)


def _upper_delta_nonempty_grid(sgp: GoodSemigroup) -> np.ndarray:
    # (n, dim) flags: Delta_i of each small element is nonempty.
    arr = sgp._small_array
    n, dim = arr.shape
    c = np.array(sgp.conductor, dtype=np.int64)
    thr = np.minimum(arr + 1, c)
    ge = arr[None, :, :] >= thr[:, None, :]
    out = np.zeros((n, dim), dtype=bool)
    for i in range(dim):
        eq = arr[None, :, i] == arr[:, None, i]
        others = [j for j in range(dim) if j != i]
        dom = ge[:, :, others].all(axis=2) if others else np.ones((n, n), bool)
        out[:, i] = (eq & dom).any(axis=1)
    return out

def finite_maximals(sgp: GoodSemigroup) -> tuple:
    """Members with every upper Delta section empty; all of them are small."""
    flags = _upper_delta_nonempty_grid(sgp)
    keep = ~flags.any(axis=1)
    return tuple(sorted(sgp.small[i] for i in range(len(sgp.small)) if keep[i]))


def infinite_maximals(sgp: GoodSemigroup) -> tuple:
    """Unbounded-line maximals of a plane semigroup, clipped at c+1.

    Returns points (x, inf) for every unbounded column and (inf, y) for every
    unbounded row, with x (resp. y) listed exactly below the conductor and the
    value c_i + 1 standing for the whole class beyond it.
    """
    if sgp.dim != 2:
        raise ValueError("infinite maximals are only defined for dimension 2")
    c1, c2 = sgp.conductor
    grid = sgp.grid
    cols = [x for x in range(c1) if grid[x, c2]] + [c1, c1 + 1]
    rows = [y for y in range(c2) if grid[c1, y]] + [c2, c2 + 1]
    return tuple([(x, INF) for x in cols] + [(INF, y) for y in rows])


@dataclass(frozen=True)
class DeltaSets:
    """Clipped one-point Delta sections: upper[i] fixes coordinate i and raises
    the others, lower[i] fixes coordinate i and lowers the others. Points with
    coordinate c_i + 1 stand for the class beyond the conductor."""

    point: tuple
    upper: tuple
    lower: tuple

    @property
    def union_upper(self) -> frozenset:
        out = frozenset()
        for s in self.upper:
            out |= s
        return out

    @property
    def empty(self) -> bool:
        return all(not s for s in self.upper)


def _extended_box_grid(sgp: GoodSemigroup) -> np.ndarray:
    # membership over [0, c+1]^d; index c_i + 1 is the beyond-conductor class
    return sgp.box_grid(tuple(ci + 1 for ci in sgp.conductor))


def delta_sets(sgp: GoodSemigroup, point: Sequence) -> DeltaSets:
    """Delta sections of one point, clipped to the box [0, c+1]^d.

    Finite coordinates must lie in [0, c_i + 1]. For dim 2 the point may have
    one infinite coordinate; then the upper sections are empty and the lower
    section along the infinite axis is the whole member line of the finite
    coordinate, the other lower section empty.
    """
    p = tuple(point)
    if len(p) != sgp.dim:
        raise ValueError(f"expected {sgp.dim} coordinates, got {len(p)}")
    c = sgp.conductor
    ext = _extended_box_grid(sgp)
    infinite_axes = [i for i, x in enumerate(p) if x == INF]
    if infinite_axes:
        if sgp.dim != 2 or len(infinite_axes) != 1:
            raise ValueError("only one infinite coordinate in dimension 2 is supported")
        inf_ax = infinite_axes[0]
        fin_ax = 1 - inf_ax
        v = int(p[fin_ax])
        if not 0 <= v <= c[fin_ax] + 1:
            raise ValueError(f"coordinate {v} outside [0, c+1]")
        line = []
        for t in range(c[inf_ax] + 2):
            q = [0, 0]
            q[fin_ax] = v
            q[inf_ax] = t
            if ext[tuple(q)]:
                line.append(tuple(q))
        upper = (frozenset(), frozenset())
        lower = [frozenset(), frozenset()]
        lower[inf_ax] = frozenset(line)
        return DeltaSets(p, upper, tuple(lower))

    q = []
    for i, x in enumerate(p):
        xi = int(x)
        if not 0 <= xi <= c[i] + 1:
            raise ValueError(f"coordinate {xi} outside [0, c+1]")
        q.append(xi)
    coords = np.argwhere(ext)
    upper = []
    lower = []
    for i in range(sgp.dim):
        eq = coords[:, i] == q[i]
        up = eq.copy()
        dn = eq.copy()
        for j in range(sgp.dim):
            if j == i:
                continue
            if q[j] == c[j] + 1:
                up &= coords[:, j] >= q[j]
            else:
                up &= coords[:, j] > q[j]
            dn &= coords[:, j] < q[j]
        upper.append(frozenset(tuple(int(x) for x in row) for row in coords[up]))
        lower.append(frozenset(tuple(int(x) for x in row) for row in coords[dn]))
    return DeltaSets(tuple(q), tuple(upper), tuple(lower))


def delta_empty(sgp: GoodSemigroup, point: Sequence[int], axis: int | None = None) -> bool:
    """Exact emptiness of upper Delta sections for any integer point, clipping
    against the conductor; negative coordinates give empty sections."""
    p = tuple(int(x) for x in point)
    if len(p) != sgp.dim:
        raise ValueError(f"expected {sgp.dim} coordinates, got {len(p)}")
    arr = sgp._small_array
    c = sgp.conductor
    axes = range(sgp.dim) if axis is None else [axis]
    for i in axes:
        if p[i] < 0:
            continue
        cond = arr[:, i] == min(p[i], c[i])
        for j in range(sgp.dim):
            if j == i:
                continue
            cond &= arr[:, j] >= min(p[j] + 1, c[j])
        if cond.any():
            return False
    return True
