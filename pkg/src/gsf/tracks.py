"""Track calculus on plane good semigroups: irreducibles, tracks, removal, parents."""
from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from gsf import metrics
from gsf.core import INF, GoodSemigroup, validate

__all__ = [
    "Track",
    "irreducibles",
    "irreducible_maximals",
    "piece_of_track",
    "tracks",
    "beyond_tracks",
    "favored_tracks",
    "remove_track",
    "special_parents",
    "format_track",
]


@dataclass(frozen=True)
class Track:
    """A track: its anchor sequence, the member points it sweeps (clipped to the
    working box [0, 2c+1]), and the beyond / favored flags."""

    anchors: tuple
    swept: frozenset
    beyond: bool
    favored: bool

    def __repr__(self) -> str:
        return format_track(self)


def format_track(track: Track) -> str:
    parts = []
    for a in track.anchors:
        parts.append("(" + ",".join("inf" if x == INF else str(int(x)) for x in a) + ")")
    return "T(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class _Workspace:
    sgp: GoodSemigroup
    X: int
    Y: int
    M: np.ndarray          # membership over [0, X] x [0, Y], boundary = tails
    BAD: np.ndarray        # member and reducible
    colred: np.ndarray     # (x, inf) objects that split
    rowred: np.ndarray
    vcol: np.ndarray       # unbounded columns
    wrow: np.ndarray
    maxbady: np.ndarray
    maxbadx: np.ndarray
    badleft: np.ndarray    # some bad point strictly left in the row
    badbelow: np.ndarray
    anchors: tuple


@functools.lru_cache(maxsize=512)
def _workspace(sgp: GoodSemigroup) -> _Workspace:
    if sgp.dim != 2:
        raise ValueError("tracks are only defined for dimension 2")
    c1, c2 = sgp.conductor
    X, Y = 2 * c1 + 1, 2 * c2 + 1
    M = sgp.box_grid((X, Y))
    NZ = M.copy()
    NZ[0, 0] = False
    conv = fftconvolve(NZ.astype(np.float64), NZ.astype(np.float64))
    RED = conv[: X + 1, : Y + 1] > 0.5
    BAD = M & RED

    vcol = M[:, Y].copy()
    wrow = M[X, :].copy()
    p1nz = NZ.any(axis=1)
    p2nz = NZ.any(axis=0)
    colred = np.convolve(vcol.astype(np.float64), p1nz.astype(np.float64))[: X + 1] > 0.5
    rowred = np.convolve(wrow.astype(np.float64), p2nz.astype(np.float64))[: Y + 1] > 0.5

    ys = np.arange(Y + 1)
    xs = np.arange(X + 1)
    maxbady = np.where(BAD, ys[None, :], -1).max(axis=1)
    maxbadx = np.where(BAD, xs[:, None], -1).max(axis=0)
    badleft = np.zeros_like(BAD)
    badleft[1:, :] = np.logical_or.accumulate(BAD, axis=0)[:-1, :]
    badbelow = np.zeros_like(BAD)
    badbelow[:, 1:] = np.logical_or.accumulate(BAD, axis=1)[:, :-1]

    fins = []
    for p in _finite_maximal_points(sgp):
        if p != (0, 0) and not RED[p]:
            fins.append(p)
    cols = [int(x) for x in range(X + 1) if vcol[x] and not colred[x]]
    rows = [int(y) for y in range(Y + 1) if wrow[y] and not rowred[y]]
    anchors = tuple([(x, INF) for x in cols] + sorted(fins) + [(INF, y) for y in rows])
    return _Workspace(sgp, X, Y, M, BAD, colred, rowred, vcol, wrow,
                      maxbady, maxbadx, badleft, badbelow, anchors)


def _finite_maximal_points(sgp: GoodSemigroup) -> list:
    from gsf.core import finite_maximals
    return list(finite_maximals(sgp))


def irreducibles(sgp: GoodSemigroup) -> frozenset:
    """All finite irreducible members; they live inside [0, c+e-1]."""
    ws = _workspace(sgp)
    e1, e2 = sgp.multiplicity
    c1, c2 = sgp.conductor
    good = ws.M & ~ws.BAD
    good[0, 0] = False
    out = set()
    for x, y in np.argwhere(good[: c1 + e1, : c2 + e2]):
        out.add((int(x), int(y)))
    return frozenset(out)


def irreducible_maximals(sgp: GoodSemigroup) -> tuple:
    """Anchor alphabet: irreducible finite maximals plus irreducible unbounded
    lines, with exact coordinates (an irreducible line can sit past c+1)."""
    return _workspace(sgp).anchors


def _incomparable_successor(a, b) -> bool:
    ax, ay = a
    bx, by = b
    if ax == INF:
        return False                     # a row anchor closes the track
    if ay == INF:
        if by == INF:
            return False                 # two column anchors are comparable
        return True if bx == INF else bx > ax
    if bx == INF:
        return by < ay
    return bx > ax and by < ay


def _piece_ok(ws: _Workspace, a, b) -> bool:
    gx = int(min(a[0], b[0]))
    gy = int(min(a[1], b[1]))
    if ws.maxbady[gx] > gy:
        return False
    if ws.maxbadx[gy] > gx:
        return False
    return True


def _start_ok(ws: _Workspace, a) -> bool:
    if a[1] == INF:
        return True
    if a[0] == INF:
        return False
    return not ws.badleft[a]


def _end_ok(ws: _Workspace, a, singleton: bool) -> bool:
    if a[0] == INF:
        return True
    if a[1] == INF:
        return singleton and not ws.BAD[int(a[0]), :].any()
    return not ws.badbelow[a]


def piece_of_track(sgp: GoodSemigroup, alpha, beta) -> bool:
    """Whether two distinct anchors form a piece of track: incomparable, and no
    reducible member sits in the Delta sections of their minimum."""
    ws = _workspace(sgp)
    a, b = tuple(alpha), tuple(beta)
    if a not in ws.anchors or b not in ws.anchors:
        return False
    if not (_incomparable_successor(a, b) or _incomparable_successor(b, a)):
        return False
    return _piece_ok(ws, a, b)


def _mark_swept(ws: _Workspace, anchors) -> np.ndarray:
    sw = np.zeros_like(ws.M)
    n = len(anchors)
    for a in anchors:
        if a[0] != INF and a[1] != INF:
            sw[int(a[0]), int(a[1])] = True
    first, last = anchors[0], anchors[-1]
    if n == 1:
        if first[1] == INF:
            sw[int(first[0]), :] = True
        elif first[0] == INF:
            sw[:, int(first[1])] = True
        else:
            sw[: int(first[0]), int(first[1])] = True
            sw[int(first[0]), : int(first[1])] = True
        return sw & ws.M
    if first[1] != INF:
        sw[: int(first[0]), int(first[1])] = True
    if last[0] != INF:
        sw[int(last[0]), : int(last[1])] = True
    for a, b in zip(anchors, anchors[1:]):
        gx = int(min(a[0], b[0]))
        gy = int(min(a[1], b[1]))
        sw[gx, gy + 1 :] = True
        sw[gx + 1 :, gy] = True
    return sw & ws.M


def _make_track(ws: _Workspace, anchors: tuple) -> Track:
    sw = _mark_swept(ws, anchors)
    c1, c2 = ws.sgp.conductor
    beyond = bool(sw[c1:, c2:].any())
    if c2 == 1:
        favored = beyond
    else:
        last = anchors[-1]
        favored = beyond and last[0] == INF and last[1] >= c2
    pts = frozenset((int(x), int(y)) for x, y in np.argwhere(sw))
    return Track(anchors, pts, beyond, favored)


def _degenerate_track(sgp: GoodSemigroup) -> Track:
    # N^d itself: the one removal that produces the local root
    swept = frozenset({(0, 1), (1, 0)})
    return Track(((0, INF), (INF, 0)), swept, True, True)


def tracks(sgp: GoodSemigroup) -> tuple:
    """All tracks, sorted by anchor sequence (infinite coordinates last)."""
    if sgp.dim != 2:
        raise ValueError("tracks are only defined for dimension 2")
    if sgp.conductor == (0, 0):
        return (_degenerate_track(sgp),)
    ws = _workspace(sgp)
    found = []
    # singleton row tracks; rows otherwise only ever close a longer track
    for a in ws.anchors:
        if a[0] == INF and not ws.BAD[:, int(a[1])].any():
            found.append((a,))

    starts = [a for a in ws.anchors if a[0] != INF and _start_ok(ws, a)]
    stack = [(a,) for a in starts]
    while stack:
        path = stack.pop()
        head = path[-1]
        if _end_ok(ws, head, singleton=len(path) == 1):
            found.append(path)
        for b in ws.anchors:
            if _incomparable_successor(head, b) and _piece_ok(ws, head, b):
                stack.append(path + (b,))
    out = [_make_track(ws, anchors) for anchors in found]
    out.sort(key=lambda t: t.anchors)
    return tuple(out)


def beyond_tracks(sgp: GoodSemigroup) -> tuple:
    """Tracks whose swept set meets the finite cone above the conductor."""
    return tuple(t for t in tracks(sgp) if t.beyond)


def favored_tracks(sgp: GoodSemigroup) -> tuple:
    """The duplicate-free subfamily of beyond tracks used for enumeration."""
    return tuple(t for t in tracks(sgp) if t.favored)


def _is_track_of(sgp: GoodSemigroup, track: Track) -> bool:
    if sgp.conductor == (0, 0):
        return track.anchors == ((0, INF), (INF, 0))
    ws = _workspace(sgp)
    anchors = track.anchors
    if not anchors or any(a not in ws.anchors for a in anchors):
        return False
    if len(anchors) == 1:
        a = anchors[0]
        if a[0] == INF:
            return not ws.BAD[:, int(a[1])].any()
        return _start_ok(ws, a) and _end_ok(ws, a, singleton=True)
    if not _start_ok(ws, anchors[0]):
        return False
    if not _end_ok(ws, anchors[-1], singleton=False):
        return False
    for a, b in zip(anchors, anchors[1:]):
        if not (_incomparable_successor(a, b) and _piece_ok(ws, a, b)):
            return False
    return True


def remove_track(sgp: GoodSemigroup, track: Track) -> GoodSemigroup:
    """Remove a track's swept set; the result is again a good semigroup and its
    genus grows by exactly one, which is asserted."""
    if not _is_track_of(sgp, track):
        raise ValueError(f"{format_track(track)} is not a track of this semigroup")
    if sgp.conductor == (0, 0):
        newM = np.zeros((3, 3), dtype=bool)
        newM[0, 0] = True
        newM[1:, 1:] = True
    else:
        ws = _workspace(sgp)
        newM = ws.M.copy()
        for p in track.swept:
            newM[p] = False
    full = newM
    for ax in (0, 1):
        rev = np.flip(full, axis=ax)
        full = np.flip(np.logical_and.accumulate(rev, axis=ax), axis=ax)
    idx = np.argwhere(full)
    if idx.size == 0:
        raise AssertionError("removal destroyed the conductor cone")
    nc = tuple(int(v) for v in idx.min(axis=0))
    if not full[nc]:
        raise AssertionError("removal left a non-minimal conductor corner")
    if nc[0] >= newM.shape[0] - 1 or nc[1] >= newM.shape[1] - 1:
        raise AssertionError("new conductor escaped the working box")
    pts = [(int(x), int(y)) for x, y in np.argwhere(newM[: nc[0] + 1, : nc[1] + 1])]
    child = validate(pts)
    if metrics.genus(child) != metrics.genus(sgp) + 1:
        raise AssertionError("track removal did not raise the genus by one")
    return child


def _track_from_anchors(sgp: GoodSemigroup, anchors: tuple) -> Track:
    if sgp.conductor == (0, 0):
        t = _degenerate_track(sgp)
        if anchors != t.anchors:
            raise ValueError("not a track of the degenerate semigroup")
        return t
    ws = _workspace(sgp)
    t = _make_track(ws, anchors)
    if not _is_track_of(sgp, t):
        raise ValueError("anchor sequence does not form a track")
    return t


def special_parents(sgp: GoodSemigroup) -> tuple:
    """The parents this semigroup arises from by removing one track, each with
    the track that removes it again: one parent when the frobenius corner is a
    member, otherwise one per nonzero frobenius coordinate."""
    if sgp.dim != 2:
        raise ValueError("special parents are only defined for dimension 2")
    c1, c2 = sgp.conductor
    if (c1, c2) == (0, 0):
        return ()
    f1, f2 = c1 - 1, c2 - 1
    M = sgp.grid
    results = []
    if sgp.contains((f1, f2)):
        P = M.copy()
        P[f1, f2 + 1 :] = True
        P[f1 + 1 :, f2] = True
        parent = _validate_quiet(P)
        track = _track_from_anchors(parent, ((f1, INF), (INF, f2)))
        results.append((parent, track))
    else:
        if f1 != 0:
            # remove a vertical track: fill the column of f and the row of the
            # highest member on it
            ys = [y for y in range(c2 + 1) if M[f1, y]]
            if ys and max(ys) == c2:
                raise AssertionError("column of the frobenius corner cannot reach the conductor")
            P = M.copy()
            P[f1, f2 + 1 :] = True
            if ys:
                yt = max(ys)
                P[f1 + 1 :, yt] = True
            tallrows = M[f1:, :].any(axis=0)
            P[f1, tallrows] = True
            parent = _validate_quiet(P)
            anchors = ((f1, INF), (INF, yt)) if ys else ((f1, INF),)
            track = _track_from_anchors(parent, anchors)
            results.append((parent, track))
        if f2 != 0:
            xs = [x for x in range(c1 + 1) if M[x, f2]]
            if xs and max(xs) == c1:
                raise AssertionError("row of the frobenius corner cannot reach the conductor")
            P = M.copy()
            P[f1 + 1 :, f2] = True
            if xs:
                xt = max(xs)
                P[xt, f2 + 1 :] = True
            tallcols = M[:, f2:].any(axis=1)
            P[tallcols, f2] = True
            parent = _validate_quiet(P)
            anchors = ((xt, INF), (INF, f2)) if xs else ((INF, f2),)
            track = _track_from_anchors(parent, anchors)
            results.append((parent, track))
    for parent, track in results:
        back = remove_track(parent, track)
        if back != sgp:
            raise AssertionError("parent track does not remove back to the child")
    results.sort(key=lambda pt: pt[0].small)
    return tuple(results)


def _validate_quiet(grid: np.ndarray) -> GoodSemigroup:
    pts = [(int(x), int(y)) for x, y in np.argwhere(grid)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return validate(pts)
