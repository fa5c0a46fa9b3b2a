"""Duplicate-free enumeration of local plane good semigroups by genus."""
from __future__ import annotations

import multiprocessing
import os
import re
from dataclasses import dataclass, field

from gsf import metrics
from gsf.core import GoodSemigroup, finite_maximals
from gsf.tracks import beyond_tracks, favored_tracks, remove_track, special_parents, tracks

__all__ = [
    "ROOT_SMALL",
    "Frontier",
    "CountTable",
    "IntegrityError",
    "expand",
    "count_by_genus",
    "checkpoint_write",
    "checkpoint_read",
    "checkpoint_counts",
    "AuditReport",
    "audit_mode",
]

ROOT_SMALL = ((0, 0), (1, 1))

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF

_SHARD_RE = re.compile(r"^frontier-g(\d{3})-s(\d{2})of(\d{2})\.txt$")
_HEADER_RE = re.compile(r"^genus=(\d+) count=(\d+) checksum=([0-9a-f]{16})$")


class IntegrityError(ValueError):
    """A checkpoint file failed its structural or checksum validation."""


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & _MASK64
    return h


@dataclass(frozen=True)
class Frontier:
    """All semigroups of one genus, canonically sorted."""

    genus: int
    members: tuple

    def __len__(self) -> int:
        return len(self.members)


def root_frontier() -> Frontier:
    return Frontier(1, (GoodSemigroup(2, ROOT_SMALL),))


def _expand_chunk(smalls: list) -> list:
    out = []
    for s in smalls:
        sgp = GoodSemigroup(2, s)
        for t in favored_tracks(sgp):
            out.append(remove_track(sgp, t).small)
    return out


def expand(frontier: Frontier, threads: int = 1) -> Frontier:
    """Children of a whole frontier via favored-track removal; duplicate-free by
    construction, which is asserted."""
    smalls = [s.small for s in frontier.members]
    if threads <= 1 or len(smalls) < 4 * max(threads, 1):
        children = _expand_chunk(smalls)
    else:
        chunks = [smalls[i::threads] for i in range(threads)]
        with multiprocessing.Pool(threads) as pool:
            parts = pool.map(_expand_chunk, chunks)
        children = [c for part in parts for c in part]
    if len(set(children)) != len(children):
        raise AssertionError("favored-track expansion produced a duplicate")
    members = tuple(GoodSemigroup(2, s) for s in sorted(children))
    return Frontier(frontier.genus + 1, members)


@dataclass(frozen=True)
class CountTable:
    """Counts per genus with growth ratios."""

    rows: tuple  # of (genus, count)

    def with_ratios(self) -> list:
        out = []
        prev_count = None
        prev_ratio = None
        for g, n in self.rows:
            ratio = (n / prev_count) if prev_count else None
            delta = (ratio - prev_ratio) if ratio is not None and prev_ratio is not None else None
            out.append((g, n, ratio, delta))
            prev_count, prev_ratio = n, ratio
        return out

    def counts(self) -> dict:
        return dict(self.rows)

    def to_csv(self) -> str:
        lines = ["genus,count,ratio,ratio_delta"]
        for g, n, ratio, delta in self.with_ratios():
            r = f"{ratio:.6f}" if ratio is not None else ""
            d = f"{delta:.6f}" if delta is not None else ""
            lines.append(f"{g},{n},{r},{d}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [f"{'genus':>5} {'count':>12} {'ratio':>10} {'ratio_delta':>12}"]
        for g, n, ratio, delta in self.with_ratios():
            r = f"{ratio:.6f}" if ratio is not None else "-"
            d = f"{delta:.6f}" if delta is not None else "-"
            lines.append(f"{g:>5} {n:>12} {r:>10} {d:>12}")
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {"rows": [
            {"genus": g, "count": n, "ratio": ratio, "ratio_delta": delta}
            for g, n, ratio, delta in self.with_ratios()
        ]}


def _member_line(small: tuple) -> str:
    return ";".join(" ".join(str(x) for x in p) for p in small)


def _parse_member_line(line: str) -> tuple:
    return tuple(tuple(int(v) for v in pt.split()) for pt in line.split(";"))


def checkpoint_write(dirpath, frontier: Frontier, shards: int = 1) -> list:
    """Write one frontier as shard files; returns the file paths."""
    os.makedirs(dirpath, exist_ok=True)
    shards = max(1, min(shards, len(frontier.members) or 1))
    chunks = [frontier.members[i::shards] for i in range(shards)]
    paths = []
    for k, chunk in enumerate(chunks, start=1):
        body = "".join(_member_line(s.small) + "\n" for s in chunk)
        checksum = fnv1a64(body.encode("utf-8"))
        name = f"frontier-g{frontier.genus:03d}-s{k:02d}of{shards:02d}.txt"
        path = os.path.join(dirpath, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"genus={frontier.genus} count={len(chunk)} checksum={checksum:016x}\n")
            fh.write(body)
        paths.append(path)
    return paths


def _scan_shards(dirpath) -> dict:
    found = {}
    for name in os.listdir(dirpath):
        m = _SHARD_RE.match(name)
        if not m:
            continue
        g, k, total = int(m.group(1)), int(m.group(2)), int(m.group(3))
        found.setdefault(g, {})[k] = (os.path.join(dirpath, name), total)
    return found


def _read_shard(path: str, genus: int) -> tuple[int, list]:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        body = fh.read()
    m = _HEADER_RE.match(header)
    if not m:
        raise IntegrityError(f"{path}: malformed header")
    g, count, checksum = int(m.group(1)), int(m.group(2)), m.group(3)
    if g != genus:
        raise IntegrityError(f"{path}: header genus {g} does not match the file name")
    if f"{fnv1a64(body.encode('utf-8')):016x}" != checksum:
        raise IntegrityError(f"{path}: checksum mismatch")
    lines = body.splitlines()
    if len(lines) != count:
        raise IntegrityError(f"{path}: header count {count} but {len(lines)} entries")
    return count, [_parse_member_line(ln) for ln in lines]


def checkpoint_read(dirpath, genus: int) -> Frontier:
    """Load and checksum-verify one complete frontier."""
    shards = _scan_shards(dirpath).get(genus)
    if not shards:
        raise IntegrityError(f"no checkpoint for genus {genus} in {dirpath}")
    totals = {total for _, total in shards.values()}
    if len(totals) != 1:
        raise IntegrityError(f"genus {genus}: conflicting shard counts {sorted(totals)}")
    total = totals.pop()
    if set(shards) != set(range(1, total + 1)):
        raise IntegrityError(f"genus {genus}: missing shards, have {sorted(shards)} of {total}")
    parts = []
    for k in range(1, total + 1):
        _, members = _read_shard(shards[k][0], genus)
        parts.append(members)
    merged = sorted(s for part in parts for s in part)
    if len(set(merged)) != len(merged):
        raise IntegrityError(f"genus {genus}: duplicate entries across shards")
    return Frontier(genus, tuple(GoodSemigroup(2, s) for s in merged))


def checkpoint_counts(dirpath) -> dict:
    """Counts per fully present genus level, from verified shard headers."""
    out = {}
    for g, shards in sorted(_scan_shards(dirpath).items()):
        totals = {total for _, total in shards.values()}
        if len(totals) != 1 or set(shards) != set(range(1, totals.copy().pop() + 1)):
            continue
        n = 0
        for k in sorted(shards):
            count, _ = _read_shard(shards[k][0], g)
            n += count
        out[g] = n
    return out


def count_by_genus(max_genus: int, threads: int = 1, checkpoint_dir=None,
                   resume: bool = False, shards: int | None = None,
                   progress=None) -> CountTable:
    """Count semigroups per genus from 1 to max_genus by frontier expansion.

    With a checkpoint directory every completed frontier is written out; with
    resume=True the walk restarts from the deepest contiguous checkpointed
    level. The result is independent of the worker count.
    """
    if max_genus < 1:
        raise ValueError("max_genus must be at least 1")
    shards = shards or max(1, threads)
    rows = {1: 1}
    frontier = root_frontier()
    if checkpoint_dir and resume and os.path.isdir(checkpoint_dir):
        counts = checkpoint_counts(checkpoint_dir)
        best = 0
        g = 1
        while g in counts and g <= max_genus:
            best = g
            g += 1
        if best >= 1:
            frontier = checkpoint_read(checkpoint_dir, best)
            for lvl in range(1, best + 1):
                rows[lvl] = counts[lvl]
    if checkpoint_dir and frontier.genus == 1:
        checkpoint_write(checkpoint_dir, frontier, shards)
    if progress:
        progress(frontier.genus, len(frontier))
    while frontier.genus < max_genus:
        frontier = expand(frontier, threads=threads)
        rows[frontier.genus] = len(frontier)
        if checkpoint_dir:
            checkpoint_write(checkpoint_dir, frontier, shards)
        if progress:
            progress(frontier.genus, len(frontier))
    return CountTable(tuple(sorted(rows.items())))


@dataclass(frozen=True)
class AuditReport:
    max_genus: int
    visited: tuple            # (genus, count)
    checks: tuple             # (name, times checked)
    failures: tuple           # (name, genus, small-line, detail)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "max_genus": self.max_genus,
            "visited": [{"genus": g, "count": n} for g, n in self.visited],
            "checks": [{"name": n, "count": c} for n, c in self.checks],
            "failures": [
                {"check": n, "genus": g, "small": s, "detail": d}
                for n, g, s, d in self.failures
            ],
            "ok": self.ok,
        }

    def to_text(self) -> str:
        lines = [f"audit up to genus {self.max_genus}"]
        for g, n in self.visited:
            lines.append(f"  genus {g}: {n} semigroups")
        for name, count in self.checks:
            lines.append(f"  check {name}: {count} instances")
        if self.failures:
            lines.append(f"FAILURES: {len(self.failures)}")
            for name, g, s, d in self.failures:
                lines.append(f"  {name} at genus {g}: {s}: {d}")
        else:
            lines.append("all checks passed")
        return "\n".join(lines) + "\n"


def _numerical_gaps(sgp: GoodSemigroup, axis: int) -> int:
    c = sgp.conductor[axis]
    vals = {s[axis] for s in sgp.small}
    return c - sum(1 for x in range(c) if x in vals)


def audit_mode(max_genus: int = 8, threads: int = 1) -> AuditReport:
    """Walk the tree re-deriving every structural law and report violations.

    Checks: the genus step of every track removal, the parent-count law, genus
    as conductor sum minus length, the planar maximals balance against both
    projections, the type-length-genus inequalities, the level count of the gap
    set (genus <= 7), and agreement of favored children with deduplicated
    beyond children (genus <= 6).
    """
    checks = {
        "track-genus-step": 0,
        "parent-count": 0,
        "genus-balance": 0,
        "maximals-balance": 0,
        "type-bounds": 0,
        "gapset-levels": 0,
        "beyond-dedup": 0,
    }
    failures = []
    visited = []
    frontier = root_frontier()
    while True:
        g = frontier.genus
        visited.append((g, len(frontier)))
        beyond_children = set()
        favored_children = set()
        for sgp in frontier.members:
            line = _member_line(sgp.small)
            all_tracks = tracks(sgp)
            for t in all_tracks:
                checks["track-genus-step"] += 1
                try:
                    child = remove_track(sgp, t)
                except AssertionError as exc:
                    failures.append(("track-genus-step", g, line, str(exc)))
                    continue
                if g <= 6:
                    if t.beyond:
                        beyond_children.add(child.small)
                    if t.favored:
                        favored_children.add(child.small)
            checks["parent-count"] += 1
            f = sgp.frobenius
            want = 1 if sgp.contains(f) else sum(1 for x in f if x != 0)
            try:
                parents = special_parents(sgp)
                if len(parents) != want:
                    failures.append(("parent-count", g, line,
                                     f"{len(parents)} parents, law says {want}"))
            except AssertionError as exc:
                failures.append(("parent-count", g, line, str(exc)))
            checks["genus-balance"] += 1
            if metrics.genus(sgp) != g or metrics.genus(sgp) != sgp.conductor_sum - metrics.length(sgp):
                failures.append(("genus-balance", g, line,
                                 f"genus {metrics.genus(sgp)} at tree level {g}"))
            checks["maximals-balance"] += 1
            balance = (_numerical_gaps(sgp, 0) + _numerical_gaps(sgp, 1)
                       + len(finite_maximals(sgp)))
            if balance != g:
                failures.append(("maximals-balance", g, line,
                                 f"projection gaps + maximals = {balance}"))
            checks["type-bounds"] += 1
            t_val = metrics.semigroup_type(sgp)
            l_val = metrics.length(sgp)
            if not (t_val + l_val - 1 <= g <= t_val * l_val):
                failures.append(("type-bounds", g, line,
                                 f"type {t_val}, length {l_val}, genus {g}"))
            if g <= 7:
                checks["gapset-levels"] += 1
                nl = metrics.number_of_levels(metrics.gapset_clipped(sgp))
                if nl != g:
                    failures.append(("gapset-levels", g, line, f"{nl} levels"))
        if g <= 6:
            checks["beyond-dedup"] += 1
            if beyond_children != favored_children:
                diff = beyond_children ^ favored_children
                failures.append(("beyond-dedup", g, "-",
                                 f"{len(diff)} children differ"))
        if g >= max_genus:
            break
        frontier = expand(frontier, threads=threads)
    return AuditReport(max_genus, tuple(visited), tuple(sorted(checks.items())),
                       tuple(failures))
