"""Command line frontend.

Synopsis: gsf <verb> [FILE] [--format text|json|csv] [--max-genus G]
          [--threads N] [--checkpoint DIR] [--resume] [--audit] [--no-banner]

Exit codes: 0 on success, 1 on domain errors (invalid input, broken
checkpoints), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone

from gsf import analysis, metrics
from gsf.core import INF, format_point, read_semigroup
from gsf.enumeration import audit_mode, count_by_genus
from gsf.tracks import favored_tracks, format_track, remove_track, special_parents, tracks


def _point_json(p) -> list:
    return ["inf" if x == INF else int(x) for x in p]


def _csv_rows(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _banner(args, out) -> None:
    if args.format == "text" and not args.no_banner:
        stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        out.write(f"# gsf {args.verb} {stamp}\n")


def _cmd_verify(args, out) -> int:
    sgp = read_semigroup(args.file)
    g = metrics.genus(sgp)
    if args.format == "json":
        _emit(out, json.dumps({
            "ok": True,
            "dim": sgp.dim,
            "small": [list(p) for p in sgp.small],
            "conductor": list(sgp.conductor),
            "genus": g,
        }))
    elif args.format == "csv":
        _emit(out, _csv_rows([
            ("ok", "true"),
            ("dim", sgp.dim),
            ("small", ";".join(" ".join(str(x) for x in p) for p in sgp.small)),
            ("conductor", " ".join(str(x) for x in sgp.conductor)),
            ("genus", g),
        ]))
    else:
        _emit(out, f"ok: good semigroup of N^{sgp.dim}\n"
                   f"small: {' '.join(format_point(p) for p in sgp.small)}\n"
                   f"conductor: {format_point(sgp.conductor)}\n"
                   f"genus: {g}")
    return 0


def _cmd_metrics(args, out) -> int:
    sgp = read_semigroup(args.file)
    rep = metrics.metrics_report(sgp)
    if args.format == "json":
        _emit(out, json.dumps({
            "length": rep.length,
            "genus": rep.genus,
            "conductor_sum": rep.conductor_sum,
            "type": rep.type,
            "axis_contributions": {
                "length": list(rep.axis_lengths),
                "genus": list(rep.axis_genera),
            },
            "conductor": list(rep.conductor),
            "dim": rep.dim,
        }))
    elif args.format == "csv":
        rows = [
            ("conductor", " ".join(str(x) for x in rep.conductor)),
            ("conductor_sum", rep.conductor_sum),
            ("length", rep.length),
            ("genus", rep.genus),
            ("axis_lengths", ";".join(str(x) for x in rep.axis_lengths)),
            ("axis_genera", ";".join(str(x) for x in rep.axis_genera)),
        ]
        if rep.type is not None:
            rows.append(("type", rep.type))
        _emit(out, _csv_rows(rows))
    else:
        lines = [
            f"conductor: {format_point(rep.conductor)}",
            f"conductor sum: {rep.conductor_sum}",
            f"length: {rep.length}",
            f"genus: {rep.genus}",
        ]
        for i, (l, g) in enumerate(zip(rep.axis_lengths, rep.axis_genera), 1):
            lines.append(f"axis {i}: length {l} genus {g}")
        if rep.type is not None:
            lines.append(f"type: {rep.type}")
        _emit(out, "\n".join(lines))
    return 0


def _cmd_tracks(args, out) -> int:
    sgp = read_semigroup(args.file)
    trs = tracks(sgp)
    if args.format == "json":
        _emit(out, json.dumps([
            {"anchors": [_point_json(a) for a in t.anchors],
             "beyond": t.beyond, "favored": t.favored}
            for t in trs
        ]))
    elif args.format == "csv":
        rows = [("track", "beyond", "favored")]
        rows += [(format_track(t), str(t.beyond).lower(), str(t.favored).lower())
                 for t in trs]
        _emit(out, _csv_rows(rows))
    else:
        lines = []
        for t in trs:
            tags = [name for name, flag in
                    (("beyond", t.beyond), ("favored", t.favored)) if flag]
            suffix = f"  [{', '.join(tags)}]" if tags else ""
            lines.append(format_track(t) + suffix)
        _emit(out, "\n".join(lines) if lines else "no tracks")
    return 0


def _children(sgp):
    seen = {}
    for t in favored_tracks(sgp):
        child = remove_track(sgp, t)
        seen[child.small] = child
    return [seen[k] for k in sorted(seen)]


def _cmd_sons(args, out) -> int:
    sgp = read_semigroup(args.file)
    kids = _children(sgp)
    if args.format == "json":
        _emit(out, json.dumps([
            {"small": [list(p) for p in ch.small], "genus": metrics.genus(ch)}
            for ch in kids
        ]))
    elif args.format == "csv":
        rows = [("small", "genus")]
        rows += [(";".join(" ".join(str(x) for x in p) for p in ch.small),
                  metrics.genus(ch)) for ch in kids]
        _emit(out, _csv_rows(rows))
    else:
        lines = [f"small: {' '.join(format_point(p) for p in ch.small)}  "
                 f"genus: {metrics.genus(ch)}" for ch in kids]
        _emit(out, "\n".join(lines) if lines else "no sons")
    return 0


def _cmd_parents(args, out) -> int:
    sgp = read_semigroup(args.file)
    pairs = special_parents(sgp)
    if args.format == "json":
        _emit(out, json.dumps([
            {"small": [list(p) for p in parent.small],
             "track": {"anchors": [_point_json(a) for a in track.anchors]}}
            for parent, track in pairs
        ]))
    elif args.format == "csv":
        rows = [("small", "track")]
        rows += [(";".join(" ".join(str(x) for x in p) for p in parent.small),
                  format_track(track)) for parent, track in pairs]
        _emit(out, _csv_rows(rows))
    else:
        lines = [f"small: {' '.join(format_point(p) for p in parent.small)}  "
                 f"via {format_track(track)}" for parent, track in pairs]
        _emit(out, "\n".join(lines) if lines else "no parents")
    return 0


def _cmd_enumerate(args, out) -> int:
    table = count_by_genus(args.max_genus, threads=args.threads,
                           checkpoint_dir=args.checkpoint, resume=args.resume)
    audit = audit_mode(args.max_genus, threads=args.threads) if args.audit else None
    if args.format == "json":
        payload = table.as_dict()
        if args.count_only:
            payload = {"counts": payload["counts"]}
        if audit is not None:
            payload["audit"] = audit.as_dict()
        _emit(out, json.dumps(payload))
    elif args.format == "csv":
        if args.count_only:
            rows = [("genus", "count")] + list(table.rows)
            _emit(out, _csv_rows(rows))
        else:
            _emit(out, table.to_csv())
        if audit is not None:
            sys.stderr.write(audit.to_text())
    else:
        if args.count_only:
            _emit(out, "\n".join(str(n) for _, n in table.rows))
        else:
            _emit(out, table.to_text())
        if audit is not None:
            _emit(out, audit.to_text())
    return 0


def _cmd_wilf(args, out) -> int:
    sgp = read_semigroup(args.file)
    rep = analysis.wilf_check(sgp)
    if args.format == "json":
        _emit(out, json.dumps(rep.as_dict()))
    elif args.format == "csv":
        _emit(out, _csv_rows([
            ("edim", rep.edim),
            ("witness", ";".join(" ".join("inf" if x == INF else str(x) for x in p)
                                 for p in rep.witness)),
            ("conductor_sum", rep.conductor_sum),
            ("length", rep.length),
            ("genus", rep.genus),
            ("rhs", f"{rep.rhs.numerator}/{rep.rhs.denominator}"),
            ("holds", str(rep.holds).lower()),
        ]))
    else:
        _emit(out, "\n".join([
            f"edim: {rep.edim}",
            f"witness: {' '.join(format_point(p) for p in rep.witness)}",
            f"conductor sum: {rep.conductor_sum}",
            f"length: {rep.length}",
            f"genus: {rep.genus}",
            f"rhs: {rep.rhs.numerator}/{rep.rhs.denominator}",
            f"holds: {'yes' if rep.holds else 'no'}",
        ]))
    return 0


def _cmd_wilf_scan(args, out) -> int:
    violations = analysis.wilf_scan(args.max_genus, threads=args.threads)
    if args.format == "json":
        _emit(out, json.dumps({
            "max_genus": args.max_genus,
            "violations": [
                {"small": [list(p) for p in sgp.small], "report": rep.as_dict()}
                for sgp, rep in violations
            ],
        }))
    elif args.format == "csv":
        rows = [("genus", "small", "edim", "rhs")]
        rows += [(rep.genus,
                  ";".join(" ".join(str(x) for x in p) for p in sgp.small),
                  rep.edim,
                  f"{rep.rhs.numerator}/{rep.rhs.denominator}")
                 for sgp, rep in violations]
        _emit(out, _csv_rows(rows))
    else:
        if not violations:
            _emit(out, f"no violations up to genus {args.max_genus}")
        else:
            lines = [f"genus {rep.genus}: "
                     f"{' '.join(format_point(p) for p in sgp.small)}: "
                     f"{rep.edim} < {rep.rhs.numerator}/{rep.rhs.denominator}"
                     for sgp, rep in violations]
            _emit(out, "\n".join(lines))
    return 0


def _cmd_audit(args, out) -> int:
    report = audit_mode(args.max_genus, threads=args.threads)
    if args.format == "json":
        _emit(out, json.dumps(report.as_dict()))
    elif args.format == "csv":
        rows = [("check", "count")] + list(report.checks)
        rows += [("failures", len(report.failures))]
        _emit(out, _csv_rows(rows))
    else:
        _emit(out, report.to_text())
    return 0


_HANDLERS = {
    "verify": _cmd_verify,
    "metrics": _cmd_metrics,
    "tracks": _cmd_tracks,
    "sons": _cmd_sons,
    "parents": _cmd_parents,
    "enumerate": _cmd_enumerate,
    "wilf": _cmd_wilf,
    "wilf-scan": _cmd_wilf_scan,
    "audit": _cmd_audit,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsf",
        description="good subsemigroups of N^d: verification, metrics, "
                    "tracks, tree enumeration, Wilf checks")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")
    common.add_argument("--no-banner", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb in ("verify", "metrics", "tracks", "sons", "parents", "wilf"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("file")

    p = sub.add_parser("enumerate", parents=[common])
    p.add_argument("--max-genus", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--audit", action="store_true")
    p.add_argument("--checkpoint", metavar="DIR")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("wilf-scan", parents=[common])
    p.add_argument("--max-genus", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("audit", parents=[common])
    p.add_argument("--max-genus", type=int, default=8)
    p.add_argument("--threads", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    buf = io.StringIO()
    try:
        _banner(args, buf)
        code = _HANDLERS[args.verb](args, buf)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
