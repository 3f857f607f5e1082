"""Command-line interface: ``sphc verify | tables | census | bruhat``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import census as cs
from . import chevmat as cm
from . import sphericity as sph
from .classlabels import LabelError, parse_label, spherical_unipotent_classes
from .config import ConfigError, load_config
from .rootcore import RootSystemError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

_CSV_FIELDS = ["row_id", "table_id", "class_name", "type", "char", "twist_power",
               "claimed_dim", "computed_length", "computed_rank", "criterion_value",
               "dim_match", "w_equals_w0_wJ", "roots_orthogonal", "rep_label_match",
               "rep_cell_match", "rep_involution_check", "passed"]


class UsageError(Exception):
    pass


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v)
                    for k, v in r.items()})
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


# verify -----------------------------------------------------------------------


def cmd_verify(args, config) -> int:
    max_rank = args.max_rank or config.max_rank
    limits = {"a_outer_max_m": config.a_outer_max_m, "d_outer_max_n": config.d_outer_max_n}
    if args.row:
        try:
            family, param = sph.parse_row_selector(args.row)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rows = sph.builtin_tables(max_rank, **limits)
        rows = [r for r in rows if r.family == family and r.param == param]
        if not rows:
            raise UsageError(f"no row matches {args.row!r} up to rank {max_rank}")
    elif args.table:
        rows = sph.select_rows(sph.builtin_tables(max_rank, **limits), table=args.table)
        if not rows:
            raise UsageError(f"no rows in table {args.table!r}")
    elif args.all:
        rows = sph.builtin_tables(max_rank, **limits)
    else:
        raise UsageError("verify needs --all, --table or --row")
    summary = sph.verify_all(rows=rows, jobs=args.jobs or os.cpu_count() or 1)
    dicts = summary.to_dicts()
    fmt = args.format or config.format
    _emit(_json(dicts) if fmt == "json" else _csv(dicts, _CSV_FIELDS))
    return EXIT_OK if summary.passed else EXIT_FAIL


# tables -----------------------------------------------------------------------


def _table_ids(series: str, char: int) -> set[str]:
    if series == "F":
        return {"7"} if char == 2 else {"6"}
    if series == "G":
        return {"9"} if char == 3 else {"8"}
    return {"1", "2", "3", "4", "5"}


def table_entries(series: str, rank: int, char: int, outer: bool = False) -> list[dict]:
    classes = spherical_unipotent_classes(series, rank, char)
    rows = []
    try:
        rows = [r for r in sph.builtin_tables(max(rank, 1), a_outer_max_m=max(1, rank // 2),
                                              d_outer_max_n=max(4, rank))
                if r.series == series and r.rank == rank]
    except RootSystemError:
        rows = []
    inner = {(r.class_name, r.claimed_dim): r for r in rows
             if r.twist_power == 0 and r.table_id in _table_ids(series, char)}
    out = []
    for c in classes:
        r = inner.get((c.name, c.dim))
        out.append({
            "class": c.name,
            "label": str(c.label) if c.label is not None else None,
            "dim": c.dim,
            "w": " ".join(f"s({sph.format_root(series, rank, b)})" for b in r.w_word) if r else None,
            "J": list(r.J) if r and r.J is not None else None,
            "component_group_order": c.component_group_order,
            "consists_of_involutions": c.consists_of_involutions,
        })
    if outer:
        for r in rows:
            if r.twist_power:
                out.append({
                    "class": r.class_name,
                    "label": str(r.expected_label) if r.expected_label is not None else None,
                    "dim": r.claimed_dim,
                    "w": " ".join(f"s({sph.format_root(series, rank, b)})" for b in r.w_word),
                    "J": list(r.J) if r.J is not None else None,
                    "component_group_order": None,
                    "consists_of_involutions": True,
                    "outer": True,
                })
    return out


def cmd_tables(args, config) -> int:
    series = args.series.upper()
    try:
        entries = table_entries(series, args.rank, args.char, args.outer)
    except (LabelError, RootSystemError) as exc:
        raise UsageError(str(exc)) from None
    note = (f"all other unipotent classes of {series}{args.rank} in characteristic "
            f"{args.char} are not spherical")
    fmt = args.format or "text"
    if fmt == "json":
        _emit(_json({"type": f"{series}{args.rank}", "char": args.char,
                     "classes": entries, "note": note}))
    elif fmt == "csv":
        _emit(_csv(entries, ["class", "label", "dim", "w", "J", "component_group_order"]))
    else:
        lines = [f"{series}{args.rank}, p = {args.char}"]
        for e in entries:
            extra = f"  |C/C0| = {e['component_group_order']}" if e["component_group_order"] else ""
            lines.append(f"  {e['class']:<14} {e['label'] or '':<18} dim {e['dim']:<4} "
                         f"w = {e['w'] or '-'}{extra}")
        lines.append(f"  ({note})")
        _emit("\n".join(lines))
    return EXIT_OK


# census -----------------------------------------------------------------------

_GROUPS = {"sp": "Sp", "so": "SO", "gl": "GL"}


def _parse_qs(text: str) -> tuple[int, ...]:
    try:
        qs = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"--q expects a comma-separated list, got {text!r}") from None
    for q in qs:
        if q < 2 or q & (q - 1) or q > 256:
            raise UsageError(f"q={q} is not a power of 2")
    return qs


def cmd_census(args, config) -> int:
    kind = _GROUPS[args.group]
    qs = _parse_qs(args.q) if args.q else config.probe_qs
    limit = args.memory_limit or config.memory_limit
    cs.set_polynomials(config.polynomials)
    fmt = args.format or "json"
    try:
        if args.outer:
            if kind != "SO":
                raise UsageError("--outer applies to --group so")
            reports = [cs.outer_coset_census(args.n, q, limit) for q in qs]
            _emit(_json([r.to_dict() for r in reports]))
            return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
        if args.minimality:
            res = cs.minimality_check(args.n, limit)
            _emit(_json({"n": res.n, "minimal": res.minimal, "label_check": res.label_check,
                         "verdicts": res.verdicts, "passed": res.passed}))
            return EXIT_OK if res.passed else EXIT_FAIL
        only = None
        if args.class_label:
            label_kind = "GL" if kind == "GL" else kind
            try:
                only = parse_label(args.class_label, label_kind, args.n)
            except LabelError as exc:
                raise UsageError(str(exc)) from None
        report = cs.enumerate_unipotent_classes(kind, args.n, qs, only=only,
                                                b_orbits=args.b_orbits, cells=args.cells,
                                                memory_limit=limit)
    except cs.ResourceGuardError as exc:
        sys.stderr.write(f"resource guard: {exc}\n")
        return EXIT_GUARD
    except (cm.GroupError, RootSystemError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    d = report.to_dict()
    if fmt == "csv":
        flat = [{"label": c["label"], **{f"size_q{q}": s for q, s in c["sizes"].items()},
                 "estimated_dim": c["estimated_dim"], "verdict": c["spherical_verdict"]}
                for c in d["classes"]]
        fields = ["label"] + [f"size_q{q}" for q in qs] + ["estimated_dim", "verdict"]
        _emit(_csv(flat, fields))
    else:
        _emit(_json(d))
    if any(report.omitted.values()):
        sys.stderr.write("resource guard: omitted " + "; ".join(
            f"q={q}: {', '.join(o)}" for q, o in report.omitted.items() if o) + "\n")
        return EXIT_GUARD
    return EXIT_OK if report.steinberg_ok else EXIT_FAIL


# bruhat -----------------------------------------------------------------------


def cmd_bruhat(args, config) -> int:
    text = sys.stdin.read() if args.element == "-" else args.element
    try:
        g = cm.deserialize(text)
        w = cm.bruhat_cell(g)
    except cm.GroupError as exc:
        raise UsageError(str(exc)) from None
    _emit(cs.weyl_word_text(g.spec, w))
    return EXIT_OK


# entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sphc", description="Spherical unipotent classes in "
                                "characteristic 2: criterion checks and finite-field census.")
    p.add_argument("--config", help="key = value config file (default: $SPHC_CONFIG)")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check every built-in table row")
    v.add_argument("--all", action="store_true")
    v.add_argument("--table")
    v.add_argument("--row", help="family selector such as C:X:2")
    v.add_argument("--max-rank", type=int)
    v.add_argument("--format", choices=["json", "csv"])
    v.add_argument("--jobs", type=int)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tables", help="list the spherical unipotent classes of a type")
    t.add_argument("--series", required=True)
    t.add_argument("--rank", type=int, required=True)
    t.add_argument("--char", type=int, default=2)
    t.add_argument("--outer", action="store_true", help="include outer involution rows")
    t.add_argument("--format", choices=["json", "csv", "text"])
    t.set_defaults(func=cmd_tables)

    c = sub.add_parser("census", help="brute-force census over GF(q)")
    c.add_argument("--group", required=True, choices=sorted(_GROUPS))
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--q")
    c.add_argument("--class", dest="class_label")
    c.add_argument("--b-orbits", action="store_true")
    c.add_argument("--cells", action="store_true")
    c.add_argument("--outer", action="store_true")
    c.add_argument("--minimality", action="store_true")
    c.add_argument("--format", choices=["json", "csv"])
    c.add_argument("--memory-limit", type=int)
    c.add_argument("--jobs", type=int, help="accepted for symmetry; the census runs in one process")
    c.set_defaults(func=cmd_census)

    b = sub.add_parser("bruhat", help="Bruhat cell of a serialized element")
    b.add_argument("element", help="dump from serialize(); ';' may replace newlines; '-' reads stdin")
    b.set_defaults(func=cmd_bruhat)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        return args.func(args, config)
    except (UsageError, ConfigError) as exc:
        sys.stderr.write(f"sphc: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
