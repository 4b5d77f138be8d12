"""Command line interface.

Options are resolved as command-line flags, then ``--config FILE`` entries
(``key = value`` lines, keys spelled like the long flags without dashes, e.g.
``n-max = 200``), then built-in defaults.

Exit status: 0 on success, 1 on data errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .binarize import FAR_FIRST, NEAR_FIRST, PriorityTable
from .conllu_io import CorpusSource, IngestReport, SkipRecord, parse_conllu, read_conllu, scan_corpus
from .ensembles import DEFAULT_N_MAX, NMaxExceeded
from .limits import limit_pair
from .shift_reduce import evaluate, left_first, min_stack_depth, right_first, sethi_ullman_order
from .stats import (
    AGGREGATE_COLUMNS, GROWTH_COLUMNS, MEASURES, RECORD_COLUMNS, BracketViolation, Config,
    EmptyInput, WordlessCorpus, aggregate, analyze, ensemble_rows, export_text, histogram,
    histogram_median, histogram_moments, length_histogram, resample_r2, write_rows, _row_dict,
)
from .tree_core import parse_literal, strahler

log = logging.getLogger("strahler")

DEFAULTS = {
    "ud-root": None,
    "priority-table": None,
    "drop-punct": False,
    "binary2-order": NEAR_FIRST,
    "n-max": DEFAULT_N_MAX,
    "seed": 0,
    "format": "csv",
    "out": None,
    "jobs": 1,
}


class UsageError(Exception):
    pass


def read_config(path: str | Path) -> dict:
    settings = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        settings[key] = value
    return settings


def _coerce(key: str, value):
    if value is None or not isinstance(value, str):
        return value
    if key in ("n-max", "seed", "jobs"):
        return int(value)
    if key == "drop-punct":
        return value.lower() in ("1", "true", "yes", "on")
    return value


def resolve(args: argparse.Namespace) -> dict:
    config_path = getattr(args, "config", None)
    from_file = read_config(config_path) if config_path else {}
    opts = {}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key.replace("-", "_"), None)
        if flag is not None:
            opts[key] = flag
        elif key in from_file:
            opts[key] = _coerce(key, from_file[key])
        else:
            opts[key] = default
    if opts["binary2-order"] not in (NEAR_FIRST, FAR_FIRST):
        raise UsageError(f"--binary2-order must be {NEAR_FIRST} or {FAR_FIRST}")
    if opts["format"] not in ("csv", "json"):
        raise UsageError("--format must be csv or json")
    return opts


def make_config(opts: dict) -> Config:
    table = PriorityTable.load(opts["priority-table"]) if opts["priority-table"] else PriorityTable.default_table()
    return Config(table, bool(opts["drop-punct"]), opts["binary2-order"], int(opts["n-max"]),
                  int(opts["seed"]), int(opts["jobs"]))


def corpora_from(opts: dict, files: list[str]) -> list[CorpusSource]:
    if files:
        return [CorpusSource(Path(f).stem, [Path(f)]) for f in files]
    if not opts["ud-root"]:
        raise UsageError("give CoNLL-U files or --ud-root")
    corpora = scan_corpus(opts["ud-root"])
    if not corpora:
        raise EmptyInput(f"no UD_* corpora with .conllu files under {opts['ud-root']}")
    return corpora


def emit(dicts: list[dict], columns: list[str], opts: dict) -> None:
    if opts["out"]:
        with open(opts["out"], "w", encoding="utf-8", newline="\n") as f:
            write_rows(dicts, opts["format"], f, columns)
    else:
        write_rows(dicts, opts["format"], sys.stdout, columns)


def _report(report: IngestReport) -> None:
    log.info("parsed %d sentences, skipped %d", report.parsed, report.skipped)
    for reason, count in sorted(report.skip_reasons.items()):
        log.info("  skipped (%s): %d", reason, count)


# ---------------------------------------------------------------------------
# subcommands


def cmd_analyze(args, opts) -> None:
    config = make_config(opts)
    report = IngestReport()
    records = list(analyze(corpora_from(opts, args.files), config, report))
    _report(report)
    if not records:
        raise EmptyInput("no sentences parsed")
    if args.table == "records":
        emit([_row_dict(r) for r in records], RECORD_COLUMNS, opts)
    elif args.table == "histogram":
        hists = {m: histogram(records, m) for m in MEASURES}
        values = sorted(set().union(*hists.values()))
        emit([{"value": v, **{m: hists[m].get(v, 0) for m in MEASURES}} for v in values],
             ["value", *MEASURES], opts)
        for m in MEASURES:
            log.info("median %s: %g", m, histogram_median(hists[m]))
    else:
        emit([row.as_dict() for row in aggregate(records, by=args.by)], AGGREGATE_COLUMNS, opts)
    log.info("std is the population standard deviation")


def cmd_limits(args, opts) -> None:
    rows = []
    for path in args.files:
        items = parse_conllu(sys.stdin) if path == "-" else read_conllu(path)
        for i, item in enumerate(items, 1):
            if isinstance(item, SkipRecord):
                log.warning("%s sentence %d skipped: %s", path, i, item.reason)
                continue
            lim = limit_pair(item)
            rows.append({"file": path, "sentence": i, "n": len(item), "lower": lim.lower, "upper": lim.upper})
    emit(rows, ["file", "sentence", "n", "lower", "upper"], opts)


def cmd_ensemble(args, opts) -> None:
    emit(ensemble_rows(int(opts["n-max"])), GROWTH_COLUMNS, opts)


def cmd_shiftreduce(args, opts) -> None:
    try:
        tree = parse_literal(args.tree)
    except ValueError as err:
        raise UsageError(str(err)) from None
    orders = {"left": left_first, "right": right_first, "sethi-ullman": sethi_ullman_order}
    trace = evaluate(tree, orders[args.order](tree))
    out = sys.stdout if not opts["out"] else open(opts["out"], "w", encoding="utf-8", newline="\n")
    try:
        print(f"tree: {tree}", file=out)
        print(f"order: {args.order}", file=out)
        print(trace, file=out)
        print(f"strahler={strahler(tree)}", file=out)
        if len(tree.inner_nodes) <= 16:
            print(f"min_stack_depth={min_stack_depth(tree)}", file=out)
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_resample(args, opts) -> None:
    config = make_config(opts)
    report = IngestReport()
    records = list(analyze(corpora_from(opts, args.files), config, report))
    _report(report)
    if not records:
        raise EmptyInput("no sentences parsed")
    hist = resample_r2(length_histogram(records), seed=config.seed, n_max=args.length_cap)
    mean, std = histogram_moments(hist)
    log.info("resampled R2 mean %.2f +- %.2f over %d sentences", mean, std, sum(hist.values()))
    emit([{"value": v, "count": c} for v, c in hist.items()], ["value", "count"], opts)


def cmd_export_text(args, opts) -> None:
    corpora = {c.name: c for c in corpora_from(opts, [])}
    if args.corpus not in corpora:
        raise EmptyInput(f"corpus {args.corpus} not found under {opts['ud-root']}")
    out = opts["out"] or f"{args.corpus}.txt"
    lines = export_text(corpora[args.corpus], out)
    log.info("wrote %d sentences to %s", lines, out)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--config", default=argparse.SUPPRESS, help="key = value settings file")
    g.add_argument("--ud-root", help="directory holding UD_* treebank directories")
    g.add_argument("--priority-table", help="label<TAB>rank file driving Binary1")
    g.add_argument("--drop-punct", action="store_const", const=True, default=argparse.SUPPRESS,
                   help="remove punct tokens before binarization")
    g.add_argument("--binary2-order", choices=[NEAR_FIRST, FAR_FIRST], default=argparse.SUPPRESS)
    g.add_argument("--n-max", type=int, default=argparse.SUPPRESS, help=f"ensemble size limit (default {DEFAULT_N_MAX})")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--format", choices=["csv", "json"], default=argparse.SUPPRESS)
    g.add_argument("--out", default=argparse.SUPPRESS, help="output file (default: stdout)")
    g.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for corpus analysis")
    g.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="strahler", description=__doc__.split("\n\n")[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="per-sentence limits and Binary1/2 Strahler numbers")
    p.add_argument("files", nargs="*", help="CoNLL-U files (instead of --ud-root)")
    p.add_argument("--by", choices=["all", "corpus", "n"], default="all")
    p.add_argument("--table", choices=["aggregate", "histogram", "records"], default="aggregate")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("limits", parents=[common], help="upper/lower limits of each sentence")
    p.add_argument("files", nargs="+", help="CoNLL-U files, '-' for stdin")
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("ensemble", parents=[common], help="R2(n) and R(n) baselines per n")
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("shiftreduce", parents=[common], help="shift-reduce trace of a tree literal")
    p.add_argument("tree", help="e.g. '((1,2),(3,4))'")
    p.add_argument("--order", choices=["left", "right", "sethi-ullman"], default="sethi-ullman")
    p.set_defaults(func=cmd_shiftreduce)

    p = sub.add_parser("resample", parents=[common], help="Strahler histogram of random binary trees "
                       "with the corpus length distribution")
    p.add_argument("files", nargs="*")
    p.add_argument("--length-cap", type=int, default=4096, help="longest sentence allowed")
    p.set_defaults(func=cmd_resample)

    p = sub.add_parser("export-text", parents=[common], help="plain-text corpus for external compressors")
    p.add_argument("corpus", help="corpus name, e.g. UD_English-EWT")
    p.set_defaults(func=cmd_export_text)
    return parser


def _setup_logging(verbose: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.DEBUG if verbose else logging.INFO)
    log.propagate = False


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(getattr(args, "verbose", False))
    try:
        opts = resolve(args)
        args.func(args, opts)
    except UsageError as err:
        parser.print_usage(sys.stderr)
        print(f"strahler: error: {err}", file=sys.stderr)
        return 2
    except (OSError, ValueError, EmptyInput, WordlessCorpus, NMaxExceeded, BracketViolation) as err:
        print(f"strahler: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
