"""Corpus statistics: per-sentence Strahler measures, aggregates, histograms,
random-tree resampling and plot-ready exports."""

from __future__ import annotations

import csv
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .binarize import NEAR_FIRST, Binary1, Binary2, PriorityTable, binarize, drop_relations
from .conllu_io import CorpusSource, IngestReport, SkipRecord, read_conllu
from .ensembles import DEFAULT_N_MAX, MAX, MIN, NMaxExceeded, r2_limits, r2_table, r_limit_table
from .limits import limit_pair
from .tree_core import DepTree, strahler

MEASURES = ("upper", "lower", "binary1", "binary2")

# corpora that ship structures without word forms
WORDLESS_CORPORA = frozenset({
    "UD_Hindi_English-HIENCS", "UD_Arabic-NYUAD", "UD_Japanese-BCCWJ", "UD_English-ESL",
    "UD_French-FTB", "UD_English-GUMReddit", "UD_Mbya_Guarani-Dooley",
})


class EmptyInput(ValueError):
    pass


class BracketViolation(AssertionError):
    pass


class WordlessCorpus(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    priority_table: PriorityTable = field(default_factory=PriorityTable.default_table)
    drop_punct: bool = False
    binary2_order: str = NEAR_FIRST
    n_max: int = DEFAULT_N_MAX
    seed: int = 0
    jobs: int = 1


@dataclass(frozen=True)
class SentenceRecord:
    corpus: str
    n: int
    lower: int
    upper: int
    s_binary1: int
    s_binary2: int

    def measure(self, name: str) -> int:
        return getattr(self, _ATTR[name])


_ATTR = {"upper": "upper", "lower": "lower", "binary1": "s_binary1", "binary2": "s_binary2"}


def analyze_tree(tree: DepTree, corpus: str = "", config: Config = Config()) -> SentenceRecord:
    if config.drop_punct:
        tree = drop_relations(tree, ("punct",))
    lim = limit_pair(tree)
    s1 = strahler(binarize(tree, Binary1(config.priority_table, config.binary2_order)))
    s2 = strahler(binarize(tree, Binary2(config.binary2_order)))
    if not (lim.lower <= min(s1, s2) and max(s1, s2) <= lim.upper):
        raise BracketViolation(f"{corpus}: limits {tuple(lim)} do not bracket Binary1={s1}, Binary2={s2}")
    return SentenceRecord(corpus, len(tree), lim.lower, lim.upper, s1, s2)


def _analyze_file(job: tuple[str, Path, Config]) -> tuple[list[SentenceRecord], IngestReport]:
    corpus, path, config = job
    report = IngestReport()
    records = []
    for item in read_conllu(path):
        report.add(item)
        if not isinstance(item, SkipRecord):
            records.append(analyze_tree(item, corpus, config))
    return records, report


def analyze(corpora: Sequence[CorpusSource], config: Config = Config(),
            report: IngestReport | None = None) -> Iterator[SentenceRecord]:
    """Records for every parsed sentence, in corpus/file/sentence order.

    With ``config.jobs > 1`` files are processed in a process pool; output
    order is unchanged.
    """
    jobs = [(c.name, p, config) for c in corpora for p in c.paths]
    counts = Counter()
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            results = pool.map(_analyze_file, jobs)
            for (name, _, _), (records, part) in zip(jobs, results):
                counts[name] += part.total
                if report is not None:
                    _merge_into(report, part)
                yield from records
    else:
        for job in jobs:
            records, part = _analyze_file(job)
            counts[job[0]] += part.total
            if report is not None:
                _merge_into(report, part)
            yield from records
    for c in corpora:
        c.sentence_count = counts[c.name]


def _merge_into(report: IngestReport, part: IngestReport) -> None:
    report.parsed += part.parsed
    report.skipped += part.skipped
    report.skip_reasons.update(part.skip_reasons)


# ---------------------------------------------------------------------------
# aggregation


@dataclass(frozen=True)
class AggregateRow:
    key: str | int
    count: int
    mean: Mapping[str, float]
    std: Mapping[str, float]

    def as_dict(self, digits: int | None = 2) -> dict:
        out: dict = {"key": self.key, "count": self.count}
        for m in MEASURES:
            out[f"{m}_mean"] = _round(self.mean[m], digits)
            out[f"{m}_std"] = _round(self.std[m], digits)
        return out


def _round(x: float, digits: int | None) -> float:
    return x if digits is None else round(float(x), digits)


AGGREGATE_COLUMNS = ["key", "count"] + [f"{m}_{s}" for m in MEASURES for s in ("mean", "std")]
RECORD_COLUMNS = ["corpus", "n", "lower", "upper", "binary1", "binary2"]


def aggregate(records: Iterable[SentenceRecord], by: str = "corpus") -> list[AggregateRow]:
    """Mean and population standard deviation of each measure per group.

    ``by`` is ``"corpus"``, ``"n"`` or ``"all"`` (one row keyed ``"all"``).
    """
    if by not in ("corpus", "n", "all"):
        raise ValueError(f"cannot group by {by!r}")
    groups: dict = {}
    for r in records:
        key = "all" if by == "all" else getattr(r, by)
        groups.setdefault(key, []).append([r.measure(m) for m in MEASURES])
    if not groups:
        raise EmptyInput("no records to aggregate")
    rows = []
    for key in sorted(groups):
        values = np.asarray(groups[key], dtype=float)
        rows.append(AggregateRow(
            key, len(values),
            dict(zip(MEASURES, values.mean(axis=0).tolist())),
            dict(zip(MEASURES, values.std(axis=0).tolist())),
        ))
    return rows


def histogram(records: Iterable[SentenceRecord], measure: str) -> dict[int, int]:
    counts = Counter(r.measure(measure) for r in records)
    return dict(sorted(counts.items()))


def histogram_median(hist: Mapping[int, int]) -> float:
    """Median of the values a histogram describes (mean of the middle pair for even totals)."""
    total = sum(hist.values())
    if not total:
        raise EmptyInput("empty histogram")
    values = sorted(hist)
    cumulative = np.cumsum([hist[v] for v in values])
    lo = values[int(np.searchsorted(cumulative, (total - 1) // 2 + 1))]
    hi = values[int(np.searchsorted(cumulative, total // 2 + 1))]
    return (lo + hi) / 2


def length_histogram(records: Iterable[SentenceRecord]) -> dict[int, int]:
    """Sentence lengths, which are also the leaf counts of the Binary1 trees."""
    return dict(sorted(Counter(r.n for r in records).items()))


# ---------------------------------------------------------------------------
# random binary trees with the corpus length distribution


def resample_r2(length_hist: Mapping[int, int], seed: int = 0, n_max: int = 4096) -> dict[int, int]:
    """For each sentence, draw a Strahler value of a uniform random binary tree of its length."""
    if not length_hist:
        return {}
    longest = max(length_hist)
    if longest > n_max:
        raise NMaxExceeded(f"sentence length {longest} exceeds n_max={n_max}")
    table = r2_table(longest)
    rng = np.random.default_rng(seed)
    out: Counter = Counter()
    for n in sorted(length_hist):
        values, probs = table.probabilities(n)
        draws = rng.choice(values, size=length_hist[n], p=probs)
        out.update(int(v) for v in draws)
    return dict(sorted(out.items()))


def mixture_moments(length_hist: Mapping[int, int]) -> tuple[Fraction, Fraction]:
    """Exact mean and variance of the Strahler value of one resampled sentence."""
    table = r2_table(max(length_hist))
    total = sum(length_hist.values())
    mean = sum(Fraction(k, total) * table.mean(n) for n, k in length_hist.items())
    second = sum(Fraction(k, total) * (table.variance(n) + table.mean(n) ** 2)
                 for n, k in length_hist.items())
    return mean, second - mean * mean


def histogram_moments(hist: Mapping[int, int]) -> tuple[float, float]:
    values = np.repeat(np.array(list(hist), dtype=float), list(hist.values()))
    return float(values.mean()), float(values.std())


# ---------------------------------------------------------------------------
# growth curves


GROWTH_COLUMNS = ["n", "r2_lower", "r2_upper", "r2_mean", "r_upper", "r_lower"]


def ensemble_rows(n_max: int = DEFAULT_N_MAX) -> list[dict]:
    """Per-n baselines: exact R2(n) limits and mean, exact R(n) mean limits."""
    r2 = r2_table(n_max)
    upper = r_limit_table(n_max, MAX)
    lower = r_limit_table(n_max, MIN)
    rows = []
    for n in range(1, n_max + 1):
        lim = r2_limits(n)
        rows.append({
            "n": n, "r2_lower": lim.lower, "r2_upper": lim.upper,
            "r2_mean": round(float(r2.mean(n)), 4),
            "r_upper": round(float(upper.average(n)), 4),
            "r_lower": round(float(lower.average(n)), 4),
        })
    return rows


# ---------------------------------------------------------------------------
# export


def export(rows: Sequence, fmt: str, path: str | Path, columns: Sequence[str] | None = None) -> None:
    """Write rows as CSV or JSON with a fixed column order and LF line endings.

    Rows may be :class:`AggregateRow`, :class:`SentenceRecord` or plain dicts.
    """
    dicts = [_row_dict(r) for r in rows]
    if columns is None:
        if rows and isinstance(rows[0], SentenceRecord):
            columns = RECORD_COLUMNS
        elif rows and isinstance(rows[0], dict):
            columns = list(rows[0])
        else:
            columns = AGGREGATE_COLUMNS
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        write_rows(dicts, fmt, f, columns)


def write_rows(dicts: Sequence[dict], fmt: str, f, columns: Sequence[str]) -> None:
    if fmt == "csv":
        writer = csv.DictWriter(f, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for d in dicts:
            writer.writerow({k: _fmt(d.get(k)) for k in columns})
    elif fmt == "json":
        json.dump([{k: d.get(k) for k in columns} for d in dicts], f, indent=1, ensure_ascii=False)
        f.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def _fmt(value):
    return f"{value:.2f}" if isinstance(value, float) else value


def _row_dict(row) -> dict:
    if isinstance(row, AggregateRow):
        return row.as_dict()
    if isinstance(row, SentenceRecord):
        return {"corpus": row.corpus, "n": row.n, "lower": row.lower, "upper": row.upper,
                "binary1": row.s_binary1, "binary2": row.s_binary2}
    return dict(row)


def sentence_text(tree: DepTree) -> str:
    return " ".join(tree.forms)


def export_text(corpus: CorpusSource, path: str | Path) -> int:
    """Write one space-joined sentence per line for external compressors; returns the line count."""
    if corpus.name in WORDLESS_CORPORA:
        raise WordlessCorpus(f"{corpus.name} provides structures without words")
    lines = 0
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for tree in corpus.trees():
            if all(form == "_" for form in tree.forms):
                raise WordlessCorpus(f"{corpus.name}: sentence without word forms")
            f.write(sentence_text(tree) + "\n")
            lines += 1
    return lines

