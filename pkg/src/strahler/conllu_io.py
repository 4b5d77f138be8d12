"""Reading Universal Dependencies treebanks in CoNLL-U format."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from .tree_core import DepNode, DepTree, TreeError, validate_dep_tree

log = logging.getLogger(__name__)

ID, FORM, LEMMA, UPOS, XPOS, FEATS, HEAD, DEPREL, DEPS, MISC = range(10)


@dataclass(frozen=True)
class SkipRecord:
    reason: str
    detail: str = ""
    sent_id: str | None = None
    line: int = 0


@dataclass
class IngestReport:
    parsed: int = 0
    skipped: int = 0
    skip_reasons: Counter = field(default_factory=Counter)

    def add(self, item: DepTree | SkipRecord) -> None:
        if isinstance(item, SkipRecord):
            self.skipped += 1
            self.skip_reasons[item.reason] += 1
        else:
            self.parsed += 1

    def merge(self, other: IngestReport) -> IngestReport:
        return IngestReport(self.parsed + other.parsed, self.skipped + other.skipped,
                            self.skip_reasons + other.skip_reasons)

    @property
    def total(self) -> int:
        return self.parsed + self.skipped


@dataclass
class CorpusSource:
    name: str
    paths: list[Path]
    sentence_count: int = 0

    def trees(self, report: IngestReport | None = None) -> Iterator[DepTree]:
        """Parsed trees of every file; skips are tallied in ``report`` and ``sentence_count``."""
        self.sentence_count = 0
        for path in self.paths:
            for item in read_conllu(path):
                self.sentence_count += 1
                if report is not None:
                    report.add(item)
                if isinstance(item, SkipRecord):
                    log.debug("%s: skipped sentence %s (%s)", path, item.sent_id, item.reason)
                else:
                    yield item


def _sentences(stream: Iterable[str]) -> Iterator[tuple[int, str | None, list[list[str]]]]:
    rows: list[list[str]] = []
    sent_id = None
    start = 0
    for lineno, line in enumerate(stream, 1):
        line = line.rstrip("\r\n")
        if not line.strip():
            if rows:
                yield start, sent_id, rows
            rows, sent_id = [], None
            continue
        if line.startswith("#"):
            if line.startswith("# sent_id"):
                sent_id = line.split("=", 1)[-1].strip()
            continue
        if not rows:
            start = lineno
        rows.append(line.split("\t"))
    if rows:
        yield start, sent_id, rows


def parse_conllu(stream: TextIO | Iterable[str]) -> Iterator[DepTree | SkipRecord]:
    """Yield one tree or skip record per sentence.

    Multiword ranges (``4-5``) and empty nodes (``8.1``) are not syntactic
    words and are dropped before the tree is built.
    """
    for start, sent_id, rows in _sentences(stream):
        nodes = []
        problem = None
        for cols in rows:
            if len(cols) != 10:
                problem = SkipRecord("BadColumns", f"expected 10 columns, got {len(cols)}", sent_id, start)
                break
            token_id = cols[ID]
            if "-" in token_id or "." in token_id:
                continue
            try:
                nodes.append(DepNode(int(token_id), int(cols[HEAD]), cols[DEPREL], cols[FORM]))
            except ValueError:
                problem = SkipRecord("BadField", f"id={token_id!r} head={cols[HEAD]!r}", sent_id, start)
                break
        if problem is not None:
            yield problem
            continue
        try:
            yield validate_dep_tree(nodes)
        except TreeError as err:
            yield SkipRecord(type(err).__name__, str(err), sent_id, start)


def read_conllu(path: str | Path) -> Iterator[DepTree | SkipRecord]:
    with open(path, encoding="utf-8") as f:
        yield from parse_conllu(f)


def scan_corpus(root_dir: str | Path) -> list[CorpusSource]:
    """Find ``UD_*`` directories under ``root_dir`` (or ``root_dir`` itself)."""
    root = Path(root_dir)
    if not root.is_dir():
        raise FileNotFoundError(f"not a directory: {root}")
    dirs = [root] if root.name.startswith("UD_") else sorted(
        p for p in root.iterdir() if p.is_dir() and p.name.startswith("UD_"))
    corpora = []
    for d in dirs:
        files = sorted(d.glob("*.conllu"))
        if files:
            corpora.append(CorpusSource(d.name, files))
    return corpora


def count_sentences(corpus: CorpusSource) -> IngestReport:
    report = IngestReport()
    for _ in corpus.trees(report):
        pass
    return report
