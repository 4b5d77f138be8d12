"""
Corpus statistics
=================

Per-sentence measures for a UD treebank directory, their aggregates and
histograms, and a random-tree null model with the same sentence lengths.

Run on the bundled sample, or pass the path of a UD checkout:

    python demos/04_corpus_statistics.py /data/ud-treebanks-v2.8
"""

import sys
from pathlib import Path

from strahler.conllu_io import IngestReport, scan_corpus
from strahler.stats import (
    MEASURES, aggregate, analyze, histogram, histogram_median, histogram_moments, length_histogram,
    resample_r2,
)

root = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent.parent / "tests" / "data"

# %%
report = IngestReport()
records = list(analyze(scan_corpus(root), report=report))
print(f"{report.parsed} sentences, {report.skipped} skipped {dict(report.skip_reasons)}")

# %%
# Average +- population standard deviation, all sentences together.
(row,) = aggregate(records, by="all")
for m in MEASURES:
    print(f"{m:<8} {row.mean[m]:.2f} +- {row.std[m]:.2f}")

# %%
for m in MEASURES:
    hist = histogram(records, m)
    print(f"{m:<8} {hist}  median={histogram_median(hist):g}")

# %%
# Null model: a uniformly random binary tree for every sentence length.
null = resample_r2(length_histogram(records), seed=0)
print("random binary trees:", null, "mean +- std = %.2f +- %.2f" % histogram_moments(null))
