"""Strahler numbers of dependency trees, random-tree baselines and shift-reduce stack depth."""

from .binarize import Binary1, Binary2, PriorityTable, all_binarizations, binarize
from .conllu_io import CorpusSource, IngestReport, parse_conllu, read_conllu, scan_corpus
from .ensembles import (
    catalan_binary_count, combine, r2_limits, r2_strahler_distribution, r_limit_table, st, state_of,
)
from .limits import LimitPair, f_max, f_min, it, limit_pair
from .shift_reduce import EvalTrace, evaluate, min_stack_depth, sethi_ullman_order
from .stats import SentenceRecord, aggregate, analyze, histogram, resample_r2
from .tree_core import (
    BinTree, DepNode, DepTree, dep_tree_from_heads, depth, parse_literal, strahler, validate_dep_tree,
)

__version__ = "0.1.0"
