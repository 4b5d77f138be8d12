import numpy as np
import pytest

from strahler.binarize import (
    FAR_FIRST, Binary1, Binary2, CapExceeded, PriorityTable, all_binarizations, binarize,
    count_binarizations, drop_relations,
)
from strahler.conllu_io import read_conllu
from strahler.limits import f_max, f_min
from strahler.tree_core import BinTree, DepNode, dep_tree_from_heads, plane_tree_as_dep, plane_trees, strahler

from conftest import DATA, random_dep_tree

# "It was quite easy to find something ." with its UD (EWT-style) analysis
EASY_SENTENCE = dep_tree_from_heads(
    [4, 4, 4, 0, 6, 4, 6, 4],
    ["nsubj", "cop", "advmod", "root", "mark", "csubj", "obj", "punct"],
    ["It", "was", "quite", "easy", "to", "find", "something", "."],
)
METHODS = [Binary1(), Binary2(), Binary2(FAR_FIRST), Binary1(order=FAR_FIRST)]


def test_single_node():
    t = dep_tree_from_heads([0], forms=["Traci"])
    for m in METHODS:
        assert binarize(t, m).to_literal() == "Traci"


def test_head_between_two_dependents():
    t = dep_tree_from_heads([2, 0, 2], forms=["a", "h", "b"])
    b = binarize(t, Binary2())
    assert b.to_literal() == "((a,h),b)"
    assert strahler(b) == 2


def test_near_first_vs_far_first():
    # h has two left dependents: x (far) and y (near)
    t = dep_tree_from_heads([3, 3, 0], forms=["x", "y", "h"])
    assert binarize(t, Binary2()).to_literal() == "(x,(y,h))"
    assert binarize(t, Binary2(FAR_FIRST)).to_literal() == "(y,(x,h))"


def test_easy_sentence_binary2():
    b = binarize(EASY_SENTENCE, Binary2())
    # hand derivation: quite+easy -> 2, was and It keep 2, [to find something] (2) lifts to 3, "." keeps 3
    assert b.to_literal() == "(((It,(was,(quite,easy))),((to,find),something)),.)"
    assert strahler(b) == 3
    assert f_min(EASY_SENTENCE) <= 3 <= f_max(EASY_SENTENCE)
    assert (f_min(EASY_SENTENCE), f_max(EASY_SENTENCE)) == (2, 3)


def test_binary1_priority_order():
    # det ranks before amod in the default table, so det attaches first even though it is farther
    t = dep_tree_from_heads([3, 3, 0], ["det", "amod", "root"], ["the", "big", "dog"])
    assert binarize(t, Binary1()).to_literal() == "(big,(the,dog))"
    table = PriorityTable({"amod": 0, "det": 1})
    assert binarize(t, Binary1(table)).to_literal() == "(the,(big,dog))"


def test_binary1_ties_follow_binary2():
    t = dep_tree_from_heads([3, 3, 0, 3], ["x", "x", "root", "x"], ["a", "b", "h", "c"])
    table = PriorityTable({"x": 0})
    assert binarize(t, Binary1(table)) == binarize(t, Binary2())


def test_priority_table_file(tmp_path):
    path = tmp_path / "prio.tsv"
    path.write_text("# closest first\ndet\t0\ncase\t0\n\nobl\t5\n")
    table = PriorityTable.load(path)
    assert table.rank("det") == 0
    assert table.rank("obl:tmod") == 5
    assert table.rank("conj") == 6
    assert PriorityTable.parse(table.dumps()).ranks == table.ranks


def test_priority_table_bad_line():
    with pytest.raises(ValueError):
        PriorityTable.parse("det\tzero\n")


def test_all_binarizations_counts():
    assert [b.to_literal() for b in all_binarizations(dep_tree_from_heads([0], forms=["w"]))] == ["w"]
    two = all_binarizations(dep_tree_from_heads([0, 1, 1], forms=["h", "a", "b"]))
    assert sorted(b.to_literal() for b in two) == ["((h,a),b)", "((h,b),a)"]
    three = all_binarizations(dep_tree_from_heads([0, 1, 1, 1]))
    assert len(three) == 6
    assert {strahler(b) for b in three} == {2}


def test_all_binarizations_cap():
    star = dep_tree_from_heads([0] + [1] * 8)
    assert count_binarizations(star) == 40320
    with pytest.raises(CapExceeded):
        all_binarizations(star, cap=1000)


def _constituents(b: BinTree):
    leaves = [None] * len(b)
    for i in range(len(b)):
        leaves[i] = frozenset([b.payload[i]]) if b.is_leaf(i) else leaves[b.left[i]] | leaves[b.right[i]]
    return leaves


def test_constituent_nesting():
    t = dep_tree_from_heads([0, 1, 1, 3, 3, 1])
    words = {n.form: i for i, n in enumerate(t.nodes)}
    subtree = {}
    for v in t.order:
        subtree[v] = frozenset([t.nodes[v].form]).union(*(subtree[c] for c in t.children[v]))
    for b in all_binarizations(t):
        for span in _constituents(b):
            # every constituent is a head plus whole subtrees of some of its dependents
            heads = [w for w in span if t.parent[words[w]] < 0 or t.nodes[t.parent[words[w]]].form not in span]
            assert len(heads) == 1
            h = words[heads[0]]
            rest = span - {heads[0]}
            kids = [c for c in t.children[h] if t.nodes[c].form in rest]
            assert rest == frozenset().union(*(subtree[c] for c in kids))


@pytest.mark.parametrize("n", range(1, 8))
def test_bracket_small_trees(n):
    for parent in plane_trees(n):
        for slot in ("first", "middle"):
            t = plane_tree_as_dep(parent, slot)
            for m in METHODS:
                b = binarize(t, m)
                assert sorted(b.leaves()) == sorted(t.forms)
                assert f_min(t) <= strahler(b) <= f_max(t)


def test_random_trees_preserve_words_and_are_deterministic():
    rng = np.random.default_rng(3)
    for _ in range(200):
        t = random_dep_tree(int(rng.integers(1, 60)), rng)
        for m in METHODS:
            b = binarize(t, m)
            assert sorted(b.leaves()) == sorted(t.forms)
            assert b == binarize(t, m)
            assert f_min(t) <= strahler(b) <= f_max(t)


def test_sample_corpus_leaves():
    for path in sorted((DATA / "UD_English-Sample").glob("*.conllu")):
        for item in read_conllu(path):
            if hasattr(item, "nodes"):
                for m in METHODS:
                    assert sorted(binarize(item, m).leaves()) == sorted(item.forms)


def test_drop_punct():
    t = drop_relations(EASY_SENTENCE)
    assert len(t) == 7
    assert "." not in t.forms
    # dependents of a dropped node move up
    t2 = dep_tree_from_heads([0, 1, 2], ["root", "punct", "dep"])
    assert [n.head for n in drop_relations(t2).nodes] == [0, 1]
    # the root is never dropped
    assert len(drop_relations(dep_tree_from_heads([0], ["punct"]))) == 1
