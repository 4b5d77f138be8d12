"""
Binarizing dependency trees
===========================

A dependency tree has words at every node; a binary tree has them only at
the leaves.  Different binarizations give different Strahler numbers, bounded
by the limits computed directly on the dependency tree.
"""

from collections import Counter

from strahler.binarize import FAR_FIRST, Binary1, Binary2, PriorityTable, all_binarizations, binarize
from strahler.limits import limit_pair
from strahler.tree_core import dep_tree_from_heads, strahler

# %%
# "It was quite easy to find something ." as annotated in UD English.
sentence = dep_tree_from_heads(
    heads=[4, 4, 4, 0, 6, 4, 6, 4],
    relations=["nsubj", "cop", "advmod", "root", "mark", "csubj", "obj", "punct"],
    forms=["It", "was", "quite", "easy", "to", "find", "something", "."],
)

# %%
# Head-distance heuristics (closer dependents attach first) and the variant
# where farther dependents attach first.
for method in (Binary2(), Binary2(FAR_FIRST)):
    b = binarize(sentence, method)
    print(f"{method.order:<10} {b}  strahler={strahler(b)}")

# %%
# Relation priority: the default table binds function words first.  Any
# label<TAB>rank table can be swapped in.
b1 = binarize(sentence, Binary1())
print("binary1   ", b1, " strahler =", strahler(b1))
custom = PriorityTable.parse("obj\t0\nmark\t1\nadvmod\t2\ncop\t3\nnsubj\t4\ncsubj\t5\npunct\t6\n")
print("custom    ", binarize(sentence, Binary1(custom)))

# %%
# Every binarization that keeps heads with their own dependents, and the
# limits computed without enumerating them.
values = Counter(strahler(b) for b in all_binarizations(sentence))
print("all binarizations:", dict(values))
print("limits:", limit_pair(sentence))
