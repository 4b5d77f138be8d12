"""
Strahler numbers and shift-reduce stack depth
=============================================

Binary trees, their Strahler number, and how much stack a shift-reduce
evaluation needs depending on which subtree goes first.
"""

from strahler.shift_reduce import evaluate, left_first, min_stack_depth, right_first, sethi_ullman_order
from strahler.tree_core import caterpillar, complete_tree, depth, parse_literal, strahler

# %%
# A tree literal: leaves are atoms, inner nodes are pairs.  This is the
# computation tree of 1 + 2 * 3^4.
expr = parse_literal("(1,(2,(3,4)))")
print(expr, "strahler =", strahler(expr), "depth =", depth(expr))

# %%
# Evaluating from the left pushes every operand before reducing anything.
print(evaluate(expr, left_first(expr)))

# %%
# Evaluating the deeper side first needs only two slots.
print(evaluate(expr, right_first(expr)).max_depth)
print(evaluate(expr, sethi_ullman_order(expr)).max_depth)

# %%
# Brute force over all 2^(inner nodes) orders agrees with the Strahler number.
for text in ["((1,2),(3,4))", "(((a,b),(c,d)),(e,f))", "((((a,b),c),d),e)"]:
    t = parse_literal(text)
    print(f"{text:<24} strahler={strahler(t)}  min depth={min_stack_depth(t)}")

# %%
# Depth and Strahler number diverge: a linear (caterpillar) tree is deep but
# has Strahler number 2; a complete tree has both equal.
for t in (caterpillar(50), complete_tree(6)):
    print(f"leaves={t.n_leaves:<3} depth={depth(t):<3} strahler={strahler(t)}")
