# Trees on the naturals: building them, deriving them, ranking them.
#
# Run as:  python demos/tree_ranks.py

from bairelab import (
    derived_tree,
    full_kary,
    lazy_from_tree,
    make_tree,
    order_index,
    probe_wf,
    random_tree,
    spine,
    subtree_at,
)
from bairelab.trees import depth_bounded, zeros_branch

# A tree is a prefix-closed set of tuples; make_tree validates closure.
t = make_tree([(), (0,), (1,), (0, 0), (0, 1)])
print("nodes:", list(t))

# The derived tree keeps exactly the nodes that have a proper extension;
# iterating it until empty counts the order index.
cur = t
while len(cur):
    print("derive:", list(cur))
    cur = derived_tree(cur)
print("order index:", order_index(t))

# Localizing at a root child always strictly drops the index.
for child in t.children(()):
    sub = subtree_at(t, child[0])
    print(f"  below {child}: nodes={list(sub)} index={order_index(sub)}")

# Full k-ary trees of depth d have index d + 1, chains behave the same.
for d in range(4):
    print(f"full_kary(2,{d}) -> {order_index(full_kary(2, d))}",
          f"spine({d}) -> {order_index(spine(d))}")

# Reproducible random corpora: same seed, same tree.
print("random(12, seed=5) == random(12, seed=5):",
      random_tree(12, 5) == random_tree(12, 5))

# Infinite trees are only ever probed to finite depth.  A probe can
# certify that no deep chain exists, or exhibit one; the exhibit is
# never a proof of ill-foundedness.
print("zeros branch, depth 8:", probe_wf(zeros_branch(), 8))
print("depth-bounded(3), depth 8:", probe_wf(depth_bounded(3), 8))
print("finite tree, depth 8:", probe_wf(lazy_from_tree(full_kary(2, 3)), 8))
