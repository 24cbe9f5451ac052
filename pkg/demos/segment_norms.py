# The segment-family norms: exact evaluation, witnesses, and the exact
# identities they satisfy.
#
# Run as:  python demos/segment_norms.py

from fractions import Fraction

from bairelab import (
    BaireVector,
    BasisKind,
    baire_norm,
    baire_norm_oracle,
    baire_norm_witness,
    baire_norm_zero,
    check_branch_isometry,
    check_incomparable_additivity,
    check_root_decomposition,
    delta,
    make_tree,
)

F = Fraction
L1, L2, C0 = BasisKind.L1, BasisKind.L2, BasisKind.C0

# The norm maximizes, over families of pairwise completely incomparable
# segments, the p-aggregate of per-segment block norms.  On this fork the
# best family for the summable basis at p=2 is the two singletons.
fork = make_tree([(), (0,), (1,)])
x = BaireVector(fork, {(0,): F(3, 4), (1,): 1})
nv, family = baire_norm_witness(x, L1, 2)
print("norm:", nv, "=", nv.approx)
print("attained by:", family)

# The dynamic program agrees with the exhaustive oracle bit for bit in
# exact mode.
print("oracle agrees:", baire_norm_oracle(x, L1, 2) == baire_norm(x, L1, 2))

# A chain admits no incomparable pair, so only single segments count:
# the full chain wins and the norm collapses to the ingredient norm.
chain = make_tree([(), (0,), (0, 0)])
ones = BaireVector(chain, {(): 1, (0,): 1, (0, 0): 1})
print("chain, summable, p=2:", baire_norm(ones, L1, 2).approx)
print("branch isometry:", check_branch_isometry(ones, L1, 2))

# The p=0 variant takes the best single segment.
tee = make_tree([(), (0,), (1,), (0, 0)])
y = BaireVector(tee, dict.fromkeys(tee, F(1)))
print("single-segment variant (sup basis):", baire_norm_zero(y, C0).approx)
print("single-segment variant (summable):", baire_norm_zero(y, L1).approx)

# Vectors with completely incomparable supports add exactly at the p-th
# power, and with a vanishing root coefficient the norm power splits
# across the root branches.
y1 = BaireVector(tee, {(0,): 1, (0, 0): 1})
y2 = delta(tee, (1,))
print("additivity:", check_incomparable_additivity([y1, y2], [1, 1], L1, 2))
z = BaireVector(fork, {(0,): 1, (1,): 1})
print("root split:", check_root_decomposition(z, L2, 2))
