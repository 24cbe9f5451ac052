# Finite sequence geometry: split means, obstruction prefixes, the
# alternating falsifier, and convex-block minimization.
#
# Run as:  python demos/sequence_checks.py

from fractions import Fraction

from bairelab import (
    BasisKind,
    P_ZERO,
    TrialCoeffs,
    abs_obstruction_falsify,
    bs_obstruction_check,
    cesaro_mean,
    convex_block_min,
    delta_antichain_family,
    weak_null_probe,
)

F = Fraction
L1, L2, C0 = BasisKind.L1, BasisKind.L2, BasisKind.C0

# The running example: unit coordinate vectors on an antichain.
fam = delta_antichain_family(6, L1, 1)

# Cesaro means of the antichain family shrink in the square context but
# stay flat in the summable one.
for kind, p in [(L1, 1), (L2, 2), (C0, P_ZERO)]:
    f = delta_antichain_family(6, kind, p)
    _, nv = cesaro_mean(f, [0, 1, 2, 3, 4, 5])
    print(f"mean norm in ({kind.value}, p={'0' if p is P_ZERO else p}):",
          nv.approx)

# In the summable context every split mean has norm exactly one, so the
# family is a 1-obstruction prefix; the square context is violated
# already at two terms.
print("summable, eps=1:", bs_obstruction_check(fam, 1).status)
sq = delta_antichain_family(6, L2, 2)
verdict = bs_obstruction_check(sq, 1)
print("square, eps=1:", verdict.status, verdict.witness)

# The alternating bound quantifies over all real coefficients, so the
# checker only ever falsifies.  The summable basis resists every sampled
# pattern; the sup-norm family gives in at block size four.
print("alternating, summable:",
      abs_obstruction_falsify(fam, F(1, 2), TrialCoeffs()).status)
sup = delta_antichain_family(8, C0, P_ZERO)
verdict = abs_obstruction_falsify(sup, F(1, 2))
print("alternating, sup:", verdict.status, verdict.witness["coeffs"])

# Convex blocks: the exact simplex finds the flat combination in the sup
# context; in the summable context no convex combination helps.
coeffs, value = convex_block_min(sup, (0, 3))
print("best convex block (sup):", [str(c) for c in coeffs], "=", value.approx)
print("weak-null probe (sup, eps=1/3):",
      weak_null_probe(sup, F(1, 3)).status)
print("weak-null probe (summable, eps=1/2):",
      weak_null_probe(delta_antichain_family(8, L1, 1), F(1, 2)).status)
