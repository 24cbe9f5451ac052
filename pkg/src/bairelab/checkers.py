"""Finite-instance checkers for sequence geometry.

Everything here certifies finite prefixes only.  Where a definition
quantifies over all reals (the alternating obstruction), the checker is
deliberately a falsifier: it can return Violated or Inconclusive, never
Pass.  Witnesses are deterministic because candidates are enumerated in
lexicographic order and the first violation in that order is reported,
regardless of the execution schedule.
"""

import itertools
import math
import random as _random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .baire import (
    BaireVector,
    ExponentP,
    baire_norm,
    baire_norm_witness,
    baire_norm_zero,
    exact_mode,
    linear_combination,
    segment_vector,
    _segment_families,
)
from .bases import BasisKind, NormValue
from .errors import (
    BadIndexList,
    FamilyTooLarge,
    FamilyTooSmall,
    FunctionalSetTooLarge,
    InvalidParameter,
    NotInUnitBall,
    TreeMismatch,
    WindowOutOfRange,
)
from .simplex import solve_lp
from .steps import DyadicStep, l1_norm
from .trees import node_key, prefix_closure
from .verdicts import Verdict

#: Documented bound on the generating-functional enumeration.
MAX_FUNCTIONALS = 10**5

#: Hard cap on exhaustive obstruction checking.
MAX_OBSTRUCTION_FAMILY = 10


class BaireContext:
    """Norm context for families of BaireVector."""

    def __init__(self, kind, p):
        self.kind = kind
        self.p = ExponentP.coerce(p)

    def norm(self, v):
        if self.p.is_zero:
            return baire_norm_zero(v, self.kind)
        return baire_norm(v, self.kind, self.p)

    def mix(self, pairs):
        return linear_combination(pairs)

    @property
    def polyhedral(self):
        return self.kind in (BasisKind.L1, BasisKind.C0) and (
            self.p.is_zero or self.p.value == 1
        )

    @property
    def exact(self):
        return True if self.p.is_zero else exact_mode(self.kind, self.p)

    def describe(self):
        p = "0" if self.p.is_zero else str(self.p.value)
        return f"baire({self.kind.value}, p={p})"


class StepContext:
    """Norm context for families of DyadicStep with the exact L1 norm."""

    polyhedral = True
    exact = True

    def norm(self, f):
        return NormValue.exact(l1_norm(f), 1)

    def mix(self, pairs):
        terms = []
        common = 0
        pairs = list(pairs)
        for _, f in pairs:
            common = max(common, f.resolution)
        acc = [Fraction(0)] * 2**common
        for a, f in pairs:
            a = Fraction(a)
            for i, v in enumerate(f.refine(common).values):
                acc[i] += a * v
        return DyadicStep(common, tuple(acc))

    def describe(self):
        return "dyadic-step(L1)"


class VectorFamily:
    """An ordered finite list of vectors sharing one ambient normed space."""

    def __init__(self, vectors, context):
        vectors = tuple(vectors)
        if not vectors:
            raise InvalidParameter("a vector family must be nonempty")
        if isinstance(context, BaireContext):
            tree = vectors[0].tree
            for v in vectors[1:]:
                if v.tree != tree:
                    raise TreeMismatch("family vectors live on different trees")
        self.vectors = vectors
        self.context = context

    def __len__(self):
        return len(self.vectors)

    def norm(self, v):
        return self.context.norm(v)

    def mix(self, coeff_index_pairs):
        return self.context.mix(
            [(a, self.vectors[i]) for a, i in coeff_index_pairs]
        )


def delta_antichain_family(n, kind, p, labels=None):
    """The family of unit coordinate vectors on n incomparable nodes."""
    if labels is None:
        labels = range(n)
    nodes = [(int(k),) for k in labels]
    tree = prefix_closure(nodes)
    vectors = [BaireVector(tree, {node: 1}) for node in nodes]
    return VectorFamily(vectors, BaireContext(kind, p))


def cesaro_mean(family, indices, alternating=False):
    """m^{-1} sum of the selected vectors, optionally with alternating
    signs (-1)^k, k = 1..m; returns the mean and its norm."""
    idx = list(indices)
    if not idx:
        raise BadIndexList("at least one index is required")
    for k in idx:
        if not isinstance(k, int) or not (0 <= k < len(family)):
            raise BadIndexList(f"index {k!r} out of range")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise BadIndexList("indices must be strictly increasing")
    m = len(idx)
    pairs = []
    for k, i in enumerate(idx, start=1):
        sign = -1 if (alternating and k % 2 == 1) else 1
        pairs.append((Fraction(sign, m), i))
    mean = family.mix(pairs)
    return mean, family.norm(mean)


def _violation_candidates(n):
    for m in range(1, n + 1):
        for tup in itertools.combinations(range(n), m):
            for ell in range(1, m + 1):
                yield m, tup, ell


def bs_obstruction_check(family, epsilon, *, parallel=False):
    """Exhaustively test the split-mean lower bound on every subfamily.

    Pass means every (1/m)(sum of the first ell minus the rest) over every
    increasing index tuple has norm >= epsilon: the family is an
    epsilon-obstruction prefix.  Requires all vectors in the unit ball.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise InvalidParameter("epsilon must be positive")
    n = len(family)
    if n > MAX_OBSTRUCTION_FAMILY:
        raise FamilyTooLarge(
            f"exhaustive check is capped at {MAX_OBSTRUCTION_FAMILY} vectors"
        )
    for i, v in enumerate(family.vectors):
        nv = family.norm(v)
        if not nv.at_most(1):
            raise NotInUnitBall(i, nv)

    def evaluate(cand):
        m, tup, ell = cand
        pairs = [
            (Fraction(1 if k <= ell else -1, m), i)
            for k, i in enumerate(tup, start=1)
        ]
        return family.norm(family.mix(pairs))

    cands = list(_violation_candidates(n))
    if parallel:
        with ThreadPoolExecutor() as pool:
            values = list(pool.map(evaluate, cands))
        for cand, value in zip(cands, values):
            if value.below(epsilon):
                m, tup, ell = cand
                return Verdict.violated(
                    m=m, ell=ell, indices=list(tup), value=value
                )
    else:
        for cand in cands:
            value = evaluate(cand)
            if value.below(epsilon):
                m, tup, ell = cand
                return Verdict.violated(
                    m=m, ell=ell, indices=list(tup), value=value
                )
    return Verdict.passed(
        tested=f"all split means over {n} vectors stayed >= {epsilon}"
    )


@dataclass(frozen=True)
class TrialCoeffs:
    """Sampler for the alternating-obstruction falsifier.

    signs: sweep all +-1 patterns (first coefficient fixed to +1, the
    inequality is invariant under a global flip).  grid: per-coordinate
    rational values, expanded as a full product while it stays within
    max_grid_points.  random_trials: seeded random rational vectors per
    index tuple.
    """

    signs: bool = True
    grid: tuple = ()
    random_trials: int = 0
    seed: int = 0
    max_grid_points: int = 4096

    def describe(self, size):
        parts = []
        if self.signs:
            parts.append(f"sign patterns (2^{size - 1})")
        if self.grid:
            parts.append(f"grid {list(map(str, self.grid))}")
        if self.random_trials:
            parts.append(
                f"{self.random_trials} random rational trials (seed {self.seed})"
            )
        return ", ".join(parts) if parts else "no trials"

    def vectors(self, size):
        out = []
        if self.signs:
            for tail in itertools.product((1, -1), repeat=size - 1):
                out.append((Fraction(1),) + tuple(Fraction(s) for s in tail))
        if self.grid:
            values = tuple(Fraction(g) for g in self.grid)
            if len(values) ** size <= self.max_grid_points:
                for c in itertools.product(values, repeat=size):
                    if any(v != 0 for v in c):
                        out.append(c)
        if self.random_trials:
            rng = _random.Random(self.seed)
            for _ in range(self.random_trials):
                c = tuple(
                    Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                    for _ in range(size)
                )
                if any(v != 0 for v in c):
                    out.append(c)
        return out


def abs_obstruction_falsify(family, epsilon, trials=TrialCoeffs()):
    """Search for a witness against the alternating lower bound.

    Looks for block sizes 2**ell, index tuples whose first position is at
    least ell - 1 (0-based), and sampled coefficients c with
    ||sum c_i x_i|| < epsilon * sum |c_i|.  A semi-decision: the bound
    quantifies over all real coefficients, so no finite sweep can return
    Pass; the outcome is Violated or Inconclusive.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise InvalidParameter("epsilon must be positive")
    n = len(family)
    if n < 2:
        raise FamilyTooSmall("need at least two vectors")
    tested = []
    ell = 1
    while (ell - 1) + 2**ell <= n:
        size = 2**ell
        coeff_vectors = trials.vectors(size)
        tested.append(f"ell={ell}: {trials.describe(size)}")
        for tup in itertools.combinations(range(ell - 1, n), size):
            for c in coeff_vectors:
                lhs = family.norm(family.mix(zip(c, tup)))
                rhs = epsilon * sum(abs(v) for v in c)
                if lhs.below(rhs):
                    return Verdict.violated(
                        ell=ell,
                        indices=list(tup),
                        coeffs=list(c),
                        lhs=lhs,
                        rhs=rhs,
                    )
        ell += 1
    return Verdict.inconclusive("; ".join(tested))


# ---------------------------------------------------------------------------
# convex block minimization

def _antichains(closure):
    def rec(v):
        out = []
        child_opts = [rec(c) for c in closure.children(v)]
        for combo in itertools.product(*child_opts):
            out.append(tuple(itertools.chain.from_iterable(combo)))
        out.append((v,))
        return out

    return [a for a in rec(()) if a]


def _functional_supports(closure, kind, p):
    """Node sets over which sign patterns generate the polyhedral norm."""
    if len(closure) > 20:
        raise FunctionalSetTooLarge(
            f"support closure of {len(closure)} nodes generates more than "
            f"{MAX_FUNCTIONALS} functionals"
        )
    if kind is BasisKind.L1:
        if p.is_zero:
            families = [((a, v),) for v in closure
                        for a in (v[:i] for i in range(len(v) + 1))]
        else:
            families = _segment_families(closure)
        supports = set()
        for fam in families:
            if not fam:
                continue
            nodes = []
            for a, v in fam:
                nodes.extend(v[:i] for i in range(len(a), len(v) + 1))
            supports.add(tuple(sorted(set(nodes), key=node_key)))
        supports = sorted(supports)
    elif p.is_zero:
        supports = [(v,) for v in closure]
    else:
        supports = sorted(
            tuple(sorted(a, key=node_key)) for a in set(_antichains(closure))
        )
    budget = sum(2 ** len(u) for u in supports)
    if budget > MAX_FUNCTIONALS:
        raise FunctionalSetTooLarge(
            f"{budget} generating functionals exceed the bound {MAX_FUNCTIONALS}"
        )
    return supports


def _maximal_supports(supports):
    # u >= 0 makes a support row redundant whenever a superset row exists
    sets = [frozenset(u) for u in supports]
    keep = []
    for i, u in enumerate(sets):
        if not any(u < sets[j] for j in range(len(sets)) if j != i):
            keep.append(supports[i])
    return keep


def _lp_min_norm_baire(vectors, kind, p):
    """Exact LP for the polyhedral contexts.

    The signed generating functionals factor through per-node absolute
    values: with auxiliaries u_s >= |y(s)| the norm is the maximum of
    sum_{s in U} u_s over the admissible node sets U, so the sign
    expansion never has to be materialized.  Inclusion-maximal U suffice
    because the auxiliaries are nonnegative.
    """
    w = len(vectors)
    support = set()
    for v in vectors:
        support |= v.support
    closure = prefix_closure(support)
    nodes = list(closure)
    index = {s: j for j, s in enumerate(nodes)}
    supports = _maximal_supports(_functional_supports(closure, kind, p))
    n = len(nodes)
    zero = Fraction(0)
    # variables: a_0..a_{w-1}, u_0..u_{n-1}, t
    width = w + n + 1
    c = [zero] * (w + n) + [Fraction(1)]
    a_eq = [[Fraction(1)] * w + [zero] * (n + 1)]
    b_eq = [Fraction(1)]
    a_ub = []
    b_ub = []
    for s, j in index.items():
        coords = [v[s] for v in vectors]
        for sign in (1, -1):
            row = [sign * cv for cv in coords] + [zero] * (n + 1)
            row[w + j] = Fraction(-1)
            a_ub.append(row)
            b_ub.append(zero)
    for u_set in supports:
        row = [zero] * width
        for s in u_set:
            row[w + index[s]] = Fraction(1)
        row[-1] = Fraction(-1)
        a_ub.append(row)
        b_ub.append(zero)
    value, sol = solve_lp(c, a_ub, b_ub, a_eq, b_eq)
    return tuple(sol[:w]), NormValue.exact(value, 1)


def _lp_min_norm_steps(steps):
    w = len(steps)
    res = max(f.resolution for f in steps)
    cells = 2**res
    width = Fraction(1, cells)
    refined = [f.refine(res).values for f in steps]
    # variables: a_0..a_{w-1}, u_0..u_{cells-1}; minimize width * sum(u)
    c = [Fraction(0)] * w + [width] * cells
    a_eq = [[Fraction(1)] * w + [Fraction(0)] * cells]
    b_eq = [Fraction(1)]
    a_ub = []
    b_ub = []
    for cell in range(cells):
        for sign in (1, -1):
            row = [sign * refined[i][cell] for i in range(w)]
            row += [
                Fraction(-1) if j == cell else Fraction(0) for j in range(cells)
            ]
            a_ub.append(row)
            b_ub.append(Fraction(0))
    value, sol = solve_lp(c, a_ub, b_ub, a_eq, b_eq)
    return tuple(sol[:w]), NormValue.exact(value, 1)


def _project_simplex(v):
    u = sorted(v, reverse=True)
    theta = 0.0
    css = 0.0
    for i, ui in enumerate(u):
        css += ui
        t = (css - 1.0) / (i + 1)
        if ui - t > 0:
            theta = t
    return [max(x - theta, 0.0) for x in v]


def _float_subgradient(vectors, a, context):
    kind, p = context.kind, context.p
    combo = linear_combination(
        [(Fraction(ai).limit_denominator(10**12), x) for ai, x in zip(a, vectors)]
    )
    if p.is_zero:
        nv, seg = baire_norm_zero(combo, kind, with_witness=True)
        f = nv.approx
        if seg is None or f == 0.0:
            return f, [0.0] * len(a)
        block = [float(c) for c in segment_vector(combo, seg)]
        g = _block_subgradient(block, kind)
        grad = [
            sum(gi * float(ci) for gi, ci in zip(g, segment_vector(x, seg)))
            for x in vectors
        ]
        return f, grad
    nv, family = baire_norm_witness(combo, kind, p)
    f = nv.approx
    if f == 0.0 or not family:
        return f, [0.0] * len(a)
    pf = float(p.value)
    grad = [0.0] * len(a)
    for seg in family:
        block = [float(c) for c in segment_vector(combo, seg)]
        bn = _block_norm_float(block, kind)
        if bn == 0.0:
            continue
        g = _block_subgradient(block, kind)
        for i, x in enumerate(vectors):
            inner = sum(
                gi * float(ci) for gi, ci in zip(g, segment_vector(x, seg))
            )
            grad[i] += bn ** (pf - 1.0) * inner
    scale = f ** (1.0 - pf)
    return f, [scale * gi for gi in grad]


def _block_norm_float(block, kind):
    if kind is BasisKind.L1:
        return sum(abs(b) for b in block)
    if kind is BasisKind.L2:
        return math.sqrt(sum(b * b for b in block))
    return max((abs(b) for b in block), default=0.0)


def _block_subgradient(block, kind):
    if kind is BasisKind.L1:
        return [1.0 if b > 0 else (-1.0 if b < 0 else 0.0) for b in block]
    if kind is BasisKind.L2:
        nrm = math.sqrt(sum(b * b for b in block))
        return [b / nrm for b in block] if nrm else [0.0] * len(block)
    top = max(range(len(block)), key=lambda i: abs(block[i]))
    g = [0.0] * len(block)
    g[top] = 1.0 if block[top] >= 0 else -1.0
    return g


SUBGRADIENT_ITERATIONS = 400


def convex_block_min(family, window):
    """Convex combination over a consecutive window minimizing the norm.

    Polyhedral contexts (summable or sup ingredient with p in {1, 0}, and
    dyadic-step families) are solved exactly by a rational simplex over
    the enumerated generating functionals; other contexts run projected
    subgradient descent (400 iterations, roughly 1e-6 on benign
    instances) and return an approximate value.
    """
    start, length = window
    n = len(family)
    if not (0 <= start and length >= 0 and start + length < n):
        raise WindowOutOfRange(f"window {window} does not fit a family of {n}")
    vectors = list(family.vectors[start : start + length + 1])
    ctx = family.context
    if isinstance(ctx, StepContext):
        return _lp_min_norm_steps(vectors)
    if ctx.polyhedral:
        return _lp_min_norm_baire(vectors, ctx.kind, ctx.p)
    w = len(vectors)
    a = [1.0 / w] * w
    best_f, best_a = None, list(a)
    for t in range(SUBGRADIENT_ITERATIONS):
        f, g = _float_subgradient(vectors, a, ctx)
        if best_f is None or f < best_f:
            best_f, best_a = f, list(a)
        step = 0.5 / math.sqrt(t + 1.0)
        a = _project_simplex([ai - step * gi for ai, gi in zip(a, g)])
    f, _ = _float_subgradient(vectors, best_a, ctx)
    return tuple(best_a), NormValue.approximate(min(f, best_f))


def weak_null_probe(family, epsilon):
    """Look for a full partition into consecutive convex blocks of norm
    below epsilon.

    Tries uniform window lengths 1..len(family) (final remainder window
    may be shorter).  Pass carries the witnessing blocks; a finite prefix
    can never refute weak nullity, so the alternative is Inconclusive.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise InvalidParameter("epsilon must be positive")
    n = len(family)
    if n < 2:
        raise FamilyTooSmall("need at least two vectors")
    for length in range(1, n + 1):
        blocks = []
        all_below = True
        for start in range(0, n, length):
            win_len = min(length, n - start) - 1
            coeffs, value = convex_block_min(family, (start, win_len))
            if not value.below(epsilon):
                all_below = False
                break
            blocks.append(
                {
                    "start": start,
                    "length": win_len + 1,
                    "coeffs": list(coeffs),
                    "value": value,
                }
            )
        if all_below:
            return Verdict.passed(
                witness={"window_length": length, "blocks": blocks},
                tested=f"uniform window lengths 1..{n}",
            )
    return Verdict.inconclusive(
        f"uniform consecutive window partitions of lengths 1..{n} "
        f"(remainder window shorter) all contain a block >= {epsilon}"
    )
