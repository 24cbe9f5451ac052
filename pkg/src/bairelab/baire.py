"""Finitely supported vectors on a tree and their segment-family norms.

The norm of a vector assigns to every finite family of pairwise
completely incomparable segments the p-aggregate of the per-segment block
norms, and takes the supremum.  Two independent evaluators are provided:
a linear-time dynamic program (baire_norm) and an exponential exhaustive
enumeration (baire_norm_oracle); in exact mode they agree bit for bit.

Attainment of the supremum (finite support): a segment contributes one
coordinate per node it contains, so nodes carrying coefficient zero add
nothing to its block vector.  Trimming every segment to its first and
last support node, and dropping segments containing no support node,
leaves the family value unchanged while keeping it pairwise incomparable;
the trimmed family lives inside the prefix closure of the support.  The
supremum over all families therefore equals the maximum over the finitely
many families with endpoints in that closure.

Family structure: complete incomparability of two segments is equivalent
to incomparability of their min nodes (both min nodes are prefixes of any
comparable cross pair).  Consequently a valid family is exactly an
antichain of start nodes together with one downward segment per start
node, and once a segment starts at a node nothing else of the family may
meet that node's subtree.  The dynamic program mirrors this: at each node
either no segment has started yet (children contribute independently) or
a single segment starts here and owns the whole subtree.
"""

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType

from .bases import APPROX_TOL, BasisKind, NormValue, basis_norm, deleted_first
from .errors import (
    InvalidParameter,
    InvalidSegment,
    NonzeroRootCoefficient,
    SupportNotChain,
    SupportsNotIncomparable,
    TooLargeForOracle,
    TreeMismatch,
)
from .trees import (
    FiniteTree,
    Segment,
    comparable,
    node_key,
    prefix_closure,
    segment_in_tree,
    subtree_at,
)
from .verdicts import CheckReport

#: Environment variable bounding the oracle's closure size.
ORACLE_ENV = "BAIRELAB_MAX_ORACLE_NODES"
DEFAULT_MAX_ORACLE_NODES = 14


def max_oracle_nodes():
    raw = os.environ.get(ORACLE_ENV)
    if raw is None:
        return DEFAULT_MAX_ORACLE_NODES
    try:
        return int(raw)
    except ValueError:
        raise InvalidParameter(f"{ORACLE_ENV} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class ExponentP:
    """Aggregation exponent: a rational p >= 1, or the single-segment
    variant (value None, written "0" on the wire)."""

    value: Fraction | None

    @classmethod
    def of(cls, p):
        p = Fraction(p)
        if p == 0:
            return P_ZERO
        if p < 1:
            raise InvalidParameter("exponent must satisfy p >= 1 (or be 0)")
        return cls(p)

    @classmethod
    def coerce(cls, p):
        if isinstance(p, ExponentP):
            return p
        return cls.of(p)

    @property
    def is_zero(self):
        return self.value is None

    def __repr__(self):
        return "ExponentP(zero)" if self.is_zero else f"ExponentP({self.value})"


P_ZERO = ExponentP(None)


def exact_mode(kind, p):
    """The (kind, p) pairs whose p-th norm power is rational."""
    if p.is_zero:
        return True
    if kind in (BasisKind.L1, BasisKind.C0):
        return p.value in (1, 2)
    return p.value == 2


class BaireVector:
    """A finitely supported rational coefficient assignment on a tree.

    Zero coefficients are normalized away; every keyed node must belong
    to the tree.  Instances are immutable.
    """

    __slots__ = ("tree", "_coeffs", "_closure", "_scaled", "_hash")

    def __init__(self, tree, coeffs):
        if not isinstance(tree, FiniteTree):
            raise InvalidParameter("tree must be a FiniteTree")
        clean = {}
        for node, c in dict(coeffs).items():
            node = tuple(node)
            if node not in tree:
                raise InvalidParameter(f"coefficient node {node} not in tree")
            c = Fraction(c)
            if c != 0:
                clean[node] = c
        self.tree = tree
        self._coeffs = clean
        self._closure = None
        self._scaled = None
        self._hash = None

    @property
    def coeffs(self):
        return MappingProxyType(self._coeffs)

    @property
    def support(self):
        return frozenset(self._coeffs)

    def __getitem__(self, node):
        return self._coeffs.get(tuple(node), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, BaireVector):
            return NotImplemented
        return self.tree == other.tree and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.tree, frozenset(self._coeffs.items())))
        return self._hash

    def is_zero(self):
        return not self._coeffs

    def __repr__(self):
        items = sorted(self._coeffs.items(), key=lambda kv: node_key(kv[0]))
        return f"BaireVector({items!r})"

    def support_closure(self):
        """Prefix closure of the support, as a FiniteTree."""
        if self._closure is None:
            self._closure = prefix_closure(self._coeffs)
        return self._closure

    def scaled(self):
        """(denominator, integer coefficients): coeffs[n] = ints[n]/D."""
        if self._scaled is None:
            d = math.lcm(*(c.denominator for c in self._coeffs.values())) \
                if self._coeffs else 1
            ints = {n: int(c * d) for n, c in self._coeffs.items()}
            self._scaled = (d, ints)
        return self._scaled


def delta(tree, node, c=1):
    """The vector carrying coefficient c at a single node."""
    return BaireVector(tree, {tuple(node): Fraction(c)})


def vector_combine(a, x, b, y):
    """Coefficientwise a*x + b*y; both vectors must share a tree."""
    if x.tree != y.tree:
        raise TreeMismatch("vectors live on different trees")
    a, b = Fraction(a), Fraction(b)
    out = dict()
    for n, c in x.coeffs.items():
        out[n] = a * c
    for n, c in y.coeffs.items():
        out[n] = out.get(n, Fraction(0)) + b * c
    return BaireVector(x.tree, out)


def linear_combination(pairs):
    """Sum of coefficient-vector pairs sharing one tree."""
    pairs = list(pairs)
    if not pairs:
        raise InvalidParameter("empty combination has no ambient tree")
    tree = pairs[0][1].tree
    out = {}
    for a, x in pairs:
        if x.tree != tree:
            raise TreeMismatch("vectors live on different trees")
        a = Fraction(a)
        for n, c in x.coeffs.items():
            out[n] = out.get(n, Fraction(0)) + a * c
    return BaireVector(tree, out)


def segment_vector(x, segment):
    """Depth-indexed coefficient list of a segment's block vector, zeros
    included for chain nodes without coefficients."""
    if not segment_in_tree(x.tree, segment):
        raise InvalidSegment(
            f"segment {segment.min_node}..{segment.max_node} not in tree"
        )
    return [x[n] for n in segment.nodes()]


# ---------------------------------------------------------------------------
# dynamic program

def _post_order(closure):
    # children are strictly longer than parents, so descending length is
    # a valid post-order
    return sorted(closure, key=lambda n: (-len(n), n))


def _close_power(acc, kind, p, exact):
    if exact:
        if kind is BasisKind.L2:
            return acc  # acc is already the squared block norm; p == 2
        return acc ** p.value.numerator
    pf = float(p.value)
    if kind is BasisKind.L2:
        return acc ** (pf / 2.0)
    return acc ** pf


def _dp_rows(closure, coef, kind, p, exact, tops):
    """Run the two accumulations over the subtrees rooted at `tops`.

    Returns {top: (m, best)} where m is the best single-segment block
    accumulator starting at top and best is the best family power value
    within top's subtree.
    """
    zero = 0 if exact else 0.0
    m = {}
    best = {}
    order = [n for n in _post_order(closure)
             if any(n[: len(t)] == t for t in tops)]
    is_l1 = kind is BasisKind.L1
    is_l2 = kind is BasisKind.L2
    for v in order:
        kids = closure.children(v)
        cmax = zero
        csum = zero
        for c in kids:
            if m[c] > cmax:
                cmax = m[c]
            csum += best[c]
        a = coef(v)
        if is_l1:
            acc = abs(a) + cmax
        elif is_l2:
            acc = a * a + cmax
        else:
            acc = abs(a) if abs(a) > cmax else cmax
        m[v] = acc
        closed = _close_power(acc, kind, p, exact)
        best[v] = closed if closed > csum else csum
    return {t: (m[t], best[t]) for t in tops}


def _dp_total(x, kind, p, exact, parallel):
    closure = x.support_closure()
    if not len(closure):
        return (0 if exact else 0.0, 1)
    if exact:
        d, ints = x.scaled()
        coef = lambda n: ints.get(n, 0)
        scale = d ** p.value.numerator if kind is not BasisKind.L2 else d * d
    else:
        floats = {n: float(c) for n, c in x.coeffs.items()}
        coef = lambda n: floats.get(n, 0.0)
        scale = 1
    root = ()
    kids = closure.children(root)
    if parallel and len(kids) > 1:
        with ThreadPoolExecutor(max_workers=len(kids)) as pool:
            rows = list(
                pool.map(
                    lambda c: _dp_rows(closure, coef, kind, p, exact, (c,))[c],
                    kids,
                )
            )
    else:
        table = _dp_rows(closure, coef, kind, p, exact, kids)
        rows = [table[c] for c in kids]
    zero = 0 if exact else 0.0
    cmax = zero
    csum = zero
    for mc, bc in rows:
        if mc > cmax:
            cmax = mc
        csum += bc
    a = coef(root)
    if kind is BasisKind.L1:
        acc = abs(a) + cmax
    elif kind is BasisKind.L2:
        acc = a * a + cmax
    else:
        acc = abs(a) if abs(a) > cmax else cmax
    closed = _close_power(acc, kind, p, exact)
    total = closed if closed > csum else csum
    return total, scale


def baire_norm(x, kind, p, *, parallel=False):
    """Norm of x: supremum over families of pairwise incomparable
    segments of the p-aggregate of per-segment block norms.

    Exact for (L1 or C0, p in {1, 2}) and (L2, p = 2); binary64
    otherwise, with downstream comparisons at APPROX_TOL.
    """
    p = ExponentP.coerce(p)
    if p.is_zero:
        raise InvalidParameter("use baire_norm_zero for the p = 0 variant")
    exact = exact_mode(kind, p)
    total, scale = _dp_total(x, kind, p, exact, parallel)
    if exact:
        return NormValue.exact(Fraction(total, scale), p.value)
    return NormValue.approximate(total ** (1.0 / float(p.value)))


# ---------------------------------------------------------------------------
# witness-producing variants (Fractions throughout; slower, reproducible)

def _family_key(family):
    return tuple(
        (node_key(s.min_node), node_key(s.max_node)) for s in family
    )


def _trim_segment(x, min_node, max_node):
    """Trim a chain to its support endpoints; None if support-free."""
    chain = [max_node[:i] for i in range(len(min_node), len(max_node) + 1)]
    carriers = [n for n in chain if x[n] != 0]
    if not carriers:
        return None
    return Segment(carriers[0], carriers[-1])


def _sorted_family(segs):
    return tuple(sorted(segs, key=lambda s: (node_key(s.min_node),
                                             node_key(s.max_node))))


def _better(cand, incumbent):
    """Pick (value, family) maximizing value, tie toward least family."""
    if incumbent is None:
        return cand
    if cand[0] != incumbent[0]:
        return cand if cand[0] > incumbent[0] else incumbent
    return cand if _family_key(cand[1]) < _family_key(incumbent[1]) else incumbent


def _witness_dp(x, kind, p, exact):
    closure = x.support_closure()
    if not len(closure):
        return (Fraction(0) if exact else 0.0), ()
    coeffs = x.coeffs
    if exact:
        coef = lambda n: coeffs.get(n, Fraction(0))
    else:
        coef = lambda n: float(coeffs.get(n, 0))
    zero = Fraction(0) if exact else 0.0
    m = {}
    best = {}
    for v in _post_order(closure):
        kids = closure.children(v)
        # best single segment starting at v: extend toward the child with
        # the largest accumulator (ties toward the least deep endpoint)
        a = coef(v)
        ext_acc, ext_end = zero, v
        for c in kids:
            acc_c, end_c = m[c]
            if acc_c > ext_acc or (acc_c == ext_acc and
                                   node_key(end_c) < node_key(ext_end)):
                ext_acc, ext_end = acc_c, end_c
        if kind is BasisKind.L1:
            acc = abs(a) + ext_acc
        elif kind is BasisKind.L2:
            acc = a * a + ext_acc
        else:
            acc = abs(a) if abs(a) >= ext_acc else ext_acc
        end = v if ext_acc == zero else ext_end
        m[v] = (acc, end)
        closed = _close_power(acc, kind, p, exact)
        trimmed = _trim_segment(x, v, end)
        start_here = (closed, (trimmed,) if trimmed else ())
        csum = zero
        fam = []
        for c in kids:
            bv, bf = best[c]
            csum += bv
            fam.extend(bf)
        below = (csum, _sorted_family(fam))
        best[v] = _better(start_here, below)
    return best[()]


def baire_norm_witness(x, kind, p):
    """As baire_norm, also returning an attaining trimmed segment family,
    lexicographically least among the maximizers."""
    p = ExponentP.coerce(p)
    if p.is_zero:
        raise InvalidParameter("use baire_norm_zero_witness for p = 0")
    exact = exact_mode(kind, p)
    power, family = _witness_dp(x, kind, p, exact)
    if exact:
        return NormValue.exact(power, p.value), family
    return NormValue.approximate(power ** (1.0 / float(p.value))), family


# ---------------------------------------------------------------------------
# exhaustive oracle

@lru_cache(maxsize=512)
def _segment_families(closure):
    """Every valid family over `closure`: an antichain of start nodes,
    one downward segment per start node.  Exponential; oracle use only."""
    if not len(closure):
        return ((),)
    descendants = {
        v: tuple(u for u in closure if len(u) >= len(v) and u[: len(v)] == v)
        for v in closure
    }

    def fam(v):
        out = []
        child_opts = [fam(c) for c in closure.children(v)]
        for combo in itertools.product(*child_opts):
            merged = tuple(itertools.chain.from_iterable(combo))
            out.append(merged)
        for u in descendants[v]:
            out.append(((v, u),))
        return tuple(out)

    return fam(())


def _oracle_guard(closure):
    limit = max_oracle_nodes()
    if len(closure) > limit:
        raise TooLargeForOracle(
            f"support closure has {len(closure)} nodes, oracle bound is {limit}"
        )


def baire_norm_oracle(x, kind, p, *, with_witness=False):
    """Exhaustive reference evaluator; bit-identical to baire_norm in
    exact mode.  Requires the support closure to stay within
    BAIRELAB_MAX_ORACLE_NODES (default 14) nodes."""
    p = ExponentP.coerce(p)
    if p.is_zero:
        raise InvalidParameter("use baire_norm_zero for the p = 0 variant")
    closure = x.support_closure()
    _oracle_guard(closure)
    exact = exact_mode(kind, p)
    powers = {}
    for v in closure:
        for i in range(len(v) + 1):
            a = v[:i]
            nv = basis_norm(kind, segment_vector(x, Segment(a, v)))
            if exact:
                if kind is BasisKind.L2:
                    powers[(a, v)] = nv.power_base
                else:
                    powers[(a, v)] = nv.power_base ** p.value.numerator
            else:
                powers[(a, v)] = nv.approx ** float(p.value)
    zero = Fraction(0) if exact else 0.0
    incumbent = None
    for fam in _segment_families(closure):
        val = zero
        for seg in fam:
            val += powers[seg]
        if with_witness:
            trimmed = [_trim_segment(x, a, v) for a, v in fam]
            fam_w = _sorted_family([s for s in trimmed if s is not None])
            incumbent = _better((val, fam_w), incumbent)
        elif incumbent is None or val > incumbent[0]:
            incumbent = (val, ())
    total, family = incumbent
    nv = (
        NormValue.exact(total, p.value)
        if exact
        else NormValue.approximate(total ** (1.0 / float(p.value)))
    )
    return (nv, family) if with_witness else nv


# ---------------------------------------------------------------------------
# single-segment (p = 0) variant

def baire_norm_zero(x, kind, *, with_witness=False):
    """Maximum block norm over single segments with endpoints in the
    support closure; exact for every supported basis."""
    closure = x.support_closure()
    if not len(closure):
        nv = basis_norm(kind, [])
        return (nv, None) if with_witness else nv
    best_nv = None
    best_seg = None
    for v in closure:
        for i in range(len(v) + 1):
            seg = Segment(v[:i], v)
            nv = basis_norm(kind, segment_vector(x, seg))
            if best_nv is None or nv.compare(best_nv) > 0:
                best_nv, best_seg = nv, seg
            elif nv.compare(best_nv) == 0:
                key = (node_key(seg.min_node), node_key(seg.max_node))
                cur = (node_key(best_seg.min_node), node_key(best_seg.max_node))
                if key < cur:
                    best_seg = seg
    if with_witness:
        trimmed = _trim_segment(x, best_seg.min_node, best_seg.max_node)
        return best_nv, trimmed
    return best_nv


# ---------------------------------------------------------------------------
# exact identities

def _norm_power(x, kind, p, exact):
    nv = baire_norm(x, kind, p)
    if exact:
        return nv.power_base
    return nv.approx ** float(p.value)


def check_incomparable_additivity(ys, coeffs, kind, p):
    """Verify ||sum a_i y_i||^p == sum |a_i|^p ||y_i||^p for vectors with
    pairwise completely incomparable supports."""
    p = ExponentP.coerce(p)
    if p.is_zero:
        raise InvalidParameter("additivity is a p >= 1 identity")
    ys = list(ys)
    coeffs = [Fraction(c) for c in coeffs]
    if len(ys) != len(coeffs):
        raise InvalidParameter("one coefficient per vector is required")
    if not ys:
        raise InvalidParameter("at least one vector is required")
    tree = ys[0].tree
    for y in ys[1:]:
        if y.tree != tree:
            raise TreeMismatch("vectors live on different trees")
    supports = [sorted(y.support, key=node_key) for y in ys]
    for i in range(len(ys)):
        for j in range(i + 1, len(ys)):
            for s in supports[i]:
                for t in supports[j]:
                    if comparable(s, t):
                        raise SupportsNotIncomparable(i, j, (s, t))
    exact = exact_mode(kind, p)
    combined = linear_combination(zip(coeffs, ys))
    lhs = _norm_power(combined, kind, p, exact)
    if exact:
        rhs = Fraction(0)
        for a, y in zip(coeffs, ys):
            rhs += abs(a) ** p.value.numerator * _norm_power(y, kind, p, exact)
        return CheckReport(lhs == rhs, lhs, rhs, True)
    rhs = 0.0
    for a, y in zip(coeffs, ys):
        rhs += abs(float(a)) ** float(p.value) * _norm_power(y, kind, p, exact)
    return CheckReport(abs(lhs - rhs) <= APPROX_TOL, lhs, rhs, False)


def check_branch_isometry(x, kind, p):
    """For a chain-supported vector the norm equals the ingredient-basis
    norm of the depth-indexed coefficient list of the full chain."""
    p = ExponentP.coerce(p)
    supp = sorted(x.support, key=node_key)
    # adjacent comparability suffices: in length-lex order equal-length
    # distinct nodes are incomparable, so lengths strictly increase and
    # the prefix relation chains transitively
    for i in range(1, len(supp)):
        if not comparable(supp[i - 1], supp[i]):
            raise SupportNotChain(
                f"support nodes {supp[i-1]} and {supp[i]} are incomparable"
            )
    top = supp[-1] if supp else ()
    chain = [x[top[:i]] for i in range(len(top) + 1)] if supp else []
    block = basis_norm(kind, chain)
    lhs = baire_norm_zero(x, kind) if p.is_zero else baire_norm(x, kind, p)
    passed = lhs.equals(block)
    return CheckReport(passed, lhs, block, lhs.is_exact and block.is_exact)


def check_root_decomposition(x, kind, p):
    """With a zero root coefficient the norm power splits exactly across
    the root branches, each reindexed into its own subtree and measured
    in the first-term-deleted ingredient basis."""
    p = ExponentP.coerce(p)
    if p.is_zero:
        raise InvalidParameter("the decomposition is a p >= 1 identity")
    if x[()] != 0:
        raise NonzeroRootCoefficient("root coefficient must vanish")
    exact = exact_mode(kind, p)
    lhs = _norm_power(x, kind, p, exact)
    star = deleted_first(kind)
    rhs = Fraction(0) if exact else 0.0
    roots = sorted({n[0] for n in x.tree.nodes if n})
    for lam in roots:
        sub = subtree_at(x.tree, lam)
        coeffs = {n[1:]: c for n, c in x.coeffs.items() if n[0] == lam}
        if not coeffs:
            continue
        rhs += _norm_power(BaireVector(sub, coeffs), star, p, exact)
    if exact:
        return CheckReport(lhs == rhs, lhs, rhs, True)
    return CheckReport(abs(lhs - rhs) <= APPROX_TOL, lhs, rhs, False)
