"""Finite trees on the naturals: extension order, segments, derivation, rank.

Nodes are plain tuples of naturals.  A tree is a prefix-closed finite set
of nodes; the empty tuple is the root.  Everything here is immutable and
every operation is a pure function, so values are safe to share across
threads.
"""

from dataclasses import dataclass
import random as _random

from .errors import (
    BudgetExceeded,
    InvalidParameter,
    InvalidSegment,
    PrefixClosureViolation,
)

Node = tuple

# Overflow contract: entries and depths beyond these bounds are rejected
# outright instead of silently degrading.
MAX_ENTRY = 2**32 - 1
MAX_DEPTH = 2**16


def node_key(node):
    """Length-lexicographic sort key; the canonical node ordering."""
    return (len(node), node)


def check_node(node):
    node = tuple(node)
    if len(node) > MAX_DEPTH:
        raise InvalidParameter(f"node depth {len(node)} exceeds {MAX_DEPTH}")
    for e in node:
        if not isinstance(e, int) or isinstance(e, bool) or e < 0:
            raise InvalidParameter(f"node entries must be naturals, got {e!r}")
        if e > MAX_ENTRY:
            raise InvalidParameter(f"node entry {e} exceeds {MAX_ENTRY}")
    return node


def is_prefix(s, t):
    """True iff t extends s, i.e. s <= t in the tree order."""
    return len(s) <= len(t) and t[: len(s)] == s


def comparable(s, t):
    return is_prefix(s, t) or is_prefix(t, s)


class FiniteTree:
    """A prefix-closed finite set of nodes.

    Construct through make_tree (which validates) or the generators below.
    Iteration is in length-lexicographic order.
    """

    __slots__ = ("_nodes", "_sorted", "_children", "_hash")

    def __init__(self, nodes, _validated=False):
        ns = frozenset(tuple(n) for n in nodes)
        if not _validated:
            for n in ns:
                check_node(n)
                if n and n[:-1] not in ns:
                    raise PrefixClosureViolation(n, n[:-1])
        self._nodes = ns
        self._sorted = tuple(sorted(ns, key=node_key))
        self._children = None
        self._hash = None

    @property
    def nodes(self):
        return self._nodes

    def __len__(self):
        return len(self._nodes)

    def __iter__(self):
        return iter(self._sorted)

    def __contains__(self, node):
        return tuple(node) in self._nodes

    def __eq__(self, other):
        if not isinstance(other, FiniteTree):
            return NotImplemented
        return self._nodes == other._nodes

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._nodes)
        return self._hash

    def __repr__(self):
        return f"FiniteTree({list(self._sorted)!r})"

    def children(self, node):
        """Child nodes of `node` within the tree, in ascending label order."""
        if self._children is None:
            cmap = {n: [] for n in self._nodes}
            for n in self._sorted:
                if n:
                    cmap[n[:-1]].append(n)
            self._children = {k: tuple(v) for k, v in cmap.items()}
        return self._children.get(tuple(node), ())

    def is_leaf(self, node):
        return not self.children(node)


EMPTY_TREE = FiniteTree((), _validated=True)


def make_tree(node_list):
    """Build a tree from a list of nodes, deduplicating.

    Raises PrefixClosureViolation if some node's prefix is missing; the set
    is never closed silently.
    """
    nodes = {check_node(n) for n in node_list}
    for n in nodes:
        for i in range(len(n) - 1, -1, -1):
            if n[:i] not in nodes:
                raise PrefixClosureViolation(n, n[:i])
    return FiniteTree(nodes, _validated=True)


def prefix_closure(nodes):
    """Smallest prefix-closed set containing `nodes`, as a FiniteTree."""
    closed = set()
    for n in nodes:
        n = tuple(n)
        for i in range(len(n) + 1):
            closed.add(n[:i])
    return FiniteTree(closed, _validated=True)


def derived_tree(tree):
    """Nodes of `tree` having a proper extension in `tree`.

    In a prefix-closed set a node has a proper extension exactly when it
    has a child, so the derived tree is the set of parents.
    """
    return FiniteTree(
        {n[:-1] for n in tree.nodes if n}, _validated=True
    )


def order_index(tree):
    """Number of derivations until the tree is empty; 0 iff already empty."""
    count = 0
    while len(tree):
        tree = derived_tree(tree)
        count += 1
    return count


def subtree_at(tree, k):
    """The tree {s : (k) + s in tree}; empty when (k) is not a node."""
    k = int(k)
    return FiniteTree(
        {n[1:] for n in tree.nodes if n and n[0] == k}, _validated=True
    )


def restricted_at(tree, k):
    """The plain node set {s in tree : (k) <= s}; not itself a tree."""
    k = int(k)
    return frozenset(n for n in tree.nodes if n and n[0] == k)


@dataclass(frozen=True)
class Segment:
    """An order-convex chain, stored by its endpoints.

    The denoted node set is every prefix of max_node of length at least
    len(min_node); storing endpoints keeps membership O(depth).
    """

    min_node: Node
    max_node: Node

    def __post_init__(self):
        object.__setattr__(self, "min_node", tuple(self.min_node))
        object.__setattr__(self, "max_node", tuple(self.max_node))
        if not is_prefix(self.min_node, self.max_node):
            raise InvalidSegment(
                f"{self.min_node} is not a prefix of {self.max_node}"
            )

    def nodes(self):
        lo, hi = len(self.min_node), len(self.max_node)
        return tuple(self.max_node[:i] for i in range(lo, hi + 1))

    def __contains__(self, node):
        node = tuple(node)
        return len(node) >= len(self.min_node) and is_prefix(
            node, self.max_node
        )


def segment_in_tree(tree, segment):
    """True iff every node the segment denotes belongs to `tree`.

    Because trees are prefix-closed it suffices that the max node belongs.
    """
    return segment.max_node in tree


def is_segment(tree, node_set):
    """True iff `node_set` is totally ordered and order-convex in `tree`."""
    nodes = [tuple(n) for n in node_set]
    for n in nodes:
        if n not in tree:
            raise InvalidSegment(f"{n} is not a node of the tree")
    if not nodes:
        return True
    nodes.sort(key=node_key)
    top = nodes[-1]
    if any(not is_prefix(n, top) for n in nodes):
        return False
    # Convexity: every in-tree node between the shortest and longest
    # member must itself be a member.
    present = set(nodes)
    for i in range(len(nodes[0]), len(top) + 1):
        if top[:i] in tree and top[:i] not in present:
            return False
    return True


def segments_incomparable(seg1, seg2):
    """Complete incomparability of two segments.

    Equivalent to incomparability of the min nodes: any comparable pair
    (s, t) with s in seg1, t in seg2 makes both min nodes prefixes of the
    longer of s, t, hence comparable; the converse is immediate.
    """
    return not comparable(seg1.min_node, seg2.min_node)


# ---------------------------------------------------------------------------
# generators

def full_kary(k, d):
    """The full k-ary tree of depth d."""
    if k < 1:
        raise InvalidParameter("full_kary requires k >= 1")
    if d < 0:
        raise InvalidParameter("full_kary requires d >= 0")
    nodes = [()]
    frontier = [()]
    for _ in range(d):
        frontier = [n + (i,) for n in frontier for i in range(k)]
        nodes.extend(frontier)
    return FiniteTree(nodes, _validated=True)


def spine(d):
    """The chain of length d: nodes (0,)*i for i = 0..d."""
    if d < 0:
        raise InvalidParameter("spine requires d >= 0")
    return FiniteTree([(0,) * i for i in range(d + 1)], _validated=True)


def random_tree(n, seed):
    """A prefix-closed tree with exactly n nodes, deterministic per seed.

    Grows from the root by attaching, n-1 times, a fresh child (labelled
    by the current child count) to a node chosen uniformly among the
    existing ones.  The generator is random.Random(seed), CPython's
    Mersenne Twister, so corpora are reproducible across platforms.
    """
    if n < 0:
        raise InvalidParameter("random_tree requires n >= 0")
    if n == 0:
        return EMPTY_TREE
    rng = _random.Random(seed)
    nodes = [()]
    child_count = {(): 0}
    for _ in range(n - 1):
        parent = nodes[rng.randrange(len(nodes))]
        child = parent + (child_count[parent],)
        child_count[parent] += 1
        child_count[child] = 0
        nodes.append(child)
    return FiniteTree(nodes, _validated=True)


def generate_tree(family, *, k=None, d=None, n=None, seed=None):
    """Dispatch by family name: "full_kary", "spine" or "random"."""
    if family == "full_kary":
        return full_kary(k, d)
    if family == "spine":
        return spine(d)
    if family == "random":
        return random_tree(n, 0 if seed is None else seed)
    raise InvalidParameter(f"unknown tree family {family!r}")


# ---------------------------------------------------------------------------
# lazy trees and the well-foundedness probe

@dataclass(frozen=True)
class Cofinite:
    """Child descriptor: every natural except `excluded` is a child.

    The probe explores the least non-excluded label as a representative
    and treats its siblings as exchangeable; a children_of callback that
    returns Cofinite asserts that the subtrees below those siblings are
    identical up to relabelling.
    """

    excluded: tuple = ()

    def representative(self):
        k = 0
        banned = set(self.excluded)
        while k in banned:
            k += 1
        return k


class LazyTree:
    """A tree given by a child-enumeration callback, probed to finite depth.

    children_of(node) must return either an iterable of child labels or a
    Cofinite descriptor, for any node reachable from the root.
    """

    __slots__ = ("children_of", "depth_budget")

    def __init__(self, children_of, depth_budget=64):
        if depth_budget < 0:
            raise InvalidParameter("depth_budget must be nonnegative")
        self.children_of = children_of
        self.depth_budget = depth_budget


WELL_FOUNDED_CERTIFIED = "well_founded_certified"
BRANCH_CANDIDATE = "branch_candidate"


@dataclass(frozen=True)
class ProbeVerdict:
    """Outcome of a finite well-foundedness probe.

    The verdict is asymmetric on purpose: certification is a proof that no
    chain of the probed length exists, but a branch candidate is only a
    deep chain, never a proof of ill-foundedness.
    """

    status: str
    prefix: Node | None = None

    @property
    def is_certified(self):
        return self.status == WELL_FOUNDED_CERTIFIED


def probe_wf(lazy, depth):
    """Explore `lazy` exhaustively below `depth`.

    Returns BranchCandidate(prefix) for the lexicographically least chain
    of length `depth` if one exists, else WellFoundedCertified.  Raises
    BudgetExceeded when depth exceeds the tree's declared budget.
    """
    if depth > lazy.depth_budget:
        raise BudgetExceeded(
            f"requested depth {depth} exceeds budget {lazy.depth_budget}"
        )
    if depth == 0:
        return ProbeVerdict(BRANCH_CANDIDATE, ())
    stack = [()]
    while stack:
        node = stack.pop()
        if len(node) == depth:
            return ProbeVerdict(BRANCH_CANDIDATE, node)
        descriptor = lazy.children_of(node)
        if isinstance(descriptor, Cofinite):
            labels = (descriptor.representative(),)
        else:
            labels = sorted(descriptor)
        for label in reversed(labels):
            stack.append(node + (int(label),))
    return ProbeVerdict(WELL_FOUNDED_CERTIFIED)


def lazy_from_tree(tree, depth_budget=64):
    """View a finite tree through the lazy interface."""

    def children_of(node):
        return tuple(c[-1] for c in tree.children(node))

    return LazyTree(children_of, depth_budget)


def zeros_branch(depth_budget=64):
    """The single infinite branch of zeros."""

    def children_of(node):
        return (0,) if all(e == 0 for e in node) else ()

    return LazyTree(children_of, depth_budget)


def depth_bounded(d, depth_budget=64):
    """All nodes of length <= d; every internal node has cofinitely
    many (in fact all) naturals as children."""

    def children_of(node):
        return Cofinite() if len(node) < d else ()

    return LazyTree(children_of, depth_budget)
