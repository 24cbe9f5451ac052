"""Shared test helpers: exhaustive tree enumeration, seeded vectors, and
definitional oracles kept independent of the library's fast paths."""

import random
from fractions import Fraction

from bairelab import BaireVector
from bairelab.trees import FiniteTree, is_prefix


def tree_shapes(max_nodes, branching):
    """All prefix-closed trees with 1..max_nodes nodes and entries below
    `branching`, as tuples of node tuples."""
    by_size = {1: [((),)]}
    for n in range(2, max_nodes + 1):
        out = []

        def distribute(slot, remaining, acc):
            if slot == branching:
                if remaining == 0:
                    out.append(tuple(sorted(acc, key=lambda t: (len(t), t))))
                return
            distribute(slot + 1, remaining, acc)
            for size in range(1, remaining + 1):
                for sub in by_size[size]:
                    shifted = [(slot,) + node for node in sub]
                    distribute(slot + 1, remaining - size, acc + shifted)

        distribute(0, n - 1, [()])
        by_size[n] = out
    for n in range(1, max_nodes + 1):
        yield from by_size[n]


def canonical_shapes(max_nodes, branching=3):
    """Shapes whose child labels are contiguous 0..c-1 at every node:
    one representative per sibling-relabelling class."""
    for nodes in tree_shapes(max_nodes, branching):
        node_set = set(nodes)
        ok = True
        for v in nodes:
            labels = sorted(n[-1] for n in node_set
                            if len(n) == len(v) + 1 and n[: len(v)] == v)
            if labels != list(range(len(labels))):
                ok = False
                break
        if ok:
            yield nodes


def random_rational_vector(tree, rng, allow_zero=False):
    coeffs = {}
    for node in tree:
        num = rng.randint(-6, 6)
        if not allow_zero and num == 0:
            num = 1
        coeffs[node] = Fraction(num, rng.randint(1, 4))
    return BaireVector(tree, coeffs)


def seeded_rng(seed):
    return random.Random(seed)


def derived_oracle(tree):
    """Definitional scan over all pairs."""
    nodes = set(tree.nodes)
    return {
        s
        for s in nodes
        if any(s != t and is_prefix(s, t) for t in nodes)
    }


def random_subtree(tree, rng):
    """A random prefix-closed subset, grown root-down."""
    kept = set()
    for node in tree:  # length-lex order: parents first
        if node == ():
            if rng.random() < 0.9:
                kept.add(node)
        elif node[:-1] in kept and rng.random() < 0.7:
            kept.add(node)
    return FiniteTree(kept, _validated=True)


def compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail


def simplex_grid(width, max_denominator):
    """Every point of the probability simplex with denominator bounded by
    max_denominator."""
    points = set()
    for d in range(1, max_denominator + 1):
        for comp in compositions(d, width):
            points.add(tuple(Fraction(c, d) for c in comp))
    return sorted(points)


def grid_min(family, window, max_denominator=6):
    """Dense rational grid oracle for convex block minimization."""
    start, length = window
    best = None
    for point in simplex_grid(length + 1, max_denominator):
        combo = family.mix([(a, start + i) for i, a in enumerate(point)])
        nv = family.norm(combo)
        if best is None or nv.compare(best) < 0:
            best = nv
    return best
