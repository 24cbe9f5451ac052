import itertools

import pytest

from bairelab import (
    Cofinite,
    FiniteTree,
    LazyTree,
    Segment,
    derived_tree,
    full_kary,
    generate_tree,
    is_segment,
    lazy_from_tree,
    make_tree,
    order_index,
    prefix_closure,
    probe_wf,
    random_tree,
    restricted_at,
    segments_incomparable,
    spine,
    subtree_at,
)
from bairelab.errors import (
    BudgetExceeded,
    InvalidParameter,
    InvalidSegment,
    PrefixClosureViolation,
)
from bairelab.trees import BRANCH_CANDIDATE, depth_bounded, zeros_branch

from util import canonical_shapes, derived_oracle, random_subtree, seeded_rng


def test_make_tree_accepts_prefix_closed():
    t = make_tree([(), (0,), (1,)])
    assert len(t) == 3
    assert (0,) in t and (2,) not in t


def test_make_tree_rejects_missing_prefix():
    with pytest.raises(PrefixClosureViolation) as exc:
        make_tree([(0, 1)])
    assert exc.value.node == (0, 1)
    assert exc.value.missing_prefix == (0,)


def test_make_tree_collapses_duplicates():
    t = make_tree([(), (), (0,)])
    assert len(t) == 2


def test_make_tree_rejects_oversized_entries():
    with pytest.raises(InvalidParameter):
        make_tree([(), (2**32,)])


def test_derived_tree_examples():
    t = make_tree([(), (0,), (1,), (0, 0)])
    assert derived_tree(t).nodes == {(), (0,)}
    assert len(derived_tree(make_tree([()]))) == 0
    assert len(derived_tree(FiniteTree(()))) == 0


def test_derived_tree_matches_definitional_scan():
    for nodes in canonical_shapes(6):
        t = make_tree(nodes)
        assert derived_tree(t).nodes == derived_oracle(t)


def test_order_index_examples():
    assert order_index(make_tree([()])) == 1
    assert order_index(full_kary(2, 2)) == 3
    assert order_index(FiniteTree(())) == 0


def test_order_index_counts_derivations_sharply():
    rng = seeded_rng(7)
    for _ in range(50):
        t = random_tree(rng.randint(1, 25), rng.randint(0, 10**6))
        o = order_index(t)
        cur = t
        for step in range(o):
            assert len(cur) > 0
            cur = derived_tree(cur)
        assert len(cur) == 0


def test_rank_of_full_kary():
    for k in range(1, 4):
        for d in range(0, 5):
            assert order_index(full_kary(k, d)) == d + 1


def test_monotone_rank_under_subtrees():
    rng = seeded_rng(13)
    for _ in range(100):
        t = random_tree(rng.randint(1, 25), rng.randint(0, 10**6))
        s = random_subtree(t, rng)
        assert s.nodes <= t.nodes
        assert order_index(s) <= order_index(t)


def test_localized_rank_drop():
    # o(T(k)) < o(T) for every root child, on seeded random trees
    rng = seeded_rng(99)
    for _ in range(200):
        t = random_tree(rng.randint(2, 30), rng.randint(0, 10**6))
        o = order_index(t)
        for child in t.children(()):
            assert order_index(subtree_at(t, child[0])) < o


def test_subtree_and_restriction_examples():
    t = make_tree([(), (0,), (1,), (0, 0)])
    assert subtree_at(t, 0).nodes == {(), (0,)}
    assert subtree_at(t, 1).nodes == {()}
    assert len(subtree_at(t, 5)) == 0
    assert restricted_at(t, 0) == {(0,), (0, 0)}
    assert restricted_at(t, 5) == frozenset()


def test_prefix_closure_preserved():
    for nodes in canonical_shapes(6):
        t = make_tree(nodes)
        make_tree(derived_tree(t).nodes)
        for k in {n[0] for n in t.nodes if n}:
            make_tree(subtree_at(t, k).nodes)


def test_is_segment_examples():
    chain = make_tree([(), (0,), (0, 0)])
    assert is_segment(chain, [(), (0,)])
    assert not is_segment(chain, [(), (0, 0)])
    forked = make_tree([(), (0,), (1,)])
    assert not is_segment(forked, [(0,), (1,)])
    assert is_segment(chain, [])
    with pytest.raises(InvalidSegment):
        is_segment(chain, [(5,)])


def test_segment_endpoints_and_nodes():
    seg = Segment((0,), (0, 1, 2))
    assert seg.nodes() == ((0,), (0, 1), (0, 1, 2))
    assert (0, 1) in seg and () not in seg
    with pytest.raises(InvalidSegment):
        Segment((1,), (0, 1))


def test_segments_incomparable_examples():
    assert segments_incomparable(Segment((0,), (0,)), Segment((1,), (1,)))
    assert not segments_incomparable(Segment((), (0,)), Segment((1,), (1,)))
    assert segments_incomparable(Segment((0, 0), (0, 0)), Segment((0, 1), (0, 1)))


def _all_segments(tree):
    for v in tree:
        for i in range(len(v) + 1):
            yield Segment(v[:i], v)


def test_segment_incomparability_equals_min_node_incomparability():
    # exhaustive over canonical small trees: endpoint test == full scan
    for nodes in canonical_shapes(5):
        t = make_tree(nodes)
        segs = list(_all_segments(t))
        for s1, s2 in itertools.combinations(segs, 2):
            full_scan = not any(
                (a == b or a == b[: len(a)] or b == a[: len(b)])
                for a in s1.nodes()
                for b in s2.nodes()
            )
            assert segments_incomparable(s1, s2) == full_scan


def test_generate_tree_families():
    assert len(full_kary(2, 2)) == 7
    assert spine(3).nodes == {(), (0,), (0, 0), (0, 0, 0)}
    t = random_tree(10, 42)
    assert len(t) == 10
    make_tree(t.nodes)
    assert random_tree(10, 42) == t
    assert generate_tree("full_kary", k=2, d=2) == full_kary(2, 2)
    with pytest.raises(InvalidParameter):
        full_kary(0, 2)
    with pytest.raises(InvalidParameter):
        generate_tree("mystery")


def test_probe_wf_zeros_branch():
    verdict = probe_wf(zeros_branch(), 10)
    assert verdict.status == BRANCH_CANDIDATE
    assert verdict.prefix == (0,) * 10


def test_probe_wf_certifies_bounded_depth():
    verdict = probe_wf(depth_bounded(3), 10)
    assert verdict.is_certified


def test_probe_wf_budget():
    lazy = zeros_branch(depth_budget=5)
    with pytest.raises(BudgetExceeded):
        probe_wf(lazy, 6)


def test_probe_wf_on_finite_tree():
    t = full_kary(2, 3)
    assert probe_wf(lazy_from_tree(t), 10).is_certified
    cand = probe_wf(lazy_from_tree(t), 3)
    assert cand.status == BRANCH_CANDIDATE
    assert cand.prefix == (0, 0, 0)


def test_probe_wf_cofinite_representative():
    seen = []

    def children_of(node):
        seen.append(node)
        return Cofinite(excluded=(0, 1)) if len(node) < 2 else ()

    verdict = probe_wf(LazyTree(children_of), 5)
    assert verdict.is_certified
    # only the representative child (label 2) was descended into
    assert (2,) in seen and (0,) not in seen


def test_prefix_closure_helper():
    t = prefix_closure([(2, 1)])
    assert t.nodes == {(), (2,), (2, 1)}
