import pytest
from hypothesis import given, strategies as st

from dsuniform.dstree import (
    Tree,
    decseq,
    generate_ds,
    graft,
    meet,
    member_ds,
    subtrees,
    validate_tree,
)
from dsuniform.errors import BudgetExceeded, GraftError, SequenceError, TreeError
from dsuniform.ordinal import OMEGA, parse_ordinal

from oracles import ds_nodes, lex2_sorted


def test_meet_examples():
    assert meet((3, 1), (3, 2, 0)) == (3,)
    assert meet((4, 2), (4, 2)) == (4, 2)
    assert meet((5,), (2,)) == ()


def test_decseq_rejects_non_decreasing():
    assert decseq([3, 1]) == (3, 1)
    with pytest.raises(SequenceError):
        decseq([1, 1])
    with pytest.raises(SequenceError):
        decseq([1, 3])


def test_decseq_with_transfinite_entries():
    w = OMEGA
    assert decseq([w, 5, 0]) == (w, 5, 0)
    assert decseq([parse_ordinal("4")]) == (4,)
    assert type(decseq([parse_ordinal("4")])[0]) is int


def test_graft_examples():
    assert set(graft((5,), Tree([(), (2,)]))) == {(), (5,), (5, 2)}
    assert set(graft((5,), Tree([()]))) == {(), (5,)}
    with pytest.raises(GraftError) as info:
        graft((2,), Tree([(), (3,)]))
    assert info.value.node == (2, 3)
    assert graft((), generate_ds(2)) == generate_ds(2)


def test_generate_ds_examples():
    assert set(generate_ds(0)) == {()}
    assert set(generate_ds(2)) == {(), (0,), (1,), (1, 0)}
    assert len(generate_ds(4)) == 16


@pytest.mark.parametrize("n", range(7))
def test_generate_ds_matches_subset_oracle(n):
    assert set(generate_ds(n)) == set(ds_nodes(n))


def test_generate_ds_budget_guard():
    with pytest.raises(BudgetExceeded):
        generate_ds(12, budget=1000)


def test_member_ds():
    assert member_ds(OMEGA, (5, 3))
    assert not member_ds(3, (3,))
    assert member_ds(0, ())
    assert member_ds(OMEGA, ())


def test_validate_tree():
    assert set(validate_tree([(), (1,)])) == {(), (1,)}
    with pytest.raises(TreeError) as info:
        validate_tree([(1, 0)])
    assert set(info.value.missing) == {(), (1,)}
    with pytest.raises(TreeError):
        validate_tree([])


def test_tree_storage_is_lex2_and_children_sorted():
    t = generate_ds(4)
    assert list(t.nodes) == lex2_sorted(ds_nodes(4))
    assert t.nodes[-1] == ()
    assert t.children(()) == ((0,), (1,), (2,), (3,))
    assert t.children((3,)) == ((3, 0), (3, 1), (3, 2))
    assert t.depth == 4
    assert [len(x) for x in t.bfs()] == sorted(len(x) for x in t)


def _closed_subsets(nodes):
    nodes = list(nodes)
    out = set()
    for mask in range(1 << len(nodes)):
        chosen = {x for i, x in enumerate(nodes) if mask >> i & 1}
        if () in chosen and all(x[:-1] in chosen for x in chosen if x):
            out.add(frozenset(chosen))
    return out


@pytest.mark.parametrize("n", range(4))
def test_subtrees_match_subset_oracle(n):
    found = [t.node_set for t in subtrees(generate_ds(n))]
    assert len(found) == len(set(found))
    assert set(found) == _closed_subsets(ds_nodes(n))


def test_subtree_counts():
    assert [len(subtrees(generate_ds(n))) for n in range(4)] == [1, 2, 6, 42]


seqs = st.lists(st.integers(0, 8), max_size=5, unique=True).map(lambda xs: tuple(sorted(xs, reverse=True)))


@given(seqs, seqs)
def test_meet_is_common_prefix(a, b):
    m = meet(a, b)
    assert a[: len(m)] == m == b[: len(m)]
    assert len(m) == min(len(a), len(b)) or a[len(m)] != b[len(m)]


@given(st.sets(seqs, max_size=8))
def test_prefix_closure_makes_a_tree(nodes):
    closed = {x[:k] for x in nodes for k in range(len(x) + 1)} | {()}
    t = Tree(closed)
    assert set(t) == closed
    assert len(t) == len(closed)
