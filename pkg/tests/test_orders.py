import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from dsuniform.dstree import generate_ds
from dsuniform.errors import BudgetExceeded, DomainError
from dsuniform.ordinal import OMEGA, parse_ordinal
from dsuniform.orders import (
    EQUAL,
    GREATER,
    LESS,
    LEX1,
    LEX2,
    ORDER3,
    DsTree,
    Ord,
    ProductOrd,
    ProductRevOrd,
    RevOrd,
    cmp,
    compare_elements,
    elements,
    embed_scattered,
    hausdorff_embed,
    le_star,
    lt_star,
    min_lex1,
    min_lex2,
    sort_key,
    star_relation,
)

import oracles

ORACLE = {LEX1: oracles.lex1_less, LEX2: oracles.lex2_less, ORDER3: oracles.order3_less}


def test_cmp_examples():
    assert cmp(LEX2, (3, 2), (3,)) == LESS
    assert cmp(LEX1, (3,), (3, 2)) == LESS
    assert cmp(ORDER3, (3, 2), (3, 1)) == LESS
    assert cmp(ORDER3, (2,), (3,)) == LESS
    assert cmp(LEX1, (2, 1), (2, 1)) == EQUAL


def test_star_examples():
    assert le_star((2, 1), (3,))
    assert not le_star((3,), (3, 2))
    assert not lt_star((4, 1), (4, 1))
    assert le_star((4, 1), (4, 1))
    assert star_relation((3,), (3, 2)) == "incomparable"
    assert star_relation((3, 2), (3, 0)) == "greater"


@pytest.mark.parametrize("kind", [LEX1, LEX2, ORDER3])
def test_cmp_agrees_with_oracle_on_ds4(kind):
    nodes = list(generate_ds(4))
    less = ORACLE[kind]
    for a, b in product(nodes, nodes):
        expected = EQUAL if a == b else (LESS if less(a, b) else GREATER)
        assert cmp(kind, a, b) == expected


def test_sort_keys_agree_with_cmp():
    nodes = list(generate_ds(4))
    for kind in (LEX1, LEX2, ORDER3):
        ordered = sorted(nodes, key=sort_key(kind))
        assert all(cmp(kind, x, y) == LESS for x, y in zip(ordered, ordered[1:]))


def test_orders_on_transfinite_entries():
    w = OMEGA
    assert cmp(LEX1, (w,), (w, 7)) == LESS
    assert cmp(LEX2, (5,), (w,)) == LESS
    assert lt_star((w, 3), (w + 1,))


def test_min_examples():
    assert min_lex2({(2,), (2, 1), (3,)}) == (2, 1)
    assert min_lex2({()}) == ()
    assert min_lex2({(5,), (4,)}) == (4,)
    assert min_lex1({(2,), (2, 1), (3,)}) == (2,)
    assert min_lex1({(1, 0)}) == (1, 0)
    assert min_lex1({(), (0,)}) == ()


def test_min_on_random_subsets_of_ds5():
    rng = random.Random(7)
    nodes = list(generate_ds(5))
    for _ in range(100):
        subset = rng.sample(nodes, rng.randint(1, len(nodes)))
        assert min_lex2(subset) == sorted(subset, key=sort_key(LEX2))[0]
        assert min_lex1(subset) == min(subset)


def test_min_of_empty_set_is_an_error():
    with pytest.raises(ValueError):
        min_lex2([])


def test_hausdorff_examples():
    assert hausdorff_embed(0, 1)((), 0) == (2, 1)
    assert hausdorff_embed(1, 1)((0,), 0) == (3, 2, 0)
    assert hausdorff_embed(0, 2, reversed=True)((), 1) == (4, 3)
    assert hausdorff_embed(2, 3).target == 2 + 6 + 1


def test_hausdorff_domain_errors():
    h = hausdorff_embed(2, 2)
    with pytest.raises(DomainError):
        h((2,), 0)
    with pytest.raises(DomainError):
        h((1,), 2)


def test_hausdorff_transfinite_parameters():
    h = hausdorff_embed(OMEGA, 2)
    image = h((5, 1), 1)
    assert image[:2] == (parse_ordinal("w+4"), parse_ordinal("w+2"))
    assert h.target == parse_ordinal("w+5")
    with pytest.raises(BudgetExceeded):
        h.domain()


@pytest.mark.parametrize("reverse", [False, True])
def test_hausdorff_images_are_decreasing_and_bounded(reverse):
    for a, b in product(range(4), range(1, 4)):
        h = hausdorff_embed(a, b, reverse)
        for eta, g in h.domain():
            image = h(eta, g)
            assert all(x > y for x, y in zip(image, image[1:]))
            assert image[0] < h.target


def test_embed_scattered_examples():
    bound, f = embed_scattered(Ord(2))
    assert cmp(ORDER3, f[0], f[1]) == LESS
    bound, f = embed_scattered(RevOrd(2))
    assert cmp(ORDER3, f[0], f[1]) == GREATER
    bound, f = embed_scattered(DsTree(1))
    assert f == {(): (), (0,): (0,)}


@pytest.mark.parametrize(
    "expr",
    [
        Ord(3),
        RevOrd(3),
        DsTree(3),
        ProductOrd(DsTree(2), 2),
        ProductRevOrd(DsTree(2), 3),
        ProductOrd(ProductRevOrd(Ord(2), 2), 2),
    ],
)
def test_embed_scattered_preserves_order(expr):
    bound, f = embed_scattered(expr)
    xs = elements(expr)
    assert len(set(f.values())) == len(xs)
    for x, y in product(xs, xs):
        assert cmp(ORDER3, f[x], f[y]) == compare_elements(expr, x, y)
        assert not f[x] or f[x][0] < bound


seqs = st.lists(st.integers(0, 6), max_size=4, unique=True).map(lambda xs: tuple(sorted(xs, reverse=True)))


@given(seqs, seqs)
def test_star_is_intersection_of_lex1_and_lex2(a, b):
    both = cmp(LEX1, a, b) == LESS and cmp(LEX2, a, b) == LESS
    assert lt_star(a, b) == both


@given(st.sets(seqs, min_size=1, max_size=12))
def test_min_lex2_matches_sorting(nodes):
    assert min_lex2(nodes) == sorted(nodes, key=sort_key(LEX2))[0]
    assert min_lex1(nodes) == min(nodes)
