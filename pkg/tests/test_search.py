import random
from dataclasses import replace
from itertools import product

import pytest

from dsuniform.dstree import generate_ds
from dsuniform.embed import find_copies
from dsuniform.errors import BudgetExceeded, DsError, InfeasibleTarget, PreconditionError, StageFailure
from dsuniform.search import (
    Mode,
    adversary_search,
    check_mode,
    find_uniform_copy,
    parse_mode,
    partition_number,
    stepping_up_pipeline,
    verify_certificate,
)
from dsuniform.similarity import class_index, invariant
from dsuniform.uniformity import Colouring

import oracles

D1, D2, D3, D4 = (generate_ds(n) for n in range(1, 5))


def level_colouring(tree, colours, palette=2):
    table = {((),): 0}
    nonroot = [x for x in tree.bfs() if x]
    table.update({(x,): c for x, c in zip(nonroot, colours)})
    return Colouring(tree, table, palette, "level")


def brute_first_copy(host, m, pred):
    copies = oracles.all_embeddings(list(generate_ds(m)), list(host))
    good = [f for f in copies if pred(f)]
    return min(good, key=oracles.canonical_key) if good else None


def test_parse_mode():
    assert parse_mode("end") == Mode("end")
    assert parse_mode("nend:2") == Mode("nend", 2)
    assert str(parse_mode("nend:3")) == "nend:3"
    for bad in ("nend", "nend:0", "ends", "level:2"):
        with pytest.raises(DsError):
            parse_mode(bad)


def test_copy_examples():
    const = Colouring.from_function(D3, lambda u: 0, 1)
    cert = find_uniform_copy(D3, const, 2, "end")
    assert cert is not None and cert.embedding == find_copies(D3, 2)[0]
    c = level_colouring(D2, [0, 1, 0])
    assert find_uniform_copy(D2, c, 2, "level") is None


def test_copy_infeasible_target_is_distinct():
    const = Colouring.from_function(D2, lambda u: 0, 1)
    with pytest.raises(InfeasibleTarget):
        find_uniform_copy(D2, const, 3, "end")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_level_mode_complete_against_brute_force(n):
    host = generate_ds(n)
    nonroot = len(host) - 1
    for colours in product(range(2), repeat=nonroot):
        c = level_colouring(host, colours)
        for m in range(n + 1):
            cert = find_uniform_copy(host, c, m, "level")
            expected = brute_first_copy(host, m, lambda f: oracles.level_uniform(f.values(), c.table))
            if expected is None:
                assert cert is None
            else:
                assert cert is not None and cert.embedding == expected


def test_two_colourings_of_ds3_always_have_a_level_copy():
    for colours in product(range(2), repeat=7):
        assert find_uniform_copy(D3, level_colouring(D3, colours), 2, "level") is not None


@pytest.mark.parametrize("mode", ["end", "nend:1", "nend:2"])
def test_tuple_modes_complete_against_brute_force(mode):
    rng = random.Random({"end": 1, "nend:1": 2, "nend:2": 3}[mode])
    sizes = (0, 1, 2)
    for _ in range(25):
        palette = rng.choice([1, 2])
        c = Colouring.from_function(D3, lambda u: rng.randrange(palette) if rng.random() < 0.3 else 0, 2, "upto:2")
        if mode == "end":
            pred = lambda f: oracles.end_uniform(f.values(), c.table, sizes)
        else:
            n = int(mode.split(":")[1])
            pred = lambda f: oracles.n_end_uniform(f.values(), c.table, sizes, n)
        cert = find_uniform_copy(D3, c, 2, mode)
        expected = brute_first_copy(D3, 2, pred)
        assert (cert.embedding if cert else None) == expected


def test_certificates_are_sound_on_random_problems():
    rng = random.Random(8)
    for _ in range(60):
        n = rng.randint(2, 4)
        host = generate_ds(n)
        m = rng.randint(1, min(n, 3))
        if rng.random() < 0.5:
            c = level_colouring(host, [rng.randrange(2) for _ in range(len(host) - 1)])
            mode = "level"
        else:
            bias = rng.random()
            c = Colouring.from_function(host, lambda u: int(rng.random() < bias * 0.2), 2, "upto:2")
            mode = rng.choice(["end", "nend:2"])
        cert = find_uniform_copy(host, c, m, mode)
        if cert is not None:
            assert verify_certificate(host, c, cert)


def test_verify_rejects_tampering():
    c = level_colouring(D3, [0, 1, 1, 0, 0, 0, 1])
    cert = find_uniform_copy(D3, c, 2, "level")
    assert verify_certificate(D3, c, cert)
    bent = dict(cert.embedding)
    bent[(1, 0)] = (0,)
    v = verify_certificate(D3, c, replace(cert, embedding=bent))
    assert not v and v.reason.startswith("embedding violation")


def test_verify_rejects_wrong_mode_tag():
    c = Colouring.from_function(D3, lambda u: 1 if u == ((2, 1),) else 0, 2, "upto:2")
    cert = find_uniform_copy(D3, c, 2, "end")
    assert cert is not None
    assert verify_certificate(D3, c, cert)
    lying = replace(cert, embedding={x: x for x in D3}, m=3)
    v = verify_certificate(D3, c, lying)
    assert not v and v.reason.startswith("predicate violation")
    assert not check_mode(Mode("end"), D3, c)


def test_verify_rejects_domain_mismatch():
    const = Colouring.from_function(D3, lambda u: 0, 1)
    cert = find_uniform_copy(D3, const, 2, "end")
    v = verify_certificate(D3, const, replace(cert, m=3))
    assert not v and "ds(3)" in v.reason


def test_adversary_examples():
    c = adversary_search(2, 2, "level", 2)
    assert c is not None and c(((0,),)) != c(((1,),))
    assert find_uniform_copy(D2, c, 2, "level") is None
    assert adversary_search(3, 2, "level", 2) is None
    for n in range(1, 5):
        assert adversary_search(n, 1, "level", 3) is None


def test_adversary_for_small_host_is_constant():
    c = adversary_search(1, 2, "level", 2)
    assert c is not None and set(c.table.values()) == {0}


def test_adversary_budget_reports_unknown():
    with pytest.raises(BudgetExceeded):
        adversary_search(3, 2, "level", 3, budget=5)


def test_partition_numbers():
    assert partition_number(1, "level", 2, 4) == 1
    assert partition_number(1, "level", 5, 4) == 1
    assert partition_number(2, "level", 2, 5) == 3
    assert partition_number(2, "level", 3, 6) == 4
    assert partition_number(2, "level", 2, 2) is None


def test_partition_number_budget_names_n():
    with pytest.raises(BudgetExceeded) as info:
        partition_number(2, "level", 3, 6, budget=3)
    assert info.value.at == 2


def test_partition_number_tuple_mode_small_cap():
    # singleton colourings with 2 colours: end-uniformity forces one colour per level
    assert partition_number(2, "end", 2, 4, cap=1) == 3


def test_monotonicity_of_computed_numbers():
    for m, mu in [(2, 2), (2, 3)]:
        n = partition_number(m, "level", mu, 6)
        for bigger in range(n, n + 2):
            assert adversary_search(bigger, m, "level", mu) is None


def test_determinism_across_threads():
    first = adversary_search(3, 2, "level", 3, threads=1)
    again = adversary_search(3, 2, "level", 3, threads=2)
    assert first.table == again.table
    assert partition_number(2, "level", 3, 6, threads=2) == 4


def test_pipeline_examples():
    const = Colouring.from_function(D2, lambda u: 0, 1)
    cert = stepping_up_pipeline([D1, D2], const, 1)
    assert verify_certificate(D2, const, cert)
    by_class = Colouring.from_function(D3, lambda u: class_index(invariant(u)), 1 << 20)
    cert = stepping_up_pipeline([D2, D3], by_class, 1)
    assert cert.embedding == find_copies(D3, 2)[0]
    assert verify_certificate(D3, by_class, cert)


def test_pipeline_two_stages():
    c = Colouring.from_function(D4, lambda u: len(u) % 2, 2, "upto:2")
    cert = stepping_up_pipeline([D1, D2, D4], c, 2)
    assert cert.mode == "nend:2"
    assert verify_certificate(D4, c, cert)


def test_pipeline_stage_failure_is_located():
    # on ds(3), colour singletons by their first entry: no end-uniform ds(2) copy
    c = Colouring.from_function(D3, lambda u: u[0][0] if len(u) == 1 and u[0] else 0, 3, "upto:2")
    with pytest.raises(StageFailure) as info:
        stepping_up_pipeline([D1, D2, D3], c, 2)
    assert info.value.stage == 2
    assert find_uniform_copy(D3, c, 2, "end") is None


def test_pipeline_preconditions():
    const = Colouring.from_function(D2, lambda u: 0, 1)
    with pytest.raises(PreconditionError):
        stepping_up_pipeline([D1, D2], const, 2)
    with pytest.raises(PreconditionError):
        stepping_up_pipeline([D2], const, 0)
