from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbcat.groups import (
    FiniteGroup,
    GroupError,
    HomomorphismError,
    commutator_subgroup,
    conjugate_subgroup,
    generate,
    identity_homomorphism,
    is_normal,
    left_cosets,
    make_group,
    make_homomorphism,
    read_cayley,
    write_cayley,
)
from orbcat.zoo import ZOO_GROUPS, sign, zoo_group

SUBGROUP_COUNTS = {"Z1": 1, "Z6": 4, "Z12": 6, "Z2xZ2": 5, "S3": 6, "S4": 30, "D4": 10, "Q8": 6, "A4": 10}


def brute_subgroups(G: FiniteGroup) -> set[frozenset[int]]:
    """Closures of all element pairs; enough for every zoo group (all 2-generated)."""
    return {frozenset(generate(G, [a, b]).elements) for a in range(G.order) for b in range(G.order)}


@pytest.mark.parametrize("name,order", [("Z1", 1), ("Z7", 7), ("S3", 6), ("S4", 24), ("A4", 12), ("D4", 8), ("Q8", 8), ("Z2xZ2", 4)])
def test_orders(name, order):
    assert make_group(name).order == order


def test_s3_has_three_involutions():
    G = make_group("S3")
    assert sorted(G.element_order(g) for g in range(6)) == [1, 2, 2, 2, 3, 3]


def test_d4_center():
    assert len(make_group("D4").center()) == 2


@pytest.mark.parametrize("name,count", sorted(SUBGROUP_COUNTS.items()))
def test_subgroup_counts(name, count):
    G = make_group(name)
    assert len(G.subgroups) == count
    assert {frozenset(H.elements) for H in G.subgroups} == brute_subgroups(G)


def test_q8_subgroups_all_normal():
    G = make_group("Q8")
    assert all(is_normal(G, H) for H in G.subgroups)


def test_conjugation_convention():
    G = make_group("S3")
    g, h = G.index_of("(1 2 3)"), G.index_of("(1 2)")
    H = generate(G, [h])
    assert conjugate_subgroup(G, g, H) == generate(G, [G.index_of("(1 3)")])
    assert conjugate_subgroup(G, 0, H) == H
    A3 = generate(G, [g])
    assert all(conjugate_subgroup(G, x, A3) == A3 for x in range(6))


def test_cosets():
    G = make_group("S3")
    assert len(left_cosets(G, G.whole())) == 1
    cs = left_cosets(G, generate(G, [G.index_of("(1 2)")]))
    assert len(cs) == 3
    assert sorted(x for c in cs for x in c.elements) == list(range(6))
    Z4 = make_group("Z4")
    cs = left_cosets(Z4, generate(Z4, [2]))
    assert [sorted(c.elements) for c in cs] == [[0, 2], [1, 3]]


def test_homomorphisms():
    Z4, Z2 = make_group("Z4"), make_group("Z2")
    h = make_homomorphism(Z4, Z2, {1: 1})
    assert h.image == (0, 1, 0, 1)
    assert sorted(h.kernel().elements) == [0, 2]
    assert identity_homomorphism(Z4).image == (0, 1, 2, 3)
    s = sign(3)
    assert s.kernel() == generate(s.source, [s.source.index_of("(1 2 3)")])
    with pytest.raises(HomomorphismError):
        make_homomorphism(Z2, Z4, {1: 1})


@pytest.mark.parametrize("name,factors", [("Z6", (6,)), ("S3", (2,)), ("Q8", (2, 2))])
def test_commutator_quotient(name, factors):
    G = make_group(name)
    assert G.order // commutator_subgroup(G).order == math.prod(factors)


@pytest.mark.parametrize("bad", ["S3x", "K4", "Q9", "perm:", "Z0x"])
def test_bad_descriptors(bad):
    with pytest.raises(GroupError) as exc:
        make_group(bad)
    assert bad.strip() in str(exc.value) or "descriptor" in str(exc.value)


def test_max_order():
    with pytest.raises(GroupError):
        make_group("S5", max_order=100)


def test_cayley_roundtrip(tmp_path):
    G = make_group("D4")
    path = tmp_path / "d4.txt"
    write_cayley(G, path)
    H = read_cayley(path)
    assert H.table == G.table


def test_perm_descriptor():
    G = make_group("perm:(1 2),(1 2 3)")
    assert G.order == 6 and not G.is_abelian


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ZOO_GROUPS), st.data())
def test_generated_subgroup_is_closed(name, data):
    G = zoo_group(name)
    gens = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    H = generate(G, gens)
    assert H.is_valid_in(G)
    assert all(g in H for g in gens)
    # cosets partition G into pieces of size |H|
    cs = left_cosets(G, H)
    assert all(len(c.elements) == H.order for c in cs)
    assert sorted(itertools.chain.from_iterable(c.elements for c in cs)) == list(range(G.order))
