from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbcat.families import FamilyError, all_families, close_family, named_family, parse_family, preimage_family
from orbcat.groups import generate, identity_homomorphism, make_group
from orbcat.zoo import ZOO_GROUPS, homomorphism_suite, sign, zoo_families, zoo_group

FAMILY_COUNTS = {"S3": 5, "S4": 53, "D4": 23, "A4": 7, "Q8": 10, "Z12": 9, "Z2xZ2": 9, "Z1": 1, "Z4": 3}


def test_closure_examples():
    G = make_group("S3")
    assert len(close_family(G, [])) == 1
    H = generate(G, [G.index_of("(1 2)")])
    fam = close_family(G, [H])
    assert sorted(m.order for m in fam.members) == [1, 2, 2, 2]
    assert len(close_family(G, [G.whole()])) == 6


def test_named_families():
    G = make_group("S3")
    assert len(named_family(G, "trivial")) == 1
    assert len(named_family(G, "all")) == 6
    p3 = named_family(G, "p", 3)
    assert sorted(m.order for m in p3.members) == [1, 3]
    with pytest.raises(FamilyError):
        named_family(G, "p", 4)


def test_preimages():
    Z4 = make_group("Z4")
    from orbcat.zoo import reduction

    h = reduction(4, 2)
    assert len(preimage_family(h, named_family(h.target, "all"))) == 3
    s = sign(3)
    pre = preimage_family(s, named_family(s.target, "trivial"))
    assert sorted(m.order for m in pre.members) == [1, 3]
    F = named_family(Z4, "all")
    assert preimage_family(identity_homomorphism(Z4), F) == F


@pytest.mark.parametrize("name,count", sorted(FAMILY_COUNTS.items()))
def test_all_families_counts(name, count):
    fams = all_families(make_group(name))
    assert len(fams) == count
    assert all(f.is_valid() for f in fams)
    assert len({f.members for f in fams}) == count


def test_parse_family():
    G = make_group("S3")
    assert len(parse_family(G, "gen:[(1 2)]")) == 4
    assert len(parse_family(G, "gen:[(1 2)],[(1 2 3)]")) == 5
    for bad in ("gen:", "p:x", "nonsense", "gen:[(1 4)]"):
        with pytest.raises(FamilyError):
            parse_family(G, bad)


def test_zoo_families_distinct():
    for name in ZOO_GROUPS:
        fams = zoo_families(zoo_group(name))
        assert len({f.members for f in fams}) == len(fams)
        assert all(f.is_valid() for f in fams)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["S3", "D4", "A4", "Q8", "Z6", "Z2xZ2"]), st.data())
def test_closure_is_family(name, data):
    G = zoo_group(name)
    subs = G.subgroups
    seeds = data.draw(st.lists(st.sampled_from(subs), max_size=3))
    fam = close_family(G, seeds)
    assert fam.is_valid()
    assert all(S in fam for S in seeds)
    # minimality: every member lies below a conjugate of a seed (or is trivial)
    assert fam == close_family(G, fam.maximal_members())


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(homomorphism_suite()), st.data())
def test_preimage_is_family(case, data):
    fams = all_families(case.hom.target)
    F = data.draw(st.sampled_from(fams))
    pre = preimage_family(case.hom, F)
    assert pre.is_valid()
    assert all(case.hom.image_of(K) in F for K in pre.members)
