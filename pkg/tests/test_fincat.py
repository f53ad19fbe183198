from __future__ import annotations

import json

from hypothesis import given, settings
from hypothesis import strategies as st

from orbcat.checks import brute_force_map_count
from orbcat.families import all_families, named_family
from orbcat.fincat import (
    comma_under,
    constant_functor,
    discrete_category,
    equivariant_map_count,
    find_initial,
    find_terminal,
    full_subcategory,
    isomorphism_classes,
    one_object_category,
    opposite,
    orbit_category,
    over_category,
    skeleton,
    structural_predicates,
    under_category,
)
from orbcat.groups import generate, make_group
from orbcat.grothendieck import e_f_gamma

S3 = make_group("S3")
A3 = generate(S3, [S3.index_of("(1 2 3)")])
C12 = generate(S3, [S3.index_of("(1 2)")])


def test_trivial_family_is_one_object_model():
    for name in ("Z2", "S3", "Q8"):
        G = make_group(name)
        orb = orbit_category(G, named_family(G, "trivial"))
        assert orb.n_objects == 1 and orb.n_morphisms == G.order


def test_s3_hom_sets():
    F = named_family(S3, "all")
    orb = orbit_category(S3, F)
    a3, c12 = F.index(A3), F.index(C12)
    assert orb.hom_count(a3, a3) == 2
    assert orb.hom_count(c12, a3) == 0
    assert orb.hom_count(c12, c12) == 1
    assert equivariant_map_count(S3, C12, C12) == brute_force_map_count(S3, C12, C12) == 1


def test_opposite_reverses_composition():
    C = one_object_category(S3)
    D = opposite(C)
    for g in range(C.n_morphisms):
        for f in range(C.n_morphisms):
            assert D.compose(g, f) == C.compose(f, g)
    assert opposite(D).dom == C.dom


def test_over_and_under():
    F = named_family(S3, "all")
    orb = orbit_category(S3, F)
    top = F.index(S3.whole())
    assert over_category(orb, top).n_objects == orb.n_objects
    P2 = named_family(S3, "p", 2)
    orb2 = orbit_category(S3, P2)
    U = under_category(orb2, P2.index(S3.trivial()))
    over_c12 = [o for o in U.objects if o[0] == P2.index(C12)]
    assert len(over_c12) == 3
    # fiber of the inclusion of the single object G/<(1 2)>
    _, inc = full_subcategory(orb2, [P2.index(C12)])
    fib = comma_under(P2.index(S3.trivial()), inc)
    assert fib.n_objects == 3
    st_ = structural_predicates(fib)
    assert len(st_.components) == 3 and not st_.is_indiscrete


def test_extremal_objects():
    pt = discrete_category(1)
    assert find_initial(pt) is not None and find_terminal(pt) is not None
    F = named_family(S3, "all")
    orb = orbit_category(S3, F)
    term = find_terminal(orb)
    assert term is not None and term.index == F.index(S3.whole())
    assert find_initial(one_object_category(S3)) is None


def test_structural_predicates():
    s = structural_predicates(discrete_category(3))
    assert s.is_thin and not s.is_indiscrete and len(s.components) == 3
    Z2 = make_group("Z2")
    E = e_f_gamma(Z2, named_family(Z2, "trivial"))
    s = structural_predicates(E.category)
    assert E.category.n_objects == 2 and s.is_indiscrete
    s = structural_predicates(one_object_category(Z2))
    assert not s.is_thin and len(s.components) == 1


def test_export():
    orb = orbit_category(S3, named_family(S3, "p", 3))
    d = json.loads(orb.to_json())
    assert len(d["objects"]) == 2 and len(d["morphisms"]) == orb.n_morphisms
    assert orb.to_dot().startswith("digraph")


def test_constant_functor_is_functor():
    orb = orbit_category(S3, named_family(S3, "all"))
    assert constant_functor(orb, ("a", "b")).violation() is None


FAMILIES = [(G, F) for G in map(make_group, ("S3", "D4", "A4", "Z6", "Q8")) for F in all_families(G)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FAMILIES))
def test_orbit_category_axioms(pair):
    G, F = pair
    orb = orbit_category(G, F)
    orb.check()
    for a, A in enumerate(F.members):
        for b, B in enumerate(F.members):
            assert orb.hom_count(a, b) == brute_force_map_count(G, A, B)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FAMILIES), st.data())
def test_full_subcategory_inclusion(pair, data):
    G, F = pair
    orb = orbit_category(G, F)
    objs = sorted(data.draw(st.sets(st.integers(0, orb.n_objects - 1), min_size=1)))
    D, inc = full_subcategory(orb, objs)
    D.check()
    assert inc.violation() is None
    for i, a in enumerate(objs):
        for j, b in enumerate(objs):
            assert D.hom_count(i, j) == orb.hom_count(a, b)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FAMILIES))
def test_skeleton_is_equivalent(pair):
    G, F = pair
    orb = orbit_category(G, F)
    sk, inc = skeleton(orb)
    assert inc.violation() is None
    classes = isomorphism_classes(orb)
    assert sk.n_objects == len(classes)
    # fully faithful, and essentially surjective by construction
    for i, a in enumerate(inc.obj_map):
        for j, b in enumerate(inc.obj_map):
            assert sk.hom_count(i, j) == orb.hom_count(a, b)
