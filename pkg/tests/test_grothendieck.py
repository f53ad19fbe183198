from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbcat.families import all_families, named_family, parse_family
from orbcat.fincat import (
    NaturalTransformation,
    constant_functor,
    full_subcategory,
    identity_functor,
    identity_transformation,
    orbit_category,
    structural_predicates,
)
from orbcat.grothendieck import (
    classifying_certificate,
    coset_functor,
    composition_violation,
    e_f_gamma,
    fixed_subcategory,
    square_violation,
    functor_violation_fast,
    induced_functor,
    lift_nat_trans,
    orbit_space_transformation,
    pushforward_functor,
    quotient_compare,
    reindex,
    wreath_product,
)
from orbcat.groups import generate, identity_homomorphism, make_group
from orbcat.gsets import disjoint_union, point, random_equivariant_map, random_gamma_set
from orbcat.zoo import random_square_instance, reduction

S3 = make_group("S3")
A3 = generate(S3, [S3.index_of("(1 2 3)")])
C12 = generate(S3, [S3.index_of("(1 2)")])


def test_wreath_with_point_functor_is_base():
    orb = orbit_category(S3, named_family(S3, "all"))
    W = wreath_product(orb, constant_functor(orb))
    assert W.total.n_objects == orb.n_objects and W.total.n_morphisms == orb.n_morphisms
    assert W.projection.obj_map == tuple(range(orb.n_objects))
    assert W.projection.mor_map == tuple(range(orb.n_morphisms))


def test_wreath_objects_and_morphisms():
    orb = orbit_category(S3, named_family(S3, "all"))
    U, _ = coset_functor(orb)
    W = wreath_product(orb, U)
    W.total.check()
    C = W.total
    for m in range(C.n_morphisms):
        phi, x = W.unpack_mor(m)
        assert C.dom[m] == W.obj(orb.dom[phi], x)
        assert C.cod[m] == W.obj(orb.cod[phi], U.maps[phi][x])
    # (psi, y) o (phi, x) = (psi o phi, x)
    for g, f in C.composable_pairs():
        psi, _ = W.unpack_mor(g)
        phi, x = W.unpack_mor(f)
        assert W.unpack_mor(C.compose(g, f)) == (orb.compose(psi, phi), x)


def test_free_orbit_gives_indiscrete_category():
    for name in ("Z2", "S3", "Z4"):
        G = make_group(name)
        E = e_f_gamma(G, named_family(G, "trivial"))
        assert E.category.n_objects == G.order
        assert structural_predicates(E.category).is_indiscrete


def test_trivial_group():
    G = make_group("Z1")
    E = e_f_gamma(G, named_family(G, "trivial"))
    assert E.category.n_objects == 1 and E.category.n_morphisms == 1


def test_e_all_s3():
    E = e_f_gamma(S3, named_family(S3, "all"))
    assert E.category.n_objects == 18
    assert E.is_thin()
    assert E.morphism_rule_violation() is None
    assert E.action_violation() is None


def test_fixed_subcategory_examples():
    E3 = e_f_gamma(S3, named_family(S3, "p", 3))
    assert fixed_subcategory(E3, C12).is_empty
    E = e_f_gamma(S3, named_family(S3, "all"))
    whole = fixed_subcategory(E, S3.trivial())
    assert whole.objects == tuple(range(E.category.n_objects))
    fx = fixed_subcategory(E, A3)
    w = E.obj(E.family.index(A3), 0)
    assert w in fx.objects
    assert all(E.category.hom_count(w, o) == 1 for o in fx.objects)
    assert fx.agrees


def test_certificates():
    for name in ("S3", "D4"):
        G = make_group(name)
        cert = classifying_certificate(G, named_family(G, "all"))
        assert cert.ok and all(e.verdict == "initial" for e in cert.entries)
    Z2 = make_group("Z2")
    cert = classifying_certificate(Z2, named_family(Z2, "trivial"))
    assert [e.verdict for e in cert.entries] == ["initial", "empty"]
    cert = classifying_certificate(S3, named_family(S3, "p", 3))
    verdicts = {e.subgroup.order: e.verdict for e in cert.entries}
    assert verdicts == {1: "initial", 3: "initial", 2: "empty", 6: "empty"}


def test_quotient_small_cases():
    Z2 = make_group("Z2")
    rep = quotient_compare(e_f_gamma(Z2, named_family(Z2, "trivial")), 3)
    assert rep.ok and [lv.orbits for lv in rep.levels] == [1, 1, 1, 1]
    rep = quotient_compare(e_f_gamma(S3, named_family(S3, "all")), 3)
    assert rep.ok and rep.method == "enumerate"
    assert [lv.orbits for lv in rep.levels] == [6, 28, 136, 676]


def test_quotient_counting_route_s4():
    S4 = make_group("S4")
    E = e_f_gamma(S4, named_family(S4, "all"))
    rep = quotient_compare(E, 3)
    assert rep.ok and rep.method == "count"
    assert [lv.orbits for lv in rep.levels] == [30, 684, 15432, 351956]


def test_quotient_routes_agree():
    D4 = make_group("D4")
    E = e_f_gamma(D4, named_family(D4, "all"))
    a = quotient_compare(E, 2, method="enumerate")
    b = quotient_compare(E, 2, method="count")
    assert a.ok and b.ok
    assert [lv.to_dict() for lv in a.levels] == [lv.to_dict() for lv in b.levels]


def _random_transformations(orb, rng, n):
    """A chain Y_0 -> Y_1 -> ... of orbit-space transformations."""
    G = orb.group
    sets = [random_gamma_set(G, rng, 5)]
    for _ in range(n):
        sets.append(disjoint_union(random_gamma_set(G, rng, 4), point(G)))
    maps = [random_equivariant_map(a, b, rng) for a, b in zip(sets, sets[1:])]
    return [orbit_space_transformation(orb, a, b, f) for a, b, f in zip(sets, sets[1:], maps)]


def test_lift_identity_and_composition():
    Z4 = make_group("Z4")
    orb = orbit_category(Z4, named_family(Z4, "all"))
    U, _ = coset_functor(orb)
    ident = lift_nat_trans(identity_transformation(U))
    assert ident.obj_map == tuple(range(ident.source.n_objects))
    assert ident.mor_map == tuple(range(ident.source.n_morphisms))
    rng = random.Random(3)
    for _ in range(10):
        e1, e2 = _random_transformations(orb, rng, 2)
        W0, W1, W2 = (wreath_product(orb, F) for F in (e1.source, e1.target, e2.target))
        both = lift_nat_trans(e1, W0, W1).then(lift_nat_trans(e2, W1, W2))
        assert both.same_maps(lift_nat_trans(e1.then(e2), W0, W2))
        assert functor_violation_fast(both) is None


def test_lift_to_orbit_quotient():
    E = e_f_gamma(S3, named_family(S3, "all"))
    U = E.wreath.functor
    pt = constant_functor(E.orbit)
    eta = NaturalTransformation(U, pt, tuple(tuple(0 for _ in s) for s in U.sets))
    F = lift_nat_trans(eta, E.wreath)
    assert functor_violation_fast(F) is None
    assert F.target.n_objects == E.orbit.n_objects


def test_reindex_identity_and_composition():
    orb = orbit_category(S3, named_family(S3, "all"))
    U, _ = coset_functor(orb)
    ident = reindex(identity_functor(orb), U)
    assert ident.obj_map == tuple(range(ident.source.n_objects))
    D1, i1 = full_subcategory(orb, [0, 1, 3, 4, 5])
    D2, i2 = full_subcategory(D1, [0, 2, 4])
    U1 = U.precompose(i1)
    step = reindex(i2, U1).then(reindex(i1, U))
    direct = reindex(i2.then(i1), U)
    assert step.same_maps(direct)


def test_reindex_along_quotient():
    h = reduction(4, 2)
    src = orbit_category(h.source, named_family(h.source, "all"))
    dst = orbit_category(h.target, named_family(h.target, "all"))
    hs = pushforward_functor(h, src, dst)
    assert functor_violation_fast(hs) is None
    U, _ = coset_functor(dst)
    assert functor_violation_fast(reindex(hs, U)) is None


def test_induced_identity():
    F = named_family(S3, "all")
    ind = induced_functor(identity_homomorphism(S3), F)
    assert ind.functor.obj_map == tuple(range(ind.source.category.n_objects))
    assert ind.functor.mor_map == tuple(range(ind.source.category.n_morphisms))


def test_induced_quotient_map():
    h = reduction(4, 2)
    F = named_family(h.target, "all")
    ind = induced_functor(h, F)
    S, T = ind.source, ind.target
    obj = ind.functor.obj_map
    # the kernel {0,2} maps to the trivial subgroup: its two cosets go bijectively onto G/1
    K = generate(h.source, [2])
    triv = T.family.index(h.target.trivial())
    assert sorted(obj[S.obj(S.family.index(K), i)] for i in range(2)) == [T.obj(triv, 0), T.obj(triv, 1)]
    # the whole group maps onto Z/2: the point goes to the point
    top = T.family.index(h.target.whole())
    assert obj[S.obj(S.family.index(h.source.whole()), 0)] == T.obj(top, 0)
    assert ind.functor_violation() is None and ind.equivariance_violation() is None


def test_composition_chain():
    for F in all_families(make_group("Z2")):
        assert composition_violation(reduction(4, 2), reduction(8, 4), F) is None


def test_square_examples():
    rng = random.Random(11)
    for _ in range(10):
        inst = random_square_instance(rng)
        assert square_violation(inst.alpha, inst.eta) is None


PAIRS = [(G, F) for G in map(make_group, ("S3", "Z4", "Z2xZ2", "D4", "A4", "Q8")) for F in all_families(G)]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(PAIRS))
def test_efg_laws(pair):
    G, F = pair
    E = e_f_gamma(G, F)
    assert E.is_thin()
    assert E.action_violation() is None
    assert E.morphism_rule_violation() is None
    # objects are the cosets gF
    assert E.category.n_objects == sum(G.order // K.order for K in F.members)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(PAIRS), st.data())
def test_fixed_subcategory_scan_matches_cosets(pair, data):
    G, F = pair
    E = e_f_gamma(G, F)
    H = data.draw(st.sampled_from(G.subgroups))
    fx = fixed_subcategory(E, H)
    assert fx.agrees
    assert fx.is_empty == (H not in F)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_square_commutes(seed):
    inst = random_square_instance(random.Random(seed))
    assert square_violation(inst.alpha, inst.eta) is None


def test_bad_family_target():
    with pytest.raises(ValueError):
        induced_functor(reduction(4, 2), parse_family(make_group("Z4"), "all"))
