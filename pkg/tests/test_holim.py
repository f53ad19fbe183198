from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbcat.families import all_families, named_family
from orbcat.fincat import orbit_category
from orbcat.groups import generate, make_group
from orbcat.gsets import (
    GammaSetError,
    coset_space,
    disjoint_union,
    equivariant_maps,
    is_equivariant,
    point,
    random_gamma_set,
    random_isomorphic_copy,
    read_gamma_set,
)
from orbcat.grothendieck import e_f_gamma
from orbcat.holim import (
    cofinality_check,
    cone_map_bijection,
    equivariant_maps_pi0,
    fixed_point_diagram,
    holim_context,
    holim_discrete,
    sylow_comparison,
    verify_holim_theorem,
)
from orbcat.zoo import zoo_group

S3 = make_group("S3")
A3 = generate(S3, [S3.index_of("(1 2 3)")])
C12 = generate(S3, [S3.index_of("(1 2)")])
P2, P3 = named_family(S3, "p", 2), named_family(S3, "p", 3)


def brute_cones(F, X):
    """Every choice of fixed points compatible with every orbit morphism."""
    G = F.ambient
    orb = orbit_category(G, F)
    fixed = [X.fixed_points(K) for K in F.members]
    out = []
    for choice in itertools.product(*fixed):
        if all(
            X.action[orb.payloads[m].coset.rep][choice[orb.cod[m]]] == choice[orb.dom[m]]
            for m in range(orb.n_morphisms)
        ):
            out.append(choice)
    return sorted(out)


def test_point_diagram_is_constant():
    D = fixed_point_diagram(point(S3), named_family(S3, "all"))
    assert all(len(s) == 1 for s in D.functor.sets)
    assert len(holim_discrete(named_family(S3, "all"), point(S3))) == 1
    rep = verify_holim_theorem(named_family(S3, "all"), point(S3))
    assert rep.ok and rep.cones == rep.maps == 1


def test_s3_examples():
    X = coset_space(S3, A3)
    assert holim_discrete(P3, X) == []
    _, maps = equivariant_maps_pi0(e_f_gamma(S3, P3), X)
    assert maps == []
    Y = disjoint_union(X, point(S3))
    cones = holim_discrete(P3, Y)
    assert cones == [(2, 2)]
    _, maps = equivariant_maps_pi0(e_f_gamma(S3, P3), Y)
    assert len(maps) == 1
    assert verify_holim_theorem(P3, Y).ok


def test_z4_acting_on_its_quotient():
    # Z/4 permutes the two cosets of <2> transitively, so X^G is empty and both sides vanish
    Z4 = make_group("Z4")
    X = coset_space(Z4, generate(Z4, [2]))
    F = named_family(Z4, "all")
    assert X.fixed_points(Z4.whole()) == []
    rep = verify_holim_theorem(F, X)
    assert rep.ok and rep.cones == rep.maps == 0


def test_random_s3_sets():
    rng = random.Random(5)
    fams = [named_family(S3, "trivial"), P2, P3, named_family(S3, "all")]
    for _ in range(50):
        X = random_gamma_set(S3, rng)
        for F in fams:
            rep = verify_holim_theorem(F, X)
            assert rep.ok, rep.detail
            assert holim_discrete(F, X) == brute_cones(F, X)


def test_j_lands_in_fixed_subcategory():
    for F in all_families(S3):
        assert holim_context(F).j_violation() is None


def test_cofinality_examples():
    orb = orbit_category(S3, P3)
    assert cofinality_check(orb, range(orb.n_objects)).cofinal
    rep = cofinality_check(orb, [P3.index(A3)])
    assert rep.cofinal and rep.all_indiscrete
    orb2 = orbit_category(S3, P2)
    rep = cofinality_check(orb2, [P2.index(C12)])
    assert not rep.cofinal
    fib = rep.fibers[P2.index(S3.trivial())]
    assert fib.n_objects == 3 and fib.n_morphisms == 3 and fib.components == 3


@pytest.mark.parametrize("name", ["Z4", "Z6", "Z2xZ2", "Z5"])
def test_sylow_abelian_point(name):
    G = make_group(name)
    for p in (2, 3):
        if G.order % p:
            continue
        rep = sylow_comparison(G, p)
        assert rep.hypothesis == "holds" and rep.ok
        assert rep.fixed_size == rep.holim_size == 1


def test_sylow_s3():
    X = disjoint_union(coset_space(S3, A3), point(S3))
    rep = sylow_comparison(S3, 3, X)
    assert rep.ok and rep.fixed_size == rep.holim_size == 1
    bad = sylow_comparison(S3, 2)
    assert bad.hypothesis == "fails" and bad.ok
    assert not bad.failing_fiber.indiscrete


def test_sylow_failures_in_s4():
    S4 = make_group("S4")
    for p in (2, 3):
        rep = sylow_comparison(S4, p)
        assert rep.hypothesis == "fails" and rep.failing_fiber is not None
        assert not rep.failing_fiber.indiscrete


def test_generalized_sylow():
    D4 = make_group("D4")
    rng = random.Random(2)
    for F in all_families(D4):
        if len(F.maximal_members()) != 1:
            continue
        for _ in range(5):
            rep = sylow_comparison(D4, None, random_gamma_set(D4, rng), family=F)
            assert rep.generalized and rep.ok


def test_read_gamma_set():
    Z2 = make_group("Z2")
    X = read_gamma_set(Z2, "2\n0 1\n1 0\n")
    assert X.size == 2 and X.fixed_points(Z2.whole()) == []
    with pytest.raises(GammaSetError):
        read_gamma_set(Z2, "2\n0 1\n0 0\n")
    with pytest.raises(GammaSetError):
        read_gamma_set(Z2, "3\n0 1 2\n")


def test_equivariant_maps_are_equivariant():
    X = disjoint_union(coset_space(S3, C12), point(S3))
    Y = disjoint_union(coset_space(S3, A3), point(S3), coset_space(S3, C12))
    maps = equivariant_maps(X, Y)
    assert maps and all(is_equivariant(X, Y, f) for f in maps)
    # brute force over all functions
    brute = [f for f in itertools.product(range(Y.size), repeat=X.size) if is_equivariant(X, Y, f)]
    assert sorted(maps) == sorted(brute)


ZOO_PAIRS = [(zoo_group(n), F) for n in ("S3", "D4", "A4", "Q8", "Z6", "Z2xZ2") for F in all_families(zoo_group(n))]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ZOO_PAIRS), st.integers(0, 10**6))
def test_holim_bijection_property(pair, seed):
    G, F = pair
    X = random_gamma_set(G, random.Random(seed))
    rep = verify_holim_theorem(F, X)
    assert rep.ok, rep.detail
    assert rep.cones == len(brute_cones(F, X))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ZOO_PAIRS), st.integers(0, 10**6))
def test_isomorphic_sets_have_matching_cones(pair, seed):
    G, F = pair
    rng = random.Random(seed)
    X = random_gamma_set(G, rng)
    Y, f = random_isomorphic_copy(X, rng)
    assert cone_map_bijection(F, X, Y, f).ok
    assert len(holim_discrete(F, X)) == len(holim_discrete(F, Y))
