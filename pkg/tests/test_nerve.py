from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbcat.families import all_families, named_family
from orbcat.fincat import discrete_category, one_object_category, orbit_category
from orbcat.grothendieck import e_f_gamma, fixed_subcategory, quotient_complex, wreath_simplex_counts
from orbcat.groups import generate, make_group
from orbcat.kernels import available_backends
from orbcat.nerve import (
    HomologyGroup,
    NerveTooLarge,
    abelianization,
    chain_complex,
    homology,
    homology_of_complex,
    nerve,
    simplex_counts,
)

Z, Z2, Z3 = HomologyGroup(1, ()), HomologyGroup(0, (2,)), HomologyGroup(0, (3,))
ZERO = HomologyGroup(0, ())


def brute_counts(C, top):
    """Chains of non-identity composable morphisms, by plain enumeration."""
    nonid = [m for m in range(C.n_morphisms) if not C.is_identity[m]]
    out = [C.n_objects]
    for k in range(1, top + 1):
        n = 0
        for ch in itertools.product(nonid, repeat=k):
            if all(C.cod[a] == C.dom[b] for a, b in zip(ch, ch[1:])):
                n += 1
        out.append(n)
    return out


def test_discrete_category_has_only_vertices():
    N = nerve(discrete_category(3), 4)
    assert N.counts == [3, 0, 0, 0, 0]
    assert [str(g) for g in homology(discrete_category(3), 2).groups] == ["Z^3", "0", "0"]


def test_bz2_simplices_and_boundaries():
    C = one_object_category(make_group("Z2"))
    assert nerve(C, 4).counts == [1, 1, 1, 1, 1]
    cc = chain_complex(C, 3)
    assert cc.boundaries[1].toarray().tolist() == [[0]]
    assert cc.boundaries[2].toarray().tolist() == [[2]]
    assert cc.boundaries[3].toarray().tolist() == [[0]]


def test_orbit_category_of_z2():
    G = make_group("Z2")
    res = homology(orbit_category(G, named_family(G, "trivial")), 3)
    assert res.groups == [Z, Z2, ZERO, Z2]


@pytest.mark.parametrize(
    "name,expected",
    [
        ("Z3", ["Z", "Z/3", "0", "Z/3"]),
        ("Z4", ["Z", "Z/4", "0", "Z/4"]),
        ("S3", ["Z", "Z/2", "0", "Z/6"]),
        ("Q8", ["Z", "Z/2 + Z/2", "0", "Z/8"]),
        ("Z2xZ2", ["Z", "Z/2 + Z/2", "Z/2", "Z/2 + Z/2 + Z/2"]),
    ],
)
def test_classical_group_homology(name, expected):
    G = make_group(name)
    res = homology(orbit_category(G, named_family(G, "trivial")), 3)
    assert [str(g) for g in res.groups] == expected


@pytest.mark.parametrize("name,factors", [("Z6", (6,)), ("S3", (2,)), ("Q8", (2, 2)), ("A4", (3,)), ("S4", (2,)), ("Z1", ())])
def test_abelianization(name, factors):
    assert abelianization(make_group(name)) == factors


def test_fixed_subcategory_is_acyclic():
    S3 = make_group("S3")
    E = e_f_gamma(S3, named_family(S3, "all"))
    A3 = generate(S3, [S3.index_of("(1 2 3)")])
    assert homology(fixed_subcategory(E, A3).category, 3).is_acyclic


def test_wreath_formula_counts():
    S3 = make_group("S3")
    E = e_f_gamma(S3, named_family(S3, "all"))
    assert simplex_counts(E.category, 3) == wreath_simplex_counts(E.wreath, 3)
    assert nerve(E.category, 2).counts == brute_counts(E.category, 2)


def test_cap():
    S4 = make_group("S4")
    with pytest.raises(NerveTooLarge):
        nerve(orbit_category(S4, named_family(S4, "all")), 4, cap=1000)


@pytest.mark.parametrize("name,fam,N", [("Z2", "trivial", 3), ("S3", "all", 2), ("Z4", "all", 2), ("S3", "p:3", 3)])
def test_quotient_complex_has_orbit_category_homology(name, fam, N):
    from orbcat.families import parse_family

    G = make_group(name)
    F = parse_family(G, fam)
    E = e_f_gamma(G, F)
    q = homology_of_complex(quotient_complex(E, N), N)
    assert q == homology(orbit_category(G, F), N).groups


PAIRS = [(G, F) for G in map(make_group, ("S3", "Z4", "Z2xZ2", "Z6", "D4")) for F in all_families(G)]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(PAIRS))
def test_simplex_counts_brute_force(pair):
    G, F = pair
    orb = orbit_category(G, F)
    want = brute_counts(orb, 3)
    assert simplex_counts(orb, 3) == want
    assert nerve(orb, 3).counts == want
    chain_complex(orb, 3).check()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(PAIRS))
def test_direct_and_skeleton_agree(pair):
    G, F = pair
    orb = orbit_category(G, F)
    d = homology(orb, 2, method="direct")
    s = homology(orb, 2, method="skeleton")
    assert d.groups == s.groups
    assert d.method == "direct" and s.method == "skeleton"


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(PAIRS))
def test_backends_give_same_homology(pair):
    G, F = pair
    E = e_f_gamma(G, F)
    cc = chain_complex(E.category, 3)
    results = {b: homology_of_complex(cc, 2, backend=b) for b in available_backends()}
    assert len({tuple(map(str, r)) for r in results.values()}) == 1


def test_locate_round_trip():
    S3 = make_group("S3")
    N = nerve(orbit_category(S3, named_family(S3, "all")), 3)
    for k in (1, 2, 3):
        assert (N.locate(N.chains[k]) == np.arange(len(N.chains[k]))).all()
