"""Invariant suites over the zoo, shared by ``selftest`` and the acceptance tests.

Every suite returns a :class:`SuiteResult` whose ``to_dict`` is deterministic
(no timings), so two runs with the same seed serialise identically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .families import Family, all_families, named_family
from .fincat import orbit_category
from .grothendieck import (
    classifying_certificate,
    composition_violation,
    e_f_gamma,
    fixed_subcategory,
    square_violation,
    induced_functor,
    quotient_compare,
)
from .groups import FiniteGroup
from .gsets import coset_space, random_gamma_set, random_isomorphic_copy
from .holim import cone_map_bijection, holim_context, sylow_comparison, verify_holim_theorem
from .nerve import DEFAULT_CAP, HomologyGroup, abelianization, homology
from .zoo import ZOO_GROUPS, homomorphism_suite, random_square_instance, zoo_group, zoo_pairs

MAX_FAILURES = 10


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(msg)
        else:
            self.stats["suppressed"] = self.stats.get("suppressed", 0) + 1

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checked": self.checked, "failures": list(self.failures), "stats": self.stats}


def _tag(G: FiniteGroup, F: Family) -> str:
    return f"{G.name}/{F.name or len(F)}"


def brute_force_map_count(G: FiniteGroup, F, K) -> int:
    """G-maps G/F -> G/K: try every image of the base point and test the whole map."""
    X, Y = coset_space(G, F), coset_space(G, K)
    count = 0
    for y in range(Y.size):
        f = [-1] * X.size
        good = True
        for g in range(G.order):
            x, val = X.action[g][0], Y.action[g][y]
            if f[x] == -1:
                f[x] = val
            elif f[x] != val:
                good = False
                break
        count += good
    return count


def morphism_counts(groups=ZOO_GROUPS) -> SuiteResult:
    res = SuiteResult("morphism-counts")
    for G, F in zoo_pairs(groups):
        orb = orbit_category(G, F)
        for a, A in enumerate(F.members):
            for b, B in enumerate(F.members):
                res.checked += 1
                got, want = orb.hom_count(a, b), brute_force_map_count(G, A, B)
                if got != want:
                    res.fail(f"{_tag(G, F)}: |Mor({A.describe(G)}, {B.describe(G)})| = {got}, brute force {want}")
    return res


def thinness(groups=ZOO_GROUPS) -> SuiteResult:
    res = SuiteResult("thin")
    for G, F in zoo_pairs(groups):
        E = e_f_gamma(G, F)
        res.checked += 1
        if not E.is_thin():
            res.fail(f"{_tag(G, F)}: E_F is not thin")
        if E.morphism_rule_violation() is not None:
            res.fail(f"{_tag(G, F)}: morphism rule fails")
        if E.action_violation() is not None:
            res.fail(f"{_tag(G, F)}: {E.action_violation()}")
    return res


def fixed_points(groups=ZOO_GROUPS) -> SuiteResult:
    res = SuiteResult("fixed-subcategory")
    for G, F in zoo_pairs(groups):
        E = e_f_gamma(G, F)
        for H in G.subgroups:
            res.checked += 1
            fx = fixed_subcategory(E, H)
            if not fx.agrees:
                res.fail(f"{_tag(G, F)}, H={H.describe(G)}: {fx.mismatch}")
    return res


def classifying(groups=ZOO_GROUPS, N: int = 3) -> SuiteResult:
    res = SuiteResult("classifying-fixed-points")
    acyclic = 0
    for G, F in zoo_pairs(groups):
        E = e_f_gamma(G, F)
        cert = classifying_certificate(G, F, E)
        for e in cert.entries:
            res.checked += 1
            if e.verdict == "counterexample":
                res.fail(f"{_tag(G, F)}, H={e.subgroup.describe(G)}: {e.detail}")
            if (e.verdict == "empty") == e.in_family:
                res.fail(f"{_tag(G, F)}, H={e.subgroup.describe(G)}: emptiness does not match membership")
        for H in F.members:
            hom = homology(fixed_subcategory(E, H).category, N)
            if hom.is_acyclic:
                acyclic += 1
            else:
                groups_txt = ", ".join(str(g) for g in hom.groups)
                res.fail(f"{_tag(G, F)}, H={H.describe(G)}: reduced homology nonzero ({groups_txt})")
    res.stats["acyclicFixedSubcategories"] = acyclic
    return res


def quotients(groups=ZOO_GROUPS, N: int = 3, cap: int | None = DEFAULT_CAP) -> SuiteResult:
    res = SuiteResult("orbit-quotient")
    methods: dict[str, int] = {}
    for G, F in zoo_pairs(groups):
        rep = quotient_compare(e_f_gamma(G, F), N, cap=cap)
        res.checked += 1
        methods[rep.method] = methods.get(rep.method, 0) + 1
        if not rep.ok:
            res.fail(f"{_tag(G, F)}: {rep.counterexample}")
    res.stats["methods"] = dict(sorted(methods.items()))
    return res


def homology_sanity(groups=ZOO_GROUPS) -> SuiteResult:
    res = SuiteResult("homology-sanity")
    Z2 = zoo_group("Z2")
    got = homology(orbit_category(Z2, named_family(Z2, "trivial")), 3).groups
    want = [HomologyGroup(1, ()), HomologyGroup(0, (2,)), HomologyGroup(0, ()), HomologyGroup(0, (2,))]
    res.checked += 1
    if got != want:
        res.fail(f"Orb_1(Z2): {[str(g) for g in got]}")
    for name in groups:
        G = zoo_group(name)
        h1 = homology(orbit_category(G, named_family(G, "trivial")), 1).groups[1]
        ab = abelianization(G)
        res.checked += 1
        if h1.betti != 0 or h1.torsion != ab:
            res.fail(f"{name}: H_1 = {h1}, abelianization has invariant factors {list(ab)}")
    return res


def functoriality(seed: int = 42, squares: int = 20) -> SuiteResult:
    res = SuiteResult("functorial")
    for case in homomorphism_suite():
        h = case.hom
        for F in all_families(h.target):
            ind = induced_functor(h, F)
            res.checked += 1
            msg = ind.functor_violation()
            if msg:
                res.fail(f"{case.name}, F={F.name or len(F)}: h_F is not a functor ({msg})")
            g = ind.equivariance_violation()
            if g is not None:
                res.fail(f"{case.name}, F={F.name or len(F)}: equivariance fails at {h.source.labels[g]}")
            if case.inner is not None:
                msg = composition_violation(h, case.inner, F)
                if msg:
                    res.fail(f"{case.name}, F={F.name or len(F)}: {msg}")
    rng = random.Random(seed)
    for i in range(squares):
        inst = random_square_instance(rng)
        res.checked += 1
        msg = square_violation(inst.alpha, inst.eta)
        if msg:
            res.fail(f"square {i} ({inst.description}): {msg}")
    return res


def holim_bijection(groups=ZOO_GROUPS, per_pair: int = 50, seed: int = 42, max_size: int = 8) -> SuiteResult:
    res = SuiteResult("holim-discrete")
    rng = random.Random(seed)
    cones = 0
    for G, F in zoo_pairs(groups):
        ctx = holim_context(F)
        for _ in range(per_pair):
            X = random_gamma_set(G, rng, max_size)
            rep = verify_holim_theorem(F, X, ctx)
            res.checked += 1
            cones += rep.cones
            if not rep.ok:
                res.fail(f"{_tag(G, F)}, X={X.to_text().split()}: {rep.detail}")
    res.stats["cones"] = cones
    return res


SYLOW_HOLDS = (("S3", 3), ("Z6", 2), ("Z6", 3), ("A4", 2))
SYLOW_FAILS = (("S3", 2), ("S4", 2), ("S4", 3))


def sylow(per_case: int = 20, seed: int = 42) -> SuiteResult:
    res = SuiteResult("sylow")
    rng = random.Random(seed)
    for name, p in SYLOW_HOLDS:
        G = zoo_group(name)
        for _ in range(per_case):
            X = random_gamma_set(G, rng)
            rep = sylow_comparison(G, p, X)
            res.checked += 1
            if rep.hypothesis != "holds" or not rep.ok:
                res.fail(f"{name}, p={p}: expected a bijection, got {rep.to_dict(G)}")
    for name, p in SYLOW_FAILS:
        G = zoo_group(name)
        rep = sylow_comparison(G, p)
        res.checked += 1
        fib = rep.failing_fiber
        if rep.hypothesis != "fails" or fib is None or fib.indiscrete:
            res.fail(f"{name}, p={p}: hypothesis failure not detected")
        else:
            res.stats[f"{name}/p={p}"] = fib.to_dict()
    return res


def homotopy_invariance(groups=ZOO_GROUPS, per_pair: int = 5, seed: int = 42) -> SuiteResult:
    res = SuiteResult("homotopy-invariance")
    rng = random.Random(seed)
    for G, F in zoo_pairs(groups):
        orb = holim_context(F).orbit
        for _ in range(per_pair):
            X = random_gamma_set(G, rng)
            Y, f = random_isomorphic_copy(X, rng)
            rep = cone_map_bijection(F, X, Y, f, orb)
            res.checked += 1
            if not rep.ok:
                res.fail(f"{_tag(G, F)}: {rep.detail}")
    return res


def run_all(seed: int = 42, scale: str = "full") -> list[SuiteResult]:
    """Every suite; ``scale="small"`` trims the random sample sizes."""
    small = scale == "small"
    return [
        morphism_counts(),
        thinness(),
        fixed_points(),
        classifying(),
        quotients(),
        homology_sanity(),
        functoriality(seed, squares=5 if small else 20),
        holim_bijection(per_pair=3 if small else 50, seed=seed),
        sylow(per_case=3 if small else 20, seed=seed),
        homotopy_invariance(per_pair=2 if small else 5, seed=seed),
    ]
