"""Homotopy fixed points of finite discrete Gamma-sets as limits over the orbit category.

For discrete X every map out of a connected comma category is constant, so
the homotopy limit of the fixed-point diagram collapses to its limit: the
set of cones (x_F in X^F) with g.x_K = x_F for every [g]: Gamma/F -> Gamma/K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .families import Family, close_family, named_family
from .fincat import (
    FinCategory,
    Functor,
    OrbitCategory,
    SetValuedFunctor,
    comma_under,
    connected_components,
    find_initial,
    find_terminal,
    full_subcategory,
    opposite,
    orbit_category,
    structural_predicates,
    under_category,
)
from .grothendieck import EFGamma, e_f_gamma, fixed_subcategory, functor_violation_fast
from .groups import FiniteGroup, Subgroup, is_normal
from .gsets import (
    GammaSet,
    coset_space,
    disjoint_union,
    equivariant_maps,
    is_equivariant,
    point,
    random_gamma_set,
    random_isomorphic_copy,
    read_gamma_set,
)

__all__ = [
    "GammaSet",
    "coset_space",
    "disjoint_union",
    "point",
    "random_gamma_set",
    "random_isomorphic_copy",
    "read_gamma_set",
    "FixedPointDiagram",
    "fixed_point_diagram",
    "holim_discrete",
    "equivariant_maps_pi0",
    "verify_holim_theorem",
    "cone_map_bijection",
    "cofinality_check",
    "sylow_comparison",
]


@dataclass(frozen=True, eq=False)
class FixedPointDiagram:
    """X^- on Orb_F(Gamma)^op: Gamma/F -> X^F, [g]: Gamma/F -> Gamma/K to x -> g.x."""

    orbit: OrbitCategory
    space: GammaSet
    functor: SetValuedFunctor

    @property
    def base(self) -> FinCategory:
        return self.functor.base

    def fixed_set(self, a: int) -> tuple[int, ...]:
        return self.functor.sets[a]


def fixed_point_diagram(X: GammaSet, F: Family, orb: OrbitCategory | None = None) -> FixedPointDiagram:
    if X.group != F.ambient:
        raise ValueError("Gamma-set and family live on different groups")
    orb = orb or orbit_category(F.ambient, F)
    op = opposite(orb)
    sets = tuple(tuple(X.fixed_points(K)) for K in F.members)
    maps = []
    for m in range(orb.n_morphisms):
        a, b = orb.dom[m], orb.cod[m]
        g = orb.payloads[m].coset.rep
        where = {x: i for i, x in enumerate(sets[a])}
        maps.append(tuple(where[X.action[g][x]] for x in sets[b]))
    D = SetValuedFunctor(op, sets, tuple(maps), name="X^-")
    D.check()
    return FixedPointDiagram(orb, X, D)


def _constraints(orb: OrbitCategory) -> dict[tuple[int, int], list[int]]:
    """(a, b) -> representatives g of the morphisms [g]: Gamma/F_a -> Gamma/F_b."""
    out: dict[tuple[int, int], list[int]] = {}
    for m in range(orb.n_morphisms):
        out.setdefault((orb.dom[m], orb.cod[m]), []).append(orb.payloads[m].coset.rep)
    return out


def holim_discrete(F: Family, X: GammaSet, orb: OrbitCategory | None = None) -> list[tuple[int, ...]]:
    """All cones, as tuples of points indexed like ``F.members``, in lexicographic order."""
    orb = orb or orbit_category(F.ambient, F)
    members = F.members
    fixed = [X.fixed_points(K) for K in members]
    cons = _constraints(orb)
    order = sorted(range(len(members)), key=lambda a: (-members[a].order, members[a].key()))
    act = X.action
    found: list[tuple[int, ...]] = []
    assign: list[int] = [-1] * len(members)

    def consistent(j: int) -> bool:
        x = assign[j]
        for i in order:
            y = assign[i]
            if y < 0:
                continue
            for g in cons.get((j, i), ()):
                if act[g][y] != x:
                    return False
            for g in cons.get((i, j), ()):
                if act[g][x] != y:
                    return False
        return True

    def extend(pos: int) -> None:
        if pos == len(order):
            found.append(tuple(assign))
            return
        j = order[pos]
        for x in fixed[j]:
            assign[j] = x
            if consistent(j):
                extend(pos + 1)
            assign[j] = -1

    extend(0)
    return sorted(found)


def equivariant_maps_pi0(E: EFGamma, X: GammaSet) -> tuple[list[int], list[tuple[int, ...]]]:
    """Component index of each object, and every Gamma-map pi_0(E) -> X (indexed by component)."""
    comps = connected_components(E.category)
    comp_of = [0] * E.category.n_objects
    for i, c in enumerate(comps):
        for o in c:
            comp_of[o] = i
    action = []
    for g in range(E.group.order):
        row = tuple(comp_of[int(E.obj_perm[g][c[0]])] for c in comps)
        for i, c in enumerate(comps):
            if any(comp_of[int(E.obj_perm[g][o])] != row[i] for o in c):
                raise AssertionError("the action does not permute connected components")
        action.append(row)
    P = GammaSet(E.group, tuple(action)).check()
    return comp_of, equivariant_maps(P, X)


@dataclass
class HolimContext:
    """Everything about (Gamma, F) needed to compare the two sides, built once."""

    family: Family
    orbit: OrbitCategory
    E: EFGamma
    unders: list[FinCategory]
    j: list[Functor]
    fixed_objects: list[frozenset[int]] = field(repr=False)

    def j_violation(self) -> str | None:
        """Each j_F is a functor landing in the F-fixed subcategory (checked once)."""
        if "_j_checked" not in self.__dict__:
            self.__dict__["_j_checked"] = self._j_violation()
        return self.__dict__["_j_checked"]

    def _j_violation(self) -> str | None:
        for a, J in enumerate(self.j):
            msg = functor_violation_fast(J)
            if msg:
                return f"j for member {a} is not a functor: {msg}"
            fixed = self.fixed_objects[a]
            if any(o not in fixed for o in J.obj_map):
                return f"j for member {a} leaves the fixed subcategory"
            fx_m = set(int(m) for m in self.E.fixed_morphisms(self.family.members[a].elements))
            if any(m not in fx_m for m in J.mor_map):
                return f"j for member {a} uses a non-fixed morphism"
        return None


def _build_j(orb: OrbitCategory, E: EFGamma, a: int) -> tuple[FinCategory, Functor]:
    """j: Gamma/F_a | Orb -> E, (phi: Gamma/F_a -> Gamma/K) -> (Gamma/K, phi(1F_a))."""
    U = under_category(orb, a)
    obj_map, mor_map = [], []
    for c, phi in U.objects:
        obj_map.append(E.obj(c, orb.coset_index[c][orb.payloads[phi].coset.rep]))
    for m in range(U.n_morphisms):
        src = U.dom[m]
        c, phi = U.objects[src]
        x = orb.coset_index[c][orb.payloads[phi].coset.rep]
        mor_map.append(E.wreath.mor(U.payloads[m], x))
    return U, Functor(U, E.category, tuple(obj_map), tuple(mor_map), name=f"j_{a}")


@lru_cache(maxsize=128)
def holim_context(F: Family) -> HolimContext:
    G = F.ambient
    orb = orbit_category(G, F)
    E = e_f_gamma(G, F, orb)
    unders, js = [], []
    for a in range(orb.n_objects):
        U, J = _build_j(orb, E, a)
        unders.append(U)
        js.append(J)
    fixed = [frozenset(fixed_subcategory(E, K).objects) for K in F.members]
    return HolimContext(F, orb, E, unders, js, fixed)


@dataclass
class HolimReport:
    ok: bool
    cones: int
    maps: int
    detail: str | None = None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "cones": self.cones, "maps": self.maps, "detail": self.detail}


def verify_holim_theorem(F: Family, X: GammaSet, ctx: HolimContext | None = None) -> HolimReport:
    """Build the correspondence Map^G(pi_0 E_F, X) -> cones through the functors j_F,
    and check it is a bijection onto ``holim_discrete``, with the explicit inverse."""
    ctx = ctx or holim_context(F)
    msg = ctx.j_violation()
    if msg:
        return HolimReport(False, 0, 0, msg)
    E, orb = ctx.E, ctx.orbit
    G = F.ambient
    cones = holim_discrete(F, X, orb)
    comp_of, maps = equivariant_maps_pi0(E, X)
    cone_set = set(cones)
    images = {}
    for phi in maps:
        cone = []
        for a, J in enumerate(ctx.j):
            values = {phi[comp_of[o]] for o in J.obj_map}
            if len(values) != 1:
                return HolimReport(False, len(cones), len(maps), f"map {phi} is not constant on the image of j_{a}")
            (x,) = values
            if x not in X.fixed_points(F.members[a]):
                return HolimReport(False, len(cones), len(maps), f"map {phi} gives a non-fixed point at member {a}")
            cone.append(x)
        cone_t = tuple(cone)
        if cone_t not in cone_set:
            return HolimReport(False, len(cones), len(maps), f"map {phi} induces the non-cone {cone_t}")
        if cone_t in images:
            return HolimReport(False, len(cones), len(maps), f"maps {images[cone_t]} and {phi} induce the same cone")
        images[cone_t] = phi
    if len(images) != len(cones):
        missing = next(c for c in cones if c not in images)
        return HolimReport(False, len(cones), len(maps), f"cone {missing} is not hit")
    # explicit inverse: gF_a -> g.x_a
    C = E.category
    for cone in cones:
        f = [-1] * C.n_objects
        for o in range(C.n_objects):
            a, i = E.wreath.unpack_obj(o)
            vals = {X.action[g][cone[a]] for g in orb.cosets[a][i].elements}
            if len(vals) != 1:
                return HolimReport(False, len(cones), len(maps), f"inverse of {cone} depends on the coset representative")
            f[o] = vals.pop()
        if any(f[C.dom[m]] != f[C.cod[m]] for m in range(C.n_morphisms)):
            return HolimReport(False, len(cones), len(maps), f"inverse of {cone} is not constant on components")
        if any(f[int(E.obj_perm[g][o])] != X.action[g][f[o]] for g in range(G.order) for o in range(C.n_objects)):
            return HolimReport(False, len(cones), len(maps), f"inverse of {cone} is not equivariant")
        phi = images[cone]
        if any(phi[comp_of[o]] != f[o] for o in range(C.n_objects)):
            return HolimReport(False, len(cones), len(maps), f"inverse of {cone} does not recover its map")
    return HolimReport(True, len(cones), len(maps))


def cone_map_bijection(F: Family, X: GammaSet, Y: GammaSet, f: Sequence[int], orb: OrbitCategory | None = None) -> HolimReport:
    """An equivariant bijection X -> Y sends cones of X bijectively onto cones of Y."""
    if not is_equivariant(X, Y, f) or sorted(f) != list(range(Y.size)):
        return HolimReport(False, 0, 0, "map is not an equivariant bijection")
    orb = orb or orbit_category(F.ambient, F)
    cx, cy = holim_discrete(F, X, orb), holim_discrete(F, Y, orb)
    pushed = {tuple(f[x] for x in cone) for cone in cx}
    ok = len(pushed) == len(cx) and pushed == set(cy)
    return HolimReport(ok, len(cx), len(cy), None if ok else "induced map on cones is not a bijection")


# --------------------------------------------------------------------------
# cofinality and the Sylow comparison


@dataclass
class FiberInfo:
    obj: int
    label: str
    n_objects: int
    n_morphisms: int
    indiscrete: bool
    initial: bool
    terminal: bool
    components: int

    @property
    def contractible(self) -> bool:
        """Certified by indiscreteness or an initial/terminal object."""
        return self.n_objects > 0 and (self.indiscrete or self.initial or self.terminal)

    def to_dict(self) -> dict:
        return {
            "object": self.label,
            "objects": self.n_objects,
            "morphisms": self.n_morphisms,
            "indiscrete": self.indiscrete,
            "initial": self.initial,
            "terminal": self.terminal,
            "components": self.components,
        }


@dataclass
class CofinalityReport:
    fibers: list[FiberInfo]

    @property
    def all_indiscrete(self) -> bool:
        return all(f.indiscrete and f.n_objects > 0 for f in self.fibers)

    @property
    def cofinal(self) -> bool:
        return all(f.contractible for f in self.fibers)

    @property
    def first_failure(self) -> FiberInfo | None:
        return next((f for f in self.fibers if not f.contractible), None)

    def to_dict(self) -> dict:
        return {
            "cofinal": self.cofinal,
            "allIndiscrete": self.all_indiscrete,
            "fibers": [f.to_dict() for f in self.fibers],
        }


def cofinality_check(orb: OrbitCategory, sub_objects: Sequence[int]) -> CofinalityReport:
    """For each object d of ``orb``, the fiber d | i of the full inclusion i of ``sub_objects``."""
    _, inc = full_subcategory(orb, sub_objects)
    fibers = []
    for d in range(orb.n_objects):
        fib = comma_under(d, inc)
        st = structural_predicates(fib)
        fibers.append(
            FiberInfo(
                d,
                orb.object_label(d),
                fib.n_objects,
                fib.n_morphisms,
                st.is_indiscrete and fib.n_objects > 0,
                find_initial(fib) is not None,
                find_terminal(fib) is not None,
                len(st.components),
            )
        )
    return CofinalityReport(fibers)


@dataclass
class SylowReport:
    group: str
    p: int | None
    hypothesis: str  # "holds" or "fails"
    sylow: Subgroup | None
    fixed_size: int | None = None  # |(X^P)^W|
    holim_size: int | None = None
    bijection: bool | None = None
    cofinality: CofinalityReport | None = None
    failing_fiber: FiberInfo | None = None
    generalized: bool = False

    @property
    def ok(self) -> bool:
        if self.hypothesis == "holds":
            return bool(self.bijection) and self.cofinality is not None and self.cofinality.all_indiscrete
        return self.failing_fiber is not None

    def to_dict(self, G: FiniteGroup) -> dict:
        return {
            "group": self.group,
            "p": self.p,
            "generalized": self.generalized,
            "hypothesis": self.hypothesis,
            "sylow": self.sylow.describe(G) if self.sylow else None,
            "fixedWeyl": self.fixed_size,
            "holim": self.holim_size,
            "bijection": self.bijection,
            "failingFiber": self.failing_fiber.to_dict() if self.failing_fiber else None,
            "ok": self.ok,
        }


def sylow_comparison(
    G: FiniteGroup,
    p: int | None,
    X: GammaSet | None = None,
    family: Family | None = None,
) -> SylowReport:
    """Compare X^{h_P G} (cones over the p-subgroup orbit category) with (X^P)^W.

    With ``family`` given instead of ``p`` the same check runs for a family
    with a unique maximal member (the generalized mode).
    """
    X = X or point(G)
    generalized = family is not None
    fam = family if family is not None else named_family(G, "p", p)
    tops = fam.maximal_members()
    P = tops[0]
    orb = orbit_category(G, fam)
    a = fam.index(P)
    if len(tops) != 1:
        cof = cofinality_check(orb, [a])
        fail = cof.first_failure or next((f for f in cof.fibers if not f.indiscrete), None)
        return SylowReport(G.name, p, "fails", P, cofinality=cof, failing_fiber=fail, generalized=generalized)
    if not is_normal(G, P):
        raise AssertionError("a unique maximal member must be normal")
    cof = cofinality_check(orb, [a])
    weyl = [orb.payloads[m].coset.rep for m in orb.hom_set(a, a)]
    xp = X.fixed_points(P)
    fixed_w = [x for x in xp if all(X.action[g][x] == x for g in weyl)]
    cones = holim_discrete(fam, X, orb)
    images = [c[a] for c in cones]
    bij = len(set(images)) == len(images) and sorted(images) == sorted(fixed_w)
    return SylowReport(
        G.name, p, "holds", P, len(fixed_w), len(cones), bij, cofinality=cof, generalized=generalized
    )


def generated_family(G: FiniteGroup, top: Subgroup) -> Family:
    return close_family(G, [top], name="gen")
