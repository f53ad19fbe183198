"""Wreath products, E_F(Gamma) with its Gamma-action, fixed subcategories,
the orbit-quotient comparison and induced functors."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .families import Family, preimage_family
from .fincat import (
    CategoryError,
    FinCategory,
    Functor,
    NaturalTransformation,
    OrbitCategory,
    SetValuedFunctor,
    full_subcategory,
    orbit_category,
)
from .gsets import GammaSet
from .groups import FiniteGroup, Homomorphism, Subgroup, generate
from .nerve import DEFAULT_CAP, arrays_of, face_indices, nerve, simplex_counts


# --------------------------------------------------------------------------
# wreath products


@dataclass(frozen=True, eq=False)
class WreathCategory:
    """C wr U: objects (c, x) with x in U(c); morphisms (phi, x): (c, x) -> (d, U(phi)(x)).

    Object (c, x) has index ``obj_offset[c] + x`` and morphism (phi, x) index
    ``mor_offset[phi] + x``.
    """

    base: FinCategory
    functor: SetValuedFunctor
    total: FinCategory
    projection: Functor
    obj_offset: tuple[int, ...]
    mor_offset: tuple[int, ...]

    def obj(self, c: int, x: int) -> int:
        return self.obj_offset[c] + x

    def mor(self, phi: int, x: int) -> int:
        return self.mor_offset[phi] + x

    def unpack_obj(self, o: int) -> tuple[int, int]:
        return self.total.objects[o][0], self.total.objects[o][1]

    def unpack_mor(self, m: int) -> tuple[int, int]:
        return self.total.payloads[m]


def wreath_product(C: FinCategory, U: SetValuedFunctor, name: str = "") -> WreathCategory:
    if U.base is not C and (U.base.n_objects, U.base.n_morphisms) != (C.n_objects, C.n_morphisms):
        raise CategoryError("functor is not based on this category")
    sizes = [len(s) for s in U.sets]
    obj_offset = [0]
    for s in sizes:
        obj_offset.append(obj_offset[-1] + s)
    mor_offset = [0]
    for phi in range(C.n_morphisms):
        mor_offset.append(mor_offset[-1] + sizes[C.dom[phi]])
    objects, dom, cod, payloads, rows = [], [], [], [], []
    for c in range(C.n_objects):
        objects.extend((c, x) for x in range(sizes[c]))
    for phi in range(C.n_morphisms):
        a, b = C.dom[phi], C.cod[phi]
        mp = U.maps[phi]
        comps = C.composites(phi)
        for x in range(sizes[a]):
            dom.append(obj_offset[a] + x)
            cod.append(obj_offset[b] + mp[x])
            payloads.append((phi, x))
            # out[(b, y)] lists (psi, y) in base order, so composites align
            rows.append([mor_offset[chi] + x for chi in comps])
    identities = [mor_offset[C.identities[c]] + x for c in range(C.n_objects) for x in range(sizes[c])]
    total = FinCategory(objects, dom, cod, identities, rows, payloads, name=name or f"{C.name} wr U")
    total.object_label = lambda o: f"({C.object_label(objects[o][0])}, {U.sets[objects[o][0]][objects[o][1]]})"  # type: ignore[method-assign]
    total.morphism_label = lambda m: f"({C.morphism_label(payloads[m][0])}, {U.sets[C.dom[payloads[m][0]]][payloads[m][1]]})"  # type: ignore[method-assign]
    proj = Functor(
        total, C, tuple(o[0] for o in objects), tuple(p[0] for p in payloads), name="proj"
    )
    return WreathCategory(C, U, total, proj, tuple(obj_offset[:-1]), tuple(mor_offset[:-1]))


def wreath_simplex_counts(W: WreathCategory, top: int) -> list[int]:
    """|N_k(C wr U)| as the sum over k-chains c_0 -> ... -> c_k of |U(c_0)|."""
    C = W.base
    A = arrays_of(C)
    M = A.transfer_matrix().astype(object)
    v = np.ones(C.n_objects, dtype=object)
    sizes = np.array([len(s) for s in W.functor.sets], dtype=object)
    out = [int(sizes.sum())]
    for _ in range(top):
        v = M.dot(v)
        out.append(int((sizes * v).sum()))
    return out


# --------------------------------------------------------------------------
# categories with a group action


def _composable_arrays(C: FinCategory) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All composable pairs as arrays (g, f, g o f)."""
    cached = C.__dict__.get("_pairs")
    if cached is not None:
        return cached
    A = arrays_of(C)
    lens = np.asarray([len(C.out[C.cod[f]]) for f in range(C.n_morphisms)], dtype=np.int64)
    f = np.repeat(np.arange(C.n_morphisms, dtype=np.int64), lens)
    out_flat = np.fromiter((m for a in range(C.n_objects) for m in C.out[a]), dtype=np.int64, count=C.n_morphisms)
    out_ptr = np.concatenate([[0], np.cumsum([len(C.out[a]) for a in range(C.n_objects)])]).astype(np.int64)
    starts = np.cumsum(lens) - lens
    offset = np.arange(int(lens.sum()), dtype=np.int64) - np.repeat(starts, lens)
    g = out_flat[out_ptr[A.cod[f]] + offset]
    C.__dict__["_pairs"] = (g, f, A.comp_flat)
    return g, f, A.comp_flat


def functor_violation_fast(F: Functor, pairs=None) -> str | None:
    """Vectorised version of ``Functor.violation``."""
    S, T = F.source, F.target
    om = np.asarray(F.obj_map, dtype=np.int64)
    mm = np.asarray(F.mor_map, dtype=np.int64)
    if len(om) != S.n_objects or len(mm) != S.n_morphisms:
        return "map sizes do not match the source category"
    Tdom, Tcod = np.asarray(T.dom), np.asarray(T.cod)
    bad = np.flatnonzero((Tdom[mm] != om[np.asarray(S.dom)]) | (Tcod[mm] != om[np.asarray(S.cod)]))
    if len(bad):
        return f"morphism {int(bad[0])} is sent to a morphism with the wrong endpoints"
    bad = np.flatnonzero(mm[np.asarray(S.identities)] != np.asarray(T.identities)[om])
    if len(bad):
        return f"identity of object {int(bad[0])} is not preserved"
    g, f, gf = pairs if pairs is not None else _composable_arrays(S)
    TA = arrays_of(T)
    img = TA.compose(mm[g], mm[f])
    bad = np.flatnonzero(mm[gf] != img)
    if len(bad):
        return f"composition {int(g[bad[0]])} o {int(f[bad[0]])} is not preserved"
    return None


class GammaCategory:
    """A finite category with a strict left action of a finite group by functors."""

    def __init__(self, group: FiniteGroup, category: FinCategory, obj_perm, mor_perm, wreath: WreathCategory | None = None):
        self.group = group
        self.category = category
        self.obj_perm = np.asarray(obj_perm, dtype=np.int64).reshape(group.order, category.n_objects)
        self.mor_perm = np.asarray(mor_perm, dtype=np.int64).reshape(group.order, category.n_morphisms)
        self.wreath = wreath

    def ul(self, g: int) -> Functor:
        return Functor(
            self.category, self.category,
            tuple(int(x) for x in self.obj_perm[g]), tuple(int(x) for x in self.mor_perm[g]),
            name=f"ul({self.group.labels[g]})",
        )

    def action_violation(self) -> str | None:
        """Each ul(g) is a functor, ul(1) = id and ul(g) ul(h) = ul(gh)."""
        G, C = self.group, self.category
        if (self.obj_perm[0] != np.arange(C.n_objects)).any() or (self.mor_perm[0] != np.arange(C.n_morphisms)).any():
            return "the identity element does not act as the identity functor"
        pairs = _composable_arrays(C)
        for g in range(G.order):
            msg = functor_violation_fast(self.ul(g), pairs)
            if msg:
                return f"ul({G.labels[g]}) is not a functor: {msg}"
        t = G.table
        for g in range(G.order):
            for h in range(G.order):
                gh = t[g][h]
                if (self.obj_perm[g][self.obj_perm[h]] != self.obj_perm[gh]).any() or (
                    self.mor_perm[g][self.mor_perm[h]] != self.mor_perm[gh]
                ).any():
                    return f"ul({G.labels[g]}) o ul({G.labels[h]}) != ul({G.labels[gh]})"
        return None

    def check_action(self) -> None:
        msg = self.action_violation()
        if msg:
            raise CategoryError(msg)

    def fixed_objects(self, elements: Sequence[int]) -> np.ndarray:
        elements = list(elements)
        return np.flatnonzero((self.obj_perm[elements] == np.arange(self.category.n_objects)).all(axis=0))

    def fixed_morphisms(self, elements: Sequence[int]) -> np.ndarray:
        elements = list(elements)
        return np.flatnonzero((self.mor_perm[elements] == np.arange(self.category.n_morphisms)).all(axis=0))


def gamma_wreath(C: FinCategory, U: SetValuedFunctor, group: FiniteGroup, action, name: str = "") -> GammaCategory:
    """C wr U with Gamma acting by ul(g)(c, x) = (c, g.x), ul(g)(phi, x) = (phi, g.x).

    ``action[g][c][x]`` is the index of g.x in U(c); the maps of U must be
    equivariant for this to be an action by functors.
    """
    W = wreath_product(C, U, name=name)
    obj_perm = np.empty((group.order, W.total.n_objects), dtype=np.int64)
    mor_perm = np.empty((group.order, W.total.n_morphisms), dtype=np.int64)
    obj_off = np.asarray(W.obj_offset, dtype=np.int64)
    for g in range(group.order):
        for c in range(C.n_objects):
            n = len(U.sets[c])
            obj_perm[g, obj_off[c]: obj_off[c] + n] = obj_off[c] + np.asarray(action[g][c], dtype=np.int64)
        for phi in range(C.n_morphisms):
            a = C.dom[phi]
            n = len(U.sets[a])
            o = W.mor_offset[phi]
            mor_perm[g, o: o + n] = o + np.asarray(action[g][a], dtype=np.int64)
    return GammaCategory(group, W.total, obj_perm, mor_perm, wreath=W)


# --------------------------------------------------------------------------
# E_F(Gamma)


def coset_functor(orb: OrbitCategory) -> tuple[SetValuedFunctor, list]:
    """U_F(Gamma/F) = Gamma/F as a set, U_F([g]) : dF -> dgG; plus the left Gamma-action."""
    G, t = orb.group, orb.group.table
    sets = tuple(tuple(orb.cosets[a]) for a in range(orb.n_objects))
    maps = []
    for phi in range(orb.n_morphisms):
        a, b = orb.dom[phi], orb.cod[phi]
        g = orb.payloads[phi].coset.rep
        idx = orb.coset_index[b]
        maps.append(tuple(idx[t[c.rep][g]] for c in orb.cosets[a]))
    action = [
        [tuple(orb.coset_index[a][t[g][c.rep]] for c in orb.cosets[a]) for a in range(orb.n_objects)]
        for g in range(G.order)
    ]
    return SetValuedFunctor(orb, sets, tuple(maps), name="U_F"), action


class EFGamma(GammaCategory):
    """E_F(Gamma) = Orb_F(Gamma) wr U_F; objects are the cosets gF, F in the family."""

    orbit: OrbitCategory
    family: Family
    coset_action: list

    def obj(self, a: int, i: int) -> int:
        return self.wreath.obj(a, i)

    def coset_of(self, o: int):
        a, i = self.wreath.unpack_obj(o)
        return self.orbit.cosets[a][i]

    def member_of(self, o: int) -> int:
        return self.category.objects[o][0]

    def conjugate_of(self, o: int) -> Subgroup:
        """g F g^-1 for the object gF (independent of the representative)."""
        G = self.group
        a, i = self.wreath.unpack_obj(o)
        g = self.orbit.cosets[a][i].rep
        t, inv = G.table, G.inverse
        return Subgroup(tuple(t[t[g][f]][inv[g]] for f in self.family.members[a].elements))

    def morphism_rule_violation(self) -> tuple[int, int] | None:
        """Check: a morphism gF -> nK exists iff (g^-1 n)^-1 F (g^-1 n) <= K, over every
        pair of representatives, and hom-sets have at most one element."""
        G, t, inv = self.group, self.group.table, self.group.inverse
        fam = self.family.members
        C = self.category
        ok_cache: dict[tuple[int, int], list[bool]] = {}

        def ok(a: int, b: int) -> list[bool]:
            key = (a, b)
            if key not in ok_cache:
                Fa, Kb = fam[a].elements, fam[b].members
                ok_cache[key] = [all(t[t[inv[m]][f]][m] in Kb for f in Fa) for m in range(G.order)]
            return ok_cache[key]

        for o1 in range(C.n_objects):
            a, i = self.wreath.unpack_obj(o1)
            c1 = self.orbit.cosets[a][i].elements
            for o2 in range(C.n_objects):
                b, j = self.wreath.unpack_obj(o2)
                c2 = self.orbit.cosets[b][j].elements
                table = ok(a, b)
                verdicts = {table[t[inv[g]][n]] for g in c1 for n in c2}
                n_hom = C.hom_count(o1, o2)
                if len(verdicts) != 1 or n_hom > 1 or (n_hom == 1) != verdicts.pop():
                    return (o1, o2)
        return None

    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in self.category.hom.values())

    def initial_object(self) -> int:
        """(Gamma/1, 1{1}): the trivial subgroup is always a member."""
        return self.obj(self.family.index(self.group.trivial()), 0)


def e_f_gamma(G: FiniteGroup, F: Family, orb: OrbitCategory | None = None) -> EFGamma:
    orb = orb or orbit_category(G, F)
    U, action = coset_functor(orb)
    base = gamma_wreath(orb, U, G, action, name=f"E_{F.name or 'F'}({G.name})")
    E = EFGamma(G, base.category, base.obj_perm, base.mor_perm, wreath=base.wreath)
    E.orbit, E.family, E.coset_action = orb, F, action
    C = E.category

    def obj_label(o: int) -> str:
        a, i = C.objects[o]
        return f"{G.labels[orb.cosets[a][i].rep]}{F.members[a].describe(G)}"

    def mor_label(m: int) -> str:
        return f"{obj_label(C.dom[m])} -> {obj_label(C.cod[m])}"

    C.object_label = obj_label  # type: ignore[method-assign]
    C.morphism_label = mor_label  # type: ignore[method-assign]
    return E


# --------------------------------------------------------------------------
# fixed subcategories


@dataclass
class FixedSubcategory:
    subgroup: Subgroup
    objects: tuple[int, ...]
    morphisms: tuple[int, ...]
    coset_objects: tuple[int, ...]
    ambient: FinCategory = field(repr=False)
    mismatch: str | None = None

    @property
    def agrees(self) -> bool:
        return self.mismatch is None

    @property
    def is_empty(self) -> bool:
        return not self.objects

    @cached_property
    def _full(self) -> tuple[FinCategory, Functor]:
        return full_subcategory(self.ambient, self.objects, name=f"{self.ambient.name}^H")

    @property
    def category(self) -> FinCategory:
        return self._full[0]

    @property
    def inclusion(self) -> Functor:
        return self._full[1]


def fixed_subcategory(E: EFGamma, H: Subgroup) -> FixedSubcategory:
    """Objects and morphisms fixed by every ul(h), h in H, computed by scanning and
    compared against the coset description {gF : g^-1 H g <= F}, full."""
    G = E.group
    if not H.is_valid_in(G):
        raise ValueError("not a subgroup of the acting group")
    objs = tuple(int(o) for o in E.fixed_objects(H.elements))
    mors = tuple(int(m) for m in E.fixed_morphisms(H.elements))
    t, inv = G.table, G.inverse
    coset_objs = []
    for o in range(E.category.n_objects):
        a, i = E.wreath.unpack_obj(o)
        g = E.orbit.cosets[a][i].rep
        Fa = E.family.members[a].members
        if all(t[t[inv[g]][h]][g] in Fa for h in H.elements):
            coset_objs.append(o)
    coset_t = tuple(coset_objs)
    mismatch = None
    if objs != coset_t:
        diff = sorted(set(objs) ^ set(coset_t))
        mismatch = f"object {E.category.object_label(diff[0])} differs between scan and coset condition"
    else:
        C = E.category
        inside = set(objs)
        full = tuple(m for m in range(C.n_morphisms) if C.dom[m] in inside and C.cod[m] in inside)
        if full != mors:
            diff = sorted(set(full) ^ set(mors))
            mismatch = f"morphism {C.morphism_label(diff[0])} breaks fullness"
    return FixedSubcategory(H, objs, mors, coset_t, E.category, mismatch)


# --------------------------------------------------------------------------
# classifying-space certificate


@dataclass
class CertificateEntry:
    subgroup: Subgroup
    in_family: bool
    verdict: str  # "empty", "initial" or "counterexample"
    witness: int | None
    witness_label: str | None = None
    detail: str = ""

    def to_dict(self, G: FiniteGroup) -> dict:
        return {
            "subgroup": self.subgroup.describe(G),
            "inFamily": self.in_family,
            "verdict": self.verdict,
            "witness": self.witness_label,
        }


@dataclass
class ClassifyingCertificate:
    group: FiniteGroup
    family: Family
    entries: list[CertificateEntry]

    @property
    def ok(self) -> bool:
        return all(e.verdict != "counterexample" for e in self.entries)

    @property
    def counterexamples(self) -> list[CertificateEntry]:
        return [e for e in self.entries if e.verdict == "counterexample"]

    def to_dict(self) -> dict:
        return {
            "group": self.group.name,
            "family": [m.describe(self.group) for m in self.family.members],
            "ok": self.ok,
            "entries": [e.to_dict(self.group) for e in self.entries],
        }


def classifying_certificate(G: FiniteGroup, F: Family, E: EFGamma | None = None) -> ClassifyingCertificate:
    """For each subgroup H: the H-fixed subcategory is empty when H is not in F, and
    has the initial object (Gamma/H, 1H) when it is."""
    E = E or e_f_gamma(G, F)
    C = E.category
    entries = []
    for H in G.subgroups:
        fx = fixed_subcategory(E, H)
        inside = H in F
        if not fx.agrees:
            entries.append(CertificateEntry(H, inside, "counterexample", None, None, fx.mismatch or ""))
            continue
        if not inside:
            if fx.is_empty:
                entries.append(CertificateEntry(H, False, "empty", None))
            else:
                o = fx.objects[0]
                entries.append(CertificateEntry(H, False, "counterexample", o, C.object_label(o), "fixed objects exist outside the family"))
            continue
        w = E.obj(F.index(H), 0)
        members = set(fx.objects)
        if w not in members:
            entries.append(CertificateEntry(H, True, "counterexample", w, C.object_label(w), "witness is not fixed"))
            continue
        bad = next((o for o in fx.objects if C.hom_count(w, o) != 1), None)
        if bad is not None:
            entries.append(
                CertificateEntry(H, True, "counterexample", w, C.object_label(w), f"no unique morphism to {C.object_label(bad)}")
            )
        else:
            entries.append(CertificateEntry(H, True, "initial", w, C.object_label(w)))
    return ClassifyingCertificate(G, F, entries)


# --------------------------------------------------------------------------
# orbit quotient versus the orbit category


@dataclass
class LevelComparison:
    dim: int
    simplices: int
    orbits: int
    base_simplices: int

    def to_dict(self) -> dict:
        return {"dim": self.dim, "simplices": self.simplices, "orbits": self.orbits, "baseSimplices": self.base_simplices}


@dataclass
class QuotientReport:
    ok: bool
    method: str
    levels: list[LevelComparison]
    counterexample: str | None = None

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "method": self.method,
            "levels": [lv.to_dict() for lv in self.levels],
            "counterexample": self.counterexample,
        }


def _projection_checks(E: EFGamma) -> str | None:
    """Morphism-level facts behind the levelwise bijection: the projection is a
    Gamma-invariant functor that preserves identities, every base morphism has
    exactly one lift with a prescribed source, and Gamma is transitive on fibres."""
    W = E.wreath
    C, B = E.category, W.base
    msg = functor_violation_fast(W.projection)
    if msg:
        return f"projection is not a functor: {msg}"
    pm = np.asarray(W.projection.mor_map)
    po = np.asarray(W.projection.obj_map)
    if (pm[E.mor_perm] != pm[None, :]).any() or (po[E.obj_perm] != po[None, :]).any():
        return "projection is not constant on Gamma-orbits"
    for o in range(C.n_objects):
        c = po[o]
        lifted = sorted(int(pm[m]) for m in C.out[o])
        if lifted != list(B.out[c]):
            return f"base morphisms out of {B.object_label(c)} do not lift uniquely from {C.object_label(o)}"
    for c in range(B.n_objects):
        fibre = set(np.flatnonzero(po == c).tolist())
        first = min(fibre)
        if set(E.obj_perm[:, first].tolist()) != fibre:
            return f"Gamma is not transitive on the fibre over {B.object_label(c)}"
    return None


def quotient_compare(E: EFGamma, N: int = 3, cap: int | None = DEFAULT_CAP, method: str = "auto") -> QuotientReport:
    """Gamma-orbits of nondegenerate k-simplices of N(E) versus k-simplices of N(Orb), k <= N.

    "enumerate" lists every simplex, picks orbit representatives and checks
    that the projection is a bijection on orbits compatible with all faces.
    "count" (used when the nerve is over ``cap``) combines Burnside orbit
    counts over fixed subcategories with the exhaustive morphism-level checks
    that force the levelwise bijection.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    orb = E.orbit
    base_counts = simplex_counts(orb, N)
    e_counts = simplex_counts(E.category, N)
    if method == "auto":
        method = "enumerate" if cap is None or sum(e_counts) + sum(base_counts) <= cap else "count"
    pre = _projection_checks(E)
    if pre:
        return QuotientReport(False, method, [], pre)
    if method == "enumerate":
        return _compare_enumerate(E, N, base_counts)
    if method == "count":
        return _compare_count(E, N, e_counts, base_counts)
    raise ValueError(f"unknown method {method!r}")


def _compare_enumerate(E: EFGamma, N: int, base_counts: list[int]) -> QuotientReport:
    W, orb = E.wreath, E.orbit
    NE, NO = nerve(E.category, N, cap=None), nerve(orb, N, cap=None)
    pm = np.asarray(W.projection.mor_map, dtype=np.int64)
    po = np.asarray(W.projection.obj_map, dtype=np.int64)
    levels = []
    base_maps: list[np.ndarray] = []
    for k in range(N + 1):
        if k == 0:
            ch = NE.chains[0]
            images = E.obj_perm[:, ch]
            q = po[ch]
        else:
            ch = NE.chains[k]
            images = np.stack([NE.locate(E.mor_perm[g][ch]) if len(ch) else np.zeros(0, np.int64) for g in range(E.group.order)])
            if (images < 0).any():
                return QuotientReport(False, "enumerate", levels, f"the action does not preserve nondegenerate {k}-simplices")
            q = NO.locate(pm[ch]) if len(ch) else np.zeros(0, np.int64)
        if (q < 0).any():
            bad = int(np.flatnonzero(q < 0)[0])
            return QuotientReport(False, "enumerate", levels, f"{k}-simplex {bad} projects to a degenerate simplex")
        orbit_id = images.min(axis=0) if len(ch) else np.zeros(0, np.int64)
        reps = np.flatnonzero(orbit_id == np.arange(len(ch)))
        if len(ch) and (q[orbit_id] != q).any():
            bad = int(np.flatnonzero(q[orbit_id] != q)[0])
            return QuotientReport(False, "enumerate", levels, f"projection is not constant on the orbit of {k}-simplex {bad}")
        hit = np.unique(q[reps])
        lv = LevelComparison(k, len(ch), len(reps), base_counts[k])
        levels.append(lv)
        if len(reps) != base_counts[k] or len(hit) != len(reps):
            return QuotientReport(False, "enumerate", levels, f"orbits of {k}-simplices do not biject with base simplices")
        # faces: d_i of the projection equals the projection of d_i
        if k >= 1:
            for i in range(k + 1):
                fe = face_indices(NE, k, i)
                fo = face_indices(NO, k, i)
                if ((fe < 0) != (fo[q] < 0)).any():
                    return QuotientReport(False, "enumerate", levels, f"face d_{i} degenerates on one side only in dimension {k}")
                ok = fe >= 0
                if (base_maps[k - 1][fe[ok]] != fo[q][ok]).any():
                    return QuotientReport(False, "enumerate", levels, f"face d_{i} is not compatible in dimension {k}")
        base_maps.append(q)
    # degeneracies insert identities; the projection sends identities to identities
    ids_ok = (pm[np.asarray(E.category.identities)] == np.asarray(orb.identities)[po]).all()
    if not ids_ok:
        return QuotientReport(False, "enumerate", levels, "degeneracies are not preserved")
    return QuotientReport(True, "enumerate", levels)


def _compare_count(E: EFGamma, N: int, e_counts: list[int], base_counts: list[int]) -> QuotientReport:
    G, C = E.group, E.category
    # chains fixed by g are chains in the full subcategory on g-fixed objects
    by_cyclic: dict[Subgroup, list[int]] = {}
    for g in range(G.order):
        by_cyclic.setdefault(generate(G, [g]), []).append(g)
    totals = [0] * (N + 1)
    for Hc, elems in by_cyclic.items():
        fixed = E.fixed_objects(Hc.elements)
        sub = np.ix_(fixed, fixed)
        M = _hom_count_matrix(C)[sub].astype(object)
        M -= np.eye(len(fixed), dtype=np.int64).astype(object)
        v = np.ones(len(fixed), dtype=object)
        counts = [len(fixed)]
        for _ in range(N):
            v = M.dot(v)
            counts.append(int(v.sum()))
        for k in range(N + 1):
            totals[k] += len(elems) * counts[k]
    levels = []
    for k in range(N + 1):
        if totals[k] % G.order:
            return QuotientReport(False, "count", levels, f"Burnside sum in dimension {k} is not divisible by |G|")
        orbits = totals[k] // G.order
        levels.append(LevelComparison(k, e_counts[k], orbits, base_counts[k]))
        if orbits != base_counts[k]:
            return QuotientReport(False, "count", levels, f"orbit count differs from base count in dimension {k}")
    return QuotientReport(True, "count", levels)


def _hom_count_matrix(C: FinCategory) -> np.ndarray:
    M = np.zeros((C.n_objects, C.n_objects), dtype=np.int64)
    np.add.at(M, (np.asarray(C.dom), np.asarray(C.cod)), 1)
    return M


def quotient_complex(E: EFGamma, N: int, cap: int | None = DEFAULT_CAP):
    """Chain complex of the simplicial set N(E)/Gamma through dimension N+1.

    Generators are orbits of nondegenerate simplices; the boundary of an
    orbit is the alternating sum of the orbits of the faces of any member.
    """
    import scipy.sparse as sp

    from .nerve import ChainComplex

    NE = nerve(E.category, N + 1, cap)
    ids: list[np.ndarray] = []
    reps: list[np.ndarray] = []
    for k in range(N + 2):
        ch = NE.chains[k]
        if k == 0:
            images = E.obj_perm[:, ch]
        else:
            images = np.stack([NE.locate(E.mor_perm[g][ch]) for g in range(E.group.order)]) if len(ch) else np.zeros((1, 0), np.int64)
        oid = images.min(axis=0)
        r = np.flatnonzero(oid == np.arange(len(ch)))
        lookup = np.full(len(ch), -1, dtype=np.int64)
        lookup[r] = np.arange(len(r))
        ids.append(lookup[oid])
        reps.append(r)
    bds = {}
    for k in range(1, N + 2):
        r = reps[k]
        rr, cc, vv = [], [], []
        for i in range(k + 1):
            f = face_indices(NE, k, i)[r]
            keep = f >= 0
            rr.append(ids[k - 1][f[keep]])
            cc.append(np.flatnonzero(keep))
            vv.append(np.full(int(keep.sum()), 1 if i % 2 == 0 else -1, dtype=np.int64))
        M = sp.coo_matrix(
            (np.concatenate(vv), (np.concatenate(rr), np.concatenate(cc))), shape=(len(reps[k - 1]), len(r))
        ).tocsc()
        M.sum_duplicates()
        M.eliminate_zeros()
        bds[k] = M
    cc_ = ChainComplex([len(r) for r in reps], bds)
    cc_.check()
    return cc_


# --------------------------------------------------------------------------
# functoriality: lifted transformations, reindexing, induced functors


def lift_nat_trans(
    eta: NaturalTransformation,
    source: WreathCategory | None = None,
    target: WreathCategory | None = None,
) -> Functor:
    """ul(eta): C wr F -> C wr G, (c, x) -> (c, eta_c(x)), (phi, x) -> (phi, eta_{dom phi}(x))."""
    w = eta.naturality_witness()
    if w is not None:
        raise CategoryError(f"transformation is not natural at morphism {w}", witness=w)
    C = eta.source.base
    S = source or wreath_product(C, eta.source)
    T = target or wreath_product(C, eta.target)
    comp = eta.components
    obj_map = tuple(T.obj(c, comp[c][x]) for c, x in S.total.objects)
    mor_map = tuple(T.mor(phi, comp[C.dom[phi]][x]) for phi, x in S.total.payloads)
    return Functor(S.total, T.total, obj_map, mor_map, name="ul(eta)")


def reindex(
    beta: Functor,
    U: SetValuedFunctor,
    source: WreathCategory | None = None,
    target: WreathCategory | None = None,
) -> Functor:
    """ol(beta): B wr (U o beta) -> C wr U, (b, x) -> (beta(b), x), (phi, x) -> (beta(phi), x)."""
    S = source or wreath_product(beta.source, U.precompose(beta))
    T = target or wreath_product(beta.target, U)
    obj_map = tuple(T.obj(beta.obj_map[b], x) for b, x in S.total.objects)
    mor_map = tuple(T.mor(beta.mor_map[phi], x) for phi, x in S.total.payloads)
    return Functor(S.total, T.total, obj_map, mor_map, name="ol(beta)")


def pushforward_functor(h: Homomorphism, source_orb: OrbitCategory, target_orb: OrbitCategory) -> Functor:
    """h_*: Gamma'/K -> Gamma/h(K), [g'] -> [h(g')]."""
    src_fam, dst_fam = source_orb.family, target_orb.family
    obj_map = tuple(dst_fam.index(h.image_of(K)) for K in src_fam.members)
    mor_map = []
    for m in range(source_orb.n_morphisms):
        a, b = source_orb.dom[m], source_orb.cod[m]
        g = source_orb.payloads[m].coset.rep
        mor_map.append(target_orb.morphism_from(obj_map[a], obj_map[b], h.image[g]))
    return Functor(source_orb, target_orb, obj_map, tuple(mor_map), name="h_*")


@dataclass(eq=False)
class InducedFunctor:
    hom: Homomorphism
    family: Family
    source: EFGamma
    target: EFGamma
    h_star: Functor
    eta: NaturalTransformation
    middle: WreathCategory
    ul_eta: Functor
    ol_h: Functor
    functor: Functor

    def functor_violation(self) -> str | None:
        return functor_violation_fast(self.functor)

    def equivariance_violation(self) -> int | None:
        """First g' with ul(h(g')) o h_F != h_F o ul(g'), or None."""
        om = np.asarray(self.functor.obj_map)
        mm = np.asarray(self.functor.mor_map)
        S, T = self.source, self.target
        for g in range(self.hom.source.order):
            hg = self.hom.image[g]
            if (T.obj_perm[hg][om] != om[S.obj_perm[g]]).any() or (T.mor_perm[hg][mm] != mm[S.mor_perm[g]]).any():
                return g
        return None


def induced_functor(
    h: Homomorphism,
    F: Family,
    source: EFGamma | None = None,
    target: EFGamma | None = None,
) -> InducedFunctor:
    """h_F = ol(h_*) o ul(eta_{h,F}) : E_{h^-1 F}(Gamma') -> E_F(Gamma)."""
    if F.ambient != h.target:
        raise ValueError("family must live on the target of the homomorphism")
    T = target or e_f_gamma(h.target, F)
    S = source or e_f_gamma(h.source, preimage_family(h, F))
    h_star = pushforward_functor(h, S.orbit, T.orbit)
    U_src = S.wreath.functor
    U_pull = T.wreath.functor.precompose(h_star)
    comps = []
    for a in range(S.orbit.n_objects):
        b = h_star.obj_map[a]
        idx = T.orbit.coset_index[b]
        comps.append(tuple(idx[h.image[c.rep]] for c in S.orbit.cosets[a]))
    eta = NaturalTransformation(U_src, U_pull, tuple(comps))
    middle = wreath_product(S.orbit, U_pull)
    ul_eta = lift_nat_trans(eta, source=S.wreath, target=middle)
    ol_h = reindex(h_star, T.wreath.functor, source=middle, target=T.wreath)
    composite = ul_eta.then(ol_h)
    composite = Functor(S.category, T.category, composite.obj_map, composite.mor_map, name="h_F")
    return InducedFunctor(h, F, S, T, h_star, eta, middle, ul_eta, ol_h, composite)


def composition_violation(h: Homomorphism, k: Homomorphism, F: Family) -> str | None:
    """(h o k)_F versus h_F o k_{h^-1 F}, object by object and morphism by morphism."""
    hk = h.compose(k)
    direct = induced_functor(hk, F)
    outer = induced_functor(h, F)
    inner = induced_functor(k, outer.source.family, target=outer.source)
    if direct.source.family != inner.source.family:
        return "the two pulled-back families differ"
    if direct.source.category.objects != inner.source.category.objects:
        return "source categories differ"
    both = inner.functor.then(outer.functor)
    for o, (x, y) in enumerate(zip(direct.functor.obj_map, both.obj_map)):
        if x != y:
            return f"objects differ at {direct.source.category.object_label(o)}"
    for m, (x, y) in enumerate(zip(direct.functor.mor_map, both.mor_map)):
        if x != y:
            return f"morphisms differ at {direct.source.category.morphism_label(m)}"
    return None


def square_violation(alpha: Functor, eta: NaturalTransformation) -> str | None:
    """The square ul(eta) o ol(alpha) = ol(alpha) o ul(eta alpha) on A wr (F alpha) -> B wr G."""
    F, G = eta.source, eta.target
    B = alpha.target
    A_F = wreath_product(alpha.source, F.precompose(alpha))
    A_G = wreath_product(alpha.source, G.precompose(alpha))
    B_F = wreath_product(B, F)
    B_G = wreath_product(B, G)
    left = reindex(alpha, F, A_F, B_F).then(lift_nat_trans(eta, B_F, B_G))
    right = lift_nat_trans(eta.whisker(alpha), A_F, A_G).then(reindex(alpha, G, A_G, B_G))
    if left.obj_map != right.obj_map:
        o = next(i for i, (x, y) in enumerate(zip(left.obj_map, right.obj_map)) if x != y)
        return f"square fails on object {A_F.total.object_label(o)}"
    if left.mor_map != right.mor_map:
        m = next(i for i, (x, y) in enumerate(zip(left.mor_map, right.mor_map)) if x != y)
        return f"square fails on morphism {A_F.total.morphism_label(m)}"
    return None


def orbit_space_functor(orb: OrbitCategory, Y: GammaSet) -> SetValuedFunctor:
    """Gamma/K -> K\\Y (orbits of K on Y); [g]: K -> L sends Ky to L g^-1 y."""
    G = orb.group
    sets, index = [], []
    for K in orb.family.members:
        orbits = sorted({tuple(sorted({Y.action[k][y] for k in K.elements})) for y in range(Y.size)})
        sets.append(tuple(orbits))
        idx = {}
        for i, o in enumerate(orbits):
            for y in o:
                idx[y] = i
        index.append(idx)
    maps = []
    for m in range(orb.n_morphisms):
        a, b = orb.dom[m], orb.cod[m]
        gi = G.inverse[orb.payloads[m].coset.rep]
        maps.append(tuple(index[b][Y.action[gi][o[0]]] for o in sets[a]))
    return SetValuedFunctor(orb, tuple(sets), tuple(maps), name="K\\Y")


def orbit_space_transformation(orb: OrbitCategory, Y: GammaSet, Z: GammaSet, f: Sequence[int]) -> NaturalTransformation:
    """The transformation K\\Y -> K\\Z induced by an equivariant map f: Y -> Z."""
    FY, FZ = orbit_space_functor(orb, Y), orbit_space_functor(orb, Z)
    comps = []
    for a in range(orb.n_objects):
        where = {y: i for i, o in enumerate(FZ.sets[a]) for y in o}
        comps.append(tuple(where[f[o[0]]] for o in FY.sets[a]))
    return NaturalTransformation(FY, FZ, tuple(comps))
