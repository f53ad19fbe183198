"""Finite categories as explicit, index-based data.

Objects and morphisms are dense indices with opaque payloads.  Composition
is stored per morphism ``f`` as a row aligned with ``out[cod f]``, so
``compose(g, f)`` (``g`` after ``f``) is a pair of tuple lookups.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, NamedTuple, Sequence

from .families import Family
from .groups import Coset, FiniteGroup, left_cosets


class CategoryError(ValueError):
    """Data that violates a category or functor law."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class FinCategory:
    def __init__(
        self,
        objects: Sequence[Any],
        dom: Sequence[int],
        cod: Sequence[int],
        identities: Sequence[int],
        comp_rows: Sequence[Sequence[int]],
        payloads: Sequence[Any] | None = None,
        name: str = "",
    ) -> None:
        self.objects = tuple(objects)
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.identities = tuple(identities)
        self.payloads = tuple(payloads) if payloads is not None else tuple(range(len(dom)))
        self.name = name
        n = len(self.objects)
        out: list[list[int]] = [[] for _ in range(n)]
        inn: list[list[int]] = [[] for _ in range(n)]
        for m, (a, b) in enumerate(zip(self.dom, self.cod)):
            out[a].append(m)
            inn[b].append(m)
        self.out = tuple(tuple(x) for x in out)
        self.inn = tuple(tuple(x) for x in inn)
        pos = [0] * len(self.dom)
        for lst in self.out:
            for i, m in enumerate(lst):
                pos[m] = i
        self._pos = tuple(pos)
        self._comp = tuple(tuple(r) for r in comp_rows)
        if len(self._comp) != len(self.dom):
            raise CategoryError("one composition row per morphism is required")
        for f, row in enumerate(self._comp):
            if len(row) != len(self.out[self.cod[f]]):
                raise CategoryError(f"composition row of morphism {f} has the wrong length")

    @classmethod
    def from_function(
        cls,
        objects: Sequence[Any],
        morphisms: Sequence[tuple[int, int, Any]],
        identities: Sequence[int],
        compose: Callable[[int, int], int],
        name: str = "",
        check: bool = False,
    ) -> "FinCategory":
        """Build from ``(dom, cod, payload)`` triples and ``compose(g, f)``."""
        dom = [m[0] for m in morphisms]
        cod = [m[1] for m in morphisms]
        out: list[list[int]] = [[] for _ in objects]
        for i, a in enumerate(dom):
            out[a].append(i)
        rows = [[compose(g, f) for g in out[cod[f]]] for f in range(len(morphisms))]
        C = cls(objects, dom, cod, identities, rows, [m[2] for m in morphisms], name=name)
        if check:
            C.check()
        return C

    # -- basic queries -----------------------------------------------------

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.dom)

    def __repr__(self) -> str:
        return f"FinCategory({self.name!r}, objects={self.n_objects}, morphisms={self.n_morphisms})"

    def compose(self, g: int, f: int) -> int:
        """Index of ``g o f``; ``f`` is applied first."""
        if self.cod[f] != self.dom[g]:
            raise CategoryError(f"morphisms {g} and {f} are not composable", witness=(g, f))
        return self._comp[f][self._pos[g]]

    def composites(self, f: int) -> tuple[int, ...]:
        """``g o f`` for every ``g`` in ``out[cod f]``, in that order."""
        return self._comp[f]

    def position(self, m: int) -> int:
        return self._pos[m]

    @cached_property
    def is_identity(self) -> tuple[bool, ...]:
        flags = [False] * self.n_morphisms
        for i in self.identities:
            flags[i] = True
        return tuple(flags)

    @cached_property
    def hom(self) -> dict[tuple[int, int], tuple[int, ...]]:
        h: dict[tuple[int, int], list[int]] = {}
        for m, (a, b) in enumerate(zip(self.dom, self.cod)):
            h.setdefault((a, b), []).append(m)
        return {k: tuple(v) for k, v in h.items()}

    def hom_set(self, a: int, b: int) -> tuple[int, ...]:
        return self.hom.get((a, b), ())

    def hom_count(self, a: int, b: int) -> int:
        return len(self.hom.get((a, b), ()))

    def composable_pairs(self) -> Iterable[tuple[int, int]]:
        """All ``(g, f)`` with ``cod f == dom g``."""
        for f in range(self.n_morphisms):
            for g in self.out[self.cod[f]]:
                yield g, f

    def check(self) -> None:
        """Exhaustively verify identities, composite endpoints and associativity."""
        for a, i in enumerate(self.identities):
            if self.dom[i] != a or self.cod[i] != a:
                raise CategoryError(f"identity of object {a} has wrong endpoints", witness=a)
        for f in range(self.n_morphisms):
            a, b = self.dom[f], self.cod[f]
            if self.compose(self.identities[b], f) != f or self.compose(f, self.identities[a]) != f:
                raise CategoryError(f"identity law fails at morphism {f}", witness=f)
            for g in self.out[b]:
                h = self.compose(g, f)
                if self.dom[h] != a or self.cod[h] != self.cod[g]:
                    raise CategoryError(f"composite of {g} and {f} has wrong endpoints", witness=(g, f))
        for f in range(self.n_morphisms):
            for g in self.out[self.cod[f]]:
                gf = self.compose(g, f)
                for k in self.out[self.cod[g]]:
                    if self.compose(k, gf) != self.compose(self.compose(k, g), f):
                        raise CategoryError("associativity fails", witness=(k, g, f))

    def object_label(self, a: int) -> str:
        return str(self.objects[a])

    def morphism_label(self, m: int) -> str:
        return str(self.payloads[m])

    # -- export ------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "objects": [self.object_label(a) for a in range(self.n_objects)],
            "morphisms": [
                {
                    "index": m,
                    "dom": self.dom[m],
                    "cod": self.cod[m],
                    "label": self.morphism_label(m),
                    "identity": self.is_identity[m],
                }
                for m in range(self.n_morphisms)
            ],
            "composition": [[g, f, self.compose(g, f)] for g, f in self.composable_pairs()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dot(self) -> str:
        lines = [f'digraph "{_dot_escape(self.name or "C")}" {{']
        for a in range(self.n_objects):
            lines.append(f'  n{a} [label="{_dot_escape(self.object_label(a))}"];')
        for m in range(self.n_morphisms):
            if not self.is_identity[m]:
                lines.append(
                    f'  n{self.dom[m]} -> n{self.cod[m]} [label="{_dot_escape(self.morphism_label(m))}"];'
                )
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


# --------------------------------------------------------------------------
# functors and set-valued diagrams


@dataclass(frozen=True, eq=False)
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]
    name: str = ""

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.source is other.source
            and self.target is other.target
            and self.obj_map == other.obj_map
            and self.mor_map == other.mor_map
        )

    __hash__ = None  # type: ignore[assignment]

    def same_maps(self, other: "Functor") -> bool:
        return self.obj_map == other.obj_map and self.mor_map == other.mor_map

    def violation(self) -> str | None:
        S, T = self.source, self.target
        if len(self.obj_map) != S.n_objects or len(self.mor_map) != S.n_morphisms:
            return "map sizes do not match the source category"
        for m in range(S.n_morphisms):
            fm = self.mor_map[m]
            if T.dom[fm] != self.obj_map[S.dom[m]] or T.cod[fm] != self.obj_map[S.cod[m]]:
                return f"morphism {m} is sent to a morphism with the wrong endpoints"
        for a in range(S.n_objects):
            if self.mor_map[S.identities[a]] != T.identities[self.obj_map[a]]:
                return f"identity of object {a} is not preserved"
        for g, f in S.composable_pairs():
            if self.mor_map[S.compose(g, f)] != T.compose(self.mor_map[g], self.mor_map[f]):
                return f"composition {g} o {f} is not preserved"
        return None

    def check(self) -> None:
        msg = self.violation()
        if msg is not None:
            raise CategoryError(f"not a functor: {msg}")

    def then(self, other: "Functor") -> "Functor":
        """``other o self``."""
        if other.source is not self.target and (
            other.source.n_objects != self.target.n_objects
            or other.source.n_morphisms != self.target.n_morphisms
        ):
            raise CategoryError("functors are not composable")
        return Functor(
            self.source,
            other.target,
            tuple(other.obj_map[a] for a in self.obj_map),
            tuple(other.mor_map[m] for m in self.mor_map),
        )


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, tuple(range(C.n_objects)), tuple(range(C.n_morphisms)), name="id")


@dataclass(frozen=True, eq=False)
class SetValuedFunctor:
    """A functor ``base -> Set``.

    ``sets[a]`` lists the elements of the image of object ``a``;
    ``maps[m][i]`` is the index (in ``sets[cod m]``) of the image of element
    ``i`` of ``sets[dom m]``.
    """

    base: FinCategory
    sets: tuple[tuple[Hashable, ...], ...]
    maps: tuple[tuple[int, ...], ...]
    name: str = ""

    def apply(self, m: int, i: int) -> int:
        return self.maps[m][i]

    def size(self, a: int) -> int:
        return len(self.sets[a])

    def violation(self) -> str | None:
        C = self.base
        if len(self.sets) != C.n_objects or len(self.maps) != C.n_morphisms:
            return "wrong number of sets or maps"
        for m in range(C.n_morphisms):
            fm = self.maps[m]
            if len(fm) != len(self.sets[C.dom[m]]) or any(
                not 0 <= y < len(self.sets[C.cod[m]]) for y in fm
            ):
                return f"map of morphism {m} is not a function between the right sets"
        for a, i in enumerate(C.identities):
            if self.maps[i] != tuple(range(len(self.sets[a]))):
                return f"identity of object {a} is not sent to an identity"
        for g, f in C.composable_pairs():
            gf = self.maps[C.compose(g, f)]
            mg, mf = self.maps[g], self.maps[f]
            if any(gf[i] != mg[mf[i]] for i in range(len(mf))):
                return f"composition {g} o {f} is not preserved"
        return None

    def check(self) -> None:
        msg = self.violation()
        if msg is not None:
            raise CategoryError(f"not a functor: {msg}")

    def precompose(self, beta: Functor) -> "SetValuedFunctor":
        """``self o beta``."""
        return SetValuedFunctor(
            beta.source,
            tuple(self.sets[beta.obj_map[b]] for b in range(beta.source.n_objects)),
            tuple(self.maps[beta.mor_map[m]] for m in range(beta.source.n_morphisms)),
        )


def constant_functor(C: FinCategory, elements: Sequence[Hashable] = ("*",)) -> SetValuedFunctor:
    ident = tuple(range(len(elements)))
    return SetValuedFunctor(C, tuple(tuple(elements) for _ in range(C.n_objects)), tuple(ident for _ in range(C.n_morphisms)))


@dataclass(frozen=True, eq=False)
class NaturalTransformation:
    source: SetValuedFunctor
    target: SetValuedFunctor
    components: tuple[tuple[int, ...], ...]

    def naturality_witness(self) -> int | None:
        """A morphism at which the naturality square fails, or None."""
        F, G, eta = self.source, self.target, self.components
        C = F.base
        for m in range(C.n_morphisms):
            a, b = C.dom[m], C.cod[m]
            Fm, Gm = F.maps[m], G.maps[m]
            for i in range(len(F.sets[a])):
                if eta[b][Fm[i]] != Gm[eta[a][i]]:
                    return m
        return None

    def check(self) -> None:
        w = self.naturality_witness()
        if w is not None:
            raise CategoryError(f"naturality fails at morphism {w}", witness=w)

    def then(self, other: "NaturalTransformation") -> "NaturalTransformation":
        """Vertical composite ``other o self``."""
        return NaturalTransformation(
            self.source,
            other.target,
            tuple(tuple(other.components[a][y] for y in comp) for a, comp in enumerate(self.components)),
        )

    def whisker(self, alpha: Functor) -> "NaturalTransformation":
        """``self o alpha``: components ``eta_{alpha(A)}``."""
        return NaturalTransformation(
            self.source.precompose(alpha),
            self.target.precompose(alpha),
            tuple(self.components[alpha.obj_map[a]] for a in range(alpha.source.n_objects)),
        )


def identity_transformation(F: SetValuedFunctor) -> NaturalTransformation:
    return NaturalTransformation(F, F, tuple(tuple(range(len(s))) for s in F.sets))


# --------------------------------------------------------------------------
# orbit categories


@dataclass(frozen=True)
class OrbitMorphism:
    """The morphism Gamma/F -> Gamma/G determined by the coset gamma*G."""

    source: int
    target: int
    coset: Coset

    def __str__(self) -> str:
        return f"[{self.coset.rep}]"


class OrbitCategory(FinCategory):
    """Orb_F(Gamma): objects are the members of a family, morphisms fixed cosets."""

    group: FiniteGroup
    family: Family
    # coset_index[i][g] = index of g*F_i among left_cosets(F_i)
    coset_index: tuple[tuple[int, ...], ...]
    cosets: tuple[tuple[Coset, ...], ...]

    def morphism_from(self, a: int, b: int, gamma: int) -> int:
        """The morphism [gamma]: Gamma/F_a -> Gamma/F_b."""
        c = self.coset_index[b][gamma]
        m = self._lookup.get((a, b, c))
        if m is None:
            raise CategoryError(f"[{gamma}] is not a morphism from object {a} to object {b}")
        return m

    def object_label(self, a: int) -> str:
        return "G/" + self.family.members[a].describe(self.group)

    def morphism_label(self, m: int) -> str:
        p = self.payloads[m]
        return f"[{self.group.labels[p.coset.rep]}]"


def _coset_tables(G: FiniteGroup, members: Sequence) -> tuple[tuple, tuple]:
    cosets, index = [], []
    for H in members:
        cs = left_cosets(G, H)
        idx = [0] * G.order
        for i, c in enumerate(cs):
            for g in c.elements:
                idx[g] = i
        cosets.append(tuple(cs))
        index.append(tuple(idx))
    return tuple(cosets), tuple(index)


def orbit_category(G: FiniteGroup, F: Family) -> OrbitCategory:
    """Orb_F(G) with morphisms Gamma/F -> Gamma/K the cosets gK with g^-1 F g <= K.

    Composition: [d] o [g] = [g d].
    """
    members = F.members
    cosets, cidx = _coset_tables(G, members)
    t, inv = G.table, G.inverse
    morphisms: list[tuple[int, int, OrbitMorphism]] = []
    lookup: dict[tuple[int, int, int], int] = {}
    for a, K in enumerate(members):
        for b, L in enumerate(members):
            if L.order % K.order:
                continue
            Lm = L.members
            for c, cos in enumerate(cosets[b]):
                g = cos.rep
                gi = inv[g]
                if all(t[t[gi][k]][g] in Lm for k in K.elements):
                    lookup[(a, b, c)] = len(morphisms)
                    morphisms.append((a, b, OrbitMorphism(a, b, cos)))
    identities = [lookup[(a, a, 0)] for a in range(len(members))]

    def compose(g_m: int, f_m: int) -> int:
        a, _, pf = morphisms[f_m]
        _, c, pg = morphisms[g_m]
        prod = t[pf.coset.rep][pg.coset.rep]
        return lookup[(a, c, cidx[c][prod])]

    obj = OrbitCategory.from_function(
        list(members), morphisms, identities, compose, name=f"Orb_{F.name or 'F'}({G.name})"
    )
    obj.group, obj.family = G, F
    obj.cosets, obj.coset_index = cosets, cidx
    obj._lookup = lookup
    return obj


def equivariant_map_count(G: FiniteGroup, F, K) -> int:
    """Brute-force count of G-maps G/F -> G/K.

    Each candidate image c of 1F defines gF -> g.c; keep the well-defined ones.
    """
    t = G.table
    count = 0
    for cos in left_cosets(G, K):
        target = set(cos.elements)
        ok = True
        for f in F.elements:
            # f.c must equal c for gF -> g.c to be well defined
            if {t[f][x] for x in target} != target:
                ok = False
                break
        count += ok
    return count


# --------------------------------------------------------------------------
# constructions on categories


def hom_set(C: FinCategory, a: int, b: int) -> list[int]:
    return list(C.hom_set(a, b))


def opposite(C: FinCategory) -> FinCategory:
    morphisms = [(C.cod[m], C.dom[m], C.payloads[m]) for m in range(C.n_morphisms)]
    D = FinCategory.from_function(
        C.objects, morphisms, C.identities, lambda g, f: C.compose(f, g), name=f"{C.name}^op"
    )
    D.object_label = C.object_label  # type: ignore[method-assign]
    D.morphism_label = C.morphism_label  # type: ignore[method-assign]
    return D


def full_subcategory(C: FinCategory, objects: Sequence[int], name: str = "") -> tuple[FinCategory, Functor]:
    """Full subcategory on ``objects`` (in the given order) and its inclusion."""
    objects = list(objects)
    new_of = {a: i for i, a in enumerate(objects)}
    keep = [m for m in range(C.n_morphisms) if C.dom[m] in new_of and C.cod[m] in new_of]
    new_m = {m: i for i, m in enumerate(keep)}
    morphisms = [(new_of[C.dom[m]], new_of[C.cod[m]], C.payloads[m]) for m in keep]
    D = FinCategory.from_function(
        [C.objects[a] for a in objects],
        morphisms,
        [new_m[C.identities[a]] for a in objects],
        lambda g, f: new_m[C.compose(keep[g], keep[f])],
        name=name or f"{C.name}|sub",
    )
    D.object_label = lambda a: C.object_label(objects[a])  # type: ignore[method-assign]
    D.morphism_label = lambda m: C.morphism_label(keep[m])  # type: ignore[method-assign]
    return D, Functor(D, C, tuple(objects), tuple(keep), name="incl")


def comma_under(d: int, G: Functor) -> FinCategory:
    """The fiber d|G: objects (c, phi: d -> G(c)), morphisms psi with G(psi) o phi = phi'."""
    C, D = G.source, G.target
    objs = [(c, phi) for c in range(C.n_objects) for phi in D.hom_set(d, G.obj_map[c])]
    index = {o: i for i, o in enumerate(objs)}
    morphisms = []
    lookup = {}
    for i, (c, phi) in enumerate(objs):
        for psi in C.out[c]:
            c2 = C.cod[psi]
            phi2 = D.compose(G.mor_map[psi], phi)
            j = index[(c2, phi2)]
            lookup[(psi, i)] = len(morphisms)
            morphisms.append((i, j, psi))
    identities = [lookup[(C.identities[c], i)] for i, (c, _) in enumerate(objs)]

    def compose(g: int, f: int) -> int:
        return lookup[(C.compose(morphisms[g][2], morphisms[f][2]), morphisms[f][0])]

    return FinCategory.from_function(objs, morphisms, identities, compose, name=f"{d}|{G.name or 'G'}")


def comma_over(G: Functor, d: int) -> FinCategory:
    """The fiber G|d: objects (c, phi: G(c) -> d), morphisms psi with phi' o G(psi) = phi."""
    C, D = G.source, G.target
    objs = [(c, phi) for c in range(C.n_objects) for phi in D.hom_set(G.obj_map[c], d)]
    index = {o: i for i, o in enumerate(objs)}
    morphisms = []
    lookup = {}
    for j, (c2, phi2) in enumerate(objs):
        for psi in C.inn[c2]:
            c = C.dom[psi]
            phi = D.compose(phi2, G.mor_map[psi])
            i = index[(c, phi)]
            lookup[(psi, i)] = len(morphisms)
            morphisms.append((i, j, psi))
    identities = [lookup[(C.identities[c], i)] for i, (c, _) in enumerate(objs)]

    def compose(g: int, f: int) -> int:
        return lookup[(C.compose(morphisms[g][2], morphisms[f][2]), morphisms[f][0])]

    return FinCategory.from_function(objs, morphisms, identities, compose, name=f"{G.name or 'G'}|{d}")


def over_category(C: FinCategory, c: int) -> FinCategory:
    """C|c: objects are arrows into c, morphisms commuting triangles."""
    D = comma_over(identity_functor(C), c)
    D.name = f"{C.name}|{c}"
    return D


def under_category(C: FinCategory, c: int) -> FinCategory:
    """c|C: objects are arrows out of c."""
    D = comma_under(c, identity_functor(C))
    D.name = f"{c}|{C.name}"
    return D


# --------------------------------------------------------------------------
# structural predicates


class Extremal(NamedTuple):
    index: int
    unique: bool


def initial_objects(C: FinCategory) -> list[int]:
    n = C.n_objects
    return [a for a in range(n) if all(C.hom_count(a, b) == 1 for b in range(n))]


def terminal_objects(C: FinCategory) -> list[int]:
    n = C.n_objects
    return [b for b in range(n) if all(C.hom_count(a, b) == 1 for a in range(n))]


def find_initial(C: FinCategory) -> Extremal | None:
    found = initial_objects(C)
    return Extremal(found[0], len(found) == 1) if found else None


def find_terminal(C: FinCategory) -> Extremal | None:
    found = terminal_objects(C)
    return Extremal(found[0], len(found) == 1) if found else None


def is_initial(C: FinCategory, a: int) -> bool:
    return all(C.hom_count(a, b) == 1 for b in range(C.n_objects))


def connected_components(C: FinCategory) -> list[list[int]]:
    parent = list(range(C.n_objects))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in zip(C.dom, C.cod):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    comps: dict[int, list[int]] = {}
    for a in range(C.n_objects):
        comps.setdefault(find(a), []).append(a)
    return sorted(comps.values())


class Structure(NamedTuple):
    is_thin: bool
    is_indiscrete: bool
    components: list[list[int]]


def structural_predicates(C: FinCategory) -> Structure:
    n = C.n_objects
    counts = C.hom
    thin = all(len(v) <= 1 for v in counts.values())
    indiscrete = thin and len(counts) == n * n
    return Structure(thin, indiscrete, connected_components(C))


def isomorphism_classes(C: FinCategory) -> list[list[int]]:
    """Partition objects into isomorphism classes (each sorted, classes by first element)."""
    def iso(a: int, b: int) -> bool:
        for f in C.hom_set(a, b):
            for g in C.hom_set(b, a):
                if C.compose(g, f) == C.identities[a] and C.compose(f, g) == C.identities[b]:
                    return True
        return False

    classes: list[list[int]] = []
    for a in range(C.n_objects):
        for cls in classes:
            if iso(cls[0], a):
                cls.append(a)
                break
        else:
            classes.append([a])
    return classes


def skeleton(C: FinCategory) -> tuple[FinCategory, Functor]:
    """Full subcategory on one object per isomorphism class, with its inclusion.

    The inclusion is an equivalence of categories, so nerves are homotopy
    equivalent and homology agrees.
    """
    reps = [cls[0] for cls in isomorphism_classes(C)]
    return full_subcategory(C, reps, name=f"sk({C.name})")


def discrete_category(n: int) -> FinCategory:
    return FinCategory(list(range(n)), list(range(n)), list(range(n)), list(range(n)), [[m] for m in range(n)])


def one_object_category(G: FiniteGroup) -> FinCategory:
    """The one-object category BG; morphism g o h is the product h*g."""
    t = G.table
    return FinCategory.from_function(
        ["*"], [(0, 0, G.labels[g]) for g in range(G.order)], [0], lambda g, f: t[f][g], name=f"B{G.name}"
    )
