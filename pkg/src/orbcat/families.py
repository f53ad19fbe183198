"""Families of subgroups: conjugation- and subgroup-closed sets."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .groups import (
    FiniteGroup,
    GroupError,
    Homomorphism,
    Subgroup,
    conjugate_subgroup,
    generate,
)


class FamilyError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class Family:
    """A family of subgroups of ``ambient``, members in canonical order."""

    ambient: FiniteGroup
    members: tuple[Subgroup, ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(sorted(set(self.members), key=Subgroup.key)))

    def __contains__(self, H: Subgroup) -> bool:
        return H in self.member_set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.ambient == other.ambient and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.ambient, self.members))

    @cached_property
    def member_set(self) -> frozenset[Subgroup]:
        return frozenset(self.members)

    def index(self, H: Subgroup) -> int:
        return self.members.index(H)

    def violations(self) -> list[str]:
        """Describe every failed family axiom (empty list = valid family)."""
        G = self.ambient
        out = []
        if not self.members:
            out.append("family is empty")
        for F in self.members:
            if not F.is_valid_in(G):
                out.append(f"{F.describe(G)} is not a subgroup")
                continue
            for g in range(G.order):
                if conjugate_subgroup(G, g, F) not in self.member_set:
                    out.append(f"not closed under conjugation: {G.labels[g]} * {F.describe(G)}")
                    break
            for K in G.subgroups:
                if K.members <= F.members and K not in self.member_set:
                    out.append(f"not closed under subgroups: {K.describe(G)} <= {F.describe(G)}")
                    break
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def maximal_members(self) -> list[Subgroup]:
        return [
            F for F in self.members
            if not any(F != K and F.members <= K.members for K in self.members)
        ]


def close_family(G: FiniteGroup, seeds: Iterable[Subgroup], name: str = "") -> Family:
    """Smallest family containing ``seeds``; the trivial family if there are none."""
    seeds = list(seeds)
    tops = {conjugate_subgroup(G, g, S) for S in seeds for g in range(G.order)}
    members = [K for K in G.subgroups if K.order == 1 or any(K.members <= T.members for T in tops)]
    return Family(G, tuple(members), name=name)


def named_family(G: FiniteGroup, name: str, p: int | None = None) -> Family:
    """``trivial``, ``all`` or ``p-subgroups`` (with prime ``p``)."""
    if name == "trivial":
        return Family(G, (G.trivial(),), name="trivial")
    if name == "all":
        return Family(G, G.subgroups, name="all")
    if name in ("p", "p-subgroups"):
        if p is None or not is_prime(p):
            raise FamilyError(f"p-subgroup family needs a prime, got {p!r}")
        members = [K for K in G.subgroups if _is_power_of(K.order, p)]
        return Family(G, tuple(members), name=f"p:{p}")
    raise FamilyError(f"unknown family name {name!r}")


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def preimage_family(h: Homomorphism, F: Family) -> Family:
    """The family {G <= source : h(G) in F}."""
    if F.ambient != h.target:
        raise FamilyError("family does not live on the homomorphism's target")
    members = [K for K in h.source.subgroups if h.image_of(K) in F]
    fam = Family(h.source, tuple(members), name=f"h^-1({F.name})" if F.name else "")
    bad = fam.violations()
    if bad:
        raise AssertionError(f"preimage is not a family: {bad[0]}")
    return fam


def conjugacy_classes_of_subgroups(G: FiniteGroup) -> list[tuple[Subgroup, ...]]:
    classes: list[tuple[Subgroup, ...]] = []
    seen: set[Subgroup] = set()
    for H in G.subgroups:
        if H in seen:
            continue
        cls = tuple(sorted({conjugate_subgroup(G, g, H) for g in range(G.order)}, key=Subgroup.key))
        seen.update(cls)
        classes.append(cls)
    return classes


def all_families(G: FiniteGroup) -> list[Family]:
    """Every family of subgroups of G, generated by antichains of conjugacy classes."""
    classes = conjugacy_classes_of_subgroups(G)
    reps = [c[0] for c in classes]
    found: dict[tuple[Subgroup, ...], Family] = {}

    def below(a: int, b: int) -> bool:
        # some conjugate of class a sits inside rep b
        return any(K.members <= reps[b].members for K in classes[a])

    def extend(start: int, chosen: list[int]) -> None:
        fam = close_family(G, [reps[i] for i in chosen])
        found.setdefault(fam.members, fam)
        for j in range(start, len(reps)):
            if any(below(j, i) or below(i, j) for i in chosen):
                continue
            extend(j + 1, chosen + [j])

    extend(0, [])
    return sorted(found.values(), key=lambda f: (len(f.members), [m.key() for m in f.members]))


_GEN_GROUP = re.compile(r"\[([^\[\]]*)\]")


def parse_family(G: FiniteGroup, desc: str) -> Family:
    """Parse ``trivial``, ``all``, ``p:3`` or ``gen:[(1 2)],[(1 2 3)]``.

    In ``gen:`` each bracket lists generators of one seed subgroup, by label.
    """
    desc = desc.strip()
    if desc in ("trivial", "all"):
        return named_family(G, desc)
    if desc.startswith("p:"):
        try:
            p = int(desc[2:])
        except ValueError:
            raise FamilyError(f"bad prime in family descriptor {desc!r}") from None
        return named_family(G, "p", p)
    if desc.startswith("gen:"):
        body = desc[4:]
        groups = _GEN_GROUP.findall(body)
        if not groups or _GEN_GROUP.sub("", body).replace(",", "").strip():
            raise FamilyError(f"bad generated-family descriptor {desc!r}")
        seeds = []
        for grp in groups:
            labels = re.split(r"\s*,\s*(?![^()]*\))", grp.strip()) if grp.strip() else []
            try:
                elems = [G.index_of(lab) for lab in labels if lab]
            except GroupError as exc:
                raise FamilyError(str(exc)) from None
            seeds.append(generate(G, elems))
        return close_family(G, seeds, name=desc)
    raise FamilyError(f"unrecognised family descriptor {desc!r}")
