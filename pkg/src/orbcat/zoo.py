"""The built-in test zoo: groups, families, homomorphisms and random instances."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache

from .families import Family, all_families, close_family, named_family
from .fincat import Functor, NaturalTransformation, full_subcategory, orbit_category
from .grothendieck import orbit_space_transformation, pushforward_functor
from .groups import (
    FiniteGroup,
    GroupError,
    Homomorphism,
    HomomorphismError,
    generate,
    identity_homomorphism,
    make_group,
    make_homomorphism,
)
from .gsets import disjoint_union, point, random_equivariant_map, random_gamma_set

ZOO_GROUPS = tuple(f"Z{n}" for n in range(1, 13)) + ("Z2xZ2", "S3", "S4", "D4", "Q8", "A4")


@lru_cache(maxsize=None)
def zoo_group(name: str) -> FiniteGroup:
    return make_group(name)


def generated_seed(G: FiniteGroup):
    """Cyclic subgroup generated by the first element of maximal order."""
    orders = [G.element_order(g) for g in range(G.order)]
    g = orders.index(max(orders))
    return generate(G, [g]), g


@lru_cache(maxsize=None)
def zoo_families(G: FiniteGroup) -> tuple[Family, ...]:
    """trivial, all, 2- and 3-subgroups and one generated family; duplicates dropped."""
    H, g = generated_seed(G)
    cands = [
        named_family(G, "trivial"),
        named_family(G, "all"),
        named_family(G, "p", 2),
        named_family(G, "p", 3),
        close_family(G, [H], name=f"gen:[{G.labels[g]}]"),
    ]
    seen, out = set(), []
    for F in cands:
        if F.members not in seen:
            seen.add(F.members)
            out.append(F)
    return tuple(out)


def zoo_pairs(groups=ZOO_GROUPS):
    for name in groups:
        G = zoo_group(name)
        for F in zoo_families(G):
            yield G, F


# --------------------------------------------------------------------------
# homomorphisms


def _label_of_int(G: FiniteGroup, k: int) -> int:
    return G.index_of(str(k))


def reduction(m: int, n: int) -> Homomorphism:
    """Z/m -> Z/n, k -> k mod n (n divides m)."""
    if n <= 0 or m % n:
        raise HomomorphismError(f"Z{n} is not a quotient of Z{m}")
    src, dst = zoo_group(f"Z{m}"), zoo_group(f"Z{n}")
    return make_homomorphism(src, dst, {_label_of_int(src, 1): _label_of_int(dst, 1 % n)})


def sign(n: int) -> Homomorphism:
    src, dst = zoo_group(f"S{n}"), zoo_group("Z2")
    image = []
    for g in range(src.order):
        perm = src.perms[g]
        seen, parity = set(), 0
        for i in range(len(perm)):
            if i in seen:
                continue
            j, length = i, 0
            while j not in seen:
                seen.add(j)
                j = perm[j]
                length += 1
            parity ^= (length - 1) & 1
        image.append(parity)
    h = Homomorphism(src, dst, tuple(image))
    if h.check() is not None:
        raise HomomorphismError("sign is not a homomorphism")
    return h


def embedding(m: int, n: int) -> Homomorphism:
    """S_m -> S_n fixing the extra points."""
    src, dst = zoo_group(f"S{m}"), zoo_group(f"S{n}")
    index = {p: i for i, p in enumerate(dst.perms)}
    image = tuple(index[tuple(p) + tuple(range(m, n))] for p in src.perms)
    h = Homomorphism(src, dst, image)
    if h.check() is not None:
        raise HomomorphismError("embedding is not a homomorphism")
    return h


def parse_hom(desc: str, max_order: int | None = None) -> Homomorphism:
    """``id:G``, ``mod:M:N``, ``sign:N``, ``embed:M:N`` or ``map:SRC:DST:a=b,c=d`` (labels)."""
    desc = desc.strip()
    try:
        kind, _, rest = desc.partition(":")
        if kind == "id":
            return identity_homomorphism(make_group(rest) if max_order is None else make_group(rest, max_order))
        if kind == "mod":
            m, n = rest.split(":")
            return reduction(int(m), int(n))
        if kind == "sign":
            return sign(int(rest))
        if kind == "embed":
            m, n = rest.split(":")
            return embedding(int(m), int(n))
        if kind == "map":
            src_d, dst_d, assign = rest.split(":", 2)
            src, dst = make_group(src_d), make_group(dst_d)
            pairs = {}
            for item in re.split(r",(?![^()]*\))", assign):
                if not item.strip():
                    continue
                a, b = item.split("=")
                pairs[src.index_of(a.strip())] = dst.index_of(b.strip())
            return make_homomorphism(src, dst, pairs)
    except (ValueError, KeyError) as exc:
        raise HomomorphismError(f"bad homomorphism descriptor {desc!r}: {exc}") from None
    raise HomomorphismError(f"unknown homomorphism kind in {desc!r}")


@dataclass(frozen=True)
class HomCase:
    name: str
    hom: Homomorphism
    inner: Homomorphism | None = None  # when set, check (hom o inner)_F too


def homomorphism_suite() -> list[HomCase]:
    """id, Z4 -> Z2, Z8 -> Z4 -> Z2, S2 -> S3, sign: S3 -> Z2."""
    return [
        HomCase("id:S3", identity_homomorphism(zoo_group("S3"))),
        HomCase("id:Z4", identity_homomorphism(zoo_group("Z4"))),
        HomCase("id:D4", identity_homomorphism(zoo_group("D4"))),
        HomCase("mod:4:2", reduction(4, 2)),
        HomCase("mod:8:4", reduction(8, 4)),
        HomCase("mod:4:2 after mod:8:4", reduction(4, 2), inner=reduction(8, 4)),
        HomCase("embed:2:3", embedding(2, 3)),
        HomCase("sign:3", sign(3)),
    ]


# --------------------------------------------------------------------------
# random instances of the strict square


@dataclass
class SquareInstance:
    group: str
    description: str
    alpha: Functor
    eta: NaturalTransformation


def _conjugation(G: FiniteGroup, g: int) -> Homomorphism:
    t, inv = G.table, G.inverse
    return Homomorphism(G, G, tuple(t[t[g][x]][inv[g]] for x in range(G.order)))


def random_square_instance(rng: random.Random, groups=("S3", "Z4", "Z6", "D4", "Z2xZ2", "Q8")) -> SquareInstance:
    """B = Orb_F(G); F, G = orbit-space functors of random Gamma-sets; eta from a
    random equivariant map; alpha a full inclusion or a conjugation h_*."""
    G = zoo_group(rng.choice(groups))
    fams = all_families(G)
    F = fams[rng.randrange(len(fams))]
    B = orbit_category(G, F)
    Y = random_gamma_set(G, rng, max_size=6)
    Z = disjoint_union(random_gamma_set(G, rng, max_size=5), point(G))
    f = random_equivariant_map(Y, Z, rng)
    assert f is not None  # Z has a fixed point
    eta = orbit_space_transformation(B, Y, Z, f)
    if rng.random() < 0.5:
        k = rng.randint(1, B.n_objects)
        objs = sorted(rng.sample(range(B.n_objects), k))
        _, alpha = full_subcategory(B, objs)
        what = f"inclusion of {k} of {B.n_objects} objects"
    else:
        g = rng.randrange(G.order)
        h = _conjugation(G, g)
        alpha = pushforward_functor(h, B, B)
        what = f"conjugation by {G.labels[g]}"
    return SquareInstance(G.name, f"{G.name}, |F|={len(F)}, {what}", alpha, eta)


__all__ = [
    "ZOO_GROUPS",
    "GroupError",
    "HomCase",
    "SquareInstance",
    "embedding",
    "homomorphism_suite",
    "parse_hom",
    "random_square_instance",
    "reduction",
    "sign",
    "zoo_families",
    "zoo_group",
    "zoo_pairs",
]

