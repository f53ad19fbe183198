"""Finite left Gamma-sets as permutation actions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .groups import FiniteGroup, Subgroup, left_cosets


class GammaSetError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GammaSet:
    """``action[g][x]`` is the point g.x; points are 0..size-1."""

    group: FiniteGroup
    action: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.action[0]) if self.action else 0

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def violation(self) -> str | None:
        G = self.group
        if len(self.action) != G.order:
            return "need one permutation per group element"
        n = self.size
        for g, row in enumerate(self.action):
            if sorted(row) != list(range(n)):
                return f"element {G.labels[g]} does not act by a permutation"
        if self.action[0] != tuple(range(n)):
            return "identity does not act trivially"
        t = G.table
        for g in range(G.order):
            for h in range(G.order):
                gh = self.action[t[g][h]]
                ag, ah = self.action[g], self.action[h]
                if any(gh[x] != ag[ah[x]] for x in range(n)):
                    return f"(gh).x != g.(h.x) for g={G.labels[g]}, h={G.labels[h]}"
        return None

    def check(self) -> "GammaSet":
        msg = self.violation()
        if msg:
            raise GammaSetError(msg)
        return self

    def fixed_points(self, H: Subgroup | Sequence[int]) -> list[int]:
        elems = H.elements if isinstance(H, Subgroup) else H
        return [x for x in range(self.size) if all(self.action[h][x] == x for h in elems)]

    def stabilizer(self, x: int) -> Subgroup:
        return Subgroup(tuple(g for g in range(self.group.order) if self.action[g][x] == x))

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        out = []
        for x in range(self.size):
            if x in seen:
                continue
            orb = tuple(sorted({row[x] for row in self.action}))
            seen.update(orb)
            out.append(orb)
        return tuple(out)

    def to_text(self) -> str:
        lines = [str(self.size)]
        lines += [" ".join(map(str, row)) for row in self.action]
        return "\n".join(lines) + "\n"


def coset_space(G: FiniteGroup, H: Subgroup) -> GammaSet:
    """G/H with g.(dH) = (gd)H, points in the order of ``left_cosets``."""
    cs = left_cosets(G, H)
    idx = {}
    for i, c in enumerate(cs):
        for d in c.elements:
            idx[d] = i
    t = G.table
    action = tuple(tuple(idx[t[g][c.rep]] for c in cs) for g in range(G.order))
    labels = tuple(f"{G.labels[c.rep]}H" for c in cs)
    return GammaSet(G, action, labels)


def point(G: FiniteGroup) -> GammaSet:
    return GammaSet(G, tuple((0,) for _ in range(G.order)), ("*",))


def disjoint_union(*parts: GammaSet) -> GammaSet:
    if not parts:
        raise GammaSetError("empty disjoint union has no group")
    G = parts[0].group
    rows: list[list[int]] = [[] for _ in range(G.order)]
    labels: list[str] = []
    off = 0
    for i, X in enumerate(parts):
        if X.group != G:
            raise GammaSetError("disjoint union of sets over different groups")
        for g in range(G.order):
            rows[g].extend(off + y for y in X.action[g])
        labels.extend(f"{i}:{X.label(x)}" for x in range(X.size))
        off += X.size
    return GammaSet(G, tuple(map(tuple, rows)), tuple(labels))


def relabel(X: GammaSet, perm: Sequence[int]) -> GammaSet:
    """The isomorphic Gamma-set with point x renamed perm[x]."""
    n = X.size
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    action = tuple(tuple(perm[row[inv[y]]] for y in range(n)) for row in X.action)
    labels = tuple(X.label(inv[y]) for y in range(n))
    return GammaSet(X.group, action, labels)


def random_gamma_set(G: FiniteGroup, rng: random.Random, max_size: int = 8) -> GammaSet:
    """A random disjoint union of coset spaces, shuffled, with at most ``max_size`` points."""
    subs = sorted(G.subgroups)
    parts = []
    size = 0
    n_parts = rng.randint(1, 4)
    for _ in range(n_parts):
        fits = [H for H in subs if size + G.order // H.order <= max_size]
        if not fits:
            break
        H = rng.choice(fits)
        parts.append(coset_space(G, H))
        size += G.order // H.order
    if not parts:
        parts = [point(G)]
    X = disjoint_union(*parts)
    perm = list(range(X.size))
    rng.shuffle(perm)
    return relabel(X, perm)


def is_equivariant(X: GammaSet, Y: GammaSet, f: Sequence[int]) -> bool:
    return all(f[X.action[g][x]] == Y.action[g][f[x]] for g in range(X.group.order) for x in range(X.size))


def equivariant_maps(X: GammaSet, Y: GammaSet) -> list[tuple[int, ...]]:
    """Every G-map X -> Y: choose the image of each orbit representative in Y^{stab}."""
    choices = []
    for orb in X.orbits:
        x = orb[0]
        choices.append((x, Y.fixed_points(X.stabilizer(x))))
    out: list[tuple[int, ...]] = []

    def extend(i: int, f: list[int]) -> None:
        if i == len(choices):
            out.append(tuple(f))
            return
        x, ys = choices[i]
        for y in ys:
            g2 = list(f)
            for g in range(X.group.order):
                g2[X.action[g][x]] = Y.action[g][y]
            extend(i + 1, g2)

    extend(0, [-1] * X.size)
    return out


def random_equivariant_map(X: GammaSet, Y: GammaSet, rng: random.Random) -> tuple[int, ...] | None:
    f = [-1] * X.size
    for orb in X.orbits:
        x = orb[0]
        ys = Y.fixed_points(X.stabilizer(x))
        if not ys:
            return None
        y = rng.choice(ys)
        for g in range(X.group.order):
            f[X.action[g][x]] = Y.action[g][y]
    return tuple(f)


def random_isomorphic_copy(X: GammaSet, rng: random.Random) -> tuple[GammaSet, tuple[int, ...]]:
    """A shuffled copy Y of X together with the equivariant bijection X -> Y."""
    perm = list(range(X.size))
    rng.shuffle(perm)
    return relabel(X, perm), tuple(perm)


def read_gamma_set(G: FiniteGroup, text: str) -> GammaSet:
    """Parse: first line the size n, then one line per group element (in index order)
    listing g.0 ... g.(n-1)."""
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GammaSetError("empty Gamma-set file")
    try:
        n = int(lines[0])
        rows = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise GammaSetError(f"malformed Gamma-set file: {exc}") from None
    if len(rows) != G.order or any(len(r) != n for r in rows):
        raise GammaSetError(f"expected {G.order} rows of {n} integers")
    return GammaSet(G, tuple(rows)).check()
