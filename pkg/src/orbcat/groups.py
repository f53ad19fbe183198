"""Finite groups as Cayley tables over dense element indices.

Element 0 is always the identity.  For groups built from permutations the
product ``mul(a, b)`` means "apply ``a``, then ``b``"; this is locked by a unit
test on S3 because conjugation examples depend on it.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

DEFAULT_MAX_ORDER = 5040


class GroupError(ValueError):
    """Invalid group data or descriptor."""


class HomomorphismError(ValueError):
    """An assignment of generator images that does not extend to a homomorphism."""

    def __init__(self, message: str, witness: tuple[int, int] | None = None):
        super().__init__(message)
        self.witness = witness


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[a][b]`` is the index of ``a*b``.  Instances are immutable; equality
    and hashing go through the table, labels are cosmetic.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        name: str = "",
        *,
        check: bool = True,
        perms: Sequence[tuple[int, ...]] | None = None,
    ) -> None:
        self.table: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.name = name or f"G{self.order}"
        if labels is None:
            labels = [str(i) for i in range(self.order)]
        self.labels: tuple[str, ...] = tuple(labels)
        # underlying permutations (0-based images) when built from permutations
        self.perms = tuple(perms) if perms is not None else None
        if check:
            _validate_table(self.table)
        inv = [0] * self.order
        for a in range(self.order):
            inv[a] = self.table[a].index(0)
        self.inverse: tuple[int, ...] = tuple(inv)
        self._hash = hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self._hash == other._hash and self.table == other.table

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, h: int) -> int:
        """Return g h g^-1."""
        t = self.table
        return t[t[g][h]][self.inverse[g]]

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != 0:
            x = self.table[x][a]
            n += 1
        return n

    def label(self, a: int) -> str:
        return self.labels[a]

    def index_of(self, label: str) -> int:
        """Look up an element by label; permutation groups also accept cycle notation."""
        key = label.strip()
        try:
            return self._label_index[key]
        except KeyError:
            pass
        if self.perms is not None and key.startswith("("):
            degree = len(self.perms[0])
            perm = parse_cycles(key, degree)
            try:
                return self._perm_index[perm]
            except KeyError:
                pass
        raise GroupError(f"unknown element {label!r} in {self.name}")

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def _perm_index(self) -> dict[tuple[int, ...], int]:
        assert self.perms is not None
        return {p: i for i, p in enumerate(self.perms)}

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def center(self) -> tuple[int, ...]:
        t = self.table
        return tuple(a for a in range(self.order) if all(t[a][b] == t[b][a] for b in range(self.order)))

    @cached_property
    def subgroups(self) -> tuple["Subgroup", ...]:
        return tuple(enumerate_subgroups(self))

    def whole(self) -> "Subgroup":
        return Subgroup(tuple(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup((0,))


def _validate_table(table: tuple[tuple[int, ...], ...]) -> None:
    n = len(table)
    if n == 0:
        raise GroupError("empty group table")
    full = set(range(n))
    for a, row in enumerate(table):
        if len(row) != n or set(row) != full:
            raise GroupError(f"row {a} is not a permutation of 0..{n - 1}")
    for b in range(n):
        if {table[a][b] for a in range(n)} != full:
            raise GroupError(f"column {b} is not a permutation of 0..{n - 1}")
    for a in range(n):
        if table[0][a] != a or table[a][0] != a:
            raise GroupError("index 0 is not a two-sided identity")
    for a in range(n):
        ra = table[a]
        for b in range(n):
            rab = table[ra[b]]
            rb = table[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise GroupError(f"table is not associative at ({a}, {b}, {c})")


@dataclass(frozen=True, order=True)
class Subgroup:
    """A subgroup, stored as the sorted tuple of its element indices."""

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.members

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical sort key: (order, elements)."""
        return (len(self.elements), self.elements)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def is_valid_in(self, G: FiniteGroup) -> bool:
        s = self.members
        if 0 not in s or any(g < 0 or g >= G.order for g in s):
            return False
        if G.order % len(s):
            return False
        t = G.table
        return all(t[a][b] in s for a in s for b in s) and all(G.inverse[a] in s for a in s)

    def describe(self, G: FiniteGroup) -> str:
        return "{" + ", ".join(G.labels[g] for g in self.elements) + "}"


@dataclass(frozen=True)
class Coset:
    """A left coset gamma*H.  Equality is by element set only."""

    subgroup: Subgroup
    representative: int = field(compare=False)
    elements: tuple[int, ...]

    @property
    def rep(self) -> int:
        """Canonical representative (smallest element)."""
        return self.elements[0]


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteGroup
    target: FiniteGroup
    image: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.image[g]

    def image_of(self, H: Subgroup) -> Subgroup:
        return Subgroup(tuple({self.image[h] for h in H.elements}))

    def kernel(self) -> Subgroup:
        return Subgroup(tuple(g for g in range(self.source.order) if self.image[g] == 0))

    def compose(self, inner: "Homomorphism") -> "Homomorphism":
        """Return ``self o inner``."""
        if inner.target != self.source:
            raise HomomorphismError("homomorphisms are not composable")
        return Homomorphism(inner.source, self.target, tuple(self.image[x] for x in inner.image))

    def check(self) -> tuple[int, int] | None:
        """Return a witnessing pair (a, b) if the homomorphism law fails."""
        s, t, im = self.source.table, self.target.table, self.image
        if im[0] != 0:
            return (0, 0)
        for a in range(self.source.order):
            for b in range(self.source.order):
                if im[s[a][b]] != t[im[a]][im[b]]:
                    return (a, b)
        return None


# --------------------------------------------------------------------------
# subgroup machinery


def generate(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Subgroup generated by ``gens`` (closure under right multiplication)."""
    gens = [g for g in set(gens) if g != 0]
    seen = {0}
    queue = deque([0])
    t = G.table
    while queue:
        x = queue.popleft()
        row = t[x]
        for s in gens:
            y = row[s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(tuple(seen))


def enumerate_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups of G sorted by (order, elements).

    Breadth-first: every subgroup is reached from a smaller one by adjoining
    a single element, so closing known subgroups under one more generator
    finds them all.
    """
    trivial = Subgroup((0,))
    gens: dict[Subgroup, tuple[int, ...]] = {trivial: ()}
    frontier = [trivial]
    while frontier:
        nxt = []
        for H in frontier:
            hs = H.members
            for g in range(1, G.order):
                if g in hs:
                    continue
                K = generate(G, gens[H] + (g,))
                if K not in gens:
                    gens[K] = gens[H] + (g,)
                    nxt.append(K)
        frontier = nxt
    return sorted(gens, key=Subgroup.key)


def conjugate_subgroup(G: FiniteGroup, g: int, H: Subgroup) -> Subgroup:
    """Return g H g^-1."""
    return Subgroup(tuple(G.conj(g, h) for h in H.elements))


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return all(conjugate_subgroup(G, g, H) == H for g in range(G.order))


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    return Subgroup(tuple(g for g in range(G.order) if conjugate_subgroup(G, g, H) == H))


def left_coset(G: FiniteGroup, g: int, H: Subgroup) -> Coset:
    row = G.table[g]
    return Coset(H, g, tuple(sorted(row[h] for h in H.elements)))


def left_cosets(G: FiniteGroup, H: Subgroup) -> list[Coset]:
    """Partition of G into left cosets gH, ordered by smallest element."""
    seen: set[int] = set()
    out = []
    for g in range(G.order):
        if g in seen:
            continue
        c = left_coset(G, g, H)
        seen.update(c.elements)
        out.append(c)
    return out


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    t, inv = G.table, G.inverse
    comms = {t[t[t[a][b]][inv[a]]][inv[b]] for a in range(G.order) for b in range(G.order)}
    return generate(G, comms)


# --------------------------------------------------------------------------
# homomorphisms


def make_homomorphism(src: FiniteGroup, dst: FiniteGroup, assignment: dict[int, int]) -> Homomorphism:
    """Extend generator images to a homomorphism, or raise with a witness.

    The witness is a pair (a, b) of source elements at which
    ``image[a*b] != image[a]*image[b]``.
    """
    image: list[int | None] = [None] * src.order
    image[0] = 0
    gens = sorted(assignment)
    for g in gens:
        if not 0 <= assignment[g] < dst.order:
            raise HomomorphismError(f"image of {src.labels[g]} is not an element of {dst.name}")
    queue = deque([0])
    st, dt = src.table, dst.table
    while queue:
        x = queue.popleft()
        for s in gens:
            y = st[x][s]
            val = dt[image[x]][assignment[s]]  # type: ignore[index]
            if image[y] is None:
                image[y] = val
                queue.append(y)
            elif image[y] != val:
                raise HomomorphismError(
                    f"assignment violates a relation at ({src.labels[x]}, {src.labels[s]})",
                    witness=(x, s),
                )
    if any(v is None for v in image):
        raise HomomorphismError("the given elements do not generate the source group")
    hom = Homomorphism(src, dst, tuple(image))  # type: ignore[arg-type]
    bad = hom.check()
    if bad is not None:
        raise HomomorphismError(
            f"not a homomorphism at ({src.labels[bad[0]]}, {src.labels[bad[1]]})", witness=bad
        )
    return hom


def identity_homomorphism(G: FiniteGroup) -> Homomorphism:
    return Homomorphism(G, G, tuple(range(G.order)))


# --------------------------------------------------------------------------
# constructors


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"cyclic group order must be positive, got {n}")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, [str(i) for i in range(n)], name=f"Z{n}", check=False)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; element k + n*e stands for r^k s^e."""
    if n < 1:
        raise GroupError(f"dihedral parameter must be positive, got {n}")

    def mul(x: int, y: int) -> int:
        a, e = x % n, x // n
        b, f = y % n, y // n
        k = (a + (b if e == 0 else -b)) % n
        return k + n * ((e + f) % 2)

    table = [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]
    labels = []
    for x in range(2 * n):
        k, e = x % n, x // n
        r = "" if k == 0 else ("r" if k == 1 else f"r{k}")
        labels.append((r + ("s" if e else "")) or "1")
    return FiniteGroup(table, labels, name=f"D{n}", check=False)


def quaternion8() -> FiniteGroup:
    # basis order 1, i, j, k with signs; element index = 4*sign + unit
    unit_mul = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }  # fmt: skip
    table = []
    for x in range(8):
        sx, ux = divmod(x, 4)
        row = []
        for y in range(8):
            sy, uy = divmod(y, 4)
            s, u = unit_mul[(ux, uy)]
            row.append(4 * ((sx + sy + s) % 2) + u)
        table.append(row)
    names = ["1", "i", "j", "k"]
    labels = names + ["-" + m for m in names]
    return FiniteGroup(table, labels, name="Q8", check=False)


def format_cycles(perm: Sequence[int]) -> str:
    """Cycle notation with 1-based points; the identity is ``()``."""
    seen: set[int] = set()
    parts = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(parts) or "()"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse cycle notation like ``(1 2)(3 4)`` into 0-based images."""
    text = text.strip()
    if _CYCLE.sub("", text).strip():
        raise GroupError(f"bad permutation {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        toks = body.replace(",", " ").split()
        try:
            pts = [int(tok) - 1 for tok in toks]
        except ValueError:
            raise GroupError(f"bad permutation {text!r}") from None
        if any(p < 0 for p in pts) or len(set(pts)) != len(pts):
            raise GroupError(f"bad permutation {text!r}")
        cycles.append(pts)
    top = max((p for c in cycles for p in c), default=-1) + 1
    n = max(top, degree or 0, 1)
    if degree is not None and top > degree:
        raise GroupError(f"permutation {text!r} moves points beyond degree {degree}")
    perm = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a] = b
    return tuple(perm)


def from_permutations(
    gens: Sequence[Sequence[int]], name: str = "", max_order: int = DEFAULT_MAX_ORDER
) -> FiniteGroup:
    """Close a set of permutations (0-based images) into a group.

    Elements are sorted lexicographically by image tuple, which puts the
    identity at index 0.  ``mul(a, b)`` is "apply a, then b".
    """
    degree = max((len(g) for g in gens), default=1)
    gens = [tuple(g) + tuple(range(len(g), degree)) for g in gens]
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = tuple(s[x[i]] for i in range(degree))
            if y not in seen:
                seen.add(y)
                if len(seen) > max_order:
                    raise GroupError(f"generators produce a group larger than max order {max_order}")
                queue.append(y)
    perms = sorted(seen)
    index = {p: i for i, p in enumerate(perms)}
    # (a then b)[i] = b[a[i]]
    table = [[index[tuple(b[a[i]] for i in range(degree))] for b in perms] for a in perms]
    labels = [format_cycles(p) for p in perms]
    return FiniteGroup(table, labels, name=name or f"Perm{len(perms)}", check=False, perms=perms)


def symmetric(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"symmetric group degree must be positive, got {n}")
    gens = []
    if n >= 2:
        gens.append((1, 0) + tuple(range(2, n)))
        gens.append(tuple(range(1, n)) + (0,))
    if not gens:
        gens = [(0,)]
    return from_permutations(gens, name=f"S{n}", max_order=max_order)


def alternating(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"alternating group degree must be positive, got {n}")
    gens = [tuple(range(n))]
    for k in range(2, n):
        # 3-cycles (0 1 k)
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return from_permutations(gens, name=f"A{n}", max_order=max_order)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    m = H.order
    table = [
        [G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(G.order * m)]
        for a in range(G.order * m)
    ]
    labels = [f"({G.labels[a // m]},{H.labels[a % m]})" for a in range(G.order * m)]
    return FiniteGroup(table, labels, name=f"{G.name}x{H.name}", check=False)


def read_cayley(path: str | Path) -> FiniteGroup:
    """Read a Cayley-table file: ``n`` on line 1, then n rows of n indices."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise GroupError(f"{path}: empty Cayley table file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise GroupError(f"{path}: {exc}") from None
    if len(rows) != n:
        raise GroupError(f"{path}: expected {n} rows, found {len(rows)}")
    return FiniteGroup(rows, name=Path(path).stem)


def write_cayley(G: FiniteGroup, path: str | Path) -> None:
    body = "\n".join(" ".join(map(str, row)) for row in G.table)
    Path(path).write_text(f"{G.order}\n{body}\n")


def read_permutations(path: str | Path, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Read one permutation per line in cycle notation and close them."""
    perms = [parse_cycles(ln) for ln in Path(path).read_text().splitlines() if ln.strip()]
    return from_permutations(perms, name=Path(path).stem, max_order=max_order)


_NAMED = re.compile(r"^([A-Za-z]+)(\d+)$")


def make_group(desc: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a group from a descriptor.

    Accepted forms: ``Z<n>``/``C<n>`` (cyclic), ``D<n>`` (dihedral, order 2n),
    ``S<n>``, ``A<n>``, ``Q8``, products ``AxB``, ``perm:(1 2),(1 2 3)`` and
    ``cayley:FILE``.
    """
    desc = desc.strip()
    if desc.startswith("perm:"):
        body = desc[5:]
        parts = [p for p in re.split(r"\s*,\s*(?=\()", body) if p.strip()]
        if not parts:
            raise GroupError(f"bad permutation generators in {desc!r}")
        perms = [parse_cycles(p) for p in parts]
        return from_permutations(perms, name=desc, max_order=max_order)
    if desc.startswith("cayley:"):
        return read_cayley(desc[7:])
    if "x" in desc:
        parts = desc.split("x")
        if not all(p.strip() for p in parts):
            raise GroupError(f"unrecognised group descriptor {desc!r}")
        factors = [make_group(p, max_order) for p in parts]
        G = factors[0]
        for H in factors[1:]:
            G = direct_product(G, H)
            if G.order > max_order:
                raise GroupError(f"{desc} exceeds max order {max_order}")
        return G
    m = _NAMED.match(desc)
    if not m:
        raise GroupError(f"unrecognised group descriptor {desc!r}")
    kind, n = m.group(1).upper(), int(m.group(2))
    if (kind in ("Z", "C") and n > max_order) or (kind == "D" and 2 * n > max_order):
        raise GroupError(f"{desc} exceeds max order {max_order}")
    if kind in ("Z", "C"):
        G = cyclic(n)
    elif kind == "D":
        G = dihedral(n)
    elif kind == "S":
        G = symmetric(n, max_order)
    elif kind == "A":
        G = alternating(n, max_order)
    elif kind == "Q" and n == 8:
        G = quaternion8()
    else:
        raise GroupError(f"unrecognised group descriptor {desc!r}")
    if G.order > max_order:
        raise GroupError(f"{desc} exceeds max order {max_order}")
    return G


def elements_of_order(G: FiniteGroup, k: int) -> list[int]:
    return [a for a in range(G.order) if G.element_order(a) == k]

