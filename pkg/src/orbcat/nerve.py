"""Truncated nerves, cellular chain complexes and integral homology.

A k-simplex of the nerve is a chain of k composable morphisms; only chains
of non-identity morphisms are kept (the normalized complex).  Faces: d_0
drops the first morphism, d_k the last, and d_i (0 < i < k) composes the
i-th and (i+1)-th.  A face whose composite is an identity is degenerate and
contributes nothing.  Chains are stored level by level as integer arrays in
lexicographic order, which lets faces be located by a prefix walk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .fincat import FinCategory, skeleton
from .groups import FiniteGroup, commutator_subgroup, left_cosets
from .snf import SNFResult, reduce_sparse, smith_normal_form

DEFAULT_CAP = 1_000_000


class NerveTooLarge(RuntimeError):
    def __init__(self, needed: int, cap: int, dim: int):
        super().__init__(f"nerve needs {needed} simplices through dimension {dim}, cap is {cap}")
        self.needed, self.cap, self.dim = needed, cap, dim


class CategoryArrays:
    """numpy views of a category used by the vectorised nerve code."""

    def __init__(self, C: FinCategory):
        self.category = C
        n_obj, n_mor = C.n_objects, C.n_morphisms
        self.dom = np.asarray(C.dom, dtype=np.int64)
        self.cod = np.asarray(C.cod, dtype=np.int64)
        self.is_id = np.zeros(n_mor, dtype=bool)
        self.is_id[list(C.identities)] = True
        self.identities = np.asarray(C.identities, dtype=np.int64)
        nonid = np.flatnonzero(~self.is_id)
        # non-identity morphisms grouped by domain, in index order
        order = nonid[np.argsort(self.dom[nonid], kind="stable")]
        self.nonid = order
        counts = np.bincount(self.dom[order], minlength=n_obj)
        self.out_ptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
        self.out_deg = counts.astype(np.int64)
        self.rank = np.full(n_mor, -1, dtype=np.int64)  # position among nonid (global)
        self.rank[order] = np.arange(len(order))
        self.local = np.full(n_mor, -1, dtype=np.int64)  # position within out-list of dom
        self.local[order] = np.arange(len(order)) - self.out_ptr[self.dom[order]]
        # composition: comp_flat[comp_ptr[f] + pos[g]] = g o f
        self.pos = np.asarray([C.position(m) for m in range(n_mor)], dtype=np.int64)
        rows = [C.composites(f) for f in range(n_mor)]
        lens = np.asarray([len(r) for r in rows], dtype=np.int64)
        self.comp_ptr = np.concatenate([[0], np.cumsum(lens)[:-1]]).astype(np.int64) if n_mor else np.zeros(0, np.int64)
        self.comp_flat = np.fromiter((x for r in rows for x in r), dtype=np.int64, count=int(lens.sum()))

    def compose(self, g: np.ndarray, f: np.ndarray) -> np.ndarray:
        return self.comp_flat[self.comp_ptr[f] + self.pos[g]]

    def transfer_matrix(self) -> np.ndarray:
        n = self.category.n_objects
        M = np.zeros((n, n), dtype=np.int64)
        np.add.at(M, (self.dom[self.nonid], self.cod[self.nonid]), 1)
        return M


def arrays_of(C: FinCategory) -> CategoryArrays:
    """Cached ``CategoryArrays`` (categories are immutable once built)."""
    A = C.__dict__.get("_arrays")
    if A is None:
        A = CategoryArrays(C)
        C.__dict__["_arrays"] = A
    return A


def simplex_counts(C: FinCategory, top: int, arrays: CategoryArrays | None = None) -> list[int]:
    """Number of nondegenerate k-simplices for k = 0..top, without enumerating.

    The count of k-chains is 1^T M^k 1 with M[a][b] the number of
    non-identity morphisms a -> b.
    """
    A = arrays or arrays_of(C)
    M = A.transfer_matrix().astype(object)
    v = np.ones(C.n_objects, dtype=object)
    counts = [C.n_objects]
    for _ in range(top):
        v = M.dot(v) if len(v) else v
        counts.append(int(sum(v)))
    return counts


@dataclass
class TruncatedNerve:
    """Nondegenerate simplices of the nerve through dimension ``top``.

    ``chains[k]`` has shape (n_k, k) for k >= 1 (morphism indices);
    ``chains[0]`` lists object indices.
    """

    category: FinCategory
    top: int
    chains: list[np.ndarray]
    arrays: CategoryArrays = field(repr=False)
    # starts[k][i]: first child (at level k) of chain i at level k-1, k >= 2
    starts: list[np.ndarray] = field(repr=False)

    @property
    def counts(self) -> list[int]:
        return [len(c) for c in self.chains]

    def locate(self, rows: np.ndarray) -> np.ndarray:
        """Index of each chain (row of morphism indices) at its level; -1 if absent.

        Rows containing identities or non-composable pairs map to -1.
        """
        rows = np.asarray(rows, dtype=np.int64)
        A = self.arrays
        k = rows.shape[1]
        idx = A.rank[rows[:, 0]].copy()
        ok = idx >= 0
        for j in range(1, k):
            m = rows[:, j]
            loc = A.local[m]
            ok &= (loc >= 0) & (A.dom[m] == A.cod[rows[:, j - 1]])
            safe = np.where(ok, idx, 0)
            idx = np.where(ok, self.starts[j + 1][safe] + loc, -1)
        return np.where(ok, idx, -1)

    def vertices(self, k: int) -> np.ndarray:
        """Objects x_0..x_k of each k-simplex, shape (n_k, k+1)."""
        if k == 0:
            return self.chains[0][:, None]
        ch = self.chains[k]
        return np.hstack([self.arrays.dom[ch], self.arrays.cod[ch[:, -1:]]])


def nerve(C: FinCategory, top: int, cap: int | None = DEFAULT_CAP, arrays: CategoryArrays | None = None) -> TruncatedNerve:
    """Enumerate nondegenerate simplices through dimension ``top``.

    Raises ``NerveTooLarge`` before enumerating if the total exceeds ``cap``.
    """
    A = arrays or arrays_of(C)
    if cap is not None:
        counts = simplex_counts(C, top, A)
        if sum(counts) > cap:
            raise NerveTooLarge(sum(counts), cap, top)
    chains = [np.arange(C.n_objects, dtype=np.int64)]
    starts: list[np.ndarray] = [np.zeros(0, np.int64), np.zeros(0, np.int64)]
    if top >= 1:
        chains.append(A.nonid.reshape(-1, 1).copy())
    for k in range(2, top + 1):
        prev = chains[-1]
        last_cod = A.cod[prev[:, -1]]
        deg = A.out_deg[last_cod]
        first = np.cumsum(deg) - deg
        starts.append(first.astype(np.int64))
        total = int(deg.sum())
        parent = np.repeat(np.arange(len(prev)), deg)
        offset = np.arange(total, dtype=np.int64) - np.repeat(first, deg)
        ext = A.nonid[A.out_ptr[last_cod[parent]] + offset]
        chains.append(np.hstack([prev[parent], ext[:, None]]))
    return TruncatedNerve(C, top, chains, A, starts)


def face_indices(N: TruncatedNerve, k: int, i: int) -> np.ndarray:
    """Index of d_i of every k-simplex among the (k-1)-simplices; -1 where degenerate."""
    A = N.arrays
    ch = N.chains[k]
    if k == 1:
        return (A.cod if i == 0 else A.dom)[ch[:, 0]].copy()
    if i == 0:
        return N.locate(ch[:, 1:])
    if i == k:
        return N.locate(ch[:, :-1])
    comp = A.compose(ch[:, i], ch[:, i - 1])
    keep = ~A.is_id[comp]
    out = np.full(len(ch), -1, dtype=np.int64)
    face = np.hstack([ch[:, : i - 1], comp[:, None], ch[:, i + 1 :]])[keep]
    found = N.locate(face)
    if (found < 0).any():
        raise AssertionError("face of a nondegenerate simplex was not found")
    out[keep] = found
    return out


def boundary_matrix(N: TruncatedNerve, k: int) -> sp.csc_matrix:
    """The boundary map C_k -> C_{k-1} as an integer matrix (rows: (k-1)-simplices)."""
    nk, nk1 = len(N.chains[k]), len(N.chains[k - 1])
    if nk == 0 or nk1 == 0:
        return sp.csc_matrix((nk1, nk), dtype=np.int64)
    cols = np.arange(nk, dtype=np.int64)
    rr, cc, vv = [], [], []
    for i in range(k + 1):
        idx = face_indices(N, k, i)
        keep = idx >= 0
        rr.append(idx[keep])
        cc.append(cols[keep])
        vv.append(np.full(int(keep.sum()), 1 if i % 2 == 0 else -1, dtype=np.int64))
    M = sp.coo_matrix(
        (np.concatenate(vv), (np.concatenate(rr), np.concatenate(cc))), shape=(nk1, nk)
    ).tocsc()
    M.sum_duplicates()
    M.eliminate_zeros()
    return M


@dataclass
class ChainComplex:
    ranks: list[int]
    boundaries: dict[int, sp.csc_matrix]  # k -> d_k : C_k -> C_{k-1}, k >= 1

    def check(self) -> None:
        for k in range(2, len(self.ranks)):
            prod = (self.boundaries[k - 1] @ self.boundaries[k]).tocsc()
            prod.eliminate_zeros()
            if prod.nnz:
                raise AssertionError(f"boundary squared is nonzero in degree {k}")


def chain_complex(C: FinCategory, top: int, cap: int | None = DEFAULT_CAP, check: bool = True) -> ChainComplex:
    N = nerve(C, top, cap)
    return complex_of_nerve(N, check)


def complex_of_nerve(N: TruncatedNerve, check: bool = True) -> ChainComplex:
    bd = {k: boundary_matrix(N, k) for k in range(1, N.top + 1)}
    cc = ChainComplex(N.counts, bd)
    if check:
        cc.check()
    return cc


@dataclass
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = ["Z"] * min(self.betti, 1)
        if self.betti > 1:
            parts = [f"Z^{self.betti}"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"betti": self.betti, "torsion": list(self.torsion)}


@dataclass
class HomologyResult:
    groups: list[HomologyGroup]
    method: str
    simplex_counts: list[int]
    category: str = ""

    @property
    def is_acyclic(self) -> bool:
        """H_0 = Z and every higher group vanishes (in the computed range)."""
        g0, rest = self.groups[0], self.groups[1:]
        return g0.betti == 1 and not g0.torsion and all(g.betti == 0 and not g.torsion for g in rest)

    def to_dict(self) -> dict:
        return {
            "category": self.category,
            "method": self.method,
            "simplex_counts": list(self.simplex_counts),
            "groups": [dict(degree=k, **g.to_dict()) for k, g in enumerate(self.groups)],
        }


def homology_of_complex(cc: ChainComplex, degrees: int, backend: str | None = None) -> list[HomologyGroup]:
    """H_0..H_degrees; needs boundaries up to degrees+1.

    Columns of d_k that take a unit pivot index rows of d_{k+1} that can be
    cleared by unimodular column operations (because d_k d_{k+1} = 0), so they
    are dropped before reducing d_{k+1}.  Each dropped row lowers neither the
    rank nor the torsion of d_{k+1}.
    """
    snf: dict[int, SNFResult] = {}
    cleared: list[int] = []
    for k in range(1, degrees + 2):
        M = cc.boundaries[k]
        if cleared:
            keep = np.ones(M.shape[0], dtype=bool)
            keep[cleared] = False
            M = M.tocsr()[keep].tocsc()
        snf[k], cleared = reduce_sparse(M, backend=backend)
    out = []
    for k in range(degrees + 1):
        rk_out = snf[k].rank if k >= 1 else 0
        rk_in = snf[k + 1].rank
        out.append(HomologyGroup(cc.ranks[k] - rk_out - rk_in, snf[k + 1].torsion))
    return out


def homology(
    C: FinCategory,
    N: int,
    cap: int | None = DEFAULT_CAP,
    method: str = "auto",
    backend: str | None = None,
) -> HomologyResult:
    """Integral homology H_0..H_N of the nerve of C.

    ``method``: "direct" uses C itself, "skeleton" a skeleton of C (an
    equivalent category, hence homotopy equivalent nerve and the same
    homology), "auto" uses the skeleton whenever it is strictly smaller.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    top = N + 1
    if method not in ("auto", "direct", "skeleton"):
        raise ValueError(f"unknown method {method!r}")
    target = C
    used = "direct"
    if method in ("auto", "skeleton"):
        sk, _ = skeleton(C)
        if method == "skeleton" or sk.n_objects < C.n_objects:
            target, used = sk, "skeleton"
    nv = nerve(target, top, cap)
    cc = complex_of_nerve(nv)
    groups = homology_of_complex(cc, N, backend=backend)
    return HomologyResult(groups, used, nv.counts, category=C.name)


# --------------------------------------------------------------------------
# group-theoretic cross-check for H_1


def abelianization(G: FiniteGroup) -> tuple[int, ...]:
    """Invariant factors (> 1) of G/[G, G]."""
    K = commutator_subgroup(G)
    cosets = left_cosets(G, K)
    idx = {}
    for i, c in enumerate(cosets):
        for g in c.elements:
            idx[g] = i
    n = len(cosets)
    # presentation of the abelian quotient: generators = cosets, relations x_a + x_b = x_ab, x_1 = 0
    rels = []
    t = G.table
    reps = [c.rep for c in cosets]
    for a in range(n):
        for b in range(n):
            row = [0] * n
            row[a] += 1
            row[b] += 1
            row[idx[t[reps[a]][reps[b]]]] -= 1
            rels.append(row)
    ident = [0] * n
    ident[idx[0]] = 1
    rels.append(ident)
    res = smith_normal_form(rels)
    if res.rank != n:
        raise AssertionError("abelianization presentation is not of finite type")
    return res.torsion


def homology_table(results: Sequence[HomologyResult]) -> str:
    lines = []
    for r in results:
        cells = ", ".join(f"H{k}={g}" for k, g in enumerate(r.groups))
        lines.append(f"{r.category}: {cells} [{r.method}]")
    return "\n".join(lines)
