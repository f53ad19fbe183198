# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled elimination kernel; mirrors orbcat._pykernels.unit_eliminate."""

from libcpp.vector cimport vector
from libcpp.pair cimport pair
from libcpp.queue cimport priority_queue
from libc.stdlib cimport llabs

import numpy as np

ctypedef long long i64
ctypedef pair[int, i64] Entry
ctypedef vector[Entry] Row

# bail out to the big-integer fallback before int64 can overflow: entries stay
# within 2^31, so factor * entry is below 2^62 and the update below 2^63
cdef i64 LIMIT = (<i64>1) << 31


cdef inline i64 row_get(Row& row, int c) nogil:
    cdef size_t lo = 0, hi = row.size(), mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if row[mid].first < c:
            lo = mid + 1
        else:
            hi = mid
    if lo < row.size() and row[lo].first == c:
        return row[lo].second
    return 0


cdef int axpy(Row& target, Row& src, i64 factor, Row& scratch,
              vector[int]& added) nogil:
    """target -= factor * src, merged in column order; records new columns."""
    scratch.clear()
    added.clear()
    cdef size_t i = 0, j = 0
    cdef i64 v
    while i < target.size() or j < src.size():
        if j >= src.size() or (i < target.size() and target[i].first < src[j].first):
            scratch.push_back(target[i])
            i += 1
        elif i >= target.size() or src[j].first < target[i].first:
            v = -factor * src[j].second
            if v != 0:
                if llabs(v) > LIMIT:
                    return 1
                scratch.push_back(Entry(src[j].first, v))
                added.push_back(src[j].first)
            j += 1
        else:
            v = target[i].second - factor * src[j].second
            if llabs(v) > LIMIT:
                return 1
            if v != 0:
                scratch.push_back(Entry(target[i].first, v))
            i += 1
            j += 1
    target.swap(scratch)
    return 0


cdef class _Eliminator:
    cdef vector[Row] rows
    cdef vector[vector[int]] col_rows
    cdef vector[char] alive_row, alive_col
    cdef priority_queue[pair[int, int]] heap   # (-count, -col): min-heap via negation
    cdef Row scratch
    cdef vector[int] added
    cdef vector[int] pivot_cols

    def __cinit__(self, int nrows, int ncols):
        self.rows.resize(nrows)
        self.col_rows.resize(ncols)
        self.alive_row.assign(nrows, 1)
        self.alive_col.assign(ncols, 1)

    cdef int live(self, int c) nogil:
        cdef vector[int]* lst = &self.col_rows[c]
        cdef size_t k, w = 0
        cdef int r
        for k in range(lst.size()):
            r = lst[0][k]
            if self.alive_row[r] and row_get(self.rows[r], c) != 0:
                lst[0][w] = r
                w += 1
        lst.resize(w)
        # drop duplicate row ids
        cdef vector[int] uniq
        if w > 1:
            for k in range(w):
                r = lst[0][k]
                if self.alive_row[r] == 1:
                    self.alive_row[r] = 2
                    uniq.push_back(r)
            for k in range(uniq.size()):
                self.alive_row[uniq[k]] = 1
            lst.swap(uniq)
        return <int>lst.size()

    cdef int try_pivot(self, int c) nogil:
        cdef int n = self.live(c)
        cdef int best = -1, r, r2, c2
        cdef size_t k, q
        cdef i64 v, u, factor
        cdef vector[int]* lst = &self.col_rows[c]
        for k in range(lst.size()):
            r = lst[0][k]
            v = row_get(self.rows[r], c)
            if v == 1 or v == -1:
                if best < 0 or self.rows[r].size() < self.rows[best].size():
                    best = r
        if best < 0:
            return 0
        u = row_get(self.rows[best], c)
        for k in range(lst.size()):
            r2 = lst[0][k]
            if r2 == best:
                continue
            factor = row_get(self.rows[r2], c) * u
            if axpy(self.rows[r2], self.rows[best], factor, self.scratch, self.added):
                return -1
            for q in range(self.added.size()):
                c2 = self.added[q]
                self.col_rows[c2].push_back(r2)
                self.heap.push(pair[int, int](-<int>self.col_rows[c2].size(), -c2))
        self.alive_row[best] = 0
        self.alive_col[c] = 0
        self.rows[best].clear()
        self.pivot_cols.push_back(c)
        return 1

    cdef int run(self) nogil:
        cdef int ncols = <int>self.col_rows.size()
        cdef int c, key, n, res, progress
        cdef vector[int] deferred, remaining
        cdef size_t k
        for c in range(ncols):
            if self.col_rows[c].size() > 0:
                self.heap.push(pair[int, int](-<int>self.col_rows[c].size(), -c))
        while not self.heap.empty():
            key = -self.heap.top().first
            c = -self.heap.top().second
            self.heap.pop()
            if not self.alive_col[c]:
                continue
            n = self.live(c)
            if n == 0:
                self.alive_col[c] = 0
                continue
            if n > key:
                self.heap.push(pair[int, int](-n, -c))
                continue
            res = self.try_pivot(c)
            if res < 0:
                return -1
            if res == 0:
                deferred.push_back(c)
        progress = 1
        while progress and deferred.size() > 0:
            progress = 0
            remaining.clear()
            for k in range(deferred.size()):
                c = deferred[k]
                if not self.alive_col[c]:
                    continue
                res = self.try_pivot(c)
                if res < 0:
                    return -1
                if res == 1:
                    progress = 1
                else:
                    remaining.push_back(c)
            deferred.swap(remaining)
        return 0


def unit_eliminate(int nrows, int ncols, indptr, indices, data):
    """See orbcat._pykernels.unit_eliminate; raises OverflowError on int64 growth."""
    cdef const i64[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const i64[:] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef const i64[:] dv = np.ascontiguousarray(data, dtype=np.int64)
    cdef _Eliminator el = _Eliminator(nrows, ncols)
    cdef int c, r
    cdef i64 p, v
    for c in range(ncols):
        for p in range(ip[c], ip[c + 1]):
            v = dv[p]
            if v != 0:
                r = <int>ix[p]
                if llabs(v) > LIMIT:
                    raise OverflowError("matrix entry too large for the compiled kernel")
                el.rows[r].push_back(Entry(c, v))
                el.col_rows[c].push_back(r)
    # CSC input with sorted, duplicate-free indices gives sorted rows
    cdef int status
    with nogil:
        status = el.run()
    if status < 0:
        raise OverflowError("entry growth exceeded the compiled kernel's range")
    rr, cc, vv = [], [], []
    cdef size_t k
    for r in range(nrows):
        if not el.alive_row[r]:
            continue
        for k in range(el.rows[r].size()):
            c = el.rows[r][k].first
            if el.alive_col[c] and el.rows[r][k].second != 0:
                rr.append(r)
                cc.append(c)
                vv.append(el.rows[r][k].second)
    return list(el.pivot_cols), rr, cc, vv
