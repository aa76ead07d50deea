# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: group closure and box lattice-point counting.

Mirrors ``pykernels`` exactly.  Inputs outside the compiled limits (wide
denominators, huge coordinates) raise OverflowError and the caller falls back
to the pure-Python implementation, which uses unbounded integers.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc

STATUS_OK = 0
STATUS_TOO_LARGE = 1
STATUS_WEIGHT = 2
STATUS_HEIGHT = 3


def closure_table(gens, int e, int den, long long cap, int max_weight=-1,
                  long long max_height_num=-1, bint require_integral=False):
    if den <= 0:
        raise ValueError("den must be positive")
    if e <= 0 or e > 4096 or den > 255:
        raise OverflowError("outside compiled kernel limits")
    cdef unsigned char tmp[4096]
    cdef int i, v, zeros
    cdef long long total
    cdef const unsigned char* bb
    cdef const unsigned char* gg
    gen_bytes = []
    for g in gens:
        if len(g) != e:
            raise ValueError("generator length does not match e")
        gen_bytes.append(bytes(bytearray(int(x) % den for x in g)))
    zero = bytes(e)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for base in frontier:
            bb = <const unsigned char*> PyBytes_AS_STRING(base)
            for g in gen_bytes:
                gg = <const unsigned char*> PyBytes_AS_STRING(g)
                total = 0
                zeros = 0
                for i in range(e):
                    v = bb[i] + gg[i]
                    if v >= den:
                        v -= den
                    tmp[i] = <unsigned char> v
                    total += v
                    if v == 0:
                        zeros += 1
                s = PyBytes_FromStringAndSize(<char*> tmp, e)
                if s in seen:
                    continue
                if require_integral and total % den != 0:
                    return STATUS_HEIGHT, None
                if max_height_num >= 0 and total > max_height_num:
                    return STATUS_HEIGHT, None
                if max_weight >= 0 and e - zeros > max_weight:
                    return STATUS_WEIGHT, None
                seen.add(s)
                if <long long> len(seen) > cap:
                    return STATUS_TOO_LARGE, None
                nxt.append(s)
        frontier = nxt
    return STATUS_OK, sorted([tuple(b) for b in seen])


def extend_closure(prev, row, int e, int den, long long cap,
                   int max_weight=-1, long long max_height_num=-1,
                   bint require_integral=False):
    if den <= 0:
        raise ValueError("den must be positive")
    if e <= 0 or e > 4096 or den > 255:
        raise OverflowError("outside compiled kernel limits")
    cdef unsigned char tmp[4096]
    cdef unsigned char curbuf[4096]
    cdef int i, v, zeros
    cdef long long total, total_new = 0
    cdef const unsigned char* hh
    if len(row) != e:
        raise ValueError("row length does not match e")
    row_b = bytes(bytearray(int(x) % den for x in row))
    prev_b = [bytes(bytearray(el)) for el in prev]
    base = set(prev_b)
    cdef const unsigned char* rr = <const unsigned char*> PyBytes_AS_STRING(row_b)
    for i in range(e):
        curbuf[i] = rr[i]
    layers = []
    cur = PyBytes_FromStringAndSize(<char*> curbuf, e)
    while cur not in base:
        layer = []
        for h in prev_b:
            hh = <const unsigned char*> PyBytes_AS_STRING(h)
            total = 0
            zeros = 0
            for i in range(e):
                v = hh[i] + curbuf[i]
                if v >= den:
                    v -= den
                tmp[i] = <unsigned char> v
                total += v
                if v == 0:
                    zeros += 1
            if require_integral and total % den != 0:
                return STATUS_HEIGHT, None
            if max_height_num >= 0 and total > max_height_num:
                return STATUS_HEIGHT, None
            if max_weight >= 0 and e - zeros > max_weight:
                return STATUS_WEIGHT, None
            layer.append(PyBytes_FromStringAndSize(<char*> tmp, e))
        total_new += <long long> len(layer)
        if <long long> len(prev_b) + total_new > cap:
            return STATUS_TOO_LARGE, None
        layers.append(layer)
        for i in range(e):
            v = curbuf[i] + rr[i]
            if v >= den:
                v -= den
            curbuf[i] = <unsigned char> v
        cur = PyBytes_FromStringAndSize(<char*> curbuf, e)
    out = list(prev_b)
    for layer in layers:
        out.extend(layer)
    return STATUS_OK, sorted([tuple(b) for b in out])


def count_box_points(adj, int det_sign, lows, highs, long long n, bint strict=False):
    cdef int d = len(lows)
    cdef int m = d + 1
    cdef int i, j, k
    if m > 64:
        raise OverflowError("dimension too large for compiled kernel")
    if d == 0:
        return 1
    max_adj = 0
    for row in adj:
        for x in row:
            ax = abs(int(x))
            if ax > max_adj:
                max_adj = ax
    coord_bound = abs(int(n))
    for j in range(d):
        a = abs(int(lows[j]))
        b = abs(int(highs[j]))
        if a > coord_bound:
            coord_bound = a
        if b > coord_bound:
            coord_bound = b
    if max_adj > 0 and coord_bound > 0 and \
            max_adj > ((<object> 1) << 61) // (coord_bound * (m + 1)):
        raise OverflowError("values too large for compiled kernel")

    cdef long long* rows_c = <long long*> malloc(m * m * sizeof(long long))
    cdef long long* t = <long long*> malloc(m * sizeof(long long))
    cdef long long* lo = <long long*> malloc(d * sizeof(long long))
    cdef long long* hi = <long long*> malloc(d * sizeof(long long))
    cdef long long* pos = <long long*> malloc(d * sizeof(long long))
    if not rows_c or not t or not lo or not hi or not pos:
        free(<void*> rows_c)
        free(<void*> t)
        free(<void*> lo)
        free(<void*> hi)
        free(<void*> pos)
        raise MemoryError()
    cdef long long count = 0
    cdef long long span
    cdef bint ok, empty = False
    try:
        for j in range(m):
            row = adj[j]
            for i in range(m):
                rows_c[j * m + i] = det_sign * <long long> row[i]
        for j in range(d):
            lo[j] = <long long> lows[j]
            hi[j] = <long long> highs[j]
            if lo[j] > hi[j]:
                empty = True
        if empty:
            return 0
        for i in range(m):
            t[i] = n * rows_c[d * m + i]
        for j in range(d):
            for i in range(m):
                t[i] += lo[j] * rows_c[j * m + i]
            pos[j] = lo[j]
        while True:
            ok = True
            if strict:
                for i in range(m):
                    if t[i] <= 0:
                        ok = False
                        break
            else:
                for i in range(m):
                    if t[i] < 0:
                        ok = False
                        break
            if ok:
                count += 1
            k = 0
            while k < d:
                if pos[k] < hi[k]:
                    pos[k] += 1
                    for i in range(m):
                        t[i] += rows_c[k * m + i]
                    break
                span = hi[k] - lo[k]
                pos[k] = lo[k]
                for i in range(m):
                    t[i] -= span * rows_c[k * m + i]
                k += 1
            if k == d:
                return count
    finally:
        free(<void*> rows_c)
        free(<void*> t)
        free(<void*> lo)
        free(<void*> hi)
        free(<void*> pos)
