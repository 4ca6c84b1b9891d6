# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; behaviour is identical to ``_pykernels``."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef u64 ZERO_SEED = 0x9E3779B97F4A7C15ULL
cdef u64 MULTIPLIER = 0x2545F4914F6CDD1DULL


cdef inline u64 _step(u64* s):
    s[0] ^= s[0] >> 12
    s[0] ^= s[0] << 25
    s[0] ^= s[0] >> 27
    return s[0] * MULTIPLIER


def xorshift64star(seed, Py_ssize_t count):
    cdef u64 s = <u64>(seed & 0xFFFFFFFFFFFFFFFF)
    if s == 0:
        s = ZERO_SEED
    cdef Py_ssize_t i
    out = []
    for i in range(count):
        out.append(_step(&s))
    return out


def sample_indices(total, k, seed):
    if total <= k:
        return list(range(total))
    cdef u64 s = <u64>(seed & 0xFFFFFFFFFFFFFFFF)
    if s == 0:
        s = ZERO_SEED
    cdef u64 n = <u64>total
    cdef u64 i, j, r
    cdef dict swapped = {}
    out = []
    for i in range(<u64>k):
        r = _step(&s)
        j = i + r % (n - i)
        vi = swapped.get(i, i)
        vj = swapped.get(j, j)
        swapped[j] = vi
        out.append(vj)
    return out


cdef Py_ssize_t _lev(unicode a, unicode b, Py_ssize_t* prev, Py_ssize_t* cur):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, best, v
    cdef Py_ssize_t* tmp
    cdef Py_UCS4 ca
    if la < lb:
        a, b = b, a
        la, lb = lb, la
    for j in range(lb + 1):
        prev[j] = j
    for i in range(1, la + 1):
        ca = a[i - 1]
        cur[0] = i
        for j in range(1, lb + 1):
            best = prev[j] + 1
            v = cur[j - 1] + 1
            if v < best:
                best = v
            v = prev[j - 1] + (0 if ca == b[j - 1] else 1)
            if v < best:
                best = v
            cur[j] = best
        tmp = prev
        prev = cur
        cur = tmp
    return prev[lb]


def levenshtein(unicode a, unicode b):
    cdef Py_ssize_t size = max(len(a), len(b)) + 1
    cdef Py_ssize_t* buf = <Py_ssize_t*>malloc(2 * size * sizeof(Py_ssize_t))
    if buf == NULL:
        raise MemoryError()
    try:
        return _lev(a, b, buf, buf + size)
    finally:
        free(buf)


def similar_pairs(list names, double threshold):
    cdef Py_ssize_t n = len(names), i, j, la, lb, longest, size = 1
    cdef unicode a, b
    for a in names:
        if len(a) + 1 > size:
            size = len(a) + 1
    cdef Py_ssize_t* buf = <Py_ssize_t*>malloc(2 * size * sizeof(Py_ssize_t))
    if buf == NULL:
        raise MemoryError()
    out = []
    try:
        for i in range(n):
            a = names[i]
            la = len(a)
            for j in range(i + 1, n):
                b = names[j]
                lb = len(b)
                longest = la if la > lb else lb
                if longest == 0:
                    continue
                if <double>(la - lb if la > lb else lb - la) / <double>longest > threshold:
                    continue
                if <double>_lev(a, b, buf, buf + size) / <double>longest <= threshold:
                    out.append((i, j))
    finally:
        free(buf)
    return out
