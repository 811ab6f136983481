# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Levenshtein kernels.

Mirrors conceal_scan._editdist_py exactly; the metrics module picks
whichever is importable.
"""

from libc.stdlib cimport free, malloc


def levenshtein(str a, str b) -> int:
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t i, j
    cdef int cost, d
    if a == b:
        return 0
    if la == 0:
        return lb
    if lb == 0:
        return la
    if la < lb:
        a, b = b, a
        la, lb = lb, la
    cdef int *prev = <int *> malloc((lb + 1) * sizeof(int))
    cdef int *cur = <int *> malloc((lb + 1) * sizeof(int))
    cdef int *tmp
    if prev == NULL or cur == NULL:
        if prev != NULL:
            free(prev)
        if cur != NULL:
            free(cur)
        raise MemoryError()
    try:
        for j in range(lb + 1):
            prev[j] = <int> j
        for i in range(1, la + 1):
            cur[0] = <int> i
            for j in range(1, lb + 1):
                cost = 0 if a[i - 1] == b[j - 1] else 1
                d = prev[j] + 1
                if cur[j - 1] + 1 < d:
                    d = cur[j - 1] + 1
                if prev[j - 1] + cost < d:
                    d = prev[j - 1] + cost
                cur[j] = d
            tmp = prev
            prev = cur
            cur = tmp
        return prev[lb]
    finally:
        free(prev)
        free(cur)


def levenshtein_within(str a, str b, int t) -> bool:
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t i, j
    cdef int cost, d, row_min
    if t < 0:
        return False
    if la - lb > t or lb - la > t:
        return False
    if a == b:
        return True
    if la < lb:
        a, b = b, a
        la, lb = lb, la
    cdef int *prev = <int *> malloc((lb + 1) * sizeof(int))
    cdef int *cur = <int *> malloc((lb + 1) * sizeof(int))
    cdef int *tmp
    if prev == NULL or cur == NULL:
        if prev != NULL:
            free(prev)
        if cur != NULL:
            free(cur)
        raise MemoryError()
    try:
        for j in range(lb + 1):
            prev[j] = <int> j
        for i in range(1, la + 1):
            cur[0] = <int> i
            row_min = <int> i
            for j in range(1, lb + 1):
                cost = 0 if a[i - 1] == b[j - 1] else 1
                d = prev[j] + 1
                if cur[j - 1] + 1 < d:
                    d = cur[j - 1] + 1
                if prev[j - 1] + cost < d:
                    d = prev[j - 1] + cost
                cur[j] = d
                if d < row_min:
                    row_min = d
            if row_min > t:
                return False
            tmp = prev
            prev = cur
            cur = tmp
        return prev[lb] <= t
    finally:
        free(prev)
        free(cur)
