# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Smith normal form kernel on int64 storage.

Runs the same pivot sequence as ``_snf_py.snf_lists``. Any intermediate value
leaving the int64 range raises OverflowError so the caller can retry with
arbitrary-precision integers.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    #include <limits.h>
    static int sk_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r) || *r == LLONG_MIN;
    }
    static int sk_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r) || *r == LLONG_MIN;
    }
    static int sk_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r) || *r == LLONG_MIN;
    }
    """
    int sk_mul(long long a, long long b, long long *r) nogil
    int sk_sub(long long a, long long b, long long *r) nogil
    int sk_add(long long a, long long b, long long *r) nogil


cdef inline long long labs64(long long x) nogil:
    return -x if x < 0 else x


cdef int axpy(long long *x, Py_ssize_t xs, long long *y, Py_ssize_t ys,
              long long q, Py_ssize_t count) nogil:
    # x[k] -= q * y[k] with strides
    cdef Py_ssize_t k
    cdef long long prod, res
    for k in range(count):
        if y[k * ys] == 0:
            continue
        if sk_mul(q, y[k * ys], &prod):
            return -1
        if sk_sub(x[k * xs], prod, &res):
            return -1
        x[k * xs] = res
    return 0


cdef int addrow(long long *x, long long *y, Py_ssize_t count) nogil:
    cdef Py_ssize_t k
    cdef long long res
    for k in range(count):
        if sk_add(x[k], y[k], &res):
            return -1
        x[k] = res
    return 0


cdef void swap_rows(long long *a, Py_ssize_t cols, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t k
    cdef long long tmp
    for k in range(cols):
        tmp = a[i * cols + k]
        a[i * cols + k] = a[j * cols + k]
        a[j * cols + k] = tmp


cdef void swap_cols(long long *a, Py_ssize_t rows, Py_ssize_t cols,
                    Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t k
    cdef long long tmp
    for k in range(rows):
        tmp = a[k * cols + i]
        a[k * cols + i] = a[k * cols + j]
        a[k * cols + j] = tmp


cdef inline long long pyfloordiv(long long a, long long b) nogil:
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline long long pymod(long long a, long long b) nogil:
    cdef long long r = a % b
    if r != 0 and ((r < 0) != (b < 0)):
        r += b
    return r


cdef int run(long long *s, long long *u, long long *v,
             Py_ssize_t m, Py_ssize_t n, bint tr) nogil:
    cdef Py_ssize_t t = 0, i, j, bi, bj, k, bad
    cdef long long best, ax, p, x, q
    cdef bint dirty
    cdef Py_ssize_t lim = m if m < n else n
    while t < lim:
        best = 0
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, n):
                x = s[i * n + j]
                if x != 0:
                    ax = labs64(x)
                    if bi < 0 or ax < best:
                        best, bi, bj = ax, i, j
        if bi < 0:
            break
        if bi != t:
            swap_rows(s, n, t, bi)
            if tr:
                swap_rows(u, m, t, bi)
        if bj != t:
            swap_cols(s, m, n, t, bj)
            if tr:
                swap_cols(v, n, n, t, bj)
        while True:
            p = s[t * n + t]
            dirty = False
            for i in range(t + 1, m):
                x = s[i * n + t]
                if x != 0:
                    q = pyfloordiv(x, p)
                    if axpy(s + i * n + t, 1, s + t * n + t, 1, q, n - t) < 0:
                        return -1
                    if tr and axpy(u + i * m, 1, u + t * m, 1, q, m) < 0:
                        return -1
                    if s[i * n + t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                x = s[t * n + j]
                if x != 0:
                    q = pyfloordiv(x, p)
                    if axpy(s + t * n + j, n, s + t * n + t, n, q, m - t) < 0:
                        return -1
                    if tr and axpy(v + j, n, v + t, n, q, n) < 0:
                        return -1
                    if s[t * n + j] != 0:
                        dirty = True
            if dirty:
                best = 0
                bi = -1
                bj = -1
                for i in range(t, m):
                    for j in range(t, n):
                        x = s[i * n + j]
                        if x != 0:
                            ax = labs64(x)
                            if bi < 0 or ax < best:
                                best, bi, bj = ax, i, j
                if bi != t:
                    swap_rows(s, n, t, bi)
                    if tr:
                        swap_rows(u, m, t, bi)
                if bj != t:
                    swap_cols(s, m, n, t, bj)
                    if tr:
                        swap_cols(v, n, n, t, bj)
                continue
            bad = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if pymod(s[i * n + j], p) != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            if addrow(s + t * n + t, s + bad * n + t, n - t) < 0:
                return -1
            if tr and addrow(u + t * m, u + bad * m, m) < 0:
                return -1
        if s[t * n + t] < 0:
            for k in range(n):
                s[t * n + k] = -s[t * n + k]
            if tr:
                for k in range(m):
                    u[t * m + k] = -u[t * m + k]
        t += 1
    return 0


def snf_lists(a, Py_ssize_t m, Py_ssize_t n, bint transforms=True):
    """Return (S, U, V) as lists; raises OverflowError outside int64."""
    cdef long long *s = <long long *> malloc(max(m * n, 1) * sizeof(long long))
    cdef long long *u = NULL
    cdef long long *v = NULL
    cdef Py_ssize_t i, j
    cdef int rc
    if s == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            row = a[i]
            for j in range(n):
                s[i * n + j] = row[j]
                if s[i * n + j] == -9223372036854775807 - 1:
                    raise OverflowError("entry outside kernel range")
        if transforms:
            u = <long long *> malloc(max(m * m, 1) * sizeof(long long))
            v = <long long *> malloc(max(n * n, 1) * sizeof(long long))
            if u == NULL or v == NULL:
                raise MemoryError()
            for i in range(m):
                for j in range(m):
                    u[i * m + j] = 1 if i == j else 0
            for i in range(n):
                for j in range(n):
                    v[i * n + j] = 1 if i == j else 0
        with nogil:
            rc = run(s, u, v, m, n, transforms)
        if rc < 0:
            raise OverflowError("int64 overflow during elimination")
        S = [[s[i * n + j] for j in range(n)] for i in range(m)]
        U = V = None
        if transforms:
            U = [[u[i * m + j] for j in range(m)] for i in range(m)]
            V = [[v[i * n + j] for j in range(n)] for i in range(n)]
        return S, U, V
    finally:
        free(s)
        if u != NULL:
            free(u)
        if v != NULL:
            free(v)
