# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled Smith reduction kernel (64-bit with overflow guards).

Mirrors ``_pure.snf_core`` exactly: same elementary operations, same pivot
rule, bit-identical output.  Every multiply/accumulate is guarded; if an
intermediate value could leave the safe range the kernel raises
OverflowError and the dispatcher reruns the pure big-int twin.
"""

from cpython cimport array
import array

cdef long long SAFE = (<long long> 1) << 61


cdef inline long long _llabs(long long a):
    return -a if a < 0 else a


cdef inline long long mul_guard(long long a, long long b) except? -1:
    if a != 0 and _llabs(b) > SAFE // _llabs(a):
        raise OverflowError
    return a * b


cdef inline long long store_guard(long long v) except? -1:
    if _llabs(v) > SAFE:
        raise OverflowError
    return v


cdef void _xgcd(long long a, long long b, long long* out) noexcept:
    cdef long long x = 1, nx = 0, y = 0, ny = 1, g = a, ng = b, q, t
    while ng != 0:
        q = g // ng
        t = x - q * nx; x = nx; nx = t
        t = y - q * ny; y = ny; ny = t
        t = g - q * ng; g = ng; ng = t
    if g < 0:
        x = -x; y = -y; g = -g
    out[0] = x; out[1] = y; out[2] = g


def snf_core(object Mrows, object Vrows, object Brows):
    """In-place analogue of ``_pure.snf_core`` on list-of-list inputs.

    Values must already fit in 64 bits; intermediates are guarded.
    """
    cdef Py_ssize_t m = len(Mrows)
    cdef Py_ssize_t n = len(Mrows[0]) if m else 0
    cdef bint has_v = Vrows is not None
    cdef bint has_b = Brows is not None
    cdef Py_ssize_t nb = 0
    if has_b and m:
        nb = len(Brows[0])
    cdef Py_ssize_t vn = n if has_v else 0

    cdef array.array Ma = array.array('q', [0]) * 0
    # flatten
    cdef list flat = []
    cdef Py_ssize_t i, j
    for i in range(m):
        flat.extend(Mrows[i])
    Ma = array.array('q', flat)
    cdef long long[::1] M = Ma

    cdef array.array Va = None
    cdef long long[::1] V = None
    if has_v:
        flat = []
        for i in range(n):
            flat.extend(Vrows[i])
        Va = array.array('q', flat)
        V = Va

    cdef array.array Ba = None
    cdef long long[::1] B = None
    if has_b:
        flat = []
        for i in range(m):
            flat.extend(Brows[i])
        Ba = array.array('q', flat)
        B = Ba

    cdef long long a, b, v, q, x, y, g, t1, t2
    cdef long long xg[3]
    cdef Py_ssize_t k, r, bi, bj, jj, best_i, best_j
    cdef long long best_v
    cdef bint found, row_clear, col_clear, changed

    r = 0
    for k in range(min(m, n)):
        # pivot: smallest nonzero |v|, row-major tie break
        found = False
        best_v = 0
        best_i = 0
        best_j = 0
        for i in range(k, m):
            for j in range(k, n):
                v = M[i * n + j]
                if v != 0:
                    if not found or _llabs(v) < best_v:
                        found = True
                        best_v = _llabs(v)
                        best_i = i
                        best_j = j
                        if best_v == 1:
                            break
            if found and best_v == 1:
                break
        if not found:
            break
        # swap rows k, best_i
        if best_i != k:
            for j in range(n):
                t1 = M[k * n + j]; M[k * n + j] = M[best_i * n + j]; M[best_i * n + j] = t1
            if has_b:
                for j in range(nb):
                    t1 = B[k * nb + j]; B[k * nb + j] = B[best_i * nb + j]; B[best_i * nb + j] = t1
        # swap cols k, best_j
        if best_j != k:
            for i in range(m):
                t1 = M[i * n + k]; M[i * n + k] = M[i * n + best_j]; M[i * n + best_j] = t1
            if has_v:
                for i in range(vn):
                    t1 = V[i * n + k]; V[i * n + k] = V[i * n + best_j]; V[i * n + best_j] = t1
        # clear row and column k
        while True:
            for i in range(k + 1, m):
                b = M[i * n + k]
                if b == 0:
                    continue
                a = M[k * n + k]
                if b % a == 0:
                    q = b // a
                    for j in range(k, n):
                        M[i * n + j] = store_guard(M[i * n + j] - mul_guard(q, M[k * n + j]))
                    if has_b:
                        for j in range(nb):
                            B[i * nb + j] = store_guard(B[i * nb + j] - mul_guard(q, B[k * nb + j]))
                else:
                    _xgcd(a, b, xg)
                    x = xg[0]; y = xg[1]; g = xg[2]
                    for j in range(n):
                        t1 = M[k * n + j]; t2 = M[i * n + j]
                        M[k * n + j] = store_guard(mul_guard(x, t1) + mul_guard(y, t2))
                        M[i * n + j] = store_guard(mul_guard(-(b // g), t1) + mul_guard(a // g, t2))
                    if has_b:
                        for j in range(nb):
                            t1 = B[k * nb + j]; t2 = B[i * nb + j]
                            B[k * nb + j] = store_guard(mul_guard(x, t1) + mul_guard(y, t2))
                            B[i * nb + j] = store_guard(mul_guard(-(b // g), t1) + mul_guard(a // g, t2))
            row_clear = True
            for j in range(k + 1, n):
                if M[k * n + j] != 0:
                    row_clear = False
                    break
            if row_clear:
                break
            for j in range(k + 1, n):
                b = M[k * n + j]
                if b == 0:
                    continue
                a = M[k * n + k]
                if b % a == 0:
                    q = b // a
                    for i in range(m):
                        M[i * n + j] = store_guard(M[i * n + j] - mul_guard(q, M[i * n + k]))
                    if has_v:
                        for i in range(vn):
                            V[i * n + j] = store_guard(V[i * n + j] - mul_guard(q, V[i * n + k]))
                else:
                    _xgcd(a, b, xg)
                    x = xg[0]; y = xg[1]; g = xg[2]
                    for i in range(m):
                        t1 = M[i * n + k]; t2 = M[i * n + j]
                        M[i * n + k] = store_guard(mul_guard(x, t1) + mul_guard(y, t2))
                        M[i * n + j] = store_guard(mul_guard(-(b // g), t1) + mul_guard(a // g, t2))
                    if has_v:
                        for i in range(vn):
                            t1 = V[i * n + k]; t2 = V[i * n + j]
                            V[i * n + k] = store_guard(mul_guard(x, t1) + mul_guard(y, t2))
                            V[i * n + j] = store_guard(mul_guard(-(b // g), t1) + mul_guard(a // g, t2))
            col_clear = True
            for i in range(k + 1, m):
                if M[i * n + k] != 0:
                    col_clear = False
                    break
            if col_clear:
                break
        r += 1

    for k in range(r):
        if M[k * n + k] < 0:
            for i in range(m):
                M[i * n + k] = -M[i * n + k]
            if has_v:
                for i in range(vn):
                    V[i * n + k] = -V[i * n + k]

    changed = True
    while changed:
        changed = False
        for k in range(r - 1):
            a = M[k * n + k]; b = M[(k + 1) * n + (k + 1)]
            if b % a == 0:
                continue
            changed = True
            for j in range(n):
                M[k * n + j] = store_guard(M[k * n + j] + M[(k + 1) * n + j])
            if has_b:
                for j in range(nb):
                    B[k * nb + j] = store_guard(B[k * nb + j] + B[(k + 1) * nb + j])
            _xgcd(a, b, xg)
            x = xg[0]; y = xg[1]; g = xg[2]
            for i in range(m):
                t1 = M[i * n + k]; t2 = M[i * n + k + 1]
                M[i * n + k] = store_guard(mul_guard(x, t1) + mul_guard(y, t2))
                M[i * n + k + 1] = store_guard(mul_guard(-(b // g), t1) + mul_guard(a // g, t2))
            if has_v:
                for i in range(vn):
                    t1 = V[i * n + k]; t2 = V[i * n + k + 1]
                    V[i * n + k] = store_guard(mul_guard(x, t1) + mul_guard(y, t2))
                    V[i * n + k + 1] = store_guard(mul_guard(-(b // g), t1) + mul_guard(a // g, t2))
            q = M[(k + 1) * n + k] // M[k * n + k]
            for j in range(n):
                M[(k + 1) * n + j] = store_guard(M[(k + 1) * n + j] - mul_guard(q, M[k * n + j]))
            if has_b:
                for j in range(nb):
                    B[(k + 1) * nb + j] = store_guard(B[(k + 1) * nb + j] - mul_guard(q, B[k * nb + j]))
            for jj in range(2):
                bi = k + jj
                if M[bi * n + bi] < 0:
                    for i in range(m):
                        M[i * n + bi] = -M[i * n + bi]
                    if has_v:
                        for i in range(vn):
                            V[i * n + bi] = -V[i * n + bi]

    # write back
    for i in range(m):
        row = Mrows[i]
        for j in range(n):
            row[j] = M[i * n + j]
    if has_v:
        for i in range(n):
            row = Vrows[i]
            for j in range(n):
                row[j] = V[i * n + j]
    if has_b:
        for i in range(m):
            row = Brows[i]
            for j in range(nb):
                row[j] = B[i * nb + j]
    return [M[i * n + i] for i in range(min(m, n))]
