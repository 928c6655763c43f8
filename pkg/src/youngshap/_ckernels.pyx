# cython: language_level=3, boundscheck=False, wraparound=False
"""int64 predicate kernels; same signatures and semantics as ``_pykernels``.

Callers guarantee every entry satisfies |t[S]| < 2**61 so that the sums of
two entries below cannot overflow.
"""

ctypedef long long i64
ctypedef Py_ssize_t mask_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline bint _holds(i64 a, i64 b, int rel) noexcept nogil:
    if rel == 0:
        return a <= b
    if rel == 1:
        return a < b
    if rel == 2:
        return a >= b
    if rel == 3:
        return a > b
    return a == b


cdef bint _convex(const i64[:] t, int n, int rel, bint strict) noexcept nogil:
    cdef mask_t size = 1 << n
    cdef mask_t S, T, inter
    for S in range(size):
        for T in range(S, size):
            inter = S & T
            if strict and (inter == S or inter == T):
                continue
            if not _holds(t[S] + t[T], t[S | T] + t[inter], rel):
                return False
    return True


cdef bint _disjoint(const i64[:] t, int n, int rel, bint strict) noexcept nogil:
    cdef mask_t N = (1 << n) - 1
    cdef mask_t S, T, rest
    for S in range(N + 1):
        if strict and S == 0:
            continue
        rest = N ^ S
        T = rest
        while True:
            if T >= S and not (strict and T == 0):
                if not _holds(t[S] + t[T], t[S | T], rel):
                    return False
            if T == 0:
                break
            T = (T - 1) & rest
    return True


cdef bint _weak(const i64[:] t, int n, int rel, bint strict) noexcept nogil:
    cdef mask_t S, bit
    cdef int b
    for S in range(1 << n):
        if strict and S == 0:
            continue
        for b in range(n):
            bit = (<mask_t>1) << b
            if S & bit:
                continue
            if not _holds(t[S] + t[bit], t[S | bit], rel):
                return False
    return True


cdef bint _monotone(const i64[:] t, int n, bint strict) noexcept nogil:
    cdef mask_t S, T
    for T in range(1 << n):
        S = T
        while True:
            if S != T or not strict:
                if t[S] > t[T] or (strict and t[S] == t[T]):
                    return False
            if S == 0:
                break
            S = (S - 1) & T
    return True


cdef bint _marginal_order(const i64[:] t, int n, int rel) noexcept nogil:
    cdef mask_t N = (1 << n) - 1
    cdef mask_t bit, rest, T, Z
    cdef i64 mT
    cdef int b
    for b in range(n):
        bit = (<mask_t>1) << b
        rest = N ^ bit
        T = rest
        while True:
            mT = t[T | bit] - t[T]
            Z = (T - 1) & T
            while T:
                if not _holds(t[Z | bit] - t[Z], mT, rel):
                    return False
                if Z == 0:
                    break
                Z = (Z - 1) & T
            if T == 0:
                break
            T = (T - 1) & rest
    return True


cdef bint _equivalent(const i64[:] t, int n, mask_t bi, mask_t bj) noexcept nogil:
    cdef mask_t S, both = bi | bj
    if bi == bj:
        return True
    for S in range(1 << n):
        if not (S & both) and t[S | bi] != t[S | bj]:
            return False
    return True


cdef bint _swap(const i64[:] t, int n, mask_t S) noexcept nogil:
    cdef mask_t size = 1 << n
    cdef mask_t out = ~S
    cdef mask_t T, Z
    cdef int cT
    for T in range(size):
        cT = __builtin_popcountll(T)
        for Z in range(T + 1, size):
            if (T & out) == (Z & out) and __builtin_popcountll(Z) == cT and t[T] != t[Z]:
                return False
    return True


cdef bint _corollary2(const i64[:] t, int n, mask_t S, mask_t kbit) noexcept nogil:
    cdef mask_t size = 1 << n
    cdef mask_t out = ~S
    cdef mask_t T, Z
    cdef int cT
    cdef i64 mT
    for T in range(size):
        if T & kbit:
            continue
        cT = __builtin_popcountll(T)
        mT = t[T | kbit] - t[T]
        for Z in range(T + 1, size):
            if Z & kbit:
                continue
            if (T & out) == (Z & out) and __builtin_popcountll(Z) == cT:
                if t[Z | kbit] - t[Z] != mT:
                    return False
    return True


def check_convex(const i64[:] t, int n, int rel, bint strict):
    return _convex(t, n, rel, strict)


def check_disjoint(const i64[:] t, int n, int rel, bint strict):
    return _disjoint(t, n, rel, strict)


def check_weak(const i64[:] t, int n, int rel, bint strict):
    return _weak(t, n, rel, strict)


def check_monotone(const i64[:] t, int n, bint strict):
    return _monotone(t, n, strict)


def check_marginal_order(const i64[:] t, int n, int rel):
    return _marginal_order(t, n, rel)


def players_equivalent(const i64[:] t, int n, mask_t bi, mask_t bj):
    return _equivalent(t, n, bi, bj)


def swap_check(const i64[:] t, int n, mask_t S):
    return _swap(t, n, S)


def corollary2_check(const i64[:] t, int n, mask_t S, mask_t kbit):
    return _corollary2(t, n, S, kbit)
