"""Pure-Python predicate kernels.

Every function takes ``t``, a mask-indexed integer table with ``t[0] == 0``,
and the player count ``n``.  Players are bit masks here.  The Cython module
``_ckernels`` exposes the same functions over int64 tables; this module is
the fallback and handles tables of any magnitude.

``rel`` selects the comparison ``lhs REL rhs``: 0 ``<=``, 1 ``<``, 2 ``>=``,
3 ``>``, 4 ``==``.
"""

LE, LT, GE, GT, EQ = 0, 1, 2, 3, 4


def _holds(a, b, rel):
    if rel == LE:
        return a <= b
    if rel == LT:
        return a < b
    if rel == GE:
        return a >= b
    if rel == GT:
        return a > b
    return a == b


def check_convex(t, n, rel, strict):
    """v(S) + v(T) REL v(S|T) + v(S&T) over all pairs (incomparable pairs if strict)."""
    size = 1 << n
    for S in range(size):
        for T in range(S, size):
            inter = S & T
            if strict and (inter == S or inter == T):
                continue
            if not _holds(t[S] + t[T], t[S | T] + t[inter], rel):
                return False
    return True


def check_disjoint(t, n, rel, strict):
    """v(S) + v(T) REL v(S|T) over disjoint pairs (both nonempty if strict)."""
    N = (1 << n) - 1
    for S in range(1 << n):
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


def check_weak(t, n, rel, strict):
    """v(S) + v({i}) REL v(S|{i}) for i outside S (S nonempty if strict)."""
    for S in range(1 << n):
        if strict and S == 0:
            continue
        for b in range(n):
            bit = 1 << b
            if S & bit:
                continue
            if not _holds(t[S] + t[bit], t[S | bit], rel):
                return False
    return True


def check_monotone(t, n, strict):
    """v(S) <= v(T) for S subset of T (strict: v(S) < v(T) for proper subsets)."""
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


def check_marginal_order(t, n, rel):
    """For every i and Z proper subset of T within N minus i: v'_i(Z) REL v'_i(T)."""
    N = (1 << n) - 1
    for b in range(n):
        bit = 1 << b
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


def players_equivalent(t, n, bi, bj):
    """v'_i(S) == v'_j(S) for every S avoiding both players."""
    if bi == bj:
        return True
    both = bi | bj
    for S in range(1 << n):
        if not S & both and t[S | bi] != t[S | bj]:
            return False
    return True


def swap_check(t, n, S):
    """v(T) == v(Z) whenever T - S == Z - S and |T| == |Z| (pairwise, literal)."""
    size = 1 << n
    out = ~S
    for T in range(size):
        cT = bin(T).count("1")
        for Z in range(T + 1, size):
            if (T & out) == (Z & out) and bin(Z).count("1") == cT and t[T] != t[Z]:
                return False
    return True


def corollary2_check(t, n, S, kbit):
    """v'_k(T) == v'_k(Z) whenever T, Z avoid k, T - S == Z - S and |T| == |Z|."""
    size = 1 << n
    out = ~S
    for T in range(size):
        if T & kbit:
            continue
        cT = bin(T).count("1")
        mT = t[T | kbit] - t[T]
        for Z in range(T + 1, size):
            if Z & kbit:
                continue
            if (T & out) == (Z & out) and bin(Z).count("1") == cT:
                if t[Z | kbit] - t[Z] != mT:
                    return False
    return True
