from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from youngshap.linalg import solve_exact

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def systems(draw):
    m = draw(st.integers(1, 5))
    n = draw(st.integers(1, 4))
    rows = [[draw(small) for _ in range(n)] for _ in range(m)]
    rhs = [draw(small) for _ in range(m)]
    return rows, rhs, n


@given(systems())
def test_agrees_with_sympy(sys_):
    rows, rhs, n = sys_
    A = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    b = sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in rhs])
    rank = A.rank()
    aug = A.row_join(b).rank()
    res = solve_exact(rows, rhs, n)
    assert res.rank == rank
    if aug > rank:
        assert res.status == "infeasible"
    elif rank < n:
        assert res.status == "underdetermined" and res.nullity == n - rank
    else:
        assert res.status == "unique"
        x = sympy.Matrix([sympy.Rational(v.numerator, v.denominator) for v in res.solution])
        assert A * x == b


def test_unique_small():
    res = solve_exact([[1, 1], [1, -1]], [3, 1], 2)
    assert res.status == "unique" and res.solution == (Fraction(2), Fraction(1))


def test_row_count_mismatch():
    with pytest.raises(ValueError):
        solve_exact([[1]], [1, 2], 1)


def test_empty_system_is_underdetermined():
    assert solve_exact([], [], 2).status == "underdetermined"
