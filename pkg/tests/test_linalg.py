import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from b2verma import linalg
from b2verma.cyclotomic import CyclotomicField

F = CyclotomicField.of(5)

entries = st.integers(-3, 3)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def lift(rows):
    return [[F(x) for x in row] for row in rows]


cyc_entries = st.tuples(st.integers(-2, 2), st.integers(0, 4)).map(lambda t: F(t[0]) * F.xi_pow(t[1]))


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    assert linalg.rank(lift(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_nullspace_dimension_and_kernel(rows):
    n = len(rows[0])
    basis = linalg.nullspace(lift(rows), n, F)
    assert len(basis) == n - sympy.Matrix(rows).rank()
    for vec in basis:
        assert all(not x for x in linalg.matvec(lift(rows), vec, F))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(cyc_entries, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_over_cyclotomic_entries(rows):
    n = len(rows)
    if linalg.rank(rows) < n:
        return
    inv = linalg.inverse(rows, F)
    prod = linalg.matmul(rows, inv, F)
    assert all(prod[i][j] == (F.one if i == j else F.zero) for i in range(n) for j in range(n))


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(entries, min_size=5, max_size=5))
def test_solve_consistent_or_none(rows, rhs):
    rhs = rhs[: len(rows)]
    z = linalg.solve(lift(rows), [F(b) for b in rhs], F)
    aug_rank = sympy.Matrix([list(r) + [b] for r, b in zip(rows, rhs)]).rank()
    if aug_rank > sympy.Matrix(rows).rank():
        assert z is None
    else:
        assert linalg.matvec(lift(rows), z, F) == [F(b) for b in rhs]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(cyc_entries, min_size=4, max_size=4), min_size=1, max_size=6))
def test_echelon_space_tracks_span(vectors):
    space = linalg.EchelonSpace(4, F)
    grown = [space.add(v) for v in vectors]
    assert len(space) == linalg.rank(vectors) == sum(grown)
    assert all(space.contains(v) for v in vectors)
    combo = [F.zero] * 4
    for k, v in enumerate(vectors):
        combo = [c + F.xi_pow(k) * x for c, x in zip(combo, v)]
    assert space.contains(combo)


def test_transpose_and_zero():
    a = lift([[1, 2, 3], [4, 5, 6]])
    assert linalg.transpose(a) == lift([[1, 4], [2, 5], [3, 6]])
    assert linalg.is_zero_matrix(lift([[0, 0]]))
    assert not linalg.is_zero_matrix(a)
