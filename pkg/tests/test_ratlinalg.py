import random
from fractions import Fraction as F

import pytest

from flexcert import ratlinalg
from flexcert.ratlinalg import (
    DimensionError,
    Matrix,
    determinant,
    image_contains,
    kernel_basis,
    matrix_from_columns,
    rank,
    solve_general,
    solve_in_span,
    vector,
    zero_vector,
)

C_LINE = Matrix.from_rows([[10, 10, -14], [3, 1, -3], [1, -3, 1]])
C_VIVIANI = Matrix.from_rows([[4, 0, 0], [2, 0, 0]])
C_TANGENT = Matrix.from_rows([[4, 0, 0], [-2, 0, 0], [0, 1, 0]])


def mul(m, x):
    return m.mul_vec(vector(x))


def test_solve_general_singular_homogeneous():
    particular, nullspace = solve_general(C_LINE, zero_vector(3))
    assert particular == vector([0, 0, 0])
    assert nullspace == [vector([4, 3, 5])]


def test_solve_general_identity():
    eye = Matrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    particular, nullspace = solve_general(eye, vector([1, 2, 3]))
    assert particular == vector([1, 2, 3])
    assert nullspace == []


def test_solve_general_rank_deficient():
    m = Matrix.from_rows([[2, 4], [1, 2]])
    particular, nullspace = solve_general(m, vector([2, 1]))
    assert particular == vector([1, 0])
    assert nullspace == [vector([-2, 1])]
    assert mul(m, particular) == vector([2, 1])


def test_solve_general_no_solution():
    m = Matrix.from_rows([[1, 0], [1, 0]])
    assert solve_general(m, vector([1, 2])) is None


def test_solve_general_dimension_mismatch():
    with pytest.raises(DimensionError):
        solve_general(C_LINE, vector([1, 2]))


def test_kernel_basis_reference_matrices():
    assert kernel_basis(C_TANGENT) == [vector([0, 0, 1])]
    eye = Matrix.from_rows([[1, 0], [0, 1]])
    assert kernel_basis(eye) == []
    basis = kernel_basis(C_VIVIANI)
    assert basis == [vector([0, 1, 0]), vector([0, 0, 1])]
    for vec in basis:
        assert mul(C_VIVIANI, vec) == zero_vector(2)


def test_image_membership():
    assert not image_contains(C_TANGENT, vector([1, 0, 0]))
    assert image_contains(C_TANGENT, zero_vector(3))
    assert image_contains(C_VIVIANI, vector([2, 1]))
    # direct witness for the membership above
    assert mul(C_VIVIANI, [F(1, 2), 0, 0]) == vector([2, 1])


def test_solve_in_span_reference_cases():
    assert solve_in_span(C_LINE, zero_vector(3), [vector([4, 3, 5])]) == vector([0, 0, 0])
    eye = Matrix.from_rows([[1, 0], [0, 1]])
    assert solve_in_span(eye, vector([1, 1]), [vector([1, 0])]) is None
    m = Matrix.from_rows([[1, 0], [0, 0]])
    got = solve_in_span(m, vector([1, 0]), [vector([1, 1])])
    assert got == vector([1, 1])
    assert mul(m, got) == vector([1, 0])


def test_solve_in_span_handles_dependent_and_zero_span_vectors():
    m = Matrix.from_rows([[1, 0], [0, 1]])
    got = solve_in_span(m, vector([2, 2]), [vector([0, 0]), vector([1, 1]), vector([2, 2])])
    assert got is not None and mul(m, got) == vector([2, 2])
    # empty span solves only the zero right-hand side
    assert solve_in_span(m, zero_vector(2), []) == zero_vector(2)
    assert solve_in_span(m, vector([1, 0]), []) is None


def test_determinant():
    assert determinant(C_LINE) == 0
    assert determinant(Matrix.from_rows([[2, 1], [1, 1]])) == 1
    assert determinant(Matrix.from_rows([[F(1, 2), 0], [7, F(2, 3)]])) == F(1, 3)
    with pytest.raises(DimensionError):
        determinant(C_VIVIANI)


def _random_matrix(rng, rows, cols):
    return Matrix.from_rows(
        [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]
    )


def test_solve_residual_is_exactly_zero_randomized():
    rng = random.Random(20240311)
    for _ in range(60):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        m = _random_matrix(rng, rows, cols)
        v = vector([F(rng.randint(-3, 3)) for _ in range(rows)])
        got = solve_general(m, v)
        assert image_contains(m, v) == (got is not None)
        if got is not None:
            particular, nullspace = got
            assert mul(m, particular) == v
            assert len(nullspace) == cols - rank(m)
            for k in nullspace:
                assert mul(m, k) == zero_vector(rows)


def test_solve_in_span_agrees_with_grid_bruteforce():
    rng = random.Random(977)
    grid = [F(n, d) for d in (1, 2) for n in range(-4, 5)]
    for _ in range(25):
        rows, cols = rng.randint(1, 3), rng.randint(2, 3)
        m = _random_matrix(rng, rows, cols)
        span = [vector([F(rng.randint(-2, 2)) for _ in range(cols)]) for _ in range(2)]
        v = vector([F(rng.randint(-2, 2)) for _ in range(rows)])
        got = solve_in_span(m, v, span)
        if got is not None:
            assert mul(m, got) == v
            # returned vector really is a combination of the span
            cols_m = matrix_from_columns(list(span), rows=cols)
            assert solve_general(cols_m, got) is not None
        else:
            for c1 in grid:
                for c2 in grid:
                    combo = tuple(c1 * a + c2 * b for a, b in zip(span[0], span[1]))
                    assert mul(m, combo) != v


def test_verdicts_invariant_under_row_permutation():
    rng = random.Random(551)
    for _ in range(40):
        rows, cols = rng.randint(2, 4), rng.randint(1, 4)
        m = _random_matrix(rng, rows, cols)
        v = vector([F(rng.randint(-2, 2)) for _ in range(rows)])
        order = list(range(rows))
        rng.shuffle(order)
        pm = m.with_rows_permuted(order)
        pv = tuple(v[i] for i in order)
        assert rank(m) == rank(pm)
        assert len(kernel_basis(m)) == len(kernel_basis(pm))
        assert image_contains(m, v) == image_contains(pm, pv)


def test_scalar_serialization_round_trip():
    for text in ["5", "-3", "3/4", "-7/2", "0"]:
        val = ratlinalg.scalar(text)
        assert ratlinalg.scalar(ratlinalg.format_scalar(val)) == val
    assert ratlinalg.format_scalar(F(6, 4)) == "3/2"
