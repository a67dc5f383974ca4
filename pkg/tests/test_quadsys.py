import random
from fractions import Fraction as F

import pytest

from flexcert import quadsys
from flexcert.quadsys import (
    BasePointError,
    bilinear,
    evaluate,
    evaluate_poly,
    lift_base_point,
    linearize,
    poly_system,
    reduce_degree,
    restrict_solution,
    validate_and_symmetrize,
)
from flexcert.ratlinalg import DimensionError, vec_add, vec_sub, vector, zero_vector


def test_symmetrize_upper_triangle():
    sys_ = validate_and_symmetrize([[[0, 2], [0, 0]]], [[0, 0]], [0])
    assert sys_.alpha[0].entries == ((F(0), F(1)), (F(1), F(0)))


def test_symmetrize_keeps_quadratic_values():
    raw = [[1, 3], [1, 1]]
    sys_ = validate_and_symmetrize([raw], [[0, 0]], [0])
    assert sys_.alpha[0].entries == ((F(1), F(2)), (F(2), F(1)))
    rng = random.Random(7)
    for _ in range(10):
        x = vector([F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(2)])
        direct = sum(raw[i][j] * x[i] * x[j] for i in range(2) for j in range(2))
        assert evaluate(sys_, x)[0] == direct
    assert evaluate(sys_, vector([1, 1]))[0] == 6


def test_symmetric_input_accepted_unchanged(hyperboloid_line):
    sys_, _ = hyperboloid_line
    diag = tuple(sys_.alpha[0].entries[i][i] for i in range(3))
    assert diag == (F(1), F(1), F(-1))
    assert sys_.beta[0] == zero_vector(3)
    assert sys_.gamma[0] == F(-1)


def test_dimension_validation():
    with pytest.raises(DimensionError):
        validate_and_symmetrize([[[1, 0], [0, 1]]], [[1, 2, 3]], [0])
    sys_ = validate_and_symmetrize([[[1, 0], [0, 1]]], [[0, 0]], [-1])
    with pytest.raises(DimensionError):
        evaluate(sys_, vector([1, 2, 3]))


def test_evaluate_reference_points(hyperboloid_line):
    sys_, base = hyperboloid_line
    assert evaluate(sys_, base) == zero_vector(3)
    assert evaluate(sys_, vector([9, 8, 12])) == zero_vector(3)
    zero_sys = validate_and_symmetrize([[[0, 0], [0, 0]]], [[0, 0]], [0])
    assert evaluate(zero_sys, vector([5, -7])) == zero_vector(1)


def test_bilinear_reference_values(hyperboloid_line, cusp_system, tangent_sphere_cylinder):
    sys1, _ = hyperboloid_line
    assert bilinear(sys1, vector([4, 3, 5]), vector([4, 3, 5])) == zero_vector(3)
    sys2, _ = cusp_system
    assert bilinear(sys2, vector([1, 0, 0]), vector([1, 0, 0])) == vector([0, 1])
    sys4, _ = tangent_sphere_cylinder
    assert bilinear(sys4, vector([0, 0, 1]), vector([0, 0, 1])) == vector([1, 0, 0])


def test_bilinear_is_bilinear_and_symmetric(viviani_system):
    sys_, _ = viviani_system
    rng = random.Random(42)
    for _ in range(20):
        a = F(rng.randint(-3, 3), rng.randint(1, 3))
        x, xp, y = (
            vector([F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(3)])
            for _ in range(3)
        )
        ax_plus = tuple(a * u + v for u, v in zip(x, xp))
        left = bilinear(sys_, ax_plus, y)
        right = vec_add(
            tuple(a * t for t in bilinear(sys_, x, y)), bilinear(sys_, xp, y)
        )
        assert left == right
        assert bilinear(sys_, x, y) == bilinear(sys_, y, x)


def test_linearize_reference_matrices(hyperboloid_line, viviani_system, tangent_sphere_cylinder):
    sys1, base1 = hyperboloid_line
    ops1 = linearize(sys1, base1)
    assert [list(r) for r in ops1.c_matrix.entries] == [
        [10, 10, -14], [3, 1, -3], [1, -3, 1]]
    sys3, base3 = viviani_system
    assert [list(r) for r in linearize(sys3, base3).c_matrix.entries] == [
        [4, 0, 0], [2, 0, 0]]
    sys4, base4 = tangent_sphere_cylinder
    assert [list(r) for r in linearize(sys4, base4).c_matrix.entries] == [
        [4, 0, 0], [-2, 0, 0], [0, 1, 0]]


def test_linearize_rejects_non_solution(hyperboloid_line):
    sys_, _ = hyperboloid_line
    with pytest.raises(BasePointError) as err:
        linearize(sys_, vector([5, 5, 8]))
    assert err.value.residual == vector([-15, -3, 1])


def test_degree_two_taylor_identity(hyperboloid_line, viviani_system, tangent_sphere_cylinder):
    # F(X0 + Z) - F(X0) = C Z + B(Z, Z), exactly
    rng = random.Random(99)
    for sys_, base in (hyperboloid_line, viviani_system, tangent_sphere_cylinder):
        ops = linearize(sys_, base)
        for _ in range(10):
            z = vector([F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(sys_.m)])
            lhs = vec_sub(evaluate(sys_, vec_add(base, z)), evaluate(sys_, base))
            rhs = vec_add(ops.c_matrix.mul_vec(z), bilinear(sys_, z, z))
            assert lhs == rhs


def _poly_terms(sys_):
    """Expand a quadratic system back into exponent-map equations."""
    eqs = []
    for k in range(sys_.n):
        terms = {}
        m = sys_.m
        for i in range(m):
            for j in range(m):
                c = sys_.alpha[k].entries[i][j]
                if c != 0:
                    exps = tuple(
                        (2 if (t == i and i == j) else (1 if t in (i, j) else 0))
                        for t in range(m)
                    )
                    terms[exps] = terms.get(exps, F(0)) + c
        for i, c in enumerate(sys_.beta[k]):
            if c != 0:
                exps = tuple(1 if t == i else 0 for t in range(m))
                terms[exps] = terms.get(exps, F(0)) + c
        if sys_.gamma[k] != 0:
            terms[(0,) * m] = sys_.gamma[k]
        eqs.append({e: c for e, c in terms.items() if c != 0})
    return eqs


def test_reduce_degree_cubic_curve():
    poly = poly_system([{(3, 0): 1, (0, 2): -1}], 2)
    red, rmap = reduce_degree(poly)
    assert red.m == 3 and red.n == 2
    assert rmap.auxiliary_definitions == ((2, (2, 0)),)
    assert _poly_terms(red) == [
        {(1, 0, 1): F(1), (0, 2, 0): F(-1)},
        {(2, 0, 0): F(1), (0, 0, 1): F(-1)},
    ]


def test_reduce_degree_mixed_cubic_monomial():
    poly = poly_system([{(2, 1): 1, (0, 0): -1}], 2)
    red, rmap = reduce_degree(poly)
    assert rmap.auxiliary_definitions == ((2, (2, 0)),)
    assert _poly_terms(red) == [
        {(0, 1, 1): F(1), (0, 0, 0): F(-1)},
        {(2, 0, 0): F(1), (0, 0, 1): F(-1)},
    ]


def test_reduce_degree_already_quadratic_is_unchanged():
    poly = poly_system([{(2, 0): 1, (0, 1): F(-1)}], 2)
    red, rmap = reduce_degree(poly)
    assert rmap.is_empty()
    assert red.m == 2
    assert _poly_terms(red) == [{(2, 0): F(1), (0, 1): F(-1)}]


def test_reduce_degree_reuses_auxiliary_and_terminates_on_high_degree():
    # x1^4 and x1^2 x2^2 share the sub-monomial x1^2
    poly = poly_system([{(4, 0): 1, (2, 2): 1, (0, 0): -1}], 2)
    red, rmap = reduce_degree(poly)
    assert all(
        sum(e) <= 2 for eq in _poly_terms(red) for e in eq
    )
    names = [v for v, _ in rmap.auxiliary_definitions]
    assert len(names) == len(set(names))
    # x1^2 introduced once only
    assert sum(1 for _, exps in rmap.auxiliary_definitions if exps == (2, 0)) == 1


def test_reduction_round_trip_on_sampled_points():
    rng = random.Random(1234)
    polys = [
        poly_system([{(3, 0): 1, (0, 2): -1}], 2),
        poly_system([{(2, 1): 1, (0, 0): -1}], 2),
        poly_system([{(4, 0): 1, (2, 2): 1, (1, 0): F(1, 2)}], 2),
    ]
    for poly in polys:
        red, rmap = reduce_degree(poly)
        for _ in range(20):
            x = vector([F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(poly.m)])
            lifted = lift_base_point(rmap, x)
            red_vals = evaluate(red, lifted)
            orig_vals = evaluate_poly(poly, x)
            # original equations keep their values; defining equations vanish
            assert red_vals[: len(orig_vals)] == orig_vals
            assert all(v == 0 for v in red_vals[len(orig_vals):])
            assert restrict_solution(rmap, lifted) == x


def test_reduction_preserves_exact_solutions():
    poly = poly_system([{(3, 0): 1, (0, 2): -1}], 2)
    red, rmap = reduce_degree(poly)
    for t in [F(0), F(1), F(-2), F(1, 2), F(3, 5)]:
        sol = (t * t, t * t * t)
        assert evaluate_poly(poly, sol) == (F(0),)
        assert evaluate(red, lift_base_point(rmap, sol)) == zero_vector(2)


def test_lift_base_point_examples():
    rmap = quadsys.ReductionMap(2, ((2, (2, 0)),))
    assert lift_base_point(rmap, vector([0, 0])) == vector([0, 0, 0])
    assert lift_base_point(rmap, vector([3, 1])) == vector([3, 1, 9])
    empty = quadsys.ReductionMap(2, ())
    assert lift_base_point(empty, vector([3, 1])) == vector([3, 1])
