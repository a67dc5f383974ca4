"""Systems of algebraic equations of degree at most 2.

A system is stored by its coefficient tensors: per equation k a symmetric
matrix alpha^k (quadratic part), a vector beta^k (linear part) and a
constant gamma^k. Higher-degree polynomial systems are brought into this
form by introducing auxiliary variables for sub-monomials; the module
also builds the linearization C of a system at a base point, which is
the object every rigidity test interrogates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .ratlinalg import (
    DimensionError,
    Matrix,
    Vector,
    is_zero_vector,
    kernel_basis,
    scalar,
    vector,
)


class BasePointError(ValueError):
    """The supplied point does not solve the system exactly."""

    def __init__(self, residual: Vector):
        self.residual = residual
        pretty = "(" + ", ".join(str(x) for x in residual) + ")"
        super().__init__(f"base point is not a solution; residual {pretty}")


@dataclass(frozen=True)
class QuadraticSystem:
    """n equations of degree <= 2 in m variables, with exact coefficients."""

    m: int
    n: int
    alpha: tuple[Matrix, ...]        # one symmetric m x m matrix per equation
    beta: tuple[Vector, ...]         # one length-m vector per equation
    gamma: tuple[Fraction, ...]      # one constant per equation
    variable_names: tuple[str, ...]

    def __post_init__(self):
        if not (len(self.alpha) == len(self.beta) == len(self.gamma) == self.n):
            raise DimensionError("equation count mismatch")
        if len(self.variable_names) != self.m:
            raise DimensionError("variable name count mismatch")
        for a, b in zip(self.alpha, self.beta):
            if a.rows != self.m or a.cols != self.m or len(b) != self.m:
                raise DimensionError("coefficient shape mismatch")
            for i in range(self.m):
                for j in range(i + 1, self.m):
                    if a.entries[i][j] != a.entries[j][i]:
                        raise DimensionError("alpha matrix not symmetric")


def default_names(m: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(m))


def validate_and_symmetrize(
    alpha_raw: Sequence[Sequence[Sequence]],
    beta_raw: Sequence[Sequence],
    gamma_raw: Sequence,
    variable_names: Optional[Sequence[str]] = None,
) -> QuadraticSystem:
    """Build a QuadraticSystem, replacing each alpha by (alpha + alpha^T)/2.

    Symmetrization never changes the quadratic form values, and it makes
    the bilinear map B symmetric, so B(X,Y)+B(Y,X) can be computed as
    2*B(X,Y) throughout.
    """
    n = len(alpha_raw)
    if len(beta_raw) != n or len(gamma_raw) != n:
        raise DimensionError("alpha/beta/gamma counts differ")
    if n == 0:
        raise DimensionError("system needs at least one equation")
    m = len(beta_raw[0])
    alphas = []
    betas = []
    gammas = []
    for a_rows, b, g in zip(alpha_raw, beta_raw, gamma_raw):
        a = [[scalar(x) for x in row] for row in a_rows]
        if len(a) != m or any(len(row) != m for row in a) or len(b) != m:
            raise DimensionError("inconsistent coefficient dimensions")
        half = Fraction(1, 2)
        sym = tuple(
            tuple((a[i][j] + a[j][i]) * half for j in range(m)) for i in range(m)
        )
        alphas.append(Matrix(m, m, sym))
        betas.append(vector(b))
        gammas.append(scalar(g))
    names = tuple(variable_names) if variable_names is not None else default_names(m)
    return QuadraticSystem(m, n, tuple(alphas), tuple(betas), tuple(gammas), names)


def evaluate(sys: QuadraticSystem, x: Vector) -> Vector:
    """F(X): component k is sum alpha_ij x_i x_j + sum beta_i x_i + gamma."""
    if len(x) != sys.m:
        raise DimensionError(f"system has {sys.m} variables, point has {len(x)}")
    out = []
    for k in range(sys.n):
        ax = sys.alpha[k].mul_vec(x)
        quad = sum((ax[i] * x[i] for i in range(sys.m)), Fraction(0))
        lin = sum((sys.beta[k][i] * x[i] for i in range(sys.m)), Fraction(0))
        out.append(quad + lin + sys.gamma[k])
    return tuple(out)


def bilinear(sys: QuadraticSystem, x: Vector, y: Vector) -> Vector:
    """B(X,Y): component k is sum_ij alpha_ij^k x_i y_j (symmetric in X,Y)."""
    if len(x) != sys.m or len(y) != sys.m:
        raise DimensionError("bilinear arguments must have m entries")
    out = []
    for k in range(sys.n):
        ay = sys.alpha[k].mul_vec(y)
        out.append(sum((x[i] * ay[i] for i in range(sys.m)), Fraction(0)))
    return tuple(out)


def linear_part(sys: QuadraticSystem, x: Vector) -> Vector:
    """A(X): component k is sum_i beta_i^k x_i."""
    if len(x) != sys.m:
        raise DimensionError("linear_part argument must have m entries")
    return tuple(
        sum((sys.beta[k][i] * x[i] for i in range(sys.m)), Fraction(0))
        for k in range(sys.n)
    )


@dataclass(frozen=True)
class BaseOperators:
    """The linearization C = B(X0,.) + B(.,X0) + A at an exact solution X0,
    with its kernel basis cached."""

    system: QuadraticSystem
    base_point: Vector
    c_matrix: Matrix
    kernel: tuple[Vector, ...]

    def bilinear(self, x: Vector, y: Vector) -> Vector:
        return bilinear(self.system, x, y)


def linearize(sys: QuadraticSystem, base_point: Vector) -> BaseOperators:
    """Construct the operators at a base point, rejecting non-solutions.

    Column j of C equals B(X0,e_j) + B(e_j,X0) + A(e_j); with symmetric
    alpha this is 2*(alpha^k X0)_j + beta_j^k per equation row k.
    """
    x0 = vector(base_point)
    residual = evaluate(sys, x0)
    if not is_zero_vector(residual):
        raise BasePointError(residual)
    rows = []
    for k in range(sys.n):
        ax0 = sys.alpha[k].mul_vec(x0)
        rows.append(tuple(2 * ax0[j] + sys.beta[k][j] for j in range(sys.m)))
    c = Matrix(sys.n, sys.m, tuple(rows))
    # spot-check the closed-form columns against the operational definition
    probe = (Fraction(1),) * sys.m
    expected = tuple(
        2 * b + a for b, a in zip(bilinear(sys, x0, probe), linear_part(sys, probe))
    )
    assert c.mul_vec(probe) == expected
    return BaseOperators(sys, x0, c, tuple(kernel_basis(c)))


# ---------------------------------------------------------------------------
# General polynomial systems and degree reduction


@dataclass(frozen=True)
class GeneralPolySystem:
    """Multivariate polynomial equations as exponent-vector -> coefficient maps."""

    m: int
    equations: tuple[dict[tuple[int, ...], Fraction], ...]
    variable_names: tuple[str, ...]

    def degree(self) -> int:
        degs = [sum(e) for eq in self.equations for e in eq]
        return max(degs, default=0)


def poly_system(
    equations: Sequence[dict], m: int, variable_names: Optional[Sequence[str]] = None
) -> GeneralPolySystem:
    cleaned = []
    for eq in equations:
        terms: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in eq.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != m or any(e < 0 for e in exps):
                raise DimensionError(f"bad exponent vector {exps}")
            c = scalar(coeff)
            if c != 0:
                terms[exps] = terms.get(exps, Fraction(0)) + c
        cleaned.append({e: c for e, c in terms.items() if c != 0})
    names = tuple(variable_names) if variable_names is not None else default_names(m)
    return GeneralPolySystem(m, tuple(cleaned), names)


def evaluate_poly(poly: GeneralPolySystem, x: Vector) -> Vector:
    if len(x) != poly.m:
        raise DimensionError("point length does not match variable count")
    out = []
    for eq in poly.equations:
        total = Fraction(0)
        for exps, coeff in eq.items():
            term = coeff
            for xi, e in zip(x, exps):
                term *= xi ** e
            total += term
        out.append(total)
    return tuple(out)


@dataclass(frozen=True)
class ReductionMap:
    """Record of auxiliary variables introduced during degree reduction.

    Each definition maps a new variable to a monomial in earlier
    variables (original ones or previously introduced auxiliaries), so a
    solution of the original system extends uniquely to the reduced one
    and a reduced solution restricts to an original one.
    """

    original_variable_count: int
    auxiliary_definitions: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def total_variable_count(self) -> int:
        return self.original_variable_count + len(self.auxiliary_definitions)

    def is_empty(self) -> bool:
        return not self.auxiliary_definitions


def lift_base_point(rmap: ReductionMap, x0: Vector) -> Vector:
    """Extend a solution of the original system with the auxiliary
    monomial values, giving a solution of the reduced system."""
    if len(x0) != rmap.original_variable_count:
        raise DimensionError("base point length does not match original variables")
    values = list(vector(x0))
    for _, exps in rmap.auxiliary_definitions:
        val = Fraction(1)
        for xi, e in zip(values, exps):
            val *= xi ** e
        values.append(val)
    return tuple(values)


def restrict_solution(rmap: ReductionMap, x: Vector) -> Vector:
    """Drop the auxiliary coordinates of a reduced-system solution."""
    if len(x) != rmap.total_variable_count:
        raise DimensionError("solution length does not match reduced variables")
    return tuple(x[: rmap.original_variable_count])


def _split_submonomial(exps: tuple[int, ...], target: int) -> tuple[int, ...]:
    # Greedy sub-monomial of the given total degree, taken from the
    # lowest-indexed variables first.
    sub = [0] * len(exps)
    remaining = target
    for i, e in enumerate(exps):
        take = min(e, remaining)
        sub[i] = take
        remaining -= take
        if remaining == 0:
            break
    return tuple(sub)


def _quadratic_from_poly(poly: GeneralPolySystem) -> QuadraticSystem:
    m = poly.m
    alphas, betas, gammas = [], [], []
    for eq in poly.equations:
        a = [[Fraction(0)] * m for _ in range(m)]
        b = [Fraction(0)] * m
        g = Fraction(0)
        for exps, coeff in eq.items():
            support = [i for i, e in enumerate(exps) if e > 0]
            deg = sum(exps)
            if deg == 0:
                g += coeff
            elif deg == 1:
                b[support[0]] += coeff
            elif deg == 2:
                if len(support) == 1:
                    i = support[0]
                    a[i][i] += coeff
                else:
                    i, j = support
                    half = coeff / 2
                    a[i][j] += half
                    a[j][i] += half
            else:
                raise DimensionError("polynomial of degree > 2 cannot be converted")
        alphas.append(a)
        betas.append(b)
        gammas.append(g)
    return validate_and_symmetrize(alphas, betas, gammas, poly.variable_names)


def _padded(eq: dict, width: int) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    for exps, coeff in eq.items():
        key = exps + (0,) * (width - len(exps))
        out[key] = out.get(key, Fraction(0)) + coeff
    return {k: c for k, c in out.items() if c != 0}


def _trim(exps: tuple[int, ...]) -> tuple[int, ...]:
    i = len(exps)
    while i > 0 and exps[i - 1] == 0:
        i -= 1
    return exps[:i]


def reduce_degree(poly: GeneralPolySystem) -> tuple[QuadraticSystem, ReductionMap]:
    """Rewrite a polynomial system so every equation has degree <= 2.

    While a monomial of degree d > 2 exists, the lexicographically
    greatest one of maximal degree is split: an auxiliary variable is
    bound to its degree-ceil(d/2) leading sub-monomial (one defining
    equation, monomial minus variable) and substituted for it everywhere.
    Identical sub-monomials reuse the same auxiliary. The solution sets
    correspond bijectively via the returned ReductionMap.
    """
    equations = [dict(eq) for eq in poly.equations]
    names = list(poly.variable_names)
    defs: list[tuple[int, tuple[int, ...]]] = []
    known: dict[tuple[int, ...], int] = {}

    while True:
        w = len(names)
        equations = [_padded(eq, w) for eq in equations]
        worst = None
        for eq in equations:
            for exps in eq:
                d = sum(exps)
                if d > 2 and (worst is None or (d, exps) > worst):
                    worst = (d, exps)
        if worst is None:
            break
        d, exps = worst
        sub = _split_submonomial(exps, (d + 1) // 2)
        key = _trim(sub)
        if key in known:
            new_var = known[key]
            quotient = list(exps)
        else:
            new_var = w
            names.append(f"x{w + 1}")
            known[key] = new_var
            defs.append((new_var, key + (0,) * (new_var - len(key))))
            # defining equation: sub-monomial - new variable = 0
            var_term = (0,) * w + (1,)
            equations.append({sub: Fraction(1), var_term: Fraction(-1)})
            quotient = list(exps) + [0]
        for i, e in enumerate(sub):
            quotient[i] -= e
        quotient[new_var] += 1
        q = tuple(quotient)
        for eq in equations:
            if exps in eq:
                coeff = eq.pop(exps)
                eq[q] = eq.get(q, Fraction(0)) + coeff

    reduced_poly = poly_system(equations, len(names), names)
    rmap = ReductionMap(poly.m, tuple(defs))
    return _quadratic_from_poly(reduced_poly), rmap
