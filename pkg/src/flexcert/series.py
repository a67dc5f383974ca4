"""Formal power-series machinery for candidate solution families.

A candidate family X(t) = Y0 + Y1 t + ... + Yq t^q is held as its
coefficient list. The module implements the coefficient recurrence
C Yp = -sum_{l=1}^{p-1} B(Yl, Y(p-l)), constrained extension by one
degree, exact residual-order measurement, and the substitution
t = tau + a tau^e used to normalize leading coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import ratlinalg
from .quadsys import BaseOperators, QuadraticSystem, bilinear, evaluate, linear_part
from .ratlinalg import (
    DimensionError,
    Vector,
    is_zero_vector,
    vec_add,
    vec_scale,
    vector,
    zero_vector,
)

INFINITE = math.inf


@dataclass(frozen=True)
class SeriesCoefficients:
    """Ordered coefficients Y0..Yq of a polynomial family in one parameter."""

    coeffs: tuple[Vector, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise DimensionError("series needs at least the constant coefficient")
        width = len(self.coeffs[0])
        if any(len(c) != width for c in self.coeffs):
            raise DimensionError("series coefficients must all have the same length")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def width(self) -> int:
        return len(self.coeffs[0])

    def coefficient(self, p: int) -> Vector:
        return self.coeffs[p]

    def truncated(self, q: int) -> "SeriesCoefficients":
        if q > self.degree:
            raise DimensionError(f"cannot truncate degree-{self.degree} series to {q}")
        return SeriesCoefficients(self.coeffs[: q + 1])

    def appended(self, coeff: Vector) -> "SeriesCoefficients":
        return SeriesCoefficients(self.coeffs + (vector(coeff),))

    def is_constant(self) -> bool:
        return all(is_zero_vector(c) for c in self.coeffs[1:])


def series(coeffs: Sequence[Sequence]) -> SeriesCoefficients:
    return SeriesCoefficients(tuple(vector(c) for c in coeffs))


# Constraint on where an extension coefficient may live.

@dataclass(frozen=True)
class Unconstrained:
    pass


@dataclass(frozen=True)
class SpanOf:
    vectors: tuple[Vector, ...]


@dataclass(frozen=True)
class Complement:
    """Basis of a codimension-1 subspace T with T intersect ker C = {0}."""

    basis: tuple[Vector, ...]


SubspaceConstraint = Union[Unconstrained, SpanOf, Complement]


def recurrence_rhs(ops: BaseOperators, s: SeriesCoefficients, p: int) -> Vector:
    """-sum_{l=1}^{p-1} B(Yl, Y(p-l)), the right-hand side for coefficient p.

    The base coefficient Y0 never enters the sum; for p = 1 the sum is
    empty and the result is zero.
    """
    if p < 1 or p > s.degree + 1:
        raise DimensionError(f"coefficient index {p} out of range for degree {s.degree}")
    total = zero_vector(ops.system.n)
    for l in range(1, p):
        total = vec_add(total, ops.bilinear(s.coefficient(l), s.coefficient(p - l)))
    return tuple(-x for x in total)


def _check_complement(ops: BaseOperators, basis: Sequence[Vector]) -> None:
    m = ops.system.m
    for b in basis:
        if len(b) != m:
            raise DimensionError("constraint basis vector has wrong length")
    if len(basis) != m - 1:
        raise DimensionError("complement constraint needs a codimension-1 basis")
    if ratlinalg.rank(ratlinalg.Matrix.from_rows(basis, cols=m)) != m - 1:
        raise DimensionError("complement basis is linearly dependent")
    # T intersects ker C trivially iff the union of bases stays independent
    combined = list(basis) + list(ops.kernel)
    if ratlinalg.rank(ratlinalg.Matrix.from_rows(combined, cols=m)) != len(combined):
        raise DimensionError("complement subspace meets the kernel of C")


def extend_step(
    ops: BaseOperators,
    s: SeriesCoefficients,
    constraint: SubspaceConstraint = Unconstrained(),
    verify_residual: bool = False,
) -> Optional[Vector]:
    """Next coefficient Y(q+1) with C Y(q+1) equal to the recurrence
    right-hand side, subject to the constraint; None if no such vector
    exists. Appending a returned vector preserves approximate-solution
    status at degree q+1."""
    if verify_residual and residual_order(ops.system, s) <= s.degree:
        raise DimensionError("series is not an approximate solution of its degree")
    rhs = recurrence_rhs(ops, s, s.degree + 1)
    if isinstance(constraint, Unconstrained):
        solved = ratlinalg.solve_general(ops.c_matrix, rhs)
        return solved[0] if solved is not None else None
    if isinstance(constraint, SpanOf):
        return ratlinalg.solve_in_span(ops.c_matrix, rhs, constraint.vectors)
    if isinstance(constraint, Complement):
        _check_complement(ops, constraint.basis)
        return ratlinalg.solve_in_span(ops.c_matrix, rhs, constraint.basis)
    raise TypeError(f"unknown constraint {constraint!r}")


def composition_coefficients(sys: QuadraticSystem, s: SeriesCoefficients) -> list[Vector]:
    """Coefficient vectors of F(Y(t)) for t^0 .. t^(2q), computed exactly.

    A degree-2 system applied to a degree-q polynomial family cannot
    produce terms beyond t^(2q), so this list is the whole expansion.
    """
    q = s.degree
    out = []
    for p in range(2 * q + 1):
        coeff = zero_vector(sys.n)
        for a in range(max(0, p - q), min(p, q) + 1):
            coeff = vec_add(coeff, bilinear(sys, s.coefficient(a), s.coefficient(p - a)))
        if p <= q:
            coeff = vec_add(coeff, linear_part(sys, s.coefficient(p)))
        if p == 0:
            coeff = vec_add(coeff, sys.gamma)
        out.append(coeff)
    return out


def residual_order(sys: QuadraticSystem, s: SeriesCoefficients):
    """Smallest p >= 1 with a nonzero t^p coefficient in F(Y(t)), or
    INFINITE when the whole expansion vanishes (the family is an exact
    polynomial solution)."""
    if not is_zero_vector(evaluate(sys, s.coefficient(0))):
        raise DimensionError("series base coefficient does not solve the system")
    expansion = composition_coefficients(sys, s)
    for p in range(1, len(expansion)):
        if not is_zero_vector(expansion[p]):
            return p
    return INFINITE


def reparameterize(
    s: SeriesCoefficients, a, e: int, out_degree: int
) -> SeriesCoefficients:
    """Coefficients of X(tau + a tau^e) up to out_degree.

    For e >= 2 the constant and linear coefficients are unchanged; for
    e = 2 the next ones satisfy Y2 = X2 + a X1 and Y3 = X3 + 2 a X2.
    """
    if e < 2:
        raise DimensionError("reparameterization exponent must be at least 2")
    a = ratlinalg.scalar(a)
    width = s.width
    # u(tau) = tau + a tau^e as a coefficient list, truncated
    u = [Fraction(0)] * (out_degree + 1)
    if out_degree >= 1:
        u[1] = Fraction(1)
    if e <= out_degree:
        u[e] += a
    out = [zero_vector(width) for _ in range(out_degree + 1)]
    out[0] = s.coefficient(0)
    upow = list(u)  # u^1
    for p in range(1, s.degree + 1):
        if p > out_degree:
            break
        if p > 1:
            nxt = [Fraction(0)] * (out_degree + 1)
            for i, ci in enumerate(upow):
                if ci == 0:
                    continue
                for j, cj in enumerate(u):
                    if cj == 0 or i + j > out_degree:
                        continue
                    nxt[i + j] += ci * cj
            upow = nxt
        xp = s.coefficient(p)
        for idx in range(out_degree + 1):
            if upow[idx] != 0:
                out[idx] = vec_add(out[idx], vec_scale(upow[idx], xp))
    return SeriesCoefficients(tuple(out))
