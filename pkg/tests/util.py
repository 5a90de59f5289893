"""Shared fixture builders and random-element generators for the tests.

Random data always comes from a caller-supplied random.Random so every test
is reproducible; coefficients stay at polynomial degree <= 2 to keep the
exact arithmetic fast.
"""

from fractions import Fraction
from itertools import combinations

from algebroids import (
    FORM,
    MULTIVECTOR,
    GradedElement,
    OperatorValue,
    construct_lie_algebra,
    construct_tangent,
    cotangent_algebroid,
    exterior_derivative,
    new_poisson,
    verify_axioms,
)
from algebroids.expr import Expr

X1, X2, X3 = Expr.var("x1"), Expr.var("x2"), Expr.var("x3")


def so3():
    return construct_lie_algebra(3, {(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {2: -1}})


def heisenberg():
    return construct_lie_algebra(3, {(1, 2): {3: 1}})


def broken_jacobi():
    """Fails the Jacobi identity with residual exactly e_2 on (1,2,3)."""
    return construct_lie_algebra(3, {(1, 2): {1: 1}, (1, 3): {2: 1}})


def poisson_r2():
    return new_poisson(("x1", "x2"), {(1, 2): 1})


def poisson_r3_linear():
    return new_poisson(("x1", "x2", "x3"), {(1, 2): X3})


def poisson_so3():
    return new_poisson(("x1", "x2", "x3"), {(1, 2): X3, (1, 3): -X2, (2, 3): X1})


def poisson_broken():
    return new_poisson(("x1", "x2", "x3"), {(1, 2): 1, (1, 3): X1})


def poisson_fixtures():
    return [
        ("r2-symplectic", poisson_r2()),
        ("r3-x3-linear", poisson_r3_linear()),
        ("r3-so3-linear", poisson_so3()),
    ]


def verified_fixtures():
    """Named verified algebroids used by the quantified properties."""
    items = [
        ("tangent-1", construct_tangent(1)),
        ("tangent-2", construct_tangent(2)),
        ("tangent-3", construct_tangent(3)),
        ("so3", so3()),
        ("heisenberg", heisenberg()),
    ]
    for name, ps in poisson_fixtures():
        items.append((f"cotangent-{name}", cotangent_algebroid(ps)))
    for _, algebroid in items:
        verify_axioms(algebroid)
    return items


def d_operator(algebroid):
    return OperatorValue(lambda eta: exterior_derivative(algebroid, eta), 1)


def random_poly(rng, chart, max_degree=2, terms=2):
    total = Expr.const(0)
    for _ in range(terms):
        coeff = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        term = Expr.const(coeff)
        if chart:
            for _ in range(rng.randint(0, max_degree)):
                term = term * Expr.var(rng.choice(chart))
        total = total + term
    return total


def random_homogeneous(rng, algebroid, variance, degree, density=0.7):
    table = {}
    for index in combinations(range(1, algebroid.rank + 1), degree):
        if rng.random() < density:
            table[index] = random_poly(rng, algebroid.chart)
    return GradedElement(algebroid, variance, {degree: table} if table else {})


def random_form(rng, algebroid, degree):
    return random_homogeneous(rng, algebroid, FORM, degree)


def random_multivector(rng, algebroid, degree):
    return random_homogeneous(rng, algebroid, MULTIVECTOR, degree)


def random_section(rng, algebroid):
    return random_homogeneous(rng, algebroid, MULTIVECTOR, 1, density=1.0)


def random_mixed(rng, algebroid, variance, max_degree=None):
    if max_degree is None:
        max_degree = algebroid.rank
    total = GradedElement(algebroid, variance, {})
    for degree in range(0, max_degree + 1):
        if rng.random() < 0.6:
            total = total + random_homogeneous(rng, algebroid, variance, degree)
    return total
