"""Poisson constructions: the symplectic plane and the linear so(3) structure.

Shows the function bracket, the sharp map, the cotangent Lie algebroid
with its Koszul bracket, and the Lichnerowicz differential.
"""

from algebroids import (
    FORM,
    GradedElement,
    cotangent_algebroid,
    exterior_derivative,
    is_poisson,
    koszul_bracket,
    lichnerowicz_differential,
    new_poisson,
    poisson_bracket,
    sharp,
    verify_axioms,
)
from algebroids.expr import Expr

X1, X2, X3 = Expr.var("x1"), Expr.var("x2"), Expr.var("x3")


def show(label, element, chart):
    body = []
    for degree in sorted(element.components):
        for index, value in sorted(element.components[degree].items()):
            body.append(f"[{','.join(map(str, index))}] = {value.to_text(chart)}")
    print(f"{label}: " + ("; ".join(body) if body else "zero"))


plane = new_poisson(("x1", "x2"), {(1, 2): 1})
print(f"plane is Poisson: {is_poisson(plane).passed}")
print("{x1, x2} =", poisson_bracket(plane, X1, X2).to_text(plane.chart))

T = plane.tangent()
dx1 = GradedElement.basis(T, FORM, (1,))
show("sharp(dx1)", sharp(plane, dx1), plane.chart)

# the linear structure on R^3 whose brackets are the so(3) relations
lp = new_poisson(("x1", "x2", "x3"), {(1, 2): X3, (1, 3): -X2, (2, 3): X1})
print(f"\nlinear so(3) structure is Poisson: {is_poisson(lp).passed}")
print("{x1, x2} =", poisson_bracket(lp, X1, X2).to_text(lp.chart))

C = cotangent_algebroid(lp)
print(f"cotangent algebroid satisfies the axioms: {verify_axioms(C).passed}")
T3 = lp.tangent()
dx = {i: GradedElement.basis(T3, FORM, (i,)) for i in (1, 2, 3)}
show("[dx1, dx2] (Koszul)", koszul_bracket(lp, dx[1], dx[2]), lp.chart)

# d{f,g} = [df, dg] by construction; check one instance by hand
f, g = X1 * X2, X3
lhs = koszul_bracket(
    lp,
    exterior_derivative(T3, GradedElement.scalar(T3, FORM, f)),
    exterior_derivative(T3, GradedElement.scalar(T3, FORM, g)),
)
rhs = exterior_derivative(
    T3, GradedElement.scalar(T3, FORM, poisson_bracket(lp, f, g))
)
print(f"[d(x1 x2), dx3] = d{{x1 x2, x3}}: {lhs == rhs}")

delta = lichnerowicz_differential
show("delta(x1)", delta(lp, GradedElement.scalar(T3, "multivector", X1)), lp.chart)
show("delta(delta(x1))", delta(lp, delta(lp, GradedElement.scalar(T3, "multivector", X1))), lp.chart)
