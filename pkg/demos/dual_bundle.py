"""The Poisson structure induced on the dual bundle of a Lie algebroid.

For the tangent algebroid this recovers the canonical cotangent-bundle
structure; for a Lie algebra over a point it recovers the Lie-Poisson
structure on the dual.  The fiber-linear functions Phi turn the section
bracket into the Poisson bracket.
"""

from algebroids import (
    MULTIVECTOR,
    GradedElement,
    bracket_sections,
    construct_lie_algebra,
    construct_tangent,
    dual_poisson,
    homogeneity_check,
    phi_function,
    poisson_bracket,
    transpose_anchor_check,
)
from algebroids.expr import Expr


def table(ps):
    rows = []
    for (i, j), value in sorted(ps.bivector.components.get(2, {}).items()):
        rows.append(f"{{{ps.chart[i - 1]}, {ps.chart[j - 1]}}} = {value.to_text(ps.chart)}")
    return "; ".join(rows)


T2 = construct_tangent(2)
ps = dual_poisson(T2)
print("T*R^2:", table(ps))

so3 = construct_lie_algebra(3, {(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {2: -1}})
lp = dual_poisson(so3)
print("so(3)*:", table(lp))

heis = construct_lie_algebra(3, {(1, 2): {3: 1}})
print("heis(3)*:", table(dual_poisson(heis)))

# Phi sends a section to a fiber-linear function; brackets correspond
X = GradedElement(so3, MULTIVECTOR, {1: {(1,): 1}})
Y = GradedElement(so3, MULTIVECTOR, {1: {(2,): 1}})
lhs = poisson_bracket(lp, phi_function(lp, X), phi_function(lp, Y))
rhs = phi_function(lp, bracket_sections(so3, X, Y))
print(f"Phi law on so(3) generators: {{Phi_X, Phi_Y}} = {lhs.to_text(lp.chart)},",
      f"Phi_[X,Y] = {rhs.to_text(lp.chart)}")

# the bivector is linear along the fibers and projects onto the anchor
print("homogeneity residual zero:", homogeneity_check(lp).is_zero())
residuals = transpose_anchor_check(so3, lp)
print("transpose-anchor residuals all zero:", all(not r for r in residuals))
