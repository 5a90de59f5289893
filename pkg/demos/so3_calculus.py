"""Exterior calculus over so(3) viewed as a Lie algebroid over a point.

Walks through the basic operations: brackets of sections, the exterior
derivative on the dual basis, Lie derivatives, the Schouten bracket, and
finally the reconstruction of the whole algebroid from nothing but its
differential.
"""

from algebroids import (
    FORM,
    MULTIVECTOR,
    GradedElement,
    OperatorValue,
    bracket_sections,
    construct_lie_algebra,
    delta_reconstruct,
    exterior_derivative,
    lie_derivative_form,
    schouten_bracket,
    verify_axioms,
    wedge,
)


def show(label, element):
    print(f"{label}:")
    if element.is_zero():
        print("  zero")
        return
    for degree in sorted(element.components):
        for index, value in sorted(element.components[degree].items()):
            print(f"  [{','.join(map(str, index))}] = {value.to_text(())}")


A = construct_lie_algebra(3, {(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {2: -1}})
report = verify_axioms(A)
print(f"so(3) axioms: {'pass' if report.passed else 'fail'}")

e = {a: GradedElement.basis(A, MULTIVECTOR, (a,)) for a in (1, 2, 3)}
dual = {a: GradedElement.basis(A, FORM, (a,)) for a in (1, 2, 3)}

show("{e1, e2}", bracket_sections(A, e[1], e[2]))

# the differential of a dual basis vector collects the structure functions
for a in (1, 2, 3):
    show(f"d e^{a}", exterior_derivative(A, dual[a]))

show("L(e1) e^2", lie_derivative_form(A, e[1], dual[2]))

# the Schouten bracket extends the section bracket to all degrees
P = wedge(e[1], e[2])
show("[e1 ^ e2, e1]", schouten_bracket(A, P, e[1]))
show("[e1 ^ e2, e3]", schouten_bracket(A, P, e[3]))

# round trip: the differential alone determines anchor and structure
delta = OperatorValue(lambda eta: exterior_derivative(A, eta), 1)
rebuilt = delta_reconstruct(A.chart, A.rank, delta)
same = all(
    rebuilt.bracket_table(a, b) == A.bracket_table(a, b)
    for a in (1, 2, 3)
    for b in range(a + 1, 4)
)
print(f"reconstructed from d alone: {'identical' if same else 'DIFFERENT'}")
