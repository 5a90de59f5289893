"""Poisson structures on a chart and the induced cotangent-side calculus.

A Poisson structure is a bivector over the chart's tangent algebroid whose
Schouten square vanishes. From a verified structure we build the cotangent
algebroid (anchor = the bivector matrix, structure functions = its partial
derivatives), and through it the Koszul bracket of forms; the Lichnerowicz
differential is bracketing with the bivector.

Construction does not verify. PoissonStructure carries a `verified` flag set
by is_poisson (or .verify()), and the operations that require a genuine
Poisson bivector refuse unverified inputs unless forced; forcing exists so
negative fixtures can demonstrate exactly how the constructions fail.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebroid as _alg
from . import calculus as _cal
from .expr import Expr, validate_chart

ZERO = Expr.const(0)
ONE = Expr.const(1)


class PoissonStructure:
    """A bivector over construct_tangent(chart) plus a verification flag."""

    __slots__ = ("chart", "bivector", "verified")

    def __init__(self, chart, bivector, verified=False):
        self.chart = chart
        self.bivector = bivector
        self.verified = verified

    def tangent(self):
        return self.bivector.algebroid

    def entry(self, i, j):
        """Coefficient of the i<j storage with the antisymmetric extension."""
        if i == j:
            return ZERO
        if i < j:
            return self.bivector.coefficient((i, j))
        return -self.bivector.coefficient((j, i))

    def verify(self):
        return is_poisson(self)

    def __repr__(self):
        return f"PoissonStructure(chart={self.chart!r}, verified={self.verified})"


@dataclass
class PoissonReport:
    """Result of the Jacobi check: the multivector [Lambda, Lambda] and
    whether it vanished."""

    residual: object
    passed: bool


def new_poisson(chart, entries=None, verify=True):
    """Build a PoissonStructure from {(i, j): Expr} entries with i < j.

    With verify=True (the default) the Jacobi check runs immediately and the
    flag records its outcome; nothing raises on failure, so broken bivectors
    can still be constructed and inspected.
    """
    chart = validate_chart(chart)
    n = len(chart)
    tangent = _alg.construct_tangent(n, chart)
    table = {}
    if entries:
        for key, value in entries.items():
            i, j = key
            if not (1 <= i < j <= n):
                raise ValueError(f"bivector index ({i},{j}) is not an increasing pair in 1..{n}")
            table[(i, j)] = value
    bivector = _cal.GradedElement(tangent, _cal.MULTIVECTOR, {2: table} if table else {})
    ps = PoissonStructure(chart, bivector, verified=False)
    if verify:
        ps.verify()
    return ps


def _bivector_of(value):
    if isinstance(value, PoissonStructure):
        return value, value.bivector
    return None, value


def is_poisson(value):
    """Jacobi check: residual is the Schouten square of the bivector.

    Accepts a pure degree-2 multivector over a tangent algebroid, or a
    PoissonStructure (whose verified flag is then updated).
    """
    ps, lam = _bivector_of(value)
    if lam.variance != _cal.MULTIVECTOR:
        raise ValueError("is_poisson: the bivector must be a multivector")
    if not lam.is_homogeneous(2):
        raise ValueError(f"is_poisson: expected pure degree 2, found degrees {lam.degrees()}")
    if not _alg.is_tangent(lam.algebroid):
        raise ValueError("is_poisson: the bivector must live over a tangent algebroid")
    residual = _cal.schouten_bracket(lam.algebroid, lam, lam)
    report = PoissonReport(residual=residual, passed=residual.is_zero())
    if ps is not None:
        ps.verified = report.passed
    return report


def _as_scalar(value, chart, what):
    if not isinstance(value, Expr):
        value = Expr.const(value)
    foreign = value.variables() - set(chart)
    if foreign:
        raise ValueError(f"{what}: foreign coordinate '{sorted(foreign)[0]}'")
    return value


def poisson_bracket(ps, f, g):
    """{f, g} = sum over i<j of Lambda^{ij} (d_i f d_j g - d_j f d_i g)."""
    f = _as_scalar(f, ps.chart, "poisson_bracket: first argument")
    g = _as_scalar(g, ps.chart, "poisson_bracket: second argument")
    total = ZERO
    for (i, j), lam in ps.bivector.components.get(2, {}).items():
        ni, nj = ps.chart[i - 1], ps.chart[j - 1]
        term = f.diff(ni) * g.diff(nj) - f.diff(nj) * g.diff(ni)
        if term:
            total = total + lam * term
    return total


def _require_gate(ps, force, what):
    if not ps.verified and not force:
        raise ValueError(f"{what}: the Poisson structure is not verified (run is_poisson, or pass force=True)")


def sharp(ps, eta):
    """The bivector's musical map on forms over the tangent algebroid:
    identity on scalars, alpha ↦ (sum_i alpha_i Lambda^{ij})_j on 1-forms,
    and wedge-multiplicative on higher degrees."""
    _cal._require_variance(eta, _cal.FORM, "sharp")
    if not ps.bivector.algebroid.same_shape(eta.algebroid):
        raise ValueError("sharp: the form does not live over this chart's tangent algebroid")
    tangent = ps.bivector.algebroid
    n = len(ps.chart)

    images = []
    for i in range(1, n + 1):
        comps = {}
        for j in range(1, n + 1):
            value = ps.entry(i, j)
            if value:
                comps[(j,)] = value
        images.append(_cal.GradedElement(tangent, _cal.MULTIVECTOR, {1: comps}))

    total = _cal.GradedElement(tangent, _cal.MULTIVECTOR, {})
    for degree, table in eta.components.items():
        if degree == 0:
            total = total + _cal.GradedElement(tangent, _cal.MULTIVECTOR, {0: dict(table)})
            continue
        for index, coeff in table.items():
            term = images[index[0] - 1]
            for i in index[1:]:
                term = _cal.wedge(term, images[i - 1])
            total = total + term.scale(coeff)
    return total


def cotangent_algebroid(ps, force=False):
    """The Lie algebroid on the cotangent side: basis section i is the
    coordinate differential dx^i, the anchor row is Lambda^{i.}, and the
    structure functions are the coordinate partials of the bivector."""
    _require_gate(ps, force, "cotangent_algebroid")
    n = len(ps.chart)
    anchor = [[ps.entry(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    structure = {}
    for (i, j), lam in ps.bivector.components.get(2, {}).items():
        entries = {}
        for k, name in enumerate(ps.chart, start=1):
            d = lam.diff(name)
            if d:
                entries[k] = d
        if entries:
            structure[(i, j)] = entries
    return _alg.new_algebroid(ps.chart, n, anchor, structure)


def koszul_bracket(ps, eta, zeta, force=False):
    """Bracket of forms: the Schouten bracket taken inside the cotangent
    algebroid, with a form's coefficient table reread as a multivector's."""
    _require_gate(ps, force, "koszul_bracket")
    cotangent = cotangent_algebroid(ps, force=True)
    converted = []
    for arg in (eta, zeta):
        _cal._require_variance(arg, _cal.FORM, "koszul_bracket")
        if not cotangent.same_shape(arg.algebroid):
            raise ValueError("koszul_bracket: form does not live over this chart")
        converted.append(
            _cal.GradedElement(
                cotangent, _cal.MULTIVECTOR, {d: dict(t) for d, t in arg.components.items()}
            )
        )
    result = _cal.schouten_bracket(cotangent, converted[0], converted[1])
    return _cal.GradedElement(
        ps.bivector.algebroid, _cal.FORM, {d: dict(t) for d, t in result.components.items()}
    )


def lichnerowicz_differential(ps, P, force=False):
    """delta(P) = [Lambda, P]; raises degree by one and squares to zero for a
    verified structure."""
    _require_gate(ps, force, "lichnerowicz_differential")
    _cal._require_variance(P, _cal.MULTIVECTOR, "lichnerowicz_differential")
    tangent = ps.bivector.algebroid
    if not tangent.same_shape(P.algebroid):
        raise ValueError("lichnerowicz_differential: multivector does not live over this chart")
    return _cal.schouten_bracket(tangent, ps.bivector, P)
