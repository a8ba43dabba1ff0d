"""Sylvester resultants, discriminants and the extreme-coefficient check.

The observed structure of computed operators: the leading coefficient is
the discriminant of the defining equation times a cofactor whose monomial
support matches the support of the trailing coefficient exactly.  The
checker reports this; it never assumes it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .equation import CoefficientBinding, EquationShape, curve_context, defining_poly, operator_context
from .linalg import determinant
from .multipoly import MultiPoly, exact_divide, support


def sylvester_resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Res_var(f, g) as the Bareiss determinant of the Sylvester matrix."""
    p = f.degree_in(var)
    q = g.degree_in(var)
    if p < 1 or q < 1:
        raise ValueError(f"both polynomials must have positive degree in {var!r}")
    ctx = f.ctx
    zero = MultiPoly.zero(ctx)
    fc = f.coeff_in_var(var)
    gc = g.coeff_in_var(var)
    size = p + q
    rows = []
    for shift in range(q):
        row = [zero] * size
        for k in range(p + 1):
            row[shift + p - k] = fc.get(k, zero)
        rows.append(row)
    for shift in range(p):
        row = [zero] * size
        for k in range(q + 1):
            row[shift + q - k] = gc.get(k, zero)
        rows.append(row)
    return determinant(rows)


def discriminant(shape: EquationShape, binding: CoefficientBinding) -> MultiPoly:
    """(-1)^(m(m-1)/2) * Res_y(P, dP/dy), over the parameter/x ring."""
    ctx = curve_context(shape, binding)
    p = defining_poly(ctx, shape, binding, "y")
    res = sylvester_resultant(p, p.derivative("y"), "y")
    m = shape.m
    sign = (-1) ** (m * (m - 1) // 2)
    return res.scale(sign).in_context(operator_context(binding))


@dataclass(frozen=True)
class ConjectureReport:
    """Divisibility and support comparison of the extreme coefficients."""

    divisible: bool
    cofactor: Optional[MultiPoly]
    support_equal: bool
    cofactor_terms: int
    low_terms: int
    cofactor_support: frozenset
    low_support: frozenset

    def ok(self) -> bool:
        return self.divisible and self.support_equal


def conjecture12_check(op, disc: MultiPoly) -> ConjectureReport:
    """Divide the top coefficient by the discriminant and compare supports.

    Support sets are compared exactly (set equality implies equal Newton
    polytopes and equal monomial counts).  A negative outcome is a report,
    not an error.
    """
    p_top = op.coeffs[op.order]
    p_low = op.coeffs[op.low]
    disc = disc.in_context(p_top.ctx)
    cofactor = exact_divide(p_top, disc)
    if cofactor is None:
        return ConjectureReport(
            divisible=False,
            cofactor=None,
            support_equal=False,
            cofactor_terms=0,
            low_terms=len(p_low.terms),
            cofactor_support=frozenset(),
            low_support=frozenset(support(p_low)),
        )
    sup_c = frozenset(support(cofactor))
    sup_l = frozenset(support(p_low))
    return ConjectureReport(
        divisible=True,
        cofactor=cofactor,
        support_equal=sup_c == sup_l,
        cofactor_terms=len(cofactor.terms),
        low_terms=len(p_low.terms),
        cofactor_support=sup_c,
        low_support=sup_l,
    )
