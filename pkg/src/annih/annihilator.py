"""The core pipeline for optimal annihilating operators.

Given the defining equation with roots s_1..s_m, the derivatives of the
tracked branch y = s_1 have the closed polynomial form

    g_l = -(l-1)! * sum over i_2+...+i_m = l-1 of
          prod_j C(l+i_j-1, i_j) * prod_j (s_1 - s_j)^(2m-1-l-i_j)

after clearing the denominator D^(2m-1), D = prod_j (s_1 - s_j).  Reducing
the g_l (and the extra column for y itself) modulo the Vieta ideal leaves
polynomials in s_1 and the parameters of degree < m; a kernel vector of
their coefficient matrix over the rational-function field is the operator.

Two reduction engines produce the identical family: "buchberger" runs a
Groebner basis of the Vieta generators and honest normal forms, "cauchy"
(default, much faster) eliminates the higher roots through the quotient
by the defining polynomial alone, using the characteristic polynomial
h(z) of the differences s_1 - s_j and a fraction-free power-series
recurrence for the coefficients of h(z)^(-l).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Iterable, List, Optional, Sequence, Tuple

from .equation import (
    CoefficientBinding,
    EquationShape,
    defining_poly,
    family_context,
    full_context,
    operator_context,
    s_names,
)
from .groebner import buchberger, cauchy_groebner, normal_form, vieta_generators
from .linalg import kernel_basis
from .multipoly import (
    QQ,
    MultiPoly,
    VarContext,
    assemble_in_var,
    content_primitive,
)

ENGINES = ("cauchy", "buchberger")


class EmptyKernelError(RuntimeError):
    """The syzygy system had only the zero solution (should not happen)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass
class KernelReport:
    """Diagnostics of the fraction-free kernel computation."""

    rows: int
    cols: int
    rank: int
    kernel_dim: int
    pivots: tuple
    selected: Optional[int] = None
    warnings: tuple = ()
    family_ms: int = 0
    elimination_ms: int = 0
    total_ms: int = 0


@dataclass(frozen=True)
class ReducedFamily:
    """Normal forms G_0..G_R of the cleared branch derivatives.

    G[l] lives in the s_1/parameters subring with deg_{s1} < m; G[0] is the
    column for the undifferentiated branch, G[l] for derivative order l.
    """

    shape: EquationShape
    binding: CoefficientBinding
    engine: str
    R: int
    G: tuple
    ctx: VarContext


@dataclass(frozen=True)
class DiffOperator:
    """sum_k coeffs[k] * d^k/dx^k with polynomial coefficients."""

    var: str
    coeffs: tuple
    order: int
    low: int

    @property
    def ctx(self) -> VarContext:
        return self.coeffs[-1].ctx


def determination(shape: EquationShape) -> int:
    """Number of linearly independent branch germs at a generic point.

    Equals m/d when d = gcd of all exponents exceeds 1, and otherwise
    m - 1 + floor(m_1/(m-1)) with m_1 the largest secondary exponent.
    """
    d = shape.exponent_gcd()
    if d > 1:
        return shape.m // d
    return shape.m - 1 + shape.exps[0] // (shape.m - 1)


# ----------------------------------------------------------------------
# residue generators


def _compositions(total: int, parts: int):
    """All tuples of `parts` non-negative ints summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def residue_generator(shape: EquationShape, ell: int,
                      ctx: Optional[VarContext] = None) -> MultiPoly:
    """The cleared l-th derivative g_l of the tracked branch, expanded.

    A polynomial in the root variables only, symmetric in s_2..s_m.
    """
    R = determination(shape)
    if not 1 <= ell <= R:
        raise ValueError(f"derivative order {ell} outside 1..{R}")
    m = shape.m
    if ctx is None:
        ctx = VarContext(s_names(shape))
    E = 2 * m - 1 - ell
    s1 = MultiPoly.variable(ctx, "s1")
    powers = {}
    for j in range(2, m + 1):
        base = s1 - MultiPoly.variable(ctx, f"s{j}")
        lst = [MultiPoly.const(ctx, 1)]
        for _ in range(E):
            lst.append(lst[-1] * base)
        powers[j] = lst
    acc = MultiPoly.zero(ctx)
    for composition in _compositions(ell - 1, m - 1):
        coeff = 1
        prod = None
        for j, i_j in zip(range(2, m + 1), composition):
            coeff *= comb(ell + i_j - 1, i_j)
            p = powers[j][E - i_j]
            prod = p if prod is None else prod * p
        acc = acc + prod.scale(coeff)
    return acc.scale(-factorial(ell - 1))


# ----------------------------------------------------------------------
# reduced family, cauchy engine


class _QuotientRing:
    """Arithmetic in QQ[a's, x][s1] modulo the defining polynomial."""

    def __init__(self, ctx: VarContext, shape: EquationShape, binding: CoefficientBinding):
        self.ctx = ctx
        self.m = shape.m
        self.mu = defining_poly(ctx, shape, binding, "s1")
        parts = self.mu.coeff_in_var("s1")
        parts.pop(shape.m)
        # s1^m == sum_e neg_tail[e] * s1^e
        self.neg_tail = [(e, c.scale(-1)) for e, c in sorted(parts.items())]

    def reduce(self, f: MultiPoly) -> MultiPoly:
        if f.degree_in("s1") < self.m:
            return f
        work = f.coeff_in_var("s1")
        m = self.m
        while work:
            top = max(work)
            if top < m:
                break
            c = work.pop(top)
            if c.is_zero:
                continue
            for e, tc in self.neg_tail:
                key = top - m + e
                prev = work.get(key)
                work[key] = c * tc if prev is None else prev + c * tc
        return assemble_in_var(self.ctx, "s1", {e: c for e, c in work.items() if not c.is_zero})

    def mul(self, f: MultiPoly, g: MultiPoly) -> MultiPoly:
        return self.reduce(f * g)


def _family_cauchy(shape: EquationShape, binding: CoefficientBinding,
                   ctx: VarContext, R: int) -> List[MultiPoly]:
    m = shape.m
    ring = _QuotientRing(ctx, shape, binding)
    one = MultiPoly.const(ctx, 1)
    s1 = MultiPoly.variable(ctx, "s1")
    D = ring.mu.derivative("s1")

    # synthetic quotient q(t) of mu(t) by (t - s1): mu(t) = (t-s1) q(t) + mu(s1)
    c = ring.mu.coeff_in_var("s1")
    zero = MultiPoly.zero(ctx)
    q = [zero] * m
    q[m - 1] = one
    for k in range(m - 1, 0, -1):
        q[k - 1] = c.get(k, zero) + q[k].mul_term(1, _unit_mono(ctx, "s1"))

    # h(z) = prod_j (z - (s1 - s_j)) = (-1)^(m-1) q(s1 - z); h[m-1] == 1
    sign_m = (-1) ** (m - 1)
    h = []
    for i in range(m):
        acc = zero
        for k in range(i, m):
            acc = acc + q[k].mul_term(comb(k, i), _unit_mono(ctx, "s1", k - i))
        h.append(acc.scale(sign_m * (-1) ** i))
    assert h[m - 1] == one, "characteristic polynomial of differences not monic"
    assert h[0] == D.scale(sign_m), "constant term does not match the derivative"

    dpow = [one]
    for _ in range(2 * m - 1):
        dpow.append(ring.mul(dpow[-1], D))

    G: List[MultiPoly] = [ring.reduce(s1 * dpow[2 * m - 1])]
    for ell in range(1, R + 1):
        # T_k = h0^(l+k) [z^k] h(z)^(-l), fraction-free recurrence
        T = [one]
        for k in range(ell - 1):
            acc = zero
            h0pow = one
            for i in range(1, k + 2):
                if i < m:
                    term = ring.mul(ring.mul(h[i], T[k + 1 - i]), h0pow)
                    acc = acc + term.scale((k + 1) + (ell - 1) * i)
                h0pow = ring.mul(h0pow, h[0])
            T.append(ring.reduce(acc).scale(QQ(-1, k + 1)))
        E = 2 * m - 1 - ell
        val = ring.mul(dpow[E - (ell - 1)], T[ell - 1])
        sign = (-1) ** ((m - 1) * (ell - 1))
        G.append(val.scale(-sign * factorial(ell - 1)))
    return G


def _unit_mono(ctx: VarContext, name: str, power: int = 1) -> tuple:
    mono = [0] * len(ctx)
    mono[ctx.index(name)] = power
    return tuple(mono)


# ----------------------------------------------------------------------
# reduced family, buchberger engine


def _family_buchberger(shape: EquationShape, binding: CoefficientBinding,
                       fam_ctx: VarContext, R: int) -> List[MultiPoly]:
    m = shape.m
    ctx = full_context(shape, binding)
    gb = buchberger(vieta_generators(shape, binding, ctx))

    def nf(p):
        return normal_form(p, gb)

    one = MultiPoly.const(ctx, 1)
    zero = MultiPoly.zero(ctx)
    s1 = MultiPoly.variable(ctx, "s1")
    emax = 2 * m - 1
    pows = {}
    for j in range(2, m + 1):
        base = nf(s1 - MultiPoly.variable(ctx, f"s{j}"))
        lst = [one]
        for _ in range(emax):
            lst.append(nf(lst[-1] * base))
        pows[j] = lst

    acc = one
    for j in range(2, m + 1):
        acc = nf(acc * pows[j][2 * m - 1])
    G = [nf(s1 * acc)]

    for ell in range(1, R + 1):
        E = 2 * m - 1 - ell
        series = [one]
        for j in range(2, m + 1):
            B = [pows[j][E - i].scale(comb(ell + i - 1, i)) for i in range(ell)]
            new = [zero] * ell
            for p, sp in enumerate(series):
                if sp.is_zero:
                    continue
                for i in range(ell - p):
                    if not B[i].is_zero:
                        new[p + i] = new[p + i] + sp * B[i]
            series = [nf(t) for t in new]
        G.append(series[ell - 1].scale(-factorial(ell - 1)))

    restricted = []
    for g in G:
        stray = [n for n in g.used_vars() if n.startswith("s") and n != "s1"]
        if stray:
            raise RuntimeError(
                f"family reduction left higher root variables {stray}; "
                "the Vieta basis is not eliminating as expected"
            )
        restricted.append(g.in_context(fam_ctx))
    return restricted


def reduced_family(shape: EquationShape, binding: CoefficientBinding,
                   engine: str = "cauchy") -> ReducedFamily:
    """Algorithm steps 1-4: the reduced generator family G_0..G_R."""
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    if len(binding.entries) != shape.n:
        raise ValueError("binding does not match shape")
    R = determination(shape)
    ctx = family_context(shape, binding)
    if engine == "cauchy":
        G = _family_cauchy(shape, binding, ctx, R)
    else:
        G = _family_buchberger(shape, binding, ctx, R)
    for g in G:
        if g.degree_in("s1") >= shape.m:
            raise RuntimeError("reduced family member has s1-degree >= m")
    G = [MultiPoly(g.ctx, g.terms) for g in G]  # re-canonicalize coefficients
    return ReducedFamily(shape=shape, binding=binding, engine=engine,
                         R=R, G=tuple(G), ctx=ctx)


# ----------------------------------------------------------------------
# matrix, kernel, operator


def coefficient_matrix(fam: ReducedFamily) -> List[List[MultiPoly]]:
    """m x (R+1) matrix: row j holds the s1^j coefficients of G_0..G_R."""
    op_ctx = operator_context(fam.binding)
    zero = MultiPoly.zero(op_ctx)
    rows = [[zero] * (fam.R + 1) for _ in range(fam.shape.m)]
    for ell, g in enumerate(fam.G):
        for e, coeff in g.coeff_in_var("s1").items():
            rows[e][ell] = coeff.in_context(op_ctx)
    return rows


def nullspace_ff(M: Sequence[Sequence[MultiPoly]]):
    """Right kernel basis of a polynomial matrix, content-normalized.

    Raises EmptyKernelError when the kernel is trivial, which would
    contradict the existence guarantee for the operator.
    """
    t0 = time.perf_counter()
    vectors_raw, pivots, _swaps = kernel_basis(M)
    report = KernelReport(
        rows=len(M),
        cols=len(M[0]),
        rank=len(pivots),
        kernel_dim=len(vectors_raw),
        pivots=tuple(pivots),
    )
    if not vectors_raw:
        raise EmptyKernelError(
            f"kernel of the {len(M)}x{len(M[0])} syzygy matrix is trivial "
            f"(rank {len(pivots)}); this contradicts the existence of the operator",
            report,
        )
    vectors = []
    for v in vectors_raw:
        _, parts = content_primitive(v)
        vectors.append(parts)
    report.elimination_ms = int((time.perf_counter() - t0) * 1000)
    return vectors, report


def _top_index(vec: Sequence[MultiPoly]) -> int:
    for k in range(len(vec) - 1, -1, -1):
        if not vec[k].is_zero:
            return k
    return -1


def normalize_operator(vectors, report: Optional[KernelReport] = None) -> DiffOperator:
    """Canonical operator from a kernel vector (or basis).

    Content is removed from the whole coefficient vector and the sign fixed
    so the lex-leading term of the top coefficient is positive.  When the
    kernel has dimension > 1 the basis is column-reduced first and the
    vector of minimal order selected; that only happens for non-generic
    numeric coefficients and is reported as an anomaly.
    """
    if vectors and isinstance(vectors[0], MultiPoly):
        vectors = [list(vectors)]
    vecs = [list(v) for v in vectors if _top_index(v) >= 0]
    if not vecs:
        raise ValueError("no nonzero kernel vector to normalize")
    selected = 0
    if len(vecs) > 1:
        work = sorted(vecs, key=_top_index)
        reduced = []
        while work:
            v = work.pop(0)
            t = _top_index(v)
            clashes = [w for w in reduced if _top_index(w) == t]
            if clashes:
                w = clashes[0]
                new = [v[k] * w[t] - w[k] * v[t] for k in range(len(v))]
                if _top_index(new) >= 0:
                    _, new = content_primitive(new)
                    work.append(new)
                    work.sort(key=_top_index)
            else:
                reduced.append(v)
        reduced.sort(key=_top_index)
        vecs = reduced
        selected = 0
        if report is not None:
            report.warnings = report.warnings + (
                "kernel dimension > 1; column-reduced and selected the minimal-order vector",
            )
    chosen = vecs[selected]
    if report is not None:
        report.selected = selected
    _, parts = content_primitive(chosen)
    d = _top_index(parts)
    low = next(k for k, p in enumerate(parts) if not p.is_zero)
    if parts[d].leading_coeff() < 0:
        parts = [-p for p in parts]
    return DiffOperator(var="x", coeffs=tuple(parts[: d + 1]), order=d, low=low)


def annihilate(shape: EquationShape, binding: CoefficientBinding,
               engine: str = "cauchy") -> Tuple[DiffOperator, KernelReport]:
    """Full pipeline: reduced family -> coefficient matrix -> kernel -> operator."""
    if binding.is_numeric():
        from .resultants import discriminant

        if discriminant(shape, binding).is_zero:
            raise ValueError("the equation has identically vanishing discriminant")
    t0 = time.perf_counter()
    fam = reduced_family(shape, binding, engine)
    t1 = time.perf_counter()
    M = coefficient_matrix(fam)
    vectors, report = nullspace_ff(M)
    report.family_ms = int((t1 - t0) * 1000)
    op = normalize_operator(vectors, report)

    # the syzygy must hold exactly: sum_l p_l * G_l == 0
    check = MultiPoly.zero(fam.ctx)
    for k, p in enumerate(op.coeffs):
        if not p.is_zero:
            check = check + p.in_context(fam.ctx) * fam.G[k]
    if not check.is_zero:
        raise RuntimeError("selected kernel vector does not annihilate the family")
    if binding.is_symbolic() and op.order != fam.R:
        raise RuntimeError(
            f"operator order {op.order} != determination {fam.R} in symbolic mode"
        )
    report.total_ms = int((time.perf_counter() - t0) * 1000)
    return op, report
