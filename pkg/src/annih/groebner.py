"""Buchberger's algorithm, reduced Groebner bases and the Vieta ideal.

Everything is lexicographic.  The pipeline orientation is
s_m > ... > s_2 > s_1 > a_1 > ... > a_n > x, so that reduction eliminates
the higher roots and leaves polynomials in s_1 and the parameters only.

The Vieta ideal V of an equation shape has two bases here: the raw
elementary-symmetric generators (vieta_generators) and the triangular set
of successive divided differences (cauchy_triangular).  The latter has
pairwise coprime leading terms s_i^(m-i+1), hence is already the reduced
Groebner basis; Buchberger is kept as the independent route and the two
are cross-checked in the tests.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from operator import sub as _sub
from typing import Optional, Sequence

from .equation import CoefficientBinding, EquationShape, defining_poly, full_context, s_names
from .multipoly import (
    MultiPoly,
    VarContext,
    elementary_symmetric,
    exact_divide,
    qq,
    remainder,
)


@dataclass(frozen=True)
class MonomialOrder:
    precedence: tuple
    kind: str = "lex"


@dataclass(frozen=True)
class GroebnerBasis:
    basis: tuple
    order: MonomialOrder
    reduced: bool = False

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """S(f, g) = (lcm/LT(f))*f - (lcm/LT(g))*g."""
    if f.is_zero or g.is_zero:
        raise ValueError("S-polynomial of a zero polynomial")
    lmf, lmg = f.leading_monomial(), g.leading_monomial()
    lcm = tuple(max(a, b) for a, b in zip(lmf, lmg))
    cf = f.mul_term(1 / qq(f.terms[lmf]), tuple(map(_sub, lcm, lmf)))
    cg = g.mul_term(1 / qq(g.terms[lmg]), tuple(map(_sub, lcm, lmg)))
    return cf - cg


def _monic(f: MultiPoly) -> MultiPoly:
    lc = f.leading_coeff()
    return f if lc == 1 else f.scale(1 / qq(lc))


def _autoreduce(polys: Sequence[MultiPoly]) -> list:
    """Inter-reduce to the unique reduced (monic) basis of the same ideal."""
    basis = [p for p in polys if not p.is_zero]
    changed = True
    while changed:
        changed = False
        basis.sort(key=lambda p: p.ctx.sort_key(p.leading_monomial()))
        for i in range(len(basis)):
            others = basis[:i] + basis[i + 1:]
            if not others:
                continue
            r = remainder(basis[i], others)
            if r != basis[i]:
                changed = True
                if r.is_zero:
                    del basis[i]
                else:
                    basis[i] = r
                break
    basis = [_monic(p) for p in basis]
    basis.sort(key=lambda p: p.ctx.sort_key(p.leading_monomial()), reverse=True)
    return basis


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def buchberger(generators: Sequence[MultiPoly]) -> GroebnerBasis:
    """Reduced Groebner basis via Buchberger with the standard criteria.

    Pair selection is the normal strategy (smallest lcm degree first) with
    index tie-breaks, so the run is deterministic; the final auto-reduction
    makes the output canonical for the ideal anyway.
    """
    gens = [g for g in generators if not g.is_zero]
    if not gens:
        raise ValueError("no nonzero generators")
    ctx = gens[0].ctx
    G = [_monic(g) for g in gens]
    lms = [g.leading_monomial() for g in G]

    def lcm_of(i, j):
        return tuple(max(a, b) for a, b in zip(lms[i], lms[j]))

    pairs = []
    pending = set()

    def push(i, j):
        lcm = lcm_of(i, j)
        heapq.heappush(pairs, (sum(lcm), ctx.sort_key(lcm), i, j))
        pending.add((i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        lcm = lcm_of(i, j)
        # coprime criterion
        if all(a + b == c for a, b, c in zip(lms[i], lms[j], lcm)):
            continue
        # chain criterion: some k with LM_k | lcm and both pairs done
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not _divides(lms[k], lcm):
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik not in pending and pjk not in pending:
                skip = True
                break
        if skip:
            continue
        r = remainder(s_polynomial(G[i], G[j]), G)
        if r.is_zero:
            continue
        G.append(_monic(r))
        lms.append(G[-1].leading_monomial())
        for k in range(len(G) - 1):
            push(k, len(G) - 1)

    reduced = _autoreduce(G)
    return GroebnerBasis(tuple(reduced), MonomialOrder(ctx.precedence), reduced=True)


def normal_form(f: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Unique fully reduced remainder of f modulo the ideal of gb."""
    if not gb.reduced:
        raise ValueError("normal form requires a reduced Groebner basis")
    return remainder(f, gb.basis)


def vieta_generators(shape: EquationShape, binding: CoefficientBinding,
                     ctx: Optional[VarContext] = None) -> list:
    """The m generators of the Vieta ideal relating roots to coefficients.

    For d = m - m_j the generator is S_d - (-1)^d * a_j (value substituted
    in numeric mode); for the remaining d in 1..m-1 it is S_d alone; the
    last one is S_m - (-1)^m * x.
    """
    if ctx is None:
        ctx = full_context(shape, binding)
    m = shape.m
    roots = [f"s{i}" for i in range(1, m + 1)]
    by_degree = {m - e: entry for e, entry in zip(shape.exps, binding.entries)}
    gens = []
    for d in range(1, m + 1):
        g = elementary_symmetric(ctx, d, roots)
        if d == m:
            g = g - MultiPoly.variable(ctx, "x").scale((-1) ** m)
        elif d in by_degree:
            entry = by_degree[d]
            if isinstance(entry, str):
                g = g - MultiPoly.variable(ctx, entry).scale((-1) ** d)
            else:
                g = g - MultiPoly.const(ctx, entry * (-1) ** d)
        gens.append(g)
    return gens


def cauchy_triangular(shape: EquationShape, binding: CoefficientBinding,
                      ctx: Optional[VarContext] = None) -> list:
    """Divided-difference triangular basis C_1..C_m of the Vieta ideal.

    C_1(s_1) is the defining polynomial; C_i substitutes s_i for s_{i-1}
    in C_{i-1} and divides the difference by (s_{i-1} - s_i), exactly.
    Leading monomials are s_i^(m-i+1), pairwise coprime.
    """
    if ctx is None:
        ctx = full_context(shape, binding)
    m = shape.m
    cs = [defining_poly(ctx, shape, binding, "s1")]
    for i in range(2, m + 1):
        prev = cs[-1]
        lo, hi = ctx.index(f"s{i - 1}"), ctx.index(f"s{i}")
        swapped = {}
        for mono, c in prev.terms.items():
            mm = list(mono)
            mm[lo], mm[hi] = mm[hi], mm[lo]
            swapped[tuple(mm)] = c
        shifted = MultiPoly(ctx, swapped)
        denom = MultiPoly.variable(ctx, f"s{i - 1}") - MultiPoly.variable(ctx, f"s{i}")
        quot = exact_divide(prev - shifted, denom)
        if quot is None:
            raise AssertionError("divided difference was not exact")
        cs.append(quot)
    return cs


def cauchy_groebner(shape: EquationShape, binding: CoefficientBinding,
                    ctx: Optional[VarContext] = None) -> GroebnerBasis:
    """The Cauchy triangular set packaged as the reduced basis it is."""
    if ctx is None:
        ctx = full_context(shape, binding)
    cs = cauchy_triangular(shape, binding, ctx)
    for i, c in enumerate(cs, start=1):
        lm = c.leading_monomial()
        expected = [0] * len(ctx)
        expected[ctx.index(f"s{i}")] = shape.m - i + 1
        if list(lm) != expected or c.terms[lm] != 1:
            raise AssertionError("triangular set lost its leading structure")
    ordered = sorted(cs, key=lambda p: ctx.sort_key(p.leading_monomial()), reverse=True)
    return GroebnerBasis(tuple(ordered), MonomialOrder(ctx.precedence), reduced=True)
