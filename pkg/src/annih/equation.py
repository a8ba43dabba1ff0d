"""Equation shapes, coefficient bindings and the variable contexts they span.

The input class is  y^m + a_1*y^{m_1} + ... + a_n*y^{m_n} + x = 0  with a
monic leading term, strictly decreasing secondary exponents and a bare x.
Coefficients are either symbolic names or exact rational values.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass, field
from math import gcd
from typing import Union

from .multipoly import QQ, MultiPoly, VarContext, qq

_RESERVED = re.compile(r"^(x|y|s_?\d+)$")

SYMBOLIC = "symbolic"
NUMERIC = "numeric"
MIXED = "mixed"


@dataclass(frozen=True)
class EquationShape:
    """Exponent data (m; m_1 > m_2 > ... > m_n >= 1) of the equation."""

    m: int
    exps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(int(e) for e in self.exps))
        if self.m < 2:
            raise ValueError(f"leading exponent must be >= 2, got {self.m}")
        prev = self.m
        for e in self.exps:
            if not 0 < e < self.m:
                raise ValueError(f"secondary exponent {e} outside (0, {self.m})")
            if e >= prev:
                raise ValueError("secondary exponents must be strictly decreasing")
            prev = e

    @property
    def n(self) -> int:
        return len(self.exps)

    def exponent_gcd(self) -> int:
        g = self.m
        for e in self.exps:
            g = gcd(g, e)
        return g


Entry = Union[str, QQ]


@dataclass(frozen=True)
class CoefficientBinding:
    """Per-coefficient binding: a symbolic name or an exact rational value."""

    entries: tuple = ()

    def __post_init__(self):
        norm = []
        names = []
        for e in self.entries:
            if isinstance(e, str):
                if _RESERVED.match(e):
                    raise ValueError(f"reserved identifier {e!r}")
                names.append(e)
                norm.append(e)
            else:
                norm.append(qq(e))
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate coefficient names in {names}")
        object.__setattr__(self, "entries", tuple(norm))

    @classmethod
    def symbolic(cls, names) -> "CoefficientBinding":
        return cls(tuple(names))

    @classmethod
    def numeric(cls, values) -> "CoefficientBinding":
        return cls(tuple(qq(v) for v in values))

    @classmethod
    def default_symbolic(cls, shape: EquationShape) -> "CoefficientBinding":
        if shape.n <= 8:
            return cls(tuple(string.ascii_lowercase[:shape.n]))
        return cls(tuple(f"a{j + 1}" for j in range(shape.n)))

    @property
    def mode(self) -> str:
        syms = sum(1 for e in self.entries if isinstance(e, str))
        if syms == len(self.entries):
            return SYMBOLIC
        if syms == 0:
            return NUMERIC
        return MIXED

    @property
    def symbolic_names(self) -> tuple:
        return tuple(e for e in self.entries if isinstance(e, str))

    def is_symbolic(self) -> bool:
        return all(isinstance(e, str) for e in self.entries)

    def is_numeric(self) -> bool:
        return not self.symbolic_names

    def numeric_values(self) -> tuple:
        if self.symbolic_names:
            raise ValueError("binding is not all-numeric")
        return self.entries


def _check_pair(shape: EquationShape, binding: CoefficientBinding) -> None:
    if len(binding.entries) != shape.n:
        raise ValueError(
            f"binding has {len(binding.entries)} entries for {shape.n} exponents"
        )


def s_names(shape: EquationShape) -> tuple:
    """Root variable names in precedence order: s_m > ... > s_1."""
    return tuple(f"s{i}" for i in range(shape.m, 0, -1))


def full_context(shape: EquationShape, binding: CoefficientBinding) -> VarContext:
    """Ring of Theorem-6 computations: s_m > ... > s_1 > a's > x."""
    _check_pair(shape, binding)
    return VarContext(s_names(shape) + binding.symbolic_names + ("x",))


def family_context(shape: EquationShape, binding: CoefficientBinding) -> VarContext:
    """Subring holding the reduced family: s_1 > a's > x."""
    _check_pair(shape, binding)
    return VarContext(("s1",) + binding.symbolic_names + ("x",))


def operator_context(binding: CoefficientBinding) -> VarContext:
    """Ring of the operator coefficients: a_1 > ... > a_n > x."""
    return VarContext(binding.symbolic_names + ("x",))


def curve_context(shape: EquationShape, binding: CoefficientBinding) -> VarContext:
    """Ring holding the defining polynomial itself: y > a's > x."""
    _check_pair(shape, binding)
    return VarContext(("y",) + binding.symbolic_names + ("x",))


def defining_poly(ctx: VarContext, shape: EquationShape,
                  binding: CoefficientBinding, main: str) -> MultiPoly:
    """main^m + a_1*main^{m_1} + ... + a_n*main^{m_n} + x over ctx."""
    _check_pair(shape, binding)
    p = MultiPoly.variable(ctx, main, shape.m) + MultiPoly.variable(ctx, "x")
    for exp, entry in zip(shape.exps, binding.entries):
        t = MultiPoly.variable(ctx, main, exp)
        if isinstance(entry, str):
            p = p + t * MultiPoly.variable(ctx, entry)
        else:
            p = p + t.scale(entry)
    return p


def equation_text(shape: EquationShape, binding: CoefficientBinding) -> str:
    """Canonical textual form, e.g. "y^5 + 2*y^4 - 3*y^3 + y^2 + 5*y + x"."""
    _check_pair(shape, binding)
    parts = [f"y^{shape.m}"]
    for exp, entry in zip(shape.exps, binding.entries):
        ytxt = "y" if exp == 1 else f"y^{exp}"
        if isinstance(entry, str):
            parts.append(f"+ {entry}*{ytxt}")
        else:
            sign = "+" if entry > 0 else "-"
            mag = entry if entry > 0 else -entry
            coeff = "" if mag == 1 else f"{mag}*"
            parts.append(f"{sign} {coeff}{ytxt}")
    parts.append("+ x")
    return " ".join(parts)
