"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are arbitrary-precision rationals: gmpy2.mpq when available
(much faster), fractions.Fraction otherwise.  Both are always stored in
lowest terms with a positive denominator, and zero coefficients are never
stored.  Polynomials are immutable once constructed; all operations return
new objects, so values can be shared freely between threads.

Monomials are plain tuples of non-negative ints, one slot per variable of
the owning VarContext.  Lexicographic comparisons follow the context's
precedence permutation; contexts built in precedence order compare tuples
directly.
"""

from __future__ import annotations

import heapq
from math import comb  # noqa: F401  (re-exported convenience for callers)
from operator import add as _add, sub as _sub
from typing import Iterable, Iterator, Optional, Sequence

try:
    from gmpy2 import mpq as QQ
    from gmpy2 import gcd as _gmp_gcd

    def _int_gcd(a: int, b: int) -> int:
        return int(_gmp_gcd(a, b))
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as QQ
    from math import gcd as _int_gcd

QQ_ZERO = QQ(0)
QQ_ONE = QQ(1)


def qq(value) -> QQ:
    """Coerce an int, str ("num/den"), Fraction or QQ to the QQ backend."""
    if type(value) is type(QQ_ZERO):
        return value
    return QQ(value)


def _canon_coeff(c):
    """Keep integer-valued coefficients as plain ints (faster arithmetic).

    ints and QQ interoperate transparently; the only rule elsewhere is to
    route true division through qq() so int/int never happens.
    """
    if isinstance(c, int):
        return c
    q = qq(c)
    return int(q) if q.denominator == 1 else q


class ContextMismatch(ValueError):
    """Raised when two polynomials over different variable contexts meet."""


class VarContext:
    """An ordered list of distinct variable names with a lex precedence.

    precedence is a permutation of the names; the first name is the most
    significant in lex comparisons.  By default the listed order is the
    precedence, which is the fast path used throughout the pipeline.
    """

    __slots__ = ("names", "precedence", "_index", "_perm", "_identity")

    def __init__(self, names: Iterable[str], precedence: Optional[Iterable[str]] = None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names: {self.names}")
        self.precedence = tuple(precedence) if precedence is not None else self.names
        if sorted(self.precedence) != sorted(self.names):
            raise ValueError("precedence must be a permutation of the variable names")
        self._index = {n: i for i, n in enumerate(self.names)}
        self._perm = tuple(self._index[n] for n in self.precedence)
        self._identity = self._perm == tuple(range(len(self.names)))

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VarContext)
            and self.names == other.names
            and self.precedence == other.precedence
        )

    def __hash__(self) -> int:
        return hash((self.names, self.precedence))

    def __repr__(self) -> str:
        return f"VarContext({', '.join(self.names)})"

    def index(self, name: str) -> int:
        return self._index[name]

    def sort_key(self, mono: tuple):
        """Key whose natural tuple order is the context's lex order."""
        if self._identity:
            return mono
        perm = self._perm
        return tuple(mono[i] for i in perm)

    def heap_key(self, mono: tuple):
        """Negated sort key: a min-heap on this pops the lex-largest first."""
        if self._identity:
            return tuple(-e for e in mono)
        perm = self._perm
        return tuple(-mono[i] for i in perm)


def _check_ctx(f: "MultiPoly", g: "MultiPoly") -> None:
    if f.ctx != g.ctx:
        raise ContextMismatch(f"{f.ctx!r} vs {g.ctx!r}")


def _pack(mono: tuple, bits: int) -> int:
    """Pack an exponent tuple into one int, first variable most significant.

    With the context in precedence order, integer comparison of packed
    monomials is exactly the lex comparison.
    """
    acc = 0
    for e in mono:
        acc = (acc << bits) | e
    return acc


def _unpack(code: int, bits: int, nvars: int) -> tuple:
    mask = (1 << bits) - 1
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = code & mask
        code >>= bits
    return tuple(out)


class MultiPoly:
    """Sparse polynomial: dict from exponent tuple to nonzero rational."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VarContext, terms=None):
        self.ctx = ctx
        if terms is None:
            self.terms = {}
        else:
            self.terms = {m: _canon_coeff(c) for m, c in dict(terms).items() if c}

    @staticmethod
    def _make(ctx: VarContext, terms: dict) -> "MultiPoly":
        # internal: takes ownership of `terms`, assumed canonical
        p = MultiPoly.__new__(MultiPoly)
        p.ctx = ctx
        p.terms = terms
        return p

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, ctx: VarContext) -> "MultiPoly":
        return cls._make(ctx, {})

    @classmethod
    def const(cls, ctx: VarContext, value) -> "MultiPoly":
        value = qq(value)
        if not value:
            return cls._make(ctx, {})
        return cls._make(ctx, {(0,) * len(ctx): value})

    @classmethod
    def variable(cls, ctx: VarContext, name: str, power: int = 1) -> "MultiPoly":
        mono = [0] * len(ctx)
        mono[ctx.index(name)] = power
        return cls._make(ctx, {tuple(mono): QQ_ONE})

    @classmethod
    def monomial(cls, ctx: VarContext, coeff, exps: Sequence[int]) -> "MultiPoly":
        coeff = qq(coeff)
        if not coeff:
            return cls._make(ctx, {})
        mono = tuple(exps)
        if len(mono) != len(ctx):
            raise ValueError("exponent vector length does not match context")
        return cls._make(ctx, {mono: coeff})

    # ------------------------------------------------------------------
    # predicates / views

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> QQ:
        if not self.terms:
            return QQ_ZERO
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def used_vars(self) -> tuple:
        used = [False] * len(self.ctx)
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used[i] = True
        return tuple(n for i, n in enumerate(self.ctx.names) if used[i])

    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        if self.ctx._identity:
            return max(self.terms)
        key = self.ctx.sort_key
        return max(self.terms, key=key)

    def leading_coeff(self) -> QQ:
        return self.terms[self.leading_monomial()]

    def terms_sorted(self, reverse: bool = True):
        key = self.ctx.sort_key
        if self.ctx._identity:
            return sorted(self.terms.items(), reverse=reverse)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=reverse)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.ctx.index(name)
        return max(m[i] for m in self.terms)

    # ------------------------------------------------------------------
    # arithmetic

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._make(self.ctx, {m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self + MultiPoly.const(self.ctx, other)
        _check_ctx(self, other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MultiPoly._make(self.ctx, out)

    def __sub__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self - MultiPoly.const(self.ctx, other)
        _check_ctx(self, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = -c
            else:
                v = v - c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MultiPoly._make(self.ctx, out)

    def scale(self, coeff) -> "MultiPoly":
        if not isinstance(coeff, int):
            coeff = _canon_coeff(coeff)
        if not coeff:
            return MultiPoly._make(self.ctx, {})
        if coeff == 1:
            return self
        return MultiPoly._make(self.ctx, {m: c * coeff for m, c in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        _check_ctx(self, other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        if not a:
            return MultiPoly._make(self.ctx, {})
        out: dict = {}
        get = out.get
        if len(a) * len(b) > 64:
            # pack exponents into one int per monomial: field-wise addition
            # becomes a single integer addition and dict keys hash faster.
            amax = max(max(m) for m in a)
            bmax = max(max(m) for m in b)
            bits = (amax + bmax).bit_length() + 1
            apack = [(_pack(m, bits), c) for m, c in a.items()]
            bpack = [(_pack(m, bits), c) for m, c in b.items()]
            for pa, ca in apack:
                for pb, cb in bpack:
                    k = pa + pb
                    v = get(k)
                    if v is None:
                        out[k] = ca * cb
                    else:
                        v = v + ca * cb
                        if v:
                            out[k] = v
                        else:
                            del out[k]
            n = len(self.ctx)
            return MultiPoly._make(
                self.ctx, {_unpack(k, bits, n): v for k, v in out.items()}
            )
        bitems = list(b.items())
        for ma, ca in a.items():
            for mb, cb in bitems:
                m = tuple(map(_add, ma, mb))
                v = get(m)
                if v is None:
                    out[m] = ca * cb
                else:
                    v = v + ca * cb
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return MultiPoly._make(self.ctx, out)

    def __rmul__(self, other) -> "MultiPoly":
        return self.scale(other)

    def mul_term(self, coeff, mono: tuple) -> "MultiPoly":
        """Multiply by a single term coeff * X^mono."""
        if not isinstance(coeff, int):
            coeff = _canon_coeff(coeff)
        if not coeff:
            return MultiPoly._make(self.ctx, {})
        return MultiPoly._make(
            self.ctx,
            {tuple(map(_add, m, mono)): c * coeff for m, c in self.terms.items()},
        )

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def derivative(self, name: str) -> "MultiPoly":
        i = self.ctx.index(name)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                key = tuple(mm)
                v = out.get(key)
                nv = c * e if v is None else v + c * e
                if nv:
                    out[key] = nv
                elif v is not None:
                    del out[key]
        return MultiPoly._make(self.ctx, out)

    # ------------------------------------------------------------------
    # structural helpers

    def in_context(self, ctx: VarContext) -> "MultiPoly":
        """Re-express over another context; dropped vars must be unused."""
        if ctx == self.ctx:
            return self
        pos = []
        for name in self.ctx.names:
            pos.append(ctx._index.get(name, -1))
        width = len(ctx)
        out = {}
        for m, c in self.terms.items():
            mono = [0] * width
            for i, e in enumerate(m):
                if not e:
                    continue
                j = pos[i]
                if j < 0:
                    raise ContextMismatch(
                        f"variable {self.ctx.names[i]!r} not present in target context"
                    )
                mono[j] = e
            out[tuple(mono)] = c
        return MultiPoly._make(ctx, out)

    def coeff_in_var(self, name: str) -> dict:
        """Split into {power: coefficient-poly} w.r.t. one variable.

        Coefficient polynomials stay in the same context with that
        variable's exponent zeroed.
        """
        i = self.ctx.index(name)
        buckets: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            mm = list(m)
            mm[i] = 0
            buckets.setdefault(e, {})[tuple(mm)] = c
        return {e: MultiPoly._make(self.ctx, t) for e, t in buckets.items()}

    def substitute(self, assignment: dict) -> "MultiPoly":
        """Substitute exact rational values for some variables."""
        idx = {self.ctx.index(n): _canon_coeff(v) for n, v in assignment.items()}
        out: dict = {}
        for m, c in self.terms.items():
            coeff = c
            mm = list(m)
            for i, v in idx.items():
                e = m[i]
                if e:
                    coeff = coeff * v**e
                    mm[i] = 0
            key = tuple(mm)
            if not coeff:
                continue
            prev = out.get(key)
            nv = coeff if prev is None else prev + coeff
            if nv:
                out[key] = nv
            elif prev is not None:
                del out[key]
        return MultiPoly._make(self.ctx, out)

    def evaluate(self, assignment: dict):
        """Evaluate with values from any commutative ring (QQ, mpc, ...).

        All used variables must be assigned.  Coefficients are applied via
        their integer numerator/denominator so mixed QQ / mpmath values work.
        """
        values = [assignment.get(n) for n in self.ctx.names]
        ring_one = QQ_ONE
        for v in assignment.values():
            ring_one = v**0
            break
        total = 0
        for m, c in self.terms.items():
            val = ring_one
            for i, e in enumerate(m):
                if not e:
                    continue
                v = values[i]
                if v is None:
                    raise ValueError(f"no value for variable {self.ctx.names[i]!r}")
                val = val * v**e
            num = int(c.numerator)
            den = int(c.denominator)
            contrib = val * num
            if den != 1:
                contrib = contrib / den
            total = total + contrib
        return total

    # ------------------------------------------------------------------
    # text form

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for mono, coeff in self.terms_sorted():
            factors = [
                f"{n}^{e}" if e > 1 else n
                for n, e in zip(self.ctx.names, mono)
                if e
            ]
            mag = coeff if coeff > 0 else -coeff
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if not chunks:
                chunks.append(body if coeff > 0 else "-" + body)
            else:
                chunks.append((" + " if coeff > 0 else " - ") + body)
        return "".join(chunks)

    def __repr__(self) -> str:
        text = self.to_text()
        if len(text) > 120:
            text = text[:117] + "..."
        return f"<MultiPoly {text}>"


# ----------------------------------------------------------------------
# division


class _PackedOverflow(Exception):
    pass


def _divide(f: MultiPoly, divisors: Sequence[MultiPoly], want_quotients: bool,
            stop_on_remainder: bool = False):
    """Multivariate division: f = sum(q_i * d_i) + r, r irreducible.

    Divisors are tried in list order; this is the standard deterministic
    division algorithm.  Returns (quotients or None, remainder or None);
    remainder is None only when stop_on_remainder triggered.

    The hot path packs monomials into single ints (guard bit per field);
    if an intermediate exponent outgrows the chosen field width we fall
    back to the straightforward tuple implementation.
    """
    for d in divisors:
        if d.is_zero:
            raise ZeroDivisionError("zero polynomial among divisors")
        _check_ctx(f, d)
    if f.ctx._identity:
        try:
            return _divide_packed(f, divisors, want_quotients, stop_on_remainder)
        except _PackedOverflow:
            pass
    return _divide_tuples(f, divisors, want_quotients, stop_on_remainder)


def _divide_packed(f, divisors, want_quotients, stop_on_remainder):
    ctx = f.ctx
    nvars = len(ctx)
    maxe = 0
    for m in f.terms:
        for e in m:
            if e > maxe:
                maxe = e
    for d in divisors:
        for m in d.terms:
            for e in m:
                if e > maxe:
                    maxe = e
    bits = maxe.bit_length() + 3  # headroom; top bit of each field is a guard
    guard = 0
    for i in range(nvars):
        guard |= 1 << (i * bits + bits - 1)

    dinfo = []
    for d in divisors:
        lm = d.leading_monomial()
        lc = d.terms[lm]
        neg_lc = -lc if isinstance(lc, int) else None
        tail = [(_pack(m, bits), c) for m, c in d.terms.items() if m != lm]
        dinfo.append((_pack(lm, bits), lc, neg_lc, tail))

    work = {_pack(m, bits): c for m, c in f.terms.items()}
    heap = [-k for k in work]
    heapq.heapify(heap)
    in_heap = set(work)
    quotients = [dict() for _ in divisors] if want_quotients else None
    remainder: dict = {}

    while heap:
        mono = -heapq.heappop(heap)
        in_heap.discard(mono)
        c = work.get(mono)
        if not c:
            work.pop(mono, None)
            continue
        for i, (lmp, lc, neg_lc, tail) in enumerate(dinfo):
            qm = mono - lmp
            if qm < 0 or (qm & guard):
                continue
            if lc == 1:
                qc = c
            elif neg_lc == 1:
                qc = -c
            else:
                qc = qq(c) / qq(lc)
            if want_quotients:
                q = quotients[i]
                prev = q.get(qm)
                q[qm] = qc if prev is None else prev + qc
            del work[mono]
            for tm, tc in tail:
                m2 = qm + tm
                if m2 & guard:
                    raise _PackedOverflow
                v = work.get(m2)
                if v is None:
                    work[m2] = -qc * tc
                    if m2 not in in_heap:
                        heapq.heappush(heap, -m2)
                        in_heap.add(m2)
                else:
                    v = v - qc * tc
                    if v:
                        work[m2] = v
                    else:
                        del work[m2]
            break
        else:
            if stop_on_remainder:
                return None, None
            remainder[mono] = c
            del work[mono]

    quots = None
    if want_quotients:
        quots = [
            MultiPoly._make(
                ctx,
                {_unpack(k, bits, nvars): _canon_coeff(c) for k, c in q.items() if c},
            )
            for q in quotients
        ]
    rem = MultiPoly._make(
        ctx, {_unpack(k, bits, nvars): _canon_coeff(c) for k, c in remainder.items()}
    )
    return quots, rem


def _divide_tuples(f, divisors, want_quotients, stop_on_remainder):
    ctx = f.ctx
    heap_key = ctx.heap_key
    dinfo = []
    for d in divisors:
        lm = d.leading_monomial()
        lc = d.terms[lm]
        tail = [(m, c) for m, c in d.terms.items() if m != lm]
        dinfo.append((lm, lc, tail))

    work = dict(f.terms)
    heap = [heap_key(m) for m in work]
    heapq.heapify(heap)
    in_heap = set(work)
    quotients = [dict() for _ in divisors] if want_quotients else None
    remainder: dict = {}
    nvars = len(ctx)

    while heap:
        hk = heapq.heappop(heap)
        if ctx._identity:
            mono = tuple(-e for e in hk)
        else:
            mono_l = [0] * nvars
            for p, e in zip(ctx._perm, hk):
                mono_l[p] = -e
            mono = tuple(mono_l)
        in_heap.discard(mono)
        c = work.get(mono)
        if not c:
            work.pop(mono, None)
            continue
        for i, (lm, lc, tail) in enumerate(dinfo):
            ok = True
            for a, b in zip(mono, lm):
                if a < b:
                    ok = False
                    break
            if not ok:
                continue
            qm = tuple(map(_sub, mono, lm))
            qc = qq(c) / qq(lc)
            if want_quotients:
                q = quotients[i]
                prev = q.get(qm)
                q[qm] = qc if prev is None else prev + qc
            del work[mono]
            for tm, tc in tail:
                m2 = tuple(map(_add, qm, tm))
                v = work.get(m2)
                if v is None:
                    work[m2] = -qc * tc
                    if m2 not in in_heap:
                        heapq.heappush(heap, heap_key(m2))
                        in_heap.add(m2)
                else:
                    v = v - qc * tc
                    if v:
                        work[m2] = v
                    else:
                        del work[m2]
            break
        else:
            if stop_on_remainder:
                return None, None
            remainder[mono] = c
            del work[mono]

    quots = None
    if want_quotients:
        quots = [
            MultiPoly._make(ctx, {m: _canon_coeff(c) for m, c in q.items() if c})
            for q in quotients
        ]
    return quots, MultiPoly._make(ctx, {m: _canon_coeff(c) for m, c in remainder.items()})


def multivariate_division(f: MultiPoly, divisors: Sequence[MultiPoly]):
    """Divide f by an ordered list of divisors; returns (quotients, remainder)."""
    quots, rem = _divide(f, divisors, want_quotients=True)
    return quots, rem


def remainder(f: MultiPoly, divisors: Sequence[MultiPoly]) -> MultiPoly:
    """Remainder of the division algorithm (quotients discarded)."""
    _, rem = _divide(f, divisors, want_quotients=False)
    return rem


def exact_divide(f: MultiPoly, g: MultiPoly) -> Optional[MultiPoly]:
    """Return q with f == q*g, or None when g does not divide f exactly."""
    if g.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    _check_ctx(f, g)
    if f.is_zero:
        return MultiPoly.zero(f.ctx)
    quots, rem = _divide(f, [g], want_quotients=True, stop_on_remainder=True)
    if quots is None:
        return None
    return quots[0]


# ----------------------------------------------------------------------
# content, primitive parts, gcd


def rational_content(f: MultiPoly) -> QQ:
    """Positive rational c with f/c having coprime integer coefficients."""
    if f.is_zero:
        return QQ_ZERO
    num_gcd = 0
    den_lcm = 1
    for c in f.terms.values():
        n = c.numerator
        if n < 0:
            n = -n
        d = c.denominator
        if num_gcd != 1:
            num_gcd = _int_gcd(num_gcd, int(n))
        if d != 1:
            g = _int_gcd(den_lcm, int(d))
            den_lcm = den_lcm // g * int(d)
    return QQ(num_gcd, den_lcm)


def _sign_of(f: MultiPoly) -> int:
    return 1 if f.leading_coeff() > 0 else -1


def _intify(f: MultiPoly) -> MultiPoly:
    return MultiPoly._make(f.ctx, {m: _canon_coeff(c) for m, c in f.terms.items()})


def _normalize_primitive(f: MultiPoly) -> MultiPoly:
    """Integer-primitive form with positive leading coefficient."""
    if f.is_zero:
        return f
    c = rational_content(f)
    if _sign_of(f) < 0:
        c = -c
    return _intify(f.scale(1 / c))


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Primitive multivariate GCD, heuristic first, subresultant PRS fallback.

    The heuristic evaluates at a large integer, recurses, reconstructs the
    candidate from balanced base-xi digits and accepts only after exact
    trial divisions; on repeated failure the classical recursive
    subresultant PRS (with integer content extraction) takes over.  The
    result is integer-primitive with positive leading coefficient;
    rational contents of the inputs are ignored (handled by callers).
    """
    _check_ctx(f, g)
    if f.is_zero and g.is_zero:
        raise ZeroDivisionError("gcd of two zero polynomials")
    if f.is_zero:
        return _normalize_primitive(g)
    if g.is_zero:
        return _normalize_primitive(f)
    f = _normalize_primitive(f)
    g = _normalize_primitive(g)
    uf, ug = set(f.used_vars()), set(g.used_vars())
    shared = [n for n in f.ctx.precedence if n in uf and n in ug]
    if not shared:
        return MultiPoly.const(f.ctx, 1)
    try:
        return _normalize_primitive(_heu_gcd(f, g))
    except _HeuristicFailed:
        pass
    main = shared[0]
    cf, pf = _content_primitive_in(f, main)
    cg, pg = _content_primitive_in(g, main)
    cont = poly_gcd(cf, cg)
    part = _prs_gcd(pf, pg, main)
    return _normalize_primitive(cont * part)


class _HeuristicFailed(Exception):
    pass


def _max_abs_coeff(f: MultiPoly) -> int:
    best = 0
    for c in f.terms.values():
        v = int(c) if isinstance(c, int) else int(c.numerator)
        if v < 0:
            v = -v
        if v > best:
            best = v
    return best


def _int_content_split(f: MultiPoly):
    """(positive integer content, primitive part) of an integer poly."""
    c = rational_content(f)  # integer-valued for integer coefficients
    ci = int(c.numerator)
    if ci == 1:
        return 1, f
    return ci, _intify(f.scale(QQ(1, ci)))


def _heu_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """GCDHEU over integer coefficients, including the integer content.

    Evaluate one shared variable at a large integer, recurse, lift the
    result back through balanced base-xi digits and accept only after both
    trial divisions succeed.  Factors depending on the evaluated variable
    alone survive as integer contents of the evaluations, which is why the
    recursion carries contents along.
    """
    ctx = f.ctx
    cf, fp = _int_content_split(f)
    cg, gp = _int_content_split(g)
    c = _int_gcd(cf, cg)
    uf, ug = set(fp.used_vars()), set(gp.used_vars())
    shared = [n for n in ctx.precedence if n in uf and n in ug]
    if not shared:
        return MultiPoly.const(ctx, c)
    main = min(shared, key=lambda n: (max(fp.degree_in(n), gp.degree_in(n)), n))
    xi = 2 * min(_max_abs_coeff(fp), _max_abs_coeff(gp)) + 29
    for _ in range(6):
        fe = fp.substitute({main: xi})
        ge = gp.substitute({main: xi})
        if not fe.is_zero and not ge.is_zero:
            h = _heu_gcd(fe, ge)
            cand = _heu_reconstruct(h, main, xi)
            if not cand.is_zero:
                _, cand = _int_content_split(cand)
                if cand.is_constant():
                    return MultiPoly.const(ctx, c)
                if exact_divide(fp, cand) is not None and exact_divide(gp, cand) is not None:
                    return cand.scale(c)
        xi = xi * 73794 // 27011 + 17
    raise _HeuristicFailed


def _heu_reconstruct(h: MultiPoly, main: str, xi: int) -> MultiPoly:
    """Lift an integer evaluation back to a polynomial in `main`.

    Balanced base-xi digits become the coefficients of successive powers.
    """
    ctx = h.ctx
    vi = ctx.index(main)
    half = xi // 2
    out: dict = {}
    cur = h.terms
    power = 0
    while cur:
        nxt: dict = {}
        for m, c in cur.items():
            c = int(c)
            r = c % xi
            if r > half:
                r -= xi
            if r:
                mm = list(m)
                mm[vi] = power
                out[tuple(mm)] = r
            q = (c - r) // xi
            if q:
                nxt[m] = q
        cur = nxt
        power += 1
        if power > 10_000:
            raise _HeuristicFailed
    return MultiPoly._make(ctx, out)


def _content_primitive_in(f: MultiPoly, main: str):
    """Content (gcd of main-variable coefficients) and primitive part."""
    coeffs = list(f.coeff_in_var(main).values())
    cont = coeffs[0]
    for c in coeffs[1:]:
        if cont.is_constant():
            break
        cont = poly_gcd(cont, c)
    cont = _normalize_primitive(cont)
    if cont.is_constant() and cont.constant_value() == 1:
        return cont, f
    pp = exact_divide(f, cont)
    assert pp is not None
    return cont, pp


def _prs_gcd(A: MultiPoly, B: MultiPoly, main: str) -> MultiPoly:
    """Subresultant PRS gcd of polynomials primitive w.r.t. `main`."""
    ctx = A.ctx
    a = _dense_in(A, main)
    b = _dense_in(B, main)
    if len(a) - 1 < len(b) - 1:
        a, b = b, a
    one = MultiPoly.const(ctx, 1)
    g = one
    h = one
    while True:
        delta = (len(a) - 1) - (len(b) - 1)
        r = _pseudo_rem(a, b, ctx)
        if not r:
            result = _from_dense(b, main, ctx)
            _, pp = _content_primitive_in(result, main)
            return _normalize_primitive(pp)
        if len(r) == 1:
            return one
        a = b
        divisor = g * h**delta
        b = [exact_divide(c, divisor) for c in r]
        assert all(c is not None for c in b), "subresultant division failed"
        g = a[-1]
        if delta:
            num = g**delta
            if delta == 1:
                h = num
            else:
                hd = exact_divide(num, h ** (delta - 1))
                assert hd is not None
                h = hd


def _dense_in(f: MultiPoly, main: str):
    parts = f.coeff_in_var(main)
    deg = max(parts)
    zero = MultiPoly.zero(f.ctx)
    return [parts.get(i, zero) for i in range(deg + 1)]


def _from_dense(coeffs, main: str, ctx: VarContext) -> MultiPoly:
    i = ctx.index(main)
    out: dict = {}
    for e, c in enumerate(coeffs):
        for m, v in c.terms.items():
            mm = list(m)
            mm[i] += e
            out[tuple(mm)] = v
    return MultiPoly._make(ctx, out)


def _pseudo_rem(a, b, ctx: VarContext):
    """Pseudo remainder lc(b)^(deg a - deg b + 1) * a mod b, dense in main."""
    lb = b[-1]
    db = len(b) - 1
    r = list(a)
    e = (len(a) - 1) - db + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        new = [c * lb for c in r[:-1]]
        for i, bc in enumerate(b[:-1]):
            j = i + shift
            new[j] = new[j] - lr * bc
        while new and new[-1].is_zero:
            new.pop()
        r = new
        e -= 1
    if e > 0:
        scale = lb**e
        r = [c * scale for c in r]
    return r


def content_primitive(polys: Sequence[MultiPoly]):
    """Common content (rational scalar x polynomial GCD) and primitive parts.

    Returns (content, parts) with content positive-leading, parts[i] ==
    polys[i] / content exactly, and gcd(parts) == 1 up to sign.
    """
    polys = list(polys)
    nonzero = [p for p in polys if not p.is_zero]
    if not nonzero:
        raise ValueError("content of an all-zero family is undefined")
    ctx = nonzero[0].ctx
    gcd_poly = nonzero[0]
    for p in nonzero[1:]:
        if gcd_poly.is_constant():
            break
        gcd_poly = poly_gcd(gcd_poly, p)
    gcd_poly = _normalize_primitive(gcd_poly)

    scaled = []
    for p in polys:
        if p.is_zero:
            scaled.append(p)
        else:
            q = exact_divide(p, gcd_poly)
            assert q is not None
            scaled.append(q)
    rc = None
    for p in scaled:
        if p.is_zero:
            continue
        c = rational_content(p)
        rc = c if rc is None else _qq_gcd(rc, c)
    content = gcd_poly.scale(rc)
    parts = [_intify(p.scale(1 / rc)) for p in scaled]
    return content, parts


def _qq_gcd(a: QQ, b: QQ) -> QQ:
    num = _int_gcd(abs(int(a.numerator)), abs(int(b.numerator)))
    da, db = int(a.denominator), int(b.denominator)
    den = da // _int_gcd(da, db) * db
    return QQ(num, den)


def poly_lcm(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    if f.is_zero or g.is_zero:
        return MultiPoly.zero(f.ctx)
    q = exact_divide(f * g, poly_gcd(f, g))
    assert q is not None
    return _normalize_primitive(q)


# ----------------------------------------------------------------------
# symmetric polynomials and supports


def elementary_symmetric(ctx: VarContext, j: int, var_names: Sequence[str]) -> MultiPoly:
    """Elementary symmetric polynomial of order j in the given variables."""
    k = len(var_names)
    if j < 0 or j > k:
        raise ValueError(f"symmetric order {j} out of range for {k} variables")
    idx = [ctx.index(n) for n in var_names]
    width = len(ctx)
    zero_mono = (0,) * width
    # dp over variables: e[t] = elementary symmetric of order t so far
    e = [{zero_mono: QQ_ONE}] + [dict() for _ in range(j)]
    for i in idx:
        for t in range(j, 0, -1):
            if not e[t - 1]:
                continue
            dst = e[t]
            for m, c in e[t - 1].items():
                mm = list(m)
                mm[i] += 1
                key = tuple(mm)
                v = dst.get(key)
                dst[key] = c if v is None else v + c
    return MultiPoly._make(ctx, e[j])


def support(f: MultiPoly, var_names: Optional[Sequence[str]] = None):
    """Set of exponent vectors of f projected to the chosen variables."""
    if var_names is None:
        var_names = f.ctx.names
    idx = [f.ctx.index(n) for n in var_names]
    return {tuple(m[i] for i in idx) for m in f.terms}


def assemble_in_var(ctx: VarContext, name: str, parts: dict) -> MultiPoly:
    """Inverse of coeff_in_var: sum of parts[e] * name^e."""
    i = ctx.index(name)
    out: dict = {}
    for e, c in parts.items():
        for m, v in c.terms.items():
            mm = list(m)
            mm[i] += e
            key = tuple(mm)
            prev = out.get(key)
            nv = v if prev is None else prev + v
            if nv:
                out[key] = nv
            elif prev is not None:
                del out[key]
    return MultiPoly._make(ctx, out)
