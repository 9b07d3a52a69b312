"""Sparse multivariate polynomials with exact coefficients.

A polynomial in ``n`` variables is a dict mapping exponent tuples to nonzero
coefficients.  Coefficients are ``mpq`` rationals or :class:`ExtElement`
values; ``field`` records the extension (``None`` for Q) and is only metadata
used for serialization and for refusing to mix incompatible fields.

Variables are indexed from 0.  Monomials are ordered graded-lexicographically
with ``x0 > x1 > ...``; that order defines :meth:`MultiPoly.leading_term`.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping, Sequence

from .field import ExtElement, FieldContext, mpq

__all__ = ["MultiPoly", "PolyMatrix", "grlex_key", "monomials_of_degree"]

_BITS = 16
_MASK = (1 << _BITS) - 1


def grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree ``degree``, in descending grlex order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def _pack(exp: tuple[int, ...]) -> int:
    key = 0
    for e in exp:
        key = (key << _BITS) | e
    return key


def _unpack(key: int, nvars: int) -> tuple[int, ...]:
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & _MASK
        key >>= _BITS
    return tuple(out)


def _field_of(a, b):
    fa = getattr(a, "field", None)
    fb = getattr(b, "field", None)
    if fa is not None and fb is not None and fa is not fb:
        raise ValueError(f"cannot mix polynomials over {fa} and {fb}")
    return fa if fa is not None else fb


def _scalar_field(c):
    return c.ctx if isinstance(c, ExtElement) else None


class MultiPoly:
    """Immutable sparse polynomial.  Build with :meth:`var`, :meth:`const` etc."""

    __slots__ = ("nvars", "terms", "field")

    def __init__(self, nvars: int, terms: Mapping | None = None, field: FieldContext | None = None):
        self.nvars = nvars
        self.field = field
        clean = {}
        if terms:
            for exp, coef in terms.items():
                if coef:
                    exp = tuple(exp)
                    if len(exp) != nvars:
                        raise ValueError(f"exponent {exp} does not have {nvars} entries")
                    if isinstance(coef, int):
                        coef = mpq(coef)
                    clean[exp] = coef
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict, field) -> "MultiPoly":
        # caller guarantees canonical form
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p.field = field
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, field=None) -> "MultiPoly":
        return cls._raw(nvars, {}, field)

    @classmethod
    def const(cls, nvars: int, value, field=None) -> "MultiPoly":
        if isinstance(value, int):
            value = mpq(value)
        field = field or _scalar_field(value)
        return cls._raw(nvars, {(0,) * nvars: value} if value else {}, field)

    @classmethod
    def one(cls, nvars: int, field=None) -> "MultiPoly":
        return cls.const(nvars, 1, field)

    @classmethod
    def var(cls, nvars: int, i: int, field=None) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): mpq(1)}, field)

    @classmethod
    def gens(cls, nvars: int, field=None) -> list["MultiPoly"]:
        return [cls.var(nvars, i, field) for i in range(nvars)]

    @classmethod
    def linear_form(cls, coeffs: Sequence, field=None) -> "MultiPoly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                exp = [0] * n
                exp[i] = 1
                terms[tuple(exp)] = mpq(c) if isinstance(c, int) else c
        return cls._raw(n, terms, field)

    # -- queries ------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coefficient(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), mpq(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        return {sum(w * e for w, e in zip(weights, exp)) for exp in self.terms}

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        if weights is None:
            return len({sum(e) for e in self.terms}) <= 1
        return len(self.weighted_degrees(weights)) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, mpq(0))

    def leading_term(self):
        """(exponent, coefficient) of the grlex-largest monomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def monic(self) -> "MultiPoly":
        """Rescale so the grlex-leading coefficient is 1 (zero stays zero)."""
        if not self.terms:
            return self
        return self * (1 / self.leading_term()[1])

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        return _field_of(self, other)

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, mpq, ExtElement)):
            return MultiPoly.const(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        field = self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            v = terms.get(exp)
            if v is None:
                terms[exp] = c
            else:
                v = v + c
                if v:
                    terms[exp] = v
                else:
                    del terms[exp]
        return MultiPoly._raw(self.nvars, terms, field)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "MultiPoly":
        if not c:
            return MultiPoly.zero(self.nvars, self.field)
        if isinstance(c, int):
            c = mpq(c)
        field = self.field or _scalar_field(c)
        terms = {}
        for e, v in self.terms.items():
            v = v * c
            if v:
                terms[e] = v
        return MultiPoly._raw(self.nvars, terms, field)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            return self._mul_poly(other)
        if isinstance(other, (int, mpq, ExtElement)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, mpq, ExtElement)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, mpq, ExtElement)):
            return self.scale(1 / (mpq(other) if isinstance(other, int) else other))
        return NotImplemented

    def _mul_poly(self, other: "MultiPoly") -> "MultiPoly":
        field = self._check(other)
        if not self.terms or not other.terms:
            return MultiPoly.zero(self.nvars, field)
        a = [(_pack(e), c) for e, c in self.terms.items()]
        b = [(_pack(e), c) for e, c in other.terms.items()]
        if len(a) > len(b):
            a, b = b, a
        acc: dict[int, object] = {}
        get = acc.get
        for ka, ca in a:
            for kb, cb in b:
                k = ka + kb
                v = get(k)
                acc[k] = ca * cb if v is None else v + ca * cb
        n = self.nvars
        terms = {_unpack(k, n): v for k, v in acc.items() if v}
        return MultiPoly._raw(n, terms, field)

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.one(self.nvars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, mpq, ExtElement)):
            return self == MultiPoly.const(self.nvars, other)
        return NotImplemented

    __hash__ = None

    # -- calculus and substitutions -----------------------------------
    def derivative(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        terms = {}
        for exp, c in self.terms.items():
            e = exp[i]
            if e:
                new = exp[:i] + (e - 1,) + exp[i + 1 :]
                terms[new] = c * e
        return MultiPoly._raw(self.nvars, terms, self.field)

    def directional_derivative(self, direction: Sequence) -> "MultiPoly":
        out = MultiPoly.zero(self.nvars, self.field)
        for i, z in enumerate(direction):
            if z:
                out = out + self.derivative(i).scale(z)
        return out

    def gradient(self) -> list["MultiPoly"]:
        return [self.derivative(i) for i in range(self.nvars)]

    def substitute_linear(self, A: Sequence[Sequence]) -> "MultiPoly":
        """p(A x): variable ``i`` is replaced by ``sum_j A[i][j] x_j``.

        ``A`` has one row per variable of ``self``; its column count is the
        variable count of the result.
        """
        if len(A) != self.nvars:
            raise ValueError(f"matrix has {len(A)} rows, polynomial has {self.nvars} variables")
        ncols = len(A[0]) if A else 0
        if any(len(row) != ncols for row in A):
            raise ValueError("ragged substitution matrix")
        support = [[(j, a) for j, a in enumerate(row) if a] for row in A]
        if all(len(s) <= 1 for s in support):
            return self._monomial_substitution(support, ncols)
        forms = [MultiPoly.linear_form(row) for row in A]
        return self.compose(forms)

    def _monomial_substitution(self, support, ncols: int) -> "MultiPoly":
        field = self.field
        for s in support:
            for _, a in s:
                field = field or _scalar_field(a)
        acc: dict = {}
        for exp, c in self.terms.items():
            new = [0] * ncols
            coef = c
            dead = False
            for i, e in enumerate(exp):
                if not e:
                    continue
                if not support[i]:
                    dead = True
                    break
                j, a = support[i][0]
                new[j] += e
                if a != 1:
                    coef = coef * a**e
            if dead:
                continue
            key = tuple(new)
            v = acc.get(key)
            acc[key] = coef if v is None else v + coef
        return MultiPoly._raw(ncols, {e: v for e, v in acc.items() if v}, field)

    def compose(self, polys: Sequence["MultiPoly"]) -> "MultiPoly":
        """p(f_0, ..., f_{n-1}) for polynomials ``f_i`` sharing a variable count."""
        if len(polys) != self.nvars:
            raise ValueError(f"need {self.nvars} substitutions, got {len(polys)}")
        if not polys:
            raise ValueError("cannot compose a polynomial in zero variables")
        target = polys[0].nvars
        field = self.field
        for f in polys:
            if f.nvars != target:
                raise ValueError("substituted polynomials disagree on variable count")
            field = _field_of(MultiPoly._raw(0, {}, field), f)
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.one(target, field), 1: f} for f in polys]

        def power(i: int, e: int) -> MultiPoly:
            cache = powers[i]
            if e not in cache:
                half = power(i, e // 2)
                sq = half * half
                cache[e] = sq * polys[i] if e % 2 else sq
            return cache[e]

        # group by the exponent tail to share partial products
        acc: dict[int, object] = {}
        for exp, c in self.terms.items():
            term = None
            for i, e in enumerate(exp):
                if e:
                    term = power(i, e) if term is None else term * power(i, e)
            if term is None:
                term = powers[0][0]
            for e2, v in term.terms.items():
                k = _pack(e2)
                old = acc.get(k)
                acc[k] = v * c if old is None else old + v * c
        terms = {_unpack(k, target): v for k, v in acc.items() if v}
        return MultiPoly._raw(target, terms, field)

    def divide_by_linear_form(self, gamma: Sequence) -> "MultiPoly":
        """Exact quotient of ``self`` by ``sum_i gamma[i] x_i``.

        Raises ``ArithmeticError`` when the division leaves a remainder.
        """
        if len(gamma) != self.nvars:
            raise ValueError("linear form has the wrong number of coefficients")
        k = next((i for i, g in enumerate(gamma) if g), None)
        if k is None:
            raise ZeroDivisionError("division by the zero linear form")
        if not self.terms:
            return self
        inv = 1 / (mpq(gamma[k]) if isinstance(gamma[k], int) else gamma[k])
        others = [(i, g) for i, g in enumerate(gamma) if g and i != k]
        buckets: dict[int, dict] = defaultdict(dict)
        for exp, c in self.terms.items():
            buckets[exp[k]][exp] = c
        quotient: dict = {}
        for level in range(max(buckets), 0, -1):
            lower = buckets[level - 1]
            for exp, c in buckets.get(level, {}).items():
                if not c:
                    continue
                qexp = exp[:k] + (exp[k] - 1,) + exp[k + 1 :]
                qc = c * inv
                quotient[qexp] = qc
                for i, g in others:
                    texp = qexp[:i] + (qexp[i] + 1,) + qexp[i + 1 :]
                    old = lower.get(texp)
                    lower[texp] = -qc * g if old is None else old - qc * g
        if any(buckets.get(0, {}).values()):
            raise ArithmeticError("polynomial is not divisible by the linear form")
        field = self.field
        for g in gamma:
            field = field or _scalar_field(g)
        return MultiPoly._raw(self.nvars, {e: v for e, v in quotient.items() if v}, field)

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()}, self.field)

    def with_field(self, field: FieldContext | None) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, dict(self.terms), field)

    def evaluate(self, point: Sequence):
        total = mpq(0)
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def is_proportional_to(self, other: "MultiPoly") -> bool:
        """Nonzero scalar multiple test (both zero counts as proportional)."""
        if not self.terms or not other.terms:
            return not self.terms and not other.terms
        if self.terms.keys() != other.terms.keys():
            return False
        return self.monic() == other.monic()

    # -- printing -----------------------------------------------------
    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exp) if e
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_string()})"

    __str__ = to_string


class PolyMatrix:
    """Rectangular array of MultiPoly entries sharing one variable count."""

    def __init__(self, rows: Iterable[Iterable[MultiPoly]]):
        self.rows = [list(r) for r in rows]
        if not self.rows or not self.rows[0]:
            raise ValueError("empty matrix")
        ncols = len(self.rows[0])
        nvars = self.rows[0][0].nvars
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged PolyMatrix")
            for p in r:
                if p.nvars != nvars:
                    raise ValueError("PolyMatrix entries must share a variable count")
        self.nvars = nvars

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = MultiPoly.zero(self.nvars)
                for l in range(k):
                    acc = acc + self.rows[i][l] * other.rows[l][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(zip(*self.rows))

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(p) for p in r] for r in self.rows])

    def is_symmetric(self) -> bool:
        n, m = self.shape
        return n == m and all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    __hash__ = None

    def __repr__(self) -> str:
        return "PolyMatrix(" + repr(self.rows) + ")"
