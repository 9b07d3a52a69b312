"""Exact scalars: rationals and elements of simple algebraic extensions.

Rationals are ``gmpy2.mpq`` values (always reduced, positive denominator).
Extension elements live in Q[w]/(mu(w)) where mu is either ``x^2 - d`` for a
square-free integer d, or the l-th cyclotomic polynomial.  Both kinds mix
freely under ``+ - * /`` so a single polynomial engine serves every field.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

__all__ = [
    "mpq",
    "Q",
    "FieldContext",
    "ExtElement",
    "parse_rational",
    "format_rational",
    "as_rational",
    "is_rational",
    "generalized_binomial",
    "cyclotomic_polynomial",
]

Q = mpq

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> mpq:
    """Parse ``"p/q"`` or ``"p"`` into an exact rational.

    >>> parse_rational("6/4")
    mpq(3,2)
    """
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"malformed rational {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return mpq(num, den)


def format_rational(value) -> str:
    value = mpq(value)
    return f"{value.numerator}/{value.denominator}"


def as_rational(value) -> mpq:
    """Coerce ints, Fractions, strings and purely rational extension elements."""
    if isinstance(value, ExtElement):
        if not value.is_rational():
            raise ValueError(f"{value} is not rational")
        return value.coeffs[0]
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def is_rational(value) -> bool:
    if isinstance(value, ExtElement):
        return value.is_rational()
    return True


def generalized_binomial(nu, k: int) -> mpq:
    """nu (nu - 1) ... (nu - k + 1) / k!, equal to 1 for ``k == 0``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    nu = as_rational(nu)
    result = mpq(1)
    for j in range(k):
        result = result * (nu - j) / (j + 1)
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(ell: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_ell, lowest degree first."""
    if ell < 1:
        raise ValueError("ell must be positive")
    # x^ell - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (ell - 1) + [1]
    for d in range(1, ell):
        if ell % d == 0:
            num = _divide_int_poly(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _divide_int_poly(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        coef = num[k + len(den) - 1] // den[-1]
        out[k] = coef
        for j, d in enumerate(den):
            num[k + j] -= coef * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact cyclotomic division")
    return out


def _is_squarefree(d: int) -> bool:
    d = abs(d)
    if d < 2:
        return d == 1
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


class FieldContext:
    """A simple extension Q[w]/(mu).  Instances are interned by (kind, param)."""

    _registry: dict[tuple[str, int], "FieldContext"] = {}

    __slots__ = ("kind", "param", "modulus", "degree", "__weakref__")

    def __new__(cls, kind: str, param: int):
        key = (kind, int(param))
        ctx = cls._registry.get(key)
        if ctx is not None:
            return ctx
        if kind == "cyclotomic":
            if param < 2:
                raise ValueError("cyclotomic order must be >= 2")
            modulus = tuple(mpq(c) for c in cyclotomic_polynomial(param))
        elif kind == "Qsqrt":
            if param in (0, 1) or not _is_squarefree(param):
                raise ValueError(f"Qsqrt needs a square-free d != 0, 1; got {param}")
            modulus = (mpq(-param), mpq(0), mpq(1))
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        ctx = object.__new__(cls)
        ctx.kind = kind
        ctx.param = int(param)
        ctx.modulus = modulus
        ctx.degree = len(modulus) - 1
        cls._registry[key] = ctx
        return ctx

    @classmethod
    def cyclotomic(cls, ell: int) -> "FieldContext":
        return cls("cyclotomic", ell)

    @classmethod
    def quadratic(cls, d: int) -> "FieldContext":
        return cls("Qsqrt", d)

    def __reduce__(self):
        return (FieldContext, (self.kind, self.param))

    def __repr__(self) -> str:
        return f"FieldContext({self.kind!r}, {self.param})"

    def gen(self) -> "ExtElement":
        """The distinguished generator: w = exp(2 pi i / l) or sqrt(d)."""
        if self.degree == 1:
            # Phi_2 = x + 1, so the root is -1
            return ExtElement(self, (-self.modulus[0],))
        return ExtElement(self, (mpq(0), mpq(1)) + (mpq(0),) * (self.degree - 2))

    def root_power(self, k: int) -> "ExtElement":
        """w^k with k reduced modulo the cyclotomic order."""
        if self.kind != "cyclotomic":
            raise ValueError("root powers only make sense in cyclotomic fields")
        return self.gen() ** (k % self.param)

    def __call__(self, value) -> "ExtElement":
        if isinstance(value, ExtElement):
            if value.ctx is not self:
                raise ValueError("element belongs to a different field")
            return value
        return ExtElement(self, (as_rational(value),) + (mpq(0),) * (self.degree - 1))

    def from_coeffs(self, coeffs) -> "ExtElement":
        coeffs = [as_rational(c) for c in coeffs]
        return ExtElement(self, _reduce(coeffs, self.modulus))


def _reduce(coeffs: list, modulus: tuple) -> tuple:
    deg = len(modulus) - 1
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, deg - 1, -1):
        lead = coeffs[k]
        if lead:
            shift = k - deg
            for j in range(deg + 1):
                coeffs[shift + j] -= lead * modulus[j]
    coeffs = coeffs[:deg] + [mpq(0)] * (deg - len(coeffs))
    return tuple(coeffs)


class ExtElement:
    """Element of Q[w]/(mu), stored as its reduced coefficient vector."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def _coerce(self, other):
        if isinstance(other, ExtElement):
            if other.ctx is not self.ctx:
                raise ValueError(f"cannot mix {self.ctx} and {other.ctx}")
            return other.coeffs
        if isinstance(other, (int, mpq, Fraction)):
            other = as_rational(other)
            return (other,) + (mpq(0),) * (self.ctx.degree - 1)
        return None

    def __add__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return ExtElement(self.ctx, tuple(a + b for a, b in zip(self.coeffs, oc)))

    __radd__ = __add__

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return ExtElement(self.ctx, tuple(a - b for a, b in zip(self.coeffs, oc)))

    def __rsub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return ExtElement(self.ctx, tuple(b - a for a, b in zip(self.coeffs, oc)))

    def __neg__(self):
        return ExtElement(self.ctx, tuple(-a for a in self.coeffs))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, ExtElement):
            oc = self._coerce(other)
            prod = [mpq(0)] * (2 * self.ctx.degree - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(oc):
                        if b:
                            prod[i + j] += a * b
            return ExtElement(self.ctx, _reduce(prod, self.ctx.modulus))
        if isinstance(other, (int, mpq, Fraction)):
            other = as_rational(other)
            return ExtElement(self.ctx, tuple(a * other for a in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "ExtElement":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return self.ctx(1 / self.coeffs[0])
        # solve (self * x) = 1 through the multiplication matrix
        deg = self.ctx.degree
        basis = [self.ctx.from_coeffs([0] * k + [1]) for k in range(deg)]
        cols = [(self * b).coeffs for b in basis]
        rows = [[cols[j][i] for j in range(deg)] + [mpq(1 if i == 0 else 0)] for i in range(deg)]
        for col in range(deg):
            piv = next(r for r in range(col, deg) if rows[r][col])
            rows[col], rows[piv] = rows[piv], rows[col]
            inv = 1 / rows[col][col]
            rows[col] = [v * inv for v in rows[col]]
            for r in range(deg):
                if r != col and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
        return ExtElement(self.ctx, tuple(rows[i][deg] for i in range(deg)))

    def __truediv__(self, other):
        if isinstance(other, ExtElement):
            return self * other.inverse()
        if isinstance(other, (int, mpq, Fraction)):
            return self * (1 / as_rational(other))
        return NotImplemented

    def __rtruediv__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return ExtElement(self.ctx, oc) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, ExtElement):
            return other.ctx is self.ctx and self.coeffs == other.coeffs
        if isinstance(other, (int, mpq, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.ctx.kind, self.ctx.param, self.coeffs))

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        g = f"sqrt({self.ctx.param})" if self.ctx.kind == "Qsqrt" else "w"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else g if k == 1 else f"{g}^{k}"
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        text = " + ".join(parts).replace("+ -", "- ")
        return text if len(parts) == 1 else f"({text})"

    def __repr__(self) -> str:
        return f"ExtElement({self.ctx!r}, {self})"
