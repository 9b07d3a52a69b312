"""Classical Coxeter root systems and the reflection action on polynomials.

Roots are stored unnormalised with their squared norms cached.  Type A_n lives
in n + 1 ambient coordinates z_1..z_{n+1}; the reflection representation is the
hyperplane sum(z) = 0, and polynomials on it are represented by translation
invariant polynomials in the ambient coordinates.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .field import mpq
from .linalg import PolySpan
from .poly import MultiPoly

__all__ = [
    "RootSystem",
    "GroupElement",
    "build_root_system",
    "parse_group",
    "reflection_matrix",
    "reflect_poly",
    "is_invariant",
    "module_span",
    "restrict_to_hyperplane",
]

Vector = tuple


def _unit(n: int, i: int, sign: int = 1) -> Vector:
    v = [mpq(0)] * n
    v[i] = mpq(sign)
    return tuple(v)


def _add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), mpq(0))


@dataclass(frozen=True, eq=False)
class RootSystem:
    cartan_type: str
    rank: int
    ambient_dim: int
    roots: tuple[Vector, ...]
    norms: tuple
    degrees: tuple[int, ...]
    simple_roots: tuple[Vector, ...]
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index.update({r: k for k, r in enumerate(self.roots)})

    @property
    def name(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    @property
    def n(self) -> int:
        return self.rank

    @property
    def h(self) -> int:
        return self.degrees[0]

    @property
    def coxeter_number(self) -> int:
        return self.degrees[0]

    def __eq__(self, other):
        return isinstance(other, RootSystem) and (self.cartan_type, self.rank) == (
            other.cartan_type,
            other.rank,
        )

    def __hash__(self):
        return hash((self.cartan_type, self.rank))

    def __repr__(self) -> str:
        return f"RootSystem({self.name}, |R+|={len(self.roots)}, degrees={list(self.degrees)})"

    def root_index(self, gamma: Sequence) -> int:
        key = tuple(mpq(g) for g in gamma)
        if key not in self._index:
            raise ValueError(f"{list(gamma)} is not a positive root of {self.name}")
        return self._index[key]

    def norm(self, gamma: Sequence):
        return self.norms[self.root_index(gamma)]

    @cached_property
    def reflections(self) -> tuple:
        return tuple(reflection_matrix(g) for g in self.roots)

    @cached_property
    def simple_reflections(self) -> tuple:
        return tuple(reflection_matrix(g) for g in self.simple_roots)

    def is_type_a(self) -> bool:
        return self.cartan_type == "A"

    def descriptor(self) -> dict:
        from .field import format_rational

        return {
            "group": self.name,
            "type": self.cartan_type,
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "roots": [[format_rational(a) for a in r] for r in self.roots],
            "norms": [format_rational(x) for x in self.norms],
            "degrees": list(self.degrees),
            "h": self.h,
        }


def build_root_system(cartan_type: str, rank: int) -> RootSystem:
    """Positive roots, degrees and simple roots for A_n, B_n or D_n."""
    t = cartan_type.upper()
    n = int(rank)
    if n < 1:
        raise ValueError("rank must be at least 1")
    if t == "A":
        dim = n + 1
        roots = [_sub(_unit(dim, i), _unit(dim, j)) for i in range(dim) for j in range(i + 1, dim)]
        degrees = list(range(n + 1, 1, -1))
        simple = [_sub(_unit(dim, i), _unit(dim, i + 1)) for i in range(n)]
    elif t == "B":
        dim = n
        roots = []
        for i in range(n):
            for j in range(i + 1, n):
                roots.append(_sub(_unit(n, i), _unit(n, j)))
                roots.append(_add(_unit(n, i), _unit(n, j)))
        roots += [_unit(n, i) for i in range(n)]
        degrees = list(range(2 * n, 0, -2))
        simple = [_sub(_unit(n, i), _unit(n, i + 1)) for i in range(n - 1)] + [_unit(n, n - 1)]
    elif t == "D":
        if n < 2:
            raise ValueError("D_n requires n >= 2")
        dim = n
        roots = []
        for i in range(n):
            for j in range(i + 1, n):
                roots.append(_sub(_unit(n, i), _unit(n, j)))
                roots.append(_add(_unit(n, i), _unit(n, j)))
        degrees = sorted(list(range(2 * n - 2, 0, -2)) + [n], reverse=True)
        simple = [_sub(_unit(n, i), _unit(n, i + 1)) for i in range(n - 1)]
        simple.append(_add(_unit(n, n - 2), _unit(n, n - 1)))
    else:
        raise ValueError(f"unsupported Coxeter type {cartan_type!r}")
    roots = tuple(roots)
    return RootSystem(
        cartan_type=t,
        rank=n,
        ambient_dim=dim,
        roots=roots,
        norms=tuple(dot(r, r) for r in roots),
        degrees=tuple(degrees),
        simple_roots=tuple(simple),
    )


_GROUP_RE = re.compile(r"^\s*([ABDabd])\s*_?\s*(\d+)\s*$")


def parse_group(spec: str) -> RootSystem:
    """``"B4"`` -> B_4 root system."""
    match = _GROUP_RE.match(spec)
    if match is None:
        raise ValueError(f"cannot parse group specification {spec!r} (expected e.g. A3, B4, D4)")
    return build_root_system(match.group(1), int(match.group(2)))


def reflection_matrix(gamma: Sequence) -> list[list]:
    """Matrix of v -> v - 2 (gamma, v) / (gamma, gamma) gamma."""
    n = len(gamma)
    nn = dot(gamma, gamma)
    return [
        [(mpq(1) if i == j else mpq(0)) - 2 * gamma[i] * gamma[j] / nn for j in range(n)]
        for i in range(n)
    ]


def reflect_poly(rs: RootSystem, gamma: Sequence, p: MultiPoly) -> MultiPoly:
    """p(s_gamma x) for a positive root gamma of ``rs``."""
    k = rs.root_index(gamma)
    return p.substitute_linear(rs.reflections[k])


def is_invariant(rs: RootSystem, p: MultiPoly) -> bool:
    """Fixed by every simple reflection, hence by W."""
    return all(p.substitute_linear(S) == p for S in rs.simple_reflections)


def module_span(rs: RootSystem, p: MultiPoly) -> list[MultiPoly]:
    """Basis of span{w p : w in W}, by closure under simple reflections."""
    span = PolySpan(p.nvars)
    frontier = [p] if span.add(p) else []
    while frontier:
        nxt = []
        for f in frontier:
            for S in rs.simple_reflections:
                g = f.substitute_linear(S)
                if span.add(g):
                    nxt.append(g)
        frontier = nxt
    return span.basis()


def restrict_to_hyperplane(p: MultiPoly) -> MultiPoly:
    """Substitute z_{n+1} = -(z_1 + ... + z_n); the result has one variable fewer."""
    dim = p.nvars
    A = [[mpq(1) if i == j else mpq(0) for j in range(dim - 1)] for i in range(dim - 1)]
    A.append([mpq(-1)] * (dim - 1))
    return p.substitute_linear(A)


@dataclass(frozen=True)
class GroupElement:
    """An orthogonal matrix acting on polynomials by p -> p(A x)."""

    matrix: tuple

    @classmethod
    def identity(cls, dim: int) -> "GroupElement":
        return cls(tuple(tuple(mpq(int(i == j)) for j in range(dim)) for i in range(dim)))

    @classmethod
    def from_word(cls, rs: RootSystem, word: Sequence[int]) -> "GroupElement":
        """Product of simple reflections s_{word[0]} s_{word[1]} ..."""
        g = cls.identity(rs.ambient_dim)
        for k in word:
            g = g * cls(tuple(tuple(r) for r in rs.simple_reflections[k]))
        return g

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        A, B = self.matrix, other.matrix
        n = len(A)
        return GroupElement(
            tuple(tuple(sum((A[i][k] * B[k][j] for k in range(n)), mpq(0)) for j in range(n)) for i in range(n))
        )

    def is_orthogonal(self) -> bool:
        A = self.matrix
        n = len(A)
        return all(
            sum((A[k][i] * A[k][j] for k in range(n)), mpq(0)) == int(i == j) for i in range(n) for j in range(n)
        )

    def act(self, p: MultiPoly) -> MultiPoly:
        return p.substitute_linear(self.matrix)
