"""Closed-form twisted periods and complex-group singular polynomials.

Every residue here is evaluated through its multinomial expansion: writing
prod_j (1 - u_j)^nu = sum_k prod_j binom(nu, k_j) (-u_j)^{k_j}, the residue
picks out a single total order |k| = K.  No fractional powers are ever formed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .field import ExtElement, FieldContext, as_rational, generalized_binomial, mpq
from .linalg import PolySpan
from .poly import MultiPoly

__all__ = [
    "compositions",
    "residue_twisted_period",
    "residue_parameter",
    "residue_degree",
    "ComplexGroupSpec",
    "complex_singular_family",
    "complex_dunkl_apply",
    "complex_dunkl_operator",
    "complex_dunkl_all",
    "sigma_action",
    "s_action",
    "complex_group_action_check",
]

RESIDUE_KINDS = ("A", "B", "D-infinity", "D-zero")


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` nonnegative integers."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def residue_parameter(kind: str, rank: int, s: int, m: int) -> mpq:
    """The twisted-period parameter nu of the residue polynomial."""
    n = rank
    if kind == "A":
        return mpq(s, n + 1) + m
    if kind == "B":
        return mpq(2 * s - 1, 2 * n) + m
    if kind == "D-infinity":
        return mpq(2 * s - 1, 2 * (n - 1)) + m
    if kind == "D-zero":
        return mpq(1, 2) + m
    raise ValueError(f"unknown residue kind {kind!r}")


def residue_degree(kind: str, rank: int, s: int, m: int) -> int:
    n = rank
    if kind == "A":
        return s + 1 + (n + 1) * m
    if kind == "B":
        return 2 * s + 2 * n * m
    if kind == "D-infinity":
        return 2 * s + 2 * (n - 1) * m
    if kind == "D-zero":
        return n * (2 * m + 1) - 2 * m
    raise ValueError(f"unknown residue kind {kind!r}")


def _check_range(kind: str, rank: int, s: int, m: int) -> None:
    if m < 0:
        raise ValueError("m must be nonnegative")
    if kind == "A" and not 1 <= s <= rank:
        raise ValueError(f"A_{rank} residue needs 1 <= s <= {rank}")
    if kind == "B" and not 1 <= s <= rank:
        raise ValueError(f"B_{rank} residue needs 1 <= s <= {rank}")
    if kind == "D-infinity":
        if rank < 2:
            raise ValueError("D_n residues need n >= 2")
        if not 1 <= s <= rank - 1:
            raise ValueError(f"D_{rank} residue at infinity needs 1 <= s <= {rank - 1}")
    if kind == "D-zero" and rank < 2:
        raise ValueError("D_n residues need n >= 2")
    if kind not in RESIDUE_KINDS:
        raise ValueError(f"unknown residue kind {kind!r}; expected one of {RESIDUE_KINDS}")


def residue_twisted_period(kind: str, rank: int, s: int = 0, m: int = 0, normalize: bool = True) -> MultiPoly:
    """Invariant polynomial twisted period given by a formal residue.

    ``kind`` is ``"A"`` (n + 1 ambient variables), ``"B"``, ``"D-infinity"``
    or ``"D-zero"``.  With ``normalize`` the grlex leading coefficient is 1.
    """
    _check_range(kind, rank, s, m)
    n = rank
    nu = residue_parameter(kind, n, s, m)
    if kind == "A":
        # Res_{z=oo} z^{(n+1)nu} prod (1 - z_j/z)^nu dz picks |k| = (n+1)nu + 1
        K = s + (n + 1) * m + 1
        terms = {}
        for k in compositions(K, n + 1):
            coef = mpq(-1)
            for kj in k:
                coef *= generalized_binomial(nu, kj) * (-1) ** kj
            terms[k] = coef
        out = MultiPoly(n + 1, terms)
    elif kind in ("B", "D-infinity"):
        K = s + (n if kind == "B" else n - 1) * m
        terms = {}
        for k in compositions(K, n):
            coef = mpq(-1)
            for kj in k:
                coef *= generalized_binomial(nu, kj) * (-1) ** kj
            terms[tuple(2 * kj for kj in k)] = coef
        out = MultiPoly(n, terms)
    else:
        terms = {}
        for k in compositions(m, n):
            coef = mpq(1)
            for kj in k:
                coef *= generalized_binomial(nu, kj) * (-1) ** kj
            terms[tuple(2 * m + 1 - 2 * kj for kj in k)] = coef
        out = MultiPoly(n, terms)
    return out.monic() if normalize else out


# ---------------------------------------------------------------------------
# G(l, 1, n)


@dataclass(frozen=True)
class ComplexGroupSpec:
    """Parameters of the singular family for S_n x (Z/l)^n.

    ``free_params`` optionally assigns values to the c_b that the family does
    not constrain; unconstrained ones default to 0.
    """

    n: int
    ell: int
    q: int
    s: int
    m: int
    free_params: Mapping[int, object] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.ell < 2:
            raise ValueError("ell must be >= 2")
        if not 1 <= self.q <= self.ell - 1:
            raise ValueError("q must satisfy 1 <= q <= ell - 1")
        if self.s < 0 or self.m < 0:
            raise ValueError("s and m must be nonnegative")
        constrained = self.constraints
        for b, v in constrained.items():
            if b == 0 and v != 0:
                raise ValueError(
                    f"constraints force c_0 = {v}, but c_0 = 0 by definition (s={self.s}, ell={self.ell})"
                )
        if (self.q - self.s) % self.ell == (-self.s) % self.ell:
            raise ValueError("c_{q-s} and c_{-s} would coincide")
        for b in self.free_params:
            if b % self.ell in constrained or b % self.ell == 0:
                raise ValueError(f"c_{b} is fixed by the family and cannot be set freely")

    @property
    def nu(self) -> mpq:
        return mpq(self.ell - self.q + self.s, self.ell) + self.m

    @property
    def ell_nu(self) -> int:
        return self.ell * self.m + self.ell - self.q + self.s

    @property
    def constraints(self) -> dict[int, mpq]:
        return {(self.q - self.s) % self.ell: mpq(0), (-self.s) % self.ell: mpq(self.s, self.ell)}

    @cached_property
    def params(self) -> tuple:
        """c_0, ..., c_{l-1}."""
        cs = [mpq(0)] * self.ell
        for b, v in self.free_params.items():
            cs[b % self.ell] = as_rational(v)
        for b, v in self.constraints.items():
            cs[b] = v
        cs[0] = mpq(0)
        return tuple(cs)

    def c(self, b: int) -> mpq:
        return self.params[b % self.ell]

    @property
    def ctx(self) -> FieldContext:
        return FieldContext.cyclotomic(self.ell)

    @property
    def degree(self) -> int:
        return (self.n - 1) * (self.m * self.ell + self.ell - self.q) + self.n * self.s


def complex_singular_family(spec: ComplexGroupSpec) -> list[MultiPoly]:
    """f_1, ..., f_n from the multinomial expansion of their residue formula."""
    n, ell, m, s = spec.n, spec.ell, spec.m, spec.s
    nu = spec.nu
    L = spec.ell_nu
    sign = mpq(-1) ** m
    out = []
    for j in range(n):
        terms = {}
        for k in compositions(m, n):
            coef = sign * generalized_binomial(nu - 1, k[j])
            exp = [0] * n
            for i in range(n):
                if i == j:
                    exp[i] = ell * (m - k[i]) + s
                else:
                    coef *= generalized_binomial(nu, k[i])
                    exp[i] = L - ell * k[i]
            terms[tuple(exp)] = coef
        out.append(MultiPoly(n, terms, spec.ctx))
    return out


def _sigma(ctx: FieldContext, i: int, j: int, a: int, p: MultiPoly) -> MultiPoly:
    n = p.nvars
    A = [[0] * n for _ in range(n)]
    for k in range(n):
        if k not in (i, j):
            A[k][k] = 1
    A[i][j] = ctx.root_power(a)
    A[j][i] = ctx.root_power(-a)
    return p.with_field(ctx).substitute_linear(A)


def _s(ctx: FieldContext, i: int, a: int, p: MultiPoly) -> MultiPoly:
    n = p.nvars
    A = [[1 if r == col else 0 for col in range(n)] for r in range(n)]
    A[i][i] = ctx.root_power(-a)
    return p.with_field(ctx).substitute_linear(A)


def sigma_action(spec: ComplexGroupSpec, i: int, j: int, a: int, p: MultiPoly) -> MultiPoly:
    """sigma_ij^(a): x_i -> w^a x_j, x_j -> w^{-a} x_i."""
    return _sigma(spec.ctx, i, j, a, p)


def s_action(spec: ComplexGroupSpec, i: int, a: int, p: MultiPoly) -> MultiPoly:
    """s_i^a: x_i -> w^{-a} x_i."""
    return _s(spec.ctx, i, a, p)


def complex_dunkl_operator(n: int, ell: int, nu, cs: Sequence, i: int, p: MultiPoly) -> MultiPoly:
    """Dunkl operator of G(l,1,n) at arbitrary nu and c_0..c_{l-1} (0-based i).

    nabla_i = d_i - nu sum_{j != i} sum_a (1 - sigma_ij^(a)) / (x_i - w^a x_j)
                  - sum_{b >= 1} c_b sum_a w^{-ab} s_i^a / x_i
    """
    if p.nvars != n:
        raise ValueError(f"expected {n} variables, got {p.nvars}")
    if not 0 <= i < n:
        raise IndexError(f"direction {i} out of range")
    if len(cs) != ell:
        raise ValueError(f"expected {ell} parameters c_0..c_{ell - 1}")
    ctx = FieldContext.cyclotomic(ell)
    p = p.with_field(ctx)
    nu = as_rational(nu)
    out = p.derivative(i)
    if nu:
        for a in range(ell):
            for j in range(n):
                if j == i:
                    continue
                diff = p - _sigma(ctx, i, j, a, p)
                form = [0] * n
                form[i] = 1
                form[j] = -ctx.root_power(a)
                out = out - diff.divide_by_linear_form(form).scale(nu)
    for b in range(1, ell):
        cb = as_rational(cs[b])
        if not cb:
            continue
        acc = MultiPoly.zero(n, ctx)
        for a in range(ell):
            acc = acc + _s(ctx, i, a, p).scale(ctx.root_power(-a * b))
        form = [0] * n
        form[i] = 1
        out = out - acc.divide_by_linear_form(form).scale(cb)
    return out


def complex_dunkl_apply(spec: ComplexGroupSpec, i: int, p: MultiPoly) -> MultiPoly:
    """Dunkl operator at the parameters of ``spec`` (0-based i)."""
    if p.nvars != spec.n:
        raise ValueError(f"expected {spec.n} variables, got {p.nvars}")
    return complex_dunkl_operator(spec.n, spec.ell, spec.nu, spec.params, i, p)


def complex_dunkl_all(spec: ComplexGroupSpec, p: MultiPoly) -> list[MultiPoly]:
    return [complex_dunkl_apply(spec, i, p) for i in range(spec.n)]


def complex_group_action_check(spec: ComplexGroupSpec, fs: Sequence[MultiPoly]) -> bool:
    """Equivariance of the family under the generators, plus linear independence."""
    n, ell, q, s = spec.n, spec.ell, spec.q, spec.s
    ctx = spec.ctx
    w = ctx.root_power
    fs = [f.with_field(ctx) for f in fs]
    for i in range(n):
        for a in range(ell):
            if s_action(spec, i, a, fs[i]) != fs[i].scale(w(-a * s)):
                return False
            for k in range(n):
                if k != i and s_action(spec, i, a, fs[k]) != fs[k].scale(w(a * (q - s))):
                    return False
            for j in range(n):
                if j == i:
                    continue
                if sigma_action(spec, i, j, a, fs[i]) != fs[j].scale(w(a * q)):
                    return False
                if sigma_action(spec, i, j, a, fs[j]) != fs[i].scale(w(-a * q)):
                    return False
                for k in range(n):
                    if k not in (i, j) and sigma_action(spec, i, j, a, fs[k]) != fs[k]:
                        return False
    return PolySpan(n, fs).dimension == n
