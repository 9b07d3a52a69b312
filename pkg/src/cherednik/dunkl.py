"""Dunkl operators for real Coxeter groups at a constant parameter c.

    nabla_i p = d_i p - c * sum_{gamma in R+} gamma_i * ((1 - s_gamma) p) / (gamma, x)

The reflection difference is divided by the linear form exactly, so every
result stays in the polynomial ring; a nonzero remainder is an internal error.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .coxeter import RootSystem, is_invariant
from .field import as_rational, mpq
from .poly import MultiPoly

__all__ = [
    "dunkl_apply",
    "dunkl_all",
    "SingularityCertificate",
    "is_singular",
    "CommutativityReport",
    "check_commutativity",
    "calogero_kernel_check",
    "euler_identity_holds",
    "random_polynomial",
    "symmetric_group_dunkl",
]


def _root_quotients(rs: RootSystem, p: MultiPoly) -> list[MultiPoly]:
    out = []
    for gamma, S in zip(rs.roots, rs.reflections):
        diff = p - p.substitute_linear(S)
        out.append(diff.divide_by_linear_form(gamma))
    return out


def _check_vars(rs: RootSystem, p: MultiPoly) -> None:
    if p.nvars != rs.ambient_dim:
        raise ValueError(f"{rs.name} acts on {rs.ambient_dim} variables, polynomial has {p.nvars}")


def dunkl_apply(rs: RootSystem, c, i: int, p: MultiPoly) -> MultiPoly:
    """Dunkl operator in the coordinate direction ``i`` (0-based)."""
    _check_vars(rs, p)
    if not 0 <= i < rs.ambient_dim:
        raise IndexError(f"direction {i} out of range for {rs.name}")
    c = as_rational(c)
    out = p.derivative(i)
    if not c:
        return out
    for gamma, S in zip(rs.roots, rs.reflections):
        if gamma[i]:
            quotient = (p - p.substitute_linear(S)).divide_by_linear_form(gamma)
            out = out - quotient.scale(c * gamma[i])
    return out


def symmetric_group_dunkl(c, i: int, p: MultiPoly) -> MultiPoly:
    """d_i p - c sum_{j != i} (p - s_ij p) / (z_i - z_j) on n + 1 ambient variables.

    Written directly in terms of transpositions, independent of any RootSystem.
    """
    c = as_rational(c)
    dim = p.nvars
    out = p.derivative(i)
    for j in range(dim):
        if j == i:
            continue
        perm = [[int(r == col) for col in range(dim)] for r in range(dim)]
        perm[i][i] = perm[j][j] = 0
        perm[i][j] = perm[j][i] = 1
        form = [0] * dim
        form[i], form[j] = 1, -1
        out = out - (p - p.substitute_linear(perm)).divide_by_linear_form(form).scale(c)
    return out


def dunkl_all(rs: RootSystem, c, p: MultiPoly) -> list[MultiPoly]:
    """All ambient-direction Dunkl derivatives, sharing the per-root quotients."""
    _check_vars(rs, p)
    c = as_rational(c)
    quotients = _root_quotients(rs, p) if c else []
    out = []
    for i in range(rs.ambient_dim):
        acc = p.derivative(i)
        for gamma, quot in zip(rs.roots, quotients):
            if gamma[i]:
                acc = acc - quot.scale(c * gamma[i])
        out.append(acc)
    return out


@dataclass
class SingularityCertificate:
    group: str
    c: object
    residuals: list[MultiPoly]
    singular: bool

    def __bool__(self) -> bool:
        return self.singular


def is_singular(rs: RootSystem, c, q: MultiPoly) -> SingularityCertificate:
    if q.is_zero():
        raise ValueError("the zero polynomial is not a singular-polynomial candidate")
    residuals = dunkl_all(rs, c, q)
    return SingularityCertificate(rs.name, as_rational(c), residuals, all(r.is_zero() for r in residuals))


@dataclass
class CommutativityReport:
    group: str
    c: object
    checked: int = 0
    violations: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_commutativity(rs: RootSystem, c, polys) -> CommutativityReport:
    """[nabla_i, nabla_j] p == 0 for every pair of directions and every sample."""
    report = CommutativityReport(rs.name, as_rational(c))
    for k, p in enumerate(polys):
        first = dunkl_all(rs, c, p)
        second = [dunkl_all(rs, c, f) for f in first]
        for i, j in itertools.combinations(range(rs.ambient_dim), 2):
            report.checked += 1
            if second[j][i] != second[i][j]:
                report.violations.append((k, i, j))
    return report


def apply_invariant_operator(rs: RootSystem, c, g: MultiPoly, Q: MultiPoly) -> MultiPoly:
    """g(nabla_1, ..., nabla_n) applied to Q (the operators commute)."""
    cache: dict[tuple, MultiPoly] = {(0,) * g.nvars: Q}

    def power(exp: tuple) -> MultiPoly:
        if exp in cache:
            return cache[exp]
        i = next(k for k, e in enumerate(exp) if e)
        lower = exp[:i] + (exp[i] - 1,) + exp[i + 1 :]
        val = dunkl_apply(rs, c, i, power(lower))
        cache[exp] = val
        return val

    out = MultiPoly.zero(Q.nvars, Q.field)
    for exp, coef in g.terms.items():
        out = out + power(exp).scale(coef)
    return out


def calogero_kernel_check(rs: RootSystem, c, g: MultiPoly, Q: MultiPoly) -> bool:
    """Whether Q lies in the kernel of L_g = g(nabla)."""
    if not (is_invariant(rs, g) and is_invariant(rs, Q)):
        raise ValueError("calogero_kernel_check needs W-invariant g and Q")
    if g.degree() <= 0:
        raise ValueError("g must have positive degree")
    return apply_invariant_operator(rs, c, g, Q).is_zero()


def euler_identity_holds(rs: RootSystem, c, q: MultiPoly) -> bool:
    """sum_i x_i nabla_i q == sum_i x_i d_i q - c sum_gamma (1 - s_gamma) q."""
    xs = MultiPoly.gens(q.nvars)
    lhs = MultiPoly.zero(q.nvars)
    for x, r in zip(xs, dunkl_all(rs, c, q)):
        lhs = lhs + x * r
    rhs = MultiPoly.zero(q.nvars)
    for x, d in zip(xs, q.gradient()):
        rhs = rhs + x * d
    c = as_rational(c)
    for S in rs.reflections:
        rhs = rhs - (q - q.substitute_linear(S)).scale(c)
    return lhs == rhs


def random_polynomial(nvars: int, degree: int, rng: random.Random, terms: int = 6, homogeneous=True) -> MultiPoly:
    """Small random polynomial with rational coefficients, for property suites."""
    out = {}
    for _ in range(terms):
        d = degree if homogeneous else rng.randint(0, degree)
        cuts = sorted(rng.randint(0, d) for _ in range(nvars - 1))
        exp = tuple(b - a for a, b in zip([0] + cuts, cuts + [d]))
        out[exp] = mpq(rng.randint(-9, 9), rng.randint(1, 5))
    return MultiPoly(nvars, out)
