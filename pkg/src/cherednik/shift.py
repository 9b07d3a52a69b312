"""Shift recursion for twisted periods and the resulting singular polynomials.

Starting from the Saito coordinate t^beta (covector e^beta), each step
right-multiplies by U and divides entry alpha by (d_beta - d_alpha + h j).
The resulting covector xi^(m) gives

    q_i = sum_a xi_a(t(x)) d t^a / d x_i,     Q = sum_a d_a xi_a t^a / (d_beta + h m),

singular (resp. a twisted period) at c = (d_beta - 1)/h + m.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .coxeter import RootSystem, is_invariant, module_span
from .dunkl import dunkl_all, is_singular
from .field import as_rational, mpq
from .linalg import PolySpan, nullspace
from .poly import MultiPoly, PolyMatrix, monomials_of_degree
from .saito import InvariantRing, SaitoFrame, basic_invariants

__all__ = [
    "compute_U",
    "xi_shift",
    "SingularFamily",
    "singular_family",
    "TensorCstar",
    "twisted_period_residuals",
    "twisted_period_pde_check",
    "homogeneous_twisted_periods",
    "twisted_period_dimensions",
    "singular_space",
    "isotypic_singular_space",
    "reflection_multiplicity",
    "quadratic_pairing",
]


def compute_U(frame: SaitoFrame) -> PolyMatrix:
    """U^beta_alpha = g^{beta, n+1-alpha}, as polynomials in the flat coordinates."""
    return frame.U


def xi_shift(frame: SaitoFrame, beta: int, m: int) -> list[MultiPoly]:
    """Covector xi^(m) for the 1-based index ``beta``, in t-variables."""
    n = frame.n
    if not 1 <= beta <= n:
        raise ValueError(f"beta must lie in 1..{n}")
    if m < 0:
        raise ValueError("m must be nonnegative")
    U = frame.U
    degs = frame.degrees
    h = frame.h
    b = beta - 1
    xi = [MultiPoly.const(n, int(a == b)) for a in range(n)]
    for j in range(1, m + 1):
        new = []
        for a in range(n):
            acc = MultiPoly.zero(n)
            for lam in range(n):
                if xi[lam] and U[lam, a]:
                    acc = acc + xi[lam] * U[lam, a]
            new.append(acc.scale(mpq(1, degs[b] - degs[a] + h * j)))
        xi = new
    return xi


@dataclass
class SingularFamily:
    group: str
    beta: int
    m: int
    c: mpq
    xi: list[MultiPoly]
    q: list[MultiPoly]
    Q: MultiPoly
    Q_t: MultiPoly
    degree: int
    checks: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def normalized(self) -> "SingularFamily":
        """Same family rescaled so that Q has grlex-leading coefficient 1."""
        lead = 1 / self.Q.leading_term()[1]
        return SingularFamily(
            self.group,
            self.beta,
            self.m,
            self.c,
            [x.scale(lead) for x in self.xi],
            [x.scale(lead) for x in self.q],
            self.Q.scale(lead),
            self.Q_t.scale(lead),
            self.degree,
            dict(self.checks),
        )

    def potential(self):
        """(Q^2, sum_i q_i^2): numerator and denominator data of Q^-2 sum q_i^2."""
        total = MultiPoly.zero(self.Q.nvars)
        for qi in self.q:
            total = total + qi * qi
        return self.Q * self.Q, total


def singular_family(frame: SaitoFrame, beta: int, m: int, verify: bool = False) -> SingularFamily:
    """Build q_1..q_N and Q for (beta, m); with ``verify`` certify via Dunkl operators.

    Raises ``ArithmeticError`` when the two routes to Q disagree.
    """
    rs = frame.rs
    n = frame.n
    degs = frame.degrees
    h = frame.h
    xi = xi_shift(frame, beta, m)
    xi_x = [frame.to_x(x) if x else MultiPoly.zero(rs.ambient_dim) for x in xi]
    grads = [t.gradient() for t in frame.t]
    q = []
    for i in range(rs.ambient_dim):
        acc = MultiPoly.zero(rs.ambient_dim)
        for a in range(n):
            if xi_x[a] and grads[a][i]:
                acc = acc + xi_x[a] * grads[a][i]
        q.append(acc)
    total = degs[beta - 1] + h * m
    Q_t = MultiPoly.zero(n)
    for a in range(n):
        if xi[a]:
            Q_t = Q_t + xi[a] * MultiPoly.var(n, a).scale(degs[a])
    Q_t = Q_t.scale(mpq(1, total))
    Q = frame.to_x(Q_t)
    if any(Q.derivative(i) != q[i] for i in range(rs.ambient_dim)):
        raise ArithmeticError("gradient of Q disagrees with the q_i")
    euler = MultiPoly.zero(rs.ambient_dim)
    for i, qi in enumerate(q):
        euler = euler + MultiPoly.var(rs.ambient_dim, i) * qi
    if euler != Q.scale(total):
        raise ArithmeticError("Euler identity (d + hm) Q = sum x_i q_i fails")
    c = mpq(degs[beta - 1] - 1, h) + m
    fam = SingularFamily(rs.name, beta, m, c, xi, q, Q, Q_t, total - 1)
    if verify:
        certify_family(rs, fam)
    return fam


def certify_family(rs: RootSystem, fam: SingularFamily) -> dict:
    checks = fam.checks
    checks["degree"] = all(qi.is_homogeneous() and qi.degree() == fam.degree for qi in fam.q if qi)
    checks["nonzero"] = any(fam.q)
    singular = True
    for qi in fam.q:
        if qi and not is_singular(rs, fam.c, qi):
            singular = False
            break
    checks["dunkl_annihilated"] = singular
    first = next((qi for qi in fam.q if qi), None)
    checks["span_dimension"] = first is not None and len(module_span(rs, first)) == rs.rank
    checks["cross_symmetric"] = all(
        fam.q[i].derivative(j) == fam.q[j].derivative(i)
        for i, j in itertools.combinations(range(rs.ambient_dim), 2)
    )
    return checks


def quadratic_pairing(frame: SaitoFrame) -> MultiPoly:
    """sum_a t^a t^{n+1-a} as a polynomial in x."""
    n = frame.n
    acc = MultiPoly.zero(frame.rs.ambient_dim)
    for a in range(n):
        acc = acc + frame.t[a] * frame.t[n - 1 - a]
    return acc


# ---------------------------------------------------------------------------
# twisted periods


class TensorCstar:
    """sum_gamma 2 gamma_i gamma_j gamma_k / ((gamma,gamma)(gamma,x)), per root."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        dim = rs.ambient_dim
        self.forms = [MultiPoly.linear_form(g) for g in rs.roots]
        self.weights = [2 / nn for nn in rs.norms]
        self.nvars = dim

    def numerator_over(self, i: int, j: int, k: int) -> MultiPoly:
        """C*_ijk times the common denominator prod_gamma (gamma, x)."""
        acc = MultiPoly.zero(self.nvars)
        for idx, (g, w) in enumerate(zip(self.rs.roots, self.weights)):
            coef = w * g[i] * g[j] * g[k]
            if coef:
                acc = acc + self._others(idx).scale(coef)
        return acc

    def _others(self, skip: int) -> MultiPoly:
        out = MultiPoly.one(self.nvars)
        for idx, f in enumerate(self.forms):
            if idx != skip:
                out = out * f
        return out

    def denominator(self) -> MultiPoly:
        out = MultiPoly.one(self.nvars)
        for f in self.forms:
            out = out * f
        return out

    def is_symmetric(self) -> bool:
        # each per-root term is a product gamma_i gamma_j gamma_k, so symmetry is structural
        dim = self.nvars
        for i, j, k in itertools.product(range(dim), repeat=3):
            if self.numerator_over(i, j, k) != self.numerator_over(j, k, i):
                return False
        return True


def twisted_period_residuals(rs: RootSystem, p: MultiPoly, nu, cleared: bool = False) -> list[MultiPoly]:
    """Residuals of d_i d_j p - nu C*^k_ij d_k p for i <= j.

    The default route divides each (gamma, d)p by (gamma, x) exactly, which is
    possible for invariant p.  ``cleared=True`` instead multiplies through by
    prod_gamma (gamma, x); the two vanish together.
    """
    nu = as_rational(nu)
    dim = rs.ambient_dim
    weights = [2 / nn for nn in rs.norms]
    dirs = [p.directional_derivative(g) for g in rs.roots]
    out = []
    if cleared:
        forms = [MultiPoly.linear_form(g) for g in rs.roots]
        denom = MultiPoly.one(dim)
        for f in forms:
            denom = denom * f
        others = []
        for idx in range(len(forms)):
            o = MultiPoly.one(dim)
            for k2, f in enumerate(forms):
                if k2 != idx:
                    o = o * f
            others.append(o)
    else:
        quots = [d.divide_by_linear_form(g) for d, g in zip(dirs, rs.roots)]
    for i in range(dim):
        di = p.derivative(i)
        for j in range(i, dim):
            lhs = di.derivative(j)
            acc = MultiPoly.zero(dim)
            for idx, (g, w) in enumerate(zip(rs.roots, weights)):
                coef = w * g[i] * g[j]
                if not coef:
                    continue
                if cleared:
                    acc = acc + (others[idx] * dirs[idx]).scale(coef)
                else:
                    acc = acc + quots[idx].scale(coef)
            if cleared:
                out.append(denom * lhs - acc.scale(nu))
            else:
                out.append(lhs - acc.scale(nu))
    return out


def twisted_period_pde_check(rs: RootSystem, p: MultiPoly, nu, cleared: bool = False) -> bool:
    if not is_invariant(rs, p):
        raise ValueError("twisted-period check needs a W-invariant polynomial")
    return all(r.is_zero() for r in twisted_period_residuals(rs, p, nu, cleared))


def _kernel_combinations(images: list[list[MultiPoly]], ncols: int) -> list[list]:
    """Null space of the linear map column k -> images[k] (a list of polys)."""
    index: dict = {}
    rows: list[dict] = []
    for col, outs in enumerate(images):
        for slot, poly in enumerate(outs):
            for e, c in poly.terms.items():
                key = (slot, e)
                r = index.get(key)
                if r is None:
                    r = index[key] = len(rows)
                    rows.append({})
                rows[r][col] = c
    return nullspace(rows, ncols=ncols)


def _combine(polys: Sequence[MultiPoly], coeffs: Sequence, nvars: int) -> MultiPoly:
    acc = MultiPoly.zero(nvars)
    for p, c in zip(polys, coeffs):
        if c:
            acc = acc + p.scale(c)
    return acc


def homogeneous_twisted_periods(rs: RootSystem, frame: SaitoFrame | None, nu, D: int) -> list[MultiPoly]:
    """Basis of invariant homogeneous degree-D solutions of the twisted-period system."""
    if D < 1:
        raise ValueError("degree must be positive")
    gens = basic_invariants(rs).polys if frame is None or frame.field is not None else frame.t
    ring = InvariantRing(gens)
    exps = ring.monomials(D)
    if not exps:
        return []
    values = [ring.monomial(e) for e in exps]
    images = [twisted_period_residuals(rs, v, nu) for v in values]
    kernel = _kernel_combinations(images, len(values))
    span = PolySpan(rs.ambient_dim, (_combine(values, k, rs.ambient_dim) for k in kernel))
    return [p.monic() for p in span.basis()]


def twisted_period_dimensions(rs: RootSystem, nu, max_degree: int) -> dict[int, int]:
    """Dimension of the homogeneous invariant solutions in every degree 1..max_degree.

    Degrees with no solutions are kept (as 0) so that unexpected extra
    solutions are visible rather than filtered out.  Constants always solve
    the system, so dim L = 1 + sum of the values when L is polynomial.
    """
    return {D: len(homogeneous_twisted_periods(rs, None, nu, D)) for D in range(1, max_degree + 1)}


def _polynomial_space(rs: RootSystem, D: int) -> list[MultiPoly]:
    """Basis of degree-D polynomial functions on V (translation invariant for A_n)."""
    if rs.cartan_type == "A":
        dim = rs.ambient_dim
        # u_k = z_k - z_{n+1}
        A = [[mpq(int(i == k)) for i in range(dim)] for k in range(dim - 1)]
        for k in range(dim - 1):
            A[k][dim - 1] = mpq(-1)
        return [MultiPoly(dim - 1, {e: 1}).substitute_linear(A) for e in monomials_of_degree(dim - 1, D)]
    return [MultiPoly(rs.ambient_dim, {e: 1}) for e in monomials_of_degree(rs.ambient_dim, D)]


def singular_space(rs: RootSystem, c, D: int) -> list[MultiPoly]:
    """Basis of all homogeneous degree-D polynomials on V killed by every Dunkl operator."""
    basis = _polynomial_space(rs, D)
    images = [dunkl_all(rs, c, b) for b in basis]
    kernel = _kernel_combinations(images, len(basis))
    return [_combine(basis, k, rs.ambient_dim) for k in kernel]


def _equivariant_maps(rs: RootSystem, space: list[MultiPoly]) -> list[list[MultiPoly]]:
    """Tuples (P_1..P_N) in ``space`` with sum_j R_ji P_j = R.P_i for simple R.

    For A_n the ambient representation also contains the trivial summand,
    removed by the extra condition sum_i P_i = 0.
    """
    dim = rs.ambient_dim
    s = len(space)
    if s == 0:
        return []
    nunk = dim * s

    def col(i: int, k: int) -> int:
        return i * s + k

    images_by_unknown: list[list[MultiPoly]] = [[] for _ in range(nunk)]
    moved = [[b.substitute_linear(R) for b in space] for R in rs.simple_reflections]
    zero = MultiPoly.zero(dim)
    for r_idx, R in enumerate(rs.simple_reflections):
        for i in range(dim):
            # equation slot (r_idx, i): sum_j R[j][i] P_j - R.P_i
            for j in range(dim):
                for k in range(s):
                    term = space[k].scale(R[j][i]) if R[j][i] else zero
                    if j == i:
                        term = term - moved[r_idx][k]
                    images_by_unknown[col(j, k)].append(term)
    if rs.cartan_type == "A":
        for j in range(dim):
            for k in range(s):
                images_by_unknown[col(j, k)].append(space[k])
    kernel = _kernel_combinations(images_by_unknown, nunk)
    out = []
    for vec in kernel:
        out.append([_combine(space, vec[i * s : (i + 1) * s], dim) for i in range(dim)])
    return out


def isotypic_singular_space(rs: RootSystem, c, D: int) -> list[MultiPoly]:
    """Basis of the reflection-isotypic part of the degree-D singular space."""
    space = singular_space(rs, c, D)
    maps = _equivariant_maps(rs, space)
    span = PolySpan(rs.ambient_dim)
    for tup in maps:
        for p in tup:
            span.add(p)
    return [p.monic() for p in span.basis()]


def reflection_multiplicity(rs: RootSystem, c, D: int) -> int:
    """Number of copies of V among the degree-D singular polynomials."""
    return len(_equivariant_maps(rs, singular_space(rs, c, D)))
