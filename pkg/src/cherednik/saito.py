"""Invariant bases, the orbit-space metric and Saito flat coordinates.

Flat coordinates are seeded with the residue twisted periods at m = 0 and then
brought to the normal form  d/dt^1 g^{ab}(t) = delta_{a+b, n+1}  by an exact
linear change of coordinates inside each degree.  :func:`verify_saito`
recomputes the metric from scratch to certify the result.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .coxeter import RootSystem, is_invariant
from .field import FieldContext, as_rational, mpq
from .linalg import rank, solve_linear_exact
from .poly import MultiPoly, PolyMatrix
from .residues import residue_twisted_period

__all__ = [
    "InvariantBasis",
    "basic_invariants",
    "weighted_monomials",
    "InvariantRing",
    "express_in_invariants",
    "contravariant_metric",
    "SaitoFrame",
    "saito_frame",
    "SaitoReport",
    "verify_saito",
    "jacobian_rank_at",
]


def weighted_monomials(weights: Sequence[int], degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors e with sum(e_a * weights_a) == degree."""
    if not weights:
        return [()] if degree == 0 else []
    w, rest = weights[0], weights[1:]
    out = []
    for e in range(degree // w, -1, -1):
        for tail in weighted_monomials(rest, degree - e * w):
            out.append((e,) + tail)
    return out


@dataclass
class InvariantBasis:
    rs: RootSystem
    polys: list[MultiPoly]
    degrees: tuple[int, ...]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


def _power_sum(nvars: int, k: int, shift: MultiPoly | None = None) -> MultiPoly:
    xs = MultiPoly.gens(nvars)
    out = MultiPoly.zero(nvars)
    for x in xs:
        out = out + ((x - shift) if shift is not None else x) ** k
    return out


def basic_invariants(rs: RootSystem) -> InvariantBasis:
    """Homogeneous generators of the invariant ring, degrees descending.

    For A_n these are power sums of the centred coordinates z_i - mean(z),
    which are translation invariant and so faithful on the hyperplane.
    """
    n = rs.rank
    dim = rs.ambient_dim
    if rs.cartan_type == "A":
        mean = MultiPoly.linear_form([mpq(1, dim)] * dim)
        polys = [_power_sum(dim, k, mean) for k in range(n + 1, 1, -1)]
    elif rs.cartan_type == "B":
        polys = [_power_sum(n, 2 * k) for k in range(n, 0, -1)]
    elif rs.cartan_type == "D":
        prod = MultiPoly.one(n)
        for x in MultiPoly.gens(n):
            prod = prod * x
        polys = [_power_sum(n, 2 * k) for k in range(n - 1, 0, -1)] + [prod]
        polys.sort(key=lambda p: -p.degree())
    else:
        raise ValueError(f"unsupported type {rs.cartan_type}")
    return InvariantBasis(rs, polys, tuple(p.degree() for p in polys))


def jacobian_rank_at(rs: RootSystem, polys: Sequence[MultiPoly], point=None, seed: int = 7) -> int:
    """Rank of d(poly)/d(x) at a rational point of V, along a basis of V."""
    rng = random.Random(seed)
    dim = rs.ambient_dim
    while point is None:
        point = [mpq(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(dim)]
        if rs.cartan_type == "A":
            point[-1] = -sum(point[:-1], mpq(0))
        # the Jacobian degenerates on the mirrors, so insist on a regular point
        if any(sum((g * x for g, x in zip(gamma, point)), mpq(0)) == 0 for gamma in rs.roots):
            point = None
    if rs.cartan_type == "A":
        directions = [[mpq(int(i == k)) - mpq(int(i == dim - 1)) for i in range(dim)] for k in range(dim - 1)]
    else:
        directions = [[mpq(int(i == k)) for i in range(dim)] for k in range(dim)]
    rows = [[p.directional_derivative(d).evaluate(point) for d in directions] for p in polys]
    return rank(rows, ncols=len(directions))


class InvariantRing:
    """Expansions of monomials in a fixed set of invariant generators."""

    def __init__(self, generators: Sequence[MultiPoly]):
        self.generators = list(generators)
        self.weights = tuple(g.degree() for g in self.generators)
        self._cache: dict[tuple, MultiPoly] = {}
        nv = self.generators[0].nvars
        self._cache[(0,) * len(self.generators)] = MultiPoly.one(nv, self.generators[0].field)

    def monomial(self, exp: tuple) -> MultiPoly:
        if exp in self._cache:
            return self._cache[exp]
        i = max(k for k, e in enumerate(exp) if e)
        lower = exp[:i] + (exp[i] - 1,) + exp[i + 1 :]
        val = self.monomial(lower) * self.generators[i]
        self._cache[exp] = val
        return val

    def monomials(self, degree: int) -> list[tuple]:
        return weighted_monomials(self.weights, degree)

    def express(self, p: MultiPoly) -> MultiPoly:
        """The polynomial P in the generators with P(generators) == p."""
        k = len(self.generators)
        if p.is_zero():
            return MultiPoly.zero(k)
        if not p.is_homogeneous():
            out = MultiPoly.zero(k)
            for d in sorted({sum(e) for e in p.terms}):
                part = MultiPoly(p.nvars, {e: c for e, c in p.terms.items() if sum(e) == d}, p.field)
                out = out + self.express(part)
            return out
        D = p.degree()
        exps = self.monomials(D)
        if not exps:
            raise ValueError(f"no invariant monomials of degree {D}: polynomial not in the subring")
        values = [self.monomial(e) for e in exps]
        index: dict[tuple, int] = {}
        for v in values + [p]:
            for e in v.terms:
                index.setdefault(e, len(index))
        rows: list[dict] = [dict() for _ in index]
        for col, v in enumerate(values):
            for e, c in v.terms.items():
                rows[index[e]][col] = c
        rhs = [mpq(0)] * len(index)
        for e, c in p.terms.items():
            rhs[index[e]] = c
        sol = solve_linear_exact(rows, rhs, ncols=len(exps))
        if not sol.consistent:
            raise ValueError("polynomial is not in the subring generated by the basis")
        if sol.kernel:
            raise ValueError("generators are not algebraically independent in this degree")
        return MultiPoly(k, {e: c for e, c in zip(exps, sol.particular) if c}, p.field)


def express_in_invariants(p: MultiPoly, basis: Sequence[MultiPoly]) -> MultiPoly:
    return InvariantRing(list(basis)).express(p)


def _gram(coords: Sequence[MultiPoly]) -> list[list[MultiPoly]]:
    grads = [c.gradient() for c in coords]
    k = len(coords)
    out = [[None] * k for _ in range(k)]
    for a in range(k):
        for b in range(a, k):
            acc = MultiPoly.zero(coords[0].nvars)
            for da, db in zip(grads[a], grads[b]):
                if da and db:
                    acc = acc + da * db
            out[a][b] = out[b][a] = acc
    return out


def contravariant_metric(rs: RootSystem, coords: Sequence[MultiPoly], ring: InvariantRing | None = None) -> PolyMatrix:
    """g^{ab} = sum_i d_i coord^a d_i coord^b, rewritten in the coordinates themselves.

    For A_n the coordinates must be translation invariant so that their
    ambient gradients already lie in the hyperplane.
    """
    ring = ring or InvariantRing(coords)
    gram = _gram(coords)
    k = len(coords)
    expressed = [[None] * k for _ in range(k)]
    for a in range(k):
        for b in range(a, k):
            expressed[a][b] = expressed[b][a] = ring.express(gram[a][b])
    return PolyMatrix(expressed)


@dataclass
class SaitoFrame:
    rs: RootSystem
    t: list[MultiPoly]
    g: PolyMatrix
    field: FieldContext | None = None

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.rs.degrees

    @property
    def h(self) -> int:
        return self.rs.h

    @property
    def n(self) -> int:
        return self.rs.rank

    @cached_property
    def U(self) -> PolyMatrix:
        n = self.n
        return PolyMatrix([[self.g[b, n - 1 - a] for a in range(n)] for b in range(n)])

    @property
    def Lambda(self) -> list:
        return [-mpq(d - 1, self.h) for d in self.degrees]

    def euler(self) -> list[MultiPoly]:
        n = self.n
        return [MultiPoly.var(n, a).scale(mpq(self.degrees[a], self.h)) for a in range(n)]

    @cached_property
    def ring(self) -> InvariantRing:
        return InvariantRing(self.t)

    def to_x(self, p: MultiPoly) -> MultiPoly:
        """Substitute t -> t(x) into a polynomial in the flat coordinates."""
        return p.compose(self.t)


def _candidate_coordinates(rs: RootSystem) -> list[MultiPoly]:
    n = rs.rank
    out = []
    seen_n = False
    for d in rs.degrees:
        if rs.cartan_type == "A":
            out.append(residue_twisted_period("A", n, d - 1, 0))
        elif rs.cartan_type == "B":
            out.append(residue_twisted_period("B", n, d // 2, 0))
        else:
            # for even n the degree-n slot appears twice; the D-zero one goes last
            if d == n and (n % 2 == 1 or seen_n):
                out.append(residue_twisted_period("D-zero", n, 0, 0))
            else:
                if d == n:
                    seen_n = True
                out.append(residue_twisted_period("D-infinity", n, d // 2, 0))
    return out


def _eta_matrix(g: PolyMatrix) -> list[list]:
    n = g.shape[0]
    eta = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            d = g[a, b].derivative(0)
            if not d.is_constant():
                raise ArithmeticError("d/dt^1 of the metric is not constant: candidates are not flat")
            eta[a][b] = d.constant_value() if d else mpq(0)
    return eta


def _is_rational_square(x) -> mpq | None:
    from gmpy2 import is_square

    x = as_rational(x)
    if x < 0:
        return None
    num, den = int(x.numerator), int(x.denominator)
    if is_square(num) and is_square(den):
        from gmpy2 import isqrt

        return mpq(int(isqrt(num)), int(isqrt(den)))
    return None


def _normalizing_transform(rs: RootSystem, eta: list[list]) -> tuple[list[list], FieldContext | None]:
    """Block matrix T (within equal degrees) with T eta T^T / T[0][0] antidiagonal-1."""
    n = rs.rank
    degs = rs.degrees
    T = [[mpq(0)] * n for _ in range(n)]
    ctx = None
    mid = [a for a in range(n) if a == n - 1 - a]
    double = [a for a in range(n - 1) if degs[a] == degs[a + 1]]
    # t^1 scale tau = T[0][0]; a self-paired middle coordinate fixes it
    if mid:
        tau = eta[mid[0]][mid[0]]
        T[mid[0]][mid[0]] = mpq(1)
    else:
        tau = mpq(1)
    if n == 1:
        T[0][0] = 1 / eta[0][0]
        return T, ctx
    T[0][0] = tau
    block = set()
    if double:
        a = double[0]
        block = {a, a + 1}
        if a + 1 != n - 1 - a:
            raise ArithmeticError("repeated degree that is not self-paired")
        B = [[eta[a][a], eta[a][a + 1]], [eta[a + 1][a], eta[a + 1][a + 1]]]
        rows, ctx = _isotropic_basis(B, tau)
        T[a][a], T[a][a + 1] = rows[0]
        T[a + 1][a], T[a + 1][a + 1] = rows[1]
    for a in range(n):
        b = n - 1 - a
        if a >= b or a in block:
            continue
        if a != 0:
            T[a][a] = mpq(1)
        T[b][b] = tau / (eta[a][b] * T[a][a])
    return T, ctx


def _isotropic_basis(B: list[list], tau) -> tuple[list[list], FieldContext | None]:
    """Rows r1, r2 with r_i B r_j^T = tau * [[0,1],[1,0]]."""
    a, b, c = B[0][0], B[0][1], B[1][1]
    if not a and not c:
        return [[mpq(1), mpq(0)], [mpq(0), tau / b]], None
    if not a:
        # swap roles so that a != 0
        rows, ctx = _isotropic_basis([[c, b], [b, a]], tau)
        return [[r[1], r[0]] for r in rows], ctx
    disc = b * b - a * c
    ctx = None
    root = _is_rational_square(disc)
    if root is None:
        from gmpy2 import mpz

        num, den = int(disc.numerator), int(disc.denominator)
        # sqrt(num/den) = sqrt(num*den)/den; split off square factors
        m = num * den
        sq = 1
        f = 2
        mm = abs(m)
        while f * f <= mm:
            while mm % (f * f) == 0:
                mm //= f * f
                sq *= f
            f += 1
        d = mm if m > 0 else -mm
        ctx = FieldContext.quadratic(d)
        root = ctx.gen() * mpq(sq, den)
    # isotropic vectors (u, 1) with a u^2 + 2 b u + c = 0
    u1 = (-b + root) / a
    u2 = (-b - root) / a
    v1 = [u1, mpq(1)]
    v2 = [u2, mpq(1)]
    pair = a * u1 * u2 + b * (u1 + u2) + c
    scale = tau / pair
    return [v1, [v2[0] * scale, v2[1] * scale]], ctx


def saito_frame(rs: RootSystem) -> SaitoFrame:
    """Flat coordinates t^1..t^n with d/dt^1 g(t) exactly antidiagonal-1."""
    cands = _candidate_coordinates(rs)
    g_cand = contravariant_metric(rs, cands)
    eta = _eta_matrix(g_cand)
    T, ctx = _normalizing_transform(rs, eta)
    n = rs.rank
    t = []
    for a in range(n):
        acc = MultiPoly.zero(rs.ambient_dim, ctx)
        for b in range(n):
            if T[a][b]:
                acc = acc + cands[b].scale(T[a][b])
        t.append(acc.with_field(ctx))
    g = contravariant_metric(rs, t)
    return SaitoFrame(rs, t, g, ctx)


@dataclass
class SaitoReport:
    ok: bool
    degrees_ok: bool
    invariant_ok: bool
    eta: list[list] = field(default_factory=list)
    residuals: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def verify_saito(frame: SaitoFrame) -> SaitoReport:
    """Recompute g in the frame's coordinates and test d/dt^1 g == antidiagonal-1."""
    rs = frame.rs
    n = rs.rank
    residuals = []
    degrees_ok = len(frame.t) == n and all(
        p.is_homogeneous() and p.degree() == d for p, d in zip(frame.t, rs.degrees)
    )
    if not degrees_ok:
        residuals.append("coordinate degrees do not match the group degrees")
        return SaitoReport(False, False, False, [], residuals)
    invariant_ok = all(is_invariant(rs, p) for p in frame.t)
    if not invariant_ok:
        residuals.append("a coordinate is not W-invariant")
    if rs.cartan_type == "A":
        for k, p in enumerate(frame.t):
            total = MultiPoly.zero(p.nvars)
            for d in p.gradient():
                total = total + d
            if total:
                residuals.append(f"t^{k + 1} is not translation invariant")
    try:
        g = contravariant_metric(rs, frame.t)
    except ValueError as exc:
        residuals.append(f"metric not expressible: {exc}")
        return SaitoReport(False, degrees_ok, invariant_ok, [], residuals)
    eta = []
    for a in range(n):
        row = []
        for b in range(n):
            d = g[a, b].derivative(0)
            target = MultiPoly.const(n, int(a + b == n - 1))
            if d != target:
                residuals.append(f"d/dt1 g^{a + 1}{b + 1} = {d}")
            row.append(d)
        eta.append(row)
    ok = degrees_ok and invariant_ok and not residuals
    return SaitoReport(ok, degrees_ok, invariant_ok, eta, residuals)
