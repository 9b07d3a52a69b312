"""The ten acceptance checks, shared by ``cherednik selftest`` and the test suite.

Each check returns a :class:`CriterionResult`; every comparison is exact, so a
check passes only when every residual polynomial is identically zero.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .coxeter import is_invariant, module_span, parse_group
from .dunkl import check_commutativity, dunkl_all, euler_identity_holds, is_singular, random_polynomial, symmetric_group_dunkl
from .field import FieldContext, mpq
from .linalg import linear_combination_coefficients
from .poly import MultiPoly
from .residues import (
    ComplexGroupSpec,
    complex_dunkl_all,
    complex_group_action_check,
    complex_singular_family,
    residue_twisted_period,
)
from .saito import saito_frame, verify_saito
from .serialize import poly_from_json, poly_to_json
from .shift import (
    certify_family,
    homogeneous_twisted_periods,
    isotypic_singular_space,
    quadratic_pairing,
    singular_family,
)

__all__ = ["GROUPS", "CriterionResult", "CRITERIA", "run_criterion", "run_all", "frame_for", "family_for"]

GROUPS = ("A1", "A2", "A3", "A4", "B2", "B3", "B4", "D3", "D4")


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool = True
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def expect(self, ok: bool, what: str) -> None:
        self.checked += 1
        if not ok:
            self.passed = False
            self.failures.append(what)

    def line(self) -> str:
        status = "PASS" if self.passed and self.checked else "FAIL"
        text = f"[{status}] {self.number:2d}. {self.title} ({self.checked} exact checks, {self.seconds:.1f}s)"
        if self.failures:
            text += "; first failure: " + self.failures[0]
        return text


@lru_cache(maxsize=None)
def frame_for(group: str):
    return saito_frame(parse_group(group))


@lru_cache(maxsize=None)
def family_for(group: str, beta: int, m: int):
    fam = singular_family(frame_for(group), beta, m)
    certify_family(parse_group(group), fam)
    return fam


def _check_saito(res: CriterionResult) -> None:
    for g in GROUPS:
        report = verify_saito(frame_for(g))
        res.expect(report.ok, f"{g}: {'; '.join(report.residuals)}")


def _check_saito_derivatives(res: CriterionResult) -> None:
    for g in GROUPS:
        frame = frame_for(g)
        rs = frame.rs
        for b, t in enumerate(frame.t):
            c = mpq(rs.degrees[b] - 1, rs.h)
            for j in range(rs.ambient_dim):
                q = t.derivative(j)
                res.expect(bool(q) and bool(is_singular(rs, c, q)), f"{g} d_x{j + 1} t^{b + 1} at c={c}")


def _check_families(res: CriterionResult) -> None:
    for g in GROUPS:
        rs = parse_group(g)
        for beta in range(1, rs.rank + 1):
            for m in range(3):
                fam = family_for(g, beta, m)
                tag = f"{g} beta={beta} m={m}"
                res.expect(fam.c == mpq(rs.degrees[beta - 1] - 1, rs.h) + m, f"{tag}: parameter")
                res.expect(fam.checks["dunkl_annihilated"], f"{tag}: not singular")
                res.expect(fam.checks["degree"] and fam.degree == rs.degrees[beta - 1] - 1 + rs.h * m, f"{tag}: degree")
                res.expect(fam.checks["span_dimension"], f"{tag}: module span is not n-dimensional")


def _check_quadratic_pairing(res: CriterionResult) -> None:
    for g in GROUPS:
        frame = frame_for(g)
        rs = frame.rs
        Q = quadratic_pairing(frame)
        c = mpq(rs.h + 1, rs.h)
        for z in range(rs.ambient_dim):
            q = Q.derivative(z)
            res.expect(bool(q) and bool(is_singular(rs, c, q)), f"{g} zeta=e{z + 1}")


def _beta_for_degree(rs, d: int) -> int:
    return rs.degrees.index(d) + 1


def _check_route_equivalence(res: CriterionResult) -> None:
    for g in ("A2", "A3", "B2", "B3"):
        rs = parse_group(g)
        kind = rs.cartan_type
        for s in range(1, rs.rank + 1):
            d = s + 1 if kind == "A" else 2 * s
            beta = _beta_for_degree(rs, d)
            for m in range(3):
                r = residue_twisted_period(kind, rs.rank, s, m)
                Q = family_for(g, beta, m).Q
                res.expect(r.is_proportional_to(Q), f"{g} s={s} m={m} vs Q_{beta}")
    rs = parse_group("D4")
    for m in range(3):
        span = [family_for("D4", 2, m).Q, family_for("D4", 3, m).Q]
        for kind, s in (("D-infinity", 2), ("D-zero", 0)):
            r = residue_twisted_period(kind, 4, s, m)
            coeffs = linear_combination_coefficients(r, span)
            res.expect(coeffs is not None, f"D4 {kind} m={m} outside span(Q_2, Q_3)")
        for s, beta in ((1, 4), (3, 1)):
            r = residue_twisted_period("D-infinity", 4, s, m)
            res.expect(r.is_proportional_to(family_for("D4", beta, m).Q), f"D4 D-infinity s={s} m={m}")


def _check_dimensions(res: CriterionResult) -> None:
    cases = [
        ("A2", mpq(1, 3), 2, 1),
        ("A2", mpq(1, 2), 2, 0),
        ("D4", mpq(1, 2), 4, 2),
    ]
    for g, nu, D, want in cases:
        got = len(homogeneous_twisted_periods(parse_group(g), None, nu, D))
        res.expect(got == want, f"twisted periods {g} nu={nu} D={D}: dim {got}, want {want}")
    iso = [
        ("D4", mpq(1, 2), 3, 8),
        ("B2", mpq(1, 4), 1, 2),
        ("A2", mpq(1, 3), 1, 2),
        ("B3", mpq(1, 2), 3, 3),
        ("B2", mpq(5, 4), 5, 2),
    ]
    for g, c, D, want in iso:
        got = len(isotypic_singular_space(parse_group(g), c, D))
        res.expect(got == want, f"isotypic {g} c={c} D={D}: dim {got}, want {want}")


def _check_d_zero(res: CriterionResult) -> None:
    for n in (3, 4):
        rs = parse_group(f"D{n}")
        for m in (0, 1):
            p = residue_twisted_period("D-zero", n, 0, m)
            res.expect(is_invariant(rs, p), f"D{n} m={m}: residue not invariant")
            c = mpq(1, 2) + m
            for z in range(n):
                q = p.derivative(z)
                res.expect(bool(is_singular(rs, c, q)), f"D{n} m={m} d_x{z + 1}")


def _check_complex(res: CriterionResult) -> None:
    for n, ell in ((2, 2), (3, 2), (2, 3)):
        for q in range(1, ell):
            for s in (0, 1):
                for m in (0, 1):
                    spec = ComplexGroupSpec(n, ell, q, s, m)
                    tag = f"G({ell},1,{n}) q={q} s={s} m={m}"
                    fs = complex_singular_family(spec)
                    for j, f in enumerate(fs):
                        res.expect(all(r.is_zero() for r in complex_dunkl_all(spec, f)), f"{tag}: f_{j + 1}")
                        res.expect(f.is_homogeneous() and f.degree() == spec.degree, f"{tag}: degree of f_{j + 1}")
                    res.expect(complex_group_action_check(spec, fs), f"{tag}: equivariance")


def _random_ext_poly(rng: random.Random, nvars: int, ctx: FieldContext) -> MultiPoly:
    terms = {}
    for _ in range(rng.randint(1, 5)):
        exp = tuple(rng.randint(0, 3) for _ in range(nvars))
        terms[exp] = ctx.from_coeffs([mpq(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(ctx.degree)])
    return MultiPoly(nvars, terms, ctx)


def _check_properties(res: CriterionResult) -> None:
    rng = random.Random(20240611)
    # Dunkl commutativity
    samples = 0
    for g, count in (("A2", 30), ("A3", 20), ("B2", 30), ("B3", 15), ("D4", 10)):
        rs = parse_group(g)
        for _ in range(count):
            c = mpq(rng.randint(-12, 12), rng.randint(1, 7))
            p = random_polynomial(rs.ambient_dim, rng.randint(1, 4), rng, terms=4, homogeneous=False)
            rep = check_commutativity(rs, c, [p])
            samples += 1
            res.expect(rep.ok, f"commutativity {g} c={c} p={p}")
            res.expect(euler_identity_holds(rs, c, p), f"Dunkl Euler identity {g} c={c}")
    res.expect(samples >= 100, "fewer than 100 commutativity samples")
    # families: cross symmetry, Euler identity, descent in t^1
    for g in GROUPS:
        rs = parse_group(g)
        xs = MultiPoly.gens(rs.ambient_dim)
        for beta in range(1, rs.rank + 1):
            prev = None
            for m in range(3):
                fam = family_for(g, beta, m)
                tag = f"{g} beta={beta} m={m}"
                res.expect(fam.checks["cross_symmetric"], f"{tag}: d_i q_j != d_j q_i")
                lhs = MultiPoly.zero(rs.ambient_dim)
                for x, qi in zip(xs, fam.q):
                    lhs = lhs + x * qi
                res.expect(lhs == fam.Q.scale(fam.degree + 1), f"{tag}: Euler identity")
                if prev is not None:
                    res.expect(fam.Q_t.derivative(0).is_proportional_to(prev.Q_t), f"{tag}: d/dt1 descent")
                prev = fam
    # ring laws and serialization round trips, over Q and Q(zeta_3)
    for ctx in (None, FieldContext.cyclotomic(3), FieldContext.quadratic(-3)):
        for _ in range(15):
            if ctx is None:
                a, b, c = (random_polynomial(3, rng.randint(0, 3), rng, terms=4, homogeneous=False) for _ in range(3))
            else:
                a, b, c = (_random_ext_poly(rng, 3, ctx) for _ in range(3))
            res.expect((a * b) * c == a * (b * c), "associativity")
            res.expect(a * (b + c) == a * b + a * c, "distributivity")
            res.expect(a * b == b * a and a + b == b + a, "commutativity of the ring")
            res.expect(a - a == MultiPoly.zero(3), "additive inverse")
            for p in (a, b, c):
                res.expect(poly_from_json(poly_to_json(p)) == p, f"round trip of {p}")


def _check_type_a_example(res: CriterionResult) -> None:
    for n in (2, 3):
        for alpha in range(1, n + 1):
            s_alpha = residue_twisted_period("A", n, n + 1 - alpha, 0)
            total = MultiPoly.zero(n + 1)
            for d in s_alpha.gradient():
                total = total + d
            res.expect(total.is_zero(), f"A{n} s^{alpha} not translation invariant")
            c = mpq(n + 1 - alpha, n + 1)
            for z in range(n + 1):
                q = s_alpha.derivative(z)
                for i in range(n + 1):
                    res.expect(symmetric_group_dunkl(c, i, q).is_zero(), f"A{n} alpha={alpha} zeta=e{z + 1} i={i + 1}")


CRITERIA: dict[int, tuple[str, Callable[[CriterionResult], None]]] = {
    1: ("Saito flatness of d/dt1 g for A1-A4, B2-B4, D3, D4", _check_saito),
    2: ("derivatives of Saito polynomials are singular at (d-1)/h", _check_saito_derivatives),
    3: ("shifted families singular at (d-1)/h + m, m <= 2, degree and span", _check_families),
    4: ("gradient of sum t^a t^(n+1-a) singular at (h+1)/h", _check_quadratic_pairing),
    5: ("residue twisted periods agree with Q_beta", _check_route_equivalence),
    6: ("twisted-period and isotypic dimensions", _check_dimensions),
    7: ("D-zero residue derivatives singular at m + 1/2", _check_d_zero),
    8: ("G(l,1,n) families singular, equivariant, right degree", _check_complex),
    9: ("property suites: commutativity, symmetry, descent, Euler, ring, round trip", _check_properties),
    10: ("A_n example in the n+1 variable operator", _check_type_a_example),
}


def run_criterion(number: int) -> CriterionResult:
    title, fn = CRITERIA[number]
    res = CriterionResult(number, title)
    start = time.perf_counter()
    try:
        fn(res)
    except Exception as exc:  # a crash is a failure, reported rather than hidden
        res.passed = False
        res.failures.append(f"{type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - start
    return res


def run_all(numbers=None) -> list[CriterionResult]:
    return [run_criterion(k) for k in (numbers or sorted(CRITERIA))]
