import random

import pytest

from cherednik.coxeter import is_invariant, parse_group, restrict_to_hyperplane
from cherednik.dunkl import dunkl_apply, random_polynomial
from cherednik.field import FieldContext, mpq
from cherednik.poly import MultiPoly
from cherednik.residues import (
    ComplexGroupSpec,
    complex_dunkl_all,
    complex_dunkl_apply,
    complex_dunkl_operator,
    complex_group_action_check,
    complex_singular_family,
    compositions,
    residue_degree,
    residue_twisted_period,
)


def test_compositions():
    assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert len(list(compositions(3, 3))) == 10


def test_a2_residue_raw():
    z1, z2, z3 = MultiPoly.gens(3)
    p = residue_twisted_period("A", 2, 1, 0, normalize=False)
    want = (z1**2 + z2**2 + z3**2 - z1 * z2 - z1 * z3 - z2 * z3).scale(mpq(1, 9))
    assert p == want
    # on the hyperplane this is (1/6) sum z^2
    assert restrict_to_hyperplane(p) == restrict_to_hyperplane((z1**2 + z2**2 + z3**2).scale(mpq(1, 6)))


def test_b2_residue_raw():
    x1, x2 = MultiPoly.gens(2)
    p = residue_twisted_period("B", 2, 2, 0, normalize=False)
    assert p == (x1**4 + x2**4).scale(mpq(3, 32)) - (x1**2 * x2**2).scale(mpq(9, 16))
    assert residue_twisted_period("B", 2, 2, 0) == x1**4 + x2**4 - (x1**2 * x2**2).scale(6)


def test_d_zero_m0():
    assert residue_twisted_period("D-zero", 4, 0, 0) == MultiPoly(4, {(1, 1, 1, 1): 1})


@pytest.mark.parametrize(
    "kind,rank,s,m",
    [("A", 2, 2, 1), ("A", 3, 1, 2), ("B", 3, 2, 1), ("B", 2, 1, 2), ("D-infinity", 4, 3, 1), ("D-zero", 4, 0, 2), ("D-zero", 3, 0, 1)],
)
def test_residue_degree_and_invariance(kind, rank, s, m):
    p = residue_twisted_period(kind, rank, s, m)
    group = f"{kind[0]}{rank}"
    assert p.is_homogeneous() and p.degree() == residue_degree(kind, rank, s, m)
    assert is_invariant(parse_group(group), p)
    assert p.leading_term()[1] == 1
    if kind == "A":
        assert sum(p.gradient(), MultiPoly.zero(rank + 1)).is_zero()


@pytest.mark.parametrize("args", [("A", 2, 0, 0), ("A", 2, 3, 0), ("B", 2, 3, 0), ("D-infinity", 4, 4, 0), ("D-zero", 1, 0, 0), ("E", 6, 1, 0), ("B", 2, 1, -1)])
def test_residue_ranges(args):
    with pytest.raises(ValueError):
        residue_twisted_period(*args)


def test_spec_parameters():
    spec = ComplexGroupSpec(2, 3, 1, 1, 1)
    assert spec.nu == 1 + mpq(3 - 1 + 1, 3)
    assert spec.ell_nu == 6
    assert spec.c(0) == 0
    assert spec.c(1 - 1) == 0 and spec.c(-1) == mpq(1, 3)
    assert spec.c(5) == spec.c(2)
    with pytest.raises(ValueError):
        ComplexGroupSpec(2, 3, 3, 0, 0)
    with pytest.raises(ValueError):
        ComplexGroupSpec(2, 1, 1, 0, 0)
    with pytest.raises(ValueError):
        ComplexGroupSpec(2, 3, 1, 0, 0, {1: mpq(1, 2)})  # c_1 = c_{q-s} is fixed
    free = ComplexGroupSpec(2, 3, 1, 0, 0, {2: mpq(1, 5)})
    assert free.params == (0, 0, mpq(1, 5))


def test_family_examples():
    x1, x2 = MultiPoly.gens(2)
    f1, f2 = complex_singular_family(ComplexGroupSpec(2, 2, 1, 0, 0))
    assert f1 == x2 and f2 == x1
    spec = ComplexGroupSpec(2, 2, 1, 0, 1)
    f1, _ = complex_singular_family(spec)
    assert f1 == -((x2**3).scale(mpq(1, 2)) + (x1**2 * x2).scale(mpq(3, 2)))
    assert spec.degree == 3


@pytest.mark.parametrize("n,ell,q,s", [(2, 3, 1, 1), (3, 2, 1, 0), (3, 4, 3, 2)])
def test_m0_single_term(n, ell, q, s):
    spec = ComplexGroupSpec(n, ell, q, s, 0)
    for j, f in enumerate(complex_singular_family(spec)):
        exp = tuple(s if i == j else spec.ell_nu for i in range(n))
        assert f == MultiPoly(n, {exp: 1}, spec.ctx)


def test_dunkl_examples():
    x1, x2 = MultiPoly.gens(2)
    p = (x1**3 * x2).scale(mpq(2, 3)) + x2**2
    for i in range(2):
        assert complex_dunkl_operator(2, 3, 0, [0, 0, 0], i, p) == p.derivative(i).with_field(FieldContext.cyclotomic(3))
    spec = ComplexGroupSpec(2, 2, 1, 0, 0)
    assert complex_dunkl_apply(spec, 0, x2).is_zero()
    # x1 is f_2 of this family, so it is singular too; x1^2 is not
    assert all(r.is_zero() for r in complex_dunkl_all(spec, x1))
    assert not complex_dunkl_apply(spec, 0, x1**2).is_zero()


@pytest.mark.parametrize("n,ell", [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)])
def test_families_are_singular(n, ell):
    for q in range(1, ell):
        for s in (0, 1):
            for m in (0, 1):
                spec = ComplexGroupSpec(n, ell, q, s, m)
                fs = complex_singular_family(spec)
                assert all(f.is_homogeneous() and f.degree() == spec.degree for f in fs)
                for f in fs:
                    assert all(r.is_zero() for r in complex_dunkl_all(spec, f)), (q, s, m)
                assert complex_group_action_check(spec, fs)


def test_free_parameter_does_not_matter():
    spec = ComplexGroupSpec(2, 3, 1, 0, 1, {2: mpq(7, 11)})
    for f in complex_singular_family(spec):
        assert all(r.is_zero() for r in complex_dunkl_all(spec, f))


def test_action_check_examples():
    spec = ComplexGroupSpec(2, 2, 1, 0, 0)
    fs = complex_singular_family(spec)
    assert complex_group_action_check(spec, fs)
    assert not complex_group_action_check(spec, [fs[0] + fs[1], fs[1]])
    spec3 = ComplexGroupSpec(2, 3, 1, 0, 0)
    assert complex_group_action_check(spec3, complex_singular_family(spec3))


@pytest.mark.parametrize("n", [2, 3])
def test_ell_2_reproduces_b_n(n):
    rs = parse_group(f"B{n}")
    rng = random.Random(11 * n)
    for _ in range(12):
        c = mpq(rng.randint(-9, 9), rng.randint(1, 6))
        p = random_polynomial(n, rng.randint(0, 4), rng, homogeneous=False)
        for i in range(n):
            lhs = complex_dunkl_operator(n, 2, c, [0, c], i, p)
            assert lhs == dunkl_apply(rs, c, i, p).with_field(lhs.field)


def test_complex_operators_commute():
    rng = random.Random(4)
    for _ in range(5):
        p = random_polynomial(2, 4, rng, homogeneous=False)
        cs = [0, mpq(1, 3), mpq(-2, 5)]
        nu = mpq(2, 7)
        a = complex_dunkl_operator(2, 3, nu, cs, 0, complex_dunkl_operator(2, 3, nu, cs, 1, p))
        b = complex_dunkl_operator(2, 3, nu, cs, 1, complex_dunkl_operator(2, 3, nu, cs, 0, p))
        assert a == b
