import pytest

from cherednik.coxeter import is_invariant, parse_group
from cherednik.field import FieldContext, mpq
from cherednik.poly import MultiPoly
from cherednik.saito import (
    InvariantRing,
    SaitoFrame,
    basic_invariants,
    contravariant_metric,
    express_in_invariants,
    jacobian_rank_at,
    saito_frame,
    verify_saito,
)

GROUPS = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D3", "D4"]


@pytest.fixture(scope="module")
def frames():
    return {g: saito_frame(parse_group(g)) for g in GROUPS}


def test_basic_invariants_b2():
    x1, x2 = MultiPoly.gens(2)
    basis = basic_invariants(parse_group("B2"))
    assert basis.polys == [x1**4 + x2**4, x1**2 + x2**2]


def test_basic_invariants_d4():
    basis = basic_invariants(parse_group("D4"))
    assert basis.degrees == (6, 4, 4, 2)
    assert MultiPoly(4, {(1, 1, 1, 1): 1}) in basis.polys


@pytest.mark.parametrize("group", GROUPS + ["D5", "B5"])
def test_basic_invariants_are_independent_invariants(group):
    rs = parse_group(group)
    basis = basic_invariants(rs)
    assert basis.degrees == rs.degrees
    assert all(is_invariant(rs, p) for p in basis)
    assert jacobian_rank_at(rs, basis.polys) == rs.rank


def test_express_in_invariants_b2():
    x1, x2 = MultiPoly.gens(2)
    basis = basic_invariants(parse_group("B2")).polys
    y1, y2 = MultiPoly.gens(2)
    assert express_in_invariants(x1**2 * x2**2, basis) == (y2**2 - y1).scale(mpq(1, 2))
    assert express_in_invariants(basis[0], basis) == y1
    assert express_in_invariants(MultiPoly.zero(2), basis).is_zero()
    with pytest.raises(ValueError):
        express_in_invariants(x1**2, basis)


def test_metric_examples():
    z1, z2 = MultiPoly.gens(2)
    # A1 in the ambient picture: x = z1 - z2, t = x^2 / 2 gives sum_i (d_i t)^2 = 2 x^2 = 4 t
    t = ((z1 - z2) ** 2).scale(mpq(1, 2))
    g = contravariant_metric(parse_group("A1"), [t])
    assert g[0, 0] == MultiPoly.var(1, 0).scale(4)
    x1, x2 = MultiPoly.gens(2)
    g = contravariant_metric(parse_group("B2"), [x1**4 + x2**4, x1**2 + x2**2])
    assert g.is_symmetric()
    assert g[1, 1] == MultiPoly.var(2, 1).scale(4)


@pytest.mark.parametrize("group", GROUPS)
def test_frames_are_flat(frames, group):
    frame = frames[group]
    report = verify_saito(frame)
    assert report.ok, report.residuals
    n = frame.n
    for a in range(n):
        for b in range(n):
            assert frame.g[a, b].derivative(0) == MultiPoly.const(n, int(a + b == n - 1))


def test_b2_frame_golden(frames):
    x1, x2 = MultiPoly.gens(2)
    f = frames["B2"]
    assert f.t[0] == x1**4 - (x1**2 * x2**2).scale(6) + x2**4
    assert f.t[1] == (x1**2 + x2**2).scale(mpq(1, 8))
    t1, t2 = MultiPoly.gens(2)
    assert f.U[0, 0] == t1 and f.U[1, 1] == t1
    assert f.U[1, 0] == t2.scale(mpq(1, 2))
    assert f.U[0, 1] == (t2**3).scale(8192)


def test_d3_frame_golden(frames):
    x1, x2, x3 = MultiPoly.gens(3)
    f = frames["D3"]
    assert f.t[1] == x1 * x2 * x3
    assert f.t[2] == (x1**2 + x2**2 + x3**2).scale(mpq(1, 8))


def test_d4_needs_sqrt_minus_3(frames):
    f = frames["D4"]
    assert f.field is FieldContext.quadratic(-3)
    assert f.t[1].degree() == f.t[2].degree() == 4


def test_frame_degrees_and_euler(frames):
    for frame in frames.values():
        for a, t in enumerate(frame.t):
            assert t.is_homogeneous() and t.degree() == frame.degrees[a]
        # g is quasi-homogeneous: deg g^{ab} = d_a + d_b - 2
        for a in range(frame.n):
            for b in range(frame.n):
                if frame.g[a, b]:
                    assert frame.g[a, b].weighted_degrees(frame.degrees) == {frame.degrees[a] + frame.degrees[b] - 2}


def test_type_a_coordinates_translation_invariant(frames):
    for g in ("A2", "A3", "A4"):
        for t in frames[g].t:
            assert sum(t.gradient(), MultiPoly.zero(t.nvars)).is_zero()


def test_verify_rejects_wrong_degree(frames):
    f = frames["B2"]
    bad = SaitoFrame(f.rs, [f.t[0] + f.t[1] ** 3, f.t[1]], f.g)
    report = verify_saito(bad)
    assert not report.ok and not report.degrees_ok


def test_verify_rejects_permuted(frames):
    f = frames["B3"]
    t = list(f.t)
    t[1], t[2] = t[2], t[1]
    assert not verify_saito(SaitoFrame(f.rs, t, f.g))
    # swapping the two degree-4 coordinates of D4 keeps eta antidiagonal
    d = frames["D4"]
    assert verify_saito(SaitoFrame(d.rs, [d.t[0], d.t[2], d.t[1], d.t[3]], d.g, d.field))
    assert not verify_saito(SaitoFrame(d.rs, [d.t[0], d.t[1].scale(2), d.t[2], d.t[3]], d.g, d.field))


def test_verify_rejects_rescaled(frames):
    f = frames["A3"]
    t = [f.t[0].scale(2)] + list(f.t[1:])
    assert not verify_saito(SaitoFrame(f.rs, t, f.g))


def test_invariant_ring_cache():
    x1, x2 = MultiPoly.gens(2)
    ring = InvariantRing([x1**4 + x2**4, x1**2 + x2**2])
    assert ring.monomial((1, 2)) == (x1**4 + x2**4) * (x1**2 + x2**2) ** 2
    assert len(ring.monomials(8)) == 3


def test_jacobian_degenerates_on_mirror():
    rs = parse_group("B2")
    polys = basic_invariants(rs).polys
    assert jacobian_rank_at(rs, polys, point=[mpq(3), mpq(0)]) == 1
    assert jacobian_rank_at(rs, polys, point=[mpq(3), mpq(2)]) == 2
