"""First cohomology of Gamma_0(n): full, parabolic, unit-invariant layers."""

from __future__ import annotations

import random

import pytest

from bianchicoh.cohom import (
    Cusp,
    CoefficientModulus,
    cusp_equivalent,
    cusps,
    evaluate,
    h1,
    parabolic,
    unit_conjugation_operator,
    unit_invariants,
)
from bianchicoh.errors import BadModulus
from bianchicoh.ideals import parse_ideal
from bianchicoh.modlinalg import coordinates_in_rowspace
from bianchicoh.qfield import Mat2, field
from bianchicoh.schreier import build
from oracles import abelian_invariants

# (d, level, q) -> (dim H^1, dim parabolic, dim parabolic-unit)
FROZEN_DIMS = [
    (1, "(2+5*w)", 7, (1, 1, 1)),
    (1, "(3)", 5, (0, 0, 0)),
    (2, "(0+1*w)", 5, (2, 0, 0)),
    (2, "(3+1*w)", 5, (3, 1, 1)),
    (2, "(3+1*w)", 7, (2, 0, 0)),
    (3, "(1+5*w)", 5, (1, 1, 1)),
    (7, "(1+2*w)", 5, (3, 1, 1)),
    (11, "(1-2*w)", 5, (3, 1, 1)),
]


def _build(d, text):
    ctx = field(d)
    return build(parse_ideal(ctx, text), ctx)


def _random_member(cc, rng, nsteps=5):
    m = Mat2.identity(cc.ctx)
    for _ in range(nsteps):
        _, g = cc.sgens[rng.randrange(len(cc.sgens))]
        m = m * (g if rng.random() < 0.5 else g.inv_det_one())
    return m


def test_modulus_validation():
    assert CoefficientModulus(5).q == 5
    with pytest.raises(BadModulus, match="prime >= 5"):
        CoefficientModulus(3)
    with pytest.raises(BadModulus, match="is not prime"):
        CoefficientModulus(6)


def test_h1_dimension_matches_abelianization_oracle():
    """dim H^1 = free rank + number of torsion orders divisible by q."""
    for d, text in [(1, "(2+1*w)"), (2, "(3+1*w)"), (3, "(2)"),
                    (7, "(0+1*w)"), (11, "(1-2*w)")]:
        cc = _build(d, text)
        rank, torsion = abelian_invariants(cc.relmat, len(cc.sgens))
        for q in (5, 7, 13):
            expected = rank + sum(1 for t in torsion if t % q == 0)
            assert h1(cc, q).dim == expected, (d, text, q)


def test_frozen_dimension_table():
    for d, text, q, (df, dp, du) in FROZEN_DIMS:
        cc = _build(d, text)
        full = h1(cc, q)
        par = parabolic(full)
        uni = unit_invariants(par)
        assert (full.dim, par.dim, uni.dim) == (df, dp, du), (d, text, q)


def test_level_one_gives_ambient_homomorphisms():
    expected = {1: 0, 2: 1, 3: 0, 7: 1, 11: 1}
    for d, dim in expected.items():
        cc = _build(d, "(1)")
        assert h1(cc, 5).dim == dim
        assert len(cusps(cc)) == 1


def test_prime_levels_have_two_cusps():
    for d, text in [(1, "(2+1*w)"), (1, "(3)"), (2, "(3+1*w)"),
                    (3, "(2)"), (7, "(1+2*w)"), (11, "(0+1*w)")]:
        cc = _build(d, text)
        cl = cusps(cc)
        assert len(cl) == 2
        (a1, c1), (a2, c2) = (cl[0].a, cl[0].c), (cl[1].a, cl[1].c)
        ok, gamma = cusp_equivalent(cc, a1, c1, a2, c2)
        assert not ok and gamma is None


def test_cusp_equivalence_certificate():
    """Moving a cusp by a group element keeps it equivalent, with witness."""
    rng = random.Random(3)
    cc = _build(2, "(3+1*w)")
    for cusp in cusps(cc):
        for _ in range(5):
            g = _random_member(cc, rng)
            a2 = g.a * cusp.a + g.b * cusp.c
            c2 = g.c * cusp.a + g.d * cusp.c
            ok, gamma = cusp_equivalent(cc, cusp.a, cusp.c, a2, c2)
            assert ok
            assert cc.membership(gamma)


def test_cusp_gmat_carries_infinity_to_the_cusp():
    cc = _build(1, "(2+2*w)")
    for cusp in cusps(cc):
        g = cusp.gmat
        assert g.det().is_one()
        assert g.a == cusp.a and g.c == cusp.c


def test_parabolic_subspace_is_contained_and_vanishes_on_widths():
    for d, text, q, _ in FROZEN_DIMS[3:6]:
        cc = _build(d, text)
        full = h1(cc, q)
        par = parabolic(full)
        assert par.dim <= full.dim
        for row in par.basis.arr:
            assert coordinates_in_rowspace(full.basis, row) is not None
        ctx = cc.ctx
        for cusp in cusps(cc):
            gi = cusp.gmat.inv_det_one()
            for mult in (ctx.one, ctx.omega):
                xi = cusp.width_gen * mult
                m = cusp.gmat * Mat2(ctx.one, xi, ctx.zero, ctx.one) * gi
                for i in range(par.dim):
                    coeffs = [1 if j == i else 0 for j in range(par.dim)]
                    assert evaluate(par, coeffs, m) == 0


def test_unit_invariant_classes_are_conjugation_invariant():
    rng = random.Random(7)
    for d, text, q in [(2, "(3+1*w)", 5), (3, "(1+5*w)", 5), (1, "(2+5*w)", 7)]:
        cc = _build(d, text)
        ctx = cc.ctx
        uni = unit_invariants(parabolic(h1(cc, q)))
        if ctx.d in (1, 3):
            u0 = ctx.omega
        else:
            u0 = ctx.zero - ctx.one
        u0i = next(u for u in ctx.units if (u0 * u).is_one())
        for i in range(uni.dim):
            coeffs = [1 if j == i else 0 for j in range(uni.dim)]
            for _ in range(10):
                m = _random_member(cc, rng)
                conj = Mat2(m.a, u0 * m.b, u0i * m.c, m.d)
                assert cc.membership(conj)
                assert evaluate(uni, coeffs, conj) == evaluate(uni, coeffs, m)


def test_unit_invariants_idempotent():
    for d, text, q, _ in FROZEN_DIMS[:4]:
        cc = _build(d, text)
        par = parabolic(h1(cc, q))
        uni = unit_invariants(par)
        again = unit_invariants(uni)
        assert again.basis == uni.basis
        assert again.kind == uni.kind


def test_kind_guards():
    cc = _build(1, "(2+1*w)")
    full = h1(cc, 5)
    with pytest.raises(ValueError):
        parabolic(parabolic(full))
    with pytest.raises(ValueError):
        unit_invariants(full)


def test_unit_operator_is_an_involution_power():
    """Conjugation by diag(u0, 1) has finite order on the parabolic space."""
    from bianchicoh.modlinalg import MatQ, matpow

    for d, text, q in [(2, "(3+1*w)", 5), (11, "(1-2*w)", 5)]:
        cc = _build(d, text)
        par = parabolic(h1(cc, q))
        op = unit_conjugation_operator(par)
        order = len(cc.ctx.units) // 2 if cc.ctx.d in (1, 3) else 2
        assert matpow(op, order) == MatQ.identity(q, par.dim)


def test_evaluate_is_a_homomorphism():
    rng = random.Random(11)
    cc = _build(7, "(1+2*w)")
    full = h1(cc, 5)
    coeffs = [rng.randrange(5) for _ in range(full.dim)]
    for _ in range(15):
        m1 = _random_member(cc, rng)
        m2 = _random_member(cc, rng)
        v = (evaluate(full, coeffs, m1) + evaluate(full, coeffs, m2)) % 5
        assert evaluate(full, coeffs, m1 * m2) == v


def test_dimensions_stable_under_tree_permutation_and_cusp_substitution():
    rng = random.Random(13)
    for d, text, q, dims in FROZEN_DIMS[2:5]:
        ctx = field(d)
        n = parse_ideal(ctx, text)
        cc2 = build(n, ctx, move_order="reversed")
        full2 = h1(cc2, q)
        par2 = parabolic(full2)
        uni2 = unit_invariants(par2)
        assert (full2.dim, par2.dim, uni2.dim) == dims, (d, text, "reversed")
        # replace each cusp representative by a translate: same subspace
        cc = build(n, ctx)
        full = h1(cc, q)
        moved = []
        for cusp in cusps(cc):
            g = _random_member(cc, rng)
            a2 = g.a * cusp.a + g.b * cusp.c
            c2 = g.c * cusp.a + g.d * cusp.c
            moved.append(Cusp(a2, c2, g * cusp.gmat, n.colon_square(c2)))
        assert parabolic(full, cusp_list=moved).basis == parabolic(full).basis
