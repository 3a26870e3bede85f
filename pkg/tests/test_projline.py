"""Projective line over O/n: enumeration, normalization, right action."""

from __future__ import annotations

import random

import pytest

from bianchicoh.errors import BadDeterminant, NotProjectivePoint, ZeroModulus
from bianchicoh.ideals import PIdeal, parse_ideal
from bianchicoh.projline import P1Table, p1_apply, p1_enumerate, p1_normalize, p1_table
from bianchicoh.qfield import Mat2, field
from oracles import brute_p1_count

FIELDS = (1, 2, 3, 7, 11)

LEVELS = {
    1: ["(1+1*w)", "(2+1*w)", "(3)", "(2+2*w)", "(4+1*w)"],
    2: ["(0+1*w)", "(1+1*w)", "(3+1*w)", "(2)"],
    3: ["(1+1*w)", "(2)", "(3+1*w)", "(0+3*w)"],
    7: ["(0+1*w)", "(1+2*w)", "(3)", "(2)"],
    11: ["(0+1*w)", "(1-2*w)", "(2)", "(0+3*w)"],
}


def test_sizes_match_brute_force():
    for d, texts in LEVELS.items():
        ctx = field(d)
        for text in texts:
            n = parse_ideal(ctx, text)
            assert len(p1_table(n)) == brute_p1_count(n), (d, text)


def test_unit_level_has_one_point():
    for d in FIELDS:
        n = parse_ideal(field(d), "(1)")
        assert len(p1_table(n)) == 1


def test_zero_level_rejected():
    with pytest.raises(ZeroModulus):
        P1Table(PIdeal(field(1).zero))


def test_normalize_is_constant_on_unit_rays():
    rng = random.Random(4)
    for d in (1, 3, 11):
        ctx = field(d)
        n = parse_ideal(ctx, LEVELS[d][2])
        tab = p1_table(n)
        for pt in tab.points:
            for u in ctx.units:
                assert tab.normalize(pt.c * u, pt.d * u) == pt
        # shifting by level multiples does not move the point either
        for _ in range(30):
            pt = rng.choice(tab.points)
            r = ctx.element(rng.randrange(-3, 4), rng.randrange(-3, 4))
            assert tab.normalize(pt.c + n.gen * r, pt.d) == pt


def test_non_projective_pairs_rejected():
    ctx = field(1)
    n = parse_ideal(ctx, "(2+1*w)")
    with pytest.raises(NotProjectivePoint):
        p1_normalize(ctx.zero, ctx.zero, n)
    with pytest.raises(NotProjectivePoint):
        p1_normalize(n.gen, n.gen * ctx.element(3), n)


def test_action_is_a_permutation_and_respects_products():
    rng = random.Random(11)
    for d in FIELDS:
        ctx = field(d)
        n = parse_ideal(ctx, LEVELS[d][1])
        tab = p1_table(n)
        mats = []
        for _ in range(6):
            # random words in the two standard unipotents stay in SL2(O)
            g = Mat2.identity(ctx)
            for _ in range(5):
                x = ctx.element(rng.randrange(-2, 3), rng.randrange(-2, 3))
                if rng.random() < 0.5:
                    g = g * Mat2(ctx.one, x, ctx.zero, ctx.one)
                else:
                    g = g * Mat2(ctx.one, ctx.zero, x, ctx.one)
            mats.append(g)
        for g in mats:
            images = [tab.apply(g, pt) for pt in tab.points]
            assert len({p.index for p in images}) == len(tab)
        for g in mats[:3]:
            for h in mats[3:]:
                for pt in tab.points:
                    assert tab.apply(g * h, pt) == tab.apply(h, tab.apply(g, pt))


def test_action_requires_unit_determinant():
    ctx = field(2)
    n = parse_ideal(ctx, "(3+1*w)")
    tab = p1_table(n)
    bad = Mat2(ctx.element(2), ctx.zero, ctx.zero, ctx.one)
    with pytest.raises(BadDeterminant):
        tab.apply(bad, tab.base_point())


def test_base_point_stabilizer_is_gamma0():
    """(0:1) is fixed exactly by matrices with lower-left entry in n."""
    ctx = field(7)
    n = parse_ideal(ctx, "(1+2*w)")
    tab = p1_table(n)
    b = tab.base_point()
    for x in (ctx.zero, n.gen, n.gen * ctx.omega):
        g = Mat2(ctx.one, ctx.zero, x, ctx.one)
        assert tab.apply(g, b) == b
    h = Mat2(ctx.one, ctx.one, ctx.zero, ctx.one)
    assert tab.apply(h, b) == b
    s = Mat2(ctx.zero, ctx.zero - ctx.one, ctx.one, ctx.zero)
    assert tab.apply(s, b) != b


def test_module_level_helpers_agree_with_table():
    ctx = field(3)
    n = parse_ideal(ctx, "(2)")
    tab = p1_table(n)
    assert p1_enumerate(n) == tab.points
    g = Mat2(ctx.one, ctx.one, ctx.zero, ctx.one)
    for pt in tab.points:
        assert p1_apply(g, pt, n) == tab.apply(g, pt)
