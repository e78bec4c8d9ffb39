import random

import pytest

from wdp import multivec as mv
from wdp.config import (builtin_presets, eta, ini_ordinary, ini_sided,
                        load_preset_text, pair, parse_class, single)
from wdp.lattice import mat_apply

PRESETS = builtin_presets()


def test_all_presets_load_and_validate():
    assert len(PRESETS) == 12
    for cfg in PRESETS.values():
        n = cfg.ctx.rank
        ident = tuple(tuple(1 if i == j else 0 for j in range(n))
                      for i in range(n))
        sq = tuple(tuple(sum(cfg.conj[i][k] * cfg.conj[k][j]
                             for k in range(n)) for j in range(n))
                   for i in range(n))
        assert sq == ident
        assert mat_apply(cfg.conj, cfg.ctx.e_class) == cfg.ctx.e_class
        assert mat_apply(cfg.conj, cfg.ctx.canonical_class) \
            == cfg.ctx.canonical_class


def test_r_dim():
    cfg = PRESETS["q4minus"]
    c = cfg.conic_class
    assert cfg.r_dim(single(c), mv.e(2)) == 0
    e1 = parse_class("E1", cfg.ctx)
    assert cfg.r_dim(single(e1), mv.e(1)) == 0
    l17 = parse_class("L-E1-E7", cfg.ctx)
    assert cfg.r_dim(pair(e1, l17), mv.e(1, 2)) == 0
    mk = parse_class("-K", cfg.ctx)
    assert cfg.r_dim(single(mk), mv.ZERO) == 1


def test_f_compatibility():
    q0 = PRESETS["q0minus"]
    mk = parse_class("-K", q0.ctx)
    assert not q0.f_compatible(mk)
    assert q0.f_compatible(parse_class("-2K", q0.ctx))
    assert PRESETS["q4minus"].f_compatible(parse_class("-K", PRESETS["q4minus"].ctx))
    fo = PRESETS["n11minus_fo"]
    assert not fo.f_compatible(parse_class("-K", fo.ctx))
    assert fo.f_compatible(parse_class("-2K", fo.ctx))
    with pytest.raises(ValueError):
        PRESETS["q3minus"].f_compatible(parse_class("E1", PRESETS["q3minus"].ctx))


def test_ini_ordinary_base_values():
    cfg = PRESETS["q4minus"]
    e1 = parse_class("E1", cfg.ctx)
    assert ini_ordinary(cfg, "phi0", single(e1), mv.ZERO, mv.e(1), mv.ZERO) == 1
    c = cfg.conic_class
    assert ini_ordinary(cfg, "phi0", single(c), mv.e(1), mv.e(1), mv.ZERO) == 1
    # conjugate pairs on the one-real-point preset
    q1 = PRESETS["q1minus"]
    p = pair(parse_class("E1", q1.ctx), parse_class("E2", q1.ctx))
    assert ini_ordinary(q1, "phi0", p, mv.ZERO, mv.ZERO, mv.e(1)) == 1
    # intersecting conjugate pairs on the hyperbolic preset carry a sign
    q2 = PRESETS["q2plus"]
    pi = pair(parse_class("E1", q2.ctx), parse_class("L-E1-E7", q2.ctx))
    assert ini_ordinary(q2, "phi0", pi, mv.ZERO, mv.ZERO, mv.e(1)) == -1
    assert ini_ordinary(q2, "phiF", pi, mv.ZERO, mv.ZERO, mv.e(1)) == -1
    pj = pair(parse_class("E3", q2.ctx), parse_class("L-E3-E7", q2.ctx))
    assert ini_ordinary(q2, "phiF", pj, mv.ZERO, mv.ZERO, mv.e(1)) == 1


def test_ini_ordinary_vanishes_off_list():
    # random admissible zero-dimensional tuples that match no listed shape
    cfg = PRESETS["q4minus"]
    ctx = cfg.ctx
    rng = random.Random(17)
    gens = ctx.cone_generators()
    checked = 0
    listed = 0
    while checked < 200:
        d = (0,) * ctx.rank
        for _ in range(rng.randint(1, 3)):
            d = tuple(a + b for a, b in zip(d, rng.choice(gens)))
        de = ctx.pair(d, ctx.e_class)
        if de < 1:
            continue
        beta = mv.e(1, de)
        if cfg.r_dim(single(d), beta) != 0:
            continue
        val = ini_ordinary(cfg, "phi0", single(d), mv.ZERO, beta, mv.ZERO)
        is_listed = (d in ctx.curly_e() and de == 1)
        checked += 1
        if is_listed:
            listed += 1
            assert val == 1
        else:
            assert val == 0
    assert checked == 200 and listed > 0


def test_ini_sided_values():
    fno = PRESETS["n11minus_fno"]
    c = fno.conic_class
    assert ini_sided(fno, "phi0", "minus", single(c), mv.ZERO, mv.e(2),
                     mv.ZERO) == 2
    q0 = PRESETS["q0minus"]
    assert ini_sided(q0, "phi0", "minus", single(q0.conic_class), mv.ZERO,
                     mv.e(2), mv.ZERO) == 0  # supporting curves imaginary
    p = pair(parse_class("E2", q0.ctx), parse_class("E3", q0.ctx))
    assert ini_sided(q0, "phi0", "minus", p, mv.ZERO, mv.ZERO, mv.e(1)) == 1
    with pytest.raises(ValueError):
        ini_sided(PRESETS["q4minus"], "phi0", "plus",
                  single(PRESETS["q4minus"].conic_class), mv.ZERO, mv.e(2),
                  mv.ZERO)


def test_eta_table():
    # hand transcription of the seven-case coefficient for l <= 12
    fno = PRESETS["n11minus_fno"]   # both supporting curves real, plus side
    want_real_plus = {0: 1, 1: 4, 2: 6, 3: 4, 4: 3, 5: 8, 6: 12, 7: 8,
                      8: 5, 9: 12, 10: 18, 11: 12, 12: 7}
    for l, want in want_real_plus.items():
        assert eta(fno, "phi0", l) == want, l
    q0 = PRESETS["q0minus"]         # supporting curves imaginary
    for l in range(13):
        want = l // 2 + 1 if l % 2 == 0 else 0
        assert eta(q0, "phi0", l) == want, l


def test_phi0_parities_give_unit_values():
    for fam in ("q4minus", "q1minus", "n11plus", "q0minus"):
        cfg = PRESETS[fam]
        for rec in cfg.pairs:
            if rec.kind == "real_int":
                continue
            p = pair(rec.c1, rec.c2)
            te = cfg.ctx.pair(rec.c1, cfg.ctx.e_class) \
                + cfg.ctx.pair(rec.c2, cfg.ctx.e_class)
            v = ini_ordinary(cfg, "phi0", p, mv.ZERO, mv.ZERO, mv.e(te // 2))
            assert v == (-1 if rec.kind == "conj_int" else 1)


def test_preset_text_roundtrip_error():
    with pytest.raises(ValueError):
        load_preset_text("family: x\nkind: regular\n")


def test_class_expression_parser():
    ctx = PRESETS["q4minus"].ctx
    assert parse_class("-2K", ctx) == tuple(-2 * x for x in ctx.canonical_class)
    assert parse_class("3L-E1-2E7", ctx) == (3, -1, 0, 0, 0, 0, 0, -2)
    with pytest.raises(ValueError):
        parse_class("2X", ctx)
    qctx = PRESETS["q1plus"].ctx
    assert parse_class("L1+L2-E3", qctx) == (1, 1, 0, 0, -1, 0, 0, 0)
