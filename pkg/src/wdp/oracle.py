"""Independent, slow, obviously correct evaluators.

The dominant bug class in this kind of engine is splitting-enumeration
miscounting, so the naive evaluator here shares the initial conditions and
the exact cone test with the engine but none of its enumeration machinery:
it walks ordered sequences of parts with no canonical ordering and no
point-count pruning, divides each completed sequence by the number of its
orderings through an exact rational accumulator, and never memoizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import multivec as mv
from .config import (SurfaceConfig, eta, ini_ordinary, ini_sided, is_pair,
                     pair, single, total_class)
from .lattice import vec_sub, vec_scale


class OracleBoundError(ValueError):
    """The oracle refuses keys above its dimension bound."""


@dataclass(frozen=True)
class OracleReport:
    key: tuple
    engine_value: int
    oracle_value: int

    @property
    def agree(self) -> bool:
        return self.engine_value == self.oracle_value


def wdvv_gw(d: int) -> int:
    """Count of rational plane curves of degree d through 3d - 1 points,
    by the quadratic recursion from the associativity relation."""
    if d < 1:
        raise ValueError("degree must be positive")
    n = [0, 1]
    for deg in range(2, d + 1):
        tot = 0
        for a in range(1, deg):
            b = deg - a
            tot += n[a] * n[b] * (
                a * a * b * b * math.comb(3 * deg - 4, 3 * a - 2)
                - a ** 3 * b * math.comb(3 * deg - 4, 3 * a - 1))
        n.append(tot)
    return n[d]


def naive_w(cfg: SurfaceConfig, phi: str, kind: str, spec,
            alpha=mv.ZERO, beta_re=mv.ZERO, beta_im=mv.ZERO,
            rmax: int = 3) -> int:
    """Unmemoized recursive evaluation of one w-number.

    ``kind`` is ordinary, sided_plus or sided_minus.  Keys with expected
    dimension above ``rmax`` are refused: the evaluator is intentionally
    slow and exists only to validate the engine on small keys.
    """
    r = cfg.r_dim(spec, mv.add(beta_re, mv.scale(beta_im, 2)))
    if r > rmax:
        raise OracleBoundError(f"dimension {r} above oracle bound {rmax}")
    val = _nw(cfg, phi, kind, spec, alpha, beta_re, beta_im)
    if val.denominator != 1:
        raise AssertionError("oracle value is not an integer")
    return int(val)


def _nw(cfg, phi, kind, spec, alpha, beta_re, beta_im) -> Fraction:
    ctx = cfg.ctx
    te = ctx.pair(total_class(spec), ctx.e_class)
    if mv.iweight(alpha) + mv.iweight(beta_re) + 2 * mv.iweight(beta_im) != te:
        raise ValueError("inadmissible tuple")
    r = cfg.r_dim(spec, mv.add(beta_re, mv.scale(beta_im, 2)))
    if r < 0:
        return Fraction(0)
    if r == 0:
        if kind == "ordinary":
            return Fraction(ini_ordinary(cfg, phi, spec, alpha, beta_re, beta_im))
        return Fraction(ini_sided(cfg, phi, kind.split("_")[1], spec,
                                  alpha, beta_re, beta_im))
    if is_pair(spec) or beta_im:
        return Fraction(0)
    d = spec[1]
    if kind == "ordinary":
        if not (mv.is_odd_support(alpha) and mv.is_odd_support(beta_re)):
            return Fraction(0)
        return _nw_ordinary(cfg, phi, d, alpha, beta_re, r)
    if not (mv.is_even_support(alpha) and mv.is_even_support(beta_re)):
        return Fraction(0)
    if kind == "sided_plus":
        return _nw_sided_plus(cfg, phi, d, alpha, beta_re, r)
    return _nw_sided_minus(cfg, phi, d, alpha, beta_re, r)


def _first_sum(cfg, phi, kind, d, alpha, beta, factor, jmin=1):
    tot = Fraction(0)
    for j, _m in beta:
        if j < jmin:
            continue
        tot += factor * _nw(cfg, phi, kind, single(d),
                            mv.add(alpha, mv.e(j)), mv.sub(beta, mv.e(j)),
                            mv.ZERO)
    return tot


def _nw_ordinary(cfg, phi, d, alpha, beta, n) -> Fraction:
    tot = _first_sum(cfg, phi, "ordinary", d, alpha, beta, 1)
    ehp = cfg.e_half.get(phi, 0)
    lhp = cfg.l_half.get(phi, 0)
    for l, a0, b0, seq in _ordered_splittings(cfg, d, alpha, beta, "ordinary"):
        m = len(seq)
        coeff = Fraction(l + 1) / math.factorial(m)
        coeff *= Fraction(2 ** mv.norm(b0), mv.fact(b0))
        coeff *= mv.multinomial(alpha, (a0,) + tuple(p[1] for p in seq))
        coeff *= _points_factor(cfg, seq, n)
        sgn = ehp + lhp * (mv.iweight(a0) + mv.iweight(b0))
        prod = Fraction(-1 if sgn % 2 else 1)
        for sp, a_i, br_i, bi_i, g_i in seq:
            prod *= mv.binom_vec(br_i, g_i)
            prod *= _nw(cfg, phi, "ordinary", sp, a_i, br_i, bi_i)
        tot += coeff * prod
    return tot


def _nw_sided_plus(cfg, phi, d, alpha, beta, n) -> Fraction:
    ctx = cfg.ctx
    cd = ctx.pair(cfg.conic_class, d)
    if cd == 0 or cd > 2:
        return Fraction(0)
    if cd == 1:
        return (2 ** mv.norm(beta)) * _nw(cfg, phi, "sided_plus", single(d),
                                          mv.add(alpha, beta), mv.ZERO, mv.ZERO)
    tot = _first_sum(cfg, phi, "sided_plus", d, alpha, beta, 2, jmin=2)
    ehp = cfg.e_half.get(phi, 0)
    lhp = cfg.l_half.get(phi, 0)
    for l, a0, b0, seq in _ordered_splittings(cfg, d, alpha, beta,
                                              "sided_plus_2iii"):
        m = len(seq)
        coeff = Fraction((4 ** (n - 1)) * (l // 2 + 1), math.factorial(m))
        coeff *= mv.binom_vec(alpha, a0)
        prod = Fraction(-1 if (ehp + lhp * mv.iweight(a0)) % 2 else 1)
        for sp, a_i, br_i, bi_i, _g in seq:
            prod *= _nw(cfg, phi, "sided_plus", sp, a_i, br_i, bi_i)
        tot += coeff * prod
    return tot


def _nw_sided_minus(cfg, phi, d, alpha, beta, n) -> Fraction:
    tot = _first_sum(cfg, phi, "sided_minus", d, alpha, beta, 2, jmin=2)
    ehp = cfg.e_half.get(phi, 0)
    lhp = cfg.l_half.get(phi, 0)
    for l, a0, b0, seq in _ordered_splittings(cfg, d, alpha, beta,
                                              "sided_minus"):
        et = eta(cfg, phi, l)
        if et == 0:
            continue
        m = len(seq)
        coeff = Fraction(et) / math.factorial(m)
        coeff *= Fraction(4 ** mv.norm(b0), mv.fact(b0))
        coeff *= mv.multinomial(alpha, (a0,) + tuple(p[1] for p in seq))
        coeff *= _points_factor(cfg, seq, n)
        sgn = ehp + lhp * (mv.iweight(a0) + mv.iweight(b0))
        prod = Fraction(-1 if sgn % 2 else 1)
        for sp, a_i, br_i, bi_i, g_i in seq:
            prod *= mv.binom_vec(br_i, g_i)
            if not is_pair(sp):
                prod *= 2  # mu_2 multiplicity of the smoothed point
            prod *= _nw(cfg, phi, "sided_minus", sp, a_i, br_i, bi_i)
        tot += coeff * prod
    return tot


def _points_factor(cfg, seq, n) -> Fraction:
    out = Fraction(math.factorial(n - 1))
    for sp, _a, br, bi, _g in seq:
        out /= math.factorial(cfg.r_dim(sp, mv.add(br, mv.scale(bi, 2))))
    return out


def _ordered_splittings(cfg, d, alpha, beta, variant):
    """Ordered part sequences; every permutation of a multiset is yielded."""
    ctx = cfg.ctx
    c = cfg.conic_class
    ecl = ctx.e_class
    B = vec_sub(tuple(d), ecl)
    if ctx.k_degree(B) < 0:
        return
    pairs_only = variant == "sided_plus_2iii"
    l_step = 2 if variant == "ordinary" else 1
    kc = ctx.k_degree(c)
    for l in range(ctx.k_degree(B) // (l_step * kc) + 1):
        if pairs_only and l % 2:
            continue
        for a0 in mv.subvectors(alpha):
            b0_iter = (beta,) if pairs_only else tuple(mv.subvectors(beta))
            for b0 in b0_iter:
                shift = l_step * l + mv.iweight(a0) + mv.iweight(b0)
                S = vec_sub(B, vec_scale(shift, c))
                if ctx.k_degree(S) < 0:
                    continue
                if any(S) and not ctx.is_effective(S):
                    continue
                rest_a = mv.sub(alpha, a0)
                rest_b = mv.ZERO if pairs_only else mv.sub(beta, b0)
                for seq in _sequences(cfg, variant, S, rest_a, rest_b):
                    yield l, a0, (mv.ZERO if pairs_only else b0), seq


def _sequences(cfg, variant, budget, rest_a, rest_b):
    ctx = cfg.ctx
    zero = (0,) * ctx.rank
    if budget == zero:
        if not rest_b:
            yield ()
        return
    if not ctx.is_effective(budget):
        return
    for cand in _candidates(cfg, variant, budget, rest_a, rest_b):
        sp, a_i, br_i, bi_i, g_i, delta = cand
        for tail in _sequences(cfg, variant, vec_sub(budget, total_class(sp)),
                               mv.sub(rest_a, a_i), mv.sub(rest_b, delta)):
            part = (sp, a_i, br_i, bi_i, g_i)
            # rigid parts must not repeat within a sequence
            if (not a_i and cfg.r_dim(sp, mv.add(br_i, mv.scale(bi_i, 2))) == 0
                    and any(t[0] == sp and t[2] == br_i and t[3] == bi_i
                            for t in tail)):
                continue
            yield (part,) + tail


def _candidates(cfg, variant, budget, rest_a, rest_b):
    ctx = cfg.ctx
    out = []
    for rec in cfg.pairs:
        if rec.kind == "real_int" or variant == "complex":
            continue
        sp = pair(rec.c1, rec.c2)
        tot = total_class(sp)
        te = ctx.pair(tot, ctx.e_class)
        if te < 2 or te % 2:
            continue
        if variant in ("sided_minus", "sided_plus_2iii") and te != 2:
            continue
        if not ctx.is_effective(vec_sub(budget, tot)):
            continue
        out.append((sp, mv.ZERO, mv.ZERO, mv.e(te // 2), mv.ZERO, mv.ZERO))
    if variant == "sided_plus_2iii":
        return out
    for X in _classes_below(cfg, budget):
        if X == cfg.conic_class or not cfg.is_real(X):
            continue
        xe = ctx.pair(X, ctx.e_class)
        if xe < 1:
            continue
        for g in range(1, xe + 1):
            if variant == "ordinary" and g % 2 == 0:
                continue
            if variant == "sided_minus" and g % 4 != 2:
                continue
            for a_i in mv.subvectors(rest_a):
                need = xe - g - mv.iweight(a_i)
                if need < 0:
                    continue
                for delta in mv.subvectors(rest_b):
                    if mv.iweight(delta) != need:
                        continue
                    out.append((single(X), a_i, mv.add(mv.e(g), delta),
                                mv.ZERO, mv.e(g), delta))
    return out


def _classes_below(cfg, budget):
    # plain recursive generation over cone generators, no frontier sharing
    ctx = cfg.ctx
    gens = ctx.cone_generators()
    seen = set()
    zero = (0,) * ctx.rank

    def rec(v):
        for g in gens:
            w = tuple(a + b for a, b in zip(v, g))
            if w in seen:
                continue
            if not ctx.is_effective(vec_sub(budget, w)):
                continue
            seen.add(w)
            rec(w)

    rec(zero)
    return sorted(seen)
