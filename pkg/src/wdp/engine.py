"""Memoized evaluation of the curve-counting recursions.

Three families of numbers share one degeneration skeleton: ordinary signed
real counts, sided signed real counts on dividing configurations, and the
plain complex relative counts.  Each recursion step either trades a free
tangency point for a fixed one (first sum) or splits the class across the
(-2)-curve into parts plus non-reduced multiples of the conic pencil
(second sum).  The second sum runs over unordered multisets of parts,
counted once each; identical parts are compensated by the automorphism
factor of the multiset, and completeness of the enumeration is guaranteed
by pruning only through exact effective-cone membership.

Per-part multiplicities differ by lane: the ordinary lane smooths odd
tangencies with multiplicity one, the sided minus lane smooths indices
2 mod 4 with multiplicity two (the only nonzero row of the mu_2 table),
and the complex lane smooths order g with multiplicity g.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from . import multivec as mv
from .config import (SurfaceConfig, eta, ini_ordinary, ini_sided, is_pair,
                     pair, single, total_class)
from .lattice import vec_sub, vec_scale

KINDS = ("ordinary", "sided_plus", "sided_minus", "complex_n")

# Unordered-multiset convention: each splitting counted once, with the
# printed coefficients divided by the product of multiplicities' factorials
# of repeated parts (equivalently, the ordered sum divided by m!).
AUT_DIVIDE = True


@dataclass(frozen=True)
class Part:
    spec: tuple
    alpha: mv.MV
    beta_re: mv.MV
    beta_im: mv.MV
    gamma: mv.MV

    def sort_key(self):
        return (self.spec, self.alpha, self.beta_re, self.beta_im, self.gamma)


@dataclass(frozen=True)
class SplitTerm:
    l: int
    alpha0: mv.MV
    beta0: mv.MV
    parts: tuple  # sorted tuple of Part


@dataclass(frozen=True)
class _Cand:
    part: Part
    total: tuple       # [spec]
    kdeg: int
    n: int             # expected dimension of the part
    delta: mv.MV       # beta_re - gamma, drawn from the free pool
    rigid: tuple | None
    dots: tuple = ()   # nef pairing profile for dominance pruning


def _gamma_ok(variant: str, g: int) -> bool:
    if variant == "ordinary":
        return g % 2 == 1
    if variant == "sided_minus":
        return g % 4 == 2
    return True  # complex


def _class_pool(cfg: SurfaceConfig, budget, want_real: bool):
    """Candidate part classes below a budget: nonzero cone points crossing
    E positively and different from the conic class.  Entries carry their
    nef pairing profile for cheap dominance pruning."""
    cache = cfg.__dict__.setdefault("_pool_cache", {})
    key = (budget, want_real)
    hit = cache.get(key)
    if hit is not None:
        return hit
    ctx = cfg.ctx
    gens = ctx.cone_generators()
    zero = (0,) * ctx.rank
    seen = {zero}
    frontier = [zero]
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = tuple(a + b for a, b in zip(v, g))
            if w in seen:
                continue
            if not ctx.is_effective(vec_sub(budget, w)):
                continue
            seen.add(w)
            frontier.append(w)
    nef_duals = tuple(ctx.dualize(n) for n in ctx.nef_family())
    rng = range(ctx.rank)
    pool = []
    for w in sorted(seen):
        if not any(w) or w == cfg.conic_class:
            continue
        if want_real and not cfg.is_real(w):
            continue
        xe = ctx.pair(w, ctx.e_class)
        if xe < 1:
            continue
        dots = tuple(sum(nd[i] * w[i] for i in rng) for nd in nef_duals)
        pool.append((w, xe, ctx.pair(cfg.conic_class, w),
                     ctx.k_degree(w), dots))
    cache[key] = pool
    return pool


def _pair_pool(cfg: SurfaceConfig, sided: bool):
    ctx = cfg.ctx
    rng = range(ctx.rank)
    nef_duals = tuple(ctx.dualize(n) for n in ctx.nef_family())
    out = []
    for rec in cfg.pairs:
        if rec.kind == "real_int":
            continue
        spec = pair(rec.c1, rec.c2)
        tot = total_class(spec)
        te = ctx.pair(tot, ctx.e_class)
        if te < 2 or te % 2:
            continue
        if sided and te != 2:
            continue
        g = te // 2
        p = Part(spec, mv.ZERO, mv.ZERO, mv.e(g), mv.ZERO)
        dots = tuple(sum(nd[i] * tot[i] for i in rng) for nd in nef_duals)
        out.append(_Cand(p, tot, ctx.k_degree(tot), 0, mv.ZERO,
                         (spec, mv.ZERO, mv.e(g)), dots))
    return out


def enumerate_splittings(cfg: SurfaceConfig, d, alpha: mv.MV, beta: mv.MV,
                         variant: str, part_filter=None):
    """All admissible second-sum terms for the class d with data (alpha, beta).

    ``variant`` picks the condition set: "ordinary", "sided_minus",
    "sided_plus_2iii" (pair parts only) or "complex" (no pair parts, any
    smoothing order).  Terms are unordered multisets, each listed once.

    ``part_filter``, when given, drops candidate parts for which it returns
    False before the multiset search.  The engine passes its own memoized
    evaluator there: parts of value zero annihilate their terms, so the
    filtered enumeration yields exactly the terms with nonzero product.
    """
    if variant == "sided_plus_2iii":
        return _splittings_pairs_only(cfg, d, alpha, beta)
    ctx = cfg.ctx
    c = cfg.conic_class
    d = tuple(d)
    B = vec_sub(d, ctx.e_class)
    kB = ctx.k_degree(B)
    out = []
    if kB < 0:
        return out
    n = ctx.pair(c, d) + mv.norm(beta) - 1
    kc = ctx.k_degree(c)
    l_step = 2 if variant == "ordinary" else 1
    singles = _class_pool(cfg, B, want_real=(variant != "complex"))
    pairs = [] if variant == "complex" else _pair_pool(
        cfg, sided=(variant == "sided_minus"))

    for l in range(kB // (l_step * kc) + 1):
        for a0 in mv.subvectors(alpha):
            for b0 in mv.subvectors(beta):
                shift = l_step * l + mv.iweight(a0) + mv.iweight(b0)
                S = vec_sub(B, vec_scale(shift, c))
                if ctx.k_degree(S) < 0:
                    continue
                if any(S) and not ctx.is_effective(S):
                    continue
                n_target = n - 1 - mv.norm(b0)
                if n_target < 0:
                    continue
                avail_a = mv.sub(alpha, a0)
                need_b = mv.sub(beta, b0)
                cands = _build_candidates(cfg, variant, singles, pairs, S,
                                          avail_a, need_b, n_target)
                if part_filter is not None:
                    cands = [cd for cd in cands if part_filter(cd.part)]
                _collect(ctx, S, cands, avail_a, need_b, n_target,
                         l, a0, b0, out)
    return out


def _splittings_pairs_only(cfg, d, alpha, beta):
    # restricted shape: every part is a conjugate pair of classes crossing E
    # twice, all parts distinct, balance uses the whole beta weight, l even.
    ctx = cfg.ctx
    c = cfg.conic_class
    B = vec_sub(tuple(d), ctx.e_class)
    out = []
    if ctx.k_degree(B) < 0:
        return out
    pairs = _pair_pool(cfg, sided=True)
    ib = mv.iweight(beta)
    kc = ctx.k_degree(c)
    for l in range(0, ctx.k_degree(B) // kc + 1, 2):
        for a0 in mv.subvectors(alpha):
            shift = l + mv.iweight(a0) + ib
            S = vec_sub(B, vec_scale(shift, c))
            if ctx.k_degree(S) < 0:
                continue
            if any(S) and not ctx.is_effective(S):
                continue
            _collect(ctx, S, pairs, mv.ZERO, mv.ZERO, 0, l, a0, mv.ZERO, out)
    return out


def _build_candidates(cfg, variant, singles, pairs, S, avail_a, need_b,
                      n_cap):
    ctx = cfg.ctx
    kS = ctx.k_degree(S)
    rng = range(ctx.rank)
    nef_duals = tuple(ctx.dualize(n) for n in ctx.nef_family())
    s_dots = tuple(sum(nd[i] * S[i] for i in rng) for nd in nef_duals)
    cands = []
    for cd in pairs:
        if cd.kdeg <= kS and all(x <= y for x, y in zip(cd.dots, s_dots)):
            cands.append(cd)
    for X, xe, cx, kd, dots in singles:
        if kd > kS or cx > n_cap + 1:
            continue
        if any(x > y for x, y in zip(dots, s_dots)):
            continue
        spec = single(X)
        for g in range(1, xe + 1):
            if not _gamma_ok(variant, g):
                continue
            gam = mv.e(g)
            for a_i in mv.subvectors(avail_a):
                rem = xe - g - mv.iweight(a_i)
                if rem < 0:
                    continue
                for delta in mv.subvectors(need_b):
                    if mv.iweight(delta) != rem:
                        continue
                    beta_i = mv.add(gam, delta)
                    n_i = cx + mv.norm(beta_i) - 1
                    if n_i > n_cap:
                        continue
                    part = Part(spec, a_i, beta_i, mv.ZERO, gam)
                    rigid = (spec, beta_i, mv.ZERO) if (n_i == 0 and not a_i) \
                        else None
                    cands.append(_Cand(part, X, kd, n_i, delta, rigid, dots))
    cands.sort(key=lambda cd: (-cd.kdeg, cd.part.sort_key()))
    return cands


def _collect(ctx, S, cands, avail_a, need_b, n_target, l, a0, b0, out):
    zero = (0,) * ctx.rank
    rng = range(ctx.rank)
    nef_duals = tuple(ctx.dualize(n) for n in ctx.nef_family())

    def rec(idx, budget, bdots, rem_a, rem_b, rem_n, chosen, rigids):
        if budget == zero:
            if rem_n == 0 and not rem_b:
                parts = tuple(sorted(chosen, key=Part.sort_key))
                out.append(SplitTerm(l, a0, b0, parts))
            return
        kb = ctx.k_degree(budget)
        if kb <= 0:
            return
        for j in range(idx, len(cands)):
            cd = cands[j]
            if cd.kdeg > kb or cd.n > rem_n:
                continue
            if cd.rigid is not None and cd.rigid in rigids:
                continue
            if any(x > y for x, y in zip(cd.dots, bdots)):
                continue
            if not mv.leq(cd.part.alpha, rem_a) or not mv.leq(cd.delta, rem_b):
                continue
            nb = vec_sub(budget, cd.total)
            if any(nb) and not ctx.is_effective(nb):
                continue
            rec(j, nb, tuple(x - y for x, y in zip(bdots, cd.dots)),
                mv.sub(rem_a, cd.part.alpha), mv.sub(rem_b, cd.delta),
                rem_n - cd.n, chosen + [cd.part],
                rigids | {cd.rigid} if cd.rigid is not None else rigids)

    s_dots = tuple(sum(nd[i] * S[i] for i in rng) for nd in nef_duals)
    rec(0, tuple(S), s_dots, avail_a, need_b, n_target, [], frozenset())


def _aut_factor(parts) -> int:
    """Product of factorials of the multiplicities of repeated parts."""
    out = 1
    i = 0
    while i < len(parts):
        j = i
        while j < len(parts) and parts[j] == parts[i]:
            j += 1
        out *= math.factorial(j - i)
        i = j
    return out


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise AssertionError("automorphism division is not exact")
    return q


def mult_tables(kind: str, sign: str, value: int, eps: int = 1) -> int:
    """Tabulated smoothing multiplicities of the non-reduced components."""
    if sign not in ("plus", "minus"):
        raise ValueError("sign must be plus or minus")
    if kind == "mu2":
        if value % 2:
            raise ValueError("mu2 needs even order")
        if sign == "plus":
            return 0
        return 0 if value % 4 == 0 else 2
    if kind == "mu3":
        if value % 2:
            raise ValueError("mu3 needs even multiplicity")
        return 1
    if kind == "mu5":
        if value % 2:
            raise ValueError("mu5 needs even multiplicity")
        return 2
    if kind == "mu6_even":
        if value % 2:
            raise ValueError("mu6_even needs even multiplicity")
        if eps == 1:
            return 1
        return 1 if sign == "plus" else (-1) ** (value // 2)
    if kind == "mu6_odd":
        if value % 2 == 0:
            raise ValueError("mu6_odd needs odd multiplicity")
        if sign == "plus":
            return 0
        return 2 if value % 4 == 1 else 0
    raise ValueError(f"unknown table {kind!r}")


class DiskCache:
    """Append-only newline-delimited store of computed values.

    Records are ``v1|config|kind|spec|alpha|beta_re|beta_im|value``; a
    truncated or malformed line is skipped, so corruption only costs a
    recomputation.  Writers are idempotent (values for equal keys are
    equal), so concurrent appends are safe.
    """

    VERSION = "v1"

    def __init__(self, path):
        from pathlib import Path

        self.path = Path(path)
        self.data = {}
        self._pending = []
        self._lock = threading.Lock()
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                rec = self._parse(line)
                if rec is not None:
                    cid, key, val = rec
                    self.data.setdefault(cid, {})[key] = val

    def _parse(self, line):
        bits = line.split("|")
        if len(bits) != 8 or bits[0] != self.VERSION:
            return None
        _, cid, kind, spec_s, a_s, br_s, bi_s, val_s = bits
        if kind not in KINDS:
            return None
        try:
            if ";" in spec_s:
                c1, c2 = spec_s.split(";")
                spec = pair(_parse_coords(c1), _parse_coords(c2))
            else:
                spec = single(_parse_coords(spec_s))
            key = (kind, spec, mv.parse_mv(a_s), mv.parse_mv(br_s),
                   mv.parse_mv(bi_s))
            return cid, key, int(val_s)
        except ValueError:
            return None

    def load_config(self, config_id: str) -> dict:
        return dict(self.data.get(config_id, {}))

    def put(self, config_id, key, val):
        with self._lock:
            known = self.data.setdefault(config_id, {})
            if key in known:
                return
            known[key] = val
            kind, spec, a, br, bi = key
            if spec[0] == "s":
                spec_s = _fmt_coords(spec[1])
            else:
                spec_s = _fmt_coords(spec[1]) + ";" + _fmt_coords(spec[2])
            self._pending.append("|".join(
                (self.VERSION, config_id, kind, spec_s, mv.format_mv(a),
                 mv.format_mv(br), mv.format_mv(bi), str(val))))

    def flush(self):
        with self._lock:
            if not self._pending:
                return
            with self.path.open("a") as fh:
                fh.write("\n".join(self._pending) + "\n")
            self._pending = []


def _fmt_coords(c):
    return ",".join(str(x) for x in c)


def _parse_coords(s):
    return tuple(int(x) for x in s.split(","))


class Engine:
    """Evaluator for one (family, phi) slot, with shared memoization."""

    def __init__(self, cfg: SurfaceConfig, phi: str = "phi0", cache=None):
        self.cfg = cfg
        self.phi = phi
        self.config_id = f"{cfg.family_id}:{phi}"
        self.cache = cache
        self.memo = cache.load_config(self.config_id) if cache else {}
        self._canon = {}

    def _store(self, key, val):
        self.memo[key] = val
        if self.cache is not None:
            self.cache.put(self.config_id, key, val)
        return val

    def _canon_spec(self, spec):
        """Minimal representative of the spec under the configuration's
        symmetry group.  Counts are symmetry invariant (the group maps
        admissible splittings bijectively and preserves every parity
        datum), so memo keys are collapsed to orbit minima."""
        hit = self._canon.get(spec)
        if hit is not None:
            return hit
        perms = self.cfg.symmetries()
        n = self.cfg.ctx.rank
        if spec[0] == "s":
            d = spec[1]
            best = min(tuple(d[q[j]] for j in range(n)) for q in perms)
            out = ("s", best)
        else:
            c1, c2 = spec[1], spec[2]
            best = None
            for q in perms:
                a = tuple(c1[q[j]] for j in range(n))
                b = tuple(c2[q[j]] for j in range(n))
                cand = (a, b) if a <= b else (b, a)
                if best is None or cand < best:
                    best = cand
            out = ("p",) + best
        self._canon[spec] = out
        return out

    def _check(self, spec, alpha, beta_re, beta_im):
        te = self.cfg.ctx.pair(total_class(spec), self.cfg.ctx.e_class)
        if mv.iweight(alpha) + mv.iweight(beta_re) + 2 * mv.iweight(beta_im) != te:
            raise ValueError("tangency weight does not match the E-degree")

    # -- ordinary lane ------------------------------------------------------

    def ordinary_w(self, spec, alpha=mv.ZERO, beta_re=mv.ZERO, beta_im=mv.ZERO) -> int:
        spec = self._canon_spec(spec)
        key = ("ordinary", spec, alpha, beta_re, beta_im)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self._check(spec, alpha, beta_re, beta_im)
        cfg = self.cfg
        r = cfg.r_dim(spec, mv.add(beta_re, mv.scale(beta_im, 2)))
        if r < 0:
            val = 0
        elif r == 0:
            val = ini_ordinary(cfg, self.phi, spec, alpha, beta_re, beta_im)
        elif is_pair(spec):
            val = 0          # positive-dimensional conjugate-pair families are empty
        elif beta_im:
            val = 0          # no real curve carries imaginary free tangencies
        elif not (mv.is_odd_support(alpha) and mv.is_odd_support(beta_re)):
            val = 0          # outside the odd-support domain of the invariance
        else:
            val = self._ordinary_rec(spec[1], alpha, beta_re, r)
        return self._store(key, val)

    def _ordinary_rec(self, d, alpha, beta, n):
        total = 0
        for j, _m in beta:
            total += self.ordinary_w(single(d), mv.add(alpha, mv.e(j)),
                                     mv.sub(beta, mv.e(j)), mv.ZERO)
        ehp = self.cfg.e_half.get(self.phi, 0)
        lhp = self.cfg.l_half.get(self.phi, 0)
        live = lambda p: self.ordinary_w(p.spec, p.alpha, p.beta_re,
                                         p.beta_im) != 0
        for term in enumerate_splittings(self.cfg, d, alpha, beta, "ordinary",
                                         part_filter=live):
            prod = 1
            for p in term.parts:
                w = self.ordinary_w(p.spec, p.alpha, p.beta_re, p.beta_im)
                if w == 0:
                    prod = 0
                    break
                prod *= w * mv.binom_vec(p.beta_re, p.gamma)
            if prod == 0:
                continue
            coeff = (term.l + 1) * (2 ** mv.norm(term.beta0))
            coeff *= self._point_multinomial(term, n)
            coeff *= mv.multinomial(alpha, (term.alpha0,)
                                    + tuple(p.alpha for p in term.parts))
            term_val = coeff * prod
            if AUT_DIVIDE and term.parts:
                term_val = _exact_div(term_val, _aut_factor(term.parts))
            sgn = ehp + lhp * (mv.iweight(term.alpha0) + mv.iweight(term.beta0))
            total += (-1 if sgn % 2 else 1) * term_val
        return total

    def _point_multinomial(self, term, n) -> int:
        # (n-1)! / (prod n_i!) regrouped with the conic-multiplicity classes
        # of beta0, which keeps everything integral.
        cfg = self.cfg
        ns = []
        for p in term.parts:
            ni = cfg.r_dim(p.spec, mv.add(p.beta_re, mv.scale(p.beta_im, 2)))
            ns.append(ni)
        if sum(ns) + mv.norm(term.beta0) != n - 1:
            raise AssertionError("point bookkeeping out of balance")
        out = math.factorial(n - 1)
        for ni in ns:
            out //= math.factorial(ni)
        for _i, m in term.beta0:
            out //= math.factorial(m)
        return out

    # -- sided lane ----------------------------------------------------------

    def sided_w(self, sign, spec, alpha=mv.ZERO, beta_re=mv.ZERO, beta_im=mv.ZERO) -> int:
        if not self.cfg.divides:
            raise ValueError(f"{self.cfg.family_id} is not a dividing configuration")
        if sign not in ("plus", "minus"):
            raise ValueError("sign must be plus or minus")
        spec = self._canon_spec(spec)
        key = (f"sided_{sign}", spec, alpha, beta_re, beta_im)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self._check(spec, alpha, beta_re, beta_im)
        cfg = self.cfg
        r = cfg.r_dim(spec, mv.add(beta_re, mv.scale(beta_im, 2)))
        if r < 0:
            val = 0
        elif r == 0:
            val = ini_sided(cfg, self.phi, sign, spec, alpha, beta_re, beta_im)
        elif is_pair(spec):
            val = 0
        elif beta_im or not (mv.is_even_support(alpha)
                             and mv.is_even_support(beta_re)):
            val = 0          # sided vanishing outside the even-support domain
        elif sign == "plus":
            val = self._sided_plus_rec(spec[1], alpha, beta_re, r)
        else:
            val = self._sided_minus_rec(spec[1], alpha, beta_re, r)
        return self._store(key, val)

    def _sided_plus_rec(self, d, alpha, beta, n):
        cfg = self.cfg
        kd = cfg.ctx.pair(cfg.conic_class, d)  # = -(K+E).D
        if kd == 0 or kd > 2:
            return 0
        if kd == 1:
            return (2 ** mv.norm(beta)) * self.sided_w(
                "plus", single(d), mv.add(alpha, beta), mv.ZERO, mv.ZERO)
        # kd == 2
        total = 0
        for j, _m in beta:
            if j < 2:
                continue
            total += 2 * self.sided_w("plus", single(d),
                                      mv.add(alpha, mv.e(j)),
                                      mv.sub(beta, mv.e(j)), mv.ZERO)
        ehp = self.cfg.e_half.get(self.phi, 0)
        lhp = self.cfg.l_half.get(self.phi, 0)
        for term in enumerate_splittings(cfg, d, alpha, beta, "sided_plus_2iii"):
            prod = 1
            for p in term.parts:
                w = self.sided_w("plus", p.spec, p.alpha, p.beta_re, p.beta_im)
                if w == 0:
                    prod = 0
                    break
                prod *= w
            if prod == 0:
                continue
            coeff = (4 ** (n - 1)) * (term.l // 2 + 1)
            coeff *= mv.binom_vec(alpha, term.alpha0)
            sgn = ehp + lhp * mv.iweight(term.alpha0)
            total += (-1 if sgn % 2 else 1) * coeff * prod
        return total

    def _sided_minus_rec(self, d, alpha, beta, n):
        cfg = self.cfg
        total = 0
        for j, _m in beta:
            if j < 2:
                continue
            total += 2 * self.sided_w("minus", single(d),
                                      mv.add(alpha, mv.e(j)),
                                      mv.sub(beta, mv.e(j)), mv.ZERO)
        ehp = self.cfg.e_half.get(self.phi, 0)
        lhp = self.cfg.l_half.get(self.phi, 0)
        live = lambda p: self.sided_w("minus", p.spec, p.alpha, p.beta_re,
                                      p.beta_im) != 0
        for term in enumerate_splittings(cfg, d, alpha, beta, "sided_minus",
                                         part_filter=live):
            et = eta(cfg, self.phi, term.l)
            if et == 0:
                continue
            prod = 1
            n_single = 0
            for p in term.parts:
                w = self.sided_w("minus", p.spec, p.alpha, p.beta_re, p.beta_im)
                if w == 0:
                    prod = 0
                    break
                if not is_pair(p.spec):
                    n_single += 1
                prod *= w * mv.binom_vec(p.beta_re, p.gamma)
            if prod == 0:
                continue
            # each smoothed single-part point carries the mu_2 multiplicity 2
            coeff = et * (4 ** mv.norm(term.beta0)) * (2 ** n_single)
            coeff *= self._point_multinomial(term, n)
            coeff *= mv.multinomial(alpha, (term.alpha0,)
                                    + tuple(p.alpha for p in term.parts))
            term_val = coeff * prod
            if AUT_DIVIDE and term.parts:
                term_val = _exact_div(term_val, _aut_factor(term.parts))
            sgn = ehp + lhp * (mv.iweight(term.alpha0) + mv.iweight(term.beta0))
            total += (-1 if sgn % 2 else 1) * term_val
        return total

    # -- complex lane ----------------------------------------------------------

    def complex_n(self, d, alpha=mv.ZERO, beta=mv.ZERO) -> int:
        d = self._canon_spec(single(tuple(d)))[1]
        key = ("complex_n", single(d), alpha, beta, mv.ZERO)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        cfg = self.cfg
        ctx = cfg.ctx
        if mv.iweight(alpha) + mv.iweight(beta) != ctx.pair(d, ctx.e_class):
            raise ValueError("tangency weight does not match the E-degree")
        if not ctx.is_effective(d):
            return self._store(key, 0)
        r = ctx.pair(cfg.conic_class, d) + mv.norm(beta) - 1
        if r < 0:
            val = 0
        elif r == 0:
            val = self._complex_base(d, alpha, beta)
        else:
            val = self._complex_rec(d, alpha, beta, r)
        return self._store(key, val)

    def _complex_base(self, d, alpha, beta) -> int:
        ctx = self.cfg.ctx
        c = self.cfg.conic_class
        if ctx.square(d) == -1 and ctx.pair(d, ctx.canonical_class) == -1:
            return 1
        if d == c:
            if alpha == mv.e(1) and beta == mv.e(1):
                return 1
            if not alpha and beta == mv.e(2):
                return 2   # the two members tangent to E
            return 0
        de = ctx.pair(d, ctx.e_class)
        if (ctx.pair(c, d) == 1 and not beta and mv.iweight(alpha) == de > 0
                and ctx.supports_irreducible(d)):
            return 1
        return 0

    def _complex_rec(self, d, alpha, beta, n):
        total = 0
        for j, _m in beta:
            total += j * self.complex_n(d, mv.add(alpha, mv.e(j)),
                                        mv.sub(beta, mv.e(j)))
        live = lambda p: self.complex_n(p.spec[1], p.alpha, p.beta_re) != 0
        for term in enumerate_splittings(self.cfg, d, alpha, beta, "complex",
                                         part_filter=live):
            prod = 1
            for p in term.parts:
                w = self.complex_n(p.spec[1], p.alpha, p.beta_re)
                if w == 0:
                    prod = 0
                    break
                prod *= w * mv.binom_vec(p.beta_re, p.gamma) * mv.ipow(p.gamma)
            if prod == 0:
                continue
            # conic components through a free point contribute a factor
            # 2 * multiplicity each: two attachment points times the
            # multiplicity many smoothing patterns
            coeff = math.comb(term.l + 3, 3) \
                * mv.ipow(term.beta0) * (2 ** mv.norm(term.beta0))
            coeff *= self._point_multinomial(term, n)
            coeff *= mv.multinomial(alpha, (term.alpha0,)
                                    + tuple(p.alpha for p in term.parts))
            term_val = coeff * prod
            if AUT_DIVIDE and term.parts:
                term_val = _exact_div(term_val, _aut_factor(term.parts))
            total += term_val
        return total
