"""Assembly of invariants of the smooth fibers from relative counts.

The deformation identities expressing an invariant of a smooth surface
through counts on the nodal central fiber come in four flavours, matching
the family kinds: regular and hyperbolic families use the binomial shift
sum over multiples of E, elliptic families read the invariant off a single
sided (or ordinary) count, and external families invert the mirror identity
against their partner family.  A Session owns the presets and one engine
per (family, phi) slot so that memo stores are shared across cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import multivec as mv
from .config import builtin_presets, single
from .engine import Engine
from .lattice import vec_add, vec_scale, vec_sub

CAP_SLACK = 16


class NeedsSeedError(ValueError):
    """Raised when an external family cell has no recursion and no seed."""


def _phi_signature(cfg, phi: str):
    pair_sig = []
    for rec in cfg.pairs:
        default = (0, 0) if rec.kind == "real_int" else 0
        pair_sig.append(rec.phi_parity.get(phi, default))
    return (cfg.e_half.get(phi, 0), cfg.l_half.get(phi, 0), tuple(pair_sig))


@dataclass(frozen=True)
class InvariantRequest:
    family: str
    d: tuple
    phi: str = "phi0"


class Session:
    """Shared presets, engines and caches for a batch of invariant queries."""

    def __init__(self, presets=None, cache=None):
        self.presets = presets if presets is not None else builtin_presets()
        self.cache = cache
        self._engines = {}
        self._inv_memo = {}

    def config(self, family: str):
        try:
            return self.presets[family]
        except KeyError:
            raise ValueError(f"unknown family {family!r}") from None

    def engine(self, family: str, phi: str = "phi0") -> Engine:
        # engines are shared between phi slots with identical parity data,
        # where the counts coincide identically
        cfg = self.config(family)
        key = (family, _phi_signature(cfg, phi))
        if key not in self._engines:
            self._engines[key] = Engine(cfg, phi, self.cache)
        return self._engines[key]

    # -- reductions ---------------------------------------------------------

    def reduce_by_e(self, family: str, d) -> tuple:
        """Replace d by d + (dE)E when dE < 0; the invariant is unchanged."""
        ctx = self.config(family).ctx
        d = tuple(d)
        de = ctx.pair(d, ctx.e_class)
        if de < 0:
            d = vec_add(d, vec_scale(de, ctx.e_class))
        return d

    # -- Welschinger invariants ----------------------------------------------

    def welschinger(self, family: str, d, phi: str = "phi0") -> int:
        d = tuple(d)
        key = (family, d, phi)
        hit = self._inv_memo.get(key)
        if hit is not None:
            return hit
        val = self._welschinger(family, d, phi)
        self._inv_memo[key] = val
        return val

    def _welschinger(self, family: str, d, phi: str) -> int:
        cfg = self.config(family)
        ctx = cfg.ctx
        if not cfg.is_real(d):
            raise ValueError(f"{family}: class {d} is not conjugation invariant")
        if cfg.kind in ("regular", "hyperbolic"):
            d = self.reduce_by_e(family, d)
            if not ctx.is_effective(d):
                return 0
            return self._shift_sum(family, d, phi)
        if cfg.kind == "elliptic":
            if ctx.pair(d, ctx.e_class) != 0:
                raise ValueError(
                    f"{family}: class pairs nontrivially with the node class")
            if not cfg.f_compatible(d):
                return 0
            eng = self.engine(family, phi)
            if not cfg.divides:
                return eng.ordinary_w(single(d))
            sign = "minus" if phi == "phiF" else "plus"
            return eng.sided_w(sign, single(d))
        if cfg.kind == "external":
            return self._external(cfg, family, d, phi)
        raise ValueError(f"unknown family kind {cfg.kind!r}")

    def _shift_sum(self, family: str, d, phi: str) -> int:
        cfg = self.config(family)
        ctx = cfg.ctx
        eng = self.engine(family, phi)
        de = ctx.pair(d, ctx.e_class)
        ehp = cfg.e_half.get(phi, 0)
        total = 0
        cur = d
        cap = ctx.k_degree(d) + de + CAP_SLACK
        m = 0
        while ctx.is_effective(cur):
            if m > cap:
                raise RuntimeError(
                    f"{family}: shift sum did not truncate; preset error?")
            t = de + 2 * m
            coef = math.comb(t, m)
            if coef:
                w = eng.ordinary_w(single(cur), mv.ZERO, mv.e(1, t), mv.ZERO)
                total += (-1 if (m * ehp) % 2 else 1) * coef * w
            m += 1
            cur = vec_sub(cur, ctx.e_class)
        return total

    def _external(self, cfg, family: str, d, phi: str) -> int:
        ctx = cfg.ctx
        mfam, node, coeff = cfg.mirror
        if ctx.pair(d, node) != 0:
            raise ValueError(
                f"{family}: class pairs nontrivially with the node class")
        if not cfg.f_compatible(d):
            return 0
        kdeg = ctx.k_degree(d)
        if kdeg < 3:
            seed = cfg.seeds.get((d, phi))
            if seed is None:
                raise NeedsSeedError(
                    f"{family}: no seed for {d} at {phi}; configure one")
            return seed
        if phi != "phiF":
            # the second real component is untouched by phi, so the
            # invariant vanishes once the degree admits the argument
            return 0
        cap = kdeg + CAP_SLACK
        total = 0
        for m in range(-cap, cap + 1):
            t = vec_add(d, vec_scale(2 * m, node))
            total += self.welschinger(mfam, t, "phiF")
        return coeff * total

    # -- Gromov-Witten ---------------------------------------------------------

    def gw(self, family: str, d) -> int:
        """Genus zero Gromov-Witten invariant of the smooth fiber."""
        cfg = self.config(family)
        ctx = cfg.ctx
        d = tuple(d)
        if not ctx.is_effective(d):
            return 0
        eng = self.engine(family, "phi0")
        de = ctx.pair(d, ctx.e_class)
        total = 0
        cur = d
        cap = ctx.k_degree(d) + abs(de) + CAP_SLACK
        m = 0
        while ctx.is_effective(cur):
            if m > cap:
                raise RuntimeError(f"{family}: GW sum did not truncate")
            t = de + 2 * m
            if t >= 0 and math.comb(t, m):
                total += math.comb(t, m) * eng.complex_n(cur, mv.ZERO, mv.e(1, t))
            m += 1
            cur = vec_sub(cur, ctx.e_class)
        return total

    # -- mirror identities -------------------------------------------------------

    def mirror_sum(self, family_pair, d, phi: str = "phi0") -> int:
        """Right-hand side of the mirror identity for the given pair.

        For (hyperbolic, elliptic) pairs over one degeneration this is the
        alternating shift sum over the hyperbolic side, which must equal
        the elliptic invariant.  For an external family and its partner it
        is the inverted doubling identity, i.e. exactly what
        ``welschinger`` evaluates on the external side.
        """
        a, b = family_pair
        ca, cb = self.config(a), self.config(b)
        if ca.kind == "hyperbolic" and cb.kind == "elliptic":
            ctx = ca.ctx
            cap = ctx.k_degree(d) + CAP_SLACK
            total = 0
            for m in range(-cap, cap + 1):
                t = vec_sub(tuple(d), vec_scale(m, ctx.e_class))
                term = self.welschinger(a, t, phi)
                total += -term if m % 2 else term
            return total
        if ca.kind == "external" and ca.mirror and ca.mirror[0] == b:
            return self.welschinger(a, d, phi)
        raise ValueError(f"{family_pair} is not a supported mirror pair")


def welschinger(session: Session, req: InvariantRequest) -> int:
    return session.welschinger(req.family, req.d, req.phi)


def gw(session: Session, req: InvariantRequest) -> int:
    return session.gw(req.family, req.d)
