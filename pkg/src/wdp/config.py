"""Degeneration-family presets and their initial-condition providers.

A preset bundles one real degeneration family: the Picard lattice of the
nodal central surface, the conjugation involution, the distinguished
(-2)-class E, the pair structure on the (-1)-classes crossing E, the
supporting-curve status, and the sign parities attached to each datum.
Parities are data, not computed topology; built-in presets are validated
against the published invariant values and can be overridden from plain
text files (one per family, see ``load_config_dir``).

Counts of curve classes come in two shapes: a single real divisor class,
or an unordered pair of conjugate classes.  Both are encoded as small
tagged tuples so they can serve as memo-key components.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import multivec as mv
from .lattice import LatticeContext, Pic, mat_apply, vec_add, vec_neg, vec_sub

# -- curve class specs -----------------------------------------------------
# ("s", coords) for a real divisor class, ("p", c1, c2) for a conjugate
# pair with c1 <= c2 lexicographically.


def single(d: Pic):
    return ("s", tuple(d))


def pair(c1: Pic, c2: Pic):
    c1, c2 = tuple(c1), tuple(c2)
    return ("p", c1, c2) if c1 <= c2 else ("p", c2, c1)


def is_pair(spec) -> bool:
    return spec[0] == "p"


def total_class(spec) -> Pic:
    if spec[0] == "s":
        return spec[1]
    return vec_add(spec[1], spec[2])


@dataclass
class PairRecord:
    """One conjugation-invariant pair of (-1)-classes crossing E.

    ``kind`` is real_int (two real curves meeting at a point), conj_int or
    conj_disj (complex conjugate curves, meeting resp. disjoint).  For real
    pairs ``phi_parity`` holds one parity per member; for conjugate pairs a
    single parity per phi.  ``fminus_parity`` is the parity of
    card(E'_1 and F_-) used by the sided minus sign.
    """

    c1: Pic
    c2: Pic
    kind: str                     # real_int | conj_int | conj_disj
    phi_parity: dict              # phi -> int (conj) or (int, int) (real)
    fminus_parity: int = 0


@dataclass
class SurfaceConfig:
    family_id: str
    kind: str                     # regular | hyperbolic | elliptic | external
    ctx: LatticeContext
    conj: tuple                   # involution matrix, rows
    pairs: list = field(default_factory=list)
    supporting_kind: str = "both_real"      # both_real | conj_pair
    supporting_sides: tuple = ("plus", "plus")
    e_half: dict = field(default_factory=dict)   # phi -> parity of E_1/2 o phi
    l_half: dict = field(default_factory=dict)   # phi -> parity of L_1/2 o phi
    divides: bool = False
    tangent_side_plus: bool = True
    fcompat: tuple = ("always",)
    seeds: dict = field(default_factory=dict)    # (class, phi) -> value
    mirror: tuple | None = None                  # (family_id, node_class, coeff)
    phis: tuple = ("phi0", "phiF")

    def __post_init__(self):
        self.conic_class = vec_neg(vec_add(self.ctx.canonical_class, self.ctx.e_class))
        self._real_parity = {}
        self._pair_by_spec = {}
        for rec in self.pairs:
            if rec.kind == "real_int":
                for j, c in enumerate((rec.c1, rec.c2)):
                    self._real_parity[c] = {p: v[j] for p, v in rec.phi_parity.items()}
            else:
                self._pair_by_spec[pair(rec.c1, rec.c2)] = rec
        self._validate()

    # -- validation ---------------------------------------------------------

    def _validate(self):
        ctx, conj = self.ctx, self.conj
        n = ctx.rank
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        sq = tuple(tuple(sum(conj[i][k] * conj[k][j] for k in range(n))
                         for j in range(n)) for i in range(n))
        if sq != ident:
            raise ValueError(f"{self.family_id}: conj is not an involution")
        for a in (ctx.canonical_class, ctx.e_class):
            if mat_apply(conj, a) != tuple(a):
                raise ValueError(f"{self.family_id}: conj moves K or E")
        # conj preserves the pairing
        basis = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        for i in range(n):
            for j in range(i, n):
                if ctx.pair(mat_apply(conj, basis[i]), mat_apply(conj, basis[j])) \
                        != ctx.gram[i][j]:
                    raise ValueError(f"{self.family_id}: conj breaks the form")
        if ctx.square(ctx.e_class) != -2 or ctx.pair(ctx.e_class, ctx.canonical_class) != 0:
            raise ValueError(f"{self.family_id}: E is not a (-2)-class orthogonal to K")
        if ctx.square(self.conic_class) != 0:
            raise ValueError(f"{self.family_id}: (K+E)^2 is not 0")
        if self.kind != "external":
            covered = set(self._real_parity)
            for rec in self.pairs:
                if rec.kind != "real_int":
                    if self.conj_class(rec.c1) != rec.c2:
                        raise ValueError(f"{self.family_id}: pair is not conjugate")
                    meet = ctx.pair(rec.c1, rec.c2)
                    want = 1 if rec.kind == "conj_int" else 0
                    if meet != want:
                        raise ValueError(f"{self.family_id}: pair type mismatch")
                    covered.update((rec.c1, rec.c2))
            if covered != set(ctx.curly_e()):
                raise ValueError(f"{self.family_id}: pair list does not cover curly E")

    # -- small helpers -------------------------------------------------------

    def conj_class(self, d: Pic) -> Pic:
        return mat_apply(self.conj, d)

    def is_real(self, d: Pic) -> bool:
        return self.conj_class(d) == tuple(d)

    def r_dim(self, spec, beta: mv.MV) -> int:
        """Expected dimension -[D].(K+E) + |beta| - 1 (or - 2 for pairs)."""
        tot = total_class(spec)
        base = self.ctx.pair(self.conic_class, tot) + mv.norm(beta)
        return base - (2 if is_pair(spec) else 1)

    def real_curly_parity(self, d: Pic, phi: str):
        rec = self._real_parity.get(tuple(d))
        return None if rec is None else rec[phi]

    def symmetries(self) -> tuple:
        """Basis permutations preserving the whole configuration.

        Returned as index tuples q with (q . v)[j] = v[q[j]].  Every count
        this package produces is invariant under them, since they map
        admissible splittings bijectively; the verification suites use
        them to cut class enumerations down to orbit representatives.
        """
        cached = self.__dict__.get("_symmetries")
        if cached is not None:
            return cached
        from itertools import permutations

        ctx = self.ctx
        n = ctx.rank
        sig = [(ctx.gram[i][i], ctx.canonical_class[i], ctx.e_class[i])
               for i in range(n)]
        slots = {}
        for i, s in enumerate(sig):
            slots.setdefault(s, []).append(i)
        groups = list(slots.values())
        pair_keys = set()
        for rec in self.pairs:
            pp = {p: v for p, v in rec.phi_parity.items()}
            pair_keys.add((rec.c1, rec.c2, rec.kind,
                           tuple(sorted(pp.items())), rec.fminus_parity))

        def key_of(rec_c1, rec_c2, kind, pp, fm):
            a, b = sorted((rec_c1, rec_c2))
            return (a, b, kind, pp, fm)

        pair_index = {key_of(*k): k for k in pair_keys}

        out = []
        for parts in _product_perms(groups, permutations):
            q = [None] * n
            for grp, pm in zip(groups, parts):
                for src, dst in zip(grp, pm):
                    q[dst] = src
            q = tuple(q)
            if any(ctx.gram[q[i]][q[j]] != ctx.gram[i][j]
                   for i in range(n) for j in range(n)):
                continue
            if any(self.conj[q[i]][q[j]] != self.conj[i][j]
                   for i in range(n) for j in range(n)):
                continue
            ok = True
            for rec in self.pairs:
                c1 = tuple(rec.c1[q[j]] for j in range(n))
                c2 = tuple(rec.c2[q[j]] for j in range(n))
                pp = tuple(sorted(rec.phi_parity.items()))
                a, b = sorted((c1, c2))
                if (a, b, rec.kind, pp, rec.fminus_parity) not in pair_index:
                    ok = False
                    break
            if ok:
                out.append(q)
        self._symmetries = tuple(out)
        return self._symmetries

    def orbit_representatives(self, classes):
        """Minimal representative of each symmetry orbit."""
        perms = self.symmetries()
        n = self.ctx.rank
        seen = set()
        reps = []
        for d in classes:
            if d in seen:
                continue
            orbit = {tuple(d[q[j]] for j in range(n)) for q in perms}
            seen.update(orbit)
            reps.append(min(orbit))
        return reps

    def pair_record(self, spec):
        return self._pair_by_spec.get(spec)

    # -- F-compatibility -----------------------------------------------------

    def f_compatible(self, d: Pic) -> bool:
        """The family's parity criterion for a nonzero invariant."""
        if not self.is_real(d):
            raise ValueError(f"{self.family_id}: class is not real")
        mode = self.fcompat[0]
        if mode == "always":
            return True
        if mode == "pairing_even":
            return self.ctx.pair(d, self.fcompat[1]) % 2 == 0
        if mode == "p2":
            # d must lie in span(K, E^(1), ..., E^(r)); parity of the sum of
            # coordinates in the -K, E^(i) basis decides compatibility.
            k = self.ctx.canonical_class
            es = self.fcompat[1]
            deg = self.ctx.k_degree(d)
            if deg % 2:
                return False
            dd = deg // 2
            coeffs = []
            for ei in es:
                p = self.ctx.pair(d, ei)
                if p % 2:
                    return False
                coeffs.append(-p // 2)
            recon = vec_neg(tuple(dd * x for x in k))
            for ci, ei in zip(coeffs, es):
                recon = vec_add(recon, tuple(ci * x for x in ei))
            if recon != tuple(d):
                raise ValueError(
                    f"{self.family_id}: class outside the supported real span")
            return (dd + sum(coeffs)) % 2 == 0
        raise ValueError(f"unknown fcompat mode {mode}")


def _product_perms(groups, permutations):
    if not groups:
        yield ()
        return
    for head in permutations(groups[0]):
        for tail in _product_perms(groups[1:], permutations):
            yield (head,) + tail


# -- initial conditions ------------------------------------------------------


def ini_ordinary(cfg: SurfaceConfig, phi: str, spec, alpha, beta_re, beta_im) -> int:
    """Value of a zero-dimensional ordinary count.

    Covers exactly the rigid configurations: a real (-1)-class crossing E
    with one transversal free point, the pencil member through a fixed point
    of E, classes of conic-bundle degree one with fixed tangencies only, and
    the three conjugate-pair shapes.  Everything else is zero.
    """
    ctx = cfg.ctx
    c = cfg.conic_class
    if not is_pair(spec):
        d = spec[1]
        if beta_im:
            return 0
        if not (mv.is_odd_support(alpha) and mv.is_odd_support(beta_re)):
            return 0
        # (1i) real member of curly E, one simple free intersection
        if not alpha and beta_re == mv.e(1):
            par = cfg.real_curly_parity(d, phi)
            if par is not None:
                return -1 if par else 1
        # (1ii) pencil member through one fixed and one free point of E
        if d == c and alpha == mv.e(1) and beta_re == mv.e(1):
            return -1 if cfg.l_half.get(phi, 0) else 1
        # (1iii) conic-bundle degree one, fixed tangencies only; the class
        # must admit an irreducible representative
        if (not beta_re and ctx.pair(c, d) == 1
                and mv.iweight(alpha) == ctx.pair(d, ctx.e_class) > 0
                and ctx.is_effective(d) and ctx.supports_irreducible(d)):
            return 1
        return 0
    # pairs
    if alpha or beta_re:
        return 0
    rec = cfg.pair_record(spec)
    if rec is not None and rec.kind != "real_int":
        tot_e = ctx.pair(total_class(spec), ctx.e_class)
        if tot_e % 2 == 0 and tot_e >= 2 and beta_im == mv.e(tot_e // 2):
            par = rec.phi_parity[phi] + (1 if rec.kind == "conj_int" else 0)
            return -1 if par % 2 else 1
    if (spec == pair(c, c) and beta_im == mv.e(2)
            and cfg.supporting_kind == "conj_pair"):
        return 1
    return 0


def ini_sided(cfg: SurfaceConfig, phi: str, sign: str, spec, alpha, beta_re, beta_im) -> int:
    """Value of a zero-dimensional sided count on a dividing quadruple."""
    if not cfg.divides:
        raise ValueError(f"{cfg.family_id}: not a dividing configuration")
    ctx = cfg.ctx
    c = cfg.conic_class
    if not is_pair(spec):
        d = spec[1]
        if beta_im:
            return 0
        if not (mv.is_even_support(alpha) and mv.is_even_support(beta_re)):
            return 0
        # (1i) the two tangent pencil members, counted by plus-side ones
        if d == c and not alpha and beta_re == mv.e(2):
            if cfg.supporting_kind != "both_real":
                return 0
            lam = sum(1 for s in cfg.supporting_sides if s == "plus")
            return lam * (-1 if cfg.l_half.get(phi, 0) else 1)
        # (1ii) conic-bundle degree one, real part on the plus side
        if (not beta_re and ctx.pair(c, d) == 1
                and mv.iweight(alpha) == ctx.pair(d, ctx.e_class) > 0
                and ctx.is_effective(d) and ctx.supports_irreducible(d)):
            return 1 if cfg.tangent_side_plus else 0
        return 0
    if alpha or beta_re:
        return 0
    rec = cfg.pair_record(spec)
    if rec is not None and rec.kind != "real_int":
        tot_e = ctx.pair(total_class(spec), ctx.e_class)
        if tot_e % 2 == 0 and tot_e >= 2 and beta_im == mv.e(tot_e // 2):
            par = rec.phi_parity[phi] + (1 if rec.kind == "conj_int" else 0)
            if sign == "minus":
                par += rec.fminus_parity
            return -1 if par % 2 else 1
    if (spec == pair(c, c) and beta_im == mv.e(2)
            and cfg.supporting_kind == "conj_pair"):
        return 1
    return 0


def eta(cfg: SurfaceConfig, phi: str, l: int) -> int:
    """Supporting-curve coefficient of the sided minus recursion.

    Seven cases by the parity of l and the reality/sides of the two tangent
    pencil members; l = 0 is always 1.
    """
    if not cfg.divides:
        raise ValueError(f"{cfg.family_id}: not a dividing configuration")
    if l < 0:
        raise ValueError("l must be non-negative")
    if l == 0:
        return 1
    lphi = cfg.l_half.get(phi, 0)
    sgn = -1 if lphi else 1
    if cfg.supporting_kind == "conj_pair":
        return l // 2 + 1 if l % 2 == 0 else 0
    sides = tuple(sorted(cfg.supporting_sides))
    if sides == ("plus", "plus"):
        if l % 2 == 0:
            return (l // 2 + 1) * (2 - (-1) ** (l // 2))
        return 4 * (l // 4 + 1) * sgn
    if sides == ("minus", "plus"):
        if l % 2 == 0:
            return (1 + (-1) ** (l // 2)) // 2
        return 2 * (l // 4 + 1) * ((-1) ** ((l - 1) // 2)) * sgn
    # both on the minus side
    if l % 2 == 0:
        return ((-1) ** (l // 2)) * (l // 2 + 1)
    return 0


# -- class expression parsing -------------------------------------------------

_TERM_RE = re.compile(r"([+-]?)\s*(\d*)\s*([A-Za-z]+\d*)")


def parse_class(expr: str, ctx: LatticeContext) -> Pic:
    """Parse an integer combination of basis symbols, K and E.

    Examples: "-2K", "3L-E1-2E7", "L1+L2-E3".
    """
    expr = expr.strip()
    if not expr:
        raise ValueError("empty class expression")
    symbols = {name: tuple(1 if j == i else 0 for j in range(ctx.rank))
               for i, name in enumerate(ctx.basis_names)}
    symbols["K"] = ctx.canonical_class
    if ctx.e_class is not None and "E" not in symbols:
        symbols["E"] = ctx.e_class
    out = (0,) * ctx.rank
    pos = 0
    for m in _TERM_RE.finditer(expr):
        if expr[pos:m.start()].strip():
            raise ValueError(f"cannot parse class expression {expr!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        sym = m.group(3)
        if sym not in symbols:
            raise ValueError(f"unknown symbol {sym!r} in {expr!r}")
        out = vec_add(out, tuple(sign * coeff * x for x in symbols[sym]))
        pos = m.end()
    if expr[pos:].strip():
        raise ValueError(f"cannot parse class expression {expr!r}")
    return out


def format_class(d: Pic, ctx: LatticeContext) -> str:
    parts = []
    for x, name in zip(d, ctx.basis_names):
        if not x:
            continue
        sign = "-" if x < 0 else ("+" if parts else "")
        mag = abs(x)
        parts.append(f"{sign}{'' if mag == 1 else mag}{name}")
    return "".join(parts) if parts else "0"


# -- preset files ---------------------------------------------------------
#
# One plain-text file per family.  Lines are "key: value"; blank lines and
# lines starting with "#" are ignored.  Keys:
#
#   family, kind, basis, gram (diag ... | row / row / ...), k, e
#   conj:   "id" or comma-separated maps "SYM->expr" (unlisted symbols fixed)
#   pair:   "expr & expr | real_int|conj_int|conj_disj | phi0=.. phiF=.. | fminus=0"
#           (real_int parities are per-member pairs "a,b")
#   supporting: "both_real plus plus" or "conj_pair"
#   e_half, l_half: "phi0=0 phiF=0"
#   divides: true|false     tangent_side: plus|minus
#   fcompat: "always" | "pairing_even <expr>" | "p2 <expr> ; <expr> ..."
#   seed:   "<class> | <phi> | <value>"       (external families)
#   mirror: "<family> | <node class> | <coeff>"  (external families)


def _parse_kv(text: str) -> list[tuple[str, str]]:
    out = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        if ":" not in ln:
            raise ValueError(f"bad preset line {ln!r}")
        k, v = ln.split(":", 1)
        out.append((k.strip(), v.strip()))
    return out


def _parse_parity(tok: str):
    d = {}
    for chunk in tok.split():
        phi, val = chunk.split("=")
        if "," in val:
            d[phi] = tuple(int(x) for x in val.split(","))
        else:
            d[phi] = int(val)
    return d


def load_preset_text(text: str) -> SurfaceConfig:
    items = _parse_kv(text)
    kv = {}
    pairs_raw, seeds_raw = [], []
    for k, v in items:
        if k == "pair":
            pairs_raw.append(v)
        elif k == "seed":
            seeds_raw.append(v)
        else:
            kv[k] = v

    for req in ("family", "kind", "basis", "gram", "k", "e", "conj"):
        if req not in kv:
            raise ValueError(f"preset is missing the {req!r} line")
    names = tuple(kv["basis"].split())
    rank = len(names)
    gtok = kv["gram"].split()
    if gtok[0] == "diag":
        vals = [int(x) for x in gtok[1:]]
        gram = tuple(tuple(vals[i] if i == j else 0 for j in range(rank))
                     for i in range(rank))
    else:
        rows = [r.split() for r in kv["gram"].split("/")]
        gram = tuple(tuple(int(x) for x in r) for r in rows)

    # bootstrap context without K/E to reuse the expression parser
    boot = LatticeContext(rank, gram, names,
                          canonical_class=(0,) * rank, e_class=None)
    k_class = parse_class(kv["k"], boot)
    ctx = LatticeContext(rank, gram, names, canonical_class=k_class,
                         e_class=None)
    e_class = parse_class(kv["e"], ctx)
    ctx.e_class = e_class

    conj_tok = kv["conj"]
    images = {n: parse_class(n, ctx) for n in names}
    if conj_tok != "id":
        for m in conj_tok.split(","):
            sym, expr = m.split("->")
            images[sym.strip()] = parse_class(expr, ctx)
    # matrix columns are the images of the basis vectors
    conj = tuple(tuple(images[names[j]][i] for j in range(rank))
                 for i in range(rank))

    pairs = []
    for raw in pairs_raw:
        fields = [f.strip() for f in raw.split("|")]
        c1s, c2s = [s.strip() for s in fields[0].split("&")]
        kind = fields[1]
        parity = _parse_parity(fields[2]) if len(fields) > 2 and fields[2] else {}
        fminus = 0
        if len(fields) > 3 and fields[3]:
            fminus = int(fields[3].split("=")[1])
        if kind == "real_int":
            parity = {p: (v if isinstance(v, tuple) else (v, v))
                      for p, v in parity.items()}
        else:
            parity = {p: (v[0] if isinstance(v, tuple) else v)
                      for p, v in parity.items()}
        pairs.append(PairRecord(parse_class(c1s, ctx), parse_class(c2s, ctx),
                                kind, parity, fminus))

    sup = kv.get("supporting", "both_real plus plus").split()
    fc_tok = kv.get("fcompat", "always").split(None, 1)
    if fc_tok[0] == "always":
        fcompat = ("always",)
    elif fc_tok[0] == "pairing_even":
        fcompat = ("pairing_even", parse_class(fc_tok[1], ctx))
    elif fc_tok[0] == "p2":
        es = tuple(parse_class(s.strip(), ctx) for s in fc_tok[1].split(";"))
        fcompat = ("p2", es)
    else:
        raise ValueError(f"unknown fcompat {kv['fcompat']!r}")

    mirror = None
    if "mirror" in kv:
        fam, node, coeff = [s.strip() for s in kv["mirror"].split("|")]
        mirror = (fam, parse_class(node, ctx), int(coeff))

    seeds = {}
    for raw in seeds_raw:
        cls, phi, val = [s.strip() for s in raw.split("|")]
        seeds[(parse_class(cls, ctx), phi)] = int(val)

    return SurfaceConfig(
        family_id=kv["family"],
        kind=kv["kind"],
        ctx=ctx,
        conj=conj,
        pairs=pairs,
        supporting_kind=sup[0],
        supporting_sides=tuple(sup[1:]) if len(sup) > 1 else (),
        e_half=_parse_parity(kv.get("e_half", "phi0=0 phiF=0")),
        l_half=_parse_parity(kv.get("l_half", "phi0=0 phiF=0")),
        divides=kv.get("divides", "false").lower() == "true",
        tangent_side_plus=kv.get("tangent_side", "plus") == "plus",
        fcompat=fcompat,
        seeds=seeds,
        mirror=mirror,
        phis=tuple(kv.get("phis", "phi0 phiF").split()),
    )


FAMILY_IDS = ("q4minus", "q3minus", "q2minus", "q1minus", "q0minus",
              "n11plus", "n11minus_fno", "n11minus_fo",
              "q1plus", "q2plus", "q3plus", "q4plus")


def builtin_presets() -> dict:
    """Load the presets shipped with the package."""
    from importlib import resources

    out = {}
    root = resources.files(__package__) / "presets"
    for fam in FAMILY_IDS:
        cfg = load_preset_text((root / f"{fam}.cfg").read_text())
        if cfg.family_id != fam:
            raise ValueError(f"preset file {fam}.cfg declares {cfg.family_id}")
        out[fam] = cfg
    return out


def load_config_dir(path) -> dict:
    """Load presets from a directory of .cfg files, overriding built-ins."""
    from pathlib import Path

    out = builtin_presets()
    for p in sorted(Path(path).glob("*.cfg")):
        cfg = load_preset_text(p.read_text())
        out[cfg.family_id] = cfg
    return out
