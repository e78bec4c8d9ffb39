"""Exact arithmetic in the Picard lattice of a blown-up plane or quadric.

A lattice context carries the Gram matrix of the intersection form in a
fixed basis, the canonical class and (optionally) the distinguished
(-2)-class E of a nodal pair.  Divisor classes are plain integer tuples in
the context basis.  Everything downstream hangs off three exact primitives:
the pairing, the enumeration of (-1)-classes, and integer effective-cone
membership.  Cone membership must never reject a member, so it is done by
depth-first search over generator subtractions with nef-pairing pruning
only (sound and complete), and memoized per context.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Pic = tuple  # integer coordinate tuple in the context basis


def vec_add(a: Pic, b: Pic) -> Pic:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Pic, b: Pic) -> Pic:
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a: Pic) -> Pic:
    return tuple(-x for x in a)


def vec_scale(k: int, a: Pic) -> Pic:
    return tuple(k * x for x in a)


def mat_apply(m, a: Pic) -> Pic:
    return tuple(sum(row[j] * a[j] for j in range(len(a))) for row in m)


@dataclass
class LatticeContext:
    rank: int
    gram: tuple            # tuple of row tuples, symmetric, unimodular (1, rank-1)
    basis_names: tuple
    canonical_class: Pic
    e_class: Pic | None = None
    _neg1: tuple = field(default=None, repr=False)
    _eff_memo: dict = field(default_factory=dict, repr=False)
    _nef_family: tuple = field(default=None, repr=False)
    _gens: tuple = field(default=None, repr=False)

    def __post_init__(self):
        g = self.gram
        if len(g) != self.rank or any(len(r) != self.rank for r in g):
            raise ValueError("gram size mismatch")
        if any(g[i][j] != g[j][i] for i in range(self.rank) for j in range(self.rank)):
            raise ValueError("gram not symmetric")
        if abs(_det(g)) != 1:
            raise ValueError("gram not unimodular")
        if _signature(g) != (1, self.rank - 1):
            raise ValueError("gram signature is not (1, n-1)")

    # -- basic pairing ----------------------------------------------------

    def dualize(self, a: Pic) -> Pic:
        """gram . a, so that pair(a, b) = dot(dualize(a), b)."""
        g = self.gram
        return tuple(sum(row[j] * a[j] for j in range(self.rank)) for row in g)

    def pair(self, a: Pic, b: Pic) -> int:
        if len(a) != self.rank or len(b) != self.rank:
            raise ValueError("class length does not match lattice rank")
        g = self.gram
        return sum(a[i] * sum(g[i][j] * b[j] for j in range(self.rank))
                   for i in range(self.rank))

    def neg1_duals(self) -> tuple:
        """Pre-paired (-1)-classes for fast nef tests."""
        if getattr(self, "_neg1_duals", None) is None:
            self._neg1_duals = tuple(self.dualize(c) for c in self.neg1_classes())
        return self._neg1_duals

    def square(self, a: Pic) -> int:
        return self.pair(a, a)

    def k_degree(self, a: Pic) -> int:
        """-K . a, the anticanonical degree."""
        return -self.pair(self.canonical_class, a)

    # -- distinguished class sets -----------------------------------------

    def neg1_classes(self) -> tuple:
        """All classes C with C^2 = -1 and C.K = -1 (56 in degree 2)."""
        if self._neg1 is None:
            self._neg1 = tuple(sorted(self._search_neg1()))
        return self._neg1

    def _search_neg1(self, bound: int = 3):
        # Bounded box search with prefix pruning; the degree >= 2 bases used
        # here have all (-1)-classes within |coordinate| <= 3 (Cauchy-Schwarz
        # on the anticanonical degree).  The pruning assumes the form is
        # diagonal outside the leading block of positive signature, which
        # both supported bases satisfy.
        g = self.gram
        n = self.rank
        head = 2 if g[0][0] == 0 or g[0][1] != 0 else 1
        if any(g[i][j] for i in range(n) for j in range(n)
               if i != j and (i >= head or j >= head)):
            raise ValueError("unsupported gram shape for the class search")
        k = self.canonical_class
        kg = [self.pair(k, tuple(1 if t == i else 0 for t in range(n)))
              for i in range(n)]
        # suffix ranges of the linear K-pairing
        ksuf = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            ksuf[i] = ksuf[i + 1] + bound * abs(kg[i])
        sols = []

        def rec(i, q, kp, prefix):
            if i == n:
                if q == -1 and kp == -1:
                    sols.append(tuple(prefix))
                return
            for x in range(-bound, bound + 1):
                q2 = q + g[i][i] * x * x
                if i >= head and q2 < -1:
                    continue  # remaining diagonal terms only decrease q
                kp2 = kp + kg[i] * x
                if abs(kp2 + 1) > ksuf[i + 1]:
                    continue
                rec(i + 1, q2, kp2, prefix + [x])

        if head == 1:
            rec(0, 0, 0, [])
        else:
            for x0 in range(-bound, bound + 1):
                for x1 in range(-bound, bound + 1):
                    q = g[0][0] * x0 * x0 + 2 * g[0][1] * x0 * x1 \
                        + g[1][1] * x1 * x1
                    kp = kg[0] * x0 + kg[1] * x1
                    if abs(kp + 1) <= ksuf[2]:
                        rec(2, q, kp, [x0, x1])
        return sols

    def curly_e(self) -> tuple:
        """The (-1)-classes pairing positively with E."""
        if self.e_class is None:
            raise ValueError("context has no E class")
        return tuple(c for c in self.neg1_classes() if self.pair(c, self.e_class) > 0)

    def curly_e_perp(self, d: Pic) -> tuple:
        return tuple(c for c in self.curly_e() if self.pair(c, d) == 0)

    # -- effective cone ----------------------------------------------------

    def cone_generators(self) -> tuple:
        """Generators of the effective cone: the (-1)-classes pairing E
        non-negatively, plus E itself on nodal contexts."""
        if self._gens is None:
            if self.e_class is not None:
                gens = [c for c in self.neg1_classes()
                        if self.pair(c, self.e_class) >= 0]
                gens.append(self.e_class)
            else:
                gens = list(self.neg1_classes())
            # descending anticanonical degree keeps the DFS shallow
            gens.sort(key=lambda g: (-self.k_degree(g), g))
            self._gens = tuple(gens)
        return self._gens

    def nef_family(self) -> tuple:
        """A fixed spanning family of nef classes used for pruning bounds."""
        if self._nef_family is None:
            cands = [vec_neg(self.canonical_class)]
            if self.e_class is not None:
                cands.append(vec_neg(vec_add(self.canonical_class, self.e_class)))
            cands.extend(self._ruling_duals())
            fam = []
            for n in cands:
                if all(self.pair(n, c) >= 0 for c in self.neg1_classes()) and (
                        self.e_class is None or self.pair(n, self.e_class) >= 0):
                    fam.append(n)
            # every generator must pair positively with the family total
            tot = fam[0]
            for n in fam[1:]:
                tot = vec_add(tot, n)
            if any(self.pair(tot, g) <= 0 for g in self.cone_generators()):
                raise ValueError("nef family does not dominate the cone")
            self._nef_family = tuple(fam)
        return self._nef_family

    def _ruling_duals(self):
        # L resp. L1+L2 together with L - E_i style classes, read off from
        # the basis names; nefness is re-checked by the caller.
        names = self.basis_names
        out = []
        unit = lambda i: tuple(1 if j == i else 0 for j in range(self.rank))
        if "L" in names:
            li = names.index("L")
            base = unit(li)
        else:
            base = vec_add(unit(names.index("L1")), unit(names.index("L2")))
        out.append(base)
        for i, nm in enumerate(names):
            if nm.startswith("E") and nm != "E":
                out.append(vec_sub(base, unit(i)))
        return out

    def is_effective(self, d: Pic) -> bool:
        """Exact membership of d in the integer effective cone.

        Complete by construction: the only pruning is by nef pairings,
        which every cone member satisfies, so a member is never rejected.
        Memoized per context; the generator order makes the DFS hit large
        classes first, which keeps it shallow in practice.
        """
        d = tuple(d)
        memo = self._eff_memo
        nef_duals = getattr(self, "_nef_duals", None)
        if nef_duals is None:
            nef_duals = self._nef_duals = tuple(
                self.dualize(n) for n in self.nef_family())
        gens = self.cone_generators()
        rng = range(self.rank)

        def feasible(v):
            for nd in nef_duals:
                if sum(nd[i] * v[i] for i in rng) < 0:
                    return False
            return True

        def search(v):
            cached = memo.get(v)
            if cached is not None:
                return cached
            if not any(v):
                memo[v] = True
                return True
            res = False
            if feasible(v):
                for g in gens:
                    w = vec_sub(v, g)
                    if feasible(w) and search(w):
                        res = True
                        break
            memo[v] = res
            return res

        return search(d)

    def supports_irreducible(self, d: Pic) -> bool:
        """Whether d can be the class of an irreducible curve other than E:
        it must pair non-negatively with every (-1)-class it does not equal.
        Classes failing this force a fixed (-1)-curve as a component."""
        d = tuple(d)
        memo = self.__dict__.setdefault("_irr_memo", {})
        hit = memo.get(d)
        if hit is None:
            hit = all(self.pair(d, c) >= 0
                      for c in self.neg1_classes() if c != d)
            memo[d] = hit
        return hit

    def is_nef_big(self, d: Pic) -> tuple[bool, bool]:
        """(nef, big) on the smooth fiber: nef iff d pairs >= 0 with every
        (-1)-class; big iff nef and d^2 > 0."""
        rng = range(self.rank)
        nef = True
        for cd in self.neg1_duals():
            if sum(cd[i] * d[i] for i in rng) < 0:
                nef = False
                break
        return nef, nef and self.square(d) > 0

    def is_y_nef(self, d: Pic) -> bool:
        """Nef on the nodal surface itself: also requires d.E >= 0."""
        nef, _ = self.is_nef_big(d)
        if self.e_class is not None:
            return nef and self.pair(d, self.e_class) >= 0
        return nef


# -- integer linear algebra helpers ---------------------------------------


def _det(m) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    a = [list(map(int, row)) for row in m]
    prev = 1
    sign = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def _signature(m) -> tuple[int, int]:
    """(positive, negative) inertia of a symmetric rational matrix."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] for i in range(n)]
    pos = neg = 0
    for k in range(n):
        # find a nonzero diagonal pivot, fixing up with a row/col move if needed
        if a[k][k] == 0:
            sw = next((r for r in range(k + 1, n) if a[r][r] != 0), None)
            if sw is not None:
                for j in range(n):
                    a[k][j], a[sw][j] = a[sw][j], a[k][j]
                for i in range(n):
                    a[i][k], a[i][sw] = a[i][sw], a[i][k]
            else:
                r = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
                if r is None:
                    continue  # zero block: contributes nothing
                for j in range(n):
                    a[k][j] += a[r][j]
                for i in range(n):
                    a[i][k] += a[i][r]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / p
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
        for j in range(k + 1, n):
            a[k][j] = Fraction(0)
    return pos, neg


