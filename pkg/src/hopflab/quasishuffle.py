"""The free Hopf algebra J(C) on a cocommutative coalgebra and the cofree
quasi-shuffle Hopf algebra on a commutative algebra.

Words are tuples of positive-degree basis labels of the input.  The
quasi-shuffle product is assembled from pairs of order-preserving
inclusions alpha: [l] -> [n], beta: [m] -> [n] covering [n]; a slot hit by
both multiplies the two letters in A (alpha-letter first).  The Koszul sign
of a term is the parity of the interleaving permutation: each beta-letter
passing an alpha-letter of odd degree contributes (-1)^(|u||v|).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .hopf import Bialgebra, GradedAlgebra, WordHopf, vadd_into


@lru_cache(maxsize=None)
def surjection_pairs(l: int, m: int):
    """All (alpha, beta) with images covering [n], max(l,m) <= n <= l+m.

    alpha and beta are tuples of slot indices (strictly increasing)."""
    out = []
    for n in range(max(l, m), l + m + 1):
        for alpha in itertools.combinations(range(n), l):
            need = set(range(n)) - set(alpha)
            for beta in itertools.combinations(range(n), m):
                if need <= set(beta):
                    out.append((n, alpha, beta))
    return tuple(out)


def deconcat_component(word: tuple, l: int, m: int):
    """The (l, m) deconcatenation component: the single split with
    coefficient 1."""
    if len(word) != l + m:
        raise ValueError(f"word of length {len(word)} has no ({l},{m}) component")
    return (word[:l], word[l:])


class QuasiShuffleHopf(Bialgebra):
    """Words in the positive basis of a commutative algebra A, with
    deconcatenation coproduct and quasi-shuffle product."""

    commutative = True
    coproduct_is_deconcatenation = True

    def __init__(self, algebra: GradedAlgebra, bound=None):
        if not algebra.commutative:
            raise ValueError("quasi-shuffle needs a commutative algebra")
        bound = algebra.bound if bound is None else bound
        if bound > algebra.bound:
            raise ValueError("bound exceeds the algebra's truncation")
        super().__init__(algebra.field, bound)
        self.algebra = algebra
        self.cocommutative = all(algebra.dim(d) == 0 for d in range(1, bound + 1)) or False
        self._letters = []
        for d in range(1, bound + 1):
            for lab in algebra.basis(d):
                self._letters.append((lab, d))
        self._letter_degree = dict(self._letters)
        self._enumerate_words()
        self._finish_init(())

    def _enumerate_words(self):
        frontier = [((), 0)]
        while frontier:
            nxt = []
            for w, deg in frontier:
                for lab, d in self._letters:
                    if deg + d <= self.bound:
                        w2 = w + (lab,)
                        self._basis[deg + d].append(w2)
                        nxt.append((w2, deg + d))
            frontier = nxt
        for d in range(1, self.bound + 1):
            self._basis[d].sort(key=self._word_key)

    def _word_key(self, w):
        a = self.algebra
        return (len(w), tuple((self._letter_degree[l], a.index(self._letter_degree[l], l)) for l in w))

    def word_degree(self, w):
        return sum(self._letter_degree[l] for l in w)

    def _product_bb(self, u, v):
        f = self.field
        l, m = len(u), len(v)
        degs_u = [self._letter_degree[x] for x in u]
        degs_v = [self._letter_degree[x] for x in v]
        out = {}
        for n, alpha, beta in surjection_pairs(l, m):
            # interleaving sign: v_j passes u_i exactly when beta(j) < alpha(i)
            sign = 0
            for j in range(m):
                if degs_v[j] % 2 == 0:
                    continue
                for i in range(l):
                    if degs_u[i] % 2 and beta[j] < alpha[i]:
                        sign += 1
            coeff = f.one if sign % 2 == 0 else f.neg(f.one)
            slot_a = {s: i for i, s in enumerate(alpha)}
            slot_b = {s: j for j, s in enumerate(beta)}
            # expand overlap products (each is a linear combination in A)
            words = [((), coeff)]
            dead = False
            for s in range(n):
                ia, jb = slot_a.get(s), slot_b.get(s)
                if ia is not None and jb is not None:
                    prod = self.algebra.product_bb(u[ia], v[jb])
                    if not prod:
                        dead = True
                        break
                    words = [(w + (lab,), f.mul(c, c2)) for (w, c) in words for lab, c2 in prod.items()]
                elif ia is not None:
                    words = [(w + (u[ia],), c) for (w, c) in words]
                else:
                    words = [(w + (v[jb],), c) for (w, c) in words]
            if dead:
                continue
            for w, c in words:
                vadd_into(f, out, {w: c})
        return out

    def _coproduct_b(self, w):
        f = self.field
        return {(w[:k], w[k:]): f.one for k in range(len(w) + 1)}

    def label_name(self, w):
        if not w:
            return "1"
        return "[" + "|".join(self.algebra.label_name(l) for l in w) + "]"


def build_jvee(algebra: GradedAlgebra, bound=None) -> QuasiShuffleHopf:
    """The cofree quasi-shuffle Hopf algebra on a commutative algebra."""
    return QuasiShuffleHopf(algebra, bound)


def build_j(coalgebra, bound=None) -> WordHopf:
    """The free Hopf algebra on a cocommutative coalgebra: tensor algebra on
    the positive part, coproduct induced by the coalgebra's coproduct routed
    through (Cbar x k) + (Cbar x Cbar) + (k x Cbar)."""
    if not getattr(coalgebra, "cocommutative", True):
        raise ValueError("free Hopf algebra needs a cocommutative coalgebra")
    bound = coalgebra.bound if bound is None else bound
    field = coalgebra.field
    gens = []
    name_of = {}
    for d in range(1, bound + 1):
        for lab in coalgebra.basis(d):
            name = coalgebra.label_name(lab)
            if name in name_of.values():
                raise ValueError(f"duplicate printed name {name}")
            name_of[lab] = name
            gens.append((name, d))
    reduced = {}
    unit = coalgebra.unit_label
    for d in range(1, bound + 1):
        for lab in coalgebra.basis(d):
            red = {}
            for (a, b), c in coalgebra.coproduct_b(lab).items():
                if a == unit or b == unit:
                    continue
                red[((name_of[a],), (name_of[b],))] = c
            reduced[name_of[lab]] = red
    return WordHopf(field, bound, gens, reduced)
