"""F-modules and V-modules over F_p and their chain classification.

An F-module is a reduced graded space with Frobenius maps F: M_n -> M_{pn}
(out of even degrees only when p is odd); a V-module carries Verschiebung
maps V: M_{pn} -> M_n.  Every such module splits uniquely into chains
N(n,j) / M(n,j) with basis x_0..x_j in degrees n, pn, ..., p^j n.

At a finite truncation bound a chain whose top class sits in a degree d
with p*d > N cannot be told apart from any longer chain; its length is
reported as AtLeast(j), never as infinity.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from . import linalg
from .fields import PrimeField
from .graded import GradedMap, GradedSpace
from .series import TruncatedSeries, TruncationError


@dataclass(frozen=True, order=True)
class AtLeast:
    j: int

    def __repr__(self):
        return f">={self.j}"


@dataclass(frozen=True)
class Summand:
    """A chain with bottom degree n and length marker j (int or AtLeast)."""

    n: int
    j: object

    def sort_key(self):
        j = self.j
        return (self.n, isinstance(j, AtLeast), j.j if isinstance(j, AtLeast) else j)

    def top_count(self) -> int:
        j = self.j
        return (j.j if isinstance(j, AtLeast) else j) + 1

    def series(self, p: int, bound: int) -> TruncatedSeries:
        c = [0] * (bound + 1)
        d = self.n
        for _ in range(self.top_count()):
            if d > bound:
                break
            c[d] += 1
            d *= p
        return TruncatedSeries(bound, c)

    def __repr__(self):
        return f"({self.n},{self.j})"


class Decomposition:
    """Multiset of Summands; the bounded classification of a module."""

    def __init__(self, p: int, bound: int, summands):
        self.p = p
        self.bound = bound
        self.counter = Counter(summands)

    def sorted_items(self):
        return sorted(self.counter.items(), key=lambda kv: kv[0].sort_key())

    def series(self) -> TruncatedSeries:
        total = TruncatedSeries.zero(self.bound)
        for s, mult in self.counter.items():
            total = total + mult * s.series(self.p, self.bound)
        return total

    def a_series(self, j) -> TruncatedSeries:
        """Multiplicity series a^j(t) = sum_n mult(n, j) t^n for one j."""
        c = [0] * (self.bound + 1)
        for s, mult in self.counter.items():
            if s.j == j and s.n <= self.bound:
                c[s.n] += mult
        return TruncatedSeries(self.bound, c)

    def __eq__(self, other):
        return (
            isinstance(other, Decomposition)
            and other.p == self.p
            and other.counter == self.counter
        )

    def __repr__(self):
        if not self.counter:
            return "0"
        return " + ".join(
            (f"{m}*" if m > 1 else "") + f"({s.n},{s.j})" for s, m in self.sorted_items()
        )

    def text(self, kind="N"):
        if not self.counter:
            return "0"
        parts = []
        for s, m in self.sorted_items():
            j = f">={s.j.j}" if isinstance(s.j, AtLeast) else str(s.j)
            head = f"{m}*" if m > 1 else ""
            parts.append(f"{head}{kind}({s.n},{j})")
        return " + ".join(parts)


def _valid_f_sources(p: int, bound: int):
    """Degrees out of which an F map is stored: p*d <= bound, even if p odd."""
    for d in range(1, bound // p + 1):
        if p == 2 or d % 2 == 0:
            yield d


def _valid_v_sources(p: int, bound: int):
    """Degrees out of which a V map exists: multiples of p (of 2p if p odd)."""
    step = p if p == 2 else 2 * p
    for d in range(step, bound + 1, step):
        yield d


class FModule:
    def __init__(self, field: PrimeField, space: GradedSpace, mats: dict):
        if not isinstance(field, PrimeField):
            raise ValueError("F-modules live over a prime field")
        if not space.is_reduced():
            raise ValueError("F-module underlying space must be reduced")
        self.field = field
        self.p = field.p
        self.space = space
        full = {}
        for d in _valid_f_sources(self.p, space.bound):
            m = mats.get(d)
            if m is None:
                m = linalg.zeros(field, space.dim(self.p * d), space.dim(d))
            full[d] = m
        extra = set(mats) - set(full)
        if extra:
            raise ValueError(f"F stored out of invalid degrees {sorted(extra)}")
        self.map = GradedMap(space, space, "stretch", full, self.p)

    @property
    def bound(self):
        return self.space.bound

    def f_matrix(self, d):
        """Matrix of F out of degree d, or None when that data does not
        exist (odd-degree source at odd p)."""
        if self.p != 2 and d % 2 == 1:
            return None
        if self.p * d > self.bound:
            raise TruncationError(f"F out of degree {d} exceeds bound {self.bound}")
        return self.map.matrix(d)

    def series(self):
        return self.space.series()

    def __repr__(self):
        return f"FModule(p={self.p}, dims={[self.space.dim(d) for d in self.space.degrees()]})"


class VModule:
    def __init__(self, field: PrimeField, space: GradedSpace, mats: dict):
        if not isinstance(field, PrimeField):
            raise ValueError("V-modules live over a prime field")
        if not space.is_reduced():
            raise ValueError("V-module underlying space must be reduced")
        self.field = field
        self.p = field.p
        self.space = space
        full = {}
        for d in _valid_v_sources(self.p, space.bound):
            m = mats.get(d)
            if m is None:
                m = linalg.zeros(field, space.dim(d // self.p), space.dim(d))
            full[d] = m
        extra = set(mats) - set(full)
        if extra:
            raise ValueError(f"V stored out of invalid degrees {sorted(extra)}")
        self.map = GradedMap(space, space, "contract", full, self.p)

    @property
    def bound(self):
        return self.space.bound

    def v_matrix(self, d):
        if d % self.p != 0 or (self.p != 2 and d % (2 * self.p) != 0):
            return None
        return self.map.matrix(d)

    def apply(self, d, vec):
        m = self.v_matrix(d)
        if m is None:
            return None
        return linalg.mat_vec(self.field, m, vec)

    def series(self):
        return self.space.series()

    def __repr__(self):
        return f"VModule(p={self.p}, dims={[self.space.dim(d) for d in self.space.degrees()]})"


def _transpose_shaped(mat, nrows, ncols):
    # list-of-lists loses the column count on 0-row matrices
    return [[mat[r][c] for r in range(nrows)] for c in range(ncols)]


def dualize(mod):
    """Transpose per degree: F-modules <-> V-modules on the dual space."""
    field, space = mod.field, mod.space
    if isinstance(mod, FModule):
        # V out of degree p*d is the transpose of F out of d
        mats = {}
        for d in _valid_f_sources(mod.p, space.bound):
            m = mod.map.matrix(d)
            mats[mod.p * d] = _transpose_shaped(m, space.dim(mod.p * d), space.dim(d))
        return VModule(field, space, mats)
    mats = {}
    for e in _valid_v_sources(mod.p, space.bound):
        m = mod.map.matrix(e)
        mats[e // mod.p] = _transpose_shaped(m, space.dim(e // mod.p), space.dim(e))
    return FModule(field, space, mats)


def standard_summand(n: int, j, p: int, bound: int, kind="F"):
    """The chain N(n,j) (kind="F") or M(n,j) (kind="V"), truncated.

    j may be an int, AtLeast(J) (same stored data as j=J), or None meaning
    an unbounded chain.
    """
    from .fields import GF

    field = GF(p)
    if n < 1 or n > bound:
        raise ValueError(f"bottom degree {n} out of range 1..{bound}")
    if isinstance(j, AtLeast):
        j = j.j
    if p != 2:
        if n % 2 == 1 and j not in (0, None):
            raise ValueError(f"odd bottom degree at p={p} forces a singleton chain")
        if n % 2 == 1:
            j = 0
        elif (n // 2) % p == 0 and j not in (0,):
            # bottom degree 2m with p | m is an interior lane position; a
            # chain may start there (it is a Phi-shift of a seed) so this is
            # allowed for every j.
            pass
    degs = []
    d = n
    top = j if j is not None else 10 ** 9
    for i in range(top + 1):
        if d > bound:
            break
        degs.append(d)
        d *= p
    labels = [[] for _ in range(bound + 1)]
    for i, d in enumerate(degs):
        labels[d] = [f"x{i}@{d}"]
    space = GradedSpace(field, bound, labels)
    mats = {}
    if kind == "F":
        for i in range(len(degs)):
            d = degs[i]
            if p != 2 and d % 2 == 1:
                continue
            if p * d > bound:
                continue
            col = [[field.one]] if (i + 1 < len(degs) and (j is None or i + 1 <= j)) else \
                linalg.zeros(field, space.dim(p * d), 1)
            mats[d] = col
        return FModule(field, space, mats)
    if kind == "V":
        for i in range(1, len(degs)):
            d = degs[i]
            mats[d] = [[field.one]]
        return VModule(field, space, mats)
    raise ValueError("kind must be 'F' or 'V'")


def direct_sum(*mods):
    if not mods:
        raise ValueError("need at least one module")
    kind = type(mods[0])
    field = mods[0].field
    bound = mods[0].bound
    if any(type(m) is not kind or m.field != field or m.bound != bound for m in mods):
        raise ValueError("direct sum needs matching kind, field and bound")
    labels = [[] for _ in range(bound + 1)]
    for k, m in enumerate(mods):
        for d in range(bound + 1):
            labels[d].extend((k, lab) for lab in m.space.basis(d))
    space = GradedSpace(field, bound, labels)
    sources = _valid_f_sources if kind is FModule else _valid_v_sources
    p = mods[0].p
    mats = {}
    for d in sources(p, bound):
        e = p * d if kind is FModule else d // p
        big = linalg.zeros(field, space.dim(e), space.dim(d))
        col0 = 0
        for k, m in enumerate(mods):
            sub = m.map.matrix(d)
            row0 = sum(mods[i].space.dim(e) for i in range(k))
            for r, row in enumerate(sub):
                for c, val in enumerate(row):
                    big[row0 + r][col0 + c] = val
            col0 += m.space.dim(d)
        mats[d] = big
    return kind(field, space, mats)


def phi(mod):
    """Degree-stretching twist: degree n goes to pn (p=2), 2m to 2pm (p odd,
    odd degrees are killed).  Errors out if occupied degrees would leave the
    bound."""
    p, field, bound = mod.p, mod.field, mod.bound

    def new_degree(d):
        if p == 2:
            return 2 * d
        if d % 2 == 1:
            return None
        return p * d

    labels = [[] for _ in range(bound + 1)]
    for d in range(1, bound + 1):
        nd = new_degree(d)
        if nd is None:
            continue
        if mod.space.dim(d) and nd > bound:
            raise TruncationError(f"Phi would move degree {d} to {nd} > {bound}")
        if nd <= bound:
            labels[nd] = list(mod.space.basis(d))
    space = GradedSpace(field, bound, labels)
    mats = {}
    if isinstance(mod, FModule):
        for d in _valid_f_sources(p, bound):
            nd = new_degree(d)
            if nd is None or nd > bound or p * nd > bound:
                continue
            mats[nd] = mod.map.matrix(d)
        return FModule(field, space, mats)
    for d in _valid_v_sources(p, bound):
        nd = new_degree(d)
        if nd is None or nd > bound:
            continue
        mats[nd] = mod.map.matrix(d)
    return VModule(field, space, mats)


def tensor_fv(m1, m2):
    """Tensor product with the diagonal structure map F(a@b) = F(a)@F(b)
    (V likewise).  At odd p a component with an odd-degree factor has no
    factor map and contributes zero."""
    if type(m1) is not type(m2) or m1.field != m2.field or m1.bound != m2.bound:
        raise ValueError("tensor factors must share kind, field and bound")
    field, p, bound = m1.field, m1.p, m1.bound
    space = m1.space.tensor(m2.space)
    labels = [list(space.basis(d)) for d in range(bound + 1)]
    labels[0] = []
    space = GradedSpace(field, bound, labels)
    is_f = isinstance(m1, FModule)
    sources = _valid_f_sources if is_f else _valid_v_sources
    mats = {}
    for d in sources(p, bound):
        e = p * d if is_f else d // p
        mat = linalg.zeros(field, space.dim(e), space.dim(d))
        for col, (a, b) in enumerate(space.basis(d)):
            da = _label_degree(m1.space, a)
            db = d - da
            if is_f:
                if p != 2 and (da % 2 or db % 2):
                    continue
                ma, mb = m1.map.matrix(da), m2.map.matrix(db)
                ea, eb = p * da, p * db
            else:
                if da % p or db % p or (p != 2 and (da % (2 * p) or db % (2 * p))):
                    continue
                ma, mb = m1.map.matrix(da), m2.map.matrix(db)
                ea, eb = da // p, db // p
            ia = m1.space.index(da, a)
            ib = m2.space.index(db, b)
            for ra in range(len(ma)):
                va = ma[ra][ia]
                if field.is_zero(va):
                    continue
                la = m1.space.basis(ea)[ra]
                for rb in range(len(mb)):
                    vb = mb[rb][ib]
                    if field.is_zero(vb):
                        continue
                    lb = m2.space.basis(eb)[rb]
                    row = space.index(e, (la, lb))
                    mat[row][col] = field.add(mat[row][col], field.mul(va, vb))
        mats[d] = mat
    return (FModule if is_f else VModule)(field, space, mats)


def _label_degree(space: GradedSpace, label) -> int:
    for d in range(space.bound + 1):
        if label in space._index[d]:
            return d
    raise ValueError(f"label {label!r} not in space")


# ---------------------------------------------------------------------------
# classification


def _lane_seeds(p: int, bound: int):
    """Seed degrees: odd n (p=2) or 2m with p∤m (p odd).  Odd degrees at odd
    p are handled separately as forced singletons."""
    if p == 2:
        return [n for n in range(1, bound + 1) if n % 2 == 1]
    return [n for n in range(2, bound + 1, 2) if (n // 2) % p != 0]


def _lane_positions(seed: int, p: int, bound: int):
    degs = []
    d = seed
    while d <= bound:
        degs.append(d)
        d *= p
    return degs


def classify(mod) -> Decomposition:
    """Unique bounded chain decomposition via rank profiles.

    Within a lane (the orbit of a seed degree under multiplication by p)
    let r(i, l) = rank of the l-fold structure map out of lane position i.
    The number of chains occupying exactly positions i..e is

        c(i, e) = r(i, e-i) - r(i, e-i+1) - r(i-1, e-i+1) + r(i-1, e-i+2)

    with r(-1, .) = 0.  Chains still alive at the last storable position
    are reported with an AtLeast marker.
    """
    if isinstance(mod, VModule):
        return classify(dualize(mod))
    field, p, bound = mod.field, mod.p, mod.bound
    summands = []

    if p != 2:
        for d in range(1, bound + 1, 2):
            mult = mod.space.dim(d)
            if mult:
                summands.extend([Summand(d, 0)] * mult)

    for seed in _lane_seeds(p, bound):
        degs = _lane_positions(seed, p, bound)
        L = len(degs) - 1
        dims = [mod.space.dim(d) for d in degs]
        if sum(dims) == 0:
            continue
        # composite ranks r[i][l] for i + l <= L
        steps = [mod.map.matrix(degs[i]) for i in range(L)]
        r = [[0] * (L + 2) for _ in range(L + 1)]
        for i in range(L + 1):
            r[i][0] = dims[i]
            comp = linalg.identity_matrix(field, dims[i])
            for l in range(1, L - i + 1):
                comp = linalg.mat_mul(field, steps[i + l - 1], comp)
                r[i][l] = linalg.rank(field, comp)

        def rr(i, l):
            if i < 0:
                return 0
            if i + l > L:
                return 0  # clamped at the truncation edge; only used below it
            return r[i][l]

        for i in range(L + 1):
            # finite chains ending strictly below the edge
            for e in range(i, L):
                l = e - i
                c = rr(i, l) - rr(i, l + 1) - rr(i - 1, l + 1) + rr(i - 1, l + 2)
                assert c >= 0, "rank profile produced a negative multiplicity"
                summands.extend([Summand(degs[i], l)] * c)
            # chains alive at the edge position L
            alive = rr(i, L - i) - rr(i - 1, L - i + 1)
            assert alive >= 0
            if alive:
                summands.extend([Summand(degs[i], AtLeast(L - i))] * alive)

    dec = Decomposition(p, bound, summands)
    assert dec.series() == mod.series(), "decomposition does not conserve dimensions"
    return dec


def rebuild(dec: Decomposition, kind="F"):
    """Direct sum of standard summands over a decomposition."""
    mods = []
    for s, mult in dec.sorted_items():
        j = s.j.j if isinstance(s.j, AtLeast) else s.j
        mods.extend([standard_summand(s.n, j, dec.p, dec.bound, kind)] * mult)
    if not mods:
        from .fields import GF

        field = GF(dec.p)
        space = GradedSpace(field, dec.bound, [[]])
        return (FModule if kind == "F" else VModule)(field, space, {})
    return direct_sum(*mods)


def iso_test_fv(m1, m2) -> bool:
    """Bounded isomorphism test: equality of classification multisets.
    AtLeast markers only match AtLeast markers with the same floor."""
    if type(m1) is not type(m2) or m1.p != m2.p or m1.bound != m2.bound:
        raise ValueError("comparison needs matching kind, p and bound")
    return classify(m1) == classify(m2)


def _f_projective(s: Summand, p: int) -> bool:
    # chains consistent with N(n, infinity) are the projectives; at odd p the
    # odd-degree singletons are projective as well
    if p != 2 and s.n % 2 == 1:
        return True
    return isinstance(s.j, AtLeast)


def _f_injective(s: Summand, p: int) -> bool:
    # injectives sit at lane seeds
    if p == 2:
        return s.n % 2 == 1
    if s.n % 2 == 1:
        return True
    return (s.n // 2) % p != 0


def is_projective(s: Summand, p: int, kind: str = "F") -> bool:
    """Whether the summand is (consistent with) a projective; AtLeast markers
    are read as the unbounded chain.  Duality swaps the predicates for V."""
    return _f_projective(s, p) if kind == "F" else _f_injective(s, p)


def is_injective(s: Summand, p: int, kind: str = "F") -> bool:
    return _f_injective(s, p) if kind == "F" else _f_projective(s, p)


# ---------------------------------------------------------------------------
# brute-force search used to validate the multiplicity formula


def _rank_profile(mod: FModule):
    """All composite ranks (seed, i, l) -> rank within each lane."""
    field, p, bound = mod.field, mod.p, mod.bound
    prof = {}
    for seed in _lane_seeds(p, bound):
        degs = _lane_positions(seed, p, bound)
        L = len(degs) - 1
        dims = [mod.space.dim(d) for d in degs]
        for i in range(L + 1):
            prof[(seed, i, 0)] = dims[i]
            comp = linalg.identity_matrix(field, dims[i])
            for l in range(1, L - i + 1):
                comp = linalg.mat_mul(field, mod.map.matrix(degs[i + l - 1]), comp)
                prof[(seed, i, l)] = linalg.rank(field, comp)
    if p != 2:
        for d in range(1, bound + 1, 2):
            prof[("odd", d, 0)] = mod.space.dim(d)
    return prof


def _candidate_multisets(mod: FModule):
    """Enumerate all chain multisets consistent with the lane dimensions."""
    p, bound = mod.p, mod.bound
    lane_options = []
    for seed in _lane_seeds(p, bound):
        degs = _lane_positions(seed, p, bound)
        L = len(degs) - 1
        dims = [mod.space.dim(d) for d in degs]
        intervals = [(i, e) for i in range(L + 1) for e in range(i, L + 1)]

        def fill(pos, remaining, chosen):
            if pos == len(intervals):
                if all(x == 0 for x in remaining):
                    yield tuple(chosen)
                return
            i, e = intervals[pos]
            cap = min(remaining[k] for k in range(i, e + 1)) if e >= i else 0
            for count in range(cap + 1):
                rem = list(remaining)
                for k in range(i, e + 1):
                    rem[k] -= count
                yield from fill(pos + 1, rem, chosen + [((i, e), count)])

        lane_options.append((seed, degs, L, list(fill(0, dims, []))))
    return lane_options


def classify_by_search(mod: FModule) -> Decomposition:
    """Independent oracle: search over all candidate chain multisets for the
    unique one whose standard model has the same rank profile as mod.

    Exponential; intended for modules of total dimension <= 8 in tests.
    """
    p, bound = mod.p, mod.bound
    target = _rank_profile(mod)
    summands = []
    if p != 2:
        for d in range(1, bound + 1, 2):
            summands.extend([Summand(d, 0)] * mod.space.dim(d))
    for seed, degs, L, options in _candidate_multisets(mod):
        matches = []
        for option in options:
            mods = []
            for (i, e), count in option:
                if count == 0:
                    continue
                mods.extend([standard_summand(degs[i], e - i, p, bound)] * count)
            if mods:
                model = direct_sum(*mods)
            else:
                from .fields import GF

                model = FModule(GF(p), GradedSpace(GF(p), bound, [[]]), {})
            prof = _rank_profile(model)
            if all(prof.get((seed, i, l), 0) == target.get((seed, i, l), 0)
                   for i in range(L + 1) for l in range(L - i + 1)):
                matches.append(option)
        assert len(matches) == 1, f"rank profile matched {len(matches)} candidates"
        for (i, e), count in matches[0]:
            if count == 0:
                continue
            marker = AtLeast(e - i) if e == L else e - i
            summands.extend([Summand(degs[i], marker)] * count)
    return Decomposition(p, bound, summands)


def random_fmodule(rng, p: int, bound: int, max_dim: int = 6, min_degree: int = 1) -> FModule:
    """A random F-module for property tests; dimensions kept small."""
    from .fields import GF

    field = GF(p)
    total = rng.randint(1, max_dim)
    labels = [[] for _ in range(bound + 1)]
    for k in range(total):
        while True:
            d = rng.randint(min_degree, bound)
            if p == 2 or True:
                break
        labels[d].append(f"m{k}@{d}")
    space = GradedSpace(field, bound, labels)
    mats = {}
    for d in _valid_f_sources(p, bound):
        rows, cols = space.dim(p * d), space.dim(d)
        mats[d] = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
    return FModule(field, space, mats)
