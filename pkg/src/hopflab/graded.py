"""Graded vector spaces of finite type and graded linear maps.

A GradedSpace stores basis labels for every degree 0..N, where N is the
truncation bound; nothing above N is ever claimed.  A GradedMap carries one
matrix per source degree, under one of three degree rules:

  * "id"        n -> n          (ordinary degree-0 maps)
  * "stretch"   n -> p*n        (Frobenius direction)
  * "contract"  p*n -> n        (Verschiebung direction)

Matrices act on column vectors: column j is the image of source basis
vector j in target coordinates.
"""

from __future__ import annotations

from . import linalg
from .series import TruncatedSeries, TruncationError

RULES = ("id", "stretch", "contract")


class GradedSpace:
    def __init__(self, field, bound: int, labels):
        """labels: sequence indexed by degree 0..bound of label sequences."""
        if bound < 0:
            raise ValueError("bound must be >= 0")
        self.field = field
        self.bound = bound
        lab = [tuple(labels[d]) if d < len(labels) else () for d in range(bound + 1)]
        for d, ls in enumerate(lab):
            if len(set(ls)) != len(ls):
                raise ValueError(f"duplicate basis labels in degree {d}")
        self.labels = tuple(lab)
        self._index = [
            {l: i for i, l in enumerate(ls)} for ls in self.labels
        ]

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        if d > self.bound:
            raise TruncationError(f"degree {d} above bound {self.bound}")
        return len(self.labels[d])

    def basis(self, d: int):
        if d < 0 or d > self.bound:
            return ()
        return self.labels[d]

    def index(self, d: int, label) -> int:
        return self._index[d][label]

    def degrees(self):
        return range(self.bound + 1)

    def total_dim(self) -> int:
        return sum(len(ls) for ls in self.labels)

    def is_reduced(self) -> bool:
        return len(self.labels[0]) == 0

    def series(self) -> TruncatedSeries:
        return TruncatedSeries(self.bound, [len(ls) for ls in self.labels])

    def tensor(self, other: "GradedSpace") -> "GradedSpace":
        """Tensor product; degree-d basis is pairs (a, b) ordered by the
        degree of a, then both basis indices."""
        if other.bound != self.bound or other.field != self.field:
            raise ValueError("tensor factors must share field and bound")
        labels = []
        for d in range(self.bound + 1):
            ls = []
            for i in range(d + 1):
                for a in self.basis(i):
                    for b in other.basis(d - i):
                        ls.append((a, b))
            labels.append(ls)
        return GradedSpace(self.field, self.bound, labels)

    def __eq__(self, other):
        return (
            isinstance(other, GradedSpace)
            and other.field == self.field
            and other.bound == self.bound
            and other.labels == self.labels
        )

    def __repr__(self):
        dims = ",".join(str(len(ls)) for ls in self.labels)
        return f"GradedSpace(dims=[{dims}])"


def _image_degree(rule: str, p: int, d: int):
    if rule == "id":
        return d
    if rule == "stretch":
        return p * d
    if rule == "contract":
        if d % p != 0:
            return None
        return d // p
    raise ValueError(f"unknown degree rule {rule}")


class GradedMap:
    """A per-degree family of matrices between two graded spaces.

    mats maps a source degree d to the matrix of the component out of
    degree d (target degree given by the rule).  Source degrees whose image
    degree would exceed the bound are simply absent: that data does not
    exist at this truncation.
    """

    def __init__(self, source: GradedSpace, target: GradedSpace, rule: str, mats, p: int = 0):
        if rule not in RULES:
            raise ValueError(f"unknown degree rule {rule}")
        if rule != "id" and p < 2:
            raise ValueError("stretch/contract maps need the characteristic p")
        if source.field != target.field or source.bound != target.bound:
            raise ValueError("source and target must share field and bound")
        self.source = source
        self.target = target
        self.rule = rule
        self.p = p
        self.mats = {}
        for d, m in mats.items():
            e = _image_degree(rule, p, d)
            if e is None or e > source.bound:
                raise ValueError(f"degree {d} has no stored image degree under {rule}")
            if len(m) != target.dim(e) or any(len(row) != source.dim(d) for row in m):
                raise ValueError(f"matrix shape mismatch at degree {d}")
            self.mats[d] = [list(row) for row in m]

    @property
    def field(self):
        return self.source.field

    def image_degree(self, d: int):
        return _image_degree(self.rule, self.p, d)

    def matrix(self, d: int):
        if d in self.mats:
            return self.mats[d]
        e = self.image_degree(d)
        if e is None:
            return None
        if e > self.source.bound or d > self.source.bound or d < 0:
            raise TruncationError(f"map out of degree {d} is not stored at bound {self.source.bound}")
        return linalg.zeros(self.field, self.target.dim(e), self.source.dim(d))

    def apply(self, d: int, vec):
        m = self.matrix(d)
        if m is None:
            return None
        return linalg.mat_vec(self.field, m, vec)

    def compose(self, first: "GradedMap") -> "GradedMap":
        """self after first; degree rules must be both "id" or one "id"."""
        if first.target.labels != self.source.labels:
            raise ValueError("composition target/source mismatch")
        if self.rule != "id" and first.rule != "id":
            raise ValueError("only compositions through an id-rule map are stored")
        rule = self.rule if first.rule == "id" else first.rule
        p = max(self.p, first.p)
        mats = {}
        for d in first.mats if first.rule != "id" else range(first.source.bound + 1):
            e = first.image_degree(d)
            if e is None:
                continue
            m1 = first.matrix(d)
            e2 = _image_degree(rule, p, d)
            if e2 is None or e2 > self.source.bound:
                continue
            try:
                m2 = self.matrix(e)
            except TruncationError:
                continue
            if m2 is None:
                continue
            mats[d] = linalg.mat_mul(self.field, m2, m1)
        return GradedMap(first.source, self.target, rule, mats, p)

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return False
        if (self.source, self.target, self.rule) != (other.source, other.target, other.rule):
            return False
        keys = set(self.mats) | set(other.mats)
        return all(linalg.mat_eq(self.field, self.matrix(d), other.matrix(d)) for d in keys)

    def __repr__(self):
        return f"GradedMap({self.rule}, degrees={sorted(self.mats)})"


def identity_map(space: GradedSpace) -> GradedMap:
    mats = {d: linalg.identity_matrix(space.field, space.dim(d)) for d in space.degrees()}
    return GradedMap(space, space, "id", mats)


def zero_map(source: GradedSpace, target: GradedSpace) -> GradedMap:
    mats = {d: linalg.zeros(source.field, target.dim(d), source.dim(d)) for d in source.degrees()}
    return GradedMap(source, target, "id", mats)


def tensor_of_maps(f: GradedMap, g: GradedMap) -> GradedMap:
    """f (x) g on the tensor products of sources and targets.

    All three degree rules either preserve degree or only move even degrees
    in odd characteristic, so the Koszul sign for commuting g past an
    element of the source is +1 throughout; the sign convention is kept
    explicit in braiding() where it is nontrivial.
    """
    if f.field != g.field or f.source.bound != g.source.bound:
        raise ValueError("tensor factors must share field and bound")
    if f.rule != g.rule or f.p != g.p:
        raise ValueError("tensor of maps needs matching degree rules")
    field = f.field
    src = f.source.tensor(g.source)
    tgt = f.target.tensor(g.target)
    rule, p = f.rule, f.p
    mats = {}
    for d in src.degrees():
        e = _image_degree(rule, p, d)
        if e is None:
            continue
        if e > src.bound:
            continue
        rows = tgt.dim(e)
        cols = src.dim(d)
        m = linalg.zeros(field, rows, cols)
        ok = True
        for col, (a, b) in enumerate(src.basis(d)):
            da = _degree_of(f.source, a, d)
            db = d - da
            ea = _image_degree(rule, p, da)
            eb = _image_degree(rule, p, db)
            if ea is None or eb is None:
                continue
            try:
                ma = f.matrix(da)
                mb = g.matrix(db)
            except TruncationError:
                # the pair (a, b) would need factor data above the bound
                ok = False
                break
            if ma is None or mb is None:
                continue
            ia = f.source.index(da, a)
            ib = g.source.index(db, b)
            for ra in range(len(ma)):
                ca = ma[ra][ia]
                if field.is_zero(ca):
                    continue
                la = f.target.basis(ea)[ra]
                for rb in range(len(mb)):
                    cb = mb[rb][ib]
                    if field.is_zero(cb):
                        continue
                    lb = g.target.basis(eb)[rb]
                    row = tgt.index(e, (la, lb))
                    m[row][col] = field.add(m[row][col], field.mul(ca, cb))
        if ok:
            mats[d] = m
    return GradedMap(src, tgt, rule, mats, p)


def _degree_of(space: GradedSpace, label, total: int) -> int:
    for i in range(total + 1):
        if i <= space.bound and label in space._index[i]:
            return i
    raise ValueError(f"label {label!r} not found")


def braiding(m: GradedSpace, n: GradedSpace) -> GradedMap:
    """tau: M (x) N -> N (x) M, tau(x (x) y) = (-1)^{|x||y|} y (x) x."""
    field = m.field
    src = m.tensor(n)
    tgt = n.tensor(m)
    mats = {}
    for d in src.degrees():
        mat = linalg.zeros(field, tgt.dim(d), src.dim(d))
        for col, (a, b) in enumerate(src.basis(d)):
            da = _degree_of(m, a, d)
            db = d - da
            sign = field.one
            if da % 2 == 1 and db % 2 == 1:
                sign = field.neg(sign)
            row = tgt.index(d, (b, a))
            mat[row][col] = sign
        mats[d] = mat
    return GradedMap(src, tgt, "id", mats)
