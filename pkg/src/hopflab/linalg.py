"""Exact dense linear algebra over F_p and Q.

Matrices are lists of rows of field elements.  Over a prime field the
elimination runs on int64 numpy arrays (exact: all entries stay below p**2
which is far inside int64 range); over Q it runs on Fraction entries.
"""

from __future__ import annotations

import numpy as np

from .fields import PrimeField, RationalField


def zeros(field, rows: int, cols: int):
    z = field.zero
    return [[z] * cols for _ in range(rows)]


def identity_matrix(field, n: int):
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def transpose(mat):
    if not mat:
        return []
    return [list(col) for col in zip(*mat)]


def mat_mul(field, a, b):
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch {len(a)}x{len(a[0])} * {len(b)}x{len(b[0]) if b else 0}")
    if not a or not b:
        return zeros(field, len(a), len(b[0]) if b else 0)
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append([field.of(sum(x * y for x, y in zip(row, col))) for col in bt])
    return out


def mat_vec(field, a, v):
    if a and len(a[0]) != len(v):
        raise ValueError("shape mismatch in mat_vec")
    return [field.of(sum(x * y for x, y in zip(row, v))) for row in a]


def mat_eq(field, a, b):
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        if any(not field.is_zero(field.sub(x, y)) for x, y in zip(ra, rb)):
            return False
    return True


def _rref_modp(p: int, mat):
    a = np.array(mat, dtype=np.int64).reshape(len(mat), -1) % p
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
        pivots.append(c)
        r += 1
    return [[int(x) for x in row] for row in a], pivots


def _rref_exact(field, mat):
    a = [list(row) for row in mat]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if not field.is_zero(a[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = field.inv(a[r][c])
        a[r] = [field.mul(inv, x) for x in a[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(field, mat):
    """Reduced row echelon form; returns (rref_matrix, pivot_columns)."""
    if not mat or not mat[0]:
        return [list(r) for r in mat], []
    if isinstance(field, PrimeField):
        return _rref_modp(field.p, mat)
    return _rref_exact(field, mat)


def rank(field, mat) -> int:
    return len(rref(field, mat)[1])


def kernel_basis(field, mat, ncols: int | None = None):
    """Basis of the right kernel {v : mat @ v = 0}.

    `ncols` must be given when mat has no rows.
    """
    if not mat:
        if ncols is None:
            raise ValueError("need ncols for an empty matrix")
        return [list(row) for row in identity_matrix(field, ncols)]
    ncols = len(mat[0])
    r, pivots = rref(field, mat)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(r[i][f])
        basis.append(v)
    return basis


def solve(field, mat, rhs):
    """One solution of mat @ v = rhs, or None if inconsistent."""
    nrows = len(mat)
    if nrows == 0:
        return []
    ncols = len(mat[0])
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    r, pivots = rref(field, aug)
    if pivots and pivots[-1] == ncols:
        return None
    v = [field.zero] * ncols
    for i, pc in enumerate(pivots):
        v[pc] = r[i][ncols]
    return v


def row_space_contains(field, rref_rows, pivots, vec):
    """Whether vec lies in the row space described by an rref basis."""
    v = list(vec)
    for row, pc in zip(rref_rows, pivots):
        c = v[pc]
        if not field.is_zero(c):
            v = [field.sub(x, field.mul(c, y)) for x, y in zip(v, row)]
    return all(field.is_zero(x) for x in v)


class Subspace:
    """A subspace of k^n kept in rref form; supports incremental extension.

    Over a prime field the rows live in one int64 numpy array so reduction
    is a matrix product; over Q they are Fraction lists.
    """

    def __init__(self, field, ambient_dim: int):
        self.field = field
        self.n = ambient_dim
        self._modp = isinstance(field, PrimeField)
        if self._modp:
            self._rows = np.zeros((0, ambient_dim), dtype=np.int64)
        else:
            self.rows = []
        self.pivots = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vec):
        f = self.field
        if self._modp:
            v = np.asarray(vec, dtype=np.int64) % f.p
            if self.pivots:
                coeffs = v[self.pivots]
                if coeffs.any():
                    v = (v - coeffs @ self._rows) % f.p
            return v
        v = list(vec)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if not f.is_zero(c):
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        if self._modp:
            return not self.reduce(vec).any()
        return all(self.field.is_zero(x) for x in self.reduce(vec))

    def add(self, vec) -> bool:
        """Insert vec; returns True if the dimension grew."""
        f = self.field
        v = self.reduce(vec)
        if self._modp:
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                return False
            pc = int(nz[0])
            v = (v * pow(int(v[pc]), f.p - 2, f.p)) % f.p
            col = self._rows[:, pc]
            if col.any():
                self._rows = (self._rows - np.outer(col, v)) % f.p
            at = next((k for k, q in enumerate(self.pivots) if q > pc), len(self.pivots))
            self._rows = np.insert(self._rows, at, v, axis=0)
            self.pivots.insert(at, pc)
            return True
        pc = next((i for i, x in enumerate(v) if not f.is_zero(x)), None)
        if pc is None:
            return False
        inv = f.inv(v[pc])
        v = [f.mul(inv, x) for x in v]
        for i, row in enumerate(self.rows):
            c = row[pc]
            if not f.is_zero(c):
                self.rows[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(row, v)]
        at = next((k for k, q in enumerate(self.pivots) if q > pc), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, pc)
        return True

    def extend(self, vecs):
        vecs = list(vecs)
        if self._modp and len(vecs) > 4:
            stacked = np.vstack([self._rows] + [np.asarray(v, dtype=np.int64).reshape(1, -1) for v in vecs]) % self.field.p
            reduced, pivots = _rref_modp(self.field.p, stacked)
            self._rows = np.array(reduced[: len(pivots)], dtype=np.int64).reshape(len(pivots), self.n)
            self.pivots = list(pivots)
            return
        for v in vecs:
            self.add(v)

    def complement_indices(self):
        pivot_set = set(self.pivots)
        return [c for c in range(self.n) if c not in pivot_set]

    def coordinates_mod(self, vec):
        """Coordinates of vec + subspace on the complement basis."""
        v = self.reduce(vec)
        comp = self.complement_indices()
        if self._modp:
            return [int(v[c]) for c in comp]
        return [v[c] for c in comp]


class AffineSystem:
    """Affine-linear system over a field in named unknowns.

    Equations are sum(coeff*var) = rhs.  Variables are registered in the
    order first seen unless pre-registered; that order is the one used by
    solve_lex_min.
    """

    def __init__(self, field):
        self.field = field
        self.var_index: dict = {}
        self.var_order: list = []
        self.equations: list[tuple[dict, object]] = []

    def var(self, key):
        if key not in self.var_index:
            self.var_index[key] = len(self.var_order)
            self.var_order.append(key)
        return self.var_index[key]

    def add_equation(self, coeffs: dict, rhs):
        f = self.field
        clean = {}
        for k, c in coeffs.items():
            c = f.of(c)
            if not f.is_zero(c):
                self.var(k)
                clean[k] = c
        self.equations.append((clean, f.of(rhs)))

    def _augmented(self, extra=()):
        n = len(self.var_order)
        rows = []
        for coeffs, rhs in list(self.equations) + list(extra):
            row = [self.field.zero] * (n + 1)
            for k, c in coeffs.items():
                row[self.var_index[k]] = c
            row[n] = rhs
            rows.append(row)
        return rows, n

    def solve(self, extra=()):
        """Canonical solution (free variables zero) as {key: value}, or None."""
        rows, n = self._augmented(extra)
        if not rows:
            return {k: self.field.zero for k in self.var_order}
        r, pivots = rref(self.field, rows)
        if pivots and pivots[-1] == n:
            return None
        sol = {k: self.field.zero for k in self.var_order}
        for i, pc in enumerate(pivots):
            sol[self.var_order[pc]] = r[i][n]
        return sol

    def feasible(self, extra=()) -> bool:
        return self.solve(extra) is not None

    def solve_lex_min(self):
        """Lexicographically least solution in the registered variable order.

        Only meaningful over a prime field (values compared as 0..p-1).
        """
        if not isinstance(self.field, PrimeField):
            return self.solve()
        if self.solve() is None:
            return None
        pinned = []
        one = self.field.one
        for key in self.var_order:
            for val in range(self.field.p):
                trial = pinned + [({key: one}, self.field.of(val))]
                if self.feasible(trial):
                    pinned = trial
                    break
        sol = self.solve(pinned)
        assert sol is not None
        return sol

    def solution_space(self, max_count: int | None = None):
        """Iterate all solutions (prime field only); canonical one first."""
        base = self.solve()
        if base is None:
            return
        yield dict(base)
        if not isinstance(self.field, PrimeField):
            return
        rows, n = self._augmented()
        if not rows:
            rows = [[self.field.zero] * (n + 1)]
        homo = [row[:n] for row in rows]
        null = kernel_basis(self.field, homo, ncols=n)
        count = 1
        if not null:
            return
        p = self.field.p
        idx = [0] * len(null)
        while True:
            k = 0
            while k < len(idx):
                idx[k] += 1
                if idx[k] < p:
                    break
                idx[k] = 0
                k += 1
            if k == len(idx):
                return
            if all(i == 0 for i in idx):
                return
            sol = dict(base)
            for coeff, vec in zip(idx, null):
                if coeff == 0:
                    continue
                for key, v in zip(self.var_order, vec):
                    sol[key] = self.field.add(sol[key], self.field.mul(coeff, v))
            yield sol
            count += 1
            if max_count is not None and count >= max_count:
                return
