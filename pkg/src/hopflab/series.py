"""Integer power series truncated at a fixed degree bound.

Every graded object in the package is stored only up to its truncation
bound N; its Poincare series lives here.  Coefficients are plain ints.
"""

from __future__ import annotations


class TruncationError(Exception):
    """An operation needed data above the truncation bound."""


class TruncatedSeries:
    def __init__(self, bound: int, coeffs=()):
        if bound < 0:
            raise ValueError("bound must be >= 0")
        self.bound = bound
        c = list(coeffs)[: bound + 1]
        c += [0] * (bound + 1 - len(c))
        self.coeffs = tuple(int(x) for x in c)

    @classmethod
    def zero(cls, bound):
        return cls(bound)

    @classmethod
    def one(cls, bound):
        return cls(bound, (1,))

    @classmethod
    def monomial(cls, bound, degree, coeff=1):
        c = [0] * (bound + 1)
        if 0 <= degree <= bound:
            c[degree] = coeff
        return cls(bound, c)

    def __getitem__(self, d):
        if d < 0:
            return 0
        if d > self.bound:
            raise TruncationError(f"coefficient of t^{d} above bound {self.bound}")
        return self.coeffs[d]

    def _check(self, other):
        if self.bound != other.bound:
            raise ValueError(f"bound mismatch {self.bound} != {other.bound}")

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries(self.bound, (other,))
        self._check(other)
        return TruncatedSeries(self.bound, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries(self.bound, (other,))
        self._check(other)
        return TruncatedSeries(self.bound, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(self.bound, (other,)) - self
        return NotImplemented

    def __neg__(self):
        return TruncatedSeries(self.bound, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(self.bound, [other * a for a in self.coeffs])
        self._check(other)
        out = [0] * (self.bound + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(self.bound + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(self.bound, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and other.bound == self.bound
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.bound, self.coeffs))

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires constant coefficient +-1."""
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValueError(f"series with constant term {c0} is not invertible over Z")
        out = [0] * (self.bound + 1)
        out[0] = c0
        for n in range(1, self.bound + 1):
            s = sum(self.coeffs[k] * out[n - k] for k in range(1, n + 1))
            out[n] = -c0 * s
        return TruncatedSeries(self.bound, out)

    def substitute(self, q: int) -> "TruncatedSeries":
        """t -> t^q; coefficients land on multiples of q, rest are zero."""
        if q < 1:
            raise ValueError(f"substitution power must be >= 1, got {q}")
        out = [0] * (self.bound + 1)
        for k, a in enumerate(self.coeffs):
            if a and k * q <= self.bound:
                out[k * q] = a
        return TruncatedSeries(self.bound, out)

    def truncate(self, bound: int) -> "TruncatedSeries":
        if bound > self.bound:
            raise TruncationError("cannot extend a truncated series")
        return TruncatedSeries(bound, self.coeffs[: bound + 1])

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def __repr__(self):
        terms = []
        for d, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if d == 0:
                terms.append(str(a))
            else:
                head = "" if a == 1 else ("-" if a == -1 else str(a))
                terms.append(f"{head}t^{d}" if d > 1 else f"{head}t")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(t^{self.bound + 1})"


def geometric(bound: int, degree: int) -> TruncatedSeries:
    """1/(1 - t^degree) truncated."""
    return (TruncatedSeries.one(bound) - TruncatedSeries.monomial(bound, degree)).inverse()
