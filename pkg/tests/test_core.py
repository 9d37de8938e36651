"""Fields, exact linear algebra, truncated series, graded spaces/maps."""

from __future__ import annotations

import itertools
import random

import pytest

from hopflab.fields import GF, QQ
from hopflab import linalg
from hopflab.graded import GradedSpace, GradedMap, braiding, identity_map, tensor_of_maps
from hopflab.series import TruncatedSeries, TruncationError, geometric


def test_prime_field_arithmetic():
    f = GF(5)
    assert f.add(3, 4) == 2
    assert f.mul(3, 4) == 2
    assert f.inv(2) == 3
    assert f.neg(0) == 0
    with pytest.raises(ValueError):
        GF(6)


def test_rational_field_exact():
    assert QQ.inv(QQ.of(4)) * 4 == 1
    assert QQ.of("1/3") + QQ.of("2/3") == 1


@pytest.mark.parametrize("field", [GF(2), GF(3), GF(5), QQ])
def test_rref_rank_nullity(field):
    rng = random.Random(7)
    for _ in range(25):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        mat = [[field.of(rng.randint(-4, 4)) for _ in range(cols)] for _ in range(rows)]
        r = linalg.rank(field, mat)
        null = linalg.kernel_basis(field, mat)
        assert r + len(null) == cols
        for v in null:
            assert all(field.is_zero(x) for x in linalg.mat_vec(field, mat, v))


@pytest.mark.parametrize("field", [GF(2), GF(7), QQ])
def test_solve_consistency(field):
    rng = random.Random(3)
    for _ in range(20):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        mat = [[field.of(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]
        x = [field.of(rng.randint(-3, 3)) for _ in range(cols)]
        b = linalg.mat_vec(field, mat, x)
        v = linalg.solve(field, mat, b)
        assert v is not None
        assert linalg.mat_vec(field, mat, v) == b


def test_affine_system_lex_min():
    f = GF(2)
    sys_ = linalg.AffineSystem(f)
    # x + y = 1 has solutions (0,1) and (1,0); lex-least in order [x, y] is (0,1)
    sys_.var("x")
    sys_.var("y")
    sys_.add_equation({"x": 1, "y": 1}, 1)
    sol = sys_.solve_lex_min()
    assert sol == {"x": 0, "y": 1}
    sols = list(sys_.solution_space())
    assert len(sols) == 2


def test_affine_system_infeasible():
    f = GF(3)
    s = linalg.AffineSystem(f)
    s.add_equation({"x": 1}, 1)
    s.add_equation({"x": 1}, 2)
    assert s.solve() is None


# --- truncated series ------------------------------------------------------


def test_series_geometric():
    s = geometric(6, 1)
    assert s.coeffs == (1, 1, 1, 1, 1, 1, 1)


def _count_words(bound, letter_degrees):
    """Brute-force oracle: number of words (ordered tuples) of each total
    degree with letters drawn from letter_degrees."""
    counts = [0] * (bound + 1)
    counts[0] = 1

    def rec(total):
        if total > bound:
            return 0
        n = 0
        for d in letter_degrees:
            if total + d <= bound:
                counts[total + d] += 1
                rec(total + d)
        return n

    rec(0)
    return counts


def test_series_word_count_identity():
    # 1/(1 - chi) counts words; letters in degrees 2,4,6,8 (k[y]-bar)
    bound = 8
    chi = TruncatedSeries(bound, [0, 0, 1, 0, 1, 0, 1, 0, 1])
    inv = (TruncatedSeries.one(bound) - chi).inverse()
    oracle = _count_words(bound, [2, 4, 6, 8])
    assert list(inv.coeffs) == oracle
    assert list(inv.coeffs) == [1, 0, 1, 0, 2, 0, 4, 0, 8]


def test_series_inverse_involution():
    s = TruncatedSeries(9, [1, 3, -2, 0, 5, 1, 1, 0, 2, -7])
    assert s.inverse().inverse() == s
    assert (s * s.inverse()).coeffs == (1,) + (0,) * 9


def test_series_inverse_needs_unit():
    with pytest.raises(ValueError):
        TruncatedSeries(4, [2, 1]).inverse()


def test_series_substitute():
    s = TruncatedSeries(4, [0, 1, 1])
    assert s.substitute(1) == s
    assert s.substitute(2).coeffs == (0, 0, 1, 0, 1)
    t = geometric(8, 2) - TruncatedSeries.one(8)  # t^2/(1-t^2)
    assert t.substitute(2).coeffs == (0, 0, 0, 0, 1, 0, 0, 0, 1)
    with pytest.raises(ValueError):
        s.substitute(0)


# --- graded spaces and maps ------------------------------------------------


def _space(field, bound, dims):
    labels = [[f"e{d}_{i}" for i in range(n)] for d, n in enumerate(dims)]
    return GradedSpace(field, bound, labels)


def test_space_basics():
    v = _space(GF(2), 4, [1, 2, 0, 1, 3])
    assert v.dim(1) == 2
    assert v.series().coeffs == (1, 2, 0, 1, 3)
    with pytest.raises(TruncationError):
        v.dim(5)


def test_tensor_identity_on_degree_one():
    # id (x) id on one generator of degree 1 each: identity on the 1-dim
    # degree-2 tensor piece
    f = QQ
    m = _space(f, 3, [0, 1])
    i = identity_map(m)
    t = tensor_of_maps(i, i)
    assert t.matrix(2) == [[f.one]]


def test_braiding_signs():
    m = _space(QQ, 3, [0, 1])
    tau = braiding(m, m)
    # tau(x (x) y) = -(y (x) x) in degree 2 for |x| = |y| = 1
    assert tau.matrix(2) == [[QQ.of(-1)]]
    m2 = _space(GF(2), 3, [0, 1])
    tau2 = braiding(m2, m2)
    assert tau2.matrix(2) == [[1]]


def test_braiding_squares_to_identity():
    rng = random.Random(1)
    for field in (QQ, GF(3)):
        v = _space(field, 5, [0, 2, 1, 2])
        w = _space(field, 5, [0, 1, 2, 0, 1])
        t1 = braiding(v, w)
        t2 = braiding(w, v)
        comp = t2.compose(t1)
        ident = identity_map(v.tensor(w))
        assert comp == ident


def test_tensor_functoriality():
    field = GF(3)
    rng = random.Random(5)
    v = _space(field, 4, [0, 2, 1])
    def rand_endo(space):
        mats = {}
        for d in space.degrees():
            n = space.dim(d)
            mats[d] = [[rng.randrange(3) for _ in range(n)] for _ in range(n)]
        return GradedMap(space, space, "id", mats)
    f1, f2, g1, g2 = (rand_endo(v) for _ in range(4))
    lhs = tensor_of_maps(f1.compose(f2), g1.compose(g2))
    rhs = tensor_of_maps(f1, g1).compose(tensor_of_maps(f2, g2))
    assert lhs == rhs
