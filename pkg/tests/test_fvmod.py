"""Chain classification of F- and V-modules."""

from __future__ import annotations

import random

import pytest

from hopflab.fields import GF
from hopflab.fvmod import (
    AtLeast,
    Decomposition,
    FModule,
    Summand,
    VModule,
    classify,
    classify_by_search,
    direct_sum,
    dualize,
    iso_test_fv,
    phi,
    random_fmodule,
    rebuild,
    standard_summand,
    tensor_fv,
)
from hopflab.graded import GradedSpace
from hopflab.series import TruncationError


def dec(p, bound, *pairs):
    return Decomposition(p, bound, [Summand(n, j) for n, j in pairs])


def test_standard_summand_chain_p2():
    m = standard_summand(2, 1, 2, 12)
    assert [m.space.dim(d) for d in (2, 4, 8)] == [1, 1, 0]
    assert m.f_matrix(2) == [[1]]      # F(x0) = x1
    assert m.f_matrix(4) == []         # F(x1) = 0 (target degree 8 is empty)
    assert classify(m) == dec(2, 12, (2, 1))


def test_standard_summand_odd_p_singleton():
    m = standard_summand(3, 0, 3, 12)
    assert m.space.dim(3) == 1
    assert m.f_matrix(3) is None  # no Frobenius out of odd degrees at odd p
    assert classify(m) == dec(3, 12, (3, 0))


def test_truncated_infinite_chain_reports_at_least():
    m = standard_summand(1, None, 2, 8)
    assert [m.space.dim(d) for d in (1, 2, 4, 8)] == [1, 1, 1, 1]
    got = classify(m)
    assert got == Decomposition(2, 8, [Summand(1, AtLeast(3))])
    # a finite chain of the same observable length is indistinguishable
    m2 = standard_summand(1, 3, 2, 8)
    assert iso_test_fv(m, m2)


def test_phi_regrades():
    m = standard_summand(1, 1, 2, 12, kind="V")
    assert classify(phi(m)) == dec(2, 12, (2, 1))
    assert classify(phi(phi(standard_summand(1, 0, 2, 12, kind="V")))) == dec(2, 12, (4, 0))
    with pytest.raises(TruncationError):
        phi(standard_summand(8, 0, 2, 12))


def test_phi_of_zero_module():
    f = GF(2)
    zero = FModule(f, GradedSpace(f, 8, [[]]), {})
    assert classify(phi(zero)).counter == {}


def test_dualize_single_chain():
    n21 = standard_summand(2, 1, 2, 12)
    d = dualize(n21)
    assert isinstance(d, VModule)
    assert classify(d) == dec(2, 12, (2, 1))
    dd = dualize(d)
    assert isinstance(dd, FModule)
    assert dd.map == n21.map


def test_dual_of_truncated_polynomial_augmentation_ideal():
    # F_2[y]/(y^3): ybar basis y (deg 2), y^2 (deg 4); F(y) = y^2, F(y^2) = 0.
    f = GF(2)
    space = GradedSpace(f, 12, [[], [], ["y"], [], ["y2"]])
    m = FModule(f, space, {2: [[1]], 4: []})
    assert classify(m) == dec(2, 12, (2, 1))
    d = dualize(m)
    # V(gamma_2) = gamma_1 on the dual basis, i.e. M(2,1)
    assert d.v_matrix(4) == [[1]]
    assert classify(d) == dec(2, 12, (2, 1))


def test_tensor_square_of_n21():
    # classify(N(2,1) (x) N(2,1)) = {N(4,1), 2*N(6,0)}; bound 16 so the edge
    # map out of degree 8 (five positions 1,2,4,8,16 in the lane) is stored
    n21 = standard_summand(2, 1, 2, 16)
    t = tensor_fv(n21, n21)
    assert classify(t) == dec(2, 16, (4, 1), (6, 0), (6, 0))


def test_tensor_cube_of_n21():
    n21 = standard_summand(2, 1, 2, 24)
    t = tensor_fv(tensor_fv(n21, n21), n21)
    got = classify(t)
    assert got.counter[Summand(6, 1)] == 1
    trivial_dim = sum(
        mult * s.series(2, 24)[s.n]
        for s, mult in got.counter.items()
        if s != Summand(6, 1)
    )
    # paper shape: N(6,1) plus a trivial module, total dimension 8 - 2 = 6
    assert all(s.j == 0 for s in got.counter if s != Summand(6, 1))
    assert trivial_dim == 6


def test_tensor_with_zero_module():
    f = GF(2)
    zero = FModule(f, GradedSpace(f, 12, [[]]), {})
    m = standard_summand(2, 1, 2, 12)
    assert classify(tensor_fv(m, zero)).counter == {}


def test_classify_direct_sum_of_standards():
    m = direct_sum(standard_summand(2, 1, 2, 16), standard_summand(6, 0, 2, 16))
    assert classify(m) == dec(2, 16, (2, 1), (6, 0))


def test_classify_rank_one_lane():
    # one lane, F-matrix [[1,1],[0,0]] between two 2-dim pieces, zero after:
    # one chain of length 2 and one singleton
    f = GF(2)
    space = GradedSpace(f, 12, [[], ["a", "b"], ["c", "d"]])
    m = FModule(f, space, {1: [[1, 1], [0, 0]], 2: [], 4: []})
    assert classify(m) == dec(2, 12, (1, 1), (1, 0), (2, 0))


def test_iso_test_distinguishes_equal_poincare():
    a = direct_sum(standard_summand(2, 1, 2, 16), standard_summand(2, 1, 2, 16))
    b = direct_sum(
        standard_summand(2, 0, 2, 16),
        standard_summand(2, 1, 2, 16),
        standard_summand(4, 0, 2, 16),
    )
    assert a.series() == b.series()
    assert not iso_test_fv(a, b)
    assert iso_test_fv(a, a)


def test_cautionary_q_modules_differ():
    # QH1 = M(1,0) + M(2,1) vs QH2 = M(1,0) + M(2,0) + M(4,0)
    q1 = direct_sum(standard_summand(1, 0, 2, 12, "V"), standard_summand(2, 1, 2, 12, "V"))
    q2 = direct_sum(
        standard_summand(1, 0, 2, 12, "V"),
        standard_summand(2, 0, 2, 12, "V"),
        standard_summand(4, 0, 2, 12, "V"),
    )
    assert not iso_test_fv(q1, q2)


def test_rebuild_idempotence_and_poincare_conservation():
    rng = random.Random(11)
    for _ in range(30):
        m = random_fmodule(rng, 2, 12, max_dim=6)
        d = classify(m)
        assert d.series() == m.series()
        assert iso_test_fv(m, rebuild(d))


def test_classify_respects_duality():
    rng = random.Random(13)
    for _ in range(20):
        m = random_fmodule(rng, 2, 10, max_dim=6)
        assert classify(m) == classify(dualize(m))


@pytest.mark.parametrize("p", [2, 3])
def test_multiplicity_formula_against_bruteforce(p):
    # spec-mandated validation of the inclusion-exclusion extraction formula
    rng = random.Random(17 + p)
    for _ in range(40):
        m = random_fmodule(rng, p, 12, max_dim=8)
        assert classify(m) == classify_by_search(m)


def test_phi_shifts_classification():
    m = direct_sum(standard_summand(1, 1, 2, 12), standard_summand(3, 0, 2, 12))
    shifted = phi(m)
    assert classify(shifted) == dec(2, 12, (2, 1), (6, 0))
    # an occupied degree that would leave the bound is an error, not a silent drop
    with pytest.raises(TruncationError):
        phi(standard_summand(3, None, 2, 12))


def test_projectivity_metadata():
    from hopflab.fvmod import is_projective, is_injective

    assert is_projective(Summand(3, AtLeast(1)), 2, "F")   # N(n, big) at p=2
    assert is_injective(Summand(3, 2), 2, "F")             # odd bottom degree
    assert not is_injective(Summand(2, 1), 2, "F")
    # mirrored for V-modules
    assert is_projective(Summand(3, 2), 2, "V")
    assert is_injective(Summand(3, AtLeast(1)), 2, "V")
    # odd p
    assert is_projective(Summand(3, 0), 3, "F")
    assert is_projective(Summand(4, AtLeast(0)), 3, "F")
    assert is_injective(Summand(4, 1), 3, "F")
    assert not is_injective(Summand(12, 1), 3, "F")  # 12 = 2m with 3 | m
