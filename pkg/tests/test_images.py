import numpy as np
import pytest

import sumspaces as ss
from sumspaces.errors import (BudgetExceeded, DiagonalNotPositive,
                              DimensionMismatch, NormTooLarge, NotInvertible,
                              RangeConditionViolated, RangeNotIncluded)

from conftest import random_system, simplex_lines


def test_operator_family_round_trip(rng):
    M = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    F = ss.OperatorFamily(3, [M], ["general"])
    back = ss.OperatorFamily.from_json(F.to_json())
    assert np.allclose(back.members[0], M)
    with pytest.raises(DimensionMismatch):
        ss.OperatorFamily(2, [np.eye(3)])


def test_douglas_factor_invertible_case(rng):
    B = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    A = B @ (rng.normal(size=(4, 4)))
    C, lam = ss.douglas_factor(A, B)
    assert np.linalg.norm(A - B @ C, 2) <= 1e-9
    assert lam > 0


def test_douglas_factor_rejects_non_inclusion():
    with pytest.raises(RangeNotIncluded):
        ss.douglas_factor(np.eye(2), np.diag([1.0, 0.0]))


def test_sum_of_images_matches_column_space(rng):
    members = [rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
               for _ in range(2)]
    F = ss.OperatorFamily(4, members)
    image, rep = ss.sum_of_images(F)
    assert rep.extras["range_equality_residual"] <= 1e-8
    assert image.dim == 4


def test_sum_of_images_nonnegative_gap():
    P = np.diag([1.0, 0.0]).astype(complex)
    F = ss.OperatorFamily(2, [P, P], ["nonnegative", "nonnegative"])
    image, rep = ss.sum_of_images(F)
    assert image.dim == 1
    assert rep.margin("nonnegative_sum_gap") == pytest.approx(2.0)
    assert rep.extras["sum_image_dim"] == 1


def test_product_bound_nonnegative_slack(rng):
    S = random_system(rng, 4, 3)
    F = ss.OperatorFamily(4, S.projectors(), ["nonnegative"] * 3)
    for _ in range(10):
        x = rng.normal(size=4) + 1j * rng.normal(size=4)
        assert ss.product_bound(F, x) >= -1e-10


def test_product_bound_rejects_large_norm():
    F = ss.OperatorFamily(2, [2.5 * np.eye(2)])
    with pytest.raises(NormTooLarge):
        ss.product_bound(F, np.ones(2))


def test_p_radius_simplex_and_budget():
    S = simplex_lines(3)
    F = ss.OperatorFamily(2, S.projectors(), ["nonnegative"] * 3)
    seq, verdict = ss.p_radius(F, depth=4)
    assert verdict == "certified"
    assert len(seq) == 4
    with pytest.raises(BudgetExceeded):
        ss.p_radius(F, depth=4, budget=10)
    with pytest.raises(ValueError):
        ss.p_radius(F, p=0.5)


def test_p_radius_deficient_single_projector():
    F = ss.OperatorFamily(2, [np.diag([1.0, 0.0]).astype(complex)])
    seq, verdict = ss.p_radius(F, depth=3)
    assert verdict == "deficient"


def test_membership_identity_requires_invertible_sum():
    F = ss.OperatorFamily(2, [np.diag([1.0, 0.0]).astype(complex)])
    with pytest.raises(NotInvertible):
        ss.m_membership_identity(F)
    G = ss.OperatorFamily(2, [np.eye(2, dtype=complex)])
    assert ss.m_membership_identity(G) <= 1e-10


def test_build_beta_classifications():
    pd = np.eye(3, dtype=complex)
    assert ss.build_beta(pd).classification == "positive_definite"
    beta = ss.build_beta(ss.cycle_alpha(3))
    assert beta.classification == "B1B2"
    assert beta.graph_connected
    v = beta.kernel_vector
    assert np.allclose(v / np.linalg.norm(v), np.ones(3) / np.sqrt(3), atol=1e-10)
    neither = np.eye(2, dtype=complex)
    neither[0, 1] = neither[1, 0] = -3.0
    assert ss.build_beta(neither).classification == "neither"
    with pytest.raises(DiagonalNotPositive):
        ss.build_beta(np.diag([1.0, -1.0]).astype(complex))


def test_xi_graph_alpha_row_balance():
    alpha = ss.xi_graph_alpha(3, {(1, 2): 1.0, (2, 3): 2.0})
    beta = ss.build_beta(alpha)
    # diagonal balances half the incident off-diagonal mass
    assert np.allclose(np.real(np.diag(alpha)), [0.5, 1.5, 1.0])
    assert beta.classification in ("B1B2", "borderline")


def test_quadratic_projector_criterion_shapes(rng):
    S = random_system(rng, 4, 3)
    with pytest.raises(DimensionMismatch):
        ss.quadratic_projector_criterion(S, np.eye(2))
    beta, rep = ss.quadratic_projector_criterion(S, ss.cycle_alpha(3))
    assert "range_equals_sum" in rep.extras
    assert rep.extras["beta_classification"] == "B1B2"


def test_ibap_check_orthogonal_decomposition():
    e = np.eye(2, dtype=complex)
    S = ss.SubspaceSystem(2, [ss.from_spanning(e[:, [0]]),
                              ss.from_spanning(e[:, [1]])])
    F = ss.OperatorFamily(2, [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    rep = ss.ibap_check(S, F)
    assert rep.margin("joint_epsilon") == pytest.approx(1.0)
    assert rep.margin("range_independence_epsilon") == pytest.approx(1.0)
    assert rep.all_satisfied()


def test_ibap_check_rejects_range_violation():
    e = np.eye(2, dtype=complex)
    S = ss.SubspaceSystem(2, [ss.from_spanning(e[:, [0]]),
                              ss.from_spanning(e[:, [1]])])
    F = ss.OperatorFamily(2, [np.ones((2, 2)), np.diag([0.0, 1.0])])
    with pytest.raises(RangeConditionViolated):
        ss.ibap_check(S, F)
