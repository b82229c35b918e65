from fractions import Fraction

import numpy as np
import pytest

import sumspaces as ss
from sumspaces.errors import (GapTooSmall, IndexOutOfRange, NotIndependent,
                              SumNotFull)

from conftest import random_subspace, random_system, simplex_lines


def _lines(*vecs):
    d = len(vecs[0])
    return ss.SubspaceSystem(d, [ss.from_spanning(np.array(v, dtype=complex)
                                                  .reshape(-1, 1)) for v in vecs])


def test_independence_certificate_extremes():
    S = _lines([1, 0], [0, 1])
    cert = ss.independence_certificate(S)
    assert cert.independent and cert.epsilon == pytest.approx(1.0)
    dep = _lines([1, 0], [0, 1], [1, 1])
    cert = ss.independence_certificate(dep)
    assert not cert.independent and cert.epsilon == 0.0


def test_oblique_projections_properties(rng):
    e = np.eye(3)
    S = ss.SubspaceSystem(3, [ss.from_spanning(e[:, :2]),
                              ss.from_spanning(np.array([[1.0], [1.0], [1.0]]))])
    Q = ss.oblique_projections(S)
    assert np.linalg.norm(sum(Q) - np.eye(3), 2) <= 1e-10
    for Qk in Q:
        assert np.linalg.norm(Qk @ Qk - Qk, 2) <= 1e-10
    assert np.linalg.norm(Q[0] @ Q[1], 2) <= 1e-10
    A = ss.combine_with_spectrum(Q, [2.0, 5.0])
    w = np.sort(np.linalg.eigvals(A).real)
    assert np.allclose(w, [2.0, 2.0, 5.0], atol=1e-8)


def test_oblique_projections_preconditions(rng):
    dep = _lines([1, 0], [1, 0])
    with pytest.raises(NotIndependent):
        ss.oblique_projections(dep)
    partial = ss.SubspaceSystem(3, [random_subspace(rng, 3, 1)])
    with pytest.raises(SumNotFull):
        ss.oblique_projections(partial)


def test_rps_margin_examples():
    S = _lines([1, 0], [0, 1], [1, 1])
    with pytest.raises(IndexOutOfRange):
        ss.rps_margin(S, 0)
    rep = ss.rps_margin(S, 2)
    # every kernel vector has equal head and tail mass here
    assert rep.margin("rps_epsilon") == pytest.approx(1.0, abs=1e-10)
    indep = _lines([1, 0], [0, 1])
    rep = ss.rps_margin(indep, 1)
    assert rep.entry("rps_epsilon").note == "vacuous"


def test_reduce_pair_validates_eps(rng):
    H1 = random_subspace(rng, 3, 1)
    H2 = random_subspace(rng, 3, 1)
    with pytest.raises(ValueError):
        ss.reduce_pair(H1, H2, 0.0)
    with pytest.raises(ValueError):
        ss.reduce_pair(H1, H2, 1.0)


def test_reduce_pair_drops_high_overlap_directions():
    # nearly parallel lines: M2 loses the direction with compression > delta
    H1 = ss.from_spanning(np.array([[1.0], [0.0]]))
    H2 = ss.from_spanning(np.array([[1.0], [0.05]]))
    M2, rep = ss.reduce_pair(H1, H2, 0.5)
    assert M2.dim == 0
    assert rep.extras["delta"] == pytest.approx(0.75)


def test_c_constant_chain():
    assert ss.c_constant(2) == Fraction(1, 2)
    assert ss.c_constant(3) == Fraction(1, 768)
    assert ss.c_constant(4) == Fraction(1, 768) / (16 * 24 ** 2)


def test_reduce_system_requires_gap():
    # all-zero system: the sum has no spectrum above the cutoff
    S = ss.SubspaceSystem(2, [ss.zero_subspace(2), ss.zero_subspace(2)])
    with pytest.raises(GapTooSmall):
        ss.reduce_system(S)


def test_reduce_system_certificate_holds(rng):
    S = random_system(rng, 5, 3, rmax=2)
    gap = ss.sum_gap(S).margin("sum_gap")
    if not np.isfinite(gap) or gap <= 1e-8:
        pytest.skip("random draw produced no usable gap")
    res = ss.reduce_system(S)
    assert res.reduced.members[0] is S.members[0]
    assert len(res.weights) == 3
    assert res.certificate_slack >= -1e-8
    assert res.c_n == Fraction(1, 768)
    assert res.rhs == pytest.approx(float(res.c_n) * res.epsilon ** 2)


def test_reduce_preserving_sum_pair_case(rng):
    H1 = random_subspace(rng, 4, 2)
    extra = random_subspace(rng, 4, 1)
    H2 = ss.sum_span([ss.from_spanning(H1.basis[:, :1]), extra])
    S = ss.SubspaceSystem(4, [H1, H2])
    res = ss.reduce_preserving_sum(S)
    assert res.sum_preserved
    cert = ss.independence_certificate(res.reduced)
    assert cert.independent
    # the pair shrink is exactly H2 minus the intersection with H1
    expected = ss.subtract(H2, ss.intersect(H1, H2))
    got = res.reduced.members[1]
    assert got.dim == expected.dim


def test_reduce_preserving_sum_simplex(rng):
    S = simplex_lines(3)
    res = ss.reduce_preserving_sum(S)
    assert res.sum_preserved
    assert ss.independence_certificate(res.reduced).independent
    assert sum(m.dim for m in res.reduced.members) == 2
