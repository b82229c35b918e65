import numpy as np
import pytest

import sumspaces as ss
from sumspaces.errors import UnknownFamily


def test_paper_families_members_and_cache():
    BS = ss.paper_families("one_over_k", {"n": 4})
    assert BS.n_members == 4
    first = BS.block(1)
    assert BS.block(1) is first  # cached
    assert first.ambient_dim == 4
    assert ss.paper_families("halmos_accumulating").n_members == 2
    assert ss.paper_families("compact_triple").n_members == 3
    with pytest.raises(UnknownFamily):
        ss.paper_families("no_such_family")


def test_certify_validates_subset():
    BS = ss.paper_families("one_over_k", {"n": 3})
    with pytest.raises(ValueError):
        ss.certify(BS, [], 10)
    with pytest.raises(ValueError):
        ss.certify(BS, [0, 1], 10)
    with pytest.raises(ValueError):
        ss.certify(BS, [4], 10)


def test_one_over_k_gap_decay_rate():
    BS = ss.paper_families("one_over_k", {"n": 3})
    v = ss.certify(BS, [1, 2, 3], 100)
    assert v.status == "gap_vanishing"
    # the block-k full-sum gap decays quadratically
    assert -2.2 <= v.trend_slope <= -1.8
    assert v.horizon == 100 and len(v.gaps) == 100


def test_halmos_accumulating_pair_vanishes():
    BS = ss.paper_families("halmos_accumulating", {"rate": 1.0})
    v = ss.certify(BS, [1, 2], 80)
    assert v.status == "gap_vanishing"
    single = ss.certify(BS, [1], 80)
    assert single.status == "closed_on_horizon"
    assert single.inf_gap == pytest.approx(1.0)


def test_compact_triple_subset_verdicts():
    BS = ss.paper_families("compact_triple")
    assert ss.certify(BS, [2, 3], 60).status == "gap_vanishing"
    assert ss.certify(BS, [1, 2], 60).status == "closed_on_horizon"


def test_custom_generator_block_system():
    gen = lambda k: ss.SubspaceSystem(2, [ss.full_space(2)])
    BS = ss.BlockSystem(gen, 1, "custom")
    v = ss.certify(BS, [1], 10)
    assert v.status == "closed_on_horizon"
    assert v.inf_gap == pytest.approx(1.0)


def test_sum_as_two_preserves_block_sums():
    BS = ss.paper_families("halmos_accumulating", {})
    m1, m2, rep = ss.sum_as_two(BS, 20)
    assert rep.extras["rank_equality_all_blocks"]
    assert len(m1) == len(m2) == 20
    for k in range(20):
        target = ss.sum_span(BS.block(k + 1).members)
        got = ss.sum_span([m1[k], m2[k]])
        assert np.linalg.norm(got.projector() - target.projector(), 2) <= 1e-8
