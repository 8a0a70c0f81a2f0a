import pytest

from norainbow import write_instance
from norainbow.hypergraph import COLORABLE, NOT_COLORABLE
from norainbow.instances import (
    InstanceSpec,
    gen_complete,
    gen_planted,
    gen_random,
    planted_comment,
    read_planted_witness,
)
from norainbow.oracle import oracle_decide, oracle_verify_certificate


def test_random_unique_triple():
    for seed in (0, 1, 99):
        assert gen_random(3, 1, 3, seed).edges == ((0, 1, 2),)


def test_random_zero_edges():
    assert gen_random(10, 0, 3, 4).m == 0


def test_random_reproducible():
    assert gen_random(10, 15, 3, 7) == gen_random(10, 15, 3, 7)
    assert gen_random(12, 20, 3, 1) == gen_random(12, 20, 3, 1)


def test_random_counts_and_validity():
    hg = gen_random(9, 20, 4, 3)
    assert hg.m == 20
    assert len(set(hg.edges)) == 20


def test_random_m_too_large():
    with pytest.raises(ValueError, match="exceeds"):
        gen_random(4, 5, 3, 0)


def test_planted_witness_always_verifies():
    for seed in range(25):
        hg, witness = gen_planted(9, 14, 3, seed)
        assert hg.m == 14
        assert oracle_verify_certificate(hg, witness)


def test_planted_reproducible():
    assert gen_planted(8, 12, 3, 7) == gen_planted(8, 12, 3, 7)


def test_planted_is_colorable_per_oracle():
    hg, _ = gen_planted(8, 12, 3, 7)
    assert oracle_decide(hg).decision == COLORABLE


def test_planted_n_equals_r_infeasible():
    with pytest.raises(ValueError, match="infeasible"):
        gen_planted(3, 1, 3, 0)
    # but m=0 degenerates gracefully
    hg, witness = gen_planted(3, 0, 3, 0)
    assert hg.m == 0
    assert sorted(witness) == [1, 2, 3]


def test_planted_rejects_small_n():
    with pytest.raises(ValueError):
        gen_planted(2, 0, 3, 0)


def test_complete_shapes():
    assert gen_complete(4, 3).m == 4
    assert gen_complete(5, 4).m == 5
    assert gen_complete(3, 3).m == 1
    with pytest.raises(ValueError):
        gen_complete(2, 3)


def test_complete_never_colorable():
    for n, r in ((3, 3), (4, 3), (5, 3), (4, 4), (5, 4), (6, 4)):
        assert oracle_decide(gen_complete(n, r)).decision == NOT_COLORABLE


def test_instance_spec_dispatch():
    hg, witness = InstanceSpec("planted", 8, 3, 12, 7).generate()
    assert witness is not None
    hg2, none = InstanceSpec("complete", 5, 3).generate()
    assert none is None and hg2.m == 10
    with pytest.raises(ValueError):
        InstanceSpec("mystery", 5, 3).generate()
    with pytest.raises(ValueError, match="n >= r"):
        InstanceSpec("random", 2, 3).generate()
    assert InstanceSpec("complete", 5, 3).instance_id() == "complete:r=3,n=5"


def test_planted_comment_roundtrip():
    hg, witness = gen_planted(8, 12, 3, 7)
    text = planted_comment(witness) + "\n" + write_instance(hg)
    assert read_planted_witness(text) == witness
    assert read_planted_witness(write_instance(hg)) is None
