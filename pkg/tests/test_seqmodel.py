import itertools

import numpy as np
import pytest

from corrleak import (
    CapacityError,
    DomainError,
    JointPmf,
    SequenceModel,
    ValidationError,
    build_model,
    z_consistency_counts,
)
from corrleak.seqmodel import sequence_summary
from corrleak.info import summarize


def hamming_ball(center, d):
    K = len(center)
    out = {tuple(center)}
    for r in range(1, d + 1):
        for flips in itertools.combinations(range(K), r):
            v = list(center)
            for i in flips:
                v[i] ^= 1
            out.add(tuple(v))
    return out


def test_hamming_k7_support_and_ball():
    model = SequenceModel(kind="hamming", K=7)
    # eight x-neighbours per y, eight z-neighbours per y
    assert model.support_size() == (1 << 7) * 8 * 8 == 8192
    y = (0, 1, 1, 0, 0, 0, 1)
    assert len(hamming_ball(y, 1)) == 8


def test_hamming_k1_all_triples():
    model = SequenceModel(kind="hamming", K=1)
    triples = list(model.iter_support())
    assert len(triples) == 8
    assert {(t.x, t.y, t.z) for t in triples} == {
        ((x,), (y,), (z,)) for x in (0, 1) for y in (0, 1) for z in (0, 1)
    }


def test_hamming_mass_and_order():
    model = SequenceModel(kind="hamming", K=4)
    triples = list(model.iter_support())
    assert sum(t.prob for t in triples) == pytest.approx(1.0, abs=1e-12)
    keys = [(t.y, t.x, t.z) for t in triples]
    assert keys == sorted(keys)
    for t in triples:
        assert sum(a != b for a, b in zip(t.x, t.y)) <= 1
        assert sum(a != b for a, b in zip(t.y, t.z)) <= 1


def test_iid_uniform_bits_k2():
    base = JointPmf(np.full((2, 2, 2), 0.125))
    model = SequenceModel(kind="iid", K=2, base=base)
    triples = list(model.iter_support())
    assert len(triples) == 64
    for t in triples:
        assert t.prob == pytest.approx(1 / 64, abs=1e-15)


def test_iid_k1_is_base_pmf():
    rng = np.random.default_rng(0)
    flat = rng.dirichlet(np.ones(8))
    base = JointPmf(flat.reshape(2, 2, 2))
    model = SequenceModel(kind="iid", K=1, base=base)
    for t in model.iter_support():
        assert t.prob == pytest.approx(base.probs[t.x[0], t.y[0], t.z[0]], abs=1e-15)


def test_iid_per_symbol_entropy_matches_base():
    rng = np.random.default_rng(1)
    flat = rng.dirichlet(np.ones(8))
    base = JointPmf(flat.reshape(2, 2, 2))
    model = SequenceModel(kind="iid", K=2, base=base)
    summary = sequence_summary(model)
    base_summary = summarize(base)
    assert summary.h_x == pytest.approx(base_summary.h_x, abs=1e-9)
    assert summary.h_xy == pytest.approx(base_summary.h_xy, abs=1e-9)
    assert summary.i_xyz == pytest.approx(base_summary.i_xyz, abs=1e-9)


def test_hamming_k7_per_symbol_marginals_uniform():
    model = SequenceModel(kind="hamming", K=7)
    counts = {v: np.zeros((7, 2)) for v in "xyz"}
    for t in model.iter_support():
        for v in "xyz":
            vec = getattr(t, v)
            for i, b in enumerate(vec):
                counts[v][i, b] += t.prob
    for v in "xyz":
        assert np.allclose(counts[v], 0.5, atol=1e-12)


def test_z_consistency_counts_examples():
    assert z_consistency_counts(7, 7) == (1, 1, 7)
    assert z_consistency_counts(7, 1) == (64, 7, 64)
    assert z_consistency_counts(7, 3) == (16, 5, 48)


def test_z_consistency_total_identity():
    for K in (3, 5, 7):
        for mu in range(1, K + 1):
            rep, mult, single = z_consistency_counts(K, mu)
            assert rep * mult + single == (1 << (K - mu)) * (K + 1)


def brute_force_counts(K, mu):
    """Count candidate sequences within distance 1 of some completion of an
    all-zero observed prefix, with multiplicities over completions."""
    seen = {}
    for suffix in itertools.product((0, 1), repeat=K - mu):
        completion = (0,) * mu + suffix
        for cand in hamming_ball(completion, 1):
            seen[cand] = seen.get(cand, 0) + 1
    mults = {}
    for m in seen.values():
        mults[m] = mults.get(m, 0) + 1
    return seen, mults


@pytest.mark.parametrize("K", [3, 5, 7])
def test_z_consistency_counts_against_enumeration(K):
    for mu in range(1, K + 1):
        rep, mult, single = z_consistency_counts(K, mu)
        seen, mults = brute_force_counts(K, mu)
        assert sum(seen.values()) == (1 << (K - mu)) * (K + 1)
        if mult == 1:
            # mu == K: repeated and singleton classes coincide
            assert mults == {1: rep + single}
        else:
            assert mults == {mult: rep, 1: single}


def test_z_consistency_domain_errors():
    with pytest.raises(DomainError):
        z_consistency_counts(7, 0)
    with pytest.raises(DomainError):
        z_consistency_counts(7, 8)


def test_capacity_guard():
    with pytest.raises(CapacityError):
        SequenceModel(kind="hamming", K=9, d_xy_max=9, d_yz_max=9)


def test_build_model_json():
    m = build_model({"kind": "hamming", "K": 7, "d_xy": 1, "d_yz": 1})
    assert m.kind == "hamming" and m.K == 7
    m2 = build_model(
        {"kind": "iid", "K": 2, "pmf": {"alphabets": [2, 2, 2], "probs": [0.125] * 8}}
    )
    assert m2.kind == "iid" and m2.support_size() == 64
    with pytest.raises(ValidationError):
        build_model({"kind": "markov", "K": 3})
    with pytest.raises(ValidationError):
        build_model({"kind": "iid", "K": 3})


def test_support_arrays_match_iteration():
    model = SequenceModel(kind="hamming", K=3)
    X, Y, Z, probs = model.support_arrays()
    triples = list(model.iter_support())
    assert X.shape == (len(triples), 3)
    for row, t in zip(range(len(triples)), triples):
        assert tuple(X[row]) == t.x
        assert tuple(Y[row]) == t.y
        assert tuple(Z[row]) == t.z
    assert probs.sum() == pytest.approx(1.0, abs=1e-12)
