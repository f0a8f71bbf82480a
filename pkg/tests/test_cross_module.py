"""Cross-module behaviour: alternate models, role variants, API wrappers."""

import numpy as np
import pytest

from corrleak import (
    JointPmf,
    SequenceModel,
    WiretapAnalyzer,
    WiretapPattern,
    bound_rhs,
    decomposition_identity_check,
    enumerate_support,
    exact_leakage,
    minmax_oracle,
    mutual_information,
)
from corrleak.gf2 import Gf2Matrix
from corrleak.swcodec import PartitionScheme, reference_scheme


def test_composite_selector_mutual_information():
    probs = np.zeros((2, 2, 2))
    for x in (0, 1):
        for y in (0, 1):
            probs[x, y, x ^ y] = 0.25
    pmf = JointPmf(probs)
    # z is a function of the pair, so I((X,Y); Z) = H(Z) = 1
    assert mutual_information(pmf, "xy", "z") == pytest.approx(1.0, abs=1e-12)


def test_enumerate_support_streams_in_order():
    model = SequenceModel(kind="hamming", K=3)
    seen = [(t.y, t.x, t.z) for t in enumerate_support(model)]
    assert seen == sorted(seen)
    assert len(seen) == model.support_size()


def test_submatrix_extraction():
    g = Gf2Matrix.from_rows(["1000101", "0100110", "0010111", "0001011"])
    sub = g.submatrix([0, 1], [4, 5, 6])
    assert sub.row_strings() == ["101", "110"]


@pytest.fixture(scope="module")
def iid_uniform_analyzer(scheme):
    base = JointPmf(np.full((2, 2, 2), 0.125))
    model = SequenceModel(kind="iid", K=7, base=base)
    return WiretapAnalyzer(scheme, model)


def test_iid_model_identity_and_bound(iid_uniform_analyzer):
    an = iid_uniform_analyzer
    assert an.h_xy_total == pytest.approx(14.0, abs=1e-9)
    for p in (
        WiretapPattern(frozenset({0, 3}), frozenset({1, 4}), 2),
        WiretapPattern(frozenset(range(5)), frozenset(range(5)), 7),
    ):
        checks = an.pattern_checks(p)
        assert checks.residual_y < 1e-9 and checks.residual_x < 1e-9
        # independent uniform sources also satisfy the portion bound
        assert checks.bound_y.holds and checks.bound_x.holds


def test_iid_independent_sources_leak_nothing_crosswise(iid_uniform_analyzer):
    # with fully independent sources, T_X says nothing about Y
    val = iid_uniform_analyzer.exact_leakage("y", WiretapPattern(frozenset(range(5))))
    assert val.total_bits == pytest.approx(0.0, abs=1e-9)


def all_private_scheme() -> PartitionScheme:
    base = reference_scheme()
    return PartitionScheme(
        generator=base.generator,
        x_segments=base.x_segments,
        y_segments=base.y_segments,
        segment_roles={"v1": "private", "u2": "private", "q1": "private", "q2": "private"},
    )


def test_unmasked_parity_leaks_in_the_clear(hamming7):
    an = WiretapAnalyzer(all_private_scheme(), hamming7)
    # a single parity bit is a uniform function of the sources: 1 bit leaked
    val = an.exact_leakage("xy", WiretapPattern(frozenset({2}), frozenset()))
    assert val.total_bits == pytest.approx(1.0, abs=1e-9)
    # with no common-designated segments the portion bound loses its slack
    assert an.h_common == pytest.approx(0.0, abs=1e-12)


def test_masked_parity_leaks_nothing_alone(scheme, analyzer):
    val = analyzer.exact_leakage("xy", WiretapPattern(frozenset({2}), frozenset()))
    assert val.total_bits == pytest.approx(0.0, abs=1e-12)
    # but the aligned pair reveals exactly one bit
    pair = analyzer.exact_leakage("xy", WiretapPattern(frozenset({2}), frozenset({2})))
    assert pair.total_bits == pytest.approx(1.0, abs=1e-9)
    # and misaligned parity bits reveal nothing
    cross = analyzer.exact_leakage("xy", WiretapPattern(frozenset({2}), frozenset({3})))
    assert cross.total_bits == pytest.approx(0.0, abs=1e-12)


def test_module_level_wrappers(scheme, hamming7):
    p = WiretapPattern(frozenset({0}), frozenset({1}), 1)
    val = exact_leakage("y", p, scheme, hamming7)
    assert 0.0 <= val.total_bits <= 7.0
    assert decomposition_identity_check(p, scheme, hamming7) < 1e-9
    rep = bound_rhs("x", p, scheme, hamming7)
    assert rep.holds
    lo, hi = minmax_oracle(scheme, 1, 1, hamming7)
    assert 0.0 <= lo <= hi


def test_analyzer_rejects_mismatched_model(scheme):
    with pytest.raises(Exception):
        WiretapAnalyzer(scheme, SequenceModel(kind="hamming", K=5))
