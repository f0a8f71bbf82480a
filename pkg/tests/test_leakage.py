import math

import numpy as np
import pytest

from corrleak import (
    DomainError,
    UsageError,
    WiretapPattern,
    extremal_max_pattern,
    grid_curve_rows,
    minmax_curves,
    z_mu_leakage,
    z_trace_rows,
)
from corrleak.leakage import sample_patterns
from corrleak.swcodec import enumeration_equivocation, z_prefix_observable


def pattern(tx=(), ty=(), mu=0):
    return WiretapPattern(frozenset(tx), frozenset(ty), mu)


def test_pattern_validation(scheme, analyzer):
    with pytest.raises(UsageError):
        analyzer.exact_leakage("y", pattern(tx=[5]))
    with pytest.raises(UsageError):
        analyzer.exact_leakage("y", pattern(mu=8))
    with pytest.raises(UsageError):
        analyzer.exact_leakage("nope", pattern())


def test_empty_pattern_leaks_nothing(analyzer):
    val = analyzer.exact_leakage("y", pattern())
    assert val.total_bits == pytest.approx(0.0, abs=1e-12)
    assert val.per_symbol_bits == pytest.approx(0.0, abs=1e-12)


def test_full_pattern_definitional(analyzer):
    full = pattern(tx=range(5), ty=range(5), mu=7)
    val = analyzer.exact_leakage("y", full)
    equiv = analyzer.equivocation("y", full)
    assert val.total_bits == pytest.approx(analyzer.h_y_total - equiv, abs=1e-9)
    assert val.per_symbol_bits == pytest.approx(val.total_bits / 7, abs=1e-12)


def test_z_only_joint_leakage_is_four_bits(analyzer):
    # 10 - (log2 8 + 3): full Z leaves 3 bits of y-ball freedom plus H(X|Y)
    val = analyzer.exact_leakage("xy", pattern(mu=7))
    assert val.total_bits == pytest.approx(4.0, abs=1e-9)


def test_exact_leakage_matches_enumeration_oracle(scheme, hamming7, analyzer):
    # cross-check the fast engine against the plain dictionary oracle
    val = analyzer.exact_leakage("y", pattern(mu=3))
    h_y = enumeration_equivocation([], "y", hamming7)
    h_y_given = enumeration_equivocation([z_prefix_observable(3)], "y", hamming7)
    assert val.total_bits == pytest.approx(h_y - h_y_given, abs=1e-9)


def test_arbitrary_z_positions(analyzer):
    # leaking positions {4, 6} instead of a prefix
    p = WiretapPattern(frozenset(), frozenset(), 0, z_positions=(4, 6))
    val = analyzer.exact_leakage("xy", p)
    ref = analyzer.exact_leakage("xy", pattern(mu=2))
    # symbol positions are exchangeable, any two positions leak like a prefix
    assert val.total_bits == pytest.approx(ref.total_bits, abs=1e-9)
    with pytest.raises(UsageError):
        analyzer.bound_report("y", p)
    with pytest.raises(UsageError):
        analyzer.pattern_checks(p)


def test_decomposition_residual_small_everywhere(analyzer):
    for p in (
        pattern(),
        pattern(tx=[0, 2], ty=[1, 4], mu=0),
        pattern(tx=range(5), ty=range(5), mu=7),
        pattern(tx=[3], ty=[], mu=5),
    ):
        assert analyzer.decomposition_residual(p, "y") < 1e-9
        assert analyzer.decomposition_residual(p, "x") < 1e-9


def test_mu_zero_kills_z_terms(analyzer):
    checks = analyzer.pattern_checks(pattern(tx=[0, 1], ty=[0, 1], mu=0))
    for name, value in checks.bound_y.term_breakdown.items():
        if "z" in name and name.startswith("i("):
            assert value == pytest.approx(0.0, abs=1e-12)


def test_bound_empty_pattern(analyzer):
    rep = analyzer.bound_report("y", pattern())
    assert rep.lhs_bits == pytest.approx(0.0, abs=1e-12)
    assert rep.lhs_bits <= rep.rhs_bits + rep.delta


def test_bound_full_wiretap_both_targets(analyzer):
    full = pattern(tx=range(5), ty=range(5), mu=7)
    for target in ("x", "y"):
        rep = analyzer.bound_report(target, full)
        assert rep.holds
        # the desk-scale margin is exactly (2 + 6 - 7)/7 = 1/7
        assert rep.rhs_bits - rep.lhs_bits == pytest.approx(1 / 7, abs=1e-9)


def test_bound_random_patterns_hold(scheme, analyzer):
    for p in sample_patterns(scheme, 25, seed=7, mu_values=(0, 3, 7)):
        checks = analyzer.pattern_checks(p)
        assert checks.bound_y.holds and checks.bound_x.holds


def extremal_min_pattern(scheme, mu_tx, mu_ty, mu):
    """Parity-first picks with minimal column overlap between the sides."""
    l_ix, l_iy, l_p = scheme.x_info_len, scheme.y_info_len, scheme.parity_len
    px, py = min(mu_tx, l_p), min(mu_ty, l_p)
    tx = {l_ix + c for c in range(px)} | set(range(mu_tx - px))
    ty = {l_iy + c for c in range(l_p - py, l_p)} | set(range(mu_ty - py))
    return WiretapPattern(frozenset(tx), frozenset(ty), mu)


def test_bound_holds_on_full_extremal_sweep(scheme, analyzer):
    # every size pair, extremal max and min subsets, every z prefix length
    for mu_tx in range(6):
        for mu_ty in range(6):
            for mu in range(8):
                for p in (
                    extremal_max_pattern(scheme, mu_tx, mu_ty, mu),
                    extremal_min_pattern(scheme, mu_tx, mu_ty, mu),
                ):
                    checks = analyzer.pattern_checks(p)
                    assert checks.bound_y.holds and checks.bound_x.holds
                    assert checks.residual_y < 1e-9 and checks.residual_x < 1e-9


def test_monotone_under_pattern_growth(scheme, analyzer):
    rng = np.random.default_rng(8)
    for _ in range(500):
        a = int(rng.integers(0, 6))
        b = int(rng.integers(0, 6))
        mu = int(rng.integers(0, 8))
        tx = frozenset(int(v) for v in rng.choice(5, size=a, replace=False))
        ty = frozenset(int(v) for v in rng.choice(5, size=b, replace=False))
        small = WiretapPattern(tx, ty, mu)
        extra_tx = tx | {int(v) for v in rng.choice(5, size=min(5, a + 1), replace=False)}
        big = WiretapPattern(frozenset(extra_tx), ty, min(7, mu + int(rng.integers(0, 3))))
        assert small.is_subset_of(big)
        lo = analyzer.exact_leakage("xy", small).total_bits
        hi = analyzer.exact_leakage("xy", big).total_bits
        assert hi >= lo - 1e-9


def test_minmax_formula_examples(scheme, analyzer):
    f00 = minmax_curves(scheme, 0, 0)
    assert (f00.min_bits, f00.max_bits_corrected, f00.max_bits_verbatim) == (0, 0, 0)
    f22 = minmax_curves(scheme, 2, 2)
    assert f22.max_bits_corrected == 4 and f22.rank_term_max == 0
    f55 = minmax_curves(scheme, 5, 5)
    omin, omax = analyzer.minmax_oracle(5, 5)
    assert f55.min_bits == f55.max_bits_corrected == omin == omax
    assert not f55.variants_agree  # the stray-term variant differs here


def test_minmax_formula_range_check(scheme):
    with pytest.raises(UsageError):
        minmax_curves(scheme, 6, 0)
    with pytest.raises(UsageError):
        minmax_curves(scheme, 0, -1)


def test_minmax_oracle_monotone_spot(analyzer):
    _, m22 = analyzer.minmax_oracle(2, 2)
    _, m32 = analyzer.minmax_oracle(3, 2)
    _, m23 = analyzer.minmax_oracle(2, 3)
    assert m32 >= m22 - 1e-9 and m23 >= m22 - 1e-9


def test_extremal_max_pattern_layout(scheme):
    p = extremal_max_pattern(scheme, 4, 1)
    assert p.tx_positions == frozenset({0, 1, 2, 3})
    assert p.ty_positions == frozenset({0})


def test_z_mu_leakage_endpoints():
    assert z_mu_leakage(0, 7, 10.0, 3.0) == pytest.approx(0.0, abs=1e-12)
    assert z_mu_leakage(7, 7, 10.0, 3.0) == pytest.approx(4.0, abs=1e-12)


def test_z_mu_leakage_midpoint_formula():
    # direct evaluation with the counting shares spelled out
    total = (1 << 4) * 8
    expected = 10.0 + (5 / 8) * math.log2(5 / total) + (3 / 8) * math.log2(1 / total) - 3.0
    assert z_mu_leakage(3, 7, 10.0, 3.0) == pytest.approx(expected, abs=1e-12)
    assert z_mu_leakage(3, 7, 10.0, 3.0) == pytest.approx(1.4512050593046013, abs=1e-9)


def test_z_mu_leakage_domain():
    with pytest.raises(DomainError):
        z_mu_leakage(8, 7, 10.0, 3.0)
    with pytest.raises(DomainError):
        z_mu_leakage(-1, 7, 10.0, 3.0)


def test_z_mu_matches_enumeration_all_mu(analyzer):
    for mu in range(8):
        formula = z_mu_leakage(mu, 7, 10.0, 3.0)
        oracle = analyzer.exact_leakage("xy", pattern(mu=mu)).total_bits
        assert formula == pytest.approx(oracle, abs=1e-9)


def test_grid_rows_and_z_trace(analyzer):
    rows = grid_curve_rows(analyzer, 2, 2)
    assert len(rows) == 9
    for r in rows:
        assert r.formula_min <= r.oracle_min + 1e-9
        assert r.oracle_max <= max(r.formula_max, r.formula_max_verbatim) + 1e-9
        assert r.bound_holds
    trace = z_trace_rows(analyzer, range(8))
    assert [r.mu_z for r in trace] == list(range(8))
    assert trace[0].formula_min == pytest.approx(0.0, abs=1e-9)
    assert trace[-1].formula_min == pytest.approx(4.0, abs=1e-9)


def test_sample_patterns_deterministic(scheme):
    a = sample_patterns(scheme, 5, seed=3, mu_values=(0, 2))
    b = sample_patterns(scheme, 5, seed=3, mu_values=(0, 2))
    assert a == b
    c = sample_patterns(scheme, 5, seed=4, mu_values=(0, 2))
    assert a != c
