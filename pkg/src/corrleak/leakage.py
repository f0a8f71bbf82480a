"""Leakage functionals over wiretapped syndrome bits and source symbols.

Observation model
-----------------
A wiretap pattern names bit positions of the two syndromes plus a count
``mu`` of leaked Z symbols (a prefix by default).  Bits that belong to
private-role segments are observed in the clear.  Parity bits whose segment
role is "common" are protected by a one-time pad that is *shared per parity
column* between the two syndromes: a single padded bit reveals nothing,
while the pair wiretapped at the same parity column reveals exactly the XOR
of the two raw parity bits.  This is the jointly-protective behaviour of
the parity segments that the minimum/maximum leakage case formulas assume,
and the brute-force oracle below is the ground truth for it.

Leakage of a target given a pattern is definitional:
``L = H(target^K) - H(target^K | observations)`` (reported in total bits
and per symbol, with per-symbol entropies taken as ``(1/K) H(sequence)``).

Everything is computed exactly by enumerating the source support; pad bits
are folded in analytically (one fresh uniform bit per touched pad column,
plus the raw-parity XOR when a column is observed on both sides), which is
exact and avoids blowing up the enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import log2
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import DomainError, InternalConsistencyError, UsageError
from .gf2 import rank, remove_columns
from .seqmodel import SequenceModel
from .swcodec import PartitionScheme

#: Slack for exact-enumeration bound verdicts (rounding tolerance only).
DELTA = 1e-9


@dataclass(frozen=True)
class WiretapPattern:
    """Wiretapped positions: subsets of T_X and T_Y bits plus mu leaked Z symbols."""

    tx_positions: frozenset[int] = frozenset()
    ty_positions: frozenset[int] = frozenset()
    mu: int = 0
    z_positions: Optional[tuple[int, ...]] = None

    def validate(self, s: PartitionScheme, K: int) -> None:
        lx, ly = s.syndrome_len("x"), s.syndrome_len("y")
        if any(not 0 <= p < lx for p in self.tx_positions):
            raise UsageError(f"tx_positions out of range 0..{lx - 1}")
        if any(not 0 <= p < ly for p in self.ty_positions):
            raise UsageError(f"ty_positions out of range 0..{ly - 1}")
        if not 0 <= self.mu <= K:
            raise UsageError(f"mu must lie in 0..{K}, got {self.mu}")
        if self.z_positions is not None and any(
            not 0 <= p < K for p in self.z_positions
        ):
            raise UsageError(f"z_positions out of range 0..{K - 1}")

    def is_subset_of(self, other: "WiretapPattern") -> bool:
        return (
            self.tx_positions <= other.tx_positions
            and self.ty_positions <= other.ty_positions
            and self.mu <= other.mu
        )


@dataclass(frozen=True)
class LeakageValue:
    """Exact leakage of one target under one pattern."""

    target: str
    total_bits: float
    per_symbol_bits: float


@dataclass(frozen=True)
class BoundReport:
    """Exact left side vs. bound right side, with every term spelled out."""

    target: str
    lhs_bits: float          # exact leakage, bits per symbol
    rhs_bits: float          # bound value, bits per symbol (slack excluded)
    delta: float
    term_breakdown: Mapping[str, float]

    @property
    def holds(self) -> bool:
        return self.lhs_bits <= self.rhs_bits + self.delta


_TARGET_VARS = {"x": ("x",), "y": ("y",), "xy": ("x", "y")}


class _Var:
    """Observation variable: packed deterministic chunks plus padded-bit refs.

    A bit protected by the shared parity pad is not materialised: within any
    entropy set, a pad column observed on one side contributes exactly one
    bit of fresh uniform randomness, and a column observed on both sides
    contributes one fresh bit plus the deterministic XOR of the two raw
    parity bits.  ``masked`` holds (column, side) references that the
    evaluation resolves per entropy set.
    """

    __slots__ = ("chunks", "masked")

    def __init__(self, chunks: list[tuple[np.ndarray, int]], masked: list[tuple[int, str]]):
        self.chunks = chunks
        self.masked = masked


def _pack_cols(cols: Sequence[np.ndarray], length: int) -> tuple[np.ndarray, int]:
    code = np.zeros(length, dtype=np.int64)
    for col in cols:
        code = (code << 1) | col
    return code, len(cols)


class WiretapAnalyzer:
    """Precomputed enumeration engine for one (scheme, model) pair.

    Building the engine enumerates the support once; every leakage, bound
    and identity evaluation then reduces to entropies of integer-coded
    columns over the support, with shared-pad bits folded in analytically.
    """

    def __init__(self, s: PartitionScheme, model: SequenceModel):
        if not model.is_binary or model.K != s.n:
            raise UsageError("analyzer needs a binary model with K equal to the code length")
        self.scheme = s
        self.model = model
        self.K = model.K

        X, Y, Z, probs = model.support_arrays()
        tx_bits = ((X.astype(np.int64) @ s.g_x.cells.astype(np.int64)) % 2).astype(np.uint8)
        ty_bits = ((Y.astype(np.int64) @ s.g_y.cells.astype(np.int64)) % 2).astype(np.uint8)
        self.probs = probs
        self._rows = X.shape[0]
        self._uniform = bool(np.allclose(probs, probs[0]))

        # Per syndrome bit: either a clear column or a shared-pad reference.
        def describe(side: str, bits: np.ndarray):
            cols, masked = {}, {}
            for i in range(bits.shape[1]):
                pcol = s.parity_column(side, i)
                if s.role_of(side, i) == "common" and pcol is not None:
                    masked[i] = (pcol, side)
                else:
                    cols[i] = bits[:, i]
            return cols, masked

        self._tx_clear, self._tx_masked = describe("x", tx_bits)
        self._ty_clear, self._ty_masked = describe("y", ty_bits)
        # Raw parity XOR per pad column (the pads cancel in the pair).
        self._xor_col = {
            c: tx_bits[:, s.x_info_len + c] ^ ty_bits[:, s.y_info_len + c]
            for c in range(s.parity_len)
        }
        self._z_cols = [Z[:, i] for i in range(self.K)]

        self._x_var = _Var([_pack_cols([X[:, i] for i in range(self.K)], self._rows)], [])
        self._y_var = _Var([_pack_cols([Y[:, i] for i in range(self.K)], self._rows)], [])

        self.h_x_total = self._set_entropy([self._x_var])
        self.h_y_total = self._set_entropy([self._y_var])
        self.h_xy_total = self._set_entropy([self._x_var, self._y_var])

        # Private/common channel-portion entropies used by the bound right side:
        # the private portion of one syndrome, and the common portion taken
        # jointly across both syndromes (the common information is shared).
        self.h_private_x = self._set_entropy([self._side_var("x", "private")])
        self.h_private_y = self._set_entropy([self._side_var("y", "private")])
        self.h_common = self._set_entropy(
            [self._side_var("x", "common"), self._side_var("y", "common")]
        )

    # -- low-level -----------------------------------------------------------

    def _side_var(self, side: str, role: str) -> _Var:
        positions = [
            i for i in range(self.scheme.syndrome_len(side)) if self.scheme.role_of(side, i) == role
        ]
        return self._syndrome_var(side, positions)

    def _syndrome_var(self, side: str, positions: Sequence[int]) -> _Var:
        clear = self._tx_clear if side == "x" else self._ty_clear
        masked = self._tx_masked if side == "x" else self._ty_masked
        cols = [clear[i] for i in positions if i in clear]
        refs = [masked[i] for i in positions if i in masked]
        chunks = [_pack_cols(cols, self._rows)] if cols else []
        return _Var(chunks, refs)

    def _entropy(self, code: np.ndarray) -> float:
        if self._uniform:
            _, counts = np.unique(code, return_counts=True)
            n = float(self._rows)
            return float(np.log2(n) - (counts * np.log2(counts)).sum() / n)
        _, inv = np.unique(code, return_inverse=True)
        mass = np.bincount(inv, weights=self.probs)
        mass = mass[mass > 0]
        return float(-(mass * np.log2(mass)).sum())

    def _set_entropy(self, vars: Sequence[_Var]) -> float:
        """Entropy of the joint of several variables: pack the deterministic
        chunks, resolve pad references, and add one bit per touched pad."""
        code = np.zeros(self._rows, dtype=np.int64)
        for v in vars:
            for chunk, width in v.chunks:
                if width:
                    code = (code << width) | chunk
        touched: dict[int, set[str]] = {}
        for v in vars:
            for col, side in v.masked:
                touched.setdefault(col, set()).add(side)
        bonus = 0.0
        for col, sides in sorted(touched.items()):
            bonus += 1.0
            if len(sides) == 2:
                code = (code << 1) | self._xor_col[col]
        return self._entropy(code) + bonus

    def _pattern_vars(self, pattern: WiretapPattern) -> dict[str, _Var]:
        pattern.validate(self.scheme, self.K)
        tx = self._syndrome_var("x", sorted(pattern.tx_positions))
        ty = self._syndrome_var("y", sorted(pattern.ty_positions))
        if pattern.z_positions is not None:
            zsel = sorted(pattern.z_positions)
        else:
            zsel = list(range(pattern.mu))
        z = _Var([_pack_cols([self._z_cols[i] for i in zsel], self._rows)] if zsel else [], [])
        return {"tx": tx, "ty": ty, "z": z, "x": self._x_var, "y": self._y_var}

    def evaluation(self, pattern: WiretapPattern) -> "_Evaluation":
        return _Evaluation(self, self._pattern_vars(pattern))

    # -- public operations -------------------------------------------------------

    def exact_leakage(self, target: str, pattern: WiretapPattern) -> LeakageValue:
        """L = H(target^K) - H(target^K | observed bits), exact."""
        if target not in _TARGET_VARS:
            raise UsageError(f"target must be one of {sorted(_TARGET_VARS)}, got {target!r}")
        ev = self.evaluation(pattern)
        tgt = _TARGET_VARS[target]
        total = ev.H(*tgt) + ev.H("tx", "ty", "z") - ev.H(*tgt, "tx", "ty", "z")
        if total < -DELTA:
            raise InternalConsistencyError(f"negative leakage {total!r}")
        total = max(0.0, total)
        return LeakageValue(target=target, total_bits=total, per_symbol_bits=total / self.K)

    def equivocation(self, target: str, pattern: WiretapPattern) -> float:
        """H(target^K | observed bits) in total bits."""
        if target not in _TARGET_VARS:
            raise UsageError(f"target must be one of {sorted(_TARGET_VARS)}, got {target!r}")
        ev = self.evaluation(pattern)
        tgt = _TARGET_VARS[target]
        return ev.H(*tgt, "tx", "ty", "z") - ev.H("tx", "ty", "z")

    def decomposition_residual(self, pattern: WiretapPattern, target: str = "y") -> float:
        """|direct conditional entropy - ten-term chain-rule reconstruction|, bits."""
        tgt = self._bound_target(target, pattern)
        return self._residual_from(self.evaluation(pattern), tgt)

    @staticmethod
    def _residual_from(ev: "_Evaluation", t: str) -> float:
        terms = _identity_terms(ev, t)
        direct = ev.H(t, "ty", "tx", "z") - ev.H("ty", "tx", "z")
        recon = (
            ev.H(t)
            - terms["i(ty;t)"]
            - terms["i(tx;t)"]
            - terms["i(ty;tx|t)"]
            - terms["i(t;z)"]
            - terms["i(ty;z|t)"]
            - terms["i(tx;z|t,ty)"]
            + terms["i(tx;ty)"]
            + terms["i(z;tx)"]
            + terms["i(ty;z|tx)"]
        )
        return abs(direct - recon)

    def bound_report(
        self, target: str, pattern: WiretapPattern, delta: float = DELTA
    ) -> BoundReport:
        """Exact leakage against the common/private-portion upper bound.

        The right side combines the nine observation mutual-information
        terms with the entropy of the target's private channel portion and
        the joint entropy of the common portions of both syndromes.
        """
        tgt = self._bound_target(target, pattern)
        return self._bound_from(self.evaluation(pattern), tgt, delta)

    def _bound_from(self, ev: "_Evaluation", tgt: str, delta: float) -> BoundReport:
        terms = _identity_terms(ev, tgt)
        h_private = self.h_private_x if tgt == "x" else self.h_private_y
        h_target = self.h_x_total if tgt == "x" else self.h_y_total
        rhs_total = (
            h_private
            + self.h_common
            - h_target
            + terms["i(ty;t)"]
            + terms["i(tx;t)"]
            + terms["i(ty;tx|t)"]
            + terms["i(t;z)"]
            + terms["i(ty;z|t)"]
            + terms["i(tx;z|t,ty)"]
            - terms["i(tx;ty)"]
            - terms["i(z;tx)"]
            - terms["i(ty;z|tx)"]
        )
        lhs_total = ev.H(tgt) + ev.H("tx", "ty", "z") - ev.H(tgt, "tx", "ty", "z")
        breakdown = dict(terms)
        breakdown["h(v_private)"] = h_private
        breakdown["h(v_common)"] = self.h_common
        breakdown["h(target_seq)"] = h_target
        return BoundReport(
            target=tgt,
            lhs_bits=max(0.0, lhs_total) / self.K,
            rhs_bits=rhs_total / self.K,
            delta=delta,
            term_breakdown=breakdown,
        )

    def pattern_checks(self, pattern: WiretapPattern, delta: float = DELTA) -> "PatternCheck":
        """Identity residuals and bound reports for both targets, sharing one
        entropy cache; the workhorse of the sweep commands."""
        if pattern.z_positions is not None:
            raise UsageError("arbitrary z position sets are supported in exact_leakage only")
        ev = self.evaluation(pattern)
        return PatternCheck(
            pattern=pattern,
            residual_y=self._residual_from(ev, "y"),
            residual_x=self._residual_from(ev, "x"),
            bound_y=self._bound_from(ev, "y", delta),
            bound_x=self._bound_from(ev, "x", delta),
        )

    def minmax_oracle(self, mu_tx: int, mu_ty: int) -> tuple[float, float]:
        """Min and max joint-target leakage over all position subsets of the
        given sizes (mu = 0); the brute-force ground truth for the curves."""
        lx, ly = self.scheme.syndrome_len("x"), self.scheme.syndrome_len("y")
        if not 0 <= mu_tx <= lx or not 0 <= mu_ty <= ly:
            raise UsageError(f"subset sizes must lie in 0..{lx} / 0..{ly}")
        lo, hi = float("inf"), float("-inf")
        for tx_sel in itertools.combinations(range(lx), mu_tx):
            for ty_sel in itertools.combinations(range(ly), mu_ty):
                val = self.exact_leakage(
                    "xy", WiretapPattern(frozenset(tx_sel), frozenset(ty_sel), 0)
                ).total_bits
                lo, hi = min(lo, val), max(hi, val)
        return lo, hi

    @staticmethod
    def _bound_target(target: str, pattern: WiretapPattern) -> str:
        if target not in ("x", "y"):
            raise UsageError(f"bound target must be 'x' or 'y', got {target!r}")
        if pattern.z_positions is not None:
            raise UsageError("arbitrary z position sets are supported in exact_leakage only")
        return target


@dataclass(frozen=True)
class PatternCheck:
    """Joint result of the identity and bound checks for one pattern."""

    pattern: WiretapPattern
    residual_y: float
    residual_x: float
    bound_y: BoundReport
    bound_x: BoundReport


class _Evaluation:
    """Entropy calculator with per-pattern memoisation."""

    def __init__(self, engine: WiretapAnalyzer, vars: dict[str, _Var]):
        self._engine = engine
        self._vars = vars
        self._cache: dict[tuple[str, ...], float] = {}

    def H(self, *names: str) -> float:
        key = tuple(sorted(names))
        if key not in self._cache:
            self._cache[key] = self._engine._set_entropy([self._vars[n] for n in key])
        return self._cache[key]


def _identity_terms(ev: _Evaluation, t: str) -> dict[str, float]:
    """The nine mutual-information terms of the chain-rule expansion of
    H(target | T_Y, T_X, Z^mu), each computed from exact joint entropies."""
    return {
        "i(ty;t)": ev.H("ty") + ev.H(t) - ev.H("ty", t),
        "i(tx;t)": ev.H("tx") + ev.H(t) - ev.H("tx", t),
        "i(ty;tx|t)": ev.H("ty", t) + ev.H("tx", t) - ev.H("ty", "tx", t) - ev.H(t),
        "i(t;z)": ev.H(t) + ev.H("z") - ev.H(t, "z"),
        "i(ty;z|t)": ev.H("ty", t) + ev.H("z", t) - ev.H("ty", "z", t) - ev.H(t),
        "i(tx;z|t,ty)": ev.H("tx", t, "ty")
        + ev.H("z", t, "ty")
        - ev.H("tx", "z", t, "ty")
        - ev.H(t, "ty"),
        "i(tx;ty)": ev.H("tx") + ev.H("ty") - ev.H("tx", "ty"),
        "i(z;tx)": ev.H("z") + ev.H("tx") - ev.H("z", "tx"),
        "i(ty;z|tx)": ev.H("ty", "tx") + ev.H("z", "tx") - ev.H("ty", "z", "tx") - ev.H("tx"),
    }


# -- module-level conveniences mirroring the analyzer ---------------------------


def exact_leakage(
    target: str, pattern: WiretapPattern, s: PartitionScheme, model: SequenceModel
) -> LeakageValue:
    return WiretapAnalyzer(s, model).exact_leakage(target, pattern)


def decomposition_identity_check(
    pattern: WiretapPattern, s: PartitionScheme, model: SequenceModel, target: str = "y"
) -> float:
    return WiretapAnalyzer(s, model).decomposition_residual(pattern, target)


def bound_rhs(
    target: str,
    pattern: WiretapPattern,
    s: PartitionScheme,
    model: SequenceModel,
    delta: float = DELTA,
) -> BoundReport:
    return WiretapAnalyzer(s, model).bound_report(target, pattern, delta)


def minmax_oracle(
    s: PartitionScheme, mu_tx: int, mu_ty: int, model: SequenceModel
) -> tuple[float, float]:
    return WiretapAnalyzer(s, model).minmax_oracle(mu_tx, mu_ty)


# -- closed-form min/max curves -------------------------------------------------


@dataclass(frozen=True)
class FormulaMinMax:
    """Closed-form minimum and maximum leakage at one wiretap size pair.

    Two values are kept for the maximum: one from the case rule that adds
    the full mu_tx count on top of both info lengths when both wiretap
    counts exceed them (``max_bits_verbatim``) and one without that extra
    term (``max_bits_corrected``).  Reports mark which one the brute-force
    oracle confirms; neither is silently preferred here.
    """

    mu_tx: int
    mu_ty: int
    min_bits: int
    max_bits_corrected: int
    max_bits_verbatim: int
    min_case: str
    max_case: str
    rank_term_min: int
    rank_term_max: int

    @property
    def variants_agree(self) -> bool:
        return self.max_bits_corrected == self.max_bits_verbatim


def _rank_term(s: PartitionScheme, parity_cols: Sequence[int]) -> int:
    h = s.parity_check
    removed = [s.k + c for c in parity_cols]
    return rank(h) - rank(remove_columns(h, removed))


def minmax_curves(s: PartitionScheme, mu_tx: int, mu_ty: int) -> FormulaMinMax:
    """Evaluate the minimum/maximum leakage case formulas for the joint target.

    The parity-matrix rank term uses the extremal column choices of each
    case: aligned low columns for the maximum, maximally mismatched columns
    for the minimum.
    """
    l_ix, l_iy, l_p = s.x_info_len, s.y_info_len, s.parity_len
    if not 0 <= mu_tx <= l_ix + l_p:
        raise UsageError(f"mu_tx must lie in 0..{l_ix + l_p}, got {mu_tx}")
    if not 0 <= mu_ty <= l_iy + l_p:
        raise UsageError(f"mu_ty must lie in 0..{l_iy + l_p}, got {mu_ty}")

    # Maximum: info bits first, leftover parity picks aligned from column 0.
    if mu_tx <= l_ix and mu_ty <= l_iy:
        max_case = "info-only"
        x_par, y_par = 0, 0
        base_corr = base_verb = mu_tx + mu_ty
    elif mu_tx > l_ix and mu_ty > l_iy:
        max_case = "both-over-info"
        x_par, y_par = mu_tx - l_ix, mu_ty - l_iy
        aligned = min(x_par, y_par)
        base_corr = l_ix + l_iy + aligned
        base_verb = l_ix + l_iy + mu_tx + aligned
    elif mu_tx > l_ix:
        max_case = "x-over-info"
        x_par, y_par = mu_tx - l_ix, 0
        base_corr = base_verb = mu_ty + l_ix
    else:
        max_case = "y-over-info"
        x_par, y_par = 0, mu_ty - l_iy
        base_corr = base_verb = mu_tx + l_iy
    rt_max = _rank_term(s, range(max(x_par, y_par)))

    # Minimum: parity bits first, chosen to overlap as little as possible.
    px, py = min(mu_tx, l_p), min(mu_ty, l_p)
    if mu_tx <= l_p and mu_ty <= l_p:
        min_case = "parity-first"
        base_min = max(0, mu_tx + mu_ty - l_p)
    else:
        min_case = "parity-saturated"
        base_min = mu_tx + mu_ty - l_p
    union = sorted(set(range(px)) | set(range(l_p - py, l_p)))
    rt_min = _rank_term(s, union)

    return FormulaMinMax(
        mu_tx=mu_tx,
        mu_ty=mu_ty,
        min_bits=base_min + rt_min,
        max_bits_corrected=base_corr + rt_max,
        max_bits_verbatim=base_verb + rt_max,
        min_case=min_case,
        max_case=max_case,
        rank_term_min=rt_min,
        rank_term_max=rt_max,
    )


def extremal_max_pattern(s: PartitionScheme, mu_tx: int, mu_ty: int, mu: int = 0) -> WiretapPattern:
    """The deterministic wiretap pattern behind the maximum-leakage case:
    info positions first, then aligned parity columns from column 0."""
    l_ix, l_iy = s.x_info_len, s.y_info_len

    def side(count: int, info_len: int) -> frozenset[int]:
        take_info = min(count, info_len)
        take_par = count - take_info
        return frozenset(range(take_info)) | frozenset(
            info_len + j for j in range(take_par)
        )

    return WiretapPattern(side(mu_tx, l_ix), side(mu_ty, l_iy), mu)


# -- leakage from the wiretapped source ------------------------------------------


def z_mu_leakage(mu: int, K: int, h_xy: float, h_x_given_y: float) -> float:
    """Closed-form joint-target leakage from observing ``mu`` symbols of Z,
    for the unit-distance correlation model; total bits.

    The candidate-counting behind it: ``2**(K-mu)`` sequences repeated
    ``K-mu+1`` times plus ``mu * 2**(K-mu)`` singletons, out of
    ``2**(K-mu) * (K+1)`` weighted candidates.  ``mu = 0`` is evaluated as
    the formula's continuous extension (and equals 0 for the bundled
    constants).
    """
    if not 0 <= mu <= K:
        raise DomainError(f"mu must lie in 0..K, got mu={mu}, K={K}")
    total = (1 << (K - mu)) * (K + 1)
    repeated_share = (K - mu + 1) / (K + 1)
    singleton_share = mu / (K + 1)
    value = (
        h_xy
        + repeated_share * log2((K - mu + 1) / total)
        + singleton_share * log2(1.0 / total)
        - h_x_given_y
    )
    return value


# -- curve sweeps (CLI / report backend) ------------------------------------------


@dataclass(frozen=True)
class CurveRow:
    """One row of the leakage-curve report."""

    mu_tx: int
    mu_ty: int
    mu_z: int
    formula_min: float
    formula_max: float
    formula_max_verbatim: float
    oracle_min: float
    oracle_max: float
    bound_lhs: float
    bound_rhs: float
    bound_holds: bool
    variant_match: str

    def as_dict(self) -> dict:
        return {
            "mu_tx": self.mu_tx,
            "mu_ty": self.mu_ty,
            "mu_z": self.mu_z,
            "formula_min": self.formula_min,
            "formula_max": self.formula_max,
            "formula_max_verbatim": self.formula_max_verbatim,
            "oracle_min": self.oracle_min,
            "oracle_max": self.oracle_max,
            "bound_lhs": self.bound_lhs,
            "bound_rhs": self.bound_rhs,
            "bound_holds": self.bound_holds,
            "variant_match": self.variant_match,
        }


def _match_label(formula: FormulaMinMax, oracle_max: float, tol: float = DELTA) -> str:
    corr = abs(formula.max_bits_corrected - oracle_max) <= tol
    verb = abs(formula.max_bits_verbatim - oracle_max) <= tol
    if corr and verb:
        return "both"
    if corr:
        return "corrected"
    if verb:
        return "verbatim"
    return "neither"


def grid_curve_rows(
    analyzer: WiretapAnalyzer, mu_tx_max: int, mu_ty_max: int, delta: float = DELTA
) -> list[CurveRow]:
    """Sweep the (mu_tx, mu_ty) grid: formulas, oracle, and the Y-target
    bound at the maximum-leakage extremal pattern."""
    rows = []
    s = analyzer.scheme
    for mu_tx in range(mu_tx_max + 1):
        for mu_ty in range(mu_ty_max + 1):
            formula = minmax_curves(s, mu_tx, mu_ty)
            omin, omax = analyzer.minmax_oracle(mu_tx, mu_ty)
            bound = analyzer.bound_report("y", extremal_max_pattern(s, mu_tx, mu_ty), delta)
            rows.append(
                CurveRow(
                    mu_tx=mu_tx,
                    mu_ty=mu_ty,
                    mu_z=0,
                    formula_min=float(formula.min_bits),
                    formula_max=float(formula.max_bits_corrected),
                    formula_max_verbatim=float(formula.max_bits_verbatim),
                    oracle_min=omin,
                    oracle_max=omax,
                    bound_lhs=bound.lhs_bits,
                    bound_rhs=bound.rhs_bits,
                    bound_holds=bound.holds,
                    variant_match=_match_label(formula, omax, delta),
                )
            )
    return rows


def z_trace_rows(
    analyzer: WiretapAnalyzer,
    mu_values: Sequence[int],
    h_xy: Optional[float] = None,
    h_x_given_y: Optional[float] = None,
    delta: float = DELTA,
) -> list[CurveRow]:
    """Leakage-from-Z trace: closed form vs. enumeration at each mu.

    The sequence-level constants default to the model's exact values.
    """
    if h_xy is None:
        h_xy = analyzer.h_xy_total
    if h_x_given_y is None:
        h_x_given_y = analyzer.h_xy_total - analyzer.h_y_total
    rows = []
    for mu in mu_values:
        formula = z_mu_leakage(mu, analyzer.K, h_xy, h_x_given_y)
        pattern = WiretapPattern(frozenset(), frozenset(), mu)
        oracle = analyzer.exact_leakage("xy", pattern).total_bits
        bound = analyzer.bound_report("y", pattern, delta)
        match = "both" if abs(formula - oracle) <= delta else "neither"
        rows.append(
            CurveRow(
                mu_tx=0,
                mu_ty=0,
                mu_z=mu,
                formula_min=formula,
                formula_max=formula,
                formula_max_verbatim=formula,
                oracle_min=oracle,
                oracle_max=oracle,
                bound_lhs=bound.lhs_bits,
                bound_rhs=bound.rhs_bits,
                bound_holds=bound.holds,
                variant_match=match,
            )
        )
    return rows


def sample_patterns(
    s: PartitionScheme, count: int, seed: int, mu_values: Sequence[int]
) -> list[WiretapPattern]:
    """Deterministic random wiretap patterns for bound/identity sweeps."""
    rng = np.random.default_rng(seed)
    lx, ly = s.syndrome_len("x"), s.syndrome_len("y")
    out = []
    for _ in range(count):
        a = int(rng.integers(0, lx + 1))
        b = int(rng.integers(0, ly + 1))
        tx = frozenset(int(v) for v in rng.choice(lx, size=a, replace=False))
        ty = frozenset(int(v) for v in rng.choice(ly, size=b, replace=False))
        for mu in mu_values:
            out.append(WiretapPattern(tx, ty, int(mu)))
    return out
