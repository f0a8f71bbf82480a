"""Syndrome codec over a partitioned systematic generator matrix.

Both sources hold length-n binary words.  The generator ``G = [I_k | P^T]``
fixes the parity structure; each source's word is split into labeled
segments.  Source X transmits its ``v1`` segment directly plus the parity
combination ``P1^T a1 + q1``; source Y transmits ``u2`` plus
``P2^T a2 + q2``.  ``P1^T`` / ``P2^T`` are the transposed row blocks of the
parity part of G selected by the ``a1`` / ``a2`` positions.

The receiver resolves both words from the two syndromes by exhaustive
search constrained by the correlation model; at this scale exhaustive coset
search is exact and doubles as the reference decoder.

Segment roles ("private" / "common") mark which syndrome parts count as the
private and common information portions when leakage bounds are evaluated;
by default the transmitted-information segments are private and the parity
segments are common.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import log2
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import UsageError, ValidationError
from .gf2 import Gf2Matrix, mat_vec_mul, rank
from .seqmodel import SequenceModel, SequenceTriple

DEFAULT_ROLES = {"v1": "private", "u2": "private", "q1": "common", "q2": "common"}


@dataclass(frozen=True)
class Syndrome:
    """Transmitted channel information: info segment followed by parity bits."""

    bits: tuple[int, ...]
    info_len: int
    parity_len: int

    def __post_init__(self):
        if len(self.bits) != self.info_len + self.parity_len:
            raise ValidationError("syndrome length does not match info_len + parity_len")

    @property
    def info(self) -> tuple[int, ...]:
        return self.bits[: self.info_len]

    @property
    def parity(self) -> tuple[int, ...]:
        return self.bits[self.info_len :]

    def as_string(self) -> str:
        return "".join(str(b) for b in self.bits)


def _as_bits(word: Iterable[int], n: int, what: str) -> tuple[int, ...]:
    bits = tuple(int(b) for b in word)
    if len(bits) != n:
        raise UsageError(f"{what} has length {len(bits)}, expected {n}")
    if any(b not in (0, 1) for b in bits):
        raise UsageError(f"{what} must be binary")
    return bits


@dataclass(frozen=True)
class PartitionScheme:
    """Generator matrix plus the segment partition that defines both encoders."""

    generator: Gf2Matrix
    x_segments: Mapping[str, tuple[int, ...]]
    y_segments: Mapping[str, tuple[int, ...]]
    segment_roles: Mapping[str, str] = field(default_factory=lambda: dict(DEFAULT_ROLES))

    def __post_init__(self):
        g = self.generator
        k, n = g.rows, g.cols
        if n <= k:
            raise ValidationError(f"generator must be wider than tall, got {k}x{n}")
        if not np.array_equal(g.cells[:, :k], np.eye(k, dtype=np.uint8)):
            raise ValidationError("generator must start with an identity block")
        object.__setattr__(self, "x_segments", {s: tuple(v) for s, v in self.x_segments.items()})
        object.__setattr__(self, "y_segments", {s: tuple(v) for s, v in self.y_segments.items()})
        object.__setattr__(self, "segment_roles", dict(self.segment_roles))
        object.__setattr__(self, "_derived", {})
        self._check_segments(self.x_segments, ("a1", "v1", "q1"), k, n)
        self._check_segments(self.y_segments, ("u2", "a2", "q2"), k, n)
        for name, role in self.segment_roles.items():
            if name not in ("v1", "u2", "q1", "q2"):
                raise ValidationError(f"segment_roles names unknown segment {name!r}")
            if role not in ("private", "common"):
                raise ValidationError(f"segment role must be private/common, got {role!r}")

    def _memo(self, name, build):
        if name not in self._derived:
            self._derived[name] = build()
        return self._derived[name]

    @staticmethod
    def _check_segments(segs, names, k, n):
        if set(segs) != set(names):
            raise ValidationError(f"segments must be exactly {names}, got {sorted(segs)}")
        flat = sorted(p for v in segs.values() for p in v)
        if flat != list(range(n)):
            raise ValidationError("segments must partition positions 0..n-1")
        if sorted(segs[names[2]]) != list(range(k, n)):
            raise ValidationError(f"{names[2]} must cover the parity positions {k}..{n - 1}")
        for name in names[:2]:
            if any(p >= k for p in segs[name]):
                raise ValidationError(f"{name} must lie within the message positions 0..{k - 1}")

    # -- derived dimensions -------------------------------------------------

    @property
    def k(self) -> int:
        return self.generator.rows

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def parity_len(self) -> int:
        return self.n - self.k

    @property
    def x_info_len(self) -> int:
        return len(self.x_segments["v1"])

    @property
    def y_info_len(self) -> int:
        return len(self.y_segments["u2"])

    # -- derived matrices ---------------------------------------------------

    @property
    def parity_block(self) -> Gf2Matrix:
        """The P^T block of G (k x (n-k))."""
        return self._memo("parity_block", lambda: Gf2Matrix(self.generator.cells[:, self.k :]))

    @property
    def p1_t(self) -> Gf2Matrix:
        """Transposed a1-rows of the parity block ((n-k) x |a1|)."""
        return self._memo(
            "p1_t",
            lambda: Gf2Matrix(self.parity_block.cells[list(self.x_segments["a1"]), :].T),
        )

    @property
    def p2_t(self) -> Gf2Matrix:
        """Transposed a2-rows of the parity block ((n-k) x |a2|)."""
        return self._memo(
            "p2_t",
            lambda: Gf2Matrix(self.parity_block.cells[list(self.y_segments["a2"]), :].T),
        )

    @property
    def parity_check(self) -> Gf2Matrix:
        """H = [P | I_(n-k)], the standard companion of the systematic G."""
        return self._memo(
            "parity_check",
            lambda: self.parity_block.transpose().hstack(Gf2Matrix.identity(self.parity_len)),
        )

    def _encoder_matrix(self, info_seg: str, keyed_seg: str, segs) -> Gf2Matrix:
        info = segs[info_seg]
        keyed = segs[keyed_seg]
        cols = len(info) + self.parity_len
        m = np.zeros((self.n, cols), dtype=np.uint8)
        for j, p in enumerate(info):
            m[p, j] = 1
        for p in keyed:
            m[p, len(info) :] = self.parity_block.cells[p, :]
        for j, p in enumerate(sorted(segs[_PARITY_SEG[info_seg]])):
            m[p, len(info) + j] = 1
        return Gf2Matrix(m)

    @property
    def g_x(self) -> Gf2Matrix:
        """Generator mapping a source word x to its syndrome: T_X = x . G_X."""
        return self._memo("g_x", lambda: self._encoder_matrix("v1", "a1", self.x_segments))

    @property
    def g_y(self) -> Gf2Matrix:
        """Generator mapping a source word y to its syndrome: T_Y = y . G_Y."""
        return self._memo("g_y", lambda: self._encoder_matrix("u2", "a2", self.y_segments))

    # -- syndrome layout / roles ---------------------------------------------

    def syndrome_segment(self, side: str, bit: int) -> str:
        """Segment name carrying syndrome bit ``bit`` of T_X ('x') or T_Y ('y')."""
        if side == "x":
            return "v1" if bit < self.x_info_len else "q1"
        if side == "y":
            return "u2" if bit < self.y_info_len else "q2"
        raise UsageError(f"side must be 'x' or 'y', got {side!r}")

    def syndrome_len(self, side: str) -> int:
        info = self.x_info_len if side == "x" else self.y_info_len
        return info + self.parity_len

    def role_of(self, side: str, bit: int) -> str:
        return self.segment_roles.get(self.syndrome_segment(side, bit), "private")

    def parity_column(self, side: str, bit: int) -> int | None:
        """Parity-column index of a syndrome bit, or None for an info bit."""
        info = self.x_info_len if side == "x" else self.y_info_len
        if bit < info:
            return None
        return bit - info

    def to_json(self) -> dict:
        return {
            "generator": self.generator.to_json(),
            "x_segments": {k: list(v) for k, v in self.x_segments.items()},
            "y_segments": {k: list(v) for k, v in self.y_segments.items()},
            "segment_roles": dict(self.segment_roles),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PartitionScheme":
        try:
            return cls(
                generator=Gf2Matrix.from_json(data["generator"]),
                x_segments={k: tuple(v) for k, v in data["x_segments"].items()},
                y_segments={k: tuple(v) for k, v in data["y_segments"].items()},
                segment_roles=dict(data.get("segment_roles", DEFAULT_ROLES)),
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad scheme JSON: {exc}") from exc


_PARITY_SEG = {"v1": "q1", "u2": "q2"}


def reference_scheme() -> PartitionScheme:
    """The bundled rate-5/7 worked example: a [7,4] systematic code with
    two-bit keyed/transmitted splits on each source."""
    g = Gf2Matrix.from_rows(["1000101", "0100110", "0010111", "0001011"])
    return PartitionScheme(
        generator=g,
        x_segments={"a1": (0, 1), "v1": (2, 3), "q1": (4, 5, 6)},
        y_segments={"u2": (0, 1), "a2": (2, 3), "q2": (4, 5, 6)},
    )


# -- encoding ----------------------------------------------------------------


def encode_x(x: Iterable[int], s: PartitionScheme) -> Syndrome:
    """T_X: the v1 segment followed by P1^T a1 + q1."""
    bits = _as_bits(x, s.n, "x")
    a1 = [bits[p] for p in s.x_segments["a1"]]
    v1 = [bits[p] for p in s.x_segments["v1"]]
    q1 = [bits[p] for p in sorted(s.x_segments["q1"])]
    parity = [pa ^ qb for pa, qb in zip(mat_vec_mul(s.p1_t, a1), q1)]
    return Syndrome(bits=tuple(v1 + parity), info_len=len(v1), parity_len=s.parity_len)


def encode_y(y: Iterable[int], s: PartitionScheme) -> Syndrome:
    """T_Y: the u2 segment followed by P2^T a2 + q2."""
    bits = _as_bits(y, s.n, "y")
    u2 = [bits[p] for p in s.y_segments["u2"]]
    a2 = [bits[p] for p in s.y_segments["a2"]]
    q2 = [bits[p] for p in sorted(s.y_segments["q2"])]
    parity = [pa ^ qb for pa, qb in zip(mat_vec_mul(s.p2_t, a2), q2)]
    return Syndrome(bits=tuple(u2 + parity), info_len=len(u2), parity_len=s.parity_len)


# -- decoding ----------------------------------------------------------------


@dataclass(frozen=True)
class DecodeResult:
    """Outcome of a joint decode: all source pairs consistent with both syndromes."""

    candidates: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @property
    def unique(self) -> bool:
        return len(self.candidates) == 1

    @property
    def empty(self) -> bool:
        return not self.candidates


def _support_pairs(model: SequenceModel) -> dict[tuple, float]:
    pairs: dict[tuple, float] = {}
    for t in model.iter_support():
        key = (t.x, t.y)
        pairs[key] = pairs.get(key, 0.0) + t.prob
    return pairs


def joint_decode(
    tx: Syndrome, ty: Syndrome, model: SequenceModel, s: PartitionScheme
) -> DecodeResult:
    """Exhaustive search over the model support for pairs matching both syndromes.

    Ambiguity (several candidates) and inconsistency (none) are reported in
    the result, not raised.
    """
    if model.K != s.n or not model.is_binary:
        raise UsageError("decode needs a binary model with K equal to the code length")
    hits = []
    for x, y in _support_pairs(model):
        if encode_x(x, s).bits == tx.bits and encode_y(y, s).bits == ty.bits:
            hits.append((x, y))
    return DecodeResult(candidates=tuple(sorted(hits)))


def decode_ambiguity_rate(s: PartitionScheme, model: SequenceModel) -> float:
    """Probability mass of source pairs whose syndrome pair does not decode uniquely."""
    pairs = _support_pairs(model)
    groups: dict[tuple, list[tuple]] = {}
    for (x, y) in pairs:
        key = (encode_x(x, s).bits, encode_y(y, s).bits)
        groups.setdefault(key, []).append((x, y))
    ambiguous = 0.0
    for members in groups.values():
        if len(members) > 1:
            ambiguous += sum(pairs[m] for m in members)
    return ambiguous


# -- equivocation ------------------------------------------------------------


def rank_equivocation(g: Gf2Matrix, g_sub: Gf2Matrix) -> int:
    """Signed rank difference rank(g) - rank(g_sub).

    The sign is preserved deliberately: for the bundled scheme the sub-matrix
    outranks the generator, and hiding that would misreport the formula.
    Use ``clamped_equivocation`` for the floor-at-zero companion.
    """
    return rank(g) - rank(g_sub)


def clamped_equivocation(g: Gf2Matrix, g_sub: Gf2Matrix) -> int:
    return max(0, rank_equivocation(g, g_sub))


Observable = Callable[[SequenceTriple], Hashable]

_TARGETS = {
    "x": lambda t: t.x,
    "y": lambda t: t.y,
    "z": lambda t: t.z,
    "xy": lambda t: (t.x, t.y),
    "xz": lambda t: (t.x, t.z),
    "yz": lambda t: (t.y, t.z),
    "xyz": lambda t: (t.x, t.y, t.z),
}


def enumeration_equivocation(
    observed: Sequence[Observable], target: str, model: SequenceModel
) -> float:
    """H(target | observations) in bits, by exact enumeration of the support.

    ``observed`` is a sequence of deterministic functions of a support
    triple; an empty sequence gives the unconditional entropy.  This is the
    ground-truth oracle the fast paths are checked against.
    """
    if target not in _TARGETS:
        raise UsageError(f"unknown target {target!r}")
    pick = _TARGETS[target]
    cells: dict[Hashable, dict[Hashable, float]] = {}
    for t in model.iter_support():
        okey = tuple(fn(t) for fn in observed)
        cells.setdefault(okey, {})
        tkey = pick(t)
        cells[okey][tkey] = cells[okey].get(tkey, 0.0) + t.prob
    h = 0.0
    for groups in cells.values():
        mass = sum(groups.values())
        for p in groups.values():
            h -= p * log2(p / mass)
    return h


def syndrome_observable(s: PartitionScheme, side: str, positions=None) -> Observable:
    """Observable returning (selected bits of) T_X or T_Y for a support triple."""
    if side not in ("x", "y"):
        raise UsageError("side must be 'x' or 'y'")
    enc = encode_x if side == "x" else encode_y
    sel = None if positions is None else tuple(sorted(positions))

    def fn(t: SequenceTriple) -> Hashable:
        bits = enc(getattr(t, side), s).bits
        return bits if sel is None else tuple(bits[i] for i in sel)

    return fn


def z_prefix_observable(mu: int) -> Observable:
    """Observable exposing the first ``mu`` symbols of Z^K."""

    def fn(t: SequenceTriple) -> Hashable:
        return t.z[:mu]

    return fn


def bit_observable(which: str, positions: Sequence[int]) -> Observable:
    """Observable exposing raw source symbols at the given positions."""
    sel = tuple(positions)

    def fn(t: SequenceTriple) -> Hashable:
        vec = getattr(t, which)
        return tuple(vec[i] for i in sel)

    return fn


# -- prototype-code condition report ------------------------------------------


@dataclass(frozen=True)
class ConditionRow:
    """One evaluated inequality: lhs <= rhs up to the asymptotic slack.

    ``gap`` is rhs - lhs; no verdict is attached because the slack is an
    asymptotic quantity that has no fixed desk-scale value.
    """

    label: str
    lhs_name: str
    lhs_bits: float
    rhs_name: str
    rhs_bits: float

    @property
    def gap(self) -> float:
        return self.rhs_bits - self.lhs_bits


def _entropy_of(model: SequenceModel, fn: Observable) -> float:
    groups: dict[Hashable, float] = {}
    for t in model.iter_support():
        key = fn(t)
        groups[key] = groups.get(key, 0.0) + t.prob
    return float(-sum(p * log2(p) for p in groups.values()))


def _cond_entropy(model: SequenceModel, target: str, observed: Sequence[Observable]) -> float:
    return enumeration_equivocation(observed, target, model)


def _segment_bits_observable(s: PartitionScheme, side: str, role: str) -> Observable:
    length = s.syndrome_len(side)
    sel = tuple(i for i in range(length) if s.role_of(side, i) == role)
    return syndrome_observable(s, side, sel)


def prototype_condition_report(s: PartitionScheme, model: SequenceModel) -> list[ConditionRow]:
    """Evaluate every prototype-code condition exactly and report signed gaps.

    Rates are per symbol; the private/common channel portions are read off
    the role-designated syndrome segments of the bundled partition.
    """
    K = model.K
    w_x = _segment_bits_observable(s, "x", "private")
    w_cx = _segment_bits_observable(s, "x", "common")
    w_y = _segment_bits_observable(s, "y", "private")
    w_cy = _segment_bits_observable(s, "y", "common")

    n_wx = sum(1 for i in range(s.syndrome_len("x")) if s.role_of("x", i) == "private")
    n_wy = sum(1 for i in range(s.syndrome_len("y")) if s.role_of("y", i) == "private")

    h_x = _entropy_of(model, _TARGETS["x"]) / K
    h_y = _entropy_of(model, _TARGETS["y"]) / K
    h_z = _entropy_of(model, _TARGETS["z"]) / K
    h_xy = _entropy_of(model, _TARGETS["xy"]) / K
    h_x_given_yz = _cond_entropy(model, "x", [_TARGETS["y"], _TARGETS["z"]]) / K
    h_y_given_xz = _cond_entropy(model, "y", [_TARGETS["x"], _TARGETS["z"]]) / K
    h_y_given_x = _cond_entropy(model, "y", [_TARGETS["x"]]) / K
    i_xy = h_x + h_y - h_xy

    h_wx = _entropy_of(model, w_x) / K
    h_wy = _entropy_of(model, w_y) / K
    h_wcx = _entropy_of(model, w_cx) / K
    h_wcy = _entropy_of(model, w_cy) / K
    log_mx = n_wx / K
    log_my = n_wy / K

    rows = [
        ConditionRow(
            "decode_error", "pr(decode wrong)", decode_ambiguity_rate(s, model),
            "asymptotic target", 0.0,
        ),
        ConditionRow("x_private_rate:lower", "h(x|y,z)", h_x_given_yz, "h(w_x)/k", h_wx),
        ConditionRow("x_private_rate:middle", "h(w_x)/k", h_wx, "log2(m_x)/k", log_mx),
        ConditionRow("x_private_rate:upper", "log2(m_x)/k", log_mx, "h(x|y,z)", h_x_given_yz),
        ConditionRow("y_private_rate:lower", "h(y|x,z)", h_y_given_xz, "h(w_y)/k", h_wy),
        ConditionRow("y_private_rate:middle", "h(w_y)/k", h_wy, "log2(m_y)/k", log_my),
        ConditionRow("y_private_rate:upper", "log2(m_y)/k", log_my, "h(y|x)", h_y_given_x),
        ConditionRow(
            "common_rate:lower", "i(x;y)", i_xy, "(h(w_cx)+h(w_cy))/k", h_wcx + h_wcy
        ),
        ConditionRow(
            "common_rate:upper", "(h(w_cx)+h(w_cy))/k", h_wcx + h_wcy, "i(x;y)", i_xy
        ),
        ConditionRow(
            "x_unc_given_y_private", "h(x)", h_x,
            "h(x^k|v_y)/k", _cond_entropy(model, "x", [w_y]) / K,
        ),
        ConditionRow(
            "y_unc_given_x_private", "h(y)", h_y,
            "h(y^k|v_x)/k", _cond_entropy(model, "y", [w_x]) / K,
        ),
        ConditionRow(
            "joint_rate_sum:lower", "h(x,y)", h_xy,
            "(h(w_x)+h(w_cx)+h(w_y)+h(w_cy))/k", h_wx + h_wcx + h_wy + h_wcy,
        ),
        ConditionRow(
            "joint_rate_sum:upper", "(h(w_x)+h(w_cx)+h(w_y)+h(w_cy))/k",
            h_wx + h_wcx + h_wy + h_wcy, "h(x,y)", h_xy,
        ),
        ConditionRow(
            "z_unc_given_y_private", "h(z)", h_z,
            "h(z^k|v_y)/k", _cond_entropy(model, "z", [w_y]) / K,
        ),
    ]
    return rows
