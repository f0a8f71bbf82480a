"""One-time-pad cipher constructions over index spaces and rate-region checks.

Plaintexts are integers in index spaces I_M = {0, .., M-1}.  The pad
operation on an index space is addition modulo that component's alphabet
size, which is exactly invertible for any fixed key value.  The default
codeword layout masks the first sub-codeword of X with *Y's* key component
(the same pad also masks Y's first sub-codeword); an independent-pads
variant is available so the effect of the shared pad can be measured rather
than argued about.

Security levels are exact conditional entropies per symbol, computed by
enumerating the source support together with the uniform key space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import ceil, log2
from typing import Mapping, Optional

import numpy as np

from .errors import CapacityError, DomainError, UsageError, ValidationError
from .info import InfoSummary
from .seqmodel import SUPPORT_GUARD, SequenceModel
from .swcodec import PartitionScheme

#: Empirical desk-scale slack when comparing measured levels to targets.
SECURITY_EPS = 0.05

#: Security cases: which uncertainty the construction must keep high.
CASES = ("joint", "individual", "y-only")

#: Codeword component -> key-component name (None = sent in the clear).
BRANCHES: dict[str, dict[str, Optional[str]]] = {
    "none": {"x1": None, "cx": None, "y1": None, "cy": None},
    "common-only": {"x1": None, "cx": "kcx", "y1": None, "cy": None},
    "reused-pad": {"x1": "ky1", "cx": "kcx", "y1": "ky1", "cy": "kcy"},
    "independent-pads": {"x1": "kx1", "cx": "kcx", "y1": "ky1", "cy": "kcy"},
}

_KEY_SIZES = {"kx1": "m_x1", "ky1": "m_y1", "kcx": "m_cx", "kcy": "m_cy"}


def split_index(w: int, m1: int) -> tuple[int, int]:
    """Split an index into (w mod m1, (w - w mod m1) / m1); w = w1 + m1*w2."""
    if m1 < 1:
        raise UsageError(f"m1 must be >= 1, got {m1}")
    if w < 0:
        raise UsageError(f"index must be nonnegative, got {w}")
    w1 = w % m1
    return w1, (w - w1) // m1


@dataclass(frozen=True)
class CipherScheme:
    """Alphabet sizes of the sub-codewords plus the key assignment."""

    m_x: int
    m_y: int
    m_x1: int
    m_y1: int
    m_cx: int
    m_cy: int
    key_assignment: Mapping[str, Optional[str]] = field(
        default_factory=lambda: dict(BRANCHES["reused-pad"])
    )
    rounding_errors: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("m_x", "m_y", "m_x1", "m_y1", "m_cx", "m_cy"):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be >= 1")
        object.__setattr__(self, "key_assignment", dict(self.key_assignment))
        object.__setattr__(self, "rounding_errors", dict(self.rounding_errors))
        for comp, key in self.key_assignment.items():
            if comp not in ("x1", "cx", "y1", "cy"):
                raise ValidationError(f"unknown codeword component {comp!r}")
            if key is not None and key not in _KEY_SIZES:
                raise ValidationError(f"unknown key component {key!r}")

    @property
    def m_x2(self) -> int:
        """Ceiling split of the W_X index space by m_x1."""
        return ceil(self.m_x / self.m_x1)

    @property
    def m_y2(self) -> int:
        return ceil(self.m_y / self.m_y1)

    def key_sizes(self) -> dict[str, int]:
        """Alphabet size of every key component the assignment actually uses."""
        used = sorted({k for k in self.key_assignment.values() if k is not None})
        return {k: getattr(self, _KEY_SIZES[k]) for k in used}


def _component_sizes(scheme: CipherScheme) -> dict[str, int]:
    return {"x1": scheme.m_x1, "cx": scheme.m_cx, "y1": scheme.m_y1, "cy": scheme.m_cy}


def _masked(value: int, comp: str, keys: Mapping[str, int], scheme: CipherScheme, sign: int) -> int:
    key_name = scheme.key_assignment.get(comp)
    if key_name is None:
        return value
    size = _component_sizes(scheme)[comp]
    return (value + sign * int(keys.get(key_name, 0))) % size


def build_ciphertexts(
    wx: int,
    wy: int,
    wcx: int,
    wcy: int,
    keys: Mapping[str, int],
    scheme: CipherScheme,
    branch: Optional[str] = None,
) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """Assemble the two codewords (masked X split, clear X remainder, masked
    common X) and the Y analogue.  ``branch`` overrides the scheme's key
    assignment with one of the named templates."""
    if branch is not None:
        scheme = CipherScheme(
            m_x=scheme.m_x,
            m_y=scheme.m_y,
            m_x1=scheme.m_x1,
            m_y1=scheme.m_y1,
            m_cx=scheme.m_cx,
            m_cy=scheme.m_cy,
            key_assignment=_branch_assignment(branch),
        )
    if not 0 <= wx < scheme.m_x:
        raise UsageError(f"wx={wx} outside index space of size {scheme.m_x}")
    if not 0 <= wy < scheme.m_y:
        raise UsageError(f"wy={wy} outside index space of size {scheme.m_y}")
    if not 0 <= wcx < scheme.m_cx:
        raise UsageError(f"wcx={wcx} outside index space of size {scheme.m_cx}")
    if not 0 <= wcy < scheme.m_cy:
        raise UsageError(f"wcy={wcy} outside index space of size {scheme.m_cy}")
    for key_name, size in scheme.key_sizes().items():
        if not 0 <= int(keys.get(key_name, 0)) < size:
            raise UsageError(f"key {key_name} outside index space of size {size}")

    wx1, wx2 = split_index(wx, scheme.m_x1)
    wy1, wy2 = split_index(wy, scheme.m_y1)
    w1 = (_masked(wx1, "x1", keys, scheme, +1), wx2, _masked(wcx, "cx", keys, scheme, +1))
    w2 = (_masked(wy1, "y1", keys, scheme, +1), wy2, _masked(wcy, "cy", keys, scheme, +1))
    return w1, w2


def decrypt_ciphertexts(
    w1: tuple[int, int, int],
    w2: tuple[int, int, int],
    keys: Mapping[str, int],
    scheme: CipherScheme,
    branch: Optional[str] = None,
) -> tuple[int, int, int, int]:
    """Invert ``build_ciphertexts``: returns (wx, wy, wcx, wcy)."""
    if branch is not None:
        scheme = CipherScheme(
            m_x=scheme.m_x,
            m_y=scheme.m_y,
            m_x1=scheme.m_x1,
            m_y1=scheme.m_y1,
            m_cx=scheme.m_cx,
            m_cy=scheme.m_cy,
            key_assignment=_branch_assignment(branch),
        )
    wx1 = _masked(w1[0], "x1", keys, scheme, -1)
    wcx = _masked(w1[2], "cx", keys, scheme, -1)
    wy1 = _masked(w2[0], "y1", keys, scheme, -1)
    wcy = _masked(w2[2], "cy", keys, scheme, -1)
    return wx1 + scheme.m_x1 * w1[1], wy1 + scheme.m_y1 * w2[1], wcx, wcy


def _branch_assignment(branch: str) -> dict[str, Optional[str]]:
    if branch not in BRANCHES:
        raise UsageError(f"unknown branch {branch!r}; expected one of {sorted(BRANCHES)}")
    return dict(BRANCHES[branch])


# -- key-size derivation --------------------------------------------------------


def _pow2_size(rate_bits: float, K: int, errors: dict[str, float], name: str) -> int:
    """Nearest integer >= 1 to 2**(K*rate), recording the rounding error."""
    exact = 2.0 ** (K * rate_bits)
    size = max(1, round(exact))
    errors[name] = abs(size - exact)
    return size


def derive_key_sizes(info: InfoSummary, K: int, h_target: float, case: str) -> CipherScheme:
    """Sub-codeword and key alphabet sizes for a security target.

    For targets above the shared information the first sub-codewords are
    split off and padded; at or below it only the common component carries a
    key.  ``h_target`` is the governing level: the joint target for the
    "joint" case, the larger individual target otherwise.
    """
    if case not in CASES:
        raise UsageError(f"unknown case {case!r}; expected one of {CASES}")
    limit = info.h_xy if case == "joint" else max(info.h_x, info.h_y)
    if not 0 <= h_target <= limit + 1e-12:
        raise DomainError(f"h_target={h_target} outside 0..{limit:.6g} for case {case!r}")

    errors: dict[str, float] = {}
    m_x = _pow2_size(info.h_x_given_y, K, errors, "m_x")
    m_y = _pow2_size(info.h_y_given_x, K, errors, "m_y")
    if h_target > info.i_xy:
        m_y1 = _pow2_size(h_target - info.i_xy, K, errors, "m_y1")
        m_x1 = min(_pow2_size(info.h_x_given_y, K, errors, "m_x1"), m_y1)
        m_cx = _pow2_size(info.i_xy, K, errors, "m_cx")
        m_cy = 1
        assignment = BRANCHES["reused-pad"]
    else:
        m_x1 = m_y1 = 1
        m_cx = _pow2_size(h_target, K, errors, "m_cx")
        m_cy = _pow2_size(max(0.0, info.i_xy - h_target), K, errors, "m_cy")
        assignment = BRANCHES["common-only"]
    return CipherScheme(
        m_x=m_x,
        m_y=m_y,
        m_x1=m_x1,
        m_y1=m_y1,
        m_cx=m_cx,
        m_cy=m_cy,
        key_assignment=assignment,
        rounding_errors=errors,
    )


# -- region predicates ------------------------------------------------------------


@dataclass(frozen=True)
class RegionQuery:
    """A rate point plus security targets and the per-symbol side constants."""

    r_x: float
    r_y: float
    r_kx: float
    r_ky: float
    h_x: float = 0.0
    h_y: float = 0.0
    h_xy: float = 0.0
    alpha_cx: float = 0.0
    alpha_cy: float = 0.0
    alpha_z: float = 0.0
    i_xyz: float = 0.0

    def __post_init__(self):
        for name in ("r_x", "r_y", "r_kx", "r_ky"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be >= 0")
        for name in ("h_x", "h_y", "h_xy"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be >= 0")

    @classmethod
    def from_json(cls, data: dict) -> "RegionQuery":
        try:
            return cls(**{k: float(v) for k, v in data.items()})
        except TypeError as exc:
            raise ValidationError(f"bad region query: {exc}") from exc


@dataclass(frozen=True)
class Constraint:
    name: str
    lhs: float
    rhs: float

    @property
    def satisfied(self) -> bool:
        return bool(self.lhs >= self.rhs)


@dataclass(frozen=True)
class RegionVerdict:
    status: str  # "inside" | "outside" | "out_of_domain"
    constraints: tuple[Constraint, ...]
    violated: tuple[str, ...]
    domain_note: str = ""

    @property
    def inside(self) -> bool:
        return self.status == "inside"


def region_membership(q: RegionQuery, case: str, info: InfoSummary) -> RegionVerdict:
    """Check a rate point against the admissible region for a security case.

    Cases: "joint" keys against the joint target h_xy; "individual" keys
    against max(h_x, h_y); "y-only" is the individual case with the X
    target forced to zero.  Precondition violations on the targets report
    "out_of_domain" rather than outside.
    """
    if case not in CASES:
        raise UsageError(f"unknown case {case!r}; expected one of {CASES}")
    if case == "y-only":
        reduced = RegionQuery(
            r_x=q.r_x,
            r_y=q.r_y,
            r_kx=q.r_kx,
            r_ky=q.r_ky,
            h_x=0.0,
            h_y=q.h_y,
            h_xy=q.h_xy,
            alpha_cx=q.alpha_cx,
            alpha_cy=q.alpha_cy,
            alpha_z=q.alpha_z,
            i_xyz=q.i_xyz,
        )
        return region_membership(reduced, "individual", info)

    if case == "joint":
        limit = info.h_xy - q.alpha_cx - q.alpha_cy + q.i_xyz
        if not 0 <= q.h_xy <= limit + 1e-12:
            return RegionVerdict(
                status="out_of_domain",
                constraints=(),
                violated=(),
                domain_note=f"h_xy={q.h_xy:.6g} outside 0..{limit:.6g}",
            )
        key_constraint = Constraint("r_kx + r_ky >= h_xy", q.r_kx + q.r_ky, q.h_xy)
    else:
        limit_x = info.h_x - q.alpha_cx
        limit_y = info.h_y - q.alpha_cy
        if not 0 <= q.h_x <= limit_x + 1e-12 or not 0 <= q.h_y <= limit_y + 1e-12:
            return RegionVerdict(
                status="out_of_domain",
                constraints=(),
                violated=(),
                domain_note=(
                    f"h_x={q.h_x:.6g} outside 0..{limit_x:.6g} or "
                    f"h_y={q.h_y:.6g} outside 0..{limit_y:.6g}"
                ),
            )
        key_constraint = Constraint(
            "r_kx + r_ky >= max(h_x, h_y)", q.r_kx + q.r_ky, max(q.h_x, q.h_y)
        )

    constraints = (
        Constraint("r_x >= h(x|y)", q.r_x, info.h_x_given_y),
        Constraint("r_y >= h(y|x)", q.r_y, info.h_y_given_x),
        Constraint("r_x + r_y >= h(x,y)", q.r_x + q.r_y, info.h_xy),
        key_constraint,
    )
    violated = tuple(c.name for c in constraints if not c.satisfied)
    return RegionVerdict(
        status="inside" if not violated else "outside",
        constraints=constraints,
        violated=violated,
    )


def security_verdict(measured: float, target: float, eps: float = SECURITY_EPS) -> bool:
    """Desk-scale check that a measured level meets its target within the
    empirical slack; the raw values are reported alongside, never replaced."""
    return bool(measured >= target - eps)


def guaranteed_level(h_target: float, alpha_cx: float, alpha_cy: float, i_xyz: float) -> float:
    """The level a keyed construction guarantees once the wiretapped source's
    correlated portions are discounted: h_target - a_cx - a_cy + i(x;y;z)."""
    return h_target - alpha_cx - alpha_cy + i_xyz


def alpha_defaults(info: InfoSummary, mu: int, K: int) -> tuple[float, float, float]:
    """Per-symbol shares of the wiretapped source correlated with X, with Y,
    and private to Z: (mu/K) * (I(X;Z), I(Y;Z), H(Z|X,Y))."""
    if K < 1 or not 0 <= mu <= K:
        raise DomainError(f"need 0 <= mu <= K with K >= 1, got mu={mu}, K={K}")
    frac = mu / K
    h_z_given_xy = info.h_z - info.i_xz - info.i_yz + info.i_xyz
    return frac * info.i_xz, frac * info.i_yz, frac * h_z_given_xy


# -- exact security measurement -----------------------------------------------


@dataclass(frozen=True)
class SecurityMeasurement:
    """Measured security levels, bits per symbol."""

    h_x_hat: float
    h_y_hat: float
    h_xy_hat: float
    key_bits: float  # total key material, bits per symbol


def desk_scheme(
    s: PartitionScheme, branch: str = "reused-pad", full_split: bool = True
) -> CipherScheme:
    """Cipher scheme whose index spaces are the syndrome bit patterns of the
    partition: W_X/W_Y are the private-role segments read as integers and
    W_CX/W_CY the common-role segments.  With ``full_split`` the first
    sub-codewords cover the whole private spaces (so the pads, when present,
    cover every private bit)."""
    bits = _portion_bits(s)
    m_x = 1 << len(bits["x_private"])
    m_y = 1 << len(bits["y_private"])
    return CipherScheme(
        m_x=m_x,
        m_y=m_y,
        m_x1=m_x if full_split else 1,
        m_y1=m_y if full_split else 1,
        m_cx=1 << len(bits["x_common"]),
        m_cy=1 << len(bits["y_common"]),
        key_assignment=_branch_assignment(branch),
    )


def _portion_bits(s: PartitionScheme) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {}
    for side in ("x", "y"):
        for role in ("private", "common"):
            out[f"{side}_{role}"] = [
                i for i in range(s.syndrome_len(side)) if s.role_of(side, i) == role
            ]
    return out


def measure_security(
    scheme: CipherScheme,
    model: SequenceModel,
    s: PartitionScheme,
    mu: int = 0,
    branch: Optional[str] = None,
) -> SecurityMeasurement:
    """Exact per-symbol conditional entropies of the sources given both
    codewords and the leaked Z prefix, enumerating plaintexts x keys."""
    if branch is not None:
        scheme = CipherScheme(
            m_x=scheme.m_x,
            m_y=scheme.m_y,
            m_x1=scheme.m_x1,
            m_y1=scheme.m_y1,
            m_cx=scheme.m_cx,
            m_cy=scheme.m_cy,
            key_assignment=_branch_assignment(branch),
        )
    if not model.is_binary or model.K != s.n:
        raise UsageError("measurement needs a binary model with K equal to the code length")
    if not 0 <= mu <= model.K:
        raise DomainError(f"mu must lie in 0..{model.K}, got {mu}")

    X, Y, Z, probs = model.support_arrays()
    bits = _portion_bits(s)
    tx = (X.astype(np.int64) @ s.g_x.cells.astype(np.int64)) % 2
    ty = (Y.astype(np.int64) @ s.g_y.cells.astype(np.int64)) % 2

    def packed(mat: np.ndarray, cols: list[int]) -> np.ndarray:
        code = np.zeros(mat.shape[0], dtype=np.int64)
        for c in cols:
            code = (code << 1) | mat[:, c]
        return code

    # Collapse support rows that agree on everything the measurement sees:
    # (x, y, leaked z prefix).  Unobserved z symbols only add multiplicity.
    x_full = packed(X, list(range(model.K)))
    y_full = packed(Y, list(range(model.K)))
    z_pref = packed(Z, list(range(mu)))
    row_key = (x_full << model.K | y_full) << mu | z_pref
    _, keep, inv = np.unique(row_key, return_index=True, return_inverse=True)
    probs = np.bincount(inv, weights=probs)
    X, Y, Z = X[keep], Y[keep], Z[keep]
    tx, ty = tx[keep], ty[keep]
    n_rows = X.shape[0]

    wx = packed(tx, bits["x_private"])
    wcx = packed(tx, bits["x_common"])
    wy = packed(ty, bits["y_private"])
    wcy = packed(ty, bits["y_common"])
    if wx.size and (wx.max() >= scheme.m_x or wy.max() >= scheme.m_y):
        raise UsageError("scheme index spaces are smaller than the syndrome portions")
    if wcx.size and (wcx.max() >= scheme.m_cx or wcy.max() >= scheme.m_cy):
        raise UsageError("scheme common spaces are smaller than the syndrome portions")

    key_sizes = scheme.key_sizes()
    key_names = list(key_sizes)
    key_space = 1
    for size in key_sizes.values():
        key_space *= size
    if n_rows * key_space > SUPPORT_GUARD:
        raise CapacityError(
            f"{n_rows} support rows x {key_space} keys exceeds guard {SUPPORT_GUARD}"
        )

    key_grid = np.array(
        list(itertools.product(*(range(key_sizes[k]) for k in key_names))), dtype=np.int64
    ).reshape(max(key_space, 1), len(key_names))

    idx = np.repeat(np.arange(n_rows), key_space)
    kidx = np.tile(np.arange(key_space), n_rows)
    weights = np.repeat(probs, key_space) / key_space
    keys = {name: key_grid[kidx, j] for j, name in enumerate(key_names)}

    wx1 = wx[idx] % scheme.m_x1
    wx2 = wx[idx] // scheme.m_x1
    wy1 = wy[idx] % scheme.m_y1
    wy2 = wy[idx] // scheme.m_y1

    def mask(values: np.ndarray, comp: str, size: int) -> np.ndarray:
        key_name = scheme.key_assignment.get(comp)
        if key_name is None or key_name not in keys:
            return values
        return (values + keys[key_name]) % size

    comps = [
        mask(wx1, "x1", scheme.m_x1),
        wx2,
        mask(wcx[idx], "cx", scheme.m_cx),
        mask(wy1, "y1", scheme.m_y1),
        wy2,
        mask(wcy[idx], "cy", scheme.m_cy),
    ]
    sizes = [scheme.m_x1, scheme.m_x2, scheme.m_cx, scheme.m_y1, scheme.m_y2, scheme.m_cy]
    obs = np.zeros(len(idx), dtype=np.int64)
    for comp, size in zip(comps, sizes):
        obs = obs * size + comp
    for i in range(mu):
        obs = (obs << 1) | Z[idx, i]

    x_code = packed(X, list(range(model.K)))[idx]
    y_code = packed(Y, list(range(model.K)))[idx]

    def entropy_of(code: np.ndarray) -> float:
        _, inv = np.unique(code, return_inverse=True)
        mass = np.bincount(inv, weights=weights)
        mass = mass[mass > 0]
        return float(-(mass * np.log2(mass)).sum())

    h_obs = entropy_of(obs)
    shift = 1 << model.K
    h_x_hat = entropy_of(obs * shift + x_code) - h_obs
    h_y_hat = entropy_of(obs * shift + y_code) - h_obs
    h_xy_hat = entropy_of((obs * shift + x_code) * shift + y_code) - h_obs
    key_bits = sum(log2(v) for v in key_sizes.values())
    return SecurityMeasurement(
        h_x_hat=h_x_hat / model.K,
        h_y_hat=h_y_hat / model.K,
        h_xy_hat=h_xy_hat / model.K,
        key_bits=key_bits / model.K,
    )
