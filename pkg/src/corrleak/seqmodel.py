"""Length-K sequence-triple models for (X^K, Y^K, Z^K).

Two model kinds are supported:

* ``iid`` — independent product extension of a per-symbol ``JointPmf``;
* ``hamming`` — uniform over all binary triples with d_H(x, y) <= d_xy_max
  and d_H(y, z) <= d_yz_max.  Uniformity is the maximum-entropy completion
  of the distance constraints and reproduces the usual counting results.

Enumeration is deterministic and lexicographic on (y, x, z), with position 0
as the most significant symbol, so oracle outputs are reproducible.  Exact
enumeration is guarded at ``SUPPORT_GUARD`` triples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, Optional

import numpy as np

from .errors import CapacityError, DomainError, UsageError, ValidationError
from .info import JointPmf, ZERO_EPS

#: Exact enumeration refuses supports larger than this many triples.
SUPPORT_GUARD = 1 << 26


@dataclass(frozen=True)
class SequenceTriple:
    """One support point: three length-K symbol vectors and their probability."""

    x: tuple[int, ...]
    y: tuple[int, ...]
    z: tuple[int, ...]
    prob: float


@dataclass(frozen=True)
class SequenceModel:
    """Distribution over length-K sequence triples."""

    kind: str  # "iid" | "hamming"
    K: int
    base: Optional[JointPmf] = None
    d_xy_max: int = 1
    d_yz_max: int = 1

    def __post_init__(self):
        if self.kind not in ("iid", "hamming"):
            raise ValidationError(f"unknown model kind {self.kind!r}")
        if self.K < 1:
            raise ValidationError(f"K must be >= 1, got {self.K}")
        if self.kind == "iid":
            if self.base is None:
                raise ValidationError("iid model requires a base JointPmf")
        else:
            if not 0 <= self.d_xy_max <= self.K or not 0 <= self.d_yz_max <= self.K:
                raise ValidationError("distance bounds must lie in 0..K")
        if self.support_size() > SUPPORT_GUARD:
            raise CapacityError(
                f"support of {self.support_size()} triples exceeds guard {SUPPORT_GUARD}"
            )

    @property
    def is_binary(self) -> bool:
        if self.kind == "hamming":
            return True
        return max(self.base.alphabet_sizes) <= 2  # type: ignore[union-attr]

    def support_size(self) -> int:
        """Number of enumerated triples (including zero-probability iid cells)."""
        if self.kind == "iid":
            nx, ny, nz = self.base.alphabet_sizes  # type: ignore[union-attr]
            return (nx * ny * nz) ** self.K
        ball_xy = _ball_size(self.K, self.d_xy_max)
        ball_yz = _ball_size(self.K, self.d_yz_max)
        return (1 << self.K) * ball_xy * ball_yz

    def iter_support(self) -> Iterator[SequenceTriple]:
        """Yield support triples with prob > 0 in lexicographic (y, x, z) order."""
        if self.kind == "hamming":
            yield from self._iter_hamming()
        else:
            yield from self._iter_iid()

    def _iter_hamming(self) -> Iterator[SequenceTriple]:
        p = 1.0 / self.support_size()
        for y in itertools.product((0, 1), repeat=self.K):
            x_ball = _sorted_ball(y, self.d_xy_max)
            z_ball = _sorted_ball(y, self.d_yz_max)
            for x in x_ball:
                for z in z_ball:
                    yield SequenceTriple(x=x, y=y, z=z, prob=p)

    def _iter_iid(self) -> Iterator[SequenceTriple]:
        base = self.base
        nx, ny, nz = base.alphabet_sizes  # type: ignore[union-attr]
        probs = base.probs  # type: ignore[union-attr]
        for y in itertools.product(range(ny), repeat=self.K):
            for x in itertools.product(range(nx), repeat=self.K):
                for z in itertools.product(range(nz), repeat=self.K):
                    p = 1.0
                    for xi, yi, zi in zip(x, y, z):
                        p *= probs[xi, yi, zi]
                        if p <= 0.0:
                            break
                    if p > ZERO_EPS:
                        yield SequenceTriple(x=x, y=y, z=z, prob=p)

    def support_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Support as (X, Y, Z, probs) arrays; rows follow ``iter_support`` order."""
        xs, ys, zs, ps = [], [], [], []
        for t in self.iter_support():
            xs.append(t.x)
            ys.append(t.y)
            zs.append(t.z)
            ps.append(t.prob)
        return (
            np.array(xs, dtype=np.uint8),
            np.array(ys, dtype=np.uint8),
            np.array(zs, dtype=np.uint8),
            np.array(ps, dtype=float),
        )


def _ball_size(K: int, d: int) -> int:
    return sum(comb(K, i) for i in range(d + 1))


def _sorted_ball(center: tuple[int, ...], d: int) -> list[tuple[int, ...]]:
    """All vectors within Hamming distance d of center, in lexicographic order."""
    K = len(center)
    out = {center}
    for radius in range(1, d + 1):
        for flips in itertools.combinations(range(K), radius):
            v = list(center)
            for i in flips:
                v[i] ^= 1
            out.add(tuple(v))
    return sorted(out)


def enumerate_support(model: SequenceModel) -> Iterator[SequenceTriple]:
    """Stream the support in deterministic lexicographic (y, x, z) order."""
    return model.iter_support()


def build_model(spec: dict) -> SequenceModel:
    """Build a model from its JSON description.

    Schemas: ``{"kind": "hamming", "K": 7, "d_xy": 1, "d_yz": 1}`` or
    ``{"kind": "iid", "K": 3, "pmf": {"alphabets": [...], "probs": [...]}}``.
    """
    if not isinstance(spec, dict):
        raise ValidationError("model spec must be a JSON object")
    kind = spec.get("kind")
    if kind == "hamming":
        return SequenceModel(
            kind="hamming",
            K=int(spec.get("K", 0)),
            d_xy_max=int(spec.get("d_xy", 1)),
            d_yz_max=int(spec.get("d_yz", 1)),
        )
    if kind == "iid":
        if "pmf" not in spec:
            raise ValidationError("model.pmf: required for iid models")
        return SequenceModel(
            kind="iid",
            K=int(spec.get("K", 0)),
            base=JointPmf.from_json(spec["pmf"]),
        )
    raise ValidationError(f"model.kind: unknown kind {kind!r}")


def z_consistency_counts(K: int, mu: int) -> tuple[int, int, int]:
    """Candidate-sequence counts after observing the first ``mu`` symbols of Z.

    For the unit-distance binary model, the sequences within distance 1 of
    some completion of the observed prefix split into ``2**(K-mu)`` distinct
    sequences that repeat ``K-mu+1`` times and ``mu * 2**(K-mu)`` sequences
    occurring once.  Returns ``(repeated_count, repeated_multiplicity,
    singleton_count)``; the total with multiplicity is ``2**(K-mu) * (K+1)``.
    """
    if not 0 < mu <= K:
        raise DomainError(f"mu must lie in 1..K, got mu={mu}, K={K}")
    repeated = 1 << (K - mu)
    return repeated, K - mu + 1, mu * repeated


def per_symbol_entropy(model: SequenceModel, total_bits: float) -> float:
    """Per-symbol rate (1/K) * total_bits used wherever quantities are per symbol."""
    if model.K < 1:
        raise UsageError("model has no symbols")
    return total_bits / model.K


def sequence_summary(model: SequenceModel):
    """Per-symbol information summary of the sequence law, by enumeration.

    Sequence-level entropies are divided by K, so for iid models these agree
    with the base pmf's summary.
    """
    from .info import InfoSummary  # local import to avoid a cycle at module load

    groups: dict[str, dict] = {key: {} for key in ("x", "y", "z", "xy", "xz", "yz", "xyz")}
    pick = {
        "x": lambda t: t.x,
        "y": lambda t: t.y,
        "z": lambda t: t.z,
        "xy": lambda t: (t.x, t.y),
        "xz": lambda t: (t.x, t.z),
        "yz": lambda t: (t.y, t.z),
        "xyz": lambda t: (t.x, t.y, t.z),
    }
    for t in model.iter_support():
        for key, fn in pick.items():
            val = fn(t)
            groups[key][val] = groups[key].get(val, 0.0) + t.prob

    def h(key: str) -> float:
        return float(-sum(p * np.log2(p) for p in groups[key].values()))

    hx, hy, hz = h("x"), h("y"), h("z")
    hxy, hxz, hyz, hxyz = h("xy"), h("xz"), h("yz"), h("xyz")
    i_xy = hx + hy - hxy
    i_xy_given_z = hxz + hyz - hxyz - hz
    K = model.K
    return InfoSummary(
        h_x=hx / K,
        h_y=hy / K,
        h_z=hz / K,
        h_xy=hxy / K,
        h_x_given_y=(hxy - hy) / K,
        h_y_given_x=(hxy - hx) / K,
        i_xy=i_xy / K,
        i_xz=(hx + hz - hxz) / K,
        i_yz=(hy + hz - hyz) / K,
        i_xyz=(i_xy - i_xy_given_z) / K,
    )
