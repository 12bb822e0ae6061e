"""Partition sets and the weight masks that make a network K-separable.

Qudit labels inside a :class:`PartitionSet` are 1-based, as in the string
grammar ``"1,2|2,3|1,3"``. Hidden-unit and visible-unit indices in
:class:`HiddenPartition` and masks are 0-based array positions.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InconsistentPartitionsError, ConfigError


@dataclass(frozen=True)
class Violation:
    invariant: str
    indices: tuple

    def __str__(self):
        return f"{self.invariant}: {self.indices}"


@dataclass(frozen=True)
class PartitionSet:
    blocks: tuple
    n: int
    mode: str = "disjoint"

    def __post_init__(self):
        if self.mode not in ("disjoint", "nondisjoint"):
            raise ConfigError(f"unknown separability mode {self.mode!r}")
        object.__setattr__(self, "blocks", tuple(tuple(int(i) for i in b) for b in self.blocks))

    @classmethod
    def parse(cls, text: str, n: int = None, mode: str = None):
        """Parse ``"1,2|3"``; ``n`` defaults to the largest label, ``mode`` to
        disjoint unless the blocks overlap."""
        try:
            blocks = tuple(tuple(int(tok) for tok in part.split(",") if tok.strip())
                           for part in text.replace(" ", "").split("|"))
        except ValueError as exc:
            raise ConfigError(f"bad partition string {text!r}: {exc}") from exc
        if n is None:
            n = max((max(b) for b in blocks if b), default=0)
        if mode is None:
            flat = [i for b in blocks for i in b]
            mode = "disjoint" if len(flat) == len(set(flat)) else "nondisjoint"
        return cls(blocks, n, mode)

    def __str__(self):
        return "|".join(",".join(str(i) for i in b) for b in self.blocks)

    @property
    def K(self) -> int:
        return len(self.blocks)

    def is_fully_separable(self) -> bool:
        return all(len(b) == 1 for b in self.blocks) and not validate(self)

    def is_free(self) -> bool:
        return any(set(b) >= set(range(1, self.n + 1)) for b in self.blocks)

    def blocks_of(self, qudit: int):
        """Indices of blocks containing the 1-based ``qudit``."""
        return [l for l, b in enumerate(self.blocks) if qudit in b]

    def to_json(self):
        return {"blocks": [list(b) for b in self.blocks], "n": self.n, "mode": self.mode,
                "text": str(self)}


def validate(K: PartitionSet):
    """Every violated partition invariant, as a list (empty when valid)."""
    out = []
    labels = set(range(1, K.n + 1))
    for l, b in enumerate(K.blocks):
        if not b:
            out.append(Violation("empty block", (l,)))
        bad = [i for i in b if i not in labels]
        if bad:
            out.append(Violation("label out of range", tuple(bad)))
        if len(set(b)) != len(b):
            out.append(Violation("repeated label in block", (l,)))
    covered = set(i for b in K.blocks for i in b)
    missing = sorted(labels - covered)
    if missing:
        out.append(Violation("uncovered qudits", tuple(missing)))
    seen = {}
    for l, b in enumerate(K.blocks):
        key = frozenset(b)
        if key in seen:
            out.append(Violation("duplicate block", (seen[key], l)))
        seen.setdefault(key, l)
    if K.mode == "disjoint":
        for m, l in combinations(range(K.K), 2):
            common = sorted(set(K.blocks[m]) & set(K.blocks[l]))
            if common:
                out.append(Violation("blocks intersect", (m, l) + tuple(common)))
    return out


@dataclass(frozen=True)
class HiddenPartition:
    blocks: tuple
    n_h: int

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(int(j) for j in b) for b in self.blocks))

    @classmethod
    def proportional(cls, K: PartitionSet, n_h: int, sizes=None):
        """Split ``n_h`` hidden units in proportion to block sizes.

        The rounding remainder goes to the largest block. ``sizes`` overrides
        the per-block counts.
        """
        if sizes is None:
            weights = np.array([len(b) for b in K.blocks], dtype=float)
            sizes = np.floor(n_h * weights / weights.sum()).astype(int)
            sizes[int(np.argmax(weights))] += n_h - int(sizes.sum())
            # entangling blocks need at least one hidden unit
            for l, b in enumerate(K.blocks):
                if len(b) >= 2 and sizes[l] == 0:
                    donor = int(np.argmax(sizes))
                    if sizes[donor] <= 1:
                        raise InconsistentPartitionsError(
                            f"{n_h} hidden units cannot serve {K.K} blocks of {K}")
                    sizes[donor] -= 1
                    sizes[l] += 1
        sizes = [int(s) for s in sizes]
        if len(sizes) != K.K or sum(sizes) != n_h:
            raise InconsistentPartitionsError(f"hidden sizes {sizes} do not fit {K} with n_h={n_h}")
        blocks, pos = [], 0
        for s in sizes:
            blocks.append(tuple(range(pos, pos + s)))
            pos += s
        return cls(tuple(blocks), n_h)


def build_mask(K: PartitionSet, H: HiddenPartition, encoding, n_v: int, n_h: int) -> np.ndarray:
    """Allowed-connection matrix of shape (n_v * width, n_h).

    A visible unit may connect to hidden unit ``j`` iff its qudit lies in some
    block ``k_l`` with ``j`` in ``h_l``. All units of a qudit move together.
    """
    if len(H.blocks) != K.K:
        raise InconsistentPartitionsError(f"{K.K} qudit blocks but {len(H.blocks)} hidden blocks")
    if H.n_h != n_h:
        raise InconsistentPartitionsError(f"hidden partition covers {H.n_h} units, ansatz has {n_h}")
    if K.n != n_v:
        raise InconsistentPartitionsError(f"partition is over {K.n} qudits, ansatz has {n_v}")
    w = encoding.width
    allowed = np.zeros((n_v * w, n_h), dtype=bool)
    for l, block in enumerate(K.blocks):
        for q in block:
            rows = slice((q - 1) * w, q * w)
            for j in H.blocks[l]:
                allowed[rows, j] = True
    return allowed


def mask_for(K: PartitionSet, encoding, n_h: int, sizes=None) -> np.ndarray:
    return build_mask(K, HiddenPartition.proportional(K, n_h, sizes), encoding, K.n, n_h)


def free(n: int) -> PartitionSet:
    return PartitionSet((tuple(range(1, n + 1)),), n, "disjoint")


def fully_separable(n: int) -> PartitionSet:
    return PartitionSet(tuple((i,) for i in range(1, n + 1)), n, "disjoint")


def presets(n: int = 3):
    """Named partition sets; the degenerate families list every permutation."""
    out = {"FS": fully_separable(n), "free": free(n)}
    if n == 3:
        out["BS"] = [PartitionSet(((1, 2), (3,)), 3), PartitionSet(((1, 3), (2,)), 3),
                     PartitionSet(((2, 3), (1,)), 3)]
        out["GHZ"] = [PartitionSet(((1, 2), (1, 3)), 3, "nondisjoint"),
                      PartitionSet(((1, 2), (2, 3)), 3, "nondisjoint"),
                      PartitionSet(((1, 3), (2, 3)), 3, "nondisjoint")]
        out["W"] = PartitionSet(((1, 2), (2, 3), (1, 3)), 3, "nondisjoint")
    return out
