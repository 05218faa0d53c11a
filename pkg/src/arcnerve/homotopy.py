"""Closed-form homotopy types of N(n, k) and its clique complex."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .circle import ArcCollection


@dataclass(frozen=True)
class HomotopyType:
    """Either a point (``dim is None``) or a wedge of ``count`` spheres of one dimension."""

    dim: Optional[int] = None
    count: int = 0

    def __post_init__(self):
        if self.dim is None:
            if self.count != 0:
                raise ValueError("a contractible type has no spheres")
            return
        if self.dim < 0 or self.count < 0:
            raise ValueError("dimension and count must be nonnegative")
        if self.count == 0:
            object.__setattr__(self, "dim", None)

    @classmethod
    def contractible(cls) -> "HomotopyType":
        return cls()

    @classmethod
    def wedge(cls, dim: int, count: int) -> "HomotopyType":
        return cls(dim, count)

    @classmethod
    def sphere(cls, dim: int) -> "HomotopyType":
        return cls(dim, 1)

    @property
    def is_contractible(self) -> bool:
        return self.dim is None

    def suspend(self, times: int = 1) -> "HomotopyType":
        """Unreduced suspension, applied ``times`` times."""
        if self.is_contractible:
            return self
        return HomotopyType(self.dim + times, self.count)

    def reduced_betti(self) -> dict:
        return {} if self.is_contractible else {self.dim: self.count}

    def to_dict(self) -> dict:
        if self.is_contractible:
            return {"type": "contractible"}
        return {"type": "wedge", "dim": self.dim, "count": self.count}

    @classmethod
    def from_dict(cls, d: dict) -> "HomotopyType":
        if d.get("type") == "contractible":
            return cls()
        return cls(int(d["dim"]), int(d["count"]))

    def __str__(self) -> str:
        if self.is_contractible:
            return "*"
        if self.count == 1:
            return f"S^{self.dim}"
        return f"vee^{self.count} S^{self.dim}"


def _check(n: int, k: int) -> None:
    if n < 1 or k < 0:
        raise ValueError(f"need n >= 1 and k >= 0, got n={n}, k={k}")


def nerve_homotopy(n: int, k: int) -> HomotopyType:
    """Homotopy type of N(n, k)."""
    _check(n, k)
    if k >= n - 1:
        return HomotopyType.contractible()
    m = n - k
    l, r = divmod(k, m)
    if r == 0:
        return HomotopyType.wedge(2 * l, n - k - 1)
    return HomotopyType.sphere(2 * l + 1)


def clique_homotopy(n: int, k: int) -> HomotopyType:
    """Homotopy type of the clique complex of the k-th power of the n-cycle."""
    _check(n, k)
    if 2 * k >= n:
        return HomotopyType.contractible()
    m = n - 2 * k
    l, r = divmod(k, m)
    if r == 0:
        return HomotopyType.wedge(2 * l, n - 2 * k - 1)
    return HomotopyType.sphere(2 * l + 1)


def nerve_homotopy_by_recursion(n: int, k: int) -> HomotopyType:
    """Same answer as :func:`nerve_homotopy`, via N(n, k) ~ double suspension of N(k, 2k - n)."""
    _check(n, k)
    lifts = 0
    while True:
        if k >= n - 1:
            base = HomotopyType.contractible()
        elif k == 0:
            base = HomotopyType.wedge(0, n - 1)
        elif 2 * k < n:
            base = HomotopyType.sphere(1)
        else:
            n, k = k, 2 * k - n
            lifts += 2
            continue
        return base.suspend(lifts)


def connectivity(h: HomotopyType) -> float:
    """Largest c such that ``h`` is c-connected (``math.inf`` for a point)."""
    if h.is_contractible:
        return math.inf
    return h.dim - 1


def collection_homotopy(collection: ArcCollection, variant: str = "nerve", *, backend=None):
    """Homotopy type of the nerve or clique complex of an arc collection.

    Returns ``(HomotopyType, ReductionResult)``.
    """
    from .reduce import reduce_to_minimal

    if variant not in ("nerve", "clique"):
        raise ValueError(f"variant must be 'nerve' or 'clique', got {variant!r}")
    res = reduce_to_minimal(collection, backend=backend)
    fn = nerve_homotopy if variant == "nerve" else clique_homotopy
    return fn(res.n_prime, res.k_prime), res
