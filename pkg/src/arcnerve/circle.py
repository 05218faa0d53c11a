"""Exact arithmetic for points and closed arcs on the circle R/Z.

Angles are :class:`fractions.Fraction` values in ``[0, 1)``, a fraction of the
circumference, with the positive direction read as clockwise.  Nothing in this
module touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

Number = Union[int, str, Fraction, Decimal]

OPENING = 0
CLOSING = 1


def as_fraction(value: Number) -> Fraction:
    """Convert ``value`` to an exact rational.

    Strings may be ``"p/q"`` or decimal literals (``"0.125"``, ``"1e-3"``);
    floats are rejected because they are already rounded.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}; pass a string or Fraction")
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    return Fraction(value)


def angle(value: Number) -> Fraction:
    """Reduce ``value`` modulo 1 to a point of the circle."""
    return as_fraction(value) % 1


@dataclass(frozen=True)
class Arc:
    """The closed clockwise arc ``[start, start + length]`` on R/Z.

    A length of at least 1 is the whole circle and is stored as
    ``Arc(0, 1)``.  Length 0 is a point arc.
    """

    start: Fraction
    length: Fraction

    def __post_init__(self) -> None:
        length = as_fraction(self.length)
        if length < 0:
            raise ValueError(f"arc length must be nonnegative, got {length}")
        if length >= 1:
            object.__setattr__(self, "start", Fraction(0))
            object.__setattr__(self, "length", Fraction(1))
        else:
            object.__setattr__(self, "start", angle(self.start))
            object.__setattr__(self, "length", length)

    @classmethod
    def from_endpoints(cls, start: Number, end: Number) -> "Arc":
        """Arc running clockwise from ``start`` to ``end`` (never the whole circle)."""
        a, b = angle(start), angle(end)
        return cls(a, (b - a) % 1)

    @property
    def whole(self) -> bool:
        return self.length == 1

    @property
    def end(self) -> Fraction:
        return (self.start + self.length) % 1

    def __repr__(self) -> str:
        if self.whole:
            return "Arc(whole)"
        return f"Arc({self.start}, +{self.length})"


class ArcCollection(Sequence[Arc]):
    """A nonempty ordered list of arcs; list position is the vertex label."""

    __slots__ = ("_arcs",)

    def __init__(self, arcs: Iterable[Arc]):
        arcs = tuple(arcs)
        if not arcs:
            raise ValueError("an arc collection must be nonempty")
        for a in arcs:
            if not isinstance(a, Arc):
                raise TypeError(f"expected Arc, got {type(a).__name__}")
        self._arcs = arcs

    def __len__(self) -> int:
        return len(self._arcs)

    def __getitem__(self, i):
        return self._arcs[i]

    def __iter__(self) -> Iterator[Arc]:
        return iter(self._arcs)

    def __eq__(self, other) -> bool:
        return isinstance(other, ArcCollection) and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash(self._arcs)

    def __repr__(self) -> str:
        return f"ArcCollection({list(self._arcs)!r})"

    def subcollection(self, indices: Iterable[int]) -> "ArcCollection":
        return ArcCollection(self._arcs[i] for i in indices)


def contains(arc: Arc, p: Fraction) -> bool:
    """True iff the point ``p`` lies in the closed arc."""
    if arc.whole:
        return True
    return (p - arc.start) % 1 <= arc.length


def intersects(a: Arc, b: Arc) -> bool:
    return contains(a, b.start) or contains(b, a.start)


def contains_arc(outer: Arc, inner: Arc) -> bool:
    """Exact closed-arc containment ``inner`` within ``outer``."""
    if outer.whole:
        return True
    if inner.whole:
        return False
    return (inner.start - outer.start) % 1 + inner.length <= outer.length


def cyclic_ordered(points: Sequence[Fraction], strict: bool = False) -> bool:
    """Whether ``points`` occur clockwise around the circle in the given order.

    The weak form allows consecutive equal points.  The closing step from the
    last point back to the first is included, so the total clockwise travel
    must be exactly one turn (or zero, when every point coincides and
    ``strict`` is off).
    """
    if len(points) < 2:
        raise ValueError("cyclic order needs at least two points")
    pts = [angle(p) for p in points]
    steps = [(pts[(i + 1) % len(pts)] - pts[i]) % 1 for i in range(len(pts))]
    if strict and any(s == 0 for s in steps):
        return False
    return sum(steps) <= 1


def common_point(collection: ArcCollection, subset: Iterable[int]) -> Optional[Fraction]:
    """A point shared by every arc named in ``subset``, or ``None``.

    A nonempty intersection of closed arcs always contains the start of one of
    its members, so only the member starts are tested.  When several qualify
    (the intersection can have two components) the largest is returned.
    """
    members = sorted(set(subset))
    if not members:
        raise ValueError("subset must be nonempty")
    n = len(collection)
    for i in members:
        if not 0 <= i < n:
            raise IndexError(f"arc index {i} out of range for {n} arcs")
    arcs = [collection[i] for i in members]
    found = [a.start for a in arcs if all(contains(b, a.start) for b in arcs)]
    return max(found) if found else None


def evenly_spaced(n: int, k: int) -> ArcCollection:
    """``n`` arcs ``[i/n, (i+k)/n]`` for ``i = 0..n-1``."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got n={n}, k={k}")
    return ArcCollection(Arc(Fraction(i, n), Fraction(k, n)) for i in range(n))


def balls(points: Sequence[Number], r: Number) -> ArcCollection:
    """Closed metric balls of radius ``r`` around each point (arc-length metric)."""
    r = as_fraction(r)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if len(points) == 0:
        raise ValueError("need at least one point")
    return ArcCollection(Arc(angle(p) - r, 2 * r) for p in points)


def event_key(arc_index: int, kind: int, collection: ArcCollection) -> tuple:
    """Sort key of one endpoint event under the symbolic perturbation.

    Events are ordered by exact position, then openings before closings, then
    by arc index.  Coincident opening/closing pairs therefore overlap, which
    matches closed-arc intersection.
    """
    arc = collection[arc_index]
    pos = arc.start if kind == OPENING else arc.end
    return (pos, kind, arc_index)


def sorted_events(collection: ArcCollection, active: Optional[Iterable[int]] = None) -> list:
    """All ``(kind, arc)`` events of the active arcs in perturbed cyclic order."""
    idx = range(len(collection)) if active is None else sorted(set(active))
    keys = [event_key(i, kind, collection) for i in idx for kind in (OPENING, CLOSING)]
    keys.sort()
    return [(kind, i) for _, kind, i in keys]
