"""Homotopy-preserving reduction of an arc collection to some N(n', k').

The work splits into a sort phase (exact keys turned into integer arrays and
sorted with numpy) and a linear post-sort phase run by :mod:`.kernels`.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .circle import CLOSING, OPENING, ArcCollection, contains_arc, sorted_events

CASES = ("a", "b", "c")
_MAX_SCALE_BITS = 60


@dataclass(frozen=True, eq=False)
class ReductionResult:
    """Outcome of :func:`reduce_to_minimal`.

    ``kept`` lists surviving arc indices in cyclic start order; the nerve of
    the survivors equals N(n', k') under ``kept[s] -> s``.  The removal log is
    ``(removed, dominating, case)`` triples in the order they were applied.
    """

    n: int
    kept: np.ndarray
    k_prime: int
    removed: np.ndarray
    dominators: np.ndarray
    cases: np.ndarray
    mutations: int = 0

    @property
    def n_prime(self) -> int:
        return len(self.kept)

    @cached_property
    def kept_indices(self) -> list:
        return self.kept.tolist()

    @cached_property
    def removal_log(self) -> list:
        return [
            (i, d, CASES[c])
            for i, d, c in zip(self.removed.tolist(), self.dominators.tolist(), self.cases.tolist())
        ]

    def __repr__(self) -> str:
        return f"ReductionResult(n={self.n}, n_prime={self.n_prime}, k_prime={self.k_prime})"


def _whole_circle_result(n: int, whole_idx: Iterable[int]) -> ReductionResult:
    w = min(whole_idx)
    others = np.array([i for i in range(n) if i != w], dtype=np.int64)
    return ReductionResult(
        n=n,
        kept=np.array([w], dtype=np.int64),
        k_prime=0,
        removed=others,
        dominators=np.full(len(others), w, dtype=np.int64),
        cases=np.zeros(len(others), dtype=np.uint8),
        mutations=2 * len(others),
    )


@dataclass
class _SortedInput:
    n: int
    cont_ends: np.ndarray
    cont_perm: np.ndarray
    ev_kind: np.ndarray
    ev_arc: np.ndarray


def _sort_phase(sp, ep, lengths, pos) -> _SortedInput:
    """Order the unrolled intervals and the endpoint events.

    ``sp``/``ep`` hold the 2n unrolled starts and ends (originals then copies
    shifted back one turn), ``pos`` the n opening then n closing positions.
    All are order-preserving integers.
    """
    n = len(lengths)
    idx2 = np.concatenate([np.arange(n, dtype=np.int32)] * 2)
    len2 = np.concatenate([lengths, lengths])
    cont = np.lexsort((idx2, -len2, sp))
    # copies start below every original, so both halves list the arcs in the same order
    if not np.array_equal(cont[:n] - n, cont[n:]):
        raise AssertionError("unrolled copies are not ordered like their originals")
    kind2 = np.concatenate([np.zeros(n, dtype=np.int8), np.ones(n, dtype=np.int8)])
    ev = np.lexsort((idx2, kind2, pos))
    return _SortedInput(
        n=n,
        cont_ends=np.ascontiguousarray(ep[cont], dtype=np.int64),
        cont_perm=np.ascontiguousarray(idx2[cont[n:]]),
        ev_kind=np.ascontiguousarray(kind2[ev]),
        ev_arc=np.ascontiguousarray(idx2[ev]),
    )


def _sorted_from_scaled(starts: np.ndarray, lengths: np.ndarray, denom: int) -> _SortedInput:
    ends = starts + lengths
    sp = np.concatenate([starts, starts - denom])
    ep = np.concatenate([ends, ends - denom])
    pos = np.concatenate([starts, ends % denom])
    return _sort_phase(sp, ep, lengths, pos)


def _dense_rank(values: list) -> np.ndarray:
    table = {v: r for r, v in enumerate(sorted(set(values)))}
    return np.array([table[v] for v in values], dtype=np.int64)


def _sorted_from_fractions(collection: ArcCollection) -> _SortedInput:
    starts = [a.start for a in collection]
    lengths = [a.length for a in collection]
    ends = [s + l for s, l in zip(starts, lengths)]
    sp = _dense_rank(starts + [s - 1 for s in starts])
    ep = _dense_rank(ends + [e - 1 for e in ends])
    pos = _dense_rank(starts + [e % 1 for e in ends])
    return _sort_phase(sp, ep, _dense_rank(lengths), pos)


def _scale(collection: ArcCollection) -> Optional[tuple]:
    denom = 1
    for a in collection:
        denom = math.lcm(denom, a.start.denominator, a.length.denominator)
        if denom.bit_length() > _MAX_SCALE_BITS:
            return None
    starts = np.array([a.start.numerator * (denom // a.start.denominator) for a in collection], dtype=np.int64)
    lengths = np.array([a.length.numerator * (denom // a.length.denominator) for a in collection], dtype=np.int64)
    return starts, lengths, denom


def _post_sort(si: _SortedInput, kern) -> ReductionResult:
    n = si.n
    removed, contained, dom = kern.contained_sweep(si.cont_ends, si.cont_perm, n)
    log_r, log_d, kept, kprime, mut = kern.alternate(si.ev_kind, si.ev_arc, removed, n)
    if kprime < 0:
        raise AssertionError("survivor offsets disagree; the reduced collection is not of the form N(n, k)")
    return ReductionResult(
        n=n,
        kept=kept,
        k_prime=kprime,
        removed=np.concatenate([contained, log_r]),
        dominators=np.concatenate([dom, log_d]),
        cases=np.concatenate([np.zeros(len(contained), np.uint8), np.ones(len(log_r), np.uint8)]),
        mutations=mut + 2 * len(contained),
    )


def reduce_scaled(starts, lengths, denom: int, *, backend: Optional[str] = None, timings: Optional[dict] = None) -> ReductionResult:
    """Reduce arcs given as integer numerators over a common denominator.

    Arc ``i`` is ``[starts[i]/denom, (starts[i]+lengths[i])/denom]``; a length
    of at least ``denom`` is the whole circle.  ``timings``, when given,
    receives the wall time of the ``sort`` and ``reduce`` phases.
    """
    kern = kernels.get(backend)
    starts = np.asarray(starts, dtype=np.int64) % denom
    lengths = np.asarray(lengths, dtype=np.int64)
    n = len(starts)
    if n == 0:
        raise ValueError("cannot reduce an empty collection")
    if (lengths < 0).any():
        raise ValueError("negative arc length")
    whole = np.flatnonzero(lengths >= denom)
    if len(whole):
        return _whole_circle_result(n, whole.tolist())
    t0 = time.perf_counter()
    si = _sorted_from_scaled(starts, lengths, denom)
    t1 = time.perf_counter()
    res = _post_sort(si, kern)
    t2 = time.perf_counter()
    if timings is not None:
        timings["sort"] = t1 - t0
        timings["reduce"] = t2 - t1
    return res


def reduce_to_minimal(collection: ArcCollection, *, backend: Optional[str] = None) -> ReductionResult:
    """Strip dominated arcs until the nerve is isomorphic to some N(n', k')."""
    if len(collection) == 0:
        raise ValueError("cannot reduce an empty collection")
    whole = [i for i, a in enumerate(collection) if a.whole]
    if whole:
        return _whole_circle_result(len(collection), whole)
    scaled = _scale(collection)
    if scaled is not None:
        return reduce_scaled(*scaled, backend=backend)
    return _post_sort(_sorted_from_fractions(collection), kernels.get(backend))


def remove_contained(collection: ArcCollection, *, backend: Optional[str] = None) -> list:
    """Indices of arcs not contained in any other arc (lowest index wins ties)."""
    whole = [i for i, a in enumerate(collection) if a.whole]
    if whole:
        return [min(whole)]
    scaled = _scale(collection)
    if scaled is not None:
        starts, lengths, denom = scaled
        si = _sorted_from_scaled(starts, lengths, denom)
    else:
        si = _sorted_from_fractions(collection)
    removed, _, _ = kernels.get(backend).contained_sweep(si.cont_ends, si.cont_perm, si.n)
    return np.flatnonzero(removed == 0).tolist()


class _EventRanks:
    """Positions of every endpoint in the perturbed cyclic order."""

    def __init__(self, collection: ArcCollection):
        events = sorted_events(collection)
        self.size = len(events)
        n = len(collection)
        self.open = [0] * n
        self.close = [0] * n
        for r, (kind, i) in enumerate(events):
            (self.open if kind == OPENING else self.close)[i] = r

    def offset(self, frm: int, to: int) -> int:
        return (to - frm) % self.size


def _case_holds(collection, ranks: _EventRanks, i: int, j: int, case: str, active) -> bool:
    ui, uj = collection[i], collection[j]
    if case == "a":
        return contains_arc(uj, ui)
    if ui.whole or uj.whole:
        return False
    o, c = ranks.open, ranks.close
    if case == "b":
        off = lambda r: ranks.offset(o[i], r)  # noqa: E731
        if not (off(o[j]) < off(c[i]) < off(c[j])):
            return False
        return all(off(c[t]) > off(o[j]) for t in active)
    if case == "c":
        off = lambda r: ranks.offset(o[j], r)  # noqa: E731
        if not (off(o[i]) < off(c[j]) < off(c[i])):
            return False
        gap = ranks.offset(c[j], c[i])
        return all(not (0 < ranks.offset(c[j], o[t]) <= gap) for t in active)
    raise ValueError(f"unknown case {case!r}")


def domination_case(collection: ArcCollection, i: int, j: int, active: Optional[Iterable[int]] = None) -> Optional[str]:
    """First domination criterion (a, b or c) showing ``j`` dominates ``i``.

    (a) arc i lies inside arc j; (b) arc i precedes j and no closing endpoint
    lies between their openings; (c) arc j precedes i and no opening lies in
    the half-open stretch between their closings.  Endpoint order is the
    perturbed one, restricted to ``active`` arcs when given.
    """
    n = len(collection)
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise ValueError(f"need distinct indices in range, got {i}, {j}")
    act = list(range(n)) if active is None else sorted(set(active))
    ranks = _EventRanks(collection)
    for case in CASES:
        if _case_holds(collection, ranks, i, j, case, act):
            return case
    return None


def read_offsets(events: list) -> Optional[tuple]:
    """Read ``(kept, k)`` from an alternating cyclic event list, else ``None``.

    ``kept`` lists arcs by opening order; after the opening of survivor ``s``
    must come the closing of survivor ``s - k``.
    """
    openings = [i for kind, i in events if kind == OPENING]
    label = {a: s for s, a in enumerate(openings)}
    m = len(openings)
    k = None
    for t, (kind, i) in enumerate(events):
        if kind != OPENING:
            continue
        nk, ni = events[(t + 1) % len(events)]
        if nk != CLOSING:
            return None
        off = (label[i] - label[ni]) % m
        if k is None:
            k = off
        elif off != k:
            return None
    return openings, k


def verify_reduction(collection: ArcCollection, result: ReductionResult) -> bool:
    """Replay the removal log and re-derive the final (n', k')."""
    n = len(collection)
    kept = result.kept_indices
    log = result.removal_log
    removed = [i for i, _, _ in log]
    if sorted(kept + removed) != list(range(n)):
        return False
    if not 0 <= result.k_prime < max(result.n_prime, 1):
        return False
    ranks = _EventRanks(collection)
    active = set(range(n))
    for i, j, case in log:
        if i not in active or j not in active or i == j:
            return False
        if not _case_holds(collection, ranks, i, j, case, active):
            return False
        active.discard(i)
    if active != set(kept):
        return False
    read = read_offsets(sorted_events(collection, active))
    if read is None:
        return False
    order, k = read
    # kept is listed from the survivor with the smallest start
    return order == kept and k == result.k_prime
