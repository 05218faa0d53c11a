"""Pure-Python implementation of the post-sort reduction kernels.

Mirrors ``_kernels.pyx`` exactly; used when the compiled module is missing
or when ``ARCNERVE_PURE_PYTHON`` is set.  Inputs are integer sequences that
were already sorted by the caller, so nothing here compares rationals.
"""
import numpy as np

BACKEND = "python"


def contained_sweep(ends, perm, n):
    """Find arcs contained in another arc.

    ``ends`` lists the ends of the 2n unrolled intervals in sweep order (start
    ascending, then longer first, then lower index).  Copies shifted back one
    turn all precede the originals and appear in the same order, so position
    ``p`` holds the arc of rank ``p mod n`` and ``perm[r]`` is that arc.  An
    original interval is contained iff some earlier interval ends at or after
    it; the running maximum is then its dominator.

    The maximum is never itself contained: every copy is seen before any
    original, and the maximum only moves on a strictly larger end, so an arc
    containing it would have taken the maximum first.

    Returns ``(removed, contained, dominators)``: a per-arc flag and, in rank
    order, each contained arc with its surviving dominator.
    """
    ends = ends.tolist() if hasattr(ends, "tolist") else list(ends)
    perm = perm.tolist() if hasattr(perm, "tolist") else list(perm)
    rem = [0] * n
    found = []
    best = None
    best_r = -1
    for p, e in enumerate(ends):
        r = p - n if p >= n else p
        if p >= n and best_r >= 0 and best_r != r and best >= e:
            rem[r] = 1
            found.append((r, best_r))
        if best_r < 0 or e > best:
            best = e
            best_r = r
    removed = [0] * n
    contained = []
    doms = []
    for r, d in found:
        if rem[d]:
            raise RuntimeError("a dominator was itself contained")
        removed[perm[r]] = 1
        contained.append(perm[r])
        doms.append(perm[d])
    return (
        np.asarray(removed, dtype=np.uint8),
        np.asarray(contained, dtype=np.int32),
        np.asarray(doms, dtype=np.int32),
    )


def alternate(kind, arc, removed, n):
    """Delete dominated arcs until openings and closings alternate.

    ``kind``/``arc`` list the 2n endpoint events in perturbed cyclic order;
    arcs flagged in ``removed`` are skipped.  An opening immediately followed
    by another opening belongs to an arc dominated by the follower; deleting
    it can only create a new such pair at the opening just before its closing.

    Returns ``(log_removed, log_dom, kept, kprime, mutations)``; ``kprime`` is
    -1 when the final offsets are inconsistent.
    """
    kind = kind.tolist() if hasattr(kind, "tolist") else list(kind)
    arc = arc.tolist() if hasattr(arc, "tolist") else list(arc)
    dead = removed.tolist() if hasattr(removed, "tolist") else list(removed)
    m = len(kind)
    alive = [p for p in range(m) if not dead[arc[p]]]
    nxt = [-1] * m
    prv = [-1] * m
    for t, p in enumerate(alive):
        q = alive[(t + 1) % len(alive)]
        nxt[p] = q
        prv[q] = p
    open_pos = [-1] * n
    close_pos = [-1] * n
    for p in alive:
        if kind[p] == 0:
            open_pos[arc[p]] = p
        else:
            close_pos[arc[p]] = p

    queue = []
    queued = [0] * n
    mutations = 0
    for p in alive:
        if kind[p] == 0 and kind[nxt[p]] == 0:
            queue.append(arc[p])
            queued[arc[p]] = 1
            mutations += 1
    log_removed = []
    log_dom = []
    head = 0
    while head < len(queue):
        i = queue[head]
        head += 1
        p = open_pos[i]
        q = nxt[p]
        if kind[q] != 0:
            raise RuntimeError("worklist invariant broken: successor is not an opening")
        log_removed.append(i)
        log_dom.append(arc[q])
        for e in (p, close_pos[i]):
            a, b = prv[e], nxt[e]
            nxt[a] = b
            prv[b] = a
            mutations += 1
        dead[i] = 1
        c = close_pos[i]
        before = prv[c]
        if kind[before] == 0 and kind[nxt[before]] == 0 and not queued[arc[before]]:
            queue.append(arc[before])
            queued[arc[before]] = 1
            mutations += 1

    start = -1
    for p in range(m):
        if not dead[arc[p]] and kind[p] == 0:
            start = p
            break
    kept = []
    label = [-1] * n
    p = start
    while True:
        if kind[p] == 0:
            label[arc[p]] = len(kept)
            kept.append(arc[p])
        p = nxt[p]
        if p == start:
            break
    nk = len(kept)
    kprime = -1
    for s, a in enumerate(kept):
        q = nxt[open_pos[a]]
        if kind[q] != 1:
            kprime = -1
            break
        off = (s - label[arc[q]]) % nk
        if s == 0:
            kprime = off
        elif off != kprime:
            kprime = -1
            break
    return (
        np.asarray(log_removed, dtype=np.int32),
        np.asarray(log_dom, dtype=np.int32),
        np.asarray(kept, dtype=np.int32),
        kprime,
        mutations,
    )
