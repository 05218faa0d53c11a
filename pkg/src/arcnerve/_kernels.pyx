# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled post-sort reduction kernels (same contract as ``_kernels_py``)."""
import numpy as np

BACKEND = "compiled"


def contained_sweep(const long long[::1] ends, const int[::1] perm, Py_ssize_t n):
    cdef Py_ssize_t m = ends.shape[0]
    cdef int p, r, t = 0, u
    cdef long long best = 0
    cdef int best_r = -1
    rem_arr = np.zeros(n, dtype=np.uint8)
    removed_arr = np.zeros(n, dtype=np.uint8)
    # only the first t entries are ever touched
    contained_arr = np.empty(n, dtype=np.int32)
    doms_arr = np.empty(n, dtype=np.int32)
    cdef unsigned char[::1] rem = rem_arr
    cdef unsigned char[::1] removed = removed_arr
    cdef int[::1] contained = contained_arr
    cdef int[::1] doms = doms_arr
    for p in range(m):
        r = p - n if p >= n else p
        if p >= n and best_r >= 0 and best_r != r and best >= ends[p]:
            rem[r] = 1
            contained[t] = r
            doms[t] = best_r
            t += 1
        if best_r < 0 or ends[p] > best:
            best = ends[p]
            best_r = r
    for u in range(t):
        if rem[doms[u]]:
            raise RuntimeError("a dominator was itself contained")
        r = contained[u]
        contained[u] = perm[r]
        doms[u] = perm[doms[u]]
        removed[contained[u]] = 1
    return removed_arr, contained_arr[:t], doms_arr[:t]


def alternate(const signed char[::1] kind, const int[::1] arc,
              const unsigned char[::1] removed, Py_ssize_t n):
    cdef Py_ssize_t m = kind.shape[0]
    cdef int p, c, q, t, e, a_, b_, i, head = 0, tail = 0, nlog = 0
    cdef int na = 0, size, start = -1, nk = 0, s, before
    cdef int off, kprime = -1
    cdef long long mutations = 0

    # survivors of the containment pass are few; work on them alone
    for i in range(n):
        if not removed[i]:
            na += 1
    size = 2 * na
    ckind_arr = np.empty(size, dtype=np.int8)
    carc_arr = np.empty(size, dtype=np.int32)
    nxt_arr = np.empty(size, dtype=np.int32)
    prv_arr = np.empty(size, dtype=np.int32)
    cdef signed char[::1] ckind = ckind_arr
    cdef int[::1] carc = carc_arr
    cdef int[::1] nxt = nxt_arr
    cdef int[::1] prv = prv_arr
    c = 0
    for p in range(m):
        if not removed[arc[p]]:
            ckind[c] = kind[p]
            carc[c] = arc[p]
            c += 1
    for c in range(size):
        nxt[c] = c + 1 if c + 1 < size else 0
        prv[c] = c - 1 if c > 0 else size - 1

    # per-arc tables are only ever touched at surviving arcs
    open_arr = np.empty(n, dtype=np.int32)
    close_arr = np.empty(n, dtype=np.int32)
    dead_arr = np.empty(n, dtype=np.uint8)
    queued_arr = np.empty(n, dtype=np.uint8)
    label_arr = np.empty(n, dtype=np.int32)
    queue_arr = np.empty(na, dtype=np.int32)
    logr_arr = np.empty(na, dtype=np.int32)
    logd_arr = np.empty(na, dtype=np.int32)
    kept_arr = np.empty(na, dtype=np.int32)
    cdef int[::1] open_pos = open_arr
    cdef int[::1] close_pos = close_arr
    cdef unsigned char[::1] dead = dead_arr
    cdef unsigned char[::1] queued = queued_arr
    cdef int[::1] label = label_arr
    cdef int[::1] queue = queue_arr
    cdef int[::1] logr = logr_arr
    cdef int[::1] logd = logd_arr
    cdef int[::1] kept = kept_arr
    for c in range(size):
        i = carc[c]
        dead[i] = 0
        queued[i] = 0
        if ckind[c] == 0:
            open_pos[i] = c
        else:
            close_pos[i] = c

    for c in range(size):
        if ckind[c] == 0 and ckind[nxt[c]] == 0:
            queue[tail] = carc[c]
            tail += 1
            queued[carc[c]] = 1
            mutations += 1

    while head < tail:
        i = queue[head]
        head += 1
        p = open_pos[i]
        q = nxt[p]
        if ckind[q] != 0:
            raise RuntimeError("worklist invariant broken: successor is not an opening")
        logr[nlog] = i
        logd[nlog] = carc[q]
        nlog += 1
        for t in range(2):
            e = p if t == 0 else close_pos[i]
            a_ = prv[e]
            b_ = nxt[e]
            nxt[a_] = b_
            prv[b_] = a_
            mutations += 1
        dead[i] = 1
        before = prv[close_pos[i]]
        if ckind[before] == 0 and ckind[nxt[before]] == 0 and not queued[carc[before]]:
            queue[tail] = carc[before]
            tail += 1
            queued[carc[before]] = 1
            mutations += 1

    for c in range(size):
        if ckind[c] == 0 and not dead[carc[c]]:
            start = c
            break
    c = start
    while True:
        if ckind[c] == 0:
            label[carc[c]] = nk
            kept[nk] = carc[c]
            nk += 1
        c = nxt[c]
        if c == start:
            break
    for s in range(nk):
        q = nxt[open_pos[kept[s]]]
        if ckind[q] != 1:
            kprime = -1
            break
        off = (s - label[carc[q]]) % nk
        if off < 0:
            off += nk
        if s == 0:
            kprime = off
        elif off != kprime:
            kprime = -1
            break
    return logr_arr[:nlog].copy(), logd_arr[:nlog].copy(), kept_arr[:nk].copy(), int(kprime), int(mutations)
