"""Compiled inner loops of the enumeration.

Conventions shared by every kernel:

* ``trips[t]`` is the ``t``-th triple of ``1..n`` in lexicographic order;
* ``flat[(a*(n+1) + b)*(n+1) + c]`` is the index of the triple ``{a, b, c}``;
* symbol keys follow ``never.SYMBOL_ORDER``: ``xN3`` has key ``x - 1`` and
  ``EMPTY`` (9) is largest; ``keytab[x, r]`` is the key of ``xNr``;
* a never-bottom string is stored as Fishburn positions ``s`` in ``{1,2,3}``.
"""

import numpy as np
from numba import njit

EMPTY = 9


@njit(cache=True)
def _image_key(pos, d, h, ginv, trips, flat, m1, subj, rank, keytab):
    a = trips[pos, 0]
    b = trips[pos, 1]
    c = trips[pos, 2]
    oi = flat[(h[a] * m1 + h[b]) * m1 + h[c]]
    if oi >= d:
        return EMPTY
    gx = ginv[subj[oi]]
    if gx == a:
        fp = 1
    elif gx == b:
        fp = 2
    else:
        fp = 3
    return keytab[fp, rank[oi]]


@njit(cache=True)
def min_image_smaller(n, d, subj, rank, cur, trips, flat, keytab):
    """True when a relabeling maps the ``d``-symbol prefix to a smaller string.

    ``subj[p]``/``rank[p]`` give the decided condition at position ``p`` and
    ``cur[p]`` its key. Relabelings are built as ``h`` (new -> old label).
    The first block of positions, triples ``(1, 2, k)``, only depends on the
    pair ``(h[1], h[2])``; its least arrangement is the sorted list of keys
    the other alternatives produce with that pair. Pairs that tie are
    extended label by label inside their key groups, comparing the second
    block ``(1, 3, k)`` as soon as label ``k`` is placed and the remaining
    positions once every label is placed.
    """
    if d == 0:
        return False
    m1 = n + 1
    block = n - 2
    third = block + n - 3
    h = np.zeros(m1, dtype=np.int64)
    ginv = np.zeros(m1, dtype=np.int64)
    used = np.zeros(m1, dtype=np.bool_)
    curb = np.empty(block, dtype=np.int64)
    for p in range(block):
        curb[p] = cur[p] if p < d else EMPTY
    ks = np.empty(block, dtype=np.int64)
    ys = np.empty(block, dtype=np.int64)
    gend = np.empty(block, dtype=np.int64)
    gstart = np.empty(block, dtype=np.int64)
    nxt = np.zeros(m1 + 1, dtype=np.int64)
    for u in range(1, m1):
        for v in range(1, m1):
            if u == v:
                continue
            cnt = 0
            base = (u * m1 + v) * m1
            for y in range(1, m1):
                if y == u or y == v:
                    continue
                oi = flat[base + y]
                if oi >= d:
                    k = EMPTY
                else:
                    x = subj[oi]
                    if x == u:
                        k = keytab[1, rank[oi]]
                    elif x == v:
                        k = keytab[2, rank[oi]]
                    else:
                        k = keytab[3, rank[oi]]
                j = cnt
                while j > 0 and (ks[j - 1] > k or (ks[j - 1] == k and ys[j - 1] > y)):
                    ks[j] = ks[j - 1]
                    ys[j] = ys[j - 1]
                    j -= 1
                ks[j] = k
                ys[j] = y
                cnt += 1
            cmp = 0
            for p in range(block):
                if ks[p] != curb[p]:
                    cmp = -1 if ks[p] < curb[p] else 1
                    break
            if cmp < 0:
                return True
            if cmp > 0 or d <= block:
                continue
            # group bounds of each sorted position
            p = 0
            while p < block:
                q = p
                while q < block and ks[q] == ks[p]:
                    q += 1
                for r in range(p, q):
                    gstart[r] = p
                    gend[r] = q
                p = q
            for y in range(m1):
                used[y] = False
            h[1] = u
            h[2] = v
            ginv[u] = 1
            ginv[v] = 2
            used[u] = True
            used[v] = True
            level = 3
            nxt[3] = gstart[0]
            while level >= 3:
                if level > n:
                    res = 0
                    pos = third
                    while pos < d:
                        k = _image_key(pos, d, h, ginv, trips, flat, m1, subj, rank, keytab)
                        if k != cur[pos]:
                            res = -1 if k < cur[pos] else 1
                            break
                        pos += 1
                    if res < 0:
                        return True
                    level -= 1
                    used[h[level]] = False
                    continue
                q = level - 3
                j = nxt[level]
                y = -1
                while j < gend[q]:
                    if not used[ys[j]]:
                        y = ys[j]
                        j += 1
                        break
                    j += 1
                nxt[level] = j
                if y < 0:
                    level -= 1
                    if level >= 3:
                        used[h[level]] = False
                    continue
                h[level] = y
                ginv[y] = level
                used[y] = True
                if level >= 4:
                    pos = block + level - 4
                    if pos >= d:
                        # all decided positions match; the rest is empty on both sides
                        used[y] = False
                        nxt[level] = gend[q]
                        continue
                    k = _image_key(pos, d, h, ginv, trips, flat, m1, subj, rank, keytab)
                    if k < cur[pos]:
                        return True
                    if k > cur[pos]:
                        used[y] = False
                        continue
                level += 1
                if level <= n:
                    nxt[level] = gstart[level - 3]
            used[u] = False
            used[v] = False
    return False


@njit(cache=True)
def canonical_key(n, T, surv, length, subjects, pos, trips, flat, out):
    """Least unitary image of a complete never-bottom string, written to ``out``.

    ``surv[:length]`` are the orders the string defines and ``pos[o, a]``
    the 0-based rank of ``a`` in order ``o``. Returns the winning order.
    """
    m1 = n + 1
    g = np.empty(m1, dtype=np.int64)
    image = np.empty(T, dtype=np.int8)
    best_order = -1
    for i in range(length):
        o = surv[i]
        for a in range(1, m1):
            g[a] = pos[o, a] + 1
        for t in range(T):
            ga = g[trips[t, 0]]
            gb = g[trips[t, 1]]
            gc = g[trips[t, 2]]
            gx = g[trips[t, subjects[t] - 1]]
            fp = 0
            if ga < gx:
                fp += 1
            if gb < gx:
                fp += 1
            if gc < gx:
                fp += 1
            image[flat[(ga * m1 + gb) * m1 + gc]] = fp
        better = best_order < 0
        if not better:
            for t in range(T):
                if image[t] != out[t]:
                    better = image[t] < out[t]
                    break
        if better:
            best_order = o
            for t in range(T):
                out[t] = image[t]
    return best_order


@njit(cache=True)
def orders_of_string(P, allowed):
    """Indices of the orders whose pattern on every triple ``t`` is allowed by ``allowed[t]``."""
    N, T = P.shape
    keep = np.empty(N, dtype=np.int64)
    cnt = 0
    for o in range(N):
        ok = True
        for t in range(T):
            if not allowed[t, P[o, t]]:
                ok = False
                break
        if ok:
            keep[cnt] = o
            cnt += 1
    return keep[:cnt]


@njit(cache=True)
def search(
    n, T, P, bits, allowed, req, alphabet, target,
    w4_table, w4_ptr, w4_data, w5_table, w5_ptr, w5_data,
    insearch, trips, flat, keytab, pos, prefix, stop,
):
    """Depth-first search below ``prefix`` down to depth ``stop``.

    With ``stop == T`` each surviving leaf of size ``target`` contributes its
    canonical key (least unitary image); otherwise each surviving node at
    depth ``stop`` contributes its raw prefix. Returns ``(rows, count, nodes)``.
    """
    N = P.shape[0]
    cap = 1024
    rows = np.empty((cap, T), dtype=np.int8)
    count = 0
    nodes = 0

    pool = np.empty(4 * N, dtype=np.int32)
    offs = np.zeros(T + 2, dtype=np.int64)
    lens = np.zeros(T + 2, dtype=np.int64)
    subjects = np.zeros(T, dtype=np.int64)
    subj_alt = np.zeros(T, dtype=np.int64)
    rank3 = np.full(T, 3, dtype=np.int64)
    curkey = np.zeros(T, dtype=np.int64)
    choice = np.zeros(T + 1, dtype=np.int64)
    present = np.zeros(T, dtype=np.uint8)

    d0 = prefix.shape[0]
    # surviving orders of the prefix
    cnt = 0
    for o in range(N):
        ok = True
        for t in range(d0):
            if not allowed[prefix[t], P[o, t]]:
                ok = False
                break
        if ok:
            pool[cnt] = o
            cnt += 1
    offs[d0] = 0
    lens[d0] = cnt
    for t in range(d0):
        s = prefix[t]
        subjects[t] = s
        subj_alt[t] = trips[t, s - 1]
        curkey[t] = s - 1

    if d0 == stop:
        rows[0, :d0] = prefix
        return rows[:1], 1, 0

    nalpha = alphabet.shape[0]
    d = d0
    choice[d] = 0
    while d >= d0:
        if choice[d] >= nalpha:
            d -= 1
            continue
        s = alphabet[choice[d]]
        choice[d] += 1
        nodes += 1
        # filter the parent's survivors into the child level
        start = offs[d]
        child = start + lens[d]
        need = child + lens[d]
        if need > pool.shape[0]:
            bigger = np.empty(max(2 * pool.shape[0], need), dtype=np.int32)
            bigger[:child] = pool[:child]
            pool = bigger
        c = 0
        for i in range(lens[d]):
            o = pool[start + i]
            if allowed[s, P[o, d]]:
                pool[child + c] = o
                c += 1
        offs[d + 1] = child
        lens[d + 1] = c
        subjects[d] = s
        subj_alt[d] = trips[d, s - 1]
        curkey[d] = s - 1
        if c < target:
            continue
        # window feasibility
        bad = False
        for k in range(w4_ptr[d], w4_ptr[d + 1]):
            code = 0
            w = 1
            for p in range(w4_data.shape[1]):
                code += (subjects[w4_data[k, p]] - 1) * w
                w *= 3
            if not w4_table[code]:
                bad = True
                break
        if not bad:
            for k in range(w5_ptr[d], w5_ptr[d + 1]):
                code = 0
                w = 1
                for p in range(w5_data.shape[1]):
                    code += (subjects[w5_data[k, p]] - 1) * w
                    w *= 3
                if not w5_table[code]:
                    bad = True
                    break
        if bad:
            continue
        # copiousness of decided triples, and of some symbol on undecided ones
        for t in range(T):
            present[t] = 0
        for i in range(c):
            o = pool[child + i]
            for t in range(T):
                present[t] |= bits[o, t]
        for t in range(d + 1):
            r = req[subjects[t]]
            if present[t] & r != r:
                bad = True
                break
        if not bad:
            for t in range(d + 1, T):
                possible = False
                for a in range(nalpha):
                    r = req[alphabet[a]]
                    if present[t] & r == r:
                        possible = True
                        break
                if not possible:
                    bad = True
                    break
        if bad:
            continue
        if insearch and min_image_smaller(n, d + 1, subj_alt, rank3, curkey, trips, flat, keytab):
            continue
        if d + 1 == stop:
            if stop == T and c != target:
                continue
            if count == rows.shape[0]:
                bigger_rows = np.empty((2 * rows.shape[0], T), dtype=np.int8)
                bigger_rows[:count] = rows[:count]
                rows = bigger_rows
            if stop == T:
                canonical_key(n, T, pool[child:child + c], c, subjects, pos, trips, flat, rows[count])
            else:
                for t in range(stop):
                    rows[count, t] = subjects[t]
            count += 1
            continue
        d += 1
        choice[d] = 0
    return rows[:count], count, nodes
