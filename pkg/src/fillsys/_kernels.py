"""Compiled inner loops for matching enumeration.

These mirror the pure-Python routines in :mod:`fillsys.diagram` and
:mod:`fillsys.filling`; the test-suite checks the two against each other.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _is_filling(partner, m, k, seen):
    for p in range(m):
        seen[p] = 0
    b = 0
    for start in range(m):
        if seen[start]:
            continue
        b += 1
        if b > k + 1:
            return False
        length = 0
        p = start
        while not seen[p]:
            seen[p] = 1
            q = p + 1
            if q == m:
                q = 0
            p = partner[q]
            length += 1
        if length < 3:
            return False
    return b == k + 1


@njit(cache=True)
def _rotation_word(partner, m, r, out, opener_label):
    # first-occurrence word of the diagram read from point r
    count = 0
    for j in range(m):
        q = r + j
        if q >= m:
            q -= m
        qq = partner[q] - r
        if qq < 0:
            qq += m
        if qq > j:
            count += 1
            opener_label[j] = count
            out[j] = count
        else:
            out[j] = opener_label[qq]


@njit(cache=True)
def _perm_parity(word0, wordr, m, n, r, perm, seen):
    # the chord at point r + j has old label word0[r + j] and new label wordr[j]
    for j in range(m):
        q = r + j
        if q >= m:
            q -= m
        perm[word0[q] - 1] = wordr[j] - 1
    for i in range(n):
        seen[i] = 0
    odd = 0
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        p = s
        while not seen[p]:
            seen[p] = 1
            p = perm[p]
            length += 1
        if length % 2 == 0:
            odd ^= 1
    return odd


@njit(cache=True)
def _canonical_check(partner, m, n, w0, wr, lab, perm, seen):
    """-1 if rotation 0 is not the lexicographic minimum, else the torsion flag."""
    _rotation_word(partner, m, 0, w0, lab)
    torsion = 0
    for r in range(1, m):
        _rotation_word(partner, m, r, wr, lab)
        cmp = 0
        for j in range(m):
            if wr[j] != w0[j]:
                cmp = -1 if wr[j] < w0[j] else 1
                break
        if cmp < 0:
            return -1
        if cmp == 0 and torsion == 0:
            torsion = _perm_parity(w0, wr, m, n, r, perm, seen)
    return torsion


@njit(cache=True)
def scan_subtree(m, first, k, canonical_only):
    """Visit matchings on ``m`` points with point 0 paired to ``first``.

    Keeps those with exactly k+1 boundary cycles, all of length >= 3.  With
    ``canonical_only`` only rotation-canonical ones are kept (one per class).
    Returns (words, torsion flags, number of matchings visited).
    """
    n = m // 2
    cap = 1024
    words = np.empty((cap, m), dtype=np.int8)
    tors = np.empty(cap, dtype=np.int8)
    found = 0
    visited = 0

    partner = np.full(m, -1, dtype=np.int64)
    seen = np.zeros(m, dtype=np.int8)
    w0 = np.empty(m, dtype=np.int64)
    wr = np.empty(m, dtype=np.int64)
    lab = np.empty(m, dtype=np.int64)
    perm = np.empty(n, dtype=np.int64)
    pseen = np.zeros(n, dtype=np.int8)
    a = np.zeros(n, dtype=np.int64)
    cand = np.zeros(n, dtype=np.int64)

    partner[0] = first
    partner[first] = 0
    d = 1
    single = n == 1
    if not single:
        p = 0
        while partner[p] != -1:
            p += 1
        a[1] = p
        cand[1] = p

    while True:
        full = False
        if single:
            full = True
        else:
            if partner[a[d]] != -1:
                c0 = partner[a[d]]
                partner[a[d]] = -1
                partner[c0] = -1
            c = cand[d] + 1
            while c < m and partner[c] != -1:
                c += 1
            if c >= m:
                d -= 1
                if d == 0:
                    break
                continue
            cand[d] = c
            partner[a[d]] = c
            partner[c] = a[d]
            if d == n - 1:
                full = True
            else:
                d += 1
                p = 0
                while partner[p] != -1:
                    p += 1
                a[d] = p
                cand[d] = p

        if full:
            visited += 1
            if _is_filling(partner, m, k, seen):
                t = 0
                if canonical_only:
                    t = _canonical_check(partner, m, n, w0, wr, lab, perm, pseen)
                else:
                    _rotation_word(partner, m, 0, w0, lab)
                if t >= 0:
                    if found == cap:
                        cap *= 2
                        nw = np.empty((cap, m), dtype=np.int8)
                        nt = np.empty(cap, dtype=np.int8)
                        nw[:found] = words[:found]
                        nt[:found] = tors[:found]
                        words = nw
                        tors = nt
                    for j in range(m):
                        words[found, j] = w0[j]
                    tors[found] = t
                    found += 1
            if single:
                break
    return words[:found], tors[:found], visited


@njit(cache=True)
def _canonical_signed(word, m, n, partner, w0, wr, lab, perm, seen, best):
    """Canonical word into ``best``; returns sign (+1/-1) or 0 for an order-two class."""
    for j in range(m):
        lab[j] = -1
    for j in range(m):
        lab_j = word[j]
        if lab[lab_j - 1] == -1:
            lab[lab_j - 1] = j
        else:
            q = lab[lab_j - 1]
            partner[j] = q
            partner[q] = j
    have = False
    parity = -1
    torsion = False
    for r in range(m):
        _rotation_word(partner, m, r, wr, lab)
        cmp = -1
        if have:
            cmp = 0
            for j in range(m):
                if wr[j] != best[j]:
                    cmp = -1 if wr[j] < best[j] else 1
                    break
        if cmp > 0:
            continue
        # parity of input label -> new label
        for j in range(m):
            q = r + j
            if q >= m:
                q -= m
            perm[word[q] - 1] = wr[j] - 1
        for i in range(n):
            seen[i] = 0
        odd = 0
        for s in range(n):
            if seen[s]:
                continue
            length = 0
            p = s
            while not seen[p]:
                seen[p] = 1
                p = perm[p]
                length += 1
            if length % 2 == 0:
                odd ^= 1
        if cmp < 0:
            for j in range(m):
                best[j] = wr[j]
            have = True
            parity = odd
            torsion = False
        elif odd != parity:
            torsion = True
    if torsion:
        return 0
    return -1 if parity else 1


@njit(cache=True)
def face_kernel(words, k):
    """Nonzero faces of each row of ``words`` (ordered k-filling systems).

    Returns (column index, canonical face word, coefficient, torsion flag) arrays;
    the coefficient is (-1)^(i-1) times the reordering sign, or 1 on order-two classes.
    """
    N = words.shape[0]
    m = words.shape[1]
    n = m // 2
    mm = m - 2
    cap = N * n
    out_col = np.empty(cap, dtype=np.int64)
    out_word = np.empty((cap, mm), dtype=np.int8)
    out_coeff = np.empty(cap, dtype=np.int8)
    out_tors = np.empty(cap, dtype=np.int8)
    rest = np.empty(mm, dtype=np.int64)
    partner = np.empty(mm, dtype=np.int64)
    seen = np.zeros(mm, dtype=np.int8)
    w0 = np.empty(mm, dtype=np.int64)
    wr = np.empty(mm, dtype=np.int64)
    lab = np.empty(mm, dtype=np.int64)
    perm = np.empty(n, dtype=np.int64)
    pseen = np.zeros(n, dtype=np.int8)
    best = np.empty(mm, dtype=np.int64)
    found = 0
    for c in range(N):
        for i in range(1, n + 1):
            t = 0
            for j in range(m):
                x = words[c, j]
                if x == i:
                    continue
                rest[t] = x if x < i else x - 1
                t += 1
            # partner array of the remnant
            for j in range(mm):
                lab[j] = -1
            for j in range(mm):
                if lab[rest[j] - 1] == -1:
                    lab[rest[j] - 1] = j
                else:
                    q = lab[rest[j] - 1]
                    partner[j] = q
                    partner[q] = j
            if not _is_filling(partner, mm, k - 1, seen):
                continue
            s = _canonical_signed(rest, mm, n - 1, partner, w0, wr, lab, perm, pseen, best)
            out_col[found] = c
            for j in range(mm):
                out_word[found, j] = best[j]
            if s == 0:
                out_coeff[found] = 1
                out_tors[found] = 1
            else:
                out_coeff[found] = s if i % 2 == 1 else -s
                out_tors[found] = 0
            found += 1
    return out_col[:found], out_word[:found], out_coeff[:found], out_tors[:found]
