import numpy as np
from numba import njit


@njit(cache=True)
def edit_matrix(a, b):
    m, n = a.size, b.size
    d = np.empty((m + 1, n + 1), dtype=np.int64)
    for j in range(n + 1):
        d[0, j] = j
    for i in range(1, m + 1):
        d[i, 0] = i
        ai = a[i - 1]
        for j in range(1, n + 1):
            best = d[i - 1, j - 1] + (0 if ai == b[j - 1] else 1)
            up = d[i - 1, j] + 1
            left = d[i, j - 1] + 1
            if up < best:
                best = up
            if left < best:
                best = left
            d[i, j] = best
    return d


@njit(cache=True)
def _cost_rows(a, b, prev, cur):
    n = b.size
    for j in range(n + 1):
        prev[j] = j
    for i in range(1, a.size + 1):
        cur[0] = i
        ai = a[i - 1]
        for j in range(1, n + 1):
            best = prev[j - 1] + (0 if ai == b[j - 1] else 1)
            up = prev[j] + 1
            left = cur[j - 1] + 1
            if up < best:
                best = up
            if left < best:
                best = left
            cur[j] = best
        for j in range(n + 1):
            prev[j] = cur[j]
    return prev[n]


@njit(cache=True)
def edit_cost(a, b):
    prev = np.empty(b.size + 1, dtype=np.int64)
    cur = np.empty(b.size + 1, dtype=np.int64)
    return _cost_rows(a, b, prev, cur)


@njit(cache=True)
def align_ops(a, b):
    d = edit_matrix(a, b)
    i, j = a.size, b.size
    ops = np.empty(i + j, dtype=np.int8)
    k = 0
    while i > 0 or j > 0:
        if i > 0 and j > 0 and a[i - 1] == b[j - 1] and d[i, j] == d[i - 1, j - 1]:
            ops[k] = 0
            i -= 1
            j -= 1
        elif i > 0 and j > 0 and d[i, j] == d[i - 1, j - 1] + 1:
            ops[k] = 1
            i -= 1
            j -= 1
        elif j > 0 and d[i, j] == d[i, j - 1] + 1:
            ops[k] = 3
            j -= 1
        else:
            ops[k] = 2
            i -= 1
        k += 1
    return ops[:k][::-1].copy()


@njit(cache=True)
def best_shift(a, b, max_span, max_dist):
    n = a.size
    buf = np.empty(n, dtype=np.int64)
    prev = np.empty(b.size + 1, dtype=np.int64)
    cur = np.empty(b.size + 1, dtype=np.int64)
    best_cost, best_s, best_l, best_d = -1, -1, -1, -1
    for s in range(n):
        for length in range(1, min(max_span, n - s) + 1):
            lo = max(0, s - max_dist)
            hi = min(n - length, s + max_dist)
            for dest in range(lo, hi + 1):
                if dest == s:
                    continue
                # rest = a without the block; buf = rest[:dest] + block + rest[dest:]
                r = 0
                w = 0
                for idx in range(n):
                    if s <= idx < s + length:
                        continue
                    if r == dest:
                        for t in range(length):
                            buf[w] = a[s + t]
                            w += 1
                    buf[w] = a[idx]
                    w += 1
                    r += 1
                if r == dest:
                    for t in range(length):
                        buf[w] = a[s + t]
                        w += 1
                c = _cost_rows(buf, b, prev, cur)
                if best_cost < 0 or c < best_cost:
                    best_cost, best_s, best_l, best_d = c, s, length, dest
    return best_cost, best_s, best_l, best_d
