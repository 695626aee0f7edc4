import numpy as np


def edit_matrix(a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    m, n = a.size, b.size
    d = np.empty((m + 1, n + 1), dtype=np.int64)
    cols = np.arange(n + 1, dtype=np.int64)
    d[0] = cols
    for i in range(1, m + 1):
        prev = d[i - 1]
        t = np.empty(n + 1, dtype=np.int64)
        t[0] = i
        np.minimum(prev[:-1] + (b != a[i - 1]), prev[1:] + 1, out=t[1:])
        # d[i, j] = min_k<=j t[k] + (j - k): the horizontal chain is a running min
        d[i] = np.minimum.accumulate(t - cols) + cols
    return d


def edit_cost(a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = b.size
    cols = np.arange(n + 1, dtype=np.int64)
    prev = cols.copy()
    t = np.empty(n + 1, dtype=np.int64)
    for i in range(1, a.size + 1):
        t[0] = i
        np.minimum(prev[:-1] + (b != a[i - 1]), prev[1:] + 1, out=t[1:])
        prev = np.minimum.accumulate(t - cols) + cols
    return int(prev[n])


def align_ops(a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    d = edit_matrix(a, b).tolist()
    a = a.tolist()
    b = b.tolist()
    i, j = len(a), len(b)
    ops = []
    while i > 0 or j > 0:
        if i > 0 and j > 0 and a[i - 1] == b[j - 1] and d[i][j] == d[i - 1][j - 1]:
            ops.append(0)
            i -= 1
            j -= 1
        elif i > 0 and j > 0 and d[i][j] == d[i - 1][j - 1] + 1:
            ops.append(1)
            i -= 1
            j -= 1
        elif j > 0 and d[i][j] == d[i][j - 1] + 1:
            ops.append(3)
            j -= 1
        else:
            ops.append(2)
            i -= 1
    return np.array(ops[::-1], dtype=np.int8)


def best_shift(a, b, max_span, max_dist):
    a = np.asarray(a, dtype=np.int64)
    n = a.size
    best = (-1, -1, -1, -1)
    for s in range(n):
        for length in range(1, min(max_span, n - s) + 1):
            block = a[s:s + length]
            rest = np.concatenate((a[:s], a[s + length:]))
            for dest in range(max(0, s - max_dist), min(n - length, s + max_dist) + 1):
                if dest == s:
                    continue
                shifted = np.concatenate((rest[:dest], block, rest[dest:]))
                c = edit_cost(shifted, b)
                if best[0] < 0 or c < best[0]:
                    best = (c, s, length, dest)
    return best
