"""Reference Gram matrices for the hand-built cases, transcribed
entry by entry as functions of the parameters n_1, n_2, ...

Indices: 0 is h^2, k >= 1 is the k-th generator. Only the upper triangle is
listed; the displayed matrices are symmetric (B^T below the diagonal).
"""

from math import isqrt


def _rt(a, b):
    r = isqrt(a * b)
    assert r * r == a * b, (a, b)
    return r


def _build(size, entries):
    g = [[0] * size for _ in range(size)]
    for (i, j), v in entries.items():
        g[i][j] = v
        g[j][i] = v
    return g


def rank4_case(case, n):
    n1, n2, n3 = n
    diag = {
        "L3-C1": (3, 2 * n1, 2 * n2, 2 * n3),
        "L3-C2": (3, 2 * n1, 2 * n2, 2 * n3 + 1),
        "L3-C3": (3, 2 * n1, 2 * n2 + 1, 2 * n3 + 1),
        "L3-C4": (3, 2 * n1 + 1, 2 * n2 + 1, 2 * n3 + 1),
    }[case]
    h2_row = {
        "L3-C1": (0, 0, 0),
        "L3-C2": (0, 0, 1),
        "L3-C3": (0, 1, 1),
        "L3-C4": (1, 1, 1),
    }[case]
    e = {(i, i): d for i, d in enumerate(diag)}
    e.update({(0, k): v for k, v in enumerate(h2_row, start=1)})
    return _build(4, e)


def rank5_case(case, n):
    n1, n2, n3, n4 = n
    diag = {
        "T4-C1": (3, 2 * n1, 2 * n2, 2 * n3, 2 * n4),
        "T4-C2": (3, 2 * n1, 2 * n2, 2 * n3, 2 * n4 + 1),
        "T4-C3": (3, 2 * n1, 2 * n2, 2 * n3 + 1, 2 * n4 + 1),
        "T4-C4": (3, 2 * n1, 2 * n2 + 1, 2 * n3 + 1, 2 * n4 + 1),
        "T4-C5": (3, 2 * n1 + 1, 2 * n2 + 1, 2 * n3 + 1, 2 * n4 + 1),
    }[case]
    h2_row = {
        "T4-C1": (0, 0, 0, 0),
        "T4-C2": (0, 0, 0, 1),
        "T4-C3": (0, 0, 1, 1),
        "T4-C4": (0, 1, 1, 1),
        "T4-C5": (1, 1, 1, 1),
    }[case]
    e = {(i, i): d for i, d in enumerate(diag)}
    e.update({(0, k): v for k, v in enumerate(h2_row, start=1)})
    e[(3, 4)] = _rt(n3, n4)
    return _build(5, e)


def twenty_unshifted(n):
    """Blocks A, B, C of the all-0-mod-6 rank-21 matrix."""
    n = (None,) + tuple(n)  # 1-based
    e = {(0, 0): 3}
    for k in range(1, 21):
        e[(k, k)] = 2 * n[k]
    e[(3, 4)] = _rt(n[3], n[4])
    for i, j in [(5, 11), (6, 11), (6, 13), (6, 19), (7, 15), (7, 19), (8, 12),
                 (9, 12), (9, 14), (9, 20), (10, 16), (10, 20), (15, 17), (16, 18)]:
        e[(i, j)] = -_rt(n[i], n[j])
    return _build(21, e)


def twenty_shifted(n):
    """Blocks A, B, C of the all-2-mod-6 rank-21 matrix, as printed."""
    n = (None,) + tuple(n)
    e = {(0, 0): 3}
    for k in range(1, 21):
        e[(0, k)] = 1
        e[(k, k)] = 2 * n[k] + 1
    # block A
    for i, j in [(1, 4), (1, 8), (2, 3), (2, 7), (3, 7), (4, 8),
                 (5, 6), (5, 9), (5, 10), (6, 9), (6, 10), (9, 10)]:
        e[(i, j)] = 1
    e[(3, 4)] = _rt(n[3], n[4])
    # block B: rows 1..10 against columns 11..20
    for j in range(15, 21):
        e[(1, j)] = 1
        e[(4, j)] = 1
        e[(8, j)] = 1
    e[(2, 14)] = 1
    e[(3, 14)] = 1
    e[(7, 14)] = 1
    e[(5, 11)] = 1 - _rt(n[5], n[11])
    e[(5, 12)] = 1
    e[(5, 13)] = 1
    e[(6, 11)] = 1 - _rt(n[6], n[11])
    e[(6, 12)] = 1
    e[(6, 13)] = 1 - _rt(n[6], n[13])
    e[(6, 19)] = -_rt(n[6], n[19])
    e[(7, 15)] = -_rt(n[7], n[15])
    e[(7, 19)] = -_rt(n[7], n[19])
    e[(8, 12)] = -_rt(n[8], n[12])
    e[(9, 11)] = 1
    e[(9, 12)] = 1 - _rt(n[9], n[12])
    e[(9, 13)] = 1
    e[(9, 14)] = -_rt(n[9], n[14])
    e[(9, 20)] = -_rt(n[9], n[20])
    e[(10, 11)] = 1
    e[(10, 12)] = 1
    e[(10, 13)] = 1
    e[(10, 16)] = -_rt(n[10], n[16])
    e[(10, 20)] = -_rt(n[10], n[20])
    # block C
    e[(11, 12)] = 1
    e[(11, 13)] = 1
    e[(12, 13)] = 1
    e[(15, 17)] = -_rt(n[15], n[17])
    e[(16, 18)] = -_rt(n[16], n[18])
    return _build(21, e)


def printed_gram(case, n):
    if case.startswith("L3-"):
        return rank4_case(case, n)
    if case.startswith("T4-"):
        return rank5_case(case, n)
    if case == "P20":
        return twenty_unshifted(n)
    if case == "T20":
        return twenty_shifted(n)
    raise KeyError(case)
