"""Exact integer and rational linear algebra.

Every routine here works on Python ints (arbitrary precision) or
``fractions.Fraction``; no floating point value is ever produced.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from operator import index
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    NonSquare,
    NotPositiveDefinite,
    NotSymmetric,
    RankDeficient,
)

__all__ = [
    "IntMatrix",
    "SNFResult",
    "ShortVectorList",
    "determinant",
    "snf",
    "hnf",
    "rank",
    "ldl",
    "is_positive_definite",
    "short_vectors",
    "brute_force_short_vectors",
    "gram_transform",
    "is_saturated",
    "solve_in_basis",
]


class IntMatrix:
    """Immutable dense matrix of Python integers."""

    __slots__ = ("_data", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        data = tuple(tuple(index(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionMismatch("ragged rows")
            if ncols is not None and ncols != width:
                raise DimensionMismatch(f"expected {ncols} columns, got {width}")
        else:
            width = ncols or 0
        object.__setattr__(self, "_data", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._data[i][j]
        return self._data[key]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return self.nrows

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            return self.shape == other.shape and self._data == other._data
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self._data]!r})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def transpose(self) -> IntMatrix:
        return IntMatrix(zip(*self._data), ncols=self.nrows) if self.nrows else IntMatrix([], ncols=0)

    T = property(transpose)

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        d = self._data
        return all(d[i][j] == d[j][i] for i in range(self.nrows) for j in range(i))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._data)) if other.nrows else [()] * other.ncols
        out = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum(a * c[k] for k, a in nz) for c in cols])
        return IntMatrix(out, ncols=other.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix([[self._data[i][j] for j in cols] for i in rows], ncols=len(cols))


def _as_matrix(M) -> IntMatrix:
    return M if isinstance(M, IntMatrix) else IntMatrix(M)


def determinant(M) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    M = _as_matrix(M)
    if not M.is_square:
        raise NonSquare(f"determinant of a {M.nrows}x{M.ncols} matrix")
    n = M.nrows
    if n == 0:
        return 1
    a = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    divisors: tuple[int, ...]


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for r in a:
        r[i], r[j] = r[j], r[i]


def _add_row(a, dst, src, q):
    """row[dst] += q * row[src]"""
    rd, rs = a[dst], a[src]
    for k, v in enumerate(rs):
        if v:
            rd[k] += q * v


def _add_col(a, dst, src, q):
    for r in a:
        if r[src]:
            r[dst] += q * r[src]


def snf(M) -> SNFResult:
    """Smith normal form with transforms: ``S == U @ M @ V``.

    Pivoting always moves the smallest nonzero entry (in absolute value) of the
    remaining block to the diagonal, so every reduction strictly decreases it.
    """
    M = _as_matrix(M)
    m, n = M.shape
    a = M.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        _swap_rows(a, t, bi)
        _swap_rows(U, t, bi)
        _swap_cols(a, t, bj)
        _swap_cols(V, t, bj)

        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q = -(a[i][t] // p)
                    _add_row(a, i, t, q)
                    _add_row(U, i, t, q)
            for j in range(t + 1, n):
                if a[t][j]:
                    q = -(a[t][j] // p)
                    _add_col(a, j, t, q)
                    _add_col(V, j, t, q)
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
            if rest:
                _, bi, bj = min(rest)
                if bi != t:
                    _swap_rows(a, t, bi)
                    _swap_rows(U, t, bi)
                else:
                    _swap_cols(a, t, bj)
                    _swap_cols(V, t, bj)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            _add_row(a, t, bad, 1)
            _add_row(U, t, bad, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]

    divisors = tuple(a[i][i] for i in range(min(m, n)))
    return SNFResult(IntMatrix(U, ncols=m), IntMatrix(a, ncols=n), IntMatrix(V, ncols=n), divisors)


def hnf(M) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form ``H = U @ M``.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)``, and zero
    rows sink to the bottom.
    """
    M = _as_matrix(M)
    m, n = M.shape
    a = M.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [(abs(a[i][c]), i) for i in range(r, m) if a[i][c]]
            if not nz:
                break
            _, bi = min(nz)
            _swap_rows(a, r, bi)
            _swap_rows(U, r, bi)
            p = a[r][c]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = -(a[i][c] // p)
                    _add_row(a, i, r, q)
                    _add_row(U, i, r, q)
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            U[r] = [-x for x in U[r]]
        p = a[r][c]
        for i in range(r):
            q = -(a[i][c] // p)
            if q:
                _add_row(a, i, r, q)
                _add_row(U, i, r, q)
        r += 1
    return IntMatrix(a, ncols=n), IntMatrix(U, ncols=m)


def rank(M) -> int:
    H, _ = hnf(M)
    return sum(1 for row in H if any(row))


def ldl(G) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact rational LDL^T of a symmetric matrix.

    Returns ``(L, D)`` with ``L`` unit lower triangular. Stops early at the
    first nonpositive pivot, in which case ``D`` is shorter than ``n`` and its
    last entry is that pivot.
    """
    G = _as_matrix(G)
    if not G.is_symmetric():
        raise NotSymmetric("matrix is not symmetric")
    n = G.nrows
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D: list[Fraction] = []
    for j in range(n):
        dj = Fraction(G[j, j]) - sum((L[j][k] ** 2 * D[k] for k in range(j)), Fraction(0))
        D.append(dj)
        if dj <= 0:
            break
        for i in range(j + 1, n):
            s = Fraction(G[i, j]) - sum((L[i][k] * L[j][k] * D[k] for k in range(j)), Fraction(0))
            L[i][j] = s / dj
    return L, D


def is_positive_definite(G) -> bool:
    G = _as_matrix(G)
    _, D = ldl(G)
    return len(D) == G.nrows and all(d > 0 for d in D)


@dataclass(frozen=True)
class ShortVectorList:
    """One representative per +-v pair, first nonzero coordinate positive."""

    bound: int
    pairs: tuple[tuple[tuple[int, ...], int], ...]

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    @property
    def vectors(self) -> list[tuple[int, ...]]:
        return [v for v, _ in self.pairs]

    @property
    def norms(self) -> list[int]:
        return [q for _, q in self.pairs]

    def count_vectors(self) -> int:
        """Number of lattice vectors counting both signs."""
        return 2 * len(self.pairs)

    def min_norm(self) -> int | None:
        return min(self.norms, default=None)


def _quad(G: IntMatrix, x: Sequence[int]) -> int:
    n = len(x)
    nz = [i for i in range(n) if x[i]]
    return sum(x[i] * G[i, j] * x[j] for i in nz for j in nz)


def _canonical(pairs) -> tuple:
    return tuple(sorted(pairs))


def _integer_window(c: Fraction, t: Fraction) -> range:
    """Integers v with (v + c)^2 <= t."""
    s = math.isqrt(math.floor(t)) + 1
    lo = math.floor(-c - s)
    hi = math.ceil(-c + s)
    while lo <= hi and (lo + c) ** 2 > t:
        lo += 1
    while hi >= lo and (hi + c) ** 2 > t:
        hi -= 1
    return range(lo, hi + 1)


def short_vectors(G, bound: int) -> ShortVectorList:
    """All nonzero v (up to sign) with v^T G v <= bound, by Fincke-Pohst.

    The pruning intervals come from an exact rational LDL decomposition, so the
    enumeration is provably exhaustive.
    """
    G = _as_matrix(G)
    bound = index(bound)
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    if not is_positive_definite(G):
        raise NotPositiveDefinite("short-vector enumeration needs a positive definite form")
    n = G.nrows
    # Reverse the coordinate order so that x[0] is enumerated first; that lets
    # the sign normalisation prune half the tree.
    rev = IntMatrix([[G[n - 1 - i, n - 1 - j] for j in range(n)] for i in range(n)], ncols=n)
    L, D = ldl(rev)
    y = [0] * n
    found = []

    def walk(j: int, budget: Fraction, all_zero: bool):
        c = sum((L[i][j] * y[i] for i in range(j + 1, n) if y[i]), Fraction(0))
        for v in _integer_window(c, budget / D[j]):
            if all_zero and v < 0:
                continue
            y[j] = v
            rest = budget - D[j] * (v + c) ** 2
            if j == 0:
                if not (all_zero and v == 0):
                    x = tuple(reversed(y))
                    found.append((x, _quad(G, x)))
            else:
                walk(j - 1, rest, all_zero and v == 0)
        y[j] = 0

    if n:
        walk(n - 1, Fraction(bound), True)
    return ShortVectorList(bound, _canonical(found))


def brute_force_short_vectors(G, bound: int, box) -> ShortVectorList:
    """Exhaustive search over the coefficient box ``|x_i| <= box``.

    ``box`` is one integer or one per coordinate. Only correct when the box
    contains every solution; choosing it is the caller's job.

    Every point of the box is evaluated. The coordinates are split in two
    halves so the cross terms can be formed as one integer matrix product;
    int64 is used only when no intermediate can overflow.
    """
    G = _as_matrix(G)
    bound = index(bound)
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    if not is_positive_definite(G):
        raise NotPositiveDefinite("brute-force enumeration needs a positive definite form")
    n = G.nrows
    boxes = [index(box)] * n if isinstance(box, int) else [index(b) for b in box]
    if len(boxes) != n or any(b < 0 for b in boxes):
        raise ValueError("box must be a nonnegative integer or one per coordinate")
    worst = sum(abs(G[i, j]) * boxes[i] * boxes[j] for i in range(n) for j in range(n))
    if worst >= 2**62:
        found = _brute_force_pure(G, bound, boxes)
    else:
        found = _brute_force_int64(G, bound, boxes)
    return ShortVectorList(bound, _canonical(found))


def _positive_first(x) -> bool:
    return next((v for v in x if v), 0) > 0


def _brute_force_pure(G, bound, boxes):
    found = []
    for x in itertools.product(*(range(-b, b + 1) for b in boxes)):
        if _positive_first(x):
            q = _quad(G, x)
            if q <= bound:
                found.append((x, q))
    return found


def _brute_force_int64(G, bound, boxes):
    import numpy as np

    n = G.nrows
    k = n // 2
    g = np.array(G.tolist(), dtype=np.int64).reshape(n, n)
    A, B, C = g[:k, :k], g[:k, k:], g[k:, k:]

    def grid(bs):
        axes = [np.arange(-b, b + 1, dtype=np.int64) for b in bs]
        if not axes:
            return np.zeros((1, 0), dtype=np.int64)
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(bs))

    U, W = grid(boxes[:k]), grid(boxes[k:])
    qu = np.einsum("ij,jk,ik->i", U, A, U)
    qw = np.einsum("ij,jk,ik->i", W, C, W)
    cross = 2 * (U @ B)
    step = max(1, (1 << 22) // len(W))
    found = []
    for s in range(0, len(U), step):
        tot = qu[s:s + step, None] + qw[None, :] + cross[s:s + step] @ W.T
        iu, iw = np.nonzero((tot > 0) & (tot <= bound))
        for a, b in zip(iu.tolist(), iw.tolist()):
            x = tuple(U[s + a].tolist()) + tuple(W[b].tolist())
            if _positive_first(x):
                found.append((x, int(tot[a, b])))
    return found


def gram_transform(B, G) -> IntMatrix:
    """Return ``B @ G @ B.T``."""
    B, G = _as_matrix(B), _as_matrix(G)
    if B.ncols != G.nrows or not G.is_square:
        raise DimensionMismatch(f"basis {B.shape} incompatible with Gram {G.shape}")
    return B @ G @ B.transpose()


def is_saturated(B) -> bool:
    """True iff the rows of B span a primitive subgroup of Z^N."""
    B = _as_matrix(B)
    if rank(B) != B.nrows:
        raise RankDeficient(f"{B.nrows} rows but rank {rank(B)}")
    return all(d == 1 for d in snf(B).divisors if d)


def solve_in_basis(B, v: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Rational coordinates c with ``c @ B == v``, or None if v is outside the span.

    B must have independent rows.
    """
    B = _as_matrix(B)
    r, n = B.shape
    if len(v) != n:
        raise DimensionMismatch("vector length does not match basis")
    # Gaussian elimination on the augmented system B^T c = v.
    a = [[Fraction(B[i, j]) for i in range(r)] + [Fraction(v[j])] for j in range(n)]
    piv_cols = []
    row = 0
    for col in range(r):
        p = next((i for i in range(row, n) if a[i][col]), None)
        if p is None:
            raise RankDeficient("basis rows are dependent")
        a[row], a[p] = a[p], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for i in range(n):
            if i != row and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        piv_cols.append(col)
        row += 1
    if any(a[i][r] for i in range(row, n)):
        return None
    return tuple(a[i][r] for i in range(r))
