"""Exact integer linear algebra for abelianized endomorphisms.

Convention: column ``j`` of an abelianization matrix is the image of
generator ``j``, so entry ``(i, j)`` is the exponent sum of generator ``i``
in the image of generator ``j``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .family import Endomorphism


class NotUnipotentError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix dimensions must be positive")
        w = len(self.entries[0])
        if any(len(r) != w for r in self.entries):
            raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix.from_rows([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix.from_rows([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        return IntMatrix.from_rows([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "IntMatrix":
        return IntMatrix.from_rows([r[c0:c1] for r in self.entries[r0:r1]])

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def _same_shape(self, other: "IntMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")


@dataclass(frozen=True)
class JordanProfile:
    sizes: tuple[int, ...]  # sorted descending

    @property
    def largest(self) -> int:
        return self.sizes[0] if self.sizes else 0

    @property
    def count(self) -> int:
        return len(self.sizes)

    def as_multiset(self) -> dict[int, int]:
        return dict(sorted(Counter(self.sizes).items(), reverse=True))


def abelianization_matrix(e: Endomorphism) -> IntMatrix:
    n = e.rank
    rows = [[0] * n for _ in range(n)]
    for j, img in enumerate(e.images):
        for c in img.letters:
            rows[abs(c) - 1][j] += 1 if c > 0 else -1
    return IntMatrix.from_rows(rows)


def power(M: IntMatrix, n: int) -> IntMatrix:
    if not M.is_square:
        raise ValueError("power of a non-square matrix")
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = IntMatrix.identity(M.rows)
    base = M
    while n:
        if n & 1:
            out = out @ base
        base = base @ base
        n >>= 1
    return out


def rank(M: IntMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    a = M.to_lists()
    rows, cols = M.rows, M.cols
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == rows:
            break
    return r


def unipotent_jordan_profile(M: IntMatrix) -> JordanProfile:
    """Jordan block sizes of a unipotent matrix from the ranks of (M - I)^j."""
    if not M.is_square:
        raise ValueError("non-square matrix")
    n = M.rows
    N = M - IntMatrix.identity(n)
    ranks = [n]
    P = IntMatrix.identity(n)
    for _ in range(n):
        P = P @ N
        ranks.append(rank(P))
    if ranks[-1] != 0:
        raise NotUnipotentError("(M - I)^dim is nonzero")
    ranks.append(0)
    # number of blocks of size >= j is ranks[j-1] - ranks[j]
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, n + 2)]
    sizes = []
    for j in range(1, n + 1):
        sizes += [j] * (at_least[j - 1] - at_least[j])
    return JordanProfile(tuple(sorted(sizes, reverse=True)))


def norms(M: IntMatrix) -> tuple[int, int]:
    """(sup norm, l-infinity operator norm = max absolute row sum)."""
    sup = max(abs(x) for r in M.entries for x in r)
    linf = max(sum(abs(x) for x in r) for r in M.entries)
    return sup, linf


def column_l1(M: IntMatrix, j: int) -> int:
    if not 0 <= j < M.cols:
        raise IndexError(f"column {j} out of range")
    return sum(abs(x) for x in M.column(j))


# -- the stated block pattern for phi_{m,k} -----------------------------------

def c_coeff(i: int, n: int) -> int:
    """c_{i,n} = C(n+i-1, i), with c_{0,n} = 1."""
    return 1 if i == 0 else comb(n + i - 1, i)


def stated_block_form(m: int, k: int) -> IntMatrix:
    """[[I_m, D], [0, C]] with D all ones and C upper unitriangular all ones."""
    rows = []
    for i in range(m):
        rows.append([int(i == j) for j in range(m)] + [1] * k)
    for i in range(k):
        rows.append([0] * m + [int(j >= i) for j in range(k)])
    return IntMatrix.from_rows(rows)


def stated_power_pattern(m: int, k: int, n: int) -> IntMatrix:
    """[[I_m, P], [0, Q]] with P rows (c_1n..c_kn) and Q upper Toeplitz in c_{*,n}."""
    rows = []
    for i in range(m):
        rows.append([int(i == j) for j in range(m)] + [c_coeff(j, n) for j in range(1, k + 1)])
    for i in range(k):
        rows.append([0] * m + [c_coeff(j - i, n) if j >= i else 0 for j in range(k)])
    return IntMatrix.from_rows(rows)


def true_block_D(m: int, k: int) -> IntMatrix:
    """Top-right block of the abelianized phi_{m,k}: D[i][j] = 1 iff i >= j (0-based)."""
    return IntMatrix.from_rows([[int(i >= j) for j in range(k)] for i in range(m)])
