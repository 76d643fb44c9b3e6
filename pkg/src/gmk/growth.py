"""Growth of phi_{m,k} and its inverse.

Exact length tables come from iterating the substitution.  Everything else
in this module is an independent oracle for those tables: closed-form words
and lengths, the recurrence for phi^n(B_{k+1}), and the two recurrent upper
bound functions.
"""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .family import Endomorphism, ParameterError, check_mk, orbit
from .words import Word, invert, reduce


@dataclass
class GrowthTable:
    m: int
    k: int
    n_max: int
    lengths: dict[str, list[int]]
    gr: list[int]
    inverse: bool = False
    monotone: bool = field(default=True)

    def to_json(self, degree_estimate: Fraction | None = None) -> dict:
        out = {
            "m": self.m,
            "k": self.k,
            "inverse": self.inverse,
            "n_max": self.n_max,
            "lengths": self.lengths,
            "gr": self.gr,
        }
        if degree_estimate is not None:
            out["degree_estimate"] = f"{float(degree_estimate):.2f}"
        return out


def growth_table(e: Endomorphism, n_max: int, m: int = 0, k: int = 0, inverse: bool = False) -> GrowthTable:
    if n_max < 0:
        raise ParameterError("n_max must be nonnegative")
    names = e.alphabet.names if e.alphabet else [f"x{i}" for i in range(1, e.rank + 1)]
    lengths = {}
    for x in range(e.rank):
        lengths[names[x]] = [len(w) for w in orbit(e, Word.generator(x, e.rank), n_max)]
    gr = [max(col[n] for col in lengths.values()) for n in range(n_max + 1)]
    monotone = all(a <= b for a, b in zip(gr, gr[1:]))
    return GrowthTable(m, k, n_max, lengths, gr, inverse, monotone)


# -- closed forms -------------------------------------------------------------

def closed_form_length(symbol: str, m: int, n: int, inverse: bool = False) -> int:
    """Length of phi^n(symbol) (or phi^-n when ``inverse``) in G_{m,k}, k >= index of symbol.

    Known for every A_i and for B_1 in both directions, and for B_2 forwards.
    """
    kind, idx = symbol[0], int(symbol[1:])
    if kind == "A":
        if not 1 <= idx <= m:
            raise ParameterError(f"A{idx} not a generator for m={m}")
        return 2 * (idx - 1) * n + 1
    if kind == "B" and idx == 1:
        return m * n + 1
    if kind == "B" and idx == 2 and not inverse:
        if m < 2:
            raise ParameterError("B2 needs m >= 2")
        return m * n * (n + 1) // 2 + 2 * n + 1
    raise ParameterError(f"no closed form for {symbol} ({'inverse' if inverse else 'forward'})")


def _A(i: int) -> int:
    return i


def phi_n_A(m: int, i: int, n: int, rank: int) -> Word:
    """A_1^n .. A_{i-1}^n A_i A_{i-1}^-n .. A_1^-n."""
    head = [_A(t) for t in range(1, i) for _ in range(n)]
    return reduce(head + [_A(i)] + [-c for c in reversed(head)], rank)


def phi_n_B1(m: int, n: int, rank: int) -> Word:
    """A_1^n .. A_m^n B_1."""
    return reduce([_A(t) for t in range(1, m + 1) for _ in range(n)] + [m + 1], rank)


def phi_n_A_prefix(j: int, n: int, rank: int) -> Word:
    """phi^n(A_1 .. A_j) = A_1^{n+1} .. A_{j-1}^{n+1} A_j A_{j-1}^-n .. A_1^-n."""
    if j == 0:
        return Word.identity(rank)
    head = [_A(t) for t in range(1, j) for _ in range(n + 1)]
    tail = [-_A(t) for t in range(j - 1, 0, -1) for _ in range(n)]
    return reduce(head + [_A(j)] + tail, rank)


def recurrence_iterate_B(m: int, k: int, n: int, rank: int | None = None) -> Word:
    """phi^n(B_{k+1}) from the splitting

        phi^n(B_{k+1}) = phi^n(B_k) phi^{n-1}(A_1..A_{k-1}) phi^{n-1}(B_{k+1}) phi^{n-1}(A_1..A_k)^-1

    with phi^n(B_1) and phi^n(A_1..A_j) taken from their closed forms.  Does not
    touch the substitution engine.
    """
    if not (1 <= k and k + 1 <= m):
        raise ParameterError(f"need 1 <= k and k+1 <= m, got m={m}, k={k}")
    if n < 1:
        raise ParameterError("n must be >= 1")
    r = rank if rank is not None else m + k + 1

    @lru_cache(maxsize=None)
    def phiB(j: int, t: int) -> Word:
        if t == 0:
            return Word.generator(m + j - 1, r)
        if j == 1:
            return phi_n_B1(m, t, r)
        return (
            phiB(j - 1, t)
            * phi_n_A_prefix(j - 2, t - 1, r)
            * phiB(j, t - 1)
            * invert(phi_n_A_prefix(j - 1, t - 1, r))
        )

    return phiB(k + 1, n)


def T_word(m: int, k: int, i: int, rank: int) -> Word:
    """T_{1,i} = B_1 and T_{k,i} = B_k A_{k-1}^i .. A_1^i."""
    if k == 1:
        return Word.generator(m, rank)
    codes = [m + k] + [_A(t) for t in range(k - 1, 0, -1) for _ in range(i)]
    return reduce(codes, rank)


def S_word(m: int, i: int, rank: int) -> Word:
    """S_i = A_1^-i A_2^-i .. A_m^-i."""
    return reduce([-_A(t) for t in range(1, m + 1) for _ in range(i)], rank)


# -- recurrent upper bounds ---------------------------------------------------

def upper_bound_g(m: int, k: int, n: int) -> int:
    """Recurrent upper bound for |phi^n(B_k)|."""
    check_mk(m, k, k_min=1)
    if n < 0:
        raise ParameterError("n must be nonnegative")
    return _g(m, k, n)


@lru_cache(maxsize=None)
def _g(m: int, k: int, n: int) -> int:
    if n == 0:
        return 1
    if k == 1:
        return m * n + 1
    if k == 2:
        return m * n * (n + 1) // 2 + 2 * n + 1
    j = k - 1
    return _g(m, j, n) + _g(m, k, n - 1) + (4 * j - 6) * n - (2 * j - 5)


def upper_bound_g_inv(m: int, k: int, i: int, n: int) -> int:
    """Recurrent upper bound for |phi^-n(T_{k,i})|; i = 0 bounds |phi^-n(B_k)|."""
    if m < 1 or k < 1 or i < 0 or n < 0:
        raise ParameterError("need m, k >= 1 and i, n >= 0")
    return _g_inv(m, k, i, n)


@lru_cache(maxsize=None)
def _g_inv(m: int, k: int, i: int, n: int) -> int:
    if k == 1:
        return m * n + 1
    if n == 0:
        return (k - 1) * i + 1
    return _g_inv(m, k - 1, 1, n - 1) + _g_inv(m, k, i + 1, n - 1)


# -- degree estimation --------------------------------------------------------

def estimate_degree(values: Sequence[int], start: int = 0) -> Fraction:
    """Log-log slope of ``values`` against ``n`` over the top half of the range.

    ``values[i]`` is the sample at ``n = start + i``.  The fit uses the points
    with ``n >= n_max / 2`` and is rounded to two decimals.
    """
    pts = [(start + i, v) for i, v in enumerate(values) if start + i >= 1]
    if len(pts) < 8:
        raise ValueError(f"need at least 8 samples with n >= 1, got {len(pts)}")
    if any(v <= 0 for _, v in pts):
        raise ValueError("values must be positive")
    n_max = pts[-1][0]
    top = [(n, v) for n, v in pts if 2 * n >= n_max]
    slope, _ = statistics.linear_regression([math.log(n) for n, _ in top], [math.log(v) for _, v in top])
    return Fraction(round(slope * 100), 100)
