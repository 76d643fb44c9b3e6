"""The groups G_{m,k}: LOG presentations and the monodromy automorphism.

Generator order for the free kernel is fixed as A_1..A_m then B_1..B_k, so
``A_i`` has index ``i - 1`` and ``B_j`` has index ``m + j - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .words import Alphabet, AlphabetError, Word, free_alphabet, invert, log_alphabet, reduce


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...]

    @property
    def generators(self) -> tuple[str, ...]:
        return self.alphabet.names

    @property
    def rank(self) -> int:
        return self.alphabet.rank

    def format_relators(self) -> list[str]:
        return [self.alphabet.format(r, compact=False) for r in self.relators]


def check_mk(m: int, k: int, k_min: int = 0) -> None:
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    if not k_min <= k <= m:
        raise ParameterError(f"k must satisfy {k_min} <= k <= m={m}, got {k}")


def presentation(m: int, k: int) -> Presentation:
    """LOG presentation of G_{m,k} on generators a_1..a_{m+k+1}.

    Relators are the commutators ``a_i a_{i+1} a_i^-1 a_{i+1}^-1`` for
    ``i = 1..m`` followed by ``a_{m+j+1}^-1 a_j a_{m+j+1} a_{m+j}^-1`` for
    ``j = 1..k``.
    """
    check_mk(m, k)
    n = m + k + 1
    rels = []
    for i in range(1, m + 1):
        rels.append(reduce([i, i + 1, -i, -(i + 1)], n))
    for j in range(1, k + 1):
        rels.append(reduce([-(m + j + 1), j, m + j + 1, -(m + j)], n))
    return Presentation(log_alphabet(n), tuple(rels))


@dataclass(frozen=True)
class Endomorphism:
    """A substitution on a free group of given rank, optionally with a declared inverse."""

    rank: int
    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...] | None = None
    alphabet: Alphabet | None = None

    def __post_init__(self) -> None:
        if len(self.images) != self.rank:
            raise ParameterError("need one image per generator")
        for w in self.images + (self.inverse_images or ()):
            if w.rank != self.rank:
                raise AlphabetError("image over a different alphabet")

    def inverse(self) -> "Endomorphism":
        if self.inverse_images is None:
            raise ValueError("no declared inverse")
        return Endomorphism(self.rank, self.inverse_images, self.images, self.alphabet)

    def check_inverse(self) -> bool:
        if self.inverse_images is None:
            return False
        inv = self.inverse()
        for x in range(self.rank):
            g = Word.generator(x, self.rank)
            if apply(self, apply(inv, g)) != g or apply(inv, apply(self, g)) != g:
                return False
        return True

    def table(self) -> dict[str, str]:
        alpha = self.alphabet or Alphabet([f"x{i}" for i in range(1, self.rank + 1)])
        return {alpha.names[i]: alpha.format(w) for i, w in enumerate(self.images)}


def identity(rank: int, alphabet: Alphabet | None = None) -> Endomorphism:
    gens = tuple(Word.generator(i, rank) for i in range(rank))
    return Endomorphism(rank, gens, gens, alphabet)


def _w(codes: Sequence[int], rank: int) -> Word:
    return reduce(codes, rank)


def make_phi(m: int, k: int) -> Endomorphism:
    """Monodromy automorphism of G_{m,k} on A_1..A_m, B_1..B_k, with its inverse."""
    check_mk(m, k, k_min=1)
    r = m + k
    A = lambda i: i  # noqa: E731  (1-based A_i -> code)
    B = lambda j: m + j  # noqa: E731
    prefix = [A(i) for i in range(1, m + 1)]
    images, inv = [], []
    for i in range(1, m + 1):
        head = [A(t) for t in range(1, i)]
        images.append(_w(head + [A(i)] + [-c for c in reversed(head)], r))
        inv.append(_w([-c for c in head] + [A(i)] + list(reversed(head)), r))
    for j in range(1, k + 1):
        tail = [-A(t) for t in range(j - 1, 0, -1)]
        images.append(_w(prefix + [B(t) for t in range(1, j + 1)] + tail, r))
        if j == 1:
            inv.append(_w([-A(t) for t in range(1, m + 1)] + [B(1)], r))
        else:
            head = [-A(t) for t in range(1, j - 1)]
            inv.append(_w(head + [-B(j - 1), B(j)] + [A(t) for t in range(j - 1, 0, -1)], r))
    return Endomorphism(r, tuple(images), tuple(inv), free_alphabet(m, k))


def sign_flip_A(m: int, k: int) -> Endomorphism:
    """The involution A_j -> A_j^-1 (B generators fixed)."""
    r = m + k
    imgs = tuple(Word.generator(i, r, -1 if i < m else 1) for i in range(r))
    return Endomorphism(r, imgs, imgs, free_alphabet(m, k))


def apply(e: Endomorphism, w: Word) -> Word:
    if w.rank != e.rank:
        raise AlphabetError(f"rank mismatch: word {w.rank}, endomorphism {e.rank}")
    imgs = e.images
    out: list[int] = []
    for c in w.letters:
        if c > 0:
            piece = imgs[c - 1].letters
        else:
            piece = tuple(-x for x in reversed(imgs[-c - 1].letters))
        for x in piece:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return Word(tuple(out), e.rank)


def iterate(e: Endomorphism, w: Word, n: int) -> Word:
    if n < 0:
        raise ParameterError("n must be nonnegative")
    for _ in range(n):
        w = apply(e, w)
    return w


def orbit(e: Endomorphism, w: Word, n_max: int) -> list[Word]:
    """``[w, e(w), ..., e^n_max(w)]``."""
    out = [w]
    for _ in range(n_max):
        out.append(apply(e, out[-1]))
    return out


def compose(f: Endomorphism, g: Endomorphism) -> Endomorphism:
    """``f o g``: the image of ``x`` is ``f(g(x))``."""
    if f.rank != g.rank:
        raise AlphabetError(f"rank mismatch: {f.rank} vs {g.rank}")
    images = tuple(apply(f, w) for w in g.images)
    inv = None
    if f.inverse_images is not None and g.inverse_images is not None:
        inv = tuple(apply(g.inverse(), w) for w in f.inverse_images)
    return Endomorphism(f.rank, images, inv, f.alphabet or g.alphabet)


def power(e: Endomorphism, d: int) -> Endomorphism:
    out = identity(e.rank, e.alphabet)
    for _ in range(d):
        out = compose(e, out)
    return out


def restrict(e: Endomorphism, rank: int) -> tuple[Word, ...]:
    """Images of the first ``rank`` generators, for comparison across ranks."""
    return e.images[:rank]


__all__ = [
    "Endomorphism",
    "ParameterError",
    "Presentation",
    "apply",
    "compose",
    "identity",
    "invert",
    "iterate",
    "make_phi",
    "orbit",
    "power",
    "presentation",
    "sign_flip_A",
]
