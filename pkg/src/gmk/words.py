"""Free group words over a finite ranked alphabet.

Letters are stored as nonzero signed integers: generator ``i`` (0-based) is
``i + 1`` and its inverse is ``-(i + 1)``.  A :class:`Word` is always freely
reduced and carries the rank of the alphabet it lives over.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence


class AlphabetError(ValueError):
    """A letter outside the alphabet, or two alphabets mixed."""


class GenSymbol(NamedTuple):
    index: int
    sign: int = 1

    @property
    def code(self) -> int:
        return self.sign * (self.index + 1)

    @classmethod
    def from_code(cls, code: int) -> "GenSymbol":
        return cls(abs(code) - 1, 1 if code > 0 else -1)


def _check(code: int, rank: int) -> None:
    if code == 0 or abs(code) > rank:
        raise AlphabetError(f"letter {code} outside alphabet of rank {rank}")


def _codes(raw: Iterable[int | GenSymbol]) -> Iterator[int]:
    for x in raw:
        yield x.code if isinstance(x, GenSymbol) else x


def _reduce_codes(codes: Iterable[int], rank: int) -> tuple[int, ...]:
    stack: list[int] = []
    for c in codes:
        _check(c, rank)
        if stack and stack[-1] == -c:
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    rank: int

    def __post_init__(self) -> None:
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise ValueError("Word letters must be freely reduced; use reduce()")
        for c in self.letters:
            _check(c, self.rank)

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    @classmethod
    def generator(cls, index: int, rank: int, sign: int = 1) -> "Word":
        return cls((sign * (index + 1),), rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def symbols(self) -> list[GenSymbol]:
        return [GenSymbol.from_code(c) for c in self.letters]

    def __mul__(self, other: "Word") -> "Word":
        if other.rank != self.rank:
            raise AlphabetError(f"rank mismatch: {self.rank} vs {other.rank}")
        a, b = self.letters, other.letters
        i = 0
        n = min(len(a), len(b))
        while i < n and a[-1 - i] == -b[i]:
            i += 1
        return Word(a[: len(a) - i] + b[i:], self.rank)

    def inverse(self) -> "Word":
        return invert(self)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, p: int) -> "Word":
        if p < 0:
            return invert(self) ** (-p)
        core, conj = cyclically_reduce(self)
        return Word(conj.letters + core.letters * p + invert(conj).letters, self.rank)

    def is_identity(self) -> bool:
        return not self.letters


def reduce(raw: Iterable[int | GenSymbol], rank: int) -> Word:
    """Freely reduce a sequence of letters in one left-to-right stack pass."""
    return Word(_reduce_codes(_codes(raw), rank), rank)


def invert(w: Word) -> Word:
    return Word(tuple(-c for c in reversed(w.letters)), w.rank)


def cyclically_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``conjugator * core * conjugator^-1`` with ``core`` cyclically reduced."""
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    return Word(letters[i : j + 1], w.rank), Word(letters[:i], w.rank)


def concat(words: Sequence[Word], rank: int) -> Word:
    out = Word.identity(rank)
    for w in words:
        out = out * w
    return out


class Alphabet:
    """Display names for generator indices, plus the textual word syntax.

    Words are written as whitespace-separated letters, each a generator name
    optionally followed by ``^n`` (``n`` a nonzero integer, e.g. ``A1^-1``).
    """

    _token = re.compile(r"^([A-Za-z]+[0-9]*)(?:\^(-?[0-9]+))?$")

    def __init__(self, names: Sequence[str]):
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        self.names = tuple(names)
        self._index = {name: i for i, name in enumerate(self.names)}

    @property
    def rank(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlphabetError(f"unknown generator {name!r}") from None

    def gen(self, name: str, sign: int = 1) -> Word:
        return Word.generator(self.index(name), self.rank, sign)

    def parse(self, text: str) -> Word:
        codes: list[int] = []
        for tok in text.split():
            match = self._token.match(tok)
            if not match:
                raise AlphabetError(f"cannot parse letter {tok!r}")
            name, exp = match.group(1), int(match.group(2) or 1)
            code = self.index(name) + 1
            codes.extend([code if exp > 0 else -code] * abs(exp))
        return reduce(codes, self.rank)

    def format(self, w: Word | Iterable[int], compact: bool = True) -> str:
        """Render a word; runs of one letter are collapsed to powers when ``compact``."""
        letters = list(w.letters if isinstance(w, Word) else w)
        if not letters:
            return "1"
        out: list[str] = []
        i = 0
        while i < len(letters):
            j = i
            while compact and j + 1 < len(letters) and letters[j + 1] == letters[i]:
                j += 1
            c = letters[i]
            p = (j - i + 1) * (1 if c > 0 else -1)
            name = self.names[abs(c) - 1]
            out.append(name if p == 1 else f"{name}^{p}")
            i = j + 1
        return " ".join(out)


def free_alphabet(m: int, k: int) -> Alphabet:
    """The alphabet A1..Am, B1..Bk of the free kernel."""
    return Alphabet([f"A{i}" for i in range(1, m + 1)] + [f"B{j}" for j in range(1, k + 1)])


def log_alphabet(n: int) -> Alphabet:
    """The alphabet a1..an of a LOG presentation."""
    return Alphabet([f"a{i}" for i in range(1, n + 1)])
