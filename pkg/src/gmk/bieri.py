"""The doubled group F x| F(s, t) for the monodromy psi = phi_{m,k}.

Both stable letters conjugate by psi: ``s a s^-1 = psi(a) = t a t^-1``.
Every element is written uniquely as ``u * g`` with ``u`` in F(s, t) and
``g`` in the free kernel, which solves the word problem and doubles as the
combing used in the length audit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

from .abelian import abelianization_matrix, column_l1, power
from .family import Endomorphism, ParameterError, Presentation, apply, check_mk, iterate, make_phi
from .words import Alphabet, AlphabetError, Word, reduce

BALL_LIMIT = 10**7


@dataclass(frozen=True)
class DoubledGroup:
    m: int
    k: int
    psi: Endomorphism
    alphabet: Alphabet

    @property
    def free_rank(self) -> int:
        return self.psi.rank

    @property
    def rank(self) -> int:
        return self.psi.rank + 2

    @property
    def s(self) -> int:
        return self.free_rank + 1

    @property
    def t(self) -> int:
        return self.free_rank + 2


def doubled_group(m: int, k: int) -> DoubledGroup:
    psi = make_phi(m, k)
    return DoubledGroup(m, k, psi, Alphabet(list(psi.alphabet.names) + ["s", "t"]))


@dataclass(frozen=True)
class NormalForm:
    u: Word  # over the stable letters
    g: Word  # over the free kernel

    def is_trivial(self) -> bool:
        return self.u.is_identity() and self.g.is_identity()

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.u.letters, self.g.letters

    def __len__(self) -> int:
        return len(self.u) + len(self.g)


def bieri_presentation(m: int, k: int) -> Presentation:
    """Relators ``x a x^-1 psi(a)^-1`` for x = s then x = t, a over A_1..A_m, B_1..B_k."""
    G = doubled_group(m, k)
    r = G.rank
    rels = []
    for x in (G.s, G.t):
        for a, img in enumerate(G.psi.images):
            rels.append(reduce([x, a + 1, -x] + [-c for c in reversed(img.letters)], r))
    return Presentation(G.alphabet, tuple(rels))


def _codes(w: Word | Iterable[int]) -> Iterable[int]:
    return w.letters if isinstance(w, Word) else w


def _step(G: DoubledGroup, inv: Endomorphism, nf: NormalForm, c: int) -> NormalForm:
    a = abs(c)
    if a <= G.free_rank:
        return NormalForm(nf.u, nf.g * Word((c,), G.free_rank))
    if a > G.rank:
        raise AlphabetError(f"letter {c} outside the doubled alphabet")
    x = Word(((a - G.free_rank) * (1 if c > 0 else -1),), 2)
    # g x = x psi^{-eps(x)}(g)
    g = apply(inv, nf.g) if c > 0 else apply(G.psi, nf.g)
    return NormalForm(nf.u * x, g)


def identity_form(G: DoubledGroup) -> NormalForm:
    return NormalForm(Word.identity(2), Word.identity(G.free_rank))


def normal_form(G: DoubledGroup, w: Word | Iterable[int]) -> NormalForm:
    inv = G.psi.inverse()
    nf = identity_form(G)
    for c in _codes(w):
        nf = _step(G, inv, nf, c)
    return nf


def is_trivial(G: DoubledGroup, w: Word | Iterable[int]) -> bool:
    return normal_form(G, w).is_trivial()


def from_normal_form(G: DoubledGroup, nf: NormalForm) -> Word:
    """The word ``u g`` over the doubled alphabet."""
    shift = lambda c: (G.free_rank + abs(c)) * (1 if c > 0 else -1)  # noqa: E731
    return reduce([shift(c) for c in nf.u.letters] + list(nf.g.letters), G.rank)


@dataclass(frozen=True)
class Certificate:
    letters: tuple[int, ...]  # unreduced
    length: int
    filling_exponent: int


def certificate_word(G: DoubledGroup, n: int, ell: int = 1, p: int = 1) -> Certificate:
    """[(s t^-1)^n, t^{ell n} B_k^{p n} t^{-ell n}] with [x, y] = x y x^-1 y^-1."""
    if n < 1 or ell < 1 or p < 1:
        raise ParameterError("need n, ell, p >= 1")
    s, t, b = G.s, G.t, G.free_rank
    x = [s, -t] * n
    y = [t] * (ell * n) + [b] * (p * n) + [-t] * (ell * n)
    inv = lambda seq: [-c for c in reversed(seq)]  # noqa: E731
    letters = tuple(x + y + inv(x) + inv(y))
    return Certificate(letters, len(letters), G.k + 2)


def lower_bound_quantity(m: int, k: int, n: int, ell: int = 1, p: int = 1) -> tuple[int, int]:
    """(n * |psi^{ell n}(B_k^{p n})|, n * p n * l1 of column B_k of M^{ell n})."""
    check_mk(m, k, k_min=1)
    if n < 0 or ell < 1 or p < 1:
        raise ParameterError("need n >= 0 and ell, p >= 1")
    if n == 0:
        return 0, 0
    psi = make_phi(m, k)
    b = m + k - 1
    img = iterate(psi, Word.generator(b, psi.rank), ell * n)
    exact = n * len(img ** (p * n))
    return exact, abelian_lower_bound(m, k, n, ell, p)


def abelian_lower_bound(m: int, k: int, n: int, ell: int = 1, p: int = 1) -> int:
    """The abelian half of :func:`lower_bound_quantity` alone."""
    check_mk(m, k, k_min=1)
    if n < 0 or ell < 1 or p < 1:
        raise ParameterError("need n >= 0 and ell, p >= 1")
    M = power(abelianization_matrix(make_phi(m, k)), ell * n)
    return n * p * n * column_l1(M, m + k - 1)


def stated_abelian_lower_bound(m: int, n: int) -> int:
    """n^2 (m C(n+m-1, m) + sum_{i<m} C(n+i-1, i)), with C(n-1, 0) = 1."""
    total = m * comb(n + m - 1, m) + sum(1 if i == 0 else comb(n + i - 1, i) for i in range(m))
    return n * n * total


def growth_bound_P(psi: Endomorphism, n: int) -> int:
    """max over generators of max(|psi^n(a)|, |psi^-n(a)|)."""
    inv = psi.inverse()
    best = 0
    for a in range(psi.rank):
        g = Word.generator(a, psi.rank)
        best = max(best, len(iterate(psi, g, n)), len(iterate(inv, g, n)))
    return best


@dataclass
class CombingAudit:
    radius: int
    elements: int
    sphere_sizes: list[int]
    bounds: list[int]  # n P(n) + n
    max_ratio: Fraction
    violations: list[dict]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "elements": self.elements,
            "sphere_sizes": self.sphere_sizes,
            "bounds": self.bounds,
            "max_ratio": f"{float(self.max_ratio):.2f}",
            "violations": self.violations,
            "ok": self.ok,
        }


def combing_length_audit(G: DoubledGroup, radius: int) -> CombingAudit:
    """Breadth-first ball of the given radius; checks |u| + |g| <= n P(n) + n at distance n."""
    if radius < 0:
        raise ParameterError("radius must be nonnegative")
    if (2 * G.rank) ** radius > BALL_LIMIT:
        raise ParameterError(f"ball of radius {radius} over {2 * G.rank} letters exceeds {BALL_LIMIT}")
    inv = G.psi.inverse()
    bounds = [n * growth_bound_P(G.psi, n) + n for n in range(radius + 1)]
    letters = [c for a in range(1, G.rank + 1) for c in (a, -a)]
    start = identity_form(G)
    seen = {start.key()}
    frontier = [start]
    spheres = [1]
    ratio = Fraction(0)
    bad: list[dict] = []
    for n in range(1, radius + 1):
        nxt = []
        for nf in frontier:
            for c in letters:
                y = _step(G, inv, nf, c)
                if y.key() in seen:
                    continue
                seen.add(y.key())
                nxt.append(y)
                if len(y) > bounds[n]:
                    bad.append({"distance": n, "length": len(y), "bound": bounds[n]})
                ratio = max(ratio, Fraction(len(y), bounds[n]))
        spheres.append(len(nxt))
        frontier = nxt
    return CombingAudit(radius, len(seen), spheres, bounds, ratio, bad)


# -- embedding into H x F(u, v) -----------------------------------------------

TAU_ALPHABET = Alphabet(["tau"])
UV_ALPHABET = Alphabet(["u", "v"])


def mu_embedding(G: DoubledGroup, w: Word | Iterable[int]) -> tuple[NormalForm, Word]:
    """Image under x -> x, s -> tau u, t -> tau v.

    The first part is the normal form ``tau^e g`` in F x| <tau> (tau acting
    as psi); the second is the reduced word over u, v.
    """
    inv = G.psi.inverse()
    u = Word.identity(1)
    g = Word.identity(G.free_rank)
    f: list[int] = []
    for c in _codes(w):
        a = abs(c)
        if a <= G.free_rank:
            g = g * Word((c,), G.free_rank)
            continue
        if a > G.rank:
            raise AlphabetError(f"letter {c} outside the doubled alphabet")
        sign = 1 if c > 0 else -1
        if sign > 0:
            u, g = u * Word((1,), 1), apply(inv, g)
            f.append(a - G.free_rank)
        else:
            f.append(-(a - G.free_rank))
            u, g = u * Word((-1,), 1), apply(G.psi, g)
    return NormalForm(u, g), reduce(f, 2)
