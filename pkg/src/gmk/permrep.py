"""The right action of G_{m,m} on the cube H_{2m+1} = {0,1}^{2m+1}.

A point is an int whose bit ``i - 1`` is coordinate ``i``.  As a string it
is written ``x_1 x_2 ... x_n`` left to right, so ``00010`` has only
coordinate 4 set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .family import ParameterError, Presentation
from .words import AlphabetError, Word


def flip(v: int, coord: int) -> int:
    return v ^ (1 << (coord - 1))


def swap(v: int, c1: int, c2: int) -> int:
    b1, b2 = (v >> (c1 - 1)) & 1, (v >> (c2 - 1)) & 1
    if b1 != b2:
        v ^= (1 << (c1 - 1)) | (1 << (c2 - 1))
    return v


def to_bits(v: int, n: int) -> str:
    return "".join(str((v >> i) & 1) for i in range(n))


def from_bits(s: str) -> int:
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"not a bit string: {s!r}")
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")


@dataclass
class CoordinateAction:
    m: int
    tables: list[list[int]]  # tables[j][v] = v . a_{j+1}
    stage_checks: list[bool] = field(default_factory=list)  # property P_k per stage

    @property
    def n_coords(self) -> int:
        return 2 * self.m + 1

    @property
    def n_points(self) -> int:
        return 1 << self.n_coords

    def act(self, v: int, code: int) -> int:
        return self.tables[abs(code) - 1][v]

    def cycles(self, j: int) -> str:
        """One-line cycle notation of generator ``j`` (0-based), points as bit strings."""
        seen = set()
        out = []
        t = self.tables[j]
        for v in range(self.n_points):
            if v in seen:
                continue
            cyc = [v]
            seen.add(v)
            w = t[v]
            while w != v:
                cyc.append(w)
                seen.add(w)
                w = t[w]
            if len(cyc) > 1:
                out.append("(" + " ".join(to_bits(x, self.n_coords) for x in cyc) + ")")
        return "".join(out) or "()"


def _slice(n: int) -> range:
    """H_n inside the big cube: points whose coordinates beyond n vanish."""
    return range(1 << n)


def build_action(m: int) -> CoordinateAction:
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    n = 2 * m + 1
    size = 1 << n
    tables: list[list[int | None]] = [[None] * size for _ in range(n)]
    # stage 0: a_1..a_{m+1} flip their own coordinate on H_{m+1}
    for j in range(1, m + 2):
        for v in _slice(m + 1):
            tables[j - 1][v] = flip(v, j)
    checks = []
    for k in range(1, m + 1):
        top = m + k + 1  # new coordinate, and the new generator's index
        checks.append(_property_P(tables, m, k))
        for j in range(1, top):
            t = tables[j - 1]
            for v in _slice(top):
                if not (v >> (top - 1)) & 1:
                    continue
                # rightmost factor first: flip top, swap(k, m+k), a_j, swap, flip
                w = swap(flip(v, top), k, m + k)
                t[v] = flip(swap(t[w], k, m + k), top)
        for v in _slice(top):
            tables[top - 1][v] = flip(v, top)
    if any(x is None for t in tables for x in t):
        raise AssertionError("action left undefined points")
    return CoordinateAction(m, tables, checks)  # type: ignore[arg-type]


def _property_P(tables, m: int, k: int) -> bool:
    """After stage k-1, a_j acts on H_{m+k} as the flip of coordinate j, j = k..m."""
    return all(tables[j - 1][v] == flip(v, j) for j in range(k, m + 1) for v in _slice(m + k))


def act_word(action: CoordinateAction, p: int, w: Word) -> int:
    if w.rank != action.n_coords:
        raise AlphabetError(f"word over rank {w.rank}, action needs {action.n_coords}")
    for c in w.letters:
        p = action.tables[abs(c) - 1][p]
    return p


def word_permutation(action: CoordinateAction, w: Word) -> list[int]:
    return [act_word(action, v, w) for v in range(action.n_points)]


def _orbit(action: CoordinateAction, gens: range, start: int = 0) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for j in gens:
            w = action.tables[j][v]
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


@dataclass
class ActionReport:
    m: int
    points: int
    relators_ok: bool
    transitive: bool
    involutions_ok: bool
    single_coordinate_moves: bool
    pairwise_products_fixed_point_free: bool
    staged_transitivity: list[bool]
    property_P: list[bool]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return (
            self.relators_ok
            and self.transitive
            and self.involutions_ok
            and self.single_coordinate_moves
            and self.pairwise_products_fixed_point_free
            and all(self.staged_transitivity)
            and all(self.property_P)
        )

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "points": self.points,
            "ok": self.ok,
            "relators_ok": self.relators_ok,
            "transitive": self.transitive,
            "involutions_ok": self.involutions_ok,
            "single_coordinate_moves": self.single_coordinate_moves,
            "pairwise_products_fixed_point_free": self.pairwise_products_fixed_point_free,
            "staged_transitivity": self.staged_transitivity,
            "property_P": self.property_P,
            "failures": self.failures,
        }


def verify_action(action: CoordinateAction, pres: Presentation) -> ActionReport:
    m, N = action.m, action.n_points
    if pres.rank != action.n_coords:
        raise AlphabetError("presentation does not match the action")
    fails: list[str] = []
    T = action.tables

    relators_ok = True
    for r in pres.relators:
        bad = [v for v in range(N) if act_word(action, v, r) != v]
        if bad:
            relators_ok = False
            fails.append(f"relator {pres.alphabet.format(r, compact=False)} moves {to_bits(bad[0], action.n_coords)}")

    inv_ok = all(T[j][T[j][v]] == v for j in range(len(T)) for v in range(N))
    if not inv_ok:
        fails.append("a generator is not an involution")

    single = all(bin(T[j][v] ^ v).count("1") == 1 for j in range(len(T)) for v in range(N))
    if not single:
        fails.append("a generator does not move exactly one coordinate")

    fpf = True
    for i, j in combinations(range(len(T)), 2):
        if any(T[j][T[i][v]] == v for v in range(N)):
            fpf = False
            fails.append(f"a{i + 1}a{j + 1} has a fixed point")

    transitive = len(_orbit(action, range(len(T)))) == N
    if not transitive:
        fails.append("action is not transitive")

    staged = []
    for k in range(0, m + 1):
        top = m + k + 1
        orb = _orbit(action, range(top))
        staged.append(orb == set(_slice(top)))
        if not staged[-1]:
            fails.append(f"a1..a{top} not transitive on H_{top}")

    if not all(action.stage_checks):
        fails.append("property P failed at some stage")

    return ActionReport(m, N, relators_ok, transitive, inv_ok, single, fpf, staged, list(action.stage_checks), fails)
