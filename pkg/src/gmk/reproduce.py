"""The acceptance matrix: eleven criteria, each a list of named sub-checks.

Every criterion prints one PASS/FAIL line followed by its sub-check lines.
Nothing time-dependent is printed, so two runs produce identical logs; a
runtime budget overrun shows up as a failed ``runtime`` sub-check.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import abelian as ab
from .bieri import (
    abelian_lower_bound,
    bieri_presentation,
    certificate_word,
    combing_length_audit,
    doubled_group,
    is_trivial,
    normal_form,
    stated_abelian_lower_bound,
)
from .complexes import (
    base_complex,
    check_npc,
    cover_from_action,
    delete_generator,
    interosculation_fixture,
    label_map,
    morse_links,
    presentation_complex,
    torus_embedding,
    verify_covering,
)
from .family import Endomorphism, apply, compose, iterate, make_phi, orbit, presentation
from .growth import (
    S_word,
    T_word,
    closed_form_length,
    estimate_degree,
    growth_table,
    recurrence_iterate_B,
    upper_bound_g,
    upper_bound_g_inv,
)
from .permrep import build_action, verify_action
from .walls import compute_walls, check_self_intersection, check_self_osculation, check_two_sided, specialness_report, vh_classification
from .words import Word, invert

PhiFactory = Callable[[int, int], Endomorphism]


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> list[str]:
        out = [f"{'PASS' if self.passed else 'FAIL'} {self.number:2d} {self.title}"]
        for c in self.checks:
            tail = f": {c.detail}" if c.detail else ""
            out.append(f"     {'ok  ' if c.ok else 'FAIL'} {c.name}{tail}")
        return out


class _Collector:
    """Accumulates the first counterexample per sub-check."""

    def __init__(self, names: Iterable[str]):
        self.bad: dict[str, str] = {n: "" for n in names}
        self.ok: dict[str, bool] = {n: True for n in names}

    def expect(self, name: str, cond: bool, why: Callable[[], str]) -> None:
        if not cond and self.ok[name]:
            self.ok[name] = False
            self.bad[name] = why()

    def checks(self) -> list[Check]:
        return [Check(n, self.ok[n], self.bad[n]) for n in self.ok]


def _gen(i: int, rank: int) -> Word:
    return Word.generator(i, rank)


# -- 1 ------------------------------------------------------------------------

def criterion_1(phi: PhiFactory = make_phi) -> list[Check]:
    col = _Collector(["forward A_i", "forward B1", "forward B2", "inverse A_i", "inverse B1"])
    for m in range(1, 5):
        for k in range(1, m + 1):
            e = phi(m, k)
            fwd = growth_table(e, 12)
            inv = growth_table(e.inverse(), 12)
            for n in range(13):
                for i in range(1, m + 1):
                    want = closed_form_length(f"A{i}", m, n)
                    got = fwd.lengths[f"A{i}"][n]
                    col.expect("forward A_i", got == want, lambda: f"m={m} k={k} n={n} A{i}: {got} != {want}")
                    got = inv.lengths[f"A{i}"][n]
                    col.expect("inverse A_i", got == want, lambda: f"m={m} k={k} n={n} A{i}: {got} != {want}")
                want = closed_form_length("B1", m, n)
                got = fwd.lengths["B1"][n]
                col.expect("forward B1", got == want, lambda: f"m={m} k={k} n={n}: {got} != {want}")
                got = inv.lengths["B1"][n]
                col.expect("inverse B1", got == want, lambda: f"m={m} k={k} n={n}: {got} != {want}")
                if k >= 2:
                    want = closed_form_length("B2", m, n)
                    got = fwd.lengths["B2"][n]
                    col.expect("forward B2", got == want, lambda: f"m={m} k={k} n={n}: {got} != {want}")
    return col.checks()


# -- 2 ------------------------------------------------------------------------

def criterion_2(phi: PhiFactory = make_phi) -> list[Check]:
    col = _Collector(["iterate equals recurrence", "phi^-1(T_{k,i}) = T_{k-1,1}^-1 T_{k,i+2}", "phi^-n(B1) = S_n T_{1,1}"])
    for m in range(2, 5):
        for k in range(2, m + 1):
            e = phi(m, k)
            r = e.rank
            for j in range(2, k + 1):
                words = orbit(e, _gen(m + j - 1, r), 10)
                for n in range(1, 11):
                    want = recurrence_iterate_B(m, j - 1, n, rank=r)
                    col.expect("iterate equals recurrence", words[n] == want, lambda: f"m={m} k={k} B{j} n={n}")
    for m in range(1, 5):
        e = phi(m, m)
        inv = e.inverse()
        r = e.rank
        for k in range(2, m + 1):
            for i in range(0, 5):
                lhs = apply(inv, T_word(m, k, i, r))
                rhs = invert(T_word(m, k - 1, 1, r)) * T_word(m, k, i + 2, r)
                col.expect(
                    "phi^-1(T_{k,i}) = T_{k-1,1}^-1 T_{k,i+2}",
                    lhs == rhs,
                    lambda: f"m={m} k={k} i={i}: lengths {len(lhs)} vs {len(rhs)}",
                )
        for n in range(0, 11):
            lhs = iterate(inv, _gen(m, r), n)
            rhs = S_word(m, n, r) * T_word(m, 1, 1, r)
            col.expect("phi^-n(B1) = S_n T_{1,1}", lhs == rhs, lambda: f"m={m} n={n}")
    return col.checks()


# -- 3 ------------------------------------------------------------------------

def criterion_3(phi: PhiFactory = make_phi) -> list[Check]:
    col = _Collector(["|phi^n(B_k)| <= g(k,n)", "|phi^-n(B_k)| <= g(k,0,n)", "g(k,i,n+1) - g(k,i,n) = g(k-1,1,n) + (k-1)"])
    for m in range(1, 5):
        for k in range(1, m + 1):
            e = phi(m, k)
            fwd = growth_table(e, 12)
            inv = growth_table(e.inverse(), 12)
            for j in range(1, k + 1):
                for n in range(13):
                    f, g = fwd.lengths[f"B{j}"][n], upper_bound_g(m, j, n)
                    col.expect("|phi^n(B_k)| <= g(k,n)", f <= g, lambda: f"m={m} k={j} n={n}: {f} > {g}")
                    f, g = inv.lengths[f"B{j}"][n], upper_bound_g_inv(m, j, 0, n)
                    col.expect("|phi^-n(B_k)| <= g(k,0,n)", f <= g, lambda: f"m={m} k={j} n={n}: {f} > {g}")
        for k in range(2, m + 1):
            for i in range(0, 13):
                for n in range(0, 12):
                    lhs = upper_bound_g_inv(m, k, i, n + 1) - upper_bound_g_inv(m, k, i, n)
                    rhs = upper_bound_g_inv(m, k - 1, 1, n) + (k - 1)
                    col.expect(
                        "g(k,i,n+1) - g(k,i,n) = g(k-1,1,n) + (k-1)",
                        lhs == rhs,
                        lambda: f"m={m} k={k} i={i} n={n}: {lhs} != {rhs}",
                    )
    return col.checks()


# -- 4 ------------------------------------------------------------------------

DEGREE_CASES = [(2, 2), (3, 2), (3, 3), (4, 4)]


def degree_slopes(m: int, k: int, phi: PhiFactory = make_phi):
    e = phi(m, k)
    s_fwd = estimate_degree(growth_table(e, 16).gr)
    s_inv = estimate_degree(growth_table(e.inverse(), 16).gr)
    s_sq = estimate_degree(growth_table(compose(e, e), 16).gr)
    return s_fwd, s_inv, s_sq


def criterion_4(phi: PhiFactory = make_phi) -> list[Check]:
    checks = []
    for m, k in DEGREE_CASES:
        f, i, sq = degree_slopes(m, k, phi)
        det = f"phi {float(f):.2f}, inverse {float(i):.2f}, square {float(sq):.2f}"
        ok = abs(f - k) <= 0.5 and abs(i - k) <= 0.5 and abs(sq - f) <= 0.5
        checks.append(Check(f"(m,k)=({m},{k}) slopes near {k}", ok, det))
    return checks


# -- 5 ------------------------------------------------------------------------

def criterion_5(phi: PhiFactory = make_phi) -> list[Check]:
    col = _Collector(
        [
            "matrix equals stated block form",
            "rank(M-I) = k",
            "rank((M-I)^2) = k-1",
            "Jordan profile {k+1, 1^(m-1)}",
            "every power entry follows the binomial law",
            "gr >= max column l1 >= sup norm",
        ]
    )
    for m in range(1, 6):
        for k in range(1, m + 1):
            e = phi(m, k)
            M = ab.abelianization_matrix(e)
            I = ab.IntMatrix.identity(m + k)
            S = ab.stated_block_form(m, k)
            col.expect("matrix equals stated block form", M == S, lambda: f"m={m} k={k}: {_first_diff(M, S)}")
            r1, r2 = ab.rank(M - I), ab.rank(ab.power(M - I, 2))
            col.expect("rank(M-I) = k", r1 == k, lambda: f"m={m} k={k}: {r1}")
            col.expect("rank((M-I)^2) = k-1", r2 == k - 1, lambda: f"m={m} k={k}: {r2}")
            prof = ab.unipotent_jordan_profile(M).sizes
            col.expect("Jordan profile {k+1, 1^(m-1)}", prof == (k + 1,) + (1,) * (m - 1), lambda: f"m={m} k={k}: {prof}")
            gr = growth_table(e, 20).gr
            P = ab.IntMatrix.identity(m + k)
            for n in range(21):
                if n:
                    P = P @ M
                W = ab.stated_power_pattern(m, k, n)
                col.expect(
                    "every power entry follows the binomial law",
                    P == W,
                    lambda: f"m={m} k={k} n={n}: {_first_diff(P, W)}",
                )
                l1 = max(ab.column_l1(P, j) for j in range(m + k))
                sup = ab.norms(P)[0]
                col.expect(
                    "gr >= max column l1 >= sup norm",
                    gr[n] >= l1 >= sup,
                    lambda: f"m={m} k={k} n={n}: gr {gr[n]}, l1 {l1}, sup {sup}",
                )
    return col.checks()


def _first_diff(A: ab.IntMatrix, B: ab.IntMatrix) -> str:
    for i in range(A.rows):
        for j in range(A.cols):
            if A[i, j] != B[i, j]:
                return f"entry ({i + 1},{j + 1}) is {A[i, j]}, stated {B[i, j]}"
    return "equal"


# -- 6 ------------------------------------------------------------------------

def criterion_6() -> list[Check]:
    names = [
        "relators act trivially",
        "transitive",
        "fixed-point-free involutions",
        "single coordinate moves",
        "pairwise products fixed-point-free",
        "staged transitivity",
        "property P_k at every stage",
    ]
    col = _Collector(names)
    for m in range(1, 7):
        rep = verify_action(build_action(m), presentation(m, m))
        col.expect(names[0], rep.relators_ok, lambda: f"m={m}")
        col.expect(names[1], rep.transitive, lambda: f"m={m}")
        col.expect(names[2], rep.involutions_ok and rep.single_coordinate_moves, lambda: f"m={m}")
        col.expect(names[3], rep.single_coordinate_moves, lambda: f"m={m}")
        col.expect(names[4], rep.pairwise_products_fixed_point_free, lambda: f"m={m}")
        col.expect(names[5], all(rep.staged_transitivity), lambda: f"m={m}")
        col.expect(names[6], all(rep.property_P), lambda: f"m={m}")
    return col.checks()


# -- 7 ------------------------------------------------------------------------

MORSE_K22_DESCENDING = {("a1", "a2"), ("a2", "a3"), ("a3", "a4"), ("a4", "a5")}
MORSE_K22_ASCENDING = {("a1", "a2"), ("a2", "a3"), ("a1", "a4"), ("a2", "a5")}


def _arc_names(X, L) -> set[tuple[str, str]]:
    return {tuple(sorted((X.label_name(a[0]), X.label_name(b[0])))) for a, b, _, _ in L.arcs}


def criterion_7() -> list[Check]:
    names = [
        "covering verified with degree 2^(2m+1)",
        "cell counts = degree x base counts",
        "torus embedding injective",
        "base and cover non-positively curved",
        "Morse links of the base are trees",
        "K_{2,2} Morse links have the drawn shapes",
    ]
    col = _Collector(names)
    for m in (1, 2, 4):
        pres = presentation(m, m)
        X, cmap = cover_from_action(pres, build_action(m))
        B = presentation_complex(pres)
        rep = verify_covering(X, B, cmap)
        deg = 1 << (2 * m + 1)
        col.expect(names[0], rep.ok and rep.degree == deg, lambda: f"m={m}: {rep.failures} degree {rep.degree}")
        col.expect(
            names[1],
            X.counts() == tuple(deg * c for c in B.counts()),
            lambda: f"m={m}: {X.counts()} vs {B.counts()}",
        )
        te = torus_embedding(X, m)
        col.expect(names[2], te.ok, lambda: f"m={m}: {te.counterexamples[:3]}")
        col.expect(names[3], check_npc(B).ok and check_npc(X).ok, lambda: f"m={m}")
        ml = morse_links(B)[0]
        n_gen = 2 * m + 1
        shapes = all(
            L.is_tree() and len(L.nodes) == n_gen and len(L.arcs) == n_gen - 1 for L in (ml.ascending, ml.descending)
        )
        col.expect(names[4], shapes, lambda: f"m={m}")
    B = base_complex(2, 2)
    ml = morse_links(B)[0]
    d, a = _arc_names(B, ml.descending), _arc_names(B, ml.ascending)
    col.expect(names[5], d == MORSE_K22_DESCENDING and a == MORSE_K22_ASCENDING, lambda: f"descending {sorted(d)}, ascending {sorted(a)}")
    return col.checks()


# -- 8 ------------------------------------------------------------------------

def even_odd_split(m: int) -> list[list[str]]:
    n = 2 * m + 1
    return [[f"a{i}" for i in range(1, n + 1, 2)], [f"a{i}" for i in range(2, n + 1, 2)]]


def criterion_8() -> list[Check]:
    names = [
        "cover hyperplanes two-sided",
        "cover has no self-intersections",
        "cover has no self-osculations",
        "VH with odd/even split for even m",
        "VH fails with a certificate for m in {1,3}",
        "interosculation fixture detected",
    ]
    col = _Collector(names)
    for m in (2, 4):
        X, _ = cover_from_action(presentation(m, m), build_action(m))
        W = compute_walls(X)
        col.expect(names[0], check_two_sided(X, W).ok, lambda: f"m={m}")
        si = check_self_intersection(X, W)
        col.expect(names[1], si.ok, lambda: f"m={m}: {len(si.offenders)} offenders")
        so = check_self_osculation(X, W)
        col.expect(names[2], so.ok, lambda: f"m={m}: {len(so.offenders)} offenders")
        split = even_odd_split(m)
        for label, Y in (("base", base_complex(m, m)), ("cover", X)):
            vh = vh_classification(Y)
            col.expect(names[3], vh.ok and vh.classes == split, lambda: f"m={m} {label}: {vh.classes or vh.certificate}")
    for m in (1, 3):
        vh = vh_classification(base_complex(m, m))
        col.expect(names[4], not vh.ok and len(vh.certificate) % 2 == 1, lambda: f"m={m}: {vh}")
    rep = specialness_report(interosculation_fixture())
    col.expect(names[5], bool(rep.inter_osculations), lambda: "no inter-osculation found")
    return col.checks()


# -- 9 ------------------------------------------------------------------------

def criterion_9() -> list[Check]:
    col = _Collector(["deletion covers K_{m,m-1}"])
    for m in (2, 4):
        X, _ = cover_from_action(presentation(m, m), build_action(m))
        Y = delete_generator(X, f"a{2 * m + 1}")
        B = presentation_complex(presentation(m, m - 1))
        rep = verify_covering(Y, B, label_map(Y, B))
        col.expect("deletion covers K_{m,m-1}", rep.ok and rep.degree == 1 << (2 * m), lambda: f"m={m}: {rep.failures}")
    return col.checks()


# -- 10 -----------------------------------------------------------------------

def _finite_difference(values: list[int], order: int) -> list[int]:
    for _ in range(order):
        values = [b - a for a, b in zip(values, values[1:])]
    return values


def criterion_10(seed: int = 20240601) -> list[Check]:
    names = [
        "certificate words trivial",
        "normal form invariant under relator insertion",
        "combing audit radius 6 has no violations",
        "abelian lower bound equals the binomial expression",
        "abelian lower bound has degree m+2",
    ]
    col = _Collector(names)
    for m, k in ((1, 1), (2, 1), (2, 2)):
        G = doubled_group(m, k)
        for n in range(1, 9):
            col.expect(names[0], is_trivial(G, certificate_word(G, n).letters), lambda: f"(m,k)=({m},{k}) n={n}")
    rng = random.Random(seed)
    cases = [(1, 1), (2, 1), (2, 2)]
    groups = {mk: (doubled_group(*mk), bieri_presentation(*mk)) for mk in cases}
    for trial in range(10_000):
        G, pres = groups[cases[trial % 3]]
        L = rng.randint(0, 20)
        w = [rng.choice((1, -1)) * rng.randint(1, G.rank) for _ in range(L)]
        rel = list(rng.choice(pres.relators).letters)
        if rng.random() < 0.5:
            rel = [-c for c in reversed(rel)]
        pos = rng.randint(0, L)
        w2 = w[:pos] + rel + w[pos:]
        col.expect(names[1], normal_form(G, w) == normal_form(G, w2), lambda: f"trial {trial}")
    audit = combing_length_audit(doubled_group(1, 1), 6)
    col.expect(names[2], audit.ok, lambda: f"{len(audit.violations)} violations")
    for m in (1, 2, 3):
        seq = [abelian_lower_bound(m, m, n) for n in range(0, 21)]
        for n in range(1, 21):
            got, want = seq[n], stated_abelian_lower_bound(m, n)
            col.expect(names[3], got == want, lambda: f"m=k={m} n={n}: {got} vs {want}")
        top = _finite_difference(seq, m + 2)
        col.expect(
            names[4],
            all(x == 0 for x in _finite_difference(seq, m + 3)) and any(top),
            lambda: f"m=k={m}",
        )
    return col.checks()


# -- driver -------------------------------------------------------------------

CRITERIA: dict[int, tuple[str, str, Callable[[], list[Check]], float]] = {
    1: ("growth", "growth closed forms exact", criterion_1, 10),
    2: ("growth", "recurrence oracle and word identities", criterion_2, 20),
    3: ("growth", "upper-bound sandwich and finite differences", criterion_3, 5),
    4: ("growth", "degree estimates", criterion_4, 60),
    5: ("abelian", "abelianization matrices and powers", criterion_5, 10),
    6: ("permrep", "permutation representation", criterion_6, 30),
    7: ("cover", "cover, torus embedding and links", criterion_7, 60),
    8: ("walls", "specialness pathologies and VH", criterion_8, 60),
    9: ("cover", "generator deletion", criterion_9, 30),
    10: ("bieri", "doubled group machinery", criterion_10, 60),
}
GROUPS = sorted({g for g, *_ in CRITERIA.values()} | {"determinism"})


def select(only: str | None) -> list[int]:
    """Criterion numbers named by a comma list of numbers and group names."""
    if not only:
        return list(range(1, 12))
    picked: set[int] = set()
    for tok in only.split(","):
        tok = tok.strip()
        if tok.isdigit() and 1 <= int(tok) <= 11:
            picked.add(int(tok))
        elif tok == "determinism":
            picked.add(11)
        elif tok in GROUPS:
            picked |= {n for n, (g, *_) in CRITERIA.items() if g == tok}
        else:
            raise ValueError(f"unknown criterion or group {tok!r}")
    return sorted(picked)


def run_criterion(n: int) -> CriterionResult:
    _, title, fn, budget = CRITERIA[n]
    t0 = time.perf_counter()
    checks = fn()
    elapsed = time.perf_counter() - t0
    checks.append(Check(f"runtime under {budget:g} s", elapsed <= budget))
    return CriterionResult(n, title, checks)


def run(numbers: Iterable[int]) -> list[CriterionResult]:
    numbers = list(numbers)
    results = [run_criterion(n) for n in numbers if n != 11]
    if 11 in numbers:
        again = [run_criterion(r.number) for r in results]
        same = [ln for r in results for ln in r.lines()] == [ln for r in again for ln in r.lines()]
        results.append(CriterionResult(11, "determinism", [Check("second run gives an identical log", same)]))
    return results


def render(results: list[CriterionResult]) -> str:
    lines = [ln for r in results for ln in r.lines()]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
