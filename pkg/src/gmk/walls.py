"""Walls of square complexes and the pathologies that obstruct specialness.

Oriented edges are ``(edge, d)`` steps.  Opposite sides of every square,
traversed the same way, are merged into one oriented class; a hyperplane
is a class together with its reversal.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations

from .complexes import SquareComplex, Step, check_npc

SPECIAL = "SPECIAL"
CLEAN_BUT_INTEROSCULATING = "CLEAN-BUT-INTEROSCULATING"
OTHER = "OTHER"


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller root wins, so class ids are deterministic
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _rev(s: Step) -> Step:
    return (s[0], -s[1])


@dataclass
class WallDecomposition:
    class_of: dict[Step, int]  # oriented edge -> class id
    classes: dict[int, list[Step]]
    opposite: dict[int, int]
    hyperplane_of_class: dict[int, int]
    hyperplanes: list[tuple[int, int]]  # (class, opposite class), sorted

    def hyperplane(self, e: int) -> int:
        return self.hyperplane_of_class[self.class_of[(e, 1)]]

    def dual_edges(self, h: int) -> list[int]:
        c = self.hyperplanes[h][0]
        return sorted({e for e, _ in self.classes[c]})

    def orientation(self, e: int) -> int:
        """+1 if the edge as drawn lies in the first class of its hyperplane."""
        h = self.hyperplane(e)
        return 1 if self.class_of[(e, 1)] == self.hyperplanes[h][0] else -1


def compute_walls(X: SquareComplex) -> WallDecomposition:
    steps = [(e, d) for e in range(len(X.edges)) for d in (1, -1)]
    uf = _UnionFind(steps)
    for sq in X.squares:
        s1, s2, s3, s4 = sq
        for a, b in ((s1, _rev(s3)), (s2, _rev(s4))):
            uf.union(a, b)
            uf.union(_rev(a), _rev(b))
    roots = {}
    class_of = {}
    classes: dict[int, list[Step]] = defaultdict(list)
    for s in sorted(steps, key=lambda s: (s[0], -s[1])):
        r = uf.find(s)
        cid = roots.setdefault(r, len(roots))
        class_of[s] = cid
        classes[cid].append(s)
    opposite = {c: class_of[_rev(members[0])] for c, members in classes.items()}
    hyper = sorted({(min(c, o), max(c, o)) for c, o in opposite.items()})
    h_of = {}
    for h, (c, o) in enumerate(hyper):
        h_of[c] = h
        h_of[o] = h
    return WallDecomposition(class_of, dict(classes), opposite, h_of, hyper)


@dataclass
class Report:
    ok: bool
    offenders: list = field(default_factory=list)


def check_two_sided(X: SquareComplex, W: WallDecomposition) -> Report:
    bad = [h for h, (c, o) in enumerate(W.hyperplanes) if c == o]
    return Report(not bad, [{"hyperplane": h, "edges": [X.label_name(e) for e in W.dual_edges(h)]} for h in bad])


def check_self_intersection(X: SquareComplex, W: WallDecomposition) -> Report:
    bad = []
    for q, sq in enumerate(X.squares):
        if W.hyperplane(sq[0][0]) == W.hyperplane(sq[1][0]):
            bad.append({"square": q, "hyperplane": W.hyperplane(sq[0][0])})
    return Report(not bad, bad)


def _square_edge_pairs(X: SquareComplex) -> set[tuple[int, int]]:
    pairs = set()
    for sq in X.squares:
        es = sorted({e for e, _ in sq})
        for a, b in combinations(es, 2):
            pairs.add((a, b))
    return pairs


def _incidences(X: SquareComplex) -> dict[int, list[tuple[int, str]]]:
    """vertex -> [(edge, "src"|"tgt")]; a loop appears twice."""
    inc: dict[int, list] = defaultdict(list)
    for e, ed in enumerate(X.edges):
        inc[ed.source].append((e, "src"))
        inc[ed.target].append((e, "tgt"))
    return inc


def check_self_osculation(X: SquareComplex, W: WallDecomposition) -> Report:
    """Distinct dual edges of one hyperplane sharing a vertex but no square."""
    common = _square_edge_pairs(X)
    inc = _incidences(X)
    bad = []
    seen = set()
    for v in range(len(X.vertices)):
        by_h: dict[int, list[tuple[int, str]]] = defaultdict(list)
        for e, end in inc[v]:
            by_h[W.hyperplane(e)].append((e, end))
        for h, ends in by_h.items():
            for (a, ea), (b, eb) in combinations(ends, 2):
                if a == b:
                    continue
                key = (min(a, b), max(a, b))
                if key in common or (v, key) in seen:
                    continue
                seen.add((v, key))
                # orient both edges along the hyperplane's first class
                ra = ea if W.orientation(a) > 0 else ("tgt" if ea == "src" else "src")
                rb = eb if W.orientation(b) > 0 else ("tgt" if eb == "src" else "src")
                bad.append(
                    {
                        "hyperplane": h,
                        "vertex": str(X.vertices[v]),
                        "edges": [X.label_name(a), X.label_name(b)],
                        "direct": ra == rb,
                    }
                )
    return Report(not bad, bad)


def crossing_pairs(X: SquareComplex, W: WallDecomposition) -> set[tuple[int, int]]:
    out = set()
    for sq in X.squares:
        h1, h2 = W.hyperplane(sq[0][0]), W.hyperplane(sq[1][0])
        if h1 != h2:
            out.add((min(h1, h2), max(h1, h2)))
    return out


def check_inter_osculation(X: SquareComplex, W: WallDecomposition) -> Report:
    """Crossing hyperplanes with dual edges that meet at a vertex outside any square."""
    crossing = crossing_pairs(X, W)
    common = _square_edge_pairs(X)
    inc = _incidences(X)
    found: dict[tuple[int, int], dict] = {}
    for v in range(len(X.vertices)):
        es = sorted({e for e, _ in inc[v]})
        for a, b in combinations(es, 2):
            ha, hb = W.hyperplane(a), W.hyperplane(b)
            if ha == hb:
                continue
            pair = (min(ha, hb), max(ha, hb))
            if pair not in crossing or pair in found or (a, b) in common:
                continue
            found[pair] = {
                "hyperplanes": list(pair),
                "vertex": str(X.vertices[v]),
                "edges": [X.label_name(a), X.label_name(b)],
            }
    bad = [found[p] for p in sorted(found)]
    return Report(not bad, bad)


@dataclass
class VHResult:
    ok: bool
    classes: list[list[str]]
    certificate: list[str]  # odd cycle of constraint nodes when not ok


def vh_classification(X: SquareComplex, mode: str = "label") -> VHResult:
    """Two-colour edges so that adjacent sides of every square differ.

    ``mode="label"`` colours generator labels (all edges with one label get
    one colour); ``mode="edge"`` colours individual edges.
    """
    if mode == "label":
        if any(ed.label is None for ed in X.edges):
            raise ValueError("label mode needs every edge labelled")
        key = lambda e: X.edges[e].label  # noqa: E731
        name = lambda k: X.alphabet.names[k] if X.alphabet else f"x{k + 1}"  # noqa: E731
    elif mode == "edge":
        key = lambda e: e  # noqa: E731
        name = lambda k: f"{X.label_name(k)}@{X.vertices[X.edges[k].source]}"  # noqa: E731
    else:
        raise ValueError(f"unknown mode {mode!r}")
    nodes = sorted({key(e) for e in range(len(X.edges))})
    adj: dict = {n: set() for n in nodes}
    for sq in X.squares:
        for i in range(4):
            a, b = key(sq[i][0]), key(sq[(i + 1) % 4][0])
            if a == b:
                return VHResult(False, [], [name(a)])
            adj[a].add(b)
            adj[b].add(a)
    color: dict = {}
    parent: dict = {}
    for s in nodes:
        if s in color:
            continue
        color[s] = 0
        parent[s] = None
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for y in sorted(adj[x]):
                if y not in color:
                    color[y] = 1 - color[x]
                    parent[y] = x
                    dq.append(y)
                elif color[y] == color[x]:
                    return VHResult(False, [], [name(z) for z in _odd_cycle(parent, x, y)])
    classes = [[name(n) for n in nodes if color[n] == c] for c in (0, 1)]
    return VHResult(True, [c for c in classes if c], [])


def _odd_cycle(parent, x, y):
    px = [x]
    while parent[px[-1]] is not None:
        px.append(parent[px[-1]])
    py = [y]
    while parent[py[-1]] is not None:
        py.append(parent[py[-1]])
    anc = set(px)
    meet = next(z for z in py if z in anc)
    left = px[: px.index(meet) + 1]
    right = py[: py.index(meet)]
    return list(reversed(left)) + right


@dataclass
class SpecialnessReport:
    npc: bool
    two_sided: bool
    self_intersections: list
    self_osculations: list
    inter_osculations: list
    vh: VHResult
    hyperplanes: int
    one_sided: list

    @property
    def clean(self) -> bool:
        return self.two_sided and not self.self_intersections and not self.self_osculations

    @property
    def verdict(self) -> str:
        if self.clean and self.npc:
            return SPECIAL if not self.inter_osculations else CLEAN_BUT_INTEROSCULATING
        return OTHER

    def to_json(self) -> dict:
        return {
            "two_sided": self.two_sided,
            "self_intersections": self.self_intersections,
            "self_osculations": self.self_osculations,
            "inter_osculations": self.inter_osculations,
            "vh": {"ok": self.vh.ok, "classes": self.vh.classes, "certificate": self.vh.certificate},
            "npc": self.npc,
            "hyperplanes": self.hyperplanes,
            "verdict": self.verdict,
        }


def specialness_report(X: SquareComplex, vh_mode: str | None = None) -> SpecialnessReport:
    """All four pathology detectors, the link condition and a VH check.

    The VH check colours labels when every edge is labelled, else edges.
    """
    if vh_mode is None:
        vh_mode = "label" if all(ed.label is not None for ed in X.edges) else "edge"
    W = compute_walls(X)
    ts = check_two_sided(X, W)
    return SpecialnessReport(
        npc=check_npc(X).ok,
        two_sided=ts.ok,
        self_intersections=check_self_intersection(X, W).offenders,
        self_osculations=check_self_osculation(X, W).offenders,
        inter_osculations=check_inter_osculation(X, W).offenders,
        vh=vh_classification(X, vh_mode),
        hyperplanes=len(W.hyperplanes),
        one_sided=ts.offenders,
    )
