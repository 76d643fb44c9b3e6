"""Square complexes: presentation complexes, links, covers and the torus map.

A square is a based closed path of four steps.  A step is ``(edge, d)``
with ``d = +1`` for traversing the edge from source to target and
``d = -1`` for the other way.  A link node is an edge end ``(edge, "-")``
for the outgoing end (at the source) or ``(edge, "+")`` for the incoming
end (at the target).
"""
from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .family import Presentation, presentation
from .permrep import CoordinateAction, verify_action
from .words import Alphabet, AlphabetError

Step = tuple[int, int]
Node = tuple[int, str]


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    label: int | None = None


@dataclass
class SquareComplex:
    vertices: list[Hashable]
    edges: list[Edge]
    squares: list[tuple[Step, Step, Step, Step]]
    alphabet: Alphabet | None = None
    # optional per-square tag: (relator index, rotation of the based path)
    square_tags: list[tuple[int, int]] | None = None

    def __post_init__(self) -> None:
        nv = len(self.vertices)
        for e in self.edges:
            if not (0 <= e.source < nv and 0 <= e.target < nv):
                raise ComplexError(f"edge {e} has a vertex out of range")
        for q, sq in enumerate(self.squares):
            if len(sq) != 4:
                raise ComplexError(f"square {q} does not have 4 sides")
            for i in range(4):
                a, b = sq[i], sq[(i + 1) % 4]
                if self.step_end(a) != self.step_start(b):
                    raise ComplexError(f"square {q} is not a closed path")
                if a[0] == b[0] and a[1] == -b[1]:
                    raise ComplexError(f"square {q} backtracks")

    # -- incidence helpers
    def step_start(self, s: Step) -> int:
        e = self.edges[s[0]]
        return e.source if s[1] > 0 else e.target

    def step_end(self, s: Step) -> int:
        e = self.edges[s[0]]
        return e.target if s[1] > 0 else e.source

    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.squares)

    def label_name(self, e: int) -> str:
        lab = self.edges[e].label
        if lab is None:
            return f"e{e}"
        return self.alphabet.names[lab] if self.alphabet else f"x{lab + 1}"

    def vertex_index(self) -> dict[Hashable, int]:
        return {v: i for i, v in enumerate(self.vertices)}


@dataclass
class LinkGraph:
    vertex: int
    nodes: list[Node]
    arcs: list[tuple[Node, Node, int, int]]  # (end, end, square, corner)

    def adjacency(self) -> dict[Node, list[Node]]:
        adj: dict[Node, list[Node]] = {n: [] for n in self.nodes}
        for a, b, _, _ in self.arcs:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        adj = self.adjacency()
        seen = {self.nodes[0]}
        todo = [self.nodes[0]]
        while todo:
            x = todo.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return len(seen) == len(self.nodes)

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.arcs) == len(self.nodes) - 1

    def short_cycle(self, below: int = 4) -> list[Node] | None:
        """A circuit of length < ``below`` (loops and double arcs count), or None."""
        for a, b, _, _ in self.arcs:
            if a == b:
                return [a]
        seen: set[frozenset] = set()
        for a, b, _, _ in self.arcs:
            key = frozenset((a, b))
            if key in seen:
                return [a, b]
            seen.add(key)
        adj = self.adjacency()
        for idx, (a, b, _, _) in enumerate(self.arcs):
            # shortest a-b path avoiding this arc; simple graph now, so drop the pair
            prev = {a: None}
            dq = deque([a])
            while dq:
                x = dq.popleft()
                if x == b:
                    break
                for y in adj[x]:
                    if {x, y} == {a, b} or y in prev:
                        continue
                    prev[y] = x
                    dq.append(y)
            if b in prev:
                path = [b]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                if len(path) < below:
                    return path
        return None


@dataclass
class CellMap:
    vertex_map: list[int]
    edge_map: list[int]
    square_map: list[int]


def presentation_complex(pres: Presentation) -> SquareComplex:
    """One vertex, one loop per generator, one based square per relator."""
    edges = [Edge(0, 0, i) for i in range(pres.rank)]
    squares = []
    for r in pres.relators:
        if len(r) != 4:
            raise ComplexError(f"relator {pres.alphabet.format(r)} does not have length 4")
        squares.append(tuple((abs(c) - 1, 1 if c > 0 else -1) for c in r.letters))
    tags = [(i, 0) for i in range(len(squares))]
    return SquareComplex([0], edges, squares, pres.alphabet, tags)


def _arrival(s: Step) -> Node:
    return (s[0], "+" if s[1] > 0 else "-")


def _departure(s: Step) -> Node:
    return (s[0], "-" if s[1] > 0 else "+")


def corners(X: SquareComplex) -> dict[int, list[tuple[Node, Node, int, int]]]:
    """Corner arcs of all squares grouped by the vertex they sit at.

    Corner ``i`` of a square sits between step ``i`` and step ``i + 1``.
    """
    out: dict[int, list] = defaultdict(list)
    for q, sq in enumerate(X.squares):
        for i in range(4):
            a, b = sq[i], sq[(i + 1) % 4]
            out[X.step_end(a)].append((_arrival(a), _departure(b), q, i))
    return out


def _link_nodes(X: SquareComplex, v: int) -> list[Node]:
    nodes = []
    for e, ed in enumerate(X.edges):
        if ed.source == v:
            nodes.append((e, "-"))
        if ed.target == v:
            nodes.append((e, "+"))
    return nodes


def vertex_link(X: SquareComplex, v: int, _corners=None) -> LinkGraph:
    if not 0 <= v < len(X.vertices):
        raise ComplexError(f"no vertex {v}")
    cs = _corners if _corners is not None else corners(X)
    return LinkGraph(v, _link_nodes(X, v), list(cs.get(v, [])))


def all_links(X: SquareComplex) -> list[LinkGraph]:
    cs = corners(X)
    nodes: dict[int, list[Node]] = defaultdict(list)
    for e, ed in enumerate(X.edges):
        nodes[ed.source].append((e, "-"))
        nodes[ed.target].append((e, "+"))
    return [LinkGraph(v, nodes[v], list(cs.get(v, []))) for v in range(len(X.vertices))]


@dataclass
class NPCReport:
    ok: bool
    short_circuits: list[tuple[int, list[Node]]] = field(default_factory=list)


def check_npc(X: SquareComplex) -> NPCReport:
    bad = []
    for L in all_links(X):
        cyc = L.short_cycle(4)
        if cyc is not None:
            bad.append((L.vertex, cyc))
    return NPCReport(not bad, bad)


@dataclass
class MorseLinks:
    vertex: int
    ascending: LinkGraph
    descending: LinkGraph

    @property
    def trees(self) -> bool:
        return self.ascending.is_tree() and self.descending.is_tree()


def morse_links(X: SquareComplex) -> list[MorseLinks]:
    """Ascending (outgoing ends only) and descending (incoming ends only) links."""
    out = []
    for L in all_links(X):
        asc = LinkGraph(L.vertex, [n for n in L.nodes if n[1] == "-"], [a for a in L.arcs if a[0][1] == a[1][1] == "-"])
        desc = LinkGraph(L.vertex, [n for n in L.nodes if n[1] == "+"], [a for a in L.arcs if a[0][1] == a[1][1] == "+"])
        out.append(MorseLinks(L.vertex, asc, desc))
    return out


# -- covers -------------------------------------------------------------------

def label_map(X: SquareComplex, base: SquareComplex) -> CellMap:
    """Map a labelled complex onto a one-vertex complex by labels and square tags."""
    if len(base.vertices) != 1:
        raise ComplexError("label_map needs a one-vertex base")
    if X.square_tags is None:
        raise ComplexError("squares carry no relator tags")
    return CellMap([0] * len(X.vertices), [e.label for e in X.edges], [t[0] for t in X.square_tags])


def cover_from_action(pres: Presentation, action: CoordinateAction) -> tuple[SquareComplex, CellMap]:
    if pres.rank != action.n_coords:
        raise AlphabetError("presentation does not match the action")
    rep = verify_action(action, pres)
    if not rep.relators_ok:
        raise ComplexError("action does not satisfy the relators")
    N, r = action.n_points, pres.rank
    inv = [[0] * N for _ in range(r)]
    for j in range(r):
        for v in range(N):
            inv[j][action.tables[j][v]] = v
    edges = [Edge(v, action.tables[j][v], j) for v in range(N) for j in range(r)]
    eid = lambda v, j: v * r + j  # noqa: E731
    squares, tags = [], []
    for v in range(N):
        for ri, rel in enumerate(pres.relators):
            cur, steps = v, []
            for c in rel.letters:
                j = abs(c) - 1
                if c > 0:
                    steps.append((eid(cur, j), 1))
                    cur = action.tables[j][cur]
                else:
                    src = inv[j][cur]
                    steps.append((eid(src, j), -1))
                    cur = src
            squares.append(tuple(steps))
            tags.append((ri, 0))
    X = SquareComplex(list(range(N)), edges, squares, pres.alphabet, tags)
    base = presentation_complex(pres)
    return X, label_map(X, base)


@dataclass
class CoveringReport:
    ok: bool
    degree: int
    label_regular: bool
    incidence_ok: bool
    squares_lift: bool
    links_isomorphic: bool
    failures: list[str]


def _same_boundary(mapped: Sequence[Step], target: Sequence[Step]) -> bool:
    rev = [(e, -d) for e, d in reversed(target)]
    for cand in (list(target), rev):
        for s in range(4):
            if list(mapped) == cand[s:] + cand[:s]:
                return True
    return False


def verify_covering(cover: SquareComplex, base: SquareComplex, cmap: CellMap) -> CoveringReport:
    fails: list[str] = []
    vm, em, sm = cmap.vertex_map, cmap.edge_map, cmap.square_map
    fibre = Counter(vm)
    sizes = {fibre.get(b, 0) for b in range(len(base.vertices))}
    degree = sizes.pop() if len(sizes) == 1 else -1
    if degree <= 0:
        fails.append(f"vertex fibres have sizes {sorted(sizes | {degree})}")

    incidence = True
    for e, ed in enumerate(cover.edges):
        b = base.edges[em[e]]
        if vm[ed.source] != b.source or vm[ed.target] != b.target:
            incidence = False
            fails.append(f"edge {e} does not commute with incidence")
            break
    for q, sq in enumerate(cover.squares):
        mapped = [(em[e], d) for e, d in sq]
        if not _same_boundary(mapped, base.squares[sm[q]]):
            incidence = False
            fails.append(f"square {q} boundary does not map onto base square {sm[q]}")
            break

    # unique outgoing and incoming lift of every base edge end at every vertex
    regular = True
    out_ends: Counter = Counter()
    in_ends: Counter = Counter()
    for e, ed in enumerate(cover.edges):
        out_ends[(ed.source, em[e])] += 1
        in_ends[(ed.target, em[e])] += 1
    for v in range(len(cover.vertices)):
        bv = vm[v]
        for be, bed in enumerate(base.edges):
            want_out = int(bed.source == bv)
            want_in = int(bed.target == bv)
            if out_ends[(v, be)] != want_out or in_ends[(v, be)] != want_in:
                regular = False
        if not regular:
            fails.append(f"vertex {cover.vertices[v]} is not label-regular")
            break

    lifts = Counter(sm)
    squares_lift = all(lifts.get(q, 0) == degree for q in range(len(base.squares)))
    if not squares_lift:
        short = [q for q in range(len(base.squares)) if lifts.get(q, 0) != degree]
        fails.append(f"base squares {short} do not lift {degree} times")

    links_ok = True
    base_links = all_links(base)
    base_arcs = [Counter(_arc_key(a, b) for a, b, _, _ in L.arcs) for L in base_links]
    base_nodes = [Counter(L.nodes) for L in base_links]
    for L in all_links(cover):
        bv = vm[L.vertex]
        nodes = Counter((em[e], end) for e, end in L.nodes)
        arcs = Counter(_arc_key((em[a[0]], a[1]), (em[b[0]], b[1])) for a, b, _, _ in L.arcs)
        if nodes != base_nodes[bv] or arcs != base_arcs[bv]:
            links_ok = False
            fails.append(f"link at {cover.vertices[L.vertex]} is not isomorphic to the base link")
            break

    ok = degree > 0 and incidence and regular and squares_lift and links_ok
    return CoveringReport(ok, degree, regular, incidence, squares_lift, links_ok, fails)


def _arc_key(a: Node, b: Node) -> tuple[Node, Node]:
    return (a, b) if a <= b else (b, a)


def identity_map(X: SquareComplex) -> CellMap:
    return CellMap(list(range(len(X.vertices))), list(range(len(X.edges))), list(range(len(X.squares))))


def subcomplex(X: SquareComplex, keep_vertices: Iterable[int], keep_edges: Iterable[int], keep_squares: Iterable[int]) -> SquareComplex:
    """Restrict ``X`` to the given cells, renumbering them in their original order."""
    kv, ke, ks = sorted(set(keep_vertices)), sorted(set(keep_edges)), sorted(set(keep_squares))
    vnew = {v: i for i, v in enumerate(kv)}
    enew = {e: i for i, e in enumerate(ke)}
    edges = [Edge(vnew[X.edges[e].source], vnew[X.edges[e].target], X.edges[e].label) for e in ke]
    squares = [tuple((enew[e], d) for e, d in X.squares[q]) for q in ks]
    tags = [X.square_tags[q] for q in ks] if X.square_tags is not None else None
    return SquareComplex([X.vertices[v] for v in kv], edges, squares, X.alphabet, tags)


def remove_squares(X: SquareComplex, drop: Iterable[int]) -> SquareComplex:
    drop = set(drop)
    return subcomplex(X, range(len(X.vertices)), range(len(X.edges)), [q for q in range(len(X.squares)) if q not in drop])


def delete_generator(X: SquareComplex, label: int | str, alphabet: Alphabet | None = None) -> SquareComplex:
    """Drop every edge with ``label`` and the squares on them; keep the component of vertex 0.

    The surviving generators keep their indices, so the alphabet is cut
    down to its first ``rank - 1`` letters when the deleted label is the
    last one.
    """
    alpha = X.alphabet
    if isinstance(label, str):
        if alpha is None:
            raise AlphabetError("complex has no alphabet to resolve label names")
        label = alpha.index(label)
    if not any(e.label == label for e in X.edges) and (alpha is None or not 0 <= label < alpha.rank):
        raise AlphabetError(f"unknown label {label}")
    ke = {e for e, ed in enumerate(X.edges) if ed.label != label}
    ks = [q for q, sq in enumerate(X.squares) if all(e in ke for e, _ in sq)]
    # component of vertex 0 in the surviving 1-skeleton
    adj: dict[int, list[int]] = defaultdict(list)
    for e in ke:
        ed = X.edges[e]
        adj[ed.source].append(ed.target)
        adj[ed.target].append(ed.source)
    comp = {0}
    todo = [0]
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in comp:
                comp.add(w)
                todo.append(w)
    ke = [e for e in ke if X.edges[e].source in comp]
    ks = [q for q in ks if X.step_start(X.squares[q][0]) in comp]
    Y = subcomplex(X, comp, ke, ks)
    if alphabet is not None:
        Y.alphabet = alphabet
    elif alpha is not None and label == alpha.rank - 1:
        Y.alphabet = Alphabet(alpha.names[:-1])
    return Y


# -- torus embedding ----------------------------------------------------------

@dataclass
class TorusReport:
    ok: bool
    vertex_injective: bool
    edge_injective: bool
    square_injective: bool
    sides_ok: bool
    counterexamples: list[str]


def torus_edge(u: int, w: int) -> tuple[int, int, int]:
    """(position, alpha, other coordinates) of the torus edge under u -> w."""
    diff = u ^ w
    if diff == 0 or diff & (diff - 1):
        raise ComplexError("edge does not change exactly one coordinate")
    p = diff.bit_length()
    return p, (u >> (p - 1)) & 1, u & ~diff


def torus_embedding(X: SquareComplex, m: int) -> TorusReport:
    """Check the cellular map of a cube-vertex complex into the torus T_{2m+1}."""
    bad: list[str] = []
    n = 2 * m + 1
    verts = X.vertices
    v_inj = len(set(verts)) == len(verts) and all(isinstance(v, int) and 0 <= v < (1 << n) for v in verts)
    if not v_inj:
        bad.append("vertex map not injective")
    eimg = {}
    e_inj = True
    for e, ed in enumerate(X.edges):
        try:
            img = torus_edge(verts[ed.source], verts[ed.target])
        except ComplexError:
            bad.append(f"edge {e} changes more than one coordinate")
            e_inj = False
            continue
        if img in eimg:
            e_inj = False
            bad.append(f"edges {eimg[img]} and {e} share torus edge {img}")
        eimg[img] = e
    simg = {}
    s_inj = sides = True
    for q, sq in enumerate(X.squares):
        imgs = []
        for e, _ in sq:
            ed = X.edges[e]
            imgs.append(torus_edge(verts[ed.source], verts[ed.target]))
        p1, p2, p3, p4 = (t[0] for t in imgs)
        if not (p1 == p3 and p2 == p4 and p1 != p2 and imgs[0][1] == imgs[2][1] and imgs[1][1] == imgs[3][1]):
            sides = False
            bad.append(f"square {q} opposite sides disagree")
            continue
        start = verts[X.step_start(sq[0])]
        mask = (1 << (p1 - 1)) | (1 << (p2 - 1))
        key = (frozenset({(p1, imgs[0][1]), (p2, imgs[1][1])}), start & ~mask)
        if key in simg:
            s_inj = False
            bad.append(f"squares {simg[key]} and {q} share a torus square")
        simg[key] = q
    ok = v_inj and e_inj and s_inj and sides
    return TorusReport(ok, v_inj, e_inj, s_inj, sides, bad)


# -- fixtures -----------------------------------------------------------------

def torus_square() -> SquareComplex:
    """The one-square torus: presentation <a1, a2 | a1 a2 a1^-1 a2^-1>."""
    return presentation_complex(presentation(1, 0))


def klein_square() -> SquareComplex:
    """One vertex, one square a b a b^-1: a Klein bottle with a one-sided wall."""
    alpha = Alphabet(["a", "b"])
    return SquareComplex([0], [Edge(0, 0, 0), Edge(0, 0, 1)], [((0, 1), (1, 1), (0, 1), (1, -1))], alpha, [(0, 0)])


def doubled_square() -> SquareComplex:
    """Two squares glued along their whole boundary (a sphere); links have double arcs."""
    edges = [Edge(0, 1), Edge(1, 2), Edge(3, 2), Edge(0, 3)]
    sq = ((0, 1), (1, 1), (2, -1), (3, -1))
    return SquareComplex([0, 1, 2, 3], edges, [sq, sq])


def cubical_complex(squares: Sequence[Sequence[tuple[int, ...]]]) -> SquareComplex:
    """Squares given as cyclic corner lists in a grid; edges point up the changed axis."""
    verts: dict[tuple[int, ...], int] = {}
    edges: list[Edge] = []
    eidx: dict[tuple[int, int], int] = {}

    def vid(p):
        if p not in verts:
            verts[p] = len(verts)
        return verts[p]

    out = []
    for corners_ in squares:
        steps = []
        for i in range(4):
            a, b = corners_[i], corners_[(i + 1) % 4]
            if sum(x != y for x, y in zip(a, b)) != 1:
                raise ComplexError(f"{a} and {b} are not adjacent grid points")
            lo, hi = (a, b) if a < b else (b, a)
            key = (vid(lo), vid(hi))
            if key not in eidx:
                eidx[key] = len(edges)
                edges.append(Edge(*key))
            steps.append((eidx[key], 1 if a == lo else -1))
        out.append(tuple(steps))
    return SquareComplex(list(verts), edges, out)


def interosculation_fixture() -> SquareComplex:
    """Five squares in [0,2] x [0,1] x [0,1] (coordinates X, D, Z).

    The D-hyperplane and the hyperplane dual to X-edges over [1,2] cross in
    the bottom square over [1,2] and touch without a square at (1,1,1).
    """
    return cubical_complex(
        [
            [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)],
            [(1, 0, 0), (2, 0, 0), (2, 1, 0), (1, 1, 0)],
            [(0, 0, 0), (0, 1, 0), (0, 1, 1), (0, 0, 1)],
            [(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)],
            [(1, 1, 0), (2, 1, 0), (2, 1, 1), (1, 1, 1)],
        ]
    )


def base_complex(m: int, k: int) -> SquareComplex:
    return presentation_complex(presentation(m, k))
