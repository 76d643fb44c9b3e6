from __future__ import annotations

import pytest

from gmk.complexes import (
    base_complex,
    cover_from_action,
    delete_generator,
    interosculation_fixture,
    klein_square,
    torus_square,
)
from gmk.family import presentation
from gmk.permrep import build_action
from gmk.walls import (
    CLEAN_BUT_INTEROSCULATING,
    SPECIAL,
    check_inter_osculation,
    check_self_intersection,
    check_self_osculation,
    check_two_sided,
    compute_walls,
    specialness_report,
    vh_classification,
)


def cover(m):
    return cover_from_action(presentation(m, m), build_action(m))[0]


@pytest.fixture(scope="module")
def cover2():
    return cover(2)


def hyperplane_labels(X, W):
    return sorted(sorted({X.label_name(e) for e in W.dual_edges(h)}) for h in range(len(W.hyperplanes)))


def test_torus_walls():
    X = torus_square()
    W = compute_walls(X)
    assert len(W.hyperplanes) == 2
    assert check_two_sided(X, W).ok
    assert check_self_intersection(X, W).ok
    assert check_self_osculation(X, W).ok
    assert check_inter_osculation(X, W).ok
    assert specialness_report(X).verdict == SPECIAL


def test_base_2_2_hyperplanes():
    # hand merge: a4^-1 a1 a4 a3^-1 glues a1 to a3, a5^-1 a2 a5 a4^-1 glues a2 to a4
    X = base_complex(2, 2)
    W = compute_walls(X)
    assert hyperplane_labels(X, W) == [["a1", "a3"], ["a2", "a4"], ["a5"]]


def test_base_2_2_no_self_osculation_or_intersection():
    X = base_complex(2, 2)
    W = compute_walls(X)
    # each pair of distinct dual edges meeting at the vertex bounds a common square
    assert check_self_osculation(X, W).ok
    assert check_self_intersection(X, W).ok


def test_reversal_symmetry(cover2):
    W = compute_walls(cover2)
    for c, members in W.classes.items():
        assert sorted((e, -d) for e, d in members) == sorted(W.classes[W.opposite[c]])


def test_cover_walls_lie_in_torus_walls(cover2):
    # each oriented class maps into a single torus wall (position, alpha)
    from gmk.complexes import torus_edge

    W = compute_walls(cover2)
    for members in W.classes.values():
        walls = set()
        for e, d in members:
            ed = cover2.edges[e]
            u, v = (ed.source, ed.target) if d > 0 else (ed.target, ed.source)
            p, alpha, _ = torus_edge(cover2.vertices[u], cover2.vertices[v])
            walls.add((p, alpha))
        assert len(walls) == 1


def test_klein_bottle_one_sided():
    X = klein_square()
    rep = check_two_sided(X, compute_walls(X))
    assert not rep.ok and rep.offenders


@pytest.mark.parametrize("m", [2, 4])
def test_cover_clean(m):
    X = cover(m)
    W = compute_walls(X)
    assert check_two_sided(X, W).ok
    assert check_self_intersection(X, W).ok
    assert check_self_osculation(X, W).ok


@pytest.mark.parametrize("m, expected", [(2, 0), (3, 32), (4, 0)])
def test_cover_interosculation_baseline(m, expected):
    X = cover(m)
    assert len(check_inter_osculation(X, compute_walls(X)).offenders) == expected


def test_fixture_interosculates():
    X = interosculation_fixture()
    W = compute_walls(X)
    rep = check_inter_osculation(X, W)
    assert [o["vertex"] for o in rep.offenders] == ["(1, 1, 1)"]
    assert specialness_report(X).verdict == CLEAN_BUT_INTEROSCULATING


def test_self_osculation_absent_on_grid():
    from gmk.complexes import cubical_complex

    X = cubical_complex(
        [
            [(0, 0), (1, 0), (1, 1), (0, 1)],
            [(1, 0), (2, 0), (2, 1), (1, 1)],
            [(0, 1), (1, 1), (1, 2), (0, 2)],
        ]
    )
    assert check_self_osculation(X, compute_walls(X)).ok


def test_self_intersection_detected():
    X = base_complex(1, 1)
    rep = check_self_intersection(X, compute_walls(X))
    assert not rep.ok


@pytest.mark.parametrize("m", [2, 4])
def test_vh_even(m):
    split = [[f"a{i}" for i in range(1, 2 * m + 2, 2)], [f"a{i}" for i in range(2, 2 * m + 2, 2)]]
    assert vh_classification(base_complex(m, m)).classes == split
    assert vh_classification(cover(m)).classes == split


@pytest.mark.parametrize("m", [1, 3])
def test_vh_odd_certificate(m):
    vh = vh_classification(base_complex(m, m))
    assert not vh.ok
    assert len(vh.certificate) % 2 == 1


def test_vh_1_1_triangle():
    assert vh_classification(base_complex(1, 1)).certificate == ["a1", "a2", "a3"]


def test_vh_edge_mode_on_fixture():
    vh = vh_classification(interosculation_fixture(), mode="edge")
    assert vh.ok and sum(len(c) for c in vh.classes) == len(interosculation_fixture().edges)


def test_deleted_cover_clean():
    X = delete_generator(cover(2), "a5")
    rep = specialness_report(X)
    assert rep.two_sided and not rep.self_intersections and not rep.self_osculations
