import os
import sys
import tempfile

PROJECT_ROOT = os.path.abspath(os.path.dirname(__file__))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

import networkx as nx
import numpy as np

from graphs import (
    EdgeListGraph,
    FreeGroup,
    Heisenberg,
    HyperbolicTiling,
    RegularTree,
    ZLattice,
    materialize_ball,
    neighbors,
    parse_family,
    rerun_center_bfs,
    symmetry_audit,
    tiling_layer_extend,
    transitivity_spot_check,
)
from graphs.errors import BudgetExceededError, EncodingError, OutOfBallError, SphericalTilingError


def test_lattice_neighbors():
    assert neighbors(ZLattice(2), (0, 0)) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert ZLattice(1).canonical(0) == (0,)


def test_tree_root_valence():
    tree = RegularTree(3)
    root_nbrs = neighbors(tree, ())
    assert len(root_nbrs) == 3
    for child in root_nbrs:
        nbrs = neighbors(tree, child)
        assert len(nbrs) == 3
        assert () in nbrs


def test_heisenberg_matches_matrix_model():
    heis = Heisenberg()
    gens = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)]
    rng = np.random.default_rng(3)
    samples = [(0, 0, 0)] + [tuple(int(x) for x in rng.integers(-5, 6, size=3)) for _ in range(25)]
    for g in samples:
        expected = []
        for s in gens:
            m = Heisenberg.to_matrix(g) @ Heisenberg.to_matrix(s)
            expected.append((int(m[0, 1]), int(m[1, 2]), int(m[0, 2])))
        assert heis.neighbors(g) == sorted(expected)
    assert heis.neighbors((0, 0, 0)) == [(-1, 0, 0), (0, -1, 0), (0, 1, 0), (1, 0, 0)]
    g = (2, -3, 7)
    assert Heisenberg.multiply(g, Heisenberg.inverse(g)) == (0, 0, 0)


def test_free_group_reduced_words():
    free = FreeGroup(2)
    assert neighbors(free, ()) == [(-2,), (-1,), (1,), (2,)]
    assert (1,) in neighbors(free, (1, 2))
    try:
        free.neighbors((1, -1))
    except EncodingError as e:
        assert "reduced word" in str(e)
    else:
        raise AssertionError("unreduced word accepted")


def test_malformed_encoding_names_canonical_form():
    try:
        ZLattice(2).neighbors((0, 0, 0))
    except EncodingError as e:
        assert "tuple of 2 integers" in str(e)
    else:
        raise AssertionError("expected an encoding error")


def test_ball_sizes():
    assert len(materialize_ball(ZLattice(2), (0, 0), 3)) == 25
    assert len(materialize_ball(RegularTree(3), (), 2)) == 10
    assert len(materialize_ball(ZLattice(1), 0, 5)) == 11
    ball = materialize_ball(ZLattice(2), (0, 0), 7)
    assert len(ball) == 2 * 7 * 7 + 2 * 7 + 1
    assert ball.dist_from_center((0, 0)) == 0
    assert max(ball.dist) == 7


def test_rerun_bfs_reproduces_distances():
    for oracle, radius in [
        (ZLattice(3), 5),
        (Heisenberg(), 5),
        (FreeGroup(2), 4),
        (RegularTree(3), 6),
        (HyperbolicTiling(4, 5), 4),
        (HyperbolicTiling(3, 7), 4),
    ]:
        ball = materialize_ball(oracle, oracle.base, radius)
        assert rerun_center_bfs(ball) == list(ball.dist), oracle.family
        for i, nbrs in enumerate(ball.adjacency):
            for j in nbrs:
                assert i in ball.adjacency[j]


def test_out_of_ball_lookup():
    ball = materialize_ball(ZLattice(2), (0, 0), 2)
    try:
        ball.index_of((5, 5))
    except OutOfBallError as e:
        assert e.radius == 2
    else:
        raise AssertionError("expected out-of-ball error")


def test_budget_exceeded_reports_attained_radius():
    try:
        materialize_ball(ZLattice(2), (0, 0), 10, budget=50)
    except BudgetExceededError as e:
        assert e.attained_radius == 4
        assert e.vertex_count == 50
    else:
        raise AssertionError("budget should have been exceeded")


def test_square_tiling_is_the_lattice():
    tiles = tiling_layer_extend(4, 4, 3)
    lattice = materialize_ball(ZLattice(2), (0, 0), 3)
    assert len(tiles) == 25
    assert tiles.shell_sizes() == [1, 4, 8, 12]
    assert nx.is_isomorphic(tiles.graph(), lattice.graph())
    for i, d in enumerate(tiles.dist):
        if d < 3:
            assert len(tiles.adjacency[i]) == 4


def test_hyperbolic_tiling_degrees():
    for p, q in [(4, 5), (3, 7)]:
        ball = tiling_layer_extend(p, q, 4)
        interior = [i for i, d in enumerate(ball.dist) if d < ball.radius]
        assert interior
        for i in interior:
            assert len(ball.adjacency[i]) == q, (p, q, ball.vertices[i])
    sizes = HyperbolicTiling(3, 7)
    sizes.ensure_layers(3)
    assert sizes.layer_sizes[:3] == [1, 7, 21]


def test_tiling_faces_are_p_gons():
    tiling = HyperbolicTiling(4, 5)
    tiling.ensure_layers(3)
    for face in tiling.faces:
        assert len(face) == 4
        for a, b in zip(face, face[1:] + face[:1]):
            assert b in tiling.neighbors(a)


def test_identified_spokes_close_triangles():
    # every {3,7} face between two spokes needs one new vertex, so the two
    # spoke endpoints are merged into a single class
    tiling = HyperbolicTiling(3, 7)
    tiling.ensure_layers(4)
    assert tiling.faces
    for face in tiling.faces:
        assert len(face) == 3, face
        for a, b in zip(face, face[1:] + face[:1]):
            assert b in tiling.neighbors(a)
    for layer, size in enumerate(tiling.layer_sizes):
        for index in range(size):
            assert tiling.canonical((layer, index)) == (layer, index)
    ball = tiling_layer_extend(3, 7, 4)
    assert ball.shell_sizes() == tiling.layer_sizes[:5]


def test_spherical_tiling_rejected():
    try:
        HyperbolicTiling(3, 5)
    except SphericalTilingError as e:
        assert "spherical" in str(e)
    else:
        raise AssertionError("{3,5} should be rejected")


def test_transitivity_spot_check():
    for oracle in [ZLattice(2), ZLattice(3), FreeGroup(2), RegularTree(3)]:
        report = transitivity_spot_check(oracle, max_radius=6, samples=20, seed=1)
        assert report["ok"], (oracle.family, report["mismatches"][:1])
    report = transitivity_spot_check(Heisenberg(), max_radius=5, samples=20, seed=1)
    assert report["ok"]


def test_symmetry_audit():
    for oracle in [ZLattice(2), ZLattice(3), Heisenberg(), FreeGroup(2), RegularTree(3)]:
        report = symmetry_audit(oracle, pairs=10_000, seed=2)
        assert report["ok"], (oracle.family, report["failures"][:1])
    for oracle in [HyperbolicTiling(4, 5), HyperbolicTiling(3, 7)]:
        report = symmetry_audit(oracle, pairs=2_000, seed=2, walk=3)
        assert report["ok"], oracle.family


def test_edge_list_graph():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "cycle.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("# a 5-cycle\na b\nb c\nc d\nd e\ne a\n\n")
        graph = EdgeListGraph.from_file(path, trust_radius=1)
        assert graph.base == "a"
        assert graph.neighbors("a") == ["b", "e"]
        ball = materialize_ball(graph, "a", 2)
        assert len(ball) == 5
        try:
            graph.neighbors("z")
        except EncodingError:
            pass
        else:
            raise AssertionError("out-of-file vertex should not exist")
        same = parse_family(f"edges:{path}@1")
        assert same.trust_radius == 1


def test_parse_family():
    assert parse_family("z2").family == "z2"
    assert parse_family("t3").family == "tree:3"
    assert parse_family("free:2").family == "free:2"
    assert parse_family("tiling:4,5").family == "tiling:4,5"
    assert parse_family("{3,7}").family == "tiling:3,7"
    assert parse_family("heisenberg").family == "heisenberg"


if __name__ == "__main__":
    tests = [obj for name, obj in sorted(globals().items()) if name.startswith("test_") and callable(obj)]
    failed = 0
    for test in tests:
        try:
            test()
            print(f"✅ {test.__name__}")
        except Exception as e:
            failed += 1
            print(f"❌ {test.__name__}: {e}")
    print(f"{len(tests) - failed}/{len(tests)} passed")
    sys.exit(1 if failed else 0)
