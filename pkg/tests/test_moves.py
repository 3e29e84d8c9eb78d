import pytest

from pathpart import (
    Graph,
    MoveError,
    PathPartition,
    apply_move,
    assert_fixpoint_claims,
    build_layering,
    enumerate_moves,
    exact_mu,
    greedy_initial,
    local_search,
    potential,
    validate_partition,
)
from pathpart.generators import SplitMix64, figure1_fixture, random_bounded
from pathpart.moves import MOVE_KINDS

from conftest import path_graph


def moves_for(g, p):
    return enumerate_moves(g, p, build_layering(g, p))


# --- hand-constructed violating partitions: each must admit a move ---------


def test_adjacent_path_ends_admit_merge():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    p = PathPartition(4, [[0, 1], [2, 3]])
    ms = moves_for(g, p)
    assert ms and ms[0].kind == "MergeEnds"
    assert len(apply_move(g, p, ms[0]).paths) == 1


def test_singleton_next_to_long_path_interior():
    # a singleton's neighbor must be the center of a 3-path; here it is an
    # interior vertex of a 5-path instead
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 2)])
    p = PathPartition(6, [[0, 1, 2, 3, 4], [5]])
    ms = moves_for(g, p)
    assert any(m.kind == "AbsorbSingleton" for m in ms)
    better = apply_move(g, p, ms[0])
    assert potential(better) < potential(p)


def test_pair_end_next_to_off_center_interior():
    # a 2-path end adjacent to a non-center interior vertex of a 5-path
    g = Graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (5, 1)])
    p = PathPartition(7, [[0, 1, 2, 3, 4], [5, 6]])
    ms = moves_for(g, p)
    assert any(m.kind == "AbsorbPairEnd" for m in ms)


def test_pair_end_next_to_order6_interior():
    # interior of an order-6 path is never an allowed neighbor class
    g = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (6, 7), (6, 2)])
    p = PathPartition(8, [[0, 1, 2, 3, 4, 5], [6, 7]])
    ms = moves_for(g, p)
    assert ms
    better = apply_move(g, p, ms[0])
    assert potential(better) < potential(p)


def test_central_detach_of_order4_path():
    # two reachable interior vertices on one 4-path: splitting its central
    # edge and attaching both halves merges three paths into two
    g = Graph(
        8, [(0, 1), (2, 3), (3, 4), (4, 5), (6, 7), (1, 3), (4, 6)]
    )
    p = PathPartition(8, [[0, 1], [2, 3, 4, 5], [6, 7]])
    ms = moves_for(g, p)
    assert any(m.kind in ("TripleMerge", "QuadDetach") for m in ms)
    better = apply_move(g, p, ms[0])
    assert len(better.paths) == 2


def test_end_to_end_chord_enables_rotation():
    # edge joining the two ends of a path lets a blocked end rotate free
    g = Graph(
        5, [(0, 1), (1, 2), (2, 3), (3, 1), (4, 2)]
    )
    p = PathPartition(5, [[1, 2, 3], [0], [4]])
    ms = moves_for(g, p)
    assert ms
    better = apply_move(g, p, ms[0])
    assert potential(better) < potential(p)


# --- generic machinery -----------------------------------------------------


def test_no_moves_on_optimal_single_path():
    g = path_graph(5)
    p = PathPartition(5, [[0, 1, 2, 3, 4]])
    assert moves_for(g, p) == []


def test_moves_are_deterministically_ordered():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    p = PathPartition(4, [[0, 1], [2, 3]])
    a = [m.to_dict() for m in moves_for(g, p)]
    b = [m.to_dict() for m in moves_for(g, p)]
    assert a == b
    kinds = [m.kind for m in moves_for(g, p)]
    assert kinds == sorted(kinds, key=MOVE_KINDS.index)


def test_apply_move_rejects_stale_move():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    p = PathPartition(4, [[0, 1], [2, 3]])
    m = moves_for(g, p)[0]
    p2 = apply_move(g, p, m)
    with pytest.raises(MoveError):
        apply_move(g, p2, m)


def test_local_search_rejects_invalid_start():
    g = path_graph(4)
    with pytest.raises(MoveError):
        local_search(g, PathPartition(4, [[0, 2], [1], [3]]))


def test_local_search_descends_and_terminates():
    rng = SplitMix64(17)
    for _ in range(15):
        n = 8 + rng.randrange(6)
        g = random_bounded(n, 2, 4, seed=rng.next_u64())
        p0 = greedy_initial(g)
        p, trace = local_search(g, p0)
        assert trace.fixpoint_reached
        assert trace.iterations <= 10 * n
        assert validate_partition(g, p).ok
        pots = [potential(p0)] + [s.after for s in trace.steps]
        assert all(b < a for a, b in zip(pots, pots[1:]))
        assert len(p.paths) <= len(p0.paths)
        assert len(p.paths) >= exact_mu(g).mu


def test_fixpoint_has_no_moves_and_claims_hold():
    g = random_bounded(12, 2, 5, seed=99)
    p, trace = local_search(g, greedy_initial(g))
    l = build_layering(g, p)
    assert enumerate_moves(g, p, l) == []
    report = assert_fixpoint_claims(g, p, l)
    assert report.ok, report.details


def test_claims_report_flags_non_fixpoint():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    p = PathPartition(4, [[0, 1], [2, 3]])
    report = assert_fixpoint_claims(g, p, build_layering(g, p))
    assert not report.is_fixpoint
    assert not report.ok


def test_claims_report_serializes():
    import json

    g, p = figure1_fixture()
    l = build_layering(g, p)
    json.dumps(assert_fixpoint_claims(g, p, l).to_dict())
