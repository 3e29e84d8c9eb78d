import pytest

from pathpart import (
    Graph,
    LayeringError,
    PathPartition,
    alpha_sequence,
    build_layering,
    derive_rewired,
    split_orders,
)
from pathpart.generators import FIGURE1_LABELS, figure1_fixture
from pathpart.layering import layering_to_dict

from conftest import path_graph


def chained_graph():
    """16-vertex graph whose layering has a two-step chain.

    A 2-path [0,1], three longer paths, and connecting edges so that vertex 3
    enters W at round one and vertex 8 at round two.
    """
    edges = [
        (0, 1), (1, 3),
        (2, 3), (3, 4), (4, 5), (5, 8),
        (6, 7), (7, 8), (8, 9), (9, 10),
        (6, 13),
        (11, 12), (12, 13), (13, 14), (14, 15),
    ]
    g = Graph(16, edges)
    p = PathPartition(
        16, [[0, 1], [2, 3, 4, 5], [6, 7, 8, 9, 10], [11, 12, 13, 14, 15]]
    )
    return g, p


def test_chained_layering_rounds():
    g, p = chained_graph()
    l = build_layering(g, p)
    assert l.x_layers[0] == {0, 1}
    assert l.w_layers[0] == {3}
    assert l.x_layers[1] == {0, 1, 2, 5}
    assert l.w_layers[1] == {8}
    assert l.x_layers[2] == {0, 1, 2, 5, 6, 10}
    assert l.w_layers[2] == {13}
    assert l.x_union == {0, 1, 2, 5, 6, 10, 11, 15}
    assert l.w_union == {3, 8, 13}
    assert l.prime_paths == {0, 1, 2, 3}
    assert l.bad == set()


def test_alpha_sequence_two_steps():
    g, p = chained_graph()
    l = build_layering(g, p)
    seq = alpha_sequence(g, p, l, 8)
    assert seq.steps == [(1, 3), (5, 8)]
    assert seq.r == 2
    assert seq.target == 8
    assert seq.host_path == 2
    # chain forces the orientation of the middle path: terminal end 5
    assert seq.terminal_of[1] == 5


def test_alpha_sequence_base_layer():
    g, p = chained_graph()
    l = build_layering(g, p)
    seq = alpha_sequence(g, p, l, 3)
    assert seq.steps == [(1, 3)]


def test_alpha_sequence_rejects_non_w():
    g, p = chained_graph()
    l = build_layering(g, p)
    with pytest.raises(LayeringError):
        alpha_sequence(g, p, l, 0)


def test_derive_rewired_variants():
    g, p = chained_graph()
    l = build_layering(g, p)
    seq = alpha_sequence(g, p, l, 8)
    p1 = derive_rewired(g, p, seq, "P1", terminal_end=6)
    # paths are canonically oriented from their smaller end
    assert set(p1.paths) == {
        (0, 1, 3, 2), (4, 5, 8, 9, 10), (6, 7), (11, 12, 13, 14, 15)
    }
    p2 = derive_rewired(g, p, seq, "P2", terminal_end=6)
    assert set(p2.paths) == {
        (0, 1, 3, 2), (4, 5, 8, 7, 6), (9, 10), (11, 12, 13, 14, 15)
    }
    assert len(p1.paths) == len(p.paths) == len(p2.paths)
    # the two variants differ by one edge swap around the last chain vertex
    assert p1.path_edges() ^ p2.path_edges() == {(8, 9), (7, 8)}


def test_derive_rewired_bad_variant():
    g, p = chained_graph()
    l = build_layering(g, p)
    seq = alpha_sequence(g, p, l, 8)
    with pytest.raises(ValueError):
        derive_rewired(g, p, seq, "P3")


def test_split_orders():
    g, p = chained_graph()
    l = build_layering(g, p)
    seq = alpha_sequence(g, p, l, 8)
    i1, i2 = split_orders(seq, p, terminal_end=6)
    assert i1 + i2 + 1 == 5
    assert (i1, i2) == (2, 2)


def test_fixture_layering_layers_by_label():
    g, p = figure1_fixture()
    l = build_layering(g, p)
    lab = FIGURE1_LABELS
    assert l.x_layers[0] == {lab[f"x{i}"] for i in range(1, 8)}
    assert l.w_layers[0] == {lab[f"w{i}"] for i in range(1, 6)}
    assert l.w_layers[1] == {lab["w6"], lab["w7"]}
    assert l.w_layers[2] == {lab["w8"]}
    assert l.x_layers[1] - l.x_layers[0] == {lab[f"x{i}"] for i in range(8, 16)}
    assert l.x_layers[2] - l.x_layers[1] == {lab[f"x{i}"] for i in range(16, 20)}
    assert l.x_layers[3] - l.x_layers[2] == {lab["x20"], lab["x21"]}
    assert len(l.x_layers) == 4
    seq = alpha_sequence(g, p, l, lab["w8"])
    assert seq.r == 3
    assert seq.target == lab["w8"]


def test_no_short_paths_means_empty_layering():
    g = path_graph(6)
    p = PathPartition(6, [[0, 1, 2], [3, 4, 5]])
    l = build_layering(g, p)
    assert l.x_union == set() and l.w_union == set()
    assert l.prime_paths == set()


def test_two_isolated_edges():
    g = Graph(4, [(0, 1), (2, 3)])
    p = PathPartition(4, [[0, 1], [2, 3]])
    l = build_layering(g, p)
    assert l.x_union == {0, 1, 2, 3}
    assert l.w_union == set()
    assert l.prime_paths == {0, 1}


def test_layering_to_dict_is_json_friendly():
    import json

    g, p = chained_graph()
    l = build_layering(g, p)
    d = layering_to_dict(g, p, l)
    json.dumps(d)
    assert d["w_layers"] == [[3], [8], [13]]
    assert d["alpha_sequences"]["8"] == [[1, 3], [5, 8]]
