import networkx as nx
import pytest

from lgr.graph_core import (Graph, NotALineGraph, heavy_graph, inverse_line_graph, line_graph,
                            remove_lone_leaf_mediators)
from lgr.lattices import (FAMILIES, PatchSpec, checkerboard, complete, heavy_hex, heavy_square,
                          heavy_square_octagon, hexagonal, kagome, parse_size, random_graph,
                          random_line_graph, shuriken, square, square_octagon, star)
from oracles import isomorphic, to_nx


def footprint(g: Graph) -> int:
    """Node count of the routing target for line graph g, lone leaves removed."""
    pre, part = inverse_line_graph(g)
    return len(remove_lone_leaf_mediators(heavy_graph(pre)).heavy_graph)


# ---------------------------------------------------------------- node counts

@pytest.mark.parametrize("fn,size,nodes", [
    (kagome, (1, 1), 8), (shuriken, (1, 1), 8), (checkerboard, (0.5, 0.5), 4),
    (checkerboard, (1.5, 1.5), 16), (kagome, (25, 25), 1976),
])
def test_logical_node_counts(fn, size, nodes):
    assert len(fn(*size)) == nodes


@pytest.mark.parametrize("fn,size,nodes", [
    (kagome, (1, 1), 12), (shuriken, (1, 1), 8), (checkerboard, (1.5, 1.5), 21),
    (kagome, (3, 3), 68), (kagome, (7, 7), 300), (shuriken, (7, 7), 476),
    (checkerboard, (7.5, 7.5), 393), (complete, (9,), 10),
])
def test_routing_footprints(fn, size, nodes):
    assert footprint(fn(*size)) == nodes


def test_heavy_hex_7x7_before_and_after_lone_leaves():
    h = heavy_graph(hexagonal(7, 7))
    assert len(h.heavy_graph) == 302
    assert len(remove_lone_leaf_mediators(h).heavy_graph) == 300


# ---------------------------------------------------------------- structure

@pytest.mark.parametrize("r,c", [(1, 1), (1, 2), (2, 3), (3, 3)])
def test_kagome_is_line_graph_of_hexagonal(r, c):
    lg, _ = line_graph(hexagonal(r, c))
    assert isomorphic(lg, kagome(r, c))


@pytest.mark.parametrize("r,c", [(1, 1), (2, 2), (2, 3)])
def test_shuriken_is_line_graph_of_square_octagon(r, c):
    lg, _ = line_graph(square_octagon(r, c))
    assert isomorphic(lg, shuriken(r, c))


@pytest.mark.parametrize("r,c", [(0.5, 0.5), (1.5, 1.5), (2.5, 1.5)])
def test_checkerboard_is_line_graph_of_square(r, c):
    lg, _ = line_graph(square(r, c))
    assert isomorphic(lg, checkerboard(r, c))


def test_shuriken_unit_preimage_is_square_octagon_unit():
    pre, _ = inverse_line_graph(shuriken(1, 1))
    assert isomorphic(pre, square_octagon(1, 1))


def test_smallest_checkerboard_is_k4():
    assert isomorphic(checkerboard(0.5, 0.5), complete(4))


def test_complete_is_line_graph_of_star():
    lg, _ = line_graph(star(4))
    assert lg == complete(4)


def test_kagome_degrees_at_most_four():
    g = kagome(5, 5)
    assert max(g.degree(v) for v in g.nodes) == 4


@pytest.mark.parametrize("fn,args", [
    (kagome, (3, 3)), (shuriken, (2, 2)), (checkerboard, (2.5, 2.5)), (complete, (6,)),
    (random_line_graph, (6, 7)),
])
def test_generated_line_graphs_are_recognised(fn, args):
    g = fn(*args)
    pre, _ = inverse_line_graph(g)
    lg, _ = line_graph(pre)
    assert isomorphic(lg, g)


@pytest.mark.parametrize("fn,args", [(heavy_hex, (1, 1)), (heavy_square, (1.5, 1.5)),
                                     (heavy_square_octagon, (1, 1))])
def test_heavy_lattices_are_not_line_graphs(fn, args):
    with pytest.raises(NotALineGraph):
        inverse_line_graph(fn(*args))


@pytest.mark.parametrize("fn,args", [(heavy_hex, (2, 2)), (heavy_square, (2.5, 2.5)),
                                     (heavy_square_octagon, (2, 2))])
def test_heavy_lattices_are_bipartite_subdivisions(fn, args):
    g = fn(*args)
    assert nx.is_bipartite(to_nx(g))
    assert nx.is_connected(to_nx(g))


@pytest.mark.parametrize("fn", [kagome, shuriken])
def test_node_counts_monotone(fn):
    for r in range(1, 5):
        for c in range(1, 5):
            n = len(fn(r, c))
            assert n < len(fn(r + 1, c)) and n < len(fn(r, c + 1))


def test_checkerboard_monotone_in_half_steps():
    sizes = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0]
    counts = [len(checkerboard(s, s)) for s in sizes]
    assert counts == sorted(counts) and len(set(counts)) == len(counts)


@pytest.mark.parametrize("fn,args", [(kagome, (2, 2)), (shuriken, (2, 2)), (checkerboard, (1.5, 1.5))])
def test_generators_emit_positions(fn, args):
    g = fn(*args)
    assert set(g.pos) == set(g.nodes)


def test_generators_are_deterministic():
    assert kagome(3, 2) == kagome(3, 2)
    assert random_line_graph(6, 3) == random_line_graph(6, 3)


@pytest.mark.parametrize("seed", range(20))
def test_random_graph_connected(seed):
    g = random_graph(6, seed)
    assert len(g) == 6 and nx.is_connected(to_nx(g))


def test_random_line_graph_is_line_of_random_graph():
    lg, _ = line_graph(random_graph(6, 7))
    assert lg == random_line_graph(6, 7)


# ---------------------------------------------------------------- patch specs

def test_parse_size():
    assert parse_size("3x3") == (3, 3)
    assert parse_size("2.5x2.5") == (2.5, 2.5)
    assert parse_size("9") == (9,)


def test_patch_spec_builds_every_family():
    for name in FAMILIES:
        size = (1.5, 1.5) if name in ("checkerboard", "square", "heavy_square") else (1, 1)
        assert len(PatchSpec(name, size).build()) > 0
    assert PatchSpec("complete", (5,)).build() == complete(5)
    assert PatchSpec("random_line_graph", (5,), seed=2).build() == random_line_graph(5, 2)


def test_invalid_sizes_rejected():
    with pytest.raises(ValueError):
        kagome(0, 1)
    with pytest.raises(ValueError):
        checkerboard(1.25, 1)
