"""Lattice patches used as virtual (line-graph) and hardware (heavy) graphs.

The virtual lattices are built as line graphs of open-boundary preimages,
so every patch is a line graph by construction:

* kagome(r, c)       = L(hexagonal(r, c)), a honeycomb rhombus of
                       (r+1) x (c+1) two-site cells
* shuriken(r, c)     = L(square_octagon(r, c)), r x c squares whose outward
                       links all exist, ending in a pendant at the boundary
* checkerboard(r, c) = L(square(r, c)), a (2r+1) x (2c+1) site grid whose
                       crossed plaquettes are padded at the boundary

Labels of a line-graph patch follow the sorted edge order of its preimage.
Coordinates are stored in Graph.pos for plotting only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph_core import Graph, heavy_graph, line_graph

_S3 = math.sqrt(3.0)


def _with_line_pos(g: Graph) -> Graph:
    lg, label = line_graph(g)
    for (a, b), i in label.items():
        if a in g.pos and b in g.pos:
            (xa, ya), (xb, yb) = g.pos[a], g.pos[b]
            lg.pos[i] = ((xa + xb) / 2, (ya + yb) / 2)
    return lg


# ---------------------------------------------------------------- preimages

def _check_cells(rows: int, cols: int) -> None:
    if rows < 1 or cols < 1 or rows != int(rows) or cols != int(cols):
        raise ValueError(f"size {rows}x{cols} must be positive integers")


def hexagonal(rows: int, cols: int) -> Graph:
    """Honeycomb rhombus of (rows+1) x (cols+1) cells, sites A and B per cell."""
    _check_cells(rows, cols)
    R, C = rows + 1, cols + 1

    def idx(i: int, j: int, s: int) -> int:
        return 2 * (i * C + j) + s

    g = Graph(range(2 * R * C))
    for i in range(R):
        for j in range(C):
            a, b = idx(i, j, 0), idx(i, j, 1)
            g.add_edge(a, b)
            if i + 1 < R:
                g.add_edge(b, idx(i + 1, j, 0))
            if j + 1 < C:
                g.add_edge(b, idx(i, j + 1, 0))
            x, y = i + 0.5 * j, _S3 / 2 * j
            g.pos[a] = (x, y)
            g.pos[b] = (x + 0.5, y + _S3 / 6)
    return g


def square_octagon(rows: int, cols: int) -> Graph:
    """rows x cols squares joined into octagons; boundary links end in pendants."""
    _check_cells(rows, cols)
    g = Graph()
    ring = {}
    k = 0
    for a in range(cols):
        for b in range(rows):
            for t in range(4):
                ring[(a, b, t)] = k
                k += 1
    off = [(-0.5, 0.0), (0.0, -0.5), (0.5, 0.0), (0.0, 0.5)]
    for (a, b, t), v in ring.items():
        g.add_node(v)
        g.pos[v] = (3 * a + off[t][0], 3 * b + off[t][1])
    for a in range(cols):
        for b in range(rows):
            for t in range(4):
                g.add_edge(ring[(a, b, t)], ring[(a, b, (t + 1) % 4)])
    for a in range(cols):
        for b in range(rows):
            outward = {0: (a - 1, b, 2), 1: (a, b - 1, 3), 2: (a + 1, b, 0), 3: (a, b + 1, 1)}
            for t, other in outward.items():
                v = ring[(a, b, t)]
                if other in ring:
                    if v < ring[other]:
                        g.add_edge(v, ring[other])
                else:
                    g.add_edge(v, k)
                    x, y = g.pos[v]
                    g.pos[k] = (x + 2 * off[t][0], y + 2 * off[t][1])
                    k += 1
    return g


def _half(x: float) -> int:
    n = 2 * x + 1
    if n < 1 or abs(n - round(n)) > 1e-9:
        raise ValueError(f"size {x} is not a positive multiple of 0.5")
    return int(round(n))


def square(rows: float, cols: float) -> Graph:
    """Plaquette graph of the checkerboard: nodes are crossed plaquettes,
    edges are the sites shared by two of them. Boundary plaquettes that hold
    a single site are leaves."""
    nx_, ny = _half(cols), _half(rows)
    plaq = sorted(((px, py) for py in range(-1, ny) for px in range(-1, nx_) if (px + py) % 2 == 0),
                  key=lambda p: (p[1], p[0]))
    idx = {p: i for i, p in enumerate(plaq)}
    g = Graph(range(len(plaq)))
    for p, i in idx.items():
        g.pos[i] = (p[0] + 0.5, p[1] + 0.5)
    for y in range(ny):
        for x in range(nx_):
            a, b = [idx[(px, py)] for py in (y - 1, y) for px in (x - 1, x) if (px + py) % 2 == 0]
            g.add_edge(a, b)
    return g


def star(n: int) -> Graph:
    """K_{1,n} with centre 0."""
    return Graph(range(n + 1), [(0, i) for i in range(1, n + 1)])


# ---------------------------------------------------------------- virtual lattices

def kagome(rows: int, cols: int) -> Graph:
    return _with_line_pos(hexagonal(rows, cols))


def shuriken(rows: int, cols: int) -> Graph:
    return _with_line_pos(square_octagon(rows, cols))


def checkerboard(rows: float, cols: float) -> Graph:
    return _with_line_pos(square(rows, cols))


def complete(n: int) -> Graph:
    g = Graph(range(n))
    for a in range(n):
        for b in range(a + 1, n):
            g.add_edge(a, b)
    return g


def random_graph(n: int, seed: int = 0) -> Graph:
    """Connected G(n, 1/2) sample by rejection; deterministic given seed."""
    if n < 2:
        raise ValueError("need at least two nodes")
    rng = np.random.Generator(np.random.PCG64(seed))
    while True:
        g = Graph(range(n))
        for a in range(n):
            for b in range(a + 1, n):
                if rng.random() < 0.5:
                    g.add_edge(a, b)
        if g.is_connected():
            return g


def random_line_graph(n: int, seed: int = 0) -> Graph:
    return line_graph(random_graph(n, seed))[0]


# ---------------------------------------------------------------- hardware

def heavy_hex(rows: int, cols: int) -> Graph:
    return heavy_graph(hexagonal(rows, cols)).heavy_graph


def heavy_square(rows: float, cols: float) -> Graph:
    return heavy_graph(square(rows, cols)).heavy_graph


def heavy_square_octagon(rows: int, cols: int) -> Graph:
    return heavy_graph(square_octagon(rows, cols)).heavy_graph


# ---------------------------------------------------------------- dispatch

FAMILIES = {
    "kagome": kagome,
    "shuriken": shuriken,
    "checkerboard": checkerboard,
    "hexagonal": hexagonal,
    "square": square,
    "square_octagon": square_octagon,
    "heavy_hex": heavy_hex,
    "heavy_square": heavy_square,
    "heavy_square_octagon": heavy_square_octagon,
}


@dataclass(frozen=True)
class PatchSpec:
    family: str
    size: tuple = (1, 1)
    seed: int = 0

    def build(self) -> Graph:
        f = self.family.lower().replace("-", "_")
        if f == "complete":
            return complete(int(self.size[0]))
        if f in ("random", "random_line_graph"):
            return random_line_graph(int(self.size[0]), self.seed)
        if f not in FAMILIES:
            raise ValueError(f"unknown family {self.family}")
        r, c = self.size if len(self.size) == 2 else (self.size[0], self.size[0])
        if f in ("checkerboard", "square", "heavy_square"):
            return FAMILIES[f](float(r), float(c))
        return FAMILIES[f](int(r), int(c))


def parse_size(text: str) -> tuple:
    """"3x3" -> (3, 3), "2.5x2.5" -> (2.5, 2.5), "9" -> (9,)."""
    parts = text.lower().split("x")
    vals = tuple(float(p) for p in parts)
    return tuple(int(v) if v == int(v) else v for v in vals)
