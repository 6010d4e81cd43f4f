"""Graphs, line graphs, heavy graphs and the machinery that links them.

Node labels are plain integers. Derived graphs (line graph, inverse line
graph, heavy graph) relabel densely to 0..n-1 and return the label maps
they used, so that qubit indices stay dense.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

HEAVY = "heavy"
MEDIATOR = "mediator"
PLAIN = "plain"


class GraphError(Exception):
    pass


class NotALineGraph(GraphError):
    def __init__(self, msg: str = "coupling graph is not a line graph"):
        super().__init__(msg)


class MalformedPartition(GraphError):
    pass


class NoEmbedding(GraphError):
    pass


class NoPerfectMatching(GraphError):
    pass


def pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


class Graph:
    """Undirected simple graph on integer labels with optional roles and edge colors."""

    def __init__(self, nodes=(), edges=(), roles: dict[int, str] | None = None):
        self.adj: dict[int, set[int]] = {}
        self.roles: dict[int, str] = {}
        self.colors: dict[tuple[int, int], int] = {}
        self.pos: dict[int, tuple[float, float]] = {}
        for v in nodes:
            self.add_node(v)
        for a, b in edges:
            self.add_edge(a, b)
        if roles:
            self.roles.update(roles)

    def add_node(self, v: int) -> None:
        self.adj.setdefault(v, set())

    def add_edge(self, a: int, b: int) -> None:
        if a == b:
            raise GraphError(f"self-loop on {a}")
        self.adj.setdefault(a, set()).add(b)
        self.adj.setdefault(b, set()).add(a)

    def remove_node(self, v: int) -> None:
        for w in self.adj.pop(v):
            self.adj[w].discard(v)
        self.roles.pop(v, None)
        self.colors = {e: c for e, c in self.colors.items() if v not in e}

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adj.get(a, ())

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    @property
    def nodes(self) -> list[int]:
        return sorted(self.adj)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(pair(a, b) for a in self.adj for b in self.adj[a] if a < b)

    def __len__(self) -> int:
        return len(self.adj)

    def __contains__(self, v) -> bool:
        return v in self.adj

    def number_of_edges(self) -> int:
        return sum(len(s) for s in self.adj.values()) // 2

    def copy(self) -> "Graph":
        g = Graph(self.nodes, self.edges, self.roles)
        g.colors = dict(self.colors)
        g.pos = dict(self.pos)
        return g

    def subgraph(self, nodes) -> "Graph":
        keep = set(nodes)
        g = Graph(sorted(keep))
        for a, b in self.edges:
            if a in keep and b in keep:
                g.add_edge(a, b)
        g.roles = {v: r for v, r in self.roles.items() if v in keep}
        return g

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in self.nodes:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def relabel(self, mapping: dict[int, int]) -> "Graph":
        g = Graph([mapping[v] for v in self.nodes],
                  [(mapping[a], mapping[b]) for a, b in self.edges])
        g.roles = {mapping[v]: r for v, r in self.roles.items()}
        g.colors = {pair(mapping[a], mapping[b]): c for (a, b), c in self.colors.items()}
        g.pos = {mapping[v]: p for v, p in self.pos.items()}
        return g

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.nodes == other.nodes and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, m={self.number_of_edges()})"

    # -- file formats --

    def to_json(self) -> dict:
        d: dict = {"nodes": self.nodes, "edges": [list(e) for e in self.edges]}
        if self.roles:
            d["roles"] = {str(v): r for v, r in sorted(self.roles.items())}
        if self.colors:
            d["colors"] = {f"{a},{b}": c for (a, b), c in sorted(self.colors.items())}
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Graph":
        g = cls(d.get("nodes", ()), [tuple(e) for e in d["edges"]])
        g.roles = {int(k): v for k, v in d.get("roles", {}).items()}
        for k, c in d.get("colors", {}).items():
            a, b = (int(x) for x in k.split(","))
            g.colors[pair(a, b)] = int(c)
        return g

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def parse(cls, text: str) -> "Graph":
        """Read JSON, or the edge-list format: one "i j [color]" per line, '#' comments."""
        s = text.lstrip()
        if s.startswith("{"):
            return cls.from_json(json.loads(s))
        g = cls()
        for line in text.splitlines():
            line = line.split("#", 1)[0].split()
            if not line:
                continue
            if len(line) == 1:
                g.add_node(int(line[0]))
                continue
            a, b = int(line[0]), int(line[1])
            g.add_edge(a, b)
            if len(line) > 2:
                g.colors[pair(a, b)] = int(line[2])
        return g


# ---------------------------------------------------------------- line graphs

def line_graph(g: Graph) -> tuple[Graph, dict[tuple[int, int], int]]:
    """L(g) with nodes 0..|E|-1 numbered in sorted edge order; returns (L, edge -> node)."""
    label = {e: i for i, e in enumerate(g.edges)}
    lg = Graph(range(len(label)))
    for v in g.nodes:
        inc = [label[pair(v, w)] for w in g.neighbors(v)]
        for a, b in combinations(inc, 2):
            lg.add_edge(a, b)
    return lg, label


@dataclass
class KrauszPartition:
    cliques: list[frozenset]
    singleton_cells: list[frozenset] = field(default_factory=list)

    @property
    def cells(self) -> list[frozenset]:
        return self.cliques + self.singleton_cells


def _clique_splits(g: Graph, nb: list[int]):
    """All ways to split nb into at most two cliques, fewest cells first."""
    # two neighbours that are not adjacent must land in different cells
    comp: dict[int, int] = {}
    side: dict[int, int] = {}
    groups = []
    for s in nb:
        if s in comp:
            continue
        members = [[], []]
        comp[s], side[s] = len(groups), 0
        stack = [s]
        while stack:
            v = stack.pop()
            members[side[v]].append(v)
            for w in nb:
                if w == v or g.has_edge(v, w):
                    continue
                if w not in comp:
                    comp[w], side[w] = comp[v], 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return
        groups.append(members)
    k = len(groups)
    opts = []
    for mask in range(1 << max(k - 1, 0)):
        a, b = [], []
        for gi, (m0, m1) in enumerate(groups):
            flip = gi > 0 and (mask >> (gi - 1)) & 1
            a += m1 if flip else m0
            b += m0 if flip else m1
        opts.append((sorted(a), sorted(b)))
    opts.sort(key=lambda ab: (len(ab[1]) > 0, len(ab[1]), ab[1]))
    for a, b in opts:
        if all(g.has_edge(x, y) for x, y in combinations(a, 2)) and \
                all(g.has_edge(x, y) for x, y in combinations(b, 2)):
            yield a, b


def _krausz_component(g: Graph, comp: list[int]) -> list[frozenset] | None:
    if len(comp) == 1:
        return []
    # start where the neighbourhood admits the fewest splits
    start = min(comp, key=lambda v: (g.degree(v), v))
    for a, b in _clique_splits(g, g.neighbors(start)):
        cells = _propagate(g, comp, start, [x for x in (a, b) if x])
        if cells is not None:
            return cells
    return None


def _propagate(g: Graph, comp: list[int], start: int, first: list[list[int]]):
    covered: set[tuple[int, int]] = set()
    ncells = {v: 0 for v in comp}
    cells: list[frozenset] = []

    def add(cell) -> bool:
        for x, y in combinations(sorted(cell), 2):
            e = (x, y)
            if e in covered or not g.has_edge(x, y):
                return False
            covered.add(e)
        for v in cell:
            ncells[v] += 1
            if ncells[v] > 2:
                return False
        cells.append(frozenset(cell))
        return True

    for part in first:
        if not add([start] + part):
            return None
    queue = deque(g.neighbors(start))
    seen = {start}
    while queue:
        v = queue.popleft()
        if v in seen:
            continue
        seen.add(v)
        rest = [w for w in g.neighbors(v) if pair(v, w) not in covered]
        if rest:
            # v already sits in one cell, so its second cell is forced
            if ncells[v] != 1 or not add([v] + rest):
                return None
        queue.extend(w for w in g.neighbors(v) if w not in seen)
    if len(covered) != sum(g.degree(v) for v in comp) // 2:
        return None
    return cells


def krausz_partition(gp: Graph) -> KrauszPartition:
    """Partition the edges of gp into cliques, each node in at most two cells.

    Components are handled independently. The first node of a component
    branches over the ways its neighbourhood splits into two cliques; every
    later node is forced. For a triangle this returns the single clique, so
    the preimage of K3 is the claw.
    """
    cliques: list[frozenset] = []
    for comp in gp.components():
        cells = _krausz_component(gp, comp)
        if cells is None:
            raise NotALineGraph()
        cliques += cells
    count = {v: 0 for v in gp.nodes}
    for c in cliques:
        for v in c:
            count[v] += 1
    singles = []
    for v in gp.nodes:
        singles += [frozenset([v])] * (2 - count[v])
    return KrauszPartition(cliques, singles)


def inverse_line_graph(gp: Graph) -> tuple[Graph, KrauszPartition]:
    """Return (G, partition) with L(G) equal to gp under the identity on labels.

    Nodes of G index the cells of the partition (cliques first, then
    singletons); node v of gp becomes the edge joining its two cells.
    Raises NotALineGraph.
    """
    part = krausz_partition(gp)
    cells = part.cells
    where: dict[int, list[int]] = {v: [] for v in gp.nodes}
    for ci, c in enumerate(cells):
        for v in c:
            where[v].append(ci)
    g = Graph(range(len(cells)))
    for v in gp.nodes:
        a, b = where[v]
        g.add_edge(a, b)
    return g, part


def edge_of(g: Graph, part: KrauszPartition) -> dict[int, tuple[int, int]]:
    """Map each gp node to its G edge for a graph built by inverse_line_graph."""
    where: dict[int, list[int]] = {}
    for ci, c in enumerate(part.cells):
        for v in c:
            where.setdefault(v, []).append(ci)
    return {v: pair(*cs) for v, cs in where.items()}


# ---------------------------------------------------------------- heavy graphs

@dataclass
class HeavyLabeling:
    """heavy(G) with heavy nodes labelled like L(G) and the mediator of each L(G) edge.

    mediator_of maps a sorted heavy pair to its mediator, or to None when the
    pair is directly coupled (only after lone-leaf removal).
    """
    heavy_graph: Graph
    mediator_of: dict[tuple[int, int], int | None]
    heavy_nodes: list[int]
    lone_leaves: dict[int, int] = field(default_factory=dict)

    @property
    def mediators(self) -> list[int]:
        return [v for v in self.heavy_graph.nodes if self.heavy_graph.roles.get(v) == MEDIATOR]


def _build_heavy(cells: list[frozenset], heavy: list[int], prune: bool = True) -> HeavyLabeling:
    """Heavy graph from cells (sets of heavy labels). Cells of size one are
    leaf mediators; they mediate nothing and are dropped when prune is set."""
    n0 = max(heavy, default=-1) + 1
    hg = Graph(heavy)
    for v in heavy:
        hg.roles[v] = HEAVY
    med: dict[tuple[int, int], int | None] = {}
    order = sorted(range(len(cells)), key=lambda i: (len(cells[i]) == 1, sorted(cells[i])))
    nxt = n0
    for ci in order:
        c = cells[ci]
        if prune and len(c) == 1:
            continue
        m = nxt
        nxt += 1
        hg.add_node(m)
        hg.roles[m] = MEDIATOR
        for v in c:
            hg.add_edge(m, v)
        for a, b in combinations(sorted(c), 2):
            med[(a, b)] = m
    return HeavyLabeling(hg, med, sorted(heavy))


def heavy_graph(g: Graph, prune: bool = True) -> HeavyLabeling:
    """heavy(g): one heavy node per edge of g, labelled as in line_graph(g).

    Original nodes become mediators labelled |E| upwards. With prune set,
    degree-one mediators (leaves of g) are dropped since they mediate no
    gate; the star K_{1,n} then becomes a star with n heavy leaves.
    """
    _, label = line_graph(g)
    cells = []
    for v in g.nodes:
        cells.append(frozenset(label[pair(v, w)] for w in g.neighbors(v)))
    return _build_heavy([c for c in cells if c], list(range(len(label))), prune)


def congruent_heavy_labels(g: Graph, part: KrauszPartition) -> HeavyLabeling:
    """Heavy graph whose heavy labels are the nodes of the original line graph.

    For each edge (a, b) of g with both cells non-trivial, c = a & b is the
    shared line-graph node and gets edges to both; singleton cells are leaf
    mediators and only contribute the heavy node itself.
    """
    cells = part.cells
    heavy = set()
    for a, b in g.edges:
        ca, cb = cells[a], cells[b]
        common = ca & cb
        if len(common) != 1:
            raise MalformedPartition(f"cells {a} and {b} share {len(common)} nodes")
        heavy |= common
    for c in cells:
        heavy |= c
    return _build_heavy(cells, sorted(heavy))


def lone_leaves(h: HeavyLabeling) -> dict[int, int]:
    """Lone leaves of a pruned heavy graph: heavy leaf -> its mediator, where
    that mediator has no other degree-one neighbour."""
    hg = h.heavy_graph
    out = {}
    for m in h.mediators:
        leaves = [v for v in hg.adj[m] if hg.degree(v) == 1 and hg.roles.get(v) == HEAVY]
        if len(leaves) == 1 and hg.degree(m) >= 2:
            out[leaves[0]] = m
    return out


def remove_lone_leaf_mediators(h: HeavyLabeling) -> HeavyLabeling:
    """Each lone leaf p takes the place of its mediator m: pairs with p become
    direct couplings and p mediates the remaining pairs of m's clique.
    Mediator labels are compacted afterwards."""
    ll = lone_leaves(h)
    if not ll:
        return h
    hg = h.heavy_graph.copy()
    by_med = {m: p for p, m in ll.items()}
    med: dict[tuple[int, int], int | None] = {}
    for (a, b), m in h.mediator_of.items():
        if m in by_med:
            p = by_med[m]
            med[(a, b)] = None if p in (a, b) else p
        else:
            med[(a, b)] = m
    for m, p in by_med.items():
        nb = [v for v in hg.adj[m] if v != p]
        hg.remove_node(m)
        for v in nb:
            hg.add_edge(p, v)
    heavy = set(h.heavy_nodes)
    rest = sorted(v for v in hg.nodes if v not in heavy)
    base = max(heavy, default=-1) + 1
    ren = {v: v for v in heavy}
    ren.update({m: base + i for i, m in enumerate(rest)})
    hg = hg.relabel(ren)
    med = {e: (None if m is None else ren[m]) for e, m in med.items()}
    return HeavyLabeling(hg, med, h.heavy_nodes, dict(ll))


# ---------------------------------------------------------------- VF2

def vf2_embed(pattern: Graph, host: Graph) -> dict[int, int]:
    """Injective map realising pattern as a (not necessarily induced) subgraph
    of host. Pattern nodes are matched in connectivity-preserving order from
    the lowest label, candidates in ascending label order. Raises NoEmbedding."""
    if len(pattern) > len(host):
        raise NoEmbedding()
    order: list[int] = []
    seen: set[int] = set()
    for s in pattern.nodes:
        if s in seen:
            continue
        frontier = [s]
        seen.add(s)
        while frontier:
            v = min(frontier)
            frontier.remove(v)
            order.append(v)
            for w in pattern.adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
    pos = {v: i for i, v in enumerate(order)}
    back = [[w for w in pattern.adj[v] if pos[w] < pos[v]] for v in order]
    hnodes = host.nodes
    core: dict[int, int] = {}
    used: set[int] = set()

    def feasible(v: int, t: int, i: int) -> bool:
        if host.degree(t) < pattern.degree(v):
            return False
        return all(host.has_edge(core[w], t) for w in back[i])

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        if back[i]:
            anchor = core[back[i][0]]
            cands = sorted(host.adj[anchor])
        else:
            cands = hnodes
        for t in cands:
            if t in used or not feasible(v, t, i):
                continue
            core[v] = t
            used.add(t)
            if rec(i + 1):
                return True
            del core[v]
            used.discard(t)
        return False

    if not rec(0):
        raise NoEmbedding()
    return dict(core)


# ---------------------------------------------------------------- edge coloring

def _augment(g: Graph, mate: dict[int, int]) -> bool:
    """One BFS augmenting path from each free node, no blossom shrinking."""
    improved = False
    for root in g.nodes:
        if root in mate or not g.adj[root]:
            continue
        parent = {root: None}
        queue = deque([root])
        found = None
        while queue and found is None:
            u = queue.popleft()
            for w in sorted(g.adj[u]):
                if w in parent or w == mate.get(u):
                    continue
                if w not in mate:
                    parent[w] = u
                    found = w
                    break
                x = mate[w]
                if x in parent:
                    continue
                parent[w] = u
                parent[x] = w
                queue.append(x)
        if found is None:
            continue
        w = found
        while w is not None:
            u = parent[w]
            nxt = mate.get(u)
            mate[u], mate[w] = w, u
            w = nxt if u != root else None
        improved = True
    return improved


def perfect_matching(g: Graph) -> list[tuple[int, int]]:
    """Greedy maximal matching in sorted edge order, then augmenting paths.

    Without blossoms this can miss a perfect matching on non-bipartite
    graphs; the result is simply the best matching found.
    """
    mate: dict[int, int] = {}
    for a, b in g.edges:
        if a not in mate and b not in mate:
            mate[a], mate[b] = b, a
    while _augment(g, mate):
        pass
    return sorted({pair(a, b) for a, b in mate.items()})


@dataclass
class EdgeColoring:
    colors: dict[tuple[int, int], int]
    perfect: bool
    num_colors: int
    class_one: bool

    def layers(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.num_colors)]
        for e, c in sorted(self.colors.items()):
            out[c].append(e)
        return out


def edge_coloring(g: Graph, require_perfect: bool = False) -> EdgeColoring:
    """Proper edge coloring; color 0 is the matching from perfect_matching.

    The remaining edges get the lowest free color >= 1 in sorted order.
    The result is annotated on a copy's colors, not on g.
    """
    m = perfect_matching(g)
    perfect = 2 * len(m) == len(g)
    if require_perfect and not perfect:
        raise NoPerfectMatching(f"matching covers {2 * len(m)} of {len(g)} nodes")
    col = {e: 0 for e in m}
    at: dict[int, set[int]] = {v: set() for v in g.nodes}
    for a, b in m:
        at[a].add(0)
        at[b].add(0)
    for a, b in g.edges:
        if (a, b) in col:
            continue
        c = 1
        while c in at[a] or c in at[b]:
            c += 1
        col[(a, b)] = c
        at[a].add(c)
        at[b].add(c)
    k = max(col.values()) + 1 if col else 0
    maxdeg = max((g.degree(v) for v in g.nodes), default=0)
    return EdgeColoring(col, perfect, k, k == maxdeg)


def colored(g: Graph, ec: EdgeColoring) -> Graph:
    h = g.copy()
    h.colors = dict(ec.colors)
    return h
