"""Line-graph routing onto heavy(G), SWAP cancellation and a naive baseline.

A two-qubit gate U(i, j) whose qubits are not coupled directly becomes
SWAP(m, i) U(m, j) SWAP(i, m) with m the mediator shared by i and j
(side FIRST), or SWAP(m, j) U(i, m) SWAP(j, m) (side SECOND). Each such
gate restores qubit positions, so logical qubit q always lives on heavy
node q between gates. Adjacent identical SWAPs then cancel.
"""
from __future__ import annotations

import enum
import time
from collections import deque
from dataclasses import dataclass, field

from .circuit_ir import Circuit, Gate, GateArityError, depth
from .graph_core import (Graph, HeavyLabeling, congruent_heavy_labels, inverse_line_graph,
                         pair, remove_lone_leaf_mediators)


class Side(enum.Enum):
    FIRST = "first"
    SECOND = "second"
    LOOKAHEAD = "lookahead"  # hook for look-ahead side selection, not implemented


class TargetTooSmall(Exception):
    pass


@dataclass
class MetricsRecord:
    opt_depth: int = 0
    n_swap: int = 0
    n_qubit: int = 0
    wall_time: float = 0.0
    lam: int = 0
    total_gates: int = 0
    n_boundary_swap: int = 0

    def to_json(self) -> dict:
        return {"depth": self.opt_depth, "n_swap": self.n_swap, "n_qubit": self.n_qubit,
                "wall_time_s": round(self.wall_time, 2), "lambda": self.lam,
                "total_gates": self.total_gates, "n_boundary_swap": self.n_boundary_swap}


@dataclass
class RoutingResult:
    """Routed circuit with its layouts.

    base_layout is where each logical qubit lives between gates.
    initial_layout is where it starts once leading SWAPs are elided, and
    final_permutation[x] is where the content that belongs on x ends up
    once trailing SWAPs are elided. Both are identities without elision.
    """
    circuit: Circuit
    initial_layout: dict[int, int]
    final_permutation: dict[int, int]
    metrics: MetricsRecord
    base_layout: dict[int, int]
    labeling: HeavyLabeling | None = None
    source: Circuit | None = None
    options: dict = field(default_factory=dict)

    def final_layout(self) -> dict[int, int]:
        return {q: self.final_permutation.get(x, x) for q, x in self.base_layout.items()}

    def to_json(self) -> dict:
        return {"circuit": self.circuit.to_json(),
                "initial_layout": {str(k): v for k, v in sorted(self.initial_layout.items())},
                "final_permutation": {str(k): v for k, v in sorted(self.final_permutation.items())},
                "base_layout": {str(k): v for k, v in sorted(self.base_layout.items())},
                "metrics": self.metrics.to_json()}

    @classmethod
    def from_json(cls, d: dict) -> "RoutingResult":
        ints = lambda m: {int(k): int(v) for k, v in m.items()}
        met = d.get("metrics", {})
        rec = MetricsRecord(met.get("depth", 0), met.get("n_swap", 0), met.get("n_qubit", 0),
                            met.get("wall_time_s", 0.0), met.get("lambda", 0),
                            met.get("total_gates", 0), met.get("n_boundary_swap", 0))
        init = ints(d["initial_layout"])
        return cls(Circuit.from_json(d["circuit"]), init, ints(d["final_permutation"]), rec,
                   ints(d.get("base_layout", init)))


# ---------------------------------------------------------------- cancellation

class _Emitter:
    """Appends gates while cancelling a SWAP against an identical SWAP that is
    still the latest gate on both of its qubits."""

    def __init__(self):
        self.gates: list[Gate] = []
        self.alive: list[bool] = []
        self.last: dict[int, list[int]] = {}

    def push(self, g: Gate) -> None:
        if g.kind == "SWAP":
            a, b = g.qubits
            sa, sb = self.last.get(a), self.last.get(b)
            if sa and sb and sa[-1] == sb[-1]:
                j = sa[-1]
                h = self.gates[j]
                if h.kind == "SWAP":
                    sa.pop()
                    sb.pop()
                    self.alive[j] = False
                    return
        i = len(self.gates)
        self.gates.append(g)
        self.alive.append(True)
        for q in g.qubits:
            self.last.setdefault(q, []).append(i)

    def result(self) -> list[Gate]:
        return [g for g, ok in zip(self.gates, self.alive) if ok]


def cancel_swaps(c: Circuit) -> Circuit:
    """Remove SWAP pairs on the same qubits with nothing in between on either
    qubit, repeating until none are left."""
    em = _Emitter()
    for g in c.gates:
        em.push(g)
    return Circuit(c.num_qubits, em.result(), list(c.params))


# ---------------------------------------------------------------- boundary SWAPs

def _apply_swap(m: dict[int, int], inv: dict[int, int], a: int, b: int) -> None:
    xa, xb = inv.get(a, a), inv.get(b, b)
    m[xa], m[xb] = b, a
    inv[a], inv[b] = xb, xa


def elide_boundary_swaps(c: Circuit) -> tuple[Circuit, dict[int, int], dict[int, int], int]:
    """Drop SWAPs that precede or follow every other gate on their qubits.

    Returns (circuit, layout, permutation, count): layout[x] is where the
    content meant for x starts, permutation[x] where the content that would
    end on x actually ends.
    """
    gates = list(c.gates)
    keep = [True] * len(gates)
    phys = range(c.num_qubits)
    start = {x: x for x in phys}
    inv = dict(start)
    touched: set[int] = set()
    for i, g in enumerate(gates):
        if g.kind == "SWAP" and not (set(g.qubits) & touched):
            keep[i] = False
            _apply_swap(start, inv, *g.qubits)
        else:
            touched.update(g.qubits)
    end = {x: x for x in phys}
    inv = dict(end)
    touched = set()
    for i in range(len(gates) - 1, -1, -1):
        g = gates[i]
        if not keep[i]:
            continue
        if g.kind == "SWAP" and not (set(g.qubits) & touched):
            keep[i] = False
            _apply_swap(end, inv, *g.qubits)
        else:
            touched.update(g.qubits)
    out = Circuit(c.num_qubits, [g for g, k in zip(gates, keep) if k], list(c.params))
    return out, start, end, keep.count(False)


# ---------------------------------------------------------------- line-graph routing

def full_coupling_graph(c: Circuit) -> Graph:
    """Coupling graph that also keeps idle qubits as isolated nodes."""
    g = Graph(range(c.num_qubits))
    for gate in c.gates:
        if gate.arity > 2:
            raise GateArityError(f"{gate.kind} acts on {gate.arity} qubits")
        if gate.arity == 2:
            g.add_edge(*gate.qubits)
    return g


def heavy_labeling(c: Circuit, lone_leaf: bool = True, virtual: Graph | None = None) -> HeavyLabeling:
    """coupling graph -> inverse line graph -> congruent heavy labels.

    With virtual given, that graph is recognised instead of the coupling
    graph; every two-qubit gate must act along one of its edges. This is
    how a sparse circuit drawn on a known lattice is routed.
    """
    cg = full_coupling_graph(c)
    if virtual is not None:
        for a, b in cg.edges:
            if not virtual.has_edge(a, b):
                raise ValueError(f"gate on ({a}, {b}) is not an edge of the virtual graph")
        cg = virtual.copy()
        for q in range(c.num_qubits):
            cg.add_node(q)
    g, part = inverse_line_graph(cg)
    h = congruent_heavy_labels(g, part)
    return remove_lone_leaf_mediators(h) if lone_leaf else h


def _rewrite(c: Circuit, h: HeavyLabeling, side: Side) -> Circuit:
    if side is Side.LOOKAHEAD:
        raise NotImplementedError("look-ahead side selection is not implemented")
    nq = max(h.heavy_graph.nodes, default=-1) + 1
    med = h.mediator_of
    first = side is Side.FIRST
    em = _Emitter()
    push = em.push
    for g in c.gates:
        if g.arity == 1:
            push(g)
            continue
        i, j = g.qubits
        m = med.get(pair(i, j))
        if m is None:
            push(g)
        elif first:
            push(Gate("SWAP", (m, i)))
            push(Gate(g.kind, (m, j), g.param))
            push(Gate("SWAP", (i, m)))
        else:
            push(Gate("SWAP", (m, j)))
            push(Gate(g.kind, (i, m), g.param))
            push(Gate("SWAP", (j, m)))
    return Circuit(nq, em.result(), list(c.params))


def _finish(c: Circuit, h: HeavyLabeling, routed: Circuit, side: Side, lone_leaf: bool,
            elide: bool, t0: float) -> RoutingResult:
    base = {q: q for q in range(c.num_qubits)}
    init = dict(base)
    perm = {x: x for x in range(routed.num_qubits)}
    nb = 0
    if elide:
        routed, start, perm, nb = elide_boundary_swaps(routed)
        init = {q: start[x] for q, x in base.items()}
    wall = time.perf_counter() - t0
    r = RoutingResult(routed, init, perm, MetricsRecord(), base, h, c,
                      {"side": side.value, "lone_leaf": lone_leaf, "elide_boundary": elide})
    r.metrics = route_metrics(r, wall)
    r.metrics.n_boundary_swap = nb
    return r


def line_graph_route(c: Circuit, side: Side = Side.FIRST, lone_leaf: bool = True,
                     elide_boundary: bool = False, virtual: Graph | None = None) -> RoutingResult:
    """Route c onto heavy(G) where G is the inverse line graph of its coupling graph.

    Raises NotALineGraph when the coupling graph has no Krausz partition.
    With elide_boundary the SWAPs at either end are folded into
    initial_layout and final_permutation and left out of n_swap.
    """
    t0 = time.perf_counter()
    h = heavy_labeling(c, lone_leaf, virtual)
    routed = _rewrite(c, h, side)
    return _finish(c, h, routed, side, lone_leaf, elide_boundary, t0)


def remove_lone_leaves(r: RoutingResult) -> RoutingResult:
    """Re-route r's source with every lone leaf standing in for its mediator."""
    if r.labeling is None or r.source is None:
        raise ValueError("result does not carry its labeling")
    t0 = time.perf_counter()
    h = remove_lone_leaf_mediators(r.labeling)
    if h is r.labeling:
        return r
    side = Side(r.options.get("side", "first"))
    routed = _rewrite(r.source, h, side)
    return _finish(r.source, h, routed, side, True, r.options.get("elide_boundary", False), t0)


def route_metrics(r: RoutingResult, wall_time: float | None = None) -> MetricsRecord:
    c = r.circuit
    src = r.source
    return MetricsRecord(
        opt_depth=depth(c),
        n_swap=c.count("SWAP"),
        n_qubit=len(c.active_qubits()),
        wall_time=r.metrics.wall_time if wall_time is None else wall_time,
        lam=src.lam if src is not None else 0,
        total_gates=src.total if src is not None else 0,
        n_boundary_swap=r.metrics.n_boundary_swap,
    )


# ---------------------------------------------------------------- baseline

def _bfs_path(g: Graph, s: int, t: int) -> list[int]:
    prev = {s: None}
    q = deque([s])
    while q:
        v = q.popleft()
        if v == t:
            break
        for w in g.neighbors(v):
            if w not in prev:
                prev[w] = v
                q.append(w)
    if t not in prev:
        raise TargetTooSmall(f"no path from {s} to {t}")
    path = [t]
    while path[-1] != s:
        path.append(prev[path[-1]])
    return path[::-1]


def naive_route(c: Circuit, target: Graph) -> RoutingResult:
    """Walk the first operand along a BFS shortest path next to the second,
    apply the gate, and walk it back. Logical q sits on the q-th target node."""
    t0 = time.perf_counter()
    if len(target) < c.num_qubits:
        raise TargetTooSmall(f"{c.num_qubits} qubits do not fit on {len(target)} nodes")
    tn = target.nodes
    layout = {q: tn[q] for q in range(c.num_qubits)}
    out = Circuit(max(tn) + 1, [], list(c.params))
    for g in c.gates:
        if g.arity == 1:
            out.gates.append(g.on(layout[g.qubits[0]]))
            continue
        a, b = layout[g.qubits[0]], layout[g.qubits[1]]
        path = _bfs_path(target, a, b)
        hops = [(path[k], path[k + 1]) for k in range(len(path) - 2)]
        for x, y in hops:
            out.gates.append(Gate("SWAP", (x, y)))
        out.gates.append(g.on(path[-2], b))
        for x, y in reversed(hops):
            out.gates.append(Gate("SWAP", (x, y)))
    perm = {x: x for x in range(out.num_qubits)}
    r = RoutingResult(out, dict(layout), perm, MetricsRecord(), dict(layout), None, c,
                      {"method": "naive"})
    r.metrics = route_metrics(r, time.perf_counter() - t0)
    return r
