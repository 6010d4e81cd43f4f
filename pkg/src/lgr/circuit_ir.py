"""Circuit IR plus the random and HEIS circuit builders."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .graph_core import EdgeColoring, Graph, pair

ONE_QUBIT = ("H", "S", "T", "X", "Z")
TWO_QUBIT = ("CNOT", "SWAP", "SINGLET", "HEIS")
KINDS = ONE_QUBIT + TWO_QUBIT


class CircuitError(Exception):
    pass


class GateArityError(CircuitError):
    pass


class EmptyGraph(CircuitError):
    pass


class NotPerfectMatching(CircuitError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    param: float | str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GateArityError(f"unsupported gate {self.kind}")
        want = 1 if self.kind in ONE_QUBIT else 2
        if len(self.qubits) != want:
            raise GateArityError(f"{self.kind} takes {want} qubit(s), got {len(self.qubits)}")
        if want == 2 and self.qubits[0] == self.qubits[1]:
            raise GateArityError(f"{self.kind} on repeated qubit {self.qubits[0]}")

    @property
    def arity(self) -> int:
        return len(self.qubits)

    def on(self, *qubits: int) -> "Gate":
        return Gate(self.kind, tuple(qubits), self.param)

    def __repr__(self) -> str:
        p = "" if self.param is None else f"({self.param})"
        return f"{self.kind}{p}{list(self.qubits)}"


@dataclass
class Circuit:
    num_qubits: int
    gates: list[Gate] = field(default_factory=list)
    params: list[str] = field(default_factory=list)

    def append(self, kind: str, *qubits: int, param=None) -> None:
        g = Gate(kind, tuple(qubits), param)
        if max(qubits) >= self.num_qubits:
            raise CircuitError(f"qubit {max(qubits)} outside register of {self.num_qubits}")
        self.gates.append(g)

    def __len__(self) -> int:
        return len(self.gates)

    @property
    def lam(self) -> int:
        """Two-qubit gate count."""
        return sum(1 for g in self.gates if g.arity == 2)

    @property
    def total(self) -> int:
        return len(self.gates)

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)

    def active_qubits(self) -> set[int]:
        return {q for g in self.gates for q in g.qubits}

    def to_json(self) -> dict:
        out = []
        for g in self.gates:
            d: dict = {"k": g.kind, "q": list(g.qubits)}
            if isinstance(g.param, str):
                d["name"] = g.param
            elif g.param is not None:
                d["p"] = g.param
            out.append(d)
        return {"n": self.num_qubits, "gates": out}

    @classmethod
    def from_json(cls, d: dict) -> "Circuit":
        c = cls(int(d["n"]))
        for g in d["gates"]:
            param = g.get("name", g.get("p"))
            c.append(g["k"], *g["q"], param=param)
            if isinstance(param, str) and param not in c.params:
                c.params.append(param)
        return c

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> "Circuit":
        return cls.from_json(json.loads(text))


def coupling_graph(c: Circuit) -> Graph:
    g = Graph()
    for gate in c.gates:
        for q in gate.qubits:
            g.add_node(q)
        if gate.arity == 2:
            g.add_edge(*gate.qubits)
    return g


def depth(c: Circuit) -> int:
    """Longest chain of gates sharing qubits, every gate one layer."""
    level: dict[int, int] = {}
    d = 0
    for g in c.gates:
        t = 1 + max(level.get(q, 0) for q in g.qubits)
        for q in g.qubits:
            level[q] = t
        d = max(d, t)
    return d


def rng_for(seed: int) -> np.random.Generator:
    """PCG64 stream; all builders draw from this so fixtures are portable."""
    return np.random.Generator(np.random.PCG64(seed))


def random_circuit(g: Graph, n_gates: int, seed: int = 0) -> Circuit:
    """CNOT on a uniform edge with probability 2/5, otherwise H, S or T on a uniform node.

    Control is the smaller label. Each gate consumes one uniform and two integer draws.
    """
    nodes, edges = g.nodes, g.edges
    if not nodes:
        raise EmptyGraph("cannot draw gates on an empty graph")
    rng = rng_for(seed)
    c = Circuit(max(nodes) + 1)
    u = rng.random(n_gates)
    pick = rng.integers(0, 1 << 62, size=(n_gates, 2))
    for i in range(n_gates):
        if u[i] < 0.4 and edges:
            a, b = edges[pick[i, 0] % len(edges)]
            c.gates.append(Gate("CNOT", (a, b)))
        else:
            kind = ("H", "S", "T")[pick[i, 0] % 3]
            c.gates.append(Gate(kind, (nodes[pick[i, 1] % len(nodes)],)))
    return c


def heis_circuit(col: Graph | EdgeColoring, p: int, alpha: float | None = None,
                 num_qubits: int | None = None) -> Circuit:
    """Singlets on the color-0 matching, then p cycles of HEIS over colors 0..k-1.

    Edges inside a color run in ascending pair order. With alpha=None each
    HEIS gets its own parameter al_<n>; otherwise every gate uses alpha.
    Raises NotPerfectMatching if color 0 misses a node.
    """
    if isinstance(col, EdgeColoring):
        colors = col.colors
        nodes = sorted({q for e in colors for q in e})
    else:
        colors = col.colors
        nodes = col.nodes
    if not colors:
        raise NotPerfectMatching("graph carries no edge colors")
    k = max(colors.values()) + 1
    layers: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for e, ci in colors.items():
        layers[ci].append(pair(*e))
    for layer in layers:
        layer.sort()
    matched = {q for e in layers[0] for q in e}
    if matched != set(nodes):
        raise NotPerfectMatching(f"color 0 covers {len(matched)} of {len(nodes)} nodes")
    c = Circuit(num_qubits if num_qubits is not None else max(nodes) + 1)
    for a, b in layers[0]:
        c.gates.append(Gate("SINGLET", (a, b)))
    n = 0
    for _ in range(p):
        for layer in layers:
            for a, b in layer:
                if alpha is None:
                    name = f"al_{n}"
                    c.params.append(name)
                    c.gates.append(Gate("HEIS", (a, b), name))
                else:
                    c.gates.append(Gate("HEIS", (a, b), float(alpha)))
                n += 1
    return c


def trotter_alpha(t: float, r: int) -> float:
    """Fixed HEIS angle for r Trotter steps of total time t."""
    return 4.0 * t / r

