import random

import numpy as np
import pytest

from lgr.circuit_ir import (Circuit, EmptyGraph, Gate, GateArityError, NotPerfectMatching, coupling_graph,
                            depth, heis_circuit, random_circuit, rng_for, trotter_alpha)
from lgr.graph_core import Graph, colored, edge_coloring
from lgr.lattices import checkerboard, complete, kagome, random_line_graph, shuriken
from oracles import dag_depth


def heis(g, p, alpha=None):
    return heis_circuit(colored(g, edge_coloring(g, require_perfect=True)), p, alpha)


# ---------------------------------------------------------------- gates and circuits

@pytest.mark.parametrize("kind,qubits", [("H", (0, 1)), ("CNOT", (0,)), ("SWAP", (1, 1)), ("HEIS", (0, 1, 2))])
def test_gate_arity_checked(kind, qubits):
    with pytest.raises(GateArityError):
        Gate(kind, qubits, 0.1 if kind == "HEIS" else None)


def test_unknown_gate_kind_rejected():
    with pytest.raises(Exception):
        Gate("CCX", (0, 1, 2))


def test_circuit_json_round_trip():
    c = Circuit(3)
    c.append("H", 0)
    c.append("CNOT", 0, 2)
    c.append("HEIS", 1, 2, param=0.25)
    c.append("HEIS", 0, 1, param="al_0")
    c.params.append("al_0")
    d = c.to_json()
    assert d["gates"][2] == {"k": "HEIS", "q": [1, 2], "p": 0.25}
    assert d["gates"][3] == {"k": "HEIS", "q": [0, 1], "name": "al_0"}
    assert Circuit.loads(c.dumps()) == c


def test_lambda_and_total():
    c = Circuit(2, [Gate("H", (0,)), Gate("CNOT", (0, 1)), Gate("SWAP", (0, 1))])
    assert c.lam == 2 and c.total == 3


# ---------------------------------------------------------------- coupling graph

def test_coupling_graph_of_empty_circuit():
    assert len(coupling_graph(Circuit(0))) == 0


def test_coupling_graph_is_unordered():
    c = Circuit(2, [Gate("CNOT", (0, 1)), Gate("CNOT", (1, 0))])
    assert coupling_graph(c).edges == [(0, 1)]


def test_random_kagome_circuit_hits_every_edge():
    g = kagome(3, 3)
    cg = coupling_graph(random_circuit(g, 10 ** 4, 0))
    assert cg == g


@pytest.mark.parametrize("seed", range(10))
def test_coupling_graph_subset_of_generator(seed):
    g = random_line_graph(6, seed)
    cg = coupling_graph(random_circuit(g, 30, seed))
    assert all(g.has_edge(a, b) for a, b in cg.edges)


# ---------------------------------------------------------------- depth

def test_depth_of_repeated_single_qubit_gate():
    assert depth(Circuit(1, [Gate("H", (0,))] * 5)) == 5


def test_depth_of_empty_circuit():
    assert depth(Circuit(3)) == 0


@pytest.mark.parametrize("seed", range(40))
def test_depth_matches_dag_oracle(seed):
    g = random_line_graph(5, seed)
    c = random_circuit(g, 60, seed)
    assert depth(c) == dag_depth(c.gates)


@pytest.mark.parametrize("seed", range(10))
def test_depth_invariant_under_relabeling(seed):
    g = kagome(2, 2)
    c = random_circuit(g, 200, seed)
    perm = list(range(c.num_qubits))
    random.Random(seed).shuffle(perm)
    d = Circuit(c.num_qubits, [x.on(*(perm[q] for q in x.qubits)) for x in c.gates])
    assert depth(d) == depth(c)


@pytest.mark.parametrize("fn,size,want", [
    (kagome, (1, 1), 4), (shuriken, (1, 1), 5), (kagome, (3, 3), 6), (checkerboard, (3.5, 3.5), 8),
])
def test_heis_input_depths(fn, size, want):
    assert depth(heis(fn(*size), 1)) == want


# ---------------------------------------------------------------- random circuits

def test_random_circuit_zero_gates():
    assert random_circuit(kagome(1, 1), 0, 3).gates == []


def test_random_circuit_empty_graph():
    with pytest.raises(EmptyGraph):
        random_circuit(Graph(), 5)


def test_random_circuit_deterministic():
    g = kagome(2, 2)
    assert random_circuit(g, 500, 11) == random_circuit(g, 500, 11)
    assert random_circuit(g, 500, 11) != random_circuit(g, 500, 12)


def test_random_circuit_cnot_fraction():
    c = random_circuit(kagome(3, 3), 10 ** 5, 1)
    frac = c.count("CNOT") / len(c)
    assert 0.395 <= frac <= 0.405


def test_random_circuit_cnot_control_is_lower_label():
    c = random_circuit(kagome(2, 2), 2000, 4)
    assert all(g.qubits[0] < g.qubits[1] for g in c.gates if g.kind == "CNOT")


def test_random_circuit_single_qubit_kinds_uniform():
    c = random_circuit(complete(5), 30000, 2)
    counts = np.array([c.count(k) for k in "HST"])
    assert np.all(np.abs(counts / counts.sum() - 1 / 3) < 0.02)


def test_random_kagome_3x3_depth_band():
    g = kagome(3, 3)
    for seed in range(16):
        assert 600 <= depth(random_circuit(g, 10 ** 4, seed)) <= 950


def test_rng_is_pcg64():
    assert isinstance(rng_for(0).bit_generator, np.random.PCG64)


# ---------------------------------------------------------------- HEIS circuits

@pytest.mark.parametrize("fn,size", [(kagome, (1, 1)), (shuriken, (1, 1)), (kagome, (3, 3)),
                                     (checkerboard, (1.5, 1.5))])
@pytest.mark.parametrize("p", [0, 1, 3])
def test_heis_gate_and_parameter_counts(fn, size, p):
    g = fn(*size)
    c = heis(g, p)
    assert c.count("SINGLET") == len(g) // 2
    assert c.count("HEIS") == p * len(g.edges)
    assert len(c) == len(g) // 2 + p * len(g.edges)
    assert len(c.params) == len(set(c.params)) == p * len(g.edges)


def test_heis_kagome_unit_gate_count():
    c = heis(kagome(1, 1), 1)
    assert (c.count("SINGLET"), c.count("HEIS")) == (4, 10)


def test_heis_zero_cycles_is_singlet_layer():
    c = heis(kagome(3, 3), 0)
    assert depth(c) == 1 and {g.kind for g in c.gates} == {"SINGLET"}


def test_heis_singlets_on_color_zero_then_cycle_in_color_order():
    g = kagome(1, 1)
    ec = edge_coloring(g, require_perfect=True)
    c = heis_circuit(colored(g, ec), 2)
    m = c.count("SINGLET")
    zero = sorted(e for e, k in ec.colors.items() if k == 0)
    assert [x.qubits for x in c.gates[:m]] == zero
    cycle = [x.qubits for x in c.gates[m:m + len(g.edges)]]
    assert cycle == [e for k in range(ec.num_colors) for e in sorted(e for e, kk in ec.colors.items() if kk == k)]
    assert [x.qubits for x in c.gates[m + len(g.edges):]] == cycle


def test_heis_fixed_alpha():
    c = heis(shuriken(1, 1), 2, alpha=trotter_alpha(1.0, 8))
    assert c.params == []
    assert {x.param for x in c.gates if x.kind == "HEIS"} == {0.5}


def test_heis_needs_perfect_matching():
    g = Graph(range(3), [(0, 1), (1, 2)])
    g.colors = {(0, 1): 0, (1, 2): 1}
    with pytest.raises(NotPerfectMatching):
        heis_circuit(g, 1)
