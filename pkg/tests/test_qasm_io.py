import math
import random

import pytest

from lgr.circuit_ir import Circuit, Gate, heis_circuit
from lgr.graph_core import colored, edge_coloring
from lgr.lattices import kagome
from lgr.qasm_io import (QasmSyntaxError, RegisterOutOfBounds, UnboundSymbolic, UnsupportedGate, parse_qasm,
                         read_circuit, serialize_qasm, tokenize, write_circuit)

HEAD = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n"


def body(c):
    return [ln for ln in serialize_qasm(c).splitlines() if not ln.startswith(("OPENQASM", "include", "//",
                                                                            "opaque", "qreg"))]


def test_parse_cx():
    c = parse_qasm("OPENQASM 2.0; qreg q[2]; cx q[0],q[1];")
    assert c == Circuit(2, [Gate("CNOT", (0, 1))])


def test_parse_heis():
    c = parse_qasm("OPENQASM 2.0; qreg q[2]; heis(0.5) q[0],q[1];")
    assert c.gates == [Gate("HEIS", (0, 1), 0.5)]


def test_parse_every_gate_name():
    text = HEAD + "h q[0]; s q[1]; t q[2]; x q[0]; z q[1]; cx q[0],q[1]; swap q[1],q[2]; singlet q[0],q[2];"
    assert [g.kind for g in parse_qasm(text).gates] == ["H", "S", "T", "X", "Z", "CNOT", "SWAP", "SINGLET"]


def test_expressions():
    c = parse_qasm(HEAD + "heis(pi/2) q[0],q[1]; heis(-(1+2)*0.5) q[1],q[2]; heis(2*pi-1e-1) q[0],q[2];")
    assert [g.param for g in c.gates] == pytest.approx([math.pi / 2, -1.5, 2 * math.pi - 0.1])


def test_comments_whitespace_and_declarations():
    text = ("// leading comment\nOPENQASM 2.0;\n  include \"qelib1.inc\";\n"
            "opaque heis(alpha) a,b;\ngate foo(x) a { h a; }\n"
            "qreg q[2];   creg c[2];\n\ncx q[0] , q[1] ; // trailing\n")
    assert parse_qasm(text).gates == [Gate("CNOT", (0, 1))]


def test_barrier_warns():
    with pytest.warns(UserWarning, match="barrier"):
        c = parse_qasm(HEAD + "h q[0]; barrier q[0],q[1]; h q[1];")
    assert len(c) == 2


def test_swap_serializes_as_swap():
    assert body(Circuit(2, [Gate("SWAP", (0, 1))])) == ["swap q[0],q[1];"]


def test_empty_circuit_is_header_only():
    text = serialize_qasm(Circuit(0))
    assert text.startswith("OPENQASM 2.0;") and body(Circuit(0)) == []
    assert parse_qasm(text) == Circuit(0)


def test_kagome_unit_program():
    g = kagome(1, 1)
    c = heis_circuit(colored(g, edge_coloring(g, require_perfect=True)), 1)
    lines = body(c)
    assert len(lines) == 14
    assert sum(ln.startswith("singlet") for ln in lines) == 4
    assert sum(ln.startswith("heis(al_") for ln in lines) == 10


def test_parameters_use_17_digits():
    x = 0.1 + 0.2
    assert body(Circuit(2, [Gate("HEIS", (0, 1), x)])) == [f"heis({x:.17g}) q[0],q[1];"]
    assert parse_qasm(serialize_qasm(Circuit(2, [Gate("HEIS", (0, 1), x)]))).gates[0].param == x


def _random_program(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    c = Circuit(n)
    for _ in range(rng.randint(0, 30)):
        kind = rng.choice(["H", "S", "T", "X", "Z", "CNOT", "SWAP", "SINGLET", "HEIS"])
        if kind in ("H", "S", "T", "X", "Z"):
            c.gates.append(Gate(kind, (rng.randrange(n),)))
        else:
            a, b = rng.sample(range(n), 2)
            p = rng.choice([rng.uniform(-10, 10), rng.randint(-3, 3) * 1.0, 1e-300, -2.5e17]) \
                if kind == "HEIS" else None
            c.gates.append(Gate(kind, (a, b), p))
    return c


@pytest.mark.parametrize("seed", range(200))
def test_round_trip(seed):
    c = _random_program(seed)
    assert parse_qasm(serialize_qasm(c)) == c


def test_symbolic_parameters():
    c = Circuit(2, [Gate("HEIS", (0, 1), "al_0"), Gate("HEIS", (0, 1), "al_1")], ["al_0", "al_1"])
    text = serialize_qasm(c)
    assert "//   al_0 al_1" in text
    with pytest.raises(UnboundSymbolic):
        parse_qasm(text)
    assert parse_qasm(text, symbolic=True) == c
    bound = parse_qasm(text, {"al_0": 0.25, "al_1": -1.0})
    assert [g.param for g in bound.gates] == [0.25, -1.0] and bound.params == []


def test_symbolic_in_arithmetic_rejected():
    with pytest.raises(UnboundSymbolic):
        parse_qasm(HEAD + "heis(2*al_0) q[0],q[1];", symbolic=True)


# ---------------------------------------------------------------- errors

def test_syntax_error_position():
    with pytest.raises(QasmSyntaxError) as e:
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0] q[1];\n")
    assert (e.value.line, e.value.col) == (3, 9)
    assert "';'" in e.value.expected


def test_bad_character_position():
    with pytest.raises(QasmSyntaxError) as e:
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\n  h q[0]; @\n")
    assert (e.value.line, e.value.col) == (3, 11)


def test_missing_semicolon_at_eof():
    with pytest.raises(QasmSyntaxError):
        parse_qasm(HEAD + "h q[0]")


def test_unknown_register():
    with pytest.raises(QasmSyntaxError):
        parse_qasm(HEAD + "h r[0];")


def test_three_qubit_gates_rejected():
    with pytest.raises(UnsupportedGate):
        parse_qasm(HEAD + "ccx q[0],q[1],q[2];")
    with pytest.raises(UnsupportedGate):
        parse_qasm(HEAD + "cx q[0],q[1],q[2];")


def test_unknown_gate():
    with pytest.raises(UnsupportedGate) as e:
        parse_qasm(HEAD + "rz(0.1) q[0];")
    assert e.value.name == "rz"


def test_register_bounds():
    with pytest.raises(RegisterOutOfBounds):
        parse_qasm(HEAD + "h q[3];")


def test_heis_needs_parameter():
    with pytest.raises(QasmSyntaxError):
        parse_qasm(HEAD + "heis q[0],q[1];")
    with pytest.raises(QasmSyntaxError):
        parse_qasm(HEAD + "cx(0.1) q[0],q[1];")


def test_second_qreg_rejected():
    with pytest.raises(QasmSyntaxError):
        parse_qasm(HEAD + "qreg r[2];")


def test_only_version_two():
    with pytest.raises(QasmSyntaxError):
        parse_qasm("OPENQASM 3.0; qreg q[1];")


def test_tokenizer_positions():
    toks = tokenize("h q[0];\n  cx")
    assert [(t.text, t.line, t.col) for t in toks][-2:] == [("cx", 2, 3), ("", 2, 5)]


# ---------------------------------------------------------------- JSON and dispatch

def test_read_circuit_detects_format():
    c = _random_program(3)
    assert read_circuit(write_circuit(c, "json")) == c
    assert read_circuit(write_circuit(c, "qasm")) == c


def test_json_bindings():
    c = Circuit(2, [Gate("HEIS", (0, 1), "a"), Gate("HEIS", (0, 1), "b")], ["a", "b"])
    out = read_circuit(write_circuit(c), {"a": 0.5})
    assert [g.param for g in out.gates] == [0.5, "b"] and out.params == ["b"]
