"""OpenQASM 2 subset reader/writer and the native JSON circuit format.

Grammar handled by the recursive-descent parser:

    program   := header? statement*
    header    := 'OPENQASM' REAL ';'
    statement := 'include' STRING ';'
               | 'qreg' ID '[' INT ']' ';'
               | 'creg' ID '[' INT ']' ';'          (ignored)
               | 'barrier' args ';'                 (ignored, warns)
               | 'opaque' ID ('(' ids ')')? ids ';'
               | 'gate' ID ('(' ids ')')? ids '{' ... '}'
               | ID ('(' expr ')')? args ';'
    expr      := term (('+'|'-') term)*
    term      := factor (('*'|'/') factor)*
    factor    := ('-'|'+') factor | REAL | 'pi' | ID | '(' expr ')'
"""
from __future__ import annotations

import json
import math
import re
import warnings
from dataclasses import dataclass

from .circuit_ir import Circuit, Gate

GATES = {"h": "H", "s": "S", "t": "T", "x": "X", "z": "Z", "cx": "CNOT", "swap": "SWAP",
         "singlet": "SINGLET", "heis": "HEIS"}
NAMES = {v: k for k, v in GATES.items()}


class QasmError(Exception):
    pass


class QasmSyntaxError(QasmError):
    def __init__(self, line: int, col: int, expected: str, got: str = ""):
        self.line, self.col, self.expected = line, col, expected
        super().__init__(f"line {line}, col {col}: expected {expected}" + (f", got {got!r}" if got else ""))


class UnsupportedGate(QasmError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unsupported gate {name!r}")


class RegisterOutOfBounds(QasmError):
    pass


class UnboundSymbolic(QasmError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+|//[^\n]*)
  | (?P<real>(\d+\.\d*|\.\d+|\d+)([eE][-+]?\d+)?)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"[^"\n]*")
  | (?P<arrow>->)
  | (?P<sym>[;,\[\](){}+\-*/^])
""", re.VERBOSE)


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Tok]:
    toks = []
    pos, line, lstart = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise QasmSyntaxError(line, pos - lstart + 1, "a token", text[pos])
        kind = m.lastgroup
        s = m.group()
        if kind != "ws":
            toks.append(Tok(kind, s, line, pos - lstart + 1))
        nl = s.count("\n")
        if nl:
            line += nl
            lstart = pos + s.rindex("\n") + 1
        pos = m.end()
    toks.append(Tok("eof", "", line, pos - lstart + 1))
    return toks


class _Parser:
    def __init__(self, text: str, bindings: dict | None, symbolic: bool):
        self.toks = tokenize(text)
        self.i = 0
        self.bindings = dict(bindings or {})
        self.symbolic = symbolic
        self.reg: tuple[str, int] | None = None
        self.gates: list[Gate] = []
        self.params: list[str] = []

    # -- token helpers --
    def peek(self) -> Tok:
        return self.toks[self.i]

    def next(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str | None = None, kind: str | None = None) -> Tok:
        t = self.peek()
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            raise QasmSyntaxError(t.line, t.col, repr(text) if text else kind, t.text)
        return self.next()

    def accept(self, text: str) -> bool:
        if self.peek().text == text:
            self.i += 1
            return True
        return False

    # -- grammar --
    def program(self) -> Circuit:
        if self.peek().text == "OPENQASM":
            self.next()
            v = self.expect(kind="real")
            if not v.text.startswith("2"):
                raise QasmSyntaxError(v.line, v.col, "version 2.x", v.text)
            self.expect(";")
        while self.peek().kind != "eof":
            self.statement()
        if self.reg is None:
            return Circuit(0, self.gates, self.params)
        return Circuit(self.reg[1], self.gates, self.params)

    def statement(self) -> None:
        t = self.peek()
        if t.kind != "id":
            raise QasmSyntaxError(t.line, t.col, "statement", t.text)
        kw = t.text
        if kw == "include":
            self.next()
            self.expect(kind="str")
            self.expect(";")
        elif kw in ("qreg", "creg"):
            self.next()
            name = self.expect(kind="id").text
            self.expect("[")
            size = int(self.expect(kind="real").text)
            self.expect("]")
            self.expect(";")
            if kw == "qreg":
                if self.reg is not None:
                    raise QasmSyntaxError(t.line, t.col, "a single qreg", "second qreg")
                self.reg = (name, size)
        elif kw == "barrier":
            self.next()
            self.args()
            self.expect(";")
            warnings.warn("barrier ignored")
        elif kw == "opaque":
            self.next()
            self.decl_head()
            self.expect(";")
        elif kw == "gate":
            self.next()
            self.decl_head()
            self.expect("{")
            depth = 1
            while depth:
                b = self.next()
                if b.kind == "eof":
                    raise QasmSyntaxError(b.line, b.col, "'}'")
                depth += {"{": 1, "}": -1}.get(b.text, 0)
        else:
            self.gate_stmt()

    def decl_head(self) -> None:
        self.expect(kind="id")
        if self.accept("("):
            if not self.accept(")"):
                self.id_list()
                self.expect(")")
        self.id_list()

    def id_list(self) -> None:
        self.expect(kind="id")
        while self.accept(","):
            self.expect(kind="id")

    def gate_stmt(self) -> None:
        t = self.next()
        if t.text not in GATES:
            raise UnsupportedGate(t.text)
        kind = GATES[t.text]
        param = None
        if self.accept("("):
            param = self.expr()
            self.expect(")")
        qs = self.args()
        self.expect(";")
        if (kind == "HEIS") != (param is not None):
            raise QasmSyntaxError(t.line, t.col, "a parameter for heis only")
        want = 1 if kind in ("H", "S", "T", "X", "Z") else 2
        if len(qs) != want:
            if len(qs) > 2:
                raise UnsupportedGate(f"{t.text} on {len(qs)} qubits")
            raise QasmSyntaxError(t.line, t.col, f"{want} qubit argument(s)")
        self.gates.append(Gate(kind, tuple(qs), param))

    def args(self) -> list[int]:
        out = [self.qubit()]
        while self.accept(","):
            out.append(self.qubit())
        return out

    def qubit(self) -> int:
        t = self.expect(kind="id")
        if self.reg is None or t.text != self.reg[0]:
            raise QasmSyntaxError(t.line, t.col, "declared qreg", t.text)
        self.expect("[")
        k = self.expect(kind="real")
        self.expect("]")
        q = int(k.text)
        if q >= self.reg[1]:
            raise RegisterOutOfBounds(f"line {t.line}: {t.text}[{q}] outside qreg of size {self.reg[1]}")
        return q

    def expr(self):
        v = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            w = self.term()
            v = self._num(v) + self._num(w) if op == "+" else self._num(v) - self._num(w)
        return v

    def term(self):
        v = self.factor()
        while self.peek().text in ("*", "/"):
            op = self.next().text
            w = self.factor()
            v = self._num(v) * self._num(w) if op == "*" else self._num(v) / self._num(w)
        return v

    def factor(self):
        t = self.next()
        if t.text in ("-", "+"):
            v = self._num(self.factor())
            return -v if t.text == "-" else v
        if t.kind == "real":
            return float(t.text)
        if t.text == "pi":
            return math.pi
        if t.text == "(":
            v = self.expr()
            self.expect(")")
            return v
        if t.kind == "id":
            if t.text in self.bindings:
                return float(self.bindings[t.text])
            if self.symbolic:
                if t.text not in self.params:
                    self.params.append(t.text)
                return t.text
            raise UnboundSymbolic(f"parameter {t.text} has no binding")
        raise QasmSyntaxError(t.line, t.col, "expression", t.text)

    def _num(self, v) -> float:
        if isinstance(v, str):
            raise UnboundSymbolic(f"symbolic {v} used in arithmetic")
        return v


def parse_qasm(text: str, bindings: dict | None = None, symbolic: bool = False) -> Circuit:
    """Parse the subset. Free identifiers in parameters are looked up in
    bindings; with symbolic set, a bare identifier stays a named parameter."""
    return _Parser(text, bindings, symbolic).program()


def _fmt(x: float) -> str:
    s = f"{x:.17g}"
    return s if any(ch in s for ch in ".en") else s + ".0"


def serialize_qasm(c: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    syms = sorted({g.param for g in c.gates if isinstance(g.param, str)},
                  key=lambda s: (len(s), s))
    if syms:
        lines.append("// symbolic parameters (bind with --bind name=value):")
        for i in range(0, len(syms), 8):
            lines.append("//   " + " ".join(syms[i:i + 8]))
    lines += ["opaque singlet a,b;", "opaque heis(alpha) a,b;", f"qreg q[{c.num_qubits}];"]
    for g in c.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        p = ""
        if g.param is not None:
            p = f"({g.param})" if isinstance(g.param, str) else f"({_fmt(float(g.param))})"
        lines.append(f"{NAMES[g.kind]}{p} {args};")
    return "\n".join(lines) + "\n"


def read_circuit(text: str, bindings: dict | None = None, symbolic: bool = False) -> Circuit:
    """JSON or QASM, decided by the first non-blank character."""
    if text.lstrip().startswith("{"):
        c = Circuit.from_json(json.loads(text))
        if bindings:
            c = Circuit(c.num_qubits, [Gate(g.kind, g.qubits, bindings.get(g.param, g.param))
                                       if isinstance(g.param, str) else g for g in c.gates],
                        [p for p in c.params if p not in bindings])
        return c
    return parse_qasm(text, bindings, symbolic)


def write_circuit(c: Circuit, fmt: str = "json") -> str:
    return serialize_qasm(c) if fmt == "qasm" else c.dumps()
