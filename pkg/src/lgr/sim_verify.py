"""Dense statevector simulation and the routed-circuit equivalence oracle.

Qubit 0 is the least significant bit of the amplitude index. A two-qubit
gate matrix is written in the basis |q_a q_b> where q_a is the first
listed qubit, so CNOT(a, b) has control a.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit_ir import Circuit, Gate
from .router import RoutingResult

MAX_QUBITS = 14

_R2 = 1 / np.sqrt(2)
_1Q = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _R2,
    "S": np.diag([1, 1j]).astype(complex),
    "T": np.diag([1, np.exp(1j * np.pi / 4)]),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
}
_CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
_SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
# |00> -> (|01> - |10>)/sqrt2 via X on both, H on the first, CNOT first -> second
_SINGLET = _CNOT @ np.kron(_1Q["H"], np.eye(2)) @ np.kron(_1Q["X"], _1Q["X"])


class TooManyQubits(Exception):
    pass


class UnboundParameter(Exception):
    pass


def heis_matrix(alpha: float) -> np.ndarray:
    """exp(-i a/4) exp(-i a (XX+YY+ZZ)/4): triplet phase e^{-ia/2}, singlet e^{ia/2}."""
    t = np.exp(-0.5j * alpha)
    c, s = np.cos(alpha / 2), np.sin(alpha / 2)
    return np.array([[t, 0, 0, 0],
                     [0, c, -1j * s, 0],
                     [0, -1j * s, c, 0],
                     [0, 0, 0, t]], dtype=complex)


def gate_matrix(g: Gate, bindings: dict | None = None) -> np.ndarray:
    if g.kind in _1Q:
        return _1Q[g.kind]
    if g.kind == "CNOT":
        return _CNOT
    if g.kind == "SWAP":
        return _SWAP
    if g.kind == "SINGLET":
        return _SINGLET
    a = g.param
    if isinstance(a, str):
        if not bindings or a not in bindings:
            raise UnboundParameter(a)
        a = bindings[a]
    if a is None:
        raise UnboundParameter(f"{g.kind} without parameter")
    return heis_matrix(float(a))


@dataclass
class Statevector:
    amplitudes: np.ndarray
    n: int

    @classmethod
    def zero(cls, n: int) -> "Statevector":
        if n > MAX_QUBITS:
            raise TooManyQubits(f"{n} qubits exceeds the cap of {MAX_QUBITS}")
        v = np.zeros(1 << n, dtype=complex)
        v[0] = 1
        return cls(v, n)

    @classmethod
    def product(cls, singles: list[np.ndarray]) -> "Statevector":
        """Tensor product with singles[q] the state of qubit q."""
        n = len(singles)
        if n > MAX_QUBITS:
            raise TooManyQubits(f"{n} qubits exceeds the cap of {MAX_QUBITS}")
        v = np.ones(1, dtype=complex)
        for s in singles:
            v = np.kron(s, v)
        return cls(v, n)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def apply(self, m: np.ndarray, qubits: tuple[int, ...]) -> None:
        n = self.n
        psi = self.amplitudes.reshape((2,) * n)
        axes = [n - 1 - q for q in qubits]
        k = len(qubits)
        psi = np.tensordot(m.reshape((2,) * (2 * k)), psi, axes=(list(range(k, 2 * k)), axes))
        psi = np.moveaxis(psi, list(range(k)), axes)
        self.amplitudes = psi.reshape(-1)


def simulate(c: Circuit, bindings: dict | None = None, init: Statevector | None = None) -> Statevector:
    """Apply c's gates in order, starting from init or |0...0>."""
    if c.num_qubits > MAX_QUBITS:
        raise TooManyQubits(f"{c.num_qubits} qubits exceeds the cap of {MAX_QUBITS}")
    sv = Statevector.zero(c.num_qubits) if init is None else Statevector(init.amplitudes.copy(), init.n)
    for g in c.gates:
        sv.apply(gate_matrix(g, bindings), g.qubits)
    return sv


def brute_force_unitary(c: Circuit, bindings: dict | None = None) -> np.ndarray:
    n = c.num_qubits
    if n > 8:
        raise TooManyQubits("unitary oracle is limited to 8 qubits")
    cols = []
    for b in range(1 << n):
        v = np.zeros(1 << n, dtype=complex)
        v[b] = 1
        cols.append(simulate(c, bindings, Statevector(v, n)).amplitudes)
    return np.stack(cols, axis=1)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-12) -> bool:
    """Operator equality with one global phase fixed by a's first nonzero entry."""
    flat = np.flatnonzero(np.abs(a) > 1e-9)
    if flat.size == 0:
        return bool(np.allclose(b, 0, atol=tol))
    i = flat[0]
    if abs(b.flat[i]) < 1e-12:
        return False
    ph = a.flat[i] / b.flat[i]
    return bool(np.allclose(a, ph * b, atol=tol))


def _random_qubit(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def _relabel_state(sv: Statevector, order: list[int]) -> np.ndarray:
    """Tensor with axis k holding physical qubit order[k] (k=0 most significant)."""
    psi = sv.amplitudes.reshape((2,) * sv.n)
    return np.transpose(psi, [sv.n - 1 - q for q in order])


@dataclass
class VerifyReport:
    trials: int
    min_fidelity: float
    mediator_return_min: float
    passed: bool

    def to_json(self) -> dict:
        return {"trials": self.trials, "min_fidelity": self.min_fidelity,
                "mediator_return_min": self.mediator_return_min, "pass": self.passed}


def verify_equivalence(original: Circuit, routed: RoutingResult, trials: int = 20, seed: int = 0,
                       bindings: dict | None = None, tol: float = 1e-10) -> VerifyReport:
    """Compare original against routed on random product inputs.

    Logical qubit q starts on initial_layout[q] and must end on
    final_layout()[q]; every other physical qubit starts in |0> and must
    return to it.
    """
    rc = routed.circuit
    n, nr = original.num_qubits, rc.num_qubits
    if n > MAX_QUBITS or nr > MAX_QUBITS:
        raise TooManyQubits(f"routed register of {nr} qubits exceeds the cap of {MAX_QUBITS}")
    rng = np.random.Generator(np.random.PCG64(seed))
    if bindings is None and original.params:
        bindings = {p: float(x) for p, x in zip(original.params, rng.uniform(-np.pi, np.pi, len(original.params)))}
    logical = list(range(n))
    start = routed.initial_layout
    end = routed.final_layout()
    anc_end = [x for x in range(nr) if x not in set(end[q] for q in logical)]
    zero = np.array([1, 0], dtype=complex)
    fmin, rmin = 1.0, 1.0
    for _ in range(trials):
        singles = [_random_qubit(rng) for _ in logical]
        want = simulate(original, bindings, Statevector.product(singles))
        phys = [zero] * nr
        for q in logical:
            phys[start[q]] = singles[q]
        got = simulate(rc, bindings, Statevector.product(phys))
        # logical register in the order of want's tensor axes, then ancillas
        t = _relabel_state(got, [end[q] for q in reversed(logical)] + anc_end)
        t = t.reshape(1 << n, -1)
        back = t[:, 0]
        ret = float(np.vdot(back, back).real)
        fid = abs(np.vdot(want.amplitudes, back)) ** 2
        fmin, rmin = min(fmin, fid), min(rmin, ret)
    ok = fmin >= 1 - tol and rmin >= 1 - tol
    return VerifyReport(trials, float(fmin), float(rmin), bool(ok))
