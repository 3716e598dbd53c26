"""Gate-level circuit IR: single-qubit unitaries and CNOTs on indexed qubits.

Qubit 0 is the least-significant bit of computational-basis indices.  Gates
are applied in list order, so the circuit unitary is ``G_m ... G_2 G_1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

import numpy as np

from . import su2core
from .errors import InvalidGate, QubitOutOfRange, WidthMismatch


def _frozen(m) -> np.ndarray:
    arr = np.array(m, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SingleQubit:
    target: int
    matrix: np.ndarray
    label: Optional[str] = None

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.shape != (2, 2):
            raise InvalidGate(f"single-qubit matrix must be 2x2, got {m.shape}")
        if not su2core.is_unitary(m, 1e-9):
            raise InvalidGate("single-qubit matrix is not unitary")
        object.__setattr__(self, "matrix", m)

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)

    def inverse(self) -> "SingleQubit":
        label = None if self.label is None else f"{self.label}†"
        if self.label and self.label.endswith("†"):
            label = self.label[:-1]
        return SingleQubit(self.target, su2core.dagger(self.matrix), label)

    def __eq__(self, other):
        return (
            isinstance(other, SingleQubit)
            and self.target == other.target
            and np.array_equal(self.matrix, other.matrix)
        )

    def __repr__(self):
        return f"SingleQubit({self.label or 'U'}, q{self.target})"


@dataclass(frozen=True)
class Cnot:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise InvalidGate(f"CNOT control equals target (q{self.target})")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.control, self.target)

    def inverse(self) -> "Cnot":
        return self


Gate = Union[SingleQubit, Cnot]


def gate(target: int, matrix, label: Optional[str] = None) -> SingleQubit:
    return SingleQubit(target, matrix, label)


def x(target: int) -> SingleQubit:
    return SingleQubit(target, su2core.X, "X")


def h(target: int) -> SingleQubit:
    return SingleQubit(target, su2core.H, "H")


@dataclass
class Circuit:
    """Ordered gate list on ``width`` qubits.

    ``append`` mutates in place and returns the circuit so builders can chain
    calls; every other operation returns a new circuit.
    """

    width: int
    gates: list = field(default_factory=list)

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("width must be non-negative")
        gates, self.gates, self._cnots = list(self.gates), [], 0
        for g in gates:
            self.append(g)

    def append(self, g: Gate) -> "Circuit":
        for q in g.qubits:
            if not 0 <= q < self.width:
                raise QubitOutOfRange(f"qubit {q} outside width {self.width}")
        self.gates.append(g)
        if isinstance(g, Cnot):
            self._cnots += 1
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __eq__(self, other):
        return (
            isinstance(other, Circuit)
            and self.width == other.width
            and self.gates == other.gates
        )

    @property
    def cnot_count(self) -> int:
        return self._cnots

    def copy(self) -> "Circuit":
        return Circuit(self.width, self.gates)


def compose(c1: Circuit, c2: Circuit) -> Circuit:
    """Gates of ``c1`` followed by gates of ``c2``."""
    if c1.width != c2.width:
        raise WidthMismatch(f"cannot compose widths {c1.width} and {c2.width}")
    return Circuit(c1.width, c1.gates + c2.gates)


def inverse(c: Circuit) -> Circuit:
    return Circuit(c.width, [g.inverse() for g in reversed(c.gates)])


def cnot_count(c: Circuit) -> int:
    return c.cnot_count


def _layers(c: Circuit, only_cnot: bool) -> int:
    level = [0] * c.width
    layers = set()
    for g in c.gates:
        qs = g.qubits
        d = max(level[q] for q in qs) + 1
        for q in qs:
            level[q] = d
        if not only_cnot or isinstance(g, Cnot):
            layers.add(d)
    return max(level, default=0) if not only_cnot else len(layers)


def depth(c: Circuit) -> int:
    """ASAP depth counting every gate."""
    return _layers(c, only_cnot=False)


def cnot_depth(c: Circuit) -> int:
    """Number of ASAP layers holding at least one CNOT."""
    return _layers(c, only_cnot=True)


def fuse_single_qubit(c: Circuit, atol: float = 1e-14) -> Circuit:
    """Multiply runs of single-qubit gates on the same wire into one gate.

    Products equal to the identity (not merely up to phase) are dropped, so
    the unitary is preserved exactly and the CNOT list is untouched.
    """
    out = Circuit(c.width)
    pending: dict[int, SingleQubit] = {}

    def flush(q):
        g = pending.pop(q, None)
        if g is not None and su2core.max_abs(g.matrix - su2core.I2) > atol:
            out.append(g)

    for g in c.gates:
        if isinstance(g, SingleQubit):
            prev = pending.get(g.target)
            if prev is None:
                pending[g.target] = g
            else:
                pending[g.target] = SingleQubit(g.target, g.matrix @ prev.matrix)
        else:
            for q in g.qubits:
                flush(q)
            out.append(g)
    for q in sorted(pending):
        flush(q)
    return out


def _fmt(angle: float) -> str:
    return repr(float(angle))


def to_qasm(c: Circuit) -> str:
    """OpenQASM 2.0 text; single-qubit gates become ``u3`` (global phase dropped)."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.width}];"]
    for g in c.gates:
        if isinstance(g, Cnot):
            lines.append(f"cx q[{g.control}],q[{g.target}];")
        else:
            _, beta, gamma, delta = su2core.zyz_angles(g.matrix)
            # u3(t, p, l) = e^{i(p+l)/2} Rz(p) Ry(t) Rz(l)
            lines.append(
                f"u3({_fmt(gamma)},{_fmt(beta)},{_fmt(delta)}) q[{g.target}];"
            )
    return "\n".join(lines) + "\n"


def toffoli_gates(c1: int, c2: int, t: int) -> list:
    """Standard 6-CNOT Clifford+T Toffoli netlist."""
    tdg = su2core.dagger(su2core.T)
    return [
        SingleQubit(t, su2core.H, "H"),
        Cnot(c2, t),
        SingleQubit(t, tdg, "Tdg"),
        Cnot(c1, t),
        SingleQubit(t, su2core.T, "T"),
        Cnot(c2, t),
        SingleQubit(t, tdg, "Tdg"),
        Cnot(c1, t),
        SingleQubit(c2, su2core.T, "T"),
        SingleQubit(t, su2core.T, "T"),
        SingleQubit(t, su2core.H, "H"),
        Cnot(c1, c2),
        SingleQubit(c1, su2core.T, "T"),
        SingleQubit(c2, tdg, "Tdg"),
        Cnot(c1, c2),
    ]


def ry_gate(q: int, theta: float) -> SingleQubit:
    return SingleQubit(q, su2core.ry(theta), f"Ry({theta:.6g})")


def rz_gate(q: int, theta: float) -> SingleQubit:
    return SingleQubit(q, su2core.rz(theta), f"Rz({theta:.6g})")

