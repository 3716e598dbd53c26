import functools

import numpy as np
import pytest

from mcsynth import sim, su2core
from mcsynth.circuit import Circuit, Cnot, SingleQubit
from mcsynth.errors import DimMismatch, QubitOutOfRange, TooWide


def kron_reference(c: Circuit) -> np.ndarray:
    """Independent oracle: embed each gate with explicit Kronecker products."""
    n = c.width
    u = np.eye(1 << n, dtype=complex)
    p0 = np.diag([1, 0]).astype(complex)
    p1 = np.diag([0, 1]).astype(complex)

    def embed(ops):
        # qubit 0 is the least-significant bit, so it is the rightmost factor
        return functools.reduce(np.kron, [ops.get(q, su2core.I2) for q in reversed(range(n))])

    for g in c.gates:
        if isinstance(g, SingleQubit):
            m = embed({g.target: g.matrix})
        else:
            m = embed({g.control: p0}) + embed({g.control: p1, g.target: su2core.X})
        u = m @ u
    return u


def random_circuit(rng, n, m):
    gates = []
    for _ in range(m):
        if n > 1 and rng.random() < 0.4:
            a, b = rng.choice(n, 2, replace=False)
            gates.append(Cnot(int(a), int(b)))
        else:
            gates.append(SingleQubit(int(rng.integers(n)), su2core.random_su2(rng)))
    return Circuit(n, gates)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_unitary_matches_kron(rng, n):
    c = random_circuit(rng, n, 25)
    assert su2core.max_abs(sim.circuit_unitary(c) - kron_reference(c)) < 1e-12


def test_numpy_fallback_matches(rng, monkeypatch):
    c = random_circuit(rng, 4, 30)
    fast = sim.circuit_unitary(c)
    monkeypatch.setattr(sim, "numba", None)
    slow = sim.circuit_unitary(c)
    assert su2core.max_abs(fast - slow) < 1e-13


def test_bit_order():
    c = Circuit(3, [SingleQubit(0, su2core.X)])
    out = sim.apply(c, sim.basis_state(3, 0))
    assert out[1] == 1
    c = Circuit(3, [SingleQubit(2, su2core.X), Cnot(2, 0)])
    assert sim.apply(c, sim.basis_state(3))[0b101] == 1


def test_apply_consistent_with_unitary(rng):
    c = random_circuit(rng, 5, 40)
    psi = rng.normal(size=32) + 1j * rng.normal(size=32)
    before = psi.copy()
    assert su2core.max_abs(sim.apply(c, psi) - sim.circuit_unitary(c) @ psi) < 1e-12
    assert np.array_equal(psi, before)


def test_limits():
    with pytest.raises(TooWide):
        sim.circuit_unitary(Circuit(13))
    with pytest.raises(TooWide):
        sim.apply(Circuit(21), np.zeros(1))
    with pytest.raises(DimMismatch):
        sim.apply(Circuit(2), np.zeros(3))


def test_ideal_mc_unitary():
    u = sim.ideal_mc_unitary(3, [1, 2], 0, su2core.X)
    ccx = np.eye(8)
    ccx[[6, 7]] = ccx[[7, 6]]
    assert np.array_equal(u, ccx)
    with pytest.raises(QubitOutOfRange):
        sim.ideal_mc_unitary(3, [1, 1], 0, su2core.X)
    with pytest.raises(QubitOutOfRange):
        sim.ideal_mc_unitary(3, [3], 0, su2core.X)


def test_equiv_phase():
    u = sim.ideal_mc_unitary(3, [1], 0, su2core.rz(0.3))
    ok, err, lam = sim.equiv_phase(np.exp(0.7j) * u, u)
    assert ok and err < 1e-14 and abs(lam - np.exp(0.7j)) < 1e-14
    ok, err, _ = sim.equiv_phase(u, sim.ideal_mc_unitary(3, [1], 0, su2core.rz(0.31)))
    assert not ok and err > 1e-3
    with pytest.raises(DimMismatch):
        sim.equiv_phase(u, np.eye(4))
