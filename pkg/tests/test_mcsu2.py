import math

import numpy as np
import pytest

from mcsynth import sim, su2core
from mcsynth.errors import DuplicateQubit, NotRealMainDiag, NotSU2
from mcsynth.mcsu2 import (
    McSu2Request,
    Method,
    bound_16n_40,
    bound_20n,
    bound_28n,
    decompose,
    mc_rx,
    mc_ry,
    mc_rz,
    mc_su2_baseline,
    mc_su2_general,
    mc_su2_real_main_diag,
    mc_su2_real_off_diag,
)

from conftest import random_main_diag, random_off_diag


def residual(c, controls, target, v, phase_free):
    u = sim.circuit_unitary(c)
    ideal = sim.ideal_mc_unitary(c.width, controls, target, v)
    if phase_free:
        return su2core.max_abs(u - ideal)
    return sim.equiv_phase(u, ideal)[1]


def test_bound_formulas():
    assert bound_16n_40(9) == 104
    assert bound_20n(9) == 142 and bound_20n(10) == 158
    assert bound_28n(12) == 248 and bound_28n(13) == 272


def test_identity_elision():
    for fn in (mc_su2_real_off_diag, mc_su2_real_main_diag, mc_su2_general, mc_su2_baseline):
        c, rep = fn([1, 2, 3, 4], 0, su2core.I2)
        assert len(c) == 0 and rep.cnot_count == 0
    c, rep = decompose(McSu2Request([1, 2, 3], 0, su2core.I2))
    assert len(c) == 0
    for fn in (mc_rx, mc_ry, mc_rz):
        assert len(fn([1, 2, 3, 4, 5], 0, 0.0)[0]) == 0
        assert len(fn([1, 2], 0, 4 * math.pi)[0]) == 0


def test_off_diag_examples(rng):
    c, rep = mc_su2_real_off_diag(list(range(1, 9)), 0, random_off_diag(rng))
    assert rep.cnot_count <= 104 and rep.bound == 104
    c, _ = mc_su2_real_off_diag([1, 2, 3, 4], 0, su2core.ry(0.7))
    assert residual(c, [1, 2, 3, 4], 0, su2core.ry(0.7), True) < 1e-10


def test_main_diag_examples():
    v = np.array([[0, -1], [1, 0]], dtype=complex)
    c, _ = mc_su2_real_main_diag([1, 2, 3], 0, v)
    assert residual(c, [1, 2, 3], 0, v, True) < 1e-10
    c, _ = mc_su2_real_main_diag([1, 2, 3, 4, 5], 0, su2core.rx(0.7))
    assert residual(c, [1, 2, 3, 4, 5], 0, su2core.rx(0.7), True) < 1e-10
    with pytest.raises(NotRealMainDiag):
        mc_su2_real_main_diag([1, 2], 0, su2core.rz(0.4))


@pytest.mark.parametrize("k", range(1, 12))
def test_thm2_matches_thm1_count(rng, k):
    controls = list(range(1, k + 1))
    a = mc_su2_real_off_diag(controls, 0, random_off_diag(rng))[1].cnot_count
    b = mc_su2_real_main_diag(controls, 0, random_main_diag(rng))[1].cnot_count
    assert a == b


@pytest.mark.parametrize("theta", [0.3, 1.7, math.pi])
def test_rotation_identities(theta):
    x = su2core.X
    rz, ry = su2core.rz, su2core.ry
    m = rz(theta / 4) @ x @ rz(-theta / 4) @ x
    assert su2core.max_abs(m @ m - rz(theta)) < 1e-12
    m = ry(theta / 4) @ x @ ry(-theta / 4) @ x
    assert su2core.max_abs(m @ m - ry(theta)) < 1e-12
    m = rz(theta / 4) @ x @ rz(-theta / 4) @ x
    assert su2core.max_abs(su2core.H @ m @ m @ su2core.H - su2core.rx(theta)) < 1e-12


def test_rz_k7():
    controls = list(range(1, 8))
    c, _ = mc_rz(controls, 0, 1.234)
    assert residual(c, controls, 0, su2core.rz(1.234), True) < 1e-10


@pytest.mark.parametrize("fn, gate", [(mc_rx, su2core.rx), (mc_ry, su2core.ry), (mc_rz, su2core.rz)])
def test_rotations_match_generic(fn, gate):
    controls = [1, 3, 4, 5]
    c, rep = fn(controls, 2, 0.9, width=6)
    assert residual(c, controls, 2, gate(0.9), True) < 1e-10
    generic = decompose(McSu2Request(controls, 2, gate(0.9), width=6))[1]
    assert rep.cnot_count == generic.cnot_count


def test_general_examples(rng):
    assert mc_su2_general(list(range(1, 9)), 0, su2core.random_su2(rng))[1].cnot_count <= 142
    assert mc_su2_general(list(range(1, 10)), 0, su2core.random_su2(rng))[1].cnot_count <= 158


def test_general_n6_many(rng):
    controls = list(range(1, 6))
    for _ in range(100):
        v = su2core.random_su2(rng)
        c, _ = mc_su2_general(controls, 0, v)
        assert residual(c, controls, 0, v, False) < 1e-9


def test_general_special_inputs():
    controls = [1, 2, 3, 4]
    for v in (-su2core.I2, su2core.rz(0.5), su2core.rx(2.0), su2core.rz(1e-11) @ su2core.ry(1.0)):
        c, _ = mc_su2_general(controls, 0, v)
        assert residual(c, controls, 0, v, False) < 1e-9
    _, rep = mc_su2_general(controls, 0, -su2core.I2)
    assert rep.method_used is Method.REAL_OFF_DIAG


def test_baseline_examples(rng):
    assert mc_su2_baseline(list(range(1, 12)), 0, su2core.random_su2(rng))[1].cnot_count <= 248
    for _ in range(20):
        v = su2core.random_su2(rng)
        c, _ = mc_su2_baseline([1, 2, 3, 4, 5], 0, v)
        assert residual(c, [1, 2, 3, 4, 5], 0, v, False) < 1e-9


@pytest.mark.parametrize("n", range(8, 17))
def test_baseline_costs_more(rng, n):
    controls = list(range(1, n))
    v = su2core.random_su2(rng)
    assert mc_su2_baseline(controls, 0, v)[1].cnot_count > mc_su2_general(controls, 0, v)[1].cnot_count


@pytest.mark.parametrize("fn", [mc_su2_real_off_diag, mc_su2_general, mc_su2_baseline])
def test_small_k(rng, fn):
    for k in range(0, 5):
        controls = list(range(1, k + 1))
        v = random_off_diag(rng).matrix()
        c, rep = fn(controls, 0, v)
        assert residual(c, controls, 0, v, fn is mc_su2_real_off_diag) < 1e-10
        if k == 1 and fn is mc_su2_real_off_diag:
            assert rep.cnot_count == 2


@pytest.mark.parametrize("method", [Method.REAL_OFF_DIAG, Method.GENERAL, Method.BASELINE])
def test_counts_monotone(rng, method):
    v = random_off_diag(rng).matrix()
    counts = [decompose(McSu2Request(range(1, n), 0, v, method))[1].cnot_count for n in range(2, 18)]
    assert counts == sorted(counts)


@pytest.mark.parametrize("method", [Method.REAL_MAIN_DIAG, Method.GENERAL, Method.BASELINE])
def test_control_permutation_invariance(rng, method):
    v = random_main_diag(rng)
    base = decompose(McSu2Request([1, 2, 3, 4, 5], 0, v, method))[1].cnot_count
    for _ in range(3):
        q = [int(t) for t in rng.permutation(7)]
        ctrl, tgt = q[:5], q[5]
        c, rep = decompose(McSu2Request(ctrl, tgt, v, method, width=7))
        assert rep.cnot_count == base
        assert residual(c, ctrl, tgt, v, False) < 1e-9


def test_auto_dispatch(rng):
    ctl = [1, 2, 3]
    assert decompose(McSu2Request(ctl, 0, su2core.rz(0.4)))[1].method_used is Method.REAL_OFF_DIAG
    assert decompose(McSu2Request(ctl, 0, su2core.rx(0.4)))[1].method_used is Method.REAL_MAIN_DIAG
    v = su2core.random_su2(rng)
    assert decompose(McSu2Request(ctl, 0, v))[1].method_used is Method.GENERAL


def test_report_bounds():
    v = su2core.rz(0.3)
    for n in range(2, 16):
        ctl = list(range(1, n))
        r = mc_su2_real_off_diag(ctl, 0, v)[1]
        assert (r.bound is not None) == (n >= 6) and r.bound_formula == "16n-40"
        g = mc_su2_general(ctl, 0, su2core.rx(0.3) @ v)[1]
        assert (g.bound is not None) == (n >= 7)
        b = mc_su2_baseline(ctl, 0, v)[1]
        assert (b.bound is not None) == (n >= 8)
        if r.bound is not None:
            assert r.cnot_count <= r.bound
        if g.bound is not None:
            assert g.cnot_count <= g.bound
        if b.bound is not None:
            assert b.cnot_count <= b.bound


def test_request_validation():
    with pytest.raises(DuplicateQubit):
        McSu2Request([0, 1], 1, su2core.I2)
    with pytest.raises(NotSU2):
        McSu2Request([0, 1], 2, su2core.X)
