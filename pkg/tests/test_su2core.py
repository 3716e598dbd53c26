import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcsynth import su2core as s
from mcsynth.errors import DegenerateSpectrum, NotRealMainDiag, NotSU2, SingularInput

from conftest import random_main_diag, random_off_diag

angles = st.floats(-4 * math.pi, 4 * math.pi, allow_nan=False)
unit = st.floats(-1, 1, allow_nan=False)


def pow2(m):
    return m @ m


def test_is_su2_basic():
    assert s.is_su2(s.I2)
    assert s.is_su2(s.rx(0.3) @ s.rz(1.2))
    assert not s.is_su2(s.X)  # det -1
    assert not s.is_su2(2 * s.I2)
    assert not s.is_su2(np.full((2, 2), np.nan))
    assert not s.is_su2(np.eye(3))


def test_require_su2_message():
    with pytest.raises(NotSU2, match="det"):
        s.require_su2(s.Z)


def test_classify():
    assert s.classify_diagonal(s.rz(0.4)) is s.DiagonalClass.REAL_OFF_DIAG
    assert s.classify_diagonal(s.ry(0.4)) is s.DiagonalClass.BOTH
    assert s.classify_diagonal(s.rx(0.4)) is s.DiagonalClass.REAL_MAIN_DIAG
    v = s.RealOffDiagForm.normalized(0.3 + 0.4j, 0.5).matrix()
    assert s.classify_diagonal(v) is s.DiagonalClass.REAL_OFF_DIAG
    assert s.classify_diagonal(s.rz(0.3) @ s.rx(0.5)) is s.DiagonalClass.NEITHER


def test_form_rejects_non_unit():
    with pytest.raises(NotSU2):
        s.RealOffDiagForm(1, 1)
    with pytest.raises(NotSU2):
        s.RealOffDiagForm.from_matrix(s.rx(0.5))


def test_form_round_trip(rng):
    for _ in range(50):
        v = random_off_diag(rng)
        assert s.is_su2(v.matrix())
        w = s.RealOffDiagForm.from_matrix(v.matrix())
        assert abs(w.z - v.z) < 1e-15 and abs(w.x - v.x) < 1e-15


def test_re_z_plus_one_no_cancellation():
    eps = 1e-7
    v = s.RealOffDiagForm.normalized(complex(-math.cos(eps), 0), math.sin(eps))
    # exact value 1 - cos(eps) ~ eps^2 / 2
    assert v.re_z_plus_one() == pytest.approx(eps * eps / 2, rel=1e-9)


def test_solve_a_identity_gives_identity_like():
    a = s.solve_a_gate(s.RealOffDiagForm(1, 0))
    x = s.X
    assert s.max_abs(pow2(s.dagger(a) @ x @ a @ x) - s.I2) < 1e-15


def test_solve_a_minus_identity_closed_form():
    a = s.solve_a_gate(s.RealOffDiagForm(-1, 0))
    assert s.max_abs(pow2(s.dagger(a) @ s.X @ a @ s.X) + s.I2) < 1e-15


@pytest.mark.parametrize("eps", [1e-3, 1e-6, 1e-9, 1e-12])
def test_solve_a_near_minus_identity(eps):
    for sign in (1, -1):
        v = s.RealOffDiagForm.normalized(complex(-math.cos(eps), sign * math.sin(eps)), 0.0)
        a = s.solve_a_gate(v)
        assert s.max_abs(pow2(s.dagger(a) @ s.X @ a @ s.X) - v.matrix()) < 1e-10


def test_solve_omega_singular():
    with pytest.raises(SingularInput):
        s.solve_omega(s.RealOffDiagForm(-1, 0))


@settings(max_examples=300, deadline=None)
@given(unit, unit, unit)
def test_a_gate_property(zr, zi, x):
    if zr * zr + zi * zi + x * x < 1e-6:
        return
    v = s.RealOffDiagForm.normalized(complex(zr, zi), x)
    a = s.solve_a_gate(v)
    assert s.is_su2(a)
    assert abs(a[1, 0].imag) < 1e-15  # beta is real
    assert s.max_abs(pow2(s.dagger(a) @ s.X @ a @ s.X) - v.matrix()) < 1e-10


@settings(max_examples=300, deadline=None)
@given(unit, unit, unit)
def test_b_half_property(zr, zi, x):
    if zr * zr + zi * zi + x * x < 1e-6:
        return
    v = s.RealOffDiagForm.normalized(complex(zr, zi), x)
    if v.re_z_plus_one() < 1e-8:
        return
    b = s.solve_b_half(v)
    assert s.max_abs(s.dagger(b) @ s.X @ b @ s.X - v.matrix()) < 1e-9


def test_main_to_off_diag_is_h_conjugation(rng):
    for _ in range(100):
        v = random_main_diag(rng)
        w = s.main_to_off_diag(v)
        assert s.max_abs(s.H @ v @ s.H - w.matrix()) < 1e-14


def test_main_to_off_diag_rejects():
    with pytest.raises(NotRealMainDiag):
        s.main_to_off_diag(s.rz(0.3))


def test_eigendecompose(rng):
    for _ in range(200):
        v = s.random_su2(rng)
        q, t = s.eigendecompose(v)
        assert s.is_su2(q)
        assert abs(q[0, 0].imag) < 1e-15 and abs(q[1, 1].imag) < 1e-15
        assert q[0, 0].real >= 1 / math.sqrt(2) - 1e-12
        d = np.diag([np.exp(1j * t), np.exp(-1j * t)])
        assert s.max_abs(q @ d @ s.dagger(q) - v) < 1e-12


def test_eigendecompose_diagonal_input():
    q, t = s.eigendecompose(s.rz(0.8))
    assert s.max_abs(q - s.I2) < 1e-15
    assert t == pytest.approx(-0.4)


@pytest.mark.parametrize("v", [s.I2, -s.I2])
def test_eigendecompose_degenerate(v):
    with pytest.raises(DegenerateSpectrum):
        s.eigendecompose(v)


@pytest.mark.parametrize(
    "u, beta, gamma, delta",
    [
        (s.rz(0.5), None, 0.0, None),
        (s.ry(1.1), 0.0, 1.1, 0.0),
        (s.H, None, math.pi / 2, None),
    ],
)
def test_zyz_examples(u, beta, gamma, delta):
    ph, b, g, d = s.zyz_angles(u)
    assert g == pytest.approx(gamma, abs=1e-12)
    if beta is not None:
        assert b == pytest.approx(beta, abs=1e-12)
        assert d == pytest.approx(delta, abs=1e-12)
    rec = np.exp(1j * ph) * s.rz(b) @ s.ry(g) @ s.rz(d)
    assert s.max_abs(rec - u) < 1e-12


@settings(max_examples=200, deadline=None)
@given(angles, angles, angles, angles)
def test_zyz_round_trip(ph, b, g, d):
    u = np.exp(1j * ph) * s.rz(b) @ s.ry(g) @ s.rz(d)
    ph2, b2, g2, d2 = s.zyz_angles(u)
    assert 0 <= g2 <= math.pi + 1e-12
    assert s.max_abs(np.exp(1j * ph2) * s.rz(b2) @ s.ry(g2) @ s.rz(d2) - u) < 1e-10


def test_abc(rng):
    for w in [s.I2, -s.I2, s.X @ s.Z, s.rz(2.0)] + [s.random_su2(rng) for _ in range(200)]:
        if not s.is_su2(w):
            w = 1j * w
        a, b, c = s.abc_decompose(w)
        for m in (a, b, c):
            assert s.is_su2(m)
        assert s.max_abs(a @ b @ c - s.I2) < 1e-12
        assert s.max_abs(a @ s.X @ b @ s.X @ c - w) < 1e-12


def test_h_tilde_relation():
    assert s.max_abs(s.X @ s.H - s.H_TILDE @ s.X) < 1e-15
    assert s.max_abs(s.H_TILDE @ s.H_TILDE - s.I2) < 1e-15
