"""2x2 matrix algebra and closed-form solvers for SU(2) gates.

Matrices are plain ``numpy`` arrays of shape ``(2, 2)`` and dtype complex.
Every function here is pure.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateSpectrum, NotRealMainDiag, NotSU2, SingularInput

TOL = 1e-10

# Below this value of Re(z)+1 the target is exactly -I for all practical purposes.
EPS_SING = 1e-24

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
# X H == H_TILDE X
H_TILDE = np.array([[-1, 1], [1, 1]], dtype=complex) / math.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=complex)
T = np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex)


def rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.array(
        [[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex
    )


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def su2(alpha: complex, beta: complex) -> np.ndarray:
    """Return ``[[alpha, -conj(beta)], [beta, conj(alpha)]]``."""
    return np.array(
        [[alpha, -np.conj(beta)], [beta, np.conj(alpha)]], dtype=complex
    )


def max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if np.size(m) else 0.0


def is_unitary(m: np.ndarray, tol: float = TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    if not np.all(np.isfinite(m)):
        return False
    return max_abs(m @ dagger(m) - np.eye(m.shape[0])) < tol


def is_su2(m: np.ndarray, tol: float = TOL) -> bool:
    """True iff ``m`` is a finite 2x2 unitary with determinant 1 (within ``tol``)."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2) or not np.all(np.isfinite(m)):
        return False
    return is_unitary(m, tol) and abs(np.linalg.det(m) - 1) < tol


def require_su2(m: np.ndarray, tol: float = TOL) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if not is_su2(m, tol):
        if m.shape != (2, 2):
            raise NotSU2(f"expected a 2x2 matrix, got shape {m.shape}")
        det = np.linalg.det(m)
        err = max_abs(m @ dagger(m) - I2)
        raise NotSU2(f"not in SU(2): det={det:.6g}, unitarity error={err:.3g}")
    return m


def random_su2(rng: np.random.Generator) -> np.ndarray:
    """Haar-random SU(2) element."""
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    return su2(complex(q[0], q[1]), complex(q[2], q[3]))


class DiagonalClass(enum.Enum):
    REAL_OFF_DIAG = "real_off_diag"
    REAL_MAIN_DIAG = "real_main_diag"
    BOTH = "both"
    NEITHER = "neither"


def classify_diagonal(m: np.ndarray, tol: float = TOL) -> DiagonalClass:
    """Report which diagonal of an SU(2) matrix is real-valued."""
    m = require_su2(m, tol)
    off = abs(m[0, 1].imag) < tol and abs(m[1, 0].imag) < tol
    main = abs(m[0, 0].imag) < tol and abs(m[1, 1].imag) < tol
    if off and main:
        return DiagonalClass.BOTH
    if off:
        return DiagonalClass.REAL_OFF_DIAG
    if main:
        return DiagonalClass.REAL_MAIN_DIAG
    return DiagonalClass.NEITHER


@dataclass(frozen=True)
class RealOffDiagForm:
    """The SU(2) matrix ``[[conj(z), x], [-x, z]]`` with ``x`` real."""

    z: complex
    x: float

    def __post_init__(self):
        z, x = complex(self.z), float(self.x)
        if not (math.isfinite(z.real) and math.isfinite(z.imag) and math.isfinite(x)):
            raise NotSU2("non-finite entries")
        if abs(abs(z) ** 2 + x * x - 1) > TOL:
            raise NotSU2(f"|z|^2 + x^2 = {abs(z) ** 2 + x * x!r}, expected 1")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "x", x)

    @classmethod
    def from_matrix(cls, m: np.ndarray, tol: float = TOL) -> "RealOffDiagForm":
        m = require_su2(m, tol)
        if abs(m[0, 1].imag) > tol or abs(m[1, 0].imag) > tol:
            raise NotSU2("off-diagonal is not real")
        return cls.normalized(complex(m[1, 1]), float(m[0, 1].real))

    @classmethod
    def normalized(cls, z: complex, x: float) -> "RealOffDiagForm":
        """Build the form after projecting ``(z, x)`` onto the unit sphere."""
        norm = math.sqrt(abs(z) ** 2 + x * x)
        return cls(complex(z) / norm, float(x) / norm)

    def matrix(self) -> np.ndarray:
        return np.array([[np.conj(self.z), self.x], [-self.x, self.z]], dtype=complex)

    def re_z_plus_one(self) -> float:
        # Re(z) + 1 without cancellation near z = -1, using |z|^2 + x^2 = 1.
        re = self.z.real
        if re >= -0.5:
            return re + 1.0
        return (self.z.imag ** 2 + self.x ** 2) / (1.0 - re)


def main_to_off_diag(m: np.ndarray, tol: float = TOL) -> RealOffDiagForm:
    """Map a real-main-diagonal SU(2) matrix ``V`` to the form of ``H V H``.

    ``V = [[x', -z'], [conj(z'), x']]`` becomes ``x = Re z'``, ``z = x' + i Im z'``.
    """
    m = require_su2(m, tol)
    if abs(m[0, 0].imag) > tol or abs(m[1, 1].imag) > tol:
        raise NotRealMainDiag("main diagonal is not real")
    x_p = float(m[0, 0].real)
    z_p = complex(np.conj(m[1, 0]))
    return RealOffDiagForm.normalized(complex(x_p, z_p.imag), z_p.real)


class OmegaPair(NamedTuple):
    omega1: complex
    omega2: float


def solve_omega(v: RealOffDiagForm) -> OmegaPair:
    """Positive-branch solution of ``w1**2 - w2**2 = z`` and ``2 Re(w1) w2 = x``.

    Other sign branches are equally valid; the positive one is used throughout.
    """
    p = v.re_z_plus_one()
    if p <= EPS_SING:
        raise SingularInput("Re(z) = -1: the target is -I")
    s = math.sqrt(2.0 * p)
    return OmegaPair(complex(math.sqrt(p / 2.0), v.z.imag / s), v.x / s)


def solve_a_gate(v: RealOffDiagForm) -> np.ndarray:
    """Return ``A`` in SU(2) with real ``beta`` such that ``(A^† X A X)^2 = V``."""
    p = v.re_z_plus_one()
    if p <= EPS_SING:
        # (A^† X A X)^2 = -I exactly for this diagonal A.
        w = np.exp(-0.25j * math.pi)
        return np.array([[w, 0], [0, np.conj(w)]], dtype=complex)
    root = math.sqrt(p / 2.0) + 1.0
    denom = 2.0 * math.sqrt(p * root)
    alpha = complex(math.sqrt(root / 2.0), v.z.imag / denom)
    beta = v.x / denom
    return su2(alpha, beta)


def solve_b_half(v: RealOffDiagForm) -> np.ndarray:
    """Return ``B`` in SU(2) such that ``B^† X B X = V`` (single application)."""
    w1, w2 = solve_omega(v)
    return su2(w1, w2)


class EigenDecomp(NamedTuple):
    q: np.ndarray
    d_phase: float

    def d(self) -> np.ndarray:
        return np.diag([np.exp(1j * self.d_phase), np.exp(-1j * self.d_phase)])


def eigendecompose(v: np.ndarray, tol: float = TOL) -> EigenDecomp:
    """Factor ``V = Q diag(e^{i t}, e^{-i t}) Q^†`` with ``Q`` in SU(2).

    The first eigenvector is the one with the larger first component, scaled
    so that component is real and positive; ``Q``'s second column is
    ``(-conj(b), a)``, which makes the main diagonal of ``Q`` real.
    """
    v = require_su2(v, tol)
    alpha, beta = v[0, 0], v[1, 0]
    # V = cos(t) I - i sin(t) (n . sigma)
    axis = np.array([-beta.imag, beta.real, -alpha.imag])
    s = float(np.linalg.norm(axis))
    if s < tol:
        raise DegenerateSpectrum("V is +-I; eigenvalues coincide")
    theta = math.atan2(s, alpha.real)
    nx, ny, nz = axis / s
    if nz >= 0:
        # +1 eigenvector of n.sigma, eigenvalue e^{-i t} of V
        a = math.sqrt((1 + nz) / 2)
        b = complex(nx, ny) / (2 * a)
        d_phase = -theta
    else:
        a = math.sqrt((1 - nz) / 2)
        b = -complex(nx, ny) / (2 * a)
        d_phase = theta
    return EigenDecomp(su2(a, b), d_phase)


def _wrap(angle: float) -> float:
    """Wrap into (-pi, pi]."""
    w = math.remainder(angle, 2 * math.pi)
    return math.pi if w == -math.pi else w


def zyz_angles(u: np.ndarray, tol: float = TOL) -> tuple[float, float, float, float]:
    """Return ``(phase, beta, gamma, delta)`` with
    ``u = e^{i phase} Rz(beta) Ry(gamma) Rz(delta)``.

    beta, delta and phase lie in (-pi, pi]; gamma in [0, pi].
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or not is_unitary(u, max(tol, 1e-8)):
        raise ValueError("zyz_angles expects a 2x2 unitary")
    det = np.linalg.det(u)
    su = u * np.exp(-0.5j * np.angle(det))
    c, s = abs(su[0, 0]), abs(su[1, 0])
    gamma = 2 * math.atan2(s, c)
    if s < 1e-14:
        beta, delta = 2 * np.angle(su[1, 1]), 0.0
    elif c < 1e-14:
        beta, delta = 2 * np.angle(su[1, 0]), 0.0
    else:
        half_sum, half_diff = np.angle(su[1, 1]), np.angle(su[1, 0])
        beta, delta = half_sum + half_diff, half_sum - half_diff
    beta, delta = _wrap(float(beta)), _wrap(float(delta))
    m = rz(beta) @ ry(gamma) @ rz(delta)
    phase = _wrap(float(np.angle(np.sum(np.conj(m) * u))))
    return phase, beta, gamma, delta


def abc_decompose(w: np.ndarray, tol: float = TOL) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split ``W`` in SU(2) into ``A, B, C`` in SU(2) with ``ABC = I`` and
    ``A X B X C = W``.
    """
    w = require_su2(w, tol)
    phase, beta, gamma, delta = zyz_angles(w)
    if abs(phase) > math.pi / 2:
        # W = -Rz(beta)Ry(gamma)Rz(delta) = Rz(beta + 2pi)Ry(gamma)Rz(delta)
        beta += 2 * math.pi
    a = rz(beta) @ ry(gamma / 2)
    b = ry(-gamma / 2) @ rz(-(delta + beta) / 2)
    c = rz((delta - beta) / 2)
    return a, b, c
