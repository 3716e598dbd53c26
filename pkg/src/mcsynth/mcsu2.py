"""Lowering of multi-controlled SU(2) gates to CNOT + single-qubit netlists.

Controls are sorted and split into two groups, ``k1 = ceil(k/2)`` and
``k2 = floor(k/2)``.  The core pattern on the target is

    X_{k1}  A  X_{k2}  A^†  X_{k1}  A  X_{k2}  A^†

where ``X_{ki}`` is an MCX on group ``i`` that borrows the other group as
dirty ancillas.  With every control set it multiplies to ``(A^† X A X)^2``;
with either group off the ``A`` gates pair up and cancel.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from . import su2core
from .circuit import Circuit, Cnot, SingleQubit, depth, fuse_single_qubit, inverse
from .errors import DuplicateQubit, NotRealMainDiag
from .mcx import ApproxPolicy, Mode, mcx_gates, one_dirty_parts
from .su2core import TOL, RealOffDiagForm


class Method(enum.Enum):
    AUTO = "auto"
    REAL_OFF_DIAG = "real_off_diag"
    REAL_MAIN_DIAG = "real_main_diag"
    GENERAL = "general"
    BASELINE = "baseline"


# smallest n at which each closed-form bound is asserted
THM3_MIN_N = 6
THM5_MIN_N = 7
BASELINE_MIN_N = 8


def bound_16n_40(n: int) -> int:
    return 16 * n - 40


def bound_20n(n: int) -> int:
    return 20 * n - 38 if n % 2 else 20 * n - 42


def bound_28n(n: int) -> int:
    return 28 * n - 88 if n % 2 == 0 else 28 * n - 92


@dataclass(frozen=True)
class DecompositionReport:
    cnot_count: int
    depth: int
    bound: Optional[int]
    bound_formula: str
    method_used: Method


@dataclass(frozen=True)
class McSu2Request:
    controls: tuple
    target: int
    matrix: np.ndarray = field(compare=False)
    method: Method = Method.AUTO
    width: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        _check_qubits(self.controls, self.target)
        object.__setattr__(self, "matrix", su2core.require_su2(self.matrix))


def _check_qubits(controls: Sequence[int], target: int) -> None:
    qs = list(controls) + [target]
    if len(set(qs)) != len(qs):
        raise DuplicateQubit(f"controls and target must be distinct: {qs}")
    if any(q < 0 for q in qs):
        raise ValueError("qubit indices must be non-negative")


def _width(controls, target, width):
    return width if width is not None else max(list(controls) + [target]) + 1


def _groups(controls: Sequence[int]) -> tuple[list, list]:
    cs = sorted(controls)
    k1 = -(-len(cs) // 2)
    return cs[:k1], cs[k1:]


def _g(target: int, m: np.ndarray, label: str) -> SingleQubit:
    return SingleQubit(target, m, label)


def _finish(
    width: int, gates: list, method: Method, n: int, bound: Optional[int], formula: str
) -> tuple[Circuit, DecompositionReport]:
    c = fuse_single_qubit(Circuit(width, gates))
    if bound is not None and c.cnot_count > bound:
        raise AssertionError(f"{method.value}: {c.cnot_count} CNOTs exceeds {formula}={bound}")
    return c, DecompositionReport(c.cnot_count, depth(c), bound, formula, method)


def _thm3_bound(n: int) -> Optional[int]:
    return bound_16n_40(n) if n >= THM3_MIN_N else None


def _pattern_gates(controls: Sequence[int], target: int, a: np.ndarray) -> list:
    """``X_{k1} A X_{k2} A^† X_{k1} A X_{k2} A^†`` (time order) with exact MCXs."""
    g1, g2 = _groups(controls)
    x1 = mcx_gates(g1, target, g2, Mode.FULL, ApproxPolicy.WHERE_CANCELLED)
    x2 = mcx_gates(g2, target, g1, Mode.FULL, ApproxPolicy.WHERE_CANCELLED)
    ga, gad = _g(target, a, "A"), _g(target, su2core.dagger(a), "A†")
    return 2 * (x1 + [ga] + x2 + [gad])


def _is_identity(v: np.ndarray) -> bool:
    return su2core.max_abs(v - su2core.I2) < TOL


def _off_diag_gates(controls, target, a: np.ndarray, v: np.ndarray) -> list:
    if not controls:
        return [_g(target, v, "V")]
    return _pattern_gates(controls, target, a)


def mc_su2_real_off_diag(
    controls: Sequence[int],
    target: int,
    v: Union[RealOffDiagForm, np.ndarray],
    width: Optional[int] = None,
) -> tuple[Circuit, DecompositionReport]:
    """Controlled ``[[z*, x], [-x, z]]``; at most ``16n - 40`` CNOTs."""
    _check_qubits(controls, target)
    if not isinstance(v, RealOffDiagForm):
        v = RealOffDiagForm.from_matrix(np.asarray(v, dtype=complex))
    m = v.matrix()
    n = len(controls) + 1
    w = _width(controls, target, width)
    gates = [] if _is_identity(m) else _off_diag_gates(controls, target, su2core.solve_a_gate(v), m)
    return _finish(w, gates, Method.REAL_OFF_DIAG, n, _thm3_bound(n), "16n-40")


def mc_su2_real_main_diag(
    controls: Sequence[int],
    target: int,
    v: np.ndarray,
    width: Optional[int] = None,
) -> tuple[Circuit, DecompositionReport]:
    """Controlled ``V`` with a real main diagonal, via ``V = H V' H``."""
    _check_qubits(controls, target)
    v = su2core.require_su2(np.asarray(v, dtype=complex))
    if abs(v[0, 0].imag) > TOL or abs(v[1, 1].imag) > TOL:
        raise NotRealMainDiag("main diagonal is not real")
    n = len(controls) + 1
    w = _width(controls, target, width)
    if _is_identity(v):
        gates = []
    elif not controls:
        gates = [_g(target, v, "V")]
    else:
        vp = su2core.main_to_off_diag(v)
        h = _g(target, su2core.H, "H")
        gates = [h] + _pattern_gates(controls, target, su2core.solve_a_gate(vp)) + [h]
    return _finish(w, gates, Method.REAL_MAIN_DIAG, n, _thm3_bound(n), "16n-40")


def _rotation(controls, target, v, a, conj_h, width):
    _check_qubits(controls, target)
    n = len(controls) + 1
    w = _width(controls, target, width)
    if _is_identity(v):
        gates = []
    elif not controls:
        gates = [_g(target, v, "V")]
    else:
        gates = _pattern_gates(controls, target, a)
        if conj_h:
            h = _g(target, su2core.H, "H")
            gates = [h] + gates + [h]
    method = Method.REAL_MAIN_DIAG if conj_h else Method.REAL_OFF_DIAG
    return _finish(w, gates, method, n, _thm3_bound(n), "16n-40")


def mc_ry(controls, target, theta: float, width: Optional[int] = None):
    """Multi-controlled ``Ry(theta)`` with ``A = Ry(-theta/4)``."""
    return _rotation(controls, target, su2core.ry(theta), su2core.ry(-theta / 4), False, width)


def mc_rz(controls, target, theta: float, width: Optional[int] = None):
    """Multi-controlled ``Rz(theta)`` with ``A = Rz(-theta/4)``."""
    return _rotation(controls, target, su2core.rz(theta), su2core.rz(-theta / 4), False, width)


def mc_rx(controls, target, theta: float, width: Optional[int] = None):
    """Multi-controlled ``Rx(theta) = H Rz(theta) H``."""
    return _rotation(controls, target, su2core.rx(theta), su2core.rz(-theta / 4), True, width)


def _general_gates(controls: list, target: int, v: np.ndarray) -> list:
    q, d_phase = su2core.eigendecompose(v)
    b = su2core.solve_b_half(su2core.main_to_off_diag(q))
    c1 = b @ su2core.H_TILDE
    c2 = su2core.H @ su2core.dagger(b)
    d = RealOffDiagForm.normalized(complex(np.exp(-1j * d_phase)), 0.0)
    a = su2core.solve_a_gate(d)

    g1, g2 = _groups(controls)
    pol = ApproxPolicy.WHERE_CANCELLED
    x1 = mcx_gates(g1, target, g2, Mode.FULL, pol)
    x2 = mcx_gates(g2, target, g1, Mode.FULL, pol)
    # the first two k2-MCXs see only target gates in between, so their reset
    # halves annihilate and just the target-flipping halves remain
    x2_act = mcx_gates(g2, target, g1, Mode.ACTION_ONLY, pol)

    def g(m, label):
        return _g(target, m, label)

    ga, gad = g(a, "A"), g(su2core.dagger(a), "A†")
    gates = [g(su2core.dagger(c2), "C2†")] + x2_act + [g(su2core.dagger(c1), "C1†")]
    # X_{k1} closing Q^† cancels the X_{k1} opening D
    gates += [ga] + x2_act + [gad]
    gates += x1 + [ga] + x2 + [gad]
    gates += x1 + [g(c1, "C1")] + x2 + [g(c2, "C2")]
    return gates


def mc_su2_general(
    controls: Sequence[int],
    target: int,
    v: np.ndarray,
    width: Optional[int] = None,
) -> tuple[Circuit, DecompositionReport]:
    """Any controlled SU(2) via ``V = Q D Q^†``; at most ``20n - 38`` (n odd)
    or ``20n - 42`` (n even) CNOTs."""
    _check_qubits(controls, target)
    v = su2core.require_su2(np.asarray(v, dtype=complex))
    controls = list(controls)
    n = len(controls) + 1
    if su2core.max_abs(v + su2core.I2) < TOL:
        return mc_su2_real_off_diag(controls, target, RealOffDiagForm(-1, 0), width)
    w = _width(controls, target, width)
    if _is_identity(v):
        gates = []
    elif not controls:
        gates = [_g(target, v, "V")]
    else:
        gates = _general_gates(controls, target, v)
    bound = bound_20n(n) if n >= THM5_MIN_N else None
    formula = "20n-38" if n % 2 else "20n-42"
    return _finish(w, gates, Method.GENERAL, n, bound, formula)


def _controlled_gates(ctl: int, target: int, w: np.ndarray, label: str) -> list:
    """Singly-controlled SU(2): ``C, CX, B, CX, A`` with ``A X B X C = W``."""
    a, b, c = su2core.abc_decompose(w)
    return [
        _g(target, c, f"{label}.C"),
        Cnot(ctl, target),
        _g(target, b, f"{label}.B"),
        Cnot(ctl, target),
        _g(target, a, f"{label}.A"),
    ]


def _baseline_gates(controls: list, target: int, w: np.ndarray) -> list:
    cs = sorted(controls)
    k = len(cs)
    if k == 1:
        return _controlled_gates(cs[0], target, w, "W")
    a, b, c = su2core.abc_decompose(w)
    last, rest = cs[-1], cs[:-1]
    cc = _controlled_gates(last, target, c, "C")
    cb = _controlled_gates(last, target, b, "B")
    ca = _controlled_gates(last, target, a, "A")
    if len(rest) <= 2:
        mcx1 = mcx_gates(rest, target, [], Mode.FULL, ApproxPolicy.EXACT)
        return cc + mcx1 + cb + mcx1 + ca
    # the MCXs borrow the last control as their dirty qubit; the bottom reset
    # block commutes with the controlled-B (it only reads that control), so
    # the reset closing the first MCX and its mirror opening the second cancel
    p = one_dirty_parts(rest, target, last, ApproxPolicy.EVERYWHERE)
    width = max(cs + [target]) + 1
    mcx1 = p.top + p.bottom_action + p.bottom_reset + p.top_inverse + p.bottom_action
    mcx2 = inverse(Circuit(width, mcx1)).gates
    return cc + mcx1 + cb + mcx2 + ca


def mc_su2_baseline(
    controls: Sequence[int],
    target: int,
    w: np.ndarray,
    width: Optional[int] = None,
) -> tuple[Circuit, DecompositionReport]:
    """Reference construction ``W = A X B X C`` with two one-dirty MCXs;
    at most ``28n - 88`` (n even) or ``28n - 92`` (n odd) CNOTs."""
    _check_qubits(controls, target)
    w_m = su2core.require_su2(np.asarray(w, dtype=complex))
    n = len(controls) + 1
    wd = _width(controls, target, width)
    if _is_identity(w_m):
        gates = []
    elif not controls:
        gates = [_g(target, w_m, "W")]
    else:
        gates = _baseline_gates(list(controls), target, w_m)
    bound = bound_28n(n) if n >= BASELINE_MIN_N else None
    formula = "28n-88" if n % 2 == 0 else "28n-92"
    return _finish(wd, gates, Method.BASELINE, n, bound, formula)


def decompose(req: McSu2Request) -> tuple[Circuit, DecompositionReport]:
    """Dispatch a request; ``AUTO`` picks the cheapest applicable scheme."""
    method = req.method
    v = req.matrix
    if method is Method.AUTO:
        cls = su2core.classify_diagonal(v)
        if cls in (su2core.DiagonalClass.REAL_OFF_DIAG, su2core.DiagonalClass.BOTH):
            method = Method.REAL_OFF_DIAG
        elif cls is su2core.DiagonalClass.REAL_MAIN_DIAG:
            method = Method.REAL_MAIN_DIAG
        else:
            method = Method.GENERAL
    fn = {
        Method.REAL_OFF_DIAG: mc_su2_real_off_diag,
        Method.REAL_MAIN_DIAG: mc_su2_real_main_diag,
        Method.GENERAL: mc_su2_general,
        Method.BASELINE: mc_su2_baseline,
    }[method]
    return fn(list(req.controls), req.target, v, req.width)
