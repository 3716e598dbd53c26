"""Brute-force dense simulation used as the correctness oracle."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .circuit import Circuit, SingleQubit
from .errors import DimMismatch, QubitOutOfRange, TooWide

MAX_UNITARY_WIDTH = 12
MAX_STATE_WIDTH = 20


try:
    import numba
except ImportError:  # pragma: no cover
    numba = None


def _np_single(block, n, q, m):
    view = block.reshape(1 << (n - 1 - q), 2, -1)
    view[:] = np.matmul(m, view)


def _np_cnot(block, n, ctl, tgt):
    tensor = block.reshape((2,) * n + (-1,))
    ax_c, ax_t = n - 1 - ctl, n - 1 - tgt
    idx = [slice(None)] * (n + 1)
    idx[ax_c] = 1
    sub = tensor[tuple(idx)]
    ax = ax_t if ax_t < ax_c else ax_t - 1
    lo = [slice(None)] * n
    hi = [slice(None)] * n
    lo[ax], hi[ax] = 0, 1
    tmp = sub[tuple(lo)].copy()
    sub[tuple(lo)] = sub[tuple(hi)]
    sub[tuple(hi)] = tmp


if numba is not None:
    # Real and imaginary parts live in separate float arrays so the inner
    # loops vectorize.  CNOTs never move data: ``rows`` maps each logical
    # basis index to the physical row currently holding it.

    @numba.njit(cache=True, fastmath=True)
    def _nb_single(re, im, rows, q, m):
        bit = 1 << q
        cols = re.shape[1]
        ar, ai, br, bi, cr, ci, dr, di = m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7]
        for hi in range(0, rows.shape[0], 2 * bit):
            for i in range(hi, hi + bit):
                u, v = rows[i], rows[i + bit]
                xr, xi, yr, yi = re[u], im[u], re[v], im[v]
                for c in range(cols):
                    pr, pi, sr, si = xr[c], xi[c], yr[c], yi[c]
                    xr[c] = ar * pr - ai * pi + br * sr - bi * si
                    xi[c] = ar * pi + ai * pr + br * si + bi * sr
                    yr[c] = cr * pr - ci * pi + dr * sr - di * si
                    yi[c] = cr * pi + ci * pr + dr * si + di * sr

    @numba.njit(cache=True)
    def _nb_cnot(rows, ctl, tgt):
        cb = 1 << ctl
        tb = 1 << tgt
        for i in range(rows.shape[0]):
            if (i & cb) and not (i & tb):
                j = i | tb
                rows[i], rows[j] = rows[j], rows[i]


def _apply_gates(c: Circuit, block: np.ndarray) -> np.ndarray:
    """Apply ``c`` to every column of ``block`` (shape ``(2**n, m)``) in place."""
    n = c.width
    if numba is None:
        for g in c.gates:
            if isinstance(g, SingleQubit):
                _np_single(block, n, g.target, g.matrix)
            else:
                _np_cnot(block, n, g.control, g.target)
        return block
    re = np.ascontiguousarray(block.real)
    im = np.ascontiguousarray(block.imag)
    rows = np.arange(block.shape[0], dtype=np.int64)
    for g in c.gates:
        if isinstance(g, SingleQubit):
            m = np.stack([g.matrix.real.ravel(), g.matrix.imag.ravel()], axis=1).ravel()
            _nb_single(re, im, rows, g.target, m)
        else:
            _nb_cnot(rows, g.control, g.target)
    block.real = re[rows]
    block.imag = im[rows]
    return block


def circuit_unitary(c: Circuit, max_width: int = MAX_UNITARY_WIDTH) -> np.ndarray:
    """Dense ``2**n x 2**n`` unitary of ``c``."""
    if c.width > max_width:
        raise TooWide(f"width {c.width} exceeds dense limit {max_width}")
    dim = 1 << c.width
    return _apply_gates(c, np.eye(dim, dtype=complex))


def apply(c: Circuit, state: np.ndarray, max_width: int = MAX_STATE_WIDTH) -> np.ndarray:
    """Apply ``c`` gate by gate to a state vector; the input is not modified."""
    if c.width > max_width:
        raise TooWide(f"width {c.width} exceeds statevector limit {max_width}")
    state = np.asarray(state, dtype=complex)
    if state.shape != (1 << c.width,):
        raise DimMismatch(f"state of shape {state.shape} for width {c.width}")
    out = state.copy().reshape(-1, 1)
    return _apply_gates(c, out).reshape(-1)


def basis_state(width: int, index: int = 0) -> np.ndarray:
    s = np.zeros(1 << width, dtype=complex)
    s[index] = 1
    return s


def ideal_mc_unitary(
    width: int, controls: Sequence[int], target: int, v: np.ndarray
) -> np.ndarray:
    """Identity except ``v`` on ``target`` when every control is 1."""
    qubits = list(controls) + [target]
    if len(set(qubits)) != len(qubits):
        raise QubitOutOfRange("controls and target must be distinct")
    if any(not 0 <= q < width for q in qubits):
        raise QubitOutOfRange(f"qubit outside width {width}")
    dim = 1 << width
    u = np.eye(dim, dtype=complex)
    cmask = sum(1 << q for q in controls)
    tbit = 1 << target
    for i in range(dim):
        if i & cmask == cmask and not i & tbit:
            j = i | tbit
            u[i, i], u[i, j] = v[0, 0], v[0, 1]
            u[j, i], u[j, j] = v[1, 0], v[1, 1]
    return u


def equiv_phase(
    u: np.ndarray, w: np.ndarray, tol: float = 1e-9
) -> tuple[bool, float, complex]:
    """Compare ``u`` and ``w`` up to a global phase.

    The phase ``lam`` is taken from the ratio at the largest-magnitude entry of
    ``w``; returns ``(max|u - lam w| < tol, max|u - lam w|, lam)``.
    """
    u, w = np.asarray(u), np.asarray(w)
    if u.shape != w.shape:
        raise DimMismatch(f"shapes {u.shape} and {w.shape} differ")
    idx = np.unravel_index(np.argmax(np.abs(w)), w.shape)
    ratio = u[idx] / w[idx] if w[idx] != 0 else 1.0
    lam = ratio / abs(ratio) if ratio != 0 else 1.0
    err = float(np.max(np.abs(u - lam * w)))
    return err < tol, err, complex(lam)
