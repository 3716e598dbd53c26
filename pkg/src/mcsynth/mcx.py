"""Multi-controlled X constructions built from (approximate) Toffoli gates.

The dirty-ancilla chain follows the V-shaped Toffoli ladder: an *action*
half that flips the target and a *reset* half that restores the borrowed
ancillas.  Approximate Toffolis (3 CNOTs, exact up to a diagonal) are only
used where their relative phases provably cancel; paired approximate
Toffolis in a palindrome share their outer ``Ry-CX-Ry`` halves so each pair
costs 4 CNOTs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

from . import su2core
from .circuit import Circuit, Cnot, SingleQubit, inverse, toffoli_gates
from .errors import DuplicateQubit, NotEnoughAncillas


class Mode(enum.Enum):
    FULL = "full"
    ACTION_ONLY = "action_only"
    RESET_ONLY = "reset_only"


class ApproxPolicy(enum.Enum):
    EXACT = "exact"
    # approximate only the Toffolis that target ancillas
    WHERE_CANCELLED = "where_cancelled"
    # also approximate the target-flipping Toffolis (result is MCX up to a
    # diagonal on controls + target; only legal when mirrored)
    EVERYWHERE = "everywhere"


class Orientation(enum.Enum):
    FORWARD = "forward"
    REVERSE = "reverse"


_THETA = math.pi / 4


def _ry(q: int, theta: float) -> SingleQubit:
    return SingleQubit(q, su2core.ry(theta), "Ry(π/4)" if theta > 0 else "Ry(-π/4)")


def _left_half(c1: int, t: int) -> list:
    return [_ry(t, -_THETA), Cnot(c1, t), _ry(t, -_THETA)]


def _right_half(c1: int, t: int) -> list:
    return [_ry(t, _THETA), Cnot(c1, t), _ry(t, _THETA)]


def _approx_toffoli_gates(c1: int, c2: int, t: int) -> list:
    return _left_half(c1, t) + [Cnot(c2, t)] + _right_half(c1, t)


def _check_distinct(*groups: Sequence[int]) -> None:
    qubits = [q for g in groups for q in g]
    if len(set(qubits)) != len(qubits):
        raise DuplicateQubit(f"qubits must be distinct: {qubits}")


def _width(*groups: Sequence[int]) -> int:
    return max(q for g in groups for q in g) + 1


def toffoli(c1: int, c2: int, t: int, width: int | None = None) -> Circuit:
    """Exact Toffoli, 6 CNOTs."""
    _check_distinct((c1, c2, t))
    return Circuit(width or _width((c1, c2, t)), toffoli_gates(c1, c2, t))


def approx_toffoli(
    c1: int,
    c2: int,
    t: int,
    orientation: Orientation = Orientation.FORWARD,
    width: int | None = None,
) -> Circuit:
    """Toffoli up to a diagonal: 3 CNOTs, ``-1`` on ``c1=0, c2=1, t=0``.

    ``c1`` drives the outer CNOTs, ``c2`` the middle one.
    """
    _check_distinct((c1, c2, t))
    c = Circuit(width or _width((c1, c2, t)), _approx_toffoli_gates(c1, c2, t))
    return c if orientation is Orientation.FORWARD else inverse(c)


def mcx_small(controls: Sequence[int], target: int, width: int | None = None) -> Circuit:
    """X, CNOT or Toffoli for up to two controls."""
    controls = list(controls)
    _check_distinct(controls, [target])
    if len(controls) > 2:
        raise ValueError("mcx_small handles at most two controls")
    c = Circuit(width or _width(controls, [target]))
    return c.extend(_mcx_small_gates(controls, target, approx=False))


def _mcx_small_gates(controls: list, target: int, approx: bool) -> list:
    if not controls:
        return [SingleQubit(target, su2core.X, "X")]
    if len(controls) == 1:
        return [Cnot(controls[0], target)]
    if approx:
        return _approx_toffoli_gates(controls[0], controls[1], target)
    return toffoli_gates(controls[0], controls[1], target)


@dataclass(frozen=True)
class _Tof:
    c1: int
    c2: int
    t: int
    approx: bool


def _palindrome(layers: list, center: _Tof) -> list:
    """Emit ``layers + [center] + reversed(layers)`` sharing approximate halves."""
    gates: list = []
    for tof in layers:
        if tof.approx:
            gates += _left_half(tof.c1, tof.t) + [Cnot(tof.c2, tof.t)]
        else:
            gates += toffoli_gates(tof.c1, tof.c2, tof.t)
    if center.approx:
        gates += _approx_toffoli_gates(center.c1, center.c2, center.t)
    else:
        gates += toffoli_gates(center.c1, center.c2, center.t)
    for tof in reversed(layers):
        if tof.approx:
            gates += [Cnot(tof.c2, tof.t)] + _right_half(tof.c1, tof.t)
        else:
            gates += toffoli_gates(tof.c1, tof.c2, tof.t)
    return gates


def _chain_gates(
    controls: list, target: int, ancillas: list, mode: Mode, policy: ApproxPolicy
) -> list:
    k = len(controls)
    m = k - 2
    a = ancillas[:m]
    inner = policy is not ApproxPolicy.EXACT
    # ladder rung j: Toffoli(controls[j+1], a[j-1] -> a[j]); rung 0 sits on top
    rungs = [_Tof(controls[j + 1], a[j - 1], a[j], inner) for j in range(m - 1, 0, -1)]
    top = _Tof(controls[0], controls[1], a[0], inner)
    flip = _Tof(controls[k - 1], a[m - 1], target, policy is ApproxPolicy.EVERYWHERE)
    gates: list = []
    if mode in (Mode.FULL, Mode.ACTION_ONLY):
        gates += _palindrome([flip] + rungs, top)
    if mode in (Mode.FULL, Mode.RESET_ONLY):
        gates += _palindrome(rungs, top)
    return gates


def mcx_gates(
    controls: Sequence[int],
    target: int,
    ancillas: Sequence[int] = (),
    mode: Mode = Mode.FULL,
    policy: ApproxPolicy = ApproxPolicy.WHERE_CANCELLED,
) -> list:
    """Gate list for an MCX, picking the cheapest applicable construction.

    Up to two controls need no ancilla; for those ``ACTION_ONLY`` is the whole
    gate and ``RESET_ONLY`` is empty.
    """
    controls, ancillas = list(controls), list(ancillas)
    _check_distinct(controls, [target], ancillas)
    if len(controls) <= 2:
        if mode is Mode.RESET_ONLY:
            return []
        return _mcx_small_gates(
            controls, target, approx=policy is ApproxPolicy.EVERYWHERE
        )
    if len(ancillas) < len(controls) - 2:
        raise NotEnoughAncillas(
            f"{len(controls)} controls need {len(controls) - 2} dirty ancillas, "
            f"got {len(ancillas)}"
        )
    return _chain_gates(controls, target, ancillas, mode, policy)


@dataclass(frozen=True)
class McxRequest:
    controls: tuple
    target: int
    dirty_ancillas: tuple = ()
    mode: Mode = Mode.FULL
    approx_policy: ApproxPolicy = ApproxPolicy.WHERE_CANCELLED
    width: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        object.__setattr__(self, "dirty_ancillas", tuple(self.dirty_ancillas))
        _check_distinct(self.controls, [self.target], self.dirty_ancillas)


def mcx_dirty_chain(req: McxRequest) -> Circuit:
    """k-controlled X (k >= 3) borrowing ``k - 2`` dirty ancillas.

    At most ``8k - 6`` CNOTs under ``WHERE_CANCELLED``.
    """
    k = len(req.controls)
    if k < 3:
        raise ValueError("mcx_dirty_chain needs at least three controls")
    gates = mcx_gates(req.controls, req.target, req.dirty_ancillas, req.mode, req.approx_policy)
    width = req.width or _width(req.controls, [req.target], req.dirty_ancillas)
    return Circuit(width, gates)


@dataclass
class OneDirtyParts:
    """The four MCX blocks of the one-dirty-qubit construction, in order
    ``top, bottom, top_inverse, bottom`` with the bottom block split into its
    action and reset halves."""

    top: list
    bottom_action: list
    bottom_reset: list
    top_inverse: list

    def gates(self) -> list:
        bottom = self.bottom_action + self.bottom_reset
        return self.top + bottom + self.top_inverse + bottom


def one_dirty_parts(
    controls: Sequence[int],
    target: int,
    dirty: int,
    approx_policy: ApproxPolicy = ApproxPolicy.EVERYWHERE,
) -> OneDirtyParts:
    controls = sorted(controls)
    _check_distinct(controls, [target, dirty])
    k = len(controls)
    if k < 3:
        raise ValueError("mcx_one_dirty needs at least three controls")
    n = k + 2
    m2 = -(-n // 2)
    m1 = n - m2 - 1
    top, rest = controls[:m1], controls[m1:]
    bottom = sorted(rest + [dirty])
    # top group borrows the bottom originals; the target is listed last and
    # never needed, which keeps the top block's diagonal off the target
    top_ancillas = rest + [target]
    bottom_policy = (
        ApproxPolicy.EXACT
        if approx_policy is ApproxPolicy.EXACT
        else ApproxPolicy.WHERE_CANCELLED
    )
    top_gates = mcx_gates(top, dirty, top_ancillas, Mode.FULL, approx_policy)
    width = _width(controls, [target, dirty])
    return OneDirtyParts(
        top=top_gates,
        bottom_action=mcx_gates(bottom, target, top, Mode.ACTION_ONLY, bottom_policy),
        bottom_reset=mcx_gates(bottom, target, top, Mode.RESET_ONLY, bottom_policy),
        top_inverse=inverse(Circuit(width, top_gates)).gates,
    )


def mcx_one_dirty(
    controls: Sequence[int],
    target: int,
    dirty: int,
    approx_policy: ApproxPolicy = ApproxPolicy.EVERYWHERE,
    width: int | None = None,
) -> Circuit:
    """k-controlled X using one extra qubit in an arbitrary state.

    Controls split into groups of ``m1`` and ``m2 - 1`` (``m2 = ceil(n/2)``,
    ``n = k + 2``); at most ``16n - 40`` CNOTs.
    """
    parts = one_dirty_parts(controls, target, dirty, approx_policy)
    return Circuit(width or _width(controls, [target, dirty]), parts.gates())
