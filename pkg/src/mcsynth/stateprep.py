"""Sparse state preparation with CVO-QRAM.

Qubit 0 is the auxiliary ``u`` (started in ``|1>`` by a leading X); pattern
character ``j`` lives on qubit ``j + 1``.  Each pattern moves amplitude
``x_k`` out of the ``u = 1`` branch with a multi-controlled

    U(x, g) = [[sqrt((g - |x|^2)/g),  x/sqrt(g)],
               [-conj(x)/sqrt(g),     sqrt((g - |x|^2)/g)]]

whose main diagonal is real, so it lowers through the real-main-diagonal
scheme.  ``g`` is the weight still left in the ``u = 1`` branch.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO, Union

import numpy as np

from . import sim
from .circuit import Circuit, Cnot, depth, x as x_gate
from .errors import (
    DuplicatePattern,
    InfeasibleDensity,
    InvalidWeight,
    NotNormalized,
)
from .mcsu2 import McSu2Request, Method, decompose

NORM_TOL = 1e-10

OPTIMIZED = "optimized"
BASELINE = "baseline"
METHODS = (OPTIMIZED, BASELINE)


@dataclass(frozen=True)
class SparsePattern:
    bits: str
    amplitude: complex

    def __post_init__(self):
        if not self.bits or set(self.bits) - {"0", "1"}:
            raise ValueError(f"pattern must be a non-empty bitstring, got {self.bits!r}")
        object.__setattr__(self, "amplitude", complex(self.amplitude))

    @property
    def ones(self) -> list[int]:
        return [j for j, b in enumerate(self.bits) if b == "1"]

    def index(self) -> int:
        """Basis index of ``|0>_u |bits>`` in the full register."""
        return sum(1 << (j + 1) for j in self.ones)


class GammaTracker:
    """Weight left in the ``u = 1`` branch: ``g_0 = 1``, ``g_k = g_{k-1} - |x_{k-1}|^2``.

    When the amplitudes are known up front the weights are taken as suffix
    sums instead of running differences.  Both agree in exact arithmetic, but
    the suffix form makes the last step an exact full transfer; the running
    difference leaves ~1e-16 behind, which the square root in ``u_matrix``
    turns into ~1e-8.
    """

    def __init__(self, amplitudes: Optional[Sequence[complex]] = None):
        self.k = 0
        self.gamma = 1.0
        self._suffix = None
        if amplitudes is not None:
            w = np.abs(np.asarray(amplitudes, dtype=complex)) ** 2
            self._suffix = np.cumsum(w[::-1])[::-1].tolist() + [0.0]
            self.gamma = self._suffix[0]

    def step(self, x: complex) -> float:
        """Return the gamma for ``x`` and advance."""
        g = self.gamma
        self.k += 1
        if self._suffix is not None:
            self.gamma = self._suffix[self.k]
        else:
            self.gamma = g - abs(x) ** 2
        return g


def u_matrix(x: complex, gamma: float) -> np.ndarray:
    """The SU(2) transfer gate for amplitude ``x`` out of weight ``gamma``."""
    x = complex(x)
    w = abs(x) ** 2
    if not (0 < gamma <= 1 + NORM_TOL) or w > gamma + NORM_TOL:
        raise InvalidWeight(f"need 0 < |x|^2 <= gamma <= 1, got |x|^2={w}, gamma={gamma}")
    diag = math.sqrt(max(gamma - w, 0.0) / gamma)
    off = x / math.sqrt(gamma)
    # rescale so rounding at full transfer cannot break unitarity
    s = math.sqrt(diag * diag + abs(off) ** 2)
    diag, off = diag / s, off / s
    return np.array([[diag, off], [-off.conjugate(), diag]], dtype=complex)


def validate(patterns: Sequence[SparsePattern]) -> None:
    if not patterns:
        raise NotNormalized("no patterns")
    lengths = {len(p.bits) for p in patterns}
    if len(lengths) != 1:
        raise ValueError(f"patterns have different lengths: {sorted(lengths)}")
    seen = set()
    for p in patterns:
        if p.bits in seen:
            raise DuplicatePattern(f"pattern {p.bits} appears twice")
        seen.add(p.bits)
    total = sum(abs(p.amplitude) ** 2 for p in patterns)
    if abs(total - 1) > NORM_TOL:
        raise NotNormalized(f"sum of |x|^2 is {total!r}, expected 1")


def load_order(patterns: Sequence[SparsePattern]) -> list[SparsePattern]:
    """Stable sort by number of ones.

    A later multi-controlled U also fires on any already-stored pattern that
    contains all of its controls, so supersets must come after their subsets.
    """
    return sorted(patterns, key=lambda p: p.bits.count("1"))


@dataclass(frozen=True)
class CvoReport:
    cnot_count: int
    depth: int
    method: str
    blocks: tuple  # DecompositionReport per pattern, in load order


def _method(method: Union[str, Method]) -> Method:
    if isinstance(method, Method):
        return method
    if method == OPTIMIZED:
        return Method.AUTO
    if method == BASELINE:
        return Method.BASELINE
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def cvo_qram_circuit(
    patterns: Sequence[SparsePattern],
    width: Optional[int] = None,
    method: Union[str, Method] = OPTIMIZED,
) -> tuple[Circuit, CvoReport]:
    """Circuit taking ``|0...0>`` to ``|0>_u (sum_k x_k |p_k>)``."""
    validate(patterns)
    n = len(patterns[0].bits) + 1
    if width is not None and width != n:
        raise ValueError(f"width {width} does not match pattern length + 1 = {n}")
    m = _method(method)
    c = Circuit(n, [x_gate(0)])
    order = load_order(patterns)
    tracker = GammaTracker([p.amplitude for p in order])
    blocks = []
    for p in order:
        gamma = tracker.step(p.amplitude)
        u = u_matrix(p.amplitude, gamma)
        ctrl = [j + 1 for j in p.ones]
        fan = [Cnot(0, q) for q in ctrl]
        sub, rep = decompose(McSu2Request(ctrl, 0, u, m, n))
        c.extend(fan).extend(sub.gates).extend(fan)
        blocks.append(rep)
    name = method if isinstance(method, str) else method.value
    return c, CvoReport(c.cnot_count, depth(c), name, tuple(blocks))


def target_state(patterns: Sequence[SparsePattern]) -> np.ndarray:
    n = len(patterns[0].bits) + 1
    psi = np.zeros(1 << n, dtype=complex)
    for p in patterns:
        psi[p.index()] = p.amplitude
    return psi


def fidelity(patterns: Sequence[SparsePattern], c: Circuit) -> float:
    """``|<target|prepared>|`` from a statevector run on ``|0...0>``."""
    out = sim.apply(c, sim.basis_state(c.width))
    return float(abs(np.vdot(target_state(patterns), out)))


def random_double_sparse(
    n: int, s: int, density: float, seed, max_tries: int = 10_000
) -> list[SparsePattern]:
    """``2**s`` distinct random patterns of length ``n - 1`` with i.i.d.
    ones at rate ``density`` and random complex normalized amplitudes."""
    if not 0 < density < 1:
        raise ValueError("density must lie strictly between 0 and 1")
    if n < 2 or s < 0:
        raise ValueError("need n >= 2 and s >= 0")
    count = 1 << s
    if count > 1 << (n - 1):
        raise InfeasibleDensity(f"2^{s} patterns do not fit in {n - 1} bits")
    rng = np.random.default_rng(seed)
    found: dict[str, None] = {}
    tries = 0
    while len(found) < count:
        if tries >= max_tries:
            raise InfeasibleDensity(
                f"only {len(found)} of {count} distinct patterns after {tries} draws"
            )
        bits = "".join("1" if b else "0" for b in rng.random(n - 1) < density)
        found.setdefault(bits)
        tries += 1
    amps = rng.normal(size=count) + 1j * rng.normal(size=count)
    amps /= np.linalg.norm(amps)
    return [SparsePattern(b, a) for b, a in zip(found, amps)]


@dataclass(frozen=True)
class SweepRow:
    n: int
    method: str
    mean_cnots: float
    std_cnots: float
    seeds: int


CSV_HEADER = ("n", "method", "mean_cnots", "std_cnots", "seeds")


def _seed(n: int, i: int) -> list[int]:
    return [n, i]


def benchmark_sweep(
    n_range: Iterable[int],
    s: int,
    density: float,
    seeds: int,
    methods: Sequence[str] = METHODS,
) -> list[SweepRow]:
    """Mean and spread of CVO-QRAM CNOT counts per ``(n, method)``.

    The same ``seeds`` random states are used for every method.
    """
    rows: list[SweepRow] = []
    if seeds <= 0:
        return rows
    for n in n_range:
        states = [random_double_sparse(n, s, density, _seed(n, i)) for i in range(seeds)]
        for m in methods:
            counts = np.array([cvo_qram_circuit(p, n, m)[0].cnot_count for p in states])
            rows.append(SweepRow(n, m, float(counts.mean()), float(counts.std()), seeds))
    return rows


def write_csv(rows: Iterable[SweepRow], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.n, r.method, f"{r.mean_cnots:.4f}", f"{r.std_cnots:.4f}", r.seeds])


def to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()
