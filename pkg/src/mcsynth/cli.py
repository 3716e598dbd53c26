"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import mcsu2, sim, stateprep, su2core
from .circuit import Circuit, SingleQubit, to_qasm
from .errors import SynthesisError, TooWide

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

METHODS = {m.value: m for m in mcsu2.Method}


class UsageError(Exception):
    pass


def _parse_entries(raw: Sequence[str]) -> np.ndarray:
    tokens = [t for chunk in raw for t in chunk.replace(",", " ").split()]
    if len(tokens) != 8:
        raise UsageError(f"--entries needs 8 reals (re/im interleaved, row-major), got {len(tokens)}")
    try:
        vals = [float(t) for t in tokens]
    except ValueError as exc:
        raise UsageError(f"--entries: {exc}") from None
    c = [complex(vals[i], vals[i + 1]) for i in range(0, 8, 2)]
    return np.array([[c[0], c[1]], [c[2], c[3]]])


def _gate_matrix(args) -> np.ndarray:
    if args.gate == "su2":
        if args.entries is None:
            raise UsageError("--gate su2 requires --entries")
        m = _parse_entries(args.entries)
        try:
            return su2core.require_su2(m)
        except SynthesisError as exc:
            raise UsageError(f"invalid SU(2) matrix: {exc}") from None
    if args.angle is None:
        raise UsageError(f"--gate {args.gate} requires --angle")
    if not math.isfinite(args.angle):
        raise UsageError("--angle must be finite")
    return {"rx": su2core.rx, "ry": su2core.ry, "rz": su2core.rz}[args.gate](args.angle)


def _build(args, k: int) -> tuple[Circuit, mcsu2.DecompositionReport, np.ndarray]:
    """Target is qubit 0, controls are qubits 1..k."""
    v = _gate_matrix(args)
    method = METHODS[args.method]
    controls = list(range(1, k + 1))
    if args.gate != "su2" and method is mcsu2.Method.AUTO:
        fn = {"rx": mcsu2.mc_rx, "ry": mcsu2.mc_ry, "rz": mcsu2.mc_rz}[args.gate]
        c, rep = fn(controls, 0, args.angle)
    else:
        c, rep = mcsu2.decompose(mcsu2.McSu2Request(controls, 0, v, method))
    return c, rep, v


def _add_gate_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gate", choices=["rx", "ry", "rz", "su2"], required=True)
    p.add_argument("--angle", type=float)
    p.add_argument(
        "--entries",
        nargs="+",
        metavar="R",
        help="8 reals: re/im of v00 v01 v10 v11",
    )
    p.add_argument("--method", choices=sorted(METHODS), default="auto")


def cmd_decompose(args) -> int:
    if args.controls < 0:
        raise UsageError("--controls must be non-negative")
    c, rep, _ = _build(args, args.controls)
    bound = "n/a" if rep.bound is None else str(rep.bound)
    print(f"qubits        {c.width}")
    print(f"method        {rep.method_used.value}")
    print(f"cnot_count    {rep.cnot_count}")
    print(f"depth         {rep.depth}")
    print(f"bound         {bound}")
    print(f"bound_formula {rep.bound_formula}")
    return EXIT_OK


def _corrupt(c: Circuit) -> Circuit:
    return Circuit(c.width, c.gates + [SingleQubit(0, su2core.ry(0.3), "fault")])


def cmd_verify(args) -> int:
    lo, hi = args.min_width, args.max_width
    if lo < 2 or hi < lo:
        raise UsageError("need 2 <= --min-width <= --max-width")
    if hi > sim.MAX_UNITARY_WIDTH:
        raise TooWide(f"width {hi} exceeds dense limit {sim.MAX_UNITARY_WIDTH}")
    ok_all = True
    for n in range(lo, hi + 1):
        c, rep, v = _build(args, n - 1)
        if args.inject_fault:
            c = _corrupt(c)
        ideal = sim.ideal_mc_unitary(n, list(range(1, n)), 0, v)
        ok, err, _ = sim.equiv_phase(sim.circuit_unitary(c), ideal, args.tol)
        ok_all &= ok
        print(f"n={n:<3d} cnots={rep.cnot_count:<5d} residual={err:.3e} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok_all else EXIT_FAIL


MCSU2_HEADER = ("n", "real_diag", "general", "baseline", "bound_16n_40", "bound_20n", "bound_28n")


def _bench_mcsu2(args, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(MCSU2_HEADER)
    for n in range(args.n_min, args.n_max + 1):
        controls = list(range(1, n))
        counts = {"real": 0, "general": 0, "baseline": 0}
        for i in range(args.seeds):
            rng = np.random.default_rng([n, i])
            theta = float(rng.uniform(0.1, 2 * math.pi - 0.1))
            v = su2core.random_su2(rng)
            counts["real"] = max(counts["real"], mcsu2.mc_rz(controls, 0, theta)[1].cnot_count)
            counts["general"] = max(counts["general"], mcsu2.mc_su2_general(controls, 0, v)[1].cnot_count)
            counts["baseline"] = max(counts["baseline"], mcsu2.mc_su2_baseline(controls, 0, v)[1].cnot_count)
        w.writerow([
            n, counts["real"], counts["general"], counts["baseline"],
            mcsu2.bound_16n_40(n), mcsu2.bound_20n(n), mcsu2.bound_28n(n),
        ])


def _bench_cvoqram(args, out) -> None:
    rows = stateprep.benchmark_sweep(
        range(args.n_min, args.n_max + 1), args.s, args.density, args.seeds
    )
    stateprep.write_csv(rows, out)


def cmd_bench(args) -> int:
    if args.seeds < 0:
        raise UsageError("--seeds must be non-negative")
    if args.mode == "mcsu2" and args.seeds == 0:
        raise UsageError("mcsu2 bench needs at least one seed")
    run = _bench_mcsu2 if args.mode == "mcsu2" else _bench_cvoqram
    if args.out == "-":
        run(args, sys.stdout)
        return EXIT_OK
    try:
        with open(args.out, "w", newline="") as fh:
            run(args, fh)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc.strerror}") from None
    print(f"wrote {args.out}", file=sys.stderr)
    return EXIT_OK


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def cmd_qasm(args) -> int:
    c, _, _ = _build(args, args.controls)
    _write_text(args.out, to_qasm(c))
    return EXIT_OK


def read_amplitudes(path: str) -> list[stateprep.SparsePattern]:
    """Parse ``bitstring,re,im`` lines; ``#`` starts a comment."""
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    out = []
    for no, line in enumerate(lines, 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = [p.strip() for p in body.split(",")]
        try:
            if len(parts) != 3:
                raise ValueError(f"expected 3 fields, got {len(parts)}")
            out.append(stateprep.SparsePattern(parts[0], complex(float(parts[1]), float(parts[2]))))
        except ValueError as exc:
            raise UsageError(f"{path}: line {no}: {exc}") from None
    if not out:
        raise UsageError(f"{path}: no amplitudes found")
    return out


def cmd_prepare(args) -> int:
    pats = read_amplitudes(args.input)
    norm = math.sqrt(sum(abs(p.amplitude) ** 2 for p in pats))
    if abs(norm - 1) > stateprep.NORM_TOL:
        if not args.normalize:
            raise UsageError(f"amplitudes have norm {norm:.12g}; pass --normalize to rescale")
        if norm == 0:
            raise UsageError("all amplitudes are zero")
        print(f"warning: rescaled amplitudes by 1/{norm:.12g}", file=sys.stderr)
        pats = [stateprep.SparsePattern(p.bits, p.amplitude / norm) for p in pats]
    c, rep = stateprep.cvo_qram_circuit(pats, method=args.method)
    if args.qasm:
        _write_text(args.qasm, to_qasm(c))
    fid = stateprep.fidelity(pats, c)
    ok = fid > 1 - args.tol
    print(f"qubits     {c.width}")
    print(f"patterns   {len(pats)}")
    print(f"method     {args.method}")
    print(f"cnot_count {rep.cnot_count}")
    print(f"depth      {rep.depth}")
    print(f"fidelity   {fid:.15f} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcsynth", description="Multi-controlled SU(2) gate synthesis."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="lower a multi-controlled gate and report counts")
    _add_gate_args(p)
    p.add_argument("--controls", type=int, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check decompositions against dense ideal unitaries")
    _add_gate_args(p)
    p.add_argument("--min-width", type=int, default=3)
    p.add_argument("--max-width", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="CNOT-count sweeps as CSV")
    p.add_argument("mode", choices=["mcsu2", "cvoqram"])
    p.add_argument("--n-min", type=int, default=6)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--seeds", type=int, default=None)
    p.add_argument("--s", type=int, default=4, help="log2 of the number of nonzero amplitudes")
    p.add_argument("--density", type=float, default=0.2)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("qasm", help="export a decomposition as OpenQASM 2.0")
    _add_gate_args(p)
    p.add_argument("--controls", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_qasm)

    p = sub.add_parser("prepare", help="CVO-QRAM circuit for a sparse state file")
    p.add_argument("input", help="file of 'bitstring,re,im' lines")
    p.add_argument("--method", choices=stateprep.METHODS, default=stateprep.OPTIMIZED)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--qasm", metavar="PATH", help="also write the circuit as QASM ('-' for stdout)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_prepare)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seeds", 0) is None:
        args.seeds = 1 if args.mode == "mcsu2" else 30
    try:
        return args.func(args)
    except (UsageError, SynthesisError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
