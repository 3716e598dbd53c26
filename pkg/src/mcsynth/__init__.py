"""Linear-CNOT synthesis of multi-controlled SU(2) gates."""

from .circuit import Circuit, Cnot, SingleQubit, cnot_count, depth, to_qasm
from .mcsu2 import (
    DecompositionReport,
    McSu2Request,
    Method,
    decompose,
    mc_rx,
    mc_ry,
    mc_rz,
    mc_su2_baseline,
    mc_su2_general,
    mc_su2_real_main_diag,
    mc_su2_real_off_diag,
)
from .su2core import RealOffDiagForm

__all__ = [
    "Circuit",
    "Cnot",
    "SingleQubit",
    "cnot_count",
    "depth",
    "to_qasm",
    "DecompositionReport",
    "McSu2Request",
    "Method",
    "decompose",
    "mc_rx",
    "mc_ry",
    "mc_rz",
    "mc_su2_baseline",
    "mc_su2_general",
    "mc_su2_real_main_diag",
    "mc_su2_real_off_diag",
    "RealOffDiagForm",
]
__version__ = "0.1.0"
