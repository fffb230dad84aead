"""Architecture-aware synthesis of CX/RZ phase polynomial circuits."""

from .arch import Architecture, ArchitectureError, load_architecture, non_cutting_vertices, steiner_tree
from .circuit import CX, RZ, Circuit, QasmError, cx_count, cx_depth, extract_phase_polynomial, from_qasm, to_qasm
from .gf2 import BitMatrix, BitVector, SingularMatrixError, invert, multiply, row_add
from .phasepoly import (
    DomainError,
    ParityMatrix,
    PhasePolynomial,
    from_terms,
    parse_phasepoly,
    random_phase_polynomial,
    render_phasepoly,
    to_parity_matrix,
)
from .steiner_gauss import simulate_linear_action, steiner_gauss
from .synth import ConnectivityViolation, synthesize

__version__ = "0.1.0"

__all__ = [
    "Architecture",
    "ArchitectureError",
    "BitMatrix",
    "BitVector",
    "CX",
    "Circuit",
    "ConnectivityViolation",
    "DomainError",
    "ParityMatrix",
    "PhasePolynomial",
    "QasmError",
    "RZ",
    "SingularMatrixError",
    "cx_count",
    "cx_depth",
    "extract_phase_polynomial",
    "from_qasm",
    "from_terms",
    "invert",
    "load_architecture",
    "multiply",
    "non_cutting_vertices",
    "parse_phasepoly",
    "random_phase_polynomial",
    "render_phasepoly",
    "row_add",
    "simulate_linear_action",
    "steiner_gauss",
    "steiner_tree",
    "synthesize",
    "to_parity_matrix",
    "to_qasm",
]
