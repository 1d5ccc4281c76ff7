"""Synthesis of Hermitian unitary matrices into elementary quantum-gate circuits.

The pipeline: complex Jacobi rotations diagonalize a Hermitian unitary into
an ordered rotation log plus a +/-1 sign diagonal; each rotation becomes
multi-controlled RY/PHASE gates via gray-code ladders; the diagonal becomes
multi-controlled Z gates through its GF(2) normal form; rewrite passes
strip redundant controls and cancel inverse pairs. Everything is verified
by dense simulation.

Bit convention throughout: qubit 0 is the MOST significant bit of a
basis-state index (the top wire).
"""

from . import errors
from .baselines import (
    H2Params,
    TABULATED_MCU_COUNTS,
    barenco_cu,
    formula_mcu_counts,
    h2_matrix,
    h2_params,
    jacobi_cu,
    qsd_cu,
)
from .circuit import (
    Circuit,
    Gate,
    GateKind,
    counts,
    embed,
    gate_matrix,
    inverse,
    load_circuit,
    parse as parse_circuit,
    save_circuit,
    serialize as serialize_circuit,
    simulate,
)
from .diagonal import ZTermSet, anf_decompose, emit_diag_circuit, sign_to_bits, synthesize_sign_diagonal
from .jacobi import (
    JacobiResult,
    Ordering,
    RotationStep,
    apply_rotation,
    diagonalize,
    ordering_parallel,
    ordering_row_major,
    rotation_params,
    snap_signs,
    step_factors,
    two_level_matrix,
)
from .matrices import (
    DEFAULT_TOLERANCES,
    Tolerances,
    dagger,
    format_matrix,
    is_hermitian,
    is_unitary,
    load_matrix,
    mat_mul,
    max_abs_diff,
    off_norm,
    parse_matrix,
    save_matrix,
    tensor,
)
from .optimize import (
    OptLevel,
    cancel_adjacent_inverses,
    optimize,
    rewrite_cz_cnot,
    strip_conjugate_controls,
)
from .twolevel import (
    GrayPath,
    SynthesisReport,
    emit_two_level,
    gray_path,
    states_to_target_control,
    synthesize,
    target_control_to_states,
)

__version__ = "0.1.0"
