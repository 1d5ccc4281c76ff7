"""Dense complex matrix arithmetic, predicates, and the matrix text format.

Matrices are plain numpy arrays of dtype complex128 in row-major order.
All comparisons use absolute tolerances; see :class:`Tolerances` for defaults.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, ParseError


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances used throughout the pipeline."""

    hermitian_tol: float = 1e-10
    unitary_tol: float = 1e-10
    zero_tol: float = 1e-12
    sign_tol: float = 1e-8
    verify_tol: float = 1e-9

    def __post_init__(self):
        for name, value in vars(self).items():
            if not (value > 0.0 and math.isfinite(value)):
                raise ValueError(f"{name} must be a positive finite number, got {value}")


DEFAULT_TOLERANCES = Tolerances()


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex matrix, validating shape and finiteness."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T.copy()


def tensor(a, b) -> np.ndarray:
    """Kronecker product; result dimension is the product of the inputs'."""
    return np.kron(as_matrix(a), as_matrix(b))


def is_hermitian(a, tol: float = DEFAULT_TOLERANCES.hermitian_tol) -> bool:
    m = as_matrix(a)
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def is_unitary(a, tol: float = DEFAULT_TOLERANCES.unitary_tol) -> bool:
    m = as_matrix(a)
    product = m @ m.conj().T
    return float(np.max(np.abs(product - np.eye(m.shape[0])))) <= tol


def off_norm(a) -> float:
    """Frobenius norm of the off-diagonal part (complex moduli)."""
    m = as_matrix(a)
    off = m - np.diag(np.diagonal(m))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def max_abs_diff(a, b) -> float:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot compare {a.shape} with {b.shape}")
    return float(np.max(np.abs(a - b)))


# --- matrix text format ---------------------------------------------------
#
#   # optional comment lines
#   dim D
#   re,im re,im ... (D tokens per row, D rows)
#
# Writers emit 17 significant digits so values round-trip bit exactly.


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def format_matrix(a) -> str:
    m = as_matrix(a)
    lines = [f"dim {m.shape[0]}"]
    for row in m:
        lines.append(" ".join(f"{_fmt(z.real)},{_fmt(z.imag)}" for z in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    dim = None
    rows: list[list[complex]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if dim is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise ParseError(lineno, f"expected 'dim D' header, got {line!r}")
            try:
                dim = int(parts[1])
            except ValueError:
                raise ParseError(lineno, f"bad dimension {parts[1]!r}") from None
            if dim < 1:
                raise ParseError(lineno, f"dimension must be >= 1, got {dim}")
            continue
        tokens = line.split()
        if len(tokens) != dim:
            raise ParseError(lineno, f"expected {dim} entries, got {len(tokens)}")
        row = []
        for tok in tokens:
            pieces = tok.split(",")
            if len(pieces) != 2:
                raise ParseError(lineno, f"bad entry {tok!r}, expected 're,im'")
            try:
                row.append(complex(float(pieces[0]), float(pieces[1])))
            except ValueError:
                raise ParseError(lineno, f"bad number in entry {tok!r}") from None
        rows.append(row)
        if len(rows) > dim:
            raise ParseError(lineno, f"more than {dim} rows")
    if dim is None:
        raise ParseError(1, "empty matrix file")
    if len(rows) != dim:
        raise ParseError(1, f"expected {dim} rows, got {len(rows)}")
    return as_matrix(np.array(rows, dtype=complex))


def load_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text())


def save_matrix(path, a) -> None:
    Path(path).write_text(format_matrix(a))
