"""Complex Jacobi diagonalization of Hermitian unitaries.

Each elimination conjugates the working matrix by a two-level complex
rotation Q' = R(-alpha) G(theta), where G is a real Givens rotation in the
half-angle convention and R is a phase shift. For a Hermitian unitary input
the process terminates on a diagonal of +/-1 entries.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    BadDimension,
    DiagonalNotPM1,
    NoConvergence,
    NotHermitian,
    NotUnitary,
    RotationFailed,
    ZeroOffDiagonal,
)
from .matrices import (
    DEFAULT_TOLERANCES,
    Tolerances,
    as_matrix,
    is_hermitian,
    is_unitary,
    off_norm,
)

_HALF_PI = math.pi / 2.0


class Ordering(Enum):
    ROW_MAJOR = "row-major"
    PARALLEL = "parallel"


@dataclass(frozen=True)
class RotationStep:
    """One elimination: zero entry (p, q) with angles (theta, alpha).

    ``has_phase`` records whether the pivot entry was genuinely complex; real
    pivots need no phase factor and use the signed real angle formula.
    """

    p: int
    q: int
    theta: float
    alpha: float
    has_phase: bool

    def __post_init__(self):
        if not (0 <= self.p < self.q):
            raise ValueError(f"need 0 <= p < q, got ({self.p}, {self.q})")
        if abs(self.theta) > _HALF_PI + 1e-12:
            raise ValueError(f"theta {self.theta} outside [-pi/2, pi/2]")


@dataclass(frozen=True)
class JacobiResult:
    steps: tuple[RotationStep, ...]
    signs: tuple[int, ...]
    sweeps: int
    residual: float
    sweep_rotations: tuple[int, ...] = ()


def rotation_params(
    app: float, aqq: float, apq: complex, zero_tol: float = DEFAULT_TOLERANCES.zero_tol
) -> tuple[float, float, bool]:
    """Angles (theta, alpha) that zero the pivot, plus whether a phase is needed.

    For a real pivot, tan(theta) = -2*apq / (app - aqq) with the signed value
    and no phase factor. For a complex pivot, tan(theta) = -2*|apq| /
    (app - aqq) and alpha = arg(apq). Theta is folded into [-pi/2, pi/2].
    """
    apq = complex(apq)
    magnitude = abs(apq)
    if magnitude <= zero_tol:
        raise ZeroOffDiagonal(f"pivot magnitude {magnitude:.3e} below {zero_tol:.3e}")
    if abs(apq.imag) <= zero_tol:
        numerator = -2.0 * apq.real
        alpha = 0.0
        has_phase = False
    else:
        numerator = -2.0 * magnitude
        alpha = math.atan2(apq.imag, apq.real)
        has_phase = True
    theta = math.atan2(numerator, app - aqq)
    if theta < -_HALF_PI:
        theta += math.pi
    elif theta > _HALF_PI:
        theta -= math.pi
    return theta, alpha, has_phase


def _rotate_inplace(m: np.ndarray, step: RotationStep, zero_tol: float) -> None:
    """Conjugate ``m`` by the two-level Q' at (p, q), touching only those rows/cols."""
    p, q = step.p, step.q
    c = math.cos(step.theta / 2.0)
    s = math.sin(step.theta / 2.0)
    e = cmath.exp(-1j * step.alpha) if step.has_phase else 1.0

    # columns of Q': (c, -e s) and (s, e c)
    colp = m[:, p].copy()
    colq = m[:, q].copy()
    m[:, p] = c * colp - (e * s) * colq
    m[:, q] = s * colp + (e * c) * colq
    # rows of Q'^dagger: (c, -conj(e) s) and (s, conj(e) c)
    ec = e.conjugate() if step.has_phase else 1.0
    rowp = m[p, :].copy()
    rowq = m[q, :].copy()
    m[p, :] = c * rowp - (ec * s) * rowq
    m[q, :] = s * rowp + (ec * c) * rowq

    if abs(m[p, q]) > zero_tol:
        raise RotationFailed(
            f"pivot ({p}, {q}) still {abs(m[p, q]):.3e} after rotation"
        )
    m[p, q] = 0.0
    m[q, p] = 0.0
    m[p, p] = m[p, p].real
    m[q, q] = m[q, q].real


def apply_rotation(
    a, step: RotationStep, zero_tol: float = DEFAULT_TOLERANCES.zero_tol
) -> np.ndarray:
    """Return Q'^dagger a Q' for the step's two-level rotation."""
    m = as_matrix(a).copy()
    if step.q >= m.shape[0]:
        raise BadDimension(f"step indices ({step.p}, {step.q}) exceed dim {m.shape[0]}")
    _rotate_inplace(m, step, zero_tol)
    return m


def step_factors(step: RotationStep, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Dense phase factor R(-alpha) and rotation factor G(theta) for one step.

    The product R @ G is the two-level Q' embedding; R is the identity when
    no phase is needed.
    """
    if step.q >= dim:
        raise BadDimension(f"step indices ({step.p}, {step.q}) exceed dim {dim}")
    r = np.eye(dim, dtype=complex)
    if step.has_phase:
        r[step.q, step.q] = cmath.exp(-1j * step.alpha)
    g = np.eye(dim, dtype=complex)
    c = math.cos(step.theta / 2.0)
    s = math.sin(step.theta / 2.0)
    g[step.p, step.p] = c
    g[step.p, step.q] = s
    g[step.q, step.p] = -s
    g[step.q, step.q] = c
    return r, g


def two_level_matrix(step: RotationStep, dim: int) -> np.ndarray:
    """Dense embedding of Q' = R(-alpha) G(theta) at (p, q)."""
    r, g = step_factors(step, dim)
    return r @ g


def ordering_row_major(dim: int) -> list[tuple[int, int]]:
    """All index pairs p < q in lexicographic order."""
    if dim < 2:
        raise BadDimension(f"need dim >= 2, got {dim}")
    return [(p, q) for p in range(dim) for q in range(p + 1, dim)]


def ordering_parallel(dim: int) -> list[list[tuple[int, int]]]:
    """Round-robin schedule: dim-1 rounds of dim/2 pairwise-disjoint pairs.

    Rotations within one round touch disjoint index sets and could run
    concurrently; rounds partition the full pair set.
    """
    if dim < 2 or dim & (dim - 1):
        raise BadDimension(f"need a power-of-two dim >= 2, got {dim}")
    m = dim - 1
    rounds: list[list[tuple[int, int]]] = []
    for r in range(m):
        pairs = []
        for i in range(m):
            j = (r - i) % m
            if i < j:
                pairs.append((i, j))
        k = next(k for k in range(m) if (2 * k) % m == r)
        pairs.append((k, dim - 1))
        rounds.append(sorted(pairs))
    rounds.reverse()
    return rounds


def _pair_sequence(dim: int, ordering: Ordering) -> list[tuple[int, int]]:
    if ordering is Ordering.PARALLEL:
        return [pair for rnd in ordering_parallel(dim) for pair in rnd]
    return ordering_row_major(dim)


def snap_signs(
    diag_entries, sign_tol: float = DEFAULT_TOLERANCES.sign_tol
) -> tuple[int, ...]:
    """Map converged diagonal entries to exact +/-1."""
    signs = []
    for index, value in enumerate(diag_entries):
        z = complex(value)
        if abs(z - 1.0) <= sign_tol:
            signs.append(1)
        elif abs(z + 1.0) <= sign_tol:
            signs.append(-1)
        else:
            raise DiagonalNotPM1(index, z)
    return tuple(signs)


def diagonalize(
    h,
    ordering: Ordering = Ordering.ROW_MAJOR,
    tol: Tolerances | None = None,
    max_sweeps: int = 30,
) -> JacobiResult:
    """Drive the off-diagonal norm of a Hermitian unitary to (near) zero.

    Sweeps repeat over the chosen pair ordering, skipping already-zero
    entries, until off_norm <= zero_tol * dim. Cyclic Jacobi can refill
    previously zeroed entries, hence the multi-sweep loop; convergence is
    quadratic so a handful of sweeps suffices in practice.
    """
    tol = tol or DEFAULT_TOLERANCES
    m = as_matrix(h)
    dim = m.shape[0]
    if dim < 2 or dim & (dim - 1):
        raise BadDimension(f"need a power-of-two dim >= 2, got {dim}")
    if not is_hermitian(m, tol.hermitian_tol):
        raise NotHermitian(f"input deviates from its adjoint by more than {tol.hermitian_tol}")
    if not is_unitary(m, tol.unitary_tol):
        raise NotUnitary(f"input deviates from unitarity by more than {tol.unitary_tol}")

    pairs = _pair_sequence(dim, ordering)
    work = m.copy()
    threshold = tol.zero_tol * dim
    steps: list[RotationStep] = []
    per_sweep: list[int] = []
    residual = off_norm(work)
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        executed = 0
        for p, q in pairs:
            if abs(work[p, q]) <= tol.zero_tol:
                continue
            theta, alpha, has_phase = rotation_params(
                work[p, p].real, work[q, q].real, complex(work[p, q]), tol.zero_tol
            )
            step = RotationStep(p, q, theta, alpha, has_phase)
            _rotate_inplace(work, step, tol.zero_tol)
            steps.append(step)
            executed += 1
        per_sweep.append(executed)
        residual = off_norm(work)
        if residual <= threshold:
            break
    if residual > threshold:
        raise NoConvergence(residual, sweeps)
    signs = snap_signs(np.diagonal(work), tol.sign_tol)
    return JacobiResult(tuple(steps), signs, sweeps, residual, tuple(per_sweep))
