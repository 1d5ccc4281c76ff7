"""Exception types shared across the synthesis pipeline."""


class SynthesisError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(SynthesisError, ValueError):
    """Two matrices with incompatible dimensions were combined."""


class BadDimension(SynthesisError, ValueError):
    """Input dimension is not a power of two (or is too small)."""


class NotHermitian(SynthesisError, ValueError):
    """Input matrix is not Hermitian within tolerance."""


class NotUnitary(SynthesisError, ValueError):
    """Input matrix is not unitary within tolerance."""


class ZeroOffDiagonal(SynthesisError, ValueError):
    """Rotation parameters were requested for a (near-)zero pivot entry."""


class RotationFailed(SynthesisError):
    """A rotation did not annihilate its pivot entry; indicates a parameter bug."""


class NoConvergence(SynthesisError):
    """Jacobi sweeps exhausted without reaching a diagonal matrix."""

    def __init__(self, residual: float, sweeps: int):
        super().__init__(
            f"off-diagonal norm {residual:.3e} still above threshold after {sweeps} sweep(s)"
        )
        self.residual = residual
        self.sweeps = sweeps


class DiagonalNotPM1(SynthesisError, ValueError):
    """A converged diagonal entry is not close to +1 or -1."""

    def __init__(self, index: int, value: complex):
        super().__init__(f"diagonal entry {index} is {value!r}, expected +1 or -1")
        self.index = index
        self.value = value


class VerificationFailed(SynthesisError):
    """Simulated circuit does not reproduce the input matrix within tolerance."""

    def __init__(self, error: float):
        super().__init__(f"verification error {error:.3e} exceeds tolerance")
        self.error = error


class NotHermitianUnitary(SynthesisError, ValueError):
    """A 2x2 gate is not a Hermitian unitary."""


class IsPlusMinusIdentity(SynthesisError, ValueError):
    """A 2x2 Hermitian unitary is (+/-)I and has no rotation form."""

    def __init__(self, sign: int):
        super().__init__(f"matrix is {'+' if sign > 0 else '-'}I")
        self.sign = sign


class IndexOutOfRange(SynthesisError, IndexError):
    """A qubit or basis-state index does not fit the given register size."""


class ParseError(SynthesisError, ValueError):
    """A text file (matrix or circuit) is malformed."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason
