"""Controlled-gate circuit IR with exact matrix semantics.

Bit convention: qubit 0 is the MOST significant bit of a basis-state index
(the top wire). The opposite convention is common elsewhere, so every index
computation in this package goes through the helpers here.

Matrix semantics: the LAST gate in time is the LEFTMOST matrix factor, so
``simulate`` left-multiplies gate embeddings in list order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import IndexOutOfRange, ParseError

_SQRT1_2 = 1.0 / math.sqrt(2.0)


class GateKind(Enum):
    RY = "RY"        # rotation about y, half-angle convention
    PHASE = "PHASE"  # diag(1, e^{i a})
    RZ = "RZ"        # diag(e^{-i t/2}, e^{i t/2})
    X = "X"
    Y = "Y"
    Z = "Z"
    H = "H"
    S = "S"
    SDG = "SDG"


PARAMETRIC_KINDS = frozenset({GateKind.RY, GateKind.PHASE, GateKind.RZ})
SELF_INVERSE_KINDS = frozenset({GateKind.X, GateKind.Y, GateKind.Z, GateKind.H})


def gate_matrix(kind: GateKind, param: float | None = None) -> np.ndarray:
    """Exact 2x2 matrix of a gate kind (angle required for parametric kinds)."""
    if kind in PARAMETRIC_KINDS:
        if param is None:
            raise ValueError(f"{kind.value} requires an angle")
        if kind is GateKind.RY:
            c, s = math.cos(param / 2.0), math.sin(param / 2.0)
            return np.array([[c, s], [-s, c]], dtype=complex)
        if kind is GateKind.PHASE:
            return np.array([[1.0, 0.0], [0.0, cmath.exp(1j * param)]], dtype=complex)
        return np.array(
            [[cmath.exp(-0.5j * param), 0.0], [0.0, cmath.exp(0.5j * param)]],
            dtype=complex,
        )
    if param is not None:
        raise ValueError(f"{kind.value} takes no angle")
    if kind is GateKind.X:
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if kind is GateKind.Y:
        return np.array([[0, -1j], [1j, 0]], dtype=complex)
    if kind is GateKind.Z:
        return np.array([[1, 0], [0, -1]], dtype=complex)
    if kind is GateKind.H:
        return np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=complex)
    if kind is GateKind.S:
        return np.array([[1, 0], [0, 1j]], dtype=complex)
    return np.array([[1, 0], [0, -1j]], dtype=complex)  # SDG


@dataclass(frozen=True, slots=True)
class Gate:
    """One gate: a kind applied to a target, fired by signed controls.

    ``controls`` holds (qubit, positive) pairs; a positive control fires on
    |1>, a negative one on |0>. Controls are kept sorted by qubit index.
    """

    kind: GateKind
    target: int
    controls: tuple[tuple[int, bool], ...] = ()
    param: float | None = None

    def __post_init__(self):
        if self.target < 0:
            raise ValueError(f"negative target {self.target}")
        ctrls = self.controls
        if any(ctrls[i][0] >= ctrls[i + 1][0] for i in range(len(ctrls) - 1)):
            ctrls = tuple(sorted(ctrls))
            object.__setattr__(self, "controls", ctrls)
        seen = set()
        for q, _ in ctrls:
            if q in seen:
                raise ValueError("duplicate control qubits")
            seen.add(q)
        if self.target in seen:
            raise ValueError(f"target {self.target} also listed as control")
        if self.kind in PARAMETRIC_KINDS:
            if self.param is None or not math.isfinite(self.param):
                raise ValueError(f"{self.kind.value} requires a finite angle")
        elif self.param is not None:
            raise ValueError(f"{self.kind.value} takes no angle")

    def matrix(self) -> np.ndarray:
        return gate_matrix(self.kind, self.param)


@dataclass(frozen=True)
class Circuit:
    """Time-ordered gate list on ``n_qubits`` wires plus a global phase."""

    n_qubits: int
    gates: tuple[Gate, ...] = ()
    global_phase: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("need at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "global_phase", complex(self.global_phase))
        if abs(abs(self.global_phase) - 1.0) > 1e-12:
            raise ValueError(f"global phase {self.global_phase} is not unit modulus")
        for g in self.gates:
            _check_indices(g, self.n_qubits)

    def __len__(self) -> int:
        return len(self.gates)


def _check_indices(gate: Gate, n: int) -> None:
    if gate.target >= n:
        raise IndexOutOfRange(f"target {gate.target} outside {n}-qubit register")
    for q, _ in gate.controls:
        if q >= n:
            raise IndexOutOfRange(f"control {q} outside {n}-qubit register")


@lru_cache(maxsize=65536)
def _gate_entries(kind: GateKind, param: float | None) -> tuple[complex, complex, complex, complex]:
    m = gate_matrix(kind, param)
    return complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1])


@lru_cache(maxsize=65536)
def _matched_pairs(n: int, target: int, controls) -> tuple[np.ndarray, np.ndarray]:
    """Row pairs (target bit 0, target bit 1) whose control bits all match."""
    ks = np.arange(1 << n)
    tmask = 1 << (n - 1 - target)
    sel = (ks & tmask) == 0
    for q, positive in controls:
        cmask = 1 << (n - 1 - q)
        sel &= (ks & cmask) == (cmask if positive else 0)
    a = ks[sel]
    b = a | tmask
    a.flags.writeable = False
    b.flags.writeable = False
    return a, b


def _apply_gate(m: np.ndarray, gate: Gate, n: int) -> None:
    """In-place left-multiplication of ``m`` by the gate's embedding."""
    u00, u01, u10, u11 = _gate_entries(gate.kind, gate.param)
    a, b = _matched_pairs(n, gate.target, gate.controls)
    ra = m[a]  # advanced indexing copies
    rb = m[b]
    m[a] = u00 * ra + u01 * rb
    m[b] = u10 * ra + u11 * rb


def embed(gate: Gate, n: int) -> np.ndarray:
    """Dense 2^n x 2^n matrix of one controlled gate."""
    _check_indices(gate, n)
    m = np.eye(1 << n, dtype=complex)
    _apply_gate(m, gate, n)
    return m


def simulate(circuit: Circuit) -> np.ndarray:
    """Dense matrix of the whole circuit, including its global phase."""
    m = np.eye(1 << circuit.n_qubits, dtype=complex)
    for gate in circuit.gates:
        _apply_gate(m, gate, circuit.n_qubits)
    return circuit.global_phase * m


def invert_gate(gate: Gate) -> Gate:
    if gate.kind in SELF_INVERSE_KINDS:
        return gate
    if gate.kind is GateKind.S:
        return replace(gate, kind=GateKind.SDG)
    if gate.kind is GateKind.SDG:
        return replace(gate, kind=GateKind.S)
    return replace(gate, param=-gate.param)


def invert_gates(gates) -> tuple[Gate, ...]:
    """Gate list implementing the inverse: reversed order, inverted gates."""
    return tuple(invert_gate(g) for g in reversed(tuple(gates)))


def inverse(circuit: Circuit) -> Circuit:
    return Circuit(
        circuit.n_qubits,
        invert_gates(circuit.gates),
        global_phase=circuit.global_phase.conjugate(),
    )


def counts(circuit: Circuit) -> dict[str, int]:
    """Histogram over gate classes: CZ, CNOT, MCX, MCZ, MCRY, MCPHASE, single.

    Uncontrolled gates of every kind fall in the ``single`` bucket; phase-type
    kinds (S, SDG, PHASE, RZ) with controls count as MCPHASE.
    """
    hist: dict[str, int] = {}
    for g in circuit.gates:
        k = len(g.controls)
        if k == 0:
            key = "single"
        elif g.kind is GateKind.Z:
            key = "CZ" if k == 1 else "MCZ"
        elif g.kind is GateKind.X:
            key = "CNOT" if k == 1 else "MCX"
        elif g.kind is GateKind.RY:
            key = "MCRY"
        elif g.kind in (GateKind.PHASE, GateKind.RZ, GateKind.S, GateKind.SDG):
            key = "MCPHASE"
        else:
            key = "MC" + g.kind.value
        hist[key] = hist.get(key, 0) + 1
    return hist


# --- circuit text format ----------------------------------------------------
#
#   qubits N
#   phase re,im
#   gate <KIND> target=<t> [controls=<+q,-q,...>] params=<p1[;p2]>
#
# The controls field is omitted for uncontrolled gates; params= is left empty
# for fixed kinds. Angles use 17 significant digits and round-trip bit exactly.


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def serialize(circuit: Circuit) -> str:
    lines = [
        f"qubits {circuit.n_qubits}",
        f"phase {_fmt(circuit.global_phase.real)},{_fmt(circuit.global_phase.imag)}",
    ]
    for g in circuit.gates:
        parts = [f"gate {g.kind.value}", f"target={g.target}"]
        if g.controls:
            ctl = ",".join(f"{'+' if pos else '-'}{q}" for q, pos in g.controls)
            parts.append(f"controls={ctl}")
        parts.append("params=" + ("" if g.param is None else _fmt(g.param)))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def _parse_controls(lineno: int, text: str) -> tuple[tuple[int, bool], ...]:
    controls = []
    for piece in text.split(","):
        if not piece or piece[0] not in "+-":
            raise ParseError(lineno, f"bad control {piece!r}, expected +q or -q")
        try:
            q = int(piece[1:])
        except ValueError:
            raise ParseError(lineno, f"bad control qubit in {piece!r}") from None
        controls.append((q, piece[0] == "+"))
    return tuple(controls)


def _parse_gate_line(lineno: int, line: str) -> Gate:
    tokens = line.split()
    if tokens[0] != "gate" or len(tokens) < 3:
        raise ParseError(lineno, f"expected a gate line, got {line!r}")
    try:
        kind = GateKind(tokens[1])
    except ValueError:
        raise ParseError(lineno, f"unknown gate kind {tokens[1]!r}") from None
    fields: dict[str, str] = {}
    for tok in tokens[2:]:
        if "=" not in tok:
            raise ParseError(lineno, f"expected key=value, got {tok!r}")
        key, _, value = tok.partition("=")
        if key in fields:
            raise ParseError(lineno, f"duplicate field {key!r}")
        fields[key] = value
    if "target" not in fields or "params" not in fields:
        raise ParseError(lineno, "gate line needs target= and params=")
    unknown = set(fields) - {"target", "controls", "params"}
    if unknown:
        raise ParseError(lineno, f"unknown fields {sorted(unknown)}")
    try:
        target = int(fields["target"])
    except ValueError:
        raise ParseError(lineno, f"bad target {fields['target']!r}") from None
    controls = _parse_controls(lineno, fields["controls"]) if "controls" in fields else ()
    params = [p for p in fields["params"].split(";") if p]
    if len(params) > 1:
        raise ParseError(lineno, f"{kind.value} takes at most one parameter")
    param = None
    if params:
        try:
            param = float(params[0])
        except ValueError:
            raise ParseError(lineno, f"bad angle {params[0]!r}") from None
    try:
        return Gate(kind, target, controls, param)
    except (ValueError, IndexError) as exc:
        raise ParseError(lineno, str(exc)) from None


def parse(text: str) -> Circuit:
    n_qubits = None
    phase = None
    gates: list[Gate] = []
    last_line = 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n_qubits is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "qubits":
                raise ParseError(lineno, f"expected 'qubits N' header, got {line!r}")
            try:
                n_qubits = int(parts[1])
            except ValueError:
                raise ParseError(lineno, f"bad qubit count {parts[1]!r}") from None
            continue
        if phase is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "phase":
                raise ParseError(lineno, f"expected 'phase re,im', got {line!r}")
            pieces = parts[1].split(",")
            if len(pieces) != 2:
                raise ParseError(lineno, f"bad phase {parts[1]!r}")
            try:
                phase = complex(float(pieces[0]), float(pieces[1]))
            except ValueError:
                raise ParseError(lineno, f"bad phase {parts[1]!r}") from None
            continue
        gates.append(_parse_gate_line(lineno, line))
    if n_qubits is None or phase is None:
        raise ParseError(last_line, "missing qubits/phase header")
    try:
        return Circuit(n_qubits, tuple(gates), global_phase=phase)
    except (ValueError, IndexError) as exc:
        raise ParseError(last_line, str(exc)) from None


def load_circuit(path) -> Circuit:
    return parse(Path(path).read_text())


def save_circuit(path, circuit: Circuit) -> None:
    Path(path).write_text(serialize(circuit))
