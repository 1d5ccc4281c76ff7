"""Semantics-preserving circuit rewrite passes.

Every pass keeps the simulated matrix bit-for-bit up to float roundoff and
never touches the global phase. Rules are deliberately conservative: they
only match structurally (literal adjacency, identical target and control
tuples), which is sufficient for the shapes the synthesizer emits.
"""

from __future__ import annotations

import math
from dataclasses import replace
from enum import Enum

from .circuit import (
    Circuit,
    Gate,
    GateKind,
    PARAMETRIC_KINDS,
    SELF_INVERSE_KINDS,
    _gate_entries,
)

_HALF_PI = math.pi / 2.0

_DIAGONAL_KINDS = frozenset(
    {GateKind.Z, GateKind.S, GateKind.SDG, GateKind.PHASE, GateKind.RZ}
)


class OptLevel(Enum):
    NONE = "none"
    BASIC = "basic"
    FULL = "full"


def _same_site(g1: Gate, g2: Gate) -> bool:
    return g1.target == g2.target and g1.controls == g2.controls


def _combine(g1: Gate, g2: Gate):
    """Outcome of the adjacent pair (g1 then g2): None cancels, Gate merges,
    False means no rule applies."""
    if not _same_site(g1, g2):
        return False
    k1, k2 = g1.kind, g2.kind
    if k1 == k2 and k1 in SELF_INVERSE_KINDS:
        return None
    if {k1, k2} == {GateKind.S, GateKind.SDG}:
        return None
    if k1 == k2 and k1 in PARAMETRIC_KINDS:
        total = g1.param + g2.param
        if total == 0.0:
            return None
        return replace(g1, param=total)
    return False


def cancel_adjacent_inverses(circuit: Circuit) -> Circuit:
    """Remove adjacent inverse pairs and merge adjacent same-axis rotations.

    Handles RY(a)RY(-a), PHASE(a)PHASE(-a), RZ likewise, the self-inverse
    kinds X, Y, Z, H, the S/SDG pair, and sums adjacent same-kind rotation
    angles. Runs to a fixpoint.
    """
    gates = list(circuit.gates)
    i = 0
    while i + 1 < len(gates):
        outcome = _combine(gates[i], gates[i + 1])
        if outcome is False:
            i += 1
            continue
        if outcome is None:
            del gates[i : i + 2]
        else:
            gates[i] = outcome
            del gates[i + 1]
        i = max(i - 1, 0)
    return Circuit(circuit.n_qubits, tuple(gates), circuit.global_phase)


def _payload_product(gates) -> tuple[complex, complex, complex, complex]:
    """2x2 product of a time-ordered gate sequence on a shared target."""
    a, b, c, d = 1.0 + 0.0j, 0.0j, 0.0j, 1.0 + 0.0j
    for g in gates:
        e, f, gg, h = _gate_entries(g.kind, g.param)
        a, b, c, d = e * a + f * c, e * b + f * d, gg * a + h * c, gg * b + h * d
    return a, b, c, d


# Well below the 1e-12 matrix-preservation budget but far above the roundoff
# of exact inverse pairs (~1e-15), so a strip never moves the simulation.
_IDENTITY_EPS = 1e-13


def _is_identity_2x2(m: tuple[complex, complex, complex, complex]) -> bool:
    a, b, c, d = m
    return (
        abs(a - 1.0) <= _IDENTITY_EPS
        and abs(b) <= _IDENTITY_EPS
        and abs(c) <= _IDENTITY_EPS
        and abs(d - 1.0) <= _IDENTITY_EPS
    )


def _mul_2x2(left, right):
    a, b, c, d = left
    e, f, g, h = right
    return a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h


def _strip_run(run: list[Gate]) -> list[Gate] | None:
    """Strip the controls of one conjugate pair around a controlled diagonal.

    ``run`` is a contiguous window with identical nonempty controls and
    target. For each maximal block of diagonal kinds taken as the pivot,
    the surrounding payloads A (after) and B (before) are tested for
    A.B = I on the target; if so their controls are redundant, since
    control-off states see A.B = I either way.
    """
    k = 0
    while k < len(run):
        if run[k].kind not in _DIAGONAL_KINDS:
            k += 1
            continue
        lo = k
        while k < len(run) and run[k].kind in _DIAGONAL_KINDS:
            k += 1
        hi = k  # run[lo:hi] is diagonal
        before, after = run[:lo], run[hi:]
        if not before and not after:
            continue
        if _is_identity_2x2(_mul_2x2(_payload_product(after), _payload_product(before))):
            return (
                [replace(g, controls=()) for g in before]
                + run[lo:hi]
                + [replace(g, controls=()) for g in after]
            )
    return None


def strip_conjugate_controls(circuit: Circuit) -> Circuit:
    gates = list(circuit.gates)
    out: list[Gate] = []
    idx = 0
    while idx < len(gates):
        if not gates[idx].controls:
            out.append(gates[idx])
            idx += 1
            continue
        site = (gates[idx].target, gates[idx].controls)
        end = idx
        while end < len(gates) and gates[end].controls and (
            gates[end].target,
            gates[end].controls,
        ) == site:
            end += 1
        run = gates[idx:end]
        out.extend(_strip_run(run) or run)
        idx = end
    return Circuit(circuit.n_qubits, tuple(out), circuit.global_phase)


def rewrite_cz_cnot(circuit: Circuit, target_lib: str) -> Circuit:
    """Convert controlled Z gates to controlled X (or back) via RY conjugation.

    Z = RY(pi/2) X RY(-pi/2) as matrices, so a k-controlled Z becomes, in
    time order, RY(-pi/2) on the target, the k-controlled X, RY(pi/2); the
    reverse rewrite uses the inverse conjugation. Orientation is fixed by
    requiring the simulated matrix to be preserved exactly. A cancellation
    pass runs afterwards.
    """
    if target_lib not in ("cz", "cnot"):
        raise ValueError(f"target_lib must be 'cz' or 'cnot', got {target_lib!r}")
    out: list[Gate] = []
    for g in circuit.gates:
        if target_lib == "cnot" and g.kind is GateKind.Z and g.controls:
            out.append(Gate(GateKind.RY, g.target, (), -_HALF_PI))
            out.append(Gate(GateKind.X, g.target, g.controls))
            out.append(Gate(GateKind.RY, g.target, (), _HALF_PI))
        elif target_lib == "cz" and g.kind is GateKind.X and g.controls:
            out.append(Gate(GateKind.RY, g.target, (), _HALF_PI))
            out.append(Gate(GateKind.Z, g.target, g.controls))
            out.append(Gate(GateKind.RY, g.target, (), -_HALF_PI))
        else:
            out.append(g)
    return cancel_adjacent_inverses(
        Circuit(circuit.n_qubits, tuple(out), circuit.global_phase)
    )


def optimize(circuit: Circuit, level: OptLevel = OptLevel.FULL) -> Circuit:
    """None: identity. Basic: cancellation/merge. Full: control stripping
    plus cancellation, iterated to a fixpoint."""
    if level is OptLevel.NONE:
        return circuit
    if level is OptLevel.BASIC:
        return cancel_adjacent_inverses(circuit)
    current = circuit
    while True:
        step = cancel_adjacent_inverses(strip_conjugate_controls(current))
        if step.gates == current.gates:
            return step
        current = step
