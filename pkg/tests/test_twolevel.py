import math

import numpy as np
import pytest

from helpers import CH_EMBED, CZ_EMBED, random_hermitian_unitary
from hermsynth.circuit import Circuit, GateKind, counts, simulate
from hermsynth.errors import IndexOutOfRange
from hermsynth.jacobi import Ordering, RotationStep, two_level_matrix
from hermsynth.matrices import max_abs_diff
from hermsynth.optimize import OptLevel
from hermsynth.twolevel import (
    emit_two_level,
    gray_path,
    states_to_target_control,
    synthesize,
    target_control_to_states,
)

RNG = np.random.default_rng(31415)


class TestStateIndexing:
    @pytest.mark.parametrize(
        "i,j,n,expected",
        [(0, 0, 2, (0, 2)), (1, 1, 2, (2, 3)), (0, 1, 2, (1, 3))],
    )
    def test_insertion(self, i, j, n, expected):
        assert target_control_to_states(i, j, n) == expected

    def test_rejects_bad_indices(self):
        with pytest.raises(IndexOutOfRange):
            target_control_to_states(2, 0, 2)
        with pytest.raises(IndexOutOfRange):
            target_control_to_states(0, 2, 2)

    @pytest.mark.parametrize(
        "p,q,n,expected",
        [(0, 2, 2, (0, 0)), (0, 3, 2, None), (5, 7, 3, (1, 3))],
    )
    def test_deletion(self, p, q, n, expected):
        assert states_to_target_control(p, q, n) == expected

    def test_round_trip_all_pairs(self):
        n = 4
        seen = set()
        for p in range(1 << n):
            for q in range(p + 1, 1 << n):
                pair = states_to_target_control(p, q, n)
                if pair is not None:
                    assert target_control_to_states(*pair, n) == (p, q)
                    seen.add(pair)
        assert len(seen) == n * (1 << (n - 1))


class TestGrayPath:
    def test_distance_two(self):
        path = gray_path(0, 3, 2)
        assert path.states == (0, 2, 3) and path.pivot_bit == 1

    def test_adjacent(self):
        path = gray_path(0, 2, 2)
        assert path.states == (0, 2) and path.pivot_bit == 0

    def test_full_distance(self):
        for n in (2, 3, 4):
            path = gray_path(0, (1 << n) - 1, n)
            assert len(path.states) == n + 1

    def test_consecutive_states_adjacent(self):
        for n in (3, 4):
            for p in range(1 << n):
                for q in range(p + 1, 1 << n):
                    states = gray_path(p, q, n).states
                    assert states[0] == p and states[-1] == q
                    for a, b in zip(states, states[1:]):
                        d = a ^ b
                        assert d and not (d & (d - 1))


class TestEmitTwoLevel:
    def test_single_controlled_ry(self):
        step = RotationStep(2, 3, -math.pi / 4, 0.0, False)
        gates = emit_two_level(step, 2)
        assert len(gates) == 1
        g = gates[0]
        assert g.kind is GateKind.RY and g.target == 1
        assert g.controls == ((0, True),)
        assert g.param == pytest.approx(-math.pi / 4)

    def test_phase_pair(self):
        step = RotationStep(2, 3, -math.pi / 2, -math.pi / 2, True)
        gates = emit_two_level(step, 2)
        kinds = [g.kind for g in gates]
        assert kinds == [GateKind.RY, GateKind.PHASE]
        assert gates[0].param == pytest.approx(-math.pi / 2)
        assert gates[1].param == pytest.approx(math.pi / 2)
        got = simulate(Circuit(2, gates))
        assert max_abs_diff(got, two_level_matrix(step, 4)) < 1e-12

    def test_ladder_case(self):
        step = RotationStep(0, 3, 0.7, 0.0, False)
        gates = emit_two_level(step, 2)
        kinds = [g.kind for g in gates]
        assert kinds == [GateKind.X, GateKind.RY, GateKind.X]
        got = simulate(Circuit(2, gates))
        assert max_abs_diff(got, two_level_matrix(step, 4)) < 1e-12

    def test_swapped_orientation_pair(self):
        # (1, 2): the path ends on the pivot-0 state, exercising the
        # orientation fix for complex pivots
        step = RotationStep(1, 2, -0.8, 1.1, True)
        got = simulate(Circuit(2, emit_two_level(step, 2)))
        assert max_abs_diff(got, two_level_matrix(step, 4)) < 1e-12

    @pytest.mark.parametrize("n", [2, 3])
    def test_every_pair_exact(self, n):
        dim = 1 << n
        for p in range(dim):
            for q in range(p + 1, dim):
                for has_phase in (False, True):
                    step = RotationStep(p, q, 0.9, -2.3 if has_phase else 0.0, has_phase)
                    got = simulate(Circuit(n, emit_two_level(step, n)))
                    assert max_abs_diff(got, two_level_matrix(step, dim)) < 1e-12

    def test_identity_outside_pair(self):
        step = RotationStep(1, 6, 0.4, 0.9, True)
        m = simulate(Circuit(3, emit_two_level(step, 3)))
        for k in range(8):
            if k in (1, 6):
                continue
            assert m[k, k] == pytest.approx(1.0, abs=1e-12)
            row = np.delete(m[k, :], k)
            assert np.max(np.abs(row)) < 1e-12

    def test_ladder_length(self):
        # l - 1 transpositions on each side for Hamming distance l
        for n in (3, 4):
            for p in range(1 << n):
                for q in range(p + 1, 1 << n):
                    l = bin(p ^ q).count("1")
                    gates = emit_two_level(RotationStep(p, q, 0.3, 0.0, False), n)
                    lead = 0
                    while gates[lead].kind is GateKind.X:
                        lead += 1
                    assert lead == l - 1

    def test_adjacent_pairs_need_no_ladder(self):
        n = 3
        adjacent = 0
        for p in range(8):
            for q in range(p + 1, 8):
                step = RotationStep(p, q, 0.3, 0.0, False)
                gates = emit_two_level(step, n)
                if states_to_target_control(p, q, n) is not None:
                    adjacent += 1
                    assert all(g.kind is not GateKind.X for g in gates)
        assert adjacent == n * (1 << (n - 1))


class TestSynthesize:
    def test_cz_is_one_gate(self):
        circuit, report = synthesize(CZ_EMBED)
        assert len(circuit.gates) == 1
        assert counts(circuit) == {"CZ": 1}
        assert report.verify_error <= 1e-12

    def test_ch_unoptimized_shape(self):
        circuit, _ = synthesize(CH_EMBED, opt_level=OptLevel.NONE)
        kinds = [(g.kind, g.param) for g in circuit.gates]
        assert kinds[0][0] is GateKind.RY and kinds[0][1] == pytest.approx(math.pi / 4)
        assert circuit.gates[0].controls == ((0, True),)
        assert kinds[1][0] is GateKind.Z
        assert kinds[2][0] is GateKind.RY and kinds[2][1] == pytest.approx(-math.pi / 4)

    def test_ch_optimized_matches_reference_row(self):
        circuit, report = synthesize(CH_EMBED)
        assert [g.kind for g in circuit.gates] == [GateKind.RY, GateKind.Z, GateKind.RY]
        assert not circuit.gates[0].controls and not circuit.gates[2].controls
        assert report.gate_counts == {"CZ": 1, "single": 2}

    def test_random_by_dimension(self):
        for dim in (2, 4, 8, 16):
            h = random_hermitian_unitary(RNG, dim)
            circuit, report = synthesize(h)
            assert report.verify_error <= 1e-9
            assert max_abs_diff(simulate(circuit), h) <= 1e-9

    def test_parallel_ordering_round_trip(self):
        h = random_hermitian_unitary(RNG, 8)
        circuit, report = synthesize(h, ordering=Ordering.PARALLEL)
        assert report.verify_error <= 1e-9
        assert report.ordering is Ordering.PARALLEL

    def test_controlled_ry_budget(self):
        # two controlled RY gates per executed rotation before optimization
        h = random_hermitian_unitary(RNG, 8)
        circuit, report = synthesize(h, opt_level=OptLevel.NONE)
        n_ry = sum(1 for g in circuit.gates if g.kind is GateKind.RY)
        assert n_ry == 2 * report.rotations_executed

    def test_minus_identity_global_phase(self):
        circuit, report = synthesize(-np.eye(4))
        assert circuit.global_phase == -1
        assert len(circuit.gates) == 0
        assert report.verify_error <= 1e-12

    def test_report_fields(self):
        h = random_hermitian_unitary(RNG, 4)
        circuit, report = synthesize(h)
        assert report.sweeps >= 1
        assert report.residual_offnorm <= 1e-12 * 4
        assert sum(report.gate_counts.values()) == len(circuit.gates)
        assert report.opt_level is OptLevel.FULL

    def test_custom_tolerances(self):
        from hermsynth.matrices import Tolerances

        h = random_hermitian_unitary(RNG, 4)
        tight = Tolerances(verify_tol=1e-6)
        _, report = synthesize(h, tol=tight)
        assert report.verify_error <= 1e-6
