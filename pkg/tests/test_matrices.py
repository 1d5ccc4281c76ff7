import math

import numpy as np
import pytest

from helpers import HADAMARD, PAULI_X, PAULI_Y, PAULI_Z, random_unitary
from hermsynth.errors import DimensionMismatch, ParseError
from hermsynth.matrices import (
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

RNG = np.random.default_rng(1234)


class TestMatMul:
    def test_pauli_involution(self):
        assert np.allclose(mat_mul(PAULI_X, PAULI_X), np.eye(2))

    def test_x_times_z(self):
        expected = np.array([[0, -1], [1, 0]], dtype=complex)
        assert np.array_equal(mat_mul(PAULI_X, PAULI_Z), expected)

    def test_identity_case(self):
        a = RNG.normal(size=(5, 5)) + 1j * RNG.normal(size=(5, 5))
        assert np.allclose(mat_mul(np.eye(5), a), a)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            mat_mul(np.eye(2), np.eye(3))

    def test_associative_on_random_triples(self):
        for _ in range(10):
            a, b, c = (RNG.normal(size=(4, 4)) + 1j * RNG.normal(size=(4, 4)) for _ in range(3))
            left = mat_mul(mat_mul(a, b), c)
            right = mat_mul(a, mat_mul(b, c))
            assert max_abs_diff(left, right) < 1e-12


class TestDagger:
    def test_pauli_y_hermitian(self):
        assert np.array_equal(dagger(PAULI_Y), PAULI_Y)

    def test_s_gate(self):
        s = np.diag([1.0, 1j])
        assert np.array_equal(dagger(s), np.diag([1.0, -1j]))

    def test_involution(self):
        a = RNG.normal(size=(6, 6)) + 1j * RNG.normal(size=(6, 6))
        assert np.array_equal(dagger(dagger(a)), a)


class TestTensor:
    def test_identity_with_z(self):
        assert np.array_equal(tensor(np.eye(2), PAULI_Z), np.diag([1, -1, 1, -1]).astype(complex))

    def test_z_with_identity(self):
        assert np.array_equal(tensor(PAULI_Z, np.eye(2)), np.diag([1, 1, -1, -1]).astype(complex))

    def test_xx_involution(self):
        xx = tensor(PAULI_X, PAULI_X)
        assert np.allclose(xx @ xx, np.eye(4))


class TestPredicates:
    @pytest.mark.parametrize("m", [PAULI_X, PAULI_Y, PAULI_Z])
    def test_paulis_hermitian(self, m):
        assert is_hermitian(m)

    def test_s_not_hermitian(self):
        assert not is_hermitian(np.diag([1.0, 1j]))

    def test_ch_embedding_hermitian(self):
        ch = np.eye(4, dtype=complex)
        ch[2:, 2:] = HADAMARD
        assert is_hermitian(ch)

    def test_rotation_unitary(self):
        c, s = math.cos(0.15), math.sin(0.15)
        assert is_unitary(np.array([[c, s], [-s, c]]))

    def test_scaled_diag_not_unitary(self):
        assert not is_unitary(np.diag([1.0, 2.0]))

    def test_cy_embedding_unitary(self):
        cy = np.eye(4, dtype=complex)
        cy[2:, 2:] = PAULI_Y
        assert is_unitary(cy)


class TestNorms:
    def test_off_norm_diagonal(self):
        assert off_norm(np.diag([3.0, -2.0, 5.0])) == 0.0

    def test_off_norm_x(self):
        assert off_norm(PAULI_X) == pytest.approx(math.sqrt(2.0), abs=1e-15)

    def test_off_norm_hadamard(self):
        assert off_norm(HADAMARD) == pytest.approx(1.0, abs=1e-15)

    def test_frobenius_split(self):
        a = RNG.normal(size=(8, 8)) + 1j * RNG.normal(size=(8, 8))
        total = np.sum(np.abs(a) ** 2)
        diag = np.sum(np.abs(np.diagonal(a)) ** 2)
        assert off_norm(a) ** 2 + diag == pytest.approx(total, rel=1e-12)

    def test_max_abs_diff_self(self):
        a = RNG.normal(size=(3, 3))
        assert max_abs_diff(a, a) == 0.0

    def test_max_abs_diff_i_z(self):
        assert max_abs_diff(np.eye(2), PAULI_Z) == 2.0

    def test_max_abs_diff_x_y(self):
        assert max_abs_diff(PAULI_X, PAULI_Y) == pytest.approx(math.sqrt(2.0), abs=1e-15)

    def test_max_abs_diff_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            max_abs_diff(np.eye(2), np.eye(4))


class TestTolerances:
    def test_defaults_positive(self):
        t = Tolerances()
        assert t.zero_tol == 1e-12 and t.verify_tol == 1e-9

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            Tolerances(zero_tol=0.0)


class TestTextFormat:
    def test_round_trip_exact(self, tmp_path):
        m = random_unitary(RNG, 4)
        path = tmp_path / "m.txt"
        save_matrix(path, m)
        assert np.array_equal(load_matrix(path), m)

    def test_comments_and_blanks(self):
        text = "# a matrix\n\ndim 2\n1,0 0,0\n# middle\n0,0 -1,0\n"
        assert np.array_equal(parse_matrix(text), np.diag([1.0, -1.0]).astype(complex))

    def test_header_first(self):
        assert format_matrix(np.eye(2)).splitlines()[0] == "dim 2"

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_matrix("1,0 0,0\n0,0 1,0\n")

    def test_wrong_entry_count(self):
        with pytest.raises(ParseError):
            parse_matrix("dim 2\n1,0\n0,0 1,0\n")

    def test_bad_token(self):
        with pytest.raises(ParseError):
            parse_matrix("dim 1\nnope\n")

    def test_too_few_rows(self):
        with pytest.raises(ParseError):
            parse_matrix("dim 2\n1,0 0,0\n")
