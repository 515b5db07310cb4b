"""Localization operator assembly, application and spectral decomposition."""

import numpy as np
import pytest

from locsym import (NotSelfAdjointError, ValidationError, WindowSystem, apply,
                    build_locop, dgt, dgt_adjoint, eigendecompose,
                    hermite_system, load_locop, make_gaussian_window,
                    save_locop, tf_shift)


@pytest.fixture
def gauss64():
    g = make_gaussian_window(64)
    return g, WindowSystem.single(g)


def random_signal(rng, length):
    return rng.standard_normal(length) + 1j * rng.standard_normal(length)


class TestBuild:
    def test_unit_symbol_gives_identity(self, gauss64):
        _, ws = gauss64
        op = build_locop(np.ones((64, 64)), ws)
        assert np.max(np.abs(op.matrix - np.eye(64))) < 1e-10

    def test_point_symbol_gives_rank_one_projector(self, gauss64):
        g, ws = gauss64
        f = np.zeros((64, 64))
        f[3, 5] = 1.0
        op = build_locop(f, ws)
        p = tf_shift(g, (3, 5))
        np.testing.assert_allclose(op.matrix, np.outer(p, p.conj()) / 64,
                                   rtol=0, atol=1e-12)

    def test_trace_equals_symbol_mean(self, gauss64):
        _, ws = gauss64
        f = np.random.default_rng(0).standard_normal((64, 64))
        op = build_locop(f, ws)
        assert abs(np.trace(op.matrix) - f.sum() / 64) < 1e-9

    def test_hermitian_for_real_symbol(self, gauss64):
        _, ws = gauss64
        f = np.random.default_rng(1).standard_normal((64, 64))
        m = build_locop(f, ws).matrix
        assert np.max(np.abs(m - m.conj().T)) < 1e-12

    def test_linearity_in_symbol(self, gauss64):
        _, ws = gauss64
        rng = np.random.default_rng(2)
        f1, f2 = rng.standard_normal((2, 64, 64))
        a, b = 0.3, -1.7
        lhs = build_locop(a * f1 + b * f2, ws).matrix
        rhs = a * build_locop(f1, ws).matrix + b * build_locop(f2, ws).matrix
        assert np.linalg.norm(lhs - rhs) < 1e-10

    def test_mixed_state_is_weighted_sum(self):
        L = 32
        g1 = make_gaussian_window(L)
        g2 = hermite_system(L, 2)[1]
        f = np.random.default_rng(3).standard_normal((L, L))
        mixed = build_locop(f, WindowSystem.from_pairs([(0.25, g1), (0.75, g2)]))
        a = build_locop(f, WindowSystem.single(g1)).matrix
        b = build_locop(f, WindowSystem.single(g2)).matrix
        np.testing.assert_array_equal(mixed.matrix, 0.25 * a + 0.75 * b)

    def test_rejects_non_finite_symbol(self, gauss64):
        _, ws = gauss64
        f = np.ones((64, 64))
        f[0, 0] = np.nan
        with pytest.raises(ValidationError):
            build_locop(f, ws)

    def test_rejects_size_mismatch(self, gauss64):
        _, ws = gauss64
        with pytest.raises(ValidationError):
            build_locop(np.ones((32, 32)), ws)


class TestApply:
    def test_identity_operator(self, gauss64):
        _, ws = gauss64
        op = build_locop(np.ones((64, 64)), ws)
        psi = random_signal(np.random.default_rng(4), 64)
        assert np.max(np.abs(apply(op, psi) - psi)) < 1e-10

    def test_eigen_relation(self, gauss64):
        _, ws = gauss64
        f = np.random.default_rng(5).standard_normal((64, 64))
        op = build_locop(f, ws)
        spec = eigendecompose(op)
        for i in (0, 10, 40):
            lhs = apply(op, spec.eigenvectors[i])
            rhs = spec.eigenvalues[i] * spec.eigenvectors[i]
            assert np.max(np.abs(lhs - rhs)) < 1e-8

    def test_agrees_with_unassembled_pipeline(self, gauss64):
        # independent route: analysis, symbol multiply, synthesis
        g, ws = gauss64
        rng = np.random.default_rng(6)
        f = rng.standard_normal((64, 64))
        op = build_locop(f, ws)
        psi = random_signal(rng, 64)
        direct = apply(op, psi)
        pipeline = dgt_adjoint(f * dgt(psi, g), g)
        assert np.max(np.abs(direct - pipeline)) < 1e-10


class TestSpectrum:
    def test_unit_symbol_all_ones(self, gauss64):
        _, ws = gauss64
        spec = eigendecompose(build_locop(np.ones((64, 64)), ws))
        np.testing.assert_allclose(spec.eigenvalues, 1.0, rtol=0, atol=1e-9)

    def test_half_symbol_scales_eigenvalues(self, gauss64):
        _, ws = gauss64
        spec = eigendecompose(build_locop(0.5 * np.ones((64, 64)), ws))
        np.testing.assert_allclose(spec.eigenvalues, 0.5, rtol=0, atol=1e-9)

    def test_eigenvalue_sum_is_trace(self, gauss64):
        _, ws = gauss64
        f = np.random.default_rng(7).standard_normal((64, 64))
        spec = eigendecompose(build_locop(f, ws))
        assert abs(spec.eigenvalues.sum() - f.sum() / 64) < 1e-8

    def test_orthonormal_eigenvectors_and_reconstruction(self, gauss64):
        _, ws = gauss64
        f = np.random.default_rng(8).standard_normal((64, 64))
        op = build_locop(f, ws)
        spec = eigendecompose(op)
        v = spec.eigenvectors
        assert np.max(np.abs(v @ v.conj().T - np.eye(64))) < 1e-9
        recon = (v.T * spec.eigenvalues) @ v.conj()
        assert np.linalg.norm(recon - op.matrix) < 1e-9

    def test_ordering_descending_absolute_value(self, gauss64):
        _, ws = gauss64
        f = np.where(np.arange(64)[:, None] < 32, 1.0, -1.0) * np.ones((1, 64))
        spec = eigendecompose(build_locop(f, ws))
        assert np.all(np.diff(np.abs(spec.eigenvalues)) <= 0)
        # operator norm bounded by the symbol sup, signed case included
        assert np.abs(spec.eigenvalues).max() <= np.abs(f).max() + 1e-10

    def test_deterministic(self, gauss64):
        _, ws = gauss64
        f = np.random.default_rng(9).standard_normal((64, 64))
        op = build_locop(f, ws)
        s1, s2 = eigendecompose(op), eigendecompose(op)
        np.testing.assert_array_equal(s1.eigenvalues, s2.eigenvalues)
        np.testing.assert_array_equal(s1.eigenvectors, s2.eigenvectors)

    def test_positivity_for_non_negative_symbol(self, gauss64):
        _, ws = gauss64
        f = np.random.default_rng(10).uniform(0, 1, (64, 64))
        spec = eigendecompose(build_locop(f, ws))
        assert spec.eigenvalues.min() >= -1e-10
        # operator norm bounded by the symbol sup
        assert spec.eigenvalues[0] <= f.max() + 1e-10

    def test_rejects_complex_symbol(self, gauss64):
        _, ws = gauss64
        f = np.random.default_rng(11).standard_normal((64, 64)) * (1 + 0.5j)
        op = build_locop(f, ws)
        with pytest.raises(NotSelfAdjointError):
            eigendecompose(op)


class TestDump:
    def test_round_trip_bit_exact(self, gauss64, tmp_path):
        _, ws = gauss64
        f = np.random.default_rng(12).standard_normal((64, 64))
        op = build_locop(f, ws)
        path = tmp_path / "op.bin"
        save_locop(op, path)
        loaded = load_locop(path)
        assert loaded.size == 64
        np.testing.assert_array_equal(loaded.matrix, op.matrix)

    def test_header_is_sixteen_bytes(self, gauss64, tmp_path):
        _, ws = gauss64
        op = build_locop(np.ones((64, 64)), ws)
        path = tmp_path / "op.bin"
        save_locop(op, path)
        blob = path.read_bytes()
        assert blob[:6] == b"LOCOP1"
        assert len(blob) == 16 + 64 * 64 * 16

    def test_rejects_garbage(self, tmp_path):
        path = tmp_path / "junk.bin"
        path.write_bytes(b"not an operator dump")
        with pytest.raises(ValidationError):
            load_locop(path)
