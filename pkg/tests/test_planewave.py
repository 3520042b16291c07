"""Plane-wave construction and the translation/glide operator checks."""

import numpy as np
import pytest

from diracglide import clifford as cl
from diracglide import planewave as pw

GSTD = cl.build_gamma_set("standard")
GCHI = cl.build_gamma_set("chiral")


class TestDispersion:
    def test_rest_frame(self):
        k = pw.FourMomentum(k=(1.0, 0.0, 0.0, 0.0), k_m=1.0)
        assert pw.dispersion_residual(k) == 0.0

    def test_boosted_on_shell(self):
        k = pw.FourMomentum(k=(np.sqrt(2.0), 1.0, 0.0, 0.0), k_m=1.0)
        # 2 - 1 - 1 = 0 up to the rounding of sqrt(2)^2
        assert abs(pw.dispersion_residual(k)) < 1e-15

    def test_off_shell_value(self):
        k = pw.FourMomentum(k=(1.0, 1.0, 0.0, 0.0), k_m=1.0)
        assert pw.dispersion_residual(k) == pytest.approx(-1.0, abs=1e-15)

    def test_negative_mass_rejected(self):
        with pytest.raises(ValueError, match=">= 0"):
            pw.FourMomentum(k=(1.0, 0.0, 0.0, 0.0), k_m=-1.0)

    def test_rotation_invariance(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            k = pw.random_onshell_momentum(rng, k_m=1.0)
            q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
            spatial = q @ np.asarray(k.k[1:])
            rotated = pw.FourMomentum(k=(k.k[0], *spatial), k_m=1.0)
            assert abs(pw.dispersion_residual(rotated) - pw.dispersion_residual(k)) < 1e-10


class TestSpinor:
    def test_rest_frame_branches(self):
        k = pw.FourMomentum.from_spatial(0, 0, 0, 1.0)
        up = pw.plane_wave_spinor(k, GSTD, "spin-up").u
        down = pw.plane_wave_spinor(k, GSTD, "spin-down").u
        assert np.allclose(up, [1, 0, 0, 0], atol=1e-14)
        assert np.allclose(down, [0, 1, 0, 0], atol=1e-14)

    @pytest.mark.parametrize("g", (GSTD, GCHI), ids=("standard", "chiral"))
    def test_residual_and_orthogonality(self, g):
        rng = np.random.default_rng(3)
        for _ in range(25):
            k = pw.random_onshell_momentum(rng, k_m=1.0)
            up = pw.plane_wave_spinor(k, g, "spin-up").u
            down = pw.plane_wave_spinor(k, g, "spin-down").u
            d = pw.momentum_space_operator(k, g)
            for u in (up, down):
                assert abs(np.linalg.norm(u) - 1.0) < 1e-12
                assert np.linalg.norm(d @ u - k.k_m * u) < 1e-12 * k.k_m
            assert abs(np.vdot(up, down)) < 1e-12

    def test_off_shell_rejected(self):
        k = pw.FourMomentum(k=(2.0, 0.0, 0.0, 0.0), k_m=1.0)
        with pytest.raises(ValueError, match="off shell"):
            pw.plane_wave_spinor(k, GSTD)

    def test_unknown_branch(self):
        k = pw.FourMomentum.from_spatial(0, 0, 0, 1.0)
        with pytest.raises(ValueError, match="branch"):
            pw.plane_wave_spinor(k, GSTD, "sideways")

    def test_spinor_norm_validated(self):
        with pytest.raises(ValueError, match="norm"):
            pw.DiracSpinor(u=np.array([1.0, 1.0, 0.0, 0.0]))


def _field(k1, k2, k3, k_m=1.0, branch="spin-up"):
    k = pw.FourMomentum.from_spatial(k1, k2, k3, k_m)
    return pw.PlaneWaveField(spinor=pw.plane_wave_spinor(k, GSTD, branch), momentum=k)


class TestField:
    def test_origin_value_is_bare_spinor(self):
        f = _field(0.7, -0.2, 0.4)
        assert np.allclose(f.evaluate(np.zeros(4)), f.spinor.u, atol=0)

    def test_phase_convention(self):
        # i d/dx_n psi = k_n psi on every axis: finite-difference check
        f = _field(0.5, 0.0, 0.0)
        x = np.array([0.3, -0.7, 0.1, 0.9])
        h = 1e-6
        for axis in range(4):
            xp = x.copy()
            xm = x.copy()
            xp[axis] += h
            xm[axis] -= h
            derivative = (f.evaluate(xp) - f.evaluate(xm)) / (2 * h)
            assert np.allclose(1j * derivative, f.momentum.k[axis] * f.evaluate(x), atol=1e-6)


class TestTranslation:
    def test_unit_shift(self):
        f = _field(2.0 * np.pi, 0.0, 0.0)
        assert pw.translation_shift(f.momentum, 1) == pytest.approx(1.0)
        _, residual = pw.translation_apply(f, 1)
        assert residual < 1e-12

    def test_time_axis_shift(self):
        f = _field(0.0, 0.0, 0.0, k_m=1.0)
        assert pw.translation_shift(f.momentum, 0) == pytest.approx(2.0 * np.pi)
        _, residual = pw.translation_apply(f, 0)
        assert residual < 1e-12

    def test_zero_axis_rejected(self):
        f = _field(1.0, 0.0, 0.0)
        with pytest.raises(ValueError, match="translation undefined"):
            pw.translation_apply(f, 2)

    def test_repeated_shift_equals_multiple_evaluation(self):
        f = _field(1.3, 0.0, 0.0)
        shift = pw.translation_shift(f.momentum, 1)
        x = np.array([0.2, 0.5, -0.1, 0.8])
        for k_times in (1, 2, 3):
            moved = x.copy()
            moved[1] += k_times * shift
            assert np.max(np.abs(f.evaluate(moved) - f.evaluate(x))) < 1e-12


class TestGlide:
    def test_rest_frame_time_glide_is_reflection(self):
        f = _field(0.0, 0.0, 0.0)
        g = pw.glide_reflection_apply(f, 0, GSTD)
        assert np.allclose(g.spinor.u, GSTD[0] @ f.spinor.u, atol=1e-14)

    def test_spatial_glide_periodicity(self):
        f = _field(0.9, 0.0, 0.0)
        twice = pw.glide_reflection_apply(pw.glide_reflection_apply(f, 1, GSTD), 1, GSTD)
        assert np.allclose(twice.spinor.u, -f.spinor.u, atol=1e-14)
        four = pw.glide_reflection_apply(pw.glide_reflection_apply(twice, 1, GSTD), 1, GSTD)
        assert np.allclose(four.spinor.u, f.spinor.u, atol=1e-14)

    def test_zero_axis_rejected(self):
        f = _field(1.0, 0.0, 0.0)
        with pytest.raises(ValueError, match="translation undefined"):
            pw.glide_reflection_apply(f, 3, GSTD)


class TestFactorizedForm:
    def test_rest_frame(self):
        k = pw.FourMomentum.from_spatial(0, 0, 0, 1.0)
        assert pw.glide_form_residual(k, GSTD) < 1e-12

    @pytest.mark.parametrize("g", (GSTD, GCHI), ids=("standard", "chiral"))
    @pytest.mark.parametrize("branch", pw.BRANCHES)
    def test_matches_unfactorized_operator(self, g, branch):
        rng = np.random.default_rng(17)
        for _ in range(20):
            k = pw.random_onshell_momentum(rng, k_m=1.0)
            r_glide = pw.glide_form_residual(k, g, branch)
            r_direct = pw.dirac_operator_residual(k, g, branch)
            assert r_glide < 1e-12 * k.k_m
            assert abs(r_glide - r_direct) < 1e-12 * k.k_m

    def test_off_shell_rejected(self):
        k = pw.FourMomentum(k=(3.0, 0.0, 0.0, 0.0), k_m=1.0)
        with pytest.raises(ValueError, match="off shell"):
            pw.glide_form_residual(k, GSTD)


def test_probe_points_deterministic():
    a = pw.probe_points(1.0, seed=42)
    b = pw.probe_points(1.0, seed=42)
    assert np.array_equal(a, b)
    assert a.shape == (16, 4)
    assert np.max(np.abs(a)) <= 2.0 * np.pi
