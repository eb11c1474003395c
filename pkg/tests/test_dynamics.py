import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dwtunnel import _accel, dynamics, kernels
from dwtunnel.eigenmodes import ModelParams, modes
from dwtunnel.numerics import Grid, integrate

UNIT = ModelParams(1.0, 1.0)
S = dynamics.DEFAULT_S_GRID.points
params_st = st.builds(ModelParams, gamma=st.sampled_from([1.0, 2.0]), sigma=st.sampled_from([1.0, 2.0, 4.0, 8.0]),
                      eps_asym=st.sampled_from([0.0, 0.75]))
times_st = st.floats(0.0, 20.0)


@pytest.fixture(scope="module")
def unit_pair():
    return modes(UNIT)


class TestStates:
    def test_flavors_agree_at_zero(self, unit_pair):
        a = dynamics.state(UNIT, "stable", 0.0, unit_pair)
        b = dynamics.state(UNIT, "unstable", 0.0, unit_pair)
        assert np.array_equal(dynamics.density(a, S), dynamics.density(b, S))

    @pytest.mark.parametrize("flavor,t", [("spin", 0.0), ("stable", math.nan), ("unstable", -1.0)])
    def test_rejects(self, flavor, t):
        with pytest.raises(ValueError):
            dynamics.state(UNIT, flavor, t)

    @given(params_st, times_st)
    def test_stable_norm(self, P, t):
        assert abs(dynamics.norm_squared(dynamics.state(P, "stable", t)) - 1.0) < 1e-10

    @given(params_st, times_st)
    def test_unstable_norm_decays(self, P, t):
        st_ = dynamics.state(P, "unstable", t)
        assert abs(dynamics.norm_squared(st_) - (math.exp(-2 * t / P.sigma) + 1) / 2) < 1e-8

    @given(params_st, times_st)
    def test_stable_period(self, P, t):
        pair = modes(P)
        a = dynamics.density(dynamics.state(P, "stable", t, pair), S)
        b = dynamics.density(dynamics.state(P, "stable", t + 2 * math.pi * P.sigma, pair), S)
        assert np.max(np.abs(a - b)) < 1e-10

    @pytest.mark.parametrize("sigma", (1.0, 2.0, 4.0, 8.0))
    def test_half_period_reflects(self, sigma):
        P = ModelParams(1.0, sigma)
        d0 = dynamics.density(dynamics.state(P, "stable", 0.0), S)
        dpi = dynamics.density(dynamics.state(P, "stable", math.pi * sigma), S)
        assert np.max(np.abs(dpi - d0[::-1])) < 1e-8

    def test_side_swap(self, unit_pair):
        right = dynamics.tunneling_probability(dynamics.state(UNIT, "stable", 0.0, unit_pair), +1)
        left = dynamics.tunneling_probability(dynamics.state(UNIT, "stable", math.pi, unit_pair), -1)
        assert right > 0.5 and right == pytest.approx(left, abs=1e-8)

    def test_collapse_after_long_times(self, unit_pair):
        # e^(-10 pi) leaves the tachyonic admixture far below 1e-6
        st_ = dynamics.state(UNIT, "unstable", 10 * math.pi, unit_pair)
        assert np.max(np.abs(dynamics.density(st_, S) - unit_pair[1](S) ** 2 / 2)) < 1e-6

    def test_collapse_is_gradual(self, unit_pair):
        devs = [np.max(np.abs(dynamics.density(dynamics.state(UNIT, "unstable", t, unit_pair), S)
                              - unit_pair[1](S) ** 2 / 2)) for t in (2.0, 5.0, 10.0, 20.0)]
        assert all(b < a for a, b in zip(devs, devs[1:]))


def _wigner_cell(st_, s, p):
    # independent route: adaptive quadrature of the defining integral at one cell
    def re(y):
        return np.real(np.conj(st_(s + y)) * st_(s - y) * np.exp(2j * p * y))
    return integrate(re, -6.0, 6.0, tol=1e-12) / math.pi


@pytest.fixture(scope="module")
def grids(unit_pair):
    return {(fl, t): dynamics.wigner(dynamics.state(UNIT, fl, t, unit_pair))
            for fl in dynamics.FLAVORS for t in dynamics.DEFAULT_TIMES}


class TestWigner:
    def test_against_direct_quadrature(self, unit_pair):
        st_ = dynamics.state(UNIT, "stable", math.pi / 4, unit_pair)
        grid = dynamics.wigner(st_)
        for i, j in ((400, 100), (350, 120), (460, 60), (420, 150)):
            ref = _wigner_cell(st_, grid.s_grid.points[i], grid.p_grid.points[j])
            assert grid.values[i, j] == pytest.approx(ref, abs=1e-9)

    def test_marginal_and_total(self, grids, unit_pair):
        for (fl, t), w in grids.items():
            st_ = dynamics.state(UNIT, fl, t, unit_pair)
            assert w.imag_residue < 1e-10
            assert np.max(np.abs(w.marginal_s() - dynamics.density(st_, S))) < 1e-4
            assert abs(w.total() - dynamics.norm_squared(st_)) < 1e-4

    def test_point_reflection(self, grids):
        a = grids["stable", 0.0].values
        b = grids["stable", math.pi].values
        assert np.max(np.abs(b - a[::-1, ::-1])) < 1e-6

    def test_rescaled_peak_is_one(self, grids):
        for w in grids.values():
            r = dynamics.wigner_modulus_rescaled(w)
            assert r.max() == 1.0 and r.min() >= 0.0

    def test_values_bounded(self, grids):
        # |W| <= (1/pi) ||Psi||^2 for any state
        for w in grids.values():
            assert np.max(np.abs(w.values)) <= 1 / math.pi + 1e-12

    def test_under_resolved_names_the_cell(self, unit_pair):
        st_ = dynamics.state(UNIT, "stable", 0.0, unit_pair)
        with pytest.raises(dynamics.UnderResolvedError) as info:
            dynamics.wigner(st_, Grid(-8, 8, 41))
        assert "s=" in str(info.value) and info.value.error > info.value.tol

    def test_refine_agrees(self, unit_pair):
        st_ = dynamics.state(UNIT, "unstable", math.pi / 2, unit_pair)
        sg, pg = Grid(-4, 4, 201), Grid(-4, 4, 41)
        a = dynamics.wigner(st_, sg, pg, tol=1e-6)
        b = dynamics.wigner(st_, sg, pg, refine=2, tol=1e-6)
        assert np.max(np.abs(a.values - b.values)) < 1e-8
        with pytest.raises(ValueError):
            dynamics.wigner(st_, sg, pg, refine=0)


class TestKernelsAgree:
    def test_cumulative_simpson(self):
        y = np.sin(np.linspace(0, 3, 301)) ** 2
        a = kernels.cumulative_simpson_numba(y, 0.01)
        b = kernels.cumulative_simpson_numpy(y, 0.01)
        assert np.max(np.abs(a - b)) < 1e-14
        assert a[-1] == pytest.approx(1.5 - math.sin(6) / 4, abs=1e-9)

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_cumulative_simpson_short(self, n):
        y = np.arange(n, dtype=float)
        assert np.array_equal(kernels.cumulative_simpson_numba(y, 0.5), kernels.cumulative_simpson_numpy(y, 0.5))

    def test_wigner_paths(self, unit_pair, monkeypatch):
        st_ = dynamics.state(UNIT, "stable", 0.3, unit_pair)
        sg, pg = Grid(-6, 6, 301), Grid(-5, 5, 51)
        fast = dynamics.wigner(st_, sg, pg, tol=1e-6)
        monkeypatch.setattr(_accel, "USE_NUMBA", False)
        slow = dynamics.wigner(st_, sg, pg, tol=1e-6)
        assert np.max(np.abs(fast.values - slow.values)) < 1e-13

    @pytest.mark.skipif(_accel._DISABLED, reason="numba disabled by DWTUNNEL_NO_NUMBA")
    def test_numba_present(self):
        assert _accel.HAS_NUMBA
