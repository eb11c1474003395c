import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dwtunnel import defects
from dwtunnel.eigenmodes import ModelParams, default_grid, psi_unnormalized
from dwtunnel.numerics import Grid, first_derivative, integrate

# mpmath, 30 digits
LUMP_AT_ORIGIN_UNIT = 1.04539971769152910679870228137   # sqrt(pi) e^(1/8) erf(1/2)
Q_KINK_UNIT = 3.12837006679651232366303970041           # 2 sqrt(pi) e^(-1/8)

SIGMAS = (1.0, 2.0, 4.0, 8.0)
closed_st = st.builds(ModelParams, gamma=st.sampled_from([1.0, 2.0]), sigma=st.floats(0.5, 8.0))


def test_phi_kink():
    assert defects.phi_kink(0.0) == 0.0
    assert abs(defects.phi_kink(20.0) - 1.0) <= 1e-16
    s = np.linspace(-3, 3, 13)
    assert np.allclose(defects.y_phi(defects.phi_kink(s)), 1 / np.cosh(s) ** 2, atol=1e-15)


class TestSuperpotential:
    def test_origin(self):
        z, w = defects.superpotential_derivs(ModelParams(1, 1), 0.0)
        assert z == pytest.approx(math.exp(-1 / 8), rel=1e-15) and w == 0.0
        z2, _ = defects.superpotential_derivs(ModelParams(2, 1), 0.0)
        assert z2 == pytest.approx(math.exp(-1 / 32), rel=1e-15)

    def test_printed_variant_values(self):
        z, _ = defects.superpotential_derivs(ModelParams(1, 1), 0.0, printed=True)
        assert z == pytest.approx(math.exp(-3 / 8), rel=1e-15)
        phi = np.linspace(-0.9, 0.9, 7)
        z2, _ = defects.superpotential_derivs(ModelParams(2, 1), phi, printed=True)
        assert np.allclose(z2, (1 + phi ** 2) / (1 - phi ** 2) * math.exp(-1 / 16), rtol=1e-14)

    @given(closed_st, st.floats(-3, 3))
    def test_pulls_back_to_ground_state(self, P, s):
        # 1 - tanh(s)^2 loses digits as |s| grows, so stay where it is well conditioned
        z, _ = defects.superpotential_derivs(P, math.tanh(s))
        assert z == pytest.approx(psi_unnormalized(P, 0, s), rel=1e-11, abs=1e-300)

    @given(closed_st, st.floats(-0.999, 0.999))
    def test_ratio_is_deformation(self, P, phi):
        z, w = defects.superpotential_derivs(P, phi)
        if z > 1e-300:
            assert abs(w / z - defects.deformation_alpha(P, phi)) <= 1e-12

    def test_printed_forms_break_first_order_equation(self):
        P = ModelParams(1, 1)
        s = np.linspace(-1, 1, 21)
        dxi = first_derivative(lambda x: defects.field_of_phi(P, "kink", np.tanh(x)), s)
        z_printed, _ = defects.superpotential_derivs(P, np.tanh(s), printed=True)
        assert np.max(np.abs(dxi - z_printed)) > 0.1

    @pytest.mark.parametrize("P,phi", [(ModelParams(1, 1), 1.0), (ModelParams(1, 1), -1.5),
                                       (ModelParams(1, 1, 0.5), 0.0), (ModelParams(1.5, 1), 0.0)])
    def test_domain(self, P, phi):
        with pytest.raises(ValueError):
            defects.superpotential_derivs(P, phi)


class TestFieldOfPhi:
    def test_values(self):
        P = ModelParams(1, 1)
        assert defects.field_of_phi(P, "kink", 0.0) == 0.0
        assert defects.field_of_phi(P, "kink", 1 - 1e-12) == pytest.approx(math.sqrt(math.pi) * math.exp(-1 / 8), rel=1e-14)
        assert defects.field_of_phi(P, "lump", 0.0) == pytest.approx(LUMP_AT_ORIGIN_UNIT, rel=1e-14)

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            defects.field_of_phi(ModelParams(1, 1), "wall", 0.0)

    @pytest.mark.parametrize("gamma", (1.0, 2.0))
    @pytest.mark.parametrize("sigma", SIGMAS)
    def test_chain_rule(self, gamma, sigma):
        P = ModelParams(gamma, sigma)
        half = default_grid(P).s_max
        s = np.linspace(-half, half, 200)
        z, w = defects.superpotential_derivs(P, np.tanh(s))
        for kind, ref in (("kink", z), ("lump", w)):
            d = first_derivative(lambda x: defects.field_of_phi(P, kind, np.tanh(x)), s)
            assert np.max(np.abs(d - ref)) < 1e-8


class TestProfiles:
    def test_unit_charges(self):
        P = ModelParams(1, 1)
        kink = defects.profile_numeric(P, "kink")
        lump = defects.profile_numeric(P, "lump")
        assert kink.charge == pytest.approx(Q_KINK_UNIT, abs=1e-10)
        assert abs(lump.charge) < 1e-8
        assert lump(0.0) == pytest.approx(LUMP_AT_ORIGIN_UNIT, abs=1e-14)
        assert kink.asymptote_minus == pytest.approx(-Q_KINK_UNIT / 2, abs=1e-10)

    @pytest.mark.parametrize("sigma", SIGMAS)
    def test_gamma_two_charge(self, sigma):
        P = ModelParams(2, sigma)
        q = defects.profile_numeric(P, "kink").charge
        assert q == pytest.approx(2 * math.sqrt(math.pi) * sigma * math.exp(-1 / (32 * sigma ** 2)), abs=1e-6)

    @pytest.mark.parametrize("gamma", (1.0, 2.0))
    @pytest.mark.parametrize("sigma", SIGMAS)
    def test_matches_closed_form(self, gamma, sigma):
        P = ModelParams(gamma, sigma)
        for kind in defects.KINDS:
            prof = defects.profile_numeric(P, kind)
            assert np.max(np.abs(prof.values - defects.field_of_phi(P, kind, np.tanh(prof.s)))) < 1e-7

    @given(st.builds(ModelParams, gamma=st.floats(0.5, 3.0), sigma=st.floats(0.5, 6.0), eps_asym=st.floats(-0.9, 0.9)))
    def test_charge_is_integral_of_mode(self, P):
        grid = default_grid(P)
        kink = defects.profile_numeric(P, "kink", grid)
        lump = defects.profile_numeric(P, "lump", grid)
        ref0 = integrate(lambda s: psi_unnormalized(P, 0, s), grid.s_min, grid.s_max, tol=1e-12 * kink.charge)
        assert kink.charge == pytest.approx(ref0, rel=1e-8)
        assert np.all(np.diff(kink.values) > -1e-13 * kink.charge)
        if P.eps_asym == 0:
            assert abs(lump.charge) < 1e-8 * kink.charge

    def test_asymmetric_lump_carries_charge(self):
        lump = defects.profile_numeric(ModelParams(1, 1, 0.75), "lump")
        assert abs(lump.charge) > 0.1

    def test_narrow_grid_rejected(self):
        with pytest.raises(ValueError, match="too narrow"):
            defects.profile_numeric(ModelParams(1, 1), "kink", Grid(-1.0, 1.0, 101))

    def test_profile_is_immutable(self):
        prof = defects.profile_numeric(ModelParams(1, 1), "kink")
        with pytest.raises(AttributeError):
            prof.kind = "lump"


class TestParametric:
    def test_kink_at_origin(self):
        P = ModelParams(1, 1)
        c = defects.parametric_potential(P, "kink", 801)
        mid = c.parameter.size // 2
        assert c.parameter[mid] == pytest.approx(0.0, abs=1e-15)
        assert c.potential[mid] == pytest.approx(0.5 * math.exp(-1 / 4), rel=1e-12)
        printed = defects.parametric_potential(P, "kink", 801, printed=True)
        assert printed.potential[mid] == pytest.approx(0.5 * math.exp(-3 / 4), rel=1e-12)

    @pytest.mark.parametrize("gamma", (1.0, 2.0))
    def test_trim_criteria(self, gamma):
        P = ModelParams(gamma, 1)
        kink = defects.parametric_potential(P, "kink", 401)
        assert max(kink.potential[0], kink.potential[-1]) < 1e-12 * kink.potential.max()
        lump = defects.parametric_potential(P, "lump", 401)
        asym = defects.closed_form_asymptotes(P, "lump")[1]
        assert max(abs(lump.field[0] - asym), abs(lump.field[-1] - asym)) < 1e-10
        assert lump.potential[200] == 0.0

    def test_kink_potential_vanishes_at_ends(self):
        z, _ = defects.superpotential_derivs(ModelParams(1, 1), np.array([-1 + 1e-6, 1 - 1e-6]))
        assert np.all(0.5 * z ** 2 < 1e-100)

    def test_n_samples(self):
        with pytest.raises(ValueError):
            defects.parametric_potential(ModelParams(1, 1), "kink", 2)

    def test_numeric_curve_for_asymmetric_model(self):
        prof = defects.profile_numeric(ModelParams(1.5, 2, 0.75), "kink")
        c = defects.parametric_potential_numeric(prof)
        assert c.field.shape == c.potential.shape and np.all(c.potential >= 0)
