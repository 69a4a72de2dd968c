import math

import pytest
from hypothesis import given, settings, strategies as st

from qring.model import (
    QuantumState,
    RingParams,
    SingularStateError,
    derive_scales,
    energy,
    magnetization,
    persistent_current,
    potential,
)


class TestParams:
    def test_defaults(self):
        p = RingParams()
        assert p.a == 0.0 and p.omega0 == 1.0 and p.omega_c == 0.0 and p.nu == 0.0

    def test_r0(self):
        assert RingParams(omega0=0.5).r0 == pytest.approx(1.0)
        assert RingParams(omega0=1.0).r0 == pytest.approx(math.sqrt(0.5))

    @pytest.mark.parametrize(
        "kwargs", [{"a": -1.0}, {"omega0": 0.0}, {"omega0": -2.0}, {"omega_c": -0.1},
                   {"nu": math.inf}]
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            RingParams(**kwargs)

    def test_state_validation(self):
        with pytest.raises(ValueError):
            QuantumState(n=-1)
        QuantumState(n=0, m=-7)  # any integer m is fine


class TestScales:
    def test_effective_frequency_and_length(self):
        s = derive_scales(RingParams(omega0=1.0, omega_c=4.0), QuantumState())
        assert s.omega_eff == pytest.approx(math.sqrt(1.0 + 4.0))
        assert s.r_eff == pytest.approx(math.sqrt(0.5 / s.omega_eff))

    def test_lam_and_m_phi(self):
        s = derive_scales(RingParams(a=20.0, nu=0.25), QuantumState(m=3))
        assert s.m_phi == pytest.approx(3.25)
        assert s.lam == pytest.approx(math.sqrt(3.25**2 + 20.0))

    def test_r_min(self):
        p = RingParams(a=16.0, omega0=0.5)
        s = derive_scales(p, QuantumState())
        assert s.r_min == pytest.approx(math.sqrt(2.0) * 2.0 * p.r0)


class TestPotential:
    def test_zero_at_minimum(self):
        p = RingParams(a=20.0, omega0=1.3)
        r_min = derive_scales(p, QuantumState()).r_min
        assert potential(p, r_min) == pytest.approx(0.0, abs=1e-12)
        # and positive on either side
        assert potential(p, 0.5 * r_min) > 0
        assert potential(p, 2.0 * r_min) > 0

    def test_dot_limit_is_parabola(self):
        p = RingParams(a=0.0, omega0=2.0)
        assert potential(p, 1.5) == pytest.approx(0.5 * 4.0 * 1.5**2)
        assert potential(p, 0.0) == 0.0

    def test_core_divergence_guard(self):
        with pytest.raises(ValueError):
            potential(RingParams(a=1.0), 0.0)
        with pytest.raises(ValueError):
            potential(RingParams(), -1.0)


class TestEnergy:
    def test_dot_ground(self):
        # a=0, B=0, nu=0: E = omega0 (2n + |m| + 1)
        p = RingParams(omega0=1.0)
        assert energy(p, QuantumState(0, 0)) == pytest.approx(1.0)
        assert energy(p, QuantumState(1, 2)) == pytest.approx(5.0)

    def test_ring_formula(self):
        p = RingParams(a=20.0, omega0=1.0, omega_c=2.0, nu=0.1)
        s = derive_scales(p, QuantumState(1, -2))
        expected = s.omega_eff * (2 + s.lam + 1) + 0.5 * s.m_phi * 2.0 - math.sqrt(20.0)
        assert energy(p, QuantumState(1, -2)) == pytest.approx(expected, rel=1e-14)

    def test_degeneracy_at_half_flux(self):
        # B=0, nu=+-1/2: E(n, m) = E(n, -m-2nu) since lam and m_phi*omega_c match
        for nu in (0.5, -0.5):
            p = RingParams(a=20.0, nu=nu)
            for n in (0, 1, 3):
                for m in (0, 1, 4):
                    partner = -m - int(round(2 * nu))
                    assert energy(p, QuantumState(n, m)) == pytest.approx(
                        energy(p, QuantumState(n, partner)), abs=1e-12
                    )

    @given(
        m=st.integers(-6, 6),
        nu_int=st.integers(-3, 3),
        n=st.integers(0, 4),
        a=st.sampled_from([0.0, 5.0, 20.0]),
    )
    @settings(max_examples=60, deadline=None)
    def test_gauge_shift_invariance(self, m, nu_int, n, a):
        # (m, nu) -> (m - k, nu + k) leaves every spectral quantity unchanged
        nu0 = 0.17
        p1 = RingParams(a=a, nu=nu0)
        p2 = RingParams(a=a, nu=nu0 + nu_int)
        s1, s2 = QuantumState(n, m), QuantumState(n, m - nu_int)
        assert energy(p1, s1) == pytest.approx(energy(p2, s2), rel=1e-12, abs=1e-12)
        assert magnetization(p1, s1) == pytest.approx(
            magnetization(p2, s2), rel=1e-12, abs=1e-12
        )


class TestCurrentMagnetization:
    def test_current_zero_field_sign(self):
        # J = -(omega0/2pi) m_phi/lam at B=0: negative for positive m_phi
        p = RingParams(a=20.0)
        assert persistent_current(p, QuantumState(0, 3)) < 0
        assert persistent_current(p, QuantumState(0, -3)) > 0

    def test_current_closed_value(self):
        p = RingParams(a=20.0, omega0=1.0, omega_c=2.0)
        s = derive_scales(p, QuantumState(0, 2))
        expected = -(1.0 / (2 * math.pi)) * (
            (2.0 / s.lam) * math.sqrt(2.0) + 1.0
        )
        assert persistent_current(p, QuantumState(0, 2)) == pytest.approx(
            expected, rel=1e-14
        )

    def test_current_is_energy_slope(self):
        # J = -(1/2pi) dE/dnu by definition of the AB derivative
        p0 = RingParams(a=20.0, omega_c=1.5, nu=0.2)
        h = 1e-6
        st_ = QuantumState(1, 1)
        dE = (
            energy(RingParams(a=20.0, omega_c=1.5, nu=0.2 + h), st_)
            - energy(RingParams(a=20.0, omega_c=1.5, nu=0.2 - h), st_)
        ) / (2 * h)
        assert persistent_current(p0, st_) == pytest.approx(-dE / (2 * math.pi), rel=1e-6)

    def test_current_singular_at_lam_zero(self):
        with pytest.raises(SingularStateError):
            persistent_current(RingParams(a=0.0), QuantumState(0, 0))

    def test_magnetization_is_field_slope(self):
        # M = -dE/dB with omega_c = B in these units
        base = dict(a=20.0, nu=0.1)
        h = 1e-6
        st_ = QuantumState(2, -1)
        dE = (
            energy(RingParams(omega_c=3.0 + h, **base), st_)
            - energy(RingParams(omega_c=3.0 - h, **base), st_)
        ) / (2 * h)
        assert magnetization(RingParams(omega_c=3.0, **base), st_) == pytest.approx(
            -dE, rel=1e-6
        )

    def test_magnetization_zero_field(self):
        assert magnetization(RingParams(a=20.0), QuantumState(0, 2)) == pytest.approx(-1.0)
