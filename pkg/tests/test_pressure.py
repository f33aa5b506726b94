"""Pressure representations: derivative form vs Poisson-resummed form vs
zero-T-plus-thermal-log form, the thermodynamic relation P = -dF/dd, and
closed-form limits."""

import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir_plates import (
    DomainError,
    PlateKind,
    PlateSystem,
    SeriesControl,
    SlowConvergenceError,
    ThermalPoint,
    free_energy_auto,
    pressure_auto,
    pressure_zero_T,
)
from casimir_plates.pressure import (
    pressure_high_T,
    pressure_net_dfdxi,
    pressure_poisson,
    pressure_thermal_log,
)

TIGHT = SeriesControl(rel_tol=1e-14)


def boyer(d=1.0):
    return PlateSystem(d=d, kind=PlateKind.BOYER_MIXED)


def _mpmath_pressure(xi, d=1.0, prec=40):
    """Oracle: P(xi, d) = -d/dd [F/L^2], with F built independently as the
    conductor-pair difference F(d) = g(2 xi_d)/(8 d^3) - g(xi_d)/d^3 where
    g is the dimensionless conducting-plate profile, differentiated in
    arbitrary precision."""
    with mpmath.workdps(prec):
        dd = mpmath.mpf(d)
        beta = dd / (mpmath.pi * mpmath.mpf(xi))

        def g(y):
            def term(n):
                s = n / (2 * y)
                return (
                    4 * y**3 / n**3 * (mpmath.coth(s) - 1)
                    + 2 * y**2 / n**2 / mpmath.sinh(s) ** 2
                )

            return -mpmath.pi**2 / 720 - (mpmath.pi**2 / 8) * (
                4 * y**3 * mpmath.zeta(3) + mpmath.nsum(term, [1, mpmath.inf])
            )

        def free(dv):
            y = dv / (mpmath.pi * beta)
            return g(2 * y) / (8 * dv**3) - g(y) / dv**3

        return float(-mpmath.diff(free, dd))


class TestOracle:
    @pytest.mark.parametrize("xi", [0.05, 0.1, 0.3, 0.5, 1.0, 2.0])
    def test_pressure_matches_mpmath_derivative(self, xi):
        ref = _mpmath_pressure(xi)
        got = pressure_auto(1.0, xi, TIGHT).value
        assert got == pytest.approx(ref, rel=1e-8)

    def test_pressure_is_minus_dF_dd(self):
        # central finite difference of the free energy in d
        d, xi = 1.0, 0.7
        h = 1e-5
        beta = d / (math.pi * xi)

        def F(dv):
            return free_energy_auto(boyer(dv), dv / (math.pi * beta), TIGHT).value

        fd = -(F(d + h) - F(d - h)) / (2.0 * h)
        got = pressure_auto(d, xi, TIGHT).value
        assert got == pytest.approx(fd, rel=1e-7)


class TestRepresentationEquivalence:
    @pytest.mark.parametrize("xi", [0.05, 0.1, 0.3, 0.5, 1.0, 2.0])
    def test_dfdxi_equals_poisson(self, xi):
        d = 1.0
        t = ThermalPoint.from_xi(xi, d)
        a = pressure_net_dfdxi(t, d, TIGHT).value
        b = pressure_poisson(t, d, TIGHT).value
        assert a == pytest.approx(b, abs=1e-8 * max(1.0, abs(a)))

    @pytest.mark.parametrize("xi", [0.05, 0.1, 0.3, 0.5, 1.0, 2.0])
    def test_thermal_log_decomposition(self, xi):
        d = 1.0
        t = ThermalPoint.from_xi(xi, d)
        a = pressure_net_dfdxi(t, d, TIGHT).value
        b = pressure_zero_T(boyer(d)) + pressure_thermal_log(t, d, TIGHT).value
        assert a == pytest.approx(b, abs=1e-8 * max(1.0, abs(a)))

    def test_zero_temperature_limit(self):
        d = 1.0
        t = ThermalPoint.from_beta(100.0, d)
        got = pressure_net_dfdxi(t, d, TIGHT).value
        assert got == pytest.approx(pressure_zero_T(boyer(d)), abs=1e-12)

    def test_thermal_log_vanishing_at_low_T(self):
        d = 1.0
        # the thermal correction decays like e^{-1/(2 xi)}
        assert abs(
            pressure_thermal_log(ThermalPoint.from_xi(0.02, d), d, TIGHT).value
        ) < 1e-12
        assert abs(
            pressure_thermal_log(ThermalPoint.from_xi(0.01, d), d, TIGHT).value
        ) < 1e-15


class TestCancellationAndAsymptotics:
    def test_poisson_recovers_zero_T_at_small_xi(self):
        # at xi = 0.05 the Poisson form carries ~1.6e-4 relative residual
        # from the large-term cancellation; at xi = 0.04 it is below 1e-4
        d = 1.0
        p0 = pressure_zero_T(boyer(d))
        got5 = pressure_poisson(ThermalPoint.from_xi(0.05, d), d, TIGHT,
                                xi_floor=0.03).value
        assert got5 == pytest.approx(p0, rel=2e-4)
        got4 = pressure_poisson(ThermalPoint.from_xi(0.04, d), d, TIGHT,
                                xi_floor=0.03).value
        assert got4 == pytest.approx(p0, rel=1e-4)

    @pytest.mark.parametrize("beta,rtol", [(0.1, 1e-6), (0.5, 1e-3)])
    def test_high_T_closed_form(self, beta, rtol):
        d = 1.0
        t = ThermalPoint.from_beta(beta, d)
        exact = pressure_poisson(t, d, TIGHT).value
        assert pressure_high_T(t, d) == pytest.approx(exact, rel=rtol)

    def test_stefan_boltzmann_dominates(self):
        d, beta = 1.0, 0.05
        t = ThermalPoint.from_beta(beta, d)
        got = pressure_poisson(t, d, TIGHT).value
        assert got == pytest.approx(math.pi**2 / (45.0 * beta**4), rel=1e-3)

    def test_printed_high_T_variant_within_a_part_in_a_thousand(self):
        # the variant without the 1/pi in the zeta(3) coefficient is a
        # common transcription; it still lands within 1e-3 at beta = 0.1
        d, beta = 1.0, 0.1
        t = ThermalPoint.from_beta(beta, d)
        exact = pressure_poisson(t, d, TIGHT).value
        variant = (
            math.pi**2 / (45.0 * beta**4)
            + 3.0 * float(mpmath.zeta(3)) / (16.0 * d**3 * beta)
            + math.exp(-4.0 * math.pi * d / beta)
            / (2.0 * math.pi * d**3 * beta)
            * (1.0 + 4.0 * math.pi * d / beta + 8.0 * math.pi**2 * d**2 / beta**2)
        )
        assert variant == pytest.approx(exact, rel=1e-3)
        assert variant != pytest.approx(exact, rel=1e-5)


class TestScalingAndSign:
    @pytest.mark.parametrize("lam", [0.5, 2.0, 3.7])
    def test_homogeneity(self, lam):
        xi = 0.7
        base = pressure_auto(1.0, xi, TIGHT).value
        scaled = pressure_auto(lam, xi, TIGHT).value
        assert scaled == pytest.approx(base / lam**4, rel=1e-10)

    @settings(max_examples=30, deadline=None)
    @given(st.floats(min_value=0.0, max_value=5.0))
    def test_always_repulsive(self, xi):
        assert pressure_auto(1.0, xi).value > 0.0

    def test_zero_T_value(self):
        assert pressure_zero_T(boyer(1.0)) == pytest.approx(
            0.875 * math.pi**2 / 240.0, rel=1e-15
        )

    def test_router_zero_xi_exact(self):
        r = pressure_auto(1.0, 0.0)
        assert r.value == pressure_zero_T(boyer(1.0))
        assert r.abs_err_est == 0.0


class TestValidation:
    def test_domain_errors(self):
        with pytest.raises(DomainError):
            pressure_auto(-1.0, 0.5)
        with pytest.raises(DomainError):
            pressure_auto(1.0, -0.5)
        t = ThermalPoint(beta=1.0, xi=0.5)  # inconsistent with d = 1
        with pytest.raises(DomainError):
            pressure_net_dfdxi(t, 1.0, TIGHT)

    def test_poisson_floor(self):
        t = ThermalPoint.from_xi(0.01, 1.0)
        with pytest.raises(SlowConvergenceError):
            pressure_poisson(t, 1.0, TIGHT)

    def test_error_estimates_bound_true_error(self):
        for xi in (0.05, 0.3, 1.0):
            ref = _mpmath_pressure(xi)
            r = pressure_auto(1.0, xi, TIGHT)
            assert abs(r.value - ref) <= 10.0 * r.abs_err_est + 1e-11 * abs(ref)
