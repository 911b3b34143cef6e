import math
from fractions import Fraction

import mpmath
import pytest

from nreq_torque.constants import volume_to_natural
from nreq_torque.errors import (ConvergenceDomainError, DomainError,
                                SingularReflectionError)
from nreq_torque.oscillator import OscillatorParams, xi_k_signed
from nreq_torque.series import (SeriesResult, cpv_series, cpv_terms, high_temp_series,
                                high_temp_terms, low_temp_asymptotic, low_temp_terms,
                                resonance_series, resonance_terms, series_radius)
from nreq_torque.specfun import bernoulli
from nreq_torque.torque import (ThermalState, prefactor, torque_cpv_part,
                                torque_resonance_part, torque_stationary)

HOT = ThermalState.from_kelvin(3000.0, 6000.0)
COLD = ThermalState.from_kelvin(1.0, 2.0)


class TestHighTemperature:
    @pytest.mark.parametrize("T,Tp", [(3000, 6000), (6000, 3000), (3000, 3000.5), (300, 600)])
    def test_matches_closed_form(self, gold, T, Tp):
        s = ThermalState.from_kelvin(T, Tp)
        r = high_temp_series(gold, s)
        assert r.converged and r.radius_ok
        assert r.value == pytest.approx(torque_stationary(gold, s), rel=1e-10)

    def test_gold_hot_term_budget(self, gold):
        r = high_temp_series(gold, HOT, max_terms=40, tol=1e-10)
        assert r.converged and r.terms_used <= 40
        assert abs(r.last_term) <= 1e-10 * abs(r.value)

    def test_equilibrium_stops_immediately(self, gold):
        r = high_temp_series(gold, ThermalState(2.0, 2.0))
        assert r.value == 0.0 and r.converged and r.terms_used == 1

    def test_reciprocal_zero(self, gold):
        r = high_temp_series(gold.replace(omega_c=0.0), HOT)
        assert r.value == 0.0 and r.converged

    def test_radius(self, gold):
        r = high_temp_series(gold, COLD)
        assert not r.radius_ok and not r.converged
        assert series_radius(gold, COLD) > 1
        with pytest.raises(ConvergenceDomainError):
            high_temp_series(gold, COLD, strict=True)

    def test_partial_sums(self, gold):
        r = high_temp_series(gold, HOT)
        assert len(r.partial_sums) == r.terms_used
        assert r.partial_sums[-1] == r.value
        assert isinstance(r, SeriesResult)

    def test_bad_arguments(self, gold):
        with pytest.raises(DomainError):
            high_temp_series(gold, HOT, max_terms=1)
        with pytest.raises(DomainError):
            high_temp_series(gold, HOT, tol=-1)

    def test_term_literal(self, gold):
        # n = 2: C zeta(2)/(2 pi) xi_3 (b - b')
        (n, t2), = high_temp_terms(gold, HOT, 2)
        ref = prefactor(gold) * (math.pi ** 2 / 6) / (2 * math.pi) * xi_k_signed(
            gold.eta, gold.omega_c, 3) * (HOT.beta - HOT.beta_prime)
        assert n == 2 and t2 == pytest.approx(ref, rel=1e-14)


class TestSplit:
    def test_term_for_term(self, gold):
        hi = dict(high_temp_terms(gold, HOT, 41))
        cpv = dict(cpv_terms(gold, HOT, 20))
        res = dict(resonance_terms(gold, HOT, 21))
        for m in range(1, 21):
            assert cpv[m] == hi[2 * m + 1]
            assert res[m] == pytest.approx(hi[2 * m], rel=1e-13, abs=1e-300)

    def test_sum_equals_whole_at_equal_depth(self, gold):
        depth = 12
        whole = high_temp_series(gold, HOT, max_terms=2 * depth + 1, tol=0.0)
        c = cpv_series(gold, HOT, max_terms=depth, tol=0.0)
        r = resonance_series(gold, HOT, max_terms=depth + 1, tol=0.0)
        assert c.value + r.value == pytest.approx(whole.value, rel=1e-12)

    def test_cpv_closed_form(self, gold):
        for s in (HOT, ThermalState.from_kelvin(300, 600)):
            r = cpv_series(gold, s)
            assert r.value == pytest.approx(torque_cpv_part(gold, s), rel=1e-9)

    def test_resonance_closed_form(self, gold, room):
        r = resonance_series(gold, room)
        assert r.converged
        assert r.value == pytest.approx(torque_resonance_part(gold, room), rel=1e-12)

    def test_resonance_m0(self, gold, room):
        (m, t0), = resonance_terms(gold, room, 1)
        ref = -(81.0 * volume_to_natural(gold.volume) * gold.omega_c / (3 * math.pi)) * (
            1 / room.beta - 1 / room.beta_prime)
        assert m == 0 and t0 == pytest.approx(ref, rel=1e-14)

    def test_resonance_undamped_bernoulli_form(self, room):
        p = OscillatorParams.gold(omega_c=1e-2, eta=0.0)
        wc, b, bp = p.omega_c, room.beta, room.beta_prime
        scale = 81.0 * volume_to_natural(p.volume) / (3 * math.pi)
        for m, term in resonance_terms(p, room, 10):
            coeff = float(bernoulli(2 * m) / math.factorial(2 * m))
            ref = -scale * coeff * wc ** (2 * m + 1) * (b ** (2 * m - 1) - bp ** (2 * m - 1))
            assert term == pytest.approx(ref, rel=1e-13, abs=1e-300)

    def test_resonance_strict(self, gold):
        with pytest.raises(ConvergenceDomainError):
            resonance_series(gold, COLD)
        assert not resonance_series(gold, COLD, strict=False).radius_ok

    def test_odd_powers_survive(self, room):
        p = OscillatorParams.gold(eta=1e-12)
        c, r = cpv_series(p, room), resonance_series(p, room)
        assert abs(c.value) < 1e-10 * abs(r.value)

    def test_cpv_leading_log(self, room):
        p = OscillatorParams.gold(eta=1e-9)
        lead = -2 * prefactor(p) * p.eta * p.omega_c * math.log(room.beta / room.beta_prime)
        assert cpv_series(p, room).value == pytest.approx(lead, rel=1e-3)

    def test_cpv_equilibrium(self, gold):
        assert cpv_series(gold, ThermalState(1.0, 1.0)).value == 0.0

    def test_cpv_needs_damping(self, room):
        with pytest.raises(DomainError):
            cpv_series(OscillatorParams.gold(eta=0.0), room)


class TestLowTemperature:
    def test_optimal_truncation(self, gold):
        r = low_temp_asymptotic(gold, COLD)
        exact = torque_stationary(gold, COLD)
        assert r.converged and r.radius_ok
        assert abs(r.value - exact) / abs(exact) < 1e-6

    def test_error_curve_non_monotone(self, gold):
        r = low_temp_asymptotic(gold, COLD, n_terms=400, optimal=False)
        exact = torque_stationary(gold, COLD)
        err = [abs(v - exact) / abs(exact) for v in r.partial_sums]
        k = min(range(len(err)), key=err.__getitem__)
        assert 0 < k < len(err) - 1
        assert err[0] > err[k] and err[-1] > 1e3 * err[k]

    def test_leading_term_literal(self, gold):
        (n, t2), = low_temp_terms(gold, COLD, 1)
        b4 = float(bernoulli(4))
        ref = -prefactor(gold) * (2 * math.pi) ** 4 * b4 / 4 * xi_k_signed(
            gold.eta, gold.omega_c, -2) * (COLD.beta ** -4 - COLD.beta_prime ** -4)
        assert n == 2 and t2 == pytest.approx(ref, rel=1e-13)

    def test_terms_against_bernoulli_form(self, gold):
        # literal term with exact Bernoulli numbers and negative-index xi in mpmath
        s = ThermalState.from_kelvin(5.0, 7.0)
        c = prefactor(gold)
        for n, term in low_temp_terms(gold, s, 30):
            with mpmath.workdps(50):
                xi = mpmath.mpc(gold.eta, gold.omega_c)
                b2n = mpmath.mpf(Fraction(bernoulli(2 * n)).numerator) / Fraction(bernoulli(2 * n)).denominator
                ref = -c * (2 * mpmath.pi) ** (2 * n) * b2n / (2 * n) * mpmath.im(xi ** (2 - 2 * n)) * (
                    mpmath.mpf(s.beta) ** (-2 * n) - mpmath.mpf(s.beta_prime) ** (-2 * n))
            assert term == pytest.approx(float(ref), rel=1e-12)

    def test_equilibrium(self, gold):
        r = low_temp_asymptotic(gold, ThermalState(1e4, 1e4))
        assert r.value == 0.0 and r.converged

    def test_singular(self):
        p = OscillatorParams(omega_p=9.0, eta=0.0, omega_c=0.0)
        with pytest.raises(SingularReflectionError):
            low_temp_asymptotic(p, COLD)

    def test_regime_flag(self, gold, room):
        assert not low_temp_asymptotic(gold, room).radius_ok
