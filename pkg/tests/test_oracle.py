import math

import mpmath
import pytest
from scipy import integrate

from nreq_torque.constants import volume_to_natural
from nreq_torque.errors import AccuracyError, DomainError
from nreq_torque.oracle import (bose_weight_f, cutoff_omega, sokhotski_plemelj_probe,
                                torque1_quadrature, torque_integrand, torque_quadrature,
                                torque_quadrature_two_sided, validation_grid)
from nreq_torque.oscillator import OscillatorParams
from nreq_torque.torque import (ThermalState, torque_eta_zero_limit, torque_rot_hat1,
                                torque_stationary)


def _mp_torque(p, s, dps=80):
    # digamma closed form in high precision
    with mpmath.workdps(dps):
        eta, wc = mpmath.mpf(p.eta), mpmath.mpf(p.omega_c)
        b, bp = mpmath.mpf(s.beta), mpmath.mpf(s.beta_prime)
        xi = mpmath.mpc(eta, wc)
        c = mpmath.mpf(p.omega_p) ** 2 * mpmath.mpf(volume_to_natural(p.volume)) / (3 * mpmath.pi ** 2)
        br = (mpmath.pi * wc * (1 / b - 1 / bp) - 2 * eta * wc * mpmath.log(b / bp)
              + mpmath.im(xi ** 2 * (mpmath.digamma(b * xi / (2 * mpmath.pi))
                                     - mpmath.digamma(bp * xi / (2 * mpmath.pi)))))
        return float(c * br)


class TestStationary:
    def test_gold_against_closed_form(self, gold, room):
        r = torque_quadrature(gold, room)
        assert r.value == pytest.approx(torque_stationary(gold, room), rel=1e-10)
        assert r.abs_error_estimate <= 1e-10 * abs(r.value)

    def test_against_scipy(self, room):
        # independent integrator on the same integrand
        p = OscillatorParams.gold(omega_c=0.02, eta=0.01)
        up = cutoff_omega(p, room)
        ref, _ = integrate.quad(lambda w: torque_integrand(p, room, w), 1e-300, up,
                                points=[p.omega_c], limit=500, epsabs=0, epsrel=1e-12)
        assert torque_quadrature(p, room).value == pytest.approx(ref, rel=1e-9)

    def test_equilibrium_and_zero_field(self, gold, room):
        assert torque_quadrature(gold, ThermalState(40.0, 40.0)).value == 0.0
        assert torque_quadrature(gold.replace(omega_c=0.0), room).value == 0.0

    def test_tolerance_floor(self, gold, room):
        with pytest.raises(DomainError):
            torque_quadrature(gold, room, tol=1e-13)

    def test_budget_exhaustion_carries_estimate(self, room):
        p = OscillatorParams.gold(omega_c=0.1, eta=1e-6)
        with pytest.raises(AccuracyError) as info:
            torque_quadrature(p, room, tol=1e-12, max_subdivisions=3)
        assert math.isfinite(info.value.best_estimate)
        assert info.value.error_estimate > 0

    def test_needs_damping(self, room):
        with pytest.raises(DomainError):
            torque_quadrature(OscillatorParams.gold(eta=0.0), room)

    def test_tail_extension(self):
        # near equilibrium the integral is tiny next to the Bose weight bounding the tail
        p = OscillatorParams.gold(omega_c=1e-3, eta=1e-3)
        s = ThermalState(1.0, 1.0 - 1e-13)
        r = torque_quadrature(p, s)
        assert r.cutoff_omega > cutoff_omega(p, s)
        assert r.value == pytest.approx(_mp_torque(p, s), rel=1e-9)

    @pytest.mark.parametrize("wc,eta", [(1e-4, 0.035), (0.1, 1e-3), (1e-3, 0.5)])
    def test_doubling_cutoff_within_tail_estimate(self, room, wc, eta):
        p = OscillatorParams.gold(omega_c=wc, eta=eta)
        r = torque_quadrature(p, room)
        extra, _ = integrate.quad(lambda w: torque_integrand(p, room, w),
                                  r.cutoff_omega, 2 * r.cutoff_omega, epsabs=0, epsrel=1e-10)
        assert abs(extra) <= r.abs_error_estimate

    def test_near_equilibrium_against_mpmath(self):
        # the integrand forms b - a before scaling, so no cancellation as T' -> T
        p = OscillatorParams.gold(omega_c=1e-3, eta=1e-3)
        for d in (1e-6, 1e-9, 1e-12):
            s = ThermalState(1.0, 1.0 - d)
            assert torque_quadrature(p, s).value == pytest.approx(_mp_torque(p, s), rel=1e-10)

    def test_resonance_refinement(self, room):
        p = OscillatorParams.gold(omega_c=0.1, eta=1e-3)
        r = torque_quadrature(p, room)
        assert r.value == pytest.approx(torque_stationary(p, room), rel=1e-9)
        near = [a for a, b in r.panels if abs(0.5 * (a + b) - 0.1) < 0.01]
        far = [a for a, b in r.panels if abs(0.5 * (a + b) - 0.3) < 0.01]
        assert len(near) > 3 * max(1, len(far))

    def test_panels_tile(self, gold, room):
        r = torque_quadrature(gold, room)
        assert r.panels[0][0] == 0.0 and r.panels[-1][1] == r.cutoff_omega
        for (a, b), (c, _) in zip(r.panels, r.panels[1:]):
            assert b == c

    def test_two_sided_folding(self, gold, room):
        one = torque_quadrature(gold, room).value
        two = torque_quadrature_two_sided(gold, room).value
        assert two == pytest.approx(one, rel=1e-8)


class TestGrid:
    def test_shape(self):
        grid = validation_grid()
        assert len(grid) == 72
        assert {p.omega_p for p, _ in grid} == {1.0, 9.0}
        assert {p.eta for p, _ in grid} == {1e-3, 0.035, 0.5}

    def test_within_reported_error(self):
        for params, state in validation_grid():
            q = torque_quadrature(params, state)
            c = torque_stationary(params, state)
            assert abs(q.value - c) <= 10 * (q.abs_error_estimate + 1e-10 * abs(q.value))


class TestRotational:
    def test_hat1(self, gold, room):
        r = torque1_quadrature(gold, room)
        assert r.value == pytest.approx(torque_rot_hat1(gold, room), rel=1e-10)

    def test_hat1_zero_field(self, gold, room):
        # survives at omega_c = 0
        p = gold.replace(omega_c=0.0)
        assert torque1_quadrature(p, room).value == pytest.approx(torque_rot_hat1(p, room), rel=1e-10)


class TestIntegrand:
    def test_finite_near_zero(self, gold, room):
        for w in (1e-300, 1e-200, 1e-12):
            assert math.isfinite(torque_integrand(gold, room, w))

    def test_undamped_vanishes(self, room):
        p = OscillatorParams.gold(eta=0.0, omega_c=0.01)
        assert all(torque_integrand(p, room, w) == 0.0 for w in (1e-4, 0.005, 0.02, 0.5))

    def test_needs_positive_frequency(self, gold, room):
        with pytest.raises(DomainError):
            torque_integrand(gold, room, 0.0)

    def test_bose_weight(self, gold, room):
        assert bose_weight_f(gold, room, 0.0) == 0.0
        w = 0.03
        coth = lambda x: math.cosh(x) / math.sinh(x)
        raw = w * w * (coth(room.beta * w / 2) - coth(room.beta_prime * w / 2))
        assert bose_weight_f(gold, room, w) / raw == pytest.approx(
            bose_weight_f(gold, room, 2 * w) / (4 * w * w * (
                coth(room.beta * w) - coth(room.beta_prime * w))), rel=1e-13)
        # odd in omega in the bracket, times w^2: f is odd
        assert bose_weight_f(gold, room, -w) == pytest.approx(-bose_weight_f(gold, room, w), rel=1e-14)


class TestProbe:
    def test_approaches_limit(self, room):
        p = OscillatorParams.gold(omega_c=1e-2)
        etas = [1e-3, 1e-4, 1e-5]
        out = sokhotski_plemelj_probe(p, room, etas)
        limit = torque_eta_zero_limit(p, room)
        assert [e for e, _ in out] == etas
        errs = [abs(v - limit) for _, v in out]
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 1e-2 * abs(limit)

    @pytest.mark.parametrize("seq", [[], [1e-3, 1e-3], [1e-4, 1e-3], [0.0], [math.nan]])
    def test_validation(self, room, seq):
        with pytest.raises(DomainError):
            sokhotski_plemelj_probe(OscillatorParams.gold(), room, seq)
