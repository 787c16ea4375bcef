import cmath
import math

import numpy as np
import pytest

from htaspec import confine1d as c1
from htaspec import special
from htaspec.errors import DomainError


@pytest.fixture(scope="module")
def sys_cc():
    return c1.Confinement1DSystem(m=0.615, b=0.4069)


class TestSystem:
    def test_omega_definition(self, sys_cc):
        assert sys_cc.omega == sys_cc.b**2 / (8 * sys_cc.m)

    def test_positivity_required(self):
        with pytest.raises(DomainError):
            c1.Confinement1DSystem(0.0, 1.0)
        with pytest.raises(DomainError):
            c1.Confinement1DSystem(1.0, -0.1)


class TestEnergy1D:
    def test_ground_state_from_airy_zero(self, sys_cc):
        # oracle: scipy's tabulated Airy zero
        from scipy.special import ai_zeros

        z1 = ai_zeros(1)[0][0]
        want = -z1 * sys_cc.omega ** (1.0 / 3.0)
        assert c1.energy_1d(sys_cc, 0, 0.0) == pytest.approx(want, rel=1e-10)

    def test_kinetic_term_is_additive(self, sys_cc):
        for n in (0, 1, 3):
            for p in (0.3, 1.1):
                shift = c1.energy_1d(sys_cc, n, p) - c1.energy_1d(sys_cc, n, 0.0)
                assert shift == pytest.approx(p * p / (2 * sys_cc.m), rel=1e-12)

    def test_ladder_ordering(self, sys_cc):
        es = [c1.energy_1d(sys_cc, n, 0.0) for n in range(3)]
        assert es[0] < es[1] < es[2]

    def test_negative_n_rejected(self, sys_cc):
        with pytest.raises(DomainError):
            c1.energy_1d(sys_cc, -1, 0.0)

    def test_energy_matches_bisection_root_of_boundary_condition(self, sys_cc):
        # ground state = smallest E > p^2/2m with psi(0, p, E) = 0
        p = 0.4
        kin = p * p / (2 * sys_cc.m)
        e_lo, e_hi = kin + 1e-6, kin + 3.0
        f = lambda e: c1.psi_1d(sys_cc, 0.0, p, e, c1=1.0)
        flo = f(e_lo)
        # walk to the first sign change
        grid = np.linspace(e_lo, e_hi, 400)
        vals = [f(e) for e in grid]
        idx = next(i for i in range(1, len(vals)) if (vals[i] < 0) != (vals[0] < 0))
        lo, hi = grid[idx - 1], grid[idx]
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if (f(mid) < 0) == (f(lo) < 0):
                lo = mid
            else:
                hi = mid
        assert c1.energy_1d(sys_cc, 0, p) == pytest.approx(0.5 * (lo + hi), abs=1e-8)


class TestPsi1D:
    def test_boundary_condition(self, sys_cc):
        e0 = c1.energy_1d(sys_cc, 0, 0.7)
        assert abs(c1.psi_1d(sys_cc, 0.0, 0.7, e0, c1=1.0)) < 1e-9

    def test_decay_at_large_argument(self, sys_cc):
        e0 = c1.energy_1d(sys_cc, 0, 0.0)
        w = sys_cc.omega ** (-1.0 / 3.0)
        r_far = (21.0 / w + e0) / sys_cc.b
        assert abs(c1.psi_1d(sys_cc, r_far, 0.0, e0)) < 1e-10

    def test_recomposition(self, sys_cc):
        e0 = c1.energy_1d(sys_cc, 0, 0.0)
        w = sys_cc.omega ** (-1.0 / 3.0)
        r, p = 1.3, 0.2
        direct = special.airy_ai((p * p / (2 * sys_cc.m) + sys_cc.b * r - e0) * w)
        assert c1.psi_1d(sys_cc, r, p, e0, c1=1.0) == pytest.approx(direct, rel=1e-14)

    def test_negative_r_rejected(self, sys_cc):
        with pytest.raises(DomainError):
            c1.psi_1d(sys_cc, -0.1, 0.0, 1.0)

    def test_schrodinger_residual_in_collective_variable(self, sys_cc):
        # omega * d2 psi/dA2 = (A - E) psi, A = p^2/2m + b r; finite
        # differences in r at fixed p give d2/dA2 = d2/dr2 / b^2
        e0 = c1.energy_1d(sys_cc, 0, 0.0)
        rng = np.random.RandomState(3)
        for _ in range(20):
            r = rng.uniform(0.3, 4.0)
            p = rng.uniform(-1.0, 1.0)
            # Richardson pair with a generous step: the deep Airy tail makes
            # psi'' noise-limited, and noise scales like 1/h^2
            h = 1e-2
            psi = lambda rr: c1.psi_1d(sys_cc, rr, p, e0, c1=1.0)
            stencil = lambda hh: (psi(r + hh) - 2 * psi(r) + psi(r - hh)) / hh**2
            d2 = (4 * stencil(h / 2) - stencil(h)) / 3 / sys_cc.b**2
            a_val = p * p / (2 * sys_cc.m) + sys_cc.b * r
            lhs = sys_cc.omega * d2
            rhs = (a_val - e0) * psi(r)
            scale = max(abs(lhs), abs(rhs), 1e-12)
            assert abs(lhs - rhs) / scale < 1e-6


class TestNormalization:
    def test_positive_and_normalized(self, sys_cc):
        e0 = c1.energy_1d(sys_cc, 0, 0.0)
        c = c1.normalize_1d(sys_cc, e0)
        assert c > 0
        total = c * c * 4.0 * math.pi * c1._norm_integral(sys_cc, e0, 15.0)
        assert total == pytest.approx(1.0, abs=1e-3)

    def test_truncation_refinement_stable(self, sys_cc):
        e0 = c1.energy_1d(sys_cc, 0, 0.0)
        base = c1._norm_integral(sys_cc, e0, 15.0)
        wide = c1._norm_integral(sys_cc, e0, 19.0)
        assert abs(wide - base) / base < 1e-5

    def test_closed_forms_are_diagnostic_only(self, sys_cc):
        # the sqrt-form constant does NOT match the quadrature one; the
        # measured ratio is frozen here to document the discrepancy
        e0 = c1.energy_1d(sys_cc, 0, 0.0)
        c_quad = c1.normalize_1d(sys_cc, e0)
        ratio = c_quad / c1.closed_form_c1(sys_cc)
        assert ratio == pytest.approx(0.09786, abs=2e-4)
        assert abs(ratio - 1.0) > 0.5
        # and the further-reduced printed constant is not even a rescaling
        # of the sqrt form (the square root was dropped in the reduction)
        assert c1.closed_form_c1_reduced(sys_cc) < 1e-3 * c1.closed_form_c1(sys_cc)


class TestMomentIdentity:
    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("x", [0.0, 1.0, 2.0])
    def test_residual_small(self, n, x):
        assert c1.moment_identity_check(x, n) < 1e-6

    def test_against_finite_difference_oracle(self):
        # independent route: J_{n-1}'' by finite differences in x
        from scipy.integrate import quad

        def moment(n, x):
            val, _ = quad(lambda t: t**n * special.airy_ai(t + x) ** 2, 0, 30, limit=200)
            return val

        for x in (0.0, 2.0):
            h = 1e-3
            d2 = (moment(0, x + h) - 2 * moment(0, x) + moment(0, x - h)) / h**2
            rhs = (1.0 / 3.0) * (0.5 * d2 - 2 * x * moment(0, x))
            assert moment(1, x) == pytest.approx(rhs, rel=1e-5)

    def test_n_zero_rejected(self):
        with pytest.raises(DomainError):
            c1.moment_identity_check(0.0, 0)


class TestTimeFactor:
    def test_modulus_time_independent(self, sys_cc):
        rng = np.random.RandomState(8)
        for _ in range(100):
            r, p = rng.uniform(0, 3), rng.uniform(-2, 2)
            t1, t2 = rng.uniform(-20, 20, size=2)
            m1 = abs(c1.time_factor(sys_cc, r, p, t1))
            m2 = abs(c1.time_factor(sys_cc, r, p, t2))
            assert abs(m1 - m2) <= 1e-14 * m1

    def test_t_zero_is_bare_prefactor(self, sys_cc):
        val = c1.time_factor(sys_cc, 1.0, 1.0, 0.0)
        pref = -1.0 / (2 * math.pi) * (sys_cc.m / sys_cc.b**2) ** (1.0 / 9.0)
        assert val == pytest.approx(complex(pref, 0.0), rel=1e-14)

    def test_phase_matches_direct_exponent(self, sys_cc):
        m, b = sys_cc.m, sys_cc.b
        r = p = t = 1.0
        want = (
            -p * p * t / (4 * math.pi * m)
            - b * r * t / (2 * math.pi)
            - t**3 * (m / b**2) ** (1.0 / 3.0) / (24 * math.pi**3)
        )
        pref = -1.0 / (2 * math.pi) * (m / b**2) ** (1.0 / 9.0)
        assert c1.time_factor(sys_cc, r, p, t) == pytest.approx(pref * cmath.exp(1j * want), rel=1e-13)
