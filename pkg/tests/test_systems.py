import math

import numpy as np
import pytest

from dynbench.integrators import (
    Blowup,
    IntegratorConfig,
    integrate,
    make_sample_stepper,
    spin_up_initial_condition,
)
from dynbench.systems import (
    DimensionMismatch,
    KuramotoSivashinskyParams,
    Lorenz96Params,
    LorenzParams,
    SystemId,
    default_grid,
    default_params,
    mechanical_energy,
    rhs,
)

# Reference end states for dx/dt = (sigma(y-x), x(rho-z)-y, xy-beta z) from
# (1,1,1), computed once with an adaptive embedded RK integrator at tolerance
# 1e-12 (DOP853) and frozen; regenerate_golden.py reproduces them.
LORENZ_ORACLE_T1 = np.array([-9.378570010928021, -8.35703378843025, 29.362325337366094])
LORENZ_ORACLE_T10 = np.array([-4.9026875411579995, -3.743872921828979, 24.690858102808477])


class TestRhs:
    def test_lorenz_origin_fixed_point(self):
        out = rhs(SystemId.LORENZ, default_params(SystemId.LORENZ), np.zeros(3))
        assert np.array_equal(out, np.zeros(3))

    def test_lorenz_unit_state(self):
        out = rhs(SystemId.LORENZ, default_params(SystemId.LORENZ), np.ones(3))
        np.testing.assert_allclose(out, [0.0, 26.0, -5.0 / 3.0], rtol=1e-14)

    def test_rossler_unit_state(self):
        out = rhs(SystemId.ROSSLER, default_params(SystemId.ROSSLER), np.ones(3))
        np.testing.assert_allclose(out, [-2.0, 1.2, 0.2 + (1.0 - 5.7)], rtol=1e-14)

    def test_double_pendulum_rest_is_equilibrium(self):
        out = rhs(SystemId.DOUBLE_PENDULUM, default_params(SystemId.DOUBLE_PENDULUM), np.zeros(4))
        np.testing.assert_allclose(out, np.zeros(4), atol=1e-15)

    def test_lorenz96_zero_state(self):
        out = rhs(SystemId.LORENZ96, Lorenz96Params(forcing=8.0, n=40), np.zeros(40))
        assert np.array_equal(out, np.full(40, 8.0))

    @pytest.mark.parametrize("system", [SystemId.KURAMOTO_SIVASHINSKY, SystemId.BURGERS])
    def test_pde_constant_field(self, system):
        out = rhs(system, default_params(system), np.full(128, 0.7))
        np.testing.assert_allclose(out, np.zeros(128), atol=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            rhs(SystemId.LORENZ, default_params(SystemId.LORENZ), np.zeros(4))
        with pytest.raises(DimensionMismatch):
            rhs(SystemId.LORENZ96, Lorenz96Params(n=40), np.zeros(13))


class TestIntegrate:
    def test_zero_steps_returns_initial_column(self):
        x0 = np.array([1.0, 2.0, 3.0])
        out = integrate(SystemId.LORENZ, default_params(SystemId.LORENZ), None, x0,
                        IntegratorConfig(dt=0.01, steps=0))
        assert out.shape == (3, 1)
        assert np.array_equal(out[:, 0], x0)

    def test_ks_constant_field_is_stationary(self):
        params = default_params(SystemId.KURAMOTO_SIVASHINSKY)
        grid = default_grid(SystemId.KURAMOTO_SIVASHINSKY)
        u0 = np.full(128, 0.3)
        out = integrate(SystemId.KURAMOTO_SIVASHINSKY, params, grid, u0,
                        IntegratorConfig(dt=0.25, steps=20, method="etdrk4"))
        np.testing.assert_allclose(out, np.tile(u0[:, None], (1, 21)), atol=1e-12)

    def test_deterministic_bit_identical(self):
        params = default_params(SystemId.LORENZ)
        cfg = IntegratorConfig(dt=0.01, steps=500)
        x0 = np.array([1.0, 1.0, 1.0])
        a = integrate(SystemId.LORENZ, params, None, x0, cfg)
        b = integrate(SystemId.LORENZ, params, None, x0, cfg)
        assert a.tobytes() == b.tobytes()

    def test_method_must_match_system(self):
        with pytest.raises(ValueError):
            integrate(SystemId.LORENZ, default_params(SystemId.LORENZ), None, np.ones(3),
                      IntegratorConfig(dt=0.01, steps=1, method="etdrk4"))

    def test_blowup_reports_step(self):
        with pytest.raises(Blowup) as err:
            integrate(SystemId.LORENZ, default_params(SystemId.LORENZ), None,
                      np.array([1.0, 1.0, 1.0]), IntegratorConfig(dt=10.0, steps=50))
        assert err.value.step >= 1

    def test_lorenz_matches_oracle_over_ten_units(self):
        out = integrate(SystemId.LORENZ, LorenzParams(), None, np.ones(3),
                        IntegratorConfig(dt=1e-3, steps=10_000))
        err = np.linalg.norm(out[:, -1] - LORENZ_ORACLE_T10) / np.linalg.norm(LORENZ_ORACLE_T10)
        assert err < 1e-6


class TestPhysics:
    def test_rk4_error_drops_by_12x_per_halving(self):
        params = LorenzParams()
        errors = []
        for dt in (0.04, 0.02, 0.01):
            out = integrate(SystemId.LORENZ, params, None, np.ones(3),
                            IntegratorConfig(dt=dt, steps=int(round(1.0 / dt))))
            errors.append(np.linalg.norm(out[:, -1] - LORENZ_ORACLE_T1))
        assert errors[0] / errors[1] >= 12.0
        assert errors[1] / errors[2] >= 12.0

    def test_etdrk4_order_at_least_three_and_a_half(self):
        params = KuramotoSivashinskyParams()
        grid = default_grid(SystemId.KURAMOTO_SIVASHINSKY)
        x = grid.length * np.arange(grid.n_points) / grid.n_points
        u0 = np.cos(x / 16.0) * (1.0 + np.sin(x / 16.0))
        horizon = 2.0

        def end_state(dt):
            out = integrate(SystemId.KURAMOTO_SIVASHINSKY, params, grid, u0,
                            IntegratorConfig(dt=dt, steps=int(round(horizon / dt)),
                                             method="etdrk4"))
            return out[:, -1]

        ref = end_state(horizon / 512)
        errs = [np.linalg.norm(end_state(dt) - ref) for dt in (0.25, 0.125)]
        order = math.log2(errs[0] / errs[1])
        assert order >= 3.5

    def test_double_pendulum_energy_conservation(self):
        params = default_params(SystemId.DOUBLE_PENDULUM)
        x0 = np.array([2.0, 1.0, 0.0, 0.0])
        out = integrate(SystemId.DOUBLE_PENDULUM, params, None, x0,
                        IntegratorConfig(dt=1e-3, steps=10_000))
        e0 = mechanical_energy(params, out[:, 0])
        drift = max(abs(mechanical_energy(params, out[:, k]) - e0) for k in range(0, 10_001, 250))
        assert drift / abs(e0) < 1e-6

    def test_lorenz96_unforced_energy_decay(self):
        params = Lorenz96Params(forcing=0.0, n=40)
        x0 = np.random.default_rng(8).standard_normal(40)
        dt = 0.01
        out = integrate(SystemId.LORENZ96, params, None, x0,
                        IntegratorConfig(dt=dt, steps=200))
        e0 = 0.5 * np.sum(x0**2)
        for k in range(0, 201, 20):
            expected = e0 * math.exp(-2.0 * dt * k)
            actual = 0.5 * np.sum(out[:, k] ** 2)
            assert abs(actual - expected) / expected < 1e-4

    @pytest.mark.parametrize("system", [SystemId.KURAMOTO_SIVASHINSKY, SystemId.BURGERS])
    def test_spatial_mean_conserved(self, system):
        params = default_params(system)
        grid = default_grid(system)
        rng = np.random.default_rng(11)
        x = grid.length * np.arange(grid.n_points) / grid.n_points
        u0 = 0.5 + 0.3 * np.cos(2 * np.pi * x / grid.length) + 0.05 * rng.standard_normal(grid.n_points)
        out = integrate(system, params, grid, u0,
                        IntegratorConfig(dt=0.25 if system is SystemId.KURAMOTO_SIVASHINSKY else 0.05,
                                         steps=400, method="etdrk4"))
        means = out.mean(axis=0)
        assert np.abs(means - means[0]).max() < 1e-8


def _leading_lyapunov(system, params, x0, dt, samples, renorm=1e-8):
    # Benettin two-trajectory estimate with per-sample renormalization.
    from dynbench.integrators import make_sample_stepper

    step = make_sample_stepper(system, params, None, dt, 1)
    a = np.asarray(x0, dtype=float)
    b = a + renorm * np.ones_like(a) / math.sqrt(a.size)
    total = 0.0
    for _ in range(samples):
        a, b = step(a), step(b)
        dist = np.linalg.norm(b - a)
        total += math.log(dist / renorm)
        b = a + (b - a) * (renorm / dist)
    return total / (samples * dt)


class TestDefaultParams:
    def test_lorenz_default_regime_is_chaotic(self):
        params = default_params(SystemId.LORENZ)
        x0 = spin_up_initial_condition(SystemId.LORENZ, params, None, 0)
        lam = _leading_lyapunov(SystemId.LORENZ, params, x0, 0.01, 5000)
        assert 0.5 < lam < 1.5   # literature value ~0.9

    def test_rossler_default_regime_is_chaotic(self):
        params = default_params(SystemId.ROSSLER)
        x0 = spin_up_initial_condition(SystemId.ROSSLER, params, None, 0)
        lam = _leading_lyapunov(SystemId.ROSSLER, params, x0, 0.05, 8000)
        assert lam > 0.02        # literature value ~0.07


class TestSpinUp:
    def test_deterministic(self):
        params = default_params(SystemId.ROSSLER)
        a = spin_up_initial_condition(SystemId.ROSSLER, params, None, 77)
        b = spin_up_initial_condition(SystemId.ROSSLER, params, None, 77)
        assert np.array_equal(a, b)

    def test_seed_changes_state(self):
        params = default_params(SystemId.LORENZ)
        a = spin_up_initial_condition(SystemId.LORENZ, params, None, 1)
        b = spin_up_initial_condition(SystemId.LORENZ, params, None, 2)
        assert not np.array_equal(a, b)

    def test_lorenz_lands_in_absorbing_ball(self):
        # ||(x, y, z - rho - sigma)|| <= 2*rho holds on the attractor.
        params = LorenzParams()
        bound = 2.0 * params.rho
        for seed in range(100):
            s = spin_up_initial_condition(SystemId.LORENZ, params, None, seed)
            radius = math.sqrt(s[0] ** 2 + s[1] ** 2 + (s[2] - params.rho - params.sigma) ** 2)
            assert radius <= bound

    def test_pde_spin_up_is_on_attractor(self):
        params = default_params(SystemId.KURAMOTO_SIVASHINSKY)
        grid = default_grid(SystemId.KURAMOTO_SIVASHINSKY)
        u = spin_up_initial_condition(SystemId.KURAMOTO_SIVASHINSKY, params, grid, 5)
        assert 0.5 < np.abs(u).max() < 5.0
        assert abs(u.mean()) < 1e-10


class TestStitching:
    def test_sample_step_is_pure_function_of_column(self):
        params = default_params(SystemId.BURGERS)
        grid = default_grid(SystemId.BURGERS)
        u0 = spin_up_initial_condition(SystemId.BURGERS, params, grid, 3)
        cfg = IntegratorConfig(dt=0.05, steps=10, substeps_per_sample=2, method="etdrk4")
        out = integrate(SystemId.BURGERS, params, grid, u0, cfg)
        step = make_sample_stepper(SystemId.BURGERS, params, grid, cfg.dt, cfg.substeps_per_sample)
        assert np.array_equal(step(out[:, 4]), out[:, 5])
