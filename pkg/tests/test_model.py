import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swipt_kalman import INF, GaussMarkovModel, advance_state, asymptotic_variance, sample_trajectory, second_moment
from swipt_kalman.model import sample_states


class TestConstruction:
    @pytest.mark.parametrize("a", [1.0, -1.0, 1.5])
    def test_rejects_unstable(self, a):
        with pytest.raises(ValueError, match="stable"):
            GaussMarkovModel(a=a, sigma_u2=0.1)

    @pytest.mark.parametrize("field", ["sigma_u2", "sigma02"])
    def test_rejects_negative_variance(self, field):
        kwargs = dict(a=0.5, sigma_u2=0.1, sigma02=0.1)
        kwargs[field] = -0.1
        with pytest.raises(ValueError):
            GaussMarkovModel(**kwargs)

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            GaussMarkovModel(a=float("nan"), sigma_u2=0.1)

    def test_sigma2(self):
        assert GaussMarkovModel(a=0.8, sigma_u2=0.36).sigma2 == pytest.approx(1.0, rel=1e-15)


class TestAdvanceState:
    def test_zero_noise(self):
        m = GaussMarkovModel(a=0.8, sigma_u2=0.0)
        assert advance_state(m, 1 + 0j, 0) == 0.8 + 0j

    def test_memoryless(self):
        m = GaussMarkovModel(a=0.0, sigma_u2=1.0)
        assert advance_state(m, 7 - 3j, 0.3j) == 0.3j

    def test_arithmetic(self):
        m = GaussMarkovModel(a=0.8, sigma_u2=1.0)
        assert advance_state(m, 1 + 1j, 0.1 - 0.2j) == pytest.approx(0.9 + 0.6j, abs=1e-15)


class TestAsymptoticVariance:
    @pytest.mark.parametrize(
        "su2,a,expected", [(0.001, 0.8, 0.001 / 0.36), (0.36, 0.8, 1.0), (0.123, 0.0, 0.123)]
    )
    def test_values(self, su2, a, expected):
        assert asymptotic_variance(GaussMarkovModel(a=a, sigma_u2=su2)) == pytest.approx(expected, rel=1e-14)


class TestSecondMoment:
    def test_infinity(self):
        m = GaussMarkovModel(a=0.8, sigma_u2=0.001)
        assert second_moment(m, INF) == pytest.approx(0.0027777777777, rel=1e-10)

    def test_memoryless_n0(self):
        m = GaussMarkovModel(a=0.0, sigma_u2=0.25, mu0=3.0, sigma02=9.0)
        assert second_moment(m, 0) == 0.25

    def test_first_update(self, base_model):
        # 0.64 * 0.1 + (0.001 / 0.36) * 0.36
        assert second_moment(base_model, 0) == pytest.approx(0.065, rel=1e-14)

    def test_infinity_is_not_a_number(self):
        m = GaussMarkovModel(a=0.5, sigma_u2=1.0)
        with pytest.raises(TypeError):
            second_moment(m, float("inf"))
        with pytest.raises(ValueError):
            second_moment(m, -1)

    @settings(max_examples=60, deadline=None)
    @given(
        a=st.floats(-0.99, 0.99),
        su2=st.floats(1e-6, 10.0),
        n=st.integers(0, 200),
    )
    def test_stationary_start(self, a, su2, n):
        m = GaussMarkovModel(a=a, sigma_u2=su2, mu0=0.0, sigma02=su2 / (1 - a * a))
        assert second_moment(m, n) == pytest.approx(m.sigma2, rel=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(
        a=st.floats(-0.95, 0.95),
        su2=st.floats(1e-4, 1.0),
        mu0=st.floats(-2.0, 2.0),
        s02=st.floats(0.0, 2.0),
    )
    def test_monotone_approach(self, a, su2, mu0, s02):
        m = GaussMarkovModel(a=a, sigma_u2=su2, mu0=mu0, sigma02=s02)
        # the gap to the stationary value contracts by a^2 per step; 200 steps
        # covers |a| up to 0.95 with room to spare
        seq = np.array([second_moment(m, n) for n in range(200)])
        gap = seq - m.sigma2
        assert np.allclose(gap[1:], a * a * gap[:-1], rtol=1e-9, atol=1e-13 * max(seq.max(), 1.0))
        diffs = np.diff(seq)
        tol = 1e-14 * max(seq.max(), 1.0)
        if mu0**2 + s02 >= m.sigma2:
            assert np.all(diffs <= tol)
        else:
            assert np.all(diffs >= -tol)
        assert seq[-1] == pytest.approx(m.sigma2, rel=1e-3, abs=1e-12)


class TestSampling:
    def test_degenerate_is_deterministic(self):
        m = GaussMarkovModel(a=0.8, sigma_u2=0.0, mu0=1.0, sigma02=0.0)
        traj = sample_trajectory(m, 20, seed=5)
        np.testing.assert_allclose(traj.states, 0.8 ** np.arange(1, 22), rtol=1e-14)
        assert traj.n_max == 20

    def test_same_seed_same_states(self, base_model):
        t1 = sample_trajectory(base_model, 50, seed=123)
        t2 = sample_trajectory(base_model, 50, seed=123)
        assert np.array_equal(t1.states, t2.states)
        assert len(t1.states) == 51
        assert not np.array_equal(t1.states, sample_trajectory(base_model, 50, seed=124).states)

    def test_circular_symmetry(self, rng):
        m = GaussMarkovModel(a=0.0, sigma_u2=2.0, sigma02=0.0)
        x = sample_states(m, 0, rng, size=200_000)[:, 0]
        assert np.var(x.real) == pytest.approx(1.0, rel=0.02)
        assert np.var(x.imag) == pytest.approx(1.0, rel=0.02)
        assert abs(np.mean(x.real * x.imag)) < 0.02

    def test_moment_at_n10_monte_carlo(self, base_model, rng):
        x = sample_states(base_model, 10, rng, size=1_000_000)[:, 10]
        p = np.abs(x) ** 2
        se = p.std(ddof=1) / np.sqrt(p.size)
        assert abs(p.mean() - second_moment(base_model, 10)) < 3 * se

    @pytest.mark.slow
    def test_moment_all_n_monte_carlo(self, rng):
        m = GaussMarkovModel(a=0.8, sigma_u2=0.01, mu0=0.5, sigma02=0.2)
        x = sample_states(m, 50, rng, size=100_000)
        p = np.abs(x) ** 2
        se = p.std(axis=0, ddof=1) / np.sqrt(p.shape[0])
        expected = np.array([second_moment(m, n) for n in range(51)])
        assert np.all(np.abs(p.mean(axis=0) - expected) < 4 * se)
