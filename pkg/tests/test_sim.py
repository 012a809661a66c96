"""Simulation layer: disturbance generators, the RK4 integrator against an
exact matrix-exponential oracle, and the empirical trajectory metrics.

The noise stream is pinned to the published splitmix64 test vector and to a
second implementation written independently below, so the CSV outputs stay
reproducible across platforms and languages.
"""

import math

import numpy as np
import pytest
import scipy.linalg

from sectorcert import (
    ControlLaw,
    Disturbance,
    Gain,
    InvalidParameter,
    OddFunction,
    Plant,
    Trajectory,
    empirical_ultimate_bound,
    lyapunov_trace,
    simulate,
    time_to_ball,
)
from sectorcert.sim import _cap_rows, splitmix64_stream


def _splitmix_rewrite(seed, count):
    # deliberately restyled second implementation of the documented stream
    mask = 0xFFFFFFFFFFFFFFFF
    out, s = [], seed & mask
    while len(out) < count:
        s = (s + 0x9E3779B97F4A7C15) & mask
        x = s
        x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & mask
        x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & mask
        out.append(x ^ (x >> 31))
    return out


# -------------------------------------------------------------------- noise


def test_splitmix64_published_vector():
    assert splitmix64_stream(0, 3) == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]


@pytest.mark.parametrize("seed", [0, 1, 0xDEADBEEF, 2 ** 64 - 1])
def test_splitmix64_against_independent_rewrite(seed):
    assert splitmix64_stream(seed, 16) == _splitmix_rewrite(seed, 16)


def test_zero_disturbance_is_exact_zeros():
    f = Disturbance.zero().samples(3, 1e-3, 10, 0.0)
    assert f.shape == (21, 3)
    assert not f.any()


def test_constant_disturbance_rows():
    f = Disturbance.constant(0.06).samples(4, 1e-3, 5, 0.1)
    expected = np.tile(0.06 * np.ones(4) / 2.0, (11, 1))
    assert np.array_equal(f, expected)
    assert np.allclose(np.linalg.norm(f, axis=1), 0.06)


def test_sinusoid_disturbance_half_grid():
    dt, nsteps = 1e-3, 8
    d = Disturbance.sinusoid(0.05, 3.0, phase=0.7)
    f = d.samples(2, dt, nsteps, 0.1)
    t = 0.5 * dt * np.arange(2 * nsteps + 1)
    expected = np.outer(0.05 * np.sin(3.0 * t + 0.7), np.ones(2) / math.sqrt(2.0))
    assert np.array_equal(f, expected)


def test_noise_peak_equals_amplitude_and_respects_bound():
    d = Disturbance.bounded_noise(seed=11, amplitude=0.08, cutoff=5.0)
    f = d.samples(2, 1e-3, 400, 0.1)
    norms = np.linalg.norm(f, axis=1)
    assert math.isclose(norms.max(), 0.08, rel_tol=1e-12)
    # amplitude exactly at the bound still stays inside it after capping
    g = Disturbance.bounded_noise(seed=11, amplitude=0.1, cutoff=5.0).samples(2, 1e-3, 400, 0.1)
    assert np.linalg.norm(g, axis=1).max() <= 0.1


def test_noise_is_deterministic_per_seed():
    a = Disturbance.bounded_noise(3, 0.05, 2.0).samples(1, 1e-2, 100, 0.1)
    b = Disturbance.bounded_noise(3, 0.05, 2.0).samples(1, 1e-2, 100, 0.1)
    c = Disturbance.bounded_noise(4, 0.05, 2.0).samples(1, 1e-2, 100, 0.1)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_amplitude_above_bound_rejected():
    with pytest.raises(InvalidParameter):
        Disturbance.constant(0.2).samples(1, 1e-3, 10, 0.1)
    with pytest.raises(InvalidParameter):
        Disturbance.sinusoid(0.2, 1.0).samples(1, 1e-3, 10, 0.1)


def test_disturbance_validation():
    with pytest.raises(InvalidParameter):
        Disturbance.sinusoid(-0.1, 1.0)
    with pytest.raises(InvalidParameter):
        Disturbance.bounded_noise(0, 0.1, 0.0)
    with pytest.raises(InvalidParameter):
        Disturbance.bounded_noise(0, -0.1, 1.0)


def test_cap_rows_scales_only_offenders():
    f = np.array([[3.0, 4.0], [0.3, 0.4]])
    out = _cap_rows(f, 1.0)
    assert np.linalg.norm(out[0]) <= 1.0
    assert math.isclose(np.linalg.norm(out[0]), 1.0, rel_tol=1e-12)
    assert math.isclose(out[0][0] / out[0][1], 0.75, rel_tol=1e-12)
    assert np.array_equal(out[1], [0.3, 0.4])


# ---------------------------------------------------------------- integrator


@pytest.fixture(scope="module")
def plant():
    return Plant(a=[[0.0, 1.0], [0.0, 0.0]], b=[0.0, 1.0], d=[0.0, 1.0], f_bar=0.1)


@pytest.fixture(scope="module")
def gain():
    return Gain([-2.0, -3.0])


def test_linear_law_matches_matrix_exponential(plant, gain):
    x0 = np.array([1.0, 0.5])
    traj = simulate(plant, ControlLaw.linear(gain), Disturbance.zero(), x0, dt=1e-3, t_end=5.0)
    m = np.array([[0.0, 1.0], [-2.0, -3.0]])
    exact = scipy.linalg.expm(5.0 * m) @ x0
    assert np.allclose(traj.states[-1], exact, rtol=1e-9, atol=1e-14)


def test_rk4_global_error_is_fourth_order(plant, gain):
    x0 = np.array([1.5, -0.7])
    m = np.array([[0.0, 1.0], [-2.0, -3.0]])
    exact = scipy.linalg.expm(2.0 * m) @ x0
    errs = []
    for dt in (0.02, 0.01):
        traj = simulate(plant, ControlLaw.linear(gain), Disturbance.zero(), x0, dt=dt, t_end=2.0)
        errs.append(np.linalg.norm(traj.states[-1] - exact))
    ratio = errs[0] / errs[1]
    assert 12.0 < ratio < 22.0


def test_saturated_loop_settles(plant, gain):
    law = ControlLaw.componentwise(gain, [OddFunction.saturation(1.0, 1.0)])
    traj = simulate(plant, law, Disturbance.zero(), [0.5, 0.3], dt=1e-3, t_end=20.0)
    assert not traj.diverged
    assert traj.norms()[-1] < 1e-6


def test_origin_is_an_exact_equilibrium(plant, gain):
    sat = OddFunction.saturation(1.0, 1.0)
    laws = [
        ControlLaw.linear(gain),
        ControlLaw.componentwise(gain, [sat]),
        ControlLaw.scalar_wrapped(gain, sat),
    ]
    for law in laws:
        traj = simulate(plant, law, Disturbance.zero(), [0.0, 0.0], dt=1e-2, t_end=1.0)
        assert not traj.states.any()
        assert not traj.controls.any()


def test_identity_wraps_reproduce_the_linear_law_bitwise(plant, gain):
    ident = OddFunction.identity()
    dist = Disturbance.sinusoid(0.1, 2.0)
    x0 = [0.4, -0.2]
    runs = [
        simulate(plant, ControlLaw.linear(gain), dist, x0, dt=1e-3, t_end=5.0),
        simulate(plant, ControlLaw.componentwise(gain, [ident]), dist, x0, dt=1e-3, t_end=5.0),
        simulate(plant, ControlLaw.scalar_wrapped(gain, ident), dist, x0, dt=1e-3, t_end=5.0),
    ]
    for other in runs[1:]:
        assert np.array_equal(runs[0].states, other.states)
        assert np.array_equal(runs[0].controls, other.controls)


def test_simulation_is_deterministic_with_noise(plant, gain):
    law = ControlLaw.componentwise(gain, [OddFunction.saturation(1.0, 1.0)])
    dist = Disturbance.bounded_noise(7, 0.1, 3.0)
    a = simulate(plant, law, dist, [0.3, 0.1], dt=1e-3, t_end=2.0)
    b = simulate(plant, law, dist, [0.3, 0.1], dt=1e-3, t_end=2.0)
    assert np.array_equal(a.states, b.states)
    assert np.array_equal(a.disturbances, b.disturbances)


def test_divergence_is_flagged_and_truncated():
    plant = Plant(a=[[5.0]], b=[0.0], d=[1.0], f_bar=0.0)
    traj = simulate(plant, ControlLaw.linear(Gain([0.0])), Disturbance.zero(), [1.0],
                    dt=1e-2, t_end=8.0)
    assert traj.diverged
    assert traj.states.shape[0] < 801
    assert np.linalg.norm(traj.states[-1]) > 1e12


def test_simulate_validation(plant, gain):
    law = ControlLaw.linear(gain)
    with pytest.raises(InvalidParameter):
        simulate(plant, law, Disturbance.zero(), [0.1, 0.1], dt=0.0)
    with pytest.raises(InvalidParameter):
        simulate(plant, law, Disturbance.zero(), [0.1, 0.1], dt=1e-2, t_end=1e-3)
    with pytest.raises(InvalidParameter):
        simulate(plant, law, Disturbance.zero(), [0.1, 0.1, 0.1])
    with pytest.raises(InvalidParameter):
        simulate(plant, law, Disturbance.zero(), [math.nan, 0.1])


def test_trajectory_layout(plant, gain):
    dt, t_end = 1e-2, 1.0
    traj = simulate(plant, ControlLaw.linear(gain), Disturbance.constant(0.05),
                    [0.2, 0.0], dt=dt, t_end=t_end)
    nsteps = 100
    assert traj.times.shape == (nsteps + 1,)
    assert traj.states.shape == (nsteps + 1, 2)
    assert traj.controls.shape == (nsteps + 1,)
    assert traj.disturbances.shape == (nsteps + 1, 1)
    assert np.array_equal(traj.times, dt * np.arange(nsteps + 1))
    assert traj.controls[0] == -2.0 * 0.2
    # stored disturbance rows are the full-grid slice of the half-grid signal
    assert np.allclose(np.linalg.norm(traj.disturbances, axis=1), 0.05)


def test_csv_round_trip(tmp_path, plant, gain):
    traj = simulate(plant, ControlLaw.linear(gain), Disturbance.constant(0.05),
                    [0.2, -0.1], dt=1e-2, t_end=0.05)
    path = tmp_path / "run.csv"
    traj.to_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,x1,x2,u,f1"
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    expected = np.column_stack([traj.times, traj.states, traj.controls, traj.disturbances])
    assert np.array_equal(data, expected)  # %.17g is exact for float64


# ------------------------------------------------------------------ metrics


def _decay_trajectory():
    times = np.linspace(0.0, 10.0, 101)
    norms = np.exp(-0.5 * times)
    states = np.column_stack([norms, np.zeros_like(norms)])
    return Trajectory(times=times, states=states, controls=np.zeros_like(times),
                      disturbances=np.zeros((101, 1)), diverged=False)


def _zero_trajectory():
    times = np.linspace(0.0, 1.0, 11)
    return Trajectory(times=times, states=np.zeros((11, 2)), controls=np.zeros(11),
                      disturbances=np.zeros((11, 1)), diverged=False)


def test_empirical_bound_on_monotone_decay():
    traj = _decay_trajectory()
    start = int(math.floor(0.75 * 100))
    assert empirical_ultimate_bound(traj, 0.25) == np.linalg.norm(traj.states[start])
    assert empirical_ultimate_bound(_zero_trajectory(), 0.5) == 0.0


def test_empirical_bound_validation():
    traj = _zero_trajectory()
    with pytest.raises(InvalidParameter):
        empirical_ultimate_bound(traj, 0.0)
    with pytest.raises(InvalidParameter):
        empirical_ultimate_bound(traj, 1.1)


def test_time_to_ball_on_decay():
    traj = _decay_trajectory()
    eps = 0.5
    first_inside = int(np.argmax(traj.norms() < eps))
    assert time_to_ball(traj, eps) == traj.times[first_inside]
    assert time_to_ball(_zero_trajectory(), 1e-9) == 0.0
    assert time_to_ball(traj, 1e-9) is None  # never enters that ball
    with pytest.raises(InvalidParameter):
        time_to_ball(traj, 0.0)


def test_lyapunov_trace_values():
    traj = _decay_trajectory()
    v = lyapunov_trace(traj, np.eye(2))
    assert np.allclose(v, traj.norms() ** 2, rtol=1e-14, atol=0.0)
    p = np.array([[2.0, 0.5], [0.5, 1.0]])
    v2 = lyapunov_trace(traj, p)
    x = traj.states[7]
    assert math.isclose(v2[7], x @ p @ x, rel_tol=1e-14)
    assert not lyapunov_trace(_zero_trajectory(), np.eye(2)).any()


def test_lyapunov_trace_validation():
    traj = _decay_trajectory()
    with pytest.raises(InvalidParameter):
        lyapunov_trace(traj, np.eye(3))
    with pytest.raises(InvalidParameter):
        lyapunov_trace(traj, np.array([[1.0, 0.2], [0.0, 1.0]]))
    with pytest.raises(InvalidParameter):
        lyapunov_trace(traj, np.array([[1.0, 0.0], [0.0, -1.0]]))
