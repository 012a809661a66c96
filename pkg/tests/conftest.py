"""Shared fixtures and suite-wide certificate hygiene.

Two things live here besides plain fixtures. A session-start warmup compiles
the simulation kernels and loads the conic solver stack once, so per-test
runtime budgets measure the work itself rather than one-time imports. A
session-end check re-verifies every LMI solution that any test produced,
enforcing the rule that no solution ever leaves solve_feasibility without
passing the independent eigenvalue check.
"""

import numpy as np
import pytest

from sectorcert import (
    Disturbance,
    ControlLaw,
    Gain,
    OddFunction,
    Plant,
    SearchOptions,
    assemble,
    simulate,
    solution_log,
    solve_feasibility,
    verify,
)

ACCEPTANCE_LINES = []


def record_acceptance(line):
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session", autouse=True)
def _warmup():
    """Compile the integrator kernels and load the solver before any test."""
    plant = Plant(a=[[0.0, 1.0], [0.0, 0.0]], b=[0.0, 1.0], d=[0.0, 1.0], f_bar=0.1)
    gain = Gain([-2.0, -3.0])
    law = ControlLaw.componentwise(gain, [OddFunction.saturation(1.0, 1.0)] * 2)
    simulate(plant, law, Disturbance.zero(), [0.1, 0.1], dt=1e-3, t_end=0.01)
    vert = assemble(plant, gain, np.ones(2), 0.1)
    solve_feasibility([vert])
    yield


@pytest.fixture(scope="session", autouse=True)
def _verify_all_logged_solutions():
    """After the whole suite, re-check every solution the suite produced."""
    yield
    bad = 0
    entries = solution_log()
    for vertices, sol in entries:
        for vertex in vertices:
            if not verify(vertex, sol, 1e-7):
                bad += 1
    assert bad == 0, f"{bad} logged vertex checks failed out of {len(entries)} solutions"


@pytest.fixture
def ref_plant():
    """Double integrator with a disturbance on the velocity channel."""
    return Plant(a=[[0.0, 1.0], [0.0, 0.0]], b=[0.0, 1.0], d=[0.0, 1.0], f_bar=0.1)


@pytest.fixture
def ref_gain():
    return Gain([-2.0, -3.0])


@pytest.fixture
def sat11():
    return OddFunction.saturation(1.0, 1.0)


@pytest.fixture
def ref_options():
    # anchor above the infeasible low-slope range so searches start instantly
    return SearchOptions(rho_start=0.4)
