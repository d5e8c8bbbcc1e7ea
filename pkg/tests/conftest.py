import pytest

from numerov import Grid, Harmonic, HydrogenRadial, ScanConfig, default_delta_e, solve_states


@pytest.fixture(scope="session")
def harmonic_grid():
    return Grid.from_step(-10.0, 10.0, 0.01)


def _hydrogen_grid(delta=0.004, b=80.0):
    return Grid.from_step(delta, b, delta)


@pytest.fixture(scope="session")
def hydrogen_grid():
    return _hydrogen_grid()


@pytest.fixture(scope="session")
def harmonic_states(harmonic_grid):
    model = Harmonic()
    scan = ScanConfig(delta_e=default_delta_e(model, harmonic_grid), n_states=6)
    return solve_states(model, harmonic_grid, scan)


@pytest.fixture(scope="session")
def hydrogen_p_states():
    model, grid = HydrogenRadial(1), _hydrogen_grid()
    scan = ScanConfig(delta_e=default_delta_e(model, grid), n_states=3)
    return solve_states(model, grid, scan)


@pytest.fixture(scope="session")
def hydrogen_s_states():
    model, grid = HydrogenRadial(0), _hydrogen_grid()
    scan = ScanConfig(delta_e=default_delta_e(model, grid), n_states=2)
    return solve_states(model, grid, scan)
