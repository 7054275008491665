import numpy as np
import pytest

from timerank import TimeTable, build_scheme

GDP_COUPLES = ((20, 1), (100, 5), (191, 10))


@pytest.fixture(scope="session")
def gdp_scheme():
    return build_scheme(GDP_COUPLES)


def make_table(n_items: int, n_points: int, seed: int = 0, absent=()) -> TimeTable:
    """Dense random table with optional (item_index, t_index) holes."""
    rng = np.random.default_rng(seed)
    vals = rng.random((n_items, n_points))
    holes = set(absent)
    return TimeTable(
        items=tuple(f"it{i:04d}" for i in range(n_items)),
        time_points=tuple(f"t{j:02d}" for j in range(n_points)),
        values=tuple(
            tuple(None if (i, j) in holes else float(vals[i, j]) for j in range(n_points))
            for i in range(n_items)
        ),
    )
