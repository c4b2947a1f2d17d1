import numpy as np
import pytest

import levycross as lx
from levycross.io import write_tick_csv
from levycross.synth import ticks_from_returns


@pytest.fixture
def tick_file(tmp_path):
    """Factory for a small synthetic tick CSV with repeated prices and
    roughly 19 s deduplicated spacing."""

    def make(n_returns=6000, seed=100, name="ticks.csv"):
        rng = np.random.default_rng(seed)
        returns = 4e-4 * lx.sample(
            lx.StableParams(1.5, 0.0, 1.0, 0.0), n_returns, seed=rng
        )
        returns = np.clip(returns, -0.05, 0.05)
        ticks = ticks_from_returns(returns, seed=rng)
        path = tmp_path / name
        write_tick_csv(path, ticks)
        return path

    return make
