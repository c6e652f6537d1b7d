import time

import pytest

from periodpoly.hecke import eigenforms
from sweep_cache import (ACCEPTANCE_SPOTS, ACCEPTANCE_SWEEP, LARGE_WEIGHTS,
                         large_weight_row, zero_reports)

_TIMING: dict = {}


@pytest.fixture(scope="session")
def sweep_reports():
    """Zero reports for the full acceptance sweep plus spot weights."""
    t0 = time.monotonic()
    out = {k: zero_reports(k) for k in ACCEPTANCE_SWEEP + ACCEPTANCE_SPOTS}
    _TIMING.setdefault("sweep", time.monotonic() - t0)
    return out


@pytest.fixture(scope="session")
def sweep_elapsed(sweep_reports):
    return _TIMING["sweep"]


@pytest.fixture(scope="session")
def large_weight_results():
    """Sine-approximation and annulus comparison rows for every eigenform
    in the high-weight band, keyed (weight, form_index)."""
    out = {}
    for k in LARGE_WEIGHTS:
        for i in range(len(eigenforms(k))):
            out[(k, i)] = large_weight_row(k, i)
    return out
