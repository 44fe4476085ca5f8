import functools
import pathlib

import pytest

from oracles import refinement_key
from pdacache import brute_force_search, build_mn_pda

DATA = pathlib.Path(__file__).parent / "data"


@functools.lru_cache(maxsize=None)
def small_pdas(max_cells=12, per_params=2):
    """Valid PDAs for every (Λ, F, Z, S) with Λ*F <= max_cells, S >= 1."""
    pool = []
    for K in range(1, max_cells + 1):
        for F in range(1, max_cells // K + 1):
            for Z in range(F + 1):
                for S in range(1, K * (F - Z) + 1):
                    pool.extend(brute_force_search(K, F, Z, S, limit=per_params))
    return tuple(pool)


@functools.lru_cache(maxsize=None)
def pda_classes(max_cells=12):
    """One representative per isomorphism class (row/column permutation and
    relabelling) of the exhaustive search with Λ*F <= max_cells."""
    reps = {}
    for arr in small_pdas(max_cells, None):
        reps.setdefault((arr.params, refinement_key(arr.grid)), arr)
    return tuple(reps.values())


@functools.lru_cache(maxsize=None)
def mn_pdas(max_k=7):
    return tuple(build_mn_pda(K, t) for K in range(1, max_k + 1) for t in range(K))


@pytest.fixture(scope="session")
def data_dir():
    return DATA


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line[1])
