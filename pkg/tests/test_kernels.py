import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import xor_bytes
from pdacache import kernels

BACKENDS = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])


@pytest.fixture(params=BACKENDS)
def impl(request):
    return kernels.backend(request.param)


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.backend("fortran")


@settings(max_examples=100, deadline=None)
@given(st.binary(min_size=0, max_size=300).flatmap(
    lambda a: st.tuples(st.just(a), st.binary(min_size=len(a), max_size=len(a)))
))
def test_xor_matches_reference(pair):
    a, b = pair
    for name in BACKENDS:
        buf = bytearray(a)
        kernels.xor_into(buf, b, impl=kernels.backend(name))
        assert bytes(buf) == xor_bytes(a, b)


def test_xor_length_mismatch(impl):
    with pytest.raises(ValueError):
        kernels.xor_into(bytearray(3), b"ab", impl=impl)


grids = st.integers(1, 5).flatmap(
    lambda F: st.integers(1, 5).flatmap(
        lambda K: st.lists(st.integers(-1, 3), min_size=F * K, max_size=F * K).map(
            lambda v: np.array(v, dtype=np.intc).reshape(F, K)
        )
    )
)


@settings(max_examples=200, deadline=None)
@given(grids)
def test_backends_agree(base):
    star = (base < 0).astype(np.uint8)
    cells = {}
    for (j, k), v in np.ndenumerate(base):
        if v >= 0:
            cells.setdefault(int(v), []).append((j, k))
    rows, cols, offsets = [], [], [0]
    for v in sorted(cells):
        for j, k in cells[v]:
            rows.append(j)
            cols.append(k)
        offsets.append(len(rows))
    results = [
        (
            kernels.label_pair_violations(rows, cols, star, offsets, impl=kernels.backend(n)),
            kernels.c4_violations(base, star, impl=kernels.backend(n)),
        )
        for n in BACKENDS
    ]
    assert all(r == results[0] for r in results)


def test_env_forces_fallback():
    env = dict(os.environ, PDACACHE_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import pdacache; print(pdacache.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_benchmark_script_runs(capsys):
    import runpy
    import pathlib

    script = pathlib.Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"
    ns = runpy.run_path(str(script))
    ns["main"](["--k", "4", "--t", "2", "--users", "2", "--mib", "0.01", "--repeat", "1"])
    out = capsys.readouterr().out
    assert "C4 scan" in out and "simulate" in out
