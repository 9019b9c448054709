import math
import os
import subprocess
import sys

import numpy as np
import pytest

from cubictwist import _pykernels, kernels
from cubictwist.lfunctions import hecke_coefficient, prime_tables


def _backend_under(env_value):
    env = dict(os.environ)
    env.pop("CUBICTWIST_PURE", None)
    if env_value is not None:
        env["CUBICTWIST_PURE"] = env_value
    out = subprocess.run(
        [sys.executable, "-c", "import cubictwist.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    return out.stdout.strip()


def test_pure_flag_forces_python_backend():
    assert _backend_under("1") == "python"


def test_zero_flag_keeps_default_backend():
    assert _backend_under("0") == _backend_under(None) == kernels.BACKEND


needs_c = pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled extension not built")


@needs_c
@pytest.mark.parametrize("D", [1, 2, 3, 6, 7, 12, 100, 997])
def test_backends_agree_on_hecke_tables(D):
    t = prime_tables(3000)
    args = (D, 3000, t.spf, t.split_p, t.split_r, t.split_tr)
    assert np.array_equal(kernels.hecke_table(*args), _pykernels.hecke_table(*args))


@needs_c
def test_backends_agree_on_smoothed_sums():
    t = prime_tables(4000)
    a = _pykernels.hecke_table(5, 4000, t.spf, t.split_p, t.split_r, t.split_tr)
    for scale, nmax in [(0.01, 4000), (0.1, 700), (1e-3, 4000)]:
        c, ec = kernels.smoothed_sum(a, scale, nmax)
        p, ep = _pykernels.smoothed_sum(a, scale, nmax)
        assert abs(c - p) <= ec + ep


def test_table_matches_direct_hecke_sum():
    t = prime_tables(400)
    a = _pykernels.hecke_table(10, 400, t.spf, t.split_p, t.split_r, t.split_tr)
    for n in range(1, 401):
        assert a[n] == hecke_coefficient(10, n).a_n, n


def test_rounding_bound_is_positive_and_small():
    t = prime_tables(2000)
    a = kernels.hecke_table(2, 2000, t.spf, t.split_p, t.split_r, t.split_tr)
    s, err = kernels.smoothed_sum(a, 0.005, 2000)
    assert math.isfinite(s) and 0 < err < 1e-10
