import subprocess
import sys

import numpy as np
import pytest

from thetanorm import kernels
from thetanorm.circle_core import Configuration
from thetanorm.cochains import Cochain
from thetanorm.config_space import type_space
from thetanorm.theta import theta_full, theta_reduced

compiled = pytest.importorskip("thetanorm.kernels._ckernels")


def arrays(t, step=1):
    ts = type_space(t)
    idx = np.arange(0, ts.N, step)
    ix, iy = np.divmod(idx, ts.P)
    return ts.ranks[ix].astype(np.int64), ts.ranks[iy].astype(np.int64)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "numpy")


@pytest.mark.parametrize("name", ["theta30_batch", "theta120_batch"])
def test_backends_agree_on_all_5_tuples(name):
    X, Y = arrays(5)
    assert np.array_equal(getattr(compiled, name)(X, Y), getattr(kernels.fallback, name)(X, Y))


def test_backends_agree_on_6_tuple_sample():
    X, Y = arrays(6, step=97)
    assert np.array_equal(compiled.dtheta30_batch(X, Y), kernels.fallback.dtheta30_batch(X, Y))


def test_batch_matches_scalar_routes():
    X, Y = arrays(5, step=211)
    v30 = kernels.theta30_batch(X, Y)
    v120 = kernels.theta120_batch(X, Y)
    for x, y, a, b in zip(X, Y, v30, v120):
        c = Configuration.of(x, y)
        assert theta_reduced(c) * 30 == a
        assert theta_full(c) * 120 == b


def test_empty_batch():
    X = np.zeros((0, 5), dtype=np.int64)
    assert len(kernels.theta30_batch(X, X)) == 0


@pytest.mark.parametrize("q,mode", [(0, "G"), (1, "G"), (2, "G"), (2, "H"), (3, "H"), (3, "G")])
def test_delta_squared_vanishes_exhaustively(q, mode):
    # arbitrary values, no invariance assumed: delta delta f = 0 on every (q+3)-tuple type
    rng = np.random.default_rng(q)
    f = Cochain(q, rng.integers(-9, 10, type_space(q + 1).N), 1, mode)
    assert f.coboundary().coboundary().is_zero()


def test_fallback_selected_without_extension():
    # block the compiled module in a fresh interpreter
    code = (
        "import sys; sys.modules['thetanorm.kernels._ckernels'] = None\n"
        "from fractions import Fraction\n"
        "from thetanorm import kernels\n"
        "from thetanorm.theta import EXTREMAL, theta_cochain\n"
        "assert kernels.BACKEND == 'numpy', kernels.BACKEND\n"
        "assert theta_cochain()(EXTREMAL) == Fraction(2, 3)\n"
    )
    subprocess.run([sys.executable, "-c", code], check=True)
