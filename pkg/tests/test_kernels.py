import importlib
import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crnormal import _pykernels, kernels

try:
    from crnormal import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

ints = st.integers(-(1 << 80), 1 << 80)


@st.composite
def dense(draw, order):
    n = kernels.tri_size(order)
    zero_or = st.one_of(st.just(0), ints)
    return (draw(st.lists(zero_or, min_size=n, max_size=n)),
            draw(st.lists(zero_or, min_size=n, max_size=n)))


def test_layout_indexing():
    deg, nbar, offset = kernels.layout(3)
    assert len(deg) == kernels.tri_size(3) == 10
    for k, (d, n) in enumerate(zip(deg, nbar)):
        assert k == d * (d + 1) // 2 + n == offset[d] + n


@needs_ext
@given(st.integers(0, 7).flatmap(lambda o: st.tuples(st.just(o), dense(o), dense(o))))
def test_mul_trunc_backends_agree(args):
    order, a, b = args
    assert _ckernels.mul_trunc(*a, *b, order) == _pykernels.mul_trunc(*a, *b, order)


@needs_ext
@given(st.integers(0, 6).flatmap(lambda o: st.tuples(dense(o), dense(o))), ints, ints, ints)
def test_axpy_backends_agree(xy, cr, ci, scale):
    x, y = xy
    assert _ckernels.axpy(*x, *y, cr, ci, scale) == _pykernels.axpy(*x, *y, cr, ci, scale)


@needs_ext
def test_mul_trunc_shorter_operands():
    a = ([1, 2, 3], [0, 0, 1])
    b = ([5], [1])
    for mod in (_pykernels, _ckernels):
        re, im = mod.mul_trunc(*a, *b, 3)
        assert len(re) == 10 and re[:3] == [5, 10, 14] and im[:3] == [1, 2, 8]


def test_pure_python_override():
    code = "import crnormal.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, CRNORMAL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_get_backend():
    assert kernels.get_backend("python") is _pykernels
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")
    assert kernels.BACKEND == ("cython" if _ckernels is not None else "python")


def test_benchmark_script_runs(capsys):
    import runpy
    from pathlib import Path
    bench = Path(__file__).parent.parent / "benchmarks" / "bench_kernels.py"
    mod = runpy.run_path(str(bench))
    mod["main"](["--order", "4", "--repeat", "1", "--bits", "16"])
    assert "mul_trunc" in capsys.readouterr().out
