"""Backend parity: the numba and numpy kernels must agree exactly."""

import itertools

import numpy as np
import pytest

from groupdeform import _jit, kernels
from groupdeform.groups import hyperoctahedral, symmetric, weyl_d

needs_numba = pytest.mark.skipif(not _jit.HAVE_NUMBA, reason="numba not installed")


@pytest.fixture
def both():
    """Run a callable under each backend and return the two results."""
    old = _jit.backend()

    def run(fn):
        out = {}
        for name in ("numba", "numpy"):
            _jit.set_backend(name)
            out[name] = fn()
        return out["numba"], out["numpy"]

    yield run
    _jit.set_backend(old)


@needs_numba
@pytest.mark.parametrize("desc", [symmetric(5), hyperoctahedral(4), weyl_d(5)], ids=str)
def test_closure_parity(both, desc):
    a, b = both(lambda: kernels.closure(desc.generator_rows()))
    assert np.array_equal(a, b)
    assert len(a) == desc.order


@needs_numba
def test_table_and_labels_parity(both):
    elems = kernels.closure(hyperoctahedral(3).generator_rows())
    a, b = both(lambda: kernels.multiplication_table(elems))
    assert np.array_equal(a, b)
    assert both(lambda: kernels.is_associative(a)) == (True, True)
    conj = kernels.conjugation_images(elems, hyperoctahedral(3).generator_rows())
    a, b = both(lambda: kernels.orbit_labels(conj))
    assert np.array_equal(a, b)
    assert len(set(a.tolist())) == 10


@needs_numba
@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_bitstring_parity(both, n):
    (ta, sa), (tb, sb) = both(lambda: kernels.bitstring_operators(n))
    assert np.array_equal(ta, tb)
    assert np.array_equal(sa, sb)


@needs_numba
def test_lookup_parity(both):
    elems = kernels.closure(symmetric(4).generator_rows())
    rng = np.random.default_rng(0)
    rows = elems[rng.integers(0, len(elems), 50)]
    a, b = both(lambda: kernels.lookup(elems, rows))
    assert np.array_equal(a, b)
    assert np.array_equal(elems[a], rows)


def test_closure_product_convention():
    # (p * q)[x] = p[q[x]]: the table entry for (i, j) is elems[i][elems[j]]
    elems = kernels.closure(symmetric(3).generator_rows())
    T = kernels.multiplication_table(elems)
    for i, j in itertools.product(range(6), repeat=2):
        assert np.array_equal(elems[T[i, j]], elems[i][elems[j]])


def test_budget_exceeded():
    with pytest.raises(kernels.BudgetExceeded):
        kernels.closure(symmetric(6).generator_rows(), max_order=100)


def test_non_associative_table_detected():
    t = np.array([[0, 1], [1, 1]])
    t2 = np.array([[1, 0], [0, 0]])
    assert kernels.is_associative(t)
    assert not kernels.is_associative(t2)


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        _jit.set_backend("cuda")


@needs_numba
@pytest.mark.slow
def test_benchmark_script_runs():
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    rows = mod.run(repeat=1)
    assert rows and all(r["equal"] for r in rows)
