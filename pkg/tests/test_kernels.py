"""Both kernel backends must agree exactly; the compiled one is optional."""

import random

import numpy as np
import pytest

from splitterlab import _speedups_py
from splitterlab.graph import Graph
from splitterlab.kernels import backend_name

from conftest import random_graph

try:
    from splitterlab import _speedups
except ImportError:
    _speedups = None


def _csr(g: Graph):
    return g._csr


@pytest.mark.skipif(_speedups is None, reason="compiled extension not built")
def test_backends_agree_on_random_graphs():
    rng = random.Random(42)
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 30), 0.2)
        indptr, indices = _csr(g)
        src = rng.randrange(g.n)
        cutoff = rng.choice([-1, 0, 1, 3])
        a = np.full(g.n, -1, dtype=np.int32)
        b = np.full(g.n, -1, dtype=np.int32)
        _speedups_py.bfs_fill(indptr, indices, src, cutoff, a)
        _speedups.bfs_fill(indptr, indices, src, cutoff, b)
        assert np.array_equal(a, b)


@pytest.mark.skipif(_speedups is None, reason="compiled extension not built")
def test_masked_backends_agree():
    rng = random.Random(43)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 25), 0.3)
        indptr, indices = _csr(g)
        mask = np.array([rng.random() < 0.7 for _ in range(g.n)], dtype=np.uint8)
        srcs = [v for v in range(g.n) if mask[v]]
        if not srcs:
            continue
        src = rng.choice(srcs)
        a = np.full(g.n, -1, dtype=np.int32)
        b = np.full(g.n, -1, dtype=np.int32)
        _speedups_py.bfs_fill_masked(indptr, indices, src, -1, mask, a)
        _speedups.bfs_fill_masked(indptr, indices, src, -1, mask, b)
        assert np.array_equal(a, b)


@pytest.mark.skipif(_speedups is None, reason="compiled extension not built")
def test_all_pairs_agree():
    rng = random.Random(44)
    g = random_graph(rng, 20, 0.2)
    indptr, indices = _csr(g)
    a = np.full((g.n, g.n), -1, dtype=np.int32)
    b = np.full((g.n, g.n), -1, dtype=np.int32)
    _speedups_py.all_pairs_fill(indptr, indices, a)
    _speedups.all_pairs_fill(indptr, indices, b)
    assert np.array_equal(a, b)


def test_masked_source_must_be_unmasked():
    g = Graph.from_edges(3, [(0, 1)])
    indptr, indices = _csr(g)
    mask = np.array([0, 1, 1], dtype=np.uint8)
    dist = np.full(3, -1, dtype=np.int32)
    with pytest.raises(ValueError):
        _speedups_py.bfs_fill_masked(indptr, indices, 0, -1, mask, dist)


def test_backend_name_reports():
    assert backend_name() in ("cython", "python")


@pytest.mark.skipif(_speedups is None, reason="compiled extension not built")
def test_analyzer_output_identical_across_backends(tmp_path):
    """The fallback must be semantically identical, byte for byte."""
    import subprocess
    import sys

    from splitterlab.analyze import analyze, render

    here = render(analyze("cycle", [6, 9], [1, 2]), "csv")
    script = (
        "from splitterlab.analyze import analyze, render;"
        "import sys; sys.stdout.buffer.write(render(analyze('cycle', [6, 9], [1, 2]), 'csv'))"
    )
    out = subprocess.run(
        [sys.executable, "-c", script],
        capture_output=True,
        env={"PATH": "/usr/bin:/bin", "SPLITTERLAB_PURE": "1"},
        check=True,
    )
    assert out.stdout == here
