import os
import random
import subprocess
import sys
from itertools import combinations, permutations

import numpy as np
import pytest

from builders import gnp
from lptransversal import _kernels

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not importable")


@needs_numba
def test_path_and_cycle_counts_agree():
    rng = random.Random(11)
    for _ in range(40):
        g = gnp(rng.randint(1, 11), rng.random(), rng)
        a = g.adj_array
        assert np.array_equal(_kernels.path_counts_numba(a), _kernels.path_counts_numpy(a))
        assert np.array_equal(_kernels.cycle_counts_numba(a), _kernels.cycle_counts_numpy(a))


@needs_numba
def test_canonical_masks_agree():
    rng = random.Random(12)
    n = 5
    pairs = list(combinations(range(n), 2))
    pos = np.zeros((n, n), dtype=np.int64)
    for k, (x, y) in enumerate(pairs):
        pos[x, y] = pos[y, x] = k
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    graphs = [gnp(n, rng.random(), rng) for _ in range(30)]
    width = max(1, max(len(g.edges) for g in graphs))
    el = np.zeros((len(graphs), width, 2), dtype=np.int64)
    cnt = np.zeros(len(graphs), dtype=np.int64)
    for i, g in enumerate(graphs):
        es = g.sorted_edges()
        cnt[i] = len(es)
        if es:
            el[i, : len(es)] = es
    assert np.array_equal(_kernels.canonical_masks_numba(el, cnt, perms, pos),
                          _kernels.canonical_masks_numpy(el, cnt, perms, pos))


@needs_numba
def test_connectivity_masks_agree():
    n = 5
    pairs = np.array(list(combinations(range(n), 2)), dtype=np.int64)
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    got = _kernels.is_connected_masks_numba(masks, n, pairs)
    assert np.array_equal(got, _kernels.is_connected_masks_numpy(masks, n, pairs))
    assert int(got.sum()) == 728


def test_environment_flag_selects_numpy():
    env = dict(os.environ, LPTRANSVERSAL_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "import lptransversal; print(lptransversal.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_numpy_backend_end_to_end():
    env = dict(os.environ, LPTRANSVERSAL_DISABLE_NUMBA="1")
    code = ("from lptransversal.generators import connected_graphs; "
            "from lptransversal import longest_paths; "
            "print(len(connected_graphs(5)), longest_paths(connected_graphs(5)[-1]).count)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["21", "60"]
