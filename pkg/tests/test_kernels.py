"""Path equivalence: the numba kernels and the numpy fallbacks must agree
bit for bit, including the local-search trajectory."""

from __future__ import annotations

import numpy as np
import pytest

from cccodes import kernels
from cccodes.clique import max_weight_clique
from conftest import naive_hamming

needs_numba = pytest.mark.skipif(
    not kernels.JIT_ENABLED, reason="numba disabled or unavailable"
)


def random_words(rng, m, n, q):
    return rng.integers(0, q, size=(m, n)).astype(np.uint8)


def test_splitmix_reference_values():
    # first outputs for seed 0 of the standard splitmix64 sequence
    stream = kernels.splitmix64_stream(0, 3)
    assert stream[0] == 0xE220A8397B1DCDAF
    assert stream[1] == 0x6E789E6AA1B965F4
    assert stream[2] == 0x06C45D188009454F


def test_pairwise_matches_naive():
    rng = np.random.default_rng(7)
    words = random_words(rng, 40, 9, 4)
    dist = kernels.numpy_impl["pairwise_distances"](words)
    for i in range(40):
        for j in range(40):
            assert dist[i, j] == naive_hamming(words[i], words[j])


@needs_numba
def test_pairwise_paths_agree():
    rng = np.random.default_rng(8)
    words = random_words(rng, 60, 12, 3)
    a = kernels.numpy_impl["pairwise_distances"](words)
    b = kernels.numba_impl["pairwise_distances"](words)
    assert np.array_equal(a, b)


@needs_numba
def test_cross_paths_agree():
    rng = np.random.default_rng(9)
    a = random_words(rng, 17, 8, 4)
    b = random_words(rng, 33, 8, 4)
    x = kernels.numpy_impl["cross_distances"](a, b)
    y = kernels.numba_impl["cross_distances"](a, b)
    assert np.array_equal(x, y)
    assert x.shape == (17, 33)


def test_pack_compatibility_bits():
    rng = np.random.default_rng(10)
    words = random_words(rng, 70, 10, 3)
    dist = kernels.numpy_impl["pairwise_distances"](words)
    packed = kernels.pack_compatibility(dist, 5)
    assert packed.shape == (70, 2)
    for i in range(70):
        row = int.from_bytes(packed[i].tobytes(), "little")
        for j in range(70):
            expect = i != j and dist[i, j] >= 5
            assert ((row >> j) & 1) == int(expect)
    degrees = kernels.popcount_rows(packed)
    assert degrees[0] == bin(int.from_bytes(packed[0].tobytes(), "little")).count("1")


@needs_numba
@pytest.mark.parametrize("seed", [0, 1, 12345, 2**63])
def test_sls_trajectories_identical(seed):
    rng = np.random.default_rng(11)
    words = random_words(rng, 50, 8, 3)
    got_nb = kernels.numba_impl["sls_phase"](words, 4, 12, 400, seed)
    got_np = kernels.numpy_impl["sls_phase"](words, 4, 12, 400, seed)
    assert list(got_nb[0]) == list(got_np[0])
    assert int(got_nb[1]) == int(got_np[1])
    assert int(got_nb[2]) == int(got_np[2])


@needs_numba
def test_clique_paths_agree_on_random_graphs():
    rng = np.random.default_rng(12)
    for _ in range(25):
        m = int(rng.integers(2, 40))
        dens = rng.random() * 0.8 + 0.1
        mat = np.triu(rng.random((m, m)) < dens, 1)
        mat = mat | mat.T
        dist = np.where(mat, 5, 0).astype(np.int32)
        np.fill_diagonal(dist, 0)
        packed = kernels.pack_compatibility(dist, 5)
        wts = rng.integers(1, 6, size=m).astype(np.int64)
        a = max_weight_clique(packed, wts)
        b = max_weight_clique(packed, wts, use_python=True)
        assert a.weight == b.weight
        assert a.vertices == b.vertices
        assert a.complete and b.complete
