"""Hot numeric kernels: Hamming distance tables, adjacency packing, local search.

Each hot kernel exists twice: a numba ``@njit`` version and a pure
numpy/Python fallback. The numba path is the default; set the environment
variable ``CCCODES_NO_NUMBA=1`` before import to force the fallback (useful
for debugging, or on platforms where numba is unavailable). Both paths are
bit-for-bit equivalent, including the pseudo-random stream that drives the
local-search trajectory, so search results never depend on which path runs.

``benchmarks/bench_kernels.py`` times the two paths against each other.
"""

from __future__ import annotations

import os

import numpy as np

NUMBA_ENV_FLAG = "CCCODES_NO_NUMBA"

_disable = os.environ.get(NUMBA_ENV_FLAG, "").strip().lower() in ("1", "true", "yes")
if _disable:
    JIT_ENABLED = False
else:
    try:
        from numba import njit

        JIT_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        JIT_ENABLED = False


# ---------------------------------------------------------------------------
# splitmix64: tiny PRNG implemented identically on both paths so that the
# local-search trajectory is reproducible across numba/numpy and platforms.
# ---------------------------------------------------------------------------

_MASK64 = (1 << 64) - 1
_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MUL1 = 0xBF58476D1CE4E5B9
_SM_MUL2 = 0x94D049BB133111EB


def _py_next(state: list) -> int:
    """Advance a one-element splitmix64 state list, return next u64."""
    s = (state[0] + _SM_GAMMA) & _MASK64
    state[0] = s
    z = s
    z = ((z ^ (z >> 30)) * _SM_MUL1) & _MASK64
    z = ((z ^ (z >> 27)) * _SM_MUL2) & _MASK64
    return z ^ (z >> 31)


def splitmix64_stream(seed: int, count: int) -> list:
    """First `count` outputs of the splitmix64 stream for `seed` (test hook)."""
    state = [seed & _MASK64]
    return [_py_next(state) for _ in range(count)]


# ---------------------------------------------------------------------------
# Pairwise Hamming distances
# ---------------------------------------------------------------------------


def _np_pairwise_distances(words: np.ndarray) -> np.ndarray:
    m = words.shape[0]
    out = np.zeros((m, m), dtype=np.int32)
    chunk = max(1, (1 << 22) // max(1, m * words.shape[1]))
    for lo in range(0, m, chunk):
        hi = min(m, lo + chunk)
        out[lo:hi] = (words[lo:hi, None, :] != words[None, :, :]).sum(axis=2)
    return out


def _np_cross_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0], b.shape[0]), dtype=np.int32)
    chunk = max(1, (1 << 22) // max(1, b.shape[0] * b.shape[1]))
    for lo in range(0, a.shape[0], chunk):
        hi = min(a.shape[0], lo + chunk)
        out[lo:hi] = (a[lo:hi, None, :] != b[None, :, :]).sum(axis=2)
    return out


if JIT_ENABLED:

    @njit(cache=True)
    def _nb_pairwise_distances(words):
        m, n = words.shape
        out = np.zeros((m, m), dtype=np.int32)
        for i in range(m):
            for j in range(i + 1, m):
                c = 0
                for k in range(n):
                    if words[i, k] != words[j, k]:
                        c += 1
                out[i, j] = c
                out[j, i] = c
        return out

    @njit(cache=True)
    def _nb_cross_distances(a, b):
        ma, n = a.shape
        mb = b.shape[0]
        out = np.zeros((ma, mb), dtype=np.int32)
        for i in range(ma):
            for j in range(mb):
                c = 0
                for k in range(n):
                    if a[i, k] != b[j, k]:
                        c += 1
                out[i, j] = c
        return out


# ---------------------------------------------------------------------------
# Adjacency packing (not hot; single implementation)
# ---------------------------------------------------------------------------


def pack_compatibility(dist: np.ndarray, d: int) -> np.ndarray:
    """Pack the `dist >= d` relation into per-row uint64 bitsets, no self-loops.

    Row i, bit j (little-endian within each 64-bit word) is set iff words i
    and j may coexist in a code of minimum distance d.
    """
    m = dist.shape[0]
    mask = dist >= d
    np.fill_diagonal(mask, False)
    width = ((m + 63) // 64) * 64
    padded = np.zeros((m, width), dtype=np.uint8)
    padded[:, :m] = mask
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view(np.uint64).copy()


def popcount_rows(bits: np.ndarray) -> np.ndarray:
    """Number of set bits per row of a packed uint64 adjacency matrix."""
    as_bytes = bits.view(np.uint8)
    return np.unpackbits(as_bytes, axis=1).sum(axis=1).astype(np.int64)


# ---------------------------------------------------------------------------
# Stochastic local search trajectory
#
# State: `target` indices into the word universe. Objective: number of
# unordered slot pairs at Hamming distance < d (duplicate words count as
# distance-0 conflicts). Per iteration exactly three PRNG draws happen, in
# this order: conflicting-pair pick, victim side, replacement word. A move is
# accepted iff it does not increase the conflict count. Both implementations
# follow this contract exactly.
# ---------------------------------------------------------------------------


def _np_sls_phase(words: np.ndarray, d: int, target: int, iters: int, seed: int):
    m = words.shape[0]
    state = [seed & _MASK64]

    perm = list(range(m))
    for i in range(target):
        j = i + _py_next(state) % (m - i)
        perm[i], perm[j] = perm[j], perm[i]
    idx = np.array(perm[:target], dtype=np.int64)

    cur = words[idx]
    conf = _np_pairwise_distances(cur) < d
    np.fill_diagonal(conf, False)
    count = int(np.triu(conf, 1).sum())

    best_idx = idx.copy()
    best_count = count
    used = iters
    for it in range(iters):
        if count == 0:
            used = it
            break
        pairs = np.argwhere(np.triu(conf, 1))
        r = _py_next(state) % count
        a, b = int(pairs[r][0]), int(pairs[r][1])
        side = _py_next(state) & 1
        victim = a if side == 0 else b
        repl = _py_next(state) % m

        new_row = (words[repl][None, :] != words[idx]).sum(axis=1) < d
        new_row[victim] = False
        old = int(conf[victim].sum())
        new = int(new_row.sum())
        if new <= old:
            idx[victim] = repl
            conf[victim, :] = new_row
            conf[:, victim] = new_row
            count += new - old
            if count < best_count:
                best_count = count
                best_idx = idx.copy()
    if count == 0:
        best_count = 0
        best_idx = idx.copy()
    return best_idx, best_count, used


if JIT_ENABLED:

    @njit(cache=True)
    def _nb_sls_phase(words, d, target, iters, seed):
        m, n = words.shape
        state = np.uint64(seed)
        gamma = np.uint64(0x9E3779B97F4A7C15)
        mul1 = np.uint64(0xBF58476D1CE4E5B9)
        mul2 = np.uint64(0x94D049BB133111EB)

        def nxt(s):
            s = s + gamma
            z = s
            z = (z ^ (z >> np.uint64(30))) * mul1
            z = (z ^ (z >> np.uint64(27))) * mul2
            return s, z ^ (z >> np.uint64(31))

        perm = np.arange(m, dtype=np.int64)
        idx = np.empty(target, dtype=np.int64)
        for i in range(target):
            state, z = nxt(state)
            j = i + np.int64(z % np.uint64(m - i))
            t = perm[i]
            perm[i] = perm[j]
            perm[j] = t
        for i in range(target):
            idx[i] = perm[i]

        conf = np.zeros((target, target), dtype=np.bool_)
        count = 0
        for a in range(target):
            for b in range(a + 1, target):
                c = 0
                for k in range(n):
                    if words[idx[a], k] != words[idx[b], k]:
                        c += 1
                if c < d:
                    conf[a, b] = True
                    conf[b, a] = True
                    count += 1

        best_idx = idx.copy()
        best_count = count
        used = iters
        new_row = np.zeros(target, dtype=np.bool_)
        for it in range(iters):
            if count == 0:
                used = it
                break
            state, z = nxt(state)
            r = np.int64(z % np.uint64(count))
            a = -1
            b = -1
            k2 = -1
            done = False
            for i in range(target):
                if done:
                    break
                for j in range(i + 1, target):
                    if conf[i, j]:
                        k2 += 1
                        if k2 == r:
                            a = i
                            b = j
                            done = True
                            break
            state, z = nxt(state)
            victim = a if (z & np.uint64(1)) == np.uint64(0) else b
            state, z = nxt(state)
            repl = np.int64(z % np.uint64(m))

            new = 0
            for j in range(target):
                if j == victim:
                    new_row[j] = False
                    continue
                c = 0
                for k in range(n):
                    if words[repl, k] != words[idx[j], k]:
                        c += 1
                hit = c < d
                new_row[j] = hit
                if hit:
                    new += 1
            old = 0
            for j in range(target):
                if conf[victim, j]:
                    old += 1
            if new <= old:
                idx[victim] = repl
                for j in range(target):
                    conf[victim, j] = new_row[j]
                    conf[j, victim] = new_row[j]
                count += new - old
                if count < best_count:
                    best_count = count
                    best_idx = idx.copy()
        if count == 0:
            best_count = 0
            best_idx = idx.copy()
        return best_idx, best_count, used


# ---------------------------------------------------------------------------
# Public bindings and per-path registries (the benchmark uses the registries)
# ---------------------------------------------------------------------------

numpy_impl = {
    "pairwise_distances": _np_pairwise_distances,
    "cross_distances": _np_cross_distances,
    "sls_phase": _np_sls_phase,
}

if JIT_ENABLED:
    numba_impl = {
        "pairwise_distances": _nb_pairwise_distances,
        "cross_distances": _nb_cross_distances,
        "sls_phase": _nb_sls_phase,
    }
    pairwise_distances = _nb_pairwise_distances
    cross_distances = _nb_cross_distances
    sls_phase = _nb_sls_phase
else:
    numba_impl = {}
    pairwise_distances = _np_pairwise_distances
    cross_distances = _np_cross_distances
    sls_phase = _np_sls_phase


def active_path() -> str:
    """Which implementation the public names are bound to."""
    return "numba" if JIT_ENABLED else "numpy"
