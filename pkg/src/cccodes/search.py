"""Short-code search: exhaustive clique search, cyclic-orbit weighted clique
search, and stochastic local search.

All three searches return codes that pass `verify_code`. Exact search proves
optimality or fails loudly (`SearchIncomplete`); cyclic search proves
optimality only within the class of cyclic codes and reports completeness as
a flag; local search is best-effort and deterministic for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import clique, kernels
from .bounds import upper_bound
from .codes import Code, CodeParams, hamming_distance

DEFAULT_UNIVERSE_GUARD = 2000


@dataclass(frozen=True)
class SearchBudget:
    """Limits for a search run. `max_iterations` counts SLS iterations or
    branch-and-bound nodes; a fixed seed fixes the SLS trajectory."""

    seed: int = 0
    max_iterations: int = 1_000_000
    restarts: int = 0
    time_limit: Optional[float] = None


@dataclass(frozen=True)
class Orbit:
    """A cyclic-shift orbit, named by its lexicographically least member."""

    representative: tuple
    size: int


@dataclass(frozen=True)
class CyclicSearchResult:
    code: Code
    complete: bool
    nodes: int


class SearchIncomplete(Exception):
    """Budget ran out before optimality was proven; carries the best code."""

    def __init__(self, message: str, best: Optional[Code] = None, nodes: int = 0):
        super().__init__(message)
        self.best = best
        self.nodes = nodes


class UniverseTooLarge(ValueError):
    pass


def enumerate_words(params: CodeParams) -> List[tuple]:
    """All length-n words with the given composition, lexicographic order."""
    remaining = [params.n - params.weight] + list(params.comp.counts)
    symbols = len(remaining)
    word = [0] * params.n
    out = []

    def rec(pos: int):
        if pos == params.n:
            out.append(tuple(word))
            return
        for s in range(symbols):
            if remaining[s] > 0:
                remaining[s] -= 1
                word[pos] = s
                rec(pos + 1)
                remaining[s] += 1

    rec(0)
    return out


def words_matrix(words, n: int) -> np.ndarray:
    if not words:
        return np.zeros((0, n), dtype=np.uint8)
    return np.array(words, dtype=np.uint8)


def build_compatibility(mat: np.ndarray, d: int) -> np.ndarray:
    """Packed adjacency: bit set iff the two words are >= d apart."""
    dist = kernels.pairwise_distances(mat)
    return kernels.pack_compatibility(dist, d)


def _indices_to_mask(indices, m: int) -> np.ndarray:
    width = (m + 63) // 64
    out = np.zeros(width, dtype=np.uint64)
    for v in indices:
        out[v >> 6] |= np.uint64(1) << np.uint64(v & 63)
    return out


def _mask_all(m: int) -> np.ndarray:
    width = (m + 63) // 64
    out = np.zeros(width, dtype=np.uint64)
    for v in range(m):
        out[v >> 6] |= np.uint64(1) << np.uint64(v & 63)
    return out


def _mask_and_row(mask: np.ndarray, adj: np.ndarray, v: int) -> np.ndarray:
    return mask & adj[v]


def _iter_mask(mask: np.ndarray):
    for word_index in range(mask.shape[0]):
        w = int(mask[word_index])
        base = word_index << 6
        while w:
            b = w & -w
            yield base + (b.bit_length() - 1)
            w ^= b


def _lex_min_clique(adj, weights, total: int, node_budget=None) -> list:
    """Lexicographically smallest vertex set among maximum(-weight) cliques.

    Greedy extension: repeatedly fix the smallest vertex that still extends
    to a clique of total weight `total`.
    """
    m = adj.shape[0]
    mask = _mask_all(m)
    chosen: list = []
    ws = 0
    while ws < total:
        for v in _iter_mask(mask):
            wv = int(weights[v])
            if ws + wv > total:
                continue
            need = total - ws - wv
            if need == 0 or clique.exists_clique(
                adj, weights, need, restrict=_mask_and_row(mask, adj, v),
                node_budget=node_budget,
            ):
                chosen.append(v)
                ws += wv
                mask = _mask_and_row(mask, adj, v)
                break
        else:
            raise AssertionError("optimal clique extension failed")
    return chosen


def max_code_exact(
    params: CodeParams,
    budget: Optional[SearchBudget] = None,
    max_universe: int = DEFAULT_UNIVERSE_GUARD,
) -> Code:
    """A provably maximum code; among maximum codes, the lexicographically
    smallest word set.

    Raises SearchIncomplete when the budget runs out before optimality is
    proven, and UniverseTooLarge when the word universe exceeds the guard
    (raise `max_universe` to override).
    """
    words = enumerate_words(params)
    if len(words) > max_universe:
        raise UniverseTooLarge(
            f"universe has {len(words)} words > guard {max_universe}; "
            "pass a larger max_universe to override"
        )
    mat = words_matrix(words, params.n)
    adj = build_compatibility(mat, params.d)
    wts = np.ones(len(words), dtype=np.int64)
    node_budget = budget.max_iterations if budget is not None else None
    time_limit = budget.time_limit if budget is not None else None

    # The universe is closed under coordinate permutations, which act
    # transitively on it and preserve distance, so the compatibility graph
    # is vertex-transitive: some maximum code contains word 0. Searching
    # only inside its neighbourhood loses nothing and skips the symmetric
    # root subtrees.
    res = clique.max_weight_clique(
        adj, wts, restrict=adj[0].copy(), node_budget=node_budget,
        time_limit=time_limit,
    )
    total = res.weight + 1
    if not res.complete:
        best = Code(params, [words[0]] + [words[v] for v in res.vertices])
        raise SearchIncomplete(
            f"exact search for {params} incomplete after {res.nodes} nodes",
            best=best,
            nodes=res.nodes,
        )
    try:
        chosen = _lex_min_clique(adj, wts, total, node_budget=node_budget)
    except clique.BudgetExhausted:
        best = Code(params, [words[v] for v in res.vertices])
        raise SearchIncomplete(
            f"tie-break for {params} incomplete", best=best, nodes=res.nodes
        ) from None
    return Code(params, [words[v] for v in chosen])


def _rotate(word: tuple, s: int) -> tuple:
    return word[-s:] + word[:-s] if s else word


def orbit_decompose(params: CodeParams, filter_unstable: bool = True) -> List[Orbit]:
    """Cyclic-shift orbits of the word universe, sorted by representative.

    With filter_unstable (the default), orbits containing two words closer
    than d are dropped; these can never appear in a distance-d cyclic code.
    """
    n = params.n
    seen = set()
    orbits = []
    for word in enumerate_words(params):
        if word in seen:
            continue
        shifts = {_rotate(word, s) for s in range(n)}
        seen |= shifts
        rep = min(shifts)
        if filter_unstable:
            ok = all(
                hamming_distance(rep, shifted) >= params.d
                for s in range(1, n)
                if (shifted := _rotate(rep, s)) != rep
            )
            if not ok:
                continue
        orbits.append(Orbit(rep, len(shifts)))
    return orbits


def orbit_compatibility(orbits: List[Orbit], params: CodeParams) -> np.ndarray:
    """Packed adjacency between orbits: compatible iff every cross pair of
    their members is at distance >= d (checked rep-vs-all-shifts)."""
    k = len(orbits)
    if k == 0:
        return np.zeros((0, 0), dtype=np.uint64)
    n = params.n
    reps = words_matrix([o.representative for o in orbits], n)
    all_shifts = np.zeros((k * n, n), dtype=np.uint8)
    for s in range(n):
        all_shifts[s::n] = np.roll(reps, s, axis=1)
    cross = kernels.cross_distances(reps, all_shifts)
    per_pair = cross.reshape(k, k, n).min(axis=2)
    return kernels.pack_compatibility(per_pair, params.d)


def max_code_cyclic(
    params: CodeParams, budget: Optional[SearchBudget] = None
) -> CyclicSearchResult:
    """Best cyclic code: a maximum-weight clique of compatible orbits.

    The result is a lower bound for the optimum over all codes; only
    optimality among cyclic codes is claimed (complete=True). An exhausted
    budget yields the best code found with complete=False.
    """
    orbits = orbit_decompose(params, filter_unstable=True)
    if not orbits:
        return CyclicSearchResult(Code(params, []), True, 0)
    adj = orbit_compatibility(orbits, params)
    wts = np.array([o.size for o in orbits], dtype=np.int64)
    node_budget = budget.max_iterations if budget is not None else None
    time_limit = budget.time_limit if budget is not None else None
    res = clique.max_weight_clique(
        adj, wts, node_budget=node_budget, time_limit=time_limit
    )
    chosen = list(res.vertices)
    if res.complete:
        try:
            chosen = _lex_min_clique(adj, wts, res.weight, node_budget=node_budget)
        except clique.BudgetExhausted:
            pass
    words = []
    for v in chosen:
        rep = orbits[v].representative
        words.extend({_rotate(rep, s) for s in range(params.n)})
    return CyclicSearchResult(Code(params, words), res.complete, res.nodes)


def _greedy_conflict_free(idx: np.ndarray, mat: np.ndarray, d: int) -> list:
    """Largest conflict-free subset by greedy max-degree removal.

    Ties drop the lowest slot index; duplicates conflict at distance 0 and
    are removed along the way.
    """
    sub = mat[idx]
    conf = kernels.pairwise_distances(sub) < d
    np.fill_diagonal(conf, False)
    alive = np.ones(len(idx), dtype=bool)
    while True:
        deg = (conf & alive[None, :] & alive[:, None]).sum(axis=1)
        deg[~alive] = 0
        worst = int(deg.argmax())
        if deg[worst] == 0:
            break
        alive[worst] = False
    return [int(idx[i]) for i in range(len(idx)) if alive[i]]


def local_search(
    params: CodeParams, target: int, budget: Optional[SearchBudget] = None
) -> Code:
    """Stochastic local search for a code of `target` words.

    Keeps a candidate multiset of `target` words; each move rewrites one
    member of a random conflicting pair with a random universe word and is
    accepted iff the number of conflicting pairs does not grow. The budget's
    iterations are split evenly across restarts+1 phases. Returns the
    largest conflict-free subset seen (possibly smaller than `target`);
    deterministic for a fixed seed.
    """
    if budget is None:
        budget = SearchBudget()
    if target < 1:
        raise ValueError(f"target must be >= 1, got {target}")
    bound = upper_bound(params).value
    if target > bound:
        raise ValueError(f"target {target} exceeds upper bound {bound}")
    words = enumerate_words(params)
    m = len(words)
    if target > m:
        raise ValueError(f"target {target} exceeds universe size {m}")
    mat = words_matrix(words, params.n)

    phases = budget.restarts + 1
    per_phase = max(1, budget.max_iterations // phases)
    master = [budget.seed & ((1 << 64) - 1)]

    best_subset: list = []
    for _ in range(phases):
        phase_seed = kernels._py_next(master)
        idx, conflicts, _used = kernels.sls_phase(
            mat, params.d, target, per_phase, phase_seed
        )
        idx = np.asarray(idx, dtype=np.int64)
        if conflicts == 0:
            subset = [int(v) for v in idx]
        else:
            subset = _greedy_conflict_free(idx, mat, params.d)
        if len(subset) > len(best_subset):
            best_subset = subset
        if len(best_subset) >= target:
            break
    return Code(params, [words[v] for v in sorted(set(best_subset))])
