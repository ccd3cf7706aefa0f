from __future__ import annotations

import numpy as np
import pytest

from cccodes.codes import Code, CodeParams, Composition
from cccodes.search import max_code_exact


@pytest.fixture(scope="session")
def ternary_w3(request):
    """Optimal (n, 4, [2,1])_3 codes for small n, found once per session."""
    cache = {}

    def get(n: int) -> Code:
        if n not in cache:
            cache[n] = max_code_exact(CodeParams(3, n, 4, Composition((2, 1))))
        return cache[n]

    return get


def naive_hamming(u, v):
    return sum(1 for a, b in zip(u, v) if a != b)


def naive_max_clique(adj_sets):
    """Plain recursive maximum clique (size only): the test oracle.

    Branches on take/skip of the smallest candidate with only the
    size-sum bound, structurally unlike the production solver.
    """
    best = [0]

    def extend(count, cands):
        if count + len(cands) <= best[0]:
            return
        if not cands:
            best[0] = max(best[0], count)
            return
        v = min(cands)
        extend(count + 1, cands & adj_sets[v])
        rest = set(cands)
        rest.discard(v)
        extend(count, rest)

    extend(0, set(range(len(adj_sets))))
    return best[0]
