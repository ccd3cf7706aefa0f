"""Exact maximum-weight clique search over packed adjacency bitsets.

Branch and bound in the style of Tomita: vertices are relabelled by
descending degree once, each subproblem greedily colours its candidate set
and prunes with per-colour-class weight maxima. The search is fully
deterministic. A decision variant (`exists_clique`) answers whether a clique
of a required weight exists inside a restricted candidate set, which the
search layer uses to extract the lexicographically smallest optimum.

When numba is active the inner search runs as a compiled kernel over uint64
bitset arrays; the fallback is the same algorithm on Python int bitmasks.
Both return identical results (same algorithm, same tie-breaks).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels


class BudgetExhausted(Exception):
    """Raised internally when the node budget or deadline is hit."""


@dataclass(frozen=True)
class CliqueResult:
    weight: int
    vertices: tuple
    complete: bool
    nodes: int


def _rows_to_ints(bits: np.ndarray) -> list:
    return [int.from_bytes(row.tobytes(), "little") for row in bits]


def _mask_to_int(mask: Optional[np.ndarray], m: int) -> int:
    if mask is None:
        return (1 << m) - 1
    return int.from_bytes(mask.tobytes(), "little") & ((1 << m) - 1)


# ---------------------------------------------------------------------------
# Python int-bitmask implementation
# ---------------------------------------------------------------------------


def _solve_python(nbr, wts, P0, cutoff, stop_at, node_budget, deadline):
    """Core expansion; vertices are assumed relabelled by descending degree.

    Returns (best_weight, best_vertices, nodes, complete).
    """
    best_w = cutoff
    best_set = ()
    nodes = 0
    path = []

    class _Stop(Exception):
        pass

    def color(P):
        order = []
        bounds = []
        class_masks = []
        class_members = []
        class_maxw = []
        M = P
        while M:
            b = M & -M
            v = b.bit_length() - 1
            M ^= b
            placed = False
            for c in range(len(class_masks)):
                if not (nbr[v] & class_masks[c]):
                    class_masks[c] |= b
                    class_members[c].append(v)
                    if wts[v] > class_maxw[c]:
                        class_maxw[c] = wts[v]
                    placed = True
                    break
            if not placed:
                class_masks.append(b)
                class_members.append([v])
                class_maxw.append(wts[v])
        cum = 0
        for c in range(len(class_masks)):
            cum += class_maxw[c]
            for v in class_members[c]:
                order.append(v)
                bounds.append(cum)
        return order, bounds

    def expand(P, rw):
        nonlocal best_w, best_set, nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise BudgetExhausted
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            raise BudgetExhausted
        order, bnds = color(P)
        for i in range(len(order) - 1, -1, -1):
            if rw + bnds[i] <= best_w:
                return
            v = order[i]
            w2 = rw + wts[v]
            nxt = P & nbr[v]
            path.append(v)
            if stop_at is not None and w2 >= stop_at:
                best_w = w2
                best_set = tuple(path)
                raise _Stop
            if nxt:
                expand(nxt, w2)
            elif w2 > best_w:
                best_w = w2
                best_set = tuple(path)
            path.pop()
            P &= ~(1 << v)

    complete = True
    if P0:
        try:
            expand(P0, 0)
        except _Stop:
            complete = True
        except BudgetExhausted:
            complete = False
    return best_w, best_set, nodes, complete


# ---------------------------------------------------------------------------
# numba uint64-bitset implementation (explicit stack, same algorithm)
# ---------------------------------------------------------------------------

if kernels.JIT_ENABLED:
    from numba import njit

    @njit(cache=True)
    def _solve_numba(adj, wts, P0, cutoff, stop_at, node_budget):
        # adj: (m, W) uint64; P0: (W,) uint64. stop_at < 0 means unset.
        m, W = adj.shape
        depth = m + 2

        P_stack = np.zeros((depth, W), dtype=np.uint64)
        order_stack = np.zeros((depth, m), dtype=np.int32)
        bound_stack = np.zeros((depth, m), dtype=np.int64)
        len_stack = np.zeros(depth, dtype=np.int32)
        ptr_stack = np.zeros(depth, dtype=np.int32)
        rw_stack = np.zeros(depth, dtype=np.int64)
        path = np.zeros(depth, dtype=np.int32)

        class_masks = np.zeros((m, W), dtype=np.uint64)
        class_maxw = np.zeros(m, dtype=np.int64)
        class_heads = np.zeros(m, dtype=np.int32)
        class_next = np.zeros(m, dtype=np.int32)
        class_tails = np.zeros(m, dtype=np.int32)

        best_w = np.int64(cutoff)
        best_set = np.zeros(m, dtype=np.int32)
        best_len = 0
        nodes = 0
        complete = True
        one = np.uint64(1)

        def fill_frame(sp):
            # greedy colouring of P_stack[sp]; writes order/bound/len
            ncls = 0
            for wword in range(W):
                Mw = P_stack[sp, wword]
                base = wword << 6
                while Mw != np.uint64(0):
                    tz = 0
                    t = Mw
                    while (t & one) == np.uint64(0):
                        t >>= one
                        tz += 1
                    v = base + tz
                    Mw &= Mw - one
                    placed = -1
                    for c in range(ncls):
                        hit = False
                        for k in range(W):
                            if adj[v, k] & class_masks[c, k]:
                                hit = True
                                break
                        if not hit:
                            placed = c
                            break
                    if placed < 0:
                        placed = ncls
                        ncls += 1
                        for k in range(W):
                            class_masks[placed, k] = np.uint64(0)
                        class_maxw[placed] = 0
                        class_heads[placed] = -1
                        class_tails[placed] = -1
                    class_masks[placed, v >> 6] |= one << np.uint64(v & 63)
                    if wts[v] > class_maxw[placed]:
                        class_maxw[placed] = wts[v]
                    if class_heads[placed] < 0:
                        class_heads[placed] = v
                    else:
                        class_next[class_tails[placed]] = v
                    class_tails[placed] = v
                    class_next[v] = -1
            cnt = 0
            cum = 0
            for c in range(ncls):
                cum += class_maxw[c]
                v = class_heads[c]
                while v >= 0:
                    order_stack[sp, cnt] = v
                    bound_stack[sp, cnt] = cum
                    cnt += 1
                    v = class_next[v]
            len_stack[sp] = cnt
            ptr_stack[sp] = cnt - 1

        sp = 0
        empty = True
        for k in range(W):
            P_stack[0, k] = P0[k]
            if P0[k] != np.uint64(0):
                empty = False
        rw_stack[0] = 0
        if not empty:
            nodes += 1
            fill_frame(0)
        else:
            sp = -1

        while sp >= 0:
            if node_budget >= 0 and nodes > node_budget:
                complete = False
                break
            i = ptr_stack[sp]
            if i < 0:
                sp -= 1
                continue
            rw = rw_stack[sp]
            if rw + bound_stack[sp, i] <= best_w:
                sp -= 1
                continue
            v = order_stack[sp, i]
            ptr_stack[sp] = i - 1
            P_stack[sp, v >> 6] &= ~(one << np.uint64(v & 63))
            w2 = rw + wts[v]
            path[sp] = v
            if stop_at >= 0 and w2 >= stop_at:
                best_w = w2
                best_len = sp + 1
                for k in range(best_len):
                    best_set[k] = path[k]
                break
            nxt_empty = True
            for k in range(W):
                t = P_stack[sp, k] & adj[v, k]
                P_stack[sp + 1, k] = t
                if t != np.uint64(0):
                    nxt_empty = False
            if nxt_empty:
                if w2 > best_w:
                    best_w = w2
                    best_len = sp + 1
                    for k in range(best_len):
                        best_set[k] = path[k]
            else:
                sp += 1
                rw_stack[sp] = w2
                nodes += 1
                fill_frame(sp)

        out = np.empty(best_len, dtype=np.int64)
        for k in range(best_len):
            out[k] = best_set[k]
        return best_w, out, nodes, complete


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def max_weight_clique(
    adj: np.ndarray,
    weights: Sequence,
    restrict: Optional[np.ndarray] = None,
    cutoff: int = 0,
    stop_at: Optional[int] = None,
    node_budget: Optional[int] = None,
    time_limit: Optional[float] = None,
    use_python: bool = False,
) -> CliqueResult:
    """Maximum-weight clique of the packed adjacency matrix `adj`.

    `restrict` limits the search to a packed subset of vertices. `cutoff`
    is an already-known lower bound: only strictly heavier cliques are
    reported (result.vertices is empty when nothing beats it). `stop_at`
    turns the search into a decision procedure that stops at the first
    clique of at least that weight. An exhausted `node_budget` or
    `time_limit` yields complete=False with the best clique found so far.

    Both engines run the same algorithm with the same tie-breaks and return
    identical results; `use_python` forces the int-bitmask fallback (the
    compiled engine also steps aside when a wall-clock limit is requested,
    which it cannot check).
    """
    m = adj.shape[0]
    wts = np.asarray(weights, dtype=np.int64)
    if m == 0:
        return CliqueResult(cutoff, (), True, 0)

    degrees = kernels.popcount_rows(adj)
    new2old = sorted(range(m), key=lambda v: (-degrees[v], v))
    old2new = [0] * m
    for new, old in enumerate(new2old):
        old2new[old] = new

    P0_old = _mask_to_int(restrict, m)
    rows_old = _rows_to_ints(adj)
    nbr = [0] * m
    P0 = 0
    for old in range(m):
        new = old2new[old]
        row = rows_old[old]
        acc = 0
        while row:
            b = row & -row
            row ^= b
            acc |= 1 << old2new[b.bit_length() - 1]
        nbr[new] = acc
        if (P0_old >> old) & 1:
            P0 |= 1 << new

    w_new = np.array([wts[new2old[v]] for v in range(m)], dtype=np.int64)

    use_numba = kernels.JIT_ENABLED and time_limit is None and not use_python
    if use_numba:
        W = adj.shape[1]
        adj_new = np.zeros((m, W), dtype=np.uint64)
        for v in range(m):
            adj_new[v] = np.frombuffer(
                nbr[v].to_bytes(W * 8, "little"), dtype=np.uint64
            )
        P0_arr = np.frombuffer(P0.to_bytes(W * 8, "little"), dtype=np.uint64).copy()
        best_w, best_set, nodes, complete = _solve_numba(
            adj_new,
            w_new,
            P0_arr,
            cutoff,
            -1 if stop_at is None else stop_at,
            -1 if node_budget is None else node_budget,
        )
        best_list = [int(v) for v in best_set]
    else:
        deadline = None if time_limit is None else time.monotonic() + time_limit
        best_w, best_list, nodes, complete = _solve_python(
            nbr, w_new, P0, cutoff, stop_at, node_budget, deadline
        )
    vertices = tuple(sorted(new2old[v] for v in best_list))
    return CliqueResult(int(best_w), vertices, complete, int(nodes))


def exists_clique(
    adj: np.ndarray,
    weights: Sequence,
    required: int,
    restrict: Optional[np.ndarray] = None,
    node_budget: Optional[int] = None,
) -> bool:
    """Whether a clique of weight >= required exists within `restrict`.

    Raises BudgetExhausted if the question cannot be settled in budget.
    """
    if required <= 0:
        return True
    res = max_weight_clique(
        adj,
        weights,
        restrict=restrict,
        cutoff=required - 1,
        stop_at=required,
        node_budget=node_budget,
    )
    if not res.complete:
        raise BudgetExhausted("undecided within node budget")
    return res.weight >= required
