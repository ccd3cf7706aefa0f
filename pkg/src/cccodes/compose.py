"""Weaving short codes through a design to build long constant-composition
codes.

Each block of the design carries a copy of an ingredient code of matching
length, embedded on the block's points (i-th block point in sorted order
carries the i-th ingredient coordinate) and zero elsewhere. Two embedded
words from distinct blocks share at most one support position, so they are
at distance >= 2w-2; the construction is therefore sound exactly when
d <= 2w-2 and refuses otherwise. For a group divisible design the groups
carry ingredient codes the same way.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Union

from .codes import Code, CodeParams, verify_code
from .designs import Design, GroupDivisibleDesign, SetSystem

IngredientMap = Mapping[int, Code]


def _check_construction_applies(params: CodeParams):
    if params.d > 2 * params.weight - 2:
        raise ValueError(
            f"composition is unsound for d={params.d} > 2w-2={2 * params.weight - 2}"
        )


def _check_ingredients(ingredients: IngredientMap, params: CodeParams, sizes, what: str):
    """Each needed size must map to a verified code with matching (q, d, w);
    sizes shorter than the weight may be omitted (no codeword fits)."""
    for k in sorted(sizes):
        code = ingredients.get(k)
        if code is None:
            if k < params.weight:
                continue
            raise ValueError(f"missing ingredient code for {what} size {k}")
        p = code.params
        if p.n != k:
            raise ValueError(f"ingredient for {what} size {k} has length {p.n}")
        if (p.q, p.d, p.comp) != (params.q, params.d, params.comp):
            raise ValueError(
                f"ingredient for {what} size {k} has parameters {p}, "
                f"expected (q={params.q}, d={params.d}, w=[{params.comp}])"
            )
        report = verify_code(code)
        if not report.ok:
            raise ValueError(
                f"ingredient for {what} size {k} is invalid: {report.summary()}"
            )


def _embed(point_sets, ingredients: IngredientMap, n: int):
    words = []
    for pts in point_sets:
        code = ingredients.get(len(pts))
        if code is None:
            continue
        for u in code.words:
            word = [0] * n
            for coord, point in zip(u, pts):
                word[point] = coord
            words.append(tuple(word))
    return words


def pbd_compose(
    pbd: SetSystem, ingredients: IngredientMap, params: CodeParams
) -> Code:
    """Embed an ingredient code on every block of a pairwise balanced design.

    The resulting code has exactly sum_k b_k |C_k| words.
    """
    _check_construction_applies(params)
    if params.n != pbd.point_count:
        raise ValueError(
            f"target length {params.n} != design order {pbd.point_count}"
        )
    _check_ingredients(ingredients, params, pbd.block_sizes, "block")
    words = _embed(pbd.blocks, ingredients, params.n)
    distinct = set(words)
    if len(distinct) != len(words):
        raise AssertionError("duplicate words from distinct blocks")
    return Code(params, words)


def gdd_compose(
    gdd: GroupDivisibleDesign,
    block_ingredients: IngredientMap,
    group_ingredients: IngredientMap,
    params: CodeParams,
) -> Code:
    """Embed block codes on the blocks and group codes on the groups of a
    group divisible design; size is sum_k b_k A_k + sum_i t_i A_{g_i}."""
    _check_construction_applies(params)
    if params.n != gdd.point_count:
        raise ValueError(
            f"target length {params.n} != design order {gdd.point_count}"
        )
    _check_ingredients(block_ingredients, params, gdd.base.block_sizes, "block")
    _check_ingredients(
        group_ingredients, params, {len(g) for g in gdd.groups}, "group"
    )
    words = _embed(gdd.blocks, block_ingredients, params.n)
    words += _embed(gdd.groups, group_ingredients, params.n)
    distinct = set(words)
    if len(distinct) != len(words):
        raise AssertionError("duplicate words from distinct blocks or groups")
    return Code(params, words)


def predicted_size(
    design: Design,
    block_ingredients: IngredientMap,
    group_ingredients: Optional[IngredientMap] = None,
) -> int:
    """Size the composition will have, without building it."""

    def contribution(point_sets, ingredients):
        total = 0
        for pts in point_sets:
            code = ingredients.get(len(pts))
            if code is not None:
                total += len(code)
        return total

    total = contribution(design.blocks, block_ingredients)
    if isinstance(design, GroupDivisibleDesign):
        total += contribution(design.groups, group_ingredients or {})
    return total


def closure_check(
    c: Union[Fraction, int, str], K: Iterable[int], sizes: Mapping[int, int]
) -> bool:
    """Whether every k in K has an ingredient of size >= c*k*(k-1), compared
    in exact rational arithmetic.

    When this holds, composing through any pairwise balanced design of order
    n with block sizes in K yields at least c*n*(n-1) words.
    """
    ratio = Fraction(c)
    for k in sorted(set(int(k) for k in K)):
        if k not in sizes:
            return False
        if Fraction(sizes[k]) < ratio * k * (k - 1):
            return False
    return True
