"""Incidence structures: pairwise balanced designs, group divisible designs,
transversal designs, finite planes, and the design-building techniques used
by the recursive code constructions (weighting, point deletion, adjoining
ideal points), plus block-size feasibility predicates.

Constructors normalise (sort blocks and groups) and reject malformed input
such as out-of-range or repeated points, but the design-theoretic coverage
properties are checked by `verify_pbd` / `verify_gdd`, which report every
violation instead of raising.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .codes import VerifyReport, Violation


def _canon_lists(lists: Iterable[Sequence[int]], point_count: int, what: str):
    out = []
    for lst in lists:
        pts = tuple(sorted(int(x) for x in lst))
        if any(not 0 <= x < point_count for x in pts):
            raise ValueError(f"{what} {pts} has points outside [0, {point_count})")
        if len(set(pts)) != len(pts):
            raise ValueError(f"{what} {pts} repeats a point")
        out.append(pts)
    return tuple(sorted(out))


@dataclass(frozen=True)
class SetSystem:
    """Points 0..point_count-1 and a family of blocks (sorted point tuples)."""

    point_count: int
    blocks: tuple

    def __post_init__(self):
        if self.point_count < 1:
            raise ValueError("point_count must be >= 1")
        object.__setattr__(
            self, "blocks", _canon_lists(self.blocks, self.point_count, "block")
        )

    @property
    def block_sizes(self) -> frozenset:
        return frozenset(len(b) for b in self.blocks)


@dataclass(frozen=True)
class GroupDivisibleDesign:
    """A set system plus a partition of its points into groups."""

    base: SetSystem
    groups: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "groups",
            _canon_lists(self.groups, self.base.point_count, "group"),
        )

    @property
    def point_count(self) -> int:
        return self.base.point_count

    @property
    def blocks(self) -> tuple:
        return self.base.blocks


Design = Union[SetSystem, GroupDivisibleDesign]


@dataclass(frozen=True)
class GddType:
    """Multiset of group sizes with the usual exponential rendering."""

    sizes: tuple

    def __post_init__(self):
        sizes = tuple(sorted(int(s) for s in self.sizes))
        if any(s < 1 for s in sizes):
            raise ValueError("group sizes must be positive")
        object.__setattr__(self, "sizes", sizes)

    def __str__(self) -> str:
        counted = Counter(self.sizes)
        return " ".join(f"{g}^{t}" for g, t in sorted(counted.items()))

    def exponents(self) -> Dict[int, int]:
        return dict(Counter(self.sizes))


def _pair_cover_counts(point_count: int, blocks) -> np.ndarray:
    cover = np.zeros((point_count, point_count), dtype=np.int32)
    for block in blocks:
        for i in range(len(block)):
            for j in range(i + 1, len(block)):
                cover[block[i], block[j]] += 1
    return cover


def verify_pbd(system: SetSystem) -> VerifyReport:
    """Every 2-subset of points must lie in exactly one block."""
    cover = _pair_cover_counts(system.point_count, system.blocks)
    violations = []
    for x in range(system.point_count):
        for y in range(x + 1, system.point_count):
            c = int(cover[x, y])
            if c == 0:
                violations.append(Violation("pair-uncovered", (x, y), 0))
            elif c > 1:
                violations.append(Violation("pair-multicovered", (x, y), c))
    return VerifyReport.from_violations(violations)


def verify_gdd(design: GroupDivisibleDesign) -> VerifyReport:
    """Groups must partition the points; cross-group pairs must be covered
    exactly once; blocks may meet each group at most once."""
    violations = []
    n = design.point_count
    tally = np.zeros(n, dtype=np.int32)
    for g in design.groups:
        for x in g:
            tally[x] += 1
    for x in range(n):
        if tally[x] != 1:
            violations.append(Violation("partition", (x,), int(tally[x])))

    group_of = {}
    for gi, g in enumerate(design.groups):
        for x in g:
            group_of[x] = gi

    for block in design.blocks:
        seen: Dict[int, int] = {}
        for x in block:
            gi = group_of.get(x)
            if gi is None:
                continue
            seen[gi] = seen.get(gi, 0) + 1
        for gi, k in sorted(seen.items()):
            if k > 1:
                violations.append(
                    Violation("block-group-overlap", (block, design.groups[gi]), k)
                )

    cover = _pair_cover_counts(n, design.blocks)
    for x in range(n):
        for y in range(x + 1, n):
            same_group = group_of.get(x) is not None and group_of.get(x) == group_of.get(y)
            c = int(cover[x, y])
            if same_group:
                continue  # covered by the block-group-overlap check
            if c == 0:
                violations.append(Violation("pair-uncovered", (x, y), 0))
            elif c > 1:
                violations.append(Violation("pair-multicovered", (x, y), c))
    return VerifyReport.from_violations(violations)


def gdd_type(design: GroupDivisibleDesign) -> GddType:
    return GddType(tuple(len(g) for g in design.groups))


def pbd_from_gdd(design: GroupDivisibleDesign) -> SetSystem:
    """Rewrite a GDD as a pairwise balanced design by adding the groups of
    size >= 2 as blocks (singleton groups are dropped, not added)."""
    extra = [g for g in design.groups if len(g) >= 2]
    return SetSystem(design.point_count, list(design.blocks) + extra)


@dataclass(frozen=True)
class BlockCensus:
    """Block counts by size, checked against the pair-counting identity."""

    counts: tuple  # sorted (size, count) pairs

    def as_dict(self) -> Dict[int, int]:
        return dict(self.counts)

    def __getitem__(self, k: int) -> int:
        return self.as_dict().get(k, 0)


def block_census(design: Design) -> BlockCensus:
    """Count blocks by size and assert the pair-counting identity:
    sum b_k k(k-1)/2 equals the number of pairs the blocks must cover."""
    if isinstance(design, GroupDivisibleDesign):
        n = design.point_count
        blocks = design.blocks
        must_cover = n * (n - 1) // 2 - sum(
            len(g) * (len(g) - 1) // 2 for g in design.groups
        )
    else:
        n = design.point_count
        blocks = design.blocks
        must_cover = n * (n - 1) // 2
    counted = Counter(len(b) for b in blocks)
    covered = sum(t * k * (k - 1) // 2 for k, t in counted.items())
    if covered != must_cover:
        raise ValueError(
            f"pair-counting identity fails: blocks cover {covered} pairs, "
            f"expected {must_cover}"
        )
    return BlockCensus(tuple(sorted(counted.items())))


def _require_prime(p: int):
    if p < 2 or any(p % f == 0 for f in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")


def transversal_design(k: int, p: int) -> GroupDivisibleDesign:
    """TD(k, p) over the prime field: points Z_p x {0..k-1}, groups the
    columns, and a block {(j, a*j+b mod p) : j} for every (a, b) in Z_p^2.

    k = p+1 is also supported via the extra slope column (the block for
    (a, b) then carries the point (p, a)), still without any field
    extension; prime-power orders remain out of scope.
    """
    _require_prime(p)
    if not 2 <= k <= p + 1:
        raise ValueError(f"need 2 <= k <= p+1, got k={k}, p={p}")
    # point (j, v) -> j*p + v
    groups = [[j * p + v for v in range(p)] for j in range(k)]
    blocks = []
    for a in range(p):
        for b in range(p):
            block = [j * p + (a * j + b) % p for j in range(min(k, p))]
            if k == p + 1:
                block.append(p * p + a)
            blocks.append(block)
    return GroupDivisibleDesign(SetSystem(k * p, blocks), groups)


def affine_plane(p: int) -> SetSystem:
    """The affine plane of prime order p: p^2 points, p^2+p lines of size p."""
    _require_prime(p)
    blocks = []
    for a in range(p):
        for b in range(p):
            blocks.append([x * p + (a * x + b) % p for x in range(p)])
    for c in range(p):
        blocks.append([c * p + y for y in range(p)])
    return SetSystem(p * p, blocks)


def projective_plane(p: int) -> SetSystem:
    """The projective plane of prime order p: p^2+p+1 points and lines of
    size p+1. Affine points are x*p+y; point p^2+a is the slope-a point at
    infinity and p^2+p the vertical one."""
    _require_prime(p)
    inf_slope = [p * p + a for a in range(p)]
    inf_vert = p * p + p
    blocks = []
    for a in range(p):
        for b in range(p):
            blocks.append([x * p + (a * x + b) % p for x in range(p)] + [inf_slope[a]])
    for c in range(p):
        blocks.append([c * p + y for y in range(p)] + [inf_vert])
    blocks.append(inf_slope + [inf_vert])
    return SetSystem(p * p + p + 1, blocks)


def _relabel(block, mapping):
    return [mapping[x] for x in block]


def delete_point(design: Design, x: int) -> GroupDivisibleDesign:
    """Delete a point: the punctured blocks through it become the groups.

    From a pairwise balanced design this is the standard PBD-to-GDD move.
    From a GDD it is supported when x lies in a singleton group; the other
    groups of size >= 2 turn into blocks of the result.
    """
    if isinstance(design, GroupDivisibleDesign):
        home = [g for g in design.groups if x in g]
        if len(home) != 1 or len(home[0]) != 1:
            raise ValueError(
                "point deletion from a GDD needs the point in a singleton group"
            )
        extra_blocks = [g for g in design.groups if x not in g and len(g) >= 2]
        blocks = design.blocks
        n = design.point_count
    else:
        extra_blocks = []
        blocks = design.blocks
        n = design.point_count
    if not 0 <= x < n:
        raise ValueError(f"point {x} out of range")

    mapping = {old: (old if old < x else old - 1) for old in range(n) if old != x}
    new_groups = []
    new_blocks = []
    for block in blocks:
        if x in block:
            rest = [mapping[y] for y in block if y != x]
            if rest:
                new_groups.append(rest)
        else:
            new_blocks.append(_relabel(block, mapping))
    for g in extra_blocks:
        new_blocks.append(_relabel(g, mapping))

    covered = sorted(y for g in new_groups for y in g)
    if covered != list(range(n - 1)):
        raise ValueError("blocks through the point do not partition the rest")
    return GroupDivisibleDesign(SetSystem(n - 1, new_blocks), new_groups)


def expand_points(weights: Sequence[int]):
    """Offsets of the weighted copies {x} x {1..w(x)} in the flattened
    point numbering; returns (offsets, total)."""
    offsets = []
    total = 0
    for w in weights:
        offsets.append(total)
        total += w
    return offsets, total


def wfc(
    master: GroupDivisibleDesign,
    weights: Sequence[int],
    ingredients: Mapping[tuple, GroupDivisibleDesign],
) -> GroupDivisibleDesign:
    """Weighting construction: blow each point x up into w(x) copies and
    replace every master block by an ingredient design on its copies.

    The ingredient for block A must live on the points 0..sum(w(a))-1 with
    its groups equal to the consecutive ranges corresponding to the points
    of A in sorted order (zero-weight points contribute nothing). The output
    groups are the expanded master groups.
    """
    n = master.point_count
    w = [int(weights[x]) for x in range(n)]
    if any(x < 0 for x in w):
        raise ValueError("weights must be non-negative")
    offsets, total = expand_points(w)
    if total == 0:
        raise ValueError("all weights are zero")

    blocks = []
    for block in master.blocks:
        ing = ingredients.get(tuple(block))
        if ing is None:
            raise ValueError(f"no ingredient for block {tuple(block)}")
        sizes = [w[a] for a in block]
        carriers = [a for a in block if w[a] > 0]
        if ing.point_count != sum(sizes):
            raise ValueError(
                f"ingredient for block {tuple(block)} has {ing.point_count} "
                f"points, expected {sum(sizes)}"
            )
        expected_groups = []
        pos = 0
        local_to_global = {}
        for a in carriers:
            rng = tuple(range(pos, pos + w[a]))
            expected_groups.append(rng)
            for r, local in enumerate(rng):
                local_to_global[local] = offsets[a] + r
            pos += w[a]
        if tuple(sorted(expected_groups)) != ing.groups:
            raise ValueError(
                f"ingredient groups for block {tuple(block)} must be the "
                f"consecutive ranges {expected_groups}"
            )
        for b in ing.blocks:
            blocks.append([local_to_global[y] for y in b])

    groups = []
    for g in master.groups:
        expanded = []
        for x in g:
            expanded.extend(range(offsets[x], offsets[x] + w[x]))
        if expanded:
            groups.append(expanded)
    return GroupDivisibleDesign(SetSystem(total, blocks), groups)


def adjoin_and_fill(
    design: GroupDivisibleDesign,
    ideal: int,
    fillers: Mapping[int, Design],
    align: Optional[int] = None,
) -> Design:
    """Adjoin `ideal` shared new points and fill the groups.

    Fillers are keyed by group index; filler points 0..|G|-1 map onto the
    group's points in sorted order and the last `ideal` points onto the
    shared ideal points. Without `align` every group needs a filler and the
    result is a pairwise balanced design. With `align` = some group index,
    that group is left unfilled and absorbs the ideal points as a group of
    the resulting GDD; every other group's filler must then be a GDD whose
    last `ideal` points form one of its groups (the filler's remaining
    groups become groups of the result). The result is verified before it
    is returned.
    """
    if ideal < 0:
        raise ValueError("ideal must be >= 0")
    n = design.point_count
    ideal_points = list(range(n, n + ideal))
    ngroups = len(design.groups)
    for gi in fillers:
        if not 0 <= gi < ngroups:
            raise ValueError(f"filler for unknown group index {gi}")
    if align is not None and align in fillers:
        raise ValueError("the aligned group must not carry a filler")

    blocks = [list(b) for b in design.blocks]
    out_groups = []

    for gi, group in enumerate(design.groups):
        if align is not None and gi == align:
            continue
        filler = fillers.get(gi)
        if filler is None:
            raise ValueError(f"group {gi} has no filler")
        mapping = dict(enumerate(list(group) + ideal_points))
        expected = len(group) + ideal
        if filler.point_count != expected:
            raise ValueError(
                f"filler for group {gi} has {filler.point_count} points, "
                f"expected {expected}"
            )
        for b in filler.blocks:
            blocks.append(_relabel(b, mapping))
        if align is not None:
            if not isinstance(filler, GroupDivisibleDesign):
                raise ValueError(
                    "aligned construction needs GDD fillers with the ideal "
                    "points as a group"
                )
            ideal_local = tuple(range(len(group), len(group) + ideal))
            if ideal > 0 and ideal_local not in filler.groups:
                raise ValueError(
                    f"filler for group {gi} must have its last {ideal} "
                    "points as a group"
                )
            for fg in filler.groups:
                if fg != ideal_local:
                    out_groups.append(_relabel(fg, mapping))

    if align is None:
        result: Design = SetSystem(n + ideal, blocks)
        report = verify_pbd(result)
    else:
        out_groups.append(list(design.groups[align]) + ideal_points)
        result = GroupDivisibleDesign(SetSystem(n + ideal, blocks), out_groups)
        report = verify_gdd(result)
    if not report.ok:
        raise ValueError(f"filling produced an invalid design: {report.summary()}")
    return result


def gdd4_g4m1_admissible(g: int, m: int) -> bool:
    """Existence criterion for a blocksize-4 GDD of type g^4 m^1 (m > 0):
    g and m both divisible by 3 and 0 < m <= 3g/2."""
    if g < 0 or m < 0:
        raise ValueError("g and m must be non-negative")
    return g % 3 == 0 and m % 3 == 0 and 0 < m and 2 * m <= 3 * g


class GddFeasibility(Enum):
    EXISTS = "Exists"
    DOES_NOT_EXIST = "DoesNotExist"
    POSSIBLE = "Possible"  # reserved; the published table never needs it
    UNKNOWN = "Unknown"


#: definite non-existence for blocksize-5 uniform GDDs of type g^u
_GDD5_DEFINITE_EXCEPTIONS = {(2, 5), (2, 11), (3, 5), (6, 5)}


def _gdd5_possible_exception(g: int, u: int) -> bool:
    """Open cases of the blocksize-5 uniform GDD spectrum, stored verbatim."""
    if (g, u) in {(3, 45), (3, 65)}:
        return True
    if g % 20 in (2, 6, 14, 18):
        if g == 2 and u in {15, 35, 71, 75, 95, 111, 115, 195, 215}:
            return True
        if g == 6 and u in {15, 35, 75, 95}:
            return True
        if g == 18 and u in {11, 15, 71, 111, 115}:
            return True
        if g in {14, 22, 26, 34, 38, 46, 58, 62} and u in {11, 15, 71, 75, 111, 115}:
            return True
        if u == 15:
            if g in {42, 54}:
                return True
            if g % 2 == 0:
                a = g // 2
                if a % 10 in (1, 3, 7, 9) and 33 <= a <= 2443:
                    return True
    if g % 20 == 10:
        if g == 10 and u in {5, 7, 15, 23, 27, 33, 35, 39, 47}:
            return True
        if g == 30 and u in {9, 15}:
            return True
        if g == 50 and u in {15, 23, 27}:
            return True
        if g == 90 and u == 23:
            return True
        if g % 10 == 0:
            a = g // 10
            if a % 6 == 1 and 7 <= a <= 319 and u in {15, 23}:
                return True
            if a % 6 == 5 and 11 <= a <= 443 and u in {15, 23}:
                return True
            if a % 6 == 1 and 325 <= a <= 487 and u == 15:
                return True
            if a % 6 == 5 and 449 <= a <= 485 and u == 15:
                return True
    return False


def gdd5_gu_admissible(g: int, u: int) -> GddFeasibility:
    """Feasibility of a blocksize-5 uniform GDD of type g^u.

    Evaluates the published congruence condition on u for g mod 20; failing
    it means DoesNotExist, as do the four definite exceptions. The finitely
    many open cases return Unknown; everything else Exists.
    """
    if g < 1 or u < 1:
        raise ValueError("g and u must be >= 1")
    r = g % 20
    if r == 0:
        ok = u >= 5
    elif r in (1, 3, 7, 9, 11, 13, 17, 19):
        ok = u % 20 in (1, 5)
    elif r in (2, 6, 14, 18):
        ok = u % 10 in (1, 5)
    elif r in (4, 8, 12, 16):
        ok = u % 5 in (0, 1)
    elif r in (5, 15):
        ok = u % 4 == 1
    else:  # r == 10
        ok = u % 2 == 1 and u >= 5
    if not ok or (g, u) in _GDD5_DEFINITE_EXCEPTIONS:
        return GddFeasibility.DOES_NOT_EXIST
    if _gdd5_possible_exception(g, u):
        return GddFeasibility.UNKNOWN
    return GddFeasibility.EXISTS
