"""Core data model for constant-composition codes and direct transformations.

A codeword is a plain tuple of symbols in [0, q); a code is a parameter
tuple plus a sorted tuple of codewords. Constructors normalise but do not
enforce the code-theoretic invariants; `verify_code` is the authority and
reports every violation, which lets tests build deliberately broken codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels

#: symbols are rendered as single characters in code files, so q is capped
MAX_ALPHABET = 36

Codeword = tuple


@dataclass(frozen=True, order=True)
class Composition:
    """Non-increasing positive counts of the nonzero symbols 1, 2, ..."""

    counts: tuple

    def __post_init__(self):
        cleaned = tuple(sorted((int(c) for c in self.counts), reverse=True))
        if any(c < 0 for c in cleaned):
            raise ValueError(f"negative count in composition {self.counts}")
        cleaned = tuple(c for c in cleaned if c > 0)
        if not cleaned:
            raise ValueError("empty composition")
        object.__setattr__(self, "counts", cleaned)

    @property
    def weight(self) -> int:
        return sum(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.counts)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        try:
            counts = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise ValueError(f"bad composition {text!r}") from exc
        return cls(counts)


@dataclass(frozen=True, order=True)
class CodeParams:
    """Alphabet size, length, minimum distance, and composition."""

    q: int
    n: int
    d: int
    comp: Composition

    def __post_init__(self):
        if self.q < 2 or self.q > MAX_ALPHABET:
            raise ValueError(f"alphabet size {self.q} outside [2, {MAX_ALPHABET}]")
        if self.n < 1:
            raise ValueError(f"length {self.n} < 1")
        if self.d < 1:
            raise ValueError(f"distance {self.d} < 1")
        if len(self.comp) > self.q - 1:
            raise ValueError(
                f"composition {self.comp} has more than q-1={self.q - 1} entries"
            )
        if self.comp.weight > self.n:
            raise ValueError(f"weight {self.comp.weight} exceeds length {self.n}")

    @property
    def weight(self) -> int:
        return self.comp.weight

    @property
    def singleton_only(self) -> bool:
        """Two distinct words differ in at most 2w positions, so d > 2w
        admits only one-word codes."""
        return self.d > 2 * self.weight

    def __str__(self) -> str:
        return f"(q={self.q}, n={self.n}, d={self.d}, w=[{self.comp}])"


@dataclass(frozen=True)
class Code:
    """A set of codewords under fixed parameters.

    Words are stored sorted; duplicates are kept so `verify_code` can report
    them.
    """

    params: CodeParams
    words: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(
            self, "words", tuple(sorted(tuple(int(s) for s in w) for w in self.words))
        )

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def matrix(self) -> np.ndarray:
        """Words as a (m, n) uint8 matrix for the numeric kernels."""
        if not self.words:
            return np.zeros((0, self.params.n), dtype=np.uint8)
        return np.array(self.words, dtype=np.uint8)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: tuple
    measured: object = None


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    violations: tuple

    @classmethod
    def from_violations(cls, violations: Sequence[Violation]) -> "VerifyReport":
        vs = tuple(violations)
        return cls(ok=not vs, violations=vs)

    def summary(self) -> str:
        if self.ok:
            return "ok"
        lines = [f"{len(self.violations)} violation(s)"]
        for v in self.violations[:20]:
            lines.append(f"  {v.kind}: {v.detail} measured={v.measured}")
        if len(self.violations) > 20:
            lines.append(f"  ... and {len(self.violations) - 20} more")
        return "\n".join(lines)


def hamming_distance(u: Sequence, v: Sequence) -> int:
    """Number of positions where two equal-length words differ."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(1 for a, b in zip(u, v) if a != b)


def support(u: Sequence) -> tuple:
    return tuple(i for i, s in enumerate(u) if s != 0)


def composition_of(u: Sequence, q: int) -> Composition:
    """Composition of a word: normalised counts of its nonzero symbols."""
    counts = [0] * q
    for s in u:
        if not 0 <= s < q:
            raise ValueError(f"symbol {s} outside [0, {q})")
        counts[s] += 1
    if sum(counts[1:]) == 0:
        raise ValueError("all-zero word has empty composition")
    return Composition(tuple(counts[1:]))


def min_distance(code: Code) -> int:
    """Minimum pairwise Hamming distance; needs at least two words."""
    if len(code) < 2:
        raise ValueError("min_distance needs at least 2 words")
    dist = kernels.pairwise_distances(code.matrix())
    m = len(code)
    return int(dist[np.triu_indices(m, k=1)].min())


def verify_code(code: Code) -> VerifyReport:
    """Check every Code invariant, reporting all violations.

    Violation kinds: length, symbol, composition, duplicate, distance.
    """
    p = code.params
    violations = []
    clean = []
    for w in code.words:
        if len(w) != p.n:
            violations.append(Violation("length", (w,), len(w)))
            continue
        if any(not 0 <= s < p.q for s in w):
            violations.append(Violation("symbol", (w,), max(w)))
            continue
        try:
            comp = composition_of(w, p.q)
        except ValueError:
            violations.append(Violation("composition", (w,), ()))
            continue
        if comp != p.comp:
            violations.append(Violation("composition", (w,), comp.counts))
            continue
        clean.append(w)

    for i in range(1, len(clean)):
        if clean[i] == clean[i - 1]:
            violations.append(Violation("duplicate", (clean[i],), None))

    distinct = sorted(set(clean))
    if len(distinct) >= 2:
        mat = np.array(distinct, dtype=np.uint8)
        dist = kernels.pairwise_distances(mat)
        bad = np.argwhere(np.triu(dist < p.d, k=1))
        for a, b in bad:
            violations.append(
                Violation("distance", (distinct[a], distinct[b]), int(dist[a, b]))
            )
    return VerifyReport.from_violations(violations)


def is_refinement(fine: Composition, coarse: Composition) -> Optional[tuple]:
    """Partition of fine's index set whose part sums equal coarse's entries.

    Returns the lexicographically smallest such partition as a tuple of
    sorted 0-based index tuples (part j sums to coarse.counts[j]), or None.
    """
    a = len(fine.counts)
    if fine.weight != coarse.weight:
        return None

    best = None

    def extend(parts, remaining):
        nonlocal best
        if best is not None:
            return
        j = len(parts)
        if j == len(coarse.counts):
            if not remaining:
                best = tuple(parts)
            return
        target = coarse.counts[j]
        # candidate parts in lexicographic order of their sorted index tuples
        rem = sorted(remaining)
        for cand in _subsets_summing(rem, target, fine.counts):
            extend(parts + [cand], remaining - set(cand))
            if best is not None:
                return

    extend([], set(range(a)))
    return best


def _subsets_summing(indices, target, counts):
    """Subsets of `indices` (ascending) with count-sum `target`, lex order."""
    out = []

    def rec(start, chosen, total):
        if total == target:
            out.append(tuple(chosen))
            return
        for k in range(start, len(indices)):
            idx = indices[k]
            if total + counts[idx] <= target:
                chosen.append(idx)
                rec(k + 1, chosen, total + counts[idx])
                chosen.pop()

    rec(0, [], 0)
    return out


def refine_code(
    code: Code,
    fine: Composition,
    new_q: int,
    partition: Optional[tuple] = None,
) -> Code:
    """Relabel symbol occurrences to turn a code over a coarse composition
    into one over a refining composition, preserving size and distance.

    In each codeword the occurrences of coarse symbol j, scanned left to
    right, are relabelled to the fine symbols of part j with their fine
    multiplicities, parts consumed in index order.
    """
    coarse = code.params.comp
    if partition is None:
        partition = is_refinement(fine, coarse)
        if partition is None:
            raise ValueError(f"[{fine}] is not a refinement of [{coarse}]")
    if new_q <= len(fine.counts):
        raise ValueError(f"new alphabet {new_q} too small for [{fine}]")
    if len(partition) != len(coarse.counts):
        raise ValueError("partition does not match the coarse composition")
    for j, part in enumerate(partition):
        if sum(fine.counts[i] for i in part) != coarse.counts[j]:
            raise ValueError(f"part {part} does not sum to {coarse.counts[j]}")

    # per coarse symbol j: the sequence of fine symbols for its occurrences
    relabel = {}
    for j, part in enumerate(partition):
        seq = []
        for i in sorted(part):
            seq.extend([i + 1] * fine.counts[i])
        relabel[j + 1] = seq

    new_words = []
    for w in code.words:
        seen = {j: 0 for j in relabel}
        out = []
        for s in w:
            if s == 0:
                out.append(0)
            else:
                if s not in relabel or seen[s] >= len(relabel[s]):
                    raise ValueError(f"word {w} inconsistent with [{coarse}]")
                out.append(relabel[s][seen[s]])
                seen[s] += 1
        new_words.append(tuple(out))

    new_params = CodeParams(new_q, code.params.n, code.params.d, fine)
    return Code(new_params, new_words)


def shorten_code(code: Code, position: int) -> Code:
    """Keep words with a zero at `position` and delete that coordinate."""
    p = code.params
    if not 0 <= position < p.n:
        raise ValueError(f"position {position} outside [0, {p.n})")
    kept = [w[:position] + w[position + 1 :] for w in code.words if w[position] == 0]
    return Code(CodeParams(p.q, p.n - 1, p.d, p.comp), kept)


def distance_five_cyclic_code(n: int) -> Code:
    """The (n, 5, [1,1,1])_4 code formed by all n cyclic shifts of the word
    1,2,0,3,0,...,0. Valid for n >= 7; the code has exactly n words."""
    if n < 7:
        raise ValueError(f"cyclic construction needs n >= 7, got {n}")
    seed = (1, 2, 0, 3) + (0,) * (n - 4)
    words = [seed[-s:] + seed[:-s] for s in range(n)]
    params = CodeParams(4, n, 5, Composition((1, 1, 1)))
    return Code(params, words)
