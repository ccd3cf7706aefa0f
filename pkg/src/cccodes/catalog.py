"""Catalog of best-known code sizes, exception tables, and persistence.

The built-in seed data records published optimal sizes: finite search
tables, the closed even/odd-length families, and the quaternary weight-3
spectrum. Seeded values are assertions to reproduce, not trusted witnesses:
entries gain a local witness file only when a code is stored next to them,
and reports can be asked to downgrade witness-less entries (`strict`).

A catalog directory holds one code file per witnessed entry plus a single
index document; stores are serialised through an exclusive lock file, and a
concurrent store attempt fails instead of interleaving.
"""

from __future__ import annotations

import os
import shlex
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Dict, Optional, Tuple

from . import fileio
from .bounds import (
    bound_quaternary_w3,
    bound_svanstrom,
    bound_weight45,
    upper_bound,
)
from .codes import Code, CodeParams, Composition, verify_code


class CatalogStatus(Enum):
    EXACT = "Exact"
    OPEN = "Open"
    ASYMPTOTIC = "AsymptoticFormula"


@dataclass(frozen=True)
class CatalogEntry:
    params: CodeParams
    lower: int
    upper: int
    status: CatalogStatus
    provenance: str
    witness: Optional[str] = None
    recipe: Optional[str] = None

    def strict_view(self) -> "CatalogEntry":
        """Downgrade an exact value that has neither a local witness file
        nor a locally reproducible recipe."""
        if self.status is CatalogStatus.EXACT and not self.witness and not self.recipe:
            return replace(
                self,
                status=CatalogStatus.OPEN,
                lower=1,
                provenance=self.provenance + " [unwitnessed]",
            )
        return self


# ---------------------------------------------------------------------------
# Exception tables (transcribed verbatim from the published spectra)
# ---------------------------------------------------------------------------

#: orders not in, or not known to be in, the block-size-{4,7,8,9} spectrum
TABLE_BLOCKSIZES_4789 = frozenset({
    5, 6, 10, 11, 12, 14, 15, 17, 18, 19,
    20, 21, 23, 24, 26, 27, 30, 35, 38, 39,
    41, 42, 44, 47, 48, 51, 54, 59, 62, 110,
    143, 146, 147, 150, 158, 159, 161, 162, 164, 167,
    170, 171, 173, 174,
})

#: ranges (inclusive) not in, or not known to be in, the {8,9,10} spectrum
TABLE_BLOCKSIZES_8910_RANGES = (
    (11, 56), (58, 63), (66, 71), (75, 79), (101, 109), (111, 113),
    (115, 119), (126, 127), (133, 135), (155, 160), (166, 167), (173, 231),
    (239, 239), (247, 287), (290, 295), (299, 343), (346, 351), (355, 399),
    (403, 407), (411, 423), (426, 431), (435, 439), (443, 448), (452, 455),
    (472, 497), (499, 503), (507, 511), (580, 582),
)


def in_table_8910(n: int) -> bool:
    return any(lo <= n <= hi for lo, hi in TABLE_BLOCKSIZES_8910_RANGES)


def expand_table_8910() -> frozenset:
    out = set()
    for lo, hi in TABLE_BLOCKSIZES_8910_RANGES:
        out.update(range(lo, hi + 1))
    return frozenset(out)


#: lengths where the quaternary (n, 3, [1,1,1]) optimum is still open
QUATERNARY_D3_POSSIBLE_EXCEPTIONS = frozenset({44, 47, 51, 54, 59, 62, 158, 167, 173})


# ---------------------------------------------------------------------------
# Seeded exact values
# ---------------------------------------------------------------------------

_P_SEARCH = "short optimal code table (search)"
_P_SVANSTROM = "Svanstrom (2000)"
_P_SOB = "Svanstrom-Ostergard-Bogdanova (2002)"
_P_EXHAUSTIVE = "exhaustive search (Chu-Colbourn-Dukes 2005 tables)"

_TERNARY_W3 = Composition((2, 1))
_QUATERNARY_W3 = Composition((1, 1, 1))


def _seed_table() -> Dict[CodeParams, Tuple[int, str, Optional[str]]]:
    """The finite published tables. Infinite families are deliberately not
    seeded as exact entries; they are reported through `asymptotic_value`.

    A recipe names the in-package call that re-derives the value at desk
    scale; entries without one are paper-provenance values whose published
    witness codes are not shipped.
    """
    seeds: Dict[CodeParams, Tuple[int, str, Optional[str]]] = {}

    def put(q, n, d, comp, value, provenance, recipe=None):
        seeds[CodeParams(q, n, d, comp)] = (value, provenance, recipe)

    desk_exact = "max_code_exact"
    for n in (5, 9, 13, 15, 17, 19, 23, 27, 29, 31, 33):
        recipe = desk_exact if n <= 9 else None
        put(3, n, 4, _TERNARY_W3, bound_svanstrom(n).value, _P_SEARCH, recipe)
    for n in (7, 11):
        put(3, n, 4, _TERNARY_W3, bound_svanstrom(n).value, _P_SVANSTROM,
            desk_exact if n <= 9 else None)
    for n in (4, 7, 8, 9, 10, 11, 12, 14, 15, 17, 18, 19, 20, 21, 23, 24,
              26, 27, 30, 35, 38, 39, 41, 42):
        put(4, n, 3, _QUATERNARY_W3, n * (n - 1), _P_SEARCH)
    for n in (4, 10, 11, 14, 16, 18, 19, 22, 23, 24, 25, 26, 27, 28, 29, 30,
              31, 32, 33, 34):
        recipe = "max_code_cyclic" if n == 11 else None
        put(4, n, 4, _QUATERNARY_W3, n * ((n - 1) // 2), _P_SEARCH, recipe)
    for n in (7, 13, 15, 19):
        put(3, n, 5, Composition((3, 1)), n * (n - 1) // 6, _P_SEARCH)
    for n in (13, 16):
        put(3, n, 7, Composition((4, 1)), n * (n - 1) // 12, _P_SEARCH,
            "max_code_cyclic" if n == 13 else None)
    put(4, 5, 3, _QUATERNARY_W3, 18, _P_EXHAUSTIVE, desk_exact)
    put(4, 6, 3, _QUATERNARY_W3, 28, _P_EXHAUSTIVE, desk_exact)
    # quaternary weight-3 distance-5 values below the cyclic-shift range
    put(4, 3, 5, _QUATERNARY_W3, 1, _P_EXHAUSTIVE, desk_exact)
    put(4, 4, 5, _QUATERNARY_W3, 1, _P_EXHAUSTIVE, desk_exact)
    put(4, 5, 5, _QUATERNARY_W3, 2, _P_EXHAUSTIVE, desk_exact)
    put(4, 6, 5, _QUATERNARY_W3, 4, _P_EXHAUSTIVE, desk_exact)
    put(3, 10, 6, Composition((3, 1)), 10, _P_SOB)
    put(3, 10, 6, Composition((2, 2)), 15, _P_SOB, "local_search(seed=0)")
    return seeds


_SEEDS = _seed_table()


def exact_seed(params: CodeParams) -> Optional[Tuple[int, str, Optional[str]]]:
    """The seeded exact value for these parameters, if any."""
    return _SEEDS.get(params)


def seeded_params() -> Tuple[CodeParams, ...]:
    """Parameter sets with a finite seeded value (families not expanded)."""
    return tuple(_SEEDS)


_ASYMPTOTIC_CAVEAT = "valid for all sufficiently large n; threshold unknown"


def asymptotic_value(params: CodeParams) -> Optional[Tuple[int, str]]:
    """Closed-form optimum for the known families, tagged with the
    sufficiently-large-n caveat; None when no family formula applies."""
    q, n, d, counts = params.q, params.n, params.d, params.comp.counts
    value = None
    if q == 3 and d == 4 and counts == (2, 1):
        if n % 4 == 3:
            value = (n - 1) ** 2 // 4 + (n - 3) // 12
        else:
            value = n * ((n - 1) // 2) // 2
    elif q == 4 and counts == (1, 1, 1):
        if d == 3:
            value = n * (n - 1)
        elif d == 4:
            value = n * ((n - 1) // 2)
        elif d == 5:
            value = n
    elif q == 3 and d == 5 and counts == (3, 1) and n % 6 in (1, 3):
        value = n * (n - 1) // 6
    elif q == 3 and d == 7 and counts == (4, 1) and n % 12 in (1, 4):
        value = n * (n - 1) // 12
    elif q == 3 and d == 6 and counts == (3, 1) and n % 45 in (1, 10):
        value = n * (n - 1) // 9
    elif q == 3 and d == 6 and counts == (2, 2) and n % 45 in (1, 10):
        value = n * (n - 1) // 6
    elif q == 4 and d == 6 and counts == (2, 1, 1) and n % 45 in (1, 10):
        value = n * (n - 1) // 6
    if value is None:
        return None
    return value, _ASYMPTOTIC_CAVEAT


def catalog_lookup(params: CodeParams, catalog: Optional["Catalog"] = None) -> CatalogEntry:
    """Merge seed data, bound formulas, and any stored entries.

    Unseeded parameters come back Open with the trivial lower bound of 1
    (a single codeword always exists when the weight fits the length).
    """
    upper = upper_bound(params).value
    upper_prov = upper_bound(params).citation
    lower, prov, recipe, witness = 1, "single codeword", None, None

    seed = exact_seed(params)
    if seed is not None:
        value, seed_prov, seed_recipe = seed
        lower, prov, recipe = value, seed_prov, seed_recipe
        upper = min(upper, value)

    if catalog is not None:
        stored = catalog.stored().get(params)
        if stored is not None and stored.lower >= lower:
            lower = stored.lower
            witness = stored.witness
            prov = stored.provenance if stored.lower > (seed[0] if seed else 0) else prov

    if lower > upper:
        raise ValueError(
            f"catalog inconsistency for {params}: lower {lower} > upper {upper}"
        )
    if lower == upper:
        status = CatalogStatus.EXACT
    elif asymptotic_value(params) is not None:
        status = CatalogStatus.ASYMPTOTIC
    else:
        status = CatalogStatus.OPEN
    return CatalogEntry(params, lower, upper, status, prov, witness, recipe)


def builtin_selfcheck() -> list:
    """Cross-check every seeded exact value against the bound formulas
    where equality is claimed; returns a list of problem strings."""
    problems = []
    for params, (value, _prov, _recipe) in sorted(
        _SEEDS.items(), key=lambda kv: str(kv[0])
    ):
        q, n, d, counts = params.q, params.n, params.d, params.comp.counts
        expected = None
        if q == 3 and d == 4 and counts == (2, 1) and n % 2 == 1:
            expected = bound_svanstrom(n).value
        elif q == 4 and counts == (1, 1, 1) and d in (3, 4) and (q, n, d) not in (
            (4, 5, 3),
            (4, 6, 3),
        ):
            expected = bound_quaternary_w3(n, d).value
        elif q == 3 and (d, counts) in ((5, (3, 1)), (7, (4, 1)), (6, (3, 1))):
            expected = bound_weight45(params).value
        elif q == 3 and d == 6 and counts == (2, 2):
            expected = n * ((n - 1) // 3) // 2
        if expected is not None and value != expected:
            problems.append(f"{params}: seeded {value} != formula bound {expected}")
        if value > upper_bound(params).value:
            problems.append(f"{params}: seeded {value} above upper bound")
    return problems


# ---------------------------------------------------------------------------
# Directory persistence
# ---------------------------------------------------------------------------


class CatalogBusy(OSError):
    """Another store is in progress; concurrent stores must fail."""


class Catalog:
    """A directory of witness code files plus one line-oriented index.

    Index line format: ``q n d comp lower upper status provenance witness``
    with the provenance shell-quoted and ``-`` for a missing witness.
    """

    INDEX = "index.txt"
    LOCK = ".lock"

    def __init__(self, root):
        self.root = Path(root)

    def _index_path(self) -> Path:
        return self.root / self.INDEX

    def stored(self) -> Dict[CodeParams, CatalogEntry]:
        path = self._index_path()
        if not path.exists():
            return {}
        entries = {}
        for lineno, line in enumerate(path.read_text().splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                fields = shlex.split(line)
                q, n, d = int(fields[0]), int(fields[1]), int(fields[2])
                comp = Composition.parse(fields[3])
                lower, upper = int(fields[4]), int(fields[5])
                status = CatalogStatus(fields[6])
                provenance = fields[7]
                witness = None if fields[8] == "-" else fields[8]
            except (IndexError, ValueError) as exc:
                raise fileio.FormatError(str(exc), str(path), lineno) from exc
            params = CodeParams(q, n, d, comp)
            entries[params] = CatalogEntry(
                params, lower, upper, status, provenance, witness
            )
        return entries

    def _write_index(self, entries: Dict[CodeParams, CatalogEntry]) -> None:
        lines = []
        for params in sorted(entries, key=lambda p: (p.q, p.n, p.d, p.comp.counts)):
            e = entries[params]
            lines.append(
                f"{params.q} {params.n} {params.d} {params.comp} "
                f"{e.lower} {e.upper} {e.status.value} "
                f"{shlex.quote(e.provenance)} {e.witness or '-'}"
            )
        self._index_path().write_text("\n".join(lines) + "\n" if lines else "")

    def witness_path(self, params: CodeParams) -> str:
        comp = str(params.comp).replace(",", "-")
        return f"q{params.q}_n{params.n}_d{params.d}_w{comp}.ccc"

    def store(self, code: Code, provenance: str = "local search") -> CatalogEntry:
        """Persist a verified code as the witness for its parameters.

        Refuses codes that fail verification and size regressions below the
        best-known lower bound.
        """
        report = verify_code(code)
        if not report.ok:
            raise ValueError(f"refusing to store an invalid code: {report.summary()}")
        current = catalog_lookup(code.params, self)
        if len(code) < current.lower:
            raise ValueError(
                f"refusing regression: stored size {len(code)} < known lower "
                f"{current.lower}"
            )
        self.root.mkdir(parents=True, exist_ok=True)
        lock = self.root / self.LOCK
        try:
            fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise CatalogBusy(f"catalog {self.root} is locked by another store")
        try:
            rel = self.witness_path(code.params)
            fileio.write_code(code, self.root / rel)
            entries = self.stored()
            status = (
                CatalogStatus.EXACT
                if len(code) == current.upper
                else current.status
            )
            entries[code.params] = CatalogEntry(
                code.params, len(code), current.upper, status, provenance, rel
            )
            self._write_index(entries)
            return entries[code.params]
        finally:
            os.close(fd)
            os.unlink(lock)

    def check(self) -> list:
        """Validate stored entries (witness parses, verifies, matches its
        parameters and size) plus the built-in seed self-check."""
        problems = list(builtin_selfcheck())
        for params, entry in sorted(
            self.stored().items(), key=lambda kv: str(kv[0])
        ):
            if entry.lower > entry.upper:
                problems.append(f"{params}: lower {entry.lower} > upper {entry.upper}")
            if entry.witness is None:
                continue
            path = self.root / entry.witness
            if not path.exists():
                problems.append(f"{params}: witness {entry.witness} missing")
                continue
            try:
                code = fileio.read_code(path)
            except fileio.FormatError as exc:
                problems.append(f"{params}: witness unreadable: {exc}")
                continue
            if code.params != params:
                problems.append(f"{params}: witness has parameters {code.params}")
                continue
            if not verify_code(code).ok:
                problems.append(f"{params}: witness fails verification")
            elif len(code) != entry.lower:
                problems.append(
                    f"{params}: witness size {len(code)} != recorded {entry.lower}"
                )
        return problems
