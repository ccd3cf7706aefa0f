"""Line-based code files and JSON design files.

Code file format::

    ccc q=3 n=5 d=4 comp=2,1
    00112
    01021

One codeword per line, symbols as the characters 0-9a-z, no separators;
lines starting with ``#`` are comments; the trailing newline is mandatory.
Parsing is strict: any malformed line aborts with its line number.

Design files are JSON objects with fields ``points`` (int), ``blocks``
(list of 0-based point lists), and optionally ``groups`` (its absence means
the design is a pairwise balanced design).
"""

from __future__ import annotations

import json
import re
from typing import Union

from .codes import Code, CodeParams, Composition
from .designs import Design, GroupDivisibleDesign, SetSystem

SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyz"
_HEADER_RE = re.compile(r"^ccc q=(\d+) n=(\d+) d=(\d+) comp=([\d,]+)$")


class FormatError(ValueError):
    """Malformed file content; carries the offending location."""

    def __init__(self, message: str, source: str = "<data>", line: int = 0):
        super().__init__(f"{source}:{line}: {message}" if line else f"{source}: {message}")
        self.source = source
        self.line = line


def format_code(code: Code) -> str:
    p = code.params
    lines = [f"ccc q={p.q} n={p.n} d={p.d} comp={p.comp}"]
    for word in code.words:
        lines.append("".join(SYMBOLS[s] for s in word))
    return "\n".join(lines) + "\n"


def parse_code(text: str, source: str = "<data>") -> Code:
    if not text.endswith("\n"):
        raise FormatError("missing trailing newline", source, text.count("\n") + 1)
    params = None
    words = []
    for lineno, line in enumerate(text.split("\n")[:-1], start=1):
        if line.startswith("#"):
            continue
        if params is None:
            m = _HEADER_RE.match(line)
            if not m:
                raise FormatError(f"bad header {line!r}", source, lineno)
            q, n, d = int(m.group(1)), int(m.group(2)), int(m.group(3))
            try:
                params = CodeParams(q, n, d, Composition.parse(m.group(4)))
            except ValueError as exc:
                raise FormatError(str(exc), source, lineno) from exc
            continue
        if len(line) != params.n:
            raise FormatError(
                f"codeword has length {len(line)}, expected {params.n}", source, lineno
            )
        word = []
        for ch in line:
            v = SYMBOLS.find(ch)
            if v < 0 or v >= params.q:
                raise FormatError(f"bad symbol {ch!r}", source, lineno)
            word.append(v)
        words.append(tuple(word))
    if params is None:
        raise FormatError("missing header line", source, 1)
    return Code(params, words)


def write_code(code: Code, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_code(code))


def read_code(path) -> Code:
    with open(path) as fh:
        return parse_code(fh.read(), source=str(path))


def design_to_dict(design: Design) -> dict:
    if isinstance(design, GroupDivisibleDesign):
        return {
            "points": design.point_count,
            "groups": [list(g) for g in design.groups],
            "blocks": [list(b) for b in design.blocks],
        }
    return {
        "points": design.point_count,
        "blocks": [list(b) for b in design.blocks],
    }


def format_design(design: Design) -> str:
    return json.dumps(design_to_dict(design), indent=1) + "\n"


def parse_design(text: str, source: str = "<data>") -> Design:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc.msg}", source, exc.lineno) from exc
    if not isinstance(data, dict) or "points" not in data or "blocks" not in data:
        raise FormatError("design needs 'points' and 'blocks' fields", source, 1)
    try:
        system = SetSystem(int(data["points"]), data["blocks"])
        if "groups" in data and data["groups"] is not None:
            return GroupDivisibleDesign(system, data["groups"])
        return system
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc), source, 1) from exc


def write_design(design: Design, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_design(design))


def read_design(path) -> Design:
    with open(path) as fh:
        return parse_design(fh.read(), source=str(path))
