"""Text interchange format for DFAs.

::

    dfa 1
    <n> <k>
    start <q0>
    accepting <f_0> ... <f_{n-1}>
    <delta(0,0)> ... <delta(0,k-1)>
    ...
    <delta(n-1,0)> ... <delta(n-1,k-1)>

ASCII, single spaces, ``\\n`` line endings, trailing newline.
"""

from __future__ import annotations

import os
from typing import TextIO

import numpy as np

from .automata import STATE_DTYPE, Dfa, Semiautomaton
from .errors import DfaParseError, InvalidParameterError

MAGIC = "dfa"
VERSION = 1


def dumps(d: Dfa) -> str:
    lines = [
        f"{MAGIC} {VERSION}",
        f"{d.n} {d.k}",
        f"start {d.start}",
        "accepting " + " ".join("1" if a else "0" for a in d.accepting.tolist()),
    ]
    lines.extend(" ".join(map(str, row)) for row in d.delta.tolist())
    return "\n".join(lines) + "\n"


def _ints(tokens: list[str], lineno: int, what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise DfaParseError(f"expected integers in {what}, got {' '.join(tokens)!r}", lineno) from None


def loads(text: str) -> Dfa:
    lines = text.splitlines()
    # ignore trailing blank lines only
    while lines and not lines[-1].strip():
        lines.pop()

    def line(i: int) -> list[str]:
        if i >= len(lines):
            raise DfaParseError("unexpected end of file", i + 1)
        return lines[i].split()

    head = line(0)
    if len(head) != 2 or head[0] != MAGIC:
        raise DfaParseError(f"expected header '{MAGIC} {VERSION}'", 1)
    if _ints(head[1:], 1, "header") != [VERSION]:
        raise DfaParseError(f"unsupported format version {head[1]}", 1)

    dims = _ints(line(1), 2, "dimensions")
    if len(dims) != 2 or dims[0] < 1 or dims[1] < 1:
        raise DfaParseError("expected 'n k' with n, k >= 1", 2)
    n, k = dims

    start_tok = line(2)
    if len(start_tok) != 2 or start_tok[0] != "start":
        raise DfaParseError("expected 'start <state>'", 3)
    start = _ints(start_tok[1:], 3, "start")[0]
    if not 0 <= start < n:
        raise DfaParseError(f"start state {start} outside [0, {n})", 3)

    acc_tok = line(3)
    if not acc_tok or acc_tok[0] != "accepting":
        raise DfaParseError("expected 'accepting <flags>'", 4)
    flags = _ints(acc_tok[1:], 4, "accepting flags")
    if len(flags) != n or any(f not in (0, 1) for f in flags):
        raise DfaParseError(f"expected {n} accepting flags in {{0, 1}}", 4)

    rows = []
    for q in range(n):
        lineno = 5 + q
        row = _ints(line(4 + q), lineno, f"row {q}")
        if len(row) != k:
            raise DfaParseError(f"row {q} has {len(row)} entries, expected {k}", lineno)
        if any(not 0 <= t < n for t in row):
            raise DfaParseError(f"row {q} has a target outside [0, {n})", lineno)
        rows.append(row)
    if len(lines) > 4 + n:
        raise DfaParseError("trailing content after the transition rows", 5 + n)

    try:
        delta = np.array(rows, dtype=STATE_DTYPE).reshape(n, k)
        return Dfa(Semiautomaton(delta), np.array(flags, dtype=bool), start)
    except InvalidParameterError as exc:  # pragma: no cover - guarded above
        raise DfaParseError(str(exc)) from exc


def dump(d: Dfa, fp: TextIO) -> None:
    fp.write(dumps(d))


def load(fp: TextIO) -> Dfa:
    return loads(fp.read())


def write_file(d: Dfa, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fp:
        dump(d, fp)


def read_file(path: str | os.PathLike) -> Dfa:
    with open(path, "rb") as fp:
        raw = fp.read()
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        line = raw[: exc.start].count(b"\n") + 1
        raise DfaParseError("non-ASCII byte", line) from None
    return loads(text)
