"""Parity game data model, validation and PGSolver text format I/O.

A game is stored densely: vertex ``i`` has ``owners[i]`` (0 = Even, 1 = Odd),
``priorities[i]``, ``successors[i]`` and an optional ``labels[i]``.
Instances are treated as immutable once built; derived indices (predecessors,
CSR arrays) are computed lazily and cached.
"""
from __future__ import annotations

import bz2
import enum
import logging
import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

log = logging.getLogger(__name__)

BZIP2_MAGIC = b"BZh"
MAX_VERTEX_ID = 2**32 - 1


class Player(enum.IntEnum):
    EVEN = 0
    ODD = 1

    @property
    def opponent(self) -> "Player":
        return Player(1 - self)


class ParseError(ValueError):
    """Malformed PGSolver input. Carries 1-based ``line`` and ``column``."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        self.reason = message
        super().__init__(f"line {line}, column {column}: {message}" if line else message)


class InvalidGameError(ValueError):
    def __init__(self, diagnostics: Sequence["Diagnostic"]):
        self.diagnostics = list(diagnostics)
        summary = "; ".join(str(d) for d in self.diagnostics[:5])
        more = len(self.diagnostics) - 5
        if more > 0:
            summary += f"; ... ({more} more)"
        super().__init__(summary)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    vertex: Optional[int]
    message: str
    target: Optional[int] = None

    def __str__(self) -> str:
        where = "" if self.vertex is None else f" at vertex {self.vertex}"
        return f"{self.code}{where}: {self.message}"


class ParityGame:
    """A parity game arena with a total edge relation.

    The constructor does not check invariants so that ``validate`` can report
    on arbitrary input; use :meth:`check` (or the parser/generators, which call
    it) to obtain a game that is known to be valid.
    """

    __slots__ = ("owners", "priorities", "successors", "labels", "initial_vertex", "_cache")

    def __init__(
        self,
        owners: Iterable[int],
        priorities: Iterable[int],
        successors: Iterable[Iterable[int]],
        labels: Optional[Iterable[Optional[str]]] = None,
        initial_vertex: Optional[int] = 0,
    ):
        self.owners = tuple(int(o) for o in owners)
        self.priorities = tuple(int(p) for p in priorities)
        self.successors = tuple(tuple(s) for s in successors)
        n = len(self.owners)
        if len(self.priorities) != n or len(self.successors) != n:
            raise ValueError("owners, priorities and successors must have equal length")
        if labels is None:
            self.labels: tuple = (None,) * n
        else:
            self.labels = tuple(labels)
            if len(self.labels) != n:
                raise ValueError("labels must have one entry per vertex")
        self.initial_vertex = initial_vertex if n else None
        self._cache: dict = {}

    @classmethod
    def from_edges(cls, owners, priorities, edges, labels=None, initial_vertex=0) -> "ParityGame":
        """Build from an edge list; successors are deduplicated and sorted."""
        n = len(owners)
        succ: list[set] = [set() for _ in range(n)]
        for u, v in edges:
            succ[u].add(v)
        return cls(owners, priorities, [sorted(s) for s in succ], labels, initial_vertex)

    def __len__(self) -> int:
        return len(self.owners)

    @property
    def num_vertices(self) -> int:
        return len(self.owners)

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self.successors)

    def vertices(self) -> range:
        return range(len(self.owners))

    def edges(self):
        for u, succ in enumerate(self.successors):
            for v in succ:
                yield u, v

    def predecessors(self) -> tuple:
        pred = self._cache.get("pred")
        if pred is None:
            lists: list[list[int]] = [[] for _ in self.owners]
            for u, succ in enumerate(self.successors):
                for v in succ:
                    lists[v].append(u)
            pred = tuple(tuple(p) for p in lists)
            self._cache["pred"] = pred
        return pred

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Successor adjacency as ``(indptr, indices)`` int64 arrays, successors ascending."""
        arrays = self._cache.get("csr")
        if arrays is None:
            n = len(self.owners)
            indptr = np.zeros(n + 1, dtype=np.int64)
            indptr[1:] = np.cumsum([len(s) for s in self.successors], dtype=np.int64)
            flat = [v for succ in self.successors for v in sorted(succ)]
            indices = np.asarray(flat, dtype=np.int64)
            arrays = (indptr, indices)
            self._cache["csr"] = arrays
        return arrays

    def owner(self, v: int) -> Player:
        return Player(self.owners[v])

    def check(self) -> "ParityGame":
        """Raise :class:`InvalidGameError` unless every invariant holds."""
        problems = validate(self)
        if problems:
            raise InvalidGameError(problems)
        return self

    def with_priorities(self, priorities: Iterable[int]) -> "ParityGame":
        return ParityGame(self.owners, priorities, self.successors, self.labels, self.initial_vertex)

    def with_owners(self, owners: Iterable[int]) -> "ParityGame":
        return ParityGame(owners, self.priorities, self.successors, self.labels, self.initial_vertex)

    def with_successors(self, successors: Iterable[Iterable[int]]) -> "ParityGame":
        return ParityGame(self.owners, self.priorities, successors, self.labels, self.initial_vertex)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParityGame):
            return NotImplemented
        return (
            self.owners == other.owners
            and self.priorities == other.priorities
            and self.labels == other.labels
            and all(set(a) == set(b) for a, b in zip(self.successors, other.successors))
            and len(self.successors) == len(other.successors)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ParityGame(n={self.num_vertices}, m={self.num_edges})"


@dataclass(frozen=True)
class WinningPartition:
    """Vertices won by Even and by Odd; disjoint and covering the game."""

    won_even: frozenset
    won_odd: frozenset

    def winner(self, v: int) -> Player:
        return Player.EVEN if v in self.won_even else Player.ODD

    def won_by(self, player: Player) -> frozenset:
        return self.won_even if player == Player.EVEN else self.won_odd

    def to_dict(self) -> dict:
        return {"won_even": sorted(self.won_even), "won_odd": sorted(self.won_odd)}


def validate(game: ParityGame) -> list[Diagnostic]:
    """Return every invariant violation of ``game``; an empty list means valid."""
    out: list[Diagnostic] = []
    n = game.num_vertices
    if n > MAX_VERTEX_ID + 1:
        out.append(Diagnostic("TooLarge", None, f"{n} vertices exceeds the supported maximum"))
    for v in range(n):
        if game.owners[v] not in (0, 1):
            out.append(Diagnostic("BadOwner", v, f"owner {game.owners[v]} is not 0 or 1"))
        if game.priorities[v] < 0:
            out.append(Diagnostic("NegativePriority", v, f"priority {game.priorities[v]} < 0"))
        succ = game.successors[v]
        if not succ:
            out.append(Diagnostic("NonTotal", v, "vertex has no successor"))
            continue
        seen = set()
        for w in succ:
            if not (0 <= w < n):
                out.append(Diagnostic("DanglingEdge", v, f"successor {w} is not a vertex", target=w))
            elif w in seen:
                out.append(Diagnostic("DuplicateSuccessor", v, f"successor {w} listed twice", target=w))
            seen.add(w)
    if n and game.initial_vertex is not None and not (0 <= game.initial_vertex < n):
        out.append(Diagnostic("BadInitialVertex", game.initial_vertex, "initial vertex out of range"))
    return out


# ---------------------------------------------------------------------------
# PGSolver format


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _statements(text: str):
    """Yield ``(offset, body)`` for each ``;``-terminated statement.

    Semicolons inside double-quoted labels do not terminate a statement.
    """
    if '"' not in text:
        offset = 0
        for chunk in text.split(";"):
            yield offset, chunk
            offset += len(chunk) + 1
        return
    start = 0
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == '"':
            i += 1
            while i < n and text[i] != '"':
                i += 2 if text[i] == "\\" else 1
            if i >= n:
                raise ParseError("unterminated label string", *_position(text, start))
        elif c == ";":
            yield start, text[start:i]
            start = i + 1
        i += 1
    yield start, text[start:]


def _unquote(s: str) -> str:
    out = []
    i = 0
    while i < len(s):
        if s[i] == "\\" and i + 1 < len(s):
            out.append(s[i + 1])
            i += 2
        else:
            out.append(s[i])
            i += 1
    return "".join(out)


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _int_field(token: str, what: str, text: str, offset: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {token!r}", *_position(text, offset)) from None
    if value < 0:
        raise ParseError(f"negative {what} {value}", *_position(text, offset))
    return value


def parse_pgsolver(
    data: bytes | str,
    *,
    strict: bool = True,
    diagnostics: Optional[list] = None,
) -> ParityGame:
    """Parse a game in PGSolver format (plain text or bzip2-compressed bytes).

    With ``strict=False`` sparse vertex ids are renumbered densely in
    ascending order instead of being rejected. Duplicate successors are
    collapsed; each occurrence appends a ``DuplicateSuccessor`` diagnostic to
    ``diagnostics`` when given.
    """
    if isinstance(data, (bytes, bytearray, memoryview)):
        raw = bytes(data)
        if raw[:3] == BZIP2_MAGIC:
            raw = bz2.decompress(raw)
        text = raw.decode("utf-8")
    else:
        text = data

    header: Optional[int] = None
    start: Optional[int] = None
    rows: dict[int, tuple] = {}
    first = True
    for offset, body in _statements(text):
        stripped = body.strip()
        if not stripped:
            continue
        lead = offset + (len(body) - len(body.lstrip()))
        quote = stripped.find('"')
        label = None
        if quote >= 0:
            tail = stripped[quote:]
            if len(tail) < 2 or not tail.endswith('"'):
                raise ParseError("label must be the last field", *_position(text, lead + quote))
            label = _unquote(tail[1:-1])
            stripped = stripped[:quote]
        fields = stripped.split()
        if fields[0] in ("parity", "start"):
            if len(fields) != 2 or label is not None:
                raise ParseError(f"malformed '{fields[0]}' directive", *_position(text, lead))
            value = _int_field(fields[1], "vertex id", text, lead)
            if fields[0] == "parity":
                if not first:
                    raise ParseError("'parity' header must come first", *_position(text, lead))
                header = value
            else:
                start = value
            first = False
            continue
        first = False
        if fields[0][0].isalpha():
            raise ParseError(f"unknown directive {fields[0]!r}", *_position(text, lead))
        if len(fields) < 3:
            raise ParseError("expected '<id> <priority> <owner> <successors>'", *_position(text, lead))
        vid = _int_field(fields[0], "vertex id", text, lead)
        prio = _int_field(fields[1], "priority", text, lead)
        owner = _int_field(fields[2], "owner", text, lead)
        if owner > 1:
            raise ParseError(f"owner must be 0 or 1, got {owner}", *_position(text, lead))
        succ_text = "".join(fields[3:])
        if not succ_text:
            raise ParseError(
                f"vertex {vid} has an empty successor list (edge relation must be total)",
                *_position(text, lead),
            )
        succ: list[int] = []
        seen: set[int] = set()
        for tok in succ_text.split(","):
            if not tok:
                raise ParseError(f"empty successor entry for vertex {vid}", *_position(text, lead))
            w = _int_field(tok, "successor id", text, lead)
            if w in seen:
                msg = f"duplicate successor {w} collapsed"
                log.warning("vertex %d: %s", vid, msg)
                if diagnostics is not None:
                    diagnostics.append(Diagnostic("DuplicateSuccessor", vid, msg, target=w))
                continue
            seen.add(w)
            succ.append(w)
        if vid in rows:
            raise ParseError(f"duplicate definition of vertex {vid}", *_position(text, lead))
        if vid > MAX_VERTEX_ID:
            raise ParseError(f"vertex id {vid} exceeds {MAX_VERTEX_ID}", *_position(text, lead))
        rows[vid] = (prio, owner, succ, label, lead)

    if text.strip() and not text.rstrip().endswith(";"):
        line, col = _position(text, len(text.rstrip()))
        raise ParseError("missing ';' at end of input", line, col)
    if not rows:
        raise ParseError("no vertices defined")

    ids = sorted(rows)
    bound = header if header is not None else ids[-1]
    if strict:
        if ids[-1] > bound:
            raise ParseError(
                f"vertex id {ids[-1]} exceeds header bound {bound}", *_position(text, rows[ids[-1]][4])
            )
        if len(ids) != bound + 1:
            missing = next(i for i in range(bound + 1) if i not in rows)
            raise ParseError(f"vertex {missing} is missing (header declares ids 0..{bound})")
        remap = None
    else:
        remap = {old: new for new, old in enumerate(ids)}

    n = len(ids)
    owners = [0] * n
    prios = [0] * n
    labels: list[Optional[str]] = [None] * n
    succs: list[list[int]] = [[]] * n
    for old in ids:
        prio, owner, succ, label, lead = rows[old]
        new = remap[old] if remap else old
        if remap:
            try:
                succ = [remap[w] for w in succ]
            except KeyError as exc:
                raise ParseError(f"successor {exc.args[0]} of vertex {old} is not defined", *_position(text, lead)) from None
        else:
            for w in succ:
                if w >= n:
                    raise ParseError(f"successor {w} of vertex {old} is out of range", *_position(text, lead))
        owners[new] = owner
        prios[new] = prio
        labels[new] = label
        succs[new] = succ
    initial = 0
    if start is not None:
        if remap:
            if start not in remap:
                raise ParseError(f"start vertex {start} is not defined")
            start = remap[start]
        elif start >= n:
            raise ParseError(f"start vertex {start} is out of range")
        initial = start
    return ParityGame(owners, prios, succs, labels, initial).check()


def write_pgsolver(game: ParityGame) -> str:
    """Canonical PGSolver text: header, ascending ids, ascending successors."""
    parts = [f"parity {game.num_vertices - 1};\n"]
    if game.initial_vertex not in (0, None):
        parts.append(f"start {game.initial_vertex};\n")
    for v in game.vertices():
        succ = ",".join(map(str, sorted(game.successors[v])))
        label = game.labels[v]
        if label is None:
            parts.append(f"{v} {game.priorities[v]} {game.owners[v]} {succ};\n")
        else:
            parts.append(f"{v} {game.priorities[v]} {game.owners[v]} {succ} {_quote(label)};\n")
    return "".join(parts)


def load_game(path: str | os.PathLike, **kwargs) -> ParityGame:
    with open(path, "rb") as fh:
        return parse_pgsolver(fh.read(), **kwargs)


def save_game(game: ParityGame, path: str | os.PathLike, *, compress: bool = False) -> None:
    data = write_pgsolver(game).encode("utf-8")
    if compress:
        data = bz2.compress(data)
    with open(path, "wb") as fh:
        fh.write(data)
