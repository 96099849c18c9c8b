"""Write-once memory (WOM) codes.

A WOM cell starts erased (``1``) and can be programmed (``0``) exactly once.
A ``(n, k, t)`` WOM code stores ``k`` fresh bits in ``n`` such cells ``t``
times in a row: each write may only program additional cells, and the
current ``k``-bit value is always recovered by applying a fixed decode map to
the cell vector.

Cells are numbered ``1..n`` left to right.  Internally a state is packed into
an integer whose set bits are the *erased* cells, cell 1 being the most
significant bit, so ``"011"`` packs to ``0b011``.  With that packing a state
``b`` is a legal successor of ``a`` exactly when ``b`` is a submask of ``a``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    DimensionMismatch,
    EnumerationTooLarge,
    NoValidSuccessor,
    NotFound,
    SearchSpaceTooLarge,
)

ERASED = 1
PROGRAMMED = 0

InfoWord = tuple[int, ...]
BitsLike = Union[str, Sequence[int]]

MAX_VERIFY_BITS = 24
SYNTH_MAX_N, SYNTH_MAX_K, SYNTH_MAX_T = 4, 2, 3


def as_bits(value: BitsLike, length: int | None = None) -> tuple[int, ...]:
    """Coerce ``"0110"`` or ``[0, 1, 1, 0]`` to a tuple of ints.

    Raises :class:`DimensionMismatch` if ``length`` is given and differs.
    """
    if isinstance(value, str):
        text = value.strip()
        if any(ch not in "01" for ch in text):
            raise DimensionMismatch(f"not a bit string: {value!r}")
        bits = tuple(int(ch) for ch in text)
    else:
        bits = tuple(int(b) for b in value)
        if any(b not in (0, 1) for b in bits):
            raise DimensionMismatch(f"not a bit sequence: {value!r}")
    if length is not None and len(bits) != length:
        raise DimensionMismatch(f"expected {length} bits, got {len(bits)}")
    return bits


def bits_to_str(bits: Iterable[int]) -> str:
    return "".join(str(b) for b in bits)


def _pack(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def _unpack(value: int, n: int) -> tuple[int, ...]:
    return tuple((value >> (n - 1 - i)) & 1 for i in range(n))


@dataclass(frozen=True)
class BinaryCellState:
    """Punch-card state of ``n`` cells; ``1`` is erased, ``0`` is programmed."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = as_bits(self.bits)
        if not bits:
            raise DimensionMismatch("a cell state needs at least one cell")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def erased(cls, n: int) -> "BinaryCellState":
        return cls((ERASED,) * n)

    @classmethod
    def parse(cls, text: str) -> "BinaryCellState":
        return cls(as_bits(text))

    @classmethod
    def from_int(cls, value: int, n: int) -> "BinaryCellState":
        return cls(_unpack(value, n))

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def support(self) -> frozenset[int]:
        """1-based indices of the programmed cells."""
        return frozenset(i + 1 for i, b in enumerate(self.bits) if b == PROGRAMMED)

    def to_int(self) -> int:
        return _pack(self.bits)

    def covers(self, prior: "BinaryCellState") -> bool:
        """True if this state is reachable from ``prior`` by programming only."""
        return self.n == prior.n and self.support >= prior.support

    def complement(self) -> "BinaryCellState":
        return BinaryCellState(tuple(1 - b for b in self.bits))

    def __str__(self) -> str:
        return bits_to_str(self.bits)


WriteTable = dict[tuple[BinaryCellState, InfoWord], BinaryCellState]


@dataclass(frozen=True)
class WomCodeSpec:
    """An ``(n, k, t)`` WOM code.

    ``decode_table[r]`` is the info word for the read whose packed value is
    ``r``.  ``write_tables[j - 1]`` maps ``(prior state, info)`` to the
    successor used by write ``j``; priors missing from the table are served by
    an on-demand search (see :func:`wom_encode`).
    """

    n: int
    k: int
    t: int
    decode_table: tuple[InfoWord, ...]
    write_tables: tuple[WriteTable, ...] = field(default=(), compare=True)

    def __post_init__(self):
        if self.n < 1 or self.k < 1 or self.t < 1:
            raise DimensionMismatch(f"n, k, t must be positive: {(self.n, self.k, self.t)}")
        if len(self.decode_table) != 1 << self.n:
            raise DimensionMismatch(
                f"decode table needs {1 << self.n} entries, got {len(self.decode_table)}"
            )
        table = tuple(as_bits(v, self.k) for v in self.decode_table)
        object.__setattr__(self, "decode_table", table)
        if len(self.write_tables) not in (0, self.t):
            raise DimensionMismatch(f"expected {self.t} write tables, got {len(self.write_tables)}")
        for wt in self.write_tables:
            for (prior, info), nxt in wt.items():
                if prior.n != self.n or nxt.n != self.n or len(info) != self.k:
                    raise DimensionMismatch(f"write table entry has wrong shape: {prior} {info} -> {nxt}")

    __hash__ = None  # type: ignore[assignment]

    def decode(self, read: BinaryCellState) -> InfoWord:
        return self.decode_table[read.to_int()]

    def info_words(self) -> list[InfoWord]:
        return [_unpack(v, self.k) for v in range(1 << self.k)]


def _coerce_state(state: BinaryCellState | BitsLike, n: int) -> BinaryCellState:
    if not isinstance(state, BinaryCellState):
        state = BinaryCellState(as_bits(state))
    if state.n != n:
        raise DimensionMismatch(f"expected {n} cells, got {state.n}")
    return state


def wom_decode(code: WomCodeSpec, read: BinaryCellState | BitsLike) -> InfoWord:
    """Return the info word stored in ``read``."""
    return code.decode(_coerce_state(read, code.n))


def wom_encode(
    code: WomCodeSpec,
    j: int,
    info: BitsLike,
    prior: BinaryCellState | BitsLike | None = None,
) -> BinaryCellState:
    """Perform write ``j`` (1-based) of ``info`` on top of ``prior``.

    The write table is consulted first.  A prior that the table does not
    list gets the successor chosen by :func:`_choose_successor`, restricted
    to states that can still absorb the remaining ``t - j`` writes.
    """
    if not 1 <= j <= code.t:
        raise DimensionMismatch(f"write index {j} outside 1..{code.t}")
    info = as_bits(info, code.k)
    prior = BinaryCellState.erased(code.n) if prior is None else _coerce_state(prior, code.n)

    if code.write_tables:
        hit = code.write_tables[j - 1].get((prior, info))
        if hit is not None:
            return hit

    decode = [_pack(v) for v in code.decode_table]
    writable = _writability(decode, code.n, code.k, code.t - j)[code.t - j]
    best = _choose_successor(prior.to_int(), _pack(info), decode, writable, code.n)
    if best is None:
        raise NoValidSuccessor(f"write {j}: no successor of {prior} decodes to {bits_to_str(info)}")
    return BinaryCellState.from_int(best, code.n)


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _support_key(state: int, n: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(n) if not (state >> (n - 1 - i)) & 1)


def _choose_successor(
    prior: int, info: int, decode: Sequence[int], writable: Sequence[bool], n: int
) -> int | None:
    # fewest newly programmed cells, then lexicographically smallest support
    best, best_key = None, None
    for sub in _submasks(prior):
        if decode[sub] != info or not writable[sub]:
            continue
        key = (bin(prior ^ sub).count("1"), _support_key(sub, n))
        if best_key is None or key < best_key:
            best, best_key = sub, key
    return best


_SUBMASKS = {n: [tuple(_submasks(s)) for s in range(1 << n)] for n in range(1, SYNTH_MAX_N + 1)}


def _writability(decode: Sequence[int], n: int, k: int, depth: int) -> list[list[bool]]:
    """``levels[r][s]`` is True iff packed state ``s`` can absorb ``r`` more writes.

    A negative ``decode`` entry is an unassigned read.  It may later take any
    one info word, so it is counted as covering one extra value; the table is
    then an optimistic bound for every completion of a partial decode map.
    """
    size = 1 << n
    need = 1 << k
    subs = _SUBMASKS.get(n) or [tuple(_submasks(s)) for s in range(size)]
    levels = [[True] * size]
    for _ in range(depth):
        prev = levels[-1]
        cur = []
        for s in range(size):
            seen = 0
            free = 0
            for sub in subs[s]:
                if not prev[sub]:
                    continue
                d = decode[sub]
                if d < 0:
                    free += 1
                else:
                    seen |= 1 << d
            cur.append(bin(seen).count("1") + free >= need)
        levels.append(cur)
    return levels


def materialize_write_tables(n: int, k: int, t: int, decode: Sequence[InfoWord]) -> tuple[WriteTable, ...]:
    """Build explicit write tables for every reachable prior state.

    Raises :class:`NoValidSuccessor` if the all-erased state is not
    ``t``-writable under ``decode``.
    """
    packed = [_pack(v) for v in decode]
    levels = _writability(packed, n, k, t)
    full = (1 << n) - 1
    if not levels[t][full]:
        raise NoValidSuccessor(f"decode map does not support {t} writes")
    reach = {full}
    tables = []
    for j in range(1, t + 1):
        table: WriteTable = {}
        nxt = set()
        for s in sorted(reach, reverse=True):
            for v in range(1 << k):
                succ = _choose_successor(s, v, packed, levels[t - j], n)
                assert succ is not None, "writability table is inconsistent"
                table[(BinaryCellState.from_int(s, n), _unpack(v, k))] = BinaryCellState.from_int(succ, n)
                nxt.add(succ)
        tables.append(table)
        reach = nxt
    return tuple(tables)


def build_wom_code(n: int, k: int, t: int, decode: Sequence[BitsLike]) -> WomCodeSpec:
    decode = tuple(as_bits(v, k) for v in decode)
    return WomCodeSpec(n, k, t, decode, materialize_write_tables(n, k, t, decode))


# Decoding table of the (3, 2, 2) toy code: each row lists a read and its complement.
_TOY_DECODE_ROWS = {
    "011": "00", "100": "00",
    "010": "01", "101": "01",
    "001": "10", "110": "10",
    "000": "11", "111": "11",
}


def toy_code() -> WomCodeSpec:
    """The ``(n=3, k=2, t=2)`` toy code."""
    decode = [_TOY_DECODE_ROWS[bits_to_str(_unpack(r, 3))] for r in range(8)]
    return build_wom_code(3, 2, 2, decode)


@dataclass(frozen=True)
class Violation:
    writes: tuple[InfoWord, ...]
    kind: str  # "monotonicity" | "decode-mismatch" | "no-successor"

    def __str__(self) -> str:
        seq = ",".join(bits_to_str(v) for v in self.writes)
        return f"{self.kind} after writes [{seq}]"


@dataclass(frozen=True)
class WomVerificationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def is_valid(self) -> bool:
        return not self.violations


def verify_wom_code(code: WomCodeSpec) -> WomVerificationReport:
    """Replay every ``t``-long info sequence from the all-erased state.

    Each step must keep the old support and decode to the value just
    written.  Sequences sharing a prefix are replayed once.
    """
    if code.k * code.t > MAX_VERIFY_BITS:
        raise EnumerationTooLarge(f"2^{code.k * code.t} sequences exceed the 2^{MAX_VERIFY_BITS} guard")
    violations: list[Violation] = []
    infos = code.info_words()

    def walk(state: BinaryCellState, j: int, prefix: tuple[InfoWord, ...]) -> None:
        if j > code.t:
            return
        for v in infos:
            writes = prefix + (v,)
            try:
                nxt = wom_encode(code, j, v, state)
            except NoValidSuccessor:
                violations.append(Violation(writes, "no-successor"))
                continue
            if not nxt.covers(state):
                violations.append(Violation(writes, "monotonicity"))
            if code.decode(nxt) != v:
                violations.append(Violation(writes, "decode-mismatch"))
            walk(nxt, j + 1, writes)

    walk(BinaryCellState.erased(code.n), 1, ())
    return WomVerificationReport(tuple(violations))


def _first_decode_map(n: int, k: int, t: int) -> list[int] | None:
    """Lexicographically first packed decode map supporting ``t`` writes, or None."""
    size = 1 << n
    full = size - 1
    decode = [-1] * size

    def alive() -> bool:
        return _writability(decode, n, k, t)[t][full]

    def search(pos: int, labels: int) -> bool:
        if pos == size:
            return True
        # relabeling info words maps codes to codes, so the first code in
        # lexicographic order introduces labels in increasing order
        for v in range(min(labels + 1, 1 << k)):
            decode[pos] = v
            if alive() and search(pos + 1, max(labels, v + 1)):
                return True
        decode[pos] = -1
        return False

    return decode if search(0, 0) else None


def synthesize_wom_code(n: int, k: int, t: int) -> WomCodeSpec:
    """Find the lexicographically first decode map that supports ``t`` writes.

    Decode values are assigned read by read (packed read 0 first) in
    increasing order.  A branch is cut once the all-erased state stops being
    ``t``-writable even when every unassigned read may take any one value,
    which never discards a completable prefix.  Reads the final write tables
    never produce are then reset to the all-zero info word.

    Raises :class:`NotFound` once the whole space is exhausted.
    """
    if min(n, k, t) < 1:
        raise DimensionMismatch(f"n, k, t must be positive: {(n, k, t)}")
    if n > SYNTH_MAX_N or k > SYNTH_MAX_K or t > SYNTH_MAX_T:
        raise SearchSpaceTooLarge(
            f"synthesis limited to n<={SYNTH_MAX_N}, k<={SYNTH_MAX_K}, t<={SYNTH_MAX_T}"
        )
    decode = _first_decode_map(n, k, t)
    if decode is None:
        raise NotFound(f"no ({n}, {k}, {t}) WOM code exists")

    words = [_unpack(v, k) for v in decode]
    tables = materialize_write_tables(n, k, t, words)
    used = {s.to_int() for table in tables for s in table.values()}
    words = [w if r in used else (0,) * k for r, w in enumerate(words)]
    return WomCodeSpec(n, k, t, tuple(words), tables)


# -- serialization -----------------------------------------------------------


def wom_code_to_dict(code: WomCodeSpec) -> dict:
    """Plain-data form: decode list indexed by packed read, write tables keyed
    ``writes[j][prior][info] = successor`` with all states as bit strings."""
    writes = {}
    for j, table in enumerate(code.write_tables, start=1):
        by_prior: dict[str, dict[str, str]] = {}
        for (prior, info), nxt in table.items():
            by_prior.setdefault(str(prior), {})[bits_to_str(info)] = str(nxt)
        writes[str(j)] = by_prior
    return {
        "n": code.n,
        "k": code.k,
        "t": code.t,
        "decode": [bits_to_str(v) for v in code.decode_table],
        "writes": writes,
    }


def wom_code_from_dict(data: dict) -> WomCodeSpec:
    try:
        n, k, t = int(data["n"]), int(data["k"]), int(data["t"])
        decode = tuple(as_bits(v, k) for v in data["decode"])
        raw = data.get("writes") or {}
        tables = []
        for j in range(1, t + 1) if raw else ():
            table: WriteTable = {}
            for prior, row in raw[str(j)].items():
                for info, nxt in row.items():
                    table[(BinaryCellState.parse(prior), as_bits(info, k))] = BinaryCellState.parse(nxt)
            tables.append(table)
    except (KeyError, TypeError) as exc:
        raise DimensionMismatch(f"malformed WOM code description: {exc}") from exc
    return WomCodeSpec(n, k, t, decode, tuple(tables))


def dumps_wom_code(code: WomCodeSpec) -> str:
    return json.dumps(wom_code_to_dict(code), indent=2, sort_keys=True) + "\n"


def loads_wom_code(text: str) -> WomCodeSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DimensionMismatch(f"WOM code file is not valid JSON: {exc}") from exc
    return wom_code_from_dict(data)


def save_wom_code(code: WomCodeSpec, path: str | Path) -> None:
    Path(path).write_text(dumps_wom_code(code))


def load_wom_code(path: str | Path) -> WomCodeSpec:
    return loads_wom_code(Path(path).read_text())

