"""Wordline simulator with sense accounting, and the per-chunk read-cost model.

Read cost is counted in sense operations: one comparison of the whole
wordline against one threshold.  Three layouts are compared:

* interleaved: a chunk's codeword spans every logical page, ``M - 1`` senses;
* non-interleaved: a chunk lives in one logical page, ``(M - 1) / log2(M)``
  senses on average;
* rio: one sense per chunk.

Only the RIO layout has a codec behind it; the other two are formulas.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .codec import LevelWord, RioCodeSpec, rio_encode, rio_read_chunk, sense
from .errors import AlreadyProgrammed, IndexOutOfRange, NotProgrammed, UnsupportedM
from .wom import BinaryCellState, BitsLike

CSV_HEADER = "scheme,M,reads,total_senses,senses_per_chunk,speedup"


class SchemeKind(str, enum.Enum):
    INTERLEAVED = "interleaved"
    NON_INTERLEAVED = "non_interleaved"
    RIO = "rio"


class SimWordline:
    """A single wordline: programmed once, sensed any number of times."""

    def __init__(self):
        self.word: LevelWord | None = None
        self.sense_count = 0

    @property
    def programmed(self) -> bool:
        return self.word is not None

    def program(self, word: LevelWord) -> "SimWordline":
        if self.word is not None:
            raise AlreadyProgrammed("wordline already programmed; erase is not modeled")
        self.word = word
        return self

    def sense(self, r: int) -> BinaryCellState:
        if self.word is None:
            raise NotProgrammed("cannot sense an unprogrammed wordline")
        result = sense(self.word, r)
        self.sense_count += 1
        return result


def program_wordline(sim: SimWordline, word: LevelWord) -> SimWordline:
    return sim.program(word)


def sense_wordline(sim: SimWordline, r: int) -> BinaryCellState:
    return sim.sense(r)


def _log2_exact(M: int) -> int | None:
    if M >= 2 and M & (M - 1) == 0:
        return M.bit_length() - 1
    return None


def scheme_sense_cost(scheme: SchemeKind | str, M: int) -> Fraction:
    """Senses needed to fetch one chunk from an ``M``-level wordline."""
    scheme = SchemeKind(scheme)
    if M < 2:
        raise UnsupportedM(f"need M >= 2, got {M}")
    if scheme is SchemeKind.INTERLEAVED:
        return Fraction(M - 1)
    if scheme is SchemeKind.RIO:
        return Fraction(1)
    pages = _log2_exact(M)
    if pages is None:
        raise UnsupportedM(f"non-interleaved cost needs M a power of two, got {M}")
    return Fraction(M - 1, pages)


def speedup(scheme: SchemeKind | str, M: int, baseline: SchemeKind | str = SchemeKind.INTERLEAVED) -> Fraction:
    """How many times fewer senses ``scheme`` needs per chunk than ``baseline``."""
    return scheme_sense_cost(baseline, M) / scheme_sense_cost(scheme, M)


@dataclass(frozen=True)
class WorkloadReport:
    scheme: str
    M: int
    reads: int
    total_senses: int

    @property
    def senses_per_chunk(self) -> Fraction | None:
        return Fraction(self.total_senses, self.reads) if self.reads else None

    @property
    def speedup_vs_interleaved(self) -> Fraction | None:
        spc = self.senses_per_chunk
        return Fraction(self.M - 1) / spc if spc else None

    def csv_row(self) -> str:
        return ",".join([
            self.scheme,
            str(self.M),
            str(self.reads),
            str(self.total_senses),
            _fmt(self.senses_per_chunk),
            _fmt(self.speedup_vs_interleaved),
        ])


def _fmt(x: Fraction | None) -> str:
    return "" if x is None else f"{float(x):.4f}"


def simulate_workload(
    spec: RioCodeSpec,
    payloads: Sequence[BitsLike],
    reads: Iterable[tuple[int, int]],
) -> WorkloadReport:
    """Program one wordline per payload, then serve ``(wordline, subset)`` reads.

    Wordline and subset indices are 0-based and 1-based respectively.
    """
    lines = [SimWordline().program(rio_encode(spec, p)) for p in payloads]
    count = 0
    for wl, j in reads:
        if not 0 <= wl < len(lines):
            raise IndexOutOfRange(f"wordline {wl} outside 0..{len(lines) - 1}")
        line = lines[wl]
        rio_read_chunk(spec, line.word, j, sense_fn=line.sense)
        count += 1
    return WorkloadReport("rio", spec.M, count, sum(line.sense_count for line in lines))


def parse_workload(text: str) -> list[tuple[int, int]]:
    """Parse ``<wordline-index> <subset-index>`` lines; ``#`` starts a comment."""
    reads = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"workload line {lineno}: expected two integers, got {raw!r}")
        reads.append((int(parts[0]), int(parts[1])))
    return reads


def load_workload(path: str | Path) -> list[tuple[int, int]]:
    return parse_workload(Path(path).read_text())
