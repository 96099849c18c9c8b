"""RIO coding: ``t`` WOM writes laid out on a single ``t + 1`` level wordline.

Cells first programmed by WOM write ``j`` get level ``M - j``; cells never
programmed stay at level 0.  Sensing with the threshold between levels
``M - j - 1`` and ``M - j`` then reproduces the WOM state after write ``j``,
so each ``k``-bit subset comes back with one sense and one WOM decode.

Subset 1 (the first ``k`` payload bits) is written first and therefore
sits at the top threshold ``r = M - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, ThresholdOutOfRange
from .wom import (
    ERASED,
    PROGRAMMED,
    BinaryCellState,
    BitsLike,
    WomCodeSpec,
    as_bits,
    wom_decode,
    wom_encode,
)


@dataclass(frozen=True)
class LevelWord:
    """Programmed levels of one wordline, each in ``0..M-1``."""

    levels: tuple[int, ...]
    M: int

    def __post_init__(self):
        levels = tuple(int(x) for x in self.levels)
        if self.M < 2:
            raise DimensionMismatch(f"need at least two levels, got M={self.M}")
        if not levels:
            raise DimensionMismatch("empty wordline")
        bad = [x for x in levels if not 0 <= x < self.M]
        if bad:
            raise DimensionMismatch(f"levels {bad} outside 0..{self.M - 1}")
        object.__setattr__(self, "levels", levels)

    @property
    def n(self) -> int:
        return len(self.levels)

    def dumps(self) -> str:
        return f"M={self.M}\n" + ",".join(str(x) for x in self.levels) + "\n"

    @classmethod
    def loads(cls, text: str) -> "LevelWord":
        """Parse the two-line ``M=<int>`` / comma-separated levels format."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if len(lines) != 2 or not lines[0].startswith("M="):
            raise DimensionMismatch("level file must be 'M=<int>' followed by one line of levels")
        try:
            M = int(lines[0][2:])
            levels = tuple(int(x) for x in lines[1].split(","))
        except ValueError as exc:
            raise DimensionMismatch(f"bad level file: {exc}") from exc
        return cls(levels, M)


@dataclass(frozen=True)
class RioCodeSpec:
    wom: WomCodeSpec

    @property
    def M(self) -> int:
        return self.wom.t + 1

    @property
    def K(self) -> int:
        return self.wom.k * self.wom.t

    @property
    def n(self) -> int:
        return self.wom.n

    @property
    def k(self) -> int:
        return self.wom.k

    @property
    def t(self) -> int:
        return self.wom.t


def sense(word: LevelWord, r: int) -> BinaryCellState:
    """One threshold comparison between levels ``r - 1`` and ``r``.

    Cells below the threshold read as erased (1), the rest as programmed (0).
    """
    if not 1 <= r <= word.M - 1:
        raise ThresholdOutOfRange(f"threshold {r} outside 1..{word.M - 1}")
    return BinaryCellState(tuple(ERASED if x < r else PROGRAMMED for x in word.levels))


def split_payload(spec: RioCodeSpec, data: BitsLike) -> list[tuple[int, ...]]:
    bits = as_bits(data, spec.K)
    return [bits[i * spec.k:(i + 1) * spec.k] for i in range(spec.t)]


def rio_encode(spec: RioCodeSpec, data: BitsLike) -> LevelWord:
    """Encode ``K = k*t`` bits into one wordline of ``n`` cells."""
    state = BinaryCellState.erased(spec.n)
    levels = [0] * spec.n
    for j, chunk in enumerate(split_payload(spec, data), start=1):
        nxt = wom_encode(spec.wom, j, chunk, state)
        for cell in nxt.support - state.support:
            levels[cell - 1] = spec.M - j
        state = nxt
    return LevelWord(tuple(levels), spec.M)


def _check_word(spec: RioCodeSpec, word: LevelWord) -> None:
    if word.n != spec.n or word.M != spec.M:
        raise DimensionMismatch(
            f"wordline (n={word.n}, M={word.M}) does not match code (n={spec.n}, M={spec.M})"
        )


def rio_read_chunk(
    spec: RioCodeSpec,
    word: LevelWord,
    j: int,
    sense_fn: Callable[[int], BinaryCellState] | None = None,
) -> tuple[int, ...]:
    """Recover subset ``j`` with a single sense at ``r = M - j``.

    ``sense_fn`` lets a caller route the sense through its own accounting
    (see :class:`riocode.flash.SimWordline`); it defaults to :func:`sense`.
    """
    _check_word(spec, word)
    if not 1 <= j <= spec.t:
        raise IndexOutOfRange(f"subset {j} outside 1..{spec.t}")
    r = spec.M - j
    read = sense_fn(r) if sense_fn is not None else sense(word, r)
    return wom_decode(spec.wom, read)


def rio_decode_all(spec: RioCodeSpec, word: LevelWord) -> tuple[int, ...]:
    out: list[int] = []
    for j in range(1, spec.t + 1):
        out.extend(rio_read_chunk(spec, word, j))
    return tuple(out)


def bits_per_cell(spec: RioCodeSpec) -> Fraction:
    return Fraction(spec.K, spec.n)


# -- hex payloads ------------------------------------------------------------


def payload_from_hex(text: str, K: int) -> tuple[int, ...]:
    """Parse a hex payload of exactly ``ceil(K/4)`` digits.

    The value is read as a ``K``-bit big-endian number whose most significant
    bit is the first bit of subset 1.
    """
    digits = text.strip().lower()
    if digits.startswith("0x"):
        digits = digits[2:]
    width = -(-K // 4)
    if len(digits) != width:
        raise DimensionMismatch(f"payload needs {width} hex digit(s) for {K} bits, got {len(digits)}")
    try:
        value = int(digits, 16)
    except ValueError as exc:
        raise DimensionMismatch(f"not a hex payload: {text!r}") from exc
    if value >> K:
        raise DimensionMismatch(f"payload 0x{digits} does not fit in {K} bits")
    return tuple((value >> (K - 1 - i)) & 1 for i in range(K))


def payload_to_hex(bits: Sequence[int]) -> str:
    value = 0
    for b in bits:
        value = (value << 1) | b
    return f"{value:0{-(-len(bits) // 4)}x}"
