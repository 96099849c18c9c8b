"""Random-I/O (RIO) coding for multi-level-cell memories.

Each ``k``-bit portion of a wordline's data is readable with one threshold
sense.  See :mod:`riocode.wom`, :mod:`riocode.codec`, :mod:`riocode.flash`
and :mod:`riocode.analysis`.
"""

from .codec import (
    LevelWord,
    RioCodeSpec,
    bits_per_cell,
    rio_decode_all,
    rio_encode,
    rio_read_chunk,
    sense,
)
from .wom import (
    BinaryCellState,
    WomCodeSpec,
    synthesize_wom_code,
    toy_code,
    verify_wom_code,
    wom_decode,
    wom_encode,
)

__version__ = "0.1.0"
