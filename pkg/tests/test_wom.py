import itertools
import json
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from riocode.errors import (
    DimensionMismatch,
    EnumerationTooLarge,
    NotFound,
    NoValidSuccessor,
    SearchSpaceTooLarge,
)
from riocode.wom import (
    BinaryCellState,
    WomCodeSpec,
    _first_decode_map,
    build_wom_code,
    dumps_wom_code,
    load_wom_code,
    loads_wom_code,
    save_wom_code,
    synthesize_wom_code,
    toy_code,
    verify_wom_code,
    wom_decode,
    wom_encode,
)

INFOS = ["00", "01", "10", "11"]


def state(text):
    return BinaryCellState.parse(text)


def test_cell_state_basics():
    s = state("011")
    assert s.n == 3
    assert s.support == {1}
    assert str(s) == "011"
    assert s.to_int() == 0b011
    assert BinaryCellState.from_int(0b011, 3) == s
    assert state("001").covers(s)
    assert not state("101").covers(s)
    assert s.complement() == state("100")
    with pytest.raises(DimensionMismatch):
        BinaryCellState(())
    with pytest.raises(DimensionMismatch):
        state("012")


@pytest.mark.parametrize("j, info, prior, expected", [
    (1, "00", "111", "011"),
    (1, "11", "111", "111"),
    (2, "00", "111", "011"),
])
def test_wom_encode_examples(j, info, prior, expected):
    assert wom_encode(toy_code(), j, info, state(prior)) == state(expected)


@pytest.mark.parametrize("read, expected", [("011", "00"), ("100", "00"), ("111", "11"), ("010", "01")])
def test_wom_decode_examples(read, expected):
    assert wom_decode(toy_code(), read) == tuple(int(c) for c in expected)


def test_dimension_errors():
    code = toy_code()
    with pytest.raises(DimensionMismatch):
        wom_decode(code, "0110")
    with pytest.raises(DimensionMismatch):
        wom_encode(code, 1, "000")
    with pytest.raises(DimensionMismatch):
        wom_encode(code, 3, "00")


def test_toy_decode_matches_paper(paper_decode):
    code = toy_code()
    for read, info in paper_decode.items():
        assert wom_decode(code, read) == tuple(int(c) for c in info)


def test_toy_decode_is_complement_invariant():
    code = toy_code()
    for r in range(8):
        s = BinaryCellState.from_int(r, 3)
        assert code.decode(s) == code.decode(s.complement())


def test_toy_first_write_matches_paper_columns(paper_table):
    # the top level marks the cell programmed by write 1; it sits in the same
    # cell down every column of the printed table
    code = toy_code()
    for first in INFOS:
        tops = {tuple(i + 1 for i, c in enumerate(paper_table[second][first]) if c == "2")
                for second in INFOS}
        assert len(tops) == 1
        (top,) = tops
        assert len(top) <= 1
        assert wom_encode(code, 1, first).support == set(top)


def test_toy_write_two_chooses_minimal_weight():
    # printed table uses 011 for (second=00, first=11); one new cell suffices
    nxt = wom_encode(toy_code(), 2, "00", state("111"))
    assert len(nxt.support) == 1


def test_toy_round_trip_exhaustive():
    code = toy_code()
    for v1, v2 in itertools.product(INFOS, repeat=2):
        s1 = wom_encode(code, 1, v1)
        s2 = wom_encode(code, 2, v2, s1)
        assert s2.covers(s1)
        assert wom_decode(code, s1) == tuple(map(int, v1))
        assert wom_decode(code, s2) == tuple(map(int, v2))


def test_verify_toy():
    report = verify_wom_code(toy_code())
    assert report.is_valid
    assert report.violations == ()


def test_verify_catches_decode_corruption():
    code = toy_code()
    decode = list(code.decode_table)
    decode[0] = (0, 0)  # read 000 -> 00 instead of 11
    bad = WomCodeSpec(3, 2, 2, tuple(decode), code.write_tables)
    report = verify_wom_code(bad)
    assert not report.is_valid
    assert any(v.kind == "decode-mismatch" for v in report.violations)


def test_verify_catches_monotonicity_violation():
    code = toy_code()
    tables = [dict(t) for t in code.write_tables]
    # from 011 (cell 1 programmed) jump to 100, which erases cell 1 again
    tables[1][(state("011"), (0, 0))] = state("100")
    bad = WomCodeSpec(3, 2, 2, code.decode_table, tuple(tables))
    kinds = {v.kind for v in verify_wom_code(bad).violations}
    assert kinds == {"monotonicity"}


def test_verify_reports_missing_successor():
    bad = WomCodeSpec(2, 1, 1, ((0,), (0,), (0,), (0,)))
    report = verify_wom_code(bad)
    assert [v.kind for v in report.violations] == ["no-successor"]
    with pytest.raises(NoValidSuccessor):
        wom_encode(bad, 1, "1")


def test_verify_guard():
    big = WomCodeSpec(1, 5, 5, ((0,) * 5, (1,) * 5))
    with pytest.raises(EnumerationTooLarge):
        verify_wom_code(big)


def test_build_rejects_unwritable_decode_map():
    with pytest.raises(NoValidSuccessor):
        build_wom_code(2, 2, 2, ["00", "01", "10", "11"])


# -- synthesizer -------------------------------------------------------------


def test_synthesize_toy_parameters():
    code = synthesize_wom_code(3, 2, 2)
    assert (code.n, code.k, code.t) == (3, 2, 2)
    assert verify_wom_code(code).is_valid


def test_synthesize_two_cells_fails():
    with pytest.raises(NotFound):
        synthesize_wom_code(2, 2, 2)


def test_synthesize_trivial():
    code = synthesize_wom_code(1, 1, 1)
    assert code.decode_table == ((0,), (1,))
    assert verify_wom_code(code).is_valid


@pytest.mark.parametrize("params", [(5, 1, 1), (3, 3, 1), (3, 1, 4)])
def test_synthesize_guard(params):
    with pytest.raises(SearchSpaceTooLarge):
        synthesize_wom_code(*params)


def test_synthesize_is_deterministic():
    assert dumps_wom_code(synthesize_wom_code(4, 2, 2)) == dumps_wom_code(synthesize_wom_code(4, 2, 2))


def _brute_force_first(n, k, t):
    """Scan every decode map in lexicographic order with a direct recursion."""
    reads = [tuple((r >> (n - 1 - i)) & 1 for i in range(n)) for r in range(1 << n)]

    def successors(s):
        # reachable reads: programmed cells stay programmed
        return [x for x in reads if all(b == 0 for a, b in zip(s, x) if a == 0)]

    succ = {s: successors(s) for s in reads}
    for decode in itertools.product(range(1 << k), repeat=1 << n):
        table = dict(zip(reads, decode))

        @lru_cache(maxsize=None)
        def writable(s, r):
            if r == 0:
                return True
            return all(any(table[x] == v and writable(x, r - 1) for x in succ[s])
                       for v in range(1 << k))

        if writable((1,) * n, t):
            return list(decode)
    return None


@pytest.mark.parametrize("n, k, t", [
    (n, k, t) for n in (1, 2, 3) for k in (1, 2) for t in (1, 2, 3)
])
def test_search_matches_brute_force(n, k, t):
    assert _first_decode_map(n, k, t) == _brute_force_first(n, k, t)


@pytest.mark.parametrize("n, k, t", [(3, 1, 3), (4, 1, 2), (4, 2, 2)])
def test_synthesized_codes_verify(n, k, t):
    assert verify_wom_code(synthesize_wom_code(n, k, t)).is_valid


def test_synthesized_unreachable_reads_map_to_zero():
    code = synthesize_wom_code(4, 2, 2)
    produced = {s for table in code.write_tables for s in table.values()}
    for r in range(16):
        s = BinaryCellState.from_int(r, 4)
        if s not in produced:
            assert code.decode(s) == (0, 0)


# -- properties --------------------------------------------------------------


@given(st.lists(st.sampled_from(INFOS), min_size=2, max_size=2))
def test_toy_writes_are_monotone(seq):
    code = toy_code()
    s = BinaryCellState.erased(3)
    for j, v in enumerate(seq, start=1):
        nxt = wom_encode(code, j, v, s)
        assert nxt.support >= s.support
        assert wom_decode(code, nxt) == tuple(map(int, v))
        s = nxt


_CODE_313 = synthesize_wom_code(3, 1, 3)


@given(st.lists(st.sampled_from(["0", "1"]), min_size=3, max_size=3))
def test_synthesized_writes_are_monotone(seq):
    s = BinaryCellState.erased(3)
    for j, v in enumerate(seq, start=1):
        nxt = wom_encode(_CODE_313, j, v, s)
        assert nxt.covers(s)
        assert wom_decode(_CODE_313, nxt) == (int(v),)
        s = nxt


# -- serialization -----------------------------------------------------------


@pytest.mark.parametrize("make", [toy_code, lambda: synthesize_wom_code(4, 2, 2)])
def test_json_round_trip(make, tmp_path):
    code = make()
    path = tmp_path / "code.json"
    save_wom_code(code, path)
    again = load_wom_code(path)
    assert again == code
    assert dumps_wom_code(again) == path.read_text()


def test_json_layout():
    data = json.loads(dumps_wom_code(toy_code()))
    assert (data["n"], data["k"], data["t"]) == (3, 2, 2)
    assert data["decode"] == ["11", "10", "01", "00", "00", "01", "10", "11"]
    assert data["writes"]["1"]["111"]["00"] == "011"
    assert set(data["writes"]) == {"1", "2"}


def test_json_rejects_garbage():
    with pytest.raises(DimensionMismatch):
        loads_wom_code("{not json")
    with pytest.raises(DimensionMismatch):
        loads_wom_code('{"n": 3, "k": 2}')
    with pytest.raises(DimensionMismatch):
        loads_wom_code('{"n": 2, "k": 1, "t": 1, "decode": ["0", "1"]}')
