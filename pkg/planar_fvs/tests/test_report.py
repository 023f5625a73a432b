"""Tests for the record stream and the human tables."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from src.const import SCHEMA_VERSION, STATUS_FAIL, STATUS_PASS
from src.report import (
    OracleRecord,
    ProofRecord,
    RegionRecord,
    SolveRecord,
    SweepRecord,
    format_decimal,
    format_record,
    parse_record,
    parse_records,
    render_table,
    status_of,
)

SQUARE = SolveRecord(
    instance="square",
    status=STATUS_PASS,
    n=4,
    m=4,
    g=4,
    nu=1,
    fas=1,
    tau=1,
    tau_star=Fraction(1),
    x_greedy=(0,),
    x_exact=(0,),
    gw_ratio=Fraction(1),
    bounds={"theorem": Fraction(5, 3), "packing": Fraction(1)},
    verdicts={"tau_le_theorem": True},
)


def test_fractions_are_strings_in_the_stream():
    msg = json.loads(format_record(SQUARE))
    assert msg["schema"] == SCHEMA_VERSION
    assert msg["type"] == "solve"
    assert msg["bounds"] == {"theorem": "5/3", "packing": "1"}
    assert msg["tau_star"] == "1"
    assert msg["x_exact"] == [0]


def test_stream_lines_are_byte_stable():
    line = format_record(SQUARE)
    assert line == format_record(parse_record(line))
    assert list(json.loads(line)) == sorted(json.loads(line))


def test_solve_record_comes_back_exactly():
    assert parse_record(format_record(SQUARE)) == SQUARE


def test_outer_region_node_survives():
    region = RegionRecord("two_squares", "outer", 2, 18, Fraction(9), False, (1, 0, 0))
    back = parse_record(format_record(region))
    assert back == region
    assert isinstance(back, RegionRecord)


def test_parse_records_skips_blank_lines():
    proof = ProofRecord("square", STATUS_PASS, n=4, g=4, nu=1)
    oracle = OracleRecord("square", STATUS_PASS, tau=1, brute_tau=1, nu=1, brute_nu=1)
    text = format_record(proof) + "\n\n" + format_record(oracle) + "\n"
    assert parse_records(text) == [proof, oracle]


def test_unknown_schema_and_type_are_rejected():
    with pytest.raises(ValueError, match="schema"):
        parse_record('{"schema": 99, "type": "solve"}')
    with pytest.raises(ValueError, match="record type"):
        parse_record(json.dumps({"schema": SCHEMA_VERSION, "type": "bogus"}))


def test_status_of():
    assert status_of({}) == STATUS_PASS
    assert status_of({"a": True, "b": False}) == STATUS_FAIL


# --- Tables -------------------------------------------------------------------


def test_decimal_cells():
    assert format_decimal(Fraction(5, 3)) == "1.6667"
    assert format_decimal(None) == "-"


def test_table_columns_line_up():
    other = SolveRecord(instance="acyclic_tournament", status=STATUS_PASS, n=3, m=3, tau=0)
    lines = render_table([SQUARE, other]).splitlines()
    assert lines[0].split()[:3] == ["instance", "status", "n"]
    assert lines[1].split()[0] == "square"
    assert "1.6667" in lines[1]
    assert lines[1].index("pass") == lines[2].index("pass") == lines[0].index("status")
    assert lines[2].rstrip().endswith("-")


def test_failed_verdicts_are_listed():
    bad = SolveRecord("x", STATUS_FAIL, verdicts={"cover_size": False, "tau_le_fas": True})
    assert render_table([bad]).splitlines()[1].endswith("cover_size")


def test_mixed_records_render_one_table_per_type():
    sweep = SweepRecord("grid", 9, 4, STATUS_PASS, instances=1, max_tau=1)
    text = render_table([SQUARE, sweep, SQUARE])
    blocks = text.rstrip("\n").split("\n\n")
    assert len(blocks) == 2
    assert len(blocks[0].splitlines()) == 3
    assert blocks[1].startswith("family")


def test_empty_table():
    assert render_table([]) == ""
