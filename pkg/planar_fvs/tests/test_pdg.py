"""Tests for the .pdg text codec."""

from __future__ import annotations

import pytest

from src.errors import EulerViolation, PdgParseError
from src.pdg import parse_pdg, read_pdg, serialize_pdg, write_pdg

TRIANGLE = "3 3 3\n0 1\n1 2\n2 0\n0 +1 -3\n1 -1 +2\n2 -2 +3\n"


# --- Parsing ------------------------------------------------------------------


def test_parse_triangle():
    g = parse_pdg(TRIANGLE)
    assert g.n == 3
    assert g.arcs == ((0, 1), (1, 2), (2, 0))
    assert g.rotation == ((0, 5), (1, 2), (3, 4))
    assert g.g_declared == 3


def test_comments_and_blank_lines_are_ignored():
    text = "# a triangle\n\n3 3 3   # header\n0 1\n1 2\n\n2 0\n0 +1 -3\n1 -1 +2\n2 -2 +3 # last\n"
    assert parse_pdg(text) == parse_pdg(TRIANGLE)


def test_rotation_lines_may_come_in_any_vertex_order():
    text = "3 3 3\n0 1\n1 2\n2 0\n2 -2 +3\n0 +1 -3\n1 -1 +2\n"
    assert parse_pdg(text).rotation == parse_pdg(TRIANGLE).rotation


def test_isolated_vertex_has_empty_rotation():
    g = parse_pdg("2 0 0\n0\n1\n")
    assert g.rotation == ((), ())


# --- Canonical form -----------------------------------------------------------


def test_serialize_writes_canonical_form():
    text = "# tidy me\n3 3 3\n0   1\n1 2\n2 0\n2 -2 +3\n0 +1 -3\n1 -1 +2\n"
    assert serialize_pdg(parse_pdg(text)) == TRIANGLE


def test_serialize_prefixes_comment_lines():
    out = serialize_pdg(parse_pdg(TRIANGLE), comment="first\nsecond")
    assert out.startswith("# first\n# second\n3 3 3\n")


def test_fixture_survives_serialize_then_parse(load_pdg):
    g = load_pdg("two_squares")
    assert parse_pdg(serialize_pdg(g)) == g


def test_write_then_read(tmp_path, bowtie):
    path = tmp_path / "bowtie.pdg"
    write_pdg(path, bowtie, comment="copy")
    assert read_pdg(path) == bowtie
    assert path.read_text(encoding="utf-8").splitlines()[0] == "# copy"


# --- Errors carry the offending line ------------------------------------------


def test_malformed_fixture_names_line_five(fixtures_dir):
    with pytest.raises(PdgParseError) as info:
        read_pdg(fixtures_dir / "malformed.pdg")
    assert info.value.line_no == 5
    assert "line 5" in str(info.value)


@pytest.mark.parametrize(
    ("text", "line_no", "fragment"),
    [
        ("", 1, "empty document"),
        ("3 3\n", 1, "header"),
        ("3 x 3\n", 1, "expected an integer"),
        ("3 3 3\n0 1\n1 2\n", 3, "expected 3 arc lines"),
        ("3 3 3\n0 1\n1 2\n2 0\n0 +1 -3\n1 -1 +2\n2 -2 +3\n9 9\n", 8, "unexpected content"),
        ("3 3 3\n0 1\n1 1\n2 0\n0 +1 -3\n1 -1 +2\n2 -2 +3\n", 3, "loops"),
        ("3 3 3\n0 1\n1 2 0\n2 0\n0 +1 -3\n1 -1 +2\n2 -2 +3\n", 3, "tail head"),
        ("3 3 3\n0 1\n1 2\n2 0\n0 +1 -3\n1 -1 +2\n1 -2 +3\n", 7, "two rotation lines"),
        ("3 3 3\n0 1\n1 2\n2 0\n0 +1 -3\n1 -1 +4\n2 -2 +3\n", 6, "does not name an arc"),
        ("3 3 3\n0 1\n1 2\n2 0\n0 +1 +3\n1 -1 +2\n2 -2 -3\n", 5, "does not touch vertex 0"),
    ],
)
def test_parse_errors_report_their_line(text, line_no, fragment):
    with pytest.raises(PdgParseError) as info:
        parse_pdg(text)
    assert info.value.line_no == line_no
    assert fragment in str(info.value)


def test_structural_errors_surface_after_parsing():
    # Two triangles glued along one vertex but with a crossed rotation there.
    text = (
        "5 6 3\n0 1\n1 2\n2 0\n0 3\n3 4\n4 0\n"
        "0 +4 +1 -6 -3\n1 -1 +2\n2 -2 +3\n3 -4 +5\n4 -5 +6\n"
    )
    with pytest.raises(EulerViolation):
        parse_pdg(text)
