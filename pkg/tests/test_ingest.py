import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rpys.exceptions import DuplicateId, InvalidYear, MalformedRecord
from rpys.fixture import build_corpus, default_spec
from rpys.ingest import (
    CitingRecord,
    Corpus,
    dump_field_tagged,
    dump_jsonl,
    parse_field_tagged,
    parse_jsonl,
)

TWO_RECORDS = b"""FN Clarivate Analytics Web of Science
VR 1.0
PT J
AU Grant, PR
TI Evolution of
   Darwin's finches
CR LACK D, 1947, DARWINS FINCHES
   DARWIN C, 1859, ORIGIN SPECIES, P1
   BOWMAN RI, 1961, U CALIF PUBL ZOOL, V58, P1
PY 1986
UT WOS:A1986000000001
ER

PT J
PY 1990
UT WOS:A1990000000002
ER

EF
"""


def test_two_record_file():
    corpus = parse_field_tagged(TWO_RECORDS)
    assert [len(r.raw_references) for r in corpus.records] == [3, 0]
    first = corpus.records[0]
    assert first.record_id == "WOS:A1986000000001"
    assert first.publication_year == 1986
    assert first.raw_references[1] == "DARWIN C, 1859, ORIGIN SPECIES, P1"
    assert first.extra_fields["TI"] == "Evolution of\nDarwin's finches"
    assert first.extra_fields["AU"] == "Grant, PR"


def test_missing_er_is_malformed():
    data = b"PT J\nPY 1990\nCR LACK D, 1947, DARWINS FINCHES\n"
    with pytest.raises(MalformedRecord) as exc:
        parse_field_tagged(data)
    assert exc.value.line_no == 1


def test_missing_py_is_malformed():
    with pytest.raises(MalformedRecord) as exc:
        parse_field_tagged(b"PT J\nUT X1\nER\n")
    assert exc.value.line_no == 3


@pytest.mark.parametrize("py", ["199O", "1499", "2101", "-1990", ""])
def test_invalid_year(py):
    with pytest.raises(InvalidYear) as exc:
        parse_field_tagged(f"PT J\nUT X\nPY {py}\nER\n".encode())
    assert exc.value.line_no == 3


def test_duplicate_ut():
    data = b"PT J\nUT A\nPY 1990\nER\nPT J\nUT A\nPY 1991\nER\n"
    with pytest.raises(DuplicateId) as exc:
        parse_field_tagged(data)
    assert exc.value.record_id == "A"


def test_ordinal_id_fallback():
    corpus = parse_field_tagged(b"PT J\nPY 1990\nER\n\nPT J\nPY 1991\nER\n")
    assert [r.record_id for r in corpus.records] == ["REC1", "REC2"]


def test_error_message_names_file_and_line():
    with pytest.raises(MalformedRecord) as exc:
        parse_field_tagged(b"PT J\nPY 1990\nER\nGARBAGE\n", path="corpus.txt")
    assert str(exc.value).startswith("corpus.txt:4:")


@pytest.mark.parametrize("data", [
    b"PT J\n   dangling\nPY 1990\nER\n",
    b"PT J\nPY 1990\nPT J\nER\n",
    b"PT J\nPY 1990\npy lower\nER\n",
    b"PT J\nPY 1990\nPY 1991\nER\n",
    b"PT J\nPY 1990\nER\nEF\nPT J\nPY 1990\nER\n",
])
def test_grammar_violations(data):
    with pytest.raises(MalformedRecord):
        parse_field_tagged(data)


def test_crlf_and_bom_accepted():
    data = "﻿PT J\r\nPY 1990\r\nCR A B, 1950, X\r\n   C D, 1951, Y\r\nER\r\nEF\r\n".encode()
    corpus = parse_field_tagged(data)
    assert corpus.records[0].raw_references == ("A B, 1950, X", "C D, 1951, Y")


def test_jsonl_single_record():
    line = b'{"id":"A1","year":1990,"cited_references":["LACK D, 1947, DARWINS FINCHES"]}\n'
    corpus = parse_jsonl(line)
    assert len(corpus) == 1
    assert corpus.records[0].raw_references == ("LACK D, 1947, DARWINS FINCHES",)
    assert corpus.records[0].extra_fields == {}


def test_jsonl_missing_keys():
    with pytest.raises(MalformedRecord) as exc:
        parse_jsonl(b'{"id":"A1"}\n')
    assert exc.value.line_no == 1


def test_jsonl_empty_file():
    assert len(parse_jsonl(b"")) == 0


@pytest.mark.parametrize("line, err", [
    (b"{not json", MalformedRecord),
    (b"[1, 2]", MalformedRecord),
    (b'{"id":"","year":1990,"cited_references":[]}', MalformedRecord),
    (b'{"id":"A","year":"1990","cited_references":[]}', InvalidYear),
    (b'{"id":"A","year":true,"cited_references":[]}', InvalidYear),
    (b'{"id":"A","year":1200,"cited_references":[]}', InvalidYear),
    (b'{"id":"A","year":1990,"cited_references":"X"}', MalformedRecord),
])
def test_jsonl_errors(line, err):
    with pytest.raises(err):
        parse_jsonl(line)


def test_jsonl_duplicate_id():
    data = b'{"id":"A","year":1990,"cited_references":[]}\n{"id":"A","year":1991,"cited_references":[]}\n'
    with pytest.raises(DuplicateId) as exc:
        parse_jsonl(data)
    assert exc.value.line_no == 2


def test_jsonl_unknown_keys_preserved():
    corpus = parse_jsonl(b'{"id":"A","year":1990,"cited_references":[],"doi":"10.1/x","n":3}\n')
    assert json.loads(corpus.records[0].extra_fields["JX"]) == {"doi": "10.1/x", "n": 3}
    again = parse_jsonl(dump_jsonl(corpus.records))
    assert again.records[0].extra_fields == corpus.records[0].extra_fields


@pytest.mark.parametrize("fmt", ["wos", "jsonl"])
def test_fixture_round_trip(fmt):
    corpus = build_corpus(default_spec(seed=3))
    dump, parse = {"wos": (dump_field_tagged, parse_field_tagged),
                   "jsonl": (dump_jsonl, parse_jsonl)}[fmt]
    back = parse(dump(corpus.records))
    assert [r.record_id for r in back] == [r.record_id for r in corpus]
    assert [r.publication_year for r in back] == [r.publication_year for r in corpus]
    assert [r.raw_references for r in back] == [r.raw_references for r in corpus]


def test_fixture_file_has_689_records(fixture_bytes):
    assert len(parse_field_tagged(fixture_bytes)) == 689


def test_parsing_is_pure(fixture_bytes):
    assert parse_field_tagged(fixture_bytes) == parse_field_tagged(fixture_bytes)


_ref_text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs", "Cc", "Zl", "Zp"), blacklist_characters="\x85"),
    min_size=1, max_size=30,
).filter(lambda s: s.strip() == s and s)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(1500, 2100), st.lists(_ref_text, max_size=5)),
                max_size=6))
def test_round_trip_property(rows):
    records = [CitingRecord(f"R{i}", y, tuple(refs)) for i, (y, refs) in enumerate(rows)]
    for dump, parse in ((dump_field_tagged, parse_field_tagged), (dump_jsonl, parse_jsonl)):
        back = parse(dump(records))
        assert [(r.record_id, r.publication_year, r.raw_references) for r in back] == \
            [(r.record_id, r.publication_year, r.raw_references) for r in records]


def test_record_invariants():
    with pytest.raises(ValueError):
        CitingRecord("", 1990)
    with pytest.raises(ValueError):
        CitingRecord("A", 1400)
    with pytest.raises(ValueError):
        CitingRecord("A", 1990, ("ok", "  "))
    with pytest.raises(DuplicateId):
        Corpus((CitingRecord("A", 1990), CitingRecord("A", 1991)))
