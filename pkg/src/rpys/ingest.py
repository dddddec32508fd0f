"""Readers and writers for corpora of citing records.

Two flat-file formats are supported:

* a field-tagged export (two-letter tags, ``PT`` ... ``ER`` blocks, three-space
  continuation lines), as produced by citation index exports;
* JSON lines, one object per record with ``id``, ``year`` and
  ``cited_references``.

Both readers return a :class:`Corpus` whose record order equals file order.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .exceptions import DuplicateId, InvalidYear, MalformedRecord

MIN_PUBLICATION_YEAR = 1500
MAX_PUBLICATION_YEAR = 2100

# Two-character tag then a single space; WoS also uses tags such as J9 or U1.
_FIELD_RE = re.compile(r"^([A-Z][A-Z0-9])(?: (.*))?$")
_CONTINUATION = "   "
_JSONL_EXTRA_TAG = "JX"


@dataclass(frozen=True)
class CitingRecord:
    record_id: str
    publication_year: int
    raw_references: tuple[str, ...] = ()
    extra_fields: Mapping[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not isinstance(self.record_id, str) or not self.record_id:
            raise ValueError("record_id must be a non-empty string")
        if not MIN_PUBLICATION_YEAR <= self.publication_year <= MAX_PUBLICATION_YEAR:
            raise ValueError(f"publication_year {self.publication_year} out of range")
        refs = tuple(self.raw_references)
        if any(not r.strip() for r in refs):
            raise ValueError("raw_references must not contain blank strings")
        object.__setattr__(self, "raw_references", refs)


@dataclass(frozen=True)
class Corpus:
    records: tuple[CitingRecord, ...]
    source_path: str = "<memory>"

    def __post_init__(self):
        records = tuple(self.records)
        seen = set()
        for rec in records:
            if rec.record_id in seen:
                raise DuplicateId(rec.record_id, path=self.source_path)
            seen.add(rec.record_id)
        object.__setattr__(self, "records", records)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def n_references(self) -> int:
        return sum(len(r.raw_references) for r in self.records)


def _check_year(text, line_no, path) -> int:
    value = text.strip()
    if not re.fullmatch(r"[0-9]+", value):
        raise InvalidYear(f"publication year {text!r} is not an integer", line_no, path)
    year = int(value)
    if not MIN_PUBLICATION_YEAR <= year <= MAX_PUBLICATION_YEAR:
        raise InvalidYear(f"publication year {year} outside "
                          f"[{MIN_PUBLICATION_YEAR}, {MAX_PUBLICATION_YEAR}]", line_no, path)
    return year


def _decode(data) -> str:
    if isinstance(data, str):
        return data
    return bytes(data).decode("utf-8-sig")


class _Block:
    """Accumulates one PT...ER block."""

    def __init__(self, start_line):
        self.start_line = start_line
        self.record_id = None
        self.year = None
        self.refs: list[str] = []
        self.extra: dict[str, list[str]] = {}
        self.last_tag = None

    def add(self, tag, value, line_no, path):
        if tag == "CR":
            self._add_ref(value)
        elif tag == "PY":
            if self.year is not None:
                raise MalformedRecord("repeated PY field", line_no, path)
            self.year = _check_year(value, line_no, path)
        elif tag == "UT":
            if self.record_id is not None:
                raise MalformedRecord("repeated UT field", line_no, path)
            self.record_id = value.strip()
        elif tag != "PT":
            self.extra.setdefault(tag, []).append(value)
        self.last_tag = tag

    def extend(self, value, line_no, path):
        if self.last_tag is None:
            raise MalformedRecord("continuation line without a preceding field", line_no, path)
        if self.last_tag == "CR":
            self._add_ref(value)
        elif self.last_tag in ("PY", "UT"):
            raise MalformedRecord(f"continuation of single-valued field {self.last_tag}",
                                  line_no, path)
        elif self.last_tag != "PT":
            self.extra[self.last_tag].append(value)

    def _add_ref(self, value):
        value = value.strip()
        if value:
            self.refs.append(value)

    def close(self, ordinal, line_no, path) -> CitingRecord:
        if self.year is None:
            raise MalformedRecord("record has no PY field", line_no, path)
        record_id = self.record_id or f"REC{ordinal}"
        extra = {tag: "\n".join(parts) for tag, parts in self.extra.items()}
        return CitingRecord(record_id, self.year, tuple(self.refs), extra)


def parse_field_tagged(data, path: str = "<input>") -> Corpus:
    """Parse a field-tagged export into a :class:`Corpus`.

    Parameters
    ----------
    data : bytes or str
        UTF-8 encoded file contents.
    path : str
        Used in error messages and recorded as ``Corpus.source_path``.

    Raises
    ------
    MalformedRecord
        Unterminated record, missing ``PY``, or a line that fits no rule.
    InvalidYear
        ``PY`` is not an integer in [1500, 2100].
    DuplicateId
        Two records share a ``UT``.
    """
    text = _decode(data)
    records: list[CitingRecord] = []
    seen: set[str] = set()
    block: _Block | None = None
    ended = False

    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\r\n")
        if block is None:
            if not line.strip():
                continue
            if ended:
                raise MalformedRecord("content after EF", line_no, path)
            if line == "EF":
                ended = True
            elif line.startswith("PT "):
                block = _Block(line_no)
            elif line.startswith(("FN ", "VR ")) and not records:
                continue
            else:
                raise MalformedRecord(f"unexpected line outside a record: {line[:40]!r}",
                                      line_no, path)
            continue

        if line == "ER":
            rec = block.close(len(records) + 1, line_no, path)
            if rec.record_id in seen:
                raise DuplicateId(rec.record_id, line_no, path)
            seen.add(rec.record_id)
            records.append(rec)
            block = None
        elif not line.strip():
            continue
        elif line.startswith(_CONTINUATION):
            block.extend(line[len(_CONTINUATION):], line_no, path)
        elif line.startswith("PT "):
            raise MalformedRecord("record opened before previous one was closed with ER",
                                  line_no, path)
        else:
            m = _FIELD_RE.match(line)
            if m is None:
                raise MalformedRecord(f"not a field line: {line[:40]!r}", line_no, path)
            block.add(m.group(1), m.group(2) or "", line_no, path)

    if block is not None:
        raise MalformedRecord("record lacks ER terminator", block.start_line, path)
    return Corpus(tuple(records), path)


def parse_jsonl(data, path: str = "<input>") -> Corpus:
    """Parse JSON-lines input; unknown keys survive in ``extra_fields['JX']``."""
    text = _decode(data)
    records = []
    seen = set()
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(f"invalid JSON: {exc.msg}", line_no, path) from None
        if not isinstance(obj, dict):
            raise MalformedRecord("expected a JSON object", line_no, path)
        missing = [k for k in ("id", "year", "cited_references") if k not in obj]
        if missing:
            raise MalformedRecord(f"missing key(s): {', '.join(missing)}", line_no, path)

        record_id = obj["id"]
        if not isinstance(record_id, str) or not record_id:
            raise MalformedRecord("id must be a non-empty string", line_no, path)
        year = obj["year"]
        if isinstance(year, bool) or not isinstance(year, int):
            raise InvalidYear(f"year {year!r} is not an integer", line_no, path)
        if not MIN_PUBLICATION_YEAR <= year <= MAX_PUBLICATION_YEAR:
            raise InvalidYear(f"year {year} outside "
                              f"[{MIN_PUBLICATION_YEAR}, {MAX_PUBLICATION_YEAR}]", line_no, path)
        refs = obj["cited_references"]
        if not isinstance(refs, list) or not all(isinstance(r, str) for r in refs):
            raise MalformedRecord("cited_references must be an array of strings", line_no, path)
        if record_id in seen:
            raise DuplicateId(record_id, line_no, path)
        seen.add(record_id)

        unknown = {k: v for k, v in obj.items() if k not in ("id", "year", "cited_references")}
        extra = {_JSONL_EXTRA_TAG: json.dumps(unknown, sort_keys=True)} if unknown else {}
        refs = tuple(r.strip() for r in refs if r.strip())
        records.append(CitingRecord(record_id, year, refs, extra))
    return Corpus(tuple(records), path)


PARSERS = {"wos": parse_field_tagged, "jsonl": parse_jsonl}


def read_corpus(path, fmt: str) -> Corpus:
    try:
        parser = PARSERS[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; expected one of {sorted(PARSERS)}") from None
    with open(path, "rb") as fh:
        return parser(fh.read(), str(path))


def dump_field_tagged(records: Iterable[CitingRecord]) -> bytes:
    """Serialize records in the field-tagged format read by :func:`parse_field_tagged`."""
    lines = ["FN Clarivate Analytics Web of Science", "VR 1.0"]
    for rec in records:
        lines.append("PT J")
        for tag, value in rec.extra_fields.items():
            if tag in ("PT", "UT", "PY", "CR"):
                continue
            first, *rest = value.split("\n")
            lines.append(f"{tag} {first}")
            lines.extend(_CONTINUATION + part for part in rest)
        if rec.raw_references:
            first, *rest = rec.raw_references
            lines.append(f"CR {first}")
            lines.extend(_CONTINUATION + ref for ref in rest)
        lines.append(f"PY {rec.publication_year}")
        lines.append(f"UT {rec.record_id}")
        lines.append("ER")
        lines.append("")
    lines.append("EF")
    return ("\n".join(lines) + "\n").encode("utf-8")


def dump_jsonl(records: Iterable[CitingRecord]) -> bytes:
    out = []
    for rec in records:
        obj = {"id": rec.record_id, "year": rec.publication_year,
               "cited_references": list(rec.raw_references)}
        if _JSONL_EXTRA_TAG in rec.extra_fields:
            obj.update(json.loads(rec.extra_fields[_JSONL_EXTRA_TAG]))
        out.append(json.dumps(obj, ensure_ascii=False))
    return "".join(line + "\n" for line in out).encode("utf-8")


WRITERS = {"wos": dump_field_tagged, "jsonl": dump_jsonl}
