"""Seeded synthetic corpora with known RPYS peaks.

The default spec encodes the Darwin-finches tallies: 689 citing papers whose
references dated 1800-1960 number 1961, with dominant works at 1859 (53 of 54
citations), 1871 (21 of 24), 1937 (22 of 41) and 1947 (144 of 161), plus a
minor Lowe 1936 stratum.

Background years follow a non-decreasing ramp that is flat over its last
three years. A non-decreasing series equals its own centred median, and the
truncated windows at either end then give deviations <= 0, so only the strata
can produce peaks.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass

from .exceptions import SpecOverflow
from .ingest import WRITERS, CitingRecord, Corpus

DEFAULT_N_RECORDS = 689
DEFAULT_IN_RANGE_TOTAL = 1961
DEFAULT_GROWTH = 0.025

_SURNAMES = (
    "ABBOTT", "BAKER", "BOAG", "BOWMAN", "CARSON", "DAVIS", "ELLIS", "FISHER",
    "GIBBS", "GRANT", "HALDANE", "HARRIS", "HUXLEY", "JORDAN", "KING", "LEWIS",
    "MAYR", "MILLER", "MORGAN", "NEWTON", "OWEN", "PARKER", "PRICE", "RIDLEY",
    "ROTHSCHILD", "SALVIN", "SCLATER", "SNODGRASS", "STEWART", "SWARTH",
    "TAYLOR", "THOMPSON", "WALLACE", "WHITE", "WRIGHT", "YOUNG",
)
_SOURCES = (
    "IBIS", "AUK", "CONDOR", "EVOLUTION", "AM NAT", "P ZOOL SOC LOND",
    "P CALIF ACAD SCI", "NATURE", "SCIENCE", "J GENET", "ANN MAG NAT HIST",
    "BIOL REV", "Q REV BIOL", "ZOOLOGICA", "J ANIM ECOL", "ECOLOGY",
    "TRANS ZOOL SOC LOND", "NOVIT ZOOL", "BULL MUS COMP ZOOL", "AM MUS NOVIT",
)
_NO_YEAR = ("ANONYMOUS, IN PRESS, {src}", "{sur} {ini}, UNPUB", "{sur} {ini}, PERS COMM")
_BAD_YEAR = ("{sur} {ini}, 0{yy}, {src}", "{sur} {ini}, 1{yy}, {src}")


@dataclass(frozen=True)
class Stratum:
    """One documented peak year: a dominant work plus ``other_count``
    citations spread over ``n_other_works`` further works."""

    year: int
    top_work_count: int
    other_count: int
    n_other_works: int
    top_work: str | None = None

    @property
    def total(self) -> int:
        return self.top_work_count + self.other_count


@dataclass(frozen=True)
class FixtureSpec:
    n_records: int = DEFAULT_N_RECORDS
    strata: tuple[Stratum, ...] = ()
    background: tuple[tuple[int, int], ...] = ()
    seed: int = 0
    min_year: int = 1800
    max_year: int = 1960
    post_range_refs: int = 600
    unparseable_refs: int = 45
    citing_years: tuple[int, int] = (1974, 2013)

    def __post_init__(self):
        object.__setattr__(self, "strata", tuple(
            s if isinstance(s, Stratum) else Stratum(*s) for s in self.strata))
        object.__setattr__(self, "background", tuple(tuple(b) for b in self.background))
        object.__setattr__(self, "citing_years", tuple(self.citing_years))
        self.validate()

    def validate(self):
        if self.n_records < 1:
            raise ValueError("n_records must be >= 1")
        seen = set()
        for s in self.strata:
            if min(s.top_work_count, s.other_count, s.n_other_works) < 0:
                raise ValueError(f"negative count in stratum {s}")
            if s.top_work_count < 1:
                raise ValueError(f"stratum {s.year} needs a top work")
            if (s.other_count == 0) != (s.n_other_works == 0) or s.n_other_works > s.other_count:
                raise ValueError(f"stratum {s.year}: cannot spread {s.other_count} "
                                 f"citations over {s.n_other_works} works")
            seen.add(s.year)
        for year, count in self.background:
            if count < 0:
                raise ValueError(f"negative background count at {year}")
            if year in seen:
                raise ValueError(f"year {year} appears twice in the fixture spec")
            seen.add(year)
        for year in seen:
            if not self.min_year <= year <= self.max_year:
                raise ValueError(f"year {year} outside {self.min_year}-{self.max_year}")
        for s in self.strata:
            widest = math.ceil(s.other_count / s.n_other_works) if s.n_other_works else 0
            if max(s.top_work_count, widest) > self.n_records:
                raise SpecOverflow(
                    f"stratum {s.year} needs {max(s.top_work_count, widest)} distinct citing "
                    f"records for one work but only {self.n_records} exist")

    @property
    def in_range_total(self) -> int:
        return sum(s.total for s in self.strata) + sum(c for _, c in self.background)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "FixtureSpec":
        obj = json.loads(text)
        obj["strata"] = [Stratum(**s) if isinstance(s, dict) else Stratum(*s)
                         for s in obj.get("strata", [])]
        return cls(**obj)


def monotone_ramp(years, total: int, growth: float, flat_tail: int = 3) -> list[int]:
    """Non-decreasing integer counts over ``years`` summing to ``total``.

    Exponential in the calendar year, flat over the last ``flat_tail`` years.
    """
    years = sorted(years)
    n = len(years)
    if n == 0:
        return []
    cap = years[max(0, n - flat_tail)]
    w = [math.exp(growth * (min(y, cap) - years[0])) for y in years]
    s = sum(w)
    counts = [int(total * wi / s) for wi in w]
    residual = total - sum(counts)  # < n, since each floor loses < 1
    if residual >= min(flat_tail, n):
        # suffix increments keep the ramp monotone and the tail flat
        for i in range(n - residual, n):
            counts[i] += 1
    elif residual:
        i = n - flat_tail - 1
        counts[i] += residual
        if counts[i] > counts[i + 1]:
            raise ValueError("cannot place ramp residual without breaking monotonicity")
    return counts


def default_spec(seed: int = 0) -> FixtureSpec:
    major = [
        Stratum(1859, 53, 1, 1, "DARWIN C, 1859, ORIGIN SPECIES"),
        Stratum(1871, 21, 3, 3, "DARWIN C, 1871, DESCENT MAN"),
        Stratum(1937, 22, 19, 10, "DOBZHANSKY T, 1937, GENETICS ORIGIN SPE"),
        Stratum(1947, 144, 17, 8, "LACK D, 1947, DARWINS FINCHES"),
    ]
    peak_years = {s.year for s in major}
    years = [y for y in range(1800, 1961) if y not in peak_years]
    ramp = dict(zip(years, monotone_ramp(
        years, DEFAULT_IN_RANGE_TOTAL - sum(s.total for s in major), DEFAULT_GROWTH)))

    # Lowe 1936: a named work inside an ordinary background year, so no dip or spike
    lowe_total = ramp.pop(1936)
    lowe = min(8, lowe_total)
    rest = lowe_total - lowe
    strata = major + [Stratum(1936, lowe, rest, min(rest, max(1, rest // 3)) if rest else 0,
                              "LOWE PR, 1936, IBIS")]
    strata.sort(key=lambda s: s.year)
    return FixtureSpec(
        n_records=DEFAULT_N_RECORDS,
        strata=tuple(strata),
        background=tuple(sorted(ramp.items())),
        seed=seed,
    )


class _Names:
    """Deterministic supply of distinct (author, year, source) works."""

    def __init__(self, rng, reserved=()):
        self.rng = rng
        self.used = set(reserved)

    def work(self, year):
        for _ in range(10_000):
            author = f"{self.rng.choice(_SURNAMES)} {self.rng.choice('ABCDEFGHJKLMNPRSTW')}"
            source = self.rng.choice(_SOURCES)
            if (author, year, source) not in self.used:
                self.used.add((author, year, source))
                return author, year, source
        # pool exhausted for this year: disambiguate through the source
        i = sum(1 for a, y, _ in self.used if y == year)
        source = f"{self.rng.choice(_SOURCES)} SUPPL {i}"
        self.used.add(("ANON", year, source))
        return "ANON", year, source


def _split(rng, total, n_parts, max_part):
    """Random composition of ``total`` into ``n_parts`` positive parts <= max_part."""
    if n_parts == 0:
        return []
    parts = [1] * n_parts
    for _ in range(total - n_parts):
        open_ = [i for i, p in enumerate(parts) if p < max_part]
        parts[rng.choice(open_)] += 1
    return parts


def _variant(rng, author, year, source):
    """A surface form of a work that normalizes back to the same key."""
    if rng.random() < 0.3:
        surname, _, initials = author.partition(" ")
        author = f"{surname.title()} {'. '.join(initials)}." if initials else surname.title()
    if rng.random() < 0.2:
        source = source.title()
    text = f"{author}, {year}, {source}"
    r = rng.random()
    if r < 0.25:
        text += f", P{rng.randint(1, 400)}"
    elif r < 0.35:
        text += f", V{rng.randint(1, 90)}, P{rng.randint(1, 400)}"
    return text


def _split_key(ref: str):
    author, year, source = ref.split(", ", 2)
    return author, int(year), source


def build_corpus(spec: FixtureSpec) -> Corpus:
    """Materialize ``spec`` as an in-memory :class:`Corpus`."""
    rng = random.Random(spec.seed)
    n = spec.n_records
    refs = [[] for _ in range(n)]
    reserved = [_split_key(s.top_work) for s in spec.strata if s.top_work]
    names = _Names(rng, reserved)

    def cite(work, count):
        for r in rng.sample(range(n), count):
            refs[r].append(_variant(rng, *work))

    for s in spec.strata:
        top = _split_key(s.top_work) if s.top_work else names.work(s.year)
        cite(top, s.top_work_count)
        widest = max(1, min(n, s.top_work_count - 1))
        for part in _split(rng, s.other_count, s.n_other_works,
                           max(widest, math.ceil(s.other_count / max(1, s.n_other_works)))):
            cite(names.work(s.year), part)

    for year, count in spec.background:
        if count == 0:
            continue
        max_part = min(n, 6)
        n_parts = max(math.ceil(count / max_part), rng.randint(1, count))
        for part in _split(rng, count, n_parts, max_part):
            cite(names.work(year), part)

    remaining = spec.post_range_refs
    while remaining > 0:
        part = min(remaining, rng.randint(1, 5), n)
        cite(names.work(rng.randint(spec.max_year + 1, 2012)), part)
        remaining -= part

    for _ in range(spec.unparseable_refs):
        fill = {"sur": rng.choice(_SURNAMES), "ini": rng.choice("ABCDEFG"),
                "src": rng.choice(_SOURCES), "yy": f"{rng.randint(0, 499):03d}"}
        r = rng.random()
        if r < 0.6:
            text = rng.choice(_NO_YEAR).format(**fill)
        elif r < 0.9:
            text = rng.choice(_BAD_YEAR).format(**fill)
        else:
            text = str(rng.randint(spec.min_year, spec.max_year))  # bare year: Malformed
        refs[rng.randrange(n)].append(text)

    ids = rng.sample(range(10**14, 10**15), n)
    lo, hi = spec.citing_years
    records = []
    for i in range(n):
        rng.shuffle(refs[i])
        records.append(CitingRecord(
            record_id=f"WOS:{ids[i]:015d}",
            publication_year=rng.randint(lo, hi),
            raw_references=tuple(refs[i]),
            extra_fields={"TI": f"Synthetic citing paper {i + 1}"},
        ))
    return Corpus(tuple(records), f"<fixture seed={spec.seed}>")


def generate_fixture(spec: FixtureSpec, fmt: str = "wos") -> bytes:
    try:
        writer = WRITERS[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}") from None
    return writer(build_corpus(spec).records)
