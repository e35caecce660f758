"""Quarterly credit-register series: domain types, CSV ingestion, validation.

A series is an ordered, gap-free list of end-of-quarter observations of the
total credit used (TCU), the new adjusted bad debt exposure (ABD), and the
optional gross loans disbursed and nominal GDP columns. All types are
immutable after construction and all operations are pure.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass

from .errors import ContiguityError, InvariantError, ParseError, WindowError

CSV_HEADER = ("quarter", "tcu_eur", "abd_eur", "loans_eur", "gdp_eur")

_QUARTER_RE = re.compile(r"^(\d{4})-Q([1-4])$")


@dataclass(frozen=True, order=True)
class Quarter:
    """A calendar quarter, ordered lexicographically by (year, q)."""

    year: int
    q: int

    def __post_init__(self):
        if not isinstance(self.year, int) or not isinstance(self.q, int):
            raise InvariantError(f"quarter fields must be integers, got {self.year!r}-Q{self.q!r}")
        if self.q not in (1, 2, 3, 4):
            raise InvariantError(f"quarter number must be in 1..4, got {self.q}")

    @classmethod
    def parse(cls, text: str) -> "Quarter":
        m = _QUARTER_RE.match(text.strip())
        if m is None:
            raise ParseError(f"bad quarter {text!r}, expected YYYY-Qn")
        return cls(int(m.group(1)), int(m.group(2)))

    @classmethod
    def from_index(cls, index: int) -> "Quarter":
        return cls(index // 4, index % 4 + 1)

    @property
    def index(self) -> int:
        """Position on the absolute quarter axis; successor of (y,4) is (y+1,1)."""
        return self.year * 4 + self.q - 1

    def shift(self, quarters: int) -> "Quarter":
        return Quarter.from_index(self.index + quarters)

    def __str__(self) -> str:
        return f"{self.year}-Q{self.q}"


@dataclass(frozen=True)
class CreditObservation:
    """End-of-quarter snapshot of the credit register, amounts in euros."""

    quarter: Quarter
    tcu: float
    abd: float
    loans: float | None = None
    gdp: float | None = None

    def __post_init__(self):
        if not self.tcu > 0:
            raise InvariantError(f"{self.quarter}: tcu must be > 0, got {self.tcu}")
        if self.abd < 0:
            raise InvariantError(f"{self.quarter}: abd must be >= 0, got {self.abd}")
        if self.loans is not None and self.loans < 0:
            raise InvariantError(f"{self.quarter}: loans must be >= 0, got {self.loans}")
        if self.gdp is not None and not self.gdp > 0:
            raise InvariantError(f"{self.quarter}: gdp must be > 0, got {self.gdp}")


@dataclass(frozen=True)
class Window:
    """Half-open or closed span of quarters used to select an analysis sample."""

    start: Quarter
    end: Quarter
    start_inclusive: bool = True
    end_inclusive: bool = True

    def __post_init__(self):
        if not self.start < self.end:
            raise WindowError(f"window start {self.start} must precede end {self.end}")

    def contains(self, quarter: Quarter) -> bool:
        after_start = quarter >= self.start if self.start_inclusive else quarter > self.start
        before_end = quarter <= self.end if self.end_inclusive else quarter < self.end
        return after_start and before_end

    def __str__(self) -> str:
        lo = "[" if self.start_inclusive else "("
        hi = "]" if self.end_inclusive else ")"
        return f"{lo}{self.start}..{self.end}{hi}"


@dataclass(frozen=True)
class CreditSeries:
    """Contiguous quarterly observations; at least one interval."""

    observations: tuple[CreditObservation, ...]

    def __post_init__(self):
        obs = tuple(self.observations)
        object.__setattr__(self, "observations", obs)
        if len(obs) < 2:
            raise InvariantError(f"series needs at least 2 observations, got {len(obs)}")
        base = obs[0].quarter.index
        for i, o in enumerate(obs):
            if o.quarter.index != base + i:
                expected = Quarter.from_index(base + i)
                if o.quarter.index > base + i:
                    raise ContiguityError(f"missing quarter {expected} before {o.quarter}")
                raise ContiguityError(f"quarters out of order at {o.quarter}, expected {expected}")
        for prev, cur in zip(obs, obs[1:]):
            # default rate abd / previous tcu must stay strictly below 1
            if not cur.abd < prev.tcu:
                raise InvariantError(
                    f"{cur.quarter}: abd {cur.abd} must be strictly below previous tcu {prev.tcu}"
                )

    def __len__(self) -> int:
        return len(self.observations)

    @property
    def first_quarter(self) -> Quarter:
        return self.observations[0].quarter

    @property
    def last_quarter(self) -> Quarter:
        return self.observations[-1].quarter

    def quarters(self) -> list[Quarter]:
        return [o.quarter for o in self.observations]

    def tcu_values(self) -> list[float]:
        return [o.tcu for o in self.observations]

    def has_gdp(self) -> bool:
        return all(o.gdp is not None for o in self.observations)

    def slice(
        self,
        start: Quarter,
        end: Quarter,
        start_inclusive: bool = True,
        end_inclusive: bool = True,
    ) -> "CreditSeries":
        """Sub-series between two quarters with explicit boundary inclusion.

        Both bounds must lie within the series span and the result must itself
        be a valid series (contiguous, at least two observations).
        """
        if not start < end:
            raise WindowError(f"slice start {start} must precede end {end}")
        if start < self.first_quarter or end > self.last_quarter:
            raise WindowError(
                f"slice {start}..{end} outside series span "
                f"{self.first_quarter}..{self.last_quarter}"
            )
        window = Window(start, end, start_inclusive, end_inclusive)
        kept = tuple(o for o in self.observations if window.contains(o.quarter))
        if not kept:
            raise WindowError(f"slice {window} selects no observations")
        if len(kept) < 2:
            raise WindowError(f"slice {window} selects a single observation; need at least 2")
        return CreditSeries(kept)


def _parse_amount(field: str, column: str, line: int, required: bool) -> float | None:
    text = field.strip()
    if not text:
        if required:
            raise ParseError(f"column {column} must not be empty", line)
        return None
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"column {column}: not a number: {text!r}", line) from None


def parse_csv(source: str | io.TextIOBase) -> CreditSeries:
    """Parse the quarterly CSV format into a validated series.

    Expected header: ``quarter,tcu_eur,abd_eur,loans_eur,gdp_eur``. Amounts
    are decimal euros, scientific notation accepted; ``loans_eur`` and
    ``gdp_eur`` may be empty. Errors carry 1-based line numbers.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty input, header row required", 1) from None
    if tuple(h.strip() for h in header) != CSV_HEADER:
        raise ParseError(f"bad header {header!r}, expected {','.join(CSV_HEADER)}", 1)

    observations = []
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(CSV_HEADER):
            raise ParseError(f"expected {len(CSV_HEADER)} fields, got {len(row)}", lineno)
        try:
            quarter = Quarter.parse(row[0])
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
        tcu = _parse_amount(row[1], "tcu_eur", lineno, required=True)
        abd = _parse_amount(row[2], "abd_eur", lineno, required=True)
        loans = _parse_amount(row[3], "loans_eur", lineno, required=False)
        gdp = _parse_amount(row[4], "gdp_eur", lineno, required=False)
        try:
            observations.append(CreditObservation(quarter, tcu, abd, loans, gdp))
        except InvariantError as exc:
            raise ParseError(str(exc), lineno) from None
    return CreditSeries(tuple(observations))


def _amount_str(value: float | None) -> str:
    if value is None:
        return ""
    return repr(float(value))


def emit_csv(series: CreditSeries) -> str:
    """Render a series back to CSV.

    Amounts use shortest-repr decimal rendering, so ``parse_csv(emit_csv(s))``
    reproduces every stored float bit-exactly.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for o in series.observations:
        writer.writerow(
            [str(o.quarter), _amount_str(o.tcu), _amount_str(o.abd),
             _amount_str(o.loans), _amount_str(o.gdp)]
        )
    return out.getvalue()
