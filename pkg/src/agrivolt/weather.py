"""Weather and price CSV ingestion with validation and repair.

Weather files carry hourly rows ``time,bhi,dhi,ghi,temp_air,wind10``
(irradiance W/m2, temperature degC, 10 m wind m/s; timestamps UTC,
ISO 8601). Validation is strict about structure (columns, hourly
continuity, sign) and lenient about small physical inconsistencies: a
global component that misses bhi + dhi by more than 1 W/m2 is repaired to
the component sum with a logged warning, and measured beam above the
top-of-atmosphere value is flagged but kept.
"""

from __future__ import annotations

import csv
import logging
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np

from .errors import InputError
from .sky import IrradianceSample
from .solar import GeoLocation, extraterrestrial_horizontal

log = logging.getLogger(__name__)

WEATHER_COLUMNS = ("time", "bhi", "dhi", "ghi", "temp_air", "wind10")
PRICE_COLUMNS = ("time", "price")

#: Tolerated gap between ghi and bhi + dhi before the row is repaired.
CLOSURE_TOLERANCE_WM2 = 1.0

_MAX_LISTED = 8  # cap row listings in error messages


def _parse_time(text: str, path: Path, row: int) -> datetime:
    cleaned = text.strip().replace("Z", "+00:00")
    try:
        stamp = datetime.fromisoformat(cleaned)
    except ValueError as exc:
        raise InputError(f"{path}: row {row}: bad timestamp {text!r}: {exc}") from exc
    if stamp.tzinfo is None:
        return stamp.replace(tzinfo=timezone.utc)
    return stamp.astimezone(timezone.utc)


def _parse_float(text: str, column: str, path: Path, row: int) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise InputError(
            f"{path}: row {row}: column {column!r} is not a number: {text!r}"
        ) from exc
    if not np.isfinite(value):
        raise InputError(f"{path}: row {row}: column {column!r} is not finite: {text!r}")
    return value


def _listed(items: list, total: int | None = None) -> str:
    total = len(items) if total is None else total
    head = ", ".join(str(i) for i in items[:_MAX_LISTED])
    if total > _MAX_LISTED:
        head += f", ... ({total} total)"
    return head


def ingest_weather(
    path: str | Path, location: GeoLocation | None = None
) -> list[IrradianceSample]:
    """Read and validate an hourly weather CSV.

    Raises :class:`InputError` on missing columns, unparseable values,
    negative irradiance or wind (with row numbers), and gaps in the hourly
    timeline (listing the missing timestamps). When ``location`` is given,
    rows whose beam exceeds the top-of-atmosphere irradiance are counted
    and logged; they are physically suspect but not fatal.
    """
    path = Path(path)
    samples: list[IrradianceSample] = []
    negative_rows: list[int] = []
    repaired_rows: list[int] = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise InputError(f"{path}: empty file")
        missing = [c for c in WEATHER_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise InputError(f"{path}: missing weather columns {missing}")
        for row_num, record in enumerate(reader, start=2):
            time = _parse_time(record["time"], path, row_num)
            bhi = _parse_float(record["bhi"], "bhi", path, row_num)
            dhi = _parse_float(record["dhi"], "dhi", path, row_num)
            ghi = _parse_float(record["ghi"], "ghi", path, row_num)
            temp = _parse_float(record["temp_air"], "temp_air", path, row_num)
            wind = _parse_float(record["wind10"], "wind10", path, row_num)
            if bhi < 0.0 or dhi < 0.0 or ghi < 0.0 or wind < 0.0:
                negative_rows.append(row_num)
                continue
            if abs(ghi - (bhi + dhi)) > CLOSURE_TOLERANCE_WM2:
                ghi = bhi + dhi
                repaired_rows.append(row_num)
            samples.append(
                IrradianceSample(
                    time=time, bhi=bhi, dhi=dhi, ghi=ghi, temp_air=temp, wind10=wind
                )
            )
    if negative_rows:
        raise InputError(
            f"{path}: negative irradiance or wind in rows {_listed(negative_rows)}"
        )
    if not samples:
        raise InputError(f"{path}: no data rows")
    if repaired_rows:
        log.warning(
            "%s: repaired ghi to bhi + dhi in %d rows (rows %s)",
            path,
            len(repaired_rows),
            _listed(repaired_rows),
        )
    _check_hourly(samples, path)
    if location is not None:
        over_toa = [
            s.time.isoformat()
            for s in samples
            if s.bhi > 0.0 and s.bhi > extraterrestrial_horizontal(location, s.time) + 1.0
        ]
        if over_toa:
            log.warning(
                "%s: beam exceeds top-of-atmosphere irradiance in %d rows (%s)",
                path,
                len(over_toa),
                _listed(over_toa),
            )
    return samples


def _check_hourly(samples: list[IrradianceSample], path: Path) -> None:
    hour = timedelta(hours=1)
    missing: list[str] = []
    duplicates: list[str] = []
    for prev, cur in zip(samples, samples[1:]):
        if cur.time == prev.time:
            duplicates.append(cur.time.isoformat())
            continue
        if cur.time < prev.time:
            raise InputError(
                f"{path}: timestamps not increasing at {cur.time.isoformat()}"
            )
        expect = prev.time + hour
        while expect < cur.time:
            missing.append(expect.isoformat())
            expect += hour
    if duplicates:
        raise InputError(f"{path}: duplicate timestamps: {_listed(duplicates)}")
    if missing:
        raise InputError(f"{path}: missing hours: {_listed(missing)}")


def ingest_prices(path: str | Path, times: list[datetime]) -> np.ndarray:
    """Read an hourly price CSV (``time,price``) aligned to a weather timeline.

    Every weather hour must appear exactly once, in order, with no extras;
    the first mismatching timestamp is reported otherwise. Returns the
    price array (currency per MWh, any fixed unit) in timeline order.
    """
    path = Path(path)
    stamps: list[datetime] = []
    prices: list[float] = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise InputError(f"{path}: empty file")
        missing = [c for c in PRICE_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise InputError(f"{path}: missing price columns {missing}")
        for row_num, record in enumerate(reader, start=2):
            stamps.append(_parse_time(record["time"], path, row_num))
            prices.append(_parse_float(record["price"], "price", path, row_num))
    if not stamps:
        raise InputError(f"{path}: no data rows")
    if len(stamps) != len(times):
        raise InputError(
            f"{path}: {len(stamps)} price rows for {len(times)} weather hours"
        )
    for i, (got, want) in enumerate(zip(stamps, times)):
        if got != want:
            raise InputError(
                f"{path}: price timeline diverges from weather at row {i + 2}: "
                f"{got.isoformat()} != {want.isoformat()}"
            )
    return np.array(prices)
