"""Land eligibility and regional deployment potential from class rasters.

Rasters arrive as ESRI ASCII grids of integer land-cover class codes. A
pixel is eligible when its class is agricultural (the include set) and no
excluded-class pixel (settlement, forest, wetland, water by default) lies
within a protection buffer, measured as Euclidean distance between pixel
centres. Eligible area then converts to deployment potential with a
capacity density (W per m2 of field) and per-mount specific yields
(kWh/kW).

The shipped class sets mirror the agricultural land-cover classes of the
European inventory nomenclature (arable land 211-213, fruit and berry
plantations 222, pastures 231, heterogeneous agriculture 241-242); both
sets are plain data and user-overridable through a JSON file.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.ndimage import distance_transform_edt

from .errors import InputError

log = logging.getLogger(__name__)

DEFAULT_INCLUDE_CLASSES = (211, 212, 213, 222, 231, 241, 242)
DEFAULT_EXCLUDE_CLASSES = (
    # artificial surfaces
    111, 112, 121, 122, 123, 124, 131, 132, 133, 141, 142,
    # forests
    311, 312, 313,
    # wetlands and water bodies
    411, 412, 421, 422, 423, 511, 512, 521, 522, 523,
)
DEFAULT_BUFFER_M = 100.0

_ASCII_HEADER_KEYS = ("ncols", "nrows", "xllcorner", "yllcorner", "cellsize")


@dataclass
class LandRaster:
    """Integer class codes on a regular grid; row 0 is the northern edge."""

    codes: np.ndarray
    cell_size: float
    xllcorner: float = 0.0
    yllcorner: float = 0.0
    nodata: int = -9999

    @property
    def pixel_area_km2(self) -> float:
        return (self.cell_size / 1000.0) ** 2


def read_ascii_grid(path: str | Path) -> LandRaster:
    """Read an ESRI ASCII grid of integer codes.

    Expects the usual header (ncols, nrows, xllcorner, yllcorner, cellsize,
    optional NODATA_value) followed by whitespace-separated values.
    """
    path = Path(path)
    header: dict[str, float] = {}
    data_lines: list[str] = []
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read raster {path}: {exc}") from exc
    for line in lines:
        stripped = line.strip()
        if not stripped:
            continue
        parts = stripped.split()
        key = parts[0].lower()
        if key in _ASCII_HEADER_KEYS or key == "nodata_value":
            if len(parts) != 2:
                raise InputError(f"{path}: malformed header line {stripped!r}")
            header[key] = float(parts[1])
        else:
            data_lines.append(stripped)
    missing = [k for k in _ASCII_HEADER_KEYS if k not in header]
    if missing:
        raise InputError(f"{path}: missing header keys {missing}")
    ncols, nrows = int(header["ncols"]), int(header["nrows"])
    try:
        values = np.array(" ".join(data_lines).split(), dtype=np.int64)
    except ValueError as exc:
        raise InputError(f"{path}: non-integer raster values: {exc}") from exc
    if values.size != ncols * nrows:
        raise InputError(
            f"{path}: expected {ncols * nrows} values ({ncols} x {nrows}), got {values.size}"
        )
    return LandRaster(
        codes=values.reshape(nrows, ncols),
        cell_size=header["cellsize"],
        xllcorner=header["xllcorner"],
        yllcorner=header["yllcorner"],
        nodata=int(header.get("nodata_value", -9999)),
    )


def write_ascii_grid(path: str | Path, raster: LandRaster) -> None:
    """Write a raster back out as an ESRI ASCII grid."""
    nrows, ncols = raster.codes.shape
    with open(path, "w") as fh:
        fh.write(f"ncols {ncols}\n")
        fh.write(f"nrows {nrows}\n")
        fh.write(f"xllcorner {raster.xllcorner:g}\n")
        fh.write(f"yllcorner {raster.yllcorner:g}\n")
        fh.write(f"cellsize {raster.cell_size:g}\n")
        fh.write(f"NODATA_value {raster.nodata}\n")
        for row in raster.codes:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


@dataclass(frozen=True)
class ClassSets:
    """Include/exclude/neutral class code sets for eligibility."""

    include: frozenset[int]
    exclude: frozenset[int]
    neutral: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        overlap = self.include & self.exclude
        if overlap:
            raise InputError(f"classes both included and excluded: {sorted(overlap)}")


DEFAULT_CLASS_SETS = ClassSets(
    include=frozenset(DEFAULT_INCLUDE_CLASSES),
    exclude=frozenset(DEFAULT_EXCLUDE_CLASSES),
    neutral=frozenset((221, 223, 243, 244, 321, 322, 323, 324, 331, 332, 333, 334, 335)),
)


def load_class_sets(path: str | Path) -> ClassSets:
    """Load class sets from JSON: {"include": [...], "exclude": [...],
    "neutral": [...]} with neutral optional."""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read class sets {path}: {exc}") from exc
    for key in ("include", "exclude"):
        if key not in raw or not isinstance(raw[key], list):
            raise InputError(f"{path}: missing or malformed {key!r} list")
    return ClassSets(
        include=frozenset(int(c) for c in raw["include"]),
        exclude=frozenset(int(c) for c in raw["exclude"]),
        neutral=frozenset(int(c) for c in raw.get("neutral", [])),
    )


def eligibility_mask(
    raster: LandRaster,
    classes: ClassSets = DEFAULT_CLASS_SETS,
    buffer_m: float = DEFAULT_BUFFER_M,
) -> np.ndarray:
    """Boolean mask of pixels eligible for deployment.

    Eligible = agricultural class AND no excluded-class pixel within
    ``buffer_m`` (Euclidean, pixel centre to pixel centre; an excluded
    pixel itself has distance 0). Codes outside all three sets raise a
    warning and are treated as excluded; NODATA pixels are outside the
    study area and neither eligible nor excluding.
    """
    codes = raster.codes
    known = classes.include | classes.exclude | classes.neutral
    unknown = ~np.isin(codes, sorted(known)) & (codes != raster.nodata)
    if unknown.any():
        log.warning(
            "%d pixels with unknown class codes %s treated as excluded",
            int(unknown.sum()),
            sorted(np.unique(codes[unknown]).tolist())[:10],
        )
    excluded = np.isin(codes, sorted(classes.exclude)) | unknown
    include = np.isin(codes, sorted(classes.include))
    if not excluded.any():
        return include
    # distance (in pixels) from every pixel to the nearest excluded pixel
    distance_px = distance_transform_edt(~excluded)
    return include & (distance_px * raster.cell_size > buffer_m)


@dataclass(frozen=True)
class RegionPotential:
    region_id: int
    total_km2: float
    eligible_km2: float
    share_pct: float
    capacity_gw: float
    energy_twh: dict[str, float] = field(default_factory=dict)


def region_potential(
    raster: LandRaster,
    eligible: np.ndarray,
    regions: np.ndarray,
    region_id: int,
    capacity_density_w_m2: float,
    specific_yields_kwh_kw: dict[str, float],
) -> RegionPotential:
    """Potential of one region: eligible area, capacity and annual energy.

    ``regions`` assigns a region id to every pixel (same shape as the
    raster). Capacity = eligible area x capacity density; energy per mount
    kind = capacity x that kind's specific yield.
    """
    if regions.shape != raster.codes.shape:
        raise InputError(
            f"region raster shape {regions.shape} does not match land raster "
            f"{raster.codes.shape}"
        )
    in_region = (regions == region_id) & (raster.codes != raster.nodata)
    total_km2 = float(in_region.sum()) * raster.pixel_area_km2
    eligible_km2 = float((in_region & eligible).sum()) * raster.pixel_area_km2
    capacity_gw = eligible_km2 * 1.0e6 * capacity_density_w_m2 / 1.0e9
    energy = {
        kind: capacity_gw * yield_kwh_kw / 1000.0
        for kind, yield_kwh_kw in specific_yields_kwh_kw.items()
    }
    return RegionPotential(
        region_id=region_id,
        total_km2=total_km2,
        eligible_km2=eligible_km2,
        share_pct=100.0 * eligible_km2 / total_km2 if total_km2 > 0.0 else 0.0,
        capacity_gw=capacity_gw,
        energy_twh=energy,
    )


def aggregate_potential(
    results: list[RegionPotential], demand_twh: float = 2550.0
) -> dict[str, float]:
    """Sum regions and relate the energy potential to a reference demand.

    Returns totals plus, per mount kind, the multiple of ``demand_twh``
    the summed annual energy represents.
    """
    if demand_twh <= 0.0:
        raise InputError("reference demand must be positive")
    summary: dict[str, float] = {
        "total_km2": sum(r.total_km2 for r in results),
        "eligible_km2": sum(r.eligible_km2 for r in results),
        "capacity_gw": sum(r.capacity_gw for r in results),
    }
    kinds = {k for r in results for k in r.energy_twh}
    for kind in sorted(kinds):
        energy = sum(r.energy_twh.get(kind, 0.0) for r in results)
        summary[f"energy_{kind}_twh"] = energy
        summary[f"demand_multiple_{kind}"] = energy / demand_twh
    return summary
