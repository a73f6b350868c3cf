"""Scenario configuration: INI parsing, defaults, validation.

A scenario file declares where the field sits, which layout grid to
sweep, and the panel, sky and crop parameters. Only ``[meta]``
``schema_version`` and ``[location]`` are mandatory; everything else has
the documented defaults. Unknown sections or keys are rejected so typos
fail loudly instead of silently running defaults.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path

from .agronomy import GROWING_MONTHS, CropThresholds
from .electrical import PanelModel
from .errors import InputError
from .layout import DEFAULT_CLEARANCE, MOUNT_KINDS
from .solar import GeoLocation

SCHEMA_VERSION = 1

_KNOWN_KEYS = {
    "meta": {"schema_version"},
    "location": {"latitude", "longitude"},
    "field": {"electrical_m", "ground_m", "ground_cell_m"},
    "layout": {
        "kinds",
        "spacings_m",
        "heights_m",
        "clearance_tilt_m",
        "clearance_vertical_m",
        "clearance_tracking_m",
        "tilt_deg",
        "tracker_max_rotation_deg",
        "bifaciality_vertical",
    },
    "panel": {
        "stc_efficiency",
        "eta_system",
        "alpha_r",
        "u0",
        "u1",
        "blocks",
        "wind_shear_exponent",
    },
    "sky": {"albedo"},
    "crops": {"par_low", "par_medium", "par_high", "growing_months"},
    "analysis": {"ground_map_months", "demand_twh"},
}


@dataclass(frozen=True)
class ScenarioConfig:
    location: GeoLocation
    kinds: tuple[str, ...] = MOUNT_KINDS
    spacings: tuple[float, ...] = (6.0,)
    heights: tuple[float, ...] = (2.0,)
    electrical_field_m: float = 100.0
    ground_field_m: float = 50.0
    ground_cell_m: float = 0.5
    clearances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_CLEARANCE))
    tilt_deg: float | None = None
    tracker_max_rotation_deg: float | None = None
    bifaciality_vertical: float = 0.8
    panel: PanelModel = PanelModel()
    albedo: float = 0.2
    thresholds: CropThresholds = CropThresholds()
    growing_months: tuple[int, ...] = GROWING_MONTHS
    ground_map_months: tuple[int, ...] = (7,)
    demand_twh: float = 2550.0


def _parse_floats(text: str, what: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.replace(",", " ").split())
    except ValueError as exc:
        raise InputError(f"bad {what} list {text!r}: {exc}") from exc
    if not values:
        raise InputError(f"empty {what} list")
    return values


def _parse_months(text: str, what: str) -> tuple[int, ...]:
    try:
        months = tuple(int(part) for part in text.replace(",", " ").split())
    except ValueError as exc:
        raise InputError(f"bad {what} list {text!r}: {exc}") from exc
    bad = [m for m in months if not 1 <= m <= 12]
    if bad or not months:
        raise InputError(f"{what} must be calendar months 1-12, got {text!r}")
    return months


def load_config(path: str | Path) -> ScenarioConfig:
    """Parse and validate a scenario INI file."""
    path = Path(path)
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise InputError(f"malformed config {path}: {exc}") from exc

    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise InputError(f"{path}: unknown section [{section}]")
        unknown = set(parser[section]) - _KNOWN_KEYS[section]
        if unknown:
            raise InputError(f"{path}: unknown keys in [{section}]: {sorted(unknown)}")

    def get(section: str, key: str, fallback: str | None = None) -> str | None:
        return parser.get(section, key, fallback=fallback)

    version = get("meta", "schema_version")
    if version is None:
        raise InputError(f"{path}: missing [meta] schema_version")
    if int(version) != SCHEMA_VERSION:
        raise InputError(
            f"{path}: unsupported schema_version {version}, this build reads {SCHEMA_VERSION}"
        )
    if not parser.has_section("location"):
        raise InputError(f"{path}: missing [location] section")
    try:
        location = GeoLocation(
            latitude=float(parser["location"]["latitude"]),
            longitude=float(parser["location"]["longitude"]),
        )
    except KeyError as exc:
        raise InputError(f"{path}: [location] needs latitude and longitude") from exc
    except ValueError as exc:
        raise InputError(f"{path}: bad location: {exc}") from exc

    defaults = ScenarioConfig(location=location)

    kinds_text = get("layout", "kinds")
    if kinds_text is None:
        kinds: tuple[str, ...] = defaults.kinds
    else:
        kinds = tuple(k.strip() for k in kinds_text.split(",") if k.strip())
        bad_kinds = [k for k in kinds if k not in MOUNT_KINDS]
        if bad_kinds or not kinds:
            raise InputError(f"{path}: unknown mount kinds {bad_kinds or kinds_text!r}")

    clearances = dict(DEFAULT_CLEARANCE)
    for kind in MOUNT_KINDS:
        text = get("layout", f"clearance_{kind}_m")
        if text is not None:
            clearances[kind] = float(text)

    try:
        panel = PanelModel(
            stc_efficiency=float(get("panel", "stc_efficiency", "0.20")),
            eta_system=float(get("panel", "eta_system", "0.86")),
            alpha_r=float(get("panel", "alpha_r", "0.17")),
            u0=float(get("panel", "u0", "26.92")),
            u1=float(get("panel", "u1", "6.24")),
            blocks=int(get("panel", "blocks", "3")),
            wind_shear_exponent=float(get("panel", "wind_shear_exponent", "2.0")),
        )
        thresholds = CropThresholds(
            low=float(get("crops", "par_low", "250")),
            medium=float(get("crops", "par_medium", "450")),
            high=float(get("crops", "par_high", "650")),
        )
        config = ScenarioConfig(
            location=location,
            kinds=kinds,
            spacings=_parse_floats(get("layout", "spacings_m", "6"), "spacings_m"),
            heights=_parse_floats(get("layout", "heights_m", "2"), "heights_m"),
            electrical_field_m=float(get("field", "electrical_m", "100")),
            ground_field_m=float(get("field", "ground_m", "50")),
            ground_cell_m=float(get("field", "ground_cell_m", "0.5")),
            clearances=clearances,
            tilt_deg=(lambda t: None if t is None else float(t))(get("layout", "tilt_deg")),
            tracker_max_rotation_deg=(lambda t: None if t is None else float(t))(
                get("layout", "tracker_max_rotation_deg")
            ),
            bifaciality_vertical=float(get("layout", "bifaciality_vertical", "0.8")),
            panel=panel,
            albedo=float(get("sky", "albedo", "0.2")),
            thresholds=thresholds,
            growing_months=_parse_months(
                get("crops", "growing_months", "4 5 6 7 8 9"), "growing_months"
            ),
            ground_map_months=_parse_months(
                get("analysis", "ground_map_months", "7"), "ground_map_months"
            ),
            demand_twh=float(get("analysis", "demand_twh", "2550")),
        )
    except ValueError as exc:
        raise InputError(f"{path}: invalid value: {exc}") from exc

    if config.electrical_field_m <= 0.0 or config.ground_field_m <= 0.0:
        raise InputError(f"{path}: field extents must be positive")
    if config.ground_cell_m <= 0.0:
        raise InputError(f"{path}: ground_cell_m must be positive")
    if not 0.0 <= config.albedo <= 1.0:
        raise InputError(f"{path}: albedo out of range [0, 1]")
    if config.tilt_deg is not None and not 0.0 < config.tilt_deg < 90.0:
        raise InputError(f"{path}: tilt_deg out of range (0, 90)")
    if any(s <= 0.0 for s in config.spacings) or any(h <= 0.0 for h in config.heights):
        raise InputError(f"{path}: spacings and heights must be positive")
    return config


def tilt_radians(config: ScenarioConfig) -> float | None:
    return None if config.tilt_deg is None else math.radians(config.tilt_deg)


def max_rotation_radians(config: ScenarioConfig) -> float | None:
    if config.tracker_max_rotation_deg is None:
        return None
    return math.radians(config.tracker_max_rotation_deg)
