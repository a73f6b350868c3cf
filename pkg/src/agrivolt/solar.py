"""Sun position, incidence geometry, and single-axis tracking.

Angle conventions used throughout the package:

* ``altitude``: radians above the horizon,
* ``azimuth``: radians, 0 = due south, positive toward west, east negative,
* ``tilt``: radians from horizontal.

All timestamps are UTC ``datetime`` objects; naive datetimes are rejected.
World coordinates are right handed with x pointing east, y north, z up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

SOLAR_CONSTANT = 1361.0  # W/m2 at 1 AU

_J2000 = datetime(2000, 1, 1, 12, 0, 0, tzinfo=timezone.utc)


@dataclass(frozen=True)
class GeoLocation:
    """Geographic point, latitude/longitude in degrees (north/east positive)."""

    latitude: float
    longitude: float

    def __post_init__(self) -> None:
        if not abs(self.latitude) <= 90.0:
            raise ValueError(f"latitude out of range [-90, 90]: {self.latitude}")
        if not abs(self.longitude) <= 180.0:
            raise ValueError(f"longitude out of range [-180, 180]: {self.longitude}")


@dataclass(frozen=True)
class SolarPosition:
    altitude: float
    azimuth: float

    @property
    def zenith(self) -> float:
        return 0.5 * math.pi - self.altitude


@dataclass(frozen=True)
class PlaneOrientation:
    """Orientation of a collector plane (tilt from horizontal, facing azimuth)."""

    tilt: float
    azimuth: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.tilt <= 0.5 * math.pi:
            raise ValueError(f"tilt out of range [0, pi/2]: {self.tilt}")


def _days_since_j2000(time: datetime) -> float:
    if time.tzinfo is None:
        raise ValueError("naive datetime given; timestamps must be UTC-aware")
    return (time - _J2000).total_seconds() / 86400.0


def solar_position(location: GeoLocation, time: datetime) -> SolarPosition:
    """Sun altitude and azimuth from a low-accuracy analytic ephemeris.

    Uses the Astronomical Almanac approximate solar coordinates (mean
    longitude and anomaly, ecliptic longitude, sidereal time), accurate to
    about 0.01 degrees between 1950 and 2100, far inside the 0.5 degree
    target for energy simulation. Atmospheric refraction is ignored.

    Parameters
    ----------
    location : GeoLocation
    time : datetime
        UTC-aware timestamp between years 1950 and 2100.

    Returns
    -------
    SolarPosition
        Altitude above horizon and azimuth (0 = south, + = west), radians.
    """
    if not 1950 <= time.year <= 2100:
        raise ValueError(f"timestamp outside supported range 1950-2100: {time.isoformat()}")
    n = _days_since_j2000(time)

    mean_lon = (280.460 + 0.9856474 * n) % 360.0
    mean_anom = math.radians((357.528 + 0.9856003 * n) % 360.0)
    ecl_lon = math.radians(
        mean_lon + 1.915 * math.sin(mean_anom) + 0.020 * math.sin(2.0 * mean_anom)
    )
    obliquity = math.radians(23.439 - 4.0e-7 * n)

    right_asc = math.atan2(math.cos(obliquity) * math.sin(ecl_lon), math.cos(ecl_lon))
    declination = math.asin(math.sin(obliquity) * math.sin(ecl_lon))

    gmst_deg = (280.46061837 + 360.98564736629 * n) % 360.0
    hour_angle = math.radians(gmst_deg + location.longitude) - right_asc
    hour_angle = math.atan2(math.sin(hour_angle), math.cos(hour_angle))

    lat = math.radians(location.latitude)
    sin_alt = (
        math.sin(lat) * math.sin(declination)
        + math.cos(lat) * math.cos(declination) * math.cos(hour_angle)
    )
    altitude = math.asin(min(1.0, max(-1.0, sin_alt)))
    # measured from south, positive toward west (afternoon hour angles > 0)
    azimuth = math.atan2(
        math.sin(hour_angle),
        math.cos(hour_angle) * math.sin(lat) - math.tan(declination) * math.cos(lat),
    )
    return SolarPosition(altitude=altitude, azimuth=azimuth)


def sun_vector(sun: SolarPosition) -> np.ndarray:
    """Unit vector pointing from the ground toward the sun, (east, north, up)."""
    cos_alt = math.cos(sun.altitude)
    return np.array(
        [
            -cos_alt * math.sin(sun.azimuth),
            -cos_alt * math.cos(sun.azimuth),
            math.sin(sun.altitude),
        ]
    )


def plane_normal(plane: PlaneOrientation) -> np.ndarray:
    """Unit normal of the collector front face, (east, north, up)."""
    sin_tilt = math.sin(plane.tilt)
    return np.array(
        [
            -sin_tilt * math.sin(plane.azimuth),
            -sin_tilt * math.cos(plane.azimuth),
            math.cos(plane.tilt),
        ]
    )


def incidence_angle(sun: SolarPosition, plane: PlaneOrientation) -> float:
    """Angle between the sun direction and the plane normal, radians in [0, pi].

    Values above pi/2 mean the sun is behind the plane.
    """
    cos_inc = (
        math.sin(sun.altitude) * math.cos(plane.tilt)
        + math.cos(sun.altitude)
        * math.sin(plane.tilt)
        * math.cos(sun.azimuth - plane.azimuth)
    )
    return math.acos(min(1.0, max(-1.0, cos_inc)))


def eccentricity_correction(time: datetime) -> float:
    """Sun-earth distance correction factor for the day of year (dimensionless)."""
    doy = time.timetuple().tm_yday
    x = 2.0 * math.pi * (doy - 1 + (time.hour - 12) / 24.0) / 365.0
    return (
        1.00011
        + 0.034221 * math.cos(x)
        + 0.00128 * math.sin(x)
        + 0.000719 * math.cos(2.0 * x)
        + 0.000077 * math.sin(2.0 * x)
    )


def extraterrestrial_horizontal(location: GeoLocation, time: datetime) -> float:
    """Top-of-atmosphere direct irradiance on a horizontal surface, W/m2.

    Zero whenever the sun is at or below the horizon.
    """
    sun = solar_position(location, time)
    if sun.altitude <= 0.0:
        return 0.0
    return SOLAR_CONSTANT * eccentricity_correction(time) * math.sin(sun.altitude)


def tracking_orientation(
    sun: SolarPosition, max_rotation: float | None = None
) -> PlaneOrientation:
    """Orientation of a horizontal north-south single-axis tracker.

    Returns the rotation about the axis that minimises the incidence angle:
    ``R = atan2(cos(altitude) * sin(azimuth), sin(altitude))``, positive
    rotation facing west. The mount parks flat when the sun is below the
    horizon. ``max_rotation`` (radians) optionally clamps the rotation range;
    by default the rotation is unlimited.

    Returns
    -------
    PlaneOrientation
        Tilt = |R| with azimuth +-pi/2 (west/east), or flat at R = 0.
    """
    if sun.altitude <= 0.0:
        return PlaneOrientation(tilt=0.0, azimuth=0.0)
    rotation = math.atan2(
        math.cos(sun.altitude) * math.sin(sun.azimuth), math.sin(sun.altitude)
    )
    if max_rotation is not None:
        rotation = min(max_rotation, max(-max_rotation, rotation))
    if rotation == 0.0:
        return PlaneOrientation(tilt=0.0, azimuth=0.0)
    return PlaneOrientation(tilt=abs(rotation), azimuth=math.copysign(0.5 * math.pi, rotation))
