"""Photosynthetically active radiation and crop suitability.

Broadband irradiance converts to PAR photon flux with two constants: the
0.43 share of solar power in the 400-700 nm band (AM1.5G spectrum) and
4.56 umol of photons per joule in that band, so full sun of 1000 W/m2
is about 1961 umol/m2/s.

Crop light demand is expressed as thresholds on the growing-period mean
daytime PAR at ground level. The shipped thresholds are deliberately
simple defaults (shade-tolerant, intermediate, sun-demanding) and can be
overridden in the scenario configuration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PAR_FRACTION = 0.43
PAR_PHOTONS_PER_JOULE = 4.56  # umol/J within 400-700 nm

#: Calendar months of the default growing period (April through September).
GROWING_MONTHS = (4, 5, 6, 7, 8, 9)


@dataclass(frozen=True)
class CropThresholds:
    """Mean daytime PAR demands in umol/m2/s per crop light class."""

    low: float = 250.0
    medium: float = 450.0
    high: float = 650.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.low <= self.medium <= self.high:
            raise ValueError(
                f"thresholds must be ordered 0 <= low <= medium <= high: "
                f"{self.low}, {self.medium}, {self.high}"
            )


def par_flux(irradiance_wm2):
    """PAR photon flux (umol/m2/s) for broadband irradiance (W/m2).

    Accepts scalars or arrays; linear in the input.
    """
    return np.multiply(irradiance_wm2, PAR_FRACTION * PAR_PHOTONS_PER_JOULE)


def crop_fraction(par_map: np.ndarray, threshold: float) -> float:
    """Fraction of ground cells whose mean daytime PAR meets the demand."""
    par = np.asarray(par_map)
    if par.size == 0:
        raise ValueError("empty PAR map")
    return float(np.mean(par >= threshold))


@dataclass(frozen=True)
class DecisionPoint:
    """One scenario's position in the yield-versus-crop-suitability map."""

    scenario: str
    kind: str
    spacing: float
    height: float
    capacity_density_w_m2: float
    electricity_yield_kwh_m2: float
    frac_low: float
    frac_med: float
    frac_high: float


def decision_point(
    scenario: str,
    kind: str,
    spacing: float,
    height: float,
    capacity_density_w_m2: float,
    electricity_yield_kwh_m2: float,
    par_map: np.ndarray,
    thresholds: CropThresholds = CropThresholds(),
) -> DecisionPoint:
    return DecisionPoint(
        scenario=scenario,
        kind=kind,
        spacing=spacing,
        height=height,
        capacity_density_w_m2=capacity_density_w_m2,
        electricity_yield_kwh_m2=electricity_yield_kwh_m2,
        frac_low=crop_fraction(par_map, thresholds.low),
        frac_med=crop_fraction(par_map, thresholds.medium),
        frac_high=crop_fraction(par_map, thresholds.high),
    )


def sort_decision_points(points: list[DecisionPoint]) -> list[DecisionPoint]:
    """Order points by electricity yield, best first (ties by scenario id)."""
    return sorted(points, key=lambda p: (-p.electricity_yield_kwh_m2, p.scenario))
