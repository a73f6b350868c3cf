"""Artifact writers: CSV tables and 16-bit PGM ground maps.

Every writer formats numbers through fixed format strings so repeated
runs on identical inputs produce byte-identical files regardless of
platform or thread count.
"""

from __future__ import annotations

import calendar
from datetime import datetime
from pathlib import Path

import numpy as np

from .agronomy import DecisionPoint
from .electrical import SimulationResult
from .indicators import IndicatorReport
from .land import RegionPotential
from .shading import GroundGrid

PGM_MAXVAL = 65535


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _fmt_time(stamp: datetime) -> str:
    return stamp.strftime("%Y-%m-%dT%H:%M:%SZ")


def write_indicators_csv(path: str | Path, reports: list[IndicatorReport]) -> None:
    lines = [
        "scenario,kind,spacing_m,height_m,capacity_density_W_m2,"
        "electricity_yield_kWh_m2,price_weighted_yield_kWh_m2,"
        "shadow_losses_pct,specific_yield_kWh_kW"
    ]
    for r in reports:
        price = "" if r.price_weighted_yield_kwh_m2 is None else _fmt(r.price_weighted_yield_kwh_m2)
        lines.append(
            f"{r.scenario},{r.kind},{r.spacing:g},{r.height:g},"
            f"{_fmt(r.capacity_density_w_m2)},{_fmt(r.electricity_yield_kwh_m2)},"
            f"{price},{_fmt(r.shadow_losses_pct)},{_fmt(r.specific_yield_kwh_kw)}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_hourly_csv(path: str | Path, result: SimulationResult) -> None:
    lines = ["time,P_W,T_cell_C,F_ES_front,F_ES_rear,G_eff_Wm2,P_noshadow_W"]
    for i, stamp in enumerate(result.times):
        lines.append(
            f"{_fmt_time(stamp)},{_fmt(result.p_w[i])},{_fmt(result.t_cell_c[i])},"
            f"{_fmt(result.f_es_front[i])},{_fmt(result.f_es_rear[i])},"
            f"{_fmt(result.g_eff_wm2[i])},{_fmt(result.p_noshadow_w[i])}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def monthly_daily_yield(result: SimulationResult) -> list[float]:
    """Average daily electricity yield per month, kWh/m2/day."""
    year = result.times[0].year
    area = result.layout.field_area
    sums = np.zeros(12)
    for stamp, p in zip(result.times, result.p_w):
        sums[stamp.month - 1] += p
    return [
        sums[m - 1] / 1000.0 / area / calendar.monthrange(year, m)[1] for m in range(1, 13)
    ]


def write_monthly_csv(path: str | Path, results: dict[str, SimulationResult]) -> None:
    """Monthly average daily yield table, one column per scenario."""
    ids = sorted(results)
    lines = ["month," + ",".join(ids)]
    columns = {sid: monthly_daily_yield(results[sid]) for sid in ids}
    for m in range(1, 13):
        lines.append(f"{m}," + ",".join(_fmt(columns[sid][m - 1]) for sid in ids))
    Path(path).write_text("\n".join(lines) + "\n")


def write_ground_csv(path: str | Path, grid: GroundGrid) -> None:
    """Normalized ground irradiance as a dense matrix, southern row first."""
    normalized = grid.normalized
    lines = [",".join(_fmt(v) for v in row) for row in normalized]
    Path(path).write_text("\n".join(lines) + "\n")


def write_ground_pgm(path: str | Path, grid: GroundGrid) -> None:
    """Normalized ground irradiance as a binary 16-bit PGM image.

    Grayscale value = round(normalized * 65535), big-endian, top image row
    = northern field edge.
    """
    normalized = np.clip(grid.normalized, 0.0, 1.0)
    pixels = np.round(np.flipud(normalized) * PGM_MAXVAL).astype(">u2")
    ny, nx = pixels.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{nx} {ny}\n{PGM_MAXVAL}\n".encode("ascii"))
        fh.write(pixels.tobytes())


def write_decision_csv(path: str | Path, points: list[DecisionPoint]) -> None:
    lines = ["scenario,kind,s,h,capacity_density,yield_kWh_m2,frac_low,frac_med,frac_high"]
    for p in points:
        lines.append(
            f"{p.scenario},{p.kind},{p.spacing:g},{p.height:g},"
            f"{_fmt(p.capacity_density_w_m2)},{_fmt(p.electricity_yield_kwh_m2)},"
            f"{_fmt(p.frac_low)},{_fmt(p.frac_med)},{_fmt(p.frac_high)}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_comparisons_csv(path: str | Path, reports: list[IndicatorReport]) -> None:
    """Cross-scenario comparison table.

    ``specific_yield_normalized`` relates each scenario to the best
    specific yield of its mount kind (the least-shaded configuration);
    ``value_factor`` is the price-weighted over unweighted yield ratio,
    above 1 when production aligns with expensive hours.
    """
    best: dict[str, float] = {}
    for r in reports:
        best[r.kind] = max(best.get(r.kind, 0.0), r.specific_yield_kwh_kw)
    lines = [
        "scenario,kind,s,h,specific_yield_kWh_kW,specific_yield_normalized,"
        "yield_kWh_m2,price_weighted_yield_kWh_m2,value_factor"
    ]
    for r in reports:
        norm = r.specific_yield_kwh_kw / best[r.kind] if best[r.kind] > 0.0 else 0.0
        if r.price_weighted_yield_kwh_m2 is None:
            price = value = ""
        else:
            price = _fmt(r.price_weighted_yield_kwh_m2)
            ratio = (
                r.price_weighted_yield_kwh_m2 / r.electricity_yield_kwh_m2
                if r.electricity_yield_kwh_m2 > 0.0
                else 0.0
            )
            value = _fmt(ratio)
        lines.append(
            f"{r.scenario},{r.kind},{r.spacing:g},{r.height:g},"
            f"{_fmt(r.specific_yield_kwh_kw)},{_fmt(norm)},"
            f"{_fmt(r.electricity_yield_kwh_m2)},{price},{value}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_regions_csv(path: str | Path, results: list[RegionPotential]) -> None:
    lines = [
        "region_id,total_km2,eligible_km2,share_pct,capacity_GW,"
        "energy_tilt_TWh,energy_vertical_TWh,energy_tracking_TWh"
    ]
    for r in results:
        energies = ",".join(
            _fmt(r.energy_twh.get(kind, 0.0)) for kind in ("tilt", "vertical", "tracking")
        )
        lines.append(
            f"{r.region_id},{_fmt(r.total_km2)},{_fmt(r.eligible_km2)},"
            f"{_fmt(r.share_pct)},{_fmt(r.capacity_gw)},{energies}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_summary_csv(path: str | Path, summary: dict[str, float]) -> None:
    lines = ["quantity,value"]
    for key in sorted(summary):
        lines.append(f"{key},{_fmt(summary[key])}")
    Path(path).write_text("\n".join(lines) + "\n")
