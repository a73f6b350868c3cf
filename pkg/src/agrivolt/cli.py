"""Command line interface.

Subcommands:

* ``simulate``: run the scenario grid, write the full artifact set
* ``decision-map``: run the grid, write only the crop decision map
* ``potential``: land eligibility and regional deployment potential
* ``validate``: check input files and report problems without simulating

Exit codes: 0 success, 2 invalid input, 3 computation failure.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import land, outputs, scenario
from .config import load_config
from .errors import ComputationError, InputError
from .weather import ingest_prices, ingest_weather

log = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agrivolt",
        description="Agrivoltaic field simulation: PV yield, ground light, land potential",
    )
    parser.add_argument("--verbose", action="store_true", help="log progress details")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run the scenario grid, write all artifacts")
    sim.add_argument("--config", required=True, help="scenario INI file")
    sim.add_argument("--weather", required=True, help="hourly weather CSV")
    sim.add_argument("--prices", help="hourly price CSV aligned to the weather year")
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--threads", type=int, default=1, help="worker processes")
    sim.add_argument(
        "--wind-shear-exponent",
        type=float,
        help="override the (height/10)^exp wind scaling exponent",
    )

    dm = sub.add_parser("decision-map", help="write only the crop decision map")
    dm.add_argument("--config", required=True)
    dm.add_argument("--weather", required=True)
    dm.add_argument("--out", required=True)
    dm.add_argument("--threads", type=int, default=1)

    pot = sub.add_parser("potential", help="regional deployment potential from rasters")
    pot.add_argument("--raster", required=True, help="land-cover class raster (ASCII grid)")
    pot.add_argument("--regions", required=True, help="region id raster (ASCII grid)")
    pot.add_argument("--classes", help="JSON include/exclude class sets")
    pot.add_argument("--buffer", type=float, default=land.DEFAULT_BUFFER_M,
                     help="exclusion buffer around excluded classes, metres")
    pot.add_argument("--capacity-density", type=float, default=30.0,
                     help="deployable capacity per eligible area, W/m2")
    pot.add_argument("--yields", help="CSV region_id,tilt,vertical,tracking (kWh/kW)")
    pot.add_argument("--yield-tilt", type=float, help="constant tilt yield, kWh/kW")
    pot.add_argument("--yield-vertical", type=float)
    pot.add_argument("--yield-tracking", type=float)
    pot.add_argument("--demand-twh", type=float, default=2550.0,
                     help="reference demand for the summary multiple")
    pot.add_argument("--out", required=True)

    val = sub.add_parser("validate", help="check inputs, simulate nothing")
    val.add_argument("--config")
    val.add_argument("--weather")
    val.add_argument("--prices")
    val.add_argument("--raster")
    val.add_argument("--classes")
    return parser


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.wind_shear_exponent is not None:
        config = replace(
            config,
            panel=replace(config.panel, wind_shear_exponent=args.wind_shear_exponent),
        )
    weather = ingest_weather(args.weather, config.location)
    prices = None
    if args.prices:
        prices = ingest_prices(args.prices, [s.time for s in weather])
    written = scenario.run_scenario(config, weather, prices, args.out, args.threads)
    print(f"wrote {len(written)} artifacts to {args.out}")
    return 0


def _cmd_decision_map(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    weather = ingest_weather(args.weather, config.location)
    target = scenario.run_decision_map(config, weather, args.out, args.threads)
    print(f"wrote {target}")
    return 0


def _read_yields(path: str) -> dict[int, dict[str, float]]:
    """Per-region specific yields: region_id,tilt,vertical,tracking."""
    table: dict[int, dict[str, float]] = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        needed = {"region_id", "tilt", "vertical", "tracking"}
        if reader.fieldnames is None or not needed <= set(reader.fieldnames):
            raise InputError(f"{path}: yields CSV needs columns {sorted(needed)}")
        for row_num, record in enumerate(reader, start=2):
            try:
                table[int(record["region_id"])] = {
                    kind: float(record[kind]) for kind in ("tilt", "vertical", "tracking")
                }
            except ValueError as exc:
                raise InputError(f"{path}: row {row_num}: {exc}") from exc
    if not table:
        raise InputError(f"{path}: no yield rows")
    return table


def _cmd_potential(args: argparse.Namespace) -> int:
    raster = land.read_ascii_grid(args.raster)
    regions_raster = land.read_ascii_grid(args.regions)
    if regions_raster.codes.shape != raster.codes.shape:
        raise InputError(
            f"region raster {regions_raster.codes.shape} does not match "
            f"land raster {raster.codes.shape}"
        )
    classes = land.load_class_sets(args.classes) if args.classes else land.DEFAULT_CLASS_SETS

    per_region = _read_yields(args.yields) if args.yields else None
    constant = {
        "tilt": args.yield_tilt,
        "vertical": args.yield_vertical,
        "tracking": args.yield_tracking,
    }
    if per_region is None and any(v is None for v in constant.values()):
        raise InputError(
            "potential needs either --yields or all of "
            "--yield-tilt/--yield-vertical/--yield-tracking"
        )

    mask = land.eligibility_mask(raster, classes, args.buffer)
    region_ids = sorted(
        int(v)
        for v in np.unique(regions_raster.codes)
        if v != regions_raster.nodata
    )
    results = []
    for rid in region_ids:
        yields = per_region.get(rid) if per_region is not None else constant
        if yields is None:
            raise InputError(f"--yields has no row for region {rid}")
        results.append(
            land.region_potential(
                raster, mask, regions_raster.codes, rid, args.capacity_density, yields
            )
        )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    outputs.write_regions_csv(out / "regions.csv", results)
    summary = land.aggregate_potential(results, args.demand_twh)
    outputs.write_summary_csv(out / "summary.csv", summary)
    print(f"wrote {out / 'regions.csv'} and {out / 'summary.csv'}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    checked = 0
    config = None
    if args.config:
        config = load_config(args.config)
        print(f"config ok: {args.config}")
        checked += 1
    weather = None
    if args.weather:
        weather = ingest_weather(args.weather, config.location if config else None)
        print(f"weather ok: {args.weather} ({len(weather)} hours)")
        checked += 1
    if args.prices:
        if weather is None:
            raise InputError("--prices validation needs --weather for the timeline")
        prices = ingest_prices(args.prices, [s.time for s in weather])
        print(f"prices ok: {args.prices} (mean {np.mean(prices):.2f})")
        checked += 1
    if args.raster:
        raster = land.read_ascii_grid(args.raster)
        print(f"raster ok: {args.raster} {raster.codes.shape}")
        checked += 1
    if args.classes:
        sets = land.load_class_sets(args.classes)
        print(
            f"classes ok: {args.classes} "
            f"({len(sets.include)} include, {len(sets.exclude)} exclude)"
        )
        checked += 1
    if checked == 0:
        raise InputError("validate: nothing to check, pass at least one input")
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "decision-map": _cmd_decision_map,
    "potential": _cmd_potential,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001 - last-resort mapping to exit code
        log.debug("unexpected failure", exc_info=True)
        print(f"computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
