"""Command-line entry points: ``link-budget``, ``snr-sweep``, ``pass`` and
``hysteresis-sweep``.

Exit codes: 0 success, 2 usage or parse error, 3 validation error,
4 domain error at run time.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import replace
from typing import Optional, Sequence

from sulsim.errors import ConfigError, DomainError
from sulsim.geometry import off_boresight_angle, slant_range, velocity_angle_deg
from sulsim.link_budget import AtmosphericKind, doppler_shift_hz, link_terms
from sulsim.passsim import (
    Mode,
    PassResult,
    ScenarioConfig,
    derive_seeds,
    hysteresis_sweep,
    min_elevation_for_target,
    run_pass,
)
from sulsim.scenario import ScenarioParseError, ScenarioVersionError, load_scenario

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_DOMAIN = 4

SNR_SWEEP_HEADER = ["target_snr_db", "min_elev_pul_deg", "min_elev_sul_enabled_deg"]
PASS_HEADER = [
    "time_s",
    "elevation_deg",
    "slant_range_km",
    "snr_pul_db",
    "snr_sul_db",
    "margin_pul_db",
    "margin_sul_db",
    "doppler_pul_hz",
    "doppler_sul_hz",
    "active_carrier",
    "available",
]
HYSTERESIS_HEADER = ["hysteresis_db", "mean_switches", "p95_switches"]

_LINK_ROWS = [
    ("tx_power_dbm", "UE transmit power (dBm)"),
    ("ue_gain_dbi", "UE antenna gain (dBi)"),
    ("sat_gain_dbi", "Satellite antenna gain (dBi)"),
    ("fspl_db", "Free-space path loss (dB)"),
    ("atm_loss_db", "Atmospheric loss (dB)"),
    ("impl_loss_db", "Implementation loss (dB)"),
    ("received_power_dbm", "Received power (dBm)"),
    ("noise_psd_dbm_hz", "Noise PSD (dBm/Hz)"),
    ("bandwidth_db_hz", "Bandwidth (dB-Hz)"),
    ("noise_floor_dbm", "Noise floor (dBm)"),
    ("snr_db", "SNR (dB)"),
    ("snr_req_db", "Required SNR (dB)"),
    ("margin_db", "Link margin (dB)"),
    ("doppler_hz", "Doppler shift (Hz)"),
]


def fmt(value: Optional[float]) -> str:
    """Fixed six-decimal rendering; ``None`` becomes an empty field."""
    if value is None:
        return ""
    out = f"{value:.6f}"
    return "0.000000" if out == "-0.000000" else out


def _write_csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def inclusive_range(start: float, stop: float, step: float) -> list[float]:
    if not step > 0:
        raise ValueError("step must be > 0")
    if start > stop:
        raise ValueError("range minimum must not exceed maximum")
    n = int(round((stop - start) / step + 1e-9)) if stop > start else 0
    values = [start + i * step for i in range(n + 1)]
    return [v for v in values if v <= stop + 1e-9 * max(1.0, abs(stop))]


def link_budget_rows(scenario: ScenarioConfig, elevation_deg: float) -> list[tuple[str, str, float, float]]:
    """(key, label, PUL value, SUL value) for every term of the link chain.

    Doppler uses the velocity geometry of the scenario's pass on its rising
    branch; above the configured peak elevation it falls back to an
    overhead pass.
    """
    geo = scenario.geometry
    off = off_boresight_angle(geo, elevation_deg, scenario.beam_mode)
    pass_geo = geo if elevation_deg <= geo.max_elevation_deg else replace(geo, max_elevation_deg=90.0)
    phi = velocity_angle_deg(pass_geo, elevation_deg)
    snr_req = scenario.controller.snr_req_db
    per = {}
    for carrier in (scenario.pul, scenario.sul):
        t = link_terms(carrier, scenario.atm_model, elevation_deg, off, geo)
        vals = {k: getattr(t, k) for k, _ in _LINK_ROWS if hasattr(t, k)}
        vals["snr_req_db"] = snr_req
        vals["margin_db"] = t.snr_db - snr_req
        vals["doppler_hz"] = doppler_shift_hz(carrier.frequency_mhz, velocity_angle_deg=phi)
        per[carrier.name.value] = vals
    d = slant_range(geo, elevation_deg)
    head = [
        ("elevation_deg", "Elevation (deg)", elevation_deg, elevation_deg),
        ("slant_range_km", "Slant range (km)", d, d),
        ("off_boresight_deg", "Off-boresight angle (deg)", off, off),
        ("velocity_angle_deg", "Velocity/LoS angle (deg)", phi, phi),
    ]
    return head + [(k, label, per["PUL"][k], per["SUL"][k]) for k, label in _LINK_ROWS]


def link_budget_text(scenario: ScenarioConfig, elevation_deg: float, as_csv: bool) -> str:
    rows = link_budget_rows(scenario, elevation_deg)
    if as_csv:
        return _write_csv(["term", "pul", "sul"], [(k, fmt(p), fmt(s)) for k, _, p, s in rows])
    width = max(len(label) for _, label, _, _ in rows)
    lines = [f"{'':<{width}}  {'PUL':>16}  {'SUL':>16}"]
    for _, label, p, s in rows:
        lines.append(f"{label:<{width}}  {p:>16.3f}  {s:>16.3f}")
    return "\n".join(lines) + "\n"


def snr_sweep_csv(scenario: ScenarioConfig, targets: Sequence[float]) -> str:
    rows = []
    for target in targets:
        pul = min_elevation_for_target(scenario, target, Mode.PUL_ONLY)
        both = min_elevation_for_target(scenario, target, Mode.SUL_ENABLED)
        rows.append((fmt(target), fmt(pul), fmt(both)))
    return _write_csv(SNR_SWEEP_HEADER, rows)


def pass_csv(result: PassResult) -> str:
    rows = []
    for e in result.trace:
        s = e.sample
        rows.append(
            (
                fmt(e.time_s),
                fmt(s.elevation_deg),
                fmt(s.slant_range_km),
                fmt(s.pul.snr_db),
                fmt(s.sul.snr_db),
                fmt(s.pul.margin_db),
                fmt(s.sul.margin_db),
                fmt(s.pul.doppler_hz),
                fmt(s.sul.doppler_hz),
                e.active_carrier.value,
                "1" if e.available else "0",
            )
        )
    return _write_csv(PASS_HEADER, rows)


def pass_summary(result: PassResult) -> str:
    return (
        f"mode={result.mode.value} availability_fraction={fmt(result.availability_fraction)} "
        f"switch_count={result.switch_count}"
    )


def hysteresis_csv(scenario: ScenarioConfig, values: Sequence[float], n_seeds: int) -> str:
    if n_seeds < 1:
        raise ValueError("number of seeds must be >= 1")
    rows = hysteresis_sweep(scenario, values, derive_seeds(scenario.rng_seed, n_seeds))
    return _write_csv(
        HYSTERESIS_HEADER,
        [(fmt(r.hysteresis_db), fmt(r.mean_switches), fmt(r.p95_switches)) for r in rows],
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _scenario(args: argparse.Namespace) -> ScenarioConfig:
    scenario = load_scenario(args.scenario) if args.scenario else ScenarioConfig()
    if args.atm is not None:
        scenario = replace(scenario, atm_model=replace(scenario.atm_model, kind=AtmosphericKind(args.atm)))
    if getattr(args, "sigma", None) is not None:
        scenario = replace(scenario, noise_sigma_db=args.sigma)
    if getattr(args, "seed", None) is not None:
        scenario = replace(scenario, rng_seed=args.seed)
    return scenario


def _cmd_link_budget(args: argparse.Namespace) -> int:
    _emit(link_budget_text(_scenario(args), args.elevation, args.csv), args.out)
    return EXIT_OK


def _cmd_snr_sweep(args: argparse.Namespace) -> int:
    scenario = _scenario(args)
    targets = inclusive_range(args.target_min, args.target_max, args.target_step)
    _emit(snr_sweep_csv(scenario, targets), args.out)
    return EXIT_OK


def _cmd_pass(args: argparse.Namespace) -> int:
    result = run_pass(_scenario(args), Mode(args.mode))
    _emit(pass_csv(result), args.out)
    # keep stdout a clean CSV stream when no output file is given
    print(pass_summary(result), file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def _cmd_hysteresis_sweep(args: argparse.Namespace) -> int:
    scenario = _scenario(args)
    values = inclusive_range(args.dh_min, args.dh_max, args.dh_step)
    _emit(hysteresis_csv(scenario, values, args.seeds), args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="JSON scenario file (defaults to the reference scenario)")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--csv", action="store_true", help="machine-readable CSV output")
    common.add_argument(
        "--atm",
        choices=[k.value for k in AtmosphericKind],
        help="override the scenario's atmospheric model",
    )

    parser = _Parser(prog="sulsim", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("link-budget", parents=[common], help="per-carrier link budget at one elevation")
    p.add_argument("--elevation", type=float, required=True, help="elevation angle in degrees")
    p.set_defaults(func=_cmd_link_budget)

    p = sub.add_parser("snr-sweep", parents=[common], help="minimum elevation versus target SNR")
    p.add_argument("--target-min", type=float, default=0.0)
    p.add_argument("--target-max", type=float, default=10.0)
    p.add_argument("--target-step", type=float, default=1.0)
    p.set_defaults(func=_cmd_snr_sweep)

    p = sub.add_parser("pass", parents=[common], help="simulate one pass and write its trace")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.SUL_ENABLED.value)
    p.add_argument("--sigma", type=float, help="margin perturbation std-dev in dB")
    p.add_argument("--seed", type=int, help="override the scenario rng_seed")
    p.set_defaults(func=_cmd_pass)

    p = sub.add_parser("hysteresis-sweep", parents=[common], help="switch counts versus hysteresis margin")
    p.add_argument("--dh-min", type=float, default=0.0)
    p.add_argument("--dh-max", type=float, default=6.0)
    p.add_argument("--dh-step", type=float, default=0.5)
    p.add_argument("--seeds", type=int, default=100, help="number of seeded passes per margin")
    p.add_argument("--sigma", type=float, help="margin perturbation std-dev in dB")
    p.add_argument("--seed", type=int, help="override the scenario rng_seed")
    p.set_defaults(func=_cmd_hysteresis_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioParseError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, ScenarioVersionError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
