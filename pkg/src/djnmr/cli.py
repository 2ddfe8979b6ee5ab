"""Command-line front end.

Subcommands:
  run         one computation at any fidelity level
  tables      regenerate the reference tables, optionally check against goldens
  spectrum    export FID and spectrum CSVs with rendered figures
  crosscheck  agreement matrix across all fidelity levels

All physics lives in the library modules; this module only parses flags,
dispatches, and formats output.  Exit codes: 0 success, 1 usage or
configuration error, 2 verification or classification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import pipeline, tables
from .config import RunConfig, build_run_config, load_config_file
from .errors import (
    ConfigError,
    DJNMRError,
    GoldenMismatch,
    InconsistentReading,
    PeakNotFound,
    PromiseViolation,
)
from .signal import fid_to_csv, spectrum_to_csv
from .spinsim import format_sequence

USAGE_ERROR = 1
CHECK_FAILURE = 2


def _merge_config(args: argparse.Namespace) -> RunConfig:
    values: dict[str, str] = {}
    if getattr(args, "config", None):
        values.update(load_config_file(args.config))
    for key in (
        "n",
        "f",
        "params",
        "mode",
        "tolerance_deg",
        "npoints",
        "dwell_s",
        "out",
    ):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = str(flag)
    return build_run_config(values)


def _report_payload(report: pipeline.RunReport, cfg: RunConfig) -> dict:
    payload: dict = {
        "mode": report.mode,
        "params": {"n": report.params.n, "a": report.params.a, "b": report.params.b},
        "function": report.truth_table.bits,
    }
    if report.params.c is not None:
        payload["params"]["c"] = report.params.c
    if report.result is not None:
        payload["verdict"] = report.result.verdict.value
        payload["recovered_function"] = report.result.truth_table.bits
    if report.quantum is not None:
        payload["verdict"] = report.quantum.verdict.value
        payload["distribution"] = [float(p) for p in report.quantum.distribution]
        payload["outcome_bits"] = list(report.quantum.outcome_bits)
    if report.spin is not None:
        payload["species_angles_deg"] = {
            label: round(angle, 9) for label, angle in report.spin.angles_deg.items()
        }
        payload["peak_phases_deg"] = {
            r.species: round(r.phase_deg, 9) for r in report.spin.readings
        }
        payload["quadrants"] = {
            r.species: (r.quadrant.value if r.quadrant else "unclassified")
            for r in report.spin.readings
        }
        payload["tolerance_deg"] = cfg.tolerance_deg
    return payload


def _print_report(payload: dict) -> None:
    print(f"mode:      {payload['mode']}")
    print(f"function:  f_{payload['function']}")
    if "verdict" in payload:
        print(f"verdict:   {payload['verdict']}")
    if "recovered_function" in payload:
        print(f"recovered: f_{payload['recovered_function']}")
    for label, angle in payload.get("species_angles_deg", {}).items():
        phase = payload["peak_phases_deg"].get(label)
        quadrant = payload["quadrants"].get(label)
        print(
            f"species {label}: magnetisation angle {angle:+.3f} deg,"
            f" peak phase {phase:+.3f} deg, direction {quadrant}"
        )
    if "distribution" in payload:
        support = [
            (format(k, "b").zfill(len(payload["outcome_bits"])), p)
            for k, p in enumerate(payload["distribution"])
            if p > 1e-12
        ]
        rendered = ", ".join(f"|{bits}>: {p:.6f}" for bits, p in support)
        print(f"measurement distribution: {rendered}")
        print(f"outcome bits: {''.join(str(b) for b in payload['outcome_bits'])}")


def cmd_run(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    report = pipeline.run(cfg.params, cfg.mode, cfg.setup())
    payload = _report_payload(report, cfg)
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _print_report(payload)
    if cfg.out is not None and report.spin is not None:
        cfg.out.mkdir(parents=True, exist_ok=True)
        (cfg.out / "report.json").write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n"
        )
        (cfg.out / "sequence.txt").write_text(format_sequence(report.spin.sequence))
    return 0


def cmd_tables(args: argparse.Namespace) -> int:
    names = [args.only] if args.only else list(tables.TABLE_NAMES)
    if args.check:
        counts = {}
        for name in names:
            counts[name] = tables.check_table(name)
        summary = ", ".join(f"{name}: {count} cells" for name, count in counts.items())
        print(f"verified {sum(counts.values())} cells ({summary})")
        return 0
    for name in names:
        print(tables.generate_table(name).render())
        print()
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    if cfg.mode not in pipeline.SPIN_MODES:
        raise ConfigError(f"field mode: spectrum export needs one of {pipeline.SPIN_MODES}")
    if cfg.out is None:
        raise ConfigError("field out: an output directory is required")
    out = cfg.out
    out.mkdir(parents=True, exist_ok=True)
    setup = cfg.setup()
    offsets = [s.offset_hz for s in setup.active_species(cfg.n)]

    runs: list[tuple[str, object]] = []
    if args.all_inputs:
        for k in range(2**cfg.n):
            bits = format(k, f"0{cfg.n}b")
            runs.append((f"basis{bits}", pipeline.run_basis_input(bits, cfg.params, setup)))
    computation = pipeline.run_spin(cfg.params, cfg.mode, setup)
    runs.append(("computation", computation))

    written: list[Path] = []
    for name, result in runs:
        written.append(fid_to_csv(result.fid, out / f"{name}_fid.csv"))
        written.append(spectrum_to_csv(result.spectrum, out / f"{name}_spectrum.csv"))
    if not args.no_figures:
        from . import plotting

        for name, result in runs:
            written.append(
                plotting.save_spectrum_figure(
                    result.spectrum,
                    out / f"{name}_spectrum.png",
                    title=f"{cfg.truth_table.label} {name}",
                    offsets_hz=offsets,
                    window_hz=200.0,
                )
            )
        written.append(
            plotting.save_spectrum_grid(
                [(name, result.spectrum) for name, result in runs],
                out / "spectra_grid.png",
                offsets_hz=offsets,
                window_hz=200.0,
            )
        )
    for path in written:
        print(path)
    return 0


def cmd_crosscheck(args: argparse.Namespace) -> int:
    report = pipeline.crosscheck()
    if args.json:
        payload = {
            "cases": [
                {
                    "function": c.function,
                    "verdicts": c.verdicts,
                    "recovered": c.recovered,
                    "ok": c.ok,
                    "failures": list(c.failures),
                }
                for c in report.cases
            ],
            "complement_pairs_ok": report.complement_pairs_ok,
            "witnesses_ok": report.witnesses_ok,
            "all_pass": report.all_pass,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in report.lines():
            print(line)
    return 0 if report.all_pass else CHECK_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="djnmr",
        description="Classical single-query function classification on simulated NMR",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_function_flags(p: argparse.ArgumentParser, modes: tuple[str, ...]) -> None:
        p.add_argument("--n", type=int, help="function arity (1 or 2)")
        p.add_argument("--f", help="truth table bits, e.g. 0101")
        p.add_argument("--params", help="control bits A,B or A,B,C")
        p.add_argument("--mode", choices=modes, help="fidelity level")
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--tolerance-deg", dest="tolerance_deg", type=float)
        p.add_argument("--npoints", type=int)
        p.add_argument("--dwell-s", dest="dwell_s", type=float)
        p.add_argument("--out", help="output directory")

    run_p = sub.add_parser("run", help="run one computation")
    add_function_flags(run_p, pipeline.MODES)
    run_p.add_argument("--json", action="store_true", help="emit a JSON report")
    run_p.set_defaults(func=cmd_run)

    tables_p = sub.add_parser("tables", help="regenerate the reference tables")
    tables_p.add_argument("--check", action="store_true", help="compare against goldens")
    tables_p.add_argument("--only", choices=tables.TABLE_NAMES, help="one table only")
    tables_p.set_defaults(func=cmd_tables)

    spectrum_p = sub.add_parser("spectrum", help="export FIDs, spectra and figures")
    add_function_flags(spectrum_p, pipeline.SPIN_MODES)
    spectrum_p.add_argument(
        "--all-inputs",
        dest="all_inputs",
        action="store_true",
        help="also export every basis input row",
    )
    spectrum_p.add_argument(
        "--no-figures",
        dest="no_figures",
        action="store_true",
        help="write CSV only, skip PNG rendering",
    )
    spectrum_p.set_defaults(func=cmd_spectrum)

    crosscheck_p = sub.add_parser("crosscheck", help="run the agreement matrix")
    crosscheck_p.add_argument("--json", action="store_true", help="emit a JSON report")
    crosscheck_p.set_defaults(func=cmd_crosscheck)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, PromiseViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (GoldenMismatch, InconsistentReading, PeakNotFound) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return CHECK_FAILURE
    except DJNMRError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
