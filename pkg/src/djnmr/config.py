"""Run configuration: flat key=value files with command-line overrides.

The file format is deliberately plain so golden tests can diff configs
byte for byte: one `key = value` pair per line, `#` comments, no sections.
Command-line flags win over file values.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .complexbit import (
    BlackBoxParams,
    TruthTable,
    params_from_truth_table,
    truth_table_from_params,
)
from .errors import ConfigError, PromiseViolation
from .pipeline import DEFAULT_SPECIES, MODES, SpinSetup
from .spinsim import DEFAULT_PI2_DURATION_S, DEFAULT_PI_DURATION_S, SpinSpecies

_SPECIES_KEYS = ("label", "offset_hz", "t2_s")

KNOWN_KEYS = (
    "n",
    "f",
    "params",
    "mode",
    "tolerance_deg",
    "npoints",
    "dwell_s",
    "pi2_duration_s",
    "pi_duration_s",
    "c0_delay",
    "out",
    "species1_label",
    "species1_offset_hz",
    "species1_t2_s",
    "species2_label",
    "species2_offset_hz",
    "species2_t2_s",
)


@dataclass(frozen=True)
class RunConfig:
    """Validated settings for one command invocation."""

    n: int
    params: BlackBoxParams
    truth_table: TruthTable
    mode: str
    species: tuple[SpinSpecies, ...] = DEFAULT_SPECIES
    pi2_duration_s: float = DEFAULT_PI2_DURATION_S
    pi_duration_s: float = DEFAULT_PI_DURATION_S
    dwell_s: float = 1e-4
    npoints: int = 4000
    tolerance_deg: float = 10.0
    c0_delay: str = "full-turn"
    out: Path | None = None

    def setup(self) -> SpinSetup:
        return SpinSetup(
            species=self.species,
            pi2_duration_s=self.pi2_duration_s,
            pi_duration_s=self.pi_duration_s,
            dwell_s=self.dwell_s,
            npoints=self.npoints,
            tolerance_deg=self.tolerance_deg,
            c0_delay=self.c0_delay,
        )


def load_config_file(path: str | Path) -> dict[str, str]:
    """Parse a flat key=value file into strings; later keys win."""
    values: dict[str, str] = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def _parse_float(values: dict[str, str], key: str, default: float) -> float:
    if key not in values:
        return default
    try:
        return float(values[key])
    except ValueError as exc:
        raise ConfigError(f"field {key}: not a number: {values[key]!r}") from exc


def _parse_int(values: dict[str, str], key: str, default: int) -> int:
    if key not in values:
        return default
    try:
        return int(values[key])
    except ValueError as exc:
        raise ConfigError(f"field {key}: not an integer: {values[key]!r}") from exc


def _parse_species(values: dict[str, str]) -> tuple[SpinSpecies, ...]:
    species = []
    for idx, default in ((1, DEFAULT_SPECIES[0]), (2, DEFAULT_SPECIES[1])):
        label = values.get(f"species{idx}_label", default.label)
        offset = _parse_float(values, f"species{idx}_offset_hz", default.offset_hz)
        t2 = _parse_float(values, f"species{idx}_t2_s", default.t2_s)
        try:
            species.append(SpinSpecies(label, offset, t2))
        except ValueError as exc:
            raise ConfigError(f"field species{idx}: {exc}") from exc
    return tuple(species)


def build_run_config(values: dict[str, str]) -> RunConfig:
    """Validate merged file and flag values into a RunConfig.

    Exactly one of ``f`` (truth-table bits) and ``params`` (comma-separated
    control bits) must be present; ``n`` may be omitted when it is implied.
    """
    has_f = bool(values.get("f"))
    has_params = bool(values.get("params"))
    if has_f == has_params:
        raise ConfigError("fields f/params: give exactly one of a truth table or control bits")

    if has_f:
        bits = values["f"]
        try:
            table = TruthTable.from_bits(bits)
        except ValueError as exc:
            raise ConfigError(f"field f: {exc}") from exc
        try:
            params = params_from_truth_table(table)
        except PromiseViolation as exc:
            raise ConfigError(f"field f: {exc}") from exc
        n = params.n
    else:
        parts = [p.strip() for p in values["params"].split(",") if p.strip()]
        if len(parts) not in (2, 3) or any(p not in ("0", "1") for p in parts):
            raise ConfigError(f"field params: expected 2 or 3 comma-separated bits, got {values['params']!r}")
        control = tuple(int(p) for p in parts)
        n = len(control) - 1
        params = (
            BlackBoxParams(1, control[0], control[1])
            if n == 1
            else BlackBoxParams(2, control[0], control[1], control[2])
        )
        table = truth_table_from_params(params)

    declared_n = _parse_int(values, "n", n)
    if declared_n != n:
        raise ConfigError(f"field n: {declared_n} contradicts the given function of arity {n}")

    mode = values.get("mode", "algebraic")
    if mode not in MODES:
        raise ConfigError(f"field mode: must be one of {MODES}, got {mode!r}")

    species = _parse_species(values)
    if len(species) < n:
        raise ConfigError(f"field species: need at least {n} species for n = {n}")

    npoints = _parse_int(values, "npoints", 4000)
    if npoints < 2:
        raise ConfigError(f"field npoints: must be >= 2, got {npoints}")
    dwell = _parse_float(values, "dwell_s", 1e-4)
    if dwell <= 0:
        raise ConfigError(f"field dwell_s: must be positive, got {dwell}")
    tolerance = _parse_float(values, "tolerance_deg", 10.0)
    if not 0 < tolerance < 45:
        raise ConfigError(f"field tolerance_deg: must be in (0, 45), got {tolerance}")
    pi2 = _parse_float(values, "pi2_duration_s", DEFAULT_PI2_DURATION_S)
    pi = _parse_float(values, "pi_duration_s", DEFAULT_PI_DURATION_S)
    if pi2 < 0 or pi < 0:
        raise ConfigError("field pi2_duration_s/pi_duration_s: durations must be >= 0")
    c0_delay = values.get("c0_delay", "full-turn")
    if c0_delay not in ("full-turn", "none"):
        raise ConfigError(f"field c0_delay: must be 'full-turn' or 'none', got {c0_delay!r}")
    out = Path(values["out"]) if values.get("out") else None

    return RunConfig(
        n=n,
        params=params,
        truth_table=table,
        mode=mode,
        species=species,
        pi2_duration_s=pi2,
        pi_duration_s=pi,
        dwell_s=dwell,
        npoints=npoints,
        tolerance_deg=tolerance,
        c0_delay=c0_delay,
        out=out,
    )
