"""FID synthesis, Fourier transform, and peak-phase readout.

The receiver records the transverse magnetisation in quadrature as
mx + i*my, so a species left at in-plane angle theta produces a
time-domain signal exp(i * (theta + 2*pi*dv*t)) decaying with its T2;
the precession sign matches the spinsim convention.  The transform uses
unitary scaling, so time- and frequency-domain energies agree.

The four readable outcomes are the axis directions +x, -x, +y, -y; a
peak phase within tolerance of one of them classifies the species, and
anything else is reported as unclassified.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .complexbit import (
    BlackBoxParams,
    ComplexBit,
    DJResult,
    Verdict,
    params_from_truth_table,
    truth_table_from_params,
)
from .errors import InconsistentReading, NyquistViolation, PeakNotFound
from .spinsim import Magnetisation, SpinSpecies


@dataclass(frozen=True, eq=False)
class Fid:
    """Complex time-domain samples acquired at a fixed dwell interval."""

    samples: np.ndarray
    dwell_s: float

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=complex)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a non-empty 1-d array")
        if self.dwell_s <= 0:
            raise ValueError(f"dwell must be positive, got {self.dwell_s}")

    @property
    def npoints(self) -> int:
        return int(self.samples.size)

    def times(self) -> np.ndarray:
        return np.arange(self.npoints) * self.dwell_s


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Complex bins over an ascending frequency axis centred on the receiver."""

    bins: np.ndarray
    freq_axis_hz: np.ndarray

    def __post_init__(self) -> None:
        if self.bins.shape != self.freq_axis_hz.shape:
            raise ValueError("bins and frequency axis must have matching shapes")

    @property
    def bin_width_hz(self) -> float:
        return float(self.freq_axis_hz[1] - self.freq_axis_hz[0])


class Quadrant(enum.Enum):
    PLUS_X = "+x"
    MINUS_X = "-x"
    PLUS_Y = "+y"
    MINUS_Y = "-y"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


#: Complex bit encoded by each readable direction (computation outputs only).
QUADRANT_BITS = {
    Quadrant.PLUS_X: ComplexBit(1.0, 1.0),
    Quadrant.MINUS_X: ComplexBit(-1.0, -1.0),
    Quadrant.PLUS_Y: ComplexBit(-1.0, 1.0),
    Quadrant.MINUS_Y: ComplexBit(1.0, -1.0),
}

_QUADRANT_ANGLES = {
    Quadrant.PLUS_X: 0.0,
    Quadrant.PLUS_Y: 90.0,
    Quadrant.MINUS_Y: -90.0,
    Quadrant.MINUS_X: 180.0,
}


@dataclass(frozen=True)
class PhaseReading:
    """Peak phase of one species and, when unambiguous, its axis direction."""

    species: str
    phase_deg: float
    quadrant: Quadrant | None
    peak_bin: int


def synthesize_fid(
    species: Sequence[SpinSpecies],
    magnetisations: Mapping[str, Magnetisation],
    dwell_s: float,
    npoints: int,
) -> Fid:
    """Sum the decaying quadrature signals of all species at acquisition start."""
    if npoints < 1:
        raise ValueError(f"npoints must be >= 1, got {npoints}")
    nyquist = 0.5 / dwell_s
    t = np.arange(npoints) * dwell_s
    samples = np.zeros(npoints, dtype=complex)
    for s in species:
        if abs(s.offset_hz) >= nyquist:
            raise NyquistViolation(
                f"offset {s.offset_hz} Hz of {s.label!r} exceeds the"
                f" +-{nyquist} Hz band of dwell {dwell_s} s"
            )
        m = magnetisations[s.label]
        amplitude = complex(m.mx, m.my)
        if amplitude == 0:
            continue
        samples += amplitude * np.exp((2j * math.pi * s.offset_hz - 1.0 / s.t2_s) * t)
    return Fid(samples, dwell_s)


def spectrum(
    fid: Fid,
    *,
    zero_fill_to: int | None = None,
    line_broadening_hz: float = 0.0,
) -> Spectrum:
    """Unitary DFT of the FID with the axis in Hz, ascending.

    ``line_broadening_hz`` applies exponential apodisation before the
    transform and ``zero_fill_to`` pads to a longer length; both default off.
    """
    samples = fid.samples
    if line_broadening_hz:
        samples = samples * np.exp(-math.pi * line_broadening_hz * fid.times())
    n = fid.npoints if zero_fill_to is None else int(zero_fill_to)
    if n < fid.npoints:
        raise ValueError("zero_fill_to must be at least the number of samples")
    bins = np.fft.fftshift(np.fft.fft(samples, n=n, norm="ortho"))
    freq = np.fft.fftshift(np.fft.fftfreq(n, fid.dwell_s))
    return Spectrum(bins, freq)


def quadrant_from_phase(phase_deg: float, tolerance_deg: float = 10.0) -> Quadrant | None:
    """Nearest axis direction if the phase is within tolerance, else None."""
    for quadrant, target in _QUADRANT_ANGLES.items():
        distance = abs((phase_deg - target + 180.0) % 360.0 - 180.0)
        if distance <= tolerance_deg:
            return quadrant
    return None


def read_phase(
    sp: Spectrum, species: SpinSpecies, tolerance_deg: float = 10.0
) -> PhaseReading:
    """Locate the species peak and report its phase and axis direction.

    Searches within two bins of the species offset; the winning bin must rise
    above five times the median magnitude and sit within one bin of the
    offset, otherwise PeakNotFound is raised.
    """
    magnitudes = np.abs(sp.bins)
    center = int(np.argmin(np.abs(sp.freq_axis_hz - species.offset_hz)))
    lo = max(0, center - 2)
    hi = min(len(magnitudes) - 1, center + 2)
    peak = lo + int(np.argmax(magnitudes[lo : hi + 1]))
    floor = 5.0 * float(np.median(magnitudes))
    if magnitudes[peak] <= floor:
        raise PeakNotFound(
            f"no peak above {floor:.3g} near {species.offset_hz} Hz for {species.label!r}"
        )
    bin_width = sp.bin_width_hz
    if abs(sp.freq_axis_hz[peak] - species.offset_hz) > bin_width * (1 + 1e-9):
        raise PeakNotFound(
            f"strongest nearby bin at {sp.freq_axis_hz[peak]} Hz is more than one"
            f" bin from the {species.offset_hz} Hz offset of {species.label!r}"
        )
    phase = math.degrees(math.atan2(sp.bins[peak].imag, sp.bins[peak].real))
    return PhaseReading(species.label, phase, quadrant_from_phase(phase, tolerance_deg), peak)


def classify_quadrants(quadrants: Sequence[Quadrant | None], n: int) -> DJResult:
    """Recover the hidden function from per-species axis directions.

    Directions encode the pre-projection black-box outputs on input 1 + i:
    species 1 carries ((-1)^f(0..), (-1)^f(1..)) and, for n=2, species 2
    carries (1, (-1)^c).  Unreadable or impossible directions raise
    InconsistentReading.
    """
    if len(quadrants) != n:
        raise InconsistentReading(f"expected {n} readings, got {len(quadrants)}")
    resolved = []
    for k, q in enumerate(quadrants):
        if q is None:
            raise InconsistentReading(f"species {k + 1} phase is not near any axis")
        resolved.append(QUADRANT_BITS[q])
    first = resolved[0]
    a = 0 if first.a > 0 else 1
    b = 0 if first.b > 0 else 1
    if n == 1:
        params = BlackBoxParams(1, a, b)
    else:
        second = resolved[1]
        if second.a < 0:
            raise InconsistentReading(
                f"species 2 direction {quadrants[1]} is not a valid computation output"
            )
        params = BlackBoxParams(2, a, b, 0 if second.b > 0 else 1)
    table = truth_table_from_params(params)
    verdict = Verdict.CONSTANT if table.is_constant else Verdict.BALANCED
    return DJResult(verdict, table, params_from_truth_table(table), tuple(resolved))


def classify_result(readings: Sequence[PhaseReading], n: int) -> DJResult:
    """Classify a run from spectral phase readings, species 1 first."""
    return classify_quadrants([r.quadrant for r in readings], n)


def _normalise_phase(deg: float) -> float:
    wrapped = (deg + 180.0) % 360.0 - 180.0
    return 180.0 if wrapped == -180.0 else wrapped


def spectrum_to_csv(sp: Spectrum, path: str | Path) -> Path:
    """Write `freq_hz,real,imag,magnitude,phase_deg`, ascending frequency."""
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["freq_hz", "real", "imag", "magnitude", "phase_deg"])
        for freq, value in zip(sp.freq_axis_hz, sp.bins):
            phase = _normalise_phase(math.degrees(math.atan2(value.imag, value.real)))
            writer.writerow(
                [
                    f"{freq:.12g}",
                    f"{value.real:.12g}",
                    f"{value.imag:.12g}",
                    f"{abs(value):.12g}",
                    f"{phase:.12g}",
                ]
            )
    return path


def fid_to_csv(fid: Fid, path: str | Path) -> Path:
    """Write `t_s,real,imag`, one row per sample."""
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["t_s", "real", "imag"])
        for t, value in zip(fid.times(), fid.samples):
            writer.writerow([f"{t:.12g}", f"{value.real:.12g}", f"{value.imag:.12g}"])
    return path
