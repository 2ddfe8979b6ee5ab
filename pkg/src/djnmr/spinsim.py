"""Rotating-frame magnetisation simulator for uncoupled spin-1/2 species.

Conventions, fixed once and shared with the signal module:

* Pulses are right-handed rotations about an axis in the xy-plane at
  ``phase_deg`` degrees from +x, so a (pi/2) pulse about +y takes +z to +x.
* Free precession at offset dv rotates transverse magnetisation
  right-handedly about +z: the in-plane angle grows by 2*pi*dv*t, and an
  accumulated phase of 3*pi/2 carries +x to -y.
* Complex bits map onto the plane as (1,0) -> unit vector at -45 degrees and
  (0,1) -> unit vector at +45 degrees; readout is the adjoint of that map.

Pulses and delays preserve vector norms exactly; transverse decay happens
only during acquisition and lives in the signal module.  In ideal mode all
event durations count as zero; in realistic mode selective pulses rotate the
target species ideally while every other species precesses for the pulse
duration, and delays let all species precess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .complexbit import BlackBoxParams, ComplexBit
from .errors import (
    MissingSpecies,
    OutOfPlane,
    UnknownSpecies,
    ZeroBit,
    ZeroOffsetDifference,
    ZeroVector,
)

_INV_SQRT2 = math.sqrt(0.5)
TWO_PI = 2.0 * math.pi

#: On-resonance 90-degree pulse length used when durations are not configured.
DEFAULT_PI2_DURATION_S = 2.5e-3
DEFAULT_PI_DURATION_S = 5.0e-3

MODES = ("ideal", "realistic")


@dataclass(frozen=True)
class SpinSpecies:
    """One uncoupled spin species in the rotating frame.

    ``offset_hz`` is the resonance offset from the receiver reference;
    ``t2_s`` the transverse decay constant used during acquisition.
    """

    label: str
    offset_hz: float
    t2_s: float = 0.5

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("species label must be non-empty")
        if self.t2_s <= 0:
            raise ValueError(f"t2_s must be positive, got {self.t2_s}")


@dataclass(frozen=True)
class Magnetisation:
    """A dimensionless magnetisation vector (mx, my, mz)."""

    mx: float
    my: float
    mz: float

    def as_array(self) -> np.ndarray:
        return np.array([self.mx, self.my, self.mz])

    @classmethod
    def from_array(cls, v: Iterable[float]) -> "Magnetisation":
        x, y, z = v
        return cls(float(x), float(y), float(z))

    @property
    def norm(self) -> float:
        return math.sqrt(self.mx**2 + self.my**2 + self.mz**2)

    @property
    def transverse_norm(self) -> float:
        return math.hypot(self.mx, self.my)

    def xy_angle_deg(self) -> float:
        """In-plane angle from +x in degrees, in (-180, 180]."""
        return math.degrees(math.atan2(self.my, self.mx))


I_Z = Magnetisation(0.0, 0.0, 1.0)
I_X = Magnetisation(1.0, 0.0, 0.0)
I_Y = Magnetisation(0.0, 1.0, 0.0)


def embed(z: ComplexBit) -> Magnetisation:
    """Map a complex bit linearly onto transverse magnetisation.

    a*u(-45) + b*u(+45) with u(theta) the unit vector at theta degrees; the
    two basis directions are orthogonal, so (1,1) lands on +x with length
    sqrt(2).
    """
    if z.a == 0.0 and z.b == 0.0:
        raise ZeroBit("(0, 0) has no direction and cannot be embedded")
    return Magnetisation((z.a + z.b) * _INV_SQRT2, (z.b - z.a) * _INV_SQRT2, 0.0)


def readout(m: Magnetisation) -> ComplexBit:
    """Invert embed: project m onto the -45 and +45 degree unit vectors."""
    norm = m.norm
    if norm == 0.0:
        raise ZeroVector("cannot read out a zero magnetisation vector")
    if abs(m.mz) >= 1e-9 * norm:
        raise OutOfPlane(f"magnetisation is not transverse: mz = {m.mz}, |m| = {norm}")
    return ComplexBit((m.mx - m.my) * _INV_SQRT2, (m.mx + m.my) * _INV_SQRT2)


def rotate(m: Magnetisation, axis_phase_deg: float, flip_rad: float) -> Magnetisation:
    """Right-handed rotation of m by flip_rad about the in-plane axis at axis_phase_deg.

    A pi rotation reflects an in-plane vector at angle theta to 2*phase - theta.
    """
    phi = math.radians(axis_phase_deg)
    nx, ny = math.cos(phi), math.sin(phi)
    c, s = math.cos(flip_rad), math.sin(flip_rad)
    k = 1.0 - c
    dot = nx * m.mx + ny * m.my
    return Magnetisation(
        m.mx * c + ny * m.mz * s + nx * dot * k,
        m.my * c - nx * m.mz * s + ny * dot * k,
        m.mz * c + (nx * m.my - ny * m.mx) * s,
    )


def rotation_matrix(axis_phase_deg: float, flip_rad: float) -> np.ndarray:
    """The 3x3 matrix of rotate(..., axis_phase_deg, flip_rad)."""
    phi = math.radians(axis_phase_deg)
    n = np.array([math.cos(phi), math.sin(phi), 0.0])
    c, s = math.cos(flip_rad), math.sin(flip_rad)
    cross = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    return c * np.eye(3) + s * cross + (1.0 - c) * np.outer(n, n)


def precess(m: Magnetisation, offset_hz: float, duration_s: float) -> Magnetisation:
    """Free evolution: rotate the transverse part by 2*pi*offset*t about +z."""
    angle = TWO_PI * offset_hz * duration_s
    c, s = math.cos(angle), math.sin(angle)
    return Magnetisation(m.mx * c - m.my * s, m.mx * s + m.my * c, m.mz)


def compute_tau(offset_difference_hz: float, c: int) -> float:
    """Shortest positive delay giving a dephasing of 3*pi/2 (c=1) or 2*pi (c=0).

    The phase is accrued at 2*pi*offset_difference_hz per second with the
    precession sign convention above, so a negative difference reaches the
    3*pi/2 endpoint after a quarter turn backwards.
    """
    if offset_difference_hz == 0.0:
        raise ZeroOffsetDifference("species offsets must differ to time the delay")
    if c not in (0, 1):
        raise ValueError(f"c must be a bit, got {c}")
    if c == 1:
        turns = 0.75 if offset_difference_hz > 0 else 0.25
    else:
        turns = 1.0
    return turns / abs(offset_difference_hz)


@dataclass(frozen=True)
class SelectivePulse:
    """Ideal rotation of one target species; others precess for duration_s."""

    species: str
    flip_rad: float
    phase_deg: float
    duration_s: float = 0.0

    def __post_init__(self) -> None:
        _check_pulse(self.flip_rad, self.duration_s)


@dataclass(frozen=True)
class HardPulse:
    """Non-selective rotation applied to every species."""

    flip_rad: float
    phase_deg: float
    duration_s: float = 0.0

    def __post_init__(self) -> None:
        _check_pulse(self.flip_rad, self.duration_s)


@dataclass(frozen=True)
class Delay:
    duration_s: float

    def __post_init__(self) -> None:
        if self.duration_s < 0:
            raise ValueError(f"delay duration must be >= 0, got {self.duration_s}")


@dataclass(frozen=True)
class Acquire:
    """Marks the start of data acquisition; terminates the sequence."""


PulseEvent = Union[SelectivePulse, HardPulse, Delay, Acquire]


def _check_pulse(flip_rad: float, duration_s: float) -> None:
    if not 0.0 < flip_rad <= TWO_PI:
        raise ValueError(f"flip angle must be in (0, 2*pi], got {flip_rad}")
    if duration_s < 0:
        raise ValueError(f"pulse duration must be >= 0, got {duration_s}")


@dataclass(frozen=True)
class PulseSequence:
    events: tuple[PulseEvent, ...]
    mode: str = "ideal"

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        for k, event in enumerate(self.events):
            if isinstance(event, Acquire) and k != len(self.events) - 1:
                raise ValueError("an Acquire event must terminate the sequence")


def blackbox_pulses(
    p: BlackBoxParams,
    species: Sequence[SpinSpecies],
    pi_duration_s: float = DEFAULT_PI_DURATION_S,
) -> tuple[PulseEvent, ...]:
    """The conditional pi pulses realising the black box in ideal form.

    Species 1 receives (pi)_45 when a=1 and (pi)_-45 when b=1; for n=2,
    species 2 receives (pi)_-45 when c=1.  No preparation pulses are
    included, so these can be applied to directly embedded basis inputs.
    """
    _require_species(p.n, species)
    pulses: list[PulseEvent] = []
    if p.a:
        pulses.append(SelectivePulse(species[0].label, math.pi, 45.0, pi_duration_s))
    if p.b:
        pulses.append(SelectivePulse(species[0].label, math.pi, -45.0, pi_duration_s))
    if p.n == 2 and p.c:
        pulses.append(SelectivePulse(species[1].label, math.pi, -45.0, pi_duration_s))
    return tuple(pulses)


def compile_blackbox(
    p: BlackBoxParams,
    mode: str,
    species: Sequence[SpinSpecies],
    *,
    pi2_duration_s: float = DEFAULT_PI2_DURATION_S,
    pi_duration_s: float = DEFAULT_PI_DURATION_S,
    c0_delay: str = "full-turn",
) -> PulseSequence:
    """Compile the full computation for the given black box into a sequence.

    Ideal mode prepares each participating species with a selective (pi/2)_y
    and applies the conditional pi pulses of ``blackbox_pulses``.  Realistic
    mode replaces the species-2 conditional pulse by just-in-time
    preparation: the (pi/2)_y on species 2 comes after all species-1 pulses
    and is followed by a pre-acquisition delay during which species 2
    precesses into the state the ideal pulse would have produced.  With the
    receiver on resonance with species 1 (offset 0) the two modes agree at
    acquisition start.

    ``c0_delay`` selects the delay used when c=0: "full-turn" (default)
    waits one complete revolution so acquisition timing is uniform, "none"
    starts acquiring immediately.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if c0_delay not in ("full-turn", "none"):
        raise ValueError(f"c0_delay must be 'full-turn' or 'none', got {c0_delay!r}")
    _require_species(p.n, species)
    s1 = species[0].label
    events: list[PulseEvent] = [SelectivePulse(s1, math.pi / 2, 90.0, pi2_duration_s)]
    if p.n == 1:
        events.extend(blackbox_pulses(p, species, pi_duration_s))
    elif mode == "ideal":
        pulses = blackbox_pulses(p, species, pi_duration_s)
        species1_pulses = tuple(e for e in pulses if e.species == s1)
        species2_pulses = tuple(e for e in pulses if e.species != s1)
        events.extend(species1_pulses)
        events.append(SelectivePulse(species[1].label, math.pi / 2, 90.0, pi2_duration_s))
        events.extend(species2_pulses)
    else:
        n1_params = BlackBoxParams(1, p.a, p.b)
        events.extend(blackbox_pulses(n1_params, species[:1], pi_duration_s))
        events.append(SelectivePulse(species[1].label, math.pi / 2, 90.0, pi2_duration_s))
        assert p.c is not None
        if p.c == 1 or c0_delay == "full-turn":
            offset_difference = species[1].offset_hz - species[0].offset_hz
            events.append(Delay(compute_tau(offset_difference, p.c)))
    events.append(Acquire())
    return PulseSequence(tuple(events), mode)


def compile_blackbox_hard_prep(
    p: BlackBoxParams,
    species: Sequence[SpinSpecies],
    *,
    pi2_duration_s: float = DEFAULT_PI2_DURATION_S,
    pi_duration_s: float = DEFAULT_PI_DURATION_S,
) -> PulseSequence:
    """Naive n=2 variant: one hard (pi/2)_y prepares both species at once.

    No phase corrections are applied afterwards, so in realistic mode the
    off-resonance species dephases during every species-1 pulse and acquires
    a phase error relative to the just-in-time sequence.  Kept as a negative
    control for the selective-preparation design.
    """
    if p.n != 2:
        raise ValueError("the hard-preparation control is defined for n = 2")
    _require_species(2, species)
    events: list[PulseEvent] = [HardPulse(math.pi / 2, 90.0, pi2_duration_s)]
    n1_params = BlackBoxParams(1, p.a, p.b)
    events.extend(blackbox_pulses(n1_params, species[:1], pi_duration_s))
    assert p.c is not None
    offset_difference = species[1].offset_hz - species[0].offset_hz
    events.append(Delay(compute_tau(offset_difference, p.c)))
    events.append(Acquire())
    return PulseSequence(tuple(events), "realistic")


def run_sequence(
    species: Sequence[SpinSpecies],
    initial: Mapping[str, Magnetisation] | None,
    seq: PulseSequence,
) -> dict[str, Magnetisation]:
    """Fold the sequence over per-species magnetisation, default start I_z.

    Returns the state at the Acquire event (or after the last event when the
    sequence does not acquire).
    """
    offsets = {s.label: s.offset_hz for s in species}
    if len(offsets) != len(species):
        raise ValueError("species labels must be unique")
    state = {label: I_Z for label in offsets}
    if initial is not None:
        for label, m in initial.items():
            if label not in state:
                raise UnknownSpecies(f"initial state given for unknown species {label!r}")
            state[label] = m
    realistic = seq.mode == "realistic"
    for event in seq.events:
        if isinstance(event, SelectivePulse):
            if event.species not in state:
                raise UnknownSpecies(f"pulse targets unknown species {event.species!r}")
            for label in state:
                if label == event.species:
                    state[label] = rotate(state[label], event.phase_deg, event.flip_rad)
                elif realistic and event.duration_s > 0:
                    state[label] = precess(state[label], offsets[label], event.duration_s)
        elif isinstance(event, HardPulse):
            for label in state:
                state[label] = rotate(state[label], event.phase_deg, event.flip_rad)
        elif isinstance(event, Delay):
            if realistic:
                for label in state:
                    state[label] = precess(state[label], offsets[label], event.duration_s)
        elif isinstance(event, Acquire):
            break
    return state


def _require_species(n: int, species: Sequence[SpinSpecies]) -> None:
    if len(species) < n:
        raise MissingSpecies(f"the n = {n} sequence needs {n} species, got {len(species)}")


def format_sequence(seq: PulseSequence) -> str:
    """Serialise events to the line-oriented text format (mode not included)."""
    lines = []
    for event in seq.events:
        if isinstance(event, SelectivePulse):
            lines.append(
                f"SEL {event.species} {event.flip_rad!r} {event.phase_deg!r} {event.duration_s!r}"
            )
        elif isinstance(event, HardPulse):
            lines.append(f"HARD {event.flip_rad!r} {event.phase_deg!r} {event.duration_s!r}")
        elif isinstance(event, Delay):
            lines.append(f"DELAY {event.duration_s!r}")
        elif isinstance(event, Acquire):
            lines.append("ACQ")
    return "\n".join(lines) + "\n"


def parse_sequence(text: str, mode: str = "ideal") -> PulseSequence:
    """Parse the line-oriented event format produced by format_sequence."""
    events: list[PulseEvent] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        kind = fields[0].upper()
        try:
            if kind == "SEL":
                events.append(
                    SelectivePulse(fields[1], float(fields[2]), float(fields[3]), float(fields[4]))
                )
            elif kind == "HARD":
                events.append(HardPulse(float(fields[1]), float(fields[2]), float(fields[3])))
            elif kind == "DELAY":
                events.append(Delay(float(fields[1])))
            elif kind == "ACQ":
                events.append(Acquire())
            else:
                raise ValueError(f"unknown event kind {fields[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"bad sequence line {line!r}: {exc}") from exc
    return PulseSequence(tuple(events), mode)
