"""Reference result tables, regenerated by simulation and checked against goldens.

Four tables cover both arities: the action of every black box on the basis
bits, and the full computation from thermal equilibrium.  The golden copies
are hand-entered reference data; regeneration drives the ideal pulse
simulator and must reproduce them cell for cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .complexbit import BlackBoxParams, ComplexBit, truth_table_from_params
from .errors import GoldenMismatch
from .spinsim import (
    Acquire,
    Magnetisation,
    PulseSequence,
    SelectivePulse,
    SpinSpecies,
    blackbox_pulses,
    compile_blackbox,
    embed,
    readout,
    run_sequence,
)

TABLE_NAMES = ("n1-basis", "n1-algorithm", "n2-basis", "n2-algorithm")

#: Basis-bit inputs in table column order.
BASIS_BITS = (ComplexBit(1.0, 0.0), ComplexBit(0.0, 1.0))

_SNAP_TOL = 1e-9

_DIRECTION_LABELS = {
    0: "I_x",
    45: "I_45",
    90: "I_y",
    135: "I_135",
    180: "I_-x",
    -45: "I_-45",
    -90: "I_-y",
    -135: "I_-135",
}


def direction_label(m: Magnetisation) -> str:
    """Name of the in-plane direction, snapped to the 45-degree grid."""
    angle = m.xy_angle_deg()
    snapped = round(angle / 45.0) * 45
    if abs((angle - snapped + 180.0) % 360.0 - 180.0) > 1e-6:
        raise ValueError(f"angle {angle} deg is not on the 45-degree grid")
    if snapped == -180:
        snapped = 180
    return _DIRECTION_LABELS[int(snapped)]


def snap_bit(z: ComplexBit) -> tuple[int, int]:
    """Scale the largest component to one and round to integers.

    Absolute magnitude carries no information here, so (0.707, -0.707) and
    (1, -1) snap to the same cell value.
    """
    scale = max(abs(z.a), abs(z.b))
    if scale == 0:
        raise ValueError("cannot snap the zero bit")
    a, b = z.a / scale, z.b / scale
    if abs(a - round(a)) > _SNAP_TOL or abs(b - round(b)) > _SNAP_TOL:
        raise ValueError(f"({z.a}, {z.b}) does not snap to integer components")
    return int(round(a)), int(round(b))


@dataclass(frozen=True)
class Cell:
    """One table entry: one bit pair per participating species."""

    bits: tuple[tuple[int, int], ...]
    direction: str | None = None

    def render(self) -> str:
        text = "".join(f"({a:2d},{b:2d})" for a, b in self.bits)
        return f"{text} {self.direction}" if self.direction else text


@dataclass(frozen=True)
class Row:
    params: tuple[int, ...]
    function: str
    cells: tuple[Cell, ...]


@dataclass(frozen=True)
class Table:
    name: str
    column_titles: tuple[str, ...]
    rows: tuple[Row, ...]

    @property
    def cell_count(self) -> int:
        return sum(len(r.cells) for r in self.rows)

    def render(self) -> str:
        width = max(18, max(len(t) for t in self.column_titles) + 2)
        header = " ".join(
            f"{t:>{width}s}" for t in ("params", "f") + self.column_titles
        )
        lines = [f"[{self.name}]", header]
        for row in self.rows:
            bits = "".join(str(b) for b in row.params)
            cells = " ".join(f"{c.render():>{width}s}" for c in row.cells)
            lines.append(f"{bits:>{width}s} {row.function:>{width}s} {cells}")
        return "\n".join(lines)


_TABLE_TITLES = {
    "n1-basis": ("C_f((1,0))", "C_f((0,1))"),
    "n1-algorithm": ("(pi/2)_y", "C_f"),
    "n2-basis": (
        "C_f((1,0)(1,0))",
        "C_f((1,0)(0,1))",
        "C_f((0,1)(1,0))",
        "C_f((0,1)(0,1))",
    ),
    "n2-algorithm": ("C_f",),
}

N1_BASIS_GOLDEN = (
    ((0, 0), "f_00", ((((1, 0),), "I_-45"), (((0, 1),), "I_45"))),
    ((0, 1), "f_01", ((((1, 0),), "I_-45"), (((0, -1),), "I_-135"))),
    ((1, 0), "f_10", ((((-1, 0),), "I_135"), (((0, 1),), "I_45"))),
    ((1, 1), "f_11", ((((-1, 0),), "I_135"), (((0, -1),), "I_-135"))),
)

N1_ALGORITHM_GOLDEN = (
    ((0, 0), "f_00", ((((1, 1),), "I_x"), (((1, 1),), "I_x"))),
    ((0, 1), "f_01", ((((1, 1),), "I_x"), (((1, -1),), "I_-y"))),
    ((1, 0), "f_10", ((((1, 1),), "I_x"), (((-1, 1),), "I_y"))),
    ((1, 1), "f_11", ((((1, 1),), "I_x"), (((-1, -1),), "I_-x"))),
)

N2_BASIS_GOLDEN = (
    (
        (0, 0, 0),
        "f_0000",
        (
            (((1, 0), (1, 0)), None),
            (((1, 0), (0, 1)), None),
            (((0, 1), (1, 0)), None),
            (((0, 1), (0, 1)), None),
        ),
    ),
    (
        (0, 0, 1),
        "f_0101",
        (
            (((1, 0), (1, 0)), None),
            (((1, 0), (0, -1)), None),
            (((0, 1), (1, 0)), None),
            (((0, 1), (0, -1)), None),
        ),
    ),
    (
        (0, 1, 0),
        "f_0011",
        (
            (((1, 0), (1, 0)), None),
            (((1, 0), (0, 1)), None),
            (((0, -1), (1, 0)), None),
            (((0, -1), (0, 1)), None),
        ),
    ),
    (
        (0, 1, 1),
        "f_0110",
        (
            (((1, 0), (1, 0)), None),
            (((1, 0), (0, -1)), None),
            (((0, -1), (1, 0)), None),
            (((0, -1), (0, -1)), None),
        ),
    ),
    (
        (1, 0, 0),
        "f_1100",
        (
            (((-1, 0), (1, 0)), None),
            (((-1, 0), (0, 1)), None),
            (((0, 1), (1, 0)), None),
            (((0, 1), (0, 1)), None),
        ),
    ),
    (
        (1, 0, 1),
        "f_1001",
        (
            (((-1, 0), (1, 0)), None),
            (((-1, 0), (0, -1)), None),
            (((0, 1), (1, 0)), None),
            (((0, 1), (0, -1)), None),
        ),
    ),
    (
        (1, 1, 0),
        "f_1111",
        (
            (((-1, 0), (1, 0)), None),
            (((-1, 0), (0, 1)), None),
            (((0, -1), (1, 0)), None),
            (((0, -1), (0, 1)), None),
        ),
    ),
    (
        (1, 1, 1),
        "f_1010",
        (
            (((-1, 0), (1, 0)), None),
            (((-1, 0), (0, -1)), None),
            (((0, -1), (1, 0)), None),
            (((0, -1), (0, -1)), None),
        ),
    ),
)

N2_ALGORITHM_GOLDEN = (
    ((0, 0, 0), "f_0000", ((((1, 1), (1, 1)), None),)),
    ((0, 0, 1), "f_0101", ((((1, 1), (1, -1)), None),)),
    ((0, 1, 0), "f_0011", ((((1, -1), (1, 1)), None),)),
    ((0, 1, 1), "f_0110", ((((1, -1), (1, -1)), None),)),
    ((1, 0, 0), "f_1100", ((((-1, 1), (1, 1)), None),)),
    ((1, 0, 1), "f_1001", ((((-1, 1), (1, -1)), None),)),
    ((1, 1, 0), "f_1111", ((((-1, -1), (1, 1)), None),)),
    ((1, 1, 1), "f_1010", ((((-1, -1), (1, -1)), None),)),
)

_GOLDEN_DATA = {
    "n1-basis": N1_BASIS_GOLDEN,
    "n1-algorithm": N1_ALGORITHM_GOLDEN,
    "n2-basis": N2_BASIS_GOLDEN,
    "n2-algorithm": N2_ALGORITHM_GOLDEN,
}

_DEFAULT_SPECIES = (SpinSpecies("s1", 0.0, 0.5), SpinSpecies("s2", 1500.0, 0.5))


def _n1_param_rows() -> tuple[BlackBoxParams, ...]:
    return tuple(BlackBoxParams(1, a, b) for a in (0, 1) for b in (0, 1))


def _n2_param_rows() -> tuple[BlackBoxParams, ...]:
    return tuple(
        BlackBoxParams(2, a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)
    )


def _single_cell(m: Magnetisation) -> Cell:
    return Cell((snap_bit(readout(m)),), direction_label(m))


def generate_n1_basis(species: Sequence[SpinSpecies] = _DEFAULT_SPECIES) -> Table:
    """Black-box action on both basis bits, via ideal pulses on species 1."""
    rows = []
    for p in _n1_param_rows():
        cells = []
        for z in BASIS_BITS:
            seq = PulseSequence(blackbox_pulses(p, species[:1]) + (Acquire(),), "ideal")
            final = run_sequence(species[:1], {species[0].label: embed(z)}, seq)
            cells.append(_single_cell(final[species[0].label]))
        rows.append(Row((p.a, p.b), truth_table_from_params(p).label, tuple(cells)))
    return Table("n1-basis", _TABLE_TITLES["n1-basis"], tuple(rows))


def generate_n1_algorithm(species: Sequence[SpinSpecies] = _DEFAULT_SPECIES) -> Table:
    """Computation from I_z: state after preparation and after the black box."""
    label = species[0].label
    prep_seq = PulseSequence((SelectivePulse(label, math.pi / 2, 90.0), Acquire()), "ideal")
    rows = []
    for p in _n1_param_rows():
        prep = run_sequence(species[:1], None, prep_seq)[label]
        full = run_sequence(species[:1], None, compile_blackbox(p, "ideal", species[:1]))
        cells = (_single_cell(prep), _single_cell(full[label]))
        rows.append(Row((p.a, p.b), truth_table_from_params(p).label, cells))
    return Table("n1-algorithm", _TABLE_TITLES["n1-algorithm"], tuple(rows))


def generate_n2_basis(species: Sequence[SpinSpecies] = _DEFAULT_SPECIES) -> Table:
    """Black-box action on all four basis-bit pairs, via ideal pulses."""
    labels = (species[0].label, species[1].label)
    rows = []
    for p in _n2_param_rows():
        cells = []
        for z1 in BASIS_BITS:
            for z2 in BASIS_BITS:
                seq = PulseSequence(blackbox_pulses(p, species[:2]) + (Acquire(),), "ideal")
                initial = {labels[0]: embed(z1), labels[1]: embed(z2)}
                final = run_sequence(species[:2], initial, seq)
                pair = (
                    snap_bit(readout(final[labels[0]])),
                    snap_bit(readout(final[labels[1]])),
                )
                cells.append(Cell(pair))
        rows.append(Row((p.a, p.b, p.c), truth_table_from_params(p).label, tuple(cells)))
    return Table("n2-basis", _TABLE_TITLES["n2-basis"], tuple(rows))


def generate_n2_algorithm(species: Sequence[SpinSpecies] = _DEFAULT_SPECIES) -> Table:
    """Full n=2 computation from (I_z, I_z) in ideal mode, final pair only."""
    labels = (species[0].label, species[1].label)
    rows = []
    for p in _n2_param_rows():
        final = run_sequence(species[:2], None, compile_blackbox(p, "ideal", species[:2]))
        pair = (snap_bit(readout(final[labels[0]])), snap_bit(readout(final[labels[1]])))
        rows.append(
            Row((p.a, p.b, p.c), truth_table_from_params(p).label, (Cell(pair),))
        )
    return Table("n2-algorithm", _TABLE_TITLES["n2-algorithm"], tuple(rows))


_GENERATORS = {
    "n1-basis": generate_n1_basis,
    "n1-algorithm": generate_n1_algorithm,
    "n2-basis": generate_n2_basis,
    "n2-algorithm": generate_n2_algorithm,
}


def generate_table(name: str, species: Sequence[SpinSpecies] = _DEFAULT_SPECIES) -> Table:
    if name not in _GENERATORS:
        raise ValueError(f"unknown table {name!r}; choose from {TABLE_NAMES}")
    return _GENERATORS[name](species)


def golden_table(name: str) -> Table:
    """The embedded reference copy of a table."""
    if name not in _GOLDEN_DATA:
        raise ValueError(f"unknown table {name!r}; choose from {TABLE_NAMES}")
    rows = tuple(
        Row(
            tuple(params),
            function,
            tuple(Cell(tuple(tuple(b) for b in bits), direction) for bits, direction in cells),
        )
        for params, function, cells in _GOLDEN_DATA[name]
    )
    return Table(name, _TABLE_TITLES[name], rows)


def check_table(name: str, species: Sequence[SpinSpecies] = _DEFAULT_SPECIES) -> int:
    """Compare a regenerated table against its golden copy, cell by cell.

    Returns the number of verified cells; raises GoldenMismatch naming the
    first differing cell.
    """
    generated = generate_table(name, species)
    golden = golden_table(name)
    if len(generated.rows) != len(golden.rows):
        raise GoldenMismatch(f"{name}: row count {len(generated.rows)} != {len(golden.rows)}")
    for row_gen, row_gold in zip(generated.rows, golden.rows):
        if row_gen.params != row_gold.params or row_gen.function != row_gold.function:
            raise GoldenMismatch(
                f"{name}: row header {row_gen.params} {row_gen.function} !="
                f" {row_gold.params} {row_gold.function}"
            )
        for col, (got, expected) in enumerate(zip(row_gen.cells, row_gold.cells)):
            if got != expected:
                raise GoldenMismatch(
                    f"{name}: row {''.join(map(str, row_gold.params))} column {col}:"
                    f" got {got.render()}, expected {expected.render()}"
                )
    return generated.cell_count


def check_all(species: Sequence[SpinSpecies] = _DEFAULT_SPECIES) -> dict[str, int]:
    """Check every table; mapping of table name to verified cell count."""
    return {name: check_table(name, species) for name in TABLE_NAMES}
