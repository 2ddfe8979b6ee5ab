"""Two-dimensional classical bits and the single-query function classifier.

A complex bit is a real pair (a, b) standing for the complex number a + b*i.
The basis bits are (1, 0) for classical 0 and (0, 1) for classical 1.  A black
box hiding a promise function (constant or balanced) acts on complex bits by
flipping component signs, and a single call with input 1 + i is enough to
classify the function and, unlike the unitary formulation, to recover its full
truth table.

Amplitudes are kept un-normalised throughout; classification depends only on
direction and sign.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .errors import ArityMismatch, PromiseViolation


@dataclass(frozen=True)
class ComplexBit:
    """The pair (a, b) representing a + b*i."""

    a: float
    b: float

    def __add__(self, other: "ComplexBit") -> "ComplexBit":
        return ComplexBit(self.a + other.a, self.b + other.b)

    def __rmul__(self, scalar: float) -> "ComplexBit":
        return ComplexBit(scalar * self.a, scalar * self.b)

    def __neg__(self) -> "ComplexBit":
        return ComplexBit(-self.a, -self.b)

    def as_complex(self) -> complex:
        return complex(self.a, self.b)

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexBit":
        return cls(z.real, z.imag)


#: The algorithm input z = 1 + i fed to every black-box component.
COMPUTATION_INPUT = ComplexBit(1.0, 1.0)


@dataclass(frozen=True)
class TruthTable:
    """Outputs of f: {0,1}^n -> {0,1}, indexed by input in lexicographic order.

    ``values[k]`` is f applied to the n-bit string with integer value k, so a
    two-argument table reads (f(00), f(01), f(10), f(11)).
    """

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        size = len(values)
        if size < 2 or size & (size - 1):
            raise ValueError(f"truth table length must be a power of two >= 2, got {size}")
        if any(v not in (0, 1) for v in values):
            raise ValueError(f"truth table values must be bits, got {values}")

    @classmethod
    def from_bits(cls, bits: str) -> "TruthTable":
        """Parse a bit string such as '0101' (f(00)=0, f(01)=1, ...)."""
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        return cls(tuple(int(c) for c in bits))

    @property
    def n(self) -> int:
        return len(self.values).bit_length() - 1

    def __call__(self, x: int | str) -> int:
        if isinstance(x, str):
            x = int(x, 2)
        return self.values[x]

    @property
    def is_constant(self) -> bool:
        return len(set(self.values)) == 1

    @property
    def is_balanced(self) -> bool:
        return sum(self.values) * 2 == len(self.values)

    @property
    def satisfies_promise(self) -> bool:
        return self.is_constant or self.is_balanced

    def require_promise(self) -> None:
        if not self.satisfies_promise:
            raise PromiseViolation(f"{self.label} is neither constant nor balanced")

    def complement(self) -> "TruthTable":
        return TruthTable(tuple(1 - v for v in self.values))

    @property
    def label(self) -> str:
        return "f_" + "".join(str(v) for v in self.values)

    @property
    def bits(self) -> str:
        return "".join(str(v) for v in self.values)


@dataclass(frozen=True)
class BlackBoxParams:
    """Control bits of a black box.

    n=1: a = f(0), b = f(1).
    n=2: a = f(00), b = f(10), c = f(10) xor f(11).  Under the promise this
    triple is in bijection with the eight admissible truth tables.
    """

    n: int
    a: int
    b: int
    c: int | None = None

    def __post_init__(self) -> None:
        if self.n not in (1, 2):
            raise ArityMismatch(f"black-box arity must be 1 or 2, got {self.n}")
        bits = (self.a, self.b) if self.n == 1 else (self.a, self.b, self.c)
        if (self.n == 2) != (self.c is not None):
            raise ArityMismatch("control bit c is required exactly when n = 2")
        if any(v not in (0, 1) for v in bits):
            raise ValueError(f"control parameters must be bits, got {bits}")

    @property
    def label(self) -> str:
        bits = f"{self.a}{self.b}" if self.n == 1 else f"{self.a}{self.b}{self.c}"
        return f"C_{bits}"


class Verdict(enum.Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


@dataclass(frozen=True)
class DJResult:
    """Outcome of one classification run: the verdict plus the recovered f.

    ``outputs`` carries the per-species final complex bits of whichever route
    produced the result; it is informational and excluded from equality.
    """

    verdict: Verdict
    truth_table: TruthTable
    params: BlackBoxParams
    outputs: tuple[ComplexBit, ...] = field(default=(), compare=False)


def params_from_truth_table(f: TruthTable) -> BlackBoxParams:
    """Derive the control bits of the black box hiding f."""
    f.require_promise()
    if f.n == 1:
        return BlackBoxParams(1, f(0), f(1))
    if f.n == 2:
        return BlackBoxParams(2, f(0), f(2), f(2) ^ f(3))
    raise ArityMismatch(f"black boxes exist for n = 1, 2 only, got n = {f.n}")


def truth_table_from_params(p: BlackBoxParams) -> TruthTable:
    """Invert params_from_truth_table.

    For n=2 the promise forces an even number of ones, so
    f(01) = f(00) xor f(10) xor f(11) = a xor c.
    """
    if p.n == 1:
        return TruthTable((p.a, p.b))
    assert p.c is not None
    return TruthTable((p.a, p.a ^ p.c, p.b, p.b ^ p.c))


def apply_blackbox_n1(p: BlackBoxParams, z: ComplexBit) -> ComplexBit:
    """One call of the arity-1 black box: (a, b) -> ((-1)^f(0) a, (-1)^f(1) b)."""
    if p.n != 1:
        raise ArityMismatch(f"expected n = 1 parameters, got n = {p.n}")
    return ComplexBit(-z.a if p.a else z.a, -z.b if p.b else z.b)


def apply_blackbox_n2(
    p: BlackBoxParams, z1: ComplexBit, z2: ComplexBit
) -> tuple[ComplexBit, ComplexBit]:
    """One call of the arity-2 black box.

    First component: ((-1)^a a1, (-1)^b b1).  Second: (a2, (-1)^c b2).
    The sign of b1 simplifies to (-1)^f(10) because the two f(00) factors in
    the defining product cancel.
    """
    if p.n != 2:
        raise ArityMismatch(f"expected n = 2 parameters, got n = {p.n}")
    out1 = ComplexBit(-z1.a if p.a else z1.a, -z1.b if p.b else z1.b)
    out2 = ComplexBit(z2.a, -z2.b if p.c else z2.b)
    return out1, out2


def project(z: ComplexBit) -> ComplexBit:
    """Multiply by (1 + i)/2, mapping algorithm outputs onto +-1 and +-i."""
    return ComplexBit((z.a - z.b) / 2.0, (z.a + z.b) / 2.0)


def _sign_bit(x: float) -> int:
    return 0 if x > 0 else 1


def run_dequantised(p: BlackBoxParams) -> DJResult:
    """Classify the hidden function with a single black-box call.

    Each component is fed z = 1 + i and the output projected; the function is
    constant exactly when every projected output is imaginary.  Signs and
    directions of the outputs recover the full truth table:

      n=1: the sign of the nonzero component gives f(0); a real output means
           f(0) != f(1).
      n=2: first output imaginary means f(00) = f(10), its sign gives f(00);
           second output imaginary means f(10) = f(11).
    """
    if p.n == 1:
        out = project(apply_blackbox_n1(p, COMPUTATION_INPUT))
        f0 = _sign_bit(out.a + out.b)
        f0_xor_f1 = 1 if abs(out.a) > abs(out.b) else 0
        table = TruthTable((f0, f0 ^ f0_xor_f1))
        outputs = (out,)
    else:
        raw1, raw2 = apply_blackbox_n2(p, COMPUTATION_INPUT, COMPUTATION_INPUT)
        out1, out2 = project(raw1), project(raw2)
        a = _sign_bit(out1.a + out1.b)
        a_xor_b = 1 if abs(out1.a) > abs(out1.b) else 0
        c = 1 if abs(out2.a) > abs(out2.b) else 0
        table = truth_table_from_params(BlackBoxParams(2, a, a ^ a_xor_b, c))
        outputs = (out1, out2)
    verdict = Verdict.CONSTANT if table.is_constant else Verdict.BALANCED
    return DJResult(verdict, table, params_from_truth_table(table), outputs)


def promise_functions(n: int) -> tuple[TruthTable, ...]:
    """All constant and balanced truth tables of arity n, lexicographically.

    Intended for small n; the balanced count grows as C(2^n, 2^(n-1)).
    """
    size = 2**n
    tables = [TruthTable((0,) * size), TruthTable((1,) * size)]
    for ones in itertools.combinations(range(size), size // 2):
        values = tuple(1 if k in ones else 0 for k in range(size))
        tables.append(TruthTable(values))
    return tuple(sorted(tables, key=lambda t: t.values))
