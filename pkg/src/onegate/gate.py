"""Truth-table gates: evaluation, restriction, GF(2) affine fitting, classification.

Bit conventions used throughout the package:

* Inputs and outputs are indexed from 0 in the API; ``x1`` in reports is index 0.
* Input ``i`` of an ``n``-input gate is bit ``n - 1 - i`` of the row index, so the
  first input is the most significant bit and rows ascend as binary numbers.
* Output ``c`` of an ``m``-output gate is bit ``m - 1 - c`` of the output word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DomainError, ParseError

MAX_WIDTH = 16

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")


def bit_of(word: int, index: int, width: int) -> int:
    """Value of position ``index`` (0 = most significant) in a ``width``-bit word."""
    return (word >> (width - 1 - index)) & 1


def word_from_bits(bits: Iterable[int]) -> int:
    w = 0
    for b in bits:
        w = (w << 1) | (b & 1)
    return w


def bits_of(word: int, width: int) -> tuple[int, ...]:
    return tuple((word >> (width - 1 - i)) & 1 for i in range(width))


def bitstring(word: int, width: int) -> str:
    return format(word, f"0{width}b") if width else ""


@dataclass(frozen=True)
class Gate:
    """An ``n``-input, ``m``-output binary gate stored as a full truth table.

    ``table[r]`` is the output word for input word ``r``.
    """

    name: str
    n_inputs: int
    n_outputs: int
    table: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n_inputs <= MAX_WIDTH:
            raise DomainError(f"n_inputs must be in 0..{MAX_WIDTH}, got {self.n_inputs}")
        if not 1 <= self.n_outputs <= MAX_WIDTH:
            raise DomainError(f"n_outputs must be in 1..{MAX_WIDTH}, got {self.n_outputs}")
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if len(self.table) != 1 << self.n_inputs:
            raise DomainError(
                f"table has {len(self.table)} rows, expected {1 << self.n_inputs}"
            )
        limit = 1 << self.n_outputs
        for r, v in enumerate(self.table):
            if not 0 <= v < limit:
                raise DomainError(f"row {r}: output word {v} does not fit in {self.n_outputs} bits")

    @property
    def n_rows(self) -> int:
        return len(self.table)

    def column(self, out: int) -> tuple[int, ...]:
        """Output ``out`` as a 0/1 column over all rows."""
        return self.columns[out]

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        shift = [self.n_outputs - 1 - c for c in range(self.n_outputs)]
        return tuple(tuple((v >> s) & 1 for v in self.table) for s in shift)

    def input_column(self, i: int) -> tuple[int, ...]:
        s = self.n_inputs - 1 - i
        return tuple((r >> s) & 1 for r in range(self.n_rows))

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __str__(self):
        return f"{self.name} ({self.n_inputs} in, {self.n_outputs} out)"


@dataclass(frozen=True)
class AffineForm:
    """``a0 ^ coeffs[0]*x1 ^ ... ^ coeffs[n-1]*xn`` over GF(2)."""

    a0: int
    coeffs: tuple[int, ...]

    def __call__(self, x: int) -> int:
        n = len(self.coeffs)
        v = self.a0
        for i, a in enumerate(self.coeffs):
            if a:
                v ^= (x >> (n - 1 - i)) & 1
        return v

    def column(self) -> tuple[int, ...]:
        return tuple(self(x) for x in range(1 << len(self.coeffs)))

    def __str__(self):
        terms = [f"x{i + 1}" for i, a in enumerate(self.coeffs) if a]
        if self.a0 or not terms:
            terms.insert(0, str(self.a0))
        return " + ".join(terms)


@dataclass(frozen=True)
class GateClass:
    affine: bool
    injective: bool
    one_to_one: bool
    wire_permutation: bool
    balanced_columns: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "affine": self.affine,
            "injective": self.injective,
            "one_to_one": self.one_to_one,
            "wire_permutation": self.wire_permutation,
            "balanced_columns": self.balanced_columns,
        }


@dataclass(frozen=True)
class Restriction:
    """Some inputs pinned to constants; ``free`` lists the rest in input order."""

    fixed: Mapping[int, int]
    free: tuple[int, ...]

    @classmethod
    def fixing(cls, n_inputs: int, fixed: Mapping[int, int]) -> "Restriction":
        fixed = {int(i): int(b) for i, b in sorted(fixed.items())}
        free = tuple(i for i in range(n_inputs) if i not in fixed)
        return cls(fixed, free)

    @property
    def n_inputs(self) -> int:
        return len(self.fixed) + len(self.free)

    def validate(self, n_inputs: int) -> None:
        if set(self.fixed) & set(self.free):
            raise DomainError("an input is both fixed and free")
        if set(self.fixed) | set(self.free) != set(range(n_inputs)):
            raise DomainError(f"restriction does not partition inputs 0..{n_inputs - 1}")
        if not self.free:
            raise DomainError("restriction leaves no free input")
        if list(self.free) != sorted(self.free):
            raise DomainError("free inputs must be listed in ascending order")
        if any(b not in (0, 1) for b in self.fixed.values()):
            raise DomainError("fixed values must be bits")

    def merge(self, w: int) -> int:
        """Full input word for free-input word ``w`` (first free input is the MSB)."""
        n = self.n_inputs
        k = len(self.free)
        x = 0
        for i, b in self.fixed.items():
            if b:
                x |= 1 << (n - 1 - i)
        for pos, i in enumerate(self.free):
            if (w >> (k - 1 - pos)) & 1:
                x |= 1 << (n - 1 - i)
        return x

    def describe(self) -> str:
        return " ".join(f"x{i + 1}={b}" for i, b in self.fixed.items()) or "(none)"


def evaluate(g: Gate, x: int) -> int:
    if not 0 <= x < g.n_rows:
        raise DomainError(f"input word {x} out of range for {g.n_inputs}-input gate")
    return g.table[x]


def restrict(g: Gate, r: Restriction, out: int) -> tuple[int, ...]:
    """Single-output column of ``g`` over the free inputs of ``r``."""
    if not 0 <= out < g.n_outputs:
        raise DomainError(f"output index {out} out of range")
    r.validate(g.n_inputs)
    shift = g.n_outputs - 1 - out
    return tuple((g.table[r.merge(w)] >> shift) & 1 for w in range(1 << len(r.free)))


def fit_affine(col: Sequence[int]) -> AffineForm | None:
    """Exact affine form reproducing ``col``, or ``None`` when there is none.

    The candidate is read off the basis rows (row 0 and the single-bit rows)
    and then checked on every row.
    """
    size = len(col)
    if size == 0 or size & (size - 1):
        raise DomainError(f"column length {size} is not a power of two")
    j = size.bit_length() - 1
    a0 = col[0] & 1
    coeffs = tuple((col[1 << (j - 1 - i)] & 1) ^ a0 for i in range(j))
    mask = 0
    for i, a in enumerate(coeffs):
        if a:
            mask |= 1 << (j - 1 - i)
    for x in range(size):
        if (col[x] & 1) != a0 ^ (bin(x & mask).count("1") & 1):
            return None
    return AffineForm(a0, coeffs)


def classify(g: Gate) -> GateClass:
    cols = g.columns
    affine = all(fit_affine(c) is not None for c in cols)
    injective = len(set(g.table)) == g.n_rows
    one_to_one = injective and g.n_inputs == g.n_outputs
    half = g.n_rows // 2
    balanced = g.n_inputs > 0 and all(sum(c) == half for c in cols)
    inputs = {g.input_column(i) for i in range(g.n_inputs)}
    wire_perm = all(c in inputs for c in cols)
    return GateClass(affine, injective, one_to_one, wire_perm, balanced)


# ---------------------------------------------------------------- .tt files

def parse_truth_table(text: str) -> Gate:
    """Parse the ``.tt`` format::

        gate fredkin
        inputs 3
        outputs 3
        000
        ...
    """
    header: dict[str, tuple[str, int]] = {}
    rows: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if len(header) < 3:
            parts = line.split()
            key = ("gate", "inputs", "outputs")[len(header)]
            if len(parts) != 2 or parts[0] != key:
                raise ParseError(f"expected '{key} <value>', got {line!r}", lineno)
            header[key] = (parts[1], lineno)
            continue
        rows.append((line, lineno))
    if len(header) < 3:
        raise ParseError("truncated header (need gate, inputs, outputs)", len(text.splitlines()))

    name, ln = header["gate"]
    if not _IDENT.match(name):
        raise ParseError(f"bad gate identifier {name!r}", ln)
    n = _header_int(*header["inputs"], lo=0)
    m = _header_int(*header["outputs"], lo=1)

    if len(rows) != 1 << n:
        where = rows[-1][1] if rows else header["outputs"][1]
        raise ParseError(f"expected {1 << n} rows for {n} inputs, got {len(rows)}", where)
    table = []
    for line, lineno in rows:
        if len(line) != m:
            raise ParseError(f"row {line!r} has width {len(line)}, expected {m}", lineno)
        if set(line) - {"0", "1"}:
            raise ParseError(f"row {line!r} contains non-binary characters", lineno)
        table.append(int(line, 2))
    return Gate(name, n, m, tuple(table))


def _header_int(value: str, lineno: int, lo: int) -> int:
    try:
        v = int(value)
    except ValueError:
        raise ParseError(f"expected an integer, got {value!r}", lineno) from None
    if not lo <= v <= MAX_WIDTH:
        raise ParseError(f"value {v} outside {lo}..{MAX_WIDTH}", lineno)
    return v


def format_truth_table(g: Gate) -> str:
    lines = [f"gate {g.name}", f"inputs {g.n_inputs}", f"outputs {g.n_outputs}"]
    lines += [bitstring(v, g.n_outputs) for v in g.table]
    return "\n".join(lines) + "\n"


def load_gate(path) -> Gate:
    with open(path, encoding="utf-8") as fh:
        return parse_truth_table(fh.read())


# ------------------------------------------------------------ stock gates

def gate_from_function(name: str, n: int, m: int, fn: Callable[..., Sequence[int]]) -> Gate:
    """Tabulate ``fn(*input_bits) -> output bits``."""
    table = [word_from_bits(fn(*bits_of(x, n))) for x in range(1 << n)]
    return Gate(name, n, m, tuple(table))


def fredkin() -> Gate:
    return gate_from_function(
        "fredkin", 3, 3, lambda x, y, z: (x, z, y) if x else (x, y, z)
    )


def toffoli() -> Gate:
    return gate_from_function("toffoli", 3, 3, lambda x, y, z: (x, y, z ^ (x & y)))


def cnot() -> Gate:
    return gate_from_function("cnot", 2, 2, lambda x, y: (x, x ^ y))


def swap() -> Gate:
    return gate_from_function("swap", 2, 2, lambda x, y: (y, x))


def and_gate() -> Gate:
    return gate_from_function("and", 2, 1, lambda x, y: (x & y,))


def or_gate() -> Gate:
    return gate_from_function("or", 2, 1, lambda x, y: (x | y,))


def not_gate() -> Gate:
    return gate_from_function("not", 1, 1, lambda x: (1 - x,))


def identity(n: int = 1) -> Gate:
    return Gate(f"id{n}", n, n, tuple(range(1 << n)))


STOCK_GATES: dict[str, Callable[[], Gate]] = {
    "fredkin": fredkin,
    "toffoli": toffoli,
    "cnot": cnot,
    "swap": swap,
    "and": and_gate,
    "or": or_gate,
    "not": not_gate,
}
