"""Building NOT, AND, OR and fan-out gadgets out of copies of a single gate.

Every search here is exhaustive over pin fixings and deterministic: when several
fixings work, the first one in a fixed enumeration order wins, so the same gate
always produces the same kit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .circuit import Circuit, CircuitBuilder, check_equivalence, instantiate_gadget
from .errors import (
    ClassificationError,
    CoreNotNonAffine,
    EquivalenceFailure,
    NoFanoutError,
    TrivialGateError,
)
from .gate import Gate, Restriction, bit_of, classify, restrict, word_from_bits

NOT, AND, OR, FANOUT = "NOT", "AND", "OR", "FANOUT"
KINDS = (NOT, AND, OR, FANOUT)

DEFINING_TABLES = {
    NOT: Gate("not", 1, 1, (1, 0)),
    AND: Gate("and", 2, 1, (0, 0, 0, 1)),
    OR: Gate("or", 2, 1, (0, 1, 1, 1)),
    FANOUT: Gate("fanout", 1, 2, (0b00, 0b11)),
}

_PORTS = {
    NOT: (("a",), ("y",)),
    AND: (("a", "b"), ("y",)),
    OR: (("a", "b"), ("y",)),
    FANOUT: (("a",), ("y0", "y1")),
}

# Each non-affine 2-input function f, keyed by its column over rows 00,01,10,11,
# is o ^ ((x ^ p) & (y ^ q)) for exactly one (o, p, q).
NONAFFINE_2 = {
    0b0001: (0, 0, 0),  # x & y
    0b0010: (0, 0, 1),  # x & ~y
    0b0100: (0, 1, 0),  # ~x & y
    0b1000: (0, 1, 1),  # ~x & ~y
    0b1110: (1, 0, 0),  # ~(x & y)
    0b1101: (1, 0, 1),  # ~x | y
    0b1011: (1, 1, 0),  # x | ~y
    0b0111: (1, 1, 1),  # x | y
}


def inversions_for(column_key: int, target: str) -> tuple[int, int, int]:
    """NOT placements ``(first input, second input, output)`` turning the
    restricted function into ``target`` (AND or OR)."""
    try:
        o, p, q = NONAFFINE_2[column_key]
    except KeyError:
        raise CoreNotNonAffine(f"2-input function {column_key:04b} is affine") from None
    if target == AND:
        return p, q, o
    if target == OR:
        return 1 - p, 1 - q, 1 - o
    raise ValueError(f"target must be AND or OR, not {target!r}")


@dataclass(frozen=True)
class PinBinding:
    """Which pins of one gate copy are constants and which carry the gadget's signals."""

    gate: Gate
    fixed: Mapping[int, int]
    role_inputs: tuple[int, ...]
    role_outputs: tuple[int, ...]
    output_inverted: tuple[int, ...] = ()
    input_inverted: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.output_inverted:
            object.__setattr__(self, "output_inverted", (0,) * len(self.role_outputs))
        if not self.input_inverted:
            object.__setattr__(self, "input_inverted", (0,) * len(self.role_inputs))
        n = self.gate.n_inputs
        if sorted(list(self.fixed) + list(self.role_inputs)) != list(range(n)):
            raise ValueError("fixed pins and role inputs must partition the gate inputs")
        if len(set(self.role_outputs)) != len(self.role_outputs):
            raise ValueError("role outputs must be distinct")

    @property
    def restriction(self) -> Restriction:
        return Restriction.fixing(self.gate.n_inputs, self.fixed)

    @property
    def not_count(self) -> int:
        return sum(self.input_inverted) + sum(self.output_inverted)

    def describe(self) -> str:
        fix = " ".join(f"x{i + 1}={b}" for i, b in sorted(self.fixed.items())) or "-"
        ins = " ".join(
            ("~" if inv else "") + f"x{i + 1}" for i, inv in zip(self.role_inputs, self.input_inverted)
        )
        outs = " ".join(
            ("~" if inv else "") + f"x{c + 1}'" for c, inv in zip(self.role_outputs, self.output_inverted)
        )
        return f"fix {fix}; in {ins}; out {outs}"

    def as_dict(self) -> dict:
        return {
            "fixed": {f"x{i + 1}": b for i, b in sorted(self.fixed.items())},
            "role_inputs": [f"x{i + 1}" for i in self.role_inputs],
            "input_inverted": list(self.input_inverted),
            "role_outputs": [f"x{c + 1}'" for c in self.role_outputs],
            "output_inverted": list(self.output_inverted),
        }


@dataclass(frozen=True)
class Gadget:
    kind: str
    circuit: Circuit
    binding: PinBinding | None = None
    source: Gate | None = None

    @property
    def arity(self) -> tuple[int, int]:
        return self.circuit.n_inputs, self.circuit.n_outputs

    @property
    def garbage_count(self) -> int:
        return len(self.circuit.garbage)

    @property
    def copies(self) -> int:
        return len(self.circuit.instances)

    def verify(self) -> "Gadget":
        ref = DEFINING_TABLES[self.kind]
        if self.arity != (ref.n_inputs, ref.n_outputs):
            raise EquivalenceFailure(f"{self.kind} gadget has arity {self.arity}")
        ok, cex = check_equivalence(self.circuit, ref)
        if not ok:
            raise EquivalenceFailure(f"{self.kind} gadget fails on input {cex}", cex)
        if self.source is not None and self.circuit.gate_types() - {self.source}:
            raise EquivalenceFailure(f"{self.kind} gadget uses a foreign gate type")
        return self


@dataclass(frozen=True)
class BasisKit:
    not_g: Gadget
    and_g: Gadget
    or_g: Gadget
    fanout_g: Gadget
    source: Gate
    external_not: bool = False

    def gadgets(self) -> dict[str, Gadget]:
        return {NOT: self.not_g, AND: self.and_g, OR: self.or_g, FANOUT: self.fanout_g}

    def __getitem__(self, kind: str) -> Gadget:
        return self.gadgets()[kind]

    @property
    def report(self) -> dict[str, int]:
        """Source-gate copies per gadget."""
        return {k: g.circuit.copies_of(self.source) for k, g in self.gadgets().items()}

    def as_dict(self) -> dict:
        g = self.source
        return {
            "gate": g.name,
            "inputs": g.n_inputs,
            "outputs": g.n_outputs,
            "external_not": self.external_not,
            "gadgets": {
                k: {
                    "binding": gd.binding.as_dict() if gd.binding else None,
                    "gate_copies": gd.circuit.copies_of(g),
                    "instances": gd.copies,
                    "constants": len(gd.circuit.constants),
                    "garbage": gd.garbage_count,
                }
                for k, gd in self.gadgets().items()
            },
        }

    def report_text(self) -> str:
        g = self.source
        lines = [f"basis kit for {g.name} ({g.n_inputs} inputs, {g.n_outputs} outputs)"]
        if self.external_not:
            lines.append("NOT supplied externally")
        for kind, gd in self.gadgets().items():
            binding = gd.binding.describe() if gd.binding else "external"
            lines.append(
                f"{kind:<6} copies={gd.circuit.copies_of(g)} garbage={gd.garbage_count} "
                f"constants={len(gd.circuit.constants)}  {binding}"
            )
        return "\n".join(lines) + "\n"


# ------------------------------------------------------------ enumeration

@lru_cache(maxsize=None)
def single_free_restrictions(n: int) -> tuple[Restriction, ...]:
    """All restrictions leaving exactly one input free.

    Ordered lexicographically by pattern over ``0 < 1 < free``: read each
    restriction as a word of ``0``, ``1`` and ``-`` in input order, ``-``
    sorting last.
    """
    out = []
    for j in range(n):
        others = [i for i in range(n) if i != j]
        for w in range(1 << (n - 1)):
            fixed = {i: bit_of(w, pos, n - 1) for pos, i in enumerate(others)}
            key = tuple(2 if i == j else fixed[i] for i in range(n))
            out.append((key, Restriction(fixed, (j,))))
    out.sort(key=lambda t: t[0])
    return tuple(r for _, r in out)


def _endpoints(g: Gate, r: Restriction) -> tuple[int, int]:
    return g.table[r.merge(0)], g.table[r.merge(1)]


def find_two_input_core(g: Gate, target: str | None = AND) -> tuple[Restriction, int] | None:
    """Fix all but two inputs so that one output becomes a non-affine 2-input function.

    Candidates are enumerated by (input pair, fixing word of the others, output).
    With ``target`` set, the candidate needing the fewest NOT gadgets to become
    ``target`` wins, ties going to the earliest; ``target=None`` returns the
    earliest candidate outright. ``None`` is returned iff ``g`` is affine.
    """
    n = g.n_inputs
    if n < 2:
        return None
    best = None
    for i in range(n):
        for k in range(i + 1, n):
            others = [t for t in range(n) if t not in (i, k)]
            for w in range(1 << (n - 2)):
                r = Restriction({t: bit_of(w, pos, n - 2) for pos, t in enumerate(others)}, (i, k))
                for c in range(g.n_outputs):
                    key = word_from_bits(restrict(g, r, c))
                    if key not in NONAFFINE_2:
                        continue
                    if target is None:
                        return r, c
                    cost = sum(inversions_for(key, target))
                    if best is None or cost < best[0]:
                        best = (cost, r, c)
                        if cost == 0:
                            return r, c
    return None if best is None else (best[1], best[2])


# ------------------------------------------------------------ construction

def _build(kind: str, binding: PinBinding, not_g: Gadget | None) -> Gadget:
    ins, outs = _PORTS[kind]
    b = CircuitBuilder(ins)
    wires = list(ins)
    for pos, inv in enumerate(binding.input_inverted):
        if inv:
            (wires[pos],) = instantiate_gadget(b, not_g, [wires[pos]])
    pins = []
    role = dict(zip(binding.role_inputs, wires))
    for i in range(binding.gate.n_inputs):
        pins.append(role[i] if i in role else b.const(binding.fixed[i]))
    gate_outs = b.add(binding.gate, pins)
    b.mark_garbage(net for c, net in enumerate(gate_outs) if c not in binding.role_outputs)
    result = []
    for c, inv in zip(binding.role_outputs, binding.output_inverted):
        net = gate_outs[c]
        if inv:
            (net,) = instantiate_gadget(b, not_g, [net])
        result.append(net)
    circuit = b.build(result, names=outs)
    source = binding.gate if not_g is None or not_g.source == binding.gate else None
    return Gadget(kind, circuit, binding, source).verify()


def extract_not(g: Gate) -> Gadget:
    """One gate copy with all but one input pinned so that some output is NOT of it."""
    for r in single_free_restrictions(g.n_inputs):
        w0, w1 = _endpoints(g, r)
        m = g.n_outputs
        for c in range(m):
            if bit_of(w0, c, m) == 1 and bit_of(w1, c, m) == 0:
                binding = PinBinding(g, r.fixed, r.free, (c,))
                return _build(NOT, binding, None)
    raise TrivialGateError(f"{g.name}: no fixing makes any output the complement of an input")


def fanout_candidates(g: Gate):
    """Yield ``(restriction, [(output, inverted), ...])`` for every single-free
    restriction under which at least two outputs follow the free input."""
    m = g.n_outputs
    for r in single_free_restrictions(g.n_inputs):
        w0, w1 = _endpoints(g, r)
        legs = [(c, bit_of(w0, c, m)) for c in range(m) if bit_of(w0 ^ w1, c, m)]
        if len(legs) >= 2:
            yield r, legs


def extract_fanout(g: Gate, not_g: Gadget | None) -> Gadget:
    """One gate copy copying a free input onto two outputs; complemented legs get a NOT."""
    for r, legs in fanout_candidates(g):
        # fewest inverted legs, then lowest output indices
        (c1, i1), (c2, i2) = sorted(
            ((a, b) for a in legs for b in legs if a[0] < b[0]),
            key=lambda pair: (pair[0][1] + pair[1][1], pair[0][0], pair[1][0]),
        )[0]
        if (i1 or i2) and not_g is None:
            continue
        binding = PinBinding(g, r.fixed, r.free, (c1, c2), (i1, i2))
        return _build(FANOUT, binding, not_g)
    raise NoFanoutError(f"{g.name}: no fixing makes two outputs follow one input")


def _realize(g: Gate, core: Restriction, out: int, not_g: Gadget, target: str) -> Gadget:
    key = word_from_bits(restrict(g, core, out))
    p, q, o = inversions_for(key, target)
    binding = PinBinding(g, core.fixed, core.free, (out,), (o,), (p, q))
    return _build(target, binding, not_g)


def derive_and_or(g: Gate, core: Restriction, out: int, not_g: Gadget) -> tuple[Gadget, Gadget]:
    """AND and OR gadgets from one non-affine 2-input restriction plus NOT gadgets."""
    if len(core.free) != 2:
        raise CoreNotNonAffine("core restriction must leave exactly two inputs free")
    return _realize(g, core, out, not_g, AND), _realize(g, core, out, not_g, OR)


def extract_basis(g: Gate, external_not: Gadget | None = None) -> BasisKit:
    """Complete, verified {NOT, AND, OR, FANOUT} kit built from copies of ``g``.

    ``g`` must be non-affine and one-to-one. Passing ``external_not`` relaxes the
    second requirement to injectivity, with the given NOT gadget used wherever a
    NOT is needed.
    """
    cls = classify(g)
    if cls.affine:
        raise ClassificationError("affine", g.name)
    if cls.one_to_one:
        not_g = extract_not(g)
    elif external_not is None:
        raise ClassificationError("not_one_to_one", g.name)
    elif not cls.injective:
        raise ClassificationError("not_injective", g.name)
    else:
        not_g = external_not.verify()

    fanout_g = extract_fanout(g, not_g)
    and_core = find_two_input_core(g, AND)
    or_core = find_two_input_core(g, OR)
    # non-affinity guarantees a core
    assert and_core is not None and or_core is not None
    and_g = _realize(g, *and_core, not_g, AND)
    or_g = _realize(g, *or_core, not_g, OR)
    kit = BasisKit(not_g, and_g, or_g, fanout_g, g, external_not=not cls.one_to_one)
    for gadget in kit.gadgets().values():
        gadget.verify()
    return kit
