"""Combinational netlist IR over truth-table gates, with exhaustive simulation.

A circuit is a set of named nets. Each net has exactly one driver: a primary
input, a constant source, or one output pin of a gate instance. Nets are read
by gate-instance input pins and by primary outputs. Instance outputs that
nothing reads must be declared garbage.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    ArityMismatchError,
    CircuitError,
    CycleError,
    DanglingPinError,
    MultipleDriverError,
    TooWideError,
    UnusedOutputError,
)
from .gate import MAX_WIDTH, Gate


@dataclass(frozen=True)
class Instance:
    gate: Gate
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]


@dataclass(frozen=True)
class SimTrace:
    assignment: dict[str, int]

    def dump(self) -> str:
        return "".join(f"{net}={bit}\n" for net, bit in self.assignment.items())


@dataclass(frozen=True, eq=False)
class Circuit:
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    instances: tuple[Instance, ...] = ()
    constants: Mapping[str, int] = field(default_factory=dict)
    garbage: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "instances", tuple(self.instances))
        object.__setattr__(self, "constants", dict(self.constants))
        object.__setattr__(self, "garbage", tuple(self.garbage))
        object.__setattr__(self, "_order", self._validate())

    # -- validation -------------------------------------------------------

    def _validate(self) -> tuple[int, ...]:
        drivers: dict[str, object] = {}

        def drive(net, what):
            if net in drivers:
                raise MultipleDriverError(f"net {net!r} is driven more than once")
            drivers[net] = what

        for net in self.inputs:
            drive(net, "input")
        for net, bit in self.constants.items():
            if bit not in (0, 1):
                raise CircuitError(f"constant {net!r} has non-binary value {bit!r}")
            drive(net, "const")
        for k, inst in enumerate(self.instances):
            if len(inst.inputs) != inst.gate.n_inputs or len(inst.outputs) != inst.gate.n_outputs:
                raise ArityMismatchError(
                    f"instance {k} of {inst.gate.name} wired with "
                    f"{len(inst.inputs)}->{len(inst.outputs)} pins, gate is "
                    f"{inst.gate.n_inputs}->{inst.gate.n_outputs}"
                )
            for net in inst.outputs:
                drive(net, k)

        reads = Counter()
        for k, inst in enumerate(self.instances):
            for net in inst.inputs:
                if net not in drivers:
                    raise DanglingPinError(f"instance {k} ({inst.gate.name}) reads undriven net {net!r}")
                reads[net] += 1
        if len(set(self.outputs)) != len(self.outputs):
            raise MultipleDriverError("a net is listed as a primary output more than once")
        for net in self.outputs:
            if net not in drivers:
                raise DanglingPinError(f"primary output {net!r} is undriven")
            reads[net] += 1

        garbage = set(self.garbage)
        if len(garbage) != len(self.garbage):
            raise CircuitError("duplicate garbage declaration")
        for net in self.garbage:
            if not isinstance(drivers.get(net), int):
                raise CircuitError(f"garbage net {net!r} is not a gate-instance output")
            if reads[net]:
                raise CircuitError(f"garbage net {net!r} is also read")
        for k, inst in enumerate(self.instances):
            for net in inst.outputs:
                if not reads[net] and net not in garbage:
                    raise UnusedOutputError(
                        f"output {net!r} of instance {k} ({inst.gate.name}) is unconnected "
                        "and not declared garbage"
                    )

        # Kahn's algorithm over instances, stable in declaration order.
        deps = []
        users: dict[int, list[int]] = {k: [] for k in range(len(self.instances))}
        for k, inst in enumerate(self.instances):
            srcs = {drivers[net] for net in inst.inputs if isinstance(drivers[net], int)}
            deps.append(len(srcs))
            for s in srcs:
                users[s].append(k)
        ready = [k for k, d in enumerate(deps) if d == 0]
        order = []
        while ready:
            ready.sort()
            k = ready.pop(0)
            order.append(k)
            for u in users[k]:
                deps[u] -= 1
                if deps[u] == 0:
                    ready.append(u)
        if len(order) != len(self.instances):
            stuck = sorted(set(range(len(self.instances))) - set(order))
            raise CycleError(f"combinational cycle through instances {stuck}")
        return tuple(order)

    # -- queries ----------------------------------------------------------

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    @property
    def n_outputs(self) -> int:
        return len(self.outputs)

    @property
    def topological_order(self) -> tuple[int, ...]:
        return self._order

    def gate_types(self) -> set[Gate]:
        return {inst.gate for inst in self.instances}

    def copies_of(self, gate: Gate) -> int:
        return sum(1 for inst in self.instances if inst.gate == gate)

    def fanout_degrees(self) -> Counter:
        """How many pins (instance inputs plus primary outputs) read each net."""
        reads = Counter()
        for inst in self.instances:
            reads.update(inst.inputs)
        reads.update(self.outputs)
        return reads

    @cached_property
    def _program(self):
        slot = {net: i for i, net in enumerate(self.inputs)}
        for net in self.constants:
            slot[net] = len(slot)
        for inst in self.instances:
            for net in inst.outputs:
                slot[net] = len(slot)
        steps = []
        for k in self._order:
            inst = self.instances[k]
            steps.append((
                inst.gate.table,
                tuple(slot[n] for n in inst.inputs),
                tuple(slot[n] for n in inst.outputs),
            ))
        consts = tuple((slot[n], b) for n, b in self.constants.items())
        outs = tuple(slot[n] for n in self.outputs)
        return len(slot), consts, tuple(steps), outs, slot

    def __repr__(self):
        return (
            f"Circuit(inputs={list(self.inputs)}, outputs={list(self.outputs)}, "
            f"instances={len(self.instances)}, constants={len(self.constants)}, "
            f"garbage={len(self.garbage)})"
        )


def simulate(c: Circuit, x: int, trace: bool = False):
    """Evaluate ``c`` on input word ``x`` (first primary input is the MSB).

    Returns the output word, or ``(word, SimTrace)`` when ``trace`` is set.
    """
    n = c.n_inputs
    if not 0 <= x < (1 << n):
        raise ArityMismatchError(f"input word {x} does not fit {n} primary inputs")
    size, consts, steps, outs, slot = c._program
    v = [0] * size
    for i in range(n):
        v[i] = (x >> (n - 1 - i)) & 1
    for s, b in consts:
        v[s] = b
    for table, ins, outs_ in steps:
        r = 0
        for s in ins:
            r = (r << 1) | v[s]
        w = table[r]
        k = len(outs_)
        for pos, s in enumerate(outs_):
            v[s] = (w >> (k - 1 - pos)) & 1
    y = 0
    for s in outs:
        y = (y << 1) | v[s]
    if trace:
        return y, SimTrace({net: v[i] for net, i in slot.items()})
    return y


def truth_table_of(c: Circuit, name: str = "circuit") -> Gate:
    if c.n_inputs > MAX_WIDTH:
        raise TooWideError(f"{c.n_inputs} primary inputs exceed the cap of {MAX_WIDTH}")
    if c.n_outputs == 0:
        raise ArityMismatchError("circuit has no primary outputs")
    return Gate(name, c.n_inputs, c.n_outputs, tuple(simulate(c, x) for x in range(1 << c.n_inputs)))


def check_equivalence(a: Circuit, b: Circuit | Gate) -> tuple[bool, int | None]:
    """Exhaustive comparison; returns ``(equal, smallest differing input word)``."""
    if a.n_inputs > MAX_WIDTH:
        raise TooWideError(f"{a.n_inputs} primary inputs exceed the cap of {MAX_WIDTH}")
    if isinstance(b, Gate):
        nb, mb = b.n_inputs, b.n_outputs
        ref = b.table.__getitem__
    else:
        nb, mb = b.n_inputs, b.n_outputs
        ref = lambda x: simulate(b, x)  # noqa: E731
    if (a.n_inputs, a.n_outputs) != (nb, mb):
        raise ArityMismatchError(
            f"arity {a.n_inputs}->{a.n_outputs} does not match {nb}->{mb}"
        )
    for x in range(1 << a.n_inputs):
        if simulate(a, x) != ref(x):
            return False, x
    return True, None


class CircuitBuilder:
    """Incremental construction of a :class:`Circuit` with fresh net names."""

    def __init__(self, inputs: Sequence[str], reserved: Iterable[str] = ()):
        self.inputs = tuple(inputs)
        self.instances: list[Instance] = []
        self.constants: dict[str, int] = {}
        self.garbage: list[str] = []
        self._used = set(self.inputs) | set(reserved)
        self._counter = Counter()

    def fresh(self, hint: str = "n") -> str:
        while True:
            self._counter[hint] += 1
            name = f"{hint}{self._counter[hint]}"
            if name not in self._used:
                self._used.add(name)
                return name

    def const(self, bit: int) -> str:
        net = self.fresh("k")
        self.constants[net] = bit
        return net

    def add(self, gate: Gate, inputs: Sequence[str], outputs: Sequence[str] | None = None) -> tuple[str, ...]:
        if outputs is None:
            outputs = [self.fresh("n") for _ in range(gate.n_outputs)]
        self.instances.append(Instance(gate, tuple(inputs), tuple(outputs)))
        return tuple(outputs)

    def mark_garbage(self, nets: Iterable[str]) -> None:
        self.garbage.extend(nets)

    def splice(self, sub: Circuit, wires: Sequence[str]) -> tuple[str, ...]:
        """Copy ``sub`` into this circuit with its inputs bound to ``wires``."""
        if len(wires) != sub.n_inputs:
            raise ArityMismatchError(
                f"subcircuit takes {sub.n_inputs} inputs, got {len(wires)} wires"
            )
        rename = dict(zip(sub.inputs, wires))
        for net, bit in sub.constants.items():
            rename[net] = self.const(bit)
        for inst in sub.instances:
            for net in inst.outputs:
                rename[net] = self.fresh("n")
        for k in sub.topological_order:
            inst = sub.instances[k]
            self.instances.append(Instance(
                inst.gate,
                tuple(rename[n] for n in inst.inputs),
                tuple(rename[n] for n in inst.outputs),
            ))
        self.garbage.extend(rename[n] for n in sub.garbage)
        return tuple(rename[n] for n in sub.outputs)

    def build(self, outputs: Sequence[str], names: Sequence[str] | None = None) -> Circuit:
        """Finish the circuit; ``names`` optionally renames the output nets."""
        outputs = list(outputs)
        mapping: dict[str, str] = {}
        if names is not None:
            if len(names) != len(outputs):
                raise ArityMismatchError("output name count differs from output count")
            for net, name in zip(outputs, names):
                if net == name:
                    continue
                if net in self.inputs:
                    raise CircuitError(f"cannot rename primary input {net!r} to {name!r}")
                if net in mapping:
                    raise MultipleDriverError(f"net {net!r} requested under two output names")
                mapping[net] = name
        r = lambda n: mapping.get(n, n)  # noqa: E731
        return Circuit(
            inputs=self.inputs,
            outputs=tuple(r(n) for n in outputs),
            instances=tuple(
                Instance(i.gate, tuple(r(n) for n in i.inputs), tuple(r(n) for n in i.outputs))
                for i in self.instances
            ),
            constants={r(n): b for n, b in self.constants.items()},
            garbage=tuple(r(n) for n in self.garbage),
        )


def instantiate_gadget(builder: CircuitBuilder, gadget, wires: Sequence[str]) -> tuple[str, ...]:
    """Splice a fresh copy of ``gadget`` (a Gadget or bare Circuit) onto ``wires``."""
    sub = gadget if isinstance(gadget, Circuit) else gadget.circuit
    return builder.splice(sub, wires)
