"""Netlist text formats and lowering onto a single-gate basis kit.

Source netlists use AND, OR, NOT, CONST0 and CONST1::

    input a b
    c = AND a b
    output c

Lowered netlists additionally carry gate definitions, gate copies and garbage::

    gatedef fredkin 3 3 000 001 010 011 100 110 101 111
    input a b
    k1 = CONST0
    gatecopy fredkin a b k1 -> n1 n2 c
    garbage n1 n2
    output c
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass

from .basis import BasisKit
from .circuit import Circuit, CircuitBuilder, Instance, check_equivalence, instantiate_gadget
from .errors import EquivalenceFailure, ParseError, SemanticError, TooWideError
from .gate import MAX_WIDTH, Gate, bitstring, and_gate, not_gate, or_gate

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\[\]]*$")
_KEYWORDS = {"input", "output", "gatecopy", "garbage", "gatedef"}

OPS = {"AND": 2, "OR": 2, "NOT": 1, "CONST0": 0, "CONST1": 0}


@dataclass(frozen=True)
class Statement:
    target: str
    op: str
    operands: tuple[str, ...]
    line: int | None = None

    def __str__(self):
        return " ".join([self.target, "=", self.op, *self.operands])


@dataclass(frozen=True)
class SourceNetlist:
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    statements: tuple[Statement, ...]

    def structure(self):
        """Everything but line numbers, for structural comparison."""
        return self.inputs, self.outputs, tuple((s.target, s.op, s.operands) for s in self.statements)

    def consumers(self) -> Counter:
        reads = Counter()
        for s in self.statements:
            reads.update(s.operands)
        reads.update(self.outputs)
        return reads


@dataclass(frozen=True)
class LoweringReport:
    gate_copies: int
    fanouts: int
    constants: int
    garbage: int

    def as_dict(self) -> dict[str, int]:
        return {
            "gate_copies": self.gate_copies,
            "fanouts": self.fanouts,
            "constants": self.constants,
            "garbage": self.garbage,
        }


def _lines(text: str):
    """Yield ``(lineno, tokens)`` for every statement; ``;`` also separates statements."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        for part in raw.split("#", 1)[0].split(";"):
            tokens = part.split()
            if tokens:
                yield lineno, tokens


def _check_name(name: str, lineno: int) -> str:
    if not _NAME.match(name) or name in _KEYWORDS or name in OPS:
        raise ParseError(f"invalid signal name {name!r}", lineno)
    return name


def parse_netlist(text: str) -> SourceNetlist:
    inputs: list[str] = []
    outputs: list[tuple[str, int]] = []
    statements: list[Statement] = []
    defined: set[str] = set()

    for lineno, tokens in _lines(text):
        head = tokens[0]
        if head == "input":
            for name in tokens[1:]:
                _check_name(name, lineno)
                if name in defined:
                    raise SemanticError(f"{name!r} is already defined", lineno)
                defined.add(name)
                inputs.append(name)
        elif head == "output":
            for name in tokens[1:]:
                _check_name(name, lineno)
                if any(name == o for o, _ in outputs):
                    raise SemanticError(f"output {name!r} declared twice", lineno)
                outputs.append((name, lineno))
        elif head in ("gatecopy", "gatedef", "garbage"):
            raise ParseError(f"'{head}' belongs to lowered netlists; use parse_circuit", lineno)
        elif len(tokens) >= 3 and tokens[1] == "=":
            target, op, operands = tokens[0], tokens[2], tuple(tokens[3:])
            _check_name(target, lineno)
            if op not in OPS:
                raise ParseError(f"unknown operator {op!r}", lineno)
            if len(operands) != OPS[op]:
                raise ParseError(f"{op} takes {OPS[op]} operand(s), got {len(operands)}", lineno)
            for name in operands:
                _check_name(name, lineno)
                if name not in defined:
                    raise SemanticError(f"{name!r} used before definition", lineno)
            if target in defined:
                raise SemanticError(f"{target!r} assigned more than once", lineno)
            defined.add(target)
            statements.append(Statement(target, op, operands, lineno))
        else:
            raise ParseError(f"cannot parse statement {' '.join(tokens)!r}", lineno)

    for name, lineno in outputs:
        if name not in defined:
            raise SemanticError(f"output {name!r} is never assigned", lineno)
    return SourceNetlist(tuple(inputs), tuple(o for o, _ in outputs), tuple(statements))


def evaluate_netlist(src: SourceNetlist, x: int) -> int:
    """Reference semantics of a source netlist, evaluated statement by statement."""
    n = len(src.inputs)
    env = {name: (x >> (n - 1 - i)) & 1 for i, name in enumerate(src.inputs)}
    for s in src.statements:
        a = [env[o] for o in s.operands]
        if s.op == "AND":
            v = a[0] & a[1]
        elif s.op == "OR":
            v = a[0] | a[1]
        elif s.op == "NOT":
            v = 1 - a[0]
        else:
            v = 1 if s.op == "CONST1" else 0
        env[s.target] = v
    y = 0
    for name in src.outputs:
        y = (y << 1) | env[name]
    return y


def reference_table(src: SourceNetlist, name: str = "reference") -> Gate:
    n = len(src.inputs)
    if n > MAX_WIDTH:
        raise TooWideError(f"{n} inputs exceed the cap of {MAX_WIDTH}")
    return Gate(name, n, len(src.outputs), tuple(evaluate_netlist(src, x) for x in range(1 << n)))


def source_to_circuit(src: SourceNetlist) -> Circuit:
    """Express a source netlist in the IR using stock AND/OR/NOT gates."""
    stock = {"AND": and_gate(), "OR": or_gate(), "NOT": not_gate()}
    instances = []
    constants = {}
    for s in src.statements:
        if s.op in stock:
            instances.append(Instance(stock[s.op], s.operands, (s.target,)))
        else:
            constants[s.target] = 1 if s.op == "CONST1" else 0
    reads = src.consumers()
    garbage = [s.target for s in src.statements if s.op in stock and not reads[s.target]]
    return Circuit(src.inputs, src.outputs, instances, constants, garbage)


# ------------------------------------------------------------- lowered form

def parse_circuit(text: str) -> Circuit:
    gates: dict[str, Gate] = {}
    inputs: list[str] = []
    outputs: list[str] = []
    constants: dict[str, int] = {}
    instances: list[Instance] = []
    garbage: list[str] = []

    for lineno, tokens in _lines(text):
        head = tokens[0]
        if head == "gatedef":
            if len(tokens) < 4:
                raise ParseError("gatedef needs a name, input count and output count", lineno)
            name = tokens[1]
            try:
                n, m = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise ParseError("gatedef counts must be integers", lineno) from None
            rows = tokens[4:]
            if not (0 <= n <= MAX_WIDTH and 1 <= m <= MAX_WIDTH):
                raise ParseError(f"gatedef counts {n} {m} out of range", lineno)
            if len(rows) != 1 << n:
                raise ParseError(f"gatedef {name} needs {1 << n} rows, got {len(rows)}", lineno)
            for row in rows:
                if len(row) != m or set(row) - {"0", "1"}:
                    raise ParseError(f"gatedef {name}: bad row {row!r}", lineno)
            if name in gates:
                raise SemanticError(f"gate {name!r} defined twice", lineno)
            gates[name] = Gate(name, n, m, tuple(int(r, 2) for r in rows))
        elif head == "input":
            inputs.extend(_check_name(t, lineno) for t in tokens[1:])
        elif head == "output":
            outputs.extend(_check_name(t, lineno) for t in tokens[1:])
        elif head == "garbage":
            garbage.extend(_check_name(t, lineno) for t in tokens[1:])
        elif head == "gatecopy":
            if len(tokens) < 3 or "->" not in tokens:
                raise ParseError("gatecopy needs '<gate> <inputs> -> <outputs>'", lineno)
            name = tokens[1]
            if name not in gates:
                raise SemanticError(f"gate {name!r} used before its gatedef", lineno)
            arrow = tokens.index("->")
            ins = tuple(_check_name(t, lineno) for t in tokens[2:arrow])
            outs = tuple(_check_name(t, lineno) for t in tokens[arrow + 1:])
            g = gates[name]
            if len(ins) != g.n_inputs or len(outs) != g.n_outputs:
                raise SemanticError(
                    f"gatecopy {name} wired {len(ins)}->{len(outs)}, gate is {g.n_inputs}->{g.n_outputs}",
                    lineno,
                )
            instances.append(Instance(g, ins, outs))
        elif len(tokens) == 3 and tokens[1] == "=" and tokens[2] in ("CONST0", "CONST1"):
            constants[_check_name(tokens[0], lineno)] = int(tokens[2][-1])
        else:
            raise ParseError(f"cannot parse statement {' '.join(tokens)!r}", lineno)
    return Circuit(inputs, outputs, instances, constants, garbage)


def is_lowered(text: str) -> bool:
    return any(tokens[0] in ("gatedef", "gatecopy", "garbage") for _, tokens in _lines(text))


def load_circuit(text: str) -> Circuit:
    """Parse either netlist flavour into the IR."""
    if is_lowered(text):
        return parse_circuit(text)
    return source_to_circuit(parse_netlist(text))


def emit_netlist(obj: SourceNetlist | Circuit) -> str:
    if isinstance(obj, SourceNetlist):
        lines = []
        if obj.inputs:
            lines.append("input " + " ".join(obj.inputs))
        lines += [str(s) for s in obj.statements]
        if obj.outputs:
            lines.append("output " + " ".join(obj.outputs))
        return "\n".join(lines) + "\n"

    c = obj
    lines = []
    seen: dict[str, Gate] = {}
    for inst in c.instances:
        g = inst.gate
        if g.name in seen:
            if seen[g.name] != g:
                raise ValueError(f"two different gates share the name {g.name!r}")
            continue
        seen[g.name] = g
        rows = " ".join(bitstring(v, g.n_outputs) for v in g.table)
        lines.append(f"gatedef {g.name} {g.n_inputs} {g.n_outputs} {rows}".rstrip())
    if c.inputs:
        lines.append("input " + " ".join(c.inputs))
    for net, bit in c.constants.items():
        lines.append(f"{net} = CONST{bit}")
    for k in c.topological_order:
        inst = c.instances[k]
        lines.append(
            f"gatecopy {inst.gate.name} {' '.join(inst.inputs)} -> {' '.join(inst.outputs)}"
        )
    if c.garbage:
        lines.append("garbage " + " ".join(c.garbage))
    if c.outputs:
        lines.append("output " + " ".join(c.outputs))
    return "\n".join(lines) + "\n"


def circuit_structure(c: Circuit):
    """Hashable structural summary: ports, constants, instances in topological order, garbage."""
    return (
        c.inputs,
        c.outputs,
        tuple(sorted(c.constants.items())),
        tuple(
            (c.instances[k].gate, c.instances[k].inputs, c.instances[k].outputs)
            for k in c.topological_order
        ),
        tuple(sorted(c.garbage)),
    )


# ---------------------------------------------------------------- lowering

def lower_to_basis(src: SourceNetlist, kit: BasisKit) -> tuple[Circuit, LoweringReport]:
    """Rewrite ``src`` using only ``kit``'s gadgets and constant sources.

    A signal read ``d > 1`` times passes through a chain of ``d - 1`` FANOUT
    gadgets, so every net of the result is read at most once.
    """
    if len(src.inputs) > MAX_WIDTH:
        raise TooWideError(f"{len(src.inputs)} inputs exceed the cap of {MAX_WIDTH}")
    reads = src.consumers()
    names = set(src.inputs) | {s.target for s in src.statements}
    b = CircuitBuilder(src.inputs, reserved=names)
    pool: dict[str, deque] = {}
    fanouts = 0

    def publish(name: str, net: str):
        nonlocal fanouts
        d = reads[name]
        copies = deque()
        if d == 0 and net not in src.inputs and net not in b.constants:
            b.mark_garbage([net])
        for _ in range(d - 1):
            first, net = instantiate_gadget(b, kit.fanout_g, [net])
            fanouts += 1
            copies.append(first)
        if d:
            copies.append(net)
        pool[name] = copies

    for name in src.inputs:
        publish(name, name)
    gadget = {"AND": kit.and_g, "OR": kit.or_g, "NOT": kit.not_g}
    for s in src.statements:
        if s.op in gadget:
            (net,) = instantiate_gadget(b, gadget[s.op], [pool[o].popleft() for o in s.operands])
        else:
            if not reads[s.target]:
                continue
            net = b.const(1 if s.op == "CONST1" else 0)
        publish(s.target, net)

    out_nets = [pool[o].popleft() for o in src.outputs]
    # rename output nets to their source names where the name is free
    port_names = [
        o if o not in src.inputs or net == o else net
        for o, net in zip(src.outputs, out_nets)
    ]
    circuit = b.build(out_nets, names=port_names)

    report = LoweringReport(
        gate_copies=circuit.copies_of(kit.source),
        fanouts=fanouts,
        constants=len(circuit.constants),
        garbage=len(circuit.garbage),
    )
    if not kit.external_not and circuit.gate_types() - {kit.source}:
        raise EquivalenceFailure("lowered circuit uses a gate other than the kit source")
    if max(circuit.fanout_degrees().values(), default=0) > 1:
        raise EquivalenceFailure("lowered circuit reads a net more than once")
    ok, cex = check_equivalence(circuit, reference_table(src))
    if not ok:
        raise EquivalenceFailure(f"lowered circuit differs from source on input {cex}", cex)
    return circuit, report
