"""Command-line interface.

Exit codes: 0 success, 1 negative result (affine or trivial gate, inequivalent
circuits, failed sweep), 2 input error (bad file, bad arguments).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import __version__
from .basis import KINDS, NOT, Gadget, extract_basis
from .circuit import check_equivalence, simulate, truth_table_of
from .compiler import (
    emit_netlist,
    load_circuit,
    lower_to_basis,
    parse_netlist,
)
from .errors import (
    ClassificationError,
    CircuitError,
    EquivalenceFailure,
    NoFanoutError,
    OnegateError,
    ParseError,
    TrivialGateError,
)
from .gate import STOCK_GATES, Gate, bitstring, classify, format_truth_table, parse_truth_table
from .sweep import MAX_SWEEP_BITS, parse_range, sweep


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_gate_arg(spec: str) -> Gate:
    """A ``.tt`` path, or the name of a stock gate when no such file exists."""
    if not os.path.exists(spec) and spec.lower() in STOCK_GATES:
        return STOCK_GATES[spec.lower()]()
    return parse_truth_table(_read(spec))


def _emit(args, text: str, data: dict) -> None:
    if args.report == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_classify(args) -> int:
    g = load_gate_arg(args.gate)
    cls = classify(g)
    lines = [f"gate {g.name}: {g.n_inputs} inputs, {g.n_outputs} outputs"]
    lines += [f"  {k}: {'yes' if v else 'no'}" for k, v in cls.as_dict().items()]
    _emit(args, "\n".join(lines), {"gate": g.name, "inputs": g.n_inputs,
                                    "outputs": g.n_outputs, **cls.as_dict()})
    return 0


def cmd_basis(args) -> int:
    g = load_gate_arg(args.gate)
    external = None
    if args.allow_injective:
        circuit = load_circuit(_read(args.allow_injective))
        external = Gadget(NOT, circuit)
    try:
        kit = extract_basis(g, external_not=external)
    except (ClassificationError, TrivialGateError, NoFanoutError, EquivalenceFailure) as exc:
        _emit(args, str(exc), {"gate": g.name, "ok": False, "error": str(exc)})
        return 1
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for kind in KINDS:
            (out / f"{kind.lower()}.netlist").write_text(emit_netlist(kit[kind].circuit), encoding="utf-8")
        (out / "report.txt").write_text(kit.report_text(), encoding="utf-8")
        (out / "report.json").write_text(json.dumps(kit.as_dict(), indent=2, sort_keys=True) + "\n",
                                         encoding="utf-8")
    _emit(args, kit.report_text(), {"ok": True, **kit.as_dict()})
    return 0


def cmd_compile(args) -> int:
    src = parse_netlist(_read(args.source))
    g = load_gate_arg(args.gate)
    try:
        kit = extract_basis(g)
    except (ClassificationError, TrivialGateError, NoFanoutError) as exc:
        _emit(args, str(exc), {"gate": g.name, "ok": False, "error": str(exc)})
        return 1
    circuit, report = lower_to_basis(src, kit)
    text = emit_netlist(circuit)
    summary = (
        f"lowered onto {g.name}: {report.gate_copies} gate copies, {report.fanouts} fan-outs, "
        f"{report.constants} constants, {report.garbage} garbage outputs"
    )
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _emit(args, summary, {"ok": True, "gate": g.name, "out": args.out, **report.as_dict()})
    elif args.report == "json":
        _emit(args, "", {"ok": True, "gate": g.name, "netlist": text, **report.as_dict()})
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return 0


def cmd_simulate(args) -> int:
    c = load_circuit(_read(args.netlist))
    bits = args.inputs
    if len(bits) != c.n_inputs or set(bits) - {"0", "1"}:
        raise InputError(f"--inputs must be {c.n_inputs} binary digits, got {bits!r}")
    y, trace = simulate(c, int(bits, 2) if bits else 0, trace=True)
    out = bitstring(y, c.n_outputs)
    text = out if not args.trace else out + "\n" + trace.dump()
    _emit(args, text, {"inputs": bits, "outputs": out,
                       "output_names": list(c.outputs),
                       **({"trace": trace.assignment} if args.trace else {})})
    return 0


def cmd_table(args) -> int:
    c = load_circuit(_read(args.netlist))
    g = truth_table_of(c, name=args.name or Path(args.netlist).stem.replace(" ", "_"))
    _emit(args, format_truth_table(g), {
        "gate": g.name, "inputs": g.n_inputs, "outputs": g.n_outputs,
        "table": [bitstring(v, g.n_outputs) for v in g.table],
    })
    return 0


def _load_reference(path: str):
    text = _read(path)
    first = next((ln.split("#", 1)[0].split() for ln in text.splitlines()
                  if ln.split("#", 1)[0].strip()), [])
    if path.endswith(".tt") or first[:1] == ["gate"]:
        return parse_truth_table(text)
    return load_circuit(text)


def cmd_verify(args) -> int:
    a = load_circuit(_read(args.a))
    b = _load_reference(args.b)
    equal, cex = check_equivalence(a, b)
    if equal:
        text = "equivalent"
    else:
        text = f"inequivalent: counterexample {bitstring(cex, a.n_inputs)}"
    _emit(args, text, {"equivalent": equal,
                       "counterexample": None if equal else bitstring(cex, a.n_inputs)})
    return 0 if equal else 1


def cmd_sweep(args) -> int:
    total = math.factorial(1 << args.bits)
    start, stop = parse_range(args.range, total) if args.range else (0, total)

    def progress(done, todo):
        print(f"\r{done}/{todo}", end="", file=sys.stderr, flush=True)

    res = sweep(args.bits, start, stop, workers=args.workers,
                progress=progress if args.progress else None)
    if args.progress:
        print(file=sys.stderr)
    _emit(args, res.summary(), res.as_dict())
    return 0 if res.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", choices=("text", "json"), default="text",
                        help="output format (default: text)")

    p = argparse.ArgumentParser(prog="onegate", description=(
        "Classify binary gates and build circuits from copies of a single "
        "non-affine one-to-one gate."))
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="classify a gate truth table")
    s.add_argument("gate")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("basis", parents=[common], help="extract NOT/AND/OR/FANOUT gadgets")
    s.add_argument("gate")
    s.add_argument("--out", metavar="DIR", help="write gadget netlists and reports here")
    s.add_argument("--allow-injective", metavar="NOT_NETLIST",
                   help="accept injective gates, using this netlist as the NOT gadget")
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("compile", parents=[common], help="lower a netlist onto one gate")
    s.add_argument("source")
    s.add_argument("--gate", required=True)
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("simulate", parents=[common], help="evaluate a netlist on one input word")
    s.add_argument("netlist")
    s.add_argument("--inputs", required=True, metavar="BITS")
    s.add_argument("--trace", action="store_true", help="dump every net value")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("table", parents=[common], help="print a netlist's truth table")
    s.add_argument("netlist")
    s.add_argument("--name")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("verify", parents=[common], help="check two circuits for equivalence")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common], help="exhaustive theorem check over all permutation gates")
    s.add_argument("--bits", type=int, default=3, choices=range(1, MAX_SWEEP_BITS + 1))
    s.add_argument("--range", metavar="A..B", help="half-open permutation index range")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--progress", action="store_true")
    s.set_defaults(func=cmd_sweep)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (InputError, ParseError, CircuitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OnegateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
