"""Single-gate logic synthesis: any non-affine one-to-one binary gate, wired
with constant inputs, yields NOT, AND, OR and fan-out."""

__version__ = "0.1.0"

from .basis import (
    AND,
    FANOUT,
    NOT,
    OR,
    BasisKit,
    Gadget,
    PinBinding,
    derive_and_or,
    extract_basis,
    extract_fanout,
    extract_not,
    find_two_input_core,
)
from .circuit import (
    Circuit,
    CircuitBuilder,
    Instance,
    SimTrace,
    check_equivalence,
    instantiate_gadget,
    simulate,
    truth_table_of,
)
from .compiler import (
    LoweringReport,
    SourceNetlist,
    emit_netlist,
    load_circuit,
    lower_to_basis,
    parse_circuit,
    parse_netlist,
)
from .gate import (
    AffineForm,
    Gate,
    GateClass,
    Restriction,
    classify,
    evaluate,
    fit_affine,
    format_truth_table,
    parse_truth_table,
    restrict,
)

__all__ = [
    "AND",
    "FANOUT",
    "NOT",
    "OR",
    "BasisKit",
    "Gadget",
    "PinBinding",
    "derive_and_or",
    "extract_basis",
    "extract_fanout",
    "extract_not",
    "find_two_input_core",
    "Circuit",
    "CircuitBuilder",
    "Instance",
    "SimTrace",
    "check_equivalence",
    "instantiate_gadget",
    "simulate",
    "truth_table_of",
    "LoweringReport",
    "SourceNetlist",
    "emit_netlist",
    "load_circuit",
    "lower_to_basis",
    "parse_circuit",
    "parse_netlist",
    "AffineForm",
    "Gate",
    "GateClass",
    "Restriction",
    "classify",
    "evaluate",
    "fit_affine",
    "format_truth_table",
    "parse_truth_table",
    "restrict",
]
