"""Exception hierarchy shared by every onegate module."""


class OnegateError(Exception):
    """Base class for all library errors."""


class ParseError(OnegateError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SemanticError(ParseError):
    """Well-formed netlist text that names something illegally."""


class DomainError(OnegateError, ValueError):
    """An index or input word outside the gate's domain."""


# circuit validation
class CircuitError(OnegateError):
    pass


class CycleError(CircuitError):
    pass


class DanglingPinError(CircuitError):
    pass


class MultipleDriverError(CircuitError):
    pass


class UnusedOutputError(CircuitError):
    """A gate-instance output that is neither consumed nor declared garbage."""


class TooWideError(CircuitError):
    pass


class ArityMismatchError(CircuitError):
    pass


# basis extraction
class TrivialGateError(OnegateError):
    """No fixing of the gate makes any output the complement of an input."""


class NoFanoutError(OnegateError):
    pass


class CoreNotNonAffine(OnegateError):
    pass


class ClassificationError(OnegateError):
    def __init__(self, reason, gate_name=""):
        self.reason = reason
        self.gate_name = gate_name
        text = {
            "affine": "gate is affine",
            "not_one_to_one": "gate is not one-to-one",
            "not_injective": "gate is not injective",
        }.get(reason, reason)
        if gate_name:
            text = f"{gate_name}: {text}"
        super().__init__(text)


class EquivalenceFailure(OnegateError):
    def __init__(self, message, counterexample=None):
        self.counterexample = counterexample
        super().__init__(message)
