"""
Contains the machine-readable report written by every command.  Complex
numbers are always serialized as [re, im] pairs.
"""
import json
import platform

import numpy as np

import ellsos


def encode_complex(value):
    """
    Returns the [re, im] pair of the specified number.
    """
    value = complex(value)
    return [value.real, value.imag]


def _encode(value):
    if isinstance(value, (complex, np.complexfloating)):
        return encode_complex(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, dict):
        return dict((key, _encode(item)) for key, item in value.items())
    if isinstance(value, (list, tuple)):
        return [_encode(item) for item in value]
    return value


class CheckResult:
    """
    Represents the outcome of a single computed value or identity check.

    Attributes:
        name (str): The name of the check.
        equation (str): The identity or quantity being checked.
        value (complex): A computed value, if any.
        residual (float): The residual of an identity check, if any.
        tolerance (float): The tolerance the residual is compared against.
        passed (bool): Whether or not the check passed.
        error (str): The name of the exception that prevented the check from
        completing, if any.
        detail (dict): Additional context such as the sample index and L.
    """

    def __init__(self, name, equation, value=None, residual=None,
                 tolerance=None, passed=True, error=None, detail=None):
        self.name = name
        self.equation = equation
        self.value = value
        self.residual = residual
        self.tolerance = tolerance
        self.passed = bool(passed)
        self.error = error
        self.detail = detail or {}

    def __repr__(self):
        return ("CheckResult(name=%r, residual=%r, tolerance=%r, passed=%r, "
                "error=%r)" % (self.name, self.residual, self.tolerance,
                               self.passed, self.error))

    def to_dict(self):
        document = {"name": self.name, "equation": self.equation}
        if self.value is not None:
            document["value"] = encode_complex(self.value)
        if self.residual is not None:
            document["residual"] = float(self.residual)
            document["tolerance"] = self.tolerance
        document["passed"] = self.passed
        if self.error is not None:
            document["error"] = self.error
        if self.detail:
            document["detail"] = _encode(self.detail)
        return document


def versions():
    """
    Returns the versions of the package and its numerical stack.
    """
    return {"ellsos": ellsos.__version__,
            "numpy": np.__version__,
            "python": platform.python_version()}


class ReportDocument:
    """
    Represents the report of a single command.

    Attributes:
        command (str): The command that produced the report.
        inputs (dict): An echo of the validated input.
        results (list): The CheckResults in evaluation order.
        timings_ms (dict): Elapsed milliseconds by phase.
        rng_seed (int): The seed of the random draws, if any.
    """

    def __init__(self, command, inputs, rng_seed=None):
        self.command = command
        self.inputs = inputs
        self.results = []
        self.timings_ms = {}
        self.rng_seed = rng_seed

    @property
    def passed(self):
        """
        Whether or not every result passed.
        """
        return all(result.passed for result in self.results)

    @property
    def failures(self):
        return [result for result in self.results if not result.passed]

    def extend(self, results):
        self.results.extend(results)

    def to_dict(self):
        return {"command": self.command,
                "input": _encode(self.inputs),
                "results": [result.to_dict() for result in self.results],
                "passed": self.passed,
                "versions": versions(),
                "rng_seed": self.rng_seed,
                "timings_ms": dict((key, round(value, 3)) for key, value in
                                   self.timings_ms.items())}

    def dumps(self):
        """
        Serializes this report as indented JSON.
        """
        return json.dumps(self.to_dict(), indent=2)
