"""
Contains the command-line configurations of the three commands, the
validated job configuration built from them and the factory for the
verification kernel.

Complex numbers are written as "re,im" on the command line and as [re, im]
arrays in job files; lists of complex numbers are "re,im;re,im;..." on the
command line and arrays whose items are [re, im] pairs (or plain numbers) in
job files.
"""
import json
import os

import scriptconfig as scfg

from ellsos.kernel import Kernel
from ellsos.monodromy import ModelParams
from ellsos.partition import DEFAULT_NODES
from ellsos.partition import EVALUATORS
from ellsos.partition import default_contour
from ellsos.report import encode_complex
from ellsos.suite.monodromy import MonodromySuite
from ellsos.suite.partition import PartitionSuite
from ellsos.suite.relations import RelationsSuite
from ellsos.suite.theta import ThetaSuite
from ellsos.suite.weights import WeightsSuite
from ellsos.theta import DEFAULT_EPSILON
from ellsos.theta import DEFAULT_N_MAX
from ellsos.theta import Nome
from ellsos.theta import ThetaEvaluator

METHODS = tuple(sorted(EVALUATORS)) + ("auto",)
SUITES = ("theta", "weights", "monodromy", "partition", "relations")
THREADS_VARIABLE = "ELLSOS_THREADS"


class ConfigError(ValueError):
    """
    Represents an exception that is thrown when a configuration violates its
    schema.
    """
    pass


def _decoded(value, key):
    """
    Decodes a JSON array given as text, the form a job-file list takes once
    it has passed through a string-typed option.
    """
    if not isinstance(value, str) or not value.strip().startswith("["):
        return value
    try:
        return json.loads(value)
    except ValueError:
        raise ConfigError("%s: %r is not a valid array." % (key, value))


def parse_complex(value, key="value"):
    """
    Parses a complex number from a number, an [re, im] pair or an "re,im"
    string (a single component is the real part).

    :raise ConfigError: If the value cannot be read as a complex number.
    """
    value = _decoded(value, key)
    if isinstance(value, (int, float, complex)) and not isinstance(value,
                                                                    bool):
        return complex(value)
    if isinstance(value, str):
        parts = [part.strip() for part in value.split(",")]
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        raise ConfigError("%s: expected a complex number, not %r."
                          % (key, value))
    if not 1 <= len(parts) <= 2:
        raise ConfigError("%s: expected [re, im], not %r." % (key, value))
    try:
        components = [float(part) for part in parts]
    except (TypeError, ValueError):
        raise ConfigError("%s: %r is not a pair of real numbers."
                          % (key, value))
    return complex(components[0], components[1] if len(components) == 2
                   else 0.0)


def parse_complex_list(value, key="value"):
    """
    Parses a list of complex numbers from a "re,im;re,im" string or a list
    whose items are read by parse_complex.
    """
    value = _decoded(value, key)
    if value is None:
        raise ConfigError("%s: a list of complex numbers is required." % key)
    if isinstance(value, str):
        items = [item for item in value.split(";") if item.strip()]
    elif isinstance(value, (list, tuple)):
        items = list(value)
    else:
        items = [value]
    return tuple(parse_complex(item, "%s[%d]" % (key, index))
                 for index, item in enumerate(items))


def parse_tolerances(entries):
    """
    Parses "name=value" tolerance overrides.
    """
    if not entries:
        return {}
    if isinstance(entries, dict):
        entries = ["%s=%s" % item for item in entries.items()]
    elif isinstance(entries, str):
        entries = entries.split()
    tolerances = {}
    for entry in entries:
        name, separator, value = str(entry).partition("=")
        try:
            tolerances[name.strip()] = float(value)
        except ValueError:
            separator = ""
        if not separator or not name.strip():
            raise ConfigError("tol: expected <name>=<value>, not %r."
                              % (entry,))
    return tolerances


def thread_count(override=None):
    """
    Returns the number of worker threads: the override if given, otherwise
    the value of ELLSOS_THREADS, otherwise one.
    """
    value = override if override is not None else \
        os.environ.get(THREADS_VARIABLE, "1")
    try:
        threads = int(value)
    except (TypeError, ValueError):
        raise ConfigError("threads: %r is not an integer." % (value,))
    if threads < 1:
        raise ConfigError("threads: expected at least one, not %d." % threads)
    return threads


def _present(config, *keys):
    return dict((key, config[key]) for key in keys
                if config.get(key) is not None)


def _model_keys():
    """
    Returns fresh Values for the keys shared by the compute and table
    commands.
    """
    return {
        "L": scfg.Value(None, type=int, help="the number of sites"),
        "gamma": scfg.Value(None, type=str,
                            help="the crossing parameter, re,im"),
        "theta": scfg.Value(None, type=str,
                            help="the dynamical parameter, re,im"),
        "p": scfg.Value(None, type=str,
                        help="the nome p = exp(i pi tau), re,im"),
        "tau": scfg.Value(None, type=str,
                          help="the modular parameter, re,im (instead of p)"),
        "mu": scfg.Value(None, type=str,
                         help="the inhomogeneities, re,im;re,im;..."),
        "lambda": scfg.Value(None, type=str,
                             help="the spectral parameters, re,im;re,im;..."),
        "method": scfg.Value("auto", type=str, choices=METHODS,
                             help="the evaluation method"),
        "epsilon_target": scfg.Value(DEFAULT_EPSILON, type=float,
                                     help="the theta truncation target"),
        "n_max": scfg.Value(DEFAULT_N_MAX, type=int,
                            help="the largest theta series cutoff"),
        "nodes": scfg.Value(DEFAULT_NODES, type=int,
                            help="the quadrature points per variable"),
        "radius_override": scfg.Value(None, type=float,
                                      help="an explicit contour radius"),
        "verbose": scfg.Value(0, type=int,
                              help="the logging verbosity (0-3)"),
    }


class ComputeConfig(scfg.Config):
    """
    Computes the domain-wall partition function of the elliptic SOS model.
    """
    default = _model_keys()


class VerifyConfig(scfg.Config):
    """
    Runs the verification suites on seeded random parameters.
    """
    default = {
        "suite": scfg.Value("all", type=str, choices=SUITES + ("all",),
                            help="the suite to run"),
        "seed": scfg.Value(0, type=int, help="the random seed"),
        "samples": scfg.Value(5, type=int,
                              help="the random draws per check"),
        "l_max": scfg.Value(4, type=int,
                            help="the largest lattice size to check"),
        "tol": scfg.Value(None, type=str, nargs="*",
                          help="tolerance overrides, <name>=<value>"),
        "threads": scfg.Value(None, type=int,
                              help="the worker threads (overrides "
                                   "ELLSOS_THREADS)"),
        "p": scfg.Value(None, type=str, help="a fixed nome, re,im"),
        "epsilon_target": scfg.Value(DEFAULT_EPSILON, type=float,
                                     help="the theta truncation target"),
        "n_max": scfg.Value(DEFAULT_N_MAX, type=int,
                            help="the largest theta series cutoff"),
        "verbose": scfg.Value(0, type=int,
                              help="the logging verbosity (0-3)"),
    }


class TableConfig(scfg.Config):
    """
    Evaluates the partition function over a one-parameter sweep and writes
    the values as a comma-delimited table.
    """
    default = dict(_model_keys(), **{
        "sweep": scfg.Value(None, type=str,
                            help="<param>:<start>:<stop>:<count> with param "
                                 "one of gamma, theta, p, lambda_j, mu_j"),
        "cross": scfg.Value(None, type=str,
                            help="a second method for a residual column"),
        "out": scfg.Value(None, type=str,
                          help="the output file (default: standard output)"),
    })


class JobConfig:
    """
    Represents the validated input of a compute or table command.

    Attributes:
        params (dict): The lattice parameters L, gamma, theta, mu, lambda and
        exactly one of p and tau.
        method (str): The evaluation method.
        theta_opts (dict): The epsilon_target and n_max of the evaluator.
        quadrature_opts (dict): The nodes and optional radius_override of the
        quadrature contour.
    """

    def __init__(self, params, method="auto", theta_opts=None,
                 quadrature_opts=None):
        self.params = dict(params)
        self.method = method
        self.theta_opts = {"epsilon_target": DEFAULT_EPSILON,
                           "n_max": DEFAULT_N_MAX}
        self.theta_opts.update(theta_opts or {})
        self.quadrature_opts = {"nodes": DEFAULT_NODES,
                                "radius_override": None}
        self.quadrature_opts.update(quadrature_opts or {})
        self._validate()

    @classmethod
    def from_config(cls, config):
        """
        Creates a job from a flat configuration (a scriptconfig object or a
        plain dictionary with the same keys).
        """
        if not isinstance(config, dict):
            config = config.to_dict()
        get = config.get
        if get("L") is None:
            raise ConfigError("L: the number of sites is required.")
        if (get("p") is None) == (get("tau") is None):
            raise ConfigError("p, tau: exactly one of the two is required.")
        for key in ("gamma", "theta"):
            if get(key) is None:
                raise ConfigError("%s: a value is required." % key)

        params = {"L": get("L"),
                  "gamma": parse_complex(get("gamma"), "gamma"),
                  "theta": parse_complex(get("theta"), "theta"),
                  "mu": parse_complex_list(get("mu"), "mu"),
                  "lambda": parse_complex_list(get("lambda"), "lambda")}
        if get("p") is not None:
            params["p"] = parse_complex(get("p"), "p")
        else:
            params["tau"] = parse_complex(get("tau"), "tau")

        theta_opts = _present(config, "epsilon_target", "n_max")
        quadrature_opts = _present(config, "nodes", "radius_override")
        return cls(params, get("method", "auto"), theta_opts, quadrature_opts)

    def _validate(self):
        try:
            L = int(self.params["L"])
        except (TypeError, ValueError):
            raise ConfigError("L: %r is not an integer." % (self.params["L"],))
        if L < 1:
            raise ConfigError("L: expected at least one site, not %d." % L)
        self.params["L"] = L
        for key in ("mu", "lambda"):
            if len(self.params[key]) != L:
                raise ConfigError("%s: expected %d values for L=%d, not %d."
                                  % (key, L, L, len(self.params[key])))
        if self.method not in METHODS:
            raise ConfigError("method: expected one of %s, not %r."
                              % (", ".join(METHODS), self.method))
        if self.method == "closed" and L != 1:
            raise ConfigError("method: the closed form needs L = 1, not "
                              "L=%d." % L)
        if float(self.theta_opts["epsilon_target"]) <= 0.0:
            raise ConfigError("epsilon_target: expected a positive number.")
        if int(self.theta_opts["n_max"]) < 1:
            raise ConfigError("n_max: expected a positive integer.")
        if int(self.quadrature_opts["nodes"]) < 2:
            raise ConfigError("nodes: expected at least two nodes.")
        radius = self.quadrature_opts["radius_override"]
        if radius is not None and float(radius) <= 0.0:
            raise ConfigError("radius_override: expected a positive radius.")

    def replace(self, **changes):
        """
        Returns a copy of this job with the specified entries of params
        changed.
        """
        params = dict(self.params, **changes)
        return JobConfig(params, self.method, self.theta_opts,
                         self.quadrature_opts)

    def nome(self):
        if "p" in self.params:
            return Nome(p=self.params["p"])
        return Nome(tau=self.params["tau"])

    def model_params(self):
        params = self.params
        return ModelParams(params["L"], params["gamma"], params["theta"],
                           params["mu"], params["lambda"], self.nome())

    def evaluator(self):
        return ThetaEvaluator(self.nome(),
                              n_max=int(self.theta_opts["n_max"]),
                              epsilon_target=float(
                                  self.theta_opts["epsilon_target"]))

    def contour(self, params=None):
        """
        Returns the quadrature contour, or None for the other methods.
        """
        if self.method != "quadrature":
            return None
        radius = self.quadrature_opts["radius_override"]
        return default_contour(params or self.model_params(),
                               int(self.quadrature_opts["nodes"]),
                               None if radius is None else float(radius))

    def to_dict(self):
        params = {}
        for key, value in self.params.items():
            if key == "L":
                params[key] = value
            elif key in ("mu", "lambda"):
                params[key] = [encode_complex(item) for item in value]
            else:
                params[key] = encode_complex(value)
        return {"params": params, "method": self.method,
                "theta_opts": dict(self.theta_opts),
                "quadrature_opts": dict(self.quadrature_opts)}


def create_kernel():
    kernel = Kernel()

    kernel.add(ThetaSuite())
    kernel.add(WeightsSuite())
    kernel.add(MonodromySuite())
    kernel.add(PartitionSuite())
    kernel.add(RelationsSuite())

    return kernel
