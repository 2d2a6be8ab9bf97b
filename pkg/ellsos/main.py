#!/usr/bin/env python3

"""
The main driver for ellsos, a toolkit that computes the domain-wall partition
function of the elliptic SOS model by several independent methods and checks
the identities that tie them together.

Usage:
    ellsos compute [--config job.json] [--L 2 --gamma re,im ...]
    ellsos verify [--suite all] [--seed 0] [--samples 5] [--l-max 4]
    ellsos table [--config job.json] --sweep theta:0.1:0.9:9 [--cross m]

Exit status: 0 success, 1 a failed check, 2 bad input, 3 a singular
parameter.
"""
import csv
import io
import logging
import sys

from ellsos.config import ComputeConfig
from ellsos.config import ConfigError
from ellsos.config import JobConfig
from ellsos.config import SUITES
from ellsos.config import TableConfig
from ellsos.config import VerifyConfig
from ellsos.config import create_kernel
from ellsos.config import parse_complex
from ellsos.config import parse_tolerances
from ellsos.config import thread_count
from ellsos.partition import evaluate
from ellsos.partition import resolve_method
from ellsos.report import CheckResult
from ellsos.report import ReportDocument
from ellsos.suite import SuiteContext
from ellsos.theta import ThetaError
from ellsos.util.logging import configure
from ellsos.util.timers import SystemTimer
from ellsos.util.workers import ordered_map
from ellsos.weights import SingularParameterError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_SINGULAR = 3

MAX_VERIFY_SITES = 6

TABLE_HEADER = ["parameter", "value_re", "value_im", "z_re", "z_im",
                "method", "cross_method", "cross_residual", "status"]

_logger = logging.getLogger("ellsos.main")


def normalize_options(argv):
    """
    Rewrites hyphenated option names such as --l-max to the underscored
    configuration keys.
    """
    result = []
    for argument in argv:
        if argument.startswith("--"):
            name, separator, value = argument[2:].partition("=")
            argument = "--" + name.replace("-", "_") + separator + value
        result.append(argument)
    return result


def cmd_compute(argv):
    """
    Evaluates Z for a single job and writes its report to standard output.
    """
    config = ComputeConfig(cmdline=argv)
    configure(config["verbose"])
    job = JobConfig.from_config(config)
    report = ReportDocument("compute", job.to_dict())

    with SystemTimer() as timer:
        params = job.model_params()
        ev = job.evaluator()
        method = resolve_method(job.method, params)
        value = evaluate(method, params, ev, job.contour(params))
    report.timings_ms["compute"] = timer.elapsed_ms

    report.extend([CheckResult("Z", "Z_theta(lambda_1..lambda_L; "
                                    "mu_1..mu_L)", value=value,
                               detail={"method": method})])
    print(report.dumps())
    return EXIT_OK


def cmd_verify(argv):
    """
    Runs the selected verification suites and writes their report to
    standard output.
    """
    config = VerifyConfig(cmdline=argv)
    configure(config["verbose"])
    if config["samples"] < 1:
        raise ConfigError("samples: expected at least one draw.")
    if not 1 <= config["l_max"] <= MAX_VERIFY_SITES:
        raise ConfigError("l_max: expected a size in 1..%d, not %d."
                          % (MAX_VERIFY_SITES, config["l_max"]))

    p = None if config["p"] is None else parse_complex(config["p"], "p")
    context = SuiteContext(config["seed"], config["samples"], config["l_max"],
                           tolerances=parse_tolerances(config["tol"]), p=p,
                           n_max=config["n_max"],
                           epsilon_target=config["epsilon_target"],
                           threads=thread_count(config["threads"]))
    names = list(SUITES) if config["suite"] == "all" else [config["suite"]]

    inputs = {"suite": config["suite"], "seed": context.seed,
              "samples": context.samples, "l_max": context.l_max,
              "tol": context.tolerances, "p": p, "n_max": context.n_max,
              "epsilon_target": context.epsilon_target}
    report = ReportDocument("verify", inputs, rng_seed=context.seed)

    kernel = create_kernel()
    with SystemTimer() as timer:
        report.extend(kernel.run(names, context))
    report.timings_ms.update(kernel.timings_ms)
    report.timings_ms["verify"] = timer.elapsed_ms

    print(report.dumps())
    for failure in report.failures:
        _logger.error("Check %s (%s) failed%s.", failure.name,
                      failure.equation,
                      "" if failure.error is None
                      else " with %s" % failure.error)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def parse_sweep(text):
    """
    Parses a "<param>:<start>:<stop>:<count>" sweep specification.

    :return: The parameter name and the list of swept values.
    """
    if not text:
        raise ConfigError("sweep: a sweep specification is required.")
    parts = text.split(":")
    if len(parts) != 4:
        raise ConfigError("sweep: expected <param>:<start>:<stop>:<count>, "
                          "not %r." % text)
    name = parts[0].strip()
    start = parse_complex(parts[1], "sweep start")
    stop = parse_complex(parts[2], "sweep stop")
    try:
        count = int(parts[3])
    except ValueError:
        raise ConfigError("sweep: the count %r is not an integer."
                          % parts[3])
    if count < 1:
        raise ConfigError("sweep: expected at least one point, not %d."
                          % count)
    if count == 1:
        return name, [start]
    step = (stop - start) / (count - 1)
    return name, [start + k * step for k in range(count)]


def sweep_job(job, name, value):
    """
    Returns the job with the named parameter set to the specified value.
    """
    if name in ("gamma", "theta"):
        return job.replace(**{name: value})
    if name == "p":
        params = dict(job.params, p=value)
        params.pop("tau", None)
        return JobConfig(params, job.method, job.theta_opts,
                         job.quadrature_opts)

    base, _, index = name.partition("_")
    if base in ("lambda", "mu") and index.isdigit():
        position = int(index)
        values = list(job.params[base])
        if not 1 <= position <= len(values):
            raise ConfigError("sweep: %s needs 1 <= j <= %d."
                              % (name, len(values)))
        values[position - 1] = value
        return job.replace(**{base: tuple(values)})
    raise ConfigError("sweep: unknown parameter %r; expected gamma, theta, "
                      "p, lambda_j or mu_j." % name)


def _table_row(job, name, value, cross):
    row = {"parameter": name, "value_re": value.real,
           "value_im": value.imag, "z_re": "", "z_im": "", "method": "",
           "cross_method": cross or "", "cross_residual": "",
           "status": "ok"}
    try:
        swept = sweep_job(job, name, value)
        params = swept.model_params()
        ev = swept.evaluator()
        method = resolve_method(swept.method, params)
        row["method"] = method
        z = evaluate(method, params, ev, swept.contour(params))
        row["z_re"], row["z_im"] = z.real, z.imag
        if cross:
            other = JobConfig(swept.params, cross, swept.theta_opts,
                              swept.quadrature_opts)
            second = evaluate(cross, params, ev, other.contour(params))
            scale = max(abs(z), abs(second))
            residual = abs(z - second)
            row["cross_residual"] = residual / scale if scale > 0.0 \
                else residual
    except (SingularParameterError, ThetaError) as error:
        _logger.warning("Row %s=%r: %s: %s", name, value,
                        type(error).__name__, error)
        row["status"] = type(error).__name__
    return row


def _cell(value):
    return repr(float(value)) if isinstance(value, float) else value


def write_table(rows, stream):
    writer = csv.DictWriter(stream, fieldnames=TABLE_HEADER,
                            lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(dict((key, _cell(value)) for key, value in
                             row.items()))


def cmd_table(argv):
    """
    Evaluates Z over a one-parameter sweep and writes one row per point.
    """
    config = TableConfig(cmdline=argv)
    configure(config["verbose"])
    job = JobConfig.from_config(config)
    cross = config["cross"]
    if cross is not None:
        cross = JobConfig(job.params, cross).method
    name, values = parse_sweep(config["sweep"])
    sweep_job(job, name, values[0])

    rows = ordered_map(lambda value: _table_row(job, name, value, cross),
                       values, thread_count())
    buffer = io.StringIO()
    write_table(rows, buffer)
    if config["out"]:
        with open(config["out"], "w", newline="") as handle:
            handle.write(buffer.getvalue())
    else:
        sys.stdout.write(buffer.getvalue())
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "table": cmd_table,
}


def main(argv=None):
    """
    The application entry point.

    :param argv: The command-line arguments without the program name.
    :return: An exit code.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] not in COMMANDS:
        configure()
        _logger.error("Expected a command, one of %s."
                      % ", ".join(sorted(COMMANDS)))
        return EXIT_BAD_INPUT

    try:
        return COMMANDS[argv[0]](normalize_options(argv[1:]))
    except SingularParameterError as error:
        _logger.error("Singular parameters (%s): %s", type(error).__name__,
                      error)
        return EXIT_SINGULAR
    except (ConfigError, ThetaError, ValueError) as error:
        _logger.error("Invalid input (%s): %s", type(error).__name__, error)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
