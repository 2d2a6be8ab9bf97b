"""
Contains the verification suites, one per area of the package, and the
context they share: seeded samplers, tolerances and the worker pool.
"""
import logging
import zlib

from ellsos.kernel import SuiteError
from ellsos.report import CheckResult
from ellsos.sampling import ParameterSampler
from ellsos.sampling import SamplingError
from ellsos.theta import DEFAULT_EPSILON
from ellsos.theta import DEFAULT_N_MAX
from ellsos.theta import ThetaError
from ellsos.util.logging import CHECK
from ellsos.util.workers import ordered_map
from ellsos.weights import SingularParameterError

_logger = logging.getLogger(__name__)


class SuiteContext:
    """
    Represents everything a suite needs to run its checks reproducibly.

    Attributes:
        seed (int): The seed every sampler is derived from.
        samples (int): The number of random draws per check.
        l_max (int): The largest lattice size to check.
        tolerances (dict): Tolerance overrides by check name.
        p (complex): A fixed nome, or None to draw one per sample.
        n_max (int): The series cutoff ceiling of the evaluators.
        epsilon_target (float): The truncation target of the evaluators.
        threads (int): The number of worker threads.
    """

    def __init__(self, seed, samples, l_max, tolerances=None, p=None,
                 n_max=DEFAULT_N_MAX, epsilon_target=DEFAULT_EPSILON,
                 threads=1):
        self.seed = int(seed)
        self.samples = int(samples)
        self.l_max = int(l_max)
        self.tolerances = dict(tolerances or {})
        self.p = p
        self.n_max = n_max
        self.epsilon_target = epsilon_target
        self.threads = max(int(threads), 1)

    def sampler(self, stream):
        """
        Creates a sampler whose draws depend only on the seed and the
        specified stream name, so that suites are reproducible on their own.
        """
        return ParameterSampler([self.seed, zlib.crc32(stream.encode())],
                                p=self.p, n_max=self.n_max,
                                epsilon_target=self.epsilon_target)

    def tolerance(self, name, default):
        return float(self.tolerances.get(name, default))

    def map(self, function, items):
        """
        Applies the function to every item, on worker threads when more than
        one is configured, and returns the results in input order.
        """
        return ordered_map(function, items, self.threads)


def run_check(context, name, equation, compute, default_tolerance,
              detail=None):
    """
    Runs a single residual check.

    :param context: The suite context (for tolerance overrides).
    :param name: The name of the check, also the tolerance override key.
    :param equation: The identity being checked.
    :param compute: A callable returning the (relative) residual.
    :param default_tolerance: The tolerance unless overridden.
    :param detail: Additional context for the report.
    :return: A CheckResult; evaluation failures become failed results that
    name the exception.
    """
    tolerance = context.tolerance(name, default_tolerance)
    detail = dict(detail or {})
    try:
        residual = float(compute())
    except (ThetaError, SingularParameterError, ValueError) as error:
        _logger.warning("Check %s (%s) could not be evaluated: %s: %s",
                        name, equation, type(error).__name__, error)
        detail["message"] = str(error)
        return CheckResult(name, equation, tolerance=tolerance, passed=False,
                           error=type(error).__name__, detail=detail)

    passed = residual <= tolerance
    _logger.log(CHECK, "%s %s: residual %.3e (tolerance %.1e)%s", name,
                "passed" if passed else "FAILED", residual, tolerance,
                "" if not detail else " %r" % detail)
    return CheckResult(name, equation, residual=residual, tolerance=tolerance,
                       passed=passed, detail=detail)


def draw_samples(context, stream, L, extra=0):
    """
    Draws every sample of a check up front so that results do not depend on
    the number of worker threads.
    """
    sampler = context.sampler("%s/L=%d" % (stream, L))
    try:
        return [sampler.draw(L, extra) for _ in range(context.samples)]
    except (SamplingError, ThetaError) as error:
        raise SuiteError("Drawing samples for %s at L=%d failed with %s: %s"
                         % (stream, L, type(error).__name__, error))
