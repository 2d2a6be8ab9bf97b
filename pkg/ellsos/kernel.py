"""
Contains the verification suites' base class as well as a simple kernel to
run them in dependency order.
"""
import logging
from abc import ABCMeta, abstractmethod

from ellsos.report import CheckResult
from ellsos.util.timers import SystemTimer

_logger = logging.getLogger(__name__)


class SuiteError(Exception):
    """
    Represents an exception that is thrown by a suite that cannot run at
    all, as opposed to a suite whose checks fail.
    """
    pass


class Suite(metaclass=ABCMeta):
    """
    Represents a named group of numerical identity checks over one area of
    the package.

    Attributes:
        name (str): The name of the suite for identification purposes.
    """

    def __init__(self, name):
        self.name = name

    @abstractmethod
    def get_dependencies(self):
        """
        Returns the names of the suites whose subject this suite builds on.

        When both are run, every dependency runs first, and a dependency
        that could not run causes this suite to be skipped.

        :return: A list of suite names.
        """
        pass

    @abstractmethod
    def run(self, context):
        """
        Runs every check of this suite.

        :param context: The verification context (sampler seeds, sample
        count, lattice sizes, tolerances and the worker pool).
        :return: A list of CheckResults.
        :raise SuiteError: If the suite cannot run at all.
        """
        pass


def _get_execution_order(suites):
    """
    Resolves the specified dictionary of suites into a flat list ordered so
    that every suite comes after the suites it depends on.

    Dependencies that are not part of the dictionary only order nothing and
    are ignored.  Suites with the same depth keep their name order so the
    result is deterministic.

    The algorithm is taken from a StackOverflow question at the following
    link:
    https://stackoverflow.com/questions/5287516/dependencies-tree-implementation

    :param suites: A dictionary of suites, each associated with a unique
    name.
    :return: A list of suites.
    :raise SuiteError: If the dependencies are cyclic.
    """
    tree = []
    deps = dict((name, set(suite.get_dependencies()) & set(suites))
                for name, suite in suites.items())

    while deps:
        ready = sorted(name for name, dep in deps.items() if not dep)
        if not ready:
            raise SuiteError("The suites %s depend on each other."
                             % ", ".join(sorted(deps)))
        tree.extend(ready)
        deps = dict((name, dep - set(ready))
                    for name, dep in deps.items() if name not in ready)

    return [suites[name] for name in tree]


class Kernel:
    """
    Represents a mechanism for managing verification suites and running a
    selection of them in a simple and centralized manner.

    Attributes:
        suites (dict): A dictionary of suites, each associated with a unique
        name.
        timings_ms (dict): The milliseconds spent in each suite during the
        most recent run.
    """

    def __init__(self):
        self.suites = dict()
        self.timings_ms = dict()

    def add(self, suite, name=None):
        """
        Adds the specified suite to this kernel with the specified alternate
        name.

        :param suite: The suite to add.
        :param name: An alternate name for the suite; if no alternate name
        is given, the suite's name is used instead.
        """
        if name is None:
            name = suite.name
        self.suites[name] = suite

    def remove(self, name):
        """
        Removes the suite with the specified name from this kernel.

        :param name: The name of the suite to remove.
        """
        if name in self.suites:
            del self.suites[name]

    def run(self, names, context):
        """
        Runs the named suites in dependency order.

        A suite that raises SuiteError is recorded as a single failed result
        and every selected suite depending on it is skipped the same way.

        :param names: The names of the suites to run, or None for all.
        :param context: The verification context handed to each suite.
        :return: A list of CheckResults in execution order.
        :raise ValueError: If a name is unknown or there are no suites.
        """
        if not self.suites:
            raise ValueError("There are no suites available for use.")
        if names is None:
            names = list(self.suites)
        unknown = sorted(set(names) - set(self.suites))
        if unknown:
            raise ValueError("Unknown suite(s) %s; expected one of %s."
                             % (", ".join(unknown),
                                ", ".join(sorted(self.suites))))

        selected = dict((name, self.suites[name]) for name in names)
        results = []
        broken = set()
        self.timings_ms = dict()

        for suite in _get_execution_order(selected):
            missing = sorted(set(suite.get_dependencies()) & broken)
            if missing:
                _logger.warning("Skipping <%s> because %s could not run.",
                                suite.name, ", ".join(missing))
                results.append(CheckResult(
                    suite.name, "suite", passed=False, error="SuiteError",
                    detail={"skipped_because": missing}))
                broken.add(suite.name)
                continue

            _logger.info("Running suite <%s>.", suite.name)
            with SystemTimer() as timer:
                try:
                    outcome = suite.run(context)
                except SuiteError as error:
                    _logger.critical("Caught suite error from <%s>: %s",
                                     suite.name, error)
                    outcome = [CheckResult(suite.name, "suite", passed=False,
                                           error="SuiteError",
                                           detail={"message": str(error)})]
                    broken.add(suite.name)
            self.timings_ms[suite.name] = timer.elapsed_ms

            failed = sum(1 for result in outcome if not result.passed)
            _logger.info("Suite <%s> finished: %d check(s), %d failed.",
                         suite.name, len(outcome), failed)
            results.extend(outcome)
        return results
