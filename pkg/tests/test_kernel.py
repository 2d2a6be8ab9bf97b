import unittest

from .context import ellsos
from ellsos.kernel import Kernel
from ellsos.kernel import Suite
from ellsos.kernel import SuiteError
from ellsos.kernel import _get_execution_order
from ellsos.report import CheckResult


class RecordingSuite(Suite):

    def __init__(self, name, dependencies=(), log=None, fail=False):
        super().__init__(name)
        self.dependencies = list(dependencies)
        self.log = log if log is not None else []
        self.fail = fail

    def get_dependencies(self):
        return self.dependencies

    def run(self, context):
        self.log.append(self.name)
        if self.fail:
            raise SuiteError("%s cannot run" % self.name)
        return [CheckResult(self.name + ".check", "x = x", residual=0.0,
                            tolerance=0.0, passed=True)]


class ExecutionOrderTest(unittest.TestCase):

    def test_dependencies_first(self):
        suites = {"c": RecordingSuite("c", ["b"]),
                  "b": RecordingSuite("b", ["a"]),
                  "a": RecordingSuite("a")}
        order = [suite.name for suite in _get_execution_order(suites)]
        self.assertEqual(order, ["a", "b", "c"])

    def test_same_depth_sorted(self):
        suites = {"z": RecordingSuite("z"), "m": RecordingSuite("m"),
                  "a": RecordingSuite("a", ["z"])}
        order = [suite.name for suite in _get_execution_order(suites)]
        self.assertEqual(order, ["m", "z", "a"])

    def test_missing_dependency_ignored(self):
        suites = {"b": RecordingSuite("b", ["a"])}
        self.assertEqual(len(_get_execution_order(suites)), 1)

    def test_cycle(self):
        suites = {"a": RecordingSuite("a", ["b"]),
                  "b": RecordingSuite("b", ["a"])}
        with self.assertRaises(SuiteError):
            _get_execution_order(suites)


class KernelTest(unittest.TestCase):

    def setUp(self):
        self.log = []
        self.kernel = Kernel()
        self.kernel.add(RecordingSuite("theta", log=self.log))
        self.kernel.add(RecordingSuite("weights", ["theta"], log=self.log))
        self.kernel.add(RecordingSuite("partition", ["weights"],
                                       log=self.log))

    def test_runs_all(self):
        results = self.kernel.run(None, context=None)
        self.assertEqual(self.log, ["theta", "weights", "partition"])
        self.assertTrue(all(result.passed for result in results))
        self.assertEqual(set(self.kernel.timings_ms),
                         {"theta", "weights", "partition"})

    def test_runs_selection(self):
        self.kernel.run(["partition"], context=None)
        self.assertEqual(self.log, ["partition"])

    def test_broken_suite_skips_dependants(self):
        self.kernel.add(RecordingSuite("weights", ["theta"], log=self.log,
                                       fail=True))
        results = self.kernel.run(None, context=None)
        self.assertEqual(self.log, ["theta", "weights"])
        self.assertEqual([result.passed for result in results],
                         [True, False, False])
        self.assertEqual(results[1].error, "SuiteError")
        self.assertEqual(results[2].detail["skipped_because"], ["weights"])

    def test_unknown_suite(self):
        with self.assertRaises(ValueError):
            self.kernel.run(["spectral"], context=None)

    def test_empty(self):
        with self.assertRaises(ValueError):
            Kernel().run(None, context=None)

    def test_remove(self):
        self.kernel.remove("partition")
        self.kernel.remove("missing")
        self.assertEqual(sorted(self.kernel.suites), ["theta", "weights"])
