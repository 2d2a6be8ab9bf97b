import io
import logging
import threading
import time
import unittest

import numpy as np

from .context import ellsos
from ellsos.util.bounds import Circle
from ellsos.util.logging import CHECK
from ellsos.util.logging import ColoredFormatter
from ellsos.util.logging import LogLevel
from ellsos.util.logging import configure
from ellsos.util.timers import SystemTimer
from ellsos.util.workers import ordered_map


def record(level, message, name="ellsos.test"):
    return logging.LogRecord(name, level, __file__, 1, message, None, None)


class LoggingTest(unittest.TestCase):

    def tearDown(self):
        configure()

    def test_plain_format(self):
        formatter = ColoredFormatter(use_color=False)
        self.assertEqual(formatter.format(record(logging.ERROR, "boom")),
                         "!! (ellsos.test) boom")
        self.assertEqual(formatter.format(record(CHECK, "ok")),
                         "~ (ellsos.test) ok")

    def test_color_wraps_symbol_only(self):
        text = ColoredFormatter().format(record(logging.DEBUG, "msg"))
        self.assertTrue(text.startswith("\033[33m>\033[0m"))
        self.assertTrue(text.endswith(" msg"))

    def test_check_level_registered(self):
        self.assertEqual(logging.getLevelName(CHECK), "CHECK")
        LogLevel.ensure("CHECK", CHECK)
        with self.assertRaises(KeyError):
            LogLevel.ensure("CHECK", CHECK + 1)

    def test_verbosity(self):
        stream = io.StringIO()
        logger = configure(0, stream)
        self.assertEqual(logger.level, logging.WARNING)
        logging.getLogger("ellsos.util").info("hidden")
        logging.getLogger("ellsos.util").warning("shown")
        self.assertEqual(stream.getvalue(), "* (ellsos.util) shown\n")

        self.assertEqual(configure(2, stream).level, CHECK)
        self.assertEqual(configure(7, stream).level, logging.DEBUG)
        self.assertEqual(len(logger.handlers), 1)


class SystemTimerTest(unittest.TestCase):

    def test_context_manager(self):
        with SystemTimer() as timer:
            time.sleep(0.01)
        elapsed = timer.elapsed_ms
        self.assertGreaterEqual(elapsed, 5.0)
        self.assertEqual(timer.elapsed_ms, elapsed)

    def test_stop_without_start(self):
        timer = SystemTimer()
        self.assertEqual(timer.elapsed_ms, 0.0)
        with self.assertRaises(ValueError):
            timer.stop()


class CircleTest(unittest.TestCase):

    def test_contains_and_distance(self):
        circle = Circle(1 + 1j, 0.5)
        points = np.array([1 + 1j, 1.4 + 1j, 2 + 1j])
        np.testing.assert_array_equal(circle.contains(points),
                                      [True, True, False])
        np.testing.assert_allclose(circle.distance(points), [-0.5, -0.1, 0.5])

    def test_boundary_integrates_cauchy_kernel(self):
        circle = Circle(0.2j, 0.7)
        points, weights = circle.boundary(32)
        inside = np.sum(weights / (points - 0.1))
        outside = np.sum(weights / (points - 2.0))
        self.assertAlmostEqual(inside, 1.0, places=12)
        self.assertAlmostEqual(abs(outside), 0.0, places=8)

    def test_rejects_radius(self):
        with self.assertRaises(ValueError):
            Circle(0j, 0.0)


class OrderedMapTest(unittest.TestCase):

    def test_sequential(self):
        self.assertEqual(ordered_map(lambda x: x * x, range(5)),
                         [0, 1, 4, 9, 16])

    def test_threads_keep_order(self):
        names = set()

        def work(x):
            names.add(threading.current_thread().name)
            time.sleep(0.01 * (5 - x))
            return -x

        self.assertEqual(ordered_map(work, range(5), threads=3),
                         [0, -1, -2, -3, -4])
        self.assertGreater(len(names), 1)
