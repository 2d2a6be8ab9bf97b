import cmath
import math
import unittest

import numpy as np

from .context import ellsos
from ellsos.theta import NonConvergent
from ellsos.theta import Nome
from ellsos.theta import ThetaError
from ellsos.theta import ThetaEvaluator
from ellsos.theta import addition_residual
from ellsos.theta import eval_f
from ellsos.theta import eval_f_prime
from ellsos.theta import reduce_argument
from ellsos.theta import trig_limit_deviation


def series(lam, tau, terms=40):
    """
    Sums i sum_m (-1)^m p^{(m + 1/2)^2} sinh((2m + 1) lam) term by term.
    """
    total = 0j
    for m in range(terms):
        total += ((-1) ** m * cmath.exp(1j * math.pi * tau * (m + 0.5) ** 2)
                  * cmath.sinh((2 * m + 1) * lam))
    return 1j * total


class NomeTest(unittest.TestCase):

    def test_p_and_tau_agree(self):
        nome = Nome(p=0.2)
        self.assertAlmostEqual(cmath.exp(1j * math.pi * nome.tau), 0.2,
                               places=14)
        self.assertAlmostEqual(Nome(tau=nome.tau).p, 0.2, places=14)

    def test_exactly_one_parameter(self):
        with self.assertRaises(ValueError):
            Nome()
        with self.assertRaises(ValueError):
            Nome(tau=1j, p=0.1)

    def test_rejects_invalid_values(self):
        with self.assertRaises(ValueError):
            Nome(tau=0.5)
        with self.assertRaises(ValueError):
            Nome(tau=0.5 - 1j)
        with self.assertRaises(ValueError):
            Nome(p=1.0)
        with self.assertRaises(ValueError):
            Nome(p=0.0)

    def test_periods(self):
        omega1, omega2 = Nome(tau=0.3 + 0.8j).periods
        self.assertEqual(omega1, 1j * math.pi)
        self.assertAlmostEqual(omega2, 1j * math.pi * (0.3 + 0.8j))


class ThetaEvaluatorTest(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(7)
        self.nome = Nome(tau=0.2 + 0.6j)
        self.ev = ThetaEvaluator(self.nome)

    def points(self, count=10):
        return (self.rng.uniform(-1.0, 1.0, count)
                + 1j * self.rng.uniform(-0.5, 0.5, count))

    def test_matches_direct_series(self):
        for lam in self.points():
            expected = series(lam, self.nome.tau)
            self.assertLess(abs(self.ev.f(lam) - expected),
                            1e-13 * max(abs(expected), 1.0))

    def test_zero_and_oddness(self):
        self.assertEqual(self.ev.f(0.0), 0j)
        for lam in self.points():
            self.assertLess(abs(self.ev.f(-lam) + self.ev.f(lam)),
                            1e-15 * abs(self.ev.f(lam)))

    def test_quasi_periods(self):
        omega1, omega2 = self.nome.periods
        for lam in self.points():
            value = self.ev.f(lam)
            self.assertLess(abs(self.ev.f(lam + omega1) + value),
                            1e-12 * abs(value))
            expected = -cmath.exp(-2.0 * lam - omega2) * value
            self.assertLess(abs(self.ev.f(lam + omega2) - expected),
                            1e-12 * abs(expected))

    def test_addition_rule(self):
        for _ in range(5):
            x, y, z, w = self.points(4)
            self.assertLess(abs(addition_residual(x, y, z, w, self.ev)),
                            1e-12)

    def test_derivative(self):
        step = 1e-5
        for lam in self.points(5):
            difference = (self.ev.f(lam + step)
                          - self.ev.f(lam - step)) / (2.0 * step)
            self.assertLess(abs(difference - self.ev.f_prime(lam)), 1e-8)
        self.assertAlmostEqual(self.ev.scale, abs(self.ev.f_prime(0.0)))

    def test_scale_fixed_at_construction(self):
        ev = ThetaEvaluator(self.nome)
        self.assertIn("scale", vars(ev))
        before = dict(vars(ev))
        ev.f(0.3 + 0.2j)
        ev.f_prime(0.1)
        self.assertEqual(vars(ev), before)

    def test_derivative_of_reduced_argument(self):
        far = 4.0 - 2.5j
        step = 1e-6
        difference = (self.ev.f(far + step) - self.ev.f(far - step)) \
            / (2.0 * step)
        exact = self.ev.f_prime(far)
        self.assertLess(abs(difference - exact), 1e-6 * abs(exact))

    def test_vectorised(self):
        points = self.points(6).reshape(2, 3)
        values = eval_f(points, self.ev)
        primes = eval_f_prime(points, self.ev)
        self.assertEqual(values.shape, (2, 3))
        for index in np.ndindex(points.shape):
            value = self.ev.f(points[index])
            prime = self.ev.f_prime(points[index])
            self.assertLess(abs(values[index] - value), 1e-14 * abs(value))
            self.assertLess(abs(primes[index] - prime), 1e-14 * abs(prime))

    def test_reduction_agrees_with_plain_series(self):
        plain = ThetaEvaluator(self.nome, reduce_arguments=False)
        for lam in (2.5 + 0.3j, -3.0 - 1.0j, 1.2 + 4.0j):
            value = self.ev.f(lam)
            self.assertLess(abs(value - plain.f(lam)), 1e-11 * abs(value))

    def test_reduce_argument(self):
        lam = 5.0 + 7.0j
        reduced, multiplier = reduce_argument(lam, self.nome)
        omega2 = self.nome.periods[1]
        beta = -reduced.real / -omega2.real
        self.assertLessEqual(abs(beta), 0.5 + 1e-12)
        self.assertLess(abs(multiplier * self.ev.f(reduced)
                            - self.ev.f(lam)), 1e-10 * abs(self.ev.f(lam)))

    def test_invalid_policy(self):
        with self.assertRaises(ValueError):
            ThetaEvaluator(self.nome, n_max=0)
        with self.assertRaises(ValueError):
            ThetaEvaluator(self.nome, epsilon_target=0.0)

    def test_non_convergent(self):
        nome = Nome(p=0.99)
        plain = ThetaEvaluator(nome, reduce_arguments=False)
        with self.assertRaises(NonConvergent):
            plain.f(0.5)
        self.assertTrue(issubclass(NonConvergent, ThetaError))
        # reduction keeps the cutoff under the ceiling
        ThetaEvaluator(nome).f(0.5)


class TrigonometricLimitTest(unittest.TestCase):

    def test_leading_correction(self):
        lam = 0.7
        for p in (1e-3, 1e-4):
            deviation = trig_limit_deviation(lam, p)
            self.assertLessEqual(deviation, p)
            self.assertAlmostEqual(deviation / p ** 2,
                                   abs(math.sinh(3.0 * lam)), delta=1e-4)

    def test_rejects_large_nome(self):
        with self.assertRaises(ValueError):
            trig_limit_deviation(0.7, 0.5)
