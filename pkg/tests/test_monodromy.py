import unittest

import numpy as np

from .context import draw
from ellsos.monodromy import BlockTag
from ellsos.monodromy import DimensionMismatch
from ellsos.monodromy import ModelParams
from ellsos.monodromy import StateVector
from ellsos.monodromy import a_eigenvalue_lowest
from ellsos.monodromy import a_eigenvalue_vacuum
from ellsos.monodromy import apply_block
from ellsos.monodromy import check_genericity
from ellsos.monodromy import commutation_residual_AB
from ellsos.monodromy import commutation_residual_BB
from ellsos.monodromy import recursion_b_residual
from ellsos.theta import Nome
from ellsos.weights import SingularCoefficient
from ellsos.weights import SingularDynamicalParameter
from ellsos.weights import boltzmann


class ModelParamsTest(unittest.TestCase):

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            ModelParams(2, 0.3, 0.1, [0.1], [0.2, 0.3], Nome(p=0.1))
        with self.assertRaises(ValueError):
            ModelParams(0, 0.3, 0.1, [], [], Nome(p=0.1))

    def test_replace(self):
        params = ModelParams(2, 0.3, 0.1, [0.1, 0.2], [0.3, 0.4],
                             Nome(p=0.1))
        smaller = params.replace(mu=[0.2], lambdas=[0.4])
        self.assertEqual(smaller.L, 1)
        self.assertEqual(smaller.gamma, params.gamma)
        self.assertEqual(params.replace(theta=0.5).theta, 0.5)

    def test_genericity(self):
        sample = draw(2, seed=3)
        params, ev = sample.params, sample.ev
        check_genericity(params, ev)
        same = params.replace(lambdas=(params.lambdas[0],) * 2)
        with self.assertRaises(SingularCoefficient):
            check_genericity(same, ev)
        with self.assertRaises(SingularDynamicalParameter):
            check_genericity(params.replace(theta=-params.gamma), ev)


class StateVectorTest(unittest.TestCase):

    def test_extremal_states(self):
        self.assertEqual(StateVector.vacuum(3).amplitudes[0], 1.0)
        self.assertEqual(StateVector.lowest(3).amplitudes[7], 1.0)
        self.assertEqual(StateVector.vacuum(3).sectors(), {0})
        self.assertEqual(StateVector.lowest(3).sectors(), {3})
        self.assertEqual(StateVector.basis(3, 5).sectors(), {2})

    def test_wrong_size(self):
        with self.assertRaises(DimensionMismatch):
            StateVector(2, np.zeros(3))

    def test_block_rejects_other_lattice(self):
        sample = draw(2, seed=1)
        with self.assertRaises(DimensionMismatch):
            apply_block(BlockTag.A, StateVector.vacuum(3), 0.1,
                        sample.params.theta, sample.params, sample.ev)


class BlockTest(unittest.TestCase):

    def test_single_site(self):
        sample = draw(1, seed=2)
        params, ev = sample.params, sample.ev
        lam, th = 0.35 - 0.2j, params.theta
        w = boltzmann(lam - params.mu[0], th, params.gamma, ev)

        vacuum = StateVector.vacuum(1)
        lowest = StateVector.lowest(1)
        for tag, state, expected in ((BlockTag.A, vacuum, [w.a_plus, 0]),
                                     (BlockTag.B, vacuum, [0, w.c_plus]),
                                     (BlockTag.C, lowest, [w.c_minus, 0]),
                                     (BlockTag.D, lowest, [0, w.a_minus]),
                                     (BlockTag.A, lowest, [0, w.b_plus]),
                                     (BlockTag.D, vacuum, [w.b_minus, 0])):
            image = apply_block(tag, state, lam, th, params, ev)
            np.testing.assert_allclose(image.amplitudes, expected,
                                       rtol=1e-15, atol=0.0)

    def test_linear(self):
        sample = draw(3, seed=4, extra=1)
        params, ev = sample.params, sample.ev
        rng = np.random.default_rng(4)
        first = rng.normal(size=8) + 1j * rng.normal(size=8)
        second = rng.normal(size=8) + 1j * rng.normal(size=8)
        lam = sample.extra[0]
        apply = lambda amplitudes: apply_block(
            BlockTag.B, StateVector(3, amplitudes), lam, params.theta, params,
            ev).amplitudes
        np.testing.assert_allclose(apply(first + 2.0 * second),
                                   apply(first) + 2.0 * apply(second),
                                   rtol=1e-12, atol=1e-14)

    def test_a_on_extremal_states(self):
        for L in range(1, 5):
            sample = draw(L, seed=L, extra=1)
            params, ev = sample.params, sample.ev
            lam = sample.extra[0]
            image = apply_block(BlockTag.A, StateVector.vacuum(L), lam,
                                params.theta, params, ev)
            expected = a_eigenvalue_vacuum(lam, params, ev)
            self.assertEqual(image.sectors(), {0})
            self.assertLess(abs(image.amplitudes[0] - expected),
                            1e-12 * abs(expected))

            image = apply_block(BlockTag.A, StateVector.lowest(L), lam,
                                params.theta, params, ev)
            expected = a_eigenvalue_lowest(lam, params.theta, params, ev)
            self.assertEqual(image.sectors(), {L})
            self.assertLess(abs(image.amplitudes[-1] - expected),
                            1e-12 * abs(expected))

    def test_b_lowers_weight(self):
        sample = draw(4, seed=5, extra=1)
        params, ev = sample.params, sample.ev
        state = StateVector.basis(4, 0b0101)
        image = apply_block(BlockTag.B, state, sample.extra[0], params.theta,
                            params, ev)
        self.assertEqual(image.sectors(), {3})


class ExchangeRelationTest(unittest.TestCase):

    def test_b_commute(self):
        for L in (1, 2, 3):
            sample = draw(L, seed=10 + L, extra=2)
            l1, l2 = sample.extra
            self.assertLess(commutation_residual_BB(
                l1, l2, sample.params.theta, sample.params, sample.ev,
                relative=True), 1e-11)

    def test_a_b_exchange(self):
        for L in (1, 2, 3):
            sample = draw(L, seed=20 + L, extra=2)
            l1, l2 = sample.extra
            self.assertLess(commutation_residual_AB(
                l1, l2, sample.params.theta, sample.params, sample.ev,
                relative=True), 1e-10)

    def test_b_recursion(self):
        for L in (2, 3, 4):
            sample = draw(L, seed=30 + L, extra=1)
            self.assertLess(recursion_b_residual(
                sample.extra[0], sample.params.theta, sample.params,
                sample.ev, relative=True), 1e-12)

    def test_sweep_size_limit(self):
        sample = draw(7, seed=1, extra=2)
        l1, l2 = sample.extra
        with self.assertRaises(ValueError):
            commutation_residual_BB(l1, l2, sample.params.theta,
                                    sample.params, sample.ev)
