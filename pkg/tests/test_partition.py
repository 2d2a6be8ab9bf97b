import unittest

import numpy as np

from .context import draw
from ellsos.partition import ContourSpec
from ellsos.partition import ContourTooTight
from ellsos.partition import Permutation
from ellsos.partition import default_contour
from ellsos.partition import evaluate
from ellsos.partition import h_integrand
from ellsos.partition import resolve_method
from ellsos.partition import residue_term
from ellsos.partition import z_bruteforce
from ellsos.partition import z_closed_L1
from ellsos.partition import z_perm_sum
from ellsos.partition import z_quadrature
from ellsos.partition import z_residues
from ellsos.suite.partition import special_zero_residual
from ellsos.weights import SingularParameterError


def relative(first, second):
    return abs(first - second) / max(abs(first), abs(second))


def contracted(params, factor=0.25):
    lambdas = np.asarray(params.lambdas)
    center = np.mean(lambdas)
    return params.replace(lambdas=center + factor * (lambdas - center))


class PermutationTest(unittest.TestCase):

    def test_enumeration(self):
        self.assertEqual([tuple(sigma) for sigma in Permutation.all(3)],
                         [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1),
                          (3, 1, 2), (3, 2, 1)])

    def test_one_based(self):
        sigma = Permutation((3, 1, 2))
        self.assertEqual(sigma[1], 3)
        self.assertEqual(sigma[3], 2)
        self.assertEqual(len(sigma), 3)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            Permutation((1, 1, 2))
        with self.assertRaises(ValueError):
            Permutation((0, 1))


class SingleSiteTest(unittest.TestCase):

    def test_every_method_matches_closed_form(self):
        for seed in range(3):
            sample = draw(1, seed=seed)
            params, ev = sample.params, sample.ev
            f = ev.f
            expected = (f(params.gamma)
                        * f(params.theta + params.gamma - params.lambdas[0]
                            + params.mu[0])
                        / f(params.theta + params.gamma))
            self.assertLess(relative(z_closed_L1(params, ev), expected),
                            1e-15)
            for method in ("bruteforce", "permsum", "residues"):
                self.assertLess(relative(evaluate(method, params, ev),
                                         expected), 1e-13, method)
            self.assertLess(relative(z_quadrature(params, ev), expected),
                            1e-10)

    def test_closed_form_needs_one_site(self):
        sample = draw(2)
        with self.assertRaises(ValueError):
            z_closed_L1(sample.params, sample.ev)


class EvaluatorAgreementTest(unittest.TestCase):

    def test_perm_sum_matches_operator_product(self):
        for L in range(2, 6):
            sample = draw(L, seed=100 + L)
            params, ev = sample.params, sample.ev
            self.assertLess(relative(z_perm_sum(params, ev),
                                     z_bruteforce(params, ev)), 1e-10)

    def test_prefactor_forms_agree(self):
        sample = draw(3, seed=7)
        params, ev = sample.params, sample.ev
        self.assertLess(relative(z_perm_sum(params, ev),
                                 z_perm_sum(params, ev,
                                            simplify_prefactor=False)),
                        1e-13)

    def test_residues_match_perm_sum(self):
        for L in range(2, 5):
            sample = draw(L, seed=200 + L)
            params, ev = sample.params, sample.ev
            self.assertLess(relative(z_residues(params, ev),
                                     z_perm_sum(params, ev)), 1e-10)

    def test_quadrature_matches_residues(self):
        for L, tolerance in ((2, 1e-8), (3, 1e-7)):
            sample = draw(L, seed=300 + L)
            params = contracted(sample.params)
            ev = sample.ev
            contour = default_contour(params, nodes=64)
            self.assertLess(relative(z_quadrature(params, ev, contour),
                                     z_residues(params, ev)), tolerance)

    def test_quadrature_node_doubling(self):
        sample = draw(2, seed=302)
        params = contracted(sample.params)
        coarse = z_quadrature(params, sample.ev, default_contour(params, 64))
        fine = z_quadrature(params, sample.ev, default_contour(params, 128))
        self.assertLess(relative(coarse, fine), 1e-10)

    def test_quadrature_coarse_three_sites(self):
        sample = draw(3, seed=303)
        params = contracted(sample.params)
        value = z_quadrature(params, sample.ev, default_contour(params, 48))
        self.assertLess(relative(value, z_residues(params, sample.ev)), 1e-7)

    def test_symmetric_in_spectral_parameters(self):
        sample = draw(4, seed=8)
        params, ev = sample.params, sample.ev
        swapped = params.replace(lambdas=params.lambdas[::-1])
        self.assertLess(relative(z_perm_sum(params, ev),
                                 z_perm_sum(swapped, ev)), 1e-11)

    def test_special_zero(self):
        for L in (2, 3, 4):
            sample = draw(L, seed=9 + L)
            params, ev = sample.params, sample.ev
            mu1 = params.mu[0]
            lambdas = list(params.lambdas)
            lambdas[0], lambdas[-1] = mu1 - params.gamma, mu1
            zero = z_bruteforce(params.replace(lambdas=lambdas), ev)
            self.assertLess(abs(zero),
                            1e-10 * abs(z_bruteforce(params, ev)))

    def test_special_zero_residual(self):
        sample = draw(3, seed=10)
        rng = np.random.default_rng(10)
        for i, j in ((0, 1), (2, 0)):
            residual = special_zero_residual(sample.params, sample.ev, i, j,
                                             rng)
            self.assertLess(residual, 1e-10)


class ResidueTest(unittest.TestCase):

    def test_terms(self):
        sample = draw(3, seed=12)
        params, ev = sample.params, sample.ev
        self.assertEqual(residue_term((1, 1, 2), params, ev), 0j)
        total = sum(residue_term(tuple(sigma), params, ev)
                    for sigma in Permutation.all(3))
        self.assertLess(relative(total, z_residues(params, ev)), 1e-13)
        with self.assertRaises(ValueError):
            residue_term((1, 2), params, ev)

    def test_integrand_broadcasts(self):
        sample = draw(2, seed=13)
        params, ev = sample.params, sample.ev
        rng = np.random.default_rng(13)
        first = rng.normal(size=3) + 1j * rng.normal(size=3)
        second = rng.normal(size=4) + 1j * rng.normal(size=4)
        grid = h_integrand([first[:, None], second[None, :]], params, ev)
        self.assertEqual(grid.shape, (3, 4))
        for i in range(3):
            for j in range(4):
                value = h_integrand([first[i], second[j]], params, ev)
                self.assertLess(abs(grid[i, j] - value),
                                1e-13 * max(abs(value), 1e-300))


class ContourTest(unittest.TestCase):

    def test_default_contour_encloses_lambdas(self):
        sample = draw(2, seed=14)
        params = contracted(sample.params)
        contour = default_contour(params)
        distances = np.abs(np.asarray(params.lambdas) - contour.center)
        self.assertTrue(np.all(distances < contour.radius))

    def test_too_small(self):
        sample = draw(2, seed=15)
        params = sample.params
        spread = max(abs(value - params.lambdas[0])
                     for value in params.lambdas)
        contour = ContourSpec(params.lambdas[0], 0.25 * spread)
        with self.assertRaises(ContourTooTight):
            contour.check(params)
        self.assertTrue(issubclass(ContourTooTight, SingularParameterError))

    def test_too_large(self):
        sample = draw(1, seed=16)
        params = sample.params
        with self.assertRaises(ContourTooTight):
            default_contour(params, radius_override=10.0)

    def test_invalid_nodes(self):
        with self.assertRaises(ValueError):
            ContourSpec(0j, 1.0, nodes=0)


class MethodTest(unittest.TestCase):

    def test_auto(self):
        self.assertEqual(resolve_method("auto", draw(1).params), "closed")
        self.assertEqual(resolve_method("auto", draw(2).params), "permsum")
        self.assertEqual(resolve_method("residues", draw(2).params),
                         "residues")

    def test_unknown(self):
        with self.assertRaises(ValueError):
            resolve_method("simpson", draw(1).params)
