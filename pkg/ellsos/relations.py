"""
Contains numerical checks of the relations satisfied by the partition
function: the functional equation over L + 1 spectral parameters and its
coefficients, the separation into partition functions of a smaller lattice,
the symmetry in the spectral parameters, the special zeroes and the
truncated asymptotic multi-sum.
"""
import itertools
import logging
import math

import numpy as np

from ellsos.partition import Permutation
from ellsos.partition import evaluate
from ellsos.weights import SingularCoefficient
from ellsos.weights import checked_denominator

DEFAULT_TERM_CEILING = 2000000

_logger = logging.getLogger(__name__)


class TermBudgetExceeded(ValueError):
    """
    Represents an exception that is thrown when a truncated multi-sum would
    need more terms than its configured ceiling.
    """
    pass


class FunctionalCoefficients:
    """
    Represents the coefficients of the functional equation

        M_0 Z_{theta - gamma}(lambda_1, ..., lambda_L)
          + sum_{i = 0}^{L} N_i Z_theta(lambda_0, ..., ^lambda_i, ..., lambda_L) = 0.

    Attributes:
        m0 (complex): The coefficient M_0.
        n (tuple): The coefficients N_0, ..., N_L.
    """

    def __init__(self, m0, n):
        self.m0 = complex(m0)
        self.n = tuple(complex(value) for value in n)

    def __repr__(self):
        return "FunctionalCoefficients(m0=%r, n=%r)" % (self.m0, self.n)

    def magnitude(self):
        """
        Returns the largest magnitude among all coefficients.
        """
        return max(abs(self.m0), max(abs(value) for value in self.n))


def _exchange(values, target, gamma, ev, label):
    """
    Returns prod over values v of f(v - target + gamma) / f(v - target).
    """
    values = np.asarray(values, dtype=complex)
    if values.size == 0:
        return 1.0
    denominators = checked_denominator(ev.f(values - target), ev, label,
                                       SingularCoefficient)
    return np.prod(ev.f(values - target + gamma) / denominators)


def functional_coefficients(params, lam0, ev):
    """
    Computes the coefficients M_0, N_0, ..., N_L of the functional equation
    for the additional spectral parameter lam0.

    :raise SingularCoefficient: If lam0 or two spectral parameters coincide.
    :raise SingularDynamicalParameter: If f(theta + L gamma) or
    f(theta + (L + 1) gamma) is numerically zero.
    """
    f = ev.f
    L = params.L
    gamma = params.gamma
    theta = params.theta
    lambdas = np.asarray(params.lambdas)
    mu = np.asarray(params.mu)

    top = checked_denominator(f(theta + L * gamma), ev, "f(theta + L gamma)")
    above = checked_denominator(f(theta + (L + 1) * gamma), ev,
                                "f(theta + (L+1) gamma)")

    m0 = f(theta) / top * np.prod(f(lam0 - mu))
    n = [-f(theta + gamma) / above * np.prod(f(lam0 - mu + gamma))
         * _exchange(lambdas, lam0, gamma, ev, "f(lambda_j - lambda_0)")]
    for i in range(L):
        others = np.delete(lambdas, i)
        separation = checked_denominator(f(lambdas[i] - lam0), ev,
                                         "f(lambda_%d - lambda_0)" % (i + 1),
                                         SingularCoefficient)
        n.append(f(theta + gamma + lam0 - lambdas[i]) / above
                 * f(gamma) / separation
                 * np.prod(f(lambdas[i] - mu + gamma))
                 * _exchange(others, lambdas[i], gamma, ev,
                             "f(lambda_j - lambda_%d)" % (i + 1)))
    return FunctionalCoefficients(m0, n)


def _relative(residual, summands, relative):
    if not relative:
        return residual
    scale = max(abs(value) for value in summands)
    return abs(residual) / scale if scale > 0.0 else abs(residual)


def _accumulate(summands):
    return complex(math.fsum(value.real for value in summands),
                   math.fsum(value.imag for value in summands))


def functional_residual(params, lam0, ev, method="permsum", relative=False,
                        contour=None):
    """
    Evaluates the left-hand side of the functional equation with the
    partition function computed by the named method.

    :param relative: Whether to return the magnitude of the residual divided
    by the largest summand instead of the complex residual.
    """
    coefficients = functional_coefficients(params, lam0, ev)
    shifted = params.replace(theta=params.theta - params.gamma)
    summands = [coefficients.m0 * evaluate(method, shifted, ev, contour)]

    everything = (complex(lam0),) + params.lambdas
    for i, coefficient in enumerate(coefficients.n):
        subset = everything[:i] + everything[i + 1:]
        summands.append(coefficient * evaluate(
            method, params.replace(lambdas=subset), ev, contour))
    return _relative(_accumulate(summands), summands, relative)


def _reduced(args, params, ev, method, contour=None):
    """
    Evaluates V(args) = Z_theta(mu_1, args) / prod_a f(a - mu_1 + gamma).
    """
    mu1 = params.mu[0]
    args = tuple(args)
    value = evaluate(method, params.replace(lambdas=(mu1,) + args), ev,
                     contour)
    if not args:
        return value
    denominators = checked_denominator(
        ev.f(np.asarray(args) - mu1 + params.gamma), ev,
        "f(lambda_j - mu_1 + gamma)", SingularCoefficient)
    return value / np.prod(denominators)


def recursion_coefficients(params, ev):
    """
    Computes the separation coefficients

        m_i = f(theta + gamma + mu_1 - lambda_i) / f(theta + gamma)
              prod_{j >= 2} f(lambda_i - mu_j + gamma) / f(mu_1 - mu_j + gamma)
              prod_{j != i} f(lambda_j - mu_1)
                            f(lambda_j - lambda_i + gamma) / f(lambda_j - lambda_i).
    """
    f = ev.f
    gamma = params.gamma
    lambdas = np.asarray(params.lambdas)
    mu = np.asarray(params.mu)
    dynamical = checked_denominator(f(params.theta + gamma), ev,
                                    "f(theta + gamma)")
    cross = checked_denominator(f(mu[0] - mu[1:] + gamma), ev,
                                "f(mu_1 - mu_j + gamma)", SingularCoefficient)
    result = []
    for i in range(params.L):
        others = np.delete(lambdas, i)
        result.append(f(params.theta + gamma + mu[0] - lambdas[i]) / dynamical
                      * np.prod(f(lambdas[i] - mu[1:] + gamma) / cross)
                      * np.prod(f(others - mu[0]))
                      * _exchange(others, lambdas[i], gamma, ev,
                                  "f(lambda_j - lambda_%d)" % (i + 1)))
    return [complex(value) for value in result]


def recursion_residual(params, ev, method="permsum", relative=False):
    """
    Evaluates Z_theta(lambda_1, ..., lambda_L) - sum_i m_i V(.., ^lambda_i, ..)
    where V is the partition function with its first spectral parameter
    pinned to mu_1 and the factors f(lambda_j - mu_1 + gamma) removed.
    """
    coefficients = recursion_coefficients(params, ev)
    total = evaluate(method, params, ev)
    summands = []
    for i, coefficient in enumerate(coefficients):
        others = params.lambdas[:i] + params.lambdas[i + 1:]
        summands.append(coefficient * _reduced(others, params, ev, method))
    return _relative(total - _accumulate(summands), [total] + summands,
                     relative)


def reduced_lattice_residual(params, ev, method="permsum", relative=False):
    """
    Compares V(lambda_2, ..., lambda_L) with
    f(gamma) prod_{k >= 2} f(mu_1 - mu_k + gamma) Z_{theta + gamma} of the
    (L - 1)-site lattice with inhomogeneities mu_2, ..., mu_L.
    """
    if params.L < 2:
        raise ValueError("The reduced lattice needs L >= 2, not L=%d."
                         % params.L)
    f = ev.f
    mu = np.asarray(params.mu)
    reduced = _reduced(params.lambdas[1:], params, ev, method)
    smaller = params.replace(L=params.L - 1,
                             theta=params.theta + params.gamma,
                             mu=params.mu[1:], lambdas=params.lambdas[1:])
    expected = (f(params.gamma) * np.prod(f(mu[0] - mu[1:] + params.gamma))
                * evaluate(method, smaller, ev))
    return _relative(complex(reduced - expected), [reduced, expected],
                     relative)


def symmetry_residual(params, i, j, ev, method="permsum", relative=False):
    """
    Evaluates Z(.., lambda_i, .., lambda_j, ..) - Z(.., lambda_j, .., lambda_i, ..)
    for the 1-based positions i < j.
    """
    if not 1 <= i < j <= params.L:
        raise ValueError("Positions must satisfy 1 <= i < j <= L, not "
                         "i=%r, j=%r." % (i, j))
    swapped = list(params.lambdas)
    swapped[i - 1], swapped[j - 1] = swapped[j - 1], swapped[i - 1]
    if tuple(swapped) == params.lambdas:
        return 0.0 if relative else 0j
    before = evaluate(method, params, ev)
    after = evaluate(method, params.replace(lambdas=swapped), ev)
    return _relative(before - after, [before, after], relative)


def coefficient_swap_residual(params, lam0, i, j, ev, relative=False):
    """
    Measures how far the coefficients of the functional equation are from
    the exchange N_i <-> N_j (with M_0 and every other N_k unchanged) under
    lambda_i <-> lambda_j, for 1-based positions i < j.

    :return: The largest coefficient deviation.
    """
    if not 1 <= i < j <= params.L:
        raise ValueError("Positions must satisfy 1 <= i < j <= L, not "
                         "i=%r, j=%r." % (i, j))
    swapped = list(params.lambdas)
    swapped[i - 1], swapped[j - 1] = swapped[j - 1], swapped[i - 1]
    before = functional_coefficients(params, lam0, ev)
    after = functional_coefficients(params.replace(lambdas=swapped), lam0, ev)

    expected = list(before.n)
    expected[i], expected[j] = expected[j], expected[i]
    deviations = [abs(before.m0 - after.m0)]
    deviations.extend(abs(x - y) for x, y in zip(expected, after.n))
    residual = max(deviations)
    if relative:
        scale = before.magnitude()
        return residual / scale if scale > 0.0 else residual
    return residual


class ZeroCascade:
    """
    Represents the functional equation specialised to lambda_0 = mu_1 and
    lambda_1 = mu_1 - gamma, where M_0, N_0 and N_1 vanish and what is left
    forces Z_theta(mu_1, mu_1 - gamma, lambda_3, ...) to vanish.

    Attributes:
        coefficients (FunctionalCoefficients): The specialised coefficients.
        vanishing (complex): Z_theta(mu_1, mu_1 - gamma, lambda_3, ...).
    """

    def __init__(self, coefficients, vanishing):
        self.coefficients = coefficients
        self.vanishing = complex(vanishing)

    @property
    def n2(self):
        return self.coefficients.n[2]


def special_zero_cascade(params, ev, method="permsum"):
    """
    Specialises the functional equation to lambda_0 = mu_1 and
    lambda_1 = mu_1 - gamma and evaluates the quantity multiplied by N_2.

    :param params: Lattice parameters with L >= 2; lambda_1 is replaced.
    """
    if params.L < 2:
        raise ValueError("The zero cascade needs L >= 2, not L=%d."
                         % params.L)
    mu1 = params.mu[0]
    lambdas = (mu1 - params.gamma,) + params.lambdas[1:]
    specialised = params.replace(lambdas=lambdas)
    coefficients = functional_coefficients(specialised, mu1, ev)
    vanishing = evaluate(method, specialised.replace(
        lambdas=(mu1, mu1 - params.gamma) + params.lambdas[2:]), ev)
    _logger.debug("Zero cascade: |N_2| = %g, |Z| = %g.",
                  abs(coefficients.n[2]), abs(vanishing))
    return ZeroCascade(coefficients, vanishing)


class InversionSet:
    """
    Represents the inversion vertices {(a, b) : a < b, sigma(a) > sigma(b)}
    of a permutation.

    Attributes:
        pairs (frozenset): The 1-based pairs (a, b).
    """

    def __init__(self, pairs):
        self.pairs = frozenset(pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __contains__(self, pair):
        return pair in self.pairs

    def __eq__(self, other):
        if isinstance(other, InversionSet):
            return self.pairs == other.pairs
        return self.pairs == frozenset(other)

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        return "InversionSet(%r)" % (sorted(self.pairs),)


def inversion_vertices(sigma):
    """
    Returns the inversion vertices of the specified permutation.
    """
    if not isinstance(sigma, Permutation):
        sigma = Permutation(sigma)
    L = len(sigma)
    return InversionSet((a, b) for a in range(1, L + 1)
                        for b in range(a + 1, L + 1) if sigma[a] > sigma[b])


class AsymptoticSpec:
    """
    Represents the truncation of the asymptotic multi-sum: every summation
    index runs over [-n_cut, n_cut].

    Attributes:
        n_cut (int): The truncation, n_cut >= 0.
        ceiling (int): The largest number of terms that may be summed.
    """

    def __init__(self, n_cut, ceiling=DEFAULT_TERM_CEILING):
        if int(n_cut) != n_cut or n_cut < 0:
            raise ValueError("The truncation n_cut=%r must be a "
                             "non-negative integer." % n_cut)
        self.n_cut = int(n_cut)
        self.ceiling = int(ceiling)

    def term_count(self, L):
        """
        Returns (2 n_cut + 1)^{L (L - 1)} L!, the number of summed terms.
        """
        return (2 * self.n_cut + 1) ** (L * (L - 1)) * math.factorial(L)


def asy_eval(params, spec, ev):
    """
    Evaluates the truncated asymptotic multi-sum

        f(gamma)^L / 2^{L (L - 1)}
          sum_n (-1)^{sum n - L (L - 1) / 2}
                prod_{a, i} p_n q_n e_n^{lambda_a - mu_i^(a)}
                sum_sigma prod_{(a, b) in I_sigma} (q_{n_{b-1}^(a)} q_{n_a^(b)})^{-1}

    with e_n = e^{-(2n + 1)}, p_n = p^{(n + 1/2)^2}, q_n = e_n^gamma and
    mu^(a) the inhomogeneities without mu_a, where n = n_i^(a) runs over
    a = 1..L and i = 1..L-1.  The theta evaluator is only used for f(gamma).

    :raise TermBudgetExceeded: If the truncation needs more terms than the
    ceiling allows.
    """
    L = params.L
    count = spec.term_count(L)
    if count > spec.ceiling:
        raise TermBudgetExceeded("The asymptotic sum needs %d terms at "
                                 "L=%d, n_cut=%d; the ceiling is %d."
                                 % (count, L, spec.n_cut, spec.ceiling))

    gamma = params.gamma
    prefactor = ev.f(gamma) ** L / 2.0 ** (L * (L - 1))
    width = L - 1
    dims = L * width
    if dims == 0:
        return complex(prefactor)

    side = 2 * spec.n_cut + 1
    indices = np.indices((side,) * dims).reshape(dims, -1).T - spec.n_cut
    n = indices.reshape(-1, L, width)
    orders = 2 * n + 1

    # mu_i^(a) = mu_i for i < a, mu_{i+1} otherwise (0-based a, i)
    mu = np.asarray(params.mu)
    lambdas = np.asarray(params.lambdas)
    excluded = np.array([[mu[i] if i < a else mu[i + 1] for i in range(width)]
                         for a in range(L)])
    offsets = lambdas[:, None] - excluded

    tau = params.nome.tau
    exponent = np.sum(1j * math.pi * tau * (n + 0.5) ** 2
                      - orders * gamma - orders * offsets[None, :, :],
                      axis=(1, 2))
    parity = np.sum(n, axis=(1, 2)) - L * width // 2
    sign = np.where(parity % 2 == 0, 1.0, -1.0)

    inversions = np.zeros(n.shape[0], dtype=complex)
    for sigma in Permutation.all(L):
        weight = np.zeros(n.shape[0], dtype=complex)
        for a, b in inversion_vertices(sigma):
            weight += (orders[:, a - 1, b - 2] + orders[:, b - 1, a - 1]) \
                * gamma
        inversions += np.exp(weight)

    terms = prefactor * sign * np.exp(exponent) * inversions
    return _accumulate(terms.tolist())
