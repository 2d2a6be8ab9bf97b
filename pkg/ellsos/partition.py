"""
Contains independent evaluators of the domain-wall partition function

    Z_theta(lambda_1, ..., lambda_L) =
        <0bar| B(lambda_1, theta + gamma) ... B(lambda_L, theta + L gamma) |0>

of the elliptic SOS model: the direct operator product, the sum over
permutations, the sum over iterated residues of the contour-integral
representation, a tensor trapezoidal quadrature of that integral and the
closed value for a single site.
"""
import itertools
import logging
import math

import numpy as np

from ellsos.monodromy import BlockTag
from ellsos.monodromy import StateVector
from ellsos.monodromy import apply_block
from ellsos.util.bounds import Circle
from ellsos.weights import SingularCoefficient
from ellsos.weights import SingularParameterError
from ellsos.weights import checked_denominator

DEFAULT_NODES = 64
MIN_SPREAD = 0.4
RADIUS_FACTOR = 1.25

_logger = logging.getLogger(__name__)


class ContourTooTight(SingularParameterError):
    """
    Represents an exception that is thrown when no circle separates the
    spectral parameters from the lattice translates of themselves.
    """
    pass


class Permutation:
    """
    Represents a permutation of 1..L in one-line notation.

    Attributes:
        sigma (tuple): The images sigma(1), ..., sigma(L).
    """

    def __init__(self, sigma):
        self.sigma = tuple(int(value) for value in sigma)
        if sorted(self.sigma) != list(range(1, len(self.sigma) + 1)):
            raise ValueError("%r is not a permutation of 1..%d."
                             % (self.sigma, len(self.sigma)))

    def __len__(self):
        return len(self.sigma)

    def __iter__(self):
        return iter(self.sigma)

    def __getitem__(self, position):
        """
        Returns sigma(position) for a 1-based position.
        """
        return self.sigma[position - 1]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.sigma == other.sigma

    def __hash__(self):
        return hash(self.sigma)

    def __repr__(self):
        return "Permutation(%r)" % (self.sigma,)

    @classmethod
    def all(cls, L):
        """
        Enumerates every permutation of 1..L in lexicographic order.
        """
        for sigma in itertools.permutations(range(1, L + 1)):
            yield cls(sigma)


class ContourSpec:
    """
    Represents the circle every integration variable runs over and the
    number of trapezoidal nodes per variable.

    Attributes:
        center (complex): The center of the circle.
        radius (float): The radius of the circle.
        nodes (int): The number of quadrature points per variable.
    """

    def __init__(self, center, radius, nodes=DEFAULT_NODES):
        if int(nodes) != nodes or nodes < 1:
            raise ValueError("The number of nodes must be a positive "
                             "integer, not %r." % nodes)
        self.circle = Circle(center, radius)
        self.nodes = int(nodes)

    def __repr__(self):
        return "ContourSpec(center=%r, radius=%r, nodes=%d)" % (
            self.center, self.radius, self.nodes)

    @property
    def center(self):
        return self.circle.center

    @property
    def radius(self):
        return self.circle.radius

    def check(self, params):
        """
        Verifies that the circle encloses every spectral parameter and none
        of their other lattice translates.

        :raise ContourTooTight: If either condition fails.
        """
        lambdas = np.asarray(params.lambdas)
        if not np.all(self.circle.contains(lambdas)):
            raise ContourTooTight("The contour %r does not enclose every "
                                  "spectral parameter." % self)
        nearest = _nearest_translate(lambdas, self.center, self.radius,
                                     params.nome)
        if nearest <= self.radius:
            raise ContourTooTight("A lattice translate of a spectral "
                                  "parameter lies %g from the center of %r."
                                  % (nearest, self))


def _nearest_translate(lambdas, center, reach, nome):
    """
    Returns the distance from the center to the nearest translate
    lambda_j + m i pi + n i pi tau with (m, n) != (0, 0), or infinity if
    there is none within the reach.
    """
    omega1, omega2 = nome.periods
    offset = float(np.max(np.abs(lambdas - center)))
    bound = reach + offset
    n_max = int(math.ceil(bound / abs(omega2.real))) + 1
    nearest = math.inf
    for n in range(-n_max, n_max + 1):
        m_max = int(math.ceil((bound + abs(n * omega2.imag)) / math.pi)) + 1
        for m in range(-m_max, m_max + 1):
            if m == 0 and n == 0:
                continue
            translates = lambdas + m * omega1 + n * omega2
            nearest = min(nearest, float(np.min(np.abs(translates - center))))
    return nearest


def default_contour(params, nodes=DEFAULT_NODES, radius_override=None):
    """
    Builds the default contour: a circle centered at the mean of the
    spectral parameters with radius 1.25 times their spread (at least 0.4),
    shrunk to the geometric mean of the enclosing and the excluding distance
    when a lattice translate would otherwise be enclosed.

    :param params: The lattice parameters.
    :param nodes: The number of quadrature points per variable.
    :param radius_override: An explicit radius to use instead.
    :return: A validated contour.
    :raise ContourTooTight: If no valid radius exists.
    """
    lambdas = np.asarray(params.lambdas)
    center = complex(np.mean(lambdas))
    enclosing = float(np.max(np.abs(lambdas - center)))

    if radius_override is not None:
        contour = ContourSpec(center, radius_override, nodes)
        contour.check(params)
        return contour

    spread = max(float(np.max(np.abs(lambdas[:, None] - lambdas[None, :]))),
                 MIN_SPREAD)
    radius = RADIUS_FACTOR * spread
    excluding = _nearest_translate(lambdas, center, radius, params.nome)
    if excluding <= radius:
        if enclosing > 0.0:
            radius = math.sqrt(enclosing * excluding)
        else:
            radius = 0.5 * excluding
        _logger.debug("Shrinking the contour radius to %g.", radius)
    if radius <= enclosing:
        raise ContourTooTight("The spectral parameters spread over %g but a "
                              "lattice translate lies %g from their mean."
                              % (enclosing, excluding))
    contour = ContourSpec(center, radius, nodes)
    contour.check(params)
    return contour


def z_bruteforce(params, ev):
    """
    Evaluates the partition function by applying B(lambda_L, theta + L gamma)
    through B(lambda_1, theta + gamma) to the highest weight state and
    reading the amplitude of the lowest weight state.
    """
    state = StateVector.vacuum(params.L)
    for j in range(params.L, 0, -1):
        state = apply_block(BlockTag.B, state, params.lambdas[j - 1],
                            params.theta + j * params.gamma, params, ev)
    return complex(state.amplitudes[-1])


def _f_matrix(rows, columns, shift, ev):
    return ev.f(np.asarray(rows)[:, None] - np.asarray(columns)[None, :]
                + shift)


def _exchange_factors(lambdas, gamma, ev):
    """
    Returns G[b, a] = f(lambda_b - lambda_a + gamma) / f(lambda_b - lambda_a)
    for b != a (the diagonal is left at one).
    """
    differences = _f_matrix(lambdas, lambdas, 0.0, ev)
    np.fill_diagonal(differences, 1.0)
    checked_denominator(differences, ev, "f(lambda_b - lambda_a)",
                        SingularCoefficient)
    return _f_matrix(lambdas, lambdas, gamma, ev) / differences


def _dynamical_denominators(params, ev):
    shifts = np.arange(1, params.L + 1)
    values = ev.f(params.theta + shifts * params.gamma)
    return checked_denominator(values, ev, "f(theta + j gamma), j = 1..L")


def z_perm_sum(params, ev, simplify_prefactor=True):
    """
    Evaluates the partition function as a sum over all permutations sigma of

        f(gamma)^L prod_n [f(theta + n gamma - lambda_s(n) + mu_n)
                           / f(theta + n gamma)]
                   prod_{j > n} f(lambda_s(n) - mu_j + gamma)
                   prod_{j < n} f(lambda_s(n) - mu_j)
                   prod_{m > n} G[s(m), s(n)]

    with G the exchange factors.  Terms are enumerated lexicographically and
    accumulated with math.fsum.

    :param simplify_prefactor: When false, the prefactor is evaluated as
    Omega_L / prod_{k >= 2} f(mu_1 - mu_k + gamma) with
    Omega_L = f(gamma)^L prod_{k >= 2} f(mu_1 - mu_k + gamma).
    :raise SingularCoefficient: If two spectral parameters coincide.
    """
    L = params.L
    gamma = params.gamma
    f = ev.f
    lambdas = np.asarray(params.lambdas)
    mu = np.asarray(params.mu)

    prefactor = f(gamma) ** L
    if not simplify_prefactor:
        cross = f(mu[0] - mu[1:] + gamma)
        checked_denominator(cross, ev, "f(mu_1 - mu_k + gamma)",
                            SingularCoefficient)
        omega = prefactor * np.prod(cross)
        prefactor = omega / np.prod(cross)

    denominators = _dynamical_denominators(params, ev)
    shifts = np.arange(1, L + 1)
    # rows[n, a]: every factor of F that depends only on (n, sigma(n) = a)
    rows = (f((params.theta + shifts * gamma + mu)[:, None]
              - lambdas[None, :]) / denominators[:, None])
    plus = _f_matrix(lambdas, mu, gamma, ev)
    plain = _f_matrix(lambdas, mu, 0.0, ev)
    for n in range(L):
        rows[n] *= np.prod(plus[:, n + 1:], axis=1) * np.prod(plain[:, :n],
                                                              axis=1)
    exchange = _exchange_factors(lambdas, gamma, ev)

    real, imag = [], []
    for sigma in itertools.permutations(range(L)):
        term = prefactor
        for n in range(L):
            term *= rows[n, sigma[n]]
            for m in range(n + 1, L):
                term *= exchange[sigma[m], sigma[n]]
        real.append(term.real)
        imag.append(term.imag)
    return complex(math.fsum(real), math.fsum(imag))


def h_integrand(w, params, ev):
    """
    Evaluates the integrand numerator

        H(w) = [f'(0) f(gamma)]^L prod_{i < j} f(w_j - w_i + gamma) f(w_j - w_i)
               prod_j f(theta + j gamma - w_j + mu_j) / f(theta + j gamma)
               prod_i [prod_{j < i} f(mu_j - w_i) prod_{j > i} f(w_i - mu_j + gamma)].

    :param w: A sequence of L complex scalars or mutually broadcastable
    arrays.
    :return: H with the broadcast shape of the arguments.
    """
    L = params.L
    if len(w) != L:
        raise ValueError("H takes %d variables, not %d." % (L, len(w)))
    f = ev.f
    gamma = params.gamma
    mu = params.mu
    w = [np.asarray(value, dtype=complex) for value in w]
    denominators = _dynamical_denominators(params, ev)

    result = (ev.f_prime(0.0) * f(gamma)) ** L
    for i in range(L):
        for j in range(i + 1, L):
            result = result * f(w[j] - w[i] + gamma) * f(w[j] - w[i])
    for j in range(L):
        result = result * (f(params.theta + (j + 1) * gamma - w[j] + mu[j])
                           / denominators[j])
    for i in range(L):
        for j in range(i):
            result = result * f(mu[j] - w[i])
        for j in range(i + 1, L):
            result = result * f(w[i] - mu[j] + gamma)
    if np.ndim(result) == 0:
        return complex(result)
    return result


def _residue_denominator(params, ev):
    """
    Returns f'(0)^L prod_{a != b} f(lambda_a - lambda_b).
    """
    differences = _f_matrix(params.lambdas, params.lambdas, 0.0, ev)
    np.fill_diagonal(differences, 1.0)
    checked_denominator(differences, ev, "f(lambda_a - lambda_b)",
                        SingularCoefficient)
    return ev.f_prime(0.0) ** params.L * np.prod(differences)


def residue_term(assignment, params, ev):
    """
    Returns the contribution of the iterated residue w_i -> lambda_{a_i}
    to the contour integral of H / prod_{i,j} f(w_i - lambda_j).

    :param assignment: The 1-based indices (a_1, ..., a_L).
    :return: Zero for a non-injective assignment, otherwise
    H(lambda_a) / (f'(0)^L prod_{a != b} f(lambda_a - lambda_b)).
    """
    if len(assignment) != params.L:
        raise ValueError("An assignment names one spectral parameter per "
                         "variable.")
    if len(set(assignment)) != len(assignment):
        return 0j
    w = [params.lambdas[index - 1] for index in assignment]
    return h_integrand(w, params, ev) / _residue_denominator(params, ev)


def z_residues(params, ev):
    """
    Evaluates the contour integral by summing its iterated residues over all
    injective assignments of the integration variables to the spectral
    parameters.
    """
    denominator = _residue_denominator(params, ev)
    real, imag = [], []
    for sigma in Permutation.all(params.L):
        w = [params.lambdas[index - 1] for index in sigma]
        term = h_integrand(w, params, ev) / denominator
        real.append(term.real)
        imag.append(term.imag)
    return complex(math.fsum(real), math.fsum(imag))


def z_quadrature(params, ev, contour=None):
    """
    Evaluates the contour integral of H / prod_{i,j} f(w_i - lambda_j) over
    the product of L copies of a circle with the tensor trapezoidal rule.

    :param contour: The contour; the default contour is used when absent.
    :raise ContourTooTight: If the contour does not separate the spectral
    parameters from their translates.
    """
    if contour is None:
        contour = default_contour(params)
    contour.check(params)
    L = params.L
    points, weights = contour.circle.boundary(contour.nodes)

    shape = [1] * L
    grids, measure = [], 1.0
    for axis in range(L):
        shape[axis] = contour.nodes
        grids.append(points.reshape(shape))
        measure = measure * weights.reshape(shape)
        shape[axis] = 1

    integrand = h_integrand(grids, params, ev)
    for grid in grids:
        for lam in params.lambdas:
            integrand = integrand / ev.f(grid - lam)
    return complex(np.sum(integrand * measure))


def z_closed_L1(params, ev):
    """
    Returns the single-site value
    f(gamma) f(theta + gamma - lambda + mu_1) / f(theta + gamma).
    """
    if params.L != 1:
        raise ValueError("The closed form only covers L = 1, not L=%d."
                         % params.L)
    f = ev.f
    gamma = params.gamma
    denominator = checked_denominator(f(params.theta + gamma), ev,
                                      "f(theta + gamma)")
    return f(gamma) * f(params.theta + gamma - params.lambdas[0]
                        + params.mu[0]) / denominator


EVALUATORS = {
    "bruteforce": z_bruteforce,
    "permsum": z_perm_sum,
    "residues": z_residues,
    "quadrature": z_quadrature,
    "closed": z_closed_L1,
}


def resolve_method(method, params):
    """
    Maps 'auto' onto the closed form for a single site and onto the
    permutation sum otherwise.
    """
    if method == "auto":
        return "closed" if params.L == 1 else "permsum"
    if method not in EVALUATORS:
        raise ValueError("Unknown evaluation method %r; expected one of %s."
                         % (method, ", ".join(sorted(EVALUATORS) + ["auto"])))
    return method


def evaluate(method, params, ev, contour=None):
    """
    Evaluates the partition function with the named method.

    :param method: One of the keys of EVALUATORS or 'auto'.
    :param contour: The contour used by the quadrature method.
    """
    method = resolve_method(method, params)
    _logger.debug("Evaluating Z with %s at L=%d.", method, params.L)
    if method == "quadrature":
        return z_quadrature(params, ev, contour)
    return EVALUATORS[method](params, ev)
