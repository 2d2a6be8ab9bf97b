"""
Contains the seeded parameter sampler used by the verification suites.

Every complex parameter is drawn with its real part uniform in [-1, 1] and
its imaginary part uniform in [-0.5, 0.5]; the nome is real and uniform in
[0.05, 0.3] unless fixed.  A draw that is not comfortably generic is thrown
away and redrawn, at most 100 times.
"""
import logging

import numpy as np

from ellsos.monodromy import ModelParams
from ellsos.monodromy import check_genericity
from ellsos.theta import DEFAULT_EPSILON
from ellsos.theta import DEFAULT_N_MAX
from ellsos.theta import Nome
from ellsos.theta import ThetaEvaluator
from ellsos.weights import GENERICITY_THRESHOLD
from ellsos.weights import SingularParameterError

MAX_REDRAWS = 100
GENERICITY_MARGIN = 1e8
NOME_RANGE = (0.05, 0.3)

_logger = logging.getLogger(__name__)


class SamplingError(Exception):
    """
    Represents an exception that is thrown when no generic draw was found
    within the redraw budget.
    """
    pass


class Sample:
    """
    Represents a single generic draw.

    Attributes:
        params (ModelParams): The lattice parameters.
        ev (ThetaEvaluator): The evaluator for the drawn nome.
        extra (tuple): Additional spectral parameters, generic with respect
        to the lattice ones.
    """

    def __init__(self, params, ev, extra=()):
        self.params = params
        self.ev = ev
        self.extra = tuple(extra)


class ParameterSampler:
    """
    Represents a source of reproducible random parameters.

    Attributes:
        rng (numpy.random.Generator): The random number generator.
        p (complex): A fixed nome, or None to draw one per sample.
        n_max (int): The series cutoff ceiling of the evaluators.
        epsilon_target (float): The truncation target of the evaluators.
    """

    def __init__(self, seed, p=None, n_max=DEFAULT_N_MAX,
                 epsilon_target=DEFAULT_EPSILON):
        self.rng = np.random.default_rng(seed)
        self.p = p
        self.n_max = n_max
        self.epsilon_target = epsilon_target

    def complex_value(self, count=None):
        """
        Draws one complex value, or an array of them.
        """
        real = self.rng.uniform(-1.0, 1.0, count)
        imag = self.rng.uniform(-0.5, 0.5, count)
        return real + 1j * imag

    def evaluator(self):
        """
        Draws a nome (unless fixed) and returns its evaluator.
        """
        if self.p is None:
            nome = Nome(p=self.rng.uniform(*NOME_RANGE))
        else:
            nome = Nome(p=self.p)
        return ThetaEvaluator(nome, n_max=self.n_max,
                              epsilon_target=self.epsilon_target)

    def _is_generic(self, params, ev, extra):
        L = params.L
        try:
            check_genericity(params, ev, margin=GENERICITY_MARGIN,
                             shifts=range(-L - 1, 2 * L + 3))
        except SingularParameterError:
            return False

        f = ev.f
        spectral = np.asarray(params.lambdas + tuple(extra))
        first, second = np.triu_indices(spectral.size, 1)
        values = np.concatenate([[f(params.gamma)],
                                 f(spectral - params.mu[0] + params.gamma),
                                 f(spectral[first] - spectral[second])])
        threshold = GENERICITY_MARGIN * GENERICITY_THRESHOLD * ev.scale
        return not np.any(np.abs(values) < threshold)

    def draw(self, L, extra=0):
        """
        Draws generic parameters for a lattice of L sites together with the
        specified number of additional spectral parameters.

        :raise SamplingError: If every redraw failed the genericity margin.
        """
        for _ in range(MAX_REDRAWS):
            ev = self.evaluator()
            gamma = self.complex_value()
            theta = self.complex_value()
            mu = self.complex_value(L)
            lambdas = self.complex_value(L + extra)
            params = ModelParams(L, gamma, theta, mu, lambdas[:L], ev.nome)
            if self._is_generic(params, ev, lambdas[L:]):
                return Sample(params, ev, lambdas[L:])
            _logger.debug("Discarding a non-generic draw at L=%d.", L)
        raise SamplingError("No generic parameters were found for L=%d after "
                            "%d draws." % (L, MAX_REDRAWS))
