"""
Contains the elliptic theta function f with nome p, its derivative, the
reduction of arguments onto the fundamental cell of its quasi-period lattice
and residual checks of its structural identities.

The function is

    f(lam) = 1/2 sum_n e^{i pi (n - 1/2)} p^{(n + 1/2)^2} e^{-(2n + 1) lam}

with p = e^{i pi tau}.  Pairing the terms n and -n - 1 gives the series that
is actually summed,

    f(lam) = i/2 sum_{m >= 0} (-1)^m p^{(m + 1/2)^2}
             (e^{(2m + 1) lam} - e^{-(2m + 1) lam}),

which is odd term by term and vanishes exactly at the origin.
"""
import cmath
import math

import numpy as np

DEFAULT_EPSILON = 1e-16
DEFAULT_N_MAX = 64


class ThetaError(Exception):
    """
    Represents an exception that is thrown when the theta function cannot be
    evaluated to the requested accuracy.
    """
    pass


class NonConvergent(ThetaError):
    """
    Represents an exception that is thrown when no series cutoff below the
    configured ceiling meets the requested truncation target, which happens
    for large |Re lam| when argument reduction is disabled or for a nome too
    close to the unit circle.
    """
    pass


class Nome:
    """
    Represents the elliptic nome p = e^{i pi tau} of the theta function.

    Exactly one of the modular parameter or the nome is given; the other is
    derived from it.  The principal branch of the logarithm is used to derive
    tau from p.

    Attributes:
        tau (complex): The modular parameter, Im(tau) > 0.
        p (complex): The nome, 0 < |p| < 1.
    """

    def __init__(self, tau=None, p=None):
        if (tau is None) == (p is None):
            raise ValueError("Exactly one of tau or p must be supplied to "
                             "construct a nome.")
        if tau is not None:
            tau = complex(tau)
            if not tau.imag > 0.0:
                raise ValueError("The modular parameter tau=%r is not in "
                                 "the upper half plane." % tau)
            p = cmath.exp(1j * math.pi * tau)
        else:
            p = complex(p)
            if not 0.0 < abs(p) < 1.0:
                raise ValueError("The nome p=%r does not satisfy "
                                 "0 < |p| < 1." % p)
            tau = cmath.log(p) / (1j * math.pi)
        self.tau = tau
        self.p = p

    def __repr__(self):
        return "Nome(tau=%r, p=%r)" % (self.tau, self.p)

    @property
    def periods(self):
        """
        The two generators (i pi, i pi tau) of the quasi-period lattice.
        """
        return 1j * math.pi, 1j * math.pi * self.tau


class ThetaEvaluator:
    """
    Represents an immutable evaluation policy for the theta function: the
    nome, the series cutoff ceiling, the absolute truncation target and
    whether arguments are first reduced onto the fundamental cell.

    Attributes:
        nome (Nome): The elliptic nome.
        n_max (int): The largest paired series index that may be retained.
        epsilon_target (float): The dropped tail must lie below this
        fraction of the largest retained term.
        reduce_arguments (bool): Whether arguments are reduced onto the
        fundamental cell before the series is summed.
        scale (float): The magnitude |f'(0)|, the reference size of f near
        its zeroes for every genericity guard.
    """

    def __init__(self, nome, n_max=DEFAULT_N_MAX,
                 epsilon_target=DEFAULT_EPSILON, reduce_arguments=True):
        if int(n_max) != n_max or n_max < 1:
            raise ValueError("The series cutoff n_max=%r must be a positive "
                             "integer." % n_max)
        if not epsilon_target > 0.0:
            raise ValueError("The truncation target epsilon_target=%r must "
                             "be positive." % epsilon_target)
        self.nome = nome
        self.n_max = int(n_max)
        self.epsilon_target = float(epsilon_target)
        self.reduce_arguments = bool(reduce_arguments)
        self._decay = math.pi * nome.tau.imag
        self._width = math.sqrt(max(-math.log(self.epsilon_target), 0.0)
                                / self._decay)
        self.scale = abs(eval_f_prime(0.0, self))

    def __repr__(self):
        return ("ThetaEvaluator(%r, n_max=%d, epsilon_target=%g, "
                "reduce_arguments=%r)" % (self.nome, self.n_max,
                                          self.epsilon_target,
                                          self.reduce_arguments))

    def f(self, lam):
        """
        Shorthand for eval_f(lam, self).
        """
        return eval_f(lam, self)

    def f_prime(self, lam):
        """
        Shorthand for eval_f_prime(lam, self).
        """
        return eval_f_prime(lam, self)


def _as_array(lam):
    values = np.asarray(lam, dtype=complex)
    return values, values.ndim == 0


def _as_result(values, scalar):
    if scalar:
        return complex(values)
    return values


def _reduce(lam, nome):
    """
    Reduces the specified arguments onto the fundamental cell and returns
    the reduced arguments, the quasi-periodicity multipliers and the number
    of i pi tau shifts that were removed.
    """
    tau = nome.tau
    omega1, omega2 = nome.periods

    # lam = alpha (i pi) + beta (i pi tau) with alpha, beta real.
    beta = -lam.real / (math.pi * tau.imag)
    alpha = (lam.imag - beta * math.pi * tau.real) / math.pi

    k = np.floor(beta + 0.5)
    j = np.floor(alpha + 0.5)
    reduced = lam - k * omega2 - j * omega1

    sign = np.where(np.mod(k + j, 2.0) == 0.0, 1.0, -1.0)
    multiplier = sign * np.exp(-2.0 * k * lam + omega2 * k * k)
    return reduced, multiplier, k


def reduce_argument(lam, nome):
    """
    Maps the specified argument into the fundamental cell spanned by i pi and
    i pi tau using f(lam - i pi) = -f(lam) and
    f(lam - i pi tau) = -e^{2 lam - i pi tau} f(lam).

    :param lam: A complex scalar or array.
    :param nome: The elliptic nome.
    :return: A tuple (lam_red, multiplier) such that
    f(lam) = multiplier * f(lam_red).
    """
    values, scalar = _as_array(lam)
    reduced, multiplier, _ = _reduce(values, nome)
    return _as_result(reduced, scalar), _as_result(multiplier, scalar)


def _series_terms(lam, ev):
    """
    Returns the paired series exponentials e^{Q_m + k_m lam} and
    e^{Q_m - k_m lam} (k_m = 2m + 1) together with the signed factors
    (-1)^m, truncated so that the dropped tail is below the target.
    """
    if lam.size:
        largest = float(np.max(np.abs(lam.real)))
    else:
        largest = 0.0
    peak = max(largest / ev._decay - 0.5, 0.0)
    cutoff = int(math.ceil(peak + ev._width)) + 1
    if cutoff > ev.n_max:
        raise NonConvergent("The theta series needs %d terms for a tail "
                            "below %g but the ceiling is %d (|Re lam| up to "
                            "%g, tau=%r)." % (cutoff, ev.epsilon_target,
                                              ev.n_max, largest,
                                              ev.nome.tau))

    m = np.arange(cutoff + 1)
    orders = (2 * m + 1).astype(float)
    signs = np.where(m % 2 == 0, 1.0, -1.0)
    quadratic = 1j * math.pi * ev.nome.tau * (m + 0.5) ** 2

    shifted = orders * lam[..., None]
    grow = np.exp(quadratic + shifted)
    decay = np.exp(quadratic - shifted)
    return signs, orders, grow, decay


def _eval_reduced(lam, ev):
    signs, _, grow, decay = _series_terms(lam, ev)
    return 0.5j * np.sum(signs * (grow - decay), axis=-1)


def _eval_prime_reduced(lam, ev):
    signs, orders, grow, decay = _series_terms(lam, ev)
    return 0.5j * np.sum(signs * orders * (grow + decay), axis=-1)


def eval_f(lam, ev):
    """
    Evaluates the theta function f at the specified argument(s).

    :param lam: A complex scalar or array.
    :param ev: The theta evaluator.
    :return: f(lam), with the same shape as lam.
    :raise NonConvergent: If the series does not converge below the
    configured ceiling.
    """
    values, scalar = _as_array(lam)
    if ev.reduce_arguments:
        reduced, multiplier, _ = _reduce(values, ev.nome)
        result = multiplier * _eval_reduced(reduced, ev)
    else:
        result = _eval_reduced(values, ev)
    return _as_result(result, scalar)


def eval_f_prime(lam, ev):
    """
    Evaluates the derivative f' at the specified argument(s).

    When arguments are reduced, the product rule is applied to the
    quasi-periodicity multiplier M(lam) = +-e^{-2k lam + i pi tau k^2}, whose
    derivative is -2k M(lam).

    :param lam: A complex scalar or array.
    :param ev: The theta evaluator.
    :return: f'(lam), with the same shape as lam.
    :raise NonConvergent: If the series does not converge below the
    configured ceiling.
    """
    values, scalar = _as_array(lam)
    if ev.reduce_arguments:
        reduced, multiplier, k = _reduce(values, ev.nome)
        result = multiplier * (_eval_prime_reduced(reduced, ev)
                               - 2.0 * k * _eval_reduced(reduced, ev))
    else:
        result = _eval_prime_reduced(values, ev)
    return _as_result(result, scalar)


def addition_terms(l1, l2, l3, l4, ev):
    """
    Returns the three products of the addition rule

        f(l1 + l2) f(l1 - l2) f(l3 + l4) f(l3 - l4) =
            f(l1 + l4) f(l1 - l4) f(l3 + l2) f(l3 - l2)
          + f(l1 + l3) f(l1 - l3) f(l2 + l4) f(l2 - l4)

    in the order (left, first right, second right).
    """
    f = ev.f
    left = f(l1 + l2) * f(l1 - l2) * f(l3 + l4) * f(l3 - l4)
    first = f(l1 + l4) * f(l1 - l4) * f(l3 + l2) * f(l3 - l2)
    second = f(l1 + l3) * f(l1 - l3) * f(l2 + l4) * f(l2 - l4)
    return left, first, second


def addition_residual(l1, l2, l3, l4, ev):
    """
    Computes the left-hand side minus the right-hand side of the addition
    rule at the specified points.

    :return: The complex residual.
    """
    left, first, second = addition_terms(l1, l2, l3, l4, ev)
    return left - first - second


def trig_limit_deviation(lam, p):
    """
    Measures how far -i p^{-1/4} f(lam) is from sinh(lam) for a small real
    nome; the deviation vanishes as p -> 0 (the leading correction is
    -p^2 sinh(3 lam)).

    :param lam: The complex argument.
    :param p: A real nome with 0 < p < 0.1.
    :return: |-i p^{-1/4} f(lam) - sinh(lam)|.
    """
    p = float(p)
    if not 0.0 < p < 0.1:
        raise ValueError("The trigonometric limit is probed for "
                         "0 < p < 0.1, not p=%r." % p)
    ev = ThetaEvaluator(Nome(p=p))
    lam = complex(lam)
    return abs(-1j * p ** -0.25 * eval_f(lam, ev) - cmath.sinh(lam))
