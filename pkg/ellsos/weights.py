"""
Contains the Boltzmann weights of the elliptic SOS model, the 4x4 dynamical
R-matrix built from them and residual checks of the dynamical Yang-Baxter
equation and of the weight-zero condition.

The singular-parameter exceptions raised by every genericity guard in the
package live here as well.
"""
import numpy as np

GENERICITY_THRESHOLD = 1e-12

# Total spin h (x) 1 + 1 (x) h on the ordered basis (++, +-, -+, --).
_TOTAL_SPIN = np.diag([2.0, 0.0, 0.0, -2.0]).astype(complex)


class SingularParameterError(Exception):
    """
    Represents an exception that is thrown when a quantity that must be
    divided by lies (numerically) on the zero lattice of f.
    """
    pass


class SingularDynamicalParameter(SingularParameterError):
    """
    Represents an exception that is thrown when a dynamical argument
    f(theta + k gamma) vanishes.
    """
    pass


class SingularCoefficient(SingularParameterError):
    """
    Represents an exception that is thrown when a coefficient of a relation
    has a vanishing denominator, such as f(l2 - l1) for coinciding spectral
    parameters.
    """
    pass


def is_singular(value, ev):
    """
    Returns whether or not the specified value of f lies below the genericity
    threshold, measured relative to |f'(0)|.
    """
    return bool(np.any(np.abs(value) < GENERICITY_THRESHOLD * ev.scale))


def checked_denominator(value, ev, label, error=SingularDynamicalParameter):
    """
    Returns the specified value of f unchanged if it is safe to divide by it.

    :param value: A value (or array of values) of f.
    :param ev: The theta evaluator the value was computed with.
    :param label: A description of the argument, used in the diagnostic.
    :param error: The exception type to raise.
    :return: The value itself.
    :raise SingularParameterError: If the value is within the genericity
    threshold of zero.
    """
    if is_singular(value, ev):
        raise error("The denominator %s is numerically zero "
                    "(|f| < %g |f'(0)|)." % (label, GENERICITY_THRESHOLD))
    return value


class WeightSet:
    """
    Represents the six Boltzmann weights of a single vertex.

    Attributes:
        a_plus (complex): f(lam + gamma).
        a_minus (complex): f(lam + gamma).
        b_plus (complex): f(lam) f(theta - gamma) / f(theta).
        b_minus (complex): f(lam) f(theta + gamma) / f(theta).
        c_plus (complex): f(gamma) f(theta - lam) / f(theta).
        c_minus (complex): f(gamma) f(theta + lam) / f(theta).
    """

    __slots__ = ("a_plus", "a_minus", "b_plus", "b_minus", "c_plus",
                 "c_minus")

    def __init__(self, a_plus, a_minus, b_plus, b_minus, c_plus, c_minus):
        self.a_plus = a_plus
        self.a_minus = a_minus
        self.b_plus = b_plus
        self.b_minus = b_minus
        self.c_plus = c_plus
        self.c_minus = c_minus

    def __repr__(self):
        return ("WeightSet(a_plus=%r, a_minus=%r, b_plus=%r, b_minus=%r, "
                "c_plus=%r, c_minus=%r)" % (self.a_plus, self.a_minus,
                                            self.b_plus, self.b_minus,
                                            self.c_plus, self.c_minus))


class RMatrix:
    """
    Represents the dynamical R-matrix on the ordered basis (++, +-, -+, --).

    Column j holds the image of basis vector j, so that
    R|+-> = b_plus |+-> + c_minus |-+> and R|-+> = c_plus |+-> + b_minus |-+>.

    Attributes:
        weights (WeightSet): The Boltzmann weights.
        entries (numpy.ndarray): The 4x4 complex matrix.
    """

    def __init__(self, weights):
        self.weights = weights
        self.entries = np.zeros((4, 4), dtype=complex)
        self.entries[0, 0] = weights.a_plus
        self.entries[1, 1] = weights.b_plus
        self.entries[1, 2] = weights.c_plus
        self.entries[2, 1] = weights.c_minus
        self.entries[2, 2] = weights.b_minus
        self.entries[3, 3] = weights.a_minus


def boltzmann(lam, th, gamma, ev):
    """
    Computes the Boltzmann weights of a vertex with spectral parameter lam
    and dynamical parameter th.

    :raise SingularDynamicalParameter: If f(th) is numerically zero.
    """
    f = ev.f
    denominator = checked_denominator(f(th), ev, "f(theta=%r)" % (th,))
    a = f(lam + gamma)
    f_lam = f(lam)
    f_gamma = f(gamma)
    return WeightSet(a_plus=a, a_minus=a,
                     b_plus=f_lam * f(th - gamma) / denominator,
                     b_minus=f_lam * f(th + gamma) / denominator,
                     c_plus=f_gamma * f(th - lam) / denominator,
                     c_minus=f_gamma * f(th + lam) / denominator)


def r_matrix(lam, th, gamma, ev):
    """
    Builds the R-matrix for the specified parameters.
    """
    return RMatrix(boltzmann(lam, th, gamma, ev))


def _spins(index):
    return (index >> 2) & 1, (index >> 1) & 1, index & 1


def _embed(first, second, spectator, factors):
    """
    Embeds a two-site R-matrix acting on the spaces first and second into
    the 8x8 space indexed by 4 s1 + 2 s2 + s3, choosing the matrix by the
    spin bit of the spectator space (factors[0] for h = +1, factors[1] for
    h = -1).
    """
    result = np.zeros((8, 8), dtype=complex)
    for row in range(8):
        out = _spins(row)
        for col in range(8):
            into = _spins(col)
            if out[spectator] != into[spectator]:
                continue
            entries = factors[into[spectator]].entries
            result[row, col] = entries[2 * out[first] + out[second],
                                       2 * into[first] + into[second]]
    return result


def _shifted(lam, th, gamma, ev):
    # theta - gamma h for h = +1, -1
    return (r_matrix(lam, th - gamma, gamma, ev),
            r_matrix(lam, th + gamma, gamma, ev))


def dybe_sides(l1, l2, l3, th, gamma, ev):
    """
    Builds both sides of the dynamical Yang-Baxter equation

        R12(l1 - l2, th - gamma h3) R13(l1 - l3, th) R23(l2 - l3, th - gamma h1)
      = R23(l2 - l3, th) R13(l1 - l3, th - gamma h2) R12(l1 - l2, th)

    as 8x8 matrices.
    """
    x, y, z = l1 - l2, l1 - l3, l2 - l3
    plain_x = r_matrix(x, th, gamma, ev)
    plain_y = r_matrix(y, th, gamma, ev)
    plain_z = r_matrix(z, th, gamma, ev)

    left = (_embed(0, 1, 2, _shifted(x, th, gamma, ev))
            @ _embed(0, 2, 1, (plain_y, plain_y))
            @ _embed(1, 2, 0, _shifted(z, th, gamma, ev)))
    right = (_embed(1, 2, 0, (plain_z, plain_z))
             @ _embed(0, 2, 1, _shifted(y, th, gamma, ev))
             @ _embed(0, 1, 2, (plain_x, plain_x)))
    return left, right


def dybe_residual(l1, l2, l3, th, gamma, ev, relative=False):
    """
    Computes the largest entry of the difference between both sides of the
    dynamical Yang-Baxter equation.

    :param relative: Whether to divide by the largest entry magnitude of
    either side.
    :return: The (relative) max-abs residual.
    :raise SingularDynamicalParameter: If any of f(th), f(th +- gamma) is
    numerically zero.
    """
    left, right = dybe_sides(l1, l2, l3, th, gamma, ev)
    residual = float(np.max(np.abs(left - right)))
    if relative:
        scale = max(float(np.max(np.abs(left))), float(np.max(np.abs(right))))
        return residual / scale if scale > 0.0 else residual
    return residual


def weight_zero_residual(lam, th, gamma, ev, relative=False):
    """
    Computes the Frobenius norm of the commutator of R(lam, th) with the
    total spin h (x) 1 + 1 (x) h.
    """
    entries = r_matrix(lam, th, gamma, ev).entries
    commutator = entries @ _TOTAL_SPIN - _TOTAL_SPIN @ entries
    residual = float(np.linalg.norm(commutator))
    if relative:
        norm = float(np.linalg.norm(entries))
        return residual / norm if norm > 0.0 else residual
    return residual
