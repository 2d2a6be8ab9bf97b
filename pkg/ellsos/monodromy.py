"""
Contains the dynamical monodromy matrix of an inhomogeneous lattice with L
sites and the action of its four blocks A, B, C and D on the 2^L dimensional
spin space.

Blocks are never materialized as matrices.  The auxiliary space is carried
along as a pair of amplitude arrays (auxiliary spin up and down) while the
R-matrices R_aL, ..., R_a1 are applied one site at a time.
"""
from enum import Enum

import numpy as np

from ellsos.weights import GENERICITY_THRESHOLD
from ellsos.weights import SingularCoefficient
from ellsos.weights import SingularDynamicalParameter
from ellsos.weights import boltzmann
from ellsos.weights import checked_denominator

SWEEP_MAX_SITES = 6


class DimensionMismatch(ValueError):
    """
    Represents an exception that is thrown when a state or a parameter list
    does not match the number of lattice sites.
    """
    pass


class ModelParams:
    """
    Represents the parameters of an inhomogeneous lattice: the number of
    sites, the crossing parameter gamma, the dynamical parameter theta, the
    inhomogeneities mu and the spectral parameters lambdas.

    Attributes:
        L (int): The number of lattice sites.
        gamma (complex): The crossing parameter.
        theta (complex): The dynamical parameter.
        mu (tuple): The L inhomogeneities.
        lambdas (tuple): The L spectral parameters.
        nome (Nome): The elliptic nome.
    """

    def __init__(self, L, gamma, theta, mu, lambdas, nome):
        if int(L) != L or L < 1:
            raise ValueError("The number of sites L=%r must be a positive "
                             "integer." % L)
        self.L = int(L)
        self.gamma = complex(gamma)
        self.theta = complex(theta)
        self.mu = tuple(complex(value) for value in mu)
        self.lambdas = tuple(complex(value) for value in lambdas)
        self.nome = nome

        if len(self.mu) != self.L:
            raise DimensionMismatch("Expected %d inhomogeneities but found "
                                    "%d." % (self.L, len(self.mu)))
        if len(self.lambdas) != self.L:
            raise DimensionMismatch("Expected %d spectral parameters but "
                                    "found %d." % (self.L, len(self.lambdas)))

    def __repr__(self):
        return ("ModelParams(L=%d, gamma=%r, theta=%r, mu=%r, lambdas=%r, "
                "nome=%r)" % (self.L, self.gamma, self.theta, self.mu,
                              self.lambdas, self.nome))

    def replace(self, **changes):
        """
        Returns a copy of these parameters with the specified fields
        replaced.  When mu or lambdas change length without an explicit L,
        L follows the new length.
        """
        fields = dict(L=self.L, gamma=self.gamma, theta=self.theta,
                      mu=self.mu, lambdas=self.lambdas, nome=self.nome)
        fields.update(changes)
        if "L" not in changes and "mu" in changes \
                and len(changes["mu"]) != self.L:
            fields["L"] = len(changes["mu"])
        return ModelParams(**fields)


def check_genericity(params, ev, margin=1.0, shifts=None):
    """
    Verifies that the specified parameters are generic: f(theta + k gamma),
    f(lambda_i - lambda_j) for i != j and f(mu_1 - mu_k + gamma) for k >= 2
    all stay away from zero.

    :param params: The parameters to check.
    :param ev: The theta evaluator.
    :param margin: A factor applied to the genericity threshold.
    :param shifts: The values of k to check for theta; defaults to
    -1, 0, ..., L + 1.
    :raise SingularDynamicalParameter: If a dynamical argument is singular.
    :raise SingularCoefficient: If a spectral difference is singular.
    """
    threshold = margin * GENERICITY_THRESHOLD * ev.scale
    f = ev.f
    if shifts is None:
        shifts = range(-1, params.L + 2)

    for k in shifts:
        if abs(f(params.theta + k * params.gamma)) < threshold:
            raise SingularDynamicalParameter(
                "f(theta + %d gamma) is numerically zero." % k)
    for i in range(params.L):
        for j in range(i + 1, params.L):
            if abs(f(params.lambdas[i] - params.lambdas[j])) < threshold:
                raise SingularCoefficient(
                    "f(lambda_%d - lambda_%d) is numerically zero."
                    % (i + 1, j + 1))
    for k in range(1, params.L):
        if abs(f(params.mu[0] - params.mu[k] + params.gamma)) < threshold:
            raise SingularCoefficient(
                "f(mu_1 - mu_%d + gamma) is numerically zero." % (k + 1))


class StateVector:
    """
    Represents a vector of the 2^L dimensional spin space.

    Bit k - 1 of a basis index is the spin at site k, where 0 stands for
    h = +1 (up) and 1 for h = -1 (down).

    Attributes:
        L (int): The number of sites.
        amplitudes (numpy.ndarray): The 2^L complex amplitudes.
    """

    def __init__(self, L, amplitudes):
        self.L = L
        self.amplitudes = np.asarray(amplitudes, dtype=complex)
        if self.amplitudes.shape != (1 << L,):
            raise DimensionMismatch("A state of %d sites has %d amplitudes, "
                                    "not %r." % (L, 1 << L,
                                                 self.amplitudes.shape))

    @classmethod
    def basis(cls, L, index):
        """
        Creates the basis vector with the specified index.
        """
        amplitudes = np.zeros(1 << L, dtype=complex)
        amplitudes[index] = 1.0
        return cls(L, amplitudes)

    @classmethod
    def vacuum(cls, L):
        """
        Creates the highest weight state |0> with every spin up.
        """
        return cls.basis(L, 0)

    @classmethod
    def lowest(cls, L):
        """
        Creates the lowest weight state |0bar> with every spin down.
        """
        return cls.basis(L, (1 << L) - 1)

    def sectors(self):
        """
        Returns the set of down-spin counts with a non-zero amplitude.
        """
        counts = _down_counts(self.L)
        return set(int(count) for count in
                   np.unique(counts[self.amplitudes != 0]))


class BlockTag(Enum):
    """
    Represents one of the four blocks of the monodromy matrix, as the pair
    (auxiliary column spin, auxiliary row spin) with 0 for up.
    """
    A = (0, 0)
    B = (1, 0)
    C = (0, 1)
    D = (1, 1)


def _down_counts(L):
    indices = np.arange(1 << L)
    counts = np.zeros(1 << L, dtype=int)
    for bit in range(L):
        counts += (indices >> bit) & 1
    return counts


def _apply(tag, amplitudes, lam, th, params, ev):
    """
    Applies a block of T_a(lam, th) to the specified amplitudes, whose first
    axis runs over the 2^L basis states (further axes are a batch).
    """
    L = params.L
    size = 1 << L
    indices = np.arange(size)
    column, row = tag.value

    carried = [np.zeros_like(amplitudes), np.zeros_like(amplitudes)]
    carried[column] = amplitudes.copy()
    batch_axes = tuple(range(1, amplitudes.ndim))

    for site in range(L, 0, -1):
        bit = site - 1
        low = indices[((indices >> bit) & 1) == 0]
        high = low | (1 << bit)

        # sum of h_k over the sites k > site, read from the current spins
        above = _down_counts(L - site)[low >> site] if site < L \
            else np.zeros(low.size, dtype=int)
        spin_sum = (L - site) - 2 * above

        up, down = carried
        active = ((up[low] != 0) | (up[high] != 0)
                  | (down[low] != 0) | (down[high] != 0))
        if batch_axes:
            active = np.any(active, axis=batch_axes)

        new_up = np.zeros_like(up)
        new_down = np.zeros_like(down)
        for value in np.unique(spin_sum[active]):
            chosen = active & (spin_sum == value)
            lo = low[chosen]
            hi = high[chosen]
            w = boltzmann(lam - params.mu[bit],
                          th - params.gamma * int(value), params.gamma, ev)
            new_up[lo] = w.a_plus * up[lo]
            new_up[hi] = w.b_plus * up[hi] + w.c_plus * down[lo]
            new_down[lo] = w.c_minus * up[hi] + w.b_minus * down[lo]
            new_down[hi] = w.a_minus * down[hi]
        carried = [new_up, new_down]

    return carried[row]


def apply_block(tag, v, lam, th, params, ev):
    """
    Applies a block of the monodromy matrix T_a(lam, th) to the specified
    state.

    The block is embedded through its auxiliary column spin (A and C start
    from auxiliary up, B and D from auxiliary down), R_aL is applied first
    and R_a1 last, and the auxiliary row spin is projected out at the end.
    The dynamical argument of R_ai is theta - gamma sum_{k > i} h_k, read
    per basis state from the spins present when R_ai is applied.

    :param tag: The block to apply.
    :param v: The state to apply the block to.
    :param lam: The spectral parameter.
    :param th: The dynamical parameter.
    :param params: The lattice parameters (mu, gamma and L are used).
    :param ev: The theta evaluator.
    :return: A new state.
    :raise DimensionMismatch: If the state and the lattice differ in size.
    :raise SingularDynamicalParameter: If a dynamical argument met by a
    contributing basis state is singular.
    """
    if v.L != params.L:
        raise DimensionMismatch("Cannot apply a block of a %d-site lattice "
                                "to a %d-site state." % (params.L, v.L))
    return StateVector(v.L, _apply(tag, v.amplitudes, lam, th, params, ev))


def a_eigenvalue_vacuum(lam, params, ev):
    """
    Returns the eigenvalue prod_j f(lam - mu_j + gamma) of A(lam, theta) on
    the highest weight state.
    """
    return complex(np.prod(ev.f(lam - np.asarray(params.mu) + params.gamma)))


def a_eigenvalue_lowest(lam, th, params, ev):
    """
    Returns the eigenvalue of A(lam, th) acting from the left on the lowest
    weight covector,
    f(th - gamma) / f(th + (L - 1) gamma) prod_j f(lam - mu_j).
    """
    f = ev.f
    denominator = checked_denominator(
        f(th + (params.L - 1) * params.gamma), ev, "f(theta + (L-1) gamma)")
    product = np.prod(f(lam - np.asarray(params.mu)))
    return complex(f(th - params.gamma) / denominator * product)


def _check_sweep(params):
    if params.L > SWEEP_MAX_SITES:
        raise ValueError("Operator identities are checked on every basis "
                         "vector, which is limited to L <= %d (got L=%d)."
                         % (SWEEP_MAX_SITES, params.L))


def _sweep_residual(left, right, relative):
    residual = float(np.max(np.linalg.norm(left - right, axis=0)))
    if relative:
        scale = max(float(np.max(np.linalg.norm(left, axis=0))),
                    float(np.max(np.linalg.norm(right, axis=0))))
        return residual / scale if scale > 0.0 else residual
    return residual


def commutation_residual_BB(l1, l2, th, params, ev, relative=False):
    """
    Computes the largest norm, over all basis vectors v, of
    B(l1, th) B(l2, th + gamma) v - B(l2, th) B(l1, th + gamma) v.
    """
    _check_sweep(params)
    identity = np.eye(1 << params.L, dtype=complex)
    gamma = params.gamma
    left = _apply(BlockTag.B,
                  _apply(BlockTag.B, identity, l2, th + gamma, params, ev),
                  l1, th, params, ev)
    right = _apply(BlockTag.B,
                   _apply(BlockTag.B, identity, l1, th + gamma, params, ev),
                   l2, th, params, ev)
    return _sweep_residual(left, right, relative)


def commutation_residual_AB(l1, l2, th, params, ev, relative=False):
    """
    Computes the largest norm, over all basis vectors, of the residual of
    the exchange relation

        A(l1, th + gamma) B(l2, th) =
            f(l2 - l1 + gamma) / f(l2 - l1) f(th + gamma) / f(th + 2 gamma)
              B(l2, th + gamma) A(l1, th + 2 gamma)
          - f(th + gamma - l2 + l1) / f(l2 - l1) f(gamma) / f(th + 2 gamma)
              B(l1, th + gamma) A(l2, th + 2 gamma)

    :raise SingularCoefficient: If f(l2 - l1) is numerically zero.
    :raise SingularDynamicalParameter: If f(th + 2 gamma) is numerically
    zero.
    """
    _check_sweep(params)
    f = ev.f
    gamma = params.gamma
    difference = checked_denominator(f(l2 - l1), ev, "f(l2 - l1)",
                                     SingularCoefficient)
    shifted = checked_denominator(f(th + 2.0 * gamma), ev,
                                  "f(theta + 2 gamma)")
    direct = f(l2 - l1 + gamma) / difference * f(th + gamma) / shifted
    exchange = f(th + gamma - l2 + l1) / difference * f(gamma) / shifted

    identity = np.eye(1 << params.L, dtype=complex)
    left = _apply(BlockTag.A,
                  _apply(BlockTag.B, identity, l2, th, params, ev),
                  l1, th + gamma, params, ev)
    first = _apply(BlockTag.B,
                   _apply(BlockTag.A, identity, l1, th + 2.0 * gamma, params,
                          ev),
                   l2, th + gamma, params, ev)
    second = _apply(BlockTag.B,
                    _apply(BlockTag.A, identity, l2, th + 2.0 * gamma, params,
                           ev),
                    l1, th + gamma, params, ev)
    return _sweep_residual(left, direct * first - exchange * second,
                           relative)


def recursion_b_residual(lam, th, params, ev, relative=False):
    """
    Checks the B-block recursion obtained by splitting off the last site of
    an (L + 1)-site lattice,

        B_{L+1}(lam, th) = A_L(lam, th) beta_{L+1} + B_L(lam, th) delta_{L+1},

    on every basis vector.  Because the first L sites see the dynamical
    shift -gamma h_{L+1}, this reads, for the last spin up or down,

        B_{L+1} |s, +> = c_plus A_L(lam, th + gamma) |s> (x) |->
                       + b_minus B_L(lam, th - gamma) |s> (x) |+>
        B_{L+1} |s, -> = a_minus B_L(lam, th + gamma) |s> (x) |->

    with the weights taken at (lam - mu_{L+1}, th).

    :param params: The parameters of the (L + 1)-site lattice, L + 1 >= 2.
    """
    if params.L < 2:
        raise ValueError("The B recursion needs a lattice of at least two "
                         "sites.")
    _check_sweep(params)
    L = params.L - 1
    size = 1 << L
    gamma = params.gamma
    sub = params.replace(L=L, mu=params.mu[:L], lambdas=params.lambdas[:L])
    w = boltzmann(lam - params.mu[L], th, gamma, ev)

    full = _apply(BlockTag.B, np.eye(2 * size, dtype=complex), lam, th,
                  params, ev)

    identity = np.eye(size, dtype=complex)
    expected = np.zeros((2 * size, 2 * size), dtype=complex)
    expected[size:, :size] = w.c_plus * _apply(BlockTag.A, identity, lam,
                                               th + gamma, sub, ev)
    expected[:size, :size] = w.b_minus * _apply(BlockTag.B, identity, lam,
                                                th - gamma, sub, ev)
    expected[size:, size:] = w.a_minus * _apply(BlockTag.B, identity, lam,
                                                th + gamma, sub, ev)
    return _sweep_residual(full, expected, relative)
