"""
Contains the verification suite for the partition function evaluators.
"""
import numpy as np

from ellsos.kernel import Suite
from ellsos.partition import default_contour
from ellsos.partition import z_bruteforce
from ellsos.partition import z_perm_sum
from ellsos.partition import z_quadrature
from ellsos.partition import z_residues
from ellsos.relations import symmetry_residual
from ellsos.suite import draw_samples
from ellsos.suite import run_check

PERM_MAX_SITES = 5
RESIDUE_MAX_SITES = 4
QUADRATURE_MAX_SITES = 3
QUADRATURE_NODES = 64
CONTRACTION = 0.25
ZERO_SAMPLES = 5
NEIGHBOURS = 4
NEIGHBOUR_RADIUS = 0.1

TOLERANCES = {
    "partition.permsum": 1e-10,
    "partition.residues": 1e-10,
    "partition.quadrature": 1e-8,
    "partition.quadrature_large": 1e-7,
    "partition.symmetry": 1e-11,
    "partition.special_zero": 1e-10,
}


def contract(params, factor=CONTRACTION):
    """
    Returns the parameters with the spectral parameters pulled towards
    their mean by the specified factor.
    """
    lambdas = np.asarray(params.lambdas)
    center = np.mean(lambdas)
    return params.replace(lambdas=center + factor * (lambdas - center))


def _agreement(first, second):
    return abs(first - second) / max(abs(first), abs(second))


def quadrature_residual(params, ev, nodes=QUADRATURE_NODES):
    contour = default_contour(params, nodes)
    return _agreement(z_quadrature(params, ev, contour),
                      z_residues(params, ev))


def special_zero_residual(params, ev, i, j, rng):
    """
    Returns |Z| with lambda_i = mu_1 and lambda_j = mu_1 - gamma divided by
    the median of |Z| over random perturbations of that placement.

    The pinned value comes from the operator product; every term of the
    permutation sum carries an exact f(0) factor there.
    """
    mu1 = params.mu[0]
    pinned = list(params.lambdas)
    pinned[i], pinned[j] = mu1, mu1 - params.gamma
    value = z_bruteforce(params.replace(lambdas=pinned), ev)

    around = []
    for _ in range(NEIGHBOURS):
        shifts = rng.uniform(-1.0, 1.0, 4) * NEIGHBOUR_RADIUS
        moved = list(pinned)
        moved[i] += shifts[0] + 1j * shifts[1]
        moved[j] += shifts[2] + 1j * shifts[3]
        around.append(abs(z_perm_sum(params.replace(lambdas=moved), ev)))
    return abs(value) / float(np.median(around))


class PartitionSuite(Suite):
    """
    Checks that the operator product, the permutation sum, the residue sum
    and the contour quadrature agree, that Z is symmetric in the spectral
    parameters and that it vanishes at its special zeroes.
    """

    def __init__(self):
        super().__init__("partition")

    def get_dependencies(self):
        return ["monodromy"]

    def run(self, context):
        results = []
        for L in range(1, min(context.l_max, PERM_MAX_SITES) + 1):
            results.extend(self._run_size(context, L))
        return results

    def _run_size(self, context, L):
        samples = draw_samples(context, "partition", L)
        rng = context.sampler("partition/zeros/L=%d" % L).rng
        zero_seeds = [int(seed) for seed in
                      rng.integers(0, 2 ** 31, len(samples))]
        quadrature = "partition.quadrature" if L < 3 \
            else "partition.quadrature_large"

        def check(item):
            index, sample = item
            params, ev = sample.params, sample.ev
            detail = {"L": L, "sample": index}
            results = [run_check(
                context, "partition.permsum",
                "permutation sum = <0bar| B ... B |0>",
                lambda: _agreement(z_perm_sum(params, ev),
                                   z_bruteforce(params, ev)),
                TOLERANCES["partition.permsum"], detail)]
            if L <= RESIDUE_MAX_SITES:
                results.append(run_check(
                    context, "partition.residues",
                    "residue sum = permutation sum",
                    lambda: _agreement(z_residues(params, ev),
                                       z_perm_sum(params, ev)),
                    TOLERANCES["partition.residues"], detail))
            if L <= QUADRATURE_MAX_SITES:
                results.append(run_check(
                    context, quadrature, "contour integral = residue sum",
                    lambda: quadrature_residual(contract(params), ev),
                    TOLERANCES[quadrature], detail))
            if L >= 2:
                results.append(run_check(
                    context, "partition.symmetry",
                    "Z symmetric under lambda_1 <-> lambda_L",
                    lambda: symmetry_residual(params, 1, L, ev,
                                              relative=True),
                    TOLERANCES["partition.symmetry"], detail))
            if L >= 2 and index < ZERO_SAMPLES:
                zero_rng = np.random.default_rng(zero_seeds[index])
                for i in range(L):
                    for j in range(L):
                        if i == j:
                            continue
                        placed = dict(detail, placement=[i + 1, j + 1])
                        results.append(run_check(
                            context, "partition.special_zero",
                            "Z(.., mu_1, .., mu_1 - gamma, ..) = 0",
                            lambda: special_zero_residual(params, ev, i, j,
                                                          zero_rng),
                            TOLERANCES["partition.special_zero"], placed))
            return results

        outcome = context.map(check, enumerate(samples))
        return [result for group in outcome for result in group]
