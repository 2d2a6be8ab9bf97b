"""
Contains the verification suite for the monodromy matrix blocks.
"""
import numpy as np

from ellsos.kernel import Suite
from ellsos.monodromy import BlockTag
from ellsos.monodromy import StateVector
from ellsos.monodromy import a_eigenvalue_lowest
from ellsos.monodromy import a_eigenvalue_vacuum
from ellsos.monodromy import apply_block
from ellsos.monodromy import commutation_residual_AB
from ellsos.monodromy import commutation_residual_BB
from ellsos.monodromy import recursion_b_residual
from ellsos.suite import draw_samples
from ellsos.suite import run_check

EIGEN_MAX_SITES = 5
COMMUTATION_MAX_SITES = 3
SECTOR_MAX_SITES = 4

TOLERANCES = {
    "monodromy.a_vacuum": 1e-12,
    "monodromy.a_lowest": 1e-12,
    "monodromy.b_sectors": 0.0,
    "monodromy.bb": 1e-11,
    "monodromy.ab": 1e-11,
    "monodromy.ab_large": 1e-10,
    "monodromy.b_recursion": 1e-12,
}


def vacuum_residual(lam, params, ev):
    """
    Returns the relative distance between A(lam, theta)|0> and its expected
    multiple of |0>.
    """
    image = apply_block(BlockTag.A, StateVector.vacuum(params.L), lam,
                        params.theta, params, ev).amplitudes
    expected = np.zeros_like(image)
    expected[0] = a_eigenvalue_vacuum(lam, params, ev)
    return float(np.max(np.abs(image - expected)) / abs(expected[0]))


def lowest_residual(lam, params, ev):
    """
    Returns the relative distance between <0bar|A(lam, theta) and its
    expected multiple of <0bar|.

    A preserves the total spin and |0bar> is the only state of its sector,
    so <0bar|A = <0bar|A|0bar> <0bar| as soon as A|0bar> stays in that
    sector; a leak out of the sector is reported as an infinite residual.
    """
    image = apply_block(BlockTag.A, StateVector.lowest(params.L), lam,
                        params.theta, params, ev)
    if not image.sectors() <= {params.L}:
        return np.inf
    expected = a_eigenvalue_lowest(lam, params.theta, params, ev)
    return abs(image.amplitudes[-1] - expected) / abs(expected)


def sector_leaks(lam, params, ev):
    """
    Returns the number of weight sectors j for which B(lam, theta) applied
    to a state spread over the j-down sector leaves the (j + 1)-down sector.
    """
    leaks = 0
    counts = np.array([bin(index).count("1") for index in
                       range(1 << params.L)])
    for j in range(params.L):
        amplitudes = np.where(counts == j, 1.0 + 0.5j, 0.0)
        image = apply_block(BlockTag.B, StateVector(params.L, amplitudes),
                            lam, params.theta, params, ev)
        if not image.sectors() <= {j + 1}:
            leaks += 1
    return leaks


class MonodromySuite(Suite):
    """
    Checks the eigenvalues of A on the extremal weight states, the weight
    bookkeeping of B, the two exchange relations used for the functional
    equation and the recursion of B in the number of sites.
    """

    def __init__(self):
        super().__init__("monodromy")

    def get_dependencies(self):
        return ["weights"]

    def run(self, context):
        results = []
        for L in range(1, min(context.l_max, EIGEN_MAX_SITES) + 1):
            results.extend(self._run_size(context, L))
        return results

    def _run_size(self, context, L):
        samples = draw_samples(context, "monodromy", L, extra=2)
        commuting = L <= COMMUTATION_MAX_SITES
        ab_name = "monodromy.ab" if L < 3 else "monodromy.ab_large"

        def check(item):
            index, sample = item
            params, ev = sample.params, sample.ev
            l1, l2 = sample.extra
            th = params.theta
            detail = {"L": L, "sample": index}
            results = [
                run_check(context, "monodromy.a_vacuum",
                          "A|0> = prod f(lambda - mu_j + gamma) |0>",
                          lambda: vacuum_residual(l1, params, ev),
                          TOLERANCES["monodromy.a_vacuum"], detail),
                run_check(context, "monodromy.a_lowest",
                          "<0bar|A = f(theta - gamma) / f(theta + (L-1) "
                          "gamma) prod f(lambda - mu_j) <0bar|",
                          lambda: lowest_residual(l1, params, ev),
                          TOLERANCES["monodromy.a_lowest"], detail),
            ]
            if L <= SECTOR_MAX_SITES:
                results.append(run_check(
                    context, "monodromy.b_sectors",
                    "B lowers the total spin by 2",
                    lambda: sector_leaks(l1, params, ev),
                    TOLERANCES["monodromy.b_sectors"], detail))
            if commuting:
                results.extend([
                    run_check(context, "monodromy.bb",
                              "B(l1, th) B(l2, th + gamma) = "
                              "B(l2, th) B(l1, th + gamma)",
                              lambda: commutation_residual_BB(
                                  l1, l2, th, params, ev, relative=True),
                              TOLERANCES["monodromy.bb"], detail),
                    run_check(context, ab_name, "A-B exchange relation",
                              lambda: commutation_residual_AB(
                                  l1, l2, th, params, ev, relative=True),
                              TOLERANCES[ab_name], detail),
                ])
            if 2 <= L <= COMMUTATION_MAX_SITES:
                results.append(run_check(
                    context, "monodromy.b_recursion",
                    "B_{L+1} = A_L beta_{L+1} + B_L delta_{L+1}",
                    lambda: recursion_b_residual(l2, th, params, ev,
                                                 relative=True),
                    TOLERANCES["monodromy.b_recursion"], detail))
            return results

        outcome = context.map(check, enumerate(samples))
        return [result for group in outcome for result in group]
