"""
Contains the verification suite for the Boltzmann weights and the dynamical
R-matrix.
"""
import numpy as np

from ellsos.kernel import Suite
from ellsos.suite import draw_samples
from ellsos.suite import run_check
from ellsos.weights import dybe_residual
from ellsos.weights import r_matrix
from ellsos.weights import weight_zero_residual

TOLERANCES = {
    "weights.dybe": 1e-12,
    "weights.weight_zero": 1e-13,
    "weights.sparsity": 0.0,
}

# The six slots of the R-matrix that may be non-zero.
_SLOTS = np.zeros((4, 4), dtype=bool)
for _row, _col in ((0, 0), (1, 1), (1, 2), (2, 1), (2, 2), (3, 3)):
    _SLOTS[_row, _col] = True


def structural_nonzeros(entries):
    """
    Returns the number of non-zero entries outside the six weight slots.
    """
    return int(np.count_nonzero(entries[~_SLOTS]))


class WeightsSuite(Suite):
    """
    Checks the dynamical Yang-Baxter equation, the weight-zero condition and
    the sparsity of the R-matrix on seeded random parameters.
    """

    def __init__(self):
        super().__init__("weights")

    def get_dependencies(self):
        return ["theta"]

    def run(self, context):
        samples = draw_samples(context, "weights", 3)

        def check(item):
            index, sample = item
            params, ev = sample.params, sample.ev
            l1, l2, l3 = params.lambdas
            th, gamma = params.theta, params.gamma
            detail = {"sample": index}
            return [
                run_check(context, "weights.dybe", "dynamical Yang-Baxter",
                          lambda: dybe_residual(l1, l2, l3, th, gamma, ev,
                                                relative=True),
                          TOLERANCES["weights.dybe"], detail),
                run_check(context, "weights.weight_zero",
                          "[R, h (x) 1 + 1 (x) h] = 0",
                          lambda: weight_zero_residual(l1 - l2, th, gamma, ev,
                                                       relative=True),
                          TOLERANCES["weights.weight_zero"], detail),
                run_check(context, "weights.sparsity",
                          "R vanishes off its six weight slots",
                          lambda: structural_nonzeros(
                              r_matrix(l1 - l2, th, gamma, ev).entries),
                          TOLERANCES["weights.sparsity"], detail),
            ]

        outcome = context.map(check, enumerate(samples))
        return [result for group in outcome for result in group]
