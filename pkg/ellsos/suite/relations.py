"""
Contains the verification suite for the relations satisfied by the partition
function.
"""
import math

from ellsos.kernel import Suite
from ellsos.partition import Permutation
from ellsos.partition import z_perm_sum
from ellsos.relations import AsymptoticSpec
from ellsos.relations import asy_eval
from ellsos.relations import coefficient_swap_residual
from ellsos.relations import functional_residual
from ellsos.relations import inversion_vertices
from ellsos.relations import recursion_residual
from ellsos.relations import reduced_lattice_residual
from ellsos.relations import special_zero_cascade
from ellsos.suite import draw_samples
from ellsos.suite import run_check

FUNCTIONAL_MAX_SITES = 4
FUNCTIONAL_METHODS = ("permsum", "bruteforce", "residues")
INVERSION_MAX_SITES = 5

TOLERANCES = {
    "relations.functional": 1e-9,
    "relations.functional_closed": 1e-13,
    "relations.recursion": 1e-9,
    "relations.reduced_lattice": 1e-9,
    "relations.coefficient_swap": 1e-12,
    "relations.zero_coefficients": 1e-10,
    "relations.zero_cascade": 1e-10,
    "relations.asymptotic_single": 0.0,
    "relations.inversions": 0.0,
}


def cascade_residuals(params, ev):
    """
    Returns (|M_0| + |N_0| + |N_1|) / |N_2| and |Z(mu_1, mu_1 - gamma, ..)|
    divided by |Z| at the unspecialised spectral parameters.
    """
    cascade = special_zero_cascade(params, ev, method="bruteforce")
    coefficients = cascade.coefficients
    leftover = (abs(coefficients.m0) + abs(coefficients.n[0])
                + abs(coefficients.n[1])) / abs(cascade.n2)
    return leftover, abs(cascade.vanishing) / abs(z_perm_sum(params, ev))


def inversion_count_residual(L):
    """
    Compares the inversion vertices of every permutation of L elements with
    a direct count and their total with L! L (L - 1) / 4.
    """
    total = 0
    mismatches = 0
    for sigma in Permutation.all(L):
        vertices = inversion_vertices(sigma)
        direct = sum(1 for a in range(L) for b in range(a + 1, L)
                     if sigma.sigma[a] > sigma.sigma[b])
        mismatches += len(vertices) != direct
        total += len(vertices)
    expected = math.factorial(L) * L * (L - 1) // 4
    return mismatches + abs(total - expected)


class RelationsSuite(Suite):
    """
    Checks the functional equation, the separation of Z into reduced
    lattices, the coefficient symmetry, the zero cascade, the single-site
    asymptotic sum and the inversion bookkeeping.
    """

    def __init__(self):
        super().__init__("relations")

    def get_dependencies(self):
        return ["partition"]

    def run(self, context):
        results = []
        for L in range(1, min(context.l_max, FUNCTIONAL_MAX_SITES) + 1):
            results.extend(self._run_size(context, L))
        for L in range(1, min(context.l_max, INVERSION_MAX_SITES) + 1):
            results.append(run_check(
                context, "relations.inversions",
                "inversion vertices count the inversions of sigma",
                lambda: inversion_count_residual(L),
                TOLERANCES["relations.inversions"], {"L": L}))
        return results

    def _run_size(self, context, L):
        samples = draw_samples(context, "relations", L, extra=1)

        def check(item):
            index, sample = item
            params, ev = sample.params, sample.ev
            lam0 = sample.extra[0]
            detail = {"L": L, "sample": index}
            results = []
            for method in FUNCTIONAL_METHODS:
                results.append(run_check(
                    context, "relations.functional",
                    "M_0 Z_{theta-gamma} + sum_i N_i Z_theta(^lambda_i) = 0",
                    lambda: functional_residual(params, lam0, ev, method,
                                                relative=True),
                    TOLERANCES["relations.functional"],
                    dict(detail, method=method)))
            if L == 1:
                results.append(run_check(
                    context, "relations.functional_closed",
                    "functional equation with the closed single-site form",
                    lambda: functional_residual(params, lam0, ev, "closed",
                                                relative=True),
                    TOLERANCES["relations.functional_closed"], detail))
                results.append(run_check(
                    context, "relations.asymptotic_single",
                    "truncated asymptotic sum at L = 1 is f(gamma)",
                    lambda: abs(asy_eval(params, AsymptoticSpec(0), ev)
                                - ev.f(params.gamma)),
                    TOLERANCES["relations.asymptotic_single"], detail))
                return results

            results.extend([
                run_check(context, "relations.recursion",
                          "Z = sum_i m_i V(.., ^lambda_i, ..)",
                          lambda: recursion_residual(params, ev,
                                                     relative=True),
                          TOLERANCES["relations.recursion"], detail),
                run_check(context, "relations.reduced_lattice",
                          "V = f(gamma) prod f(mu_1 - mu_k + gamma) "
                          "Z_{theta+gamma}^{L-1}",
                          lambda: reduced_lattice_residual(params, ev,
                                                           relative=True),
                          TOLERANCES["relations.reduced_lattice"], detail),
                run_check(context, "relations.coefficient_swap",
                          "N_i <-> N_j under lambda_i <-> lambda_j",
                          lambda: coefficient_swap_residual(
                              params, lam0, 1, L, ev, relative=True),
                          TOLERANCES["relations.coefficient_swap"], detail),
            ])

            memo = {}

            def cascade():
                if not memo:
                    memo["value"] = cascade_residuals(params, ev)
                return memo["value"]

            results.extend([
                run_check(context, "relations.zero_coefficients",
                          "M_0 = N_0 = N_1 = 0 at lambda_0 = mu_1, "
                          "lambda_1 = mu_1 - gamma",
                          lambda: cascade()[0],
                          TOLERANCES["relations.zero_coefficients"], detail),
                run_check(context, "relations.zero_cascade",
                          "N_2 Z(mu_1, mu_1 - gamma, ..) = 0",
                          lambda: cascade()[1],
                          TOLERANCES["relations.zero_cascade"], detail),
            ])
            return results

        outcome = context.map(check, enumerate(samples))
        return [result for group in outcome for result in group]
