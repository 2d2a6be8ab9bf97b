"""
Contains the verification suite for the theta function.
"""
import cmath
import math

from ellsos.kernel import Suite
from ellsos.suite import run_check
from ellsos.theta import Nome
from ellsos.theta import ThetaEvaluator
from ellsos.theta import addition_terms
from ellsos.theta import trig_limit_deviation

NOMES = (0.05, 0.2, 0.4)
TRIG_NOMES = (1e-4, 1e-5, 1e-6)
TRIG_POINT = 0.7
STEP = 1e-5

TOLERANCES = {
    "theta.odd": 1e-12,
    "theta.period_pi": 1e-12,
    "theta.period_tau": 1e-12,
    "theta.addition": 1e-12,
    "theta.reduction": 1e-12,
    "theta.derivative": 1e-7,
    "theta.trig_limit": 1.0,
    "theta.trig_slope": 0.05,
}


def _ratio(numerator, *scales):
    scale = max(abs(value) for value in scales)
    return abs(numerator) / scale if scale > 0.0 else abs(numerator)


class ThetaSuite(Suite):
    """
    Checks oddness, both quasi-periodicities, the addition rule, argument
    reduction and the derivative of f on seeded random points, and the
    trigonometric limit for small nomes.
    """

    def __init__(self):
        super().__init__("theta")

    def get_dependencies(self):
        return []

    def run(self, context):
        results = []
        nomes = NOMES if context.p is None else (context.p,)
        for p in nomes:
            results.extend(self._run_nome(context, p))
        results.extend(self._run_trig_limit(context))
        return results

    def _run_nome(self, context, p):
        nome = Nome(p=p)
        ev = ThetaEvaluator(nome, n_max=context.n_max,
                            epsilon_target=context.epsilon_target)
        plain = ThetaEvaluator(nome, n_max=context.n_max,
                               epsilon_target=context.epsilon_target,
                               reduce_arguments=False)
        sampler = context.sampler("theta/p=%r" % (p,))
        points = [sampler.complex_value(4) for _ in range(context.samples)]
        omega1 = nome.periods[0]
        f = ev.f

        def check(item):
            index, (x, y, z, w) = item
            detail = {"p": p, "sample": index}
            return [
                run_check(context, "theta.odd", "f(-x) = -f(x)",
                          lambda: _ratio(f(x) + f(-x), f(x)),
                          TOLERANCES["theta.odd"], detail),
                run_check(context, "theta.period_pi",
                          "f(x - i pi) = -f(x)",
                          lambda: _ratio(f(x - omega1) + f(x), f(x)),
                          TOLERANCES["theta.period_pi"], detail),
                run_check(context, "theta.period_tau",
                          "f(x - i pi tau) = -e^{2x - i pi tau} f(x)",
                          lambda: _period_tau(x, ev),
                          TOLERANCES["theta.period_tau"], detail),
                run_check(context, "theta.addition", "theta addition rule",
                          lambda: _addition(x, y, z, w, ev),
                          TOLERANCES["theta.addition"], detail),
                run_check(context, "theta.reduction",
                          "reduced and unreduced series agree",
                          lambda: _ratio(f(x) - plain.f(x), f(x)),
                          TOLERANCES["theta.reduction"], detail),
                run_check(context, "theta.derivative",
                          "f' matches a central difference",
                          lambda: _derivative(x, ev),
                          TOLERANCES["theta.derivative"], detail),
            ]

        outcome = context.map(check, enumerate(points))
        return [result for group in outcome for result in group]

    def _run_trig_limit(self, context):
        deviations = [trig_limit_deviation(TRIG_POINT, p) for p in TRIG_NOMES]
        bound = max(deviation / p for deviation, p in
                    zip(deviations, TRIG_NOMES))
        slope = (math.log(deviations[0] / deviations[-1])
                 / math.log(TRIG_NOMES[0] / TRIG_NOMES[-1]))
        detail = {"lambda": TRIG_POINT, "p": list(TRIG_NOMES)}
        return [
            run_check(context, "theta.trig_limit",
                      "|-i p^{-1/4} f - sinh| <= C p",
                      lambda: bound, TOLERANCES["theta.trig_limit"], detail),
            run_check(context, "theta.trig_slope",
                      "trigonometric deviation decays as p^2",
                      lambda: abs(slope - 2.0),
                      TOLERANCES["theta.trig_slope"], detail),
        ]


def _period_tau(x, ev):
    omega2 = ev.nome.periods[1]
    shifted = ev.f(x - omega2)
    expected = -cmath.exp(2.0 * x - omega2) * ev.f(x)
    return _ratio(shifted - expected, shifted, expected)


def _addition(x, y, z, w, ev):
    left, first, second = addition_terms(x, y, z, w, ev)
    return _ratio(left - first - second, left, first, second)


def _derivative(x, ev):
    difference = (ev.f(x + STEP) - ev.f(x - STEP)) / (2.0 * STEP)
    exact = ev.f_prime(x)
    return abs(difference - exact) / max(abs(exact), ev.scale)
