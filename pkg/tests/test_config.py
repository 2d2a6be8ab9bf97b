import os
import unittest
from unittest import mock

from .context import ellsos
from ellsos.config import ComputeConfig
from ellsos.config import ConfigError
from ellsos.config import JobConfig
from ellsos.config import SUITES
from ellsos.config import VerifyConfig
from ellsos.config import create_kernel
from ellsos.config import parse_complex
from ellsos.config import parse_complex_list
from ellsos.config import parse_tolerances
from ellsos.config import thread_count
from ellsos.partition import ContourSpec

JOB = {"L": 2, "gamma": [0.3, 0.1], "theta": "0.2,-0.1", "p": 0.2,
       "mu": [[0.1, 0.0], [-0.2, 0.05]], "lambda": "0.4,0.05;-0.3,0.1"}


class ParseTest(unittest.TestCase):

    def test_complex(self):
        self.assertEqual(parse_complex("0.5,-1"), 0.5 - 1j)
        self.assertEqual(parse_complex([0.5, -1]), 0.5 - 1j)
        self.assertEqual(parse_complex("2"), 2 + 0j)
        self.assertEqual(parse_complex(3), 3 + 0j)
        for value in ("a,b", [1, 2, 3], None, True, "1,2,3"):
            with self.assertRaises(ConfigError):
                parse_complex(value)

    def test_complex_list(self):
        self.assertEqual(parse_complex_list("1,2;3,-4"), (1 + 2j, 3 - 4j))
        self.assertEqual(parse_complex_list([[1, 2], 0.5]), (1 + 2j, 0.5))
        with self.assertRaises(ConfigError):
            parse_complex_list(None)

    def test_json_text(self):
        self.assertEqual(parse_complex("[0.3, 0.1]"), 0.3 + 0.1j)
        self.assertEqual(parse_complex_list("[[0.1, 0.0], 0.5]"),
                         (0.1 + 0j, 0.5 + 0j))
        with self.assertRaises(ConfigError):
            parse_complex_list("[0.1, ")

    def test_tolerances(self):
        self.assertEqual(parse_tolerances(["theta.odd=1e-3", "x=2"]),
                         {"theta.odd": 1e-3, "x": 2.0})
        self.assertEqual(parse_tolerances(None), {})
        with self.assertRaises(ConfigError):
            parse_tolerances(["theta.odd"])
        with self.assertRaises(ConfigError):
            parse_tolerances(["theta.odd=small"])

    def test_thread_count(self):
        with mock.patch.dict(os.environ, {"ELLSOS_THREADS": "3"}):
            self.assertEqual(thread_count(), 3)
            self.assertEqual(thread_count(2), 2)
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(thread_count(), 1)
        with self.assertRaises(ConfigError):
            thread_count(0)


class JobConfigTest(unittest.TestCase):

    def test_from_dict(self):
        job = JobConfig.from_config(JOB)
        params = job.model_params()
        self.assertEqual(params.L, 2)
        self.assertEqual(params.gamma, 0.3 + 0.1j)
        self.assertEqual(params.lambdas, (0.4 + 0.05j, -0.3 + 0.1j))
        self.assertAlmostEqual(params.nome.p, 0.2)
        self.assertEqual(job.method, "auto")
        self.assertIsNone(job.contour())
        self.assertEqual(job.evaluator().n_max, 64)

    def test_to_dict(self):
        document = JobConfig.from_config(JOB).to_dict()
        self.assertEqual(document["params"]["mu"], [[0.1, 0.0], [-0.2, 0.05]])
        self.assertEqual(document["params"]["p"], [0.2, 0.0])
        self.assertEqual(sorted(document), ["method", "params",
                                            "quadrature_opts", "theta_opts"])

    def test_options_override_defaults(self):
        job = JobConfig(dict(JobConfig.from_config(JOB).params), "quadrature",
                        {"epsilon_target": 1e-14, "n_max": 40},
                        {"nodes": 16, "radius_override": None})
        ev = job.evaluator()
        self.assertEqual(ev.n_max, 40)
        self.assertEqual(ev.epsilon_target, 1e-14)
        self.assertEqual(job.contour().nodes, 16)
        self.assertEqual(job.replace(theta=0.5).theta_opts, job.theta_opts)

    def test_tau(self):
        job = JobConfig.from_config(dict(JOB, p=None, tau="0,1"))
        self.assertEqual(job.model_params().nome.tau, 1j)

    def test_quadrature_contour(self):
        job = JobConfig.from_config(dict(JOB, method="quadrature", nodes=32))
        contour = job.contour()
        self.assertIsInstance(contour, ContourSpec)
        self.assertEqual(contour.nodes, 32)

    def test_invalid(self):
        for changes in ({"L": None}, {"p": None}, {"tau": "0,1"},
                        {"gamma": None}, {"L": 3}, {"L": 0},
                        {"method": "simpson"}, {"method": "closed"},
                        {"nodes": 1}, {"n_max": 0},
                        {"radius_override": -1.0}):
            with self.assertRaises(ConfigError, msg=repr(changes)):
                JobConfig.from_config(dict(JOB, **changes))


class CommandConfigTest(unittest.TestCase):

    def test_compute_command_line(self):
        config = ComputeConfig(cmdline=["--L", "2", "--gamma", "0.3,0.1",
                                        "--theta", "0.2,0.1", "--p", "0.2",
                                        "--mu", "0.1,0;0.2,0",
                                        "--lambda", "0.4,0;0.5,0.1",
                                        "--method", "permsum"])
        job = JobConfig.from_config(config)
        self.assertEqual(job.method, "permsum")
        self.assertEqual(job.params["mu"], (0.1 + 0j, 0.2 + 0j))

    def test_single_pair_flags(self):
        config = ComputeConfig(cmdline=["--L=1", "--gamma=0.3,0.1",
                                        "--theta=0.2,-0.1", "--p=0.2",
                                        "--mu=0.1,0", "--lambda=0.4,0.05"])
        job = JobConfig.from_config(config)
        self.assertEqual(job.params["gamma"], 0.3 + 0.1j)
        self.assertEqual(job.params["mu"], (0.1 + 0j,))
        self.assertEqual(job.params["lambda"], (0.4 + 0.05j,))

    def test_pair_list_flags(self):
        config = ComputeConfig(cmdline=["--L=2", "--gamma=0.3,0.1",
                                        "--theta=0.2,0.1", "--tau=0,1",
                                        "--mu=0.1,0;0.4,0.1",
                                        "--lambda=0.2,0.3;0.6,-0.1"])
        job = JobConfig.from_config(config)
        self.assertEqual(job.params["mu"], (0.1 + 0j, 0.4 + 0.1j))
        self.assertEqual(job.params["lambda"], (0.2 + 0.3j, 0.6 - 0.1j))
        self.assertEqual(job.params["tau"], 1j)

    def test_verify_defaults(self):
        config = VerifyConfig(cmdline=[])
        self.assertEqual(config["suite"], "all")
        self.assertEqual(config["l_max"], 4)

    def test_kernel(self):
        self.assertEqual(sorted(create_kernel().suites), sorted(SUITES))
