import os
import tempfile
import unittest

import numpy as np
import pandas as pd
from click.testing import CliRunner

from config import TestingConfig
from gpkit import configure
from gpkit.api.commands import cli
from gpkit.utils.rng import make_rng

# Test case class for the command-line front end
class CommandTestCase(unittest.TestCase):

    def setUp(self):
        """
        Set up the testing environment before each test case.

        - Installs the testing configuration.
        - Creates a click test runner and a scratch directory.
        - Writes a small 1-dimensional regression data set and a binary one.
        """
        configure(TestingConfig)
        self.runner = CliRunner()
        self.tmp = tempfile.TemporaryDirectory()
        rng = make_rng(0)
        x = np.sort(rng.uniform(0.0, 6.0, 20))
        self.data = self.path("data.csv")
        pd.DataFrame({"x": x, "y": np.sin(x) + 0.1 * rng.standard_normal(20)}).to_csv(self.data, index=False)
        self.binary = self.path("binary.csv")
        pd.DataFrame({"x": x, "y": (x > 3).astype(int)}).to_csv(self.binary, index=False)
        self.out = self.path("out")

    def tearDown(self):
        """
        Tear down the testing environment after each test case.

        - Removes the scratch directory and everything written to it.
        """
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def invoke(self, *args):
        return self.runner.invoke(cli, list(args), catch_exceptions=False)

    def read_key_values(self, name):
        with open(os.path.join(self.out, name), encoding="utf-8") as handle:
            return dict(line.strip().split(" = ", 1) for line in handle if " = " in line)

    def test_fit(self):
        """
        Test case for the fit command.

        - Fits an exact GP with optimization.
        - Asserts exit code 0, the summary on stdout and the written parameters.
        """
        result = self.invoke("fit", "--data", self.data, "--kernel", "SE(0.0,0.0)", "--mean", "MeanConst(0.0)",
                             "--log-noise", "-1.0", "--out", self.out)
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("GP Exact object:", result.output)
        values = self.read_key_values("params.txt")
        self.assertEqual(values["model"], "GPE")
        self.assertEqual(values["nobs"], "20")
        self.assertIn("SE log length", values)
        self.assertIn("optim.minimum", values)
        self.assertTrue(os.path.exists(os.path.join(self.out, "summary.txt")))

    def test_fit_without_optimization_keeps_parameters(self):
        result = self.invoke("fit", "--data", self.data, "--kernel", "SE(0.5,0.25)", "--no-optimize",
                             "--out", self.out)
        self.assertEqual(result.exit_code, 0, result.output)
        values = self.read_key_values("params.txt")
        self.assertEqual(float(values["SE log length"]), 0.5)
        self.assertEqual(float(values["Noise"]), -2.0)
        self.assertNotIn("optim.minimum", values)

    def test_predict_on_grid(self):
        """
        Test case for the predict command.

        - Predicts on a 0:6:25 grid.
        - Asserts the ribbon table columns, row count and ordering of the bounds.
        """
        result = self.invoke("predict", "--data", self.data, "--grid", "0:6:25", "--out", self.out)
        self.assertEqual(result.exit_code, 0, result.output)
        table = pd.read_csv(os.path.join(self.out, "predictions.csv"))
        self.assertEqual(list(table.columns), ["x", "mean", "variance", "lower95", "upper95"])
        self.assertEqual(len(table), 25)
        self.assertTrue(np.all(table["lower95"] <= table["mean"]))
        self.assertTrue(np.all(table["mean"] <= table["upper95"]))

    def test_predict_classification(self):
        result = self.invoke("predict", "--data", self.binary, "--lik", "BernLik()", "--no-optimize",
                             "--grid", "0:6:7", "--out", self.out)
        self.assertEqual(result.exit_code, 0, result.output)
        table = pd.read_csv(os.path.join(self.out, "predictions.csv"))
        self.assertTrue(np.all((table["mean"] >= 0) & (table["mean"] <= 1)))

    def test_mcmc_chain(self):
        """
        Test case for the mcmc command.

        - Samples with burn-in and thinning.
        - Asserts chain.csv has one row per kept sample and one column per parameter.
        """
        result = self.invoke("mcmc", "--data", self.data, "--no-optimize", "--epsilon", "0.05", "--lmin", "2",
                             "--lmax", "3", "--n-iter", "40", "--burn", "10", "--thin", "3", "--out", self.out)
        self.assertEqual(result.exit_code, 0, result.output)
        chain = pd.read_csv(os.path.join(self.out, "chain.csv"))
        self.assertEqual(len(chain), 10)
        self.assertEqual(list(chain.columns), ["Noise", "SE log length", "SE log scale"])

    def test_sparse(self):
        """
        Test case for the sparse command.

        - Fits FSA with 5 quantile inducing points, nearest-point blocks and a
          lower-case scheme name.
        - Asserts the written parameters and predictions.
        """
        result = self.invoke("sparse", "--data", self.data, "--scheme", "fsa", "--inducing", "5",
                             "--no-optimize", "--out", self.out)
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(self.read_key_values("params.txt")["model"], "FSA")
        table = pd.read_csv(os.path.join(self.out, "predictions.csv"))
        self.assertEqual(len(table), 20)

    def test_sparse_rejects_likelihood(self):
        result = self.invoke("sparse", "--data", self.binary, "--lik", "BernLik()", "--out", self.out)
        self.assertEqual(result.exit_code, 2)

    def test_bench(self):
        """
        Test case for the bench command.

        - Times two kernels on a small problem and runs a small sparse suite.
        - Asserts both result tables.
        """
        result = self.invoke("bench", "--kernels", "SE(0.0,0.0); RQ(0.0,0.0,0.0)", "--n", "40", "--runs", "2",
                             "--sparse-n", "200", "--out", self.out)
        self.assertEqual(result.exit_code, 0, result.output)
        table = pd.read_csv(os.path.join(self.out, "bench.csv"))
        self.assertEqual(table["kernel"].tolist(), ["SE(0.0,0.0)", "RQ(0.0,0.0,0.0)"])
        self.assertTrue(np.all(table["min_ms"] > 0))
        sparse = pd.read_csv(os.path.join(self.out, "sparse_bench.csv"))
        self.assertEqual(sparse["method"].tolist(), ["Exact", "SoR", "DTC", "FITC", "FSA"])

    def test_config_file_and_flag_precedence(self):
        """
        Test case for merging a key = value file with flags.

        - Sets kernel, noise and optimization in a file.
        - Overrides the noise on the command line.
        - Asserts the file values apply and the flag wins.
        """
        config = self.path("run.cfg")
        with open(config, "w", encoding="utf-8") as handle:
            handle.write("# run settings\nkernel = SE(0.3,0.0)\nlog-noise = -1.5\noptimize = false\n")
        result = self.invoke("fit", "--config", config, "--data", self.data, "--log-noise", "-0.5",
                             "--out", self.out)
        self.assertEqual(result.exit_code, 0, result.output)
        values = self.read_key_values("params.txt")
        self.assertEqual(float(values["SE log length"]), 0.3)
        self.assertEqual(float(values["Noise"]), -0.5)

    def test_configuration_errors_exit_with_code_2(self):
        """
        Test case for configuration failures.

        - Passes a malformed kernel, an unknown config key and an invalid freeze group.
        - Asserts exit code 2 and the one-line error report.
        """
        result = self.invoke("fit", "--data", self.data, "--kernel", "SE(0,0", "--out", self.out)
        self.assertEqual(result.exit_code, 2)
        self.assertIn("error[parse]: syntax error at offset 7", result.output)

        config = self.path("bad.cfg")
        with open(config, "w", encoding="utf-8") as handle:
            handle.write("kernal = SE(0.0,0.0)\n")
        result = self.invoke("fit", "--config", config, "--data", self.data)
        self.assertEqual(result.exit_code, 2)
        self.assertIn("error[config]: invalid configuration 'kernal' (unknown key)", result.output)

        result = self.invoke("fit", "--data", self.data, "--freeze", "noise,weights", "--out", self.out)
        self.assertEqual(result.exit_code, 2)

        result = self.invoke("fit", "--out", self.out)
        self.assertEqual(result.exit_code, 2)

    def test_usage_errors_get_the_error_line(self):
        """
        Test case for mistakes caught by the option parser.

        - Passes an unknown option, an unknown command and a non-numeric value.
        - Asserts exit code 2 and the one-line configuration error report.
        """
        result = self.invoke("fit", "--data", self.data, "--bogus")
        self.assertEqual(result.exit_code, 2)
        self.assertIn("error[config]: No such option: --bogus", result.output)
        result = self.invoke("fitt", "--data", self.data)
        self.assertEqual(result.exit_code, 2)
        self.assertIn("error[config]:", result.output)
        result = self.invoke("fit", "--data", self.data, "--log-noise", "low")
        self.assertEqual(result.exit_code, 2)
        self.assertIn("error[config]:", result.output)

    def test_data_errors_exit_with_code_3(self):
        result = self.invoke("fit", "--data", self.path("missing.csv"), "--out", self.out)
        self.assertEqual(result.exit_code, 3)
        self.assertIn("error[data]", result.output)
        bad = self.path("bad.csv")
        with open(bad, "w", encoding="utf-8") as handle:
            handle.write("x,y\n1,2\n3,abc\n")
        result = self.invoke("fit", "--data", bad, "--out", self.out)
        self.assertEqual(result.exit_code, 3)
        self.assertIn("row 3", result.output)
        result = self.invoke("fit", "--data", self.data, "--lik", "PoisLik()", "--out", self.out)
        self.assertEqual(result.exit_code, 3)

    def test_numerical_errors_exit_with_code_4(self):
        """
        Test case for a covariance that cannot be factorized.

        - Uses a signal variance that overflows to infinity.
        - Asserts exit code 4 and the numerical error category.
        """
        result = self.invoke("fit", "--data", self.data, "--kernel", "SE(0.0,400.0)", "--no-optimize",
                             "--out", self.out)
        self.assertEqual(result.exit_code, 4)
        self.assertIn("error[numerical]", result.output)


if __name__ == '__main__':
    unittest.main()
