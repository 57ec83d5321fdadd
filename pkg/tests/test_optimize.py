import unittest

import numpy as np

from config import TestingConfig
from gpkit import configure
from gpkit.errors import ConfigurationError, InputError
from gpkit.inference import Normal, OptimizeOptions, map_optimize, minimize_objective, optimize, set_priors
from gpkit.kernels import SE, RQ
from gpkit.means import MeanConst, MeanZero
from gpkit.models import FITC, GPE
from gpkit.utils.rng import make_rng


class OptimizeTestCase(unittest.TestCase):

    def setUp(self):
        """
        Set up the testing environment before each test case.

        - Installs the testing configuration.
        - Simulates 30 noisy observations of a smooth function.
        """
        configure(TestingConfig)
        rng = make_rng(2)
        self.x = rng.uniform(0.0, 6.0, 30)
        self.y = np.sin(self.x) + 0.5 + 0.1 * rng.standard_normal(30)

    def test_minimize_quadratic(self):
        """
        Test case for the quasi-Newton solver on its own.

        - Minimizes a shifted quadratic.
        - Asserts the minimizer, convergence and the report text.
        """
        center = np.array([1.0, -2.0, 0.5])
        result = minimize_objective(lambda x: (float((x - center) @ (x - center)), 2 * (x - center)), np.zeros(3))
        np.testing.assert_allclose(result.minimizer, center, atol=1e-6)
        self.assertTrue(result.converged)
        self.assertLess(result.minimum, 1e-10)
        report = result.report()
        self.assertTrue(report.startswith("Results of Optimization Algorithm"))
        self.assertIn(" * Algorithm: L-BFGS", report)

    def test_bounds_clip_the_solution(self):
        result = minimize_objective(lambda x: (float(x @ x), 2 * x), np.array([3.0, 3.0]),
                                    bounds=[(1.0, None), None])
        np.testing.assert_allclose(result.minimizer, [1.0, 0.0], atol=1e-8)
        with self.assertRaises(ConfigurationError):
            minimize_objective(lambda x: (float(x @ x), 2 * x), np.zeros(2), bounds=[(0.0, 1.0)])

    def test_non_finite_start_raises(self):
        with self.assertRaises(InputError):
            minimize_objective(lambda x: (np.nan, x), np.zeros(1))

    def test_optimize_improves_marginal_likelihood(self):
        """
        Test case for type-II maximum likelihood.

        - Starts an exact GP far from good hyperparameters.
        - Asserts the objective improves, the GP is left at the minimizer and
          the gradient there is small.
        """
        gp = GPE(self.x, self.y, MeanConst(0.0), SE(1.5, -1.0), 0.0)
        before = gp.log_marginal()
        result = optimize(gp)
        self.assertGreater(gp.log_marginal(), before + 1.0)
        np.testing.assert_array_equal(gp.get_params(), result.minimizer)
        self.assertAlmostEqual(-result.minimum, gp.log_marginal(), places=10)
        self.assertLess(np.abs(gp.grad_log_marginal()).max(), 1e-3)
        self.assertAlmostEqual(gp.mean.beta, 0.5, delta=0.5)

    def test_frozen_groups_do_not_move(self):
        """
        Test case for group flags.

        - Optimizes with the noise and the mean frozen.
        - Asserts they keep their values while the kernel parameters change.
        """
        gp = GPE(self.x, self.y, MeanConst(0.2), SE(1.5, -1.0), -1.0)
        kernel_before = gp.kernel.get_params()
        result = optimize(gp, noise=False, domean=False)
        self.assertEqual(result.minimizer.size, 2)
        self.assertEqual(gp.noise.value, -1.0)
        self.assertEqual(gp.mean.beta, 0.2)
        self.assertFalse(np.allclose(gp.kernel.get_params(), kernel_before))

    def test_options_object(self):
        gp = GPE(self.x, self.y, MeanZero(), SE(0.0, 0.0), -1.0)
        result = optimize(gp, OptimizeOptions(kern=False, max_iterations=3))
        self.assertLessEqual(result.iterations, 3)
        np.testing.assert_array_equal(gp.kernel.get_params(), [0.0, 0.0])

    def test_nothing_to_optimize(self):
        gp = GPE(self.x, self.y, MeanZero(), SE(0.0, 0.0), -1.0)
        with self.assertRaises(ConfigurationError):
            optimize(gp, noise=False, kern=False)

    def test_sparse_model(self):
        Xu = np.linspace(0.5, 5.5, 6)
        gp = FITC(self.x, Xu, self.y, MeanConst(0.0), SE(0.0, 0.0), -1.0)
        before = gp.log_marginal()
        optimize(gp)
        self.assertGreater(gp.log_marginal(), before)

    def test_map_estimate_with_prior_and_bounds(self):
        """
        Test case for maximum a posteriori estimation.

        - Puts a tight prior on the kernel parameters and bounds the noise.
        - Asserts the prior pulls the estimate towards its mean and the bound holds.
        """
        gp = GPE(self.x, self.y, MeanZero(), RQ(0.0, 0.0, 0.0), -1.0)
        set_priors(gp.kernel, [Normal(0.0, 0.01), Normal(0.0, 0.01), Normal(0.0, 0.01)])
        options = OptimizeOptions(bounds=[(-1.0, -0.5), None, None, None])
        result = map_optimize(gp, options)
        self.assertGreaterEqual(gp.noise.value, -1.0)
        self.assertLessEqual(gp.noise.value, -0.5)
        np.testing.assert_array_less(np.abs(gp.kernel.get_params()), 0.1)
        self.assertAlmostEqual(-result.minimum, gp.log_target(), places=10)


if __name__ == '__main__':
    unittest.main()
