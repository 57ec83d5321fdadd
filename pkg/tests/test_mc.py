import unittest

import numpy as np

from config import TestingConfig
from gpkit import configure
from gpkit.errors import ConfigurationError, InputError
from gpkit.inference import HMCConfig, hmc_sample, map_optimize, mcmc, optimize
from gpkit.kernels import SE, Fixed, Matern
from gpkit.likelihoods import BernLik, BinLik, ExpLik, GaussLik, PoisLik, StuTLik
from gpkit.means import MeanConst, MeanZero
from gpkit.models import GPE, GPMC, mc_predict_y
from gpkit.utils.rng import make_rng


class HMCTestCase(unittest.TestCase):

    def setUp(self):
        configure(TestingConfig)

    def test_kept_sample_count(self):
        self.assertEqual(HMCConfig(n_iter=10000, burn=1000, thin=10).kept, 900)
        self.assertEqual(HMCConfig(n_iter=10, burn=0, thin=3).kept, 4)

    def test_invalid_config(self):
        with self.assertRaises(ConfigurationError):
            HMCConfig(epsilon=0.0)
        with self.assertRaises(ConfigurationError):
            HMCConfig(Lmin=5, Lmax=4)
        with self.assertRaises(ConfigurationError):
            HMCConfig(n_iter=10, burn=10)

    def test_recovers_standard_normal(self):
        """
        Test case for the sampler on a known target.

        - Samples N(0, 1) for 10^4 iterations with epsilon 0.3 and L in [4, 6].
        - Asserts the sample mean and variance lie within 4 standard errors.
        """
        config = HMCConfig(epsilon=0.3, Lmin=4, Lmax=6, n_iter=10000, burn=0, thin=1, seed=5)
        samples, rate = hmc_sample(lambda x: (-0.5 * x @ x, -x), np.zeros(1), config)
        self.assertEqual(samples.shape, (1, 10000))
        self.assertGreater(rate, 0.9)
        x = samples[0]
        self.assertLess(abs(x.mean()), 4 * np.sqrt(1.0 / x.size))
        self.assertLess(abs(x.var() - 1.0), 4 * np.sqrt(2.0 / x.size))

    def test_same_seed_same_chain(self):
        config = HMCConfig(epsilon=0.2, Lmin=2, Lmax=4, n_iter=50, seed=9)
        first, _ = hmc_sample(lambda x: (-0.5 * x @ x, -x), np.ones(2), config)
        second, _ = hmc_sample(lambda x: (-0.5 * x @ x, -x), np.ones(2), config)
        np.testing.assert_array_equal(first, second)

    def test_out_of_support_proposals_are_rejected(self):
        """
        Test case for proposals with a non-finite density.

        - Samples a half-normal whose density is -inf below zero.
        - Asserts that no kept sample leaves the support.
        """
        def half_normal(x):
            if x[0] < 0:
                return -np.inf, np.full(1, np.nan)
            return -0.5 * x @ x, -x

        config = HMCConfig(epsilon=0.3, Lmin=3, Lmax=5, n_iter=2000, seed=2)
        samples, _ = hmc_sample(half_normal, np.full(1, 0.5), config)
        self.assertTrue(np.all(samples >= 0))

    def test_non_finite_start_raises(self):
        with self.assertRaises(InputError):
            hmc_sample(lambda x: (-np.inf, x), np.zeros(1), HMCConfig(n_iter=5))


class MonteCarloGPTestCase(unittest.TestCase):

    def setUp(self):
        """
        Set up the testing environment before each test case.

        - Installs the testing configuration.
        - Draws 1-dimensional inputs for the latent-variable models.
        """
        configure(TestingConfig)
        rng = make_rng(13)
        self.rng = rng
        self.x = np.sort(rng.uniform(-3.0, 3.0, 8))

    def test_gradient_matches_finite_differences(self):
        """
        Test case for the joint-density gradient.

        - Sets random whitened latents for several likelihoods.
        - Asserts the analytic gradient over (v, lik, mean, kernel), jitter
          derivative included, matches central differences.
        """
        x = self.x
        cases = [
            (BernLik(), (x > 0).astype(float), SE(0.1, 0.2)),
            (PoisLik(), np.array([0, 1, 3, 2, 0, 5, 1, 2], dtype=float), Matern(1.5, 0.3, -0.1)),
            (StuTLik(3.0, -0.5), np.sin(x), SE(0.2, 0.0)),
            (GaussLik(-1.0), np.cos(x), SE(0.0, 0.1) + Matern(2.5, 0.5, -1.0)),
            (BinLik(5), np.array([0, 2, 5, 3, 1, 4, 5, 2], dtype=float), SE(0.3, -0.2)),
            (ExpLik(), np.exp(0.4 * x) + 0.1, Matern(0.5, 0.2, 0.1)),
        ]
        for lik, y, kernel in cases:
            with self.subTest(lik=lik.to_expr()):
                gp = GPMC(x, y, MeanConst(0.2), kernel, lik)
                theta = gp.get_params()
                theta[:x.size] = self.rng.standard_normal(x.size)
                gp.set_params(theta)
                analytic = gp.grad_log_likelihood()
                numeric = np.empty_like(theta)
                for j in range(theta.size):
                    step = np.zeros_like(theta)
                    step[j] = 1e-4
                    gp.set_params(theta + step)
                    upper = gp.log_likelihood()
                    gp.set_params(theta - step)
                    lower = gp.log_likelihood()
                    numeric[j] = (upper - lower) / 2e-4
                gp.set_params(theta)
                np.testing.assert_allclose(analytic, numeric, rtol=1e-5, atol=1e-6)

    def test_parameter_layout(self):
        gp = GPMC(self.x, np.ones(8), MeanConst(0.0), SE(0.0, 0.0), StuTLik(3.0, 0.0))
        labels = gp.param_labels()
        self.assertEqual(labels[:2], ["v1", "v2"])
        self.assertEqual(len(labels), 8 + 1 + 1 + 2)
        self.assertEqual(gp.num_params(lik=False, domean=False, kern=False), 8)
        self.assertTrue(gp.summary().startswith("GP Monte Carlo object:"))

    def test_responses_validated(self):
        with self.assertRaises(InputError):
            GPMC(self.x, np.full(8, 0.5), MeanZero(), SE(0.0, 0.0), PoisLik())

    def test_flat_likelihood_recovers_latent_prior(self):
        """
        Test case for sampling the whitened latents.

        - Uses fixed kernel parameters and a Gaussian likelihood so wide that
          it carries no information.
        - Asserts the sampled latents are standard normal within 4 standard errors.
        """
        gp = GPMC(self.x[:2], np.zeros(2), MeanZero(), Fixed(SE(0.0, 0.0)), GaussLik(8.0))
        config = HMCConfig(epsilon=0.3, Lmin=4, Lmax=6, n_iter=4000, burn=0, thin=1, seed=1)
        chain = mcmc(gp, config, lik=False, domean=False)
        self.assertEqual(chain.shape, (3, 4000))
        np.testing.assert_array_equal(chain[2], 8.0)
        v = chain[:2]
        np.testing.assert_array_less(np.abs(v.mean(axis=1)), 4 * np.sqrt(1.0 / 4000))
        np.testing.assert_array_less(np.abs(v.var(axis=1) - 1.0), 4 * np.sqrt(2.0 / 4000))

    def test_gaussian_likelihood_matches_exact_posterior(self):
        """
        Test case for the Monte Carlo GP against exact regression.

        - Samples the latents under a Gaussian likelihood with kernel and noise fixed.
        - Asserts the averaged latent function agrees with the exact posterior mean.
        """
        x = self.x
        y = np.sin(x)
        exact = GPE(x, y, MeanZero(), SE(0.0, 0.0), np.log(0.5))
        gp = GPMC(x, y, MeanZero(), SE(0.0, 0.0), GaussLik(np.log(0.5)))
        config = HMCConfig(epsilon=0.1, Lmin=10, Lmax=20, n_iter=2000, burn=300, seed=4)
        chain = mcmc(gp, config, lik=False, domean=False, kern=False)
        latent = gp.L @ chain[:x.size]
        mu, _ = exact.predict_f(x)
        np.testing.assert_allclose(latent.mean(axis=1), mu, atol=0.1)

    def test_poisson_two_regimes(self):
        """
        Test case for count data with a change in rate.

        - Simulates 100 bins with rate 2 then rate 10.
        - Finds the posterior mode of the latents with the kernel fixed.
        - Asserts the predicted rates recover both regimes.
        """
        rng = make_rng(8)
        t = np.arange(1.0, 101.0)
        rate = np.where(t <= 50, 2.0, 10.0)
        counts = rng.poisson(rate).astype(float)
        gp = GPMC(t, counts, MeanConst(np.log(5.0)), SE(np.log(8.0), 0.0), PoisLik())
        optimize(gp, lik=False, domean=False, kern=False)
        predicted, _ = gp.predict_y(t)
        self.assertAlmostEqual(predicted[5:45].mean(), 2.0, delta=0.6)
        self.assertAlmostEqual(predicted[55:95].mean(), 10.0, delta=3.0)

    def test_predictions_over_samples(self):
        """
        Test case for sample-averaged predictions.

        - Runs a short chain on a Bernoulli model.
        - Asserts the prediction matrix shape, probabilities in [0, 1] and that
          the model parameters are restored.
        """
        gp = GPMC(self.x, (self.x > 0).astype(float), MeanZero(), SE(0.0, 0.0), BernLik())
        before = gp.get_params()
        chain = mcmc(gp, HMCConfig(epsilon=0.05, Lmin=2, Lmax=4, n_iter=30, seed=3))
        np.testing.assert_array_equal(gp.get_params(), before)
        xs = np.linspace(-3.0, 3.0, 5)
        means, variances = mc_predict_y(gp, chain, xs, return_var=True)
        self.assertEqual(means.shape, (30, 5))
        self.assertEqual(variances.shape, (30, 5))
        self.assertTrue(np.all((means >= 0) & (means <= 1)))
        np.testing.assert_array_equal(gp.get_params(), before)

    def test_latent_draws_at_current_state(self):
        """
        Test case for drawing the latent function given the current state.

        - Installs random whitened latents.
        - Asserts the draws are reproducible and their average matches predict_f.
        """
        gp = GPMC(self.x, (self.x > 0).astype(float), MeanZero(), SE(0.0, 0.0), BernLik())
        params = gp.get_params()
        params[:8] = self.rng.standard_normal(8)
        gp.set_params(params)
        xs = np.linspace(-2.0, 2.0, 4)
        draws = gp.sample_posterior(xs, count=4000, seed=1)
        self.assertEqual(draws.shape, (4000, 4))
        np.testing.assert_array_equal(draws, gp.sample_posterior(xs, count=4000, seed=1))
        mu, var = gp.predict_f(xs)
        np.testing.assert_array_less(np.abs(draws.mean(axis=0) - mu), 5 * np.sqrt((var + 1e-6) / 4000))

    def test_map_over_latents(self):
        gp = GPMC(self.x, (self.x > 0).astype(float), MeanZero(), SE(0.0, 0.0), BernLik())
        before = gp.log_target()
        result = map_optimize(gp, kern=False)
        self.assertGreater(gp.log_target(), before)
        self.assertAlmostEqual(-result.minimum, gp.log_target(), places=8)
        np.testing.assert_array_equal(gp.get_params(domean=False, lik=False, noise=False)[8:], [0.0, 0.0])


class HyperparameterSamplingTestCase(unittest.TestCase):

    def setUp(self):
        configure(TestingConfig)

    def test_exact_gp_chain(self):
        """
        Test case for sampling hyperparameters of an exact GP.

        - Samples with the mean frozen.
        - Asserts the chain shape, the frozen rows and the restored state.
        """
        rng = make_rng(6)
        x = rng.uniform(0.0, 5.0, 15)
        gp = GPE(x, np.sin(x) + 0.1 * rng.standard_normal(15), MeanConst(0.1), SE(0.0, 0.0), -1.0)
        before = gp.get_params()
        chain = mcmc(gp, epsilon=0.05, Lmin=2, Lmax=4, n_iter=60, burn=10, thin=5)
        self.assertEqual(chain.shape, (4, 10))
        np.testing.assert_array_equal(gp.get_params(), before)
        frozen = mcmc(gp, HMCConfig(epsilon=0.05, Lmin=2, Lmax=4, n_iter=20), domean=False)
        np.testing.assert_array_equal(frozen[1], 0.1)
        with self.assertRaises(ConfigurationError):
            mcmc(gp, HMCConfig(n_iter=5), epsilon=0.1)

    def test_refused_proposals_are_rejected(self):
        """
        Test case for a model that refuses part of the parameter space.

        - Raises a configuration error whenever the log length scale exceeds 0.05.
        - Asserts the chain completes, never keeps a refused state and restores the GP.
        """
        class BoundedGPE(GPE):
            def _refresh(self):
                if self.kernel.get_params()[0] > 0.05:
                    raise ConfigurationError("log length scale out of range")
                super()._refresh()

        rng = make_rng(8)
        x = rng.uniform(0.0, 5.0, 12)
        gp = BoundedGPE(x, np.sin(x), MeanZero(), SE(0.0, 0.0), -1.0)
        before = gp.get_params()
        chain = mcmc(gp, epsilon=0.05, Lmin=2, Lmax=4, n_iter=60, burn=10, thin=5)
        self.assertEqual(chain.shape, (3, 10))
        self.assertTrue(np.all(chain[1] <= 0.05))
        np.testing.assert_array_equal(gp.get_params(), before)


if __name__ == '__main__':
    unittest.main()
