import unittest

import numpy as np

from config import TestingConfig
from gpkit import configure
from gpkit.errors import NumericalError
from gpkit.kernels import SE
from gpkit.utils.linalg import (cholesky_append, cholesky_derivative, cholesky_derivative_unblocked,
                                jittered_cholesky, logdet_from_cholesky)
from gpkit.utils.rng import make_rng


class LinalgTestCase(unittest.TestCase):

    def setUp(self):
        """
        Set up the testing environment before each test case.

        - Installs the testing configuration.
        - Builds a well-conditioned covariance matrix and a symmetric direction.
        """
        configure(TestingConfig)
        rng = make_rng(4)
        self.X = rng.standard_normal((2, 40))
        self.K = SE(0.0, 0.0).cov(self.X) + 0.1 * np.eye(40)
        B = rng.standard_normal((40, 40))
        self.dK = B + B.T

    def test_no_jitter_when_positive_definite(self):
        L, jitter = jittered_cholesky(self.K)
        self.assertEqual(jitter, 0.0)
        np.testing.assert_allclose(L @ L.T, self.K, atol=1e-12)
        self.assertAlmostEqual(logdet_from_cholesky(L), np.linalg.slogdet(self.K)[1], places=10)

    def test_jitter_rescues_singular_matrix(self):
        """
        Test case for escalating jitter.

        - Factors a rank-one matrix.
        - Asserts a positive jitter within the cap and a valid factor.
        """
        v = np.arange(1.0, 6.0)
        K = np.outer(v, v)
        L, jitter = jittered_cholesky(K)
        scale = np.trace(K) / 5
        self.assertGreater(jitter, 0.0)
        self.assertLessEqual(jitter, 1e-4 * scale)
        np.testing.assert_allclose(L @ L.T, K + jitter * np.eye(5), atol=1e-10)

    def test_always_adds_starting_jitter(self):
        L, jitter = jittered_cholesky(self.K, start=1e-8, always=True)
        self.assertAlmostEqual(jitter, 1e-8 * np.trace(self.K) / 40, places=20)

    def test_indefinite_matrix_raises(self):
        """
        Test case for the jitter cap.

        - Factors a matrix with a clearly negative eigenvalue.
        - Asserts a NumericalError that reports the attempted jitter.
        """
        K = np.diag([1.0, 1.0, -1.0])
        with self.assertRaises(NumericalError) as ctx:
            jittered_cholesky(K)
        self.assertIsNotNone(ctx.exception.jitter)
        self.assertIn("attempted jitter", str(ctx.exception))
        self.assertEqual(ctx.exception.exit_code, 4)

    def test_append_matches_full_factorization(self):
        """
        Test case for extending a Cholesky factor by one row.

        - Factors the leading block and appends the last point.
        - Asserts the result equals the factor of the whole matrix.
        """
        L_full = np.linalg.cholesky(self.K)
        L = np.linalg.cholesky(self.K[:-1, :-1])
        row, pivot = cholesky_append(L, self.K[:-1, -1], self.K[-1, -1])
        np.testing.assert_allclose(row, L_full[-1, :-1], atol=1e-12)
        self.assertAlmostEqual(pivot, L_full[-1, -1], places=12)

    def test_append_indefinite_raises(self):
        L = np.eye(2)
        with self.assertRaises(NumericalError):
            cholesky_append(L, np.array([1.0, 1.0]), 1.0)

    def test_blocked_derivative_matches_unblocked(self):
        """
        Test case for the blocked Cholesky derivative.

        - Uses block sizes that divide and do not divide n.
        - Asserts agreement with the unblocked formula.
        """
        L = np.linalg.cholesky(self.K)
        reference = cholesky_derivative_unblocked(L, self.dK)
        for block_size in (1, 7, 8, 40, 64):
            with self.subTest(block_size=block_size):
                np.testing.assert_allclose(cholesky_derivative(L, self.dK, block_size), reference,
                                           rtol=1e-9, atol=1e-10)

    def test_derivative_matches_finite_differences(self):
        """
        Test case for the derivative of the factor.

        - Factors K + h dK and K - h dK.
        - Asserts the central difference equals the forward-mode derivative.
        """
        L = np.linalg.cholesky(self.K)
        dL = cholesky_derivative(L, self.dK, block_size=16)
        h = 1e-7
        numeric = (np.linalg.cholesky(self.K + h * self.dK) - np.linalg.cholesky(self.K - h * self.dK)) / (2 * h)
        np.testing.assert_allclose(dL, numeric, rtol=1e-5, atol=1e-6)
        np.testing.assert_allclose(dL @ L.T + L @ dL.T, self.dK, atol=1e-9)
        self.assertTrue(np.allclose(np.triu(dL, 1), 0.0))


if __name__ == '__main__':
    unittest.main()
