import os
import tempfile
import unittest

import numpy as np

from config import TestingConfig
from gpkit import configure
from gpkit.errors import DataError
from gpkit.utils.data import load_csv, write_csv


class DataTestCase(unittest.TestCase):

    def setUp(self):
        """
        Set up the testing environment before each test case.

        - Installs the testing configuration.
        - Creates a scratch directory for CSV files.
        """
        configure(TestingConfig)
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, text, name="data.csv"):
        path = os.path.join(self.tmp.name, name)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        return path

    def test_header_and_named_columns(self):
        """
        Test case for a file with a header row.

        - Selects inputs and the response by name and by 1-based index.
        - Asserts the (d, n) layout.
        """
        path = self.write("a,b,y\n1,2,3\n4,5,6\n")
        X, y = load_csv(path)
        np.testing.assert_array_equal(X, [[1, 4], [2, 5]])
        np.testing.assert_array_equal(y, [3, 6])
        X, y = load_csv(path, x_cols="b", y_col="a")
        np.testing.assert_array_equal(X, [[2, 5]])
        np.testing.assert_array_equal(y, [1, 4])
        X, y = load_csv(path, x_cols=[3], y_col="2")
        np.testing.assert_array_equal(X, [[3, 6]])
        np.testing.assert_array_equal(y, [2, 5])

    def test_headerless_file(self):
        X, y = load_csv(self.write("0.5,1e-3\n-1.5,2\n"))
        np.testing.assert_array_equal(X, [[0.5, -1.5]])
        np.testing.assert_array_equal(y, [1e-3, 2.0])

    def test_header_detection_uses_selected_columns(self):
        """
        Test case for a headerless file with a text column that is not read.

        - Selects the numeric columns by index.
        - Asserts the first line is read as data, not as a header.
        """
        path = self.write("a,0.5,1.5\nb,2.5,3.5\n")
        X, y = load_csv(path, x_cols="2", y_col="3")
        np.testing.assert_array_equal(X, [[0.5, 2.5]])
        np.testing.assert_array_equal(y, [1.5, 3.5])
        X, y = load_csv(self.write("x,y,z\n1,2,3\n", "named.csv"), x_cols="1", y_col="2")
        np.testing.assert_array_equal(X, [[1.0]])
        np.testing.assert_array_equal(y, [2.0])

    def test_inputs_only(self):
        X, y = load_csv(self.write("x1,x2\n1,2\n3,4\n"), with_y=False)
        self.assertIsNone(y)
        self.assertEqual(X.shape, (2, 2))

    def test_booleans_are_numbers(self):
        X, y = load_csv(self.write("x,y\n0.1,true\n0.2,False\n"))
        np.testing.assert_array_equal(y, [1.0, 0.0])

    def test_non_numeric_cell(self):
        """
        Test case for a bad cell.

        - Puts a word in the response column of the third line.
        - Asserts the error names the file line and the column.
        """
        path = self.write("x,y\n1,2\n3,abc\n")
        with self.assertRaises(DataError) as ctx:
            load_csv(path)
        self.assertEqual(ctx.exception.row, 3)
        self.assertEqual(ctx.exception.column, "y")
        self.assertIn("row 3", str(ctx.exception))
        self.assertEqual(ctx.exception.exit_code, 3)

    def test_unreadable_inputs(self):
        with self.assertRaises(DataError):
            load_csv(os.path.join(self.tmp.name, "missing.csv"))
        with self.assertRaises(DataError):
            load_csv(self.write("", "empty.csv"))
        with self.assertRaises(DataError):
            load_csv(self.write("x,y\n", "header.csv"))
        with self.assertRaises(DataError):
            load_csv(self.write("x,y\n1,2\n"), y_col="z")
        with self.assertRaises(DataError):
            load_csv(self.write("x,y\n1,2\n"), x_cols="4")

    def test_write_then_read(self):
        """
        Test case for the CSV writer.

        - Writes named columns with full precision.
        - Asserts reading them back recovers the values to 1e-12.
        """
        values = np.array([np.pi, -1.0 / 3.0, 1e-9, 12345.678901234])
        path = write_csv(os.path.join(self.tmp.name, "out.csv"), {"x": values, "mean": 2 * values})
        with open(path, encoding="utf-8") as handle:
            self.assertEqual(handle.readline().strip(), "x,mean")
        X, y = load_csv(path)
        np.testing.assert_allclose(X[0], values, rtol=1e-12)
        np.testing.assert_allclose(y, 2 * values, rtol=1e-12)


if __name__ == '__main__':
    unittest.main()
